#include "doctest.h"
#include "dtl/errors.hpp"
#include "dtl/field_tower.hpp"
#include "oracle.hpp"

#include <set>
#include <sstream>

using namespace dtl;

namespace {

FieldElem random_elem(FieldDesc f) {
  std::uniform_int_distribution<std::int32_t> d(-1, static_cast<std::int32_t>(f.order() - 2));
  return FieldElem(f, d(oracle::rng()));
}

}  // namespace

TEST_CASE("shipped table matches published Conway polynomials") {
  CHECK(table_polynomial(3, 2) == std::vector<int>{2, 2, 1});
  CHECK(table_polynomial(3, 4) == std::vector<int>{2, 0, 0, 2, 1});
  CHECK(table_polynomial(3, 6) == std::vector<int>{2, 2, 1, 0, 2, 0, 1});
  CHECK(table_polynomial(2, 8) == std::vector<int>{1, 0, 1, 1, 1, 0, 0, 0, 1});
  CHECK(table_polynomial(5, 2) == std::vector<int>{2, 4, 1});
  CHECK(table_polynomial(7, 2) == std::vector<int>{3, 6, 1});
}

TEST_CASE("shipped table agrees with the runtime search") {
  std::istringstream in{std::string(table_asset_text())};
  std::string line;
  int checked = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    int p, m, d;
    std::string colon;
    ls >> p >> m >> d >> colon;
    std::vector<int> c;
    int v;
    while (ls >> v) c.push_back(v);
    if (std::pow(p, m * d) > 1e6) continue;
    CHECK(conway_search(p, m * d) == c);
    ++checked;
  }
  CHECK(checked > 20);
}

TEST_CASE("descriptors are interned") {
  CHECK(FieldDesc::get(3, 2, 1) == FieldDesc::get(3, 2, 1));
  CHECK(FieldDesc::get(3, 2, 1) != FieldDesc::get(3, 1, 2));
  CHECK(FieldDesc::get(3, 2, 2).order() == 81);
  CHECK_THROWS_AS(FieldDesc::get(3, 1, 30), FieldTooLarge);
}

TEST_CASE("F_9 generator satisfies g^2 = g + 1") {
  FieldDesc f9 = FieldDesc::get(3, 2, 1);
  FieldElem g = FieldElem::generator(f9);
  CHECK(g * g == g + FieldElem::one(f9));
  CHECK(g.coeffs() == std::vector<int>{0, 1});
}

TEST_CASE("embed") {
  FieldDesc f9 = FieldDesc::get(3, 2, 1), f81 = FieldDesc::get(3, 2, 2), f6561 = FieldDesc::get(3, 2, 4);
  CHECK(embed(FieldElem::one(f9), f81).is_one());
  FieldElem g = FieldElem::generator(f9);
  FieldElem G = embed(g, f81);
  // minimal polynomial checked in the big field by direct multiplication
  CHECK(G * G == G + FieldElem::one(f81));
  // oracle: the image satisfies x^2 + 2x + 2 under polynomial arithmetic mod the F_81 polynomial
  auto c = G.coeffs();
  auto sq = oracle::polymulmod(c, c, f81.defining_poly(), 3);
  auto lhs = oracle::polyadd(oracle::polyadd(sq, {0}, 3), [&] {
    std::vector<int> t = c;
    for (auto& v : t) v = (2 * v) % 3;
    return t;
  }(), 3);
  lhs[0] = (lhs[0] + 2) % 3;
  for (int v : lhs) CHECK(v == 0);
  for (std::int32_t k = -1; k < 8; ++k) {
    FieldElem x(f9, k);
    CHECK(embed(embed(x, f81), f6561) == embed(x, f6561));
  }
  CHECK_THROWS_AS(embed(embed(g, f81), FieldDesc::get(3, 2, 3)), NonDivisibleDegree);
  CHECK_THROWS_AS(embed(g, FieldDesc::get(3, 1, 4)), MismatchedBase);
  CHECK_THROWS_AS(embed(g, FieldDesc::get(5, 2, 1)), MismatchedBase);
}

TEST_CASE("arithmetic agrees with polynomial oracle") {
  for (auto [p, n] : {std::pair{3, 4}, std::pair{2, 8}, std::pair{5, 3}, std::pair{7, 2}}) {
    FieldDesc f = FieldDesc::get(p, 1, n);
    for (int trial = 0; trial < 200; ++trial) {
      FieldElem a = random_elem(f), b = random_elem(f);
      CHECK((a * b).coeffs() == oracle::polymulmod(a.coeffs(), b.coeffs(), f.defining_poly(), p));
      CHECK((a + b).coeffs() == oracle::polyadd(a.coeffs(), b.coeffs(), p));
      CHECK((a - b + b) == a);
      if (!b.is_zero()) CHECK(a / b * b == a);
      CHECK(FieldElem::from_coeffs(f, a.coeffs()) == a);
    }
  }
}

TEST_CASE("embedding is a ring homomorphism") {
  FieldDesc small = FieldDesc::get(3, 1, 2), big = FieldDesc::get(3, 1, 6);
  for (int trial = 0; trial < 300; ++trial) {
    FieldElem a = random_elem(small), b = random_elem(small);
    CHECK(embed(a + b, big) == embed(a, big) + embed(b, big));
    CHECK(embed(a * b, big) == embed(a, big) * embed(b, big));
  }
}

TEST_CASE("non-standard polynomial embeds through a root") {
  // x^2 + 1 is irreducible over F_3 but not primitive.
  FieldDesc odd = FieldDesc::with_polynomial(3, 1, 2, {1, 0, 1});
  CHECK(!odd.is_standard());
  FieldDesc big = FieldDesc::get(3, 1, 4);
  FieldElem i = FieldElem::generator(odd);
  CHECK(i * i == FieldElem::from_int(odd, -1));
  FieldElem I = embed(i, big);
  CHECK(I * I == FieldElem::from_int(big, -1));
  for (int trial = 0; trial < 100; ++trial) {
    FieldElem a = random_elem(odd), b = random_elem(odd);
    CHECK(embed(a * b, big) == embed(a, big) * embed(b, big));
    CHECK(embed(a + b, big) == embed(a, big) + embed(b, big));
  }
}

TEST_CASE("inverse_frobenius") {
  FieldDesc f9 = FieldDesc::get(3, 1, 2);
  CHECK(inverse_frobenius(FieldElem::zero(f9)).is_zero());
  for (int c = 0; c < 3; ++c) CHECK(inverse_frobenius(FieldElem::from_int(f9, c)) == FieldElem::from_int(f9, c));
  FieldElem g = FieldElem::generator(f9);
  FieldElem y = inverse_frobenius(g);
  // oracle: y = g^3 computed by polynomial exponentiation, and y^3 = g
  CHECK(y.coeffs() == oracle::polypow(g.coeffs(), 3, f9.defining_poly(), 3));
  CHECK(y.pow(3) == g);
  FieldDesc f = FieldDesc::get(3, 2, 3);
  for (int trial = 0; trial < 200; ++trial) {
    FieldElem x = random_elem(f);
    CHECK(inverse_frobenius(x).pow(9) == x);
    CHECK(x.frobenius(2).frobenius(-2) == x);
  }
}

TEST_CASE("extract_root") {
  FieldDesc f3 = FieldDesc::get(3, 1, 1);
  auto [one, f1] = extract_root(FieldElem::one(f3), 4);
  CHECK(one.is_one());
  CHECK(f1 == f3);
  // -1 is a non-square in F_3 (squares are {0, 1})
  auto [y, F] = extract_root(FieldElem::from_int(f3, -1), 2);
  CHECK(F == FieldDesc::get(3, 1, 2));
  CHECK(y * y == FieldElem::from_int(F, -1));
  // least root by brute force over all of F_9
  std::vector<std::vector<int>> sq_roots;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      auto s = oracle::polymulmod({a, b}, {a, b}, F.defining_poly(), 3);
      if (s == std::vector<int>{2, 0}) sq_roots.push_back({a, b});
    }
  REQUIRE(sq_roots.size() == 2);
  CHECK(y.coeffs() == *std::min_element(sq_roots.begin(), sq_roots.end()));
  FieldElem x = FieldElem::generator(FieldDesc::get(3, 1, 2));
  auto [x1, fx] = extract_root(x, 1);
  CHECK(x1 == x);
  for (int trial = 0; trial < 100; ++trial) {
    FieldDesc f = FieldDesc::get(3, 1, 2);
    FieldElem v = random_elem(f);
    if (v.is_zero()) continue;
    for (int n : {2, 4, 5, 7}) {
      auto [r, E] = extract_root(v, n);
      CHECK(r.pow(n) == embed(v, E));
    }
  }
}

TEST_CASE("additive residue roots") {
  FieldDesc f3 = FieldDesc::get(3, 1, 1);
  // y + y^9 = 0 over F_3: kernel of dimension 2 needs F_81 (y^8 = -1)
  auto roots = additive_roots(FieldElem::zero(f3), {{0, FieldElem::one(f3)}, {2, FieldElem::one(f3)}}, true);
  CHECK(roots.size() == 9);
  CHECK(roots.front().desc().d() == 4);
  for (const auto& r : roots) CHECK(r + r.pow(9) == FieldElem::zero(r.desc()));
}

TEST_CASE("determinism of serialization") {
  FieldDesc f = FieldDesc::get(3, 1, 5);
  auto a = extract_root(FieldElem::generator(f), 2);
  auto b = extract_root(FieldElem::generator(f), 2);
  CHECK(a.second.d() == 10);
  CHECK(a.first.coeffs() == b.first.coeffs());
}
