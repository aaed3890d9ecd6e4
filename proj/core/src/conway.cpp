#include "dtl/errors.hpp"
#include "dtl/field_tower.hpp"

#include <map>
#include <mutex>
#include <sstream>

namespace dtl {

namespace detail {
std::string_view defining_poly_asset();
}

namespace {

using Poly = std::vector<std::int64_t>;  // ascending, reduced mod p

// a*b mod (f, p); f monic of degree n, a and b of degree < n.
Poly mulmod(const Poly& a, const Poly& b, const Poly& f, std::int64_t p) {
  const std::size_t n = f.size() - 1;
  std::vector<std::int64_t> prod(2 * n, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] += a[i] * b[j];
  }
  for (auto& c : prod) c %= p;
  for (std::size_t k = prod.size(); k-- > n;) {
    std::int64_t c = prod[k];
    if (c == 0) continue;
    for (std::size_t i = 0; i < n; ++i) prod[k - n + i] = (prod[k - n + i] + (p - c) * f[i]) % p;
    prod[k] = 0;
  }
  prod.resize(n);
  return prod;
}

Poly powmod(Poly base, std::int64_t e, const Poly& f, std::int64_t p) {
  Poly r(f.size() - 1, 0);
  r[0] = 1;
  while (e > 0) {
    if (e & 1) r = mulmod(r, base, f, p);
    base = mulmod(base, base, f, p);
    e >>= 1;
  }
  return r;
}

bool is_one(const Poly& a) {
  if (a.empty() || a[0] != 1) return false;
  for (std::size_t i = 1; i < a.size(); ++i)
    if (a[i] != 0) return false;
  return true;
}

std::vector<std::int64_t> prime_factors(std::int64_t v) {
  std::vector<std::int64_t> out;
  for (std::int64_t f = 2; f * f <= v; ++f) {
    if (v % f == 0) {
      out.push_back(f);
      while (v % f == 0) v /= f;
    }
  }
  if (v > 1) out.push_back(v);
  return out;
}

std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Evaluate g (ascending coefficients) at y inside F_p[x]/(f).
Poly eval_at(const std::vector<int>& g, const Poly& y, const Poly& f, std::int64_t p) {
  Poly acc(f.size() - 1, 0);
  for (std::size_t k = g.size(); k-- > 0;) {
    acc = mulmod(acc, y, f, p);
    acc[0] = (acc[0] + g[k]) % p;
  }
  return acc;
}

std::map<std::pair<int, int>, std::vector<int>>& search_cache() {
  static std::map<std::pair<int, int>, std::vector<int>> cache;
  return cache;
}
std::recursive_mutex& search_mutex() {
  static std::recursive_mutex mu;
  return mu;
}

}  // namespace

std::vector<int> conway_search(int p, int n) {
  if (p < 2 || n < 1) throw std::invalid_argument("conway_search: bad parameters");
  std::lock_guard<std::recursive_mutex> lock(search_mutex());
  auto key = std::make_pair(p, n);
  if (auto it = search_cache().find(key); it != search_cache().end()) return it->second;

  const std::int64_t order = ipow(p, n) - 1;
  const auto primes = prime_factors(order);
  std::vector<std::pair<int, std::vector<int>>> subfields;
  for (int k = 1; k < n; ++k)
    if (n % k == 0) subfields.emplace_back(k, conway_search(p, k));

  // w[i] is the Conway-order digit for the coefficient of x^(n-1-i): the
  // coefficient of x^(n-j) is compared as (-1)^j c.
  std::vector<int> w(n, 0);
  Poly x(n, 0);
  if (n > 1) x[1] = 1;
  for (;;) {
    Poly f(n + 1, 0);
    f[n] = 1;
    for (int i = 0; i < n; ++i) {
      int j = i + 1;
      std::int64_t c = (j % 2 == 0) ? w[i] : (p - w[i]) % p;
      f[n - j] = c;
    }
    if (f[0] != 0) {
      Poly gen = x;
      if (n == 1) gen = Poly{(p - f[0]) % p};
      bool ok = is_one(powmod(gen, order, f, p));
      for (auto l : primes) {
        if (!ok) break;
        if (is_one(powmod(gen, order / l, f, p))) ok = false;
      }
      for (const auto& [k, fk] : subfields) {
        if (!ok) break;
        std::int64_t e = order / (ipow(p, k) - 1);
        Poly y = powmod(gen, e, f, p);
        Poly v = eval_at(fk, y, f, p);
        for (auto c : v)
          if (c != 0) ok = false;
      }
      if (ok) {
        std::vector<int> out(f.begin(), f.end());
        search_cache()[key] = out;
        return out;
      }
    }
    int pos = n - 1;
    while (pos >= 0 && ++w[pos] == p) w[pos--] = 0;
    if (pos < 0) break;
  }
  throw std::logic_error("conway_search: no primitive polynomial found");
}

std::string_view table_asset_text() { return detail::defining_poly_asset(); }

std::vector<int> table_polynomial(int p, int n) {
  static const auto table = [] {
    std::map<std::pair<int, int>, std::vector<int>> t;
    std::istringstream in{std::string(detail::defining_poly_asset())};
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      std::istringstream ls(line);
      int lp, lm, ld;
      std::string colon;
      ls >> lp >> lm >> ld >> colon;
      if (!ls || colon != ":") continue;
      std::vector<int> c;
      int v;
      while (ls >> v) c.push_back(v);
      if (static_cast<int>(c.size()) == lm * ld + 1) t[{lp, lm * ld}] = c;
    }
    return t;
  }();
  auto it = table.find({p, n});
  return it == table.end() ? std::vector<int>{} : it->second;
}

}  // namespace dtl
