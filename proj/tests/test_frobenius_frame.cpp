#include "doctest.h"
#include "dtl/errors.hpp"
#include "dtl/frobenius_frame.hpp"
#include "oracle.hpp"

using namespace dtl;

namespace {

const FieldDesc F3 = FieldDesc::get(3, 1, 1);
constexpr int D = 3;
constexpr int ZD = 8;

PuiseuxApprox th(const Rational& k) { return PuiseuxApprox::theta_pow(F3, k); }
PuiseuxApprox cst(int c) { return PuiseuxApprox::from_int(F3, c); }
TateApprox C(const PuiseuxApprox& a, int tdeg = D) { return TateApprox::constant(1, tdeg, a); }
TateApprox t1(int tdeg = D) { return TateApprox::variable(1, tdeg, 1, F3); }

int rand_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(oracle::rng()); }

DrinfeldModule carlitz(int tdeg = D) { return DrinfeldModule(F3, {C(cst(1), tdeg)}); }
// theta + t1 tau + tau^2
DrinfeldModule rank2_example(int tdeg = D) { return DrinfeldModule(F3, {t1(tdeg), C(cst(1), tdeg)}); }

TateApprox random_small(bool nonzero = false) {
  for (;;) {
    TateApprox a = C(cst(rand_int(0, 2))) + C(th(1)).scale(FieldElem::from_int(F3, rand_int(0, 2))) +
                   t1().scale(FieldElem::from_int(F3, rand_int(0, 2)));
    if (!nonzero || !a.empty()) return a;
  }
}

// Row vector with entries of z-degree <= maxdeg stored at z-degree ZD.
std::vector<TateZApprox> random_row(int r, int maxdeg) {
  std::vector<TateZApprox> h;
  for (int k = 0; k < r; ++k) {
    TateZApprox e(1, D, ZD, Radius::unit_disc);
    for (int d = 0; d <= maxdeg; ++d) e[d] = random_small();
    h.push_back(e);
  }
  return h;
}

struct Framed {
  DrinfeldModule phi;
  ZFrameData fr;
};

// Carlitz and rank-2 frames with periods, Theta and Psi in place.
Framed framed(const DrinfeldModule& phi) {
  Framed out{phi, build_frame(phi, ZD)};
  const auto lam = periods_from_torsion(phi, theta_torsion(phi), 35);
  build_theta(phi, out.fr, lam, 30);
  psi_and_rat_check(out.fr);
  return out;
}

}  // namespace

TEST_CASE("companion frame shape and det Phi = c (z - theta)") {
  PrecisionScope scope(40);
  for (const auto& phi : {carlitz(), rank2_example()}) {
    const ZFrameData fr = build_frame(phi, ZD);
    CHECK(fr.r == phi.r());
    CHECK(static_cast<int>(fr.Phi.size()) == phi.r());
    for (int i = 0; i + 1 < fr.r; ++i)
      for (int j = 0; j < fr.r; ++j) {
        const TateZApprox& e = fr.Phi[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        if (j == i + 1)
          CHECK(e.equals_to_precision(TateZApprox::from_tate(phi.one(), ZD, Radius::unit_disc)));
        else
          CHECK(e.is_zero_to_precision());
      }
    TateApprox c;
    const IdentityCheck chk = check_det_phi(fr, &c);
    CHECK(chk.pass);
    CHECK(is_unit(c));
  }
  // rank 2 bottom row: [z - theta, -t1]
  const ZFrameData fr = build_frame(rank2_example(), ZD);
  CHECK(fr.Phi[1][0].equals_to_precision(TateZApprox::z_minus(C(th(1)), ZD, Radius::unit_disc)));
  CHECK(fr.Phi[1][1].equals_to_precision(-TateZApprox::from_tate(t1(), ZD, Radius::unit_disc)));
  // V is upper anti-triangular with A_r^(-(k-1)) on the anti-diagonal
  CHECK(fr.V[0][0].equals_to_precision(t1()));
  CHECK(fr.V[0][1].equals_to_precision(C(cst(1))));
  CHECK(fr.V[1][0].equals_to_precision(C(cst(1))));
  CHECK(fr.V[1][1].empty());
}

TEST_CASE("non-unit leading coefficient is rejected") {
  PrecisionScope scope(20);
  CHECK_THROWS_AS(build_frame(DrinfeldModule(F3, {t1()}), ZD), NotAUnit);
}

TEST_CASE("Anderson generating function of a period") {
  PrecisionScope scope(40);
  for (const auto& phi : {carlitz(), rank2_example()}) {
    const auto lam = periods_from_torsion(phi, theta_torsion(phi), 35);
    for (const auto& l : lam) {
      const AndersonGF f = agf(phi, l, 30);
      // lambda / (theta - z) has residue -lambda at z = theta
      CHECK((f.pole_coeffs.front() - l).is_zero_to_precision());
      CHECK(check_agf_series(phi, f, l, 4, Rational(15)).pass);
      CHECK(make_check("Delta", agf_delta(phi, f, ZD)).pass);

      // a_n = exp(lambda / theta^(n+1)) is a theta-division tower above 0
      const TateZApprox zs = f.z_series(5, Radius::unit_disc);
      const TwistedPoly pt = phi.phi_theta();
      CHECK(apply(pt, zs[0]).is_zero_to_precision());
      for (int n = 0; n < 5; ++n) CHECK((apply(pt, zs[n + 1]) - zs[n]).is_zero_to_precision());
    }
  }
}

TEST_CASE("g_lambda is Frobenius-invariant with D0 = lambda") {
  PrecisionScope scope(40);
  for (const auto& phi : {carlitz(), rank2_example()}) {
    ZFrameData fr = build_frame(phi, ZD);
    const auto lam = periods_from_torsion(phi, theta_torsion(phi), 35);
    for (const auto& l : lam) {
      const AndersonGF f = agf(phi, l, 30);
      const FrameVector g = g_lambda(phi, fr, f);
      ZMatrix row{g.entries};
      const ZMatrix lhs = zmat_mul(zmat_twist(row, -1), zmat_with_radius(fr.Phi, Radius::theta_disc));
      CHECK(make_check("g^(-1) Phi = g", zmat_sub(lhs, row)).pass);
      CHECK(make_check("D0", D0(g) - l).pass);
    }
  }
}

TEST_CASE("Theta: functional equation, determinant, first column at theta") {
  PrecisionScope scope(40);
  for (const auto& phi : {carlitz(), rank2_example()}) {
    Framed F = framed(phi);
    CHECK(check_theta_functional(F.fr).pass);
    CHECK(check_det_theta_omega(phi, F.fr, Rational(20)).pass);
    for (int k = 0; k < phi.r(); ++k)
      CHECK(make_check("col1", theta_col1_at_theta(phi, F.fr, k) + F.fr.periods[static_cast<std::size_t>(k)]).pass);
  }
}

TEST_CASE("dependent periods give a degenerate lattice") {
  PrecisionScope scope(40);
  const DrinfeldModule phi = rank2_example();
  ZFrameData fr = build_frame(phi, ZD);
  const auto lam = periods_from_torsion(phi, theta_torsion(phi), 35);
  CHECK_THROWS_AS(build_theta(phi, fr, {lam[0], lam[0]}, 30), DegenerateLattice);
}

TEST_CASE("Psi = Theta^-1 satisfies the dual functional equation") {
  PrecisionScope scope(40);
  for (const auto& phi : {carlitz(), rank2_example()}) {
    ZFrameData fr = build_frame(phi, ZD);
    build_theta(phi, fr, periods_from_torsion(phi, theta_torsion(phi), 35), 30);
    const RatReport rep = psi_and_rat_check(fr);
    CHECK(rep.checks.size() == 3);
    for (const auto& c : rep.checks) CHECK_MESSAGE(c.pass, c.name);
    CHECK(rep.psi_norm_ord > XRational(0));
  }
}

TEST_CASE("Artin-Schreier solver") {
  PrecisionScope scope(30);
  const TateZApprox zero(1, D, 3, Radius::theta_disc);
  CHECK(solve_artin_schreier_z({zero})[0].is_zero_to_precision());

  TateZApprox u = zero;
  u[0] = C(th(-3));
  const TateZApprox U = solve_artin_schreier_z({u})[0];
  CHECK(U[0].gauss_ord() == XRational(9));
  CHECK((U.twist(-1) - U - u).is_zero_to_precision());

  for (int trial = 0; trial < 20; ++trial) {
    TateZApprox w = zero;
    for (int i = 0; i <= 3; ++i) w[i] = random_small().scale(th(-(i + 1 + rand_int(0, 3))));
    const TateZApprox W = solve_artin_schreier_z({w})[0];
    CHECK((W.twist(-1) - W - w).is_zero_to_precision());
  }
}

TEST_CASE("iota intertwines z with phi* and Phi with sigma") {
  PrecisionScope scope(30);
  for (const auto& phi : {carlitz(), rank2_example()}) {
    const int r = phi.r();
    const ZFrameData fr = build_frame(phi, ZD);
    const TwistedPoly ps = star(phi.phi_theta());
    const TwistedPoly sig = TwistedPoly::monomial(phi.one(), 1, TwistVar::sigma);
    for (int trial = 0; trial < 8; ++trial) {
      const auto h = random_row(r, 3);
      std::vector<TateZApprox> zh;
      for (const auto& e : h) zh.push_back(e.times_z());
      CHECK(iota(phi, zh).equals_to_precision(iota(phi, h) * ps));

      const ZMatrix hPhi = zmat_mul(zmat_twist(ZMatrix{h}, -1), fr.Phi);
      CHECK(iota(phi, hPhi[0]).equals_to_precision(sig * iota(phi, h)));

      const auto back = iota_inverse(phi, iota(phi, h), ZD);
      for (int k = 0; k < r; ++k) CHECK(back[static_cast<std::size_t>(k)].equals_to_precision(h[static_cast<std::size_t>(k)]));

      CHECK((delta0(iota(phi, h)) - h[0].evaluate(th(1))).is_zero_to_precision());
    }
  }
}

TEST_CASE("exp_inverse recovers a logarithm") {
  PrecisionScope scope(40);
  for (const auto& phi : {carlitz(), rank2_example()}) {
    Framed F = framed(phi);
    for (const auto& h0 : {TateApprox(1, D), phi.one(), t1(), C(th(-1)) + t1() * t1()}) {
      const ExpInverseResult res = exp_inverse(phi, F.fr, h0, Rational(30));
      CHECK(res.pass);
      CHECK(res.split_index >= 0);
      CHECK((exp_eval(phi, res.xi, Rational(30)) - h0).is_zero_to_precision());
    }
  }
}

TEST_CASE("exp_inverse on random small inputs") {
  PrecisionScope scope(40);
  Framed F = framed(rank2_example());
  for (int trial = 0; trial < 6; ++trial) {
    const TateApprox h0 = random_small();
    const ExpInverseResult res = exp_inverse(F.phi, F.fr, h0, Rational(30));
    CHECK(res.pass);
  }
}
