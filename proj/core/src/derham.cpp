#include "dtl/derham.hpp"

#include "dtl/errors.hpp"

#include <algorithm>

namespace dtl {

namespace {

Rational qpow(std::int64_t q, int i) {
  Rational v(1);
  for (int k = 0; k < i; ++k) v *= q;
  return v;
}

TateApprox tate_like(const DrinfeldModule& phi) { return TateApprox(phi.s(), phi.tdeg()); }

TateApprox as_element(const DrinfeldModule& phi, const std::vector<TateApprox>& a) {
  TateApprox acc = tate_like(phi);
  for (std::size_t k = 0; k < a.size(); ++k)
    acc += a[k].scale(PuiseuxApprox::theta_pow(phi.base(), Rational(static_cast<std::int64_t>(k))));
  return acc;
}

TwistedPoly tau_zero(const DrinfeldModule& phi) { return TwistedPoly(TwistVar::tau, phi.s(), phi.tdeg()); }

}  // namespace

Biderivation Biderivation::delta(const DrinfeldModule& phi, int j) {
  if (j == 0) return {phi.phi_theta() - TwistedPoly::constant(phi.theta())};
  return {TwistedPoly::monomial(phi.one(), j)};
}

Biderivation Biderivation::inner(const DrinfeldModule& phi, const TwistedPoly& m) {
  TwistedPoly e = m * phi.phi_theta() - TwistedPoly::constant(phi.theta()) * m;
  e.set(0, TateApprox(phi.s(), phi.tdeg()));  // m has no tau^0 term, so this coefficient is 0
  return {e};
}

TwistedPoly eta_at(const Biderivation& eta, const DrinfeldModule& phi, const std::vector<TateApprox>& a) {
  const TwistedPoly th = TwistedPoly::constant(phi.theta());
  const TwistedPoly pt = phi.phi_theta();
  TwistedPoly acc = tau_zero(phi);
  // eta_{theta^k} and phi_{theta^k}, k = 0, 1, ...
  TwistedPoly e = tau_zero(phi);
  TwistedPoly p = TwistedPoly::constant(phi.one());
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (!a[k].empty()) acc = acc + e.scale(a[k]);
    e = th * e + eta.eta_theta * p;
    p = pt * p;
  }
  return acc;
}

Reduction reduce_biderivation(const Biderivation& eta, const DrinfeldModule& phi) {
  if (!phi.leading_unit()) throw NotAUnit("reduce_biderivation: A_r is not a unit");
  const int r = phi.r();
  const TateApprox& Ar = phi.A(r);
  Reduction out{eta, tau_zero(phi)};
  TwistedPoly& e = out.reduced.eta_theta;
  while (e.degree() > r) {
    const int n = e.degree();
    const int s = n - r;
    const TateApprox c = e.coeff(n);
    if (c.is_zero_to_precision()) {
      e.set(n, TateApprox(phi.s(), phi.tdeg()));
      continue;
    }
    // c may have large negative ord; keep P digits beyond it
    const XRational co = c.gauss_ord();
    TateApprox quot;
    {
      PrecisionScope wide(working_precision() + std::max(Rational(0), -co.value()));
      quot = c * invert(Ar.twist(s));
    }
    const TwistedPoly m1 = TwistedPoly::monomial(quot, s);
    e = e - Biderivation::inner(phi, m1).eta_theta;
    e.set(n, TateApprox(phi.s(), phi.tdeg()));
    out.m = out.m + m1;
  }
  return out;
}

std::vector<TateApprox> derham_coords(const Biderivation& eta, const DrinfeldModule& phi) {
  const int r = phi.r();
  const Reduction red = reduce_biderivation(eta, phi);
  const TwistedPoly& e = red.reduced.eta_theta;
  const TateApprox cr = e.coeff(r);
  const XRational co = cr.gauss_ord();
  PrecisionScope wide(working_precision() + (co.is_inf() ? Rational(0) : std::max(Rational(0), -co.value())));
  const TateApprox cr_over_ar = cr * invert(phi.A(r));
  std::vector<TateApprox> out(static_cast<std::size_t>(r), tate_like(phi));
  out[0] = cr_over_ar;
  for (int j = 1; j < r; ++j) out[static_cast<std::size_t>(j)] = e.coeff(j) - cr_over_ar * phi.A(j);
  return out;
}

TauSeriesTrunc QuasiPeriodicOp::as_series() const {
  const auto& c0 = coeffs.front();
  TauSeriesTrunc f(static_cast<int>(coeffs.size()) - 1, c0.s(), c0.tdeg());
  for (std::size_t i = 0; i < coeffs.size(); ++i) f[static_cast<int>(i)] = coeffs[i];
  return f;
}

QuasiPeriodicOp quasi_periodic(const Biderivation& eta, const DrinfeldModule& phi, int N) {
  const std::vector<TateApprox> alpha = phi.alphas(N, working_precision());
  QuasiPeriodicOp out;
  out.coeffs.assign(static_cast<std::size_t>(N) + 1, tate_like(phi));
  for (int i = 1; i <= N; ++i) {
    TateApprox acc = tate_like(phi);
    for (const auto& [j, c] : eta.eta_theta.coeffs())
      if (j >= 1 && j <= i) acc += c * alpha[static_cast<std::size_t>(i - j)].twist(j);
    out.coeffs[static_cast<std::size_t>(i)] = acc.scale(bracket(phi.base(), i).inv());
  }
  return out;
}

TateApprox quasi_periodic_eval(const Biderivation& eta, const DrinfeldModule& phi, const TateApprox& x,
                               const Rational& prec) {
  const XRational xo = x.gauss_ord();
  if (xo.is_inf() || eta.eta_theta.degree() < 1) return tate_like(phi).truncate_prec(XRational(prec));
  const Rational xv = xo.value();
  const std::int64_t q = phi.q();
  const int K = eta.eta_theta.degree();
  XRational cmin_x = XRational::infinity();
  for (const auto& [j, c] : eta.eta_theta.coeffs()) cmin_x = min(cmin_x, c.gauss_ord());
  if (cmin_x.is_inf()) return tate_like(phi).truncate_prec(XRational(prec));
  const Rational cmin = cmin_x.value();

  // Piece (j, m = i - j) of f_i x^(i) has ord >= ord c_j + q^j lb(m).
  auto lb = [&](int m) { return exp_coeff_bound(phi, m) + qpow(q, m) * (xv - 1); };
  const Rational target = std::max(prec - cmin, Rational(0));
  int limit = 0;
  for (std::int64_t v = q; v < 1000000000000000LL / (q * q * q); v *= q) ++limit;
  constexpr int window = 16;
  int Ne = -1;
  Rational lowest(0);
  for (int n = 0; n + window < limit; ++n) {
    bool ok = true;
    for (int m = n + 1; m <= n + window && ok; ++m) ok = lb(m) >= target;
    if (ok) {
      Ne = n;
      break;
    }
    const Rational l = lb(n);
    lowest = std::min(lowest, cmin + (l < 0 ? qpow(q, K) * l : l));
  }
  if (Ne < 0) throw UncertifiedTail("quasi-periodic operator: no tail certificate within the term limit");
  const int N = Ne + K;
  const Rational P = prec - lowest + 2;
  PrecisionScope scope(P);
  const QuasiPeriodicOp F = quasi_periodic(eta, phi, N);
  TateApprox acc = tate_like(phi);
  for (int i = 1; i <= N; ++i) {
    const TateApprox& f = F.coeffs[static_cast<std::size_t>(i)];
    if (!f.empty()) acc += (f * x.twist(i)).truncate_prec(XRational(prec));
  }
  return acc.truncate_prec(XRational(prec));
}

IdentityCheck check_quasi_periodic(const Biderivation& eta, const DrinfeldModule& phi, const std::vector<TateApprox>& a,
                                   int N) {
  const TauSeriesTrunc F = quasi_periodic(eta, phi, N).as_series();
  const TauSeriesTrunc av = TauSeriesTrunc::from_poly(TwistedPoly::constant(as_element(phi, a)), N);
  TauSeriesTrunc ex(N, phi.s(), phi.tdeg());
  const auto alpha = phi.alphas(N, working_precision());
  for (int i = 0; i <= N; ++i) ex[i] = alpha[static_cast<std::size_t>(i)];
  const TauSeriesTrunc ea = TauSeriesTrunc::from_poly(eta_at(eta, phi, a), N);
  const TauSeriesTrunc res = tw_mul(F, av) - tw_mul(av, F) - tw_mul(ea, ex);
  IdentityCheck chk{"F_eta a - a F_eta = eta_a exp", XRational::infinity(), true};
  XRational worst = XRational::infinity();
  for (int i = 0; i <= N; ++i) {
    const IdentityCheck c = make_check("", res[i]);
    chk.pass = chk.pass && c.pass;
    chk.residual_ord = min(chk.residual_ord, c.residual_ord);
    if (!c.pass) worst = min(worst, c.residual_ord);
  }
  if (!chk.pass) chk.residual_ord = worst;
  return chk;
}

FqConstantCheck fq_constant_check(std::string name, const TateApprox& x) {
  FqConstantCheck out;
  const FieldElem c = x.constant_coeff().constant_term();
  TateApprox res = x;
  if (!c.is_zero()) res -= TateApprox::constant(x.s(), x.tdeg(), PuiseuxApprox::constant(c));
  out.check = make_check(std::move(name), res);
  if (!c.is_zero() && c.in_base_field()) out.constant = c;
  out.check.pass = out.check.pass && out.constant.has_value();
  return out;
}

DeRhamMatrix derham_matrix(const DrinfeldModule& phi, const std::vector<TateApprox>& periods, const Rational& prec,
                           int max_poles) {
  if (!phi.leading_unit()) throw NotAUnit("derham_matrix: A_r is not a unit");
  const int r = phi.r();
  if (static_cast<int>(periods.size()) != r) throw std::invalid_argument("derham_matrix needs r periods");
  const PuiseuxApprox th = PuiseuxApprox::theta_pow(phi.base(), Rational(1));
  DeRhamMatrix out;
  // Columns j >= 1 by the direct quasi-periodic series, column 0 by AGF residues.
  ZMatrix residue_form;
  XRational col0 = XRational::infinity(), direct = XRational::infinity();
  bool col0_ok = true, direct_ok = true;
  for (const auto& lam : periods) {
    const AndersonGF f = agf(phi, lam, max_poles);
    std::vector<TateApprox> row{-lam};
    std::vector<TateZApprox> rrow{TateZApprox::from_tate(f.residue_at_theta(), 0, Radius::unit_disc)};
    const IdentityCheck c0 = make_check("", f.residue_at_theta() + lam);
    col0_ok = col0_ok && c0.pass;
    col0 = min(col0, c0.residual_ord);
    for (int j = 1; j < r; ++j) {
      const TateApprox v = f.twist(j).evaluate(th).truncate_prec(XRational(prec));
      const TateApprox w = quasi_periodic_eval(Biderivation::delta(phi, j), phi, lam, prec);
      const IdentityCheck c = make_check("", v - w);
      direct_ok = direct_ok && c.pass;
      direct = min(direct, c.residual_ord);
      row.push_back(v);
      rrow.push_back(TateZApprox::from_tate(w, 0, Radius::unit_disc));
    }
    out.Pi.push_back(std::move(row));
    residue_form.push_back(std::move(rrow));
  }
  out.checks.push_back({"column 0 = Res_{z=theta} f_lambda = -lambda", col0, col0_ok});
  out.checks.push_back({"F_delta^j(lambda) = f_lambda^(j)(theta)", direct, direct_ok});

  ZMatrix pz;
  for (const auto& row : out.Pi) {
    std::vector<TateZApprox> zr;
    for (const auto& x : row) zr.push_back(TateZApprox::from_tate(x, 0, Radius::unit_disc));
    pz.push_back(std::move(zr));
  }
  out.det = zmat_det(pz)[0].truncate_prec(XRational(prec));
  out.residue_det_upsilon = zmat_det(residue_form)[0].truncate_prec(XRational(prec));
  out.checks.push_back(make_check("det Pi = Res_{z=theta} det Upsilon", out.det - out.residue_det_upsilon));
  if (out.det.is_zero_to_precision()) throw DegenerateLattice("det Pi vanishes to precision");
  return out;
}

bool LegendreReport::pass() const {
  for (const auto& c : dr.checks)
    if (!c.pass) return false;
  if (!constancy.check.pass) return false;
  return !rank2_legendre || rank2_legendre->pass;
}

LegendreReport legendre_check(const DrinfeldModule& phi, const std::vector<TateApprox>& periods, const Rational& prec,
                              int max_poles) {
  const int r = phi.r();
  LegendreReport rep;
  rep.dr = derham_matrix(phi, periods, prec, max_poles);
  TateApprox ar = phi.A(r);
  if (r % 2 == 0) ar = -ar;
  const TateApprox om = omega(ar, prec, phi.tdeg());
  const PuiseuxApprox pi_inv = carlitz_period(phi.base(), prec + 2).inv();
  rep.ratio = (rep.dr.det * om).scale(pi_inv).truncate_prec(XRational(prec));
  rep.constancy = fq_constant_check("det Pi * omega((-1)^(r-1) A_r) / pi in F_q^x", rep.ratio);
  if (r == 2 && rep.constancy.constant) {
    const Biderivation d1 = Biderivation::delta(phi, 1);
    const TateApprox& l1 = periods[0];
    const TateApprox& l2 = periods[1];
    const TateApprox lhs =
        l2 * quasi_periodic_eval(d1, phi, l1, prec) - l1 * quasi_periodic_eval(d1, phi, l2, prec);
    // d pi / omega(-A_2)
    const TateApprox rhs =
        invert(om).scale(carlitz_period(phi.base(), prec + 2)).scale(*rep.constancy.constant);
    rep.rank2_legendre = make_check("lambda_2 F_delta1(lambda_1) - lambda_1 F_delta1(lambda_2) = d pi / omega(-A_2)",
                                    (lhs - rhs).truncate_prec(XRational(prec)));
  }
  return rep;
}

}  // namespace dtl
