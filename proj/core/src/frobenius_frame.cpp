#include "dtl/frobenius_frame.hpp"

#include "dtl/errors.hpp"

#include <algorithm>
#include <stdexcept>

namespace dtl {

namespace {

Rational qpow(std::int64_t q, int i) {
  Rational r(1);
  for (int k = 0; k < i; ++k) r *= q;
  return r;
}

TateZApprox zero_like(const TateZApprox& a) { return TateZApprox(a.s(), a.tdeg(), a.zdeg(), a.radius()); }

XRational coeff_prec(const TateZApprox& a) {
  XRational p = XRational::infinity();
  for (const auto& c : a.zcoeffs()) p = min(p, c.min_prec());
  return p;
}

XRational coeff_ord(const TateZApprox& a) {
  XRational o = XRational::infinity();
  for (const auto& c : a.zcoeffs()) o = min(o, c.gauss_ord());
  return o;
}

// lower bound on the true ord: stored terms and the precision both bound it
XRational ord_lower_bound(const TateApprox& a) { return min(a.gauss_ord(), a.min_prec()); }

TateApprox tate_like(const DrinfeldModule& phi) { return TateApprox(phi.s(), phi.tdeg()); }

PuiseuxApprox theta(const DrinfeldModule& phi) { return PuiseuxApprox::theta_pow(phi.base(), Rational(1)); }

}  // namespace

// ------------------------------------------------------------------ matrices

ZMatrix zmat_mul(const ZMatrix& a, const ZMatrix& b) {
  const std::size_t n = a.size(), m = b.front().size(), k = b.size();
  ZMatrix r(n, std::vector<TateZApprox>(m));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      TateZApprox acc = a[i][0] * b[0][j];
      for (std::size_t l = 1; l < k; ++l) acc += a[i][l] * b[l][j];
      r[i][j] = acc;
    }
  return r;
}

ZMatrix zmat_sub(const ZMatrix& a, const ZMatrix& b) {
  ZMatrix r = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) r[i][j] = a[i][j] - b[i][j];
  return r;
}

ZMatrix zmat_twist(const ZMatrix& a, std::int64_t n) {
  ZMatrix r = a;
  for (auto& row : r)
    for (auto& x : row) x = x.twist(n);
  return r;
}

ZMatrix zmat_with_radius(const ZMatrix& a, Radius radius) {
  ZMatrix r = a;
  for (auto& row : r)
    for (auto& x : row) x = x.with_radius(radius);
  return r;
}

ZMatrix zmat_identity(int r, const TateZApprox& one) {
  ZMatrix m(static_cast<std::size_t>(r), std::vector<TateZApprox>(static_cast<std::size_t>(r), zero_like(one)));
  for (int i = 0; i < r; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = one;
  return m;
}

namespace {

ZMatrix minor_of(const ZMatrix& a, std::size_t row, std::size_t col) {
  ZMatrix m;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i == row) continue;
    std::vector<TateZApprox> r;
    for (std::size_t j = 0; j < a.size(); ++j)
      if (j != col) r.push_back(a[i][j]);
    m.push_back(std::move(r));
  }
  return m;
}

}  // namespace

TateZApprox zmat_det(const ZMatrix& a) {
  if (a.size() == 1) return a[0][0];
  TateZApprox acc = zero_like(a[0][0]);
  for (std::size_t j = 0; j < a.size(); ++j) {
    const TateZApprox t = a[0][j] * zmat_det(minor_of(a, 0, j));
    acc = j % 2 == 0 ? acc + t : acc - t;
  }
  return acc;
}

ZMatrix zmat_adjugate(const ZMatrix& a) {
  const std::size_t n = a.size();
  if (n == 1) {
    TateZApprox one = zero_like(a[0][0]);
    one[0] = TateApprox::constant(one.s(), one.tdeg(),
                                  PuiseuxApprox::from_int(a[0][0].constant_coeff().field(), 1));
    return {{one}};
  }
  ZMatrix r(n, std::vector<TateZApprox>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const TateZApprox c = zmat_det(minor_of(a, j, i));
      r[i][j] = (i + j) % 2 == 0 ? c : -c;
    }
  return r;
}

bool zmat_zero_to_precision(const ZMatrix& a) {
  for (const auto& row : a)
    for (const auto& x : row)
      if (!x.is_zero_to_precision()) return false;
  return true;
}

IdentityCheck make_check(std::string name, const TateApprox& residual) {
  const bool pass = residual.is_zero_to_precision();
  return {std::move(name), pass ? residual.min_prec() : residual.gauss_ord(), pass};
}

IdentityCheck make_check(std::string name, const TateZApprox& residual) {
  const bool pass = residual.is_zero_to_precision();
  return {std::move(name), pass ? coeff_prec(residual) : coeff_ord(residual), pass};
}

IdentityCheck make_check(std::string name, const ZMatrix& residual) {
  IdentityCheck c{std::move(name), XRational::infinity(), true};
  XRational bad = XRational::infinity();
  for (const auto& row : residual)
    for (const auto& x : row) {
      if (x.is_zero_to_precision()) {
        c.residual_ord = min(c.residual_ord, coeff_prec(x));
      } else {
        c.pass = false;
        bad = min(bad, coeff_ord(x));
      }
    }
  if (!c.pass) c.residual_ord = bad;
  return c;
}

// --------------------------------------------------------------------- frame

ZFrameData build_frame(const DrinfeldModule& phi, int zdeg) {
  if (!phi.leading_unit()) throw NotAUnit("leading coefficient A_r is not a unit");
  const int r = phi.r();
  ZFrameData fr;
  fr.r = r;
  fr.zdeg = zdeg;
  const TateApprox inv = invert(phi.A(r).twist(-r));
  const TateZApprox zero(phi.s(), phi.tdeg(), zdeg, Radius::unit_disc);
  fr.Phi.assign(static_cast<std::size_t>(r), std::vector<TateZApprox>(static_cast<std::size_t>(r), zero));
  for (int i = 0; i + 1 < r; ++i)
    fr.Phi[static_cast<std::size_t>(i)][static_cast<std::size_t>(i + 1)] =
        TateZApprox::from_tate(phi.one(), zdeg, Radius::unit_disc);
  auto& last = fr.Phi[static_cast<std::size_t>(r - 1)];
  last[0] = last[0] + TateZApprox::z_minus(phi.theta(), zdeg, Radius::unit_disc).scale(inv);
  for (int j = 1; j < r; ++j)
    last[static_cast<std::size_t>(j)] =
        last[static_cast<std::size_t>(j)] -
        TateZApprox::from_tate(phi.A(j).twist(-j) * inv, zdeg, Radius::unit_disc);

  fr.V.assign(static_cast<std::size_t>(r), std::vector<TateApprox>(static_cast<std::size_t>(r), tate_like(phi)));
  for (int j = 0; j < r; ++j)
    for (int k = 0; j + k < r; ++k)
      fr.V[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] = phi.A(j + k + 1).twist(-k);
  return fr;
}

IdentityCheck check_det_phi(const ZFrameData& fr, TateApprox* c) {
  const TateZApprox d = zmat_det(fr.Phi);
  const TateApprox lead = fr.zdeg >= 1 ? d[1] : TateApprox(d.s(), d.tdeg());
  const FieldDesc f = fr.Phi.back().front()[1].constant_coeff().field();
  const TateApprox th = TateApprox::constant(d.s(), d.tdeg(), PuiseuxApprox::theta_pow(f, Rational(1)));
  IdentityCheck chk = make_check("det Phi = c (z - theta)", d - TateZApprox::z_minus(th, fr.zdeg, Radius::unit_disc).scale(lead));
  bool unit = false;
  try {
    unit = is_unit(lead);
  } catch (const Undecidable&) {
    unit = false;
  }
  chk.pass = chk.pass && unit;
  if (c) *c = lead;
  return chk;
}

// ----------------------------------------------------------------------- AGF

AndersonGF agf(const DrinfeldModule& phi, const TateApprox& lambda, int max_poles) {
  const Rational P = working_precision();
  const std::int64_t q = phi.q();
  AndersonGF gf;
  const XRational lo = lambda.gauss_ord();
  if (lo.is_inf()) {
    gf.pole_coeffs.push_back(lambda);
    return gf;
  }
  int limit = 0;
  for (std::int64_t v = q; v < 1000000000000000LL / q; v *= q) ++limit;
  // ord of alpha_m lambda^(m) / theta^(q^m)
  auto lb = [&](int m) { return exp_coeff_bound(phi, m) + qpow(q, m) * (lo.value() + 1); };
  auto window = [&](int N) {
    Rational w = lb(N + 1);
    for (int m = N + 2; m <= std::min(N + 16, limit); ++m) w = std::min(w, lb(m));
    return w;
  };
  int N = 0;
  while (N < max_poles && N + 1 < limit && window(N) < P) ++N;
  // exact pole coefficients still lose the dropped poles
  gf.tail_ord = XRational(window(N));
  const auto al = phi.alphas(N, P);
  for (int n = 0; n <= N; ++n) gf.pole_coeffs.push_back(al[static_cast<std::size_t>(n)] * lambda.twist(n));
  return gf;
}

IdentityCheck check_agf_series(const DrinfeldModule& phi, const AndersonGF& f, const TateApprox& lambda, int zdeg,
                               const Rational& prec) {
  const TateZApprox zs = f.z_series(zdeg, Radius::unit_disc);
  TateZApprox res = zero_like(zs);
  for (int n = 0; n <= zdeg; ++n) {
    const TateApprox e = exp_eval(phi, lambda.scale(PuiseuxApprox::theta_pow(phi.base(), Rational(-(n + 1)))), prec);
    res[n] = (zs[n] - e).truncate_prec(XRational(prec));
  }
  return make_check("f_lambda z-coefficients = exp(lambda / theta^(n+1))", res);
}

TateZApprox agf_delta(const DrinfeldModule& phi, const AndersonGF& f, int zdeg) {
  const TateZApprox f0 = f.z_series(zdeg, Radius::unit_disc);
  TateZApprox acc = -(TateZApprox::z_minus(phi.theta(), zdeg, Radius::unit_disc) * f0);
  for (int j = 1; j <= phi.r(); ++j) acc += f.twist(j).z_series(zdeg, Radius::unit_disc).scale(phi.A(j));
  return acc;
}

FrameVector g_lambda(const DrinfeldModule& phi, const ZFrameData& fr, const AndersonGF& f) {
  const int r = phi.r();
  std::vector<TateZApprox> fs;
  std::vector<XRational> tails;
  for (int j = 1; j <= r; ++j) {
    const AndersonGF fj = f.twist(j);
    fs.push_back(fj.z_series(fr.zdeg, Radius::theta_disc));
    tails.push_back(fj.z_tail_theta_ord(fr.zdeg));
  }
  FrameVector g;
  for (int k = 0; k < r; ++k) {
    TateZApprox acc(phi.s(), phi.tdeg(), fr.zdeg, Radius::theta_disc);
    XRational tail = XRational::infinity();
    for (int j = 0; j < r; ++j) {
      const TateApprox& v = fr.V[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
      if (v.empty()) continue;
      acc -= fs[static_cast<std::size_t>(j)].scale(v);
      tail = min(tail, tails[static_cast<std::size_t>(j)] + ord_lower_bound(v));
    }
    g.entries.push_back(acc);
    g.tail_ord.push_back(tail);
  }
  return g;
}

TateApprox D0(const FrameVector& g) {
  const TateZApprox& g1 = g.entries.front();
  for (const auto& c : g1.zcoeffs())
    for (const auto& [nu, a] : c.coeffs())
      if (a.has_field())
        return g1.evaluate(PuiseuxApprox::theta_pow(a.field(), Rational(1))).truncate_prec(g.tail_ord.front());
  return TateApprox(g1.s(), g1.tdeg()).truncate_prec(g.tail_ord.front());
}

// ------------------------------------------------------------- Upsilon/Theta

void build_theta(const DrinfeldModule& phi, ZFrameData& fr, const std::vector<TateApprox>& periods, int max_poles) {
  const int r = phi.r();
  if (static_cast<int>(periods.size()) != r)
    throw std::invalid_argument("build_theta needs " + std::to_string(r) + " periods");
  fr.periods = periods;
  fr.agfs.clear();
  fr.Upsilon.clear();
  fr.Theta.clear();
  for (const auto& lam : periods) {
    const AndersonGF gf = agf(phi, lam, max_poles);
    std::vector<TateZApprox> row;
    for (int j = 0; j < r; ++j) row.push_back(gf.twist(j).z_series(fr.zdeg, Radius::theta_disc));
    fr.Upsilon.push_back(std::move(row));
    std::vector<TateZApprox> th;
    for (const auto& e : g_lambda(phi, fr, gf).entries) th.push_back(-e);
    fr.Theta.push_back(std::move(th));
    fr.agfs.push_back(gf);
  }
  fr.det_theta = zmat_det(fr.Theta);
  if (fr.det_theta.is_zero_to_precision()) throw DegenerateLattice("det Theta is zero to precision");
}

IdentityCheck check_theta_functional(const ZFrameData& fr) {
  const ZMatrix lhs = zmat_mul(zmat_twist(fr.Theta, -1), zmat_with_radius(fr.Phi, Radius::theta_disc));
  return make_check("Theta^(-1) Phi = Theta", zmat_sub(lhs, fr.Theta));
}

IdentityCheck check_det_theta_omega(const DrinfeldModule& phi, const ZFrameData& fr, const Rational& prec) {
  const int r = phi.r();
  const int zdeg = fr.zdeg;
  const TateApprox thq =
      TateApprox::constant(phi.s(), phi.tdeg(), PuiseuxApprox::theta_pow(phi.base(), Rational(phi.q())));
  TateApprox ar = phi.A(r).twist(-r + 1);
  if (r % 2 == 0) ar = -ar;
  const TateZApprox alpha = invert(TateZApprox::z_minus(thq, zdeg, Radius::theta_disc)).scale(ar);
  const TateZApprox prod = (fr.det_theta * omega(alpha, prec)).truncate_prec(XRational(prec));
  const FieldElem c = prod.constant_coeff().constant_term();
  TateZApprox res = prod;
  res[0] = res[0] - TateApprox::constant(phi.s(), phi.tdeg(), PuiseuxApprox::constant(c));
  IdentityCheck chk = make_check("det Theta * omega((-1)^(r-1) A_r^(-r+1) / (z - theta^q)) in F_q^x", res);
  chk.pass = chk.pass && !c.is_zero() && c.in_base_field();
  return chk;
}

RatReport psi_and_rat_check(ZFrameData& fr) {
  bool unit = false;
  try {
    unit = is_unit(fr.det_theta);
  } catch (const Undecidable& e) {
    throw NotInvertibleOnThetaDisc(std::string("det Theta: ") + e.what());
  }
  if (!unit) throw NotInvertibleOnThetaDisc("det Theta is not a unit of T_s{z/theta}");
  const TateZApprox inv = invert(fr.det_theta);
  fr.Psi = zmat_adjugate(fr.Theta);
  for (auto& row : fr.Psi)
    for (auto& x : row) x = x * inv;

  RatReport rep;
  const ZMatrix phi_t = zmat_with_radius(fr.Phi, Radius::theta_disc);
  rep.checks.push_back(make_check("Psi^(-1) = Phi Psi", zmat_sub(zmat_twist(fr.Psi, -1), zmat_mul(phi_t, fr.Psi))));
  TateZApprox one = zero_like(fr.det_theta);
  one[0] = TateApprox::constant(one.s(), one.tdeg(), PuiseuxApprox::from_int(fr.det_theta.constant_coeff().field(), 1));
  rep.checks.push_back(make_check("Psi Theta = 1", zmat_sub(zmat_mul(fr.Psi, fr.Theta), zmat_identity(fr.r, one))));
  rep.checks.push_back(make_check("det Psi det Theta = 1", zmat_det(fr.Psi) * fr.det_theta - one));
  rep.psi_norm_ord = XRational::infinity();
  for (const auto& row : fr.Psi)
    for (const auto& x : row) rep.psi_norm_ord = min(rep.psi_norm_ord, x.norm_ord());
  return rep;
}

// ------------------------------------------------------------ Artin-Schreier

namespace {

// U with U^(1/q) - U = c.
PuiseuxApprox artin_schreier(const PuiseuxApprox& c) {
  if (c.is_exact_zero()) return c;
  if (c.prec().finite() && c.prec().value() <= 0)
    throw PrecisionExhausted("Artin-Schreier coefficient not known below ord 0");
  const FieldDesc f = c.field();
  std::vector<std::pair<std::int64_t, FieldElem>> pos;
  FieldElem c0 = FieldElem::zero(f);
  for (const auto& [j, a] : c.terms()) {
    if (j < 0) throw PrecisionExhausted("Artin-Schreier root of a negative-ord coefficient needs unbounded ramification");
    if (j == 0)
      c0 = a;
    else
      pos.emplace_back(j, a);
  }
  PuiseuxApprox U = PuiseuxApprox::zero(f);
  if (!c0.is_zero()) {
    // V^q - V + c0 = 0 over a finite field, U = V^q
    const auto roots = additive_roots(c0, {{0, -FieldElem::one(f)}, {1, FieldElem::one(f)}}, false);
    U = PuiseuxApprox::constant(roots.front().frobenius(1));
  }
  // U = sum_{k >= 1} c_pos^(k)
  const PuiseuxApprox cp = PuiseuxApprox::from_terms(f, c.e(), pos, c.prec());
  const XRational cap = precision_cap(cp.effective_ord());
  PuiseuxApprox term = cp.twist(1);
  for (;;) {
    U += term;
    if (term.empty() || term.valuation() >= cap) break;
    term = term.twist(1);
  }
  return U.truncate(cap);
}

}  // namespace

std::vector<TateZApprox> solve_artin_schreier_z(const std::vector<TateZApprox>& u) {
  std::vector<TateZApprox> out;
  for (const auto& e : u) {
    TateZApprox U = zero_like(e);
    for (int i = 0; i <= e.zdeg(); ++i)
      for (const auto& [nu, c] : e[i].coeffs()) U[i].set(nu, artin_schreier(c));
    out.push_back(std::move(U));
  }
  return out;
}

// ---------------------------------------------------------------------- iota

TwistedPoly iota(const DrinfeldModule& phi, const std::vector<TateZApprox>& h) {
  const TwistedPoly ps = star(phi.phi_theta());
  const TwistedPoly one = TwistedPoly::constant(phi.one(), TwistVar::sigma);
  TwistedPoly acc(TwistVar::sigma, phi.s(), phi.tdeg());
  for (std::size_t k = 0; k < h.size(); ++k) {
    TwistedPoly basis = TwistedPoly::monomial(phi.one(), static_cast<int>(k), TwistVar::sigma);
    for (int d = 0; d <= h[k].zdeg(); ++d) {
      if (!h[k][d].empty()) acc = acc + basis.scale(h[k][d]);
      basis = basis * ps;
    }
  }
  return acc;
}

std::vector<TateZApprox> iota_inverse(const DrinfeldModule& phi, const TwistedPoly& m, int zdeg) {
  if (m.var() != TwistVar::sigma) throw MixedVariable("iota_inverse expects a sigma polynomial");
  const int r = phi.r();
  const TwistedPoly ps = star(phi.phi_theta());
  std::vector<TateZApprox> h(static_cast<std::size_t>(r), TateZApprox(phi.s(), phi.tdeg(), zdeg, Radius::unit_disc));
  // basis[d][i] = sigma^i (phi*)^d, leading term at sigma^(r d + i)
  std::vector<std::vector<TwistedPoly>> basis;
  TwistedPoly pd = TwistedPoly::constant(phi.one(), TwistVar::sigma);
  for (int d = 0; d <= zdeg; ++d) {
    std::vector<TwistedPoly> row;
    for (int i = 0; i < r; ++i) row.push_back(TwistedPoly::monomial(phi.one(), i, TwistVar::sigma) * pd);
    basis.push_back(std::move(row));
    pd = pd * ps;
  }
  TwistedPoly rem = m;
  while (rem.degree() >= 0) {
    const int n = rem.degree();
    const TateApprox top = rem.coeff(n);
    if (top.is_zero_to_precision()) {
      rem.set(n, TateApprox(phi.s(), phi.tdeg()));
      continue;
    }
    const int d = n / r, i = n % r;
    if (d > zdeg) throw std::invalid_argument("sigma-degree exceeds the z-degree cap");
    const TwistedPoly& b = basis[static_cast<std::size_t>(d)][static_cast<std::size_t>(i)];
    const TateApprox c = top * invert(b.coeff(n));
    h[static_cast<std::size_t>(i)][d] += c;
    rem = rem - b.scale(c);
    rem.set(n, TateApprox(phi.s(), phi.tdeg()));
  }
  return h;
}

// --------------------------------------------------------------- exp_inverse

TateApprox theta_col1_at_theta(const DrinfeldModule& phi, const ZFrameData& fr, int k) {
  const AndersonGF& gf = fr.agfs.at(static_cast<std::size_t>(k));
  TateApprox acc = tate_like(phi);
  for (int j = 1; j <= phi.r(); ++j) acc += gf.twist(j).evaluate(theta(phi)) * phi.A(j);
  return acc;
}

ExpInverseResult exp_inverse(const DrinfeldModule& phi, const ZFrameData& fr, const TateApprox& h0,
                             const Rational& prec) {
  if (fr.Psi.empty()) throw std::invalid_argument("exp_inverse needs Psi; run psi_and_rat_check first");
  const int r = fr.r;
  const int zdeg = fr.zdeg;
  ExpInverseResult out;

  std::vector<TateApprox> col;
  Rational lowest(0);
  for (int k = 0; k < r; ++k) {
    col.push_back(theta_col1_at_theta(phi, fr, k));
    const XRational o = ord_lower_bound(col.back());
    if (o.finite()) lowest = std::min(lowest, o.value());
  }
  const Rational target = prec - lowest + 1;
  PrecisionScope scope(std::max(working_precision(), target + 2));

  // h Psi with h = [h0, 0, ..., 0]
  std::vector<TateZApprox> hpsi;
  for (int k = 0; k < r; ++k) {
    TateZApprox e = fr.Psi[0][static_cast<std::size_t>(k)];
    for (int i = 0; i <= zdeg; ++i) e[i] = e[i] * h0;
    hpsi.push_back(std::move(e));
  }

  // least M0 with every coefficient past it of theta-norm below 1
  auto theta_ord = [&](int i) {
    XRational o = XRational::infinity();
    for (const auto& e : hpsi) o = min(o, ord_lower_bound(e[i]) - Rational(i));
    return o;
  };
  int M0 = zdeg;
  while (M0 > 0 && theta_ord(M0) > XRational(0)) --M0;
  if (M0 == zdeg) throw SplitFailed("no split with ||v||_theta < 1 within z-degree " + std::to_string(zdeg));
  out.split_index = M0;

  std::vector<TateZApprox> u, v;
  XRational eps = XRational::infinity();
  for (const auto& e : hpsi) {
    TateZApprox a = zero_like(e), b = zero_like(e);
    for (int i = 0; i <= zdeg; ++i) (i <= M0 ? a : b)[i] = e[i];
    u.push_back(std::move(a));
    v.push_back(std::move(b));
  }
  for (int i = M0 + 1; i <= zdeg; ++i) eps = min(eps, theta_ord(i));

  const std::vector<TateZApprox> U = solve_artin_schreier_z(u);
  const PuiseuxApprox th = theta(phi);
  std::vector<TateApprox> w;
  for (int k = 0; k < r; ++k) w.push_back(U[static_cast<std::size_t>(k)].evaluate(th));
  // sum_{n >= 1} v^(n) at z = theta; ||v^(n)||_theta <= ||v||_theta^(q^n)
  if (eps.finite()) {
    for (int n = 1; eps * qpow(phi.q(), n) < XRational(target); ++n) {
      for (int k = 0; k < r; ++k)
        w[static_cast<std::size_t>(k)] += v[static_cast<std::size_t>(k)].twist(n).evaluate(th);
      out.v_terms = n;
    }
  }
  TateApprox xi = h0;
  for (int k = 0; k < r; ++k) xi += w[static_cast<std::size_t>(k)] * col[static_cast<std::size_t>(k)];
  out.xi = xi.truncate_prec(XRational(prec));
  out.residual = (exp_eval(phi, out.xi, prec) - h0).truncate_prec(XRational(prec));
  out.pass = out.residual.is_zero_to_precision() && out.residual.min_prec() >= XRational(prec);
  return out;
}

}  // namespace dtl
