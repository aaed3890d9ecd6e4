#include "dtl/errors.hpp"
#include "dtl/tate.hpp"

namespace dtl {

namespace {

TateApprox one_like(const TateApprox& a, FieldDesc f) {
  return TateApprox::constant(a.s(), a.tdeg(), PuiseuxApprox::from_int(f, 1));
}

TateZApprox one_like(const TateZApprox& a, FieldDesc f) {
  return TateZApprox::from_tate(TateApprox::constant(a.s(), a.tdeg(), PuiseuxApprox::from_int(f, 1)), a.zdeg(),
                                a.radius());
}

// gamma * prod_{i>=0} x^(q^i) / alpha^(i), x the constant coefficient. The
// product is kept to relative precision prec; it stops at the first factor
// whose deviation from 1 is below precision.
template <class T>
T omega_product(const T& alpha, const Rational& prec) {
  if (!is_unit(alpha)) throw NotAUnit("omega requires a unit");
  PrecisionScope scope(prec);
  const PuiseuxApprox x = alpha.constant_coeff();
  const FieldDesc f = x.field();
  const T one = one_like(alpha, f);
  const T g = alpha.scale(x.inv()) - one;
  T prod = one;
  for (int i = 0;; ++i) {
    if (i > 64) throw PrecisionExhausted("omega product did not settle");
    const T gi = g.twist(i).truncate_prec(XRational(prec));
    if (gi.is_zero_to_precision()) break;
    prod = (prod * invert(one + gi)).truncate_prec(XRational(prec));
  }
  return prod.scale(x.nth_root(f.q() - 1));
}

}  // namespace

TateApprox omega(const TateApprox& alpha, const Rational& prec, int tdeg) {
  return omega_product(alpha.with_tdeg(tdeg), prec);
}

TateZApprox omega(const TateZApprox& alpha, const Rational& prec) { return omega_product(alpha, prec); }

TateZApprox Omega(FieldDesc base, int s, int tdeg, int zdeg, const Rational& prec) {
  const std::int64_t q = base.q();
  // (-theta)^(-q/(q-1)) = r^(-q) theta^(-q/(q-1)) with r^(q-1) = -1
  const auto [r, F] = extract_root(FieldElem::from_int(base, -1), q - 1);
  const PuiseuxApprox lead = PuiseuxApprox::monomial(r.pow(-q), Rational(-q, q - 1));
  const TateApprox one = TateApprox::constant(s, tdeg, PuiseuxApprox::from_int(F, 1));
  TateZApprox prod = TateZApprox::from_tate(one, zdeg, Radius::theta_disc);
  // Factor i deviates from 1 by ||z/theta^(q^i)||_theta, of ord q^i - 1.
  std::int64_t qi = q;
  for (; Rational(qi - 1) < prec; qi *= q) {
    TateZApprox factor = TateZApprox::from_tate(one, zdeg, Radius::theta_disc);
    if (zdeg >= 1)
      factor[1] = TateApprox::constant(s, tdeg, -PuiseuxApprox::theta_pow(F, Rational(-qi)));
    prod = prod * factor;
  }
  // Omitted factors perturb the theta-disc norm at ord >= qi - 1; every
  // z-coefficient, including vanishing ones, carries that bound.
  const Rational bound = Rational(q, q - 1) + Rational(qi - 1);
  prod = prod.scale(lead);
  for (int i = 0; i <= zdeg; ++i)
    prod[i].add_to(MultiIndex(s, 0), PuiseuxApprox::zero(F, XRational(bound + Rational(i))));
  return prod.truncate_prec(XRational(bound));
}

}  // namespace dtl
