#pragma once

#include "dtl/field_tower.hpp"
#include "dtl/rational.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace dtl {

// Thread-local working precision P. Operations that produce infinite
// expansions (inverse, roots, infinite products) and inexact products keep
// terms only below cap(x) = P + max(0, ord x).
Rational working_precision();
XRational precision_cap(const XRational& ord);

class PrecisionScope {
 public:
  explicit PrecisionScope(Rational P);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  Rational saved_;
};

// sum_j c_j theta^(-j/e) + O(theta^(-P)). ord(theta) = -1, so the term at j
// has ord j/e. Terms are sorted by j and every stored j/e < P.
class PuiseuxApprox {
 public:
  struct Term {
    std::int64_t j;
    std::int32_t c;  // discrete log in field()
  };

  PuiseuxApprox() = default;  // exact zero, no field attached yet

  static PuiseuxApprox zero(XRational prec = XRational::infinity());
  static PuiseuxApprox zero(FieldDesc f, XRational prec = XRational::infinity());
  static PuiseuxApprox constant(const FieldElem& c);
  static PuiseuxApprox from_int(FieldDesc f, std::int64_t c);
  // c * theta^k (ord = -k), exact.
  static PuiseuxApprox monomial(const FieldElem& c, const Rational& k);
  static PuiseuxApprox theta_pow(FieldDesc f, const Rational& k);
  // Terms given as (j, coefficient) with ramification e; zero coefficients
  // and terms at or above prec are dropped.
  static PuiseuxApprox from_terms(FieldDesc f, std::int64_t e,
                                  const std::vector<std::pair<std::int64_t, FieldElem>>& terms,
                                  XRational prec = XRational::infinity());

  bool has_field() const { return field_ != nullptr; }
  FieldDesc field() const;
  std::int64_t e() const { return e_; }
  const XRational& prec() const { return prec_; }
  const std::vector<Term>& raw_terms() const { return terms_; }
  std::vector<std::pair<std::int64_t, FieldElem>> terms() const;
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  bool is_exact() const { return prec_.is_inf(); }
  bool is_exact_zero() const { return terms_.empty() && prec_.is_inf(); }

  // +inf marker when no term is stored.
  XRational valuation() const;
  FieldElem lead_coeff() const;  // precondition: !empty()
  // Coefficient of theta^(-k), k rational; zero if absent.
  FieldElem coeff_at(const Rational& ord) const;
  // Coefficient of theta^0.
  FieldElem constant_term() const { return coeff_at(Rational(0)); }
  // ord of a (certified) or prec for an empty approximation.
  XRational effective_ord() const { return empty() ? prec_ : valuation(); }

  PuiseuxApprox operator+(const PuiseuxApprox& o) const;
  PuiseuxApprox operator-(const PuiseuxApprox& o) const;
  PuiseuxApprox operator-() const;
  PuiseuxApprox operator*(const PuiseuxApprox& o) const;
  PuiseuxApprox operator/(const PuiseuxApprox& o) const;
  PuiseuxApprox& operator+=(const PuiseuxApprox& o) { return *this = *this + o; }
  PuiseuxApprox& operator-=(const PuiseuxApprox& o) { return *this = *this - o; }
  PuiseuxApprox& operator*=(const PuiseuxApprox& o) { return *this = *this * o; }

  PuiseuxApprox scale(const FieldElem& c) const;
  // Exact shift by theta^k.
  PuiseuxApprox shift(const Rational& k) const;
  PuiseuxApprox inv() const;
  PuiseuxApprox pow(std::int64_t n) const;
  // n-fold twist: coefficients to the q^n-th power (inverse Frobenius for n < 0).
  PuiseuxApprox twist(std::int64_t n) const;
  // Deterministic n-th root, gcd(n, p) = 1; may extend the field.
  PuiseuxApprox nth_root(std::int64_t n) const;
  PuiseuxApprox truncate(const XRational& prec) const;
  PuiseuxApprox embed(FieldDesc f) const;

  // Difference has no stored term.
  bool equals_to_precision(const PuiseuxApprox& o) const { return (*this - o).empty(); }
  // Exact constant in F_q^x: single theta^0 term, coefficient fixed by Frobenius.
  std::optional<FieldElem> as_fq_constant() const;

 private:
  friend struct PuiseuxAccess;
  const detail::FieldImpl* field_ = nullptr;
  std::int64_t e_ = 1;
  std::vector<Term> terms_;
  XRational prec_;

  void normalize();
  void drop_at_or_above(const XRational& prec);
};

// [i] = theta^(q^i) - theta, exact.
PuiseuxApprox bracket(FieldDesc f, int i);

// Segments are (slope, length) with slope the ord of the certified roots,
// ordered by increasing slope; x_left/x_right are the hull abscissae.
struct NewtonSegment {
  Rational slope;
  std::int64_t length;
  std::int64_t x_left, x_right;
};
struct NewtonPolygon {
  std::vector<NewtonSegment> segments;
};
NewtonPolygon newton_polygon(const std::map<std::int64_t, PuiseuxApprox>& coeffs);

// c + sum_i c_i X^(q^i); keys of `coeffs` are i.
struct AdditivePoly {
  std::map<int, PuiseuxApprox> coeffs;
  PuiseuxApprox constant;
};

enum class RootStrategy { max_valuation_root, all_slope_leaders, kernel_basis };

std::vector<PuiseuxApprox> solve_additive(const AdditivePoly& poly, RootStrategy strategy);

// Value of the additive polynomial at x.
PuiseuxApprox eval_additive(const AdditivePoly& poly, const PuiseuxApprox& x);

// theta (-theta)^(1/(q-1)) prod_{i>=1} (1 - theta^(1-q^i))^(-1) to absolute precision prec.
PuiseuxApprox carlitz_period(FieldDesc base, const Rational& prec);

}  // namespace dtl
