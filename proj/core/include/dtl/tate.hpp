#pragma once

#include "dtl/puiseux.hpp"

#include <map>
#include <vector>

namespace dtl {

using MultiIndex = std::vector<int>;

// Graded lexicographic order: total degree first, then lexicographic with
// t_1 most significant.
struct GrlexLess {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const;
};

int total_degree(const MultiIndex& nu);

// sum_nu a_nu t^nu with |nu| <= tdeg. Absent multi-indices are exact zeros;
// stored coefficients may be zero to (finite) precision.
class TateApprox {
 public:
  using Map = std::map<MultiIndex, PuiseuxApprox, GrlexLess>;

  explicit TateApprox(int s = 1, int tdeg = 0) : s_(s), tdeg_(tdeg) {}

  static TateApprox constant(int s, int tdeg, const PuiseuxApprox& c);
  static TateApprox monomial(int s, int tdeg, const MultiIndex& nu, const PuiseuxApprox& c);
  // The variable t_i (1-based) with coefficient 1 in field f.
  static TateApprox variable(int s, int tdeg, int i, FieldDesc f);

  int s() const { return s_; }
  int tdeg() const { return tdeg_; }
  const Map& coeffs() const { return c_; }
  PuiseuxApprox coeff(const MultiIndex& nu) const;
  PuiseuxApprox constant_coeff() const { return coeff(MultiIndex(s_, 0)); }
  MultiIndex zero_index() const { return MultiIndex(s_, 0); }
  void set(const MultiIndex& nu, const PuiseuxApprox& c);
  void add_to(const MultiIndex& nu, const PuiseuxApprox& c);
  bool empty() const { return c_.empty(); }

  TateApprox operator+(const TateApprox& o) const;
  TateApprox operator-(const TateApprox& o) const;
  TateApprox operator-() const;
  TateApprox operator*(const TateApprox& o) const;
  TateApprox& operator+=(const TateApprox& o) { return *this = *this + o; }
  TateApprox& operator-=(const TateApprox& o) { return *this = *this - o; }
  TateApprox& operator*=(const TateApprox& o) { return *this = *this * o; }
  TateApprox scale(const PuiseuxApprox& c) const;
  TateApprox scale(const FieldElem& c) const;
  TateApprox twist(std::int64_t n) const;
  TateApprox truncate_prec(const XRational& prec) const;
  TateApprox with_tdeg(int tdeg) const;

  // min ord over stored coefficients; +inf marker when all are zero to precision.
  XRational gauss_ord() const;
  // gauss_ord is certified: it is below every stored coefficient's precision.
  bool gauss_ord_certified() const;
  // min precision over stored coefficients (+inf when exact).
  XRational min_prec() const;
  bool is_zero_to_precision() const;
  bool equals_to_precision(const TateApprox& o) const { return (*this - o).is_zero_to_precision(); }
  // Every stored coefficient lies in F_q (exact theta^0 constant fixed by Frobenius).
  bool is_fq_polynomial() const;

 private:
  int s_;
  int tdeg_;
  Map c_;
};

// Dominant-constant criterion; throws Undecidable on ties.
bool is_unit(const TateApprox& f);
TateApprox invert(const TateApprox& f);

struct TwistLimit {
  int ell;
  TateApprox limit;
};
TwistLimit twist_limit(const TateApprox& f);

enum class Radius { unit_disc, theta_disc };

// sum_i a_i z^i, i <= zdeg, a_i in T_s.
class TateZApprox {
 public:
  TateZApprox(int s = 1, int tdeg = 0, int zdeg = 0, Radius radius = Radius::unit_disc);
  static TateZApprox from_tate(const TateApprox& a, int zdeg, Radius radius);
  // z - c
  static TateZApprox z_minus(const TateApprox& c, int zdeg, Radius radius);

  int s() const { return s_; }
  int tdeg() const { return tdeg_; }
  int zdeg() const { return zdeg_; }
  Radius radius() const { return radius_; }
  const std::vector<TateApprox>& zcoeffs() const { return z_; }
  const TateApprox& operator[](int i) const { return z_[static_cast<std::size_t>(i)]; }
  TateApprox& operator[](int i) { return z_[static_cast<std::size_t>(i)]; }
  PuiseuxApprox constant_coeff() const { return z_[0].constant_coeff(); }

  TateZApprox operator+(const TateZApprox& o) const;
  TateZApprox operator-(const TateZApprox& o) const;
  TateZApprox operator-() const;
  TateZApprox operator*(const TateZApprox& o) const;
  TateZApprox& operator+=(const TateZApprox& o) { return *this = *this + o; }
  TateZApprox& operator-=(const TateZApprox& o) { return *this = *this - o; }
  TateZApprox scale(const TateApprox& c) const;
  TateZApprox scale(const PuiseuxApprox& c) const;
  TateZApprox twist(std::int64_t n) const;
  TateZApprox with_radius(Radius r) const;
  TateZApprox with_zdeg(int zdeg) const;
  TateZApprox truncate_prec(const XRational& prec) const;
  // Multiply by z (degree shifts; the top coefficient drops out of range).
  TateZApprox times_z() const;

  // sum a_i x^i over stored i.
  TateApprox evaluate(const PuiseuxApprox& x) const;
  TateApprox evaluate(const TateApprox& x) const;

  // unit_disc: min ord a_i; theta_disc: min (ord a_i - i).
  XRational norm_ord() const;
  bool is_zero_to_precision() const;
  bool equals_to_precision(const TateZApprox& o) const { return (*this - o).is_zero_to_precision(); }
  // Residual comparison up to z-degree k.
  bool equals_below_z(const TateZApprox& o, int k) const;

 private:
  int s_, tdeg_, zdeg_;
  Radius radius_;
  std::vector<TateApprox> z_;
};

bool is_unit(const TateZApprox& f);
TateZApprox invert(const TateZApprox& f);

// Anderson generating function in pole form:
//   sum_n c_n / (theta^(q^(n + shift)) - z),  n = 0..N.
struct AndersonGF {
  std::vector<TateApprox> pole_coeffs;
  int shift = 0;
  // Lower bound on ord of c_n / theta^(q^(n+shift)) over the dropped n > N.
  XRational tail_ord = XRational::infinity();

  int N() const { return static_cast<int>(pole_coeffs.size()) - 1; }
  AndersonGF twist(std::int64_t k) const;
  // Res_{z = theta}: minus the coefficient whose pole sits at theta.
  TateApprox residue_at_theta() const;
  // Value at z = x (x must avoid the poles used).
  TateApprox evaluate(const PuiseuxApprox& x) const;
  // z-expansion sum_i (sum_n c_n theta^(-q^(n+shift)(i+1))) z^i.
  TateZApprox z_series(int zdeg, Radius radius) const;
  // Lower bound on ord(a_i) - i over the z-coefficients a_i with i > zdeg.
  XRational z_tail_theta_ord(int zdeg) const;
};

// Anderson-Thakur element of a unit alpha.
TateApprox omega(const TateApprox& alpha, const Rational& prec, int tdeg);
TateZApprox omega(const TateZApprox& alpha, const Rational& prec);

// Omega(z) = (-theta)^(-q/(q-1)) prod_{i>=1} (1 - z/theta^(q^i)).
TateZApprox Omega(FieldDesc base, int s, int tdeg, int zdeg, const Rational& prec);

}  // namespace dtl
