#pragma once

#include "dtl/frobenius_frame.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dtl {

// eta is fixed by eta_theta in tau T_s[tau]; eta_{t_i} = 0.
struct Biderivation {
  TwistedPoly eta_theta;

  // delta^0 for j = 0 (phi_theta - theta), tau^j otherwise.
  static Biderivation delta(const DrinfeldModule& phi, int j);
  // eta^{m}: a -> m phi_a - a m.
  static Biderivation inner(const DrinfeldModule& phi, const TwistedPoly& m);

  Biderivation operator+(const Biderivation& o) const { return {eta_theta + o.eta_theta}; }
  Biderivation operator-(const Biderivation& o) const { return {eta_theta - o.eta_theta}; }
  // (f eta)_a = f eta_a
  Biderivation scale(const TateApprox& f) const { return {eta_theta.scale(f)}; }
  bool equals_to_precision(const Biderivation& o) const { return eta_theta.equals_to_precision(o.eta_theta); }
};

// a = sum_k a_k theta^k with a_k in F_q[t].
TwistedPoly eta_at(const Biderivation& eta, const DrinfeldModule& phi, const std::vector<TateApprox>& a);

struct Reduction {
  Biderivation reduced;  // deg_tau eta*_theta <= r
  TwistedPoly m;         // eta = eta* + eta^{m}
};
Reduction reduce_biderivation(const Biderivation& eta, const DrinfeldModule& phi);

// Coordinates in [delta^0], ..., [delta^(r-1)].
std::vector<TateApprox> derham_coords(const Biderivation& eta, const DrinfeldModule& phi);

// F_eta = sum_{i >= 1} f_i tau^i; coeffs[0] is zero.
struct QuasiPeriodicOp {
  std::vector<TateApprox> coeffs;
  TauSeriesTrunc as_series() const;
};
QuasiPeriodicOp quasi_periodic(const Biderivation& eta, const DrinfeldModule& phi, int N);
// F_eta(x) to absolute precision prec, tail certified from the exp coefficient bounds.
TateApprox quasi_periodic_eval(const Biderivation& eta, const DrinfeldModule& phi, const TateApprox& x,
                               const Rational& prec);
// F_eta a - a F_eta = eta_a exp to tau-order N.
IdentityCheck check_quasi_periodic(const Biderivation& eta, const DrinfeldModule& phi, const std::vector<TateApprox>& a,
                                   int N);

struct DeRhamMatrix {
  TMatrix Pi;  // row i: -lambda_i, f_i^(1)(theta), ..., f_i^(r-1)(theta)
  TateApprox det;
  TateApprox residue_det_upsilon;
  std::vector<IdentityCheck> checks;
};
DeRhamMatrix derham_matrix(const DrinfeldModule& phi, const std::vector<TateApprox>& periods, const Rational& prec,
                           int max_poles = 30);

struct FqConstantCheck {
  IdentityCheck check;
  std::optional<FieldElem> constant;
};
// x is c + O(prec) with c in F_q^x.
FqConstantCheck fq_constant_check(std::string name, const TateApprox& x);

struct LegendreReport {
  DeRhamMatrix dr;
  TateApprox ratio;  // det Pi * omega((-1)^(r-1) A_r) / pi
  FqConstantCheck constancy;
  // r = 2: lambda_2 F_delta1(lambda_1) - lambda_1 F_delta1(lambda_2) against d pi / omega(-A_2).
  std::optional<IdentityCheck> rank2_legendre;
  bool pass() const;
};
LegendreReport legendre_check(const DrinfeldModule& phi, const std::vector<TateApprox>& periods, const Rational& prec,
                              int max_poles = 30);

}  // namespace dtl
