#pragma once

#include "dtl/drinfeld.hpp"

#include <string>
#include <vector>

namespace dtl {

using TMatrix = std::vector<std::vector<TateApprox>>;
using ZMatrix = std::vector<std::vector<TateZApprox>>;

ZMatrix zmat_mul(const ZMatrix& a, const ZMatrix& b);
ZMatrix zmat_sub(const ZMatrix& a, const ZMatrix& b);
ZMatrix zmat_twist(const ZMatrix& a, std::int64_t n);
ZMatrix zmat_with_radius(const ZMatrix& a, Radius radius);
ZMatrix zmat_identity(int r, const TateZApprox& one);
TateZApprox zmat_det(const ZMatrix& a);
ZMatrix zmat_adjugate(const ZMatrix& a);
bool zmat_zero_to_precision(const ZMatrix& a);

// One verified identity. residual_ord is the certified vanishing order of the
// residual when it passes, else the ord of the surviving discrepancy.
struct IdentityCheck {
  std::string name;
  XRational residual_ord;
  bool pass = false;
};
IdentityCheck make_check(std::string name, const TateApprox& residual);
IdentityCheck make_check(std::string name, const TateZApprox& residual);
IdentityCheck make_check(std::string name, const ZMatrix& residual);

// 1 x r row over T_s[[z]]; tail_ord[k] bounds ord(a_i) - i of the dropped
// z-coefficients of entry k (+inf for polynomials).
struct FrameVector {
  std::vector<TateZApprox> entries;
  std::vector<XRational> tail_ord;
};

struct ZFrameData {
  int r = 0;
  int zdeg = 0;
  ZMatrix Phi;  // unit_disc, polynomial in z
  TMatrix V;
  std::vector<TateApprox> periods;
  std::vector<AndersonGF> agfs;
  ZMatrix Upsilon, Theta, Psi;  // theta_disc
  TateZApprox det_theta;
};

// Companion frame on the basis 1, sigma, ..., sigma^(r-1).
ZFrameData build_frame(const DrinfeldModule& phi, int zdeg);
// det Phi = c (z - theta) with c a unit; returns c through `c`.
IdentityCheck check_det_phi(const ZFrameData& fr, TateApprox* c = nullptr);

// Pole form sum_n alpha_n lambda^(n) / (theta^(q^n) - z) with the least
// n <= max_poles whose dropped tail lies beyond the working precision.
AndersonGF agf(const DrinfeldModule& phi, const TateApprox& lambda, int max_poles);
// z-coefficients against exp(lambda / theta^(n+1)), n <= zdeg.
IdentityCheck check_agf_series(const DrinfeldModule& phi, const AndersonGF& f, const TateApprox& lambda, int zdeg,
                               const Rational& prec);
// Delta_phi(f) = sum A_j f^(j) - (z - theta) f as a z-series.
TateZApprox agf_delta(const DrinfeldModule& phi, const AndersonGF& f, int zdeg);

// g = -[f^(1), ..., f^(r)] V.
FrameVector g_lambda(const DrinfeldModule& phi, const ZFrameData& fr, const AndersonGF& f);
// First entry at z = theta.
TateApprox D0(const FrameVector& g);

// Fills periods, agfs, Upsilon, Theta = Upsilon^(1) V and det Theta.
void build_theta(const DrinfeldModule& phi, ZFrameData& fr, const std::vector<TateApprox>& periods, int max_poles);
IdentityCheck check_theta_functional(const ZFrameData& fr);
// det Theta * omega((-1)^(r-1) A_r^(-r+1) / (z - theta^q)) lies in F_q^x.
IdentityCheck check_det_theta_omega(const DrinfeldModule& phi, const ZFrameData& fr, const Rational& prec);

struct RatReport {
  std::vector<IdentityCheck> checks;
  XRational psi_norm_ord;  // min theta-norm ord over the entries of Psi
};
// Sets Psi = Theta^(-1) and checks Psi^(-1) = Phi Psi.
RatReport psi_and_rat_check(ZFrameData& fr);

// U^(-1) - U = u coefficientwise.
std::vector<TateZApprox> solve_artin_schreier_z(const std::vector<TateZApprox>& u);

// iota(h) = sum_k h_k . sigma^(k-1), z acting as right multiplication by phi_theta^*.
TwistedPoly iota(const DrinfeldModule& phi, const std::vector<TateZApprox>& h);
// Unique preimage with z-degree <= zdeg.
std::vector<TateZApprox> iota_inverse(const DrinfeldModule& phi, const TwistedPoly& m, int zdeg);

// Theta_{k1}(theta) through the pole sums of the f^(j).
TateApprox theta_col1_at_theta(const DrinfeldModule& phi, const ZFrameData& fr, int k);

struct ExpInverseResult {
  TateApprox xi;
  TateApprox residual;  // exp(xi) - h0
  int split_index = 0;
  int v_terms = 0;
  bool pass = false;
};
ExpInverseResult exp_inverse(const DrinfeldModule& phi, const ZFrameData& fr, const TateApprox& h0,
                             const Rational& prec);

}  // namespace dtl
