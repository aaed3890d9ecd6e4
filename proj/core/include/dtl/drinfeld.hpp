#pragma once

#include "dtl/twisted_ops.hpp"

#include <memory>
#include <vector>

namespace dtl {

// phi_theta = theta + A_1 tau + ... + A_r tau^r over T_s.
class DrinfeldModule {
 public:
  // A holds A_1..A_r; A_r zero to precision is refused (DegenerateModule).
  DrinfeldModule(FieldDesc base, std::vector<TateApprox> A);

  FieldDesc base() const { return base_; }
  std::int64_t q() const { return base_.q(); }
  int r() const { return static_cast<int>(A_.size()); }
  int s() const { return A_.front().s(); }
  int tdeg() const { return A_.front().tdeg(); }
  // 1-based
  const TateApprox& A(int j) const { return A_[static_cast<std::size_t>(j - 1)]; }
  const std::vector<TateApprox>& coeffs() const { return A_; }
  bool leading_unit() const { return is_unit(A_.back()); }
  TwistedPoly phi_theta() const;
  TateApprox theta() const;
  TateApprox one() const;

  // Recursion-method coefficients 0..N, computed at working precision at
  // least P and shared between copies of this module.
  std::vector<TateApprox> alphas(int N, const Rational& P) const;
  std::vector<TateApprox> betas(int N, const Rational& P) const;

 private:
  struct Cache;
  FieldDesc base_;
  std::vector<TateApprox> A_;
  std::shared_ptr<Cache> cache_;
};

// a = sum_k a_k theta^k with a_k in F_q[t]; returns phi_a.
TwistedPoly phi_a(const DrinfeldModule& phi, const std::vector<TateApprox>& a);

// S[k-1] = S_k, sorted.
struct ShadowedPartition {
  std::vector<std::vector<int>> S;
};
std::vector<ShadowedPartition> shadowed_partitions(int r, int i);

enum class SeriesMethod { recursion, partition };

struct ExpLogData {
  int N = 0;
  std::vector<TateApprox> alphas;
  std::vector<TateApprox> betas;
};

// Coefficients 0..N at the current working precision.
std::vector<TateApprox> exp_coeffs(const DrinfeldModule& phi, int N, SeriesMethod method);
std::vector<TateApprox> log_coeffs(const DrinfeldModule& phi, int N, SeriesMethod method);
ExpLogData exp_log_data(const DrinfeldModule& phi, int N, SeriesMethod method);

// Lower bound on Ord(alpha_i) from the Gauss ords of A_1..A_r.
Rational exp_coeff_bound(const DrinfeldModule& phi, int i);
// Lower bound on Ord(beta_n) = -(q^n - 1) C_phi.
Rational log_coeff_bound(const DrinfeldModule& phi, int n);

struct ConvergenceData {
  int k_phi;
  Rational C_phi;
  // ||f|| < eps_phi  iff  Ord(f) > eps_ord; eps_ord = -min_j Ord(alpha_j)/(q^j - 1).
  Rational eps_ord;
  int certified_through;  // last alpha index inspected
};
// Uses alpha_1..alpha_N at the current working precision.
ConvergenceData convergence_data(const DrinfeldModule& phi, int N = 12);

// Absolute precision prec; the tail past the last term is certified by the
// coefficient bounds.
TateApprox exp_eval(const DrinfeldModule& phi, const TateApprox& x, const Rational& prec);
TateApprox log_eval(const DrinfeldModule& phi, const TateApprox& x, const Rational& prec);

// gamma_n(z) = sum over P_r(n) of prod tau^j(A_i) / (z - theta^(q^(i+j))).
struct GammaZ {
  struct Term {
    TateApprox coeff;
    std::vector<int> poles;  // m with pole at theta^(q^m)
  };
  std::vector<Term> terms;
  int s = 1, tdeg = 0;
  // Substitutes z = f; each f - theta^(q^m) must be a unit.
  TateApprox evaluate(const TateApprox& f) const;
};
GammaZ gamma_n_z(const DrinfeldModule& phi, int n);

// Seed layer: kernel basis of theta X + sum (A_i)_0 X^(q^i); every later
// multi-index continues each branch with the maximal-valuation root.
std::vector<TateApprox> theta_torsion(const DrinfeldModule& phi);

// lambda_i = theta * log(gamma_i).
std::vector<TateApprox> periods_from_torsion(const DrinfeldModule& phi, const std::vector<TateApprox>& basis,
                                             const Rational& prec);

// f_n = exp(xi / theta^(n+1)), n = 0..N.
std::vector<TateApprox> division_tower(const DrinfeldModule& phi, const TateApprox& xi, int N, const Rational& prec);
// theta^(n+1) log(f_n) at the first n with ||f_n|| < eps_phi, checked against n+1.
TateApprox reconstruct(const DrinfeldModule& phi, const std::vector<TateApprox>& tower, const Rational& prec);

}  // namespace dtl
