#include "dtl/drinfeld.hpp"
#include "dtl/errors.hpp"

#include <algorithm>

namespace dtl {

namespace {

void all_indices(int s, MultiIndex& cur, int pos, int left, std::vector<MultiIndex>& out) {
  if (pos == s) {
    out.push_back(cur);
    return;
  }
  for (int v = 0; v <= left; ++v) {
    cur[static_cast<std::size_t>(pos)] = v;
    all_indices(s, cur, pos + 1, left - v, out);
  }
  cur[static_cast<std::size_t>(pos)] = 0;
}

bool dominated(const MultiIndex& mu, const MultiIndex& nu) {
  for (std::size_t i = 0; i < mu.size(); ++i)
    if (mu[i] > nu[i]) return false;
  return true;
}

MultiIndex diff(const MultiIndex& nu, const MultiIndex& mu) {
  MultiIndex r(nu.size());
  for (std::size_t i = 0; i < nu.size(); ++i) r[i] = nu[i] - mu[i];
  return r;
}

}  // namespace

std::vector<TateApprox> theta_torsion(const DrinfeldModule& phi) {
  const int s = phi.s();
  const int D = phi.tdeg();
  const MultiIndex zero(static_cast<std::size_t>(s), 0);

  // theta X + sum_i (A_i)_0 X^(q^i)
  AdditivePoly layer;
  layer.coeffs[0] = PuiseuxApprox::theta_pow(phi.base(), Rational(1));
  for (int i = 1; i <= phi.r(); ++i) {
    const PuiseuxApprox c = phi.A(i).coeff(zero);
    if (!c.is_exact_zero()) layer.coeffs[i] = c;
  }
  const auto seeds = solve_additive(layer, RootStrategy::kernel_basis);
  if (static_cast<int>(seeds.size()) < phi.r())
    throw TorsionRankDeficit("seed layer has " + std::to_string(seeds.size()) + " independent roots, expected " +
                             std::to_string(phi.r()));

  std::vector<MultiIndex> order;
  MultiIndex cur(static_cast<std::size_t>(s), 0);
  all_indices(s, cur, 0, D, order);
  std::sort(order.begin(), order.end(), GrlexLess());

  const TwistedPoly pt = phi.phi_theta();
  std::vector<TateApprox> out;
  for (const auto& seed : seeds) {
    TateApprox g(s, D);
    g.set(zero, seed);
    for (const auto& nu : order) {
      if (nu == zero) continue;
      // contributions of already fixed lower multi-indices
      AdditivePoly eq = layer;
      eq.constant = PuiseuxApprox::zero(phi.base());
      for (int i = 1; i <= phi.r(); ++i)
        for (const auto& [mu, a] : phi.A(i).coeffs()) {
          if (mu == zero || !dominated(mu, nu)) continue;
          eq.constant += a * g.coeff(diff(nu, mu)).twist(i);
        }
      g.set(nu, solve_additive(eq, RootStrategy::max_valuation_root).front());
    }
    if (!apply(pt, g).is_zero_to_precision())
      throw InsufficientPrecision("torsion candidate fails phi_theta(g) = 0 at the working precision");
    out.push_back(std::move(g));
  }
  return out;
}

std::vector<TateApprox> periods_from_torsion(const DrinfeldModule& phi, const std::vector<TateApprox>& basis,
                                             const Rational& prec) {
  std::vector<TateApprox> out;
  for (const auto& g : basis) out.push_back((phi.theta() * log_eval(phi, g, prec + 1)).truncate_prec(XRational(prec)));
  return out;
}

std::vector<TateApprox> division_tower(const DrinfeldModule& phi, const TateApprox& xi, int N, const Rational& prec) {
  std::vector<TateApprox> out;
  for (int n = 0; n <= N; ++n)
    out.push_back(exp_eval(phi, xi.scale(PuiseuxApprox::theta_pow(phi.base(), Rational(-(n + 1)))), prec));
  return out;
}

TateApprox reconstruct(const DrinfeldModule& phi, const std::vector<TateApprox>& tower, const Rational& prec) {
  const ConvergenceData cd = convergence_data(phi);
  auto lift = [&](int n) {
    const PuiseuxApprox up = PuiseuxApprox::theta_pow(phi.base(), Rational(n + 1));
    return log_eval(phi, tower[static_cast<std::size_t>(n)], prec + n + 1).scale(up).truncate_prec(XRational(prec));
  };
  for (int n = 0; n + 1 < static_cast<int>(tower.size()); ++n) {
    const TateApprox& f = tower[static_cast<std::size_t>(n)];
    if (!f.gauss_ord_certified() || f.gauss_ord() <= XRational(cd.eps_ord)) continue;
    const TateApprox a = lift(n);
    if (a.equals_to_precision(lift(n + 1))) return a;
    throw TowerNotConvergentInWindow("reconstruction unstable between n = " + std::to_string(n) + " and " +
                                     std::to_string(n + 1));
  }
  throw TowerNotConvergentInWindow("no tower level inside the isometry ball with a successor");
}

}  // namespace dtl
