#include "dtl/drinfeld.hpp"

#include "dtl/errors.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace dtl {

namespace {

Rational qpow(std::int64_t q, int i) {
  Rational r(1);
  for (int k = 0; k < i; ++k) r *= q;
  return r;
}

std::int64_t ipow(std::int64_t q, int i) {
  std::int64_t r = 1;
  for (int k = 0; k < i; ++k) r *= q;
  return r;
}

// theta^(q^a) - theta^(q^b), exact.
PuiseuxApprox theta_diff(FieldDesc f, std::int64_t q, int a, int b) {
  return PuiseuxApprox::theta_pow(f, Rational(ipow(q, a))) - PuiseuxApprox::theta_pow(f, Rational(ipow(q, b)));
}

TateApprox alpha_step(const DrinfeldModule& phi, const std::vector<TateApprox>& al, int i) {
  TateApprox acc(phi.s(), phi.tdeg());
  for (int j = 1; j <= std::min(i, phi.r()); ++j) acc += phi.A(j) * al[static_cast<std::size_t>(i - j)].twist(j);
  return acc.scale(theta_diff(phi.base(), phi.q(), i, 0).inv());
}

TateApprox beta_step(const DrinfeldModule& phi, const std::vector<TateApprox>& be, int n) {
  TateApprox acc(phi.s(), phi.tdeg());
  for (int j = 1; j <= std::min(n, phi.r()); ++j) acc += be[static_cast<std::size_t>(n - j)] * phi.A(j).twist(n - j);
  return -acc.scale(theta_diff(phi.base(), phi.q(), n, 0).inv());
}

std::vector<TateApprox> recursion(const DrinfeldModule& phi, std::vector<TateApprox> v, int N, bool exp) {
  if (v.empty()) v.push_back(phi.one());
  for (int i = static_cast<int>(v.size()); i <= N; ++i) v.push_back(exp ? alpha_step(phi, v, i) : beta_step(phi, v, i));
  v.resize(static_cast<std::size_t>(N + 1), TateApprox(phi.s(), phi.tdeg()));
  return v;
}

void tile(int r, int i, int pos, ShadowedPartition& cur, std::vector<ShadowedPartition>& out) {
  if (pos == i) {
    out.push_back(cur);
    return;
  }
  for (int k = 1; k <= std::min(r, i - pos); ++k) {
    cur.S[static_cast<std::size_t>(k - 1)].push_back(pos);
    tile(r, i, pos + k, cur, out);
    cur.S[static_cast<std::size_t>(k - 1)].pop_back();
  }
}

// A^S = prod_k prod_{j in S_k} tau^j(A_k).
TateApprox a_power(const DrinfeldModule& phi, const ShadowedPartition& S) {
  TateApprox acc = phi.one();
  for (int k = 1; k <= phi.r(); ++k)
    for (int j : S.S[static_cast<std::size_t>(k - 1)]) acc *= phi.A(k).twist(j);
  return acc;
}

}  // namespace

struct DrinfeldModule::Cache {
  std::mutex mu;
  Rational alpha_prec{-1};
  std::vector<TateApprox> alphas;
  Rational beta_prec{-1};
  std::vector<TateApprox> betas;
};

DrinfeldModule::DrinfeldModule(FieldDesc base, std::vector<TateApprox> A)
    : base_(base), A_(std::move(A)), cache_(std::make_shared<Cache>()) {
  if (A_.empty()) throw DegenerateModule("rank 0");
  if (A_.back().is_zero_to_precision()) throw DegenerateModule("leading coefficient A_r is zero to precision");
  for (const auto& a : A_)
    if (a.s() != A_.front().s()) throw MixedVariable("coefficients in different numbers of t-variables");
}

TateApprox DrinfeldModule::theta() const {
  return TateApprox::constant(s(), tdeg(), PuiseuxApprox::theta_pow(base_, Rational(1)));
}

TateApprox DrinfeldModule::one() const { return TateApprox::constant(s(), tdeg(), PuiseuxApprox::from_int(base_, 1)); }

TwistedPoly DrinfeldModule::phi_theta() const {
  TwistedPoly f = TwistedPoly::constant(theta());
  for (int j = 1; j <= r(); ++j) f.set(j, A(j));
  return f;
}

std::vector<TateApprox> DrinfeldModule::alphas(int N, const Rational& P) const {
  std::lock_guard<std::mutex> lock(cache_->mu);
  PrecisionScope scope(std::max(P, cache_->alpha_prec));
  if (cache_->alpha_prec < P) {
    cache_->alphas.clear();
    cache_->alpha_prec = P;
  }
  if (static_cast<int>(cache_->alphas.size()) <= N) cache_->alphas = recursion(*this, cache_->alphas, N, true);
  return {cache_->alphas.begin(), cache_->alphas.begin() + N + 1};
}

std::vector<TateApprox> DrinfeldModule::betas(int N, const Rational& P) const {
  std::lock_guard<std::mutex> lock(cache_->mu);
  PrecisionScope scope(std::max(P, cache_->beta_prec));
  if (cache_->beta_prec < P) {
    cache_->betas.clear();
    cache_->beta_prec = P;
  }
  if (static_cast<int>(cache_->betas.size()) <= N) cache_->betas = recursion(*this, cache_->betas, N, false);
  return {cache_->betas.begin(), cache_->betas.begin() + N + 1};
}

TwistedPoly phi_a(const DrinfeldModule& phi, const std::vector<TateApprox>& a) {
  TwistedPoly acc(TwistVar::tau, phi.s(), phi.tdeg());
  TwistedPoly power = TwistedPoly::constant(phi.one());
  const TwistedPoly pt = phi.phi_theta();
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (!a[k].is_fq_polynomial()) throw std::invalid_argument("phi_a: coefficients must lie in F_q[t]");
    if (!a[k].empty()) acc = acc + TwistedPoly::constant(a[k].with_tdeg(phi.tdeg())) * power;
    if (k + 1 < a.size()) power = power * pt;
  }
  return acc;
}

std::vector<ShadowedPartition> shadowed_partitions(int r, int i) {
  if (r < 1 || i < 0) throw std::invalid_argument("shadowed_partitions: r >= 1 and i >= 0 required");
  std::vector<ShadowedPartition> out;
  ShadowedPartition cur{std::vector<std::vector<int>>(static_cast<std::size_t>(r))};
  tile(r, i, 0, cur, out);
  return out;
}

std::vector<TateApprox> exp_coeffs(const DrinfeldModule& phi, int N, SeriesMethod method) {
  if (method == SeriesMethod::recursion) return recursion(phi, {}, N, true);
  std::vector<TateApprox> out;
  const FieldDesc f = phi.base();
  for (int i = 0; i <= N; ++i) {
    TateApprox acc(phi.s(), phi.tdeg());
    for (const auto& S : shadowed_partitions(phi.r(), i)) {
      // D_i(S) = prod over tile starts k of [i-k]^(q^k) = theta^(q^i) - theta^(q^k)
      PuiseuxApprox D = PuiseuxApprox::from_int(f, 1);
      for (const auto& Sk : S.S)
        for (int k : Sk) D *= theta_diff(f, phi.q(), i, k);
      acc += a_power(phi, S).scale(D.inv());
    }
    out.push_back(acc);
  }
  return out;
}

std::vector<TateApprox> log_coeffs(const DrinfeldModule& phi, int N, SeriesMethod method) {
  if (method == SeriesMethod::recursion) return recursion(phi, {}, N, false);
  std::vector<TateApprox> out;
  const FieldDesc f = phi.base();
  for (int i = 0; i <= N; ++i) {
    TateApprox acc(phi.s(), phi.tdeg());
    for (const auto& S : shadowed_partitions(phi.r(), i)) {
      // L(S) = prod_k prod_{j in S_k} -[j+k] = theta - theta^(q^(j+k))
      PuiseuxApprox L = PuiseuxApprox::from_int(f, 1);
      for (int k = 1; k <= phi.r(); ++k)
        for (int j : S.S[static_cast<std::size_t>(k - 1)]) L *= theta_diff(f, phi.q(), 0, j + k);
      acc += a_power(phi, S).scale(L.inv());
    }
    out.push_back(acc);
  }
  return out;
}

ExpLogData exp_log_data(const DrinfeldModule& phi, int N, SeriesMethod method) {
  return {N, exp_coeffs(phi, N, method), log_coeffs(phi, N, method)};
}

namespace {

Rational min_coeff_ord(const DrinfeldModule& phi) {
  XRational xi = XRational::infinity();
  for (const auto& a : phi.coeffs()) xi = min(xi, a.gauss_ord());
  return xi.value();
}

}  // namespace

Rational exp_coeff_bound(const DrinfeldModule& phi, int i) {
  const Rational xi = min_coeff_ord(phi);
  const std::int64_t q = phi.q();
  const Rational qi = qpow(q, i);
  const Rational lead = Rational(i) * qi / Rational(phi.r());
  if (xi >= 0) return (qi - 1) / (qpow(q, phi.r()) - 1) * xi + lead;
  return (qi - 1) / Rational(q - 1) * xi + lead;
}

namespace {

struct KC {
  int k;
  Rational C;
};

KC k_and_C(const DrinfeldModule& phi) {
  int best = 0;
  Rational val;
  for (int j = 1; j <= phi.r(); ++j) {
    if (phi.A(j).empty() || phi.A(j).is_zero_to_precision()) continue;
    const Rational qj = qpow(phi.q(), j);
    const Rational v = (phi.A(j).gauss_ord().value() + qj) / (qj - 1);
    if (best == 0 || v < val) {
      best = j;
      val = v;
    }
  }
  return {best, -val};
}

}  // namespace

Rational log_coeff_bound(const DrinfeldModule& phi, int n) { return -(qpow(phi.q(), n) - 1) * k_and_C(phi).C; }

ConvergenceData convergence_data(const DrinfeldModule& phi, int N) {
  const KC kc = k_and_C(phi);
  const auto al = phi.alphas(N, working_precision());
  const std::int64_t q = phi.q();
  bool have = false;
  Rational m;
  for (int j = 1; j <= N; ++j) {
    const TateApprox& a = al[static_cast<std::size_t>(j)];
    if (!a.is_zero_to_precision()) {
      if (!a.gauss_ord_certified()) throw UncertifiedTail("alpha_" + std::to_string(j) + " norm not certified");
      const Rational v = a.gauss_ord().value() / (qpow(q, j) - 1);
      if (!have || v < m) m = v;
      have = true;
    }
    // Past j the bound ratio increases, so it settles the infimum.
    if (have && exp_coeff_bound(phi, j + 1) / (qpow(q, j + 1) - 1) >= m) return {kc.k, kc.C, -m, j};
  }
  throw UncertifiedTail("eps_phi not certified by alpha_1..alpha_" + std::to_string(N));
}

namespace {

// Index N past which every dropped term lies beyond prec, plus the minimum
// lower bound on term ords up to N. lb(i) = q^i * bracket(i) + const with
// bracket increasing, so lb(N+1) >= prec with bracket(N+1) > 0 settles the tail.
template <class LB, class Bracket>
std::pair<int, Rational> tail_index(LB lb, Bracket bracket, const Rational& prec, std::int64_t q, const char* what) {
  // keep q^i well inside int64 rationals
  int limit = 0;
  for (std::int64_t v = q; v < 1000000000000000LL / q; v *= q) ++limit;
  Rational lowest = lb(0);
  for (int N = 0; N < limit; ++N) {
    if (bracket(N + 1) > 0 && lb(N + 1) >= prec) return {N, lowest};
    lowest = std::min(lowest, lb(N + 1));
  }
  throw UncertifiedTail(std::string(what) + ": no tail certificate within " + std::to_string(limit) + " terms");
}

TateApprox sum_terms(const std::vector<TateApprox>& c, const TateApprox& x, const Rational& prec) {
  TateApprox acc(x.s(), x.tdeg());
  for (std::size_t i = 0; i < c.size(); ++i)
    if (!c[i].empty()) acc += (c[i] * x.twist(static_cast<std::int64_t>(i))).truncate_prec(XRational(prec));
  return acc.truncate_prec(XRational(prec));
}

}  // namespace

TateApprox exp_eval(const DrinfeldModule& phi, const TateApprox& x, const Rational& prec) {
  const XRational xo = x.gauss_ord();
  if (xo.is_inf()) return x.truncate_prec(XRational(prec));
  const Rational xv = xo.value();
  const std::int64_t q = phi.q();
  const Rational xi = min_coeff_ord(phi);
  const Rational slope = xi >= 0 ? xi / (qpow(q, phi.r()) - 1) : xi / Rational(q - 1);
  auto lb = [&](int i) { return exp_coeff_bound(phi, i) + qpow(q, i) * xv; };
  auto bracket = [&](int i) { return Rational(i, phi.r()) + slope + xv; };
  const auto [N, lowest] = tail_index(lb, bracket, prec, q, "exp");
  const Rational P = prec - std::min(Rational(0), lowest) + 2;
  PrecisionScope scope(P);
  return sum_terms(phi.alphas(N, P), x, prec);
}

TateApprox log_eval(const DrinfeldModule& phi, const TateApprox& x, const Rational& prec) {
  const XRational xo = x.gauss_ord();
  if (xo.is_inf()) return x.truncate_prec(XRational(prec));
  if (!x.gauss_ord_certified()) throw InsufficientPrecision("log argument norm not certified");
  const Rational xv = xo.value();
  const Rational C = k_and_C(phi).C;
  if (xv <= C) throw OutsideLogDomain("Ord(x) = " + to_string(xv) + " is not above C_phi = " + to_string(C));
  const std::int64_t q = phi.q();
  auto lb = [&](int n) { return qpow(q, n) * (xv - C) + C; };
  auto bracket = [&](int) { return xv - C; };
  const auto [N, lowest] = tail_index(lb, bracket, prec, q, "log");
  const Rational P = prec - std::min(Rational(0), lowest) + 2;
  PrecisionScope scope(P);
  return sum_terms(phi.betas(N, P), x, prec);
}

TateApprox GammaZ::evaluate(const TateApprox& f) const {
  std::map<int, TateApprox> inv;
  TateApprox acc(s, tdeg);
  for (const auto& t : terms) {
    TateApprox prod = t.coeff;
    for (int m : t.poles) {
      auto it = inv.find(m);
      if (it == inv.end()) {
        FieldDesc fld = t.coeff.coeffs().begin()->second.field();
        TateApprox d = f - TateApprox::constant(s, tdeg, PuiseuxApprox::theta_pow(fld, Rational(ipow(fld.q(), m))));
        it = inv.emplace(m, invert(d)).first;
      }
      prod *= it->second;
    }
    acc += prod;
  }
  return acc;
}

GammaZ gamma_n_z(const DrinfeldModule& phi, int n) {
  GammaZ g;
  g.s = phi.s();
  g.tdeg = phi.tdeg();
  for (const auto& S : shadowed_partitions(phi.r(), n)) {
    GammaZ::Term t{a_power(phi, S), {}};
    for (int k = 1; k <= phi.r(); ++k)
      for (int j : S.S[static_cast<std::size_t>(k - 1)]) t.poles.push_back(k + j);
    if (!t.coeff.empty()) g.terms.push_back(std::move(t));
  }
  return g;
}

}  // namespace dtl
