#include "dtl/tate.hpp"

#include "dtl/errors.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace dtl {

bool GrlexLess::operator()(const MultiIndex& a, const MultiIndex& b) const {
  const int da = total_degree(a);
  const int db = total_degree(b);
  if (da != db) return da < db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

int total_degree(const MultiIndex& nu) { return std::accumulate(nu.begin(), nu.end(), 0); }

namespace {

MultiIndex add_index(const MultiIndex& a, const MultiIndex& b) {
  MultiIndex r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

// Every multi-index of total degree <= tdeg, in lexicographic order.
void each_index(int s, int tdeg, MultiIndex& nu, int pos, int left, const std::function<void(const MultiIndex&)>& fn) {
  if (pos == s) {
    fn(nu);
    return;
  }
  for (int e = 0; e <= left; ++e) {
    nu[static_cast<std::size_t>(pos)] = e;
    each_index(s, tdeg, nu, pos + 1, left - e, fn);
  }
  nu[static_cast<std::size_t>(pos)] = 0;
}

// Absent coefficients of a truncated element are only known to the bound.
TateApprox fill_absent(const TateApprox& a, FieldDesc f, const XRational& bound) {
  if (bound.is_inf()) return a;
  TateApprox r = a;
  MultiIndex nu(static_cast<std::size_t>(a.s()), 0);
  each_index(a.s(), a.tdeg(), nu, 0, a.tdeg(), [&](const MultiIndex& m) {
    if (!r.coeffs().count(m)) r.set(m, PuiseuxApprox::zero(f, bound));
  });
  return r;
}

bool is_zero_index(const MultiIndex& nu) {
  return std::all_of(nu.begin(), nu.end(), [](int v) { return v == 0; });
}

void check_shape(const TateApprox& a, const TateApprox& b) {
  if (a.s() != b.s()) throw MixedVariable("Tate elements in different numbers of t-variables");
}

// A coefficient's contribution to a dominance test.
struct OrdEntry {
  XRational ord;  // certified valuation, or the precision when empty
  bool certified;
};

// Dominant-constant decision shared by the t- and (t, z)-variants.
bool dominant_constant(const PuiseuxApprox& a0, const std::vector<OrdEntry>& others) {
  if (a0.is_exact_zero()) return false;
  if (a0.empty()) {
    const XRational bound = a0.prec();
    for (const auto& o : others)
      if (o.certified && o.ord < bound) return false;
    throw Undecidable("constant coefficient is zero to precision");
  }
  const XRational v0 = a0.valuation();
  bool tie = false;
  for (const auto& o : others) {
    if (o.certified && o.ord < v0) return false;
    if (o.certified && o.ord == v0) tie = true;
    if (!o.certified && o.ord <= v0) tie = true;
  }
  if (tie) throw Undecidable("constant coefficient does not strictly dominate");
  return true;
}

std::int64_t frobenius_orbit(const FieldElem& c) {
  FieldElem x = c.frobenius(1);
  std::int64_t k = 1;
  while (x != c) {
    x = x.frobenius(1);
    ++k;
  }
  return k;
}

PuiseuxApprox pole_at(FieldDesc f, std::int64_t q, std::int64_t m) {
  Rational e(1);
  if (m >= 0)
    for (std::int64_t i = 0; i < m; ++i) e *= q;
  else
    for (std::int64_t i = 0; i < -m; ++i) e /= q;
  return PuiseuxApprox::theta_pow(f, e);
}

}  // namespace

// ---------------------------------------------------------------- TateApprox

TateApprox TateApprox::constant(int s, int tdeg, const PuiseuxApprox& c) {
  TateApprox r(s, tdeg);
  r.set(MultiIndex(s, 0), c);
  return r;
}

TateApprox TateApprox::monomial(int s, int tdeg, const MultiIndex& nu, const PuiseuxApprox& c) {
  if (static_cast<int>(nu.size()) != s) throw std::invalid_argument("multi-index length differs from s");
  TateApprox r(s, tdeg);
  r.set(nu, c);
  return r;
}

TateApprox TateApprox::variable(int s, int tdeg, int i, FieldDesc f) {
  if (i < 1 || i > s) throw std::invalid_argument("variable index out of range");
  MultiIndex nu(s, 0);
  nu[i - 1] = 1;
  return monomial(s, tdeg, nu, PuiseuxApprox::from_int(f, 1));
}

PuiseuxApprox TateApprox::coeff(const MultiIndex& nu) const {
  auto it = c_.find(nu);
  return it == c_.end() ? PuiseuxApprox() : it->second;
}

void TateApprox::set(const MultiIndex& nu, const PuiseuxApprox& c) {
  if (static_cast<int>(nu.size()) != s_) throw std::invalid_argument("multi-index length differs from s");
  if (total_degree(nu) > tdeg_ || c.is_exact_zero()) {
    c_.erase(nu);
    return;
  }
  c_[nu] = c;
}

void TateApprox::add_to(const MultiIndex& nu, const PuiseuxApprox& c) {
  if (c.is_exact_zero() || total_degree(nu) > tdeg_) return;
  auto it = c_.find(nu);
  if (it == c_.end()) {
    c_.emplace(nu, c);
    return;
  }
  it->second += c;
  if (it->second.is_exact_zero()) c_.erase(it);
}

TateApprox TateApprox::operator+(const TateApprox& o) const {
  check_shape(*this, o);
  TateApprox r(s_, std::min(tdeg_, o.tdeg_));
  for (const auto& [nu, c] : c_) r.add_to(nu, c);
  for (const auto& [nu, c] : o.c_) r.add_to(nu, c);
  return r;
}

TateApprox TateApprox::operator-() const {
  TateApprox r(s_, tdeg_);
  for (const auto& [nu, c] : c_) r.c_.emplace(nu, -c);
  return r;
}

TateApprox TateApprox::operator-(const TateApprox& o) const { return *this + (-o); }

TateApprox TateApprox::operator*(const TateApprox& o) const {
  check_shape(*this, o);
  TateApprox r(s_, std::min(tdeg_, o.tdeg_));
  for (const auto& [nu, a] : c_) {
    const int da = total_degree(nu);
    if (da > r.tdeg_) break;
    for (const auto& [mu, b] : o.c_) {
      if (da + total_degree(mu) > r.tdeg_) break;
      r.add_to(add_index(nu, mu), a * b);
    }
  }
  return r;
}

TateApprox TateApprox::scale(const PuiseuxApprox& c) const {
  TateApprox r(s_, tdeg_);
  for (const auto& [nu, a] : c_) r.set(nu, a * c);
  return r;
}

TateApprox TateApprox::scale(const FieldElem& c) const {
  TateApprox r(s_, tdeg_);
  for (const auto& [nu, a] : c_) r.set(nu, a.scale(c));
  return r;
}

TateApprox TateApprox::twist(std::int64_t n) const {
  TateApprox r(s_, tdeg_);
  for (const auto& [nu, a] : c_) r.c_.emplace(nu, a.twist(n));
  return r;
}

TateApprox TateApprox::truncate_prec(const XRational& prec) const {
  TateApprox r(s_, tdeg_);
  for (const auto& [nu, a] : c_) r.set(nu, a.truncate(prec));
  return r;
}

TateApprox TateApprox::with_tdeg(int tdeg) const {
  TateApprox r(s_, tdeg);
  for (const auto& [nu, a] : c_) r.set(nu, a);
  return r;
}

XRational TateApprox::gauss_ord() const {
  XRational best = XRational::infinity();
  for (const auto& [nu, a] : c_) best = min(best, a.valuation());
  return best;
}

bool TateApprox::gauss_ord_certified() const {
  const XRational g = gauss_ord();
  return g.finite() && g < min_prec();
}

XRational TateApprox::min_prec() const {
  XRational best = XRational::infinity();
  for (const auto& [nu, a] : c_) best = min(best, a.prec());
  return best;
}

bool TateApprox::is_zero_to_precision() const {
  return std::all_of(c_.begin(), c_.end(), [](const auto& kv) { return kv.second.empty(); });
}

bool TateApprox::is_fq_polynomial() const {
  for (const auto& [nu, a] : c_)
    if (!a.as_fq_constant()) return false;
  return true;
}

bool is_unit(const TateApprox& f) {
  std::vector<OrdEntry> others;
  for (const auto& [nu, a] : f.coeffs()) {
    if (is_zero_index(nu)) continue;
    others.push_back({a.effective_ord(), !a.empty()});
  }
  return dominant_constant(f.constant_coeff(), others);
}

TateApprox invert(const TateApprox& f) {
  if (!is_unit(f)) throw NotAUnit("constant coefficient does not dominate");
  const PuiseuxApprox a0inv = f.constant_coeff().inv();
  TateApprox g(f.s(), f.tdeg());
  for (const auto& [nu, a] : f.coeffs())
    if (!is_zero_index(nu)) g.set(nu, a * a0inv);
  // 1/(1+g) = 1 - g(1 - g(1 - ...)); g has no constant term, so tdeg steps suffice.
  const TateApprox one = TateApprox::constant(f.s(), f.tdeg(), PuiseuxApprox::from_int(f.constant_coeff().field(), 1));
  TateApprox acc = one;
  for (int k = 0; k < f.tdeg(); ++k) acc = one - g * acc;
  return acc.scale(a0inv);
}

TwistLimit twist_limit(const TateApprox& f) {
  TateApprox lim(f.s(), f.tdeg());
  std::int64_t ell = 1;
  for (const auto& [nu, a] : f.coeffs()) {
    if (!a.empty() && a.valuation() < XRational(0))
      throw NotInUnitBall("coefficient of negative ord");
    if (a.prec() <= XRational(0))
      throw InsufficientPrecision("coefficient not known through ord 0");
    const FieldElem c = a.constant_term();
    if (c.is_zero()) continue;
    ell = std::lcm(ell, frobenius_orbit(c));
    lim.set(nu, PuiseuxApprox::constant(c));
  }
  return {static_cast<int>(ell), lim};
}

// --------------------------------------------------------------- TateZApprox

TateZApprox::TateZApprox(int s, int tdeg, int zdeg, Radius radius)
    : s_(s), tdeg_(tdeg), zdeg_(zdeg), radius_(radius), z_(static_cast<std::size_t>(zdeg + 1), TateApprox(s, tdeg)) {}

TateZApprox TateZApprox::from_tate(const TateApprox& a, int zdeg, Radius radius) {
  TateZApprox r(a.s(), a.tdeg(), zdeg, radius);
  r.z_[0] = a;
  return r;
}

TateZApprox TateZApprox::z_minus(const TateApprox& c, int zdeg, Radius radius) {
  TateZApprox r = from_tate(-c, zdeg, radius);
  if (zdeg >= 1) {
    FieldDesc f = c.empty() ? FieldDesc::get(2, 1, 1) : c.coeffs().begin()->second.field();
    r.z_[1] = TateApprox::constant(c.s(), c.tdeg(), PuiseuxApprox::from_int(f, 1));
  }
  return r;
}

namespace {

void check_shape(const TateZApprox& a, const TateZApprox& b) {
  if (a.s() != b.s()) throw MixedVariable("Tate elements in different numbers of t-variables");
  if (a.radius() != b.radius()) throw MismatchedBase("z-series over different radii");
}

}  // namespace

TateZApprox TateZApprox::operator+(const TateZApprox& o) const {
  check_shape(*this, o);
  TateZApprox r(s_, std::min(tdeg_, o.tdeg_), std::min(zdeg_, o.zdeg_), radius_);
  for (int i = 0; i <= r.zdeg_; ++i) r[i] = (*this)[i] + o[i];
  return r;
}

TateZApprox TateZApprox::operator-() const {
  TateZApprox r = *this;
  for (auto& a : r.z_) a = -a;
  return r;
}

TateZApprox TateZApprox::operator-(const TateZApprox& o) const { return *this + (-o); }

TateZApprox TateZApprox::operator*(const TateZApprox& o) const {
  check_shape(*this, o);
  TateZApprox r(s_, std::min(tdeg_, o.tdeg_), std::min(zdeg_, o.zdeg_), radius_);
  for (int i = 0; i <= r.zdeg_; ++i) {
    if ((*this)[i].empty()) continue;
    for (int j = 0; i + j <= r.zdeg_; ++j) {
      if (o[j].empty()) continue;
      r[i + j] += (*this)[i] * o[j];
    }
  }
  return r;
}

TateZApprox TateZApprox::scale(const TateApprox& c) const {
  TateZApprox r = *this;
  for (auto& a : r.z_) a = a * c;
  return r;
}

TateZApprox TateZApprox::scale(const PuiseuxApprox& c) const {
  TateZApprox r = *this;
  for (auto& a : r.z_) a = a.scale(c);
  return r;
}

TateZApprox TateZApprox::twist(std::int64_t n) const {
  TateZApprox r = *this;
  for (auto& a : r.z_) a = a.twist(n);
  return r;
}

TateZApprox TateZApprox::with_radius(Radius rad) const {
  TateZApprox r = *this;
  r.radius_ = rad;
  return r;
}

TateZApprox TateZApprox::with_zdeg(int zdeg) const {
  TateZApprox r(s_, tdeg_, zdeg, radius_);
  for (int i = 0; i <= std::min(zdeg, zdeg_); ++i) r[i] = (*this)[i];
  return r;
}

TateZApprox TateZApprox::truncate_prec(const XRational& prec) const {
  TateZApprox r = *this;
  for (int i = 0; i <= zdeg_; ++i) {
    const XRational p = radius_ == Radius::theta_disc ? prec + XRational(i) : prec;
    r[i] = (*this)[i].truncate_prec(p);
  }
  return r;
}

TateZApprox TateZApprox::times_z() const {
  TateZApprox r(s_, tdeg_, zdeg_, radius_);
  for (int i = zdeg_; i >= 1; --i) r[i] = (*this)[i - 1];
  return r;
}

TateApprox TateZApprox::evaluate(const PuiseuxApprox& x) const {
  TateApprox acc(s_, tdeg_);
  for (int i = zdeg_; i >= 0; --i) acc = acc.scale(x) + (*this)[i];
  return acc;
}

TateApprox TateZApprox::evaluate(const TateApprox& x) const {
  TateApprox acc(s_, tdeg_);
  for (int i = zdeg_; i >= 0; --i) acc = acc * x + (*this)[i];
  return acc;
}

XRational TateZApprox::norm_ord() const {
  XRational best = XRational::infinity();
  for (int i = 0; i <= zdeg_; ++i) {
    XRational g = (*this)[i].gauss_ord();
    if (radius_ == Radius::theta_disc) g = g - Rational(i);
    best = min(best, g);
  }
  return best;
}

bool TateZApprox::is_zero_to_precision() const {
  return std::all_of(z_.begin(), z_.end(), [](const TateApprox& a) { return a.is_zero_to_precision(); });
}

bool TateZApprox::equals_below_z(const TateZApprox& o, int k) const {
  for (int i = 0; i <= std::min({k, zdeg_, o.zdeg_}); ++i)
    if (!(*this)[i].equals_to_precision(o[i])) return false;
  return true;
}

bool is_unit(const TateZApprox& f) {
  std::vector<OrdEntry> others;
  const bool theta = f.radius() == Radius::theta_disc;
  for (int i = 0; i <= f.zdeg(); ++i) {
    for (const auto& [nu, a] : f[i].coeffs()) {
      if (i == 0 && is_zero_index(nu)) continue;
      XRational o = a.effective_ord();
      if (theta) o = o - Rational(i);
      others.push_back({o, !a.empty()});
    }
  }
  return dominant_constant(f.constant_coeff(), others);
}

TateZApprox invert(const TateZApprox& f) {
  if (!is_unit(f)) throw NotAUnit("constant coefficient does not dominate");
  const PuiseuxApprox a0inv = f.constant_coeff().inv();
  TateZApprox g = f.scale(a0inv);
  g[0].set(g[0].zero_index(), PuiseuxApprox());
  const TateZApprox one = TateZApprox::from_tate(
      TateApprox::constant(f.s(), f.tdeg(), PuiseuxApprox::from_int(f.constant_coeff().field(), 1)), f.zdeg(),
      f.radius());
  TateZApprox acc = one;
  for (int k = 0; k < f.zdeg() + f.tdeg(); ++k) acc = one - g * acc;
  return acc.scale(a0inv);
}

// ---------------------------------------------------------------- AndersonGF

namespace {

FieldDesc gf_field(const std::vector<TateApprox>& cs) {
  for (const auto& c : cs)
    for (const auto& [nu, a] : c.coeffs())
      if (a.has_field()) return a.field();
  throw std::invalid_argument("Anderson generating function without coefficients");
}

}  // namespace


AndersonGF AndersonGF::twist(std::int64_t k) const {
  AndersonGF r;
  r.shift = shift + static_cast<int>(k);
  for (const auto& c : pole_coeffs) r.pole_coeffs.push_back(c.twist(k));
  if (tail_ord.finite()) {
    const FieldDesc f = gf_field(pole_coeffs);
    Rational scale(1);
    for (std::int64_t i = 0; i < (k < 0 ? -k : k); ++i) scale *= f.q();
    r.tail_ord = tail_ord * (k < 0 ? Rational(1) / scale : scale);
  } else {
    r.tail_ord = tail_ord;
  }
  return r;
}

TateApprox AndersonGF::residue_at_theta() const {
  const int n = -shift;
  if (n < 0 || n > N()) {
    const auto& c0 = pole_coeffs.front();
    return TateApprox(c0.s(), c0.tdeg());
  }
  return -pole_coeffs[static_cast<std::size_t>(n)];
}

TateApprox AndersonGF::evaluate(const PuiseuxApprox& x) const {
  const FieldDesc f = gf_field(pole_coeffs);
  const auto& c0 = pole_coeffs.front();
  TateApprox acc(c0.s(), c0.tdeg());
  for (int n = 0; n <= N(); ++n) {
    const PuiseuxApprox denom = pole_at(f, f.q(), n + shift) - x;
    if (denom.empty()) throw DivisionByIndistinguishableZero("evaluation at a pole");
    acc += pole_coeffs[static_cast<std::size_t>(n)].scale(denom.inv());
  }
  // dropped poles lie farther out than x
  if (tail_ord.finite()) {
    const XRational xo = x.valuation();
    if (xo.finite() && xo.value() <= pole_at(f, f.q(), N() + 1 + shift).valuation().value())
      throw DivisionByIndistinguishableZero("evaluation point reaches the dropped poles");
  }
  return acc.truncate_prec(tail_ord);
}

TateZApprox AndersonGF::z_series(int zdeg, Radius radius) const {
  const FieldDesc f = gf_field(pole_coeffs);
  const auto& c0 = pole_coeffs.front();
  TateZApprox r(c0.s(), c0.tdeg(), zdeg, radius);
  for (int n = 0; n <= N(); ++n) {
    const PuiseuxApprox pole = pole_at(f, f.q(), n + shift);
    // exponent of theta in the pole; 1/(P - z) = sum_i P^(-(i+1)) z^i
    const Rational k = -pole.valuation().value();
    for (int i = 0; i <= zdeg; ++i)
      r[i] += pole_coeffs[static_cast<std::size_t>(n)].scale(PuiseuxApprox::theta_pow(f, -k * Rational(i + 1)));
  }
  // coefficient i of a dropped pole term has ord >= tail_ord + i
  for (int i = 0; i <= zdeg; ++i) {
    const XRational b = radius == Radius::theta_disc ? tail_ord : tail_ord + XRational(i);
    r[i] = fill_absent(r[i].truncate_prec(b), f, b);
  }
  return r;
}

XRational AndersonGF::z_tail_theta_ord(int zdeg) const {
  const FieldDesc f = gf_field(pole_coeffs);
  XRational best = tail_ord;
  for (int n = 0; n <= N(); ++n) {
    const XRational o = pole_coeffs[static_cast<std::size_t>(n)].gauss_ord();
    if (o.is_inf()) continue;
    const Rational k = -pole_at(f, f.q(), n + shift).valuation().value();
    best = min(best, o + XRational(k * Rational(zdeg + 2) - Rational(zdeg + 1)));
  }
  return best;
}

}  // namespace dtl
