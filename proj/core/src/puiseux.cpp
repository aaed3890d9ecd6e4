#include "dtl/puiseux.hpp"

#include "dtl/errors.hpp"
#include "field_impl.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

namespace dtl {

namespace {

thread_local Rational g_working_prec{40};

using detail::FieldImpl;
using Term = PuiseuxApprox::Term;

std::int64_t lcm64(std::int64_t a, std::int64_t b) { return a / std::gcd(a, b) * b; }

// Largest j with j/e < prec, or INT64_MAX for infinite prec.
std::int64_t j_bound(const XRational& prec, std::int64_t e) {
  if (prec.is_inf()) return INT64_MAX;
  Rational scaled = prec.value() * e;
  return ceil_int(scaled) - 1;
}

const FieldImpl* common_impl(const FieldImpl* a, const FieldImpl* b) {
  if (!a) return b;
  if (!b || a == b) return a;
  return FieldDesc::common(FieldDesc::from_impl(a), FieldDesc::from_impl(b)).impl();
}

// Re-express terms from field `from` with ramification e_from into field `to`
// with ramification e_to (a multiple of e_from).
std::vector<Term> remap(const std::vector<Term>& t, const FieldImpl* from, std::int64_t e_from,
                        const FieldImpl* to, std::int64_t e_to) {
  std::vector<Term> out;
  out.reserve(t.size());
  const std::int64_t s = e_to / e_from;
  if (from == to || !from) {
    if (s == 1) return t;
    for (const auto& x : t) out.push_back({x.j * s, x.c});
    return out;
  }
  FieldDesc target = FieldDesc::from_impl(to);
  if (from->standard && to->standard) {
    const std::int64_t ratio = static_cast<std::int64_t>(to->order) / from->order;
    for (const auto& x : t)
      out.push_back({x.j * s, static_cast<std::int32_t>(static_cast<std::int64_t>(x.c) * ratio)});
    return out;
  }
  FieldDesc src = FieldDesc::from_impl(from);
  for (const auto& x : t) out.push_back({x.j * s, embed(FieldElem(src, x.c), target).log()});
  return out;
}

}  // namespace

struct PuiseuxAccess {
  static PuiseuxApprox make(const FieldImpl* f, std::int64_t e, std::vector<Term> terms,
                            XRational prec) {
    PuiseuxApprox r;
    r.field_ = f;
    r.e_ = e;
    r.terms_ = std::move(terms);
    r.prec_ = prec;
    r.drop_at_or_above(prec);
    r.normalize();
    return r;
  }
  static const FieldImpl* field(const PuiseuxApprox& a) { return a.field_; }
};

Rational working_precision() { return g_working_prec; }

XRational precision_cap(const XRational& ord) {
  if (ord.is_inf()) return XRational::infinity();
  return XRational(g_working_prec + std::max(Rational(0), ord.value()));
}

PrecisionScope::PrecisionScope(Rational P) : saved_(g_working_prec) { g_working_prec = P; }
PrecisionScope::~PrecisionScope() { g_working_prec = saved_; }

void PuiseuxApprox::normalize() {
  if (terms_.empty()) {
    e_ = 1;
    return;
  }
  std::int64_t g = e_;
  for (const auto& t : terms_) {
    g = std::gcd(g, t.j < 0 ? -t.j : t.j);
    if (g == 1) return;
  }
  if (g > 1) {
    e_ /= g;
    for (auto& t : terms_) t.j /= g;
  }
}

void PuiseuxApprox::drop_at_or_above(const XRational& prec) {
  if (prec.is_inf()) return;
  std::int64_t jb = j_bound(prec, e_);
  auto it = std::find_if(terms_.begin(), terms_.end(), [&](const Term& t) { return t.j > jb; });
  terms_.erase(it, terms_.end());
}

PuiseuxApprox PuiseuxApprox::zero(XRational prec) {
  PuiseuxApprox r;
  r.prec_ = prec;
  return r;
}

PuiseuxApprox PuiseuxApprox::zero(FieldDesc f, XRational prec) {
  PuiseuxApprox r;
  r.field_ = f.impl();
  r.prec_ = prec;
  return r;
}

PuiseuxApprox PuiseuxApprox::constant(const FieldElem& c) { return monomial(c, Rational(0)); }

PuiseuxApprox PuiseuxApprox::from_int(FieldDesc f, std::int64_t c) {
  return constant(FieldElem::from_int(f, c));
}

PuiseuxApprox PuiseuxApprox::monomial(const FieldElem& c, const Rational& k) {
  PuiseuxApprox r;
  r.field_ = c.desc().impl();
  r.prec_ = XRational::infinity();
  if (c.is_zero()) return r;
  r.e_ = k.denominator();
  r.terms_.push_back({-k.numerator(), c.log()});
  return r;
}

PuiseuxApprox PuiseuxApprox::theta_pow(FieldDesc f, const Rational& k) {
  return monomial(FieldElem::one(f), k);
}

PuiseuxApprox PuiseuxApprox::from_terms(FieldDesc f, std::int64_t e,
                                        const std::vector<std::pair<std::int64_t, FieldElem>>& terms,
                                        XRational prec) {
  if (e < 1) throw std::invalid_argument("ramification index must be positive");
  std::map<std::int64_t, FieldElem> acc;
  for (const auto& [j, c] : terms) {
    FieldElem cc = dtl::embed(c, f);
    auto it = acc.find(j);
    if (it == acc.end())
      acc.emplace(j, cc);
    else
      it->second = it->second + cc;
  }
  std::vector<Term> t;
  for (const auto& [j, c] : acc)
    if (!c.is_zero()) t.push_back({j, c.log()});
  return PuiseuxAccess::make(f.impl(), e, std::move(t), prec);
}

FieldDesc PuiseuxApprox::field() const {
  if (!field_) throw std::logic_error("PuiseuxApprox without an attached field");
  return FieldDesc::from_impl(field_);
}

std::vector<std::pair<std::int64_t, FieldElem>> PuiseuxApprox::terms() const {
  std::vector<std::pair<std::int64_t, FieldElem>> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) out.emplace_back(t.j, FieldElem(field(), t.c));
  return out;
}

XRational PuiseuxApprox::valuation() const {
  if (terms_.empty()) return XRational::infinity();
  return XRational(Rational(terms_.front().j, e_));
}

FieldElem PuiseuxApprox::lead_coeff() const {
  if (terms_.empty()) throw std::logic_error("lead_coeff of an empty approximation");
  return FieldElem(field(), terms_.front().c);
}

FieldElem PuiseuxApprox::coeff_at(const Rational& ord) const {
  if (!field_) return FieldElem::zero(FieldDesc());
  Rational je = ord * e_;
  if (je.denominator() != 1) return FieldElem::zero(field());
  for (const auto& t : terms_)
    if (t.j == je.numerator()) return FieldElem(field(), t.c);
  return FieldElem::zero(field());
}

PuiseuxApprox PuiseuxApprox::operator+(const PuiseuxApprox& o) const {
  const FieldImpl* f = common_impl(field_, o.field_);
  std::int64_t e = lcm64(e_, o.e_);
  XRational prec = min(prec_, o.prec_);
  auto a = remap(terms_, field_, e_, f, e);
  auto b = remap(o.terms_, o.field_, o.e_, f, e);
  std::int64_t jb = j_bound(prec, e);
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, k = 0;
  while (i < a.size() || k < b.size()) {
    Term t;
    if (k == b.size() || (i < a.size() && a[i].j < b[k].j)) {
      t = a[i++];
    } else if (i == a.size() || b[k].j < a[i].j) {
      t = b[k++];
    } else {
      t = {a[i].j, f->add(a[i].c, b[k].c)};
      ++i;
      ++k;
      if (t.c < 0) continue;
    }
    if (t.j > jb) break;
    out.push_back(t);
  }
  PuiseuxApprox r;
  r.field_ = f;
  r.e_ = e;
  r.terms_ = std::move(out);
  r.prec_ = prec;
  r.normalize();
  return r;
}

PuiseuxApprox PuiseuxApprox::operator-() const {
  PuiseuxApprox r = *this;
  if (field_)
    for (auto& t : r.terms_) t.c = field_->neg(t.c);
  return r;
}

PuiseuxApprox PuiseuxApprox::operator-(const PuiseuxApprox& o) const { return *this + (-o); }

PuiseuxApprox PuiseuxApprox::operator*(const PuiseuxApprox& o) const {
  const FieldImpl* f = common_impl(field_, o.field_);
  XRational prec = min(prec_ + o.effective_ord(), o.prec_ + effective_ord());
  if (terms_.empty() || o.terms_.empty()) {
    PuiseuxApprox r;
    r.field_ = f;
    r.prec_ = prec;
    return r;
  }
  XRational ord = valuation() + o.valuation();
  if (prec.finite()) prec = min(prec, precision_cap(ord));
  std::int64_t e = lcm64(e_, o.e_);
  auto a = remap(terms_, field_, e_, f, e);
  auto b = remap(o.terms_, o.field_, o.e_, f, e);
  std::int64_t jb = j_bound(prec, e);
  const std::int64_t lo = a.front().j + b.front().j;
  std::int64_t hi = std::min(jb, a.back().j + b.back().j);
  std::vector<Term> out;
  if (hi >= lo) {
    const std::int64_t span = hi - lo + 1;
    const std::int64_t work = static_cast<std::int64_t>(a.size()) * static_cast<std::int64_t>(b.size());
    if (span <= std::max<std::int64_t>(4096, 4 * work) && span <= (std::int64_t{1} << 24)) {
      std::vector<std::int32_t> acc(static_cast<std::size_t>(span), -1);
      for (const auto& x : a) {
        if (x.j + b.front().j > hi) break;
        for (const auto& y : b) {
          std::int64_t j = x.j + y.j;
          if (j > hi) break;
          auto& slot = acc[static_cast<std::size_t>(j - lo)];
          slot = f->add(slot, f->mul(x.c, y.c));
        }
      }
      for (std::int64_t k = 0; k < span; ++k)
        if (acc[static_cast<std::size_t>(k)] >= 0) out.push_back({lo + k, acc[static_cast<std::size_t>(k)]});
    } else {
      std::vector<Term> prods;
      for (const auto& x : a) {
        if (x.j + b.front().j > hi) break;
        for (const auto& y : b) {
          std::int64_t j = x.j + y.j;
          if (j > hi) break;
          prods.push_back({j, f->mul(x.c, y.c)});
        }
      }
      std::sort(prods.begin(), prods.end(), [](const Term& u, const Term& v) { return u.j < v.j; });
      for (std::size_t i = 0; i < prods.size();) {
        std::int32_t c = -1;
        std::size_t k = i;
        for (; k < prods.size() && prods[k].j == prods[i].j; ++k) c = f->add(c, prods[k].c);
        if (c >= 0) out.push_back({prods[i].j, c});
        i = k;
      }
    }
  }
  PuiseuxApprox r;
  r.field_ = f;
  r.e_ = e;
  r.terms_ = std::move(out);
  r.prec_ = prec;
  r.normalize();
  return r;
}

PuiseuxApprox PuiseuxApprox::scale(const FieldElem& c) const {
  if (c.is_zero()) return zero(c.desc(), prec_);
  const FieldImpl* f = common_impl(field_, c.desc().impl());
  PuiseuxApprox r = *this;
  r.field_ = f;
  r.terms_ = remap(terms_, field_, e_, f, e_);
  std::int32_t cl = dtl::embed(c, FieldDesc::from_impl(f)).log();
  for (auto& t : r.terms_) t.c = f->mul(t.c, cl);
  return r;
}

PuiseuxApprox PuiseuxApprox::shift(const Rational& k) const {
  // theta^k lowers every ord by k.
  std::int64_t e = lcm64(e_, k.denominator());
  PuiseuxApprox r;
  r.field_ = field_;
  r.e_ = e;
  r.terms_ = remap(terms_, field_, e_, field_, e);
  std::int64_t dj = (k * e).numerator();
  for (auto& t : r.terms_) t.j -= dj;
  r.prec_ = prec_ - k;
  r.normalize();
  return r;
}

namespace {

// 1/u for u = 1 + sum_{n >= 1} u_n X^n (X = theta^(-g/e)), first N coefficients,
// returned densely in index n.
std::vector<std::int32_t> series_inverse(const FieldImpl* f, const std::vector<std::pair<std::int64_t, std::int32_t>>& u,
                                         std::int64_t N) {
  std::vector<std::int32_t> b(static_cast<std::size_t>(std::max<std::int64_t>(N, 1)), -1);
  b[0] = 0;
  for (std::int64_t n = 1; n < N; ++n) {
    std::int32_t acc = -1;
    for (const auto& [k, c] : u) {
      if (k > n) break;
      acc = f->add(acc, f->mul(c, b[static_cast<std::size_t>(n - k)]));
    }
    b[static_cast<std::size_t>(n)] = f->neg(acc);
  }
  return b;
}

}  // namespace

PuiseuxApprox PuiseuxApprox::inv() const {
  if (terms_.empty())
    throw DivisionByIndistinguishableZero("inverse of an approximation with no certified term");
  const FieldImpl* f = field_;
  const Rational v(terms_.front().j, e_);
  XRational prec = (prec_ - v) - v;
  // the inverse of an exact monomial is exact
  if (!(is_exact() && terms_.size() == 1)) prec = min(prec, precision_cap(XRational(-v)));
  if (terms_.size() == 1) {
    PuiseuxApprox r;
    r.field_ = f;
    r.e_ = e_;
    r.terms_.push_back({-terms_.front().j, f->inv(terms_.front().c)});
    r.prec_ = prec;
    r.drop_at_or_above(prec);
    r.normalize();
    return r;
  }
  const std::int64_t j0 = terms_.front().j;
  const std::int32_t c0inv = f->inv(terms_.front().c);
  std::int64_t g = 0;
  for (std::size_t i = 1; i < terms_.size(); ++i) g = std::gcd(g, terms_[i].j - j0);
  std::vector<std::pair<std::int64_t, std::int32_t>> u;
  for (std::size_t i = 1; i < terms_.size(); ++i)
    u.emplace_back((terms_[i].j - j0) / g, f->mul(terms_[i].c, c0inv));
  // Result terms sit at j = -j0 + n*g; keep those with j/e < prec.
  std::int64_t N;
  if (prec.is_inf()) {
    throw std::logic_error("infinite expansion requested without a precision cap");
  } else {
    std::int64_t jb = j_bound(prec, e_);
    N = jb + j0 < 0 ? 0 : (jb + j0) / g + 1;
  }
  auto b = series_inverse(f, u, N);
  PuiseuxApprox r;
  r.field_ = f;
  r.e_ = e_;
  for (std::int64_t n = 0; n < N; ++n)
    if (b[static_cast<std::size_t>(n)] >= 0) r.terms_.push_back({-j0 + n * g, f->mul(b[static_cast<std::size_t>(n)], c0inv)});
  r.prec_ = prec;
  r.drop_at_or_above(prec);
  r.normalize();
  return r;
}

PuiseuxApprox PuiseuxApprox::operator/(const PuiseuxApprox& o) const {
  if (o.terms_.empty())
    throw DivisionByIndistinguishableZero("divisor has no certified term");
  if (o.terms_.size() == 1 && o.is_exact()) {
    // Exact monomial divisor: shift and scale without truncation.
    FieldElem c(o.field(), o.terms_.front().c);
    return shift(Rational(o.terms_.front().j, o.e_)).scale(c.inv());
  }
  return *this * o.inv();
}

PuiseuxApprox PuiseuxApprox::pow(std::int64_t n) const {
  if (n < 0) return inv().pow(-n);
  PuiseuxApprox result = field_ ? constant(FieldElem::one(field())) : zero();
  if (!field_) return n == 0 ? result : *this;
  PuiseuxApprox base = *this;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return result;
}

PuiseuxApprox PuiseuxApprox::twist(std::int64_t n) const {
  if (n == 0 || !field_) return *this;
  const FieldImpl* f = field_;
  std::int64_t qn = 1;
  for (std::int64_t i = 0; i < (n < 0 ? -n : n); ++i) qn *= f->q;
  PuiseuxApprox r;
  r.field_ = f;
  if (n > 0) {
    r.e_ = e_;
    for (const auto& t : terms_) r.terms_.push_back({t.j * qn, f->frob(t.c, n % f->d)});
    r.prec_ = prec_ * Rational(qn);
  } else {
    r.e_ = e_ * qn;
    std::int64_t back = ((n % f->d) + f->d) % f->d;
    for (const auto& t : terms_) r.terms_.push_back({t.j, f->frob(t.c, back)});
    r.prec_ = prec_ * Rational(1, qn);
  }
  r.normalize();
  return r;
}

PuiseuxApprox PuiseuxApprox::truncate(const XRational& prec) const {
  PuiseuxApprox r = *this;
  r.prec_ = min(prec_, prec);
  r.drop_at_or_above(r.prec_);
  r.normalize();
  return r;
}

PuiseuxApprox PuiseuxApprox::embed(FieldDesc f) const {
  PuiseuxApprox r = *this;
  r.field_ = f.impl();
  r.terms_ = remap(terms_, field_, e_, f.impl(), e_);
  return r;
}

std::optional<FieldElem> PuiseuxApprox::as_fq_constant() const {
  if (terms_.size() != 1 || terms_.front().j != 0) return std::nullopt;
  FieldElem c(field(), terms_.front().c);
  if (!c.in_base_field()) return std::nullopt;
  return c;
}

PuiseuxApprox PuiseuxApprox::nth_root(std::int64_t n) const {
  if (n == 1) return *this;
  if (terms_.empty())
    throw DivisionByIndistinguishableZero("root of an approximation with no certified term");
  const Rational v(terms_.front().j, e_);
  auto [c_root, F] = extract_root(lead_coeff(), n);
  PuiseuxApprox lead = monomial(c_root, -v / n);
  // unit part u = this / leading term, ord 0.
  PuiseuxApprox u = shift(v).scale(lead_coeff().inv());
  XRational rel = prec_ - v;
  XRational target_prec = min(rel + (v / n), precision_cap(XRational(v / n)));
  XRational rel_target = target_prec - (v / n);
  PuiseuxApprox y = constant(FieldElem::one(F));
  if (u.terms_.size() > 1) {
    const Rational Pw = rel_target.value();
    PrecisionScope scope(Pw + 1);
    u = u.truncate(rel_target);
    const FieldElem inv_n = FieldElem::from_int(F, n).inv();
    for (int it = 0;; ++it) {
      if (it > 64) throw PrecisionExhausted("root iteration did not converge");
      PuiseuxApprox diff = (y.pow(n) - u).truncate(rel_target);
      if (diff.empty()) break;
      PuiseuxApprox corr = (diff * y.pow(n - 1).inv()).scale(inv_n);
      y = (y - corr).truncate(rel_target);
    }
  }
  PuiseuxApprox r = y * lead;
  r.prec_ = target_prec;
  r.drop_at_or_above(target_prec);
  r.normalize();
  return r;
}

PuiseuxApprox bracket(FieldDesc f, int i) {
  std::int64_t qi = 1;
  for (int k = 0; k < i; ++k) qi *= f.q();
  return PuiseuxApprox::theta_pow(f, Rational(qi)) - PuiseuxApprox::theta_pow(f, Rational(1));
}

}  // namespace dtl
