#include "dtl/field_tower.hpp"

#include "dtl/errors.hpp"
#include "field_impl.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <tuple>

namespace dtl {

namespace detail {

std::int32_t FieldImpl::frob(std::int32_t a, std::int64_t k) const {
  if (a <= 0) return a;
  std::int64_t e = 1, b = q % order;
  while (k > 0) {
    if (k & 1) e = e * b % order;
    b = b * b % order;
    k >>= 1;
  }
  return static_cast<std::int32_t>(static_cast<std::int64_t>(a) * e % order);
}

}  // namespace detail

namespace {

using detail::FieldImpl;

std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

struct Packing {
  const FieldImpl& f;
  std::vector<std::int64_t> pw;
  explicit Packing(const FieldImpl& fi) : f(fi), pw(fi.n + 1, 1) {
    for (int i = 1; i <= f.n; ++i) pw[i] = pw[i - 1] * f.p;
  }
  std::vector<std::int64_t> unpack(std::int64_t v) const {
    std::vector<std::int64_t> c(f.n);
    for (int i = 0; i < f.n; ++i) c[i] = (v / pw[i]) % f.p;
    return c;
  }
  std::int32_t pack(const std::vector<std::int64_t>& c) const {
    std::int64_t out = 0;
    for (int i = 0; i < f.n; ++i) out += c[i] * pw[i];
    return static_cast<std::int32_t>(out);
  }
  std::int32_t mul(std::int32_t a, std::int32_t b) const {
    auto ca = unpack(a), cb = unpack(b);
    std::vector<std::int64_t> prod(2 * f.n, 0);
    for (int i = 0; i < f.n; ++i)
      if (ca[i])
        for (int j = 0; j < f.n; ++j) prod[i + j] += ca[i] * cb[j];
    for (auto& c : prod) c %= f.p;
    for (int k = 2 * f.n - 1; k >= f.n; --k) {
      std::int64_t c = prod[k];
      if (!c) continue;
      for (int i = 0; i < f.n; ++i)
        prod[k - f.n + i] = (prod[k - f.n + i] + (f.p - c) * f.poly[i]) % f.p;
      prod[k] = 0;
    }
    prod.resize(f.n);
    return pack(prod);
  }
  // v * x, fast path for filling the tables from the polynomial generator.
  std::int32_t times_x(std::int32_t v) const {
    std::int64_t top = v / pw[f.n - 1];
    std::int64_t shifted = (v % pw[f.n - 1]) * f.p;
    if (top == 0) return static_cast<std::int32_t>(shifted);
    auto c = unpack(shifted);
    for (int i = 0; i < f.n; ++i) c[i] = (c[i] + (f.p - top) * f.poly[i]) % f.p;
    return pack(c);
  }
};

bool fill_tables(FieldImpl& f, const Packing& pk, std::int32_t g, bool g_is_x) {
  std::fill(f.log_.begin(), f.log_.end(), -1);
  std::int32_t v = 1;
  for (std::int32_t k = 0; k < f.order; ++k) {
    if (f.log_[v] >= 0) return false;
    f.exp_[k] = v;
    f.log_[v] = k;
    v = g_is_x ? pk.times_x(v) : pk.mul(v, g);
  }
  return v == 1;
}

void build_tables(FieldImpl& f) {
  Packing pk(f);
  f.exp_.assign(f.order, 0);
  f.log_.assign(f.size, -1);
  const std::int32_t x_packed =
      f.n > 1 ? f.p : static_cast<std::int32_t>((f.p - f.poly[0] % f.p) % f.p);
  bool ok = x_packed != 0 && fill_tables(f, pk, x_packed, f.n > 1);
  for (std::int32_t g = 2; !ok && g < f.size; ++g)
    if (g != x_packed) ok = fill_tables(f, pk, g, false);
  if (!ok) throw std::invalid_argument("defining polynomial is not irreducible");
  f.zech_.assign(f.order, -1);
  for (std::int32_t k = 0; k < f.order; ++k) {
    std::int32_t v = f.exp_[k];
    std::int32_t c0 = v % f.p;
    f.zech_[k] = f.log_[v - c0 + (c0 + 1) % f.p];
  }
  f.minus_one = f.log_[f.p - 1];
  f.gen_log = f.log_[x_packed];
}

struct Registry {
  std::mutex mu;
  std::map<std::tuple<int, int, int>, std::unique_ptr<FieldImpl>> standard;
  std::map<std::tuple<int, int, int, std::vector<int>>, std::unique_ptr<FieldImpl>> custom;
  std::map<std::pair<const FieldImpl*, const FieldImpl*>, std::vector<std::int32_t>> embeddings;
};

Registry& registry() {
  static Registry* r = new Registry();  // never destroyed: descriptors outlive statics
  return *r;
}

bool is_prime(int p) {
  if (p < 2) return false;
  for (int f = 2; f * f <= p; ++f)
    if (p % f == 0) return false;
  return true;
}

std::unique_ptr<FieldImpl> make_impl(int p, int m, int d, std::vector<int> poly, bool standard) {
  if (!is_prime(p)) throw std::invalid_argument("field characteristic must be prime");
  if (m < 1 || d < 1) throw std::invalid_argument("field degrees must be positive");
  auto f = std::make_unique<FieldImpl>();
  f->p = p;
  f->m = m;
  f->d = d;
  f->n = m * d;
  f->q = ipow(p, m);
  long double approx = 1;
  for (int i = 0; i < f->n; ++i) approx *= p;
  if (approx > static_cast<long double>(kMaxFieldOrder))
    throw FieldTooLarge("F_" + std::to_string(p) + "^" + std::to_string(f->n) +
                        " exceeds the table size cap");
  f->size = ipow(p, f->n);
  f->order = static_cast<std::int32_t>(f->size - 1);
  if (static_cast<int>(poly.size()) != f->n + 1 || poly.back() != 1)
    throw std::invalid_argument("defining polynomial must be monic of degree m*d");
  for (auto& c : poly) c = ((c % p) + p) % p;
  f->poly = std::move(poly);
  f->standard = standard;
  build_tables(*f);
  return f;
}

const FieldImpl* impl_of(const FieldElem& x) { return x.desc().impl(); }

}  // namespace

FieldDesc::FieldDesc() : impl_(get(2, 1, 1).impl_) {}

FieldDesc FieldDesc::get(int p, int m, int d) {
  auto& reg = registry();
  {
    std::lock_guard<std::mutex> lock(reg.mu);
    auto it = reg.standard.find({p, m, d});
    if (it != reg.standard.end()) return FieldDesc(it->second.get());
  }
  if (!is_prime(p)) throw std::invalid_argument("field characteristic must be prime");
  if (m < 1 || d < 1) throw std::invalid_argument("field degrees must be positive");
  long double approx = 1;
  for (int i = 0; i < m * d; ++i) approx *= p;
  if (approx > static_cast<long double>(kMaxFieldOrder))
    throw FieldTooLarge("F_" + std::to_string(p) + "^" + std::to_string(m * d) +
                        " exceeds the table size cap");
  std::vector<int> poly = table_polynomial(p, m * d);
  if (poly.empty()) poly = conway_search(p, m * d);
  auto impl = make_impl(p, m, d, std::move(poly), true);
  std::lock_guard<std::mutex> lock(reg.mu);
  auto& slot = reg.standard[{p, m, d}];
  if (!slot) slot = std::move(impl);
  return FieldDesc(slot.get());
}

FieldDesc FieldDesc::with_polynomial(int p, int m, int d, std::vector<int> poly) {
  auto& reg = registry();
  std::vector<int> norm = poly;
  for (auto& c : norm) c = ((c % p) + p) % p;
  {
    std::lock_guard<std::mutex> lock(reg.mu);
    auto it = reg.custom.find({p, m, d, norm});
    if (it != reg.custom.end()) return FieldDesc(it->second.get());
  }
  auto std_poly = table_polynomial(p, m * d);
  if (std_poly == norm) return get(p, m, d);
  auto impl = make_impl(p, m, d, norm, false);
  std::lock_guard<std::mutex> lock(reg.mu);
  auto& slot = reg.custom[{p, m, d, norm}];
  if (!slot) slot = std::move(impl);
  return FieldDesc(slot.get());
}

int FieldDesc::p() const { return impl_->p; }
int FieldDesc::m() const { return impl_->m; }
int FieldDesc::d() const { return impl_->d; }
int FieldDesc::degree() const { return impl_->n; }
std::int64_t FieldDesc::q() const { return impl_->q; }
std::int64_t FieldDesc::order() const { return impl_->size; }
const std::vector<int>& FieldDesc::defining_poly() const { return impl_->poly; }
bool FieldDesc::is_standard() const { return impl_->standard; }

std::string FieldDesc::name() const {
  return "F(" + std::to_string(p()) + "," + std::to_string(m()) + "," + std::to_string(d()) + ")";
}

FieldDesc FieldDesc::common(const FieldDesc& a, const FieldDesc& b) {
  if (a == b) return a;
  if (a.p() != b.p() || a.m() != b.m())
    throw MismatchedBase(a.name() + " vs " + b.name());
  int d = std::lcm(a.d(), b.d());
  if (d == a.d() && a.is_standard()) return a;
  if (d == b.d() && b.is_standard()) return b;
  return get(a.p(), a.m(), d);
}

FieldDesc FieldDesc::extend(int k) const { return get(p(), m(), d() * k); }

FieldElem FieldElem::from_int(FieldDesc f, std::int64_t c) {
  std::int64_t p = f.p();
  c = ((c % p) + p) % p;
  return FieldElem(f, f.impl_->log_[static_cast<std::size_t>(c)]);
}

FieldElem FieldElem::from_coeffs(FieldDesc f, const std::vector<int>& c) {
  if (static_cast<int>(c.size()) > f.degree())
    throw std::invalid_argument("too many coefficients for field");
  std::int64_t packed = 0, pw = 1;
  for (int v : c) {
    packed += ((v % f.p() + f.p()) % f.p()) * pw;
    pw *= f.p();
  }
  return FieldElem(f, f.impl_->log_[static_cast<std::size_t>(packed)]);
}

FieldElem FieldElem::generator(FieldDesc f) { return FieldElem(f, f.impl_->gen_log); }

std::vector<int> FieldElem::coeffs() const {
  std::vector<int> c(f_->n, 0);
  if (k_ < 0) return c;
  std::int64_t v = f_->exp_[k_];
  for (int i = 0; i < f_->n; ++i) {
    c[i] = static_cast<int>(v % f_->p);
    v /= f_->p;
  }
  return c;
}

bool FieldElem::in_base_field() const { return f_->frob(k_, 1) == k_; }

static void check_same(const FieldElem& a, const FieldElem& b) {
  if (a.desc() != b.desc())
    throw MismatchedBase("field elements from " + a.desc().name() + " and " + b.desc().name());
}

FieldElem FieldElem::operator+(const FieldElem& o) const {
  check_same(*this, o);
  return FieldElem(desc(), f_->add(k_, o.k_));
}
FieldElem FieldElem::operator-(const FieldElem& o) const {
  check_same(*this, o);
  return FieldElem(desc(), f_->add(k_, f_->neg(o.k_)));
}
FieldElem FieldElem::operator-() const { return FieldElem(desc(), f_->neg(k_)); }
FieldElem FieldElem::operator*(const FieldElem& o) const {
  check_same(*this, o);
  return FieldElem(desc(), f_->mul(k_, o.k_));
}
FieldElem FieldElem::operator/(const FieldElem& o) const {
  check_same(*this, o);
  if (o.is_zero()) throw std::domain_error("finite field division by zero");
  return FieldElem(desc(), f_->mul(k_, f_->inv(o.k_)));
}
FieldElem FieldElem::inv() const {
  if (is_zero()) throw std::domain_error("finite field inverse of zero");
  return FieldElem(desc(), f_->inv(k_));
}
FieldElem FieldElem::pow(std::int64_t e) const {
  if (is_zero()) {
    if (e < 0) throw std::domain_error("negative power of zero");
    return e == 0 ? one(desc()) : *this;
  }
  std::int64_t r = (static_cast<std::int64_t>(k_) * (e % f_->order)) % f_->order;
  return FieldElem(desc(), f_->mod(r));
}
FieldElem FieldElem::frobenius(std::int64_t n) const {
  std::int64_t d = f_->d;
  std::int64_t k = ((n % d) + d) % d;
  return FieldElem(desc(), f_->frob(k_, k));
}
bool FieldElem::lex_less(const FieldElem& o) const {
  auto a = coeffs(), b = o.coeffs();
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}
std::string FieldElem::to_string() const {
  std::ostringstream os;
  os << "[";
  auto c = coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) os << (i ? " " : "") << c[i];
  os << "]";
  return os.str();
}

namespace {

// Map table for a non-standard source or target: x goes to the
// lexicographically least root of the source polynomial.
std::vector<std::int32_t> embedding_table(const FieldImpl* src, const FieldImpl* dst) {
  // Image of x: least root of src->poly in dst, by lexicographic coefficients.
  std::vector<std::int32_t> roots;
  for (std::int32_t k = -1; k < dst->order; ++k) {
    std::int32_t acc = -1;
    for (std::size_t i = src->poly.size(); i-- > 0;) {
      acc = dst->mul(acc, k);
      std::int32_t c = dst->log_[static_cast<std::size_t>(src->poly[i])];
      acc = dst->add(acc, c);
    }
    if (acc < 0) roots.push_back(k);
  }
  if (roots.empty()) throw std::logic_error("no root of defining polynomial in target");
  auto coeff_vec = [&](std::int32_t k) {
    std::vector<int> c(dst->n, 0);
    if (k < 0) return c;
    std::int64_t v = dst->exp_[k];
    for (int i = 0; i < dst->n; ++i) {
      c[i] = static_cast<int>(v % dst->p);
      v /= dst->p;
    }
    return c;
  };
  std::int32_t rho = *std::min_element(roots.begin(), roots.end(), [&](auto a, auto b) {
    return coeff_vec(a) < coeff_vec(b);
  });
  std::vector<std::int32_t> table(src->order);
  for (std::int32_t k = 0; k < src->order; ++k) {
    std::int64_t v = src->exp_[k];
    std::int32_t acc = -1, pw = 0;
    for (int i = 0; i < src->n; ++i) {
      int c = static_cast<int>(v % src->p);
      v /= src->p;
      if (c) acc = dst->add(acc, dst->mul(dst->log_[static_cast<std::size_t>(c)], pw));
      pw = dst->mul(pw, rho);
    }
    table[k] = acc;
  }
  return table;
}

}  // namespace

FieldElem embed(const FieldElem& x, const FieldDesc& target) {
  const FieldImpl* s = impl_of(x);
  const FieldImpl* t = target.impl();
  if (s == t) return x;
  if (s->p != t->p || s->m != t->m)
    throw MismatchedBase("cannot embed " + x.desc().name() + " into " + target.name());
  if (t->d % s->d != 0)
    throw NonDivisibleDegree("cannot embed " + x.desc().name() + " into " + target.name());
  if (x.is_zero()) return FieldElem::zero(target);
  if (s->standard && t->standard) {
    std::int64_t ratio = static_cast<std::int64_t>(t->order) / s->order;
    return FieldElem(target, static_cast<std::int32_t>(static_cast<std::int64_t>(x.log()) * ratio));
  }
  auto& reg = registry();
  std::lock_guard<std::mutex> lock(reg.mu);
  auto key = std::make_pair(s, t);
  auto it = reg.embeddings.find(key);
  if (it == reg.embeddings.end()) it = reg.embeddings.emplace(key, embedding_table(s, t)).first;
  return FieldElem(target, it->second[static_cast<std::size_t>(x.log())]);
}

FieldElem inverse_frobenius(const FieldElem& x) { return x.frobenius(x.desc().d() - 1); }

std::pair<FieldElem, FieldDesc> extract_root(const FieldElem& x, std::int64_t n) {
  FieldDesc base = x.desc();
  if (n < 1) throw std::invalid_argument("extract_root: n must be positive");
  if (n % base.p() == 0) throw std::invalid_argument("extract_root: n must be coprime to p");
  if (x.is_zero()) throw std::invalid_argument("extract_root: x must be nonzero");
  if (n == 1) return {x, base};
  for (int k = 1;; ++k) {
    FieldDesc f = base.extend(k);
    const std::int64_t ord = f.order() - 1;
    const std::int64_t lg = embed(x, f).log();
    const std::int64_t g = std::gcd(n, ord);
    if (lg % g != 0) continue;
    // n*m = lg mod ord has g solutions spaced ord/g apart.
    const std::int64_t mod = ord / g;
    std::int64_t a = (n / g) % mod, inv = 1;
    if (mod > 1) {
      std::int64_t t0 = 0, t1 = 1, r0 = mod, r1 = a;
      while (r1 != 0) {
        std::int64_t qq = r0 / r1;
        std::tie(t0, t1) = std::make_pair(t1, t0 - qq * t1);
        std::tie(r0, r1) = std::make_pair(r1, r0 - qq * r1);
      }
      inv = ((t0 % mod) + mod) % mod;
    }
    const std::int64_t m0 = mod > 1 ? ((lg / g) % mod) * inv % mod : 0;
    FieldElem best(f, static_cast<std::int32_t>(m0));
    for (std::int64_t i = 1; i < g; ++i) {
      FieldElem cand(f, static_cast<std::int32_t>(m0 + i * mod));
      if (cand.lex_less(best)) best = cand;
    }
    return {best, f};
  }
}

std::vector<FieldElem> additive_roots(const FieldElem& c,
                                      const std::vector<std::pair<int, FieldElem>>& terms,
                                      bool want_full_kernel) {
  if (terms.empty()) throw std::invalid_argument("additive_roots: empty additive part");
  FieldDesc base = c.desc();
  int lo = terms.front().first, hi = lo;
  for (const auto& [i, a] : terms) {
    base = FieldDesc::common(base, a.desc());
    lo = std::min(lo, i);
    hi = std::max(hi, i);
  }
  const std::int64_t q = base.q();
  std::int64_t kernel_size = 1;
  for (int i = lo; i < hi; ++i) kernel_size *= q;
  for (int k = 1;; ++k) {
    FieldDesc f = base.extend(k);
    const FieldImpl* fi = f.impl();
    std::int32_t cc = embed(c, f).log();
    std::vector<std::pair<std::int64_t, std::int32_t>> tt;
    for (const auto& [i, a] : terms) {
      std::int64_t qi = 1;
      for (int j = 0; j < i; ++j) qi *= q;
      tt.emplace_back(qi, embed(a, f).log());
    }
    std::vector<FieldElem> roots;
    for (std::int32_t y = -1; y < fi->order; ++y) {
      std::int32_t acc = cc;
      for (const auto& [qi, a] : tt) {
        std::int32_t yq = y < 0 ? -1 : static_cast<std::int32_t>((static_cast<std::int64_t>(y) * (qi % fi->order)) % fi->order);
        acc = fi->add(acc, fi->mul(a, yq));
      }
      if (acc < 0) roots.emplace_back(f, y);
    }
    bool enough;
    if (want_full_kernel)
      enough = static_cast<std::int64_t>(roots.size()) == kernel_size;
    else if (!c.is_zero())
      enough = !roots.empty();
    else
      enough = roots.size() > 1;
    if (enough) {
      std::sort(roots.begin(), roots.end(), [](const FieldElem& a, const FieldElem& b) { return a.lex_less(b); });
      return roots;
    }
  }
}

}  // namespace dtl
