#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dtl {

namespace detail {
struct FieldImpl;
}

// Largest field order the tables are built for.
inline constexpr std::int64_t kMaxFieldOrder = std::int64_t{1} << 22;

// F_{q^d} with q = p^m, realized as F_p[x]/(defining_poly). Descriptors are
// interned: equal (p, m, d) share one implementation and compare equal.
class FieldDesc {
 public:
  FieldDesc();  // F_2 placeholder so that containers are default-constructible
  static FieldDesc get(int p, int m, int d);
  // Override the table polynomial. Such fields are interned by polynomial and
  // embed through deterministic root finding instead of log rescaling.
  static FieldDesc with_polynomial(int p, int m, int d, std::vector<int> poly);

  int p() const;
  int m() const;
  int d() const;
  int degree() const;  // m*d, the degree over F_p
  std::int64_t q() const;
  std::int64_t order() const;  // q^d
  const std::vector<int>& defining_poly() const;  // ascending, monic
  bool is_standard() const;  // table polynomial

  // Smallest field containing both; same p and m required.
  static FieldDesc common(const FieldDesc& a, const FieldDesc& b);
  // Same p, m and d multiplied by k.
  FieldDesc extend(int k) const;

  const detail::FieldImpl* impl() const { return impl_; }
  static FieldDesc from_impl(const detail::FieldImpl* impl) { return FieldDesc(impl); }
  friend bool operator==(const FieldDesc& a, const FieldDesc& b) { return a.impl_ == b.impl_; }
  friend bool operator!=(const FieldDesc& a, const FieldDesc& b) { return a.impl_ != b.impl_; }

  std::string name() const;  // "F_3^(2)" style: p, m, d

 private:
  explicit FieldDesc(const detail::FieldImpl* impl) : impl_(impl) {}
  const detail::FieldImpl* impl_;
  friend class FieldElem;
};

// Element of a FieldDesc, stored as a discrete log to the field's primitive
// generator (kZero for 0).
class FieldElem {
 public:
  static constexpr std::int32_t kZero = -1;

  FieldElem() : FieldElem(FieldDesc()) {}
  explicit FieldElem(FieldDesc f) : f_(f.impl_), k_(kZero) {}
  FieldElem(FieldDesc f, std::int32_t log) : f_(f.impl_), k_(log) {}

  static FieldElem zero(FieldDesc f) { return FieldElem(f); }
  static FieldElem one(FieldDesc f) { return FieldElem(f, 0); }
  static FieldElem from_int(FieldDesc f, std::int64_t c);
  // Ascending coefficients in the polynomial generator; length <= degree().
  static FieldElem from_coeffs(FieldDesc f, const std::vector<int>& c);
  // The class of x in F_p[x]/(defining_poly).
  static FieldElem generator(FieldDesc f);

  FieldDesc desc() const { return FieldDesc(f_); }
  std::int32_t log() const { return k_; }
  bool is_zero() const { return k_ == kZero; }
  bool is_one() const { return k_ == 0; }
  std::vector<int> coeffs() const;
  bool in_base_field() const;  // fixed by x -> x^q

  FieldElem operator+(const FieldElem& o) const;
  FieldElem operator-(const FieldElem& o) const;
  FieldElem operator-() const;
  FieldElem operator*(const FieldElem& o) const;
  FieldElem operator/(const FieldElem& o) const;
  FieldElem& operator+=(const FieldElem& o) { return *this = *this + o; }
  FieldElem& operator-=(const FieldElem& o) { return *this = *this - o; }
  FieldElem& operator*=(const FieldElem& o) { return *this = *this * o; }
  FieldElem inv() const;
  FieldElem pow(std::int64_t e) const;
  // x^(q^n); negative n applies inverse Frobenius.
  FieldElem frobenius(std::int64_t n) const;
  // Lexicographic order on coeffs(); total, deterministic.
  bool lex_less(const FieldElem& o) const;

  friend bool operator==(const FieldElem& a, const FieldElem& b) {
    return a.f_ == b.f_ && a.k_ == b.k_;
  }
  friend bool operator!=(const FieldElem& a, const FieldElem& b) { return !(a == b); }

  std::string to_string() const;

 private:
  const detail::FieldImpl* f_;
  std::int32_t k_;
};

// Fixed composition-compatible embedding; requires same p, m and d | d'.
FieldElem embed(const FieldElem& x, const FieldDesc& target);

// y with y^q = x.
FieldElem inverse_frobenius(const FieldElem& x);

// y^n = x in the least extension F_{q^{d'}} (d | d') in which x is an n-th
// power; least root in lexicographic coefficient order.
std::pair<FieldElem, FieldDesc> extract_root(const FieldElem& x, std::int64_t n);

// All roots of the affine additive polynomial c + sum_i a_i y^(q^i) lying in
// the least extension of the coefficients' field (degree multiple) where a
// nonzero root exists (c != 0: any root). Sorted lexicographically.
std::vector<FieldElem> additive_roots(const FieldElem& c,
                                      const std::vector<std::pair<int, FieldElem>>& terms,
                                      bool want_full_kernel);

// Conway-style search: least primitive polynomial of degree n over F_p in the
// Conway order that is compatible with every divisor degree.
std::vector<int> conway_search(int p, int n);

// Parsed table asset: (p, n) -> polynomial.
std::vector<int> table_polynomial(int p, int n);  // empty if absent
std::string_view table_asset_text();

}  // namespace dtl
