#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <string>

namespace dtl {

using Rational = boost::rational<std::int64_t>;

// Rational extended by +infinity. Used both for valuations (the
// "zero to precision" marker) and for precisions (exact values).
class XRational {
 public:
  XRational() : inf_(true) {}
  XRational(Rational v) : inf_(false), v_(v) {}  // NOLINT: implicit by design
  XRational(std::int64_t v) : inf_(false), v_(v) {}  // NOLINT

  static XRational infinity() { return XRational(); }

  bool is_inf() const { return inf_; }
  bool finite() const { return !inf_; }
  // Precondition: finite().
  const Rational& value() const;

  friend bool operator==(const XRational& a, const XRational& b) {
    return a.inf_ == b.inf_ && (a.inf_ || a.v_ == b.v_);
  }
  friend bool operator<(const XRational& a, const XRational& b) {
    if (a.inf_) return false;
    if (b.inf_) return true;
    return a.v_ < b.v_;
  }
  friend bool operator!=(const XRational& a, const XRational& b) { return !(a == b); }
  friend bool operator>(const XRational& a, const XRational& b) { return b < a; }
  friend bool operator<=(const XRational& a, const XRational& b) { return !(b < a); }
  friend bool operator>=(const XRational& a, const XRational& b) { return !(a < b); }

  friend XRational operator+(const XRational& a, const XRational& b) {
    if (a.inf_ || b.inf_) return XRational();
    return XRational(a.v_ + b.v_);
  }
  friend XRational operator-(const XRational& a, const Rational& b) {
    if (a.inf_) return a;
    return XRational(a.v_ - b);
  }
  friend XRational operator*(const XRational& a, const Rational& b) {
    if (a.inf_) return a;
    return XRational(a.v_ * b);
  }

 private:
  bool inf_;
  Rational v_{0};
};

inline XRational min(const XRational& a, const XRational& b) { return b < a ? b : a; }

// Canonical "num/den" rendering; integers render as "num/1".
std::string to_string(const Rational& r);
// "inf" for infinity.
std::string to_string(const XRational& r);
// Accepts "a", "a/b", "inf".
XRational parse_xrational(const std::string& s);

Rational floor_div(const Rational& r);  // floor as a Rational
std::int64_t floor_int(const Rational& r);
std::int64_t ceil_int(const Rational& r);

}  // namespace dtl
