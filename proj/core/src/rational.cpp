#include "dtl/rational.hpp"

#include "dtl/errors.hpp"

#include <cassert>

namespace dtl {

const Rational& XRational::value() const {
  assert(!inf_);
  return v_;
}

std::string to_string(const Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::string to_string(const XRational& r) {
  return r.is_inf() ? std::string("inf") : to_string(r.value());
}

XRational parse_xrational(const std::string& s) {
  if (s == "inf") return XRational::infinity();
  try {
    auto slash = s.find('/');
    if (slash == std::string::npos) return XRational(Rational(std::stoll(s)));
    std::size_t used = 0;
    std::int64_t num = std::stoll(s.substr(0, slash), &used);
    if (used != slash) throw ConfigError("bad rational '" + s + "'");
    std::int64_t den = std::stoll(s.substr(slash + 1));
    if (den == 0) throw ConfigError("zero denominator in '" + s + "'");
    return XRational(Rational(num, den));
  } catch (const std::logic_error&) {
    throw ConfigError("bad rational '" + s + "'");
  }
}

std::int64_t floor_int(const Rational& r) {
  std::int64_t n = r.numerator(), d = r.denominator();
  std::int64_t q = n / d;
  if ((n % d != 0) && (n < 0)) --q;
  return q;
}

std::int64_t ceil_int(const Rational& r) { return -floor_int(-r); }

Rational floor_div(const Rational& r) { return Rational(floor_int(r)); }

}  // namespace dtl
