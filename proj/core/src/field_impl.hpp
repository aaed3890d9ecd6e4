#pragma once

#include <cstdint>
#include <vector>

namespace dtl::detail {

struct FieldImpl {
  int p = 2, m = 1, d = 1, n = 1;  // n = m*d
  std::int64_t q = 2;              // p^m
  std::int64_t size = 2;           // p^n
  std::int32_t order = 1;          // size - 1, the multiplicative group order
  std::int32_t minus_one = 0;      // log(-1)
  bool standard = true;
  std::vector<int> poly;           // monic, ascending, length n+1
  // exp_[k] = packed coefficient index of g^k; log_[packed] = k (log_[0] = -1);
  // zech_[k] = log(1 + g^k) or -1.
  std::vector<std::int32_t> exp_, log_, zech_;
  std::int32_t gen_log = 1;        // log of the polynomial generator x

  std::int32_t mod(std::int64_t k) const {
    std::int64_t r = k % order;
    return static_cast<std::int32_t>(r < 0 ? r + order : r);
  }
  std::int32_t add(std::int32_t a, std::int32_t b) const {
    if (a < 0) return b;
    if (b < 0) return a;
    std::int32_t diff = b - a;
    if (diff < 0) diff += order;
    std::int32_t z = zech_[diff];
    if (z < 0) return -1;
    std::int32_t s = a + z;
    return s >= order ? s - order : s;
  }
  std::int32_t mul(std::int32_t a, std::int32_t b) const {
    if (a < 0 || b < 0) return -1;
    std::int32_t s = a + b;
    return s >= order ? s - order : s;
  }
  std::int32_t neg(std::int32_t a) const { return a < 0 ? a : mul(a, minus_one); }
  std::int32_t inv(std::int32_t a) const { return a <= 0 ? a : order - a; }
  // a^(q^k) for k >= 0.
  std::int32_t frob(std::int32_t a, std::int64_t k) const;
};

}  // namespace dtl::detail
