#pragma once
// Test-side oracles, independent of the library's log/Zech machinery.

#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

// Multiply ascending coefficient vectors modulo a monic polynomial over F_p.
inline std::vector<int> polymulmod(const std::vector<int>& a, const std::vector<int>& b,
                                   const std::vector<int>& f, int p) {
  const std::size_t n = f.size() - 1;
  std::vector<long> prod(2 * n, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] += static_cast<long>(a[i]) * b[j];
  for (std::size_t k = prod.size(); k-- > n;) {
    long c = ((prod[k] % p) + p) % p;
    for (std::size_t i = 0; i < n; ++i) prod[k - n + i] -= c * f[i];
    prod[k] = 0;
  }
  std::vector<int> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<int>(((prod[i] % p) + p) % p);
  return out;
}

inline std::vector<int> polypow(std::vector<int> a, std::int64_t e, const std::vector<int>& f, int p) {
  std::vector<int> r(f.size() - 1, 0);
  r[0] = 1;
  while (e > 0) {
    if (e & 1) r = polymulmod(r, a, f, p);
    a = polymulmod(a, a, f, p);
    e >>= 1;
  }
  return r;
}

inline std::vector<int> polyadd(const std::vector<int>& a, const std::vector<int>& b, int p) {
  std::vector<int> out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  for (auto& c : out) c %= p;
  return out;
}

inline std::mt19937_64& rng() {
  static std::mt19937_64 g(20240611ULL);
  return g;
}

}  // namespace oracle
