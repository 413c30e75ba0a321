#pragma once

// Independent reference implementations used only by tests. Each one is the
// most direct transcription of its definition: block-by-block construction of
// the sequences, and O(N^2) window scans in long double.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

namespace oracle {

// Literal prefixes of the published constructions.
inline const std::vector<double> kExamplePrefix = {0, 1, 1, 0, 0, 1, 1, 1, 1, 0, 0, 0, 1, 1, 1, 1, 1, 1, 1, 1, 0};
inline const std::vector<double> kZchatPrefix = {1, 0, 1, 0, 0, 2, 0, 0, 0, 1, 0, 0, 0, 0, 2, 0, 0, 0, 0, 0, 1.5};
inline const std::vector<double> kZsPrefix = {1, 0, 0, 1, 1, 0, 0, 0, 0, 2, 2, 2,
                                              0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1};
inline const std::vector<double> kAPrefix = {1, 2, 1.5, 1.25, 1.75, 1.125, 1.375, 1.625, 1.875};
inline const std::vector<double> kBPrefix = {1, 1, 2, 1, 2, 1.5, 1, 2, 1.5, 1.25};

// a: 1, 2, then level k lists the odd multiples of 2^-k in (1, 2).
inline std::vector<double> a_terms(std::size_t n) {
  std::vector<double> a{1.0, 2.0};
  for (int k = 1; a.size() < n; ++k) {
    const double den = std::ldexp(1.0, k);
    for (std::int64_t num = (1ll << k) + 1; num < (2ll << k) && a.size() < n; num += 2)
      a.push_back(static_cast<double>(num) / den);
  }
  a.resize(n);
  return a;
}

// b: rows a_1; a_1, a_2; a_1, a_2, a_3; ...
inline std::vector<double> b_terms(std::size_t n) {
  const auto a = a_terms(n + 1);
  std::vector<double> b;
  for (std::size_t row = 1; b.size() < n; ++row)
    for (std::size_t i = 0; i < row && b.size() < n; ++i) b.push_back(a[i]);
  return b;
}

// Block j: j zeros, then 2^j ones.
inline std::vector<double> example(std::size_t n) {
  std::vector<double> x;
  for (int j = 1; x.size() < n; ++j) {
    for (int i = 0; i < j; ++i) x.push_back(0.0);
    for (std::int64_t i = 0; i < (1ll << j); ++i) x.push_back(1.0);
  }
  x.resize(n);
  return x;
}

// b_j at positions m_1 = 1, m_j = m_{j-1} + j; zero elsewhere.
inline std::vector<double> z_chat(std::size_t n) {
  const auto b = b_terms(n + 1);
  std::vector<double> z(n, 0.0);
  std::size_t m = 1;
  for (std::size_t j = 1; m <= n; ++j) {
    z[m - 1] = b[j - 1];
    m += j + 1;
  }
  return z;
}

// j copies of b_j starting at m_1 = 1, m_j = m_{j-1} + j - 1 + 2^(j-1).
inline std::vector<double> z_s(std::size_t n) {
  const auto b = b_terms(n + 1);
  std::vector<double> z(n, 0.0);
  std::uint64_t m = 1;
  for (std::uint64_t j = 1; m <= n; ++j) {
    for (std::uint64_t i = 0; i < j && m + i <= n; ++i) z[m + i - 1] = b[j - 1];
    m += j + (std::uint64_t{1} << j);  // next start: m_{j+1} = m_j + j + 2^j
  }
  return z;
}

inline std::uint64_t pow_self(std::uint64_t j) {
  std::uint64_t p = 1;
  for (std::uint64_t i = 0; i < j; ++i) p *= j;
  return p;
}

// Value v(j) on block (j-1)^(j-1) < n <= j^j (with 0^0 read as 0).
template <typename V>
std::vector<double> power_blocks(std::size_t n, V v) {
  std::vector<double> z;
  for (std::uint64_t j = 1; z.size() < n; ++j) {
    const std::uint64_t lo = j == 1 ? 0 : pow_self(j - 1);
    for (std::uint64_t i = lo; i < pow_self(j) && z.size() < n; ++i) z.push_back(v(j));
  }
  return z;
}

inline std::vector<double> z_linf(std::size_t n) {
  const auto b = b_terms(64);
  return power_blocks(n, [&](std::uint64_t j) { return b[j - 1]; });
}

inline std::vector<double> power_block_sign(std::size_t n) {
  return power_blocks(n, [](std::uint64_t j) { return j % 2 == 1 ? 1.0 : -1.0; });
}

struct Extremes {
  std::vector<long double> max_avg;  // index n - 1
  std::vector<long double> min_avg;
};

// Every window [a, a + n) summed directly; O(N^2) over all lengths at once.
inline Extremes window_extremes_all(const std::vector<double>& x) {
  const std::size_t n = x.size();
  Extremes e{std::vector<long double>(n, -std::numeric_limits<long double>::infinity()),
             std::vector<long double>(n, std::numeric_limits<long double>::infinity())};
  for (std::size_t a = 0; a < n; ++a) {
    long double s = 0.0L;
    for (std::size_t len = 1; a + len <= n; ++len) {
      s += x[a + len - 1];
      const long double avg = s / static_cast<long double>(len);
      e.max_avg[len - 1] = std::max(e.max_avg[len - 1], avg);
      e.min_avg[len - 1] = std::min(e.min_avg[len - 1], avg);
    }
  }
  return e;
}

inline long double cesaro(const std::vector<double>& x, std::size_t i) {
  long double s = 0.0L;
  for (std::size_t k = 0; k < i; ++k) s += x[k];
  return s / static_cast<long double>(i);
}

}  // namespace oracle
