#pragma once

// Data-parallel inner loops. Every kernel has a serial reference in
// `kernels::serial` and an OpenMP version in `kernels::parallel`; the two
// evaluate identical per-element expressions and reduce in a fixed order, so
// their results are bitwise equal for any thread count.

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace seqlab {

class NonFiniteError : public std::domain_error {
 public:
  explicit NonFiniteError(std::size_t index)
      : std::domain_error("non-finite value at index " + std::to_string(index)), index_(index) {}
  // 1-based sequence index of the offending term.
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

namespace kernels {

// Neumaier compensated accumulator.
struct CompensatedSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

// P_i = hi[i] + lo[i] for i = 0..N, P_0 = 0.
struct PrefixSums {
  std::vector<double> hi;
  std::vector<double> lo;

  std::size_t terms() const { return hi.empty() ? 0 : hi.size() - 1; }
  double at(std::size_t i) const { return hi[i] + lo[i]; }
  // x_{a+1} + ... + x_b
  double range_sum(std::size_t a, std::size_t b) const { return (hi[b] - hi[a]) + (lo[b] - lo[a]); }
};

// Sequential by nature; shared by both kernel families.
// Throws NonFiniteError naming the first non-finite term.
PrefixSums compensated_prefix_sums(std::span<const double> x);

struct SumExtremes {
  double max_sum;
  double min_sum;
};

// Elementwise map; must be a pure function of its argument.
using ScalarMap = std::function<double(double)>;

namespace serial {

// Max/min window sum over windows of length n lying in x_1..x_limit.
SumExtremes window_sum_extremes(const PrefixSums& p, std::size_t n, std::size_t limit);

void map_values(std::span<const double> in, std::span<double> out, const ScalarMap& f);

// Row-major rows x cols matrix; returns the rows x rows Gram matrix R R^T,
// accumulated per fixed-size column chunk and merged in chunk order.
std::vector<double> gram(std::span<const double> rows, std::size_t n_rows, std::size_t n_cols);

}  // namespace serial

namespace parallel {

SumExtremes window_sum_extremes(const PrefixSums& p, std::size_t n, std::size_t limit);
void map_values(std::span<const double> in, std::span<double> out, const ScalarMap& f);
std::vector<double> gram(std::span<const double> rows, std::size_t n_rows, std::size_t n_cols);

}  // namespace parallel

// Column chunk used by both gram implementations.
inline constexpr std::size_t kGramChunk = std::size_t{1} << 15;

// Sets the OpenMP worker count for subsequent parallel kernels (0 = runtime default).
void set_threads(int threads);
int max_threads();

}  // namespace kernels
}  // namespace seqlab
