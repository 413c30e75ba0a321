#include <algorithm>
#include <cmath>

#include "seqlab/kernels.hpp"

namespace seqlab::kernels {

PrefixSums compensated_prefix_sums(std::span<const double> x) {
  PrefixSums p;
  p.hi.resize(x.size() + 1);
  p.lo.resize(x.size() + 1);
  CompensatedSum acc;
  p.hi[0] = 0.0;
  p.lo[0] = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i])) throw NonFiniteError(i + 1);
    acc.add(x[i]);
    p.hi[i + 1] = acc.sum;
    p.lo[i + 1] = acc.comp;
  }
  return p;
}

namespace serial {

SumExtremes window_sum_extremes(const PrefixSums& p, std::size_t n, std::size_t limit) {
  double mx = -HUGE_VAL;
  double mn = HUGE_VAL;
  for (std::size_t a = 0; a + n <= limit; ++a) {
    const double s = p.range_sum(a, a + n);
    mx = std::max(mx, s);
    mn = std::min(mn, s);
  }
  return {mx, mn};
}

void map_values(std::span<const double> in, std::span<double> out, const ScalarMap& f) {
  for (std::size_t i = 0; i < in.size(); ++i) out[i] = f(in[i]);
}

std::vector<double> gram(std::span<const double> rows, std::size_t n_rows, std::size_t n_cols) {
  const std::size_t chunks = (n_cols + kGramChunk - 1) / kGramChunk;
  std::vector<CompensatedSum> acc(n_rows * n_rows);
  std::vector<double> partial(n_rows * n_rows);
  for (std::size_t c = 0; c < chunks; ++c) {
    const std::size_t begin = c * kGramChunk;
    const std::size_t end = std::min(n_cols, begin + kGramChunk);
    std::fill(partial.begin(), partial.end(), 0.0);
    for (std::size_t i = 0; i < n_rows; ++i)
      for (std::size_t j = i; j < n_rows; ++j) {
        double s = 0.0;
        for (std::size_t k = begin; k < end; ++k) s += rows[i * n_cols + k] * rows[j * n_cols + k];
        partial[i * n_rows + j] = s;
      }
    for (std::size_t e = 0; e < partial.size(); ++e) acc[e].add(partial[e]);
  }
  std::vector<double> g(n_rows * n_rows);
  for (std::size_t i = 0; i < n_rows; ++i)
    for (std::size_t j = i; j < n_rows; ++j) g[i * n_rows + j] = g[j * n_rows + i] = acc[i * n_rows + j].value();
  return g;
}

}  // namespace serial
}  // namespace seqlab::kernels
