#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "seqlab/kernels.hpp"

namespace seqlab::kernels {

void set_threads(int threads) {
  if (threads > 0) omp_set_num_threads(threads);
}

int max_threads() { return omp_get_max_threads(); }

namespace parallel {

SumExtremes window_sum_extremes(const PrefixSums& p, std::size_t n, std::size_t limit) {
  if (n > limit) return {-HUGE_VAL, HUGE_VAL};
  const auto count = static_cast<std::int64_t>(limit - n + 1);
  double mx = -HUGE_VAL;
  double mn = HUGE_VAL;
#pragma omp parallel for schedule(static) reduction(max : mx) reduction(min : mn)
  for (std::int64_t a = 0; a < count; ++a) {
    const auto lo = static_cast<std::size_t>(a);
    const double s = p.range_sum(lo, lo + n);
    mx = std::max(mx, s);
    mn = std::min(mn, s);
  }
  return {mx, mn};
}

void map_values(std::span<const double> in, std::span<double> out, const ScalarMap& f) {
  const auto count = static_cast<std::int64_t>(in.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = f(in[static_cast<std::size_t>(i)]);
}

std::vector<double> gram(std::span<const double> rows, std::size_t n_rows, std::size_t n_cols) {
  const std::size_t chunks = (n_cols + kGramChunk - 1) / kGramChunk;
  const std::size_t cells = n_rows * n_rows;
  // One partial Gram per chunk; merged below in chunk order.
  std::vector<double> partials(chunks * cells, 0.0);
#pragma omp parallel for schedule(static)
  for (std::int64_t c = 0; c < static_cast<std::int64_t>(chunks); ++c) {
    const std::size_t begin = static_cast<std::size_t>(c) * kGramChunk;
    const std::size_t end = std::min(n_cols, begin + kGramChunk);
    double* partial = partials.data() + static_cast<std::size_t>(c) * cells;
    for (std::size_t i = 0; i < n_rows; ++i)
      for (std::size_t j = i; j < n_rows; ++j) {
        double s = 0.0;
        for (std::size_t k = begin; k < end; ++k) s += rows[i * n_cols + k] * rows[j * n_cols + k];
        partial[i * n_rows + j] = s;
      }
  }
  std::vector<CompensatedSum> acc(cells);
  for (std::size_t c = 0; c < chunks; ++c)
    for (std::size_t e = 0; e < cells; ++e) acc[e].add(partials[c * cells + e]);
  std::vector<double> g(cells);
  for (std::size_t i = 0; i < n_rows; ++i)
    for (std::size_t j = i; j < n_rows; ++j) g[i * n_rows + j] = g[j * n_rows + i] = acc[i * n_rows + j].value();
  return g;
}

}  // namespace parallel
}  // namespace seqlab::kernels
