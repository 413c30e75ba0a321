#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "seqlab/kernels.hpp"
#include "seqlab/sequence.hpp"

namespace seqlab {

struct WindowExtremes {
  double p_hat;  // max over windows of the length-n average
  double q_hat;  // min over windows of the length-n average
};

/// Per-window-length sliding-average extremes of a truncation plus a
/// Cesàro-mean trace.
///
/// p_hat[k] / q_hat[k] are the max / min of (x_j + ... + x_{j+n-1}) / n over all
/// windows inside x_1..x_N, n = schedule[k]. The *_ref arrays hold the same
/// statistics restricted to the prefix x_1..x_{ref_length}; they are NaN where
/// that prefix is too short to compare (n > ref_length / 4).
struct WindowProfile {
  std::uint64_t n_terms = 0;
  std::vector<std::size_t> schedule;
  std::vector<double> p_hat;
  std::vector<double> q_hat;

  std::uint64_t ref_length = 0;
  std::vector<double> p_hat_ref;
  std::vector<double> q_hat_ref;

  std::vector<std::uint64_t> cesaro_points;
  std::vector<double> cesaro;

  // Raw values over the tail half x_{N/2+1..N}.
  double tail_min = 0.0;
  double tail_max = 0.0;
  bool tail_monotone = true;
  double last_value = 0.0;
};

// P_0 = 0, P_i = P_{i-1} + x_i with compensated summation.
// Throws NonFiniteError naming the first non-finite term.
std::vector<double> prefix_sums(const Truncation& t);

// Exact max/min window average over all N - n + 1 windows; 1 <= n <= N.
WindowExtremes window_extremes(const Truncation& t, std::size_t n);
WindowExtremes window_extremes(const kernels::PrefixSums& p, std::size_t n);

// Cesàro means s_i = (x_1 + ... + x_i) / i at the given points (1 <= i <= N).
std::vector<double> cesaro_profile(const Truncation& t, std::span<const std::uint64_t> points);

// Powers of two up to N/4 (at least {1}); `dense_top` extra points are spread
// linearly between the last power of two and N/4.
std::vector<std::size_t> default_schedule(std::uint64_t n_terms, std::size_t dense_top = 0);

// Geometric grid (eight points per octave), powers of two, the variant's block
// boundaries and N itself, ascending and unique.
std::vector<std::uint64_t> default_cesaro_points(std::uint64_t n_terms, const SequenceSpec& spec);

WindowProfile lorentz_profile(const Truncation& t, std::span<const std::size_t> schedule,
                              std::span<const std::uint64_t> cesaro_points);
// Default schedule and Cesàro points.
WindowProfile lorentz_profile(const Truncation& t);

// Cesàro means of map(x) at the given points, streamed from the generator
// without materialising the truncation. Points must be ascending.
std::vector<double> streaming_cesaro(const SequenceSpec& spec, std::span<const std::uint64_t> points,
                                     const kernels::ScalarMap& map = {});

}  // namespace seqlab
