#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace seqlab {

// Coordinate law: i.i.d. uniform on (-1/2, 1/2), or identically zero (control).
enum class Sampler { Uniform, Zero };

/// Spread of Cesàro means s_n of i.i.d. uniform(-1/2, 1/2) prefixes across trials.
struct LlnReport {
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  std::uint64_t n_terms = 0;
  Sampler sampler = Sampler::Uniform;
  std::vector<std::uint64_t> points;  // powers of two <= N
  std::vector<double> mean;           // across trials, per point
  std::vector<double> stddev;         // sample standard deviation (n - 1)
  std::vector<double> reference_std;  // sqrt(1 / (12 n))
  // traces[t][k] = s_{points[k]} of trial t; filled only on request.
  std::vector<std::vector<double>> traces;
};

LlnReport mc_lln(std::uint64_t seed, std::uint64_t n_terms, std::uint64_t trials,
                 Sampler sampler = Sampler::Uniform, bool keep_traces = false);

/// Frequency of block averages below 1/4 and of runs of such blocks.
///
/// Block m of a trial is the mean of draws (m-1)N_b+1 .. m N_b. p_hat pools all
/// trials x m_max blocks; frequency[M-1] is the share of trials whose first M
/// blocks all fall below 1/4, which is non-increasing in M by construction.
struct BlockDecayReport {
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  std::uint64_t block_size = 0;
  std::uint64_t m_max = 0;

  double p_hat = 0.0;
  double p_hat_stderr = 0.0;  // binomial sqrt(p (1 - p) / (trials m_max))

  std::vector<std::uint64_t> run_counts;  // trials with the first M blocks below 1/4
  std::vector<double> frequency;
  // Upper end of the reported interval [0, 3 / trials] where no event was
  // seen; such M are left out of the fit. Zero elsewhere.
  std::vector<double> zero_upper;

  // Least-squares fit ln frequency = intercept + slope M over observed M.
  double slope = 0.0;
  double slope_stderr = 0.0;
  double intercept = 0.0;
  std::size_t fitted_points = 0;
  double log_p_hat = 0.0;
};

BlockDecayReport mc_block_decay(std::uint64_t seed, std::uint64_t block_size, std::uint64_t m_max,
                                std::uint64_t trials);

}  // namespace seqlab
