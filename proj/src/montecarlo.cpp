#include "seqlab/montecarlo.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "seqlab/kernels.hpp"
#include "seqlab/rng.hpp"

namespace seqlab {

namespace {

// Uniform(-1/2, 1/2) as (u - 0.5) from a 53-bit u in [0, 1).
double draw(rng::Stream& rs, Sampler sampler) {
  const double u = rs.uniform01();
  return sampler == Sampler::Zero ? 0.0 : u - 0.5;
}

void require_positive(std::uint64_t v, const char* what) {
  if (v == 0) throw std::invalid_argument(std::string(what) + " must be >= 1");
}

}  // namespace

LlnReport mc_lln(std::uint64_t seed, std::uint64_t n_terms, std::uint64_t trials, Sampler sampler,
                 bool keep_traces) {
  require_positive(n_terms, "N");
  require_positive(trials, "trials");
  LlnReport rep;
  rep.seed = seed;
  rep.trials = trials;
  rep.n_terms = n_terms;
  rep.sampler = sampler;
  for (std::uint64_t p = 1; p <= n_terms; p *= 2) {
    rep.points.push_back(p);
    if (p > n_terms / 2) break;
  }
  const std::size_t k = rep.points.size();

  std::vector<double> s(trials * k);
  const auto count = static_cast<std::int64_t>(trials);
#pragma omp parallel for schedule(static)
  for (std::int64_t t = 0; t < count; ++t) {
    rng::Stream rs(seed, static_cast<std::uint64_t>(t));
    kernels::CompensatedSum acc;
    std::size_t next = 0;
    for (std::uint64_t n = 1; n <= n_terms; ++n) {
      acc.add(draw(rs, sampler));
      if (n == rep.points[next]) {
        s[static_cast<std::size_t>(t) * k + next] = acc.value() / static_cast<double>(n);
        if (++next == k) break;
      }
    }
  }

  for (std::size_t j = 0; j < k; ++j) {
    kernels::CompensatedSum sum;
    for (std::uint64_t t = 0; t < trials; ++t) sum.add(s[t * k + j]);
    const double mean = sum.value() / static_cast<double>(trials);
    kernels::CompensatedSum sq;
    for (std::uint64_t t = 0; t < trials; ++t) {
      const double d = s[t * k + j] - mean;
      sq.add(d * d);
    }
    rep.mean.push_back(mean);
    rep.stddev.push_back(trials > 1 ? std::sqrt(sq.value() / static_cast<double>(trials - 1)) : 0.0);
    rep.reference_std.push_back(std::sqrt(1.0 / (12.0 * static_cast<double>(rep.points[j]))));
  }
  if (keep_traces) {
    rep.traces.resize(trials);
    for (std::uint64_t t = 0; t < trials; ++t)
      rep.traces[t].assign(s.begin() + static_cast<std::ptrdiff_t>(t * k),
                           s.begin() + static_cast<std::ptrdiff_t>((t + 1) * k));
  }
  return rep;
}

BlockDecayReport mc_block_decay(std::uint64_t seed, std::uint64_t block_size, std::uint64_t m_max,
                                std::uint64_t trials) {
  require_positive(block_size, "block size");
  require_positive(m_max, "M_max");
  require_positive(trials, "trials");
  BlockDecayReport rep;
  rep.seed = seed;
  rep.trials = trials;
  rep.block_size = block_size;
  rep.m_max = m_max;

  std::vector<std::uint64_t> below(trials), lead(trials);
  const auto count = static_cast<std::int64_t>(trials);
#pragma omp parallel for schedule(static)
  for (std::int64_t t = 0; t < count; ++t) {
    rng::Stream rs(seed, static_cast<std::uint64_t>(t));
    std::uint64_t hits = 0, run = 0;
    bool leading = true;
    for (std::uint64_t m = 0; m < m_max; ++m) {
      kernels::CompensatedSum acc;
      for (std::uint64_t i = 0; i < block_size; ++i) acc.add(draw(rs, Sampler::Uniform));
      const bool hit = acc.value() / static_cast<double>(block_size) < 0.25;
      hits += hit;
      leading = leading && hit;
      run += leading;
    }
    below[static_cast<std::size_t>(t)] = hits;
    lead[static_cast<std::size_t>(t)] = run;
  }

  std::uint64_t total = 0;
  rep.run_counts.assign(m_max, 0);
  for (std::uint64_t t = 0; t < trials; ++t) {
    total += below[t];
    for (std::uint64_t m = 0; m < lead[t]; ++m) ++rep.run_counts[m];
  }
  const double blocks = static_cast<double>(trials) * static_cast<double>(m_max);
  rep.p_hat = static_cast<double>(total) / blocks;
  rep.p_hat_stderr = std::sqrt(rep.p_hat * (1.0 - rep.p_hat) / blocks);
  rep.log_p_hat = std::log(rep.p_hat);

  std::vector<double> xs, ys;
  for (std::uint64_t m = 0; m < m_max; ++m) {
    const double f = static_cast<double>(rep.run_counts[m]) / static_cast<double>(trials);
    rep.frequency.push_back(f);
    rep.zero_upper.push_back(rep.run_counts[m] == 0 ? 3.0 / static_cast<double>(trials) : 0.0);
    if (rep.run_counts[m] > 0) {
      xs.push_back(static_cast<double>(m + 1));
      ys.push_back(std::log(f));
    }
  }
  rep.fitted_points = xs.size();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (xs.size() < 2) {
    rep.slope = rep.slope_stderr = rep.intercept = nan;
    return rep;
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) mx += xs[i], my += ys[i];
  mx /= n, my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  rep.slope = sxy / sxx;
  rep.intercept = my - rep.slope * mx;
  if (xs.size() > 2) {
    double sse = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double e = ys[i] - rep.intercept - rep.slope * xs[i];
      sse += e * e;
    }
    rep.slope_stderr = std::sqrt(sse / (n - 2.0) / sxx);
  }
  return rep;
}

}  // namespace seqlab
