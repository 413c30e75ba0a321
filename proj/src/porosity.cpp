#include "seqlab/porosity.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "seqlab/kernels.hpp"
#include "seqlab/rng.hpp"
#include "seqlab/spec_io.hpp"
#include "seqlab/window_stats.hpp"

namespace seqlab {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

Space smaller_space(PorosityPair p, bool zero_limit) {
  switch (p) {
    case PorosityPair::CInChat: return zero_limit ? Space::c0 : Space::c;
    case PorosityPair::ChatInS: return zero_limit ? Space::chat0 : Space::chat;
    case PorosityPair::SInLinf: return zero_limit ? Space::S0 : Space::S;
  }
  return Space::c;
}

double base_measure(PorosityPair p, const ClassificationReport& r) {
  switch (p) {
    case PorosityPair::CInChat: return r.value_oscillation;
    case PorosityPair::ChatInS: return r.window_gap;
    case PorosityPair::SInLinf: return r.cesaro_oscillation;
  }
  return 0.0;
}

// Start of the tail half, keeping at least two entries.
std::size_t tail_start(std::size_t n) { return std::min(n / 2, n - 2); }

double parity_gap(std::span<const double> v) {
  double min_even = HUGE_VAL, max_odd = -HUGE_VAL;
  for (std::size_t i = tail_start(v.size()); i < v.size(); ++i) {
    if ((i + 1) % 2 == 0)
      min_even = std::min(min_even, v[i]);
    else
      max_odd = std::max(max_odd, v[i]);
  }
  return min_even - max_odd;
}

double range_of(std::span<const double> v) {
  if (v.empty()) return 0.0;
  const auto [mn, mx] = std::minmax_element(v.begin(), v.end());
  return *mx - *mn;
}

std::vector<double> cesaro_at(std::span<const double> v, const std::vector<std::uint64_t>& points) {
  const auto p = kernels::compensated_prefix_sums(v);
  std::vector<double> out;
  out.reserve(points.size());
  for (auto m : points) out.push_back(p.at(static_cast<std::size_t>(m)) / static_cast<double>(m));
  return out;
}

struct Runs {
  std::size_t plus = 0;
  std::size_t minus = 0;
};

Runs longest_runs(std::span<const double> w) {
  Runs r;
  std::size_t cur = 0;
  int sign = 0;
  for (double v : w) {
    const int s = (v > 0.0) - (v < 0.0);
    cur = (s == sign) ? cur + 1 : 1;
    sign = s;
    if (s > 0) r.plus = std::max(r.plus, cur);
    if (s < 0) r.minus = std::max(r.minus, cur);
  }
  return r;
}

}  // namespace

std::string_view to_string(PorosityPair p) {
  switch (p) {
    case PorosityPair::CInChat: return "c_in_chat";
    case PorosityPair::ChatInS: return "chat_in_S";
    case PorosityPair::SInLinf: return "S_in_linf";
  }
  return "?";
}

PorosityPair porosity_pair_from_name(std::string_view name) {
  if (name == "c_in_chat" || name == "c-in-chat") return PorosityPair::CInChat;
  if (name == "chat_in_S" || name == "chat-in-s") return PorosityPair::ChatInS;
  if (name == "S_in_linf" || name == "s-in-linf") return PorosityPair::SInLinf;
  throw std::invalid_argument("unknown porosity pair '" + std::string(name) +
                              "' (expected c_in_chat, chat_in_S or S_in_linf)");
}

SequenceSpec canonical_pattern(PorosityPair p) {
  switch (p) {
    case PorosityPair::CInChat: return SequenceSpec::alt_sign();
    case PorosityPair::ChatInS: return SequenceSpec::affine(SequenceSpec::example_s_not_chat(), 2.0, -1.0);
    case PorosityPair::SInLinf: return SequenceSpec::power_block_sign();
  }
  return SequenceSpec::alt_sign();
}

std::uint64_t required_length(PorosityPair pair) {
  switch (pair) {
    case PorosityPair::CInChat: return 2;  // one even and one odd index
    case PorosityPair::ChatInS: return 3;  // a -1 run and a +1 run
    case PorosityPair::SInLinf: return 4;  // two complete sign blocks
  }
  return 4;
}

PorosityCertificate porosity_witness(PorosityPair pair, const SequenceSpec& base, double r, double alpha,
                                     bool zero_limit, std::uint64_t evidence_length) {
  if (!(r > 0.0) || !std::isfinite(r)) throw std::invalid_argument("porosity_witness: r must be positive");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("porosity_witness: alpha must lie in (0, 1)");

  PorosityCertificate cert;
  cert.pair = pair;
  cert.zero_limit = zero_limit;
  cert.base = base;
  cert.r = r;
  cert.alpha = alpha;
  cert.pattern = canonical_pattern(pair);
  cert.oscillation_bound = r * (1.0 - alpha);
  cert.gamma = alpha * r / 2.0;

  cert.evidence_length = std::min(evidence_length, max_length(base));
  const auto report =
      classify(lorentz_profile(generate(base, cert.evidence_length)), {cert.oscillation_bound / 2.0, 0.25});
  const Space space = smaller_space(pair, zero_limit);
  cert.base_verdict = report.verdict(space);
  cert.base_oscillation = base_measure(pair, report);
  if (cert.base_verdict != Verdict::ConsistentWithMember || cert.base_oscillation >= cert.oscillation_bound / 2.0)
    throw CertificateRefused("base " + base.describe() + " is not evidently in " + std::string(to_string(space)) +
                             ": verdict " + std::string(to_string(cert.base_verdict)) + ", oscillation " +
                             format_double(cert.base_oscillation) + " vs bound/2 = " +
                             format_double(cert.oscillation_bound / 2.0) + " on N = " +
                             std::to_string(cert.evidence_length));
  return cert;
}

Truncation certificate_center(const PorosityCertificate& cert, std::uint64_t n_terms) {
  Truncation y = generate(cert.base, n_terms);
  const Truncation w = generate(cert.pattern, n_terms);
  const double h = cert.r / 2.0;
  for (std::size_t i = 0; i < y.values.size(); ++i) y.values[i] += h * w.values[i];
  y.transforms.push_back("plus " + format_double(h) + " * (" + cert.pattern.describe() + ")");
  return y;
}

namespace {

// Adds delta_n ~ uniform[-gamma, gamma) from substream (seed, sample) to y.
Truncation perturb(const Truncation& y, const PorosityCertificate& cert, std::uint64_t seed, std::uint64_t sample) {
  Truncation z = y;
  rng::Stream rs(seed, sample);
  const double radius = cert.gamma;
  for (double& v : z.values) v += rs.uniform(-radius, radius);
  z.transforms.push_back("ball sample " + std::to_string(sample) + " seed " + std::to_string(seed));
  return z;
}

}  // namespace

Truncation ball_sample(const PorosityCertificate& cert, std::uint64_t n_terms, std::uint64_t seed,
                       std::uint64_t sample) {
  return perturb(certificate_center(cert, n_terms), cert, seed, sample);
}

CertificateVerdict verify_certificate(const PorosityCertificate& cert, std::uint64_t n_terms, std::size_t samples,
                                      std::uint64_t seed) {
  if (samples == 0) throw std::invalid_argument("verify_certificate: samples must be >= 1");
  const std::uint64_t need = required_length(cert.pair);
  if (n_terms < need)
    throw InsufficientLength(std::string(to_string(cert.pair)) + " needs N >= " + std::to_string(need) +
                                 " to contain one full pattern period",
                             need);

  CertificateVerdict v;
  v.samples = samples;
  v.seed = seed;
  v.n_terms = n_terms;

  const Truncation x = generate(cert.base, n_terms);
  const Truncation y = certificate_center(cert, n_terms);
  const Truncation w = generate(cert.pattern, n_terms);

  double max_dev = 0.0, max_abs_x = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    max_dev = std::max(max_dev, std::abs(y.values[i] - x.values[i]));
    max_abs_x = std::max(max_abs_x, std::abs(x.values[i]));
  }
  v.norm_deviation = std::abs(max_dev - cert.r / 2.0);
  v.norm_ok = v.norm_deviation <= 2.0 * kEps * (max_abs_x + cert.r / 2.0);

  const double bound = cert.oscillation_bound;
  std::function<double(std::span<const double>)> statistic;
  switch (cert.pair) {
    case PorosityPair::CInChat: {
      v.statistic = "min even minus max odd over the tail half";
      const auto tail = x.view().subspan(tail_start(x.size()));
      v.slack = range_of(tail);
      statistic = parity_gap;
      break;
    }
    case PorosityPair::ChatInS: {
      v.statistic = "window gap p_n - q_n";
      const Runs runs = longest_runs(w.view());
      if (runs.plus == 0 || runs.minus == 0) {
        v.diagnostics.push_back("pattern lacks a " + std::string(runs.plus == 0 ? "+1" : "-1") + " run within N");
        v.threshold = bound;
        v.min_statistic = -HUGE_VAL;
        v.failing_samples = samples;
        return v;
      }
      v.window = std::bit_floor(std::min(runs.plus, runs.minus));
      const auto ex = window_extremes(x, v.window);
      v.slack = ex.p_hat - ex.q_hat;
      const std::size_t n = v.window;
      statistic = [n](std::span<const double> z) {
        const auto e = window_extremes(kernels::compensated_prefix_sums(z), n);
        return e.p_hat - e.q_hat;
      };
      break;
    }
    case PorosityPair::SInLinf: {
      v.statistic = "Cesàro oscillation at block boundaries";
      const auto canonical = canonical_pattern(PorosityPair::SInLinf);
      const auto points = block_boundaries(canonical, n_terms);
      const std::size_t big_j = points.size();
      const double tail_ratio =
          big_j >= 2 ? static_cast<double>(points[big_j - 2]) / static_cast<double>(points[big_j - 1]) : 1.0;
      const double osc_w = range_of(cesaro_at(generate(canonical, n_terms).view(), points));
      const double osc_x = range_of(cesaro_at(x.view(), points));
      // The pattern realises oscillation osc_w < 2 on the truncation, so the
      // bound is scaled by osc_w / 2 before subtracting the base's share.
      v.slack = bound * (1.0 - osc_w / 2.0) + 2.0 * max_abs_x * tail_ratio + osc_x;
      statistic = [points](std::span<const double> z) { return range_of(cesaro_at(z, points)); };
      break;
    }
  }
  v.threshold = bound - v.slack;
  if (!(v.threshold > 0.0)) {
    v.diagnostics.push_back("exclusion threshold " + format_double(v.threshold) +
                            " is not positive; the truncation cannot separate the ball from the smaller space");
    v.min_statistic = -HUGE_VAL;
    v.failing_samples = samples;
    return v;
  }

  std::vector<double> stats(samples);
  const auto count = static_cast<std::int64_t>(samples);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t s = 0; s < count; ++s) {
    const Truncation z = perturb(y, cert, seed, static_cast<std::uint64_t>(s));
    stats[static_cast<std::size_t>(s)] = statistic(z.view());
  }
  v.min_statistic = *std::min_element(stats.begin(), stats.end());
  v.failing_samples = static_cast<std::size_t>(
      std::count_if(stats.begin(), stats.end(), [&](double s) { return !(s >= v.threshold); }));
  if (!v.norm_ok) v.diagnostics.push_back("sup distance between centre and base differs from r/2");
  v.passed = v.norm_ok && v.failing_samples == 0;
  return v;
}

}  // namespace seqlab
