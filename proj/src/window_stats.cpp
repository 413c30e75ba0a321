#include "seqlab/window_stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace seqlab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_points(std::span<const std::uint64_t> points, std::uint64_t n_terms) {
  for (std::size_t k = 0; k < points.size(); ++k) {
    if (points[k] == 0 || points[k] > n_terms)
      throw std::invalid_argument("Cesàro sample point " + std::to_string(points[k]) +
                                  " outside 1.." + std::to_string(n_terms));
  }
}

}  // namespace

std::vector<double> prefix_sums(const Truncation& t) {
  const auto p = kernels::compensated_prefix_sums(t.view());
  std::vector<double> out(p.hi.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = p.at(i);
  return out;
}

WindowExtremes window_extremes(const kernels::PrefixSums& p, std::size_t n) {
  const std::size_t terms = p.terms();
  if (n == 0 || n > terms)
    throw std::invalid_argument("window length " + std::to_string(n) + " outside 1.." +
                                std::to_string(terms));
  const auto e = kernels::parallel::window_sum_extremes(p, n, terms);
  const double len = static_cast<double>(n);
  return {e.max_sum / len, e.min_sum / len};
}

WindowExtremes window_extremes(const Truncation& t, std::size_t n) {
  if (n == 0 || n > t.size())
    throw std::invalid_argument("window length " + std::to_string(n) + " outside 1.." +
                                std::to_string(t.size()));
  return window_extremes(kernels::compensated_prefix_sums(t.view()), n);
}

std::vector<double> cesaro_profile(const Truncation& t, std::span<const std::uint64_t> points) {
  check_points(points, t.size());
  const auto p = kernels::compensated_prefix_sums(t.view());
  std::vector<double> out;
  out.reserve(points.size());
  for (auto i : points) out.push_back(p.at(static_cast<std::size_t>(i)) / static_cast<double>(i));
  return out;
}

std::vector<std::size_t> default_schedule(std::uint64_t n_terms, std::size_t dense_top) {
  std::vector<std::size_t> s{1};
  const std::uint64_t top = n_terms / 4;
  while (static_cast<std::uint64_t>(s.back()) * 2 <= top) s.push_back(s.back() * 2);
  if (dense_top > 0 && top > s.back()) {
    const double lo = static_cast<double>(s.back());
    const double step = (static_cast<double>(top) - lo) / static_cast<double>(dense_top);
    for (std::size_t k = 1; k <= dense_top; ++k) {
      const auto n = static_cast<std::size_t>(std::llround(lo + step * static_cast<double>(k)));
      if (n > s.back() && n <= top) s.push_back(n);
    }
  }
  return s;
}

std::vector<std::uint64_t> default_cesaro_points(std::uint64_t n_terms, const SequenceSpec& spec) {
  std::vector<std::uint64_t> pts;
  for (int k = 0; k < 8 * 64; ++k) {
    const double v = std::exp2(static_cast<double>(k) / 8.0);
    if (v > static_cast<double>(n_terms)) break;
    pts.push_back(static_cast<std::uint64_t>(std::llround(v)));
  }
  for (std::uint64_t p = 1; p <= n_terms; p *= 2) {
    pts.push_back(p);
    if (p > n_terms / 2) break;
  }
  for (auto m : block_boundaries(spec, n_terms)) pts.push_back(m);
  pts.push_back(n_terms);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  pts.erase(std::remove_if(pts.begin(), pts.end(), [&](auto p) { return p == 0 || p > n_terms; }), pts.end());
  return pts;
}

WindowProfile lorentz_profile(const Truncation& t, std::span<const std::size_t> schedule,
                              std::span<const std::uint64_t> cesaro_points) {
  const std::size_t n_terms = t.size();
  if (n_terms == 0) throw std::invalid_argument("lorentz_profile: empty truncation");
  if (schedule.empty()) throw std::invalid_argument("lorentz_profile: empty schedule");
  for (std::size_t k = 0; k < schedule.size(); ++k) {
    if (schedule[k] == 0 || schedule[k] > n_terms)
      throw std::invalid_argument("lorentz_profile: window length " + std::to_string(schedule[k]) +
                                  " outside 1.." + std::to_string(n_terms));
    if (k > 0 && schedule[k] <= schedule[k - 1])
      throw std::invalid_argument("lorentz_profile: schedule must be strictly increasing");
  }
  check_points(cesaro_points, n_terms);

  const auto p = kernels::compensated_prefix_sums(t.view());
  WindowProfile prof;
  prof.n_terms = n_terms;
  prof.schedule.assign(schedule.begin(), schedule.end());
  prof.ref_length = n_terms / 4;
  for (std::size_t n : schedule) {
    const double len = static_cast<double>(n);
    const auto full = kernels::parallel::window_sum_extremes(p, n, n_terms);
    prof.p_hat.push_back(full.max_sum / len);
    prof.q_hat.push_back(full.min_sum / len);
    if (n <= prof.ref_length / 4) {
      const auto ref = kernels::parallel::window_sum_extremes(p, n, prof.ref_length);
      prof.p_hat_ref.push_back(ref.max_sum / len);
      prof.q_hat_ref.push_back(ref.min_sum / len);
    } else {
      prof.p_hat_ref.push_back(kNaN);
      prof.q_hat_ref.push_back(kNaN);
    }
  }

  prof.cesaro_points.assign(cesaro_points.begin(), cesaro_points.end());
  for (auto i : cesaro_points) prof.cesaro.push_back(p.at(static_cast<std::size_t>(i)) / static_cast<double>(i));

  const auto tail = t.view().subspan(n_terms / 2);
  const auto [mn, mx] = std::minmax_element(tail.begin(), tail.end());
  prof.tail_min = *mn;
  prof.tail_max = *mx;
  prof.tail_monotone = std::is_sorted(tail.begin(), tail.end()) ||
                       std::is_sorted(tail.begin(), tail.end(), std::greater<>());
  prof.last_value = t.values.back();
  return prof;
}

WindowProfile lorentz_profile(const Truncation& t) {
  const auto schedule = default_schedule(t.size());
  const auto points = default_cesaro_points(t.size(), t.spec);
  return lorentz_profile(t, schedule, points);
}

std::vector<double> streaming_cesaro(const SequenceSpec& spec, std::span<const std::uint64_t> points,
                                     const kernels::ScalarMap& map) {
  if (points.empty()) return {};
  if (!std::is_sorted(points.begin(), points.end()) || points.front() == 0)
    throw std::invalid_argument("streaming_cesaro: points must be ascending and >= 1");
  const std::uint64_t n_terms = points.back();
  if (n_terms > max_length(spec))
    throw std::overflow_error("streaming_cesaro: " + spec.describe() + " supports N <= " +
                              std::to_string(max_length(spec)));
  auto stream = open_stream(spec);
  std::vector<double> buf(std::size_t{1} << 16);
  std::vector<double> out;
  out.reserve(points.size());
  kernels::CompensatedSum acc;
  std::uint64_t n = 0;
  std::size_t next = 0;
  while (n < n_terms) {
    const auto take = static_cast<std::size_t>(std::min<std::uint64_t>(buf.size(), n_terms - n));
    std::span<double> chunk(buf.data(), take);
    stream->fill(chunk);
    for (double x : chunk) {
      const double v = map ? map(x) : x;
      if (!std::isfinite(v)) throw NonFiniteError(static_cast<std::size_t>(n + 1));
      acc.add(v);
      ++n;
      while (next < points.size() && points[next] == n) {
        out.push_back(acc.value() / static_cast<double>(n));
        ++next;
      }
    }
  }
  return out;
}

}  // namespace seqlab
