#include "seqlab/classify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace seqlab {

namespace {

constexpr std::uint64_t kMinTerms = 16;
constexpr double kFloatInversion = 1e-12;

Verdict& at(std::array<Verdict, 6>& v, Space s) { return v[static_cast<std::size_t>(s)]; }

// Largest move against the overall direction of a trace.
// Range of the trace over points >= from; +inf with fewer than two such points.
double settled_range(const std::vector<std::uint64_t>& pts, const std::vector<double>& vals, std::uint64_t from) {
  double lo = HUGE_VAL, hi = -HUGE_VAL;
  std::size_t count = 0;
  for (std::size_t k = 0; k < pts.size(); ++k)
    if (pts[k] >= from) {
      lo = std::min(lo, vals[k]);
      hi = std::max(hi, vals[k]);
      ++count;
    }
  return count >= 2 ? hi - lo : HUGE_VAL;
}

double max_reversal(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const bool rising = v.back() >= v.front();
  double extreme = v.front();
  double reversal = 0.0;
  for (double x : v) {
    if (rising) {
      extreme = std::max(extreme, x);
      reversal = std::max(reversal, extreme - x);
    } else {
      extreme = std::min(extreme, x);
      reversal = std::max(reversal, x - extreme);
    }
  }
  return reversal;
}

// Index where the last quarter (in log2 of the abscissa) of a trace begins.
template <typename T>
std::size_t last_quarter_start(const std::vector<T>& xs) {
  const double lo = std::log2(static_cast<double>(xs.front()));
  const double hi = std::log2(static_cast<double>(xs.back()));
  const double cut = hi - (hi - lo) / 4.0;
  std::size_t k = xs.size() - 1;
  while (k > 0 && std::log2(static_cast<double>(xs[k - 1])) >= cut) --k;
  return std::min(k, xs.size() - 2);
}

template <typename T>
double slope_per_octave(const std::vector<T>& xs, const std::vector<double>& ys, std::size_t from) {
  const double octaves = std::log2(static_cast<double>(xs.back()) / static_cast<double>(xs[from]));
  if (octaves <= 0.0) return 0.0;
  return std::abs(ys.back() - ys[from]) / octaves;
}

double range_of(const std::vector<double>& v, std::size_t from) {
  const auto [mn, mx] = std::minmax_element(v.begin() + static_cast<std::ptrdiff_t>(from), v.end());
  return *mx - *mn;
}

Verdict zero_variant(Verdict parent, double limit, double tol) {
  if (parent != Verdict::ConsistentWithMember) return parent;
  return std::abs(limit) <= tol ? Verdict::ConsistentWithMember : Verdict::ConsistentWithNonMember;
}

// A report never claims membership of a smaller space while denying (or not
// supporting) membership of a larger one.
void enforce_nesting(std::array<Verdict, 6>& v, std::vector<std::string>& diagnostics) {
  constexpr std::pair<Space, Space> kInclusions[] = {
      {Space::S, Space::chat},   {Space::S, Space::S0},      {Space::chat, Space::c},
      {Space::chat, Space::chat0}, {Space::S0, Space::chat0}, {Space::c, Space::c0},
      {Space::chat0, Space::c0},
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto [larger, smaller] : kInclusions) {
      const Verdict big = at(v, larger);
      Verdict& small = at(v, smaller);
      Verdict forced = small;
      if (big == Verdict::ConsistentWithNonMember && small != Verdict::ConsistentWithNonMember)
        forced = Verdict::ConsistentWithNonMember;
      else if (big == Verdict::Inconclusive && small == Verdict::ConsistentWithMember)
        forced = Verdict::Inconclusive;
      if (forced != small) {
        diagnostics.push_back(std::string(to_string(smaller)) + " verdict lowered to " +
                              std::string(to_string(forced)) + " by " + std::string(to_string(larger)));
        small = forced;
        changed = true;
      }
    }
  }
}

}  // namespace

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::ConsistentWithMember: return "ConsistentWithMember";
    case Verdict::ConsistentWithNonMember: return "ConsistentWithNonMember";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

std::string_view to_string(Space s) {
  switch (s) {
    case Space::c0: return "c0";
    case Space::c: return "c";
    case Space::chat: return "chat";
    case Space::chat0: return "chat0";
    case Space::S: return "S";
    case Space::S0: return "S0";
  }
  return "?";
}

BanachInterval banach_interval(const WindowProfile& profile, double tail_fraction) {
  if (!(tail_fraction > 0.0 && tail_fraction <= 1.0))
    throw std::invalid_argument("banach_interval: tail_fraction must lie in (0, 1]");
  const std::size_t size = profile.schedule.size();
  const auto tail = static_cast<std::size_t>(std::ceil(tail_fraction * static_cast<double>(size)));
  if (size == 0 || tail == 0) throw std::invalid_argument("banach_interval: empty schedule tail");
  const std::size_t from = size - std::min(tail, size);
  BanachInterval b{-HUGE_VAL, HUGE_VAL};
  for (std::size_t k = from; k < size; ++k) {
    b.lo = std::max(b.lo, profile.q_hat[k]);
    b.hi = std::min(b.hi, profile.p_hat[k]);
  }
  if (b.lo > b.hi) {
    b.inversion = b.lo - b.hi;
    b.clamped = true;
    const double mid = 0.5 * (b.lo + b.hi);
    b.lo = b.hi = mid;
  }
  return b;
}

std::size_t stable_horizon(const WindowProfile& profile, double tol) {
  const std::size_t size = profile.schedule.size();
  for (std::size_t k = 0; k < size; ++k) {
    if (std::isnan(profile.p_hat_ref[k])) continue;
    const double drift = std::max(profile.p_hat[k] - profile.p_hat_ref[k],
                                  profile.q_hat_ref[k] - profile.q_hat[k]);
    if (drift > tol / 2.0) return std::max<std::size_t>(k, 1);
  }
  return size;
}

WindowProfile restrict_schedule(const WindowProfile& profile, std::size_t count) {
  WindowProfile out = profile;
  count = std::min(count, profile.schedule.size());
  out.schedule.resize(count);
  out.p_hat.resize(count);
  out.q_hat.resize(count);
  out.p_hat_ref.resize(count);
  out.q_hat_ref.resize(count);
  return out;
}

ClassificationReport classify(const WindowProfile& profile, const ClassifyOptions& options) {
  if (!(options.tol > 0.0)) throw std::invalid_argument("classify: tol must be positive");
  const double tol = options.tol;

  ClassificationReport r;
  r.n_terms = profile.n_terms;
  r.tol = tol;
  r.tail_fraction = options.tail_fraction;
  for (std::size_t k = 0; k < profile.schedule.size(); ++k)
    r.gap_trace.push_back(profile.p_hat[k] - profile.q_hat[k]);

  r.trusted_windows = stable_horizon(profile, tol);
  if (r.trusted_windows < profile.schedule.size())
    r.diagnostics.push_back("window lengths above " + std::to_string(profile.schedule[r.trusted_windows - 1]) +
                            " drift between N/4 and N; bracket uses the stable range only");
  const WindowProfile trusted = restrict_schedule(profile, r.trusted_windows);
  const BanachInterval bracket = banach_interval(trusted, options.tail_fraction);
  if (bracket.clamped)
    r.diagnostics.push_back(bracket.inversion < kFloatInversion
                                ? "floating-point inversion of the bracket clamped"
                                : "bracket inverted by " + std::to_string(bracket.inversion) +
                                      "; both ends set to the midpoint");
  r.banach_lo = bracket.lo;
  r.banach_hi = bracket.hi;
  r.window_gap = bracket.hi - bracket.lo;

  r.value_oscillation = profile.tail_max - profile.tail_min;

  // Cesàro tail: sample points in the last six octaves, at least two points.
  std::vector<std::uint64_t> cpts;
  std::vector<double> cvals;
  for (std::size_t k = 0; k < profile.cesaro_points.size(); ++k)
    if (profile.cesaro_points[k] >= profile.n_terms / 64) {
      cpts.push_back(profile.cesaro_points[k]);
      cvals.push_back(profile.cesaro[k]);
    }
  if (cpts.size() < 2 && profile.cesaro_points.size() >= 2) {
    const std::size_t m = profile.cesaro_points.size();
    cpts = {profile.cesaro_points[m - 2], profile.cesaro_points[m - 1]};
    cvals = {profile.cesaro[m - 2], profile.cesaro[m - 1]};
  }
  r.cesaro_oscillation = cvals.empty() ? 0.0 : range_of(cvals, 0);

  auto& v = r.verdicts;
  v.fill(Verdict::Inconclusive);
  if (profile.n_terms < kMinTerms || cvals.size() < 2) {
    r.diagnostics.push_back("truncation too short for any verdict (N < 16)");
    return r;
  }

  // c: oscillation of raw values over the tail half.
  if (r.value_oscillation <= tol)
    at(v, Space::c) = Verdict::ConsistentWithMember;
  else
    at(v, Space::c) = profile.tail_monotone ? Verdict::Inconclusive : Verdict::ConsistentWithNonMember;

  // ĉ: width of the Banach bracket on the stable window range.
  if (r.window_gap <= tol) {
    at(v, Space::chat) = Verdict::ConsistentWithMember;
    r.chat_limit = 0.5 * (r.banach_lo + r.banach_hi);
  } else {
    at(v, Space::chat) = Verdict::ConsistentWithNonMember;
    if (trusted.schedule.size() >= 2) {
      std::vector<double> gaps(trusted.schedule.size());
      for (std::size_t k = 0; k < gaps.size(); ++k) gaps[k] = trusted.p_hat[k] - trusted.q_hat[k];
      const std::size_t from = last_quarter_start(trusted.schedule);
      if (gaps.back() < gaps[from] && slope_per_octave(trusted.schedule, gaps, from) > tol)
        at(v, Space::chat) = Verdict::Inconclusive;
    }
  }

  // S: Cesàro trace. A trace that has settled over its last two octaves is
  // convergent even if slow early decay (e.g. 1/i) exceeds tol at N/64; a
  // one-way drift is undecided; a reversal above tol is divergence evidence.
  if (r.cesaro_oscillation <= tol || settled_range(cpts, cvals, profile.n_terms / 4) <= tol)
    at(v, Space::S) = Verdict::ConsistentWithMember;
  else if (max_reversal(cvals) <= tol)
    at(v, Space::S) = Verdict::Inconclusive;
  else
    at(v, Space::S) = Verdict::ConsistentWithNonMember;
  if (at(v, Space::S) == Verdict::ConsistentWithMember) r.cesaro_limit = cvals.back();

  const double c_limit = 0.5 * (profile.tail_min + profile.tail_max);
  at(v, Space::c0) = zero_variant(at(v, Space::c), c_limit, tol);
  at(v, Space::chat0) = zero_variant(at(v, Space::chat), 0.5 * (r.banach_lo + r.banach_hi), tol);
  at(v, Space::S0) = zero_variant(at(v, Space::S), cvals.back(), tol);

  enforce_nesting(v, r.diagnostics);
  if (at(v, Space::chat) != Verdict::ConsistentWithMember) r.chat_limit.reset();
  if (at(v, Space::S) != Verdict::ConsistentWithMember) r.cesaro_limit.reset();
  return r;
}

}  // namespace seqlab
