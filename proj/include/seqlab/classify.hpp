#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "seqlab/window_stats.hpp"

namespace seqlab {

enum class Verdict { ConsistentWithMember, ConsistentWithNonMember, Inconclusive };

// Nested spaces: c0 ⊂ c ⊂ ĉ ⊂ S, c0 ⊂ ĉ0 ⊂ S0 ⊂ S, ĉ0 ⊂ ĉ.
enum class Space { c0, c, chat, chat0, S, S0 };

inline constexpr std::array<Space, 6> kAllSpaces{Space::c0, Space::c, Space::chat,
                                                 Space::chat0, Space::S, Space::S0};

std::string_view to_string(Verdict v);
std::string_view to_string(Space s);

/// Computable bracket [lim q̂ₙ, lim p̂ₙ] of all Banach-limit values.
struct BanachInterval {
  double lo;
  double hi;
  // Set when lo > hi was observed and both were moved to the midpoint.
  bool clamped = false;
  double inversion = 0.0;
};

// lo = max q̂ₙ and hi = min p̂ₙ over the last ceil(tail_fraction * |schedule|)
// scheduled lengths. Requires 0 < tail_fraction <= 1.
BanachInterval banach_interval(const WindowProfile& profile, double tail_fraction);

// Leading part of the schedule whose extremes are stable between the full
// truncation and its first quarter: an entry is dropped, together with every
// longer one, once p̂ or q̂ moves by more than tol/2. Entries too long to be
// compared are kept when everything before them was stable. Keeps at least one.
std::size_t stable_horizon(const WindowProfile& profile, double tol);
WindowProfile restrict_schedule(const WindowProfile& profile, std::size_t count);

struct ClassifyOptions {
  double tol = 1e-2;
  double tail_fraction = 0.25;
};

/// Membership evidence for the six spaces. Verdicts are statements about a
/// finite truncation, never proofs; see README for the estimation policy.
struct ClassificationReport {
  std::uint64_t n_terms = 0;
  double tol = 0.0;
  double tail_fraction = 0.0;

  double banach_lo = 0.0;
  double banach_hi = 0.0;
  std::optional<double> cesaro_limit;
  std::optional<double> chat_limit;  // midpoint of the bracket when ĉ-member

  std::vector<double> gap_trace;      // p̂ₙ - q̂ₙ over the full schedule
  std::size_t trusted_windows = 0;    // leading schedule entries used for the bracket

  double value_oscillation = 0.0;     // raw values, tail half
  double cesaro_oscillation = 0.0;    // Cesàro trace, last six octaves
  double window_gap = 0.0;            // banach_hi - banach_lo

  std::array<Verdict, 6> verdicts{};  // indexed by Space
  std::vector<std::string> diagnostics;

  Verdict verdict(Space s) const { return verdicts[static_cast<std::size_t>(s)]; }
};

ClassificationReport classify(const WindowProfile& profile, const ClassifyOptions& options = {});

}  // namespace seqlab
