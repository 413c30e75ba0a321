#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "seqlab/classify.hpp"
#include "seqlab/sequence.hpp"

namespace seqlab {

// Smaller space inside larger space. With `zero_limit` the same pair stands
// for c0 in ĉ0, ĉ0 in S0 and S0 in ℓ∞ respectively.
enum class PorosityPair { CInChat, ChatInS, SInLinf };

std::string_view to_string(PorosityPair p);
PorosityPair porosity_pair_from_name(std::string_view name);

/// Witness ball for porosity of the smaller space at x: the ball around
/// y = x + (r/2) w of radius alpha * r / 2 misses the smaller space, and
/// ‖y - x‖ = r/2.
struct PorosityCertificate {
  PorosityPair pair = PorosityPair::CInChat;
  bool zero_limit = false;
  SequenceSpec base;     // x
  double r = 1.0;
  double alpha = 0.5;
  SequenceSpec pattern;  // w, values in {-1, +1}
  double oscillation_bound = 0.0;  // r (1 - alpha)
  double gamma = 0.0;              // alpha r / 2, radius of the excluded ball

  // Evidence that x lies in the smaller space.
  std::uint64_t evidence_length = 0;
  double base_oscillation = 0.0;
  Verdict base_verdict = Verdict::Inconclusive;
};

class CertificateRefused : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InsufficientLength : public std::invalid_argument {
 public:
  InsufficientLength(const std::string& what, std::uint64_t required)
      : std::invalid_argument(what), required_(required) {}
  std::uint64_t required() const { return required_; }

 private:
  std::uint64_t required_;
};

// c_in_chat: alternating signs. chat_in_S: the ±1 form of the S \ ĉ example.
// S_in_linf: signs alternating on blocks (m_{j-1}, m_j], m_j = j^j.
SequenceSpec canonical_pattern(PorosityPair p);

// Throws CertificateRefused when x does not look like a member of the smaller
// space (classify at tol = bound / 2 on `evidence_length` terms) or when its
// measured oscillation is at least bound / 2.
PorosityCertificate porosity_witness(PorosityPair pair, const SequenceSpec& base, double r, double alpha,
                                     bool zero_limit = false, std::uint64_t evidence_length = 1u << 16);

// y_n = x_n + (r/2) w_n on the first N terms.
Truncation certificate_center(const PorosityCertificate& cert, std::uint64_t n_terms);

// Smallest N with one full pattern period for the pair.
std::uint64_t required_length(PorosityPair pair);

struct CertificateVerdict {
  bool passed = false;
  bool norm_ok = false;
  double norm_deviation = 0.0;  // | max |y - x| - r/2 |
  std::string statistic;        // name of the exclusion statistic
  double threshold = 0.0;       // bound minus the measured slack
  double slack = 0.0;
  double min_statistic = 0.0;   // worst sample
  std::size_t failing_samples = 0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::uint64_t n_terms = 0;
  std::uint64_t window = 0;     // window length for chat_in_S
  std::vector<std::string> diagnostics;
};

// Draws `samples` points z = y + delta, delta_n i.i.d. uniform on the
// half-open interval [-alpha r/2, alpha r/2) from substream (seed, sample),
// and checks the pair's exclusion statistic on each. Throws
// InsufficientLength when N < required_length(pair).
CertificateVerdict verify_certificate(const PorosityCertificate& cert, std::uint64_t n_terms, std::size_t samples,
                                      std::uint64_t seed);

// One perturbed point of the ball, as verify_certificate draws it.
Truncation ball_sample(const PorosityCertificate& cert, std::uint64_t n_terms, std::uint64_t seed,
                       std::uint64_t sample);

}  // namespace seqlab
