#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "seqlab/classify.hpp"
#include "seqlab/sequence.hpp"

namespace seqlab {

struct Rational {
  std::int64_t num;
  std::int64_t den;  // > 0, gcd(num, den) = 1
};

/// Generator exponent. `exact` is set for rational input, which makes the
/// exponent-sum distinctness check exact.
struct Exponent {
  std::string text;
  double value;
  std::optional<Rational> exact;
};

// Accepts integers, decimals, "p/q" and "sqrt(k)" (optionally negated).
Exponent parse_exponent(std::string_view text);
// sqrt(2), sqrt(3), sqrt(5), ... over the first `count` primes.
std::vector<Exponent> default_generators(std::size_t count);

/// g_1^{k_1} ... g_r^{k_r} with g_i = exp(beta_i z); equals exp(<k, beta> z).
struct Monomial {
  std::vector<unsigned> powers;
  double exponent;
  std::string label;  // e.g. "g1^2*g3"
};

// All monomials of total degree 1..degree, graded then lexicographic.
// Throws std::invalid_argument listing the first pair of coincident exponent
// sums (exact for rational generators, within 1e-12 otherwise) or a zero sum.
std::vector<Monomial> enumerate_monomials(const std::vector<Exponent>& betas, unsigned degree);

enum class Target { ChatMinusC, SMinusChat, LinfMinusS };
std::string_view to_string(Target t);
// The set each witness construction is built to populate; ĉ \ c for anything else.
Target default_target(const SequenceSpec& zspec);
bool in_target(const ClassificationReport& r, Target t);

struct WitnessOptions {
  unsigned degree = 2;
  std::uint64_t n_terms = 0;
  double tol = 1e-8;           // threshold on sigma_min of the normalized Gram matrix
  double classify_tol = 1e-2;  // membership checks on sup-normalized images
  std::size_t combinations = 20;
  std::uint64_t seed = 1;
};

struct MembershipCheck {
  std::string label;
  std::vector<double> coefficients;  // one per monomial; empty for a single monomial
  Verdict c;
  Verdict chat;
  Verdict s;
  double window_gap;
  double value_oscillation;
  double cesaro_oscillation;
  bool passed;
};

struct WitnessReport {
  std::vector<std::string> generators;
  unsigned degree = 0;
  std::uint64_t n_terms = 0;
  Target target = Target::ChatMinusC;
  std::vector<Monomial> monomials;

  // Smallest / largest eigenvalue (= singular value) of the Gram matrix of the
  // unit-normalized monomial vectors, obtained as squared singular values of
  // the triangular factor of a Householder QR.
  double sigma_min = 0.0;
  double sigma_max = 0.0;
  // Same extremes read directly off the accumulated Gram matrix; resolution is
  // limited to about 1e-16 * sigma_max.
  double gram_eig_min = 0.0;
  double gram_eig_max = 0.0;

  std::vector<MembershipCheck> checks;
  bool independent = false;
  bool all_members = false;
  bool passed = false;
  WitnessOptions options;
  std::vector<std::string> diagnostics;
};

WitnessReport algebrability_witness(const SequenceSpec& zspec, const std::vector<Exponent>& betas,
                                    const WitnessOptions& options);

struct Extrema {
  double min;
  double max;
  double argmin;
  double argmax;
};

// Extremes of a continuous f on [a, b]: uniform grid of `grid` intervals, then
// golden-section refinement to `xtol` around the best grid point.
Extrema extrema_on(const std::function<double(double)>& f, double a, double b, std::size_t grid = 10000,
                   double xtol = 1e-10);

struct Envelope {
  double lower;
  double upper;
};

// j with j(j+1)/2 <= n < (j+1)(j+2)/2, n >= 1.
std::uint64_t triangular_block_index(std::uint64_t n);

// Stated bounds on length-n window averages of f(z), z the ĉ \ c construction,
// for n in block j: f(0) <= 0 gives upper (2M + f(0)j - f(0))/(j+1), otherwise
// 2M/(j+1) + f(0); f(0) >= 0 gives lower (2L + f(0)j - f(0))/(j + 3 + 2/j),
// otherwise 2Lj/(j^2+3j+2) + f(0)j/(j+2). M, L are max/min of f on [1, 2].
Envelope chat_window_envelope(double f0, double lo_L, double hi_M, std::uint64_t j);

// (M - L) * m_{j-1} / m_j for m_j = j^j: how far s_{m_j} of f(z), z the
// ℓ∞ \ S construction, may sit from f(b_j). Requires 2 <= j <= 13.
double linf_cesaro_slack(double lo_L, double hi_M, std::uint64_t j);

}  // namespace seqlab
