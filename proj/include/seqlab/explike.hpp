#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "seqlab/sequence.hpp"

namespace seqlab {

struct ExpTerm {
  double alpha;
  double beta;
  friend bool operator==(const ExpTerm&, const ExpTerm&) = default;
};

/// f(x) = sum_i alpha_i * exp(beta_i * x), all alpha_i != 0, beta_i nonzero and
/// pairwise distinct. Terms are kept sorted by |beta| ascending, which fixes
/// the evaluation order.
class ExpLike {
 public:
  explicit ExpLike(std::vector<ExpTerm> terms);

  // "alpha:beta,alpha:beta,..."
  static ExpLike parse(std::string_view text);

  const std::vector<ExpTerm>& terms() const { return terms_; }
  std::size_t rank() const { return terms_.size(); }

  // Throws std::overflow_error naming the offending term.
  double operator()(double x) const;
  // Same sum without the overflow check; may return +-inf or nan.
  double eval_unchecked(double x) const;

  // Pointwise product. Equal exponents are merged; throws std::invalid_argument
  // when the product is not exponential-like (a zero exponent or a vanishing sum).
  ExpLike operator*(const ExpLike& other) const;

  // Canonical text form, e.g. "1:1,-1:2"; parse(describe()) == *this.
  std::string describe() const;

  friend bool operator==(const ExpLike&, const ExpLike&) = default;

 private:
  std::vector<ExpTerm> terms_;
};

double explike_eval(const ExpLike& f, double x);

// Elementwise image; appends "explike(<describe>)" to the transform list.
Truncation explike_apply(const ExpLike& f, const Truncation& t);

struct PreimageResult {
  std::size_t count = 0;
  // Root brackets [a, b]; b - a <= (hi - lo) / 1e9, or a == b for exact grid zeros.
  std::vector<std::pair<double, double>> brackets;
  // count <= rank; false would indicate a grid artifact.
  bool within_rank = true;
};

// Roots of f(x) = c on [lo, hi] located by sign changes over `grid` uniform
// points (plus exact zeros on the grid), each refined by bisection.
// Throws std::invalid_argument on bad arguments and std::domain_error when
// f - c vanishes on every grid point.
PreimageResult preimage_count(const ExpLike& f, double c, double lo, double hi, std::size_t grid);

}  // namespace seqlab
