#include "seqlab/explike.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "seqlab/kernels.hpp"
#include "seqlab/spec_io.hpp"

namespace seqlab {

namespace {

std::string term_text(const ExpTerm& t) { return format_double(t.alpha) + ":" + format_double(t.beta); }

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace

ExpLike::ExpLike(std::vector<ExpTerm> terms) : terms_(std::move(terms)) {
  if (terms_.empty()) throw std::invalid_argument("exponential-like function needs at least one term");
  for (const auto& t : terms_) {
    if (!std::isfinite(t.alpha) || !std::isfinite(t.beta))
      throw std::invalid_argument("non-finite coefficient in term " + term_text(t));
    if (t.alpha == 0.0) throw std::invalid_argument("zero alpha in term " + term_text(t));
    if (t.beta == 0.0) throw std::invalid_argument("zero beta in term " + term_text(t));
  }
  std::stable_sort(terms_.begin(), terms_.end(), [](const ExpTerm& a, const ExpTerm& b) {
    const double ma = std::abs(a.beta), mb = std::abs(b.beta);
    return ma != mb ? ma < mb : a.beta < b.beta;
  });
  for (std::size_t i = 1; i < terms_.size(); ++i)
    if (terms_[i].beta == terms_[i - 1].beta)
      throw std::invalid_argument("repeated beta " + format_double(terms_[i].beta));
}

ExpLike ExpLike::parse(std::string_view text) {
  std::vector<ExpTerm> terms;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find(',', pos), text.size());
    const std::string_view item = text.substr(pos, end - pos);
    const std::size_t colon = item.find(':');
    if (colon == std::string_view::npos)
      throw std::invalid_argument("expected alpha:beta, got '" + std::string(item) + "'");
    terms.push_back({parse_double(item.substr(0, colon)), parse_double(item.substr(colon + 1))});
    pos = end + 1;
  }
  return ExpLike(std::move(terms));
}

double ExpLike::eval_unchecked(double x) const {
  kernels::CompensatedSum s;
  for (const auto& t : terms_) s.add(t.alpha * std::exp(t.beta * x));
  return s.value();
}

double ExpLike::operator()(double x) const {
  kernels::CompensatedSum s;
  for (const auto& t : terms_) {
    const double v = t.alpha * std::exp(t.beta * x);
    if (!std::isfinite(v))
      throw std::overflow_error("term " + term_text(t) + " overflows at x = " + format_double(x));
    s.add(v);
  }
  const double out = s.value();
  if (!std::isfinite(out))
    throw std::overflow_error("sum of " + describe() + " overflows at x = " + format_double(x));
  return out;
}

ExpLike ExpLike::operator*(const ExpLike& other) const {
  std::map<double, double> merged;
  for (const auto& a : terms_)
    for (const auto& b : other.terms_) merged[a.beta + b.beta] += a.alpha * b.alpha;
  std::vector<ExpTerm> out;
  for (const auto& [beta, alpha] : merged) {
    if (alpha == 0.0) continue;
    if (beta == 0.0) throw std::invalid_argument("product has a constant term");
    out.push_back({alpha, beta});
  }
  if (out.empty()) throw std::invalid_argument("product vanishes identically");
  return ExpLike(std::move(out));
}

std::string ExpLike::describe() const {
  std::string s;
  for (const auto& t : terms_) {
    if (!s.empty()) s += ',';
    s += term_text(t);
  }
  return s;
}

double explike_eval(const ExpLike& f, double x) { return f(x); }

Truncation explike_apply(const ExpLike& f, const Truncation& t) {
  Truncation out;
  out.spec = t.spec;
  out.transforms = t.transforms;
  out.transforms.push_back("explike(" + f.describe() + ")");
  out.values.resize(t.size());
  kernels::parallel::map_values(t.view(), out.values, [&f](double x) { return f.eval_unchecked(x); });
  for (std::size_t i = 0; i < out.values.size(); ++i)
    if (!std::isfinite(out.values[i])) f(t.values[i]);  // rethrows with the term named
  return out;
}

PreimageResult preimage_count(const ExpLike& f, double c, double lo, double hi, std::size_t grid) {
  if (!(lo < hi)) throw std::invalid_argument("preimage_count: need lo < hi");
  if (grid < 2) throw std::invalid_argument("preimage_count: grid must be >= 2");
  if (!std::isfinite(c)) throw std::invalid_argument("preimage_count: level must be finite");

  const auto g = [&](double x) { return f(x) - c; };
  const double step = (hi - lo) / static_cast<double>(grid - 1);
  const double width = (hi - lo) / 1e9;
  const auto point = [&](std::size_t i) { return i + 1 == grid ? hi : lo + step * static_cast<double>(i); };

  PreimageResult r;
  bool any_nonzero = false;
  int prev_sign = 0;
  double prev_x = lo;
  for (std::size_t i = 0; i < grid; ++i) {
    const double x = point(i);
    const int s = sign_of(g(x));
    if (s == 0) {
      r.brackets.emplace_back(x, x);
      prev_sign = 0;
      continue;
    }
    any_nonzero = true;
    if (prev_sign != 0 && s != prev_sign) {
      double a = prev_x, b = x;
      while (b - a > width) {
        const double mid = 0.5 * (a + b);
        if (mid <= a || mid >= b) break;
        const int sm = sign_of(g(mid));
        if (sm == 0) {
          a = b = mid;
          break;
        }
        (sm == prev_sign ? a : b) = mid;
      }
      r.brackets.emplace_back(a, b);
    }
    prev_sign = s;
    prev_x = x;
  }
  if (!any_nonzero) throw std::domain_error("preimage_count: f - c vanishes on the whole grid (degenerate)");
  r.count = r.brackets.size();
  r.within_rank = r.count <= f.rank();
  return r;
}

}  // namespace seqlab
