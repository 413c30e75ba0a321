// Eigen must not spawn its own OpenMP teams: the QR result has to be
// independent of the thread count.
#define EIGEN_DONT_PARALLELIZE
#include "seqlab/algebra.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "seqlab/kernels.hpp"
#include "seqlab/rng.hpp"
#include "seqlab/spec_io.hpp"
#include "seqlab/window_stats.hpp"

namespace seqlab {

namespace {

using i128 = __int128;

constexpr double kFloatClash = 1e-12;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::optional<std::int64_t> parse_int(std::string_view s) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

Rational make_rational(i128 num, i128 den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  if (den < 0) num = -num, den = -den;
  i128 a = num < 0 ? -num : num, b = den;
  while (b != 0) a %= b, std::swap(a, b);
  if (a > 1) num /= a, den /= a;
  if (num > INT64_MAX || num < INT64_MIN || den > INT64_MAX)
    throw std::overflow_error("rational exponent out of 64-bit range");
  return {static_cast<std::int64_t>(num), static_cast<std::int64_t>(den)};
}

// Exact value of a plain decimal "123.456"; nullopt for anything else.
std::optional<Rational> parse_decimal(std::string_view s) {
  const std::size_t dot = s.find('.');
  if (dot == std::string_view::npos) {
    const auto v = parse_int(s);
    if (!v) return std::nullopt;
    return Rational{*v, 1};
  }
  std::string digits(s.substr(0, dot));
  const std::string_view frac = s.substr(dot + 1);
  if (frac.empty() || frac.size() > 17 || frac.find_first_not_of("0123456789") != std::string_view::npos)
    return std::nullopt;
  digits += frac;
  if (digits == "-" || digits.empty()) return std::nullopt;
  const auto v = parse_int(digits);
  if (!v) return std::nullopt;
  i128 den = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
  return make_rational(*v, den);
}

std::optional<Rational> parse_ratio(std::string_view s) {
  const std::size_t slash = s.find('/');
  if (slash == std::string_view::npos) return parse_decimal(s);
  const auto p = parse_int(trim(s.substr(0, slash)));
  const auto q = parse_int(trim(s.substr(slash + 1)));
  if (!p || !q || *q == 0) return std::nullopt;
  return make_rational(*p, *q);
}

std::optional<std::int64_t> exact_sqrt(std::int64_t v) {
  if (v < 0) return std::nullopt;
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(v)));
  while (r > 0 && r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  if (r * r != v) return std::nullopt;
  return r;
}

bool is_prime(unsigned n) {
  if (n < 2) return false;
  for (unsigned d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

void compositions(std::size_t vars, unsigned total, std::vector<unsigned>& cur, std::size_t at,
                  std::vector<std::vector<unsigned>>& out) {
  if (at + 1 == vars) {
    cur[at] = total;
    out.push_back(cur);
    return;
  }
  for (unsigned k = total + 1; k-- > 0;) {
    cur[at] = k;
    compositions(vars, total - k, cur, at + 1, out);
  }
}

std::string monomial_label(const std::vector<unsigned>& powers) {
  std::string s;
  for (std::size_t i = 0; i < powers.size(); ++i) {
    if (powers[i] == 0) continue;
    if (!s.empty()) s += '*';
    s += "g" + std::to_string(i + 1);
    if (powers[i] > 1) s += "^" + std::to_string(powers[i]);
  }
  return s;
}

double golden_section_max(const std::function<double(double)>& f, double a, double b, double xtol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > xtol) {
    if (fc >= fd) {
      b = d, d = c, fd = fc;
      c = b - inv_phi * (b - a), fc = f(c);
    } else {
      a = c, c = d, fc = fd;
      d = a + inv_phi * (b - a), fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

MembershipCheck check_values(std::string label, std::vector<double> coefficients, std::vector<double> values,
                             const SequenceSpec& zspec, Target target, double tol) {
  double sup = 0.0;
  for (double v : values) sup = std::max(sup, std::abs(v));
  if (sup > 0.0)
    for (double& v : values) v /= sup;
  Truncation t{std::move(values), zspec, {label}};
  const auto report = classify(lorentz_profile(t), {tol, 0.25});
  return {std::move(label),
          std::move(coefficients),
          report.verdict(Space::c),
          report.verdict(Space::chat),
          report.verdict(Space::S),
          report.window_gap,
          report.value_oscillation,
          report.cesaro_oscillation,
          in_target(report, target)};
}

}  // namespace

Exponent parse_exponent(std::string_view text) {
  const std::string_view s = trim(text);
  if (s.empty()) throw std::invalid_argument("empty exponent");
  const bool neg = s.front() == '-';
  const std::string_view body = neg ? trim(s.substr(1)) : s;
  Exponent e{std::string(s), 0.0, std::nullopt};
  if (body.starts_with("sqrt(") && body.ends_with(")")) {
    const std::string_view inner = trim(body.substr(5, body.size() - 6));
    const auto r = parse_ratio(inner);
    if (!r || r->num < 0) throw std::invalid_argument("bad exponent '" + e.text + "'");
    e.value = std::sqrt(static_cast<double>(r->num) / static_cast<double>(r->den));
    const auto p = exact_sqrt(r->num), q = exact_sqrt(r->den);
    if (p && q) e.exact = Rational{*p, *q};
  } else if (const auto r = parse_ratio(body)) {
    e.exact = r;
    e.value = static_cast<double>(r->num) / static_cast<double>(r->den);
  } else {
    e.value = parse_double(body);
  }
  if (neg) {
    e.value = -e.value;
    if (e.exact) e.exact->num = -e.exact->num;
  }
  if (!std::isfinite(e.value)) throw std::invalid_argument("non-finite exponent '" + e.text + "'");
  return e;
}

std::vector<Exponent> default_generators(std::size_t count) {
  std::vector<Exponent> out;
  for (unsigned p = 2; out.size() < count; ++p)
    if (is_prime(p)) out.push_back(parse_exponent("sqrt(" + std::to_string(p) + ")"));
  return out;
}

std::vector<Monomial> enumerate_monomials(const std::vector<Exponent>& betas, unsigned degree) {
  if (betas.empty()) throw std::invalid_argument("no generators");
  if (degree == 0) throw std::invalid_argument("degree must be >= 1");
  const bool exact = std::all_of(betas.begin(), betas.end(), [](const Exponent& e) { return e.exact.has_value(); });

  std::vector<Monomial> out;
  std::vector<Rational> sums;
  for (unsigned d = 1; d <= degree; ++d) {
    std::vector<std::vector<unsigned>> powers;
    std::vector<unsigned> cur(betas.size());
    compositions(betas.size(), d, cur, 0, powers);
    for (auto& k : powers) {
      double value = 0.0;
      Rational q{0, 1};
      for (std::size_t i = 0; i < k.size(); ++i) {
        value += static_cast<double>(k[i]) * betas[i].value;
        if (exact)
          q = make_rational(static_cast<i128>(q.num) * betas[i].exact->den +
                                static_cast<i128>(k[i]) * betas[i].exact->num * q.den,
                            static_cast<i128>(q.den) * betas[i].exact->den);
      }
      const std::string label = monomial_label(k);
      const bool zero = exact ? q.num == 0 : std::abs(value) <= kFloatClash;
      if (zero) throw std::invalid_argument("exponent sum of " + label + " is zero");
      for (std::size_t m = 0; m < out.size(); ++m) {
        const bool clash = exact ? (sums[m].num == q.num && sums[m].den == q.den)
                                 : std::abs(out[m].exponent - value) <= kFloatClash;
        if (clash)
          throw std::invalid_argument("exponent sums clash: " + out[m].label + " and " + label + " both give " +
                                      (exact ? std::to_string(q.num) + (q.den == 1 ? "" : "/" + std::to_string(q.den))
                                             : format_double(value)));
      }
      out.push_back({std::move(k), value, label});
      sums.push_back(q);
    }
  }
  return out;
}

std::string_view to_string(Target t) {
  switch (t) {
    case Target::ChatMinusC: return "chat\\c";
    case Target::SMinusChat: return "S\\chat";
    case Target::LinfMinusS: return "linf\\S";
  }
  return "?";
}

Target default_target(const SequenceSpec& zspec) {
  if (zspec.is<spec::ZSMinusChat>()) return Target::SMinusChat;
  if (zspec.is<spec::ZLinfMinusS>()) return Target::LinfMinusS;
  return Target::ChatMinusC;
}

bool in_target(const ClassificationReport& r, Target t) {
  using V = Verdict;
  switch (t) {
    case Target::ChatMinusC:
      return r.verdict(Space::chat) == V::ConsistentWithMember && r.verdict(Space::c) == V::ConsistentWithNonMember;
    case Target::SMinusChat:
      return r.verdict(Space::S) == V::ConsistentWithMember && r.verdict(Space::chat) == V::ConsistentWithNonMember;
    case Target::LinfMinusS:
      return r.verdict(Space::S) == V::ConsistentWithNonMember;
  }
  return false;
}

WitnessReport algebrability_witness(const SequenceSpec& zspec, const std::vector<Exponent>& betas,
                                    const WitnessOptions& options) {
  if (options.n_terms == 0) throw std::invalid_argument("witness needs N >= 1");
  WitnessReport rep;
  rep.options = options;
  rep.degree = options.degree;
  rep.n_terms = options.n_terms;
  rep.target = default_target(zspec);
  for (const auto& b : betas) rep.generators.push_back(b.text);
  rep.monomials = enumerate_monomials(betas, options.degree);

  const Truncation z = generate(zspec, options.n_terms);
  const auto n = static_cast<Eigen::Index>(z.size());
  const auto k = static_cast<Eigen::Index>(rep.monomials.size());

  // Column i holds exp(<k_i, beta> z_n); column-major, so each column is contiguous.
  Eigen::MatrixXd a(n, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    const double s = rep.monomials[static_cast<std::size_t>(i)].exponent;
    std::span<double> col(a.col(i).data(), static_cast<std::size_t>(n));
    kernels::parallel::map_values(z.view(), col, [s](double x) { return std::exp(s * x); });
    for (double v : col)
      if (!std::isfinite(v))
        throw std::overflow_error("monomial " + rep.monomials[static_cast<std::size_t>(i)].label + " overflows");
  }

  for (Eigen::Index i = 0; i < k; ++i) {
    const auto& m = rep.monomials[static_cast<std::size_t>(i)];
    std::vector<double> values(a.col(i).data(), a.col(i).data() + n);
    rep.checks.push_back(check_values(m.label, {}, std::move(values), zspec, rep.target, options.classify_tol));
  }
  for (std::size_t c = 0; c < options.combinations; ++c) {
    rng::Stream rs(options.seed, c);
    std::vector<double> coef(static_cast<std::size_t>(k));
    for (double& x : coef) x = rs.uniform(-1.0, 1.0);
    std::vector<double> values(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(static)
    for (Eigen::Index row = 0; row < n; ++row) {
      double acc = 0.0;
      for (Eigen::Index i = 0; i < k; ++i) acc += coef[static_cast<std::size_t>(i)] * a(row, i);
      values[static_cast<std::size_t>(row)] = acc;
    }
    rep.checks.push_back(check_values("combination " + std::to_string(c + 1), std::move(coef), std::move(values),
                                      zspec, rep.target, options.classify_tol));
  }

  for (Eigen::Index i = 0; i < k; ++i) a.col(i) /= a.col(i).norm();

  const auto g = kernels::parallel::gram(std::span<const double>(a.data(), static_cast<std::size_t>(n * k)),
                                         static_cast<std::size_t>(k), static_cast<std::size_t>(n));
  const Eigen::Map<const Eigen::MatrixXd> gram(g.data(), k, k);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram, Eigen::EigenvaluesOnly);
  rep.gram_eig_min = eig.eigenvalues().minCoeff();
  rep.gram_eig_max = eig.eigenvalues().maxCoeff();

  Eigen::HouseholderQR<Eigen::Ref<Eigen::MatrixXd>> qr(a);
  const Eigen::MatrixXd r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(r);
  const auto& sv = svd.singularValues();
  rep.sigma_max = sv(0) * sv(0);
  rep.sigma_min = sv(k - 1) * sv(k - 1);

  const double resolution = 1e-15 * rep.gram_eig_max;
  if (std::abs(rep.gram_eig_min - rep.sigma_min) > resolution)
    rep.diagnostics.push_back("Gram eigenvalue and squared QR singular value disagree beyond 1e-15 * sigma_max");
  if (rep.sigma_min < resolution)
    rep.diagnostics.push_back("sigma_min is below the resolution of the accumulated Gram matrix; only the QR "
                              "route resolves it");

  rep.independent = rep.sigma_min > options.tol;
  rep.all_members = std::all_of(rep.checks.begin(), rep.checks.end(), [](const auto& c) { return c.passed; });
  rep.passed = rep.independent && rep.all_members;
  return rep;
}

Extrema extrema_on(const std::function<double(double)>& f, double a, double b, std::size_t grid, double xtol) {
  if (!(a < b) || grid < 1) throw std::invalid_argument("extrema_on: need a < b and grid >= 1");
  const double h = (b - a) / static_cast<double>(grid);
  std::size_t imin = 0, imax = 0;
  double vmin = f(a), vmax = vmin;
  for (std::size_t i = 1; i <= grid; ++i) {
    const double v = f(i == grid ? b : a + h * static_cast<double>(i));
    if (v < vmin) vmin = v, imin = i;
    if (v > vmax) vmax = v, imax = i;
  }
  const auto grid_x = [&](std::size_t i) { return i == grid ? b : a + h * static_cast<double>(i); };
  const auto refine = [&](std::size_t i, const std::function<double(double)>& g, double& best, double& arg) {
    const double lo = i == 0 ? a : grid_x(i - 1);
    const double hi = i == grid ? b : grid_x(i + 1);
    arg = grid_x(i);
    const double x = golden_section_max(g, lo, hi, xtol);
    if (g(x) > g(arg)) arg = x;
    best = f(arg);
  };
  Extrema e{vmin, vmax, grid_x(imin), grid_x(imax)};
  refine(imax, f, e.max, e.argmax);
  refine(imin, [&f](double x) { return -f(x); }, e.min, e.argmin);
  return e;
}

std::uint64_t triangular_block_index(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("triangular_block_index: n >= 1");
  auto j = static_cast<std::uint64_t>((std::sqrt(8.0 * static_cast<double>(n) + 1.0) - 1.0) / 2.0);
  while (j > 0 && j * (j + 1) / 2 > n) --j;
  while ((j + 1) * (j + 2) / 2 <= n) ++j;
  return j;
}

Envelope chat_window_envelope(double f0, double lo_L, double hi_M, std::uint64_t j) {
  if (j == 0) throw std::invalid_argument("chat_window_envelope: j >= 1");
  const double jd = static_cast<double>(j);
  Envelope e{};
  e.upper = f0 <= 0.0 ? (2.0 * hi_M + f0 * jd - f0) / (jd + 1.0) : 2.0 * hi_M / (jd + 1.0) + f0;
  e.lower = f0 >= 0.0 ? (2.0 * lo_L + f0 * jd - f0) / (jd + 3.0 + 2.0 / jd)
                      : 2.0 * lo_L * jd / (jd * jd + 3.0 * jd + 2.0) + f0 * jd / (jd + 2.0);
  return e;
}

double linf_cesaro_slack(double lo_L, double hi_M, std::uint64_t j) {
  if (j < 2) throw std::invalid_argument("linf_cesaro_slack: j >= 2");
  const auto z = SequenceSpec::z_linf_minus_s();
  const double prev = static_cast<double>(*block_boundary(z, j - 1));
  const double cur = static_cast<double>(*block_boundary(z, j));
  return (hi_M - lo_L) * prev / cur;
}

}  // namespace seqlab
