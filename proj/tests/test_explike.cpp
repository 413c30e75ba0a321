#include <doctest.h>

#include <cmath>

#include "seqlab/explike.hpp"
#include "seqlab/rng.hpp"

using namespace seqlab;

namespace {

// Independent evaluation in long double, terms summed in input order.
long double direct(const std::vector<ExpTerm>& terms, long double x) {
  long double s = 0.0L;
  for (const auto& t : terms) s += t.alpha * std::exp(static_cast<long double>(t.beta) * x);
  return s;
}

ExpLike random_explike(rng::Stream& rs, std::size_t rank) {
  std::vector<ExpTerm> terms;
  while (terms.size() < rank) {
    const double beta = rs.uniform(-2.0, 2.0);
    if (std::abs(beta) < 1e-3) continue;
    bool clash = false;
    for (const auto& t : terms) clash = clash || std::abs(t.beta - beta) < 1e-3;
    if (clash) continue;
    double alpha = rs.uniform(-3.0, 3.0);
    if (std::abs(alpha) < 1e-2) alpha = 1.0;
    terms.push_back({alpha, beta});
  }
  return ExpLike(terms);
}

}  // namespace

TEST_CASE("evaluation examples") {
  CHECK(explike_eval(ExpLike({{1.0, 1.0}}), 0.0) == 1.0);
  CHECK(explike_eval(ExpLike({{2.0, 1.0}, {-1.0, 2.0}}), 0.0) == 1.0);
  CHECK(explike_eval(ExpLike({{1.0, 1.0}, {1.0, -1.0}}), std::log(2.0)) == doctest::Approx(2.5).epsilon(1e-15));
}

TEST_CASE("evaluation agrees with a long-double sum") {
  rng::Stream rs(21, 0);
  for (int i = 0; i < 500; ++i) {
    const auto f = random_explike(rs, 1 + rs.next_u64() % 5);
    const double x = rs.uniform(-5.0, 5.0);
    const long double ref = direct(f.terms(), x);
    long double scale = 0.0L;
    for (const auto& t : f.terms()) scale += std::abs(t.alpha * std::exp(static_cast<long double>(t.beta) * x));
    REQUIRE(std::abs(f(x) - ref) <= 1e-14L * scale);
  }
}

TEST_CASE("overflow is reported with the offending term") {
  const ExpLike f({{1.0, 1.0}, {1.0, 800.0}});
  CHECK_THROWS_AS(f(1.0), std::overflow_error);
  try {
    (void)f(1.0);
  } catch (const std::overflow_error& e) {
    CHECK(std::string(e.what()).find("800") != std::string::npos);
  }
  CHECK_FALSE(std::isfinite(f.eval_unchecked(1.0)));
}

TEST_CASE("construction errors") {
  CHECK_THROWS_AS(ExpLike({}), std::invalid_argument);
  CHECK_THROWS_AS(ExpLike({{0.0, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(ExpLike({{1.0, 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(ExpLike({{1.0, 2.0}, {3.0, 2.0}}), std::invalid_argument);
  CHECK_THROWS_AS(ExpLike({{NAN, 2.0}}), std::invalid_argument);
}

TEST_CASE("text form round-trips") {
  const auto f = ExpLike::parse("1:1, -1:2,0.5:-3");
  CHECK(f.rank() == 3);
  CHECK(f.terms().front() == ExpTerm{1.0, 1.0});
  CHECK(ExpLike::parse(f.describe()) == f);
  rng::Stream rs(4, 0);
  for (int i = 0; i < 100; ++i) {
    const auto g = random_explike(rs, 1 + rs.next_u64() % 4);
    REQUIRE(ExpLike::parse(g.describe()) == g);
  }
  for (const char* bad : {"", "1", "1:", ":1", "1:1,", "1:0", "a:b", "1:1,2:1"})
    CHECK_THROWS_AS(ExpLike::parse(bad), std::invalid_argument);
}

TEST_CASE("apply maps elementwise and records the transform") {
  const auto t = generate(SequenceSpec::z_chat_minus_c(), 50);
  const ExpLike f({{1.0, 1.0}});
  const auto ft = explike_apply(f, t);
  REQUIRE(ft.size() == 50);
  for (std::size_t i = 0; i < 50; ++i) CHECK(ft.values[i] == std::exp(t.values[i]));
  REQUIRE(!ft.transforms.empty());
  CHECK(ft.transforms.back() == "explike(" + f.describe() + ")");
  CHECK_THROWS_AS(explike_apply(ExpLike({{1.0, 1000.0}}), t), std::overflow_error);
}

TEST_CASE("preimage examples") {
  const auto one = preimage_count(ExpLike({{1.0, 1.0}}), 1.0, -5, 5, 1000);
  CHECK(one.count == 1);
  REQUIRE(one.brackets.size() == 1);
  CHECK(one.brackets[0].first <= 0.0);
  CHECK(one.brackets[0].second >= 0.0);

  const auto cosh2 = preimage_count(ExpLike({{1.0, 1.0}, {1.0, -1.0}}), 3.0, -5, 5, 1001);
  CHECK(cosh2.count == 2);
  REQUIRE(cosh2.brackets.size() == 2);
  const double root = std::acosh(1.5);
  CHECK(cosh2.brackets[0].first == doctest::Approx(-root).epsilon(1e-8));
  CHECK(cosh2.brackets[1].second == doctest::Approx(root).epsilon(1e-8));
  for (const auto& b : cosh2.brackets) CHECK(b.second - b.first <= 10.0 / 1e9 * 1.0000001);

  CHECK(preimage_count(ExpLike({{1.0, 1.0}}), -1.0, -5, 5, 1000).count == 0);
  CHECK_THROWS_AS(preimage_count(ExpLike({{1.0, 1.0}}), 1.0, 1, 1, 10), std::invalid_argument);
  CHECK_THROWS_AS(preimage_count(ExpLike({{1.0, 1.0}}), 1.0, 0, 1, 0), std::invalid_argument);
}

TEST_CASE("preimage count never exceeds the rank") {
  rng::Stream rs(99, 0);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t rank = 1 + rs.next_u64() % 5;
    const auto f = random_explike(rs, rank);
    const double c = rs.uniform(-3.0, 3.0);
    const auto p = preimage_count(f, c, -10.0, 10.0, 4000);
    REQUIRE(p.count <= rank);
    REQUIRE(p.within_rank);
    for (const auto& b : p.brackets) {
      const double fa = f(b.first) - c, fb = f(b.second) - c;
      REQUIRE((fa == 0.0 || fb == 0.0 || (fa < 0) != (fb < 0)));
    }
  }
}

TEST_CASE("products of exponential-likes agree pointwise") {
  rng::Stream rs(5, 0);
  int checked = 0;
  while (checked < 100) {
    const auto f = random_explike(rs, 1 + rs.next_u64() % 3);
    const auto g = random_explike(rs, 1 + rs.next_u64() % 3);
    bool zero_sum = false;
    for (const auto& a : f.terms())
      for (const auto& b : g.terms()) zero_sum = zero_sum || a.beta + b.beta == 0.0;
    if (zero_sum) {
      CHECK_THROWS_AS(f * g, std::invalid_argument);
      continue;
    }
    const auto h = f * g;
    CHECK(h.rank() <= f.rank() * g.rank());
    for (int k = 0; k < 5; ++k) {
      const double x = rs.uniform(-3.0, 3.0);
      const long double ref = direct(f.terms(), x) * direct(g.terms(), x);
      long double scale = 0.0L;
      for (const auto& a : f.terms())
        for (const auto& b : g.terms())
          scale += std::abs(a.alpha * b.alpha * std::exp(static_cast<long double>(a.beta + b.beta) * x));
      REQUIRE(std::abs(h(x) - ref) <= 1e-12L * scale);
    }
    ++checked;
  }
  CHECK_THROWS_AS(ExpLike({{1.0, 1.0}}) * ExpLike({{1.0, -1.0}}), std::invalid_argument);
  const auto sq = ExpLike({{1.0, 1.0}, {1.0, 2.0}}) * ExpLike({{1.0, 1.0}, {1.0, 2.0}});
  CHECK(sq.rank() == 3);
  CHECK(sq.terms()[1] == ExpTerm{2.0, 3.0});
}
