#include <doctest.h>

#include "oracles.hpp"
#include "seqlab/rng.hpp"
#include "seqlab/window_stats.hpp"

using namespace seqlab;

namespace {

Truncation random_truncation(std::size_t n, std::uint64_t seed) {
  rng::Stream rs(seed, 1);
  std::vector<double> v(n);
  for (double& x : v) x = rs.uniform(-2.0, 2.0);
  return generate(SequenceSpec::custom(v), n);
}

}  // namespace

TEST_CASE("prefix sums of the alternating sequence") {
  CHECK(prefix_sums(generate(SequenceSpec::alt_sign(), 4)) == std::vector<double>{0, -1, 0, -1, 0});
}

TEST_CASE("window extremes match the brute-force scan for every length") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const auto t = random_truncation(150 + 40 * seed, seed);
    const auto e = oracle::window_extremes_all(t.values);
    for (std::size_t n = 1; n <= t.size(); ++n) {
      const auto w = window_extremes(t, n);
      REQUIRE(std::abs(w.p_hat - static_cast<double>(e.max_avg[n - 1])) <= 1e-12);
      REQUIRE(std::abs(w.q_hat - static_cast<double>(e.min_avg[n - 1])) <= 1e-12);
    }
  }
}

TEST_CASE("window extremes: examples and errors") {
  const auto c = generate(SequenceSpec::constant(0.3), 50);
  const auto w = window_extremes(c, 7);
  CHECK(w.p_hat == doctest::Approx(0.3));
  CHECK(w.q_hat == doctest::Approx(0.3));
  const auto alt = generate(SequenceSpec::alt_sign(), 10);
  CHECK(window_extremes(alt, 2).p_hat == 0.0);
  CHECK(window_extremes(alt, 3).p_hat == doctest::Approx(1.0 / 3));
  CHECK(window_extremes(alt, 3).q_hat == doctest::Approx(-1.0 / 3));
  CHECK_THROWS_AS(window_extremes(alt, 0), std::invalid_argument);
  CHECK_THROWS_AS(window_extremes(alt, 11), std::invalid_argument);
}

TEST_CASE("p_n >= q_n and both lie within the value range") {
  for (const auto& s : {SequenceSpec::example_s_not_chat(), SequenceSpec::z_chat_minus_c(),
                        SequenceSpec::z_s_minus_chat(), SequenceSpec::alt_sign()}) {
    const auto t = generate(s, 5000);
    const auto [mn, mx] = std::minmax_element(t.values.begin(), t.values.end());
    const auto prof = lorentz_profile(t);
    for (std::size_t k = 0; k < prof.schedule.size(); ++k) {
      CHECK(prof.p_hat[k] >= prof.q_hat[k]);
      CHECK(prof.p_hat[k] <= *mx);
      CHECK(prof.q_hat[k] >= *mn);
    }
  }
}

TEST_CASE("Cesàro means agree with direct sums and with the streaming path") {
  const auto s = SequenceSpec::z_s_minus_chat();
  const auto t = generate(s, 30000);
  const auto pts = default_cesaro_points(t.size(), s);
  const auto direct = cesaro_profile(t, pts);
  const auto streamed = streaming_cesaro(s, pts);
  REQUIRE(direct.size() == pts.size());
  for (std::size_t k = 0; k < pts.size(); ++k) {
    CHECK(direct[k] == doctest::Approx(static_cast<double>(oracle::cesaro(t.values, pts[k]))).epsilon(1e-14));
    CHECK(streamed[k] == direct[k]);
  }
  const auto mapped = streaming_cesaro(s, pts, [](double x) { return std::exp(x); });
  std::vector<double> ex(t.values);
  for (double& v : ex) v = std::exp(v);
  CHECK(mapped.back() == doctest::Approx(static_cast<double>(oracle::cesaro(ex, ex.size()))).epsilon(1e-14));
  CHECK_THROWS_AS(cesaro_profile(t, std::vector<std::uint64_t>{0}), std::invalid_argument);
  CHECK_THROWS_AS(cesaro_profile(t, std::vector<std::uint64_t>{30001}), std::invalid_argument);
}

TEST_CASE("default schedule and sample points") {
  CHECK(default_schedule(1000) == std::vector<std::size_t>{1, 2, 4, 8, 16, 32, 64, 128});
  CHECK(default_schedule(3) == std::vector<std::size_t>{1});
  const auto dense = default_schedule(1000, 4);
  CHECK(dense.back() == 250);
  CHECK(std::is_sorted(dense.begin(), dense.end()));

  const auto pts = default_cesaro_points(2000, SequenceSpec::example_s_not_chat());
  CHECK(pts.front() == 1);
  CHECK(pts.back() == 2000);
  CHECK(std::binary_search(pts.begin(), pts.end(), 1067u));  // m_9
  CHECK(std::adjacent_find(pts.begin(), pts.end()) == pts.end());
}

TEST_CASE("example: every short window length meets a run of zeros") {
  const auto s = SequenceSpec::example_s_not_chat();
  const auto t = generate(s, *block_boundary(s, 14));
  for (std::size_t n = 1; n <= 14; ++n) CHECK(window_extremes(t, n).q_hat == 0.0);
  CHECK(window_extremes(t, 15).q_hat > 0.0);
}

TEST_CASE("reference extremes are NaN beyond a quarter of the reference prefix") {
  const auto t = generate(SequenceSpec::alt_sign(), 4096);
  const auto prof = lorentz_profile(t);
  CHECK(prof.ref_length == 1024);
  for (std::size_t k = 0; k < prof.schedule.size(); ++k)
    CHECK(std::isnan(prof.p_hat_ref[k]) == (prof.schedule[k] > 256));
}

TEST_CASE("profile validation") {
  const auto t = generate(SequenceSpec::alt_sign(), 100);
  CHECK_THROWS_AS(lorentz_profile(t, std::vector<std::size_t>{}, std::vector<std::uint64_t>{1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(lorentz_profile(t, std::vector<std::size_t>{4, 2}, std::vector<std::uint64_t>{1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(lorentz_profile(t, std::vector<std::size_t>{101}, std::vector<std::uint64_t>{1}),
                  std::invalid_argument);
}
