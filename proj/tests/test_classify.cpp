#include <doctest.h>

#include "seqlab/classify.hpp"
#include "seqlab/explike.hpp"
#include "seqlab/rng.hpp"

using namespace seqlab;
using V = Verdict;

namespace {

ClassificationReport run(const SequenceSpec& s, std::uint64_t n, double tol = 1e-2) {
  return classify(lorentz_profile(generate(s, n)), {tol, 0.25});
}

int strength(V v) { return v == V::ConsistentWithMember ? 2 : v == V::Inconclusive ? 1 : 0; }

void check_nesting(const ClassificationReport& r) {
  CHECK(r.banach_lo <= r.banach_hi);
  CHECK(strength(r.verdict(Space::c)) <= strength(r.verdict(Space::chat)));
  CHECK(strength(r.verdict(Space::chat)) <= strength(r.verdict(Space::S)));
  CHECK(strength(r.verdict(Space::c0)) <= strength(r.verdict(Space::c)));
  CHECK(strength(r.verdict(Space::c0)) <= strength(r.verdict(Space::chat0)));
  CHECK(strength(r.verdict(Space::chat0)) <= strength(r.verdict(Space::chat)));
  CHECK(strength(r.verdict(Space::chat0)) <= strength(r.verdict(Space::S0)));
  CHECK(strength(r.verdict(Space::S0)) <= strength(r.verdict(Space::S)));
}

}  // namespace

TEST_CASE("constant zero is a member of all six spaces") {
  const auto r = run(SequenceSpec::constant(0.0), 1024);
  for (Space s : kAllSpaces) CHECK(r.verdict(s) == V::ConsistentWithMember);
  CHECK(r.banach_lo == 0.0);
  CHECK(r.banach_hi == 0.0);
  REQUIRE(r.cesaro_limit.has_value());
  CHECK(*r.cesaro_limit == 0.0);
}

TEST_CASE("constant c: bracket (c, c), zero variants rejected") {
  const auto r = run(SequenceSpec::constant(0.7), 4096);
  CHECK(r.banach_lo == doctest::Approx(0.7));
  CHECK(r.banach_hi == doctest::Approx(0.7));
  CHECK(r.verdict(Space::c) == V::ConsistentWithMember);
  CHECK(r.verdict(Space::c0) == V::ConsistentWithNonMember);
  CHECK(r.verdict(Space::chat0) == V::ConsistentWithNonMember);
  CHECK(r.verdict(Space::S0) == V::ConsistentWithNonMember);
  REQUIRE(r.chat_limit.has_value());
  CHECK(*r.chat_limit == doctest::Approx(0.7));
}

TEST_CASE("alternating signs: bracket (0, 0) and not convergent") {
  const auto prof = lorentz_profile(generate(SequenceSpec::alt_sign(), 1000));
  const auto b = banach_interval(prof, 0.25);
  CHECK(std::abs(b.lo) <= 1.0 / 64);
  CHECK(std::abs(b.hi) <= 1.0 / 64);
  const auto r = classify(prof);
  CHECK(r.verdict(Space::c) == V::ConsistentWithNonMember);
  CHECK(r.verdict(Space::chat0) == V::ConsistentWithMember);
  CHECK(r.verdict(Space::S0) == V::ConsistentWithMember);
}

TEST_CASE("example sequence: Cesàro convergent, not almost convergent") {
  const auto s = SequenceSpec::example_s_not_chat();
  const auto r = run(s, *block_boundary(s, 20), 0.05);
  CHECK(r.verdict(Space::S) == V::ConsistentWithMember);
  CHECK(r.verdict(Space::chat) == V::ConsistentWithNonMember);
  CHECK(r.verdict(Space::c) == V::ConsistentWithNonMember);
  CHECK(r.banach_lo == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(r.banach_hi == doctest::Approx(1.0));
  REQUIRE(r.cesaro_limit.has_value());
  CHECK(*r.cesaro_limit == doctest::Approx(1.0).epsilon(0.01));
  check_nesting(r);
}

TEST_CASE("exp of the first construction is almost convergent to f(0) = 1") {
  const auto z = SequenceSpec::z_chat_minus_c();
  const auto t = explike_apply(ExpLike({{1.0, 1.0}}), generate(z, *block_boundary(z, 2000)));
  const auto r = classify(lorentz_profile(t), {0.05, 0.25});
  CHECK(r.verdict(Space::chat) == V::ConsistentWithMember);
  CHECK(r.verdict(Space::c) == V::ConsistentWithNonMember);
  REQUIRE(r.chat_limit.has_value());
  CHECK(*r.chat_limit == doctest::Approx(1.0).epsilon(0.05));
  check_nesting(r);
}

TEST_CASE("short truncations are always inconclusive") {
  const auto r = run(SequenceSpec::constant(0.0), 15);
  for (Space s : kAllSpaces) CHECK(r.verdict(s) == V::Inconclusive);
}

TEST_CASE("an unbounded slow drift: Cesàro trace undecided, c and chat rejected") {
  // x_n = log2(n): Cesàro means grow by about one per octave without reversing.
  std::vector<double> v(1 << 16);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::log2(static_cast<double>(i + 1));
  const auto r = classify(lorentz_profile(generate(SequenceSpec::custom(v), v.size())));
  CHECK(r.verdict(Space::S) == V::Inconclusive);
  CHECK(r.verdict(Space::chat) == V::ConsistentWithNonMember);
  CHECK(r.verdict(Space::c) == V::ConsistentWithNonMember);
  check_nesting(r);
}

TEST_CASE("scaling equivariance") {
  for (const auto& base : {SequenceSpec::example_s_not_chat(), SequenceSpec::alt_sign(), SequenceSpec::constant(0.0),
                           SequenceSpec::constant(0.5)}) {
    const std::uint64_t n = 1 << 16;
    const auto r0 = run(base, n, 0.05);
    for (double lambda : {-2.0, 0.5, 3.0}) {
      const auto r = run(SequenceSpec::affine(base, lambda, 0.0), n, 0.05);
      const double lo = lambda > 0 ? lambda * r0.banach_lo : lambda * r0.banach_hi;
      const double hi = lambda > 0 ? lambda * r0.banach_hi : lambda * r0.banach_lo;
      CHECK(r.banach_lo == doctest::Approx(lo).epsilon(1e-12));
      CHECK(r.banach_hi == doctest::Approx(hi).epsilon(1e-12));
      for (Space s : {Space::c, Space::chat, Space::S})
        CHECK_MESSAGE(r.verdict(s) == r0.verdict(s), base.describe() << " lambda " << lambda);
      if (base == SequenceSpec::constant(0.0) || base == SequenceSpec::alt_sign())
        for (Space s : {Space::c0, Space::chat0, Space::S0}) CHECK(r.verdict(s) == r0.verdict(s));
    }
  }
}

TEST_CASE("shift invariance of the bracket within 2 k max|x| / n_min") {
  const auto x = generate(SequenceSpec::z_s_minus_chat(), 1 << 15);
  const std::vector<std::size_t> schedule = {64, 128, 256, 512, 1024, 2048};
  for (std::uint64_t k : {1u, 5u, 40u}) {
    const auto y = shift(x, k);
    const auto px = lorentz_profile(x, schedule, std::vector<std::uint64_t>{x.size()});
    const auto py = lorentz_profile(y, schedule, std::vector<std::uint64_t>{y.size()});
    const auto bx = banach_interval(px, 0.5);
    const auto by = banach_interval(py, 0.5);
    const double slack = 2.0 * static_cast<double>(k) * 2.0 / static_cast<double>(schedule[3]);
    CHECK(std::abs(bx.lo - by.lo) <= slack);
    CHECK(std::abs(bx.hi - by.hi) <= slack);
  }
}

TEST_CASE("nesting holds on random sequences") {
  rng::Stream rs(77, 0);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 64 + rs.next_u64() % 4000;
    std::vector<double> v(n);
    const double drift = rs.uniform(-1.0, 1.0), noise = rs.uniform(0.0, 0.1);
    const int kind = static_cast<int>(rs.next_u64() % 3);
    for (std::size_t i = 0; i < n; ++i) {
      const double t = static_cast<double>(i + 1);
      v[i] = kind == 0 ? drift / t + noise * rs.uniform(-1, 1)
                       : kind == 1 ? drift * ((i / 7) % 2 ? 1.0 : -1.0) : drift + noise * std::sin(t);
    }
    for (double tol : {1e-3, 1e-2, 0.2}) check_nesting(classify(lorentz_profile(generate(SequenceSpec::custom(v), n)), {tol, 0.25}));
  }
}

TEST_CASE("bracket errors and clamping") {
  WindowProfile p;
  p.schedule = {1, 2};
  p.p_hat = {1.0, 0.2};
  p.q_hat = {0.0, 0.3};
  CHECK_THROWS_AS(banach_interval(p, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(banach_interval(p, 1.5), std::invalid_argument);
  const auto b = banach_interval(p, 0.5);
  CHECK(b.clamped);
  CHECK(b.lo == b.hi);
  CHECK(b.inversion == doctest::Approx(0.1));
  CHECK_THROWS_AS(banach_interval(WindowProfile{}, 1.0), std::invalid_argument);
}
