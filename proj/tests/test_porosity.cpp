#include <doctest.h>

#include "seqlab/classify.hpp"
#include "seqlab/porosity.hpp"

using namespace seqlab;

namespace {

constexpr PorosityPair kPairs[] = {PorosityPair::CInChat, PorosityPair::ChatInS, PorosityPair::SInLinf};

std::uint64_t length_for(PorosityPair p) {
  switch (p) {
    case PorosityPair::CInChat: return 4096;
    case PorosityPair::ChatInS: return *block_boundary(SequenceSpec::example_s_not_chat(), 14);
    case PorosityPair::SInLinf: return *block_boundary(SequenceSpec::power_block_sign(), 6);
  }
  return 0;
}

Space smaller(PorosityPair p) {
  return p == PorosityPair::CInChat ? Space::c : p == PorosityPair::ChatInS ? Space::chat : Space::S;
}

}  // namespace

TEST_CASE("pair names") {
  for (auto p : kPairs) CHECK(porosity_pair_from_name(to_string(p)) == p);
  CHECK(porosity_pair_from_name("chat-in-s") == PorosityPair::ChatInS);
  CHECK_THROWS_AS(porosity_pair_from_name("c_in_S"), std::invalid_argument);
}

TEST_CASE("certificates for the zero base") {
  const auto c1 = porosity_witness(PorosityPair::CInChat, SequenceSpec::constant(0.0), 1.0, 0.5);
  CHECK(c1.pattern == SequenceSpec::alt_sign());
  CHECK(c1.oscillation_bound == 0.5);
  CHECK(c1.gamma == 0.25);
  CHECK(certificate_center(c1, 4).values == std::vector<double>{-0.5, 0.5, -0.5, 0.5});

  const auto c2 = porosity_witness(PorosityPair::ChatInS, SequenceSpec::constant(0.0), 2.0, 0.25);
  CHECK(c2.oscillation_bound == 1.5);
  CHECK(certificate_center(c2, 5).values == std::vector<double>{-1, 1, 1, -1, -1});

  const auto c3 = porosity_witness(PorosityPair::SInLinf, SequenceSpec::constant(0.0), 0.1, 0.9);
  CHECK(c3.oscillation_bound == doctest::Approx(0.01));
  CHECK(c3.base_verdict == Verdict::ConsistentWithMember);
}

TEST_CASE("argument errors and refusals") {
  CHECK_THROWS_AS(porosity_witness(PorosityPair::CInChat, SequenceSpec::constant(0.0), 0.0, 0.5),
                  std::invalid_argument);
  CHECK_THROWS_AS(porosity_witness(PorosityPair::CInChat, SequenceSpec::constant(0.0), 1.0, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(porosity_witness(PorosityPair::CInChat, SequenceSpec::alt_sign(), 1.0, 0.5), CertificateRefused);
  CHECK_THROWS_AS(porosity_witness(PorosityPair::ChatInS, SequenceSpec::power_block_sign(), 1.0, 0.5),
                  CertificateRefused);
  CHECK_THROWS_AS(porosity_witness(PorosityPair::CInChat, SequenceSpec::constant(1.0), 1.0, 0.5, true),
                  CertificateRefused);
  CHECK_NOTHROW(porosity_witness(PorosityPair::CInChat, SequenceSpec::constant(1.0), 1.0, 0.5, false));
}

TEST_CASE("certificates verify, centres sit at distance r/2") {
  for (auto p : kPairs)
    for (double r : {1.0, 0.1})
      for (double alpha : {0.5, 0.9, 1.0 - 1e-6}) {
        const auto cert = porosity_witness(p, SequenceSpec::constant(0.0), r, alpha);
        const auto v = verify_certificate(cert, length_for(p), 40, 7);
        CHECK_MESSAGE(v.passed, to_string(p) << " r=" << r << " alpha=" << alpha << " min " << v.min_statistic
                                             << " threshold " << v.threshold);
        CHECK(v.norm_ok);
        CHECK(v.norm_deviation == 0.0);
      }
}

TEST_CASE("non-zero bases of the smaller space") {
  const auto c = porosity_witness(PorosityPair::CInChat, SequenceSpec::constant(0.3), 1.0, 0.5);
  CHECK(verify_certificate(c, 4096, 20, 1).passed);
  const auto s = porosity_witness(PorosityPair::SInLinf, SequenceSpec::constant(-0.4), 1.0, 0.5);
  CHECK(verify_certificate(s, length_for(PorosityPair::SInLinf), 20, 1).passed);
}

TEST_CASE("tampered certificates fail") {
  for (auto p : kPairs) {
    auto cert = porosity_witness(p, SequenceSpec::constant(0.0), 1.0, 0.5);
    cert.pattern = SequenceSpec::constant(1.0);
    const auto v = verify_certificate(cert, length_for(p), 20, 3);
    CHECK_MESSAGE(!v.passed, to_string(p));
  }
}

TEST_CASE("a base too rough for the bound leaves no positive threshold") {
  auto cert = porosity_witness(PorosityPair::CInChat, SequenceSpec::constant(0.0), 1.0, 0.5);
  cert.base = SequenceSpec::alt_sign();
  const auto v = verify_certificate(cert, 1000, 5, 1);
  CHECK_FALSE(v.passed);
  CHECK(v.threshold <= 0.0);
  CHECK(v.failing_samples == 5);
  CHECK_FALSE(v.diagnostics.empty());
}

TEST_CASE("ball samples are classified outside the smaller space") {
  for (auto p : kPairs) {
    const auto cert = porosity_witness(p, SequenceSpec::constant(0.0), 1.0, 0.5);
    for (std::uint64_t s = 0; s < 3; ++s) {
      const auto z = ball_sample(cert, length_for(p), 11, s);
      // The ±1 Example shows its window gap only at lengths up to its longest
      // run (about log2 N), so chat_in_S is classified on those windows, where
      // the noise decay at small n can leave the verdict undecided.
      const auto profile = p == PorosityPair::ChatInS
                               ? lorentz_profile(z, std::vector<std::size_t>{1, 2, 4, 8},
                                                 default_cesaro_points(z.size(), z.spec))
                               : lorentz_profile(z);
      const auto r = classify(profile, {cert.oscillation_bound / 4.0, 0.25});
      if (p == PorosityPair::ChatInS)
        CHECK_MESSAGE(r.verdict(smaller(p)) != Verdict::ConsistentWithMember, to_string(p) << " sample " << s);
      else
        CHECK_MESSAGE(r.verdict(smaller(p)) == Verdict::ConsistentWithNonMember, to_string(p) << " sample " << s);
    }
  }
}

TEST_CASE("verification is reproducible and rejects short truncations") {
  const auto cert = porosity_witness(PorosityPair::ChatInS, SequenceSpec::constant(0.0), 1.0, 0.5);
  const auto a = verify_certificate(cert, 4000, 16, 5);
  const auto b = verify_certificate(cert, 4000, 16, 5);
  CHECK(a.min_statistic == b.min_statistic);
  CHECK(ball_sample(cert, 100, 5, 3).values == ball_sample(cert, 100, 5, 3).values);
  CHECK(ball_sample(cert, 100, 5, 3).values != ball_sample(cert, 100, 5, 4).values);
  for (auto p : kPairs) {
    const auto c = porosity_witness(p, SequenceSpec::constant(0.0), 1.0, 0.5);
    try {
      verify_certificate(c, required_length(p) - 1, 1, 0);
      FAIL("expected InsufficientLength");
    } catch (const InsufficientLength& e) {
      CHECK(e.required() == required_length(p));
    }
  }
}
