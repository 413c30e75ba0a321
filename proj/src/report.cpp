#include "seqlab/report.hpp"

#include <cmath>
#include <stdexcept>

#include "seqlab/spec_io.hpp"

namespace seqlab {

namespace {

using json = nlohmann::ordered_json;

json real(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json reals(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(real(x));
  return a;
}

json optional_real(const std::optional<double>& v) { return v ? real(*v) : json(nullptr); }

Verdict verdict_from(std::string_view s) {
  for (auto v : {Verdict::ConsistentWithMember, Verdict::ConsistentWithNonMember, Verdict::Inconclusive})
    if (to_string(v) == s) return v;
  throw std::invalid_argument("unknown verdict '" + std::string(s) + "'");
}

}  // namespace

json to_json(const SequenceSpec& spec) {
  return json{{"name", spec.name()}, {"describe", spec.describe()}, {"descriptor", to_descriptor(spec)}};
}

json to_json(const WindowProfile& p) {
  return json{{"N", p.n_terms},
              {"schedule", p.schedule},
              {"p_hat", reals(p.p_hat)},
              {"q_hat", reals(p.q_hat)},
              {"ref_length", p.ref_length},
              {"p_hat_ref", reals(p.p_hat_ref)},
              {"q_hat_ref", reals(p.q_hat_ref)},
              {"cesaro_points", p.cesaro_points},
              {"cesaro", reals(p.cesaro)},
              {"tail_min", real(p.tail_min)},
              {"tail_max", real(p.tail_max)},
              {"tail_monotone", p.tail_monotone},
              {"last_value", real(p.last_value)}};
}

json to_json(const ClassificationReport& r) {
  json verdicts = json::object();
  for (Space s : kAllSpaces) verdicts[std::string(to_string(s))] = std::string(to_string(r.verdict(s)));
  return json{{"N", r.n_terms},
              {"tol", r.tol},
              {"tail_fraction", r.tail_fraction},
              {"banach_lo", real(r.banach_lo)},
              {"banach_hi", real(r.banach_hi)},
              {"banach_interval_label", "bracket of all Banach limits"},
              {"cesaro_limit", optional_real(r.cesaro_limit)},
              {"chat_limit", optional_real(r.chat_limit)},
              {"verdicts", verdicts},
              {"window_gap", real(r.window_gap)},
              {"value_oscillation", real(r.value_oscillation)},
              {"cesaro_oscillation", real(r.cesaro_oscillation)},
              {"trusted_windows", r.trusted_windows},
              {"gap_trace", reals(r.gap_trace)},
              {"thresholds",
               {{"window_drift", r.tol / 2.0},
                {"cesaro_tail_start", "N/64"},
                {"value_tail_start", "N/2"},
                {"drift_slope_per_octave", r.tol}}},
              {"diagnostics", r.diagnostics},
              {"note", "verdicts are evidence from a finite truncation, not proofs of membership"}};
}

json to_json(const PreimageResult& r) {
  json brackets = json::array();
  for (const auto& [a, b] : r.brackets) brackets.push_back(json::array({a, b}));
  return json{{"count", r.count}, {"within_rank", r.within_rank}, {"brackets", brackets}};
}

json to_json(const WitnessReport& r) {
  json monomials = json::array();
  for (const auto& m : r.monomials)
    monomials.push_back(json{{"label", m.label}, {"powers", m.powers}, {"exponent", m.exponent}});
  json checks = json::array();
  for (const auto& c : r.checks)
    checks.push_back(json{{"label", c.label},
                          {"coefficients", c.coefficients},
                          {"c", std::string(to_string(c.c))},
                          {"chat", std::string(to_string(c.chat))},
                          {"S", std::string(to_string(c.s))},
                          {"window_gap", real(c.window_gap)},
                          {"value_oscillation", real(c.value_oscillation)},
                          {"cesaro_oscillation", real(c.cesaro_oscillation)},
                          {"passed", c.passed}});
  return json{{"generators", r.generators},
              {"degree", r.degree},
              {"N", r.n_terms},
              {"target", std::string(to_string(r.target))},
              {"monomials", monomials},
              {"sigma_min", real(r.sigma_min)},
              {"sigma_max", real(r.sigma_max)},
              {"gram_eig_min", real(r.gram_eig_min)},
              {"gram_eig_max", real(r.gram_eig_max)},
              {"tol", r.options.tol},
              {"classify_tol", r.options.classify_tol},
              {"combinations", r.options.combinations},
              {"seed", r.options.seed},
              {"checks", checks},
              {"independent", r.independent},
              {"all_members", r.all_members},
              {"passed", r.passed},
              {"diagnostics", r.diagnostics}};
}

json to_json(const PorosityCertificate& c) {
  return json{{"pair", std::string(to_string(c.pair))},
              {"zero_limit", c.zero_limit},
              {"base", to_json(c.base)},
              {"r", c.r},
              {"alpha", c.alpha},
              {"pattern", to_json(c.pattern)},
              {"oscillation_bound", c.oscillation_bound},
              {"gamma", c.gamma},
              {"evidence_length", c.evidence_length},
              {"base_oscillation", real(c.base_oscillation)},
              {"base_verdict", std::string(to_string(c.base_verdict))}};
}

PorosityCertificate certificate_from_json(const json& j) {
  PorosityCertificate c;
  c.pair = porosity_pair_from_name(j.at("pair").get<std::string>());
  c.zero_limit = j.at("zero_limit").get<bool>();
  c.base = from_descriptor(j.at("base").at("descriptor").get<std::string>());
  c.pattern = from_descriptor(j.at("pattern").at("descriptor").get<std::string>());
  c.r = j.at("r").get<double>();
  c.alpha = j.at("alpha").get<double>();
  c.oscillation_bound = j.at("oscillation_bound").get<double>();
  c.gamma = j.at("gamma").get<double>();
  c.evidence_length = j.value("evidence_length", std::uint64_t{0});
  const auto& bo = j.at("base_oscillation");
  c.base_oscillation = bo.is_null() ? NAN : bo.get<double>();
  c.base_verdict = verdict_from(j.value("base_verdict", std::string("Inconclusive")));
  if (!(c.r > 0.0) || !(c.alpha > 0.0 && c.alpha < 1.0))
    throw std::invalid_argument("certificate has r <= 0 or alpha outside (0, 1)");
  return c;
}

json to_json(const CertificateVerdict& v) {
  return json{{"passed", v.passed},
              {"norm_ok", v.norm_ok},
              {"norm_deviation", real(v.norm_deviation)},
              {"statistic", v.statistic},
              {"threshold", real(v.threshold)},
              {"slack", real(v.slack)},
              {"min_statistic", real(v.min_statistic)},
              {"failing_samples", v.failing_samples},
              {"samples", v.samples},
              {"seed", v.seed},
              {"N", v.n_terms},
              {"window", v.window},
              {"diagnostics", v.diagnostics}};
}

json to_json(const LlnReport& r) {
  json out{{"seed", r.seed},
           {"trials", r.trials},
           {"N", r.n_terms},
           {"sampler", r.sampler == Sampler::Zero ? "zero" : "uniform"},
           {"points", r.points},
           {"mean", reals(r.mean)},
           {"stddev", reals(r.stddev)},
           {"reference_std", reals(r.reference_std)}};
  return out;
}

json to_json(const BlockDecayReport& r) {
  json intervals = json::array();
  for (std::size_t m = 0; m < r.frequency.size(); ++m)
    intervals.push_back(r.run_counts[m] == 0 ? json::array({0.0, r.zero_upper[m]})
                                             : json::array({r.frequency[m], r.frequency[m]}));
  return json{{"seed", r.seed},
              {"trials", r.trials},
              {"block_size", r.block_size},
              {"m_max", r.m_max},
              {"p_hat", real(r.p_hat)},
              {"p_hat_stderr", real(r.p_hat_stderr)},
              {"log_p_hat", real(r.log_p_hat)},
              {"run_counts", r.run_counts},
              {"frequency", reals(r.frequency)},
              {"frequency_interval", intervals},
              {"slope", real(r.slope)},
              {"slope_stderr", real(r.slope_stderr)},
              {"intercept", real(r.intercept)},
              {"fitted_points", r.fitted_points},
              {"event", "block average < 1/4; the mirrored event is covered by symmetry and not simulated"}};
}

}  // namespace seqlab
