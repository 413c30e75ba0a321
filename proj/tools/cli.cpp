#include "cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "seqlab/algebra.hpp"
#include "seqlab/classify.hpp"
#include "seqlab/explike.hpp"
#include "seqlab/kernels.hpp"
#include "seqlab/montecarlo.hpp"
#include "seqlab/porosity.hpp"
#include "seqlab/report.hpp"
#include "seqlab/spec_io.hpp"
#include "seqlab/window_stats.hpp"

namespace seqlab::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kFooter = R"(Exit codes: 0 success, 1 verdict failed (witness or certificate), 2 usage or argument error.

Sequences: --seq takes constant (with --value), alt-sign, dyadic-a, diagonal-b,
example-s-not-chat, z-chat-minus-c, z-s-minus-chat, z-linf-minus-s,
power-block-sign, or custom (with --input). --spec reads a key = value
descriptor file (needed for shifted and affine). --len-blocks j sets N = m_j.

CSV columns:
  gen, transform      n,value
  profile             kind,n,a,b   (kind=window: a=p_hat b=q_hat; kind=cesaro: a=s_n)
  algebra-witness     label,exponent
  mc-lln --traces     trial,n,s_n

--config FILE holds `flag = value` lines (flag names without dashes); flags on
the command line take precedence. Reports are JSON objects with `tool`,
`version`, `command`, `config` and `result`; the `run` member (threads,
runtime) is the only part that may differ between identical runs.)";

struct Options {
  std::string seq;
  double value = 0.0;
  std::string input;
  std::string spec_file;
  std::uint64_t len = 0;
  std::uint64_t len_blocks = 0;
  std::string explike;

  std::size_t dense_top = 0;
  double tol = 1e-2;
  double tail_fraction = 0.25;

  double level = 0.0;
  double lo = -10.0;
  double hi = 10.0;
  std::size_t grid = 10000;

  std::string betas = "sqrt(2),sqrt(3),sqrt(5)";
  unsigned degree = 2;
  double witness_tol = 1e-8;
  double classify_tol = 1e-2;
  std::size_t combinations = 20;

  std::string pair = "c_in_chat";
  double r = 1.0;
  double alpha = 0.5;
  bool zero_limit = false;
  std::uint64_t evidence_len = 1u << 16;
  std::string cert;
  std::size_t samples = 1000;

  std::uint64_t seed = 1;
  std::uint64_t trials = 1000;
  std::string sampler = "uniform";
  std::uint64_t block_size = 1;
  std::uint64_t m_max = 10;
  std::string traces;

  std::string format = "json";
  std::string out;
  int threads = 0;
};

// Options that never change results; reported under `run`, not `config`.
bool is_run_option(const std::string& name) {
  return name == "threads" || name == "out" || name == "config" || name == "help";
}

struct Outcome {
  Outcome() = default;
  explicit Outcome(json r, int c = kOk) : result(std::move(r)), code(c) {}
  json result;
  int code = kOk;
  std::string csv;  // used when --format csv
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<double> read_input_values(const std::string& path) {
  const std::string text = read_file(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    const json j = json::parse(text);
    const json& holder = j.contains("result") ? j.at("result") : j;
    return holder.at("values").get<std::vector<double>>();
  }
  std::istringstream in(text);
  return read_values(in);
}

SequenceSpec resolve_spec(const Options& o) {
  if (!o.spec_file.empty()) return from_descriptor(read_file(o.spec_file));
  if (!o.input.empty() && (o.seq.empty() || o.seq == "custom"))
    return SequenceSpec::custom(read_input_values(o.input));
  if (o.seq == "constant") return SequenceSpec::constant(o.value);
  if (o.seq == "custom") throw std::invalid_argument("--seq custom needs --input");
  if (o.seq.empty()) throw std::invalid_argument("no sequence given (use --seq, --input or --spec)");
  return spec_from_name(o.seq);
}

std::uint64_t resolve_length(const Options& o, const SequenceSpec& spec, std::uint64_t fallback) {
  if (o.len_blocks > 0) {
    if (o.len > 0) throw std::invalid_argument("--len and --len-blocks are exclusive");
    const auto m = block_boundary(spec, o.len_blocks);
    if (!m) throw std::invalid_argument(spec.name() + " has no block boundaries for --len-blocks");
    return *m;
  }
  if (o.len > 0) return o.len;
  if (spec.is<spec::Custom>()) return max_length(spec);
  if (fallback > 0) return fallback;
  throw std::invalid_argument("no length given (use --len or --len-blocks)");
}

Truncation load_truncation(const Options& o, std::uint64_t fallback = 0) {
  const SequenceSpec spec = resolve_spec(o);
  Truncation t = generate(spec, resolve_length(o, spec, fallback));
  if (!o.explike.empty()) t = explike_apply(ExpLike::parse(o.explike), t);
  return t;
}

json truncation_header(const Truncation& t) {
  return json{{"sequence", to_json(t.spec)}, {"N", t.size()}, {"transforms", t.transforms}};
}

std::string values_csv(const Truncation& t) {
  std::ostringstream ss;
  write_values(ss, t.view(), ValueFormat::Csv);
  return ss.str();
}

Outcome cmd_gen(const Options& o) {
  const Truncation t = load_truncation(o);
  Outcome out{truncation_header(t)};
  json values = json::array();
  for (double v : t.values) values.push_back(v);
  out.result["values"] = values;
  if (o.format == "csv") out.csv = values_csv(t);
  if (o.format == "lines") {
    std::ostringstream ss;
    write_values(ss, t.view(), ValueFormat::Lines);
    out.csv = ss.str();
  }
  return out;
}

Outcome cmd_transform(const Options& o) {
  if (o.explike.empty()) throw std::invalid_argument("transform needs --explike alpha:beta,...");
  return cmd_gen(o);
}

WindowProfile profile_of(const Options& o, const Truncation& t) {
  const auto schedule = default_schedule(t.size(), o.dense_top);
  const auto points = default_cesaro_points(t.size(), t.spec);
  return lorentz_profile(t, schedule, points);
}

Outcome cmd_profile(const Options& o) {
  const Truncation t = load_truncation(o);
  const WindowProfile p = profile_of(o, t);
  Outcome out{truncation_header(t)};
  out.result["profile"] = to_json(p);
  if (o.format == "csv") {
    std::ostringstream ss;
    ss << "kind,n,a,b\n";
    for (std::size_t k = 0; k < p.schedule.size(); ++k)
      ss << "window," << p.schedule[k] << ',' << format_double(p.p_hat[k]) << ',' << format_double(p.q_hat[k])
         << '\n';
    for (std::size_t k = 0; k < p.cesaro_points.size(); ++k)
      ss << "cesaro," << p.cesaro_points[k] << ',' << format_double(p.cesaro[k]) << ",\n";
    out.csv = ss.str();
  }
  return out;
}

Outcome cmd_classify(const Options& o) {
  const Truncation t = load_truncation(o);
  Outcome out{truncation_header(t)};
  out.result["classification"] = to_json(classify(profile_of(o, t), {o.tol, o.tail_fraction}));
  return out;
}

Outcome cmd_banach(const Options& o) {
  const Truncation t = load_truncation(o);
  const WindowProfile p = profile_of(o, t);
  const BanachInterval raw = banach_interval(p, o.tail_fraction);
  const std::size_t stable = stable_horizon(p, o.tol);
  const BanachInterval trusted = banach_interval(restrict_schedule(p, stable), o.tail_fraction);
  Outcome out{truncation_header(t)};
  out.result["lo"] = raw.lo;
  out.result["hi"] = raw.hi;
  out.result["clamped"] = raw.clamped;
  out.result["label"] = "bracket of all Banach limits";
  out.result["stable_windows"] = stable;
  out.result["stable_lo"] = trusted.lo;
  out.result["stable_hi"] = trusted.hi;
  return out;
}

Outcome cmd_preimage(const Options& o) {
  if (o.explike.empty()) throw std::invalid_argument("preimage-count needs --explike alpha:beta,...");
  const ExpLike f = ExpLike::parse(o.explike);
  const PreimageResult r = preimage_count(f, o.level, o.lo, o.hi, o.grid);
  Outcome out{json{{"explike", f.describe()}, {"rank", f.rank()}, {"level", o.level}, {"lo", o.lo}, {"hi", o.hi}}};
  out.result["preimage"] = to_json(r);
  out.code = r.within_rank ? kOk : kVerdictFail;
  return out;
}

std::vector<Exponent> parse_betas(const std::string& text) {
  std::vector<Exponent> out;
  std::size_t pos = 0;
  int depth = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i < text.size() && text[i] == '(') ++depth;
    if (i < text.size() && text[i] == ')') --depth;
    if (i == text.size() || (text[i] == ',' && depth == 0)) {
      out.push_back(parse_exponent(std::string_view(text).substr(pos, i - pos)));
      pos = i + 1;
    }
  }
  return out;
}

Outcome cmd_algebra(const Options& o) {
  const SequenceSpec z = resolve_spec(o);
  WitnessOptions w;
  w.degree = o.degree;
  w.n_terms = resolve_length(o, z, 0);
  w.tol = o.witness_tol;
  w.classify_tol = o.classify_tol;
  w.combinations = o.combinations;
  w.seed = o.seed;
  const WitnessReport rep = algebrability_witness(z, parse_betas(o.betas), w);
  Outcome out{json{{"sequence", to_json(z)}}};
  out.result["witness"] = to_json(rep);
  out.code = rep.passed ? kOk : kVerdictFail;
  if (o.format == "csv") {
    std::ostringstream ss;
    ss << "label,exponent\n";
    for (const auto& m : rep.monomials) ss << m.label << ',' << format_double(m.exponent) << '\n';
    out.csv = ss.str();
  }
  return out;
}

Outcome cmd_porosity(const Options& o) {
  const SequenceSpec base = o.seq.empty() && o.input.empty() && o.spec_file.empty()
                                ? SequenceSpec::constant(0.0)
                                : resolve_spec(o);
  const PorosityPair pair = porosity_pair_from_name(o.pair);
  try {
    return Outcome{json{{"certificate", to_json(porosity_witness(pair, base, o.r, o.alpha, o.zero_limit,
                                                                 o.evidence_len))}}};
  } catch (const CertificateRefused& e) {
    return Outcome{json{{"refused", e.what()}}, kVerdictFail};
  }
}

Outcome cmd_verify(const Options& o) {
  if (o.cert.empty()) throw std::invalid_argument("verify-cert needs --cert FILE");
  const json j = json::parse(read_file(o.cert));
  const json& holder = j.contains("result") ? j.at("result") : j;
  const PorosityCertificate cert = certificate_from_json(holder.contains("certificate") ? holder.at("certificate") : holder);
  const std::uint64_t n = o.len > 0 ? o.len : 10000;
  const CertificateVerdict v = verify_certificate(cert, n, o.samples, o.seed);
  Outcome out{json{{"certificate", to_json(cert)}, {"verdict", to_json(v)}}};
  out.code = v.passed ? kOk : kVerdictFail;
  return out;
}

Outcome cmd_mc_lln(const Options& o) {
  if (o.sampler != "uniform" && o.sampler != "zero")
    throw std::invalid_argument("--sampler must be uniform or zero");
  const std::uint64_t n = o.len > 0 ? o.len : 4096;
  const LlnReport rep =
      mc_lln(o.seed, n, o.trials, o.sampler == "zero" ? Sampler::Zero : Sampler::Uniform, !o.traces.empty());
  if (!o.traces.empty()) {
    std::ofstream f(o.traces);
    if (!f) throw std::invalid_argument("cannot write '" + o.traces + "'");
    f << "trial,n,s_n\n";
    for (std::size_t t = 0; t < rep.traces.size(); ++t)
      for (std::size_t k = 0; k < rep.points.size(); ++k)
        f << t << ',' << rep.points[k] << ',' << format_double(rep.traces[t][k]) << '\n';
  }
  return Outcome{json{{"lln", to_json(rep)}}};
}

Outcome cmd_mc_blocks(const Options& o) {
  return Outcome{json{{"block_decay", to_json(mc_block_decay(o.seed, o.block_size, o.m_max, o.trials))}}};
}

void add_sequence_options(CLI::App* sub, Options& o) {
  sub->add_option("--seq", o.seq, "sequence name (kebab case)");
  sub->add_option("--value", o.value, "value for --seq constant");
  sub->add_option("--input", o.input, "values file (lines, n,value CSV, or gen JSON) for custom");
  sub->add_option("--spec", o.spec_file, "key = value descriptor file");
  sub->add_option("--len", o.len, "truncation length N");
  sub->add_option("--len-blocks", o.len_blocks, "set N = m_j for the sequence's block scheme");
}

void add_output_options(CLI::App* sub, Options& o, std::vector<std::string> formats) {
  sub->add_option("--format", o.format, "output format")->check(CLI::IsMember(std::move(formats)));
  sub->add_option("--out", o.out, "write the report here instead of stdout");
  sub->add_option("--threads", o.threads, "worker threads (0 = runtime default)")->check(CLI::NonNegativeNumber);
}

// Flat `key = value` file; blank lines and `#` comments skipped.
std::vector<std::pair<std::string, std::string>> read_config(const std::string& path) {
  std::vector<std::pair<std::string, std::string>> items;
  std::istringstream in(read_file(path));
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    const auto trim = [](std::string s) {
      s.erase(0, s.find_first_not_of(" \t\r"));
      s.erase(s.find_last_not_of(" \t\r") + 1);
      return s;
    };
    if (trim(line).empty()) continue;
    if (eq == std::string::npos) throw std::invalid_argument("config line without '=': " + line);
    std::string key = trim(line.substr(0, eq));
    for (char& c : key)
      if (c == '_') c = '-';
    items.emplace_back(key, trim(line.substr(eq + 1)));
  }
  return items;
}

bool mentions(const std::vector<std::string>& args, const std::string& flag) {
  for (const auto& a : args)
    if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
  return false;
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Sequence-space evidence toolkit: Lorentz window statistics, Cesàro means, membership "
               "classification, algebrability and porosity witnesses, Monte Carlo measure checks.",
               kToolName};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.footer(kFooter);
  app.set_version_flag("--version", kToolVersion);
  std::string config_path;
  app.add_option("--config", config_path, "flat key = value file mirroring the flags");

  std::map<std::string, std::function<Outcome(const Options&)>> handlers;

  auto* gen = app.add_subcommand("gen", "emit the first N terms");
  add_sequence_options(gen, o);
  gen->add_option("--explike", o.explike, "apply f = sum alpha exp(beta x), given as alpha:beta,...");
  add_output_options(gen, o, {"json", "csv", "lines"});
  handlers["gen"] = cmd_gen;

  auto* tr = app.add_subcommand("transform", "apply an exponential-like f elementwise");
  add_sequence_options(tr, o);
  tr->add_option("--explike", o.explike, "alpha:beta,...")->required();
  add_output_options(tr, o, {"json", "csv", "lines"});
  handlers["transform"] = cmd_transform;

  auto* prof = app.add_subcommand("profile", "window extremes p_n, q_n and Cesàro means");
  add_sequence_options(prof, o);
  prof->add_option("--explike", o.explike, "apply f before profiling");
  prof->add_option("--dense-top", o.dense_top, "extra window lengths between the last power of two and N/4");
  add_output_options(prof, o, {"json", "csv"});
  handlers["profile"] = cmd_profile;

  auto* cls = app.add_subcommand("classify", "membership evidence for c0, c, chat, chat0, S, S0");
  add_sequence_options(cls, o);
  cls->add_option("--explike", o.explike, "apply f before classifying");
  cls->add_option("--tol", o.tol, "verdict tolerance")->check(CLI::PositiveNumber);
  cls->add_option("--tail-fraction", o.tail_fraction, "share of the schedule used for the bracket");
  cls->add_option("--dense-top", o.dense_top, "extra window lengths");
  add_output_options(cls, o, {"json"});
  handlers["classify"] = cmd_classify;

  auto* ban = app.add_subcommand("banach-interval", "bracket [lim q_n, lim p_n] of all Banach limits");
  add_sequence_options(ban, o);
  ban->add_option("--explike", o.explike, "apply f first");
  ban->add_option("--tol", o.tol, "drift tolerance for the stable window range")->check(CLI::PositiveNumber);
  ban->add_option("--tail-fraction", o.tail_fraction, "share of the schedule used");
  ban->add_option("--dense-top", o.dense_top, "extra window lengths");
  add_output_options(ban, o, {"json"});
  handlers["banach-interval"] = cmd_banach;

  auto* pre = app.add_subcommand("preimage-count", "roots of f(x) = c on [lo, hi]");
  pre->add_option("--explike", o.explike, "alpha:beta,...")->required();
  pre->add_option("--level", o.level, "the level c");
  pre->add_option("--lo", o.lo, "left end");
  pre->add_option("--hi", o.hi, "right end");
  pre->add_option("--grid", o.grid, "grid points");
  add_output_options(pre, o, {"json"});
  handlers["preimage-count"] = cmd_preimage;

  auto* alg = app.add_subcommand("algebra-witness", "numerical free-algebra and membership witness");
  add_sequence_options(alg, o);
  alg->add_option("--betas", o.betas, "generator exponents: integers, p/q, decimals, sqrt(k)");
  alg->add_option("--degree", o.degree, "maximal monomial degree")->check(CLI::PositiveNumber);
  alg->add_option("--tol", o.witness_tol, "threshold on sigma_min of the normalized Gram matrix");
  alg->add_option("--classify-tol", o.classify_tol, "tolerance of the membership checks");
  alg->add_option("--combinations", o.combinations, "random linear combinations checked");
  alg->add_option("--seed", o.seed, "seed for the combinations");
  add_output_options(alg, o, {"json", "csv"});
  handlers["algebra-witness"] = cmd_algebra;

  auto* por = app.add_subcommand("porosity", "emit a porosity witness certificate");
  add_sequence_options(por, o);
  por->add_option("--pair", o.pair, "c_in_chat, chat_in_S or S_in_linf");
  por->add_option("--r", o.r, "radius r")->check(CLI::PositiveNumber);
  por->add_option("--alpha", o.alpha, "ratio alpha in (0, 1)");
  por->add_flag("--zero-limit", o.zero_limit, "use c0, chat0, S0 as the smaller space");
  por->add_option("--evidence-len", o.evidence_len, "terms used to check the base");
  add_output_options(por, o, {"json"});
  handlers["porosity"] = cmd_porosity;

  auto* ver = app.add_subcommand("verify-cert", "sample the witness ball of a certificate");
  ver->add_option("--cert", o.cert, "certificate JSON (porosity output)")->required();
  ver->add_option("--len", o.len, "truncation length (default 10000)");
  ver->add_option("--samples", o.samples, "ball samples")->check(CLI::PositiveNumber);
  ver->add_option("--seed", o.seed, "sampling seed");
  add_output_options(ver, o, {"json"});
  handlers["verify-cert"] = cmd_verify;

  auto* lln = app.add_subcommand("mc-lln", "spread of Cesàro means of uniform(-1/2, 1/2) prefixes");
  lln->add_option("--len", o.len, "prefix length N (default 4096)");
  lln->add_option("--trials", o.trials, "trials")->check(CLI::PositiveNumber);
  lln->add_option("--seed", o.seed, "seed");
  lln->add_option("--sampler", o.sampler, "uniform or zero");
  lln->add_option("--traces", o.traces, "write per-trial traces as CSV here");
  add_output_options(lln, o, {"json"});
  handlers["mc-lln"] = cmd_mc_lln;

  auto* blk = app.add_subcommand("mc-blocks", "geometric decay of runs of low block averages");
  blk->add_option("--block-size", o.block_size, "block size N_b")->check(CLI::PositiveNumber);
  blk->add_option("--m-max", o.m_max, "largest run length M")->check(CLI::PositiveNumber);
  blk->add_option("--trials", o.trials, "trials")->check(CLI::PositiveNumber);
  blk->add_option("--seed", o.seed, "seed");
  add_output_options(blk, o, {"json"});
  handlers["mc-blocks"] = cmd_mc_blocks;

  std::vector<std::string> args = raw_args;
  try {
    // --config is merged by hand so flat keys reach the chosen subcommand.
    for (std::size_t i = 0; i < args.size(); ++i) {
      std::string path;
      std::size_t erase = 0;
      if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1], erase = 2;
      if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9), erase = 1;
      if (erase == 0) continue;
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i),
                 args.begin() + static_cast<std::ptrdiff_t>(i + erase));
      CLI::App* sub = nullptr;
      for (const auto& a : args)
        if (handlers.count(a)) {
          sub = app.get_subcommand(a);
          break;
        }
      if (sub == nullptr) throw CLI::ValidationError("--config", "needs a subcommand");
      for (const auto& [key, val] : read_config(path)) {
        const std::string flag = "--" + key;
        const CLI::Option* opt = sub->get_option_no_throw(flag);
        if (opt == nullptr) throw CLI::ValidationError("--config", "unknown key '" + key + "'");
        if (mentions(args, flag)) continue;
        if (opt->get_expected_min() == 0) {
          if (val == "true" || val == "1") args.push_back(flag);
        } else {
          args.push_back(flag);
          args.push_back(val);
        }
      }
      break;
    }
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    err << app.help();
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  json config = json::object();
  for (const CLI::Option* opt : sub->get_options()) {
    if (opt->get_lnames().empty()) continue;
    const std::string key = opt->get_lnames().front();
    if (is_run_option(key)) continue;
    if (opt->count() > 0)
      config[key] = opt->get_expected_min() == 0 ? "true" : opt->results().back();
    else
      config[key] = opt->get_default_str();
  }

  kernels::set_threads(o.threads);
  const auto start = std::chrono::steady_clock::now();
  Outcome outcome;
  try {
    outcome = handlers.at(name)(o);
  } catch (const InsufficientLength& e) {
    err << "error: " << e.what() << " (required N = " << e.required() << ")\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  std::string text;
  if (!outcome.csv.empty() && o.format != "json") {
    text = outcome.csv;
  } else {
    json report{{"tool", kToolName}, {"version", kToolVersion}, {"command", name}, {"config", config}};
    if (sub->get_option_no_throw("--seed") != nullptr) report["seed"] = o.seed;
    report["result"] = outcome.result;
    report["run"] = {{"threads", kernels::max_threads()}, {"runtime_seconds", seconds}};
    text = report.dump(2) + "\n";
  }
  if (o.out.empty()) {
    out << text;
  } else {
    std::ofstream f(o.out);
    if (!f) {
      err << "error: cannot write '" << o.out << "'\n";
      return kUsage;
    }
    f << text;
  }
  return outcome.code;
}

}  // namespace seqlab::cli
