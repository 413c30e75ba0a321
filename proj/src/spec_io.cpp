#include "seqlab/spec_io.hpp"

#include <charconv>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace seqlab {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

using KeyValues = std::map<std::string, std::string, std::less<>>;

const std::string& require(const KeyValues& kv, const std::string& key) {
  auto it = kv.find(key);
  if (it == kv.end()) throw std::invalid_argument("descriptor: missing key '" + key + "'");
  return it->second;
}

std::uint64_t parse_index(std::string_view text) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw std::invalid_argument("not a non-negative integer: '" + std::string(text) + "'");
  return v;
}

void emit(std::ostringstream& os, const SequenceSpec& s, const std::string& prefix) {
  os << prefix << "variant = " << s.name() << '\n';
  if (const auto* c = std::get_if<spec::Constant>(&s.node())) {
    os << prefix << "value = " << format_double(c->value) << '\n';
  } else if (const auto* sh = std::get_if<spec::Shifted>(&s.node())) {
    os << prefix << "k = " << sh->k << '\n';
    emit(os, *sh->inner, prefix + "inner.");
  } else if (const auto* a = std::get_if<spec::Affine>(&s.node())) {
    os << prefix << "scale = " << format_double(a->scale) << '\n';
    os << prefix << "offset = " << format_double(a->offset) << '\n';
    emit(os, *a->inner, prefix + "inner.");
  } else if (const auto* cu = std::get_if<spec::Custom>(&s.node())) {
    os << prefix << "values = ";
    for (std::size_t i = 0; i < cu->values->size(); ++i)
      os << (i ? "," : "") << format_double((*cu->values)[i]);
    os << '\n';
  }
}

SequenceSpec build(const KeyValues& kv, const std::string& prefix) {
  const std::string& variant = require(kv, prefix + "variant");
  if (variant == "constant") return SequenceSpec::constant(parse_double(require(kv, prefix + "value")));
  if (variant == "shifted")
    return SequenceSpec::shifted(build(kv, prefix + "inner."), parse_index(require(kv, prefix + "k")));
  if (variant == "affine")
    return SequenceSpec::affine(build(kv, prefix + "inner."),
                                parse_double(require(kv, prefix + "scale")),
                                parse_double(require(kv, prefix + "offset")));
  if (variant == "custom") {
    std::vector<double> values;
    std::string_view rest = require(kv, prefix + "values");
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      values.push_back(parse_double(trim(rest.substr(0, comma))));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    return SequenceSpec::custom(std::move(values));
  }
  return spec_from_name(variant);
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
  return std::string(buf, ptr);
}

double parse_double(std::string_view text) {
  text = trim(text);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw std::invalid_argument("not a real number: '" + std::string(text) + "'");
  return v;
}

SequenceSpec spec_from_name(std::string_view name) {
  if (name == "alt-sign") return SequenceSpec::alt_sign();
  if (name == "dyadic-a") return SequenceSpec::dyadic_a();
  if (name == "diagonal-b") return SequenceSpec::diagonal_b();
  if (name == "example-s-not-chat") return SequenceSpec::example_s_not_chat();
  if (name == "z-chat-minus-c") return SequenceSpec::z_chat_minus_c();
  if (name == "z-s-minus-chat") return SequenceSpec::z_s_minus_chat();
  if (name == "z-linf-minus-s") return SequenceSpec::z_linf_minus_s();
  if (name == "power-block-sign") return SequenceSpec::power_block_sign();
  if (name == "constant" || name == "shifted" || name == "affine" || name == "custom")
    throw std::invalid_argument("sequence '" + std::string(name) + "' needs parameters");
  throw std::invalid_argument("unknown sequence '" + std::string(name) + "'");
}

std::string to_descriptor(const SequenceSpec& s) {
  std::ostringstream os;
  emit(os, s, "");
  return os.str();
}

SequenceSpec from_descriptor(std::string_view text) {
  KeyValues kv;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw std::invalid_argument("descriptor line " + std::to_string(line_no) + ": expected key = value");
    kv.emplace(std::string(trim(line.substr(0, eq))), std::string(trim(line.substr(eq + 1))));
  }
  return build(kv, "");
}

void write_values(std::ostream& os, std::span<const double> values, ValueFormat format) {
  if (format == ValueFormat::Csv) {
    os << "n,value\n";
    for (std::size_t i = 0; i < values.size(); ++i) os << (i + 1) << ',' << format_double(values[i]) << '\n';
  } else {
    for (double v : values) os << format_double(v) << '\n';
  }
}

std::vector<double> read_values(std::istream& is) {
  std::vector<double> out;
  std::string line;
  bool first = true;
  while (std::getline(is, line)) {
    std::string_view view = trim(line);
    if (view.empty() || view.front() == '#') continue;
    const auto comma = view.rfind(',');
    std::string_view field = comma == std::string_view::npos ? view : trim(view.substr(comma + 1));
    if (first && field == "value") {
      first = false;
      continue;
    }
    first = false;
    out.push_back(parse_double(field));
  }
  return out;
}

}  // namespace seqlab
