#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace seqlab {

// Terms of the dense dyadic enumeration of [1, 2]:
// a_1 = 1, a_2 = 2, then level k >= 1 lists (2^k + 2i - 1) / 2^k for i = 1..2^(k-1).
double a_term(std::uint64_t n);

// Diagonal enumeration of (a_n): row r lists a_1..a_r.
double b_term(std::uint64_t n);

class SequenceSpec;

namespace spec {

struct Constant { double value = 0.0; };
struct AltSign {};            // x_n = (-1)^n
struct DyadicA {};            // x_n = a_n
struct DiagonalB {};          // x_n = b_n
struct ExampleSNotChat {};    // block j: j zeros then 2^j ones
struct ZchatMinusC {};        // b_j at n = j(j+1)/2, zero elsewhere
struct ZSMinusChat {};        // j copies of b_j starting at m_j = 2^j - 1 + j(j-1)/2
struct ZLinfMinusS {};        // b_j on (m_{j-1}, m_j], m_j = j^j
struct PowerBlockSign {};     // (-1)^(j+1) on (m_{j-1}, m_j], m_j = j^j
struct Shifted {
  std::shared_ptr<const SequenceSpec> inner;
  std::uint64_t k = 0;
};
struct Affine {
  std::shared_ptr<const SequenceSpec> inner;
  double scale = 1.0;
  double offset = 0.0;
};
struct Custom { std::shared_ptr<const std::vector<double>> values; };

using Node = std::variant<Constant, AltSign, DyadicA, DiagonalB, ExampleSNotChat,
                          ZchatMinusC, ZSMinusChat, ZLinfMinusS, PowerBlockSign,
                          Shifted, Affine, Custom>;

}  // namespace spec

/// Declarative descriptor of an infinite real sequence indexed from n = 1.
///
/// Immutable value type; nested variants share their inner descriptor.
class SequenceSpec {
 public:
  SequenceSpec() : node_(spec::Constant{0.0}) {}

  static SequenceSpec constant(double value);
  static SequenceSpec alt_sign() { return SequenceSpec(spec::AltSign{}); }
  static SequenceSpec dyadic_a() { return SequenceSpec(spec::DyadicA{}); }
  static SequenceSpec diagonal_b() { return SequenceSpec(spec::DiagonalB{}); }
  static SequenceSpec example_s_not_chat() { return SequenceSpec(spec::ExampleSNotChat{}); }
  static SequenceSpec z_chat_minus_c() { return SequenceSpec(spec::ZchatMinusC{}); }
  static SequenceSpec z_s_minus_chat() { return SequenceSpec(spec::ZSMinusChat{}); }
  static SequenceSpec z_linf_minus_s() { return SequenceSpec(spec::ZLinfMinusS{}); }
  static SequenceSpec power_block_sign() { return SequenceSpec(spec::PowerBlockSign{}); }
  static SequenceSpec shifted(SequenceSpec inner, std::uint64_t k);
  static SequenceSpec affine(SequenceSpec inner, double scale, double offset);
  static SequenceSpec custom(std::vector<double> values);

  const spec::Node& node() const { return node_; }

  template <typename T>
  bool is() const { return std::holds_alternative<T>(node_); }

  // Kebab-case variant name, e.g. "z-chat-minus-c".
  std::string name() const;
  // One-line human readable description including parameters.
  std::string describe() const;

  friend bool operator==(const SequenceSpec& a, const SequenceSpec& b);

 private:
  explicit SequenceSpec(spec::Node node) : node_(std::move(node)) {}
  spec::Node node_;
};

/// Finite prefix x_1..x_N of a sequence.
///
/// `transforms` lists elementwise maps applied after generation, in order;
/// regenerating `spec` and re-applying them reproduces `values` bit-identically.
struct Truncation {
  std::vector<double> values;
  SequenceSpec spec;
  std::vector<std::string> transforms;

  std::size_t size() const { return values.size(); }
  std::span<const double> view() const { return values; }
};

/// Pull-based stream over the terms of a sequence. O(1) state per variant.
class TermStream {
 public:
  virtual ~TermStream() = default;
  // Writes the next out.size() terms.
  virtual void fill(std::span<double> out) = 0;
};

std::unique_ptr<TermStream> open_stream(const SequenceSpec& spec);

// Largest N for which generate() is supported.
std::uint64_t max_length(const SequenceSpec& spec);

// Block boundary m_j of the variant's block scheme, or nullopt when the
// variant has none. Throws std::overflow_error when m_j is not representable.
std::optional<std::uint64_t> block_boundary(const SequenceSpec& spec, std::uint64_t j);

// All block boundaries m_j <= n_max, ascending (empty for unblocked variants).
std::vector<std::uint64_t> block_boundaries(const SequenceSpec& spec, std::uint64_t n_max);

Truncation generate(const SequenceSpec& spec, std::uint64_t n);

// (x_{k+1}, ..., x_N); requires k < N.
Truncation shift(const Truncation& t, std::uint64_t k);

}  // namespace seqlab
