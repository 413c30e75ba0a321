#include "seqlab/sequence.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace seqlab {

namespace {

using u128 = unsigned __int128;
constexpr std::uint64_t kU64Max = std::numeric_limits<std::uint64_t>::max();

// j^j blocks are capped at j = 13 (13^13 ~ 3.0e14).
constexpr std::uint64_t kPowerBlockMaxJ = 13;
// a_n stays an exact dyadic in double up to level 52.
constexpr std::uint64_t kDyadicMaxN = (std::uint64_t{1} << 52) + 1;
constexpr std::uint64_t kDiagonalMaxN = std::uint64_t{1} << 62;

std::uint64_t isqrt(u128 v) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(v)));
  while (static_cast<u128>(r) * r > v) --r;
  while (static_cast<u128>(r + 1) * (r + 1) <= v) ++r;
  return r;
}

// Power j^j in 128 bits, saturating at 2^127.
u128 power_self(std::uint64_t j) {
  u128 acc = 1;
  const u128 limit = u128{1} << 126;
  for (std::uint64_t i = 0; i < j; ++i) {
    acc *= j;
    if (acc > limit) return limit << 1;
  }
  return acc;
}

enum class Scheme { None, Example, Triangular, RunBlocks, PowerBlocks };

Scheme scheme_of(const spec::Node& node) {
  if (std::holds_alternative<spec::ExampleSNotChat>(node)) return Scheme::Example;
  if (std::holds_alternative<spec::ZchatMinusC>(node)) return Scheme::Triangular;
  if (std::holds_alternative<spec::ZSMinusChat>(node)) return Scheme::RunBlocks;
  if (std::holds_alternative<spec::ZLinfMinusS>(node) ||
      std::holds_alternative<spec::PowerBlockSign>(node))
    return Scheme::PowerBlocks;
  return Scheme::None;
}

// m_j in 128 bits; nullopt when the scheme does not define it for this j.
std::optional<u128> raw_boundary(Scheme s, std::uint64_t j) {
  if (j == 0) return u128{0};
  const u128 jj = j;
  switch (s) {
    case Scheme::Example:  // m_j = m_{j-1} + j + 2^j
      if (j > 120) return std::nullopt;
      return jj * (jj + 1) / 2 + (u128{1} << (j + 1)) - 2;
    case Scheme::Triangular:  // m_j = m_{j-1} + j, m_1 = 1
      return jj * (jj + 1) / 2;
    case Scheme::RunBlocks:  // m_j = m_{j-1} + j - 1 + 2^(j-1), m_1 = 1
      if (j > 120) return std::nullopt;
      return (u128{1} << j) - 1 + jj * (jj - 1) / 2;
    case Scheme::PowerBlocks:
      if (j > kPowerBlockMaxJ) return std::nullopt;
      return power_self(j);
    case Scheme::None:
      break;
  }
  return std::nullopt;
}

// Largest j whose m_j fits in 64 bits (and respects the scheme cap).
std::uint64_t max_block_index(Scheme s) {
  if (s == Scheme::PowerBlocks) return kPowerBlockMaxJ;
  if (s == Scheme::Triangular) {
    // j(j+1)/2 <= 2^64 - 1
    std::uint64_t j = isqrt(u128{2} * kU64Max);
    while (static_cast<u128>(j) * (j + 1) / 2 > kU64Max) --j;
    return j;
  }
  std::uint64_t j = 1;
  while (true) {
    auto m = raw_boundary(s, j + 1);
    if (!m || *m > kU64Max) return j;
    ++j;
  }
}

class ConstantStream final : public TermStream {
 public:
  explicit ConstantStream(double v) : v_(v) {}
  void fill(std::span<double> out) override { std::fill(out.begin(), out.end(), v_); }

 private:
  double v_;
};

class AltSignStream final : public TermStream {
 public:
  void fill(std::span<double> out) override {
    for (double& x : out) x = (++n_ % 2 == 1) ? -1.0 : 1.0;
  }

 private:
  std::uint64_t n_ = 0;
};

class DyadicStream final : public TermStream {
 public:
  void fill(std::span<double> out) override {
    for (double& x : out) x = a_term(++n_);
  }

 private:
  std::uint64_t n_ = 0;
};

class DiagonalStream final : public TermStream {
 public:
  void fill(std::span<double> out) override {
    for (double& x : out) {
      if (++pos_ > row_) {
        ++row_;
        pos_ = 1;
      }
      x = a_term(pos_);
    }
  }

 private:
  std::uint64_t row_ = 1;
  std::uint64_t pos_ = 0;
};

class ExampleStream final : public TermStream {
 public:
  void fill(std::span<double> out) override {
    for (double& x : out) {
      if (zeros_left_ == 0 && ones_left_ == 0) {
        ++j_;
        zeros_left_ = j_;
        ones_left_ = std::uint64_t{1} << j_;
      }
      if (zeros_left_ > 0) {
        --zeros_left_;
        x = 0.0;
      } else {
        --ones_left_;
        x = 1.0;
      }
    }
  }

 private:
  std::uint64_t j_ = 1;
  std::uint64_t zeros_left_ = 1;
  std::uint64_t ones_left_ = 2;
};

class TriangularStream final : public TermStream {
 public:
  void fill(std::span<double> out) override {
    for (double& x : out) {
      if (++n_ == next_) {
        x = b_term(j_);
        ++j_;
        next_ += j_;
      } else {
        x = 0.0;
      }
    }
  }

 private:
  std::uint64_t n_ = 0;
  std::uint64_t j_ = 1;
  std::uint64_t next_ = 1;
};

class RunBlockStream final : public TermStream {
 public:
  void fill(std::span<double> out) override {
    for (double& x : out) {
      ++n_;
      if (n_ < start_) {
        x = 0.0;
        continue;
      }
      x = value_;
      if (n_ == start_ + j_ - 1) {
        start_ += j_ + (std::uint64_t{1} << j_);
        ++j_;
        value_ = b_term(j_);
      }
    }
  }

 private:
  std::uint64_t n_ = 0;
  std::uint64_t j_ = 1;
  std::uint64_t start_ = 1;
  double value_ = 1.0;
};

template <typename ValueOf>
class PowerBlockStream final : public TermStream {
 public:
  explicit PowerBlockStream(ValueOf value_of) : value_of_(value_of), value_(value_of(1)) {}
  void fill(std::span<double> out) override {
    for (double& x : out) {
      if (++n_ > end_) {
        ++j_;
        const u128 m = power_self(j_);
        end_ = m > kU64Max ? kU64Max : static_cast<std::uint64_t>(m);
        value_ = value_of_(j_);
      }
      x = value_;
    }
  }

 private:
  ValueOf value_of_;
  std::uint64_t n_ = 0;
  std::uint64_t j_ = 1;
  std::uint64_t end_ = 1;
  double value_;
};

class ShiftedStream final : public TermStream {
 public:
  ShiftedStream(std::unique_ptr<TermStream> inner, std::uint64_t k)
      : inner_(std::move(inner)), skip_(k) {}
  void fill(std::span<double> out) override {
    if (skip_ > 0) {
      std::vector<double> scratch(static_cast<std::size_t>(std::min<std::uint64_t>(skip_, 1 << 16)));
      while (skip_ > 0) {
        const auto take = static_cast<std::size_t>(std::min<std::uint64_t>(skip_, scratch.size()));
        inner_->fill(std::span<double>(scratch.data(), take));
        skip_ -= take;
      }
    }
    inner_->fill(out);
  }

 private:
  std::unique_ptr<TermStream> inner_;
  std::uint64_t skip_;
};

class AffineStream final : public TermStream {
 public:
  AffineStream(std::unique_ptr<TermStream> inner, double scale, double offset)
      : inner_(std::move(inner)), scale_(scale), offset_(offset) {}
  void fill(std::span<double> out) override {
    inner_->fill(out);
    for (double& x : out) x = scale_ * x + offset_;
  }

 private:
  std::unique_ptr<TermStream> inner_;
  double scale_;
  double offset_;
};

class CustomStream final : public TermStream {
 public:
  explicit CustomStream(std::shared_ptr<const std::vector<double>> values)
      : values_(std::move(values)) {}
  void fill(std::span<double> out) override {
    if (out.size() > values_->size() - pos_)
      throw std::out_of_range("custom sequence exhausted: only " +
                              std::to_string(values_->size()) + " values available");
    std::copy_n(values_->begin() + static_cast<std::ptrdiff_t>(pos_), out.size(), out.begin());
    pos_ += out.size();
  }

 private:
  std::shared_ptr<const std::vector<double>> values_;
  std::size_t pos_ = 0;
};

template <class... Ts>
struct Overloaded : Ts... { using Ts::operator()...; };
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string format_real(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

double a_term(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("a_term: index must be >= 1");
  if (n == 1) return 1.0;
  if (n == 2) return 2.0;
  if (n > kDyadicMaxN)
    throw std::overflow_error("a_term: index beyond exact dyadic range; largest supported n is " +
                              std::to_string(kDyadicMaxN));
  const std::uint64_t t = n - 2;
  const int k = std::bit_width(t);  // 2^(k-1) <= t < 2^k
  const std::uint64_t i = t - (std::uint64_t{1} << (k - 1)) + 1;
  return 1.0 + std::ldexp(static_cast<double>(2 * i - 1), -k);
}

double b_term(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("b_term: index must be >= 1");
  // Row r is the smallest with r(r+1)/2 >= n.
  std::uint64_t r = (isqrt(u128{8} * n + 1) - 1) / 2;
  while (static_cast<u128>(r) * (r + 1) / 2 < n) ++r;
  while (r > 1 && static_cast<u128>(r - 1) * r / 2 >= n) --r;
  return a_term(n - static_cast<std::uint64_t>(static_cast<u128>(r) * (r - 1) / 2));
}

SequenceSpec SequenceSpec::constant(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("constant: value must be finite");
  return SequenceSpec(spec::Constant{value});
}

SequenceSpec SequenceSpec::shifted(SequenceSpec inner, std::uint64_t k) {
  return SequenceSpec(spec::Shifted{std::make_shared<const SequenceSpec>(std::move(inner)), k});
}

SequenceSpec SequenceSpec::affine(SequenceSpec inner, double scale, double offset) {
  if (!std::isfinite(scale) || !std::isfinite(offset))
    throw std::invalid_argument("affine: scale and offset must be finite");
  return SequenceSpec(
      spec::Affine{std::make_shared<const SequenceSpec>(std::move(inner)), scale, offset});
}

SequenceSpec SequenceSpec::custom(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("custom: value list is empty");
  for (std::size_t i = 0; i < values.size(); ++i)
    if (!std::isfinite(values[i]))
      throw std::invalid_argument("custom: non-finite value at index " + std::to_string(i + 1));
  return SequenceSpec(spec::Custom{std::make_shared<const std::vector<double>>(std::move(values))});
}

std::string SequenceSpec::name() const {
  return std::visit(
      Overloaded{
          [](const spec::Constant&) { return std::string("constant"); },
          [](const spec::AltSign&) { return std::string("alt-sign"); },
          [](const spec::DyadicA&) { return std::string("dyadic-a"); },
          [](const spec::DiagonalB&) { return std::string("diagonal-b"); },
          [](const spec::ExampleSNotChat&) { return std::string("example-s-not-chat"); },
          [](const spec::ZchatMinusC&) { return std::string("z-chat-minus-c"); },
          [](const spec::ZSMinusChat&) { return std::string("z-s-minus-chat"); },
          [](const spec::ZLinfMinusS&) { return std::string("z-linf-minus-s"); },
          [](const spec::PowerBlockSign&) { return std::string("power-block-sign"); },
          [](const spec::Shifted&) { return std::string("shifted"); },
          [](const spec::Affine&) { return std::string("affine"); },
          [](const spec::Custom&) { return std::string("custom"); },
      },
      node_);
}

std::string SequenceSpec::describe() const {
  return std::visit(
      Overloaded{
          [](const spec::Constant& c) { return "constant(" + format_real(c.value) + ")"; },
          [](const spec::Shifted& s) {
            return "shifted(" + s.inner->describe() + ", " + std::to_string(s.k) + ")";
          },
          [](const spec::Affine& a) {
            return "affine(" + a.inner->describe() + ", " + format_real(a.scale) + ", " +
                   format_real(a.offset) + ")";
          },
          [](const spec::Custom& c) {
            return "custom(" + std::to_string(c.values->size()) + " values)";
          },
          [this](const auto&) { return name(); },
      },
      node_);
}

bool operator==(const SequenceSpec& a, const SequenceSpec& b) {
  if (a.node_.index() != b.node_.index()) return false;
  return std::visit(
      Overloaded{
          [&](const spec::Constant& x) { return x.value == std::get<spec::Constant>(b.node_).value; },
          [&](const spec::Shifted& x) {
            const auto& y = std::get<spec::Shifted>(b.node_);
            return x.k == y.k && *x.inner == *y.inner;
          },
          [&](const spec::Affine& x) {
            const auto& y = std::get<spec::Affine>(b.node_);
            return x.scale == y.scale && x.offset == y.offset && *x.inner == *y.inner;
          },
          [&](const spec::Custom& x) {
            return *x.values == *std::get<spec::Custom>(b.node_).values;
          },
          [](const auto&) { return true; },
      },
      a.node_);
}

std::unique_ptr<TermStream> open_stream(const SequenceSpec& s) {
  return std::visit(
      Overloaded{
          [](const spec::Constant& c) -> std::unique_ptr<TermStream> {
            return std::make_unique<ConstantStream>(c.value);
          },
          [](const spec::AltSign&) -> std::unique_ptr<TermStream> {
            return std::make_unique<AltSignStream>();
          },
          [](const spec::DyadicA&) -> std::unique_ptr<TermStream> {
            return std::make_unique<DyadicStream>();
          },
          [](const spec::DiagonalB&) -> std::unique_ptr<TermStream> {
            return std::make_unique<DiagonalStream>();
          },
          [](const spec::ExampleSNotChat&) -> std::unique_ptr<TermStream> {
            return std::make_unique<ExampleStream>();
          },
          [](const spec::ZchatMinusC&) -> std::unique_ptr<TermStream> {
            return std::make_unique<TriangularStream>();
          },
          [](const spec::ZSMinusChat&) -> std::unique_ptr<TermStream> {
            return std::make_unique<RunBlockStream>();
          },
          [](const spec::ZLinfMinusS&) -> std::unique_ptr<TermStream> {
            auto value_of = [](std::uint64_t j) { return b_term(j); };
            return std::make_unique<PowerBlockStream<decltype(value_of)>>(value_of);
          },
          [](const spec::PowerBlockSign&) -> std::unique_ptr<TermStream> {
            auto value_of = [](std::uint64_t j) { return j % 2 == 1 ? 1.0 : -1.0; };
            return std::make_unique<PowerBlockStream<decltype(value_of)>>(value_of);
          },
          [](const spec::Shifted& sh) -> std::unique_ptr<TermStream> {
            return std::make_unique<ShiftedStream>(open_stream(*sh.inner), sh.k);
          },
          [](const spec::Affine& a) -> std::unique_ptr<TermStream> {
            return std::make_unique<AffineStream>(open_stream(*a.inner), a.scale, a.offset);
          },
          [](const spec::Custom& c) -> std::unique_ptr<TermStream> {
            return std::make_unique<CustomStream>(c.values);
          },
      },
      s.node());
}

std::uint64_t max_length(const SequenceSpec& s) {
  return std::visit(
      Overloaded{
          [](const spec::DyadicA&) { return kDyadicMaxN; },
          [](const spec::DiagonalB&) { return kDiagonalMaxN; },
          [](const spec::Shifted& sh) {
            const std::uint64_t inner = max_length(*sh.inner);
            return inner > sh.k ? inner - sh.k : std::uint64_t{0};
          },
          [](const spec::Affine& a) { return max_length(*a.inner); },
          [](const spec::Custom& c) { return static_cast<std::uint64_t>(c.values->size()); },
          [&s](const auto&) {
            const Scheme scheme = scheme_of(s.node());
            if (scheme == Scheme::None) return kU64Max;
            return static_cast<std::uint64_t>(*raw_boundary(scheme, max_block_index(scheme)));
          },
      },
      s.node());
}

std::optional<std::uint64_t> block_boundary(const SequenceSpec& s, std::uint64_t j) {
  if (const auto* a = std::get_if<spec::Affine>(&s.node())) return block_boundary(*a->inner, j);
  const Scheme scheme = scheme_of(s.node());
  if (scheme == Scheme::None) return std::nullopt;
  const std::uint64_t jmax = max_block_index(scheme);
  if (j > jmax)
    throw std::overflow_error(s.name() + ": block index " + std::to_string(j) +
                              " exceeds the supported range (j <= " + std::to_string(jmax) +
                              ", largest supported N is " +
                              std::to_string(static_cast<std::uint64_t>(*raw_boundary(scheme, jmax))) +
                              ")");
  return static_cast<std::uint64_t>(*raw_boundary(scheme, j));
}

std::vector<std::uint64_t> block_boundaries(const SequenceSpec& s, std::uint64_t n_max) {
  if (const auto* a = std::get_if<spec::Affine>(&s.node())) return block_boundaries(*a->inner, n_max);
  std::vector<std::uint64_t> out;
  const Scheme scheme = scheme_of(s.node());
  if (scheme == Scheme::None) return out;
  const std::uint64_t jmax = max_block_index(scheme);
  for (std::uint64_t j = 1; j <= jmax; ++j) {
    const auto m = raw_boundary(scheme, j);
    if (!m || *m > n_max) break;
    out.push_back(static_cast<std::uint64_t>(*m));
  }
  return out;
}

Truncation generate(const SequenceSpec& s, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("generate: truncation length must be >= 1");
  const std::uint64_t cap = max_length(s);
  if (n > cap)
    throw std::overflow_error("generate: " + s.describe() + " supports N <= " + std::to_string(cap) +
                              " (requested " + std::to_string(n) + ")");
  Truncation t{std::vector<double>(static_cast<std::size_t>(n)), s, {}};
  open_stream(s)->fill(t.values);
  for (std::size_t i = 0; i < t.values.size(); ++i)
    if (!std::isfinite(t.values[i]))
      throw std::overflow_error("generate: non-finite value at index " + std::to_string(i + 1));
  return t;
}

Truncation shift(const Truncation& t, std::uint64_t k) {
  if (k >= t.size())
    throw std::invalid_argument("shift: k = " + std::to_string(k) +
                                " must be smaller than N = " + std::to_string(t.size()));
  Truncation out;
  out.values.assign(t.values.begin() + static_cast<std::ptrdiff_t>(k), t.values.end());
  out.spec = SequenceSpec::shifted(t.spec, k);
  out.transforms = t.transforms;
  return out;
}

}  // namespace seqlab
