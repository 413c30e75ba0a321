#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "seqlab/sequence.hpp"

namespace seqlab {

// Shortest decimal representation that round-trips to the same double.
std::string format_double(double v);
double parse_double(std::string_view text);

// Parameterless variants by kebab-case name ("alt-sign", "z-chat-minus-c", ...).
// Throws std::invalid_argument for unknown names or variants that need parameters.
SequenceSpec spec_from_name(std::string_view name);

// Key-value descriptor block, one `key = value` per line. Nested descriptors
// use an `inner.` key prefix; custom values are a comma separated list.
//
//   variant = affine
//   scale = 2
//   offset = -1
//   inner.variant = example-s-not-chat
std::string to_descriptor(const SequenceSpec& spec);
SequenceSpec from_descriptor(std::string_view text);

enum class ValueFormat { Lines, Csv };

// Lines: one value per line. Csv: header `n,value` then `index,value` rows.
void write_values(std::ostream& os, std::span<const double> values, ValueFormat format);

// Accepts either layout; for CSV rows the last column is the value.
std::vector<double> read_values(std::istream& is);

}  // namespace seqlab
