#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace seqlab::cli {

inline constexpr const char* kToolName = "seqlab";
inline constexpr const char* kToolVersion = "1.0.0";

enum ExitCode : int { kOk = 0, kVerdictFail = 1, kUsage = 2 };

// args excludes the program name. Reports go to `out` unless --out is given;
// errors and usage text go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace seqlab::cli
