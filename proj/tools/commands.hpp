#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace goh::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitCertificate = 2;

// Runs one command line (without the program name). Frame input is read
// from `in` unless --input names a file. Returns the exit status.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace goh::cli
