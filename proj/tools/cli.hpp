#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace homolpn::cli {

// Stable exit codes.
inline constexpr int exit_ok = 0;
inline constexpr int exit_criteria = 1;
inline constexpr int exit_input = 2;
inline constexpr int exit_protocol = 3;
inline constexpr int exit_resource = 4;

inline constexpr const char* version = "0.1.0";

// Runs one command. args excludes the program name, e.g. {"build", "--l", "2"}.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace homolpn::cli
