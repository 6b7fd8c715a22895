#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mtg/structure.hpp"

namespace mtg {

/// Exit codes of run_command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_command(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// `corpus:NAME` or a path to a structure file.
Structure resolve_structure(const std::string& source);

/// Comma-separated element names; "" is the empty set, ALL the universe.
ElementSet parse_element_set(const Structure& m, const std::string& text);
Tuple parse_tuple(const Structure& m, const std::string& text);
/// Tuples separated by ';', entries by ','.
TupleSet parse_tuple_set(const Structure& m, const std::string& text);

}  // namespace mtg
