#pragma once

#include <string>
#include <string_view>

#include "wpbisim/automaton.hpp"

namespace wpb {

/// Reads the line-oriented automaton format:
///
///     pa <name>
///     states: <name> ...
///     start: <name>
///     external: <name> ...
///     transitions:
///       <state> <action> -> <state>:<rational>, ...
///
/// `#` starts a comment. Errors carry line and column.
ProbAutomaton parse_pa(std::string_view text);

/// Reads a file with parse_pa; FormatError if it cannot be opened.
ProbAutomaton load_pa(const std::string& path);

/// Canonical text for `pa`; parse_pa(print_pa(x)) reproduces x.
std::string print_pa(const ProbAutomaton& pa);

/// `{s,t | u,v | w}`; blocks in written order.
Partition parse_partition(std::string_view text, const ProbAutomaton& pa);

std::string print_partition(const Partition& part, const ProbAutomaton& pa);

/// `s:p, t:q`; the masses must sum to exactly 1.
Distribution parse_distribution(std::string_view text, const ProbAutomaton& pa);

}  // namespace wpb
