#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "wpbisim/format.hpp"

namespace wpb::test {

inline std::string data_path(const std::string& name) { return std::string(WPB_TEST_DATA_DIR) + "/" + name; }

/// Automaton E: sbar -tau-> {t:1/4, u:1/4, v:1/2}; t, u, v emit a into g, b, r;
/// t -tau-> sbar.
inline ProbAutomaton example_e() { return load_pa(data_path("example_e.pa")); }

inline State st(const ProbAutomaton& pa, const std::string& name) { return *pa.find_state(name); }
inline Action act(const ProbAutomaton& pa, const std::string& name) { return *pa.find_action(name); }

inline Distribution dist(const ProbAutomaton& pa, const std::string& text) { return parse_distribution(text, pa); }
inline Partition part(const ProbAutomaton& pa, const std::string& text) { return parse_partition(text, pa); }

}  // namespace wpb::test
