#pragma once

// Line-oriented text format ("rna v1") and DOT export.

#include <string>
#include <string_view>

#include "realset/automaton.hpp"

namespace realset {

struct LoadedAutomaton {
  OmegaAutomaton automaton;
  bool saturated = false;  // from a "# saturated" line
};

/// Missing transitions lead to an added rejecting sink.
LoadedAutomaton read_automaton(std::string_view text);
std::string write_automaton(const OmegaAutomaton& a, bool saturated = false);

LoadedAutomaton load_automaton(const std::string& path);
void save_automaton(const std::string& path, const OmegaAutomaton& a, bool saturated = false);

std::string to_dot(const OmegaAutomaton& a);

}  // namespace realset
