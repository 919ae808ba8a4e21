#pragma once

#include <string>
#include <variant>

#include <json.hpp>

#include "parcomp/automata.hpp"

namespace parcomp {

using AnyAutomaton = std::variant<ParityAutomaton, BuchiAutomaton>;

/// Parses the automaton JSON format. Unknown fields, duplicate transitions and
/// dangling names raise FormatError.
AnyAutomaton automaton_from_json(const nlohmann::json& j);
AnyAutomaton parse_automaton(const std::string& text);
AnyAutomaton read_automaton_file(const std::string& path);

/// Canonical form: states, initial and alphabet in index order, transitions
/// sorted by (from, letter, to) index. Parity automata carry "priorities" only
/// when Π was declared and differs from the set of used priorities.
nlohmann::ordered_json to_json(const ParityAutomaton& p);
nlohmann::ordered_json to_json(const BuchiAutomaton& b);
std::string serialize(const AnyAutomaton& a);

void write_text_file(const std::string& path, const std::string& text);

}  // namespace parcomp
