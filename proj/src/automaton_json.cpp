#include "parcomp/automaton_json.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

#include "parcomp/errors.hpp"

namespace parcomp {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed, const char* where) {
  for (const auto& [key, value] : obj.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
      throw FormatError(std::string("unknown field '") + key + "' in " + where);
  }
}

const json& field(const json& obj, const char* name, const char* where) {
  auto it = obj.find(name);
  if (it == obj.end()) throw FormatError(std::string("missing field '") + name + "' in " + where);
  return *it;
}

std::vector<std::string> string_array(const json& j, const char* name) {
  if (!j.is_array()) throw FormatError(std::string("'") + name + "' must be an array of strings");
  std::vector<std::string> out;
  for (const auto& e : j) {
    if (!e.is_string()) throw FormatError(std::string("'") + name + "' must be an array of strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

std::unordered_map<std::string, int> index_of(const std::vector<std::string>& names) {
  std::unordered_map<std::string, int> m;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (!m.emplace(names[i], static_cast<int>(i)).second) throw FormatError("duplicate name '" + names[i] + "'");
  }
  return m;
}

int lookup(const std::unordered_map<std::string, int>& m, const json& j, const char* what) {
  if (!j.is_string()) throw FormatError(std::string(what) + " must be a string");
  auto it = m.find(j.get<std::string>());
  if (it == m.end()) throw FormatError(std::string("unknown ") + what + " '" + j.get<std::string>() + "'");
  return it->second;
}

template <typename T>
std::vector<T> sorted_transitions(std::vector<T> ts) {
  std::sort(ts.begin(), ts.end(),
            [](const T& a, const T& b) { return std::tie(a.from, a.letter, a.to) < std::tie(b.from, b.letter, b.to); });
  return ts;
}

}  // namespace

AnyAutomaton automaton_from_json(const json& j) {
  if (!j.is_object()) throw FormatError("automaton must be a JSON object");
  const auto& kind_j = field(j, "kind", "automaton");
  if (!kind_j.is_string()) throw FormatError("'kind' must be a string");
  const std::string kind = kind_j.get<std::string>();
  if (kind != "parity" && kind != "buchi") throw FormatError("unknown automaton kind '" + kind + "'");
  const bool parity = kind == "parity";
  if (parity)
    reject_unknown(j, {"kind", "states", "initial", "alphabet", "transitions", "priorities"}, "automaton");
  else
    reject_unknown(j, {"kind", "states", "initial", "alphabet", "transitions"}, "automaton");

  auto states = string_array(field(j, "states", "automaton"), "states");
  auto alphabet = string_array(field(j, "alphabet", "automaton"), "alphabet");
  const auto state_ix = index_of(states);
  const auto letter_ix = index_of(alphabet);

  std::vector<int> initial;
  const auto& init_j = field(j, "initial", "automaton");
  if (!init_j.is_array()) throw FormatError("'initial' must be an array of strings");
  for (const auto& s : init_j) initial.push_back(lookup(state_ix, s, "state"));

  const auto& trans_j = field(j, "transitions", "automaton");
  if (!trans_j.is_array()) throw FormatError("'transitions' must be an array");

  if (parity) {
    std::vector<ParityTransition> ts;
    for (const auto& t : trans_j) {
      if (!t.is_object()) throw FormatError("transition must be an object");
      reject_unknown(t, {"from", "letter", "to", "priority"}, "transition");
      const auto& pr = field(t, "priority", "transition");
      if (!pr.is_number_integer()) throw FormatError("'priority' must be an integer");
      ts.push_back({lookup(state_ix, field(t, "from", "transition"), "state"),
                    lookup(letter_ix, field(t, "letter", "transition"), "letter"),
                    lookup(state_ix, field(t, "to", "transition"), "state"), pr.get<int>()});
    }
    std::optional<std::vector<int>> declared;
    if (auto it = j.find("priorities"); it != j.end()) {
      if (!it->is_array()) throw FormatError("'priorities' must be an array of integers");
      declared.emplace();
      for (const auto& e : *it) {
        if (!e.is_number_integer()) throw FormatError("'priorities' must be an array of integers");
        declared->push_back(e.get<int>());
      }
    }
    if (states.size() > static_cast<std::size_t>(kMaxStates))
      throw FormatError("parity automata are limited to 64 states");
    StateSet init;
    for (int q : initial) init.insert(q);
    return ParityAutomaton(std::move(states), std::move(alphabet), init, std::move(ts), std::move(declared));
  }

  std::vector<BuchiTransition> ts;
  for (const auto& t : trans_j) {
    if (!t.is_object()) throw FormatError("transition must be an object");
    reject_unknown(t, {"from", "letter", "to", "accepting"}, "transition");
    const auto& acc = field(t, "accepting", "transition");
    if (!acc.is_boolean()) throw FormatError("'accepting' must be a boolean");
    ts.push_back({lookup(state_ix, field(t, "from", "transition"), "state"),
                  lookup(letter_ix, field(t, "letter", "transition"), "letter"),
                  lookup(state_ix, field(t, "to", "transition"), "state"), acc.get<bool>()});
  }
  return BuchiAutomaton(std::move(states), std::move(alphabet), std::move(initial), std::move(ts));
}

AnyAutomaton parse_automaton(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
  return automaton_from_json(j);
}

AnyAutomaton read_automaton_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_automaton(ss.str());
}

nlohmann::ordered_json to_json(const ParityAutomaton& p) {
  nlohmann::ordered_json j;
  j["kind"] = "parity";
  j["states"] = p.state_names();
  auto init = nlohmann::ordered_json::array();
  p.initial().for_each([&](StateIndex q) { init.push_back(p.state_names()[q]); });
  j["initial"] = init;
  j["alphabet"] = p.letter_names();
  auto ts = nlohmann::ordered_json::array();
  std::set<int> used;
  for (const auto& t : sorted_transitions(p.transitions())) {
    nlohmann::ordered_json e;
    e["from"] = p.state_names()[t.from];
    e["letter"] = p.letter_names()[t.letter];
    e["to"] = p.state_names()[t.to];
    e["priority"] = t.priority;
    ts.push_back(std::move(e));
    used.insert(t.priority);
  }
  j["transitions"] = std::move(ts);
  if (p.priorities_declared() && std::vector<int>(used.begin(), used.end()) != p.priorities())
    j["priorities"] = p.priorities();
  return j;
}

nlohmann::ordered_json to_json(const BuchiAutomaton& b) {
  nlohmann::ordered_json j;
  j["kind"] = "buchi";
  j["states"] = b.state_names();
  auto init = nlohmann::ordered_json::array();
  for (int q : b.initial()) init.push_back(b.state_names()[q]);
  j["initial"] = init;
  j["alphabet"] = b.letter_names();
  auto ts = nlohmann::ordered_json::array();
  for (const auto& t : sorted_transitions(b.transitions())) {
    nlohmann::ordered_json e;
    e["from"] = b.state_names()[t.from];
    e["letter"] = b.letter_names()[t.letter];
    e["to"] = b.state_names()[t.to];
    e["accepting"] = t.accepting;
    ts.push_back(std::move(e));
  }
  j["transitions"] = std::move(ts);
  return j;
}

std::string serialize(const AnyAutomaton& a) {
  return std::visit([](const auto& x) { return to_json(x).dump(2) + "\n"; }, a);
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write '" + path + "'");
  out << text;
  if (!out) throw FormatError("failed writing '" + path + "'");
}

}  // namespace parcomp
