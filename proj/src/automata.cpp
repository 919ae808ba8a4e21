#include "parcomp/automata.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "parcomp/errors.hpp"
#include "parcomp/priority.hpp"

namespace parcomp {

namespace {

void check_unique(const std::vector<std::string>& names, const char* what) {
  std::unordered_set<std::string> seen;
  for (const auto& n : names) {
    if (!seen.insert(n).second) throw FormatError(std::string("duplicate ") + what + " '" + n + "'");
  }
}

template <typename Names>
std::optional<int> find_name(const Names& names, const std::string& name) {
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) return std::nullopt;
  return static_cast<int>(it - names.begin());
}

}  // namespace

ParityAutomaton::ParityAutomaton(std::vector<std::string> states, std::vector<std::string> alphabet,
                                 StateSet initial, std::vector<ParityTransition> transitions,
                                 std::optional<std::vector<int>> declared_priorities)
    : states_(std::move(states)),
      alphabet_(std::move(alphabet)),
      initial_(initial),
      transitions_(std::move(transitions)) {
  if (states_.empty()) throw FormatError("automaton has no states");
  if (num_states() > kMaxStates) throw FormatError("parity automata are limited to 64 states");
  check_unique(states_, "state");
  check_unique(alphabet_, "letter");
  if (initial_.empty()) throw FormatError("initial state set is empty");
  if (!initial_.subset_of(all_states())) throw FormatError("initial state out of range");

  std::set<int> used;
  std::set<std::tuple<int, int, int>> seen;
  successors_.assign(states_.size() * alphabet_.size(), {});
  for (const auto& t : transitions_) {
    if (t.from < 0 || t.from >= num_states() || t.to < 0 || t.to >= num_states())
      throw FormatError("transition state out of range");
    if (t.letter < 0 || t.letter >= num_letters()) throw FormatError("transition letter out of range");
    if (t.priority < 0) throw FormatError("negative priority on transition");
    if (!seen.emplace(t.from, t.letter, t.to).second)
      throw FormatError("duplicate transition " + states_[t.from] + " -" + alphabet_[t.letter] + "-> " +
                        states_[t.to]);
    used.insert(t.priority);
    successors_[static_cast<std::size_t>(t.from) * alphabet_.size() + static_cast<std::size_t>(t.letter)]
        .push_back({t.to, t.priority});
  }
  if (declared_priorities) {
    std::set<int> declared(declared_priorities->begin(), declared_priorities->end());
    for (int p : declared) {
      if (p < 0) throw FormatError("negative priority in declared priority set");
    }
    for (int p : used) {
      if (!declared.contains(p)) throw FormatError("transition priority missing from declared priority set");
    }
    priorities_.assign(declared.begin(), declared.end());
    declared_ = true;
  } else {
    priorities_.assign(used.begin(), used.end());
  }
}

std::optional<int> ParityAutomaton::max_priority() const {
  if (priorities_.empty()) return std::nullopt;
  return priorities_.back();
}

StateSet ParityAutomaton::delta(StateSet s, LetterIndex letter) const {
  StateSet out;
  s.for_each([&](StateIndex q) {
    for (const auto& e : successors(q, letter)) out.insert(e.to);
  });
  return out;
}

StateSet ParityAutomaton::delta_at_least(StateSet s, LetterIndex letter, int threshold) const {
  StateSet out;
  s.for_each([&](StateIndex q) {
    for (const auto& e : successors(q, letter)) {
      if (better_or_equal(e.priority, threshold)) out.insert(e.to);
    }
  });
  return out;
}

std::optional<LetterIndex> ParityAutomaton::find_letter(const std::string& name) const {
  return find_name(alphabet_, name);
}

std::optional<StateIndex> ParityAutomaton::find_state(const std::string& name) const {
  return find_name(states_, name);
}

BuchiAutomaton::BuchiAutomaton(std::vector<std::string> states, std::vector<std::string> alphabet,
                               std::vector<int> initial, std::vector<BuchiTransition> transitions)
    : states_(std::move(states)),
      alphabet_(std::move(alphabet)),
      initial_(std::move(initial)),
      transitions_(std::move(transitions)) {
  check_unique(states_, "state");
  check_unique(alphabet_, "letter");
  std::sort(initial_.begin(), initial_.end());
  initial_.erase(std::unique(initial_.begin(), initial_.end()), initial_.end());
  for (int q : initial_) {
    if (q < 0 || q >= num_states()) throw FormatError("initial state out of range");
  }
  outgoing_.assign(states_.size(), {});
  std::set<std::tuple<int, int, int>> seen;
  for (std::size_t i = 0; i < transitions_.size(); ++i) {
    const auto& t = transitions_[i];
    if (t.from < 0 || t.from >= num_states() || t.to < 0 || t.to >= num_states())
      throw FormatError("transition state out of range");
    if (t.letter < 0 || t.letter >= num_letters()) throw FormatError("transition letter out of range");
    if (!seen.emplace(t.from, t.letter, t.to).second)
      throw FormatError("duplicate transition " + states_[t.from] + " -" + alphabet_[t.letter] + "-> " +
                        states_[t.to]);
    outgoing_[static_cast<std::size_t>(t.from)].push_back(static_cast<int>(i));
  }
}

std::optional<LetterIndex> BuchiAutomaton::find_letter(const std::string& name) const {
  return find_name(alphabet_, name);
}

void check_lasso(const LassoWord& w, int num_letters) {
  if (w.period.empty()) throw FormatError("lasso period must be non-empty");
  auto bad = [&](LetterIndex l) { return l < 0 || l >= num_letters; };
  if (std::any_of(w.prefix.begin(), w.prefix.end(), bad) || std::any_of(w.period.begin(), w.period.end(), bad))
    throw FormatError("lasso letter not in alphabet");
}

ParityAutomaton normalize(const ParityAutomaton& p) {
  std::vector<int> pi = p.priorities();
  // Each entry maps an original priority to its normalized value.
  std::unordered_map<int, int> remap;
  for (int x : pi) remap[x] = x;

  auto apply = [&](auto&& f) {
    for (auto& [from, to] : remap) to = f(to);
    for (int& x : pi) x = f(x);
  };

  if (!pi.empty()) {
    while (pi.front() > 1) apply([](int x) { return x - 2; });
    while (true) {
      std::optional<int> hole;
      for (std::size_t i = 1; i < pi.size(); ++i) {
        if (pi[i] > pi[i - 1] + 1) {
          hole = pi[i - 1] + 1;
          break;
        }
      }
      if (!hole) break;
      const int h = *hole;
      apply([h](int x) { return x > h ? x - 2 : x; });
      pi.erase(std::unique(pi.begin(), pi.end()), pi.end());
    }
  }

  std::vector<ParityTransition> ts = p.transitions();
  for (auto& t : ts) t.priority = remap.at(t.priority);
  std::optional<std::vector<int>> declared;
  if (p.priorities_declared()) declared = pi;
  return ParityAutomaton(p.state_names(), p.letter_names(), p.initial(), std::move(ts), std::move(declared));
}

ParityAutomaton prepare_for_complement(const ParityAutomaton& p) {
  ParityAutomaton n = normalize(p);
  const auto& pi = n.priorities();
  if (!pi.empty() && pi.back() >= 2) return n;
  if (pi.empty() || pi.front() == 1)
    return ParityAutomaton(n.state_names(), n.letter_names(), n.initial(), n.transitions(), std::vector<int>{1, 2});
  std::vector<ParityTransition> ts = n.transitions();
  for (auto& t : ts) t.priority += 2;
  std::vector<int> declared;
  for (int x = 1; x <= pi.back() + 2; ++x) declared.push_back(x);
  return ParityAutomaton(n.state_names(), n.letter_names(), n.initial(), std::move(ts), std::move(declared));
}

bool is_normalized(const ParityAutomaton& p) {
  const auto& pi = p.priorities();
  if (pi.empty()) return true;
  return pi.front() <= 1 && pi.back() - pi.front() + 1 == static_cast<int>(pi.size());
}

int max_even_priority(const ParityAutomaton& p) {
  if (p.priorities().empty()) throw DomainError("construction requires max Π ≥ 2");
  const int e = opt_priority(p.priorities());
  if (e < 2) throw DomainError("construction requires max Π ≥ 2");
  return e;
}

ParityAutomaton buchi_as_parity(const BuchiAutomaton& b) {
  if (b.num_states() > kMaxStates) throw FormatError("parity automata are limited to 64 states");
  StateSet initial;
  for (int q : b.initial()) initial.insert(q);
  std::vector<ParityTransition> ts;
  ts.reserve(b.transitions().size());
  for (const auto& t : b.transitions()) ts.push_back({t.from, t.letter, t.to, t.accepting ? 2 : 1});
  return ParityAutomaton(b.state_names(), b.letter_names(), initial, std::move(ts), std::vector<int>{1, 2});
}

}  // namespace parcomp
