#pragma once

#include <map>
#include <set>
#include <utility>
#include <vector>

#include <json.hpp>

#include "parcomp/automata.hpp"
#include "parcomp/fnht.hpp"

namespace parcomp {

/// A letter of the full automaton: a map from ordered state pairs to sets of
/// priorities. Only non-empty entries are stored.
class PriorityMatrixLetter {
 public:
  void add(StateIndex from, StateIndex to, int priority) { entries_[{from, to}].insert(priority); }
  /// Empty set when the entry is absent.
  const std::set<int>& at(StateIndex from, StateIndex to) const;
  const std::map<std::pair<StateIndex, StateIndex>, std::set<int>>& entries() const { return entries_; }
  /// True iff every entry of *this is contained in the same entry of `other`.
  bool subset_of(const PriorityMatrixLetter& other) const;

  auto operator<=>(const PriorityMatrixLetter&) const = default;

 private:
  std::map<std::pair<StateIndex, StateIndex>, std::set<int>> entries_;
};

/// {"matrix": {"p,q": [ints]...}} with state names for p and q.
nlohmann::ordered_json to_json(const PriorityMatrixLetter& l, const std::vector<std::string>& state_names);

/// The full automaton over n states with all states initial. Its alphabet is
/// never materialized: letters are registered on demand and deduplicated by
/// content, and letter ids are registration indices.
class FullAutomaton {
 public:
  /// `priorities` must be contiguous with min ∈ {0,1} and opt ≥ 2.
  FullAutomaton(int num_states, std::vector<int> priorities);

  int num_states() const { return num_states_; }
  const std::vector<int>& priorities() const { return priorities_; }
  int max_priority() const { return priorities_.back(); }
  const std::vector<std::string>& state_names() const { return names_; }

  LetterIndex register_letter(const PriorityMatrixLetter& letter);
  const PriorityMatrixLetter& letter(LetterIndex id) const { return letters_.at(static_cast<std::size_t>(id)); }
  int num_letters() const { return static_cast<int>(letters_.size()); }
  static std::string letter_name(LetterIndex id) { return "L" + std::to_string(id); }

  /// Parity automaton over the registered letters: a transition (p, σ, q)
  /// exists iff σ(p,q) ≠ ∅, with priority opt σ(p,q). Π is declared.
  ParityAutomaton materialize() const;

 private:
  int num_states_;
  std::vector<int> priorities_;
  std::vector<std::string> names_;
  std::vector<PriorityMatrixLetter> letters_;
  std::map<PriorityMatrixLetter, LetterIndex> index_;
};

FullAutomaton full_parity_automaton(int num_states, std::vector<int> priorities);

/// {min..max_priority} with min = 1.
std::vector<int> priority_range(int max_priority);

/// The β letter of a full FNHT.
PriorityMatrixLetter beta_letter(const Fnht& t, const std::vector<int>& priorities);
/// The γ letter of a full FNHT; a superset of β.
PriorityMatrixLetter gamma_letter(const Fnht& t, const std::vector<int>& priorities);

/// (β γ^{h-1})^ω with both letters registered in `full`. Throws DomainError for h < 2.
LassoWord hard_word(FullAutomaton& full, const Fnht& t, int h);

/// |fnht(Q, π)| + 1 for |Q| = n.
int default_hard_word_length(int num_states, int max_priority);

}  // namespace parcomp
