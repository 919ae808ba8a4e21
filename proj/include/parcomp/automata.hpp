#pragma once

#include <optional>
#include <string>
#include <vector>

#include "parcomp/state_set.hpp"

namespace parcomp {

struct ParityTransition {
  StateIndex from = 0;
  LetterIndex letter = 0;
  StateIndex to = 0;
  int priority = 0;

  auto operator<=>(const ParityTransition&) const = default;
};

/// Explicit-state nondeterministic parity automaton with priorities on
/// transitions. States and letters are named; all algorithms work on dense
/// indices.
///
/// The priority set Π is the declared set when one is given, otherwise the set
/// of priorities occurring on transitions. A declared Π must contain every
/// priority used by a transition.
class ParityAutomaton {
 public:
  ParityAutomaton(std::vector<std::string> states, std::vector<std::string> alphabet, StateSet initial,
                  std::vector<ParityTransition> transitions,
                  std::optional<std::vector<int>> declared_priorities = std::nullopt);

  int num_states() const { return static_cast<int>(states_.size()); }
  int num_letters() const { return static_cast<int>(alphabet_.size()); }
  const std::vector<std::string>& state_names() const { return states_; }
  const std::vector<std::string>& letter_names() const { return alphabet_; }
  StateSet initial() const { return initial_; }
  StateSet all_states() const { return StateSet::first_n(num_states()); }
  const std::vector<ParityTransition>& transitions() const { return transitions_; }

  /// Sorted, duplicate-free priority set Π.
  const std::vector<int>& priorities() const { return priorities_; }
  bool priorities_declared() const { return declared_; }
  /// max Π, or nullopt for an empty Π.
  std::optional<int> max_priority() const;

  /// Outgoing transitions of `q` on `letter`, as (target, priority) pairs.
  struct Edge {
    StateIndex to;
    int priority;
  };
  const std::vector<Edge>& successors(StateIndex q, LetterIndex letter) const {
    return successors_[static_cast<std::size_t>(q) * alphabet_.size() + static_cast<std::size_t>(letter)];
  }

  /// Image of `s` under `letter`.
  StateSet delta(StateSet s, LetterIndex letter) const;
  /// Image of `s` under `letter` restricted to transitions whose priority is
  /// better than or equal to `threshold` (any integer).
  StateSet delta_at_least(StateSet s, LetterIndex letter, int threshold) const;

  std::optional<LetterIndex> find_letter(const std::string& name) const;
  std::optional<StateIndex> find_state(const std::string& name) const;

 private:
  std::vector<std::string> states_;
  std::vector<std::string> alphabet_;
  StateSet initial_;
  std::vector<ParityTransition> transitions_;
  std::vector<int> priorities_;
  bool declared_ = false;
  std::vector<std::vector<Edge>> successors_;
};

struct BuchiTransition {
  int from = 0;
  LetterIndex letter = 0;
  int to = 0;
  bool accepting = false;

  auto operator<=>(const BuchiTransition&) const = default;
};

/// Explicit-state nondeterministic Büchi automaton with accepting transitions.
/// Unlike ParityAutomaton the state count is unbounded, so states are plain
/// integers rather than bit-set members.
class BuchiAutomaton {
 public:
  BuchiAutomaton(std::vector<std::string> states, std::vector<std::string> alphabet, std::vector<int> initial,
                 std::vector<BuchiTransition> transitions);

  int num_states() const { return static_cast<int>(states_.size()); }
  int num_letters() const { return static_cast<int>(alphabet_.size()); }
  const std::vector<std::string>& state_names() const { return states_; }
  const std::vector<std::string>& letter_names() const { return alphabet_; }
  const std::vector<int>& initial() const { return initial_; }
  const std::vector<BuchiTransition>& transitions() const { return transitions_; }
  /// Indices into transitions() leaving state q.
  const std::vector<int>& outgoing(int q) const { return outgoing_[static_cast<std::size_t>(q)]; }

  std::optional<LetterIndex> find_letter(const std::string& name) const;

 private:
  std::vector<std::string> states_;
  std::vector<std::string> alphabet_;
  std::vector<int> initial_;
  std::vector<BuchiTransition> transitions_;
  std::vector<std::vector<int>> outgoing_;
};

/// Ultimately periodic word prefix · period^ω over letter indices.
struct LassoWord {
  std::vector<LetterIndex> prefix;
  std::vector<LetterIndex> period;

  bool operator==(const LassoWord&) const = default;
};

/// Validates the period length and the letter range against an alphabet size.
void check_lasso(const LassoWord& w, int num_letters);

/// Shifts priorities down by 2 until min Π ∈ {0,1}, then removes holes lowest
/// first. Structure and run acceptance are preserved.
ParityAutomaton normalize(const ParityAutomaton& p);

/// True when min Π ∈ {0,1} and Π is a contiguous interval (an empty Π counts).
bool is_normalized(const ParityAutomaton& p);

/// Normal form with max even priority ≥ 2. When the normalized Π lies within
/// {0,1}, every priority is raised by 2 and Π is declared as {1..max+2};
/// a Π of {1} or ∅ is widened to the declared set {1,2}.
ParityAutomaton prepare_for_complement(const ParityAutomaton& p);

/// opt Π of a normalized automaton; throws DomainError when it is below 2.
int max_even_priority(const ParityAutomaton& p);

/// Renders a Büchi automaton as a parity automaton with Π = {1,2}.
ParityAutomaton buchi_as_parity(const BuchiAutomaton& b);

}  // namespace parcomp
