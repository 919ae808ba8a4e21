#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "parcomp/automata.hpp"
#include "parcomp/fnht.hpp"

namespace parcomp {

/// A state of the subset phase: an element of 2^Q.
struct SubsetState {
  StateSet states;
  bool operator==(const SubsetState&) const = default;
};

/// Subset-phase states followed by marked-tree states.
using ComplementState = std::variant<SubsetState, Mft>;

struct Step {
  ComplementState successor;
  bool accepting = false;
};

/// Result of a deterministic step; std::nullopt means the construction blocks.
using StepOutcome = std::optional<Step>;

StateSet delta(const ParityAutomaton& p, StateSet s, LetterIndex letter);
StateSet delta_i(const ParityAutomaton& p, StateSet s, LetterIndex letter, int threshold);

/// Subset step; accepting exactly on the empty set.
Step subset_step(const ParityAutomaton& p, StateSet s, LetterIndex letter);

/// One deterministic step of the marked-tree phase. The tree shape never
/// changes; only labels, marker and marking do.
StepOutcome mft_step(const ParityAutomaton& p, const Mft& m, LetterIndex letter);

/// On-the-fly view of the complement of a normalized parity automaton with
/// max Π ≥ 2. Caches the transfer targets per root label.
class ComplementStepper {
 public:
  explicit ComplementStepper(const ParityAutomaton& p);

  const ParityAutomaton& automaton() const { return p_; }
  int max_priority() const { return max_priority_; }
  int max_even() const { return max_even_; }
  ComplementState initial() const { return SubsetState{p_.initial()}; }

  /// All valid MFTs whose root label is δ(s, letter); empty when δ is empty.
  const std::vector<Mft>& transfer_targets(StateSet s, LetterIndex letter);

  /// Every outgoing transition of `state` on `letter`.
  std::vector<Step> successors(const ComplementState& state, LetterIndex letter);

 private:
  ParityAutomaton p_;
  int max_priority_;
  int max_even_;
  std::unordered_map<StateSet, std::vector<Mft>> targets_;
};

/// Transfer targets computed without a cached stepper.
std::vector<Mft> transfer_targets(const ParityAutomaton& p, StateSet s, LetterIndex letter);

struct ComplementOptions {
  std::size_t state_cap = 2'000'000;
};

struct ComplementResult {
  BuchiAutomaton automaton;
  std::size_t subset_states = 0;
  std::size_t tree_states = 0;
};

/// Explicit reachable complement. Requires a normalized input with max
/// Π ≥ 2 (DomainError otherwise); throws CapExceeded past the state cap.
ComplementResult build_complement(const ParityAutomaton& p, const ComplementOptions& options = {});

/// Stable identity of a complement state, suitable for hashing.
std::string state_key(const ComplementState& s);
/// "S:{q1,q2}" for subset states, "M:" + compact MFT JSON for tree states.
std::string state_name(const ComplementState& s, const std::vector<std::string>& state_names);

}  // namespace parcomp
