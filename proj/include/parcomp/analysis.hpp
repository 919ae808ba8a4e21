#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "parcomp/automata.hpp"
#include "parcomp/complement.hpp"

namespace parcomp {

/// True iff some run of `p` on the lasso has an even maximal priority among
/// the priorities seen infinitely often. Throws FormatError on foreign letters.
bool parity_lasso_member(const ParityAutomaton& p, const LassoWord& w);

/// True iff some run of `b` on the lasso takes accepting transitions
/// infinitely often.
bool buchi_lasso_member(const BuchiAutomaton& b, const LassoWord& w);

/// Lasso membership in the complement of `stepper`'s automaton, explored on
/// the fly through subset steps, transfer targets and tree steps.
bool complement_lasso_member(ComplementStepper& stepper, const LassoWord& w);

struct EmptinessWitness {
  bool empty = true;
  /// Accepted lasso in canonical form (see canonicalize_lasso).
  std::optional<LassoWord> lasso;
  /// A state on the accepting cycle the lasso was read off.
  int cycle_state = -1;
};

/// Rewrites a lasso into an equal word with the shortest prefix and a
/// primitive period.
void canonicalize_lasso(LassoWord& w);

/// Emptiness by SCC decomposition of the reachable part. A non-empty result
/// carries a lasso that is re-checked with buchi_lasso_member.
EmptinessWitness buchi_emptiness(const BuchiAutomaton& b);

/// Language-equal Büchi automaton that guesses the dominating even priority.
BuchiAutomaton parity_to_buchi(const ParityAutomaton& p);

/// Product recognising L(b1) ∩ L(b2). The alphabets must contain the same
/// letter names (FormatError otherwise); the result uses b1's letter order.
BuchiAutomaton intersect_buchi(const BuchiAutomaton& b1, const BuchiAutomaton& b2);

/// Every lasso with |prefix| <= prefix_bound and 1 <= |period| <= period_bound,
/// ordered by prefix length, period length, then lexicographically.
std::vector<LassoWord> enumerate_lassos(int num_letters, int prefix_bound, int period_bound);

struct CorrectnessReport {
  std::size_t complement_states = 0;
  std::size_t subset_states = 0;
  std::size_t tree_states = 0;
  bool product_empty = false;
  std::optional<LassoWord> product_witness;
  std::size_t words_checked = 0;
  /// Words where membership in P and in its complement do not differ.
  std::vector<LassoWord> counterexamples;
  /// Words where the explicit complement and on-the-fly stepping disagree.
  std::vector<LassoWord> stepping_mismatches;

  bool passed() const { return product_empty && counterexamples.empty() && stepping_mismatches.empty(); }
};

struct CorrectnessOptions {
  int prefix_bound = 2;
  int period_bound = 3;
  /// Also compare against on-the-fly complement stepping on every word.
  bool cross_check_stepping = true;
  ComplementOptions complement;
};

/// Builds the complement and checks exact product disjointness plus bounded
/// lasso coverage.
CorrectnessReport complement_correctness_check(const ParityAutomaton& p, const CorrectnessOptions& options = {});

struct TightnessReport {
  int num_states = 0;
  int max_priority = 0;
  std::size_t subsets = 0;             // |2^Q|
  std::size_t mfts = 0;                // |mft(Q,π)|
  std::size_t fnhts = 0;               // |fnht(Q,π)|
  std::size_t full_fnhts = 0;
  std::size_t full_marking_mfts = 0;
  double ratio = 0.0;                  // (|2^Q| + |mft|) / #full FNHTs
  int bound = 0;                       // 4n + 1
  std::vector<std::pair<std::string, bool>> checks;

  bool passed() const;
};

/// Counts the complement state space against the full-FNHT lower bound.
TightnessReport tightness_report(int num_states, int max_priority, std::size_t cap = 5'000'000);

nlohmann::ordered_json to_json(const TightnessReport& r);
std::string to_text(const TightnessReport& r);
nlohmann::ordered_json to_json(const CorrectnessReport& r, const std::vector<std::string>& letter_names);
std::string to_text(const CorrectnessReport& r, const std::vector<std::string>& letter_names);

std::string lasso_to_string(const LassoWord& w, const std::vector<std::string>& letter_names);

}  // namespace parcomp
