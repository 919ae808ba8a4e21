#include "parcomp/complement.hpp"

#include <cassert>
#include <deque>
#include <stdexcept>

#include "parcomp/enumerate.hpp"
#include "parcomp/errors.hpp"

namespace parcomp {

StateSet delta(const ParityAutomaton& p, StateSet s, LetterIndex letter) { return p.delta(s, letter); }

StateSet delta_i(const ParityAutomaton& p, StateSet s, LetterIndex letter, int threshold) {
  return p.delta_at_least(s, letter, threshold);
}

Step subset_step(const ParityAutomaton& p, StateSet s, LetterIndex letter) {
  return Step{SubsetState{p.delta(s, letter)}, s.empty()};
}

StepOutcome mft_step(const ParityAutomaton& p, const Mft& m, LetterIndex letter) {
  const Fnht& t = m.tree;
  const TreeShape& shape = t.shape();
  const int n = t.size();

  // Raw images of the old labels.
  std::vector<StateSet> raw_states(static_cast<std::size_t>(n));
  std::vector<StateSet> raw_recurrent(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const int level = t.level(i);
    const NodeLabels& l = t.labels(i);
    if (shape.node(i).stepchild) {
      raw_states[i] = p.delta_at_least(l.states, letter, level + 1);
    } else {
      raw_states[i] = p.delta_at_least(l.states, letter, level - 1);
      raw_recurrent[i] = p.delta_at_least(l.recurrent, letter, level - 1) | p.delta_at_least(l.states, letter, level);
    }
  }

  // Top-down pruning in pre-order: a stepchild's label is fixed before its
  // natural children are computed, and a natural child's pure set before its
  // stepchild is reached.
  std::vector<NodeLabels> next(static_cast<std::size_t>(n));
  next[0].states = raw_states[0];
  for (int i = 0; i < n; ++i) {
    const auto& node = shape.node(i);
    if (node.stepchild) {
      StateSet older_raw;
      StateSet children;
      for (int c : node.children) {
        NodeLabels& cl = next[c];
        cl.states = (raw_states[c] & next[i].states) - older_raw;
        cl.recurrent = raw_recurrent[c] & cl.states;
        cl.pure = cl.states - cl.recurrent;
        older_raw |= raw_states[c];
        children |= cl.states;
      }
      next[i].recurrent = next[i].states - children;
      next[i].pure = StateSet{};
    } else if (node.step >= 0) {
      next[node.step].states = next[i].pure;
      assert(next[i].pure.subset_of(raw_states[node.step]));
    }
  }

  for (int i = 0; i < n; ++i) {
    if (next[i].states.empty()) return std::nullopt;
    if (!shape.node(i).stepchild && next[i].pure.empty()) return std::nullopt;
  }

  Fnht tree(t.shape_ptr(), std::move(next), t.max_even());
  const int marked_level = t.level(m.marker.node);
  StateSet marking;
  if (m.marker.kind == MarkerKind::recurrent)
    marking = p.delta_at_least(m.marking, letter, marked_level - 1) & tree.labels(m.marker.node).recurrent;
  else
    marking = p.delta_at_least(m.marking, letter, marked_level - 3) & tree.labels(m.marker.node).pure;

  if (marking.empty()) {
    auto [marker, set] = next_marker(tree, m.marker);
    return Step{Mft{std::move(tree), marker, set}, true};
  }
  return Step{Mft{std::move(tree), m.marker, marking}, false};
}

ComplementStepper::ComplementStepper(const ParityAutomaton& p) : p_(p) {
  if (!is_normalized(p_)) throw DomainError("automaton must be normalized");
  max_even_ = max_even_priority(p_);
  max_priority_ = *p_.max_priority();
}

const std::vector<Mft>& ComplementStepper::transfer_targets(StateSet s, LetterIndex letter) {
  const StateSet root = p_.delta(s, letter);
  if (auto it = targets_.find(root); it != targets_.end()) return it->second;
  std::vector<Mft> out;
  if (!root.empty()) {
    for (const auto& t : enumerate_fnhts_with_root(root, max_priority_)) {
      auto ms = mfts_of(t);
      out.insert(out.end(), std::make_move_iterator(ms.begin()), std::make_move_iterator(ms.end()));
    }
  }
  return targets_.emplace(root, std::move(out)).first->second;
}

std::vector<Step> ComplementStepper::successors(const ComplementState& state, LetterIndex letter) {
  std::vector<Step> out;
  if (const auto* sub = std::get_if<SubsetState>(&state)) {
    out.push_back(subset_step(p_, sub->states, letter));
    for (const auto& m : transfer_targets(sub->states, letter)) out.push_back(Step{m, false});
  } else if (auto step = mft_step(p_, std::get<Mft>(state), letter)) {
    out.push_back(std::move(*step));
  }
  return out;
}

std::vector<Mft> transfer_targets(const ParityAutomaton& p, StateSet s, LetterIndex letter) {
  ComplementStepper stepper(p);
  return stepper.transfer_targets(s, letter);
}

std::string state_key(const ComplementState& s) {
  if (const auto* sub = std::get_if<SubsetState>(&s)) {
    std::string k = "S";
    const std::uint64_t b = sub->states.bits();
    k.append(reinterpret_cast<const char*>(&b), sizeof b);
    return k;
  }
  return "M" + std::get<Mft>(s).key();
}

std::string state_name(const ComplementState& s, const std::vector<std::string>& state_names) {
  if (const auto* sub = std::get_if<SubsetState>(&s)) {
    std::string out = "S:{";
    bool first = true;
    sub->states.for_each([&](StateIndex q) {
      if (!first) out += ',';
      out += state_names.at(static_cast<std::size_t>(q));
      first = false;
    });
    return out + "}";
  }
  return "M:" + to_json(std::get<Mft>(s), state_names).dump();
}

ComplementResult build_complement(const ParityAutomaton& p, const ComplementOptions& options) {
  ComplementStepper stepper(p);

  std::vector<std::string> names;
  std::unordered_map<std::string, int> index;
  std::deque<std::pair<int, ComplementState>> work;
  std::vector<BuchiTransition> transitions;
  std::size_t subset_states = 0;
  std::size_t tree_states = 0;

  auto intern = [&](const ComplementState& s) {
    auto [it, inserted] = index.try_emplace(state_key(s), static_cast<int>(names.size()));
    if (inserted) {
      if (names.size() >= options.state_cap)
        throw CapExceeded("complement exceeded state cap of " + std::to_string(options.state_cap));
      names.push_back(state_name(s, p.state_names()));
      (std::holds_alternative<SubsetState>(s) ? subset_states : tree_states)++;
      work.emplace_back(it->second, s);
    }
    return it->second;
  };

  const int init = intern(stepper.initial());
  while (!work.empty()) {
    auto [id, state] = std::move(work.front());
    work.pop_front();
    for (LetterIndex a = 0; a < p.num_letters(); ++a) {
      for (const auto& step : stepper.successors(state, a)) {
        transitions.push_back({id, a, intern(step.successor), step.accepting});
      }
    }
  }

  return ComplementResult{
      BuchiAutomaton(std::move(names), p.letter_names(), std::vector<int>{init}, std::move(transitions)),
      subset_states, tree_states};
}

}  // namespace parcomp
