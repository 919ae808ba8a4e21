#include "parcomp/hardness.hpp"

#include <algorithm>

#include "parcomp/enumerate.hpp"
#include "parcomp/errors.hpp"
#include "parcomp/priority.hpp"

namespace parcomp {

const std::set<int>& PriorityMatrixLetter::at(StateIndex from, StateIndex to) const {
  static const std::set<int> kEmpty;
  auto it = entries_.find({from, to});
  return it == entries_.end() ? kEmpty : it->second;
}

bool PriorityMatrixLetter::subset_of(const PriorityMatrixLetter& other) const {
  for (const auto& [pair, prios] : entries_) {
    const auto& o = other.at(pair.first, pair.second);
    if (!std::includes(o.begin(), o.end(), prios.begin(), prios.end())) return false;
  }
  return true;
}

nlohmann::ordered_json to_json(const PriorityMatrixLetter& l, const std::vector<std::string>& state_names) {
  nlohmann::ordered_json matrix = nlohmann::ordered_json::object();
  for (const auto& [pair, prios] : l.entries()) {
    matrix[state_names.at(static_cast<std::size_t>(pair.first)) + "," +
           state_names.at(static_cast<std::size_t>(pair.second))] = std::vector<int>(prios.begin(), prios.end());
  }
  nlohmann::ordered_json j;
  j["matrix"] = std::move(matrix);
  return j;
}

FullAutomaton::FullAutomaton(int num_states, std::vector<int> priorities)
    : num_states_(num_states), priorities_(std::move(priorities)), names_(default_state_names(num_states)) {
  if (num_states < 1 || num_states > kMaxStates) throw DomainError("full automaton needs 1..64 states");
  std::sort(priorities_.begin(), priorities_.end());
  priorities_.erase(std::unique(priorities_.begin(), priorities_.end()), priorities_.end());
  if (priorities_.empty() || priorities_.front() > 1 ||
      priorities_.back() - priorities_.front() + 1 != static_cast<int>(priorities_.size()))
    throw DomainError("priorities must be contiguous with min in {0,1}");
  if (opt_priority(priorities_) < 2) throw DomainError("construction requires max Π ≥ 2");
}

LetterIndex FullAutomaton::register_letter(const PriorityMatrixLetter& letter) {
  for (const auto& [pair, prios] : letter.entries()) {
    if (pair.first < 0 || pair.first >= num_states_ || pair.second < 0 || pair.second >= num_states_)
      throw DomainError("letter entry outside the state space");
    for (int p : prios) {
      if (!std::binary_search(priorities_.begin(), priorities_.end(), p))
        throw DomainError("letter priority outside Π");
    }
  }
  auto [it, inserted] = index_.try_emplace(letter, static_cast<LetterIndex>(letters_.size()));
  if (inserted) letters_.push_back(letter);
  return it->second;
}

ParityAutomaton FullAutomaton::materialize() const {
  std::vector<std::string> alphabet;
  std::vector<ParityTransition> ts;
  for (LetterIndex a = 0; a < num_letters(); ++a) {
    alphabet.push_back(letter_name(a));
    for (const auto& [pair, prios] : letters_[static_cast<std::size_t>(a)].entries()) {
      if (prios.empty()) continue;
      const std::vector<int> v(prios.begin(), prios.end());
      ts.push_back({pair.first, a, pair.second, opt_priority(v)});
    }
  }
  return ParityAutomaton(names_, std::move(alphabet), StateSet::first_n(num_states_), std::move(ts), priorities_);
}

FullAutomaton full_parity_automaton(int num_states, std::vector<int> priorities) {
  return FullAutomaton(num_states, std::move(priorities));
}

std::vector<int> priority_range(int max_priority) {
  std::vector<int> out;
  for (int i = 1; i <= max_priority; ++i) out.push_back(i);
  return out;
}

namespace {

bool in_pi(const std::vector<int>& pi, int p) { return std::binary_search(pi.begin(), pi.end(), p); }

void add_pairs(PriorityMatrixLetter& l, StateSet from, StateSet to, int priority) {
  from.for_each([&](StateIndex p) { to.for_each([&](StateIndex q) { l.add(p, q, priority); }); });
}

}  // namespace

PriorityMatrixLetter beta_letter(const Fnht& t, const std::vector<int>& priorities) {
  PriorityMatrixLetter l;
  const TreeShape& shape = t.shape();
  for (int v = 0; v < t.size(); ++v) {
    const int level = t.level(v);
    const NodeLabels& lab = t.labels(v);
    const auto& node = shape.node(v);
    if (node.stepchild) {
      if (in_pi(priorities, level + 1)) add_pairs(l, lab.states, lab.states, level + 1);
      for (std::size_t c = 0; c < node.children.size(); ++c) {
        const StateSet child = t.labels(node.children[c]).states;
        add_pairs(l, lab.recurrent, child, level);
        // From every younger sibling into this one.
        for (std::size_t younger = c + 1; younger < node.children.size(); ++younger)
          add_pairs(l, t.labels(node.children[younger]).states, child, level);
      }
    } else {
      add_pairs(l, lab.pure, lab.recurrent, level);
      add_pairs(l, lab.recurrent, lab.recurrent, level - 1);
      add_pairs(l, lab.pure, lab.pure, level - 1);
    }
  }
  return l;
}

PriorityMatrixLetter gamma_letter(const Fnht& t, const std::vector<int>& priorities) {
  PriorityMatrixLetter l = beta_letter(t, priorities);
  for (int v = 0; v < t.size(); ++v) {
    const int level = t.level(v);
    const NodeLabels& lab = t.labels(v);
    if (t.shape().node(v).stepchild) {
      add_pairs(l, lab.recurrent, lab.recurrent, level);
    } else if (in_pi(priorities, level - 2)) {
      add_pairs(l, lab.recurrent, lab.recurrent, level - 2);
      add_pairs(l, lab.pure, lab.pure, level - 2);
    }
  }
  return l;
}

LassoWord hard_word(FullAutomaton& full, const Fnht& t, int h) {
  if (h < 2) throw DomainError("hard word length h must be at least 2");
  const LetterIndex beta = full.register_letter(beta_letter(t, full.priorities()));
  const LetterIndex gamma = full.register_letter(gamma_letter(t, full.priorities()));
  LassoWord w;
  w.period.push_back(beta);
  w.period.insert(w.period.end(), static_cast<std::size_t>(h - 1), gamma);
  return w;
}

int default_hard_word_length(int num_states, int max_priority) {
  return static_cast<int>(enumerate_fnhts(StateSet::first_n(num_states), max_priority).size()) + 1;
}

}  // namespace parcomp
