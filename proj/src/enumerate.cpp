#include "parcomp/enumerate.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

#include "parcomp/errors.hpp"

namespace parcomp {

namespace {

// A subtree with paths relative to its own root.
using Fragment = std::vector<std::pair<NodeId, NodeLabels>>;

NodeId prefixed(int step, const NodeId& rel) {
  NodeId id;
  id.steps.reserve(rel.steps.size() + 1);
  id.steps.push_back(step);
  id.steps.insert(id.steps.end(), rel.steps.begin(), rel.steps.end());
  return id;
}

class Generator {
 public:
  Generator(int max_priority, std::size_t cap) : max_priority_(max_priority), cap_(cap) {}

  std::vector<Fnht> trees_with_root(StateSet root) {
    std::vector<Fnht> out;
    const int max_even = max_even_for(max_priority_);
    for (const Fragment& f : stepchild(root, max_even, max_priority_ % 2 == 1)) {
      if (++emitted_ > cap_) throw CapExceeded("FNHT enumeration exceeded cap of " + std::to_string(cap_));
      std::vector<NodeId> ids;
      std::vector<NodeLabels> labels;
      std::string key;
      for (const auto& [id, lab] : f) {
        ids.push_back(id);
        key += id.to_string();
        key += '|';
      }
      // Fragments are assembled in pre-order, so labels line up with the shape.
      auto& shape = shapes_[key];
      if (!shape) {
        shape = TreeShape::make(ids);
        for (std::size_t i = 0; i < ids.size(); ++i) {
          if (shape->node(static_cast<int>(i)).id != ids[i]) throw std::logic_error("fragment not in pre-order");
        }
      }
      labels.reserve(f.size());
      for (const auto& [id, lab] : f) labels.push_back(lab);
      out.emplace_back(shape, std::move(labels), max_even);
    }
    return out;
  }

 private:
  // Stepchild at `level` with state set `s`: a recurrent set plus an ordered
  // partition of the remaining states into natural children.
  const std::vector<Fragment>& stepchild(StateSet s, int level, bool may_be_leaf) {
    const auto key = std::make_tuple(true, s.bits(), level, may_be_leaf);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::vector<Fragment> out;
    s.for_each_subset([&](StateSet recurrent) {
      const StateSet rest = s - recurrent;
      if (rest.empty()) {
        if (may_be_leaf) out.push_back({{NodeId{}, NodeLabels{s, {}, recurrent}}});
        return;
      }
      for (const auto& blocks : ordered_partitions(rest)) {
        std::vector<Fragment> partial{{{NodeId{}, NodeLabels{s, {}, recurrent}}}};
        for (std::size_t c = 0; c < blocks.size(); ++c) {
          const auto& options = natural(blocks[c], level);
          std::vector<Fragment> next;
          next.reserve(partial.size() * options.size());
          for (const auto& base : partial) {
            for (const auto& opt : options) {
              Fragment f = base;
              for (const auto& [rel, lab] : opt) f.emplace_back(prefixed(static_cast<int>(c), rel), lab);
              next.push_back(std::move(f));
            }
          }
          partial = std::move(next);
        }
        for (auto& f : partial) out.push_back(std::move(f));
      }
    });
    return memo_.emplace(key, std::move(out)).first->second;
  }

  // Natural child with state set `s`: a non-empty pure part, optionally
  // refined further by a stepchild two levels down.
  const std::vector<Fragment>& natural(StateSet s, int level) {
    const auto key = std::make_tuple(false, s.bits(), level, false);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::vector<Fragment> out;
    s.for_each_subset([&](StateSet pure) {
      if (pure.empty()) return;
      const NodeLabels self{s, pure, s - pure};
      out.push_back({{NodeId{}, self}});
      if (level - 2 >= 2) {
        for (const auto& sub : stepchild(pure, level - 2, false)) {
          Fragment f{{NodeId{}, self}};
          for (const auto& [rel, lab] : sub) f.emplace_back(prefixed(kStepchildStep, rel), lab);
          out.push_back(std::move(f));
        }
      }
    });
    return memo_.emplace(key, std::move(out)).first->second;
  }

  static std::vector<std::vector<StateSet>> ordered_partitions(StateSet s) {
    if (s.empty()) return {{}};
    std::vector<std::vector<StateSet>> out;
    s.for_each_subset([&](StateSet first) {
      if (first.empty()) return;
      for (auto& tail : ordered_partitions(s - first)) {
        std::vector<StateSet> p{first};
        p.insert(p.end(), tail.begin(), tail.end());
        out.push_back(std::move(p));
      }
    });
    return out;
  }

  int max_priority_;
  std::size_t cap_;
  std::size_t emitted_ = 0;
  std::map<std::tuple<bool, std::uint64_t, int, bool>, std::vector<Fragment>> memo_;
  std::unordered_map<std::string, std::shared_ptr<const TreeShape>> shapes_;
};

void check_domain(StateSet universe, int max_priority) {
  if (max_priority < 2) throw DomainError("construction requires max Π ≥ 2");
  if (universe.empty()) throw DomainError("state universe must be non-empty");
}

void sort_canonical(std::vector<Fnht>& v) {
  std::sort(v.begin(), v.end(), [](const Fnht& a, const Fnht& b) { return canonical_compare(a, b) < 0; });
}

}  // namespace

std::vector<Fnht> enumerate_fnhts(StateSet universe, int max_priority, const EnumerationOptions& options) {
  check_domain(universe, max_priority);
  Generator gen(max_priority, options.cap);
  std::vector<Fnht> out;
  if (options.full_only) {
    out = gen.trees_with_root(universe);
  } else {
    universe.for_each_subset([&](StateSet root) {
      if (root.empty()) return;
      auto part = gen.trees_with_root(root);
      out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    });
  }
  sort_canonical(out);
  return out;
}

std::vector<Fnht> enumerate_fnhts_with_root(StateSet root_states, int max_priority,
                                            const EnumerationOptions& options) {
  check_domain(root_states, max_priority);
  Generator gen(max_priority, options.cap);
  auto out = gen.trees_with_root(root_states);
  sort_canonical(out);
  return out;
}

std::vector<Mft> mfts_of(const Fnht& tree) {
  std::vector<Mft> out;
  for (const Marker m : marker_candidates(tree)) {
    marker_set(tree, m).for_each_subset([&](StateSet marking) {
      if (!marking.empty()) out.push_back(Mft{tree, m, marking});
    });
  }
  return out;
}

std::vector<Mft> enumerate_mfts(StateSet universe, int max_priority, const EnumerationOptions& options) {
  EnumerationOptions tree_options = options;
  std::vector<Mft> out;
  for (const auto& t : enumerate_fnhts(universe, max_priority, tree_options)) {
    for (auto& m : mfts_of(t)) {
      if (out.size() >= options.cap) throw CapExceeded("MFT enumeration exceeded cap of " + std::to_string(options.cap));
      out.push_back(std::move(m));
    }
  }
  return out;
}

}  // namespace parcomp
