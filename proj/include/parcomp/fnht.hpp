#pragma once

#include <climits>
#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "parcomp/state_set.hpp"

namespace parcomp {

/// Path step used for the stepchild edge. It sorts after every natural
/// child index, so lexicographic path order is the pre-order that visits
/// natural children (in sibling order) before the stepchild.
inline constexpr int kStepchildStep = INT_MAX;

/// A node of a flattened tree, addressed by its path from the root. The empty
/// path is the root, which counts as a stepchild.
struct NodeId {
  std::vector<int> steps;

  bool is_root() const { return steps.empty(); }
  bool is_stepchild() const { return steps.empty() || steps.back() == kStepchildStep; }
  int stepchild_depth() const;
  NodeId parent() const;
  NodeId natural_child(int c) const;
  NodeId stepchild() const;

  /// "" for the root, otherwise dot-separated steps with "s" for stepchild
  /// edges, e.g. "0.s.1".
  std::string to_string() const;
  static NodeId parse(const std::string& text);

  auto operator<=>(const NodeId&) const = default;
};

/// max_even minus 2 for every stepchild edge on the path.
int level_of(const NodeId& node, int max_even);

struct NodeLabels {
  StateSet states;
  StateSet pure;
  StateSet recurrent;

  auto operator<=>(const NodeLabels&) const = default;
};

/// Loosely typed FNHT candidate, used for validation and tests. It can hold
/// records that violate any of the structural constraints.
struct FnhtRecord {
  std::map<NodeId, NodeLabels> nodes;
  int max_even = 2;
};

/// Returns the violated constraints of a candidate; empty means valid.
std::vector<std::string> validate_fnht(const FnhtRecord& candidate, StateSet universe, int max_priority);

/// max Π when Π = {min..max} is contiguous and max Π ≥ 2.
inline int max_even_for(int max_priority) { return max_priority % 2 == 0 ? max_priority : max_priority - 1; }

/// Immutable node layout of a flattened tree, shared between every FNHT with
/// the same shape. Nodes are stored in pre-order.
class TreeShape {
 public:
  struct Node {
    NodeId id;
    int parent = -1;
    bool stepchild = false;
    std::vector<int> children;  // natural children in sibling order
    int step = -1;              // index of the stepchild, if any
    int depth = 0;              // number of stepchild edges on the path
  };

  /// Throws FormatError unless `ids` is a non-empty prefix-closed path set.
  static std::shared_ptr<const TreeShape> make(std::vector<NodeId> ids);

  int size() const { return static_cast<int>(nodes_.size()); }
  const Node& node(int i) const { return nodes_[static_cast<std::size_t>(i)]; }
  const std::vector<Node>& nodes() const { return nodes_; }
  bool is_leaf(int i) const { return node(i).children.empty() && node(i).step < 0; }
  std::optional<int> find(const NodeId& id) const;
  /// Compact encoding of all node paths; equal keys mean equal shapes.
  const std::string& key() const { return key_; }

 private:
  std::vector<Node> nodes_;
  std::string key_;
};

/// A flattened nested history tree. Levels are derived from the max even
/// priority and never stored.
class Fnht {
 public:
  Fnht(std::shared_ptr<const TreeShape> shape, std::vector<NodeLabels> labels, int max_even);

  /// Requires a prefix-closed record; does not check the label constraints.
  static Fnht from_record(const FnhtRecord& record);
  FnhtRecord to_record() const;

  const TreeShape& shape() const { return *shape_; }
  const std::shared_ptr<const TreeShape>& shape_ptr() const { return shape_; }
  int size() const { return shape_->size(); }
  int max_even() const { return max_even_; }
  int level(int node) const { return max_even_ - 2 * shape_->node(node).depth; }
  const NodeLabels& labels(int node) const { return labels_[static_cast<std::size_t>(node)]; }
  const std::vector<NodeLabels>& all_labels() const { return labels_; }
  StateSet root_states() const { return labels_.front().states; }

  std::string key() const;

  friend bool operator==(const Fnht& a, const Fnht& b);
  /// Canonical order: tree size, node paths, then labels.
  friend std::strong_ordering canonical_compare(const Fnht& a, const Fnht& b);

 private:
  std::shared_ptr<const TreeShape> shape_;
  std::vector<NodeLabels> labels_;
  int max_even_;
};

std::vector<std::string> validate_fnht(const Fnht& t, StateSet universe, int max_priority);

bool is_full_fnht(const Fnht& t, StateSet universe);

enum class MarkerKind { recurrent, pure };

struct Marker {
  int node = 0;  // pre-order index in the tree shape
  MarkerKind kind = MarkerKind::recurrent;

  auto operator<=>(const Marker&) const = default;
};

/// A marked flattened tree.
struct Mft {
  Fnht tree;
  Marker marker;
  StateSet marking;

  std::string key() const;
  friend bool operator==(const Mft& a, const Mft& b) {
    return a.marker == b.marker && a.marking == b.marking && a.tree == b.tree;
  }
};

/// The set a marker may observe: l_r for kind r; l_p for kind p on a leaf,
/// empty for kind p on an inner node.
StateSet marker_set(const Fnht& t, Marker m);

std::vector<std::string> validate_mft(const Mft& m, StateSet universe, int max_priority);
bool is_full_marking(const Mft& m);

/// All markers with a non-empty marker set, in round-robin order: pre-order
/// over the tree, r before p at each node.
std::vector<Marker> marker_candidates(const Fnht& t);

/// First candidate strictly after `current` in round-robin order, wrapping
/// around to `current` itself, paired with its full marker set.
std::pair<Marker, StateSet> next_marker(const Fnht& t, Marker current);

/// First candidate from the start of the round-robin order.
std::pair<Marker, StateSet> first_marker(const Fnht& t);

nlohmann::ordered_json to_json(const Fnht& t, const std::vector<std::string>& state_names);
nlohmann::ordered_json to_json(const Mft& m, const std::vector<std::string>& state_names);
Fnht fnht_from_json(const nlohmann::json& j, const std::vector<std::string>& state_names);
Mft mft_from_json(const nlohmann::json& j, const std::vector<std::string>& state_names);

/// Default state names q0..q{n-1}.
std::vector<std::string> default_state_names(int n);

}  // namespace parcomp
