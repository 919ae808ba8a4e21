#include "parcomp/fnht.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "parcomp/errors.hpp"

namespace parcomp {

int NodeId::stepchild_depth() const {
  return static_cast<int>(std::count(steps.begin(), steps.end(), kStepchildStep));
}

NodeId NodeId::parent() const {
  if (steps.empty()) throw std::logic_error("root has no parent");
  NodeId p = *this;
  p.steps.pop_back();
  return p;
}

NodeId NodeId::natural_child(int c) const {
  NodeId n = *this;
  n.steps.push_back(c);
  return n;
}

NodeId NodeId::stepchild() const {
  NodeId n = *this;
  n.steps.push_back(kStepchildStep);
  return n;
}

std::string NodeId::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (i > 0) out += '.';
    out += steps[i] == kStepchildStep ? std::string("s") : std::to_string(steps[i]);
  }
  return out;
}

NodeId NodeId::parse(const std::string& text) {
  NodeId id;
  if (text.empty()) return id;
  std::size_t start = 0;
  while (true) {
    const std::size_t dot = text.find('.', start);
    const std::string part = text.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (part == "s") {
      id.steps.push_back(kStepchildStep);
    } else {
      if (part.empty() || !std::all_of(part.begin(), part.end(), [](char c) { return c >= '0' && c <= '9'; }))
        throw FormatError("malformed node path '" + text + "'");
      id.steps.push_back(std::stoi(part));
    }
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  return id;
}

int level_of(const NodeId& node, int max_even) { return max_even - 2 * node.stepchild_depth(); }

// ---------------------------------------------------------------------------
// Validation

std::vector<std::string> validate_fnht(const FnhtRecord& candidate, StateSet universe, int max_priority) {
  std::vector<std::string> out;
  auto report = [&](const std::string& msg) {
    if (std::find(out.begin(), out.end(), msg) == out.end()) out.push_back(msg);
  };

  const auto& nodes = candidate.nodes;
  if (nodes.empty()) {
    report("tree is empty");
    return out;
  }
  if (!nodes.contains(NodeId{})) report("tree has no root");
  if (candidate.max_even != max_even_for(max_priority)) report("max even priority inconsistent with max priority");

  std::map<NodeId, std::vector<NodeId>> children;
  for (const auto& [id, lab] : nodes) {
    if (std::any_of(id.steps.begin(), id.steps.end(), [](int s) { return s < 0; })) {
      report("malformed node path");
      continue;
    }
    if (id.is_root()) continue;
    const NodeId parent = id.parent();
    if (!nodes.contains(parent)) {
      report("tree not prefix closed");
      continue;
    }
    children[parent].push_back(id);
    if (parent.is_stepchild() && id.is_stepchild()) report("stepchildren have only natural children");
    if (!parent.is_stepchild() && !id.is_stepchild()) report("natural children have only stepchildren");
    if (!id.is_stepchild() && id.steps.back() > 0 && !nodes.contains(parent.natural_child(id.steps.back() - 1)))
      report("tree not order closed");
  }

  for (const auto& [id, lab] : nodes) {
    if (lab.states.empty()) report("empty state label");
    if (!lab.states.subset_of(universe) || !lab.pure.subset_of(universe) || !lab.recurrent.subset_of(universe))
      report("labels outside the state universe");
    if (level_of(id, candidate.max_even) < 2) report("level below 2");

    auto it = children.find(id);
    const bool leaf = it == children.end() || it->second.empty();

    if (id.is_stepchild()) {
      if (leaf) {
        if (!id.is_root())
          report("only natural children may be leaves");
        else if (max_priority % 2 == 0)
          report("root leaf requires odd max priority");
      }
      if (!lab.pure.empty()) report("stepchild has pure states");
      StateSet covered = lab.recurrent;
      bool disjoint = true;
      if (!leaf) {
        for (const auto& c : it->second) {
          if (!c.is_stepchild()) {
            const StateSet cs = nodes.at(c).states;
            if (!cs.disjoint(covered)) disjoint = false;
            covered |= cs;
          }
        }
      }
      if (!disjoint) report("stepchild partition not disjoint");
      if (covered != lab.states) report("stepchild states are not recurrent plus children");
    } else {
      if (lab.pure.empty()) report("natural child has no pure states");
      if ((lab.pure | lab.recurrent) != lab.states) report("natural child states are not pure plus recurrent");
      if (!lab.pure.disjoint(lab.recurrent)) report("natural child pure and recurrent overlap");
      auto step = nodes.find(id.stepchild());
      if (step != nodes.end() && step->second.states != lab.pure)
        report("stepchild states differ from parent pure states");
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Tree shapes and FNHTs

std::shared_ptr<const TreeShape> TreeShape::make(std::vector<NodeId> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  if (ids.empty() || !ids.front().is_root()) throw FormatError("tree has no root");

  auto shape = std::make_shared<TreeShape>();
  shape->nodes_.resize(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    Node& n = shape->nodes_[i];
    n.id = ids[i];
    n.stepchild = n.id.is_stepchild();
    n.depth = n.id.stepchild_depth();
    if (i > 0) {
      auto pit = std::lower_bound(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(i), n.id.parent());
      if (pit == ids.begin() + static_cast<std::ptrdiff_t>(i) || *pit != n.id.parent())
        throw FormatError("tree not prefix closed at '" + n.id.to_string() + "'");
      n.parent = static_cast<int>(pit - ids.begin());
      Node& p = shape->nodes_[static_cast<std::size_t>(n.parent)];
      if (n.id.steps.back() == kStepchildStep)
        p.step = static_cast<int>(i);
      else
        p.children.push_back(static_cast<int>(i));
    }
    if (i > 0) shape->key_ += '|';
    shape->key_ += n.id.to_string();
  }
  return shape;
}

std::optional<int> TreeShape::find(const NodeId& id) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), id, [](const Node& n, const NodeId& x) { return n.id < x; });
  if (it == nodes_.end() || it->id != id) return std::nullopt;
  return static_cast<int>(it - nodes_.begin());
}

Fnht::Fnht(std::shared_ptr<const TreeShape> shape, std::vector<NodeLabels> labels, int max_even)
    : shape_(std::move(shape)), labels_(std::move(labels)), max_even_(max_even) {
  if (!shape_ || static_cast<int>(labels_.size()) != shape_->size())
    throw std::invalid_argument("label count does not match tree shape");
}

Fnht Fnht::from_record(const FnhtRecord& record) {
  std::vector<NodeId> ids;
  std::vector<NodeLabels> labels;
  for (const auto& [id, lab] : record.nodes) {
    ids.push_back(id);
    labels.push_back(lab);
  }
  // std::map iteration order already matches the shape's pre-order.
  return Fnht(TreeShape::make(std::move(ids)), std::move(labels), record.max_even);
}

FnhtRecord Fnht::to_record() const {
  FnhtRecord r;
  r.max_even = max_even_;
  for (int i = 0; i < size(); ++i) r.nodes.emplace(shape_->node(i).id, labels(i));
  return r;
}

std::string Fnht::key() const {
  std::string k = shape_->key();
  k += '#';
  k += std::to_string(max_even_);
  k += '#';
  for (const auto& l : labels_) {
    for (StateSet s : {l.states, l.pure, l.recurrent}) {
      const std::uint64_t b = s.bits();
      k.append(reinterpret_cast<const char*>(&b), sizeof b);
    }
  }
  return k;
}

bool operator==(const Fnht& a, const Fnht& b) {
  if (a.max_even_ != b.max_even_ || a.labels_ != b.labels_) return false;
  return a.shape_ == b.shape_ || a.shape_->key() == b.shape_->key();
}

std::strong_ordering canonical_compare(const Fnht& a, const Fnht& b) {
  if (auto c = a.size() <=> b.size(); c != 0) return c;
  for (int i = 0; i < a.size(); ++i) {
    if (auto c = a.shape().node(i).id <=> b.shape().node(i).id; c != 0) return c;
  }
  if (auto c = a.labels_ <=> b.labels_; c != 0) return c;
  return a.max_even_ <=> b.max_even_;
}

std::vector<std::string> validate_fnht(const Fnht& t, StateSet universe, int max_priority) {
  return validate_fnht(t.to_record(), universe, max_priority);
}

bool is_full_fnht(const Fnht& t, StateSet universe) { return t.root_states() == universe; }

// ---------------------------------------------------------------------------
// Markers

StateSet marker_set(const Fnht& t, Marker m) {
  if (m.kind == MarkerKind::recurrent) return t.labels(m.node).recurrent;
  return t.shape().is_leaf(m.node) ? t.labels(m.node).pure : StateSet{};
}

std::string Mft::key() const {
  std::string k = tree.key();
  k += '@';
  k += std::to_string(marker.node);
  k += marker.kind == MarkerKind::recurrent ? 'r' : 'p';
  const std::uint64_t b = marking.bits();
  k.append(reinterpret_cast<const char*>(&b), sizeof b);
  return k;
}

std::vector<std::string> validate_mft(const Mft& m, StateSet universe, int max_priority) {
  auto out = validate_fnht(m.tree, universe, max_priority);
  if (m.marker.node < 0 || m.marker.node >= m.tree.size()) {
    out.push_back("marker node not in tree");
    return out;
  }
  if (m.marking.empty()) out.push_back("marking is empty");
  if (m.marker.kind == MarkerKind::pure && !m.tree.shape().is_leaf(m.marker.node))
    out.push_back("pure marker on a non-leaf");
  if (!m.marking.subset_of(marker_set(m.tree, m.marker))) out.push_back("marking not contained in marker set");
  return out;
}

bool is_full_marking(const Mft& m) { return m.marking == marker_set(m.tree, m.marker); }

namespace {

int slot_of(Marker m) { return 2 * m.node + (m.kind == MarkerKind::pure ? 1 : 0); }
Marker marker_of_slot(int slot) {
  return Marker{slot / 2, slot % 2 == 1 ? MarkerKind::pure : MarkerKind::recurrent};
}

}  // namespace

std::vector<Marker> marker_candidates(const Fnht& t) {
  std::vector<Marker> out;
  for (int slot = 0; slot < 2 * t.size(); ++slot) {
    const Marker m = marker_of_slot(slot);
    if (!marker_set(t, m).empty()) out.push_back(m);
  }
  return out;
}

std::pair<Marker, StateSet> next_marker(const Fnht& t, Marker current) {
  const int slots = 2 * t.size();
  const int start = slot_of(current);
  for (int k = 1; k <= slots; ++k) {
    const Marker m = marker_of_slot((start + k) % slots);
    const StateSet s = marker_set(t, m);
    if (!s.empty()) return {m, s};
  }
  throw std::logic_error("no marker available");
}

std::pair<Marker, StateSet> first_marker(const Fnht& t) {
  // Starting "after" the last slot begins the scan at slot 0.
  return next_marker(t, marker_of_slot(2 * t.size() - 1));
}

// ---------------------------------------------------------------------------
// JSON

namespace {

nlohmann::ordered_json names_of(StateSet s, const std::vector<std::string>& names) {
  auto a = nlohmann::ordered_json::array();
  s.for_each([&](StateIndex q) { a.push_back(names.at(static_cast<std::size_t>(q))); });
  return a;
}

StateSet set_of(const nlohmann::json& j, const std::vector<std::string>& names) {
  if (!j.is_array()) throw FormatError("state label must be an array");
  StateSet s;
  for (const auto& e : j) {
    if (!e.is_string()) throw FormatError("state label entries must be strings");
    auto it = std::find(names.begin(), names.end(), e.get<std::string>());
    if (it == names.end()) throw FormatError("unknown state '" + e.get<std::string>() + "'");
    s.insert(static_cast<StateIndex>(it - names.begin()));
  }
  return s;
}

const nlohmann::json& need(const nlohmann::json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  return j.at(key);
}

}  // namespace

nlohmann::ordered_json to_json(const Fnht& t, const std::vector<std::string>& state_names) {
  nlohmann::ordered_json j;
  j["max_even"] = t.max_even();
  auto nodes = nlohmann::ordered_json::array();
  for (int i = 0; i < t.size(); ++i) {
    nlohmann::ordered_json n;
    n["node"] = t.shape().node(i).id.to_string();
    n["states"] = names_of(t.labels(i).states, state_names);
    n["pure"] = names_of(t.labels(i).pure, state_names);
    n["recurrent"] = names_of(t.labels(i).recurrent, state_names);
    nodes.push_back(std::move(n));
  }
  j["nodes"] = std::move(nodes);
  return j;
}

nlohmann::ordered_json to_json(const Mft& m, const std::vector<std::string>& state_names) {
  nlohmann::ordered_json j;
  j["tree"] = to_json(m.tree, state_names);
  j["marker"] = {{"node", m.tree.shape().node(m.marker.node).id.to_string()},
                 {"kind", m.marker.kind == MarkerKind::recurrent ? "r" : "p"}};
  j["marking"] = names_of(m.marking, state_names);
  return j;
}

Fnht fnht_from_json(const nlohmann::json& j, const std::vector<std::string>& state_names) {
  FnhtRecord r;
  const auto& me = need(j, "max_even");
  if (!me.is_number_integer()) throw FormatError("'max_even' must be an integer");
  r.max_even = me.get<int>();
  const auto& nodes = need(j, "nodes");
  if (!nodes.is_array()) throw FormatError("'nodes' must be an array");
  for (const auto& n : nodes) {
    const auto& path = need(n, "node");
    if (!path.is_string()) throw FormatError("'node' must be a path string");
    NodeLabels l{set_of(need(n, "states"), state_names), set_of(need(n, "pure"), state_names),
                 set_of(need(n, "recurrent"), state_names)};
    if (!r.nodes.emplace(NodeId::parse(path.get<std::string>()), l).second)
      throw FormatError("duplicate node '" + path.get<std::string>() + "'");
  }
  return Fnht::from_record(r);
}

Mft mft_from_json(const nlohmann::json& j, const std::vector<std::string>& state_names) {
  Fnht tree = fnht_from_json(need(j, "tree"), state_names);
  const auto& mk = need(j, "marker");
  const auto& node = need(mk, "node");
  const auto& kind = need(mk, "kind");
  if (!node.is_string() || !kind.is_string()) throw FormatError("malformed marker");
  auto idx = tree.shape().find(NodeId::parse(node.get<std::string>()));
  if (!idx) throw FormatError("marker node not in tree");
  const std::string k = kind.get<std::string>();
  if (k != "r" && k != "p") throw FormatError("marker kind must be \"r\" or \"p\"");
  Marker m{*idx, k == "r" ? MarkerKind::recurrent : MarkerKind::pure};
  return Mft{std::move(tree), m, set_of(need(j, "marking"), state_names)};
}

std::vector<std::string> default_state_names(int n) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("q" + std::to_string(i));
  return names;
}

}  // namespace parcomp
