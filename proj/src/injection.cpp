#include "parcomp/injection.hpp"

#include "parcomp/errors.hpp"

namespace parcomp {

namespace {

int natural_child_count(const FnhtRecord& r, const NodeId& v) {
  int c = 0;
  while (r.nodes.contains(v.natural_child(c))) ++c;
  return c;
}

}  // namespace

Fnht inject_nonfull_fnht(const Fnht& t, StateSet universe) {
  if (is_full_fnht(t, universe)) throw DomainError("already full");
  FnhtRecord r = t.to_record();
  const NodeId root;
  const StateSet missing = universe - t.root_states();
  r.nodes.emplace(root.natural_child(natural_child_count(r, root)), NodeLabels{missing, missing, {}});
  r.nodes.at(root).states = universe;
  return Fnht::from_record(r);
}

Mft inject_nonfull_mft(const Mft& m) {
  if (is_full_marking(m)) throw DomainError("marking already full");
  FnhtRecord r = m.tree.to_record();
  const NodeId marked = m.tree.shape().node(m.marker.node).id;
  const StateSet qm = m.marking;
  NodeLabels& lab = r.nodes.at(marked);

  if (m.tree.size() == 1) {
    const NodeId root;
    const StateSet rest = lab.states - qm;
    lab.recurrent = qm;
    r.nodes.emplace(root.natural_child(0), NodeLabels{rest, rest, {}});
    Fnht tree = Fnht::from_record(r);
    return Mft{std::move(tree), Marker{0, MarkerKind::recurrent}, qm};
  }

  StateSet reduced;
  NodeId fresh;
  if (marked.is_stepchild()) {
    lab.recurrent -= qm;
    reduced = lab.recurrent;
    fresh = marked.natural_child(natural_child_count(r, marked));
  } else {
    if (m.marker.kind == MarkerKind::pure) {
      lab.pure -= qm;
      reduced = lab.pure;
    } else {
      lab.recurrent -= qm;
      reduced = lab.recurrent;
    }
    lab.states -= qm;
    const NodeId parent = marked.parent();
    fresh = parent.natural_child(natural_child_count(r, parent));
  }
  r.nodes.emplace(fresh, NodeLabels{qm, qm, {}});
  Fnht tree = Fnht::from_record(r);
  const int node = *tree.shape().find(marked);
  return Mft{std::move(tree), Marker{node, m.marker.kind}, reduced};
}

}  // namespace parcomp
