#include "parcomp/analysis.hpp"

#include <algorithm>
#include <deque>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "parcomp/enumerate.hpp"
#include "parcomp/errors.hpp"
#include "parcomp/graph.hpp"

namespace parcomp {

namespace {

struct LassoCursor {
  const LassoWord& w;
  int length() const { return static_cast<int>(w.prefix.size() + w.period.size()); }
  LetterIndex letter(int pos) const {
    const auto u = static_cast<int>(w.prefix.size());
    return pos < u ? w.prefix[static_cast<std::size_t>(pos)] : w.period[static_cast<std::size_t>(pos - u)];
  }
  int next(int pos) const { return pos + 1 < length() ? pos + 1 : static_cast<int>(w.prefix.size()); }
};

// Reachable product of an automaton with the positions of a lasso. `expand`
// is called with (state, letter) and must return (target, weight) pairs.
template <typename Expand>
WeightedGraph lasso_product(const std::vector<int>& initial, int num_states, const LassoWord& w, Expand&& expand) {
  const LassoCursor cur{w};
  const int len = cur.length();
  std::unordered_map<long long, int> local;
  WeightedGraph g;
  std::deque<std::pair<int, int>> work;  // (state, pos)
  auto intern = [&](int q, int pos) {
    const long long key = static_cast<long long>(q) * len + pos;
    auto [it, inserted] = local.try_emplace(key, static_cast<int>(g.size()));
    if (inserted) {
      g.emplace_back();
      work.emplace_back(q, pos);
    }
    return it->second;
  };
  (void)num_states;
  for (int q : initial) intern(q, 0);
  while (!work.empty()) {
    auto [q, pos] = work.front();
    work.pop_front();
    const int from = local.at(static_cast<long long>(q) * len + pos);
    const int next = cur.next(pos);
    const LetterIndex a = cur.letter(pos);
    for (const auto& [to, weight] : expand(q, a)) {
      const int t = intern(to, next);
      g[static_cast<std::size_t>(from)].push_back({t, weight, a});
    }
  }
  return g;
}

std::vector<int> initial_list(StateSet s) { return s.elements(); }

}  // namespace

bool parity_lasso_member(const ParityAutomaton& p, const LassoWord& w) {
  check_lasso(w, p.num_letters());
  auto g = lasso_product(initial_list(p.initial()), p.num_states(), w, [&](int q, LetterIndex a) {
    std::vector<std::pair<int, int>> out;
    for (const auto& e : p.successors(q, a)) out.emplace_back(e.to, e.priority);
    return out;
  });
  for (int e : p.priorities()) {
    if (e % 2 == 0 && has_cycle_through_weight(g, e)) return true;
  }
  return false;
}

bool buchi_lasso_member(const BuchiAutomaton& b, const LassoWord& w) {
  check_lasso(w, b.num_letters());
  auto g = lasso_product(b.initial(), b.num_states(), w, [&](int q, LetterIndex a) {
    std::vector<std::pair<int, int>> out;
    for (int ti : b.outgoing(q)) {
      const auto& t = b.transitions()[static_cast<std::size_t>(ti)];
      if (t.letter == a) out.emplace_back(t.to, t.accepting ? 2 : 1);
    }
    return out;
  });
  return has_cycle_through_weight(g, 2);
}

bool complement_lasso_member(ComplementStepper& stepper, const LassoWord& w) {
  check_lasso(w, stepper.automaton().num_letters());
  const LassoCursor cur{w};
  std::unordered_map<std::string, int> local;
  std::vector<ComplementState> states;
  std::vector<int> positions;
  WeightedGraph g;
  std::deque<int> work;
  auto intern = [&](const ComplementState& s, int pos) {
    std::string key = state_key(s);
    key += '/';
    key += std::to_string(pos);
    auto [it, inserted] = local.try_emplace(std::move(key), static_cast<int>(g.size()));
    if (inserted) {
      g.emplace_back();
      states.push_back(s);
      positions.push_back(pos);
      work.push_back(it->second);
    }
    return it->second;
  };
  intern(stepper.initial(), 0);
  while (!work.empty()) {
    const int v = work.front();
    work.pop_front();
    const int pos = positions[static_cast<std::size_t>(v)];
    const LetterIndex a = cur.letter(pos);
    const ComplementState state = states[static_cast<std::size_t>(v)];
    for (const auto& step : stepper.successors(state, a)) {
      const int t = intern(step.successor, cur.next(pos));
      g[static_cast<std::size_t>(v)].push_back({t, step.accepting ? 2 : 1, a});
    }
  }
  return has_cycle_through_weight(g, 2);
}

void canonicalize_lasso(LassoWord& w) {
  // u·a (v·a)^ω = u (a·v)^ω
  while (!w.prefix.empty() && !w.period.empty() && w.prefix.back() == w.period.back()) {
    w.prefix.pop_back();
    std::rotate(w.period.rbegin(), w.period.rbegin() + 1, w.period.rend());
  }
  const std::size_t n = w.period.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool root = true;
    for (std::size_t i = d; i < n && root; ++i) root = w.period[i] == w.period[i - d];
    if (root) {
      w.period.resize(d);
      break;
    }
  }
}

EmptinessWitness buchi_emptiness(const BuchiAutomaton& b) {
  const int n = b.num_states();
  // Reachable subgraph in original numbering; unreachable nodes keep no edges.
  std::vector<char> reach(static_cast<std::size_t>(n), 0);
  std::vector<std::pair<int, int>> parent(static_cast<std::size_t>(n), {-1, -1});  // (prev, letter)
  std::deque<int> work;
  for (int q : b.initial()) {
    if (!reach[q]) {
      reach[q] = 1;
      work.push_back(q);
    }
  }
  WeightedGraph g(static_cast<std::size_t>(n));
  while (!work.empty()) {
    const int q = work.front();
    work.pop_front();
    for (int ti : b.outgoing(q)) {
      const auto& t = b.transitions()[static_cast<std::size_t>(ti)];
      g[static_cast<std::size_t>(q)].push_back({t.to, t.accepting ? 2 : 1, t.letter});
      if (!reach[t.to]) {
        reach[t.to] = 1;
        parent[static_cast<std::size_t>(t.to)] = {q, t.letter};
        work.push_back(t.to);
      }
    }
  }
  const auto comp = strongly_connected_components(g, 2);
  for (int v = 0; v < n; ++v) {
    if (!reach[v]) continue;
    for (const auto& e : g[static_cast<std::size_t>(v)]) {
      if (e.weight != 2 || comp[v] != comp[e.to]) continue;
      LassoWord lasso;
      for (int x = v; parent[static_cast<std::size_t>(x)].first >= 0; x = parent[static_cast<std::size_t>(x)].first)
        lasso.prefix.push_back(parent[static_cast<std::size_t>(x)].second);
      std::reverse(lasso.prefix.begin(), lasso.prefix.end());

      // Path e.to -> v inside the component.
      lasso.period.push_back(e.letter);
      if (e.to != v) {
        std::unordered_map<int, std::pair<int, int>> back;
        std::deque<int> q{e.to};
        back[e.to] = {-1, -1};
        while (!q.empty() && !back.contains(v)) {
          const int x = q.front();
          q.pop_front();
          for (const auto& f : g[static_cast<std::size_t>(x)]) {
            if (comp[f.to] != comp[v] || back.contains(f.to)) continue;
            back[f.to] = {x, f.letter};
            q.push_back(f.to);
          }
        }
        std::vector<int> tail;
        for (int x = v; x != e.to; x = back.at(x).first) tail.push_back(back.at(x).second);
        lasso.period.insert(lasso.period.end(), tail.rbegin(), tail.rend());
      }
      canonicalize_lasso(lasso);
      if (!buchi_lasso_member(b, lasso)) throw std::logic_error("emptiness witness failed self-check");
      return EmptinessWitness{false, std::move(lasso), v};
    }
  }
  return EmptinessWitness{};
}

BuchiAutomaton parity_to_buchi(const ParityAutomaton& p) {
  std::vector<int> evens;
  for (int e : p.priorities()) {
    if (e % 2 == 0) evens.push_back(e);
  }
  const int modes = 1 + static_cast<int>(evens.size());
  auto id = [&](int q, int mode) { return q * modes + mode; };

  std::vector<std::string> names;
  for (int q = 0; q < p.num_states(); ++q) {
    names.push_back(p.state_names()[q] + "|wait");
    for (int e : evens) names.push_back(p.state_names()[q] + "|" + std::to_string(e));
  }
  std::vector<BuchiTransition> ts;
  for (const auto& t : p.transitions()) {
    ts.push_back({id(t.from, 0), t.letter, id(t.to, 0), false});
    for (int m = 1; m < modes; ++m) {
      const int e = evens[static_cast<std::size_t>(m - 1)];
      if (t.priority > e) continue;
      const bool acc = t.priority == e;
      ts.push_back({id(t.from, 0), t.letter, id(t.to, m), acc});
      ts.push_back({id(t.from, m), t.letter, id(t.to, m), acc});
    }
  }
  std::vector<int> initial;
  p.initial().for_each([&](StateIndex q) { initial.push_back(id(q, 0)); });
  return BuchiAutomaton(std::move(names), p.letter_names(), std::move(initial), std::move(ts));
}

BuchiAutomaton intersect_buchi(const BuchiAutomaton& b1, const BuchiAutomaton& b2) {
  const auto& l1 = b1.letter_names();
  const auto& l2 = b2.letter_names();
  if (l1.size() != l2.size()) throw FormatError("intersection requires equal alphabets");
  std::vector<LetterIndex> to_b2(l1.size());
  for (std::size_t a = 0; a < l1.size(); ++a) {
    auto idx = b2.find_letter(l1[a]);
    if (!idx) throw FormatError("intersection requires equal alphabets");
    to_b2[a] = *idx;
  }

  struct Triple {
    int s1, s2, flag;
  };
  std::unordered_map<long long, int> index;
  std::vector<Triple> states;
  std::vector<std::string> names;
  std::vector<BuchiTransition> ts;
  std::deque<int> work;
  auto intern = [&](int s1, int s2, int flag) {
    const long long key = (static_cast<long long>(s1) * b2.num_states() + s2) * 2 + flag;
    auto [it, inserted] = index.try_emplace(key, static_cast<int>(states.size()));
    if (inserted) {
      states.push_back({s1, s2, flag});
      names.push_back(b1.state_names()[s1] + " & " + b2.state_names()[s2] + " #" + std::to_string(flag));
      work.push_back(it->second);
    }
    return it->second;
  };
  std::vector<int> initial;
  for (int i1 : b1.initial())
    for (int i2 : b2.initial()) initial.push_back(intern(i1, i2, 0));

  while (!work.empty()) {
    const int v = work.front();
    work.pop_front();
    const Triple st = states[static_cast<std::size_t>(v)];
    for (int t1i : b1.outgoing(st.s1)) {
      const auto& t1 = b1.transitions()[static_cast<std::size_t>(t1i)];
      const LetterIndex a2 = to_b2[static_cast<std::size_t>(t1.letter)];
      for (int t2i : b2.outgoing(st.s2)) {
        const auto& t2 = b2.transitions()[static_cast<std::size_t>(t2i)];
        if (t2.letter != a2) continue;
        int flag = st.flag;
        bool acc = false;
        if (flag == 0) {
          if (t1.accepting) flag = 1;
        } else if (t2.accepting) {
          flag = 0;
          acc = true;
        }
        ts.push_back({v, t1.letter, intern(t1.to, t2.to, flag), acc});
      }
    }
  }
  return BuchiAutomaton(std::move(names), l1, std::move(initial), std::move(ts));
}

std::vector<LassoWord> enumerate_lassos(int num_letters, int prefix_bound, int period_bound) {
  auto words_of_length = [&](int len) {
    std::vector<std::vector<LetterIndex>> out{{}};
    for (int i = 0; i < len; ++i) {
      std::vector<std::vector<LetterIndex>> next;
      for (const auto& w : out) {
        for (LetterIndex a = 0; a < num_letters; ++a) {
          auto x = w;
          x.push_back(a);
          next.push_back(std::move(x));
        }
      }
      out = std::move(next);
    }
    return out;
  };
  std::vector<LassoWord> out;
  if (num_letters <= 0) return out;
  for (int u = 0; u <= prefix_bound; ++u) {
    const auto prefixes = words_of_length(u);
    for (int v = 1; v <= period_bound; ++v) {
      const auto periods = words_of_length(v);
      for (const auto& pre : prefixes)
        for (const auto& per : periods) out.push_back(LassoWord{pre, per});
    }
  }
  return out;
}

CorrectnessReport complement_correctness_check(const ParityAutomaton& p, const CorrectnessOptions& options) {
  CorrectnessReport r;
  const ComplementResult c = build_complement(p, options.complement);
  r.complement_states = static_cast<std::size_t>(c.automaton.num_states());
  r.subset_states = c.subset_states;
  r.tree_states = c.tree_states;

  const auto product = intersect_buchi(parity_to_buchi(p), c.automaton);
  const auto witness = buchi_emptiness(product);
  r.product_empty = witness.empty;
  if (!witness.empty) r.product_witness = witness.lasso;

  ComplementStepper stepper(p);
  for (const auto& w : enumerate_lassos(p.num_letters(), options.prefix_bound, options.period_bound)) {
    ++r.words_checked;
    const bool in_p = parity_lasso_member(p, w);
    const bool in_c = buchi_lasso_member(c.automaton, w);
    if (in_p == in_c) r.counterexamples.push_back(w);
    if (options.cross_check_stepping && complement_lasso_member(stepper, w) != in_c)
      r.stepping_mismatches.push_back(w);
  }
  return r;
}

bool TightnessReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.second; });
}

TightnessReport tightness_report(int num_states, int max_priority, std::size_t cap) {
  if (num_states < 1 || num_states > 20) throw DomainError("tightness report needs 1..20 states");
  TightnessReport r;
  r.num_states = num_states;
  r.max_priority = max_priority;
  const StateSet universe = StateSet::first_n(num_states);
  EnumerationOptions opts;
  opts.cap = cap;
  const auto trees = enumerate_fnhts(universe, max_priority, opts);
  r.subsets = std::size_t{1} << num_states;
  r.fnhts = trees.size();
  std::size_t max_markers = 0;
  for (const auto& t : trees) {
    if (is_full_fnht(t, universe)) ++r.full_fnhts;
    const auto markers = marker_candidates(t).size();
    max_markers = std::max(max_markers, markers);
    r.full_marking_mfts += markers;
    r.mfts += mfts_of(t).size();
    if (r.mfts > cap) throw CapExceeded("MFT enumeration exceeded cap of " + std::to_string(cap));
  }
  const auto n = static_cast<std::size_t>(num_states);
  r.bound = 4 * num_states + 1;
  r.ratio = static_cast<double>(r.subsets + r.mfts) / static_cast<double>(r.full_fnhts);
  r.checks = {
      {"(|2^Q| + |mft|) <= (4n+1) * #full FNHT", r.subsets + r.mfts <= (4 * n + 1) * r.full_fnhts},
      {"|mft| <= 2 * #full-marking MFT", r.mfts <= 2 * r.full_marking_mfts},
      {"#full-marking MFT <= n * |fnht|", r.full_marking_mfts <= n * r.fnhts},
      {"|fnht| <= 2 * #full FNHT", r.fnhts <= 2 * r.full_fnhts},
      {"markers per FNHT <= n", max_markers <= n},
  };
  return r;
}

nlohmann::ordered_json to_json(const TightnessReport& r) {
  nlohmann::ordered_json j;
  j["states"] = r.num_states;
  j["max_priority"] = r.max_priority;
  j["subsets"] = r.subsets;
  j["mfts"] = r.mfts;
  j["fnhts"] = r.fnhts;
  j["full_fnhts"] = r.full_fnhts;
  j["full_marking_mfts"] = r.full_marking_mfts;
  j["ratio"] = r.ratio;
  j["bound"] = r.bound;
  auto checks = nlohmann::ordered_json::array();
  for (const auto& [name, ok] : r.checks) checks.push_back({{"check", name}, {"passed", ok}});
  j["checks"] = std::move(checks);
  j["passed"] = r.passed();
  return j;
}

std::string to_text(const TightnessReport& r) {
  std::ostringstream out;
  auto row = [&](const std::string& k, const auto& v) { out << std::left << std::setw(20) << k << v << '\n'; };
  row("states", r.num_states);
  row("max priority", r.max_priority);
  row("|2^Q|", r.subsets);
  row("|mft|", r.mfts);
  row("|fnht|", r.fnhts);
  row("full fnht", r.full_fnhts);
  row("full-marking mft", r.full_marking_mfts);
  std::ostringstream ratio;
  ratio << std::setprecision(6) << r.ratio;
  row("ratio", ratio.str());
  row("bound", r.bound);
  for (const auto& [name, ok] : r.checks) out << (ok ? "PASS  " : "FAIL  ") << name << '\n';
  return out.str();
}

std::string lasso_to_string(const LassoWord& w, const std::vector<std::string>& letter_names) {
  auto join = [&](const std::vector<LetterIndex>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i > 0) s += ',';
      s += letter_names.at(static_cast<std::size_t>(v[i]));
    }
    return s;
  };
  return "(" + join(w.prefix) + ")(" + join(w.period) + ")^w";
}

nlohmann::ordered_json to_json(const CorrectnessReport& r, const std::vector<std::string>& letter_names) {
  nlohmann::ordered_json j;
  j["complement_states"] = r.complement_states;
  j["subset_states"] = r.subset_states;
  j["tree_states"] = r.tree_states;
  j["product_empty"] = r.product_empty;
  if (r.product_witness) j["product_witness"] = lasso_to_string(*r.product_witness, letter_names);
  j["words_checked"] = r.words_checked;
  auto ce = nlohmann::ordered_json::array();
  for (const auto& w : r.counterexamples) ce.push_back(lasso_to_string(w, letter_names));
  j["counterexamples"] = std::move(ce);
  auto sm = nlohmann::ordered_json::array();
  for (const auto& w : r.stepping_mismatches) sm.push_back(lasso_to_string(w, letter_names));
  j["stepping_mismatches"] = std::move(sm);
  j["passed"] = r.passed();
  return j;
}

std::string to_text(const CorrectnessReport& r, const std::vector<std::string>& letter_names) {
  std::ostringstream out;
  auto row = [&](const std::string& k, const auto& v) { out << std::left << std::setw(20) << k << v << '\n'; };
  row("complement states", r.complement_states);
  row("subset states", r.subset_states);
  row("tree states", r.tree_states);
  row("product empty", r.product_empty ? "yes" : "no");
  if (r.product_witness) row("product witness", lasso_to_string(*r.product_witness, letter_names));
  row("words checked", r.words_checked);
  row("counterexamples", r.counterexamples.size());
  for (const auto& w : r.counterexamples) out << "  " << lasso_to_string(w, letter_names) << '\n';
  row("stepping mismatch", r.stepping_mismatches.size());
  out << (r.passed() ? "PASS" : "FAIL") << '\n';
  return out.str();
}

}  // namespace parcomp
