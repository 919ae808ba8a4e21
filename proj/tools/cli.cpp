#include "cli.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "parcomp/analysis.hpp"
#include "parcomp/automaton_json.hpp"
#include "parcomp/complement.hpp"
#include "parcomp/enumerate.hpp"
#include "parcomp/errors.hpp"
#include "parcomp/hardness.hpp"

namespace parcomp::cli {

namespace {

ParityAutomaton as_parity(const AnyAutomaton& a) {
  if (const auto* p = std::get_if<ParityAutomaton>(&a)) return *p;
  return buchi_as_parity(std::get<BuchiAutomaton>(a));
}

std::vector<LetterIndex> parse_letters(const std::string& csv, const std::vector<std::string>& alphabet) {
  std::vector<LetterIndex> out;
  if (csv.empty()) return out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto it = std::find(alphabet.begin(), alphabet.end(), item);
    if (it == alphabet.end()) throw FormatError("letter '" + item + "' not in alphabet");
    out.push_back(static_cast<LetterIndex>(it - alphabet.begin()));
  }
  return out;
}

}  // namespace

int run_cli(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Complementation of transition-based parity automata into Büchi automata", "parcomp"};
  app.require_subcommand(1);

  std::string input;
  std::string output;
  std::string prefix;
  std::string period;
  int states = 1;
  int max_priority = 2;
  bool full_only = false;
  bool mfts = false;
  bool count_only = false;
  std::size_t cap = 5'000'000;
  std::size_t index = 0;
  int h = 0;
  std::string automaton_out;
  int prefix_bound = 2;
  int period_bound = 3;
  bool json = false;

  auto* complement = app.add_subcommand("complement", "Normalize, complement and write the Büchi automaton");
  complement->add_option("input", input, "Automaton JSON")->required();
  complement->add_option("-o,--output", output, "Output path for the complement")->required();
  complement->add_option("--cap", cap, "Maximum number of complement states");

  auto* member = app.add_subcommand("member", "Decide membership of a lasso word");
  member->add_option("input", input, "Automaton JSON")->required();
  member->add_option("--prefix", prefix, "Comma-separated prefix letters");
  member->add_option("--period", period, "Comma-separated period letters")->required();

  auto* empty = app.add_subcommand("empty", "Emptiness check with witness");
  empty->add_option("input", input, "Automaton JSON")->required();

  auto* enumerate = app.add_subcommand("enumerate", "Enumerate FNHTs or MFTs");
  enumerate->add_option("--states", states, "Number of states")->required()->check(CLI::Range(1, 20));
  enumerate->add_option("--max-priority", max_priority, "Maximal priority")->required();
  enumerate->add_flag("--full-only", full_only, "Only full trees");
  enumerate->add_flag("--mfts", mfts, "Enumerate marked trees");
  enumerate->add_flag("--count-only", count_only, "Print only the count");
  enumerate->add_option("--cap", cap, "Maximum number of emitted items");

  auto* hardword = app.add_subcommand("hardword", "Dump the hard word of a full FNHT");
  hardword->add_option("--states", states, "Number of states")->required()->check(CLI::Range(1, 20));
  hardword->add_option("--max-priority", max_priority, "Maximal priority")->required();
  hardword->add_option("--index", index, "Index among full FNHTs in enumeration order")->required();
  hardword->set_help_flag("--help", "Print this help message and exit");
  hardword->add_option("--h", h, "Block length (default |fnht|+1)");
  hardword->add_option("-o,--output", output, "Word file path (default stdout)");
  hardword->add_option("--automaton-out", automaton_out, "Also write the full automaton over the word's letters");

  auto* check = app.add_subcommand("check", "Verify the complement against the input");
  check->add_option("input", input, "Automaton JSON")->required();
  check->add_option("--prefix-bound", prefix_bound, "Maximal lasso prefix length")->required();
  check->add_option("--period-bound", period_bound, "Maximal lasso period length")->required();
  check->add_flag("--json", json, "JSON report");

  auto* tightness = app.add_subcommand("tightness", "Count states against the lower bound");
  tightness->add_option("--states", states, "Number of states")->required()->check(CLI::Range(1, 20));
  tightness->add_option("--max-priority", max_priority, "Maximal priority")->required();
  tightness->add_option("--cap", cap, "Enumeration cap");
  tightness->add_flag("--json", json, "JSON report");

  try {
    std::vector<std::string> args(argv.rbegin(), argv.rend() - 1);
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (complement->parsed()) {
      const ParityAutomaton p = prepare_for_complement(as_parity(read_automaton_file(input)));
      ComplementOptions opts;
      opts.state_cap = cap;
      const ComplementResult c = build_complement(p, opts);
      write_text_file(output, serialize(c.automaton));
      out << "subset states: " << c.subset_states << '\n'
          << "tree states: " << c.tree_states << '\n'
          << "total states: " << c.automaton.num_states() << '\n';
      return kExitOk;
    }
    if (member->parsed()) {
      const AnyAutomaton a = read_automaton_file(input);
      const auto& alphabet = std::visit([](const auto& x) -> const auto& { return x.letter_names(); }, a);
      const LassoWord w{parse_letters(prefix, alphabet), parse_letters(period, alphabet)};
      if (w.period.empty()) throw FormatError("lasso period must be non-empty");
      const bool in = std::holds_alternative<ParityAutomaton>(a)
                          ? parity_lasso_member(std::get<ParityAutomaton>(a), w)
                          : buchi_lasso_member(std::get<BuchiAutomaton>(a), w);
      out << (in ? "true" : "false") << '\n';
      return kExitOk;
    }
    if (empty->parsed()) {
      const AnyAutomaton a = read_automaton_file(input);
      const BuchiAutomaton b = std::holds_alternative<BuchiAutomaton>(a)
                                   ? std::get<BuchiAutomaton>(a)
                                   : parity_to_buchi(std::get<ParityAutomaton>(a));
      const EmptinessWitness w = buchi_emptiness(b);
      if (w.empty)
        out << "empty\n";
      else
        out << "non-empty\nwitness: " << lasso_to_string(*w.lasso, b.letter_names()) << '\n';
      return kExitOk;
    }
    if (enumerate->parsed()) {
      EnumerationOptions opts;
      opts.full_only = full_only;
      opts.cap = cap;
      const StateSet universe = StateSet::first_n(states);
      const auto names = default_state_names(states);
      if (mfts) {
        const auto all = enumerate_mfts(universe, max_priority, opts);
        if (count_only) {
          out << all.size() << '\n';
        } else {
          for (const auto& m : all) out << to_json(m, names).dump() << '\n';
        }
      } else {
        const auto all = enumerate_fnhts(universe, max_priority, opts);
        if (count_only) {
          out << all.size() << '\n';
        } else {
          for (const auto& t : all) out << to_json(t, names).dump() << '\n';
        }
      }
      return kExitOk;
    }
    if (hardword->parsed()) {
      const StateSet universe = StateSet::first_n(states);
      EnumerationOptions opts;
      opts.full_only = true;
      const auto full = enumerate_fnhts(universe, max_priority, opts);
      if (index >= full.size())
        throw FormatError("index " + std::to_string(index) + " out of range; there are " +
                          std::to_string(full.size()) + " full FNHTs");
      const Fnht& t = full[index];
      const int length = h > 0 ? h : default_hard_word_length(states, max_priority);
      FullAutomaton fa = full_parity_automaton(states, priority_range(max_priority));
      const LassoWord w = hard_word(fa, t, length);
      const ParityAutomaton p = fa.materialize();

      nlohmann::ordered_json j;
      j["tree"] = to_json(t, fa.state_names());
      j["h"] = length;
      nlohmann::ordered_json letters = nlohmann::ordered_json::object();
      for (LetterIndex a = 0; a < fa.num_letters(); ++a)
        letters[FullAutomaton::letter_name(a)] = to_json(fa.letter(a), fa.state_names());
      j["letters"] = std::move(letters);
      j["beta"] = FullAutomaton::letter_name(w.period.front());
      j["gamma"] = FullAutomaton::letter_name(w.period.back());
      auto names = [&](const std::vector<LetterIndex>& v) {
        std::vector<std::string> s;
        for (LetterIndex a : v) s.push_back(FullAutomaton::letter_name(a));
        return s;
      };
      j["prefix"] = names(w.prefix);
      j["period"] = names(w.period);
      j["automaton"] = to_json(p);
      const std::string text = j.dump(2) + "\n";
      if (output.empty())
        out << text;
      else
        write_text_file(output, text);
      if (!automaton_out.empty()) write_text_file(automaton_out, serialize(p));
      return kExitOk;
    }
    if (check->parsed()) {
      const ParityAutomaton p = prepare_for_complement(as_parity(read_automaton_file(input)));
      CorrectnessOptions opts;
      opts.prefix_bound = prefix_bound;
      opts.period_bound = period_bound;
      const CorrectnessReport r = complement_correctness_check(p, opts);
      if (json)
        out << to_json(r, p.letter_names()).dump(2) << '\n';
      else
        out << to_text(r, p.letter_names());
      return r.passed() ? kExitOk : kExitVerificationFailed;
    }
    if (tightness->parsed()) {
      const TightnessReport r = tightness_report(states, max_priority, cap);
      if (json)
        out << to_json(r).dump(2) << '\n';
      else
        out << to_text(r);
      return r.passed() ? kExitOk : kExitVerificationFailed;
    }
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kExitCapExceeded;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace parcomp::cli
