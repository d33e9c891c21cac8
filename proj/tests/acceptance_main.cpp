// Acceptance suite: one checkable criterion per function, one PASS/FAIL line
// per criterion on stdout. Returns nonzero if any executed criterion fails.
//
//   acceptance_tests                 runs everything
//   acceptance_tests --criterion 7   runs one criterion

#include "reflex/algebra.hpp"
#include "reflex/codec.hpp"
#include "reflex/netsim.hpp"
#include "reflex/neuron.hpp"
#include "reflex/rgt.hpp"
#include "reflex/scenario.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace reflex;
using algebra::ActionSet;
using algebra::Expr;
using algebra::UniversePtr;

namespace {

namespace fs = std::filesystem;

constexpr double kOmegaA = 3.0 * std::numbers::pi / 2.0;
constexpr double kOmegaB = 4.0 * std::numbers::pi / 3.0;
constexpr double kOmegaC = 5.0 * std::numbers::pi / 3.0;

UniversePtr two_actions() { return algebra::UniversalSet::make({"alpha", "beta"}); }

ActionSet lit(const UniversePtr& u, const std::string& text) {
  return algebra::parse_set(text, u);
}

Expr folded_of(const std::string& text, const std::vector<std::string>& subjects,
               const UniversePtr& u) {
  return rgt::fold_diagonal(rgt::stratify(algebra::parse_expr(text, subjects, u)));
}

// --- criterion 1 -----------------------------------------------------------

bool fold_identity(std::ostream& log) {
  const auto started = std::chrono::steady_clock::now();
  auto u = two_actions();
  const std::vector<std::string> abc = {"a", "b", "c"};
  const std::vector<std::string> abcd = {"a", "b", "c", "d"};

  const Expr small = algebra::parse_expr("ab + c", abc, u);
  const Expr large = algebra::parse_expr("abc + d", abcd, u);
  bool ok = true;
  if (!algebra::equivalent(rgt::fold_diagonal(rgt::stratify(small)), small, abc, u)) {
    log << "fold(stratify(ab+c)) is not equivalent to ab+c\n";
    ok = false;
  }
  if (!algebra::equivalent(rgt::fold_diagonal(rgt::stratify(large)), large, abcd, u)) {
    log << "fold(stratify(abc+d)) is not equivalent to abc+d\n";
    ok = false;
  }
  const auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - started);
  if (elapsed.count() >= 1.0) {
    log << "equivalence checks took " << elapsed.count() << " s (limit 1 s)\n";
    ok = false;
  }
  return ok;
}

// --- criterion 2 -----------------------------------------------------------

bool canonical_forms(std::ostream& log) {
  auto u = two_actions();
  bool ok = true;

  const auto check_symbolic = [&](const Expr& folded, const std::vector<std::string>& subjects,
                                  const std::string& subject, const std::string& on_one_text,
                                  const std::string& on_zero_text) {
    const Expr on_one_ref = algebra::parse_expr(on_one_text, subjects, u);
    const Expr on_zero_ref = algebra::parse_expr(on_zero_text, subjects, u);
    const auto elements = algebra::all_elements(u);
    std::vector<std::string> others;
    for (const auto& s : subjects) {
      if (s != subject) others.push_back(s);
    }
    std::vector<std::size_t> counter(others.size(), 0);
    while (true) {
      std::map<std::string, ActionSet> influences;
      for (std::size_t i = 0; i < others.size(); ++i) {
        influences.emplace(others[i], elements[counter[i]]);
      }
      const auto c = rgt::canonical_coefficients(folded, subject, influences);
      algebra::Assignment assignment(influences.begin(), influences.end());
      if (c.on_one != algebra::eval(on_one_ref, assignment) ||
          c.on_zero != algebra::eval(on_zero_ref, assignment)) {
        log << "subject " << subject << ": coefficients diverge from (" << on_one_text << ", "
            << on_zero_text << ") at some assignment\n";
        return false;
      }
      std::size_t pos = 0;
      while (pos < counter.size()) {
        if (++counter[pos] < elements.size()) break;
        counter[pos] = 0;
        ++pos;
      }
      if (pos == counter.size()) return true;
    }
  };

  const std::vector<std::string> abc = {"a", "b", "c"};
  const Expr folded3 = folded_of("ab + c", abc, u);
  ok &= check_symbolic(folded3, abc, "a", "b + c", "c");
  ok &= check_symbolic(folded3, abc, "b", "a + c", "c");
  ok &= check_symbolic(folded3, abc, "c", "1", "ab");

  const std::vector<std::string> abcd = {"a", "b", "c", "d"};
  const Expr folded4 = folded_of("abc + d", abcd, u);
  ok &= check_symbolic(folded4, abcd, "a", "bc + d", "d");
  ok &= check_symbolic(folded4, abcd, "b", "ac + d", "d");
  ok &= check_symbolic(folded4, abcd, "c", "ab + d", "d");
  ok &= check_symbolic(folded4, abcd, "d", "1", "abc");
  return ok;
}

// --- criterion 3 -----------------------------------------------------------

bool forward_influence_example(std::ostream& log) {
  auto u = two_actions();
  const std::vector<std::string> abc = {"a", "b", "c"};
  rgt::InfluenceMatrix m(abc);
  m.set("a", "b", lit(u, "{alpha}"));
  m.set("a", "c", lit(u, "0"));
  m.set("b", "a", lit(u, "{alpha}"));
  m.set("b", "c", lit(u, "{beta}"));
  m.set("c", "a", lit(u, "{beta}"));
  m.set("c", "b", lit(u, "0"));

  const auto decisions = rgt::forward_task(folded_of("a + bc", abc, u), m);
  bool ok = true;
  const auto expect = [&](const std::string& subject, const rgt::DecisionResult& want) {
    if (!(decisions.at(subject) == want)) {
      const auto& got = decisions.at(subject);
      log << "subject " << subject << ": got "
          << (got.frustrated() ? std::string("frustration")
                               : "[" + got.lower().to_string() + "," + got.upper().to_string() + "]")
          << "\n";
      ok = false;
    }
  };
  expect("a", rgt::DecisionResult::interval(ActionSet::empty(u), ActionSet::full(u)));
  expect("b", rgt::DecisionResult::interval(lit(u, "{alpha}"), lit(u, "{alpha}")));
  expect("c", rgt::DecisionResult::interval(ActionSet::empty(u), lit(u, "{beta}")));
  return ok;
}

// --- criterion 4 -----------------------------------------------------------

bool forward_gate_example(std::ostream& log) {
  auto u = algebra::UniversalSet::make({"open"});
  const std::vector<std::string> ids = {"a", "b", "c", "d"};
  const Expr folded = folded_of("abc + d", ids, u);
  bool ok = true;

  for (const auto& d_influence : algebra::all_elements(u)) {
    rgt::InfluenceMatrix m(ids);
    for (const auto& from : ids) {
      for (const auto& to : ids) {
        if (from != to) m.set(from, to, from == "d" ? d_influence : ActionSet::empty(u));
      }
    }
    const auto decisions = rgt::forward_task(folded, m);
    for (const auto* insider : {"a", "b", "c"}) {
      const auto& decision = decisions.at(insider);
      if (decision.frustrated() || !decision.is_point() || decision.lower() != d_influence) {
        log << "insider " << insider << " does not collapse to d's influence "
            << d_influence.to_string() << "\n";
        ok = false;
      }
    }
    if (!(decisions.at("d") ==
          rgt::DecisionResult::interval(ActionSet::empty(u), ActionSet::full(u)))) {
      log << "d lost its freedom of choice under influence " << d_influence.to_string() << "\n";
      ok = false;
    }
  }

  // The gate-open instance: d influences 1, everyone inside reports 1.
  rgt::InfluenceMatrix open(ids);
  for (const auto& from : ids) {
    for (const auto& to : ids) {
      if (from != to) {
        open.set(from, to, from == "d" ? ActionSet::full(u) : ActionSet::empty(u));
      }
    }
  }
  const auto decisions = rgt::forward_task(folded, open);
  for (const auto* insider : {"a", "b", "c"}) {
    if (!decisions.at(insider).is_point() || !decisions.at(insider).lower().is_full()) {
      log << "gate does not open for " << insider << "\n";
      ok = false;
    }
  }
  return ok;
}

// --- criterion 5 -----------------------------------------------------------

bool inverse_exact(std::ostream& log) {
  auto u = two_actions();
  const std::vector<std::string> abc = {"a", "b", "c"};
  const Expr poly = algebra::parse_expr("ab + c", abc, u);
  const Expr folded = folded_of("ab + c", abc, u);
  const ActionSet alpha = lit(u, "{alpha}");

  const auto solutions = rgt::inverse_task(folded, "a", alpha);

  // Independent oracle: enumerate all 16 (b,c) pairs over the raw polynomial
  // and keep those whose cofactors both equal the target.
  std::vector<rgt::InfluenceTuple> expected;
  for (const auto& b : algebra::all_elements(u)) {
    for (const auto& c : algebra::all_elements(u)) {
      const algebra::Assignment at_one = {{"a", ActionSet::full(u)}, {"b", b}, {"c", c}};
      const algebra::Assignment at_zero = {{"a", ActionSet::empty(u)}, {"b", b}, {"c", c}};
      if (algebra::eval(poly, at_one) == alpha && algebra::eval(poly, at_zero) == alpha) {
        expected.push_back({{"b", b}, {"c", c}});
      }
    }
  }

  const auto fingerprint = [](const std::vector<rgt::InfluenceTuple>& tuples) {
    std::vector<std::string> keys;
    for (const auto& tuple : tuples) {
      std::string key;
      for (const auto& [id, value] : tuple) key += id + "=" + value.to_string() + ";";
      keys.push_back(key);
    }
    std::sort(keys.begin(), keys.end());
    return keys;
  };

  bool ok = true;
  if (fingerprint(solutions) != fingerprint(expected)) {
    log << "solution set disagrees with the brute-force oracle\n";
    ok = false;
  }
  if (solutions.size() != 2) {
    log << "expected exactly 2 joint influences, got " << solutions.size() << "\n";
    ok = false;
  } else {
    const bool first_ok = solutions[0].at("b") == alpha && solutions[0].at("c") == alpha;
    const bool second_ok = solutions[1].at("b").is_empty() && solutions[1].at("c") == alpha;
    if (!first_ok || !second_ok) {
      log << "expected {(b={alpha},c={alpha}), (b=0,c={alpha})} in order\n";
      ok = false;
    }
  }
  return ok;
}

// --- criteria 6 and 7 ------------------------------------------------------

std::vector<neuron::Pulse> train_pulses(double carrier, double start,
                                        const codec::Magnitudes& mags) {
  const double period = 2.0 * std::numbers::pi / carrier;
  return {{start, mags[0]}, {start + period, mags[1]}, {start + 2.0 * period, mags[2]}};
}

std::size_t spike_count(double resonator, double carrier, const codec::Magnitudes& mags) {
  neuron::NeuronParams params;
  params.omega = resonator;
  const double duration = 1.0 + 2.0 * (2.0 * std::numbers::pi / carrier) + 3.0;
  return neuron::simulate(params, train_pulses(carrier, 1.0, mags), duration)
      .spike_times.size();
}

bool neuron_selectivity(std::ostream& log) {
  const auto started = std::chrono::steady_clock::now();
  bool ok = true;

  for (const double carrier : {kOmegaA, kOmegaB}) {
    for (const double resonator : {kOmegaA, kOmegaB}) {
      const std::size_t spikes = spike_count(resonator, carrier, {0.4, 0.4, 0.4});
      const bool resonant = carrier == resonator;
      if (resonant && spikes < 1) {
        log << "no spike for matched carrier " << carrier << "\n";
        ok = false;
      }
      if (!resonant && spikes != 0) {
        log << "spurious spike for mismatched carrier " << carrier << " at resonator "
            << resonator << "\n";
        ok = false;
      }
    }
  }
  for (const codec::Magnitudes mags :
       {codec::Magnitudes{-0.4, -0.4, -0.4}, codec::Magnitudes{0.1, 0.4, 0.6},
        codec::Magnitudes{-0.1, -0.4, -0.6}}) {
    if (spike_count(kOmegaA, kOmegaA, mags) < 1) {
      log << "resonant series {" << mags[0] << "," << mags[1] << "," << mags[2]
          << "} stayed subthreshold\n";
      ok = false;
    }
  }
  const auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - started);
  if (elapsed.count() >= 1.0) {
    log << "selectivity grid took " << elapsed.count() << " s (limit 1 s)\n";
    ok = false;
  }
  return ok;
}

bool codebook_detection(std::ostream& log) {
  auto u = two_actions();
  const codec::Codebook book = codec::Codebook::defaults(u);
  const std::vector<std::pair<std::string, double>> carriers = {
      {"3pi/2", kOmegaA}, {"4pi/3", kOmegaB}, {"5pi/3", kOmegaC}};

  bool ok = true;
  for (const auto& entry : book.entries()) {
    for (const auto& [carrier_name, carrier] : carriers) {
      for (const auto& [resonator_name, resonator] : carriers) {
        const std::size_t spikes = spike_count(resonator, carrier, entry.magnitudes);
        const bool on_carrier = carrier == resonator;
        if (on_carrier && spikes < 1) {
          log << "tuple " << entry.symbol.to_string() << " on " << carrier_name
              << " is subthreshold on its own carrier\n";
          ok = false;
        }
        if (!on_carrier && spikes != 0) {
          log << "tuple " << entry.symbol.to_string() << " on carrier " << carrier_name
              << " cross-fires the " << resonator_name << " resonator (" << spikes
              << " spike)\n";
          ok = false;
        }
      }
    }
  }
  return ok;
}

// --- criterion 8 -----------------------------------------------------------

bool negotiation_example(std::ostream& log) {
  auto u = two_actions();
  netsim::Engine engine({{"a", kOmegaA}, {"b", kOmegaB}, {"c", kOmegaC}}, u,
                        codec::Codebook::defaults(u));
  engine.set_relationship_draws({
      {{"a", "b"}, 0.81},
      {{"a", "c"}, 0.92},
      {{"b", "a"}, 0.63},
      {{"b", "c"}, 0.12},
      {{"c", "a"}, 0.09},
      {{"c", "b"}, 0.27},
  });
  const rgt::RelationshipGraph graph = engine.install_relationships();

  bool ok = true;
  const std::map<netsim::OrderedPair, int> expected_codes = {
      {{"a", "b"}, 0}, {{"a", "c"}, 0}, {{"b", "a"}, 0},
      {{"b", "c"}, 1}, {{"c", "a"}, 1}, {{"c", "b"}, 1},
  };
  for (const auto& unit : engine.units()) {
    for (const auto& [pair, logic] : expected_codes) {
      const auto it = unit.knowledge().relationship_codes.find(pair);
      if (it == unit.knowledge().relationship_codes.end() ||
          (it->second == rgt::Relation::Alliance ? 1 : 0) != logic) {
        log << "unit " << unit.id() << " recorded the wrong code for " << pair.first << "->"
            << pair.second << "\n";
        ok = false;
      }
    }
  }

  if (!(graph.relation("b", "c") == rgt::Relation::Alliance &&
        graph.relation("a", "b") == rgt::Relation::Conflict &&
        graph.relation("a", "c") == rgt::Relation::Conflict)) {
    log << "AND rule produced the wrong relationship graph\n";
    ok = false;
  }
  const std::string poly = rgt::graph_to_polynomial(graph).to_string();
  if (poly != "a + bc") {
    log << "polynomial is " << poly << ", expected a + bc\n";
    ok = false;
  }
  return ok;
}

// --- criterion 9 -----------------------------------------------------------

bool negotiation_statistics(std::ostream& log) {
  std::mt19937_64 rng(61);
  const int n = 100000;
  int alliances = 0;
  for (int i = 0; i < n; ++i) {
    if (!(netsim::uniform_draw(rng) > 0.61)) ++alliances;
  }
  const double frequency = static_cast<double>(alliances) / n;
  if (std::abs(frequency - 0.61) > 0.01) {
    log << "alliance frequency " << frequency << " outside 0.61 +/- 0.01\n";
    return false;
  }
  return true;
}

// --- criterion 10 ----------------------------------------------------------

bool decomposability(std::ostream& log) {
  bool ok = true;

  rgt::RelationshipGraph path({"w", "x", "y", "z"});
  const std::vector<std::pair<std::string, std::string>> alliance_edges = {
      {"w", "x"}, {"x", "y"}, {"y", "z"}};
  for (const auto& s : path.subjects()) {
    for (const auto& t : path.subjects()) {
      if (s >= t) continue;
      const bool allied =
          std::find(alliance_edges.begin(), alliance_edges.end(), std::make_pair(s, t)) !=
          alliance_edges.end();
      path.set_relation(s, t, allied ? rgt::Relation::Alliance : rgt::Relation::Conflict);
    }
  }
  try {
    rgt::graph_to_polynomial(path);
    log << "alliance path unexpectedly decomposed\n";
    ok = false;
  } catch (const rgt::NotDecomposableError&) {
  }

  for (int bits = 0; bits < 8; ++bits) {
    rgt::RelationshipGraph g({"a", "b", "c"});
    g.set_relation("a", "b", bits & 1 ? rgt::Relation::Alliance : rgt::Relation::Conflict);
    g.set_relation("a", "c", bits & 2 ? rgt::Relation::Alliance : rgt::Relation::Conflict);
    g.set_relation("b", "c", bits & 4 ? rgt::Relation::Alliance : rgt::Relation::Conflict);
    try {
      rgt::graph_to_polynomial(g);
    } catch (const rgt::NotDecomposableError&) {
      log << "three-subject labeling " << bits << " failed to decompose\n";
      ok = false;
    }
  }
  return ok;
}

// --- criterion 11 ----------------------------------------------------------

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return "<missing " + path.string() + ">";
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

bool run_determinism(std::ostream& log) {
  const fs::path base = fs::temp_directory_path() / "reflexsim_acceptance";
  fs::remove_all(base);
  const fs::path dir1 = base / "run1";
  const fs::path dir2 = base / "run2";
  fs::create_directories(dir1);
  fs::create_directories(dir2);

  const std::string config = (fs::path(SCENARIO_DIR) / "example3.json").string();
  for (const auto& dir : {dir1, dir2}) {
    const std::string command = std::string(REFLEXSIM_BIN) + " run --config " + config +
                                " --seed 7 --out-dir " + dir.string() + " >/dev/null 2>&1";
    const int status = std::system(command.c_str());
    if (WEXITSTATUS(status) != 0) {
      log << "run exited with " << WEXITSTATUS(status) << "\n";
      return false;
    }
  }

  bool ok = true;
  for (const char* name : {"messages.csv", "decisions.json"}) {
    if (slurp(dir1 / name) != slurp(dir2 / name)) {
      log << name << " differs between identical runs\n";
      ok = false;
    }
  }
  if (slurp(dir1 / "decisions.json").find("abc + d") == std::string::npos) {
    log << "decisions.json lacks the expected polynomial\n";
    ok = false;
  }
  return ok;
}

struct Criterion {
  int number;
  const char* name;
  std::function<bool(std::ostream&)> run;
};

const std::vector<Criterion> kCriteria = {
    {1, "fold identity for ab+c and abc+d", fold_identity},
    {2, "canonical decision-equation coefficients", canonical_forms},
    {3, "forward task, influence-exchange example", forward_influence_example},
    {4, "forward task, gate example", forward_gate_example},
    {5, "inverse task vs brute-force oracle", inverse_exact},
    {6, "resonator frequency selectivity", neuron_selectivity},
    {7, "codebook detection selectivity", codebook_detection},
    {8, "negotiation example end-to-end", negotiation_example},
    {9, "negotiation statistics at p=0.61", negotiation_statistics},
    {10, "graph decomposability boundaries", decomposability},
    {11, "byte-identical reruns", run_determinism},
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::string(argv[i]) == "--criterion" && i + 1 < argc) {
      only = std::atoi(argv[i + 1]);
    }
  }

  int failures = 0;
  for (const auto& criterion : kCriteria) {
    if (only != 0 && criterion.number != only) continue;
    std::ostringstream log;
    bool ok = false;
    try {
      ok = criterion.run(log);
    } catch (const std::exception& e) {
      log << "exception: " << e.what() << "\n";
    }
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << criterion.number << ": "
              << criterion.name << "\n";
    if (!ok) {
      ++failures;
      std::istringstream lines(log.str());
      std::string line;
      while (std::getline(lines, line)) {
        std::cout << "     " << line << "\n";
      }
    }
  }
  return failures == 0 ? 0 : 1;
}
