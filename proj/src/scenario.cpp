#include "reflex/scenario.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>
#include <set>
#include <sstream>

namespace reflex::scenario {

using algebra::ActionSet;
using netsim::OrderedPair;
using nlohmann::json;

namespace {

constexpr std::array<double, 4> kDefaultOmegas = {
    3.0 * std::numbers::pi / 2.0,
    4.0 * std::numbers::pi / 3.0,
    5.0 * std::numbers::pi / 3.0,
    2.0 * std::numbers::pi,
};

double parse_omega(const json& value, const std::string& field) {
  if (value.is_number()) {
    return value.get<double>();
  }
  if (value.is_string()) {
    // "<k>pi", "<k>pi/<m>", "pi", "pi/<m>"
    const std::string text = value.get<std::string>();
    const auto pi_pos = text.find("pi");
    if (pi_pos != std::string::npos) {
      try {
        const std::string head = text.substr(0, pi_pos);
        const std::string tail = text.substr(pi_pos + 2);
        const double numerator = head.empty() ? 1.0 : std::stod(head);
        double denominator = 1.0;
        if (!tail.empty()) {
          if (tail.front() != '/') throw std::invalid_argument(tail);
          denominator = std::stod(tail.substr(1));
        }
        return numerator * std::numbers::pi / denominator;
      } catch (const std::exception&) {
        // fall through to the error below
      }
    }
    throw ConfigError(field + ": cannot parse omega '" + text +
                      "' (expected a number or \"<k>pi/<m>\")");
  }
  throw ConfigError(field + ": expected a number or \"<k>pi/<m>\" string");
}

OrderedPair split_pair(const std::string& key, char sep_first, char sep_second,
                       const std::string& field) {
  // "a->b" (sep "->") or "a-b" (sep "-")
  std::string::size_type pos;
  std::string from, to;
  if (sep_second != '\0') {
    pos = key.find(std::string{sep_first, sep_second});
    if (pos == std::string::npos || pos == 0 || pos + 2 >= key.size()) {
      throw ConfigError(field + ": key '" + key + "' is not of the form \"x" +
                        std::string{sep_first, sep_second} + "y\"");
    }
    from = key.substr(0, pos);
    to = key.substr(pos + 2);
  } else {
    pos = key.find(sep_first);
    if (pos == std::string::npos || pos == 0 || pos + 1 >= key.size()) {
      throw ConfigError(field + ": key '" + key + "' is not of the form \"x" +
                        std::string{sep_first} + "y\"");
    }
    from = key.substr(0, pos);
    to = key.substr(pos + 1);
  }
  return {from, to};
}

void require_subject(const ScenarioConfig& config, const std::string& id,
                     const std::string& field) {
  for (const auto& u : config.units) {
    if (u.id == id) return;
  }
  throw ConfigError(field + ": '" + id + "' is not a declared unit");
}

codec::Codebook parse_codebook(const json& value, const algebra::UniversePtr& universe) {
  if (!value.is_array() || value.empty()) {
    throw ConfigError("codebook: expected a non-empty array of entries");
  }
  std::vector<codec::Codebook::Entry> entries;
  for (std::size_t i = 0; i < value.size(); ++i) {
    const json& item = value[i];
    const std::string field = "codebook[" + std::to_string(i) + "]";
    if (!item.is_object() || !item.contains("magnitudes") || !item.contains("symbol")) {
      throw ConfigError(field + ": entries need \"magnitudes\" and \"symbol\"");
    }
    const json& mags = item["magnitudes"];
    if (!mags.is_array() || mags.size() != 3) {
      throw ConfigError(field + ".magnitudes: expected exactly 3 numbers");
    }
    codec::Magnitudes triple{};
    for (std::size_t k = 0; k < 3; ++k) {
      if (!mags[k].is_number()) throw ConfigError(field + ".magnitudes: expected numbers");
      triple[k] = mags[k].get<double>();
    }
    const std::string symbol = item["symbol"].get<std::string>();
    if (symbol == "id") {
      entries.push_back({triple, codec::Symbol::id()});
    } else if (symbol == "conflict") {
      entries.push_back({triple, codec::Symbol::conflict()});
    } else if (symbol.rfind("alt:", 0) == 0) {
      entries.push_back(
          {triple, codec::Symbol::alt(algebra::parse_set(symbol.substr(4), universe))});
    } else {
      throw ConfigError(field + ".symbol: unknown symbol '" + symbol +
                        "' (expected \"id\", \"conflict\" or \"alt:<set>\")");
    }
  }
  return codec::Codebook(std::move(entries));
}

}  // namespace

bool operator==(const ScenarioConfig& a, const ScenarioConfig& b) {
  auto codebooks_equal = [&]() {
    if (a.codebook.has_value() != b.codebook.has_value()) return false;
    if (!a.codebook) return true;
    if (a.codebook->epsilon() != b.codebook->epsilon()) return false;
    const auto& ea = a.codebook->entries();
    const auto& eb = b.codebook->entries();
    if (ea.size() != eb.size()) return false;
    for (std::size_t i = 0; i < ea.size(); ++i) {
      if (ea[i].magnitudes != eb[i].magnitudes || !(ea[i].symbol == eb[i].symbol)) return false;
    }
    return true;
  };
  auto units_equal = [&]() {
    if (a.units.size() != b.units.size()) return false;
    for (std::size_t i = 0; i < a.units.size(); ++i) {
      if (a.units[i].id != b.units[i].id || a.units[i].omega != b.units[i].omega) return false;
    }
    return true;
  };
  return units_equal() && algebra::same_universe(a.universe, b.universe) && a.seed == b.seed &&
         a.p_alliance == b.p_alliance && a.draws == b.draws && a.relations == b.relations &&
         a.influences == b.influences && codebooks_equal() && a.control == b.control &&
         a.traces == b.traces;
}

std::vector<std::string> ScenarioConfig::subject_ids() const {
  std::vector<std::string> ids;
  ids.reserve(units.size());
  for (const auto& u : units) ids.push_back(u.id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

const codec::Codebook& ScenarioConfig::effective_codebook() const {
  if (codebook) return *codebook;
  if (!default_codebook_) default_codebook_ = codec::Codebook::defaults(universe);
  return *default_codebook_;
}

ScenarioConfig parse_scenario(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("scenario is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("scenario: expected a JSON object");

  static const std::set<std::string> known = {"units",      "universe",  "seed",
                                              "p_alliance", "draws",     "relations",
                                              "influences", "codebook",  "control",
                                              "traces"};
  for (const auto& [key, _] : root.items()) {
    if (!known.count(key)) throw ConfigError("unknown scenario field '" + key + "'");
  }

  ScenarioConfig config;

  if (!root.contains("universe") || !root["universe"].is_array() || root["universe"].empty()) {
    throw ConfigError("universe: expected a non-empty array of action names");
  }
  std::vector<std::string> actions;
  for (const auto& item : root["universe"]) {
    if (!item.is_string()) throw ConfigError("universe: action names must be strings");
    actions.push_back(item.get<std::string>());
  }
  try {
    config.universe = algebra::UniversalSet::make(std::move(actions));
  } catch (const algebra::AlgebraError& e) {
    throw ConfigError(std::string("universe: ") + e.what());
  }

  if (!root.contains("units") || !root["units"].is_array() || root["units"].size() < 2) {
    throw ConfigError("units: expected an array of at least 2 units");
  }
  for (std::size_t i = 0; i < root["units"].size(); ++i) {
    const json& item = root["units"][i];
    const std::string field = "units[" + std::to_string(i) + "]";
    if (!item.is_object() || !item.contains("id") || !item["id"].is_string()) {
      throw ConfigError(field + ".id: expected a string");
    }
    netsim::UnitConfig unit;
    unit.id = item["id"].get<std::string>();
    if (item.contains("omega")) {
      unit.omega = parse_omega(item["omega"], field + ".omega");
    } else if (i < kDefaultOmegas.size()) {
      unit.omega = kDefaultOmegas[i];
    } else {
      throw ConfigError(field + ".omega: required for groups larger than " +
                        std::to_string(kDefaultOmegas.size()) + " units");
    }
    for (const auto& [key, _] : item.items()) {
      if (key != "id" && key != "omega") {
        throw ConfigError(field + ": unknown key '" + key + "'");
      }
    }
    config.units.push_back(std::move(unit));
  }

  if (root.contains("seed")) {
    if (!root["seed"].is_number_unsigned() && !root["seed"].is_number_integer()) {
      throw ConfigError("seed: expected a non-negative integer");
    }
    config.seed = root["seed"].get<std::uint64_t>();
  }
  if (root.contains("p_alliance")) {
    if (!root["p_alliance"].is_number()) throw ConfigError("p_alliance: expected a number");
    config.p_alliance = root["p_alliance"].get<double>();
    if (config.p_alliance < 0.0 || config.p_alliance > 1.0) {
      throw ConfigError("p_alliance: must lie in [0,1]");
    }
  }
  if (root.contains("traces")) {
    if (!root["traces"].is_boolean()) throw ConfigError("traces: expected a boolean");
    config.traces = root["traces"].get<bool>();
  }

  if (root.contains("draws") && root.contains("relations")) {
    throw ConfigError("draws/relations: supply one of them, not both");
  }

  if (root.contains("draws")) {
    if (!root["draws"].is_object()) throw ConfigError("draws: expected an object");
    std::map<OrderedPair, double> draws;
    for (const auto& [key, value] : root["draws"].items()) {
      const OrderedPair pair = split_pair(key, '-', '>', "draws");
      require_subject(config, pair.first, "draws." + key);
      require_subject(config, pair.second, "draws." + key);
      if (pair.first == pair.second) throw ConfigError("draws." + key + ": self-pair");
      if (!value.is_number()) throw ConfigError("draws." + key + ": expected a number");
      const double v = value.get<double>();
      if (v < 0.0 || v > 1.0) throw ConfigError("draws." + key + ": must lie in [0,1]");
      draws.emplace(pair, v);
    }
    for (const auto& from : config.subject_ids()) {
      for (const auto& to : config.subject_ids()) {
        if (from != to && !draws.count({from, to})) {
          throw ConfigError("draws: missing entry \"" + from + "->" + to + "\"");
        }
      }
    }
    config.draws = std::move(draws);
  }

  if (root.contains("relations")) {
    if (!root["relations"].is_object()) throw ConfigError("relations: expected an object");
    std::map<OrderedPair, rgt::Relation> relations;
    for (const auto& [key, value] : root["relations"].items()) {
      const OrderedPair raw = split_pair(key, '-', '\0', "relations");
      require_subject(config, raw.first, "relations." + key);
      require_subject(config, raw.second, "relations." + key);
      if (raw.first == raw.second) throw ConfigError("relations." + key + ": self-pair");
      if (!value.is_string()) {
        throw ConfigError("relations." + key +
                          ": expected \"alliance\" or \"conflict\" for this pair");
      }
      rgt::Relation relation;
      try {
        relation = rgt::relation_from_string(value.get<std::string>());
      } catch (const rgt::RgtError&) {
        throw ConfigError("relations." + key + ": malformed label '" +
                          value.get<std::string>() + "' for pair (" + raw.first + "," +
                          raw.second + ")");
      }
      const OrderedPair pair = raw.first < raw.second ? raw : OrderedPair{raw.second, raw.first};
      if (relations.count(pair)) throw ConfigError("relations." + key + ": duplicate pair");
      relations.emplace(pair, relation);
    }
    for (const auto& from : config.subject_ids()) {
      for (const auto& to : config.subject_ids()) {
        if (from < to && !relations.count({from, to})) {
          throw ConfigError("relations: missing entry \"" + from + "-" + to + "\"");
        }
      }
    }
    config.relations = std::move(relations);
  }

  if (root.contains("influences")) {
    if (!root["influences"].is_object()) throw ConfigError("influences: expected an object");
    std::map<OrderedPair, ActionSet> influences;
    for (const auto& [key, value] : root["influences"].items()) {
      const OrderedPair pair = split_pair(key, '-', '>', "influences");
      require_subject(config, pair.first, "influences." + key);
      require_subject(config, pair.second, "influences." + key);
      if (pair.first == pair.second) throw ConfigError("influences." + key + ": self-pair");
      if (!value.is_string()) throw ConfigError("influences." + key + ": expected a set literal");
      try {
        influences.emplace(pair, algebra::parse_set(value.get<std::string>(), config.universe));
      } catch (const algebra::AlgebraError& e) {
        throw ConfigError("influences." + key + ": " + e.what());
      }
    }
    for (const auto& from : config.subject_ids()) {
      for (const auto& to : config.subject_ids()) {
        if (from != to && !influences.count({from, to})) {
          throw ConfigError("influences: missing entry \"" + from + "->" + to + "\"");
        }
      }
    }
    config.influences = std::move(influences);
  }

  if (root.contains("codebook")) {
    try {
      config.codebook = parse_codebook(root["codebook"], config.universe);
    } catch (const std::exception& e) {
      throw ConfigError(std::string("codebook: ") + e.what());
    }
  }

  if (root.contains("control")) {
    const json& control = root["control"];
    if (!control.is_object() || !control.contains("controlled") || !control.contains("target")) {
      throw ConfigError("control: expected {\"controlled\": id, \"target\": set literal}");
    }
    ControlSpec spec{control["controlled"].get<std::string>(),
                     algebra::parse_set(control["target"].get<std::string>(), config.universe)};
    require_subject(config, spec.controlled, "control.controlled");
    config.control = std::move(spec);
  }

  return config;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str());
}

std::string serialize_scenario(const ScenarioConfig& config) {
  json root;
  root["universe"] = config.universe->actions();
  json units = json::array();
  for (const auto& u : config.units) {
    units.push_back({{"id", u.id}, {"omega", u.omega}});
  }
  root["units"] = std::move(units);
  root["seed"] = config.seed;
  root["p_alliance"] = config.p_alliance;
  root["traces"] = config.traces;
  if (config.draws) {
    json draws;
    for (const auto& [pair, value] : *config.draws) {
      draws[pair.first + "->" + pair.second] = value;
    }
    root["draws"] = std::move(draws);
  }
  if (config.relations) {
    json relations;
    for (const auto& [pair, relation] : *config.relations) {
      relations[pair.first + "-" + pair.second] = rgt::to_string(relation);
    }
    root["relations"] = std::move(relations);
  }
  if (config.influences) {
    json influences;
    for (const auto& [pair, value] : *config.influences) {
      influences[pair.first + "->" + pair.second] = value.to_string();
    }
    root["influences"] = std::move(influences);
  }
  if (config.codebook) {
    json entries = json::array();
    for (const auto& entry : config.codebook->entries()) {
      json item;
      item["magnitudes"] = entry.magnitudes;
      item["symbol"] = entry.symbol.kind() == codec::SymbolKind::Alt
                           ? "alt:" + entry.symbol.alt_value().to_string()
                           : entry.symbol.to_string();
      entries.push_back(std::move(item));
    }
    root["codebook"] = std::move(entries);
  }
  if (config.control) {
    root["control"] = {{"controlled", config.control->controlled},
                       {"target", config.control->target.to_string()}};
  }
  return root.dump(2) + "\n";
}

std::map<OrderedPair, rgt::Relation> relationship_intents(const ScenarioConfig& config) {
  std::map<OrderedPair, rgt::Relation> intents;
  if (config.draws) {
    for (const auto& [pair, value] : *config.draws) {
      intents.emplace(pair, value > config.p_alliance ? rgt::Relation::Conflict
                                                      : rgt::Relation::Alliance);
    }
    return intents;
  }
  if (config.relations) {
    for (const auto& [pair, relation] : *config.relations) {
      intents.emplace(pair, relation);
      intents.emplace(OrderedPair{pair.second, pair.first}, relation);
    }
    return intents;
  }
  throw ConfigError("draws/relations: one of them is required");
}

namespace {

rgt::RelationshipGraph graph_from_intents(const std::vector<std::string>& subjects,
                                          const std::map<OrderedPair, rgt::Relation>& intents) {
  rgt::RelationshipGraph graph(subjects);
  for (const auto& u : subjects) {
    for (const auto& v : subjects) {
      if (u >= v) continue;
      const bool alliance = intents.at({u, v}) == rgt::Relation::Alliance &&
                            intents.at({v, u}) == rgt::Relation::Alliance;
      graph.set_relation(u, v, alliance ? rgt::Relation::Alliance : rgt::Relation::Conflict);
    }
  }
  return graph;
}

rgt::InfluenceMatrix matrix_from_config(const ScenarioConfig& config) {
  rgt::InfluenceMatrix matrix(config.subject_ids());
  for (const auto& [pair, value] : *config.influences) {
    matrix.set(pair.first, pair.second, value);
  }
  return matrix;
}

}  // namespace

SolveResult solve_forward(const ScenarioConfig& config) {
  const auto subjects = config.subject_ids();
  rgt::RelationshipGraph graph = graph_from_intents(subjects, relationship_intents(config));
  const algebra::Expr polynomial = rgt::graph_to_polynomial(graph);
  SolveResult result{subjects, polynomial.to_string(), std::move(graph), std::nullopt,
                     std::nullopt};
  if (!config.influences) {
    throw ConfigError("influences: required for the forward task");
  }
  result.matrix = matrix_from_config(config);
  const algebra::Expr folded = rgt::fold_diagonal(rgt::stratify(polynomial));
  result.decisions = rgt::forward_task(folded, *result.matrix);
  return result;
}

InverseResult solve_inverse(const ScenarioConfig& config, const std::string& controlled,
                            const std::string& target_literal) {
  const auto subjects = config.subject_ids();
  if (std::find(subjects.begin(), subjects.end(), controlled) == subjects.end()) {
    throw ConfigError("--subject: '" + controlled + "' is not a declared unit");
  }
  const ActionSet target = algebra::parse_set(target_literal, config.universe);
  const rgt::RelationshipGraph graph =
      graph_from_intents(subjects, relationship_intents(config));
  const algebra::Expr polynomial = rgt::graph_to_polynomial(graph);
  const algebra::Expr folded = rgt::fold_diagonal(rgt::stratify(polynomial));
  return InverseResult{polynomial.to_string(), controlled, target,
                       rgt::inverse_task(folded, controlled, target)};
}

RunResult run_scenario(const ScenarioConfig& config, std::optional<std::uint64_t> seed_override) {
  netsim::Engine engine(config.units, config.universe, config.effective_codebook());

  if (config.draws) {
    engine.set_relationship_draws(*config.draws, config.p_alliance);
  } else if (config.relations) {
    engine.set_relationship_intents(relationship_intents(config));
  } else {
    netsim::NegotiationParams params;
    params.p_alliance = config.p_alliance;
    params.seed = seed_override.value_or(config.seed);
    engine.draw_relationship_intents(params);
  }

  rgt::RelationshipGraph graph = engine.install_relationships();
  const algebra::Expr polynomial = rgt::graph_to_polynomial(graph);

  RunResult result{std::move(engine), std::nullopt, polynomial.to_string(), std::nullopt,
                   std::nullopt, std::nullopt};

  if (config.influences) {
    result.engine.set_influence_intents(*config.influences);
    result.matrix = result.engine.exchange_influences();
    result.decisions = result.engine.rgt_round(graph, *result.matrix);
  }
  if (config.control) {
    const std::string planner = [&] {
      for (const auto& id : config.subject_ids()) {
        if (id != config.control->controlled) return id;
      }
      throw ConfigError("control.controlled: no other unit can plan the influence");
    }();
    result.plan =
        netsim::plan_influence(graph, planner, config.control->controlled, config.control->target);
  }
  result.graph = std::move(graph);
  return result;
}

void write_messages_csv(const std::vector<netsim::MessageRow>& rows, std::ostream& out) {
  out << "time,sender,carrier,mags,decoded,addressee\n";
  char buf[160];
  for (const auto& row : rows) {
    std::snprintf(buf, sizeof(buf), "%.6g,%s,%.6g,%.6g;%.6g;%.6g,%s,%s\n", row.time,
                  row.sender.c_str(), row.carrier, row.magnitudes[0], row.magnitudes[1],
                  row.magnitudes[2], row.decoded.c_str(), row.addressee.c_str());
    out << buf;
  }
}

namespace {

json decision_to_json(const rgt::DecisionResult& decision) {
  json out;
  if (decision.frustrated()) {
    out["frustrated"] = true;
    return out;
  }
  out["frustrated"] = false;
  out["lower"] = decision.lower().to_string();
  out["upper"] = decision.upper().to_string();
  out["point"] = decision.is_point();
  json members = json::array();
  for (const auto& member : rgt::interval_members(decision)) {
    members.push_back(member.to_string());
  }
  out["members"] = std::move(members);
  return out;
}

json relations_to_json(const rgt::RelationshipGraph& graph) {
  json out;
  const auto& subjects = graph.subjects();
  for (std::size_t i = 0; i < subjects.size(); ++i) {
    for (std::size_t j = i + 1; j < subjects.size(); ++j) {
      out[subjects[i] + "-" + subjects[j]] =
          rgt::to_string(graph.relation(subjects[i], subjects[j]));
    }
  }
  return out;
}

json matrix_to_json(const rgt::InfluenceMatrix& matrix) {
  json out;
  for (const auto& from : matrix.subjects()) {
    for (const auto& to : matrix.subjects()) {
      if (from != to) out[from + "->" + to] = matrix.get(from, to).to_string();
    }
  }
  return out;
}

json common_report(const ScenarioConfig& config, const std::vector<std::string>& subjects,
                   const std::string& polynomial) {
  json root;
  root["subjects"] = subjects;
  root["universe"] = config.universe->actions();
  root["polynomial"] = polynomial;
  return root;
}

}  // namespace

std::string decisions_json(const ScenarioConfig& config, const RunResult& result) {
  json root = common_report(config, config.subject_ids(), result.polynomial);
  root["relations"] = relations_to_json(*result.graph);
  if (!result.engine.draws().empty()) {
    json draws;
    for (const auto& [pair, value] : result.engine.draws()) {
      // Reports print floats at 6 significant digits.
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.6g", value);
      draws[pair.first + "->" + pair.second] = std::stod(buf);
    }
    root["draws"] = std::move(draws);
  }
  {
    // Transmitted relationship codes as 0/1 logic values.
    json codes;
    for (const auto& [pair, relation] :
         result.engine.units().front().knowledge().relationship_codes) {
      codes[pair.first + "->" + pair.second] = relation == rgt::Relation::Alliance ? 1 : 0;
    }
    root["codes"] = std::move(codes);
  }
  if (result.matrix) root["influences"] = matrix_to_json(*result.matrix);
  if (result.decisions) {
    json decisions;
    for (const auto& [subject, decision] : *result.decisions) {
      decisions[subject] = decision_to_json(decision);
    }
    root["decisions"] = std::move(decisions);
  }
  if (config.control) {
    json plan;
    plan["controlled"] = config.control->controlled;
    plan["target"] = config.control->target.to_string();
    if (result.plan) {
      json tuple;
      for (const auto& [subject, value] : *result.plan) {
        tuple[subject] = value.to_string();
      }
      plan["influences"] = std::move(tuple);
    } else {
      plan["influences"] = nullptr;
    }
    root["plan"] = std::move(plan);
  }
  return root.dump(2) + "\n";
}

std::string decisions_json(const ScenarioConfig& config, const SolveResult& result) {
  json root = common_report(config, result.subjects, result.polynomial);
  root["relations"] = relations_to_json(result.graph);
  if (result.matrix) root["influences"] = matrix_to_json(*result.matrix);
  if (result.decisions) {
    json decisions;
    for (const auto& [subject, decision] : *result.decisions) {
      decisions[subject] = decision_to_json(decision);
    }
    root["decisions"] = std::move(decisions);
  }
  return root.dump(2) + "\n";
}

std::string inverse_json(const InverseResult& result) {
  json root;
  root["polynomial"] = result.polynomial;
  root["controlled"] = result.controlled;
  root["target"] = result.target.to_string();
  json solutions = json::array();
  for (const auto& tuple : result.solutions) {
    json item;
    for (const auto& [subject, value] : tuple) {
      item[subject] = value.to_string();
    }
    solutions.push_back(std::move(item));
  }
  root["solutions"] = std::move(solutions);
  return root.dump(2) + "\n";
}

}  // namespace reflex::scenario
