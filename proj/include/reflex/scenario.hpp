#pragma once

#include "reflex/algebra.hpp"
#include "reflex/codec.hpp"
#include "reflex/netsim.hpp"
#include "reflex/rgt.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace reflex::scenario {

/// Raised on malformed configs; the message names the offending field.
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct ControlSpec {
  std::string controlled;
  algebra::ActionSet target;

  friend bool operator==(const ControlSpec&, const ControlSpec&) = default;
};

/// Parsed scenario file: group roster, universe, either raw negotiation
/// draws or fixed relations, influence intents, optional codebook override
/// and reflexive-control request.
struct ScenarioConfig {
  std::vector<netsim::UnitConfig> units;
  algebra::UniversePtr universe;
  std::uint64_t seed = 0;
  double p_alliance = 0.61;
  std::optional<std::map<netsim::OrderedPair, double>> draws;
  std::optional<std::map<netsim::OrderedPair, rgt::Relation>> relations;
  std::optional<std::map<netsim::OrderedPair, algebra::ActionSet>> influences;
  std::optional<codec::Codebook> codebook;
  std::optional<ControlSpec> control;
  bool traces = false;

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&);

  std::vector<std::string> subject_ids() const;
  const codec::Codebook& effective_codebook() const;

private:
  mutable std::optional<codec::Codebook> default_codebook_;
};

/// Omega values accept JSON numbers or exact "3pi/2" / "2pi" strings.
ScenarioConfig parse_scenario(const std::string& json_text);
ScenarioConfig load_scenario(const std::filesystem::path& path);
std::string serialize_scenario(const ScenarioConfig& config);

/// Relationship intents from the config (draws thresholded at p_alliance, or
/// the relations table applied symmetrically).
std::map<netsim::OrderedPair, rgt::Relation> relationship_intents(const ScenarioConfig& config);

/// Direct rgt-module solve, no channel simulation.
struct SolveResult {
  std::vector<std::string> subjects;
  std::string polynomial;
  rgt::RelationshipGraph graph;
  std::optional<rgt::InfluenceMatrix> matrix;
  std::optional<std::map<std::string, rgt::DecisionResult>> decisions;
};

SolveResult solve_forward(const ScenarioConfig& config);

struct InverseResult {
  std::string polynomial;
  std::string controlled;
  algebra::ActionSet target;
  std::vector<rgt::InfluenceTuple> solutions;
};

InverseResult solve_inverse(const ScenarioConfig& config, const std::string& controlled,
                            const std::string& target_literal);

/// Full channel run: negotiation (when intents exist), influence exchange
/// (when influences exist), then the per-unit inference round.
struct RunResult {
  netsim::Engine engine;
  std::optional<rgt::RelationshipGraph> graph;
  std::string polynomial;
  std::optional<rgt::InfluenceMatrix> matrix;
  std::optional<std::map<std::string, rgt::DecisionResult>> decisions;
  std::optional<rgt::InfluenceTuple> plan;
};

RunResult run_scenario(const ScenarioConfig& config,
                       std::optional<std::uint64_t> seed_override = std::nullopt);

/// Message log CSV: "time,sender,carrier,mags,decoded,addressee", floats at
/// 6 significant digits, magnitudes ';'-joined.
void write_messages_csv(const std::vector<netsim::MessageRow>& rows, std::ostream& out);

/// The decisions.json payload for a finished run.
std::string decisions_json(const ScenarioConfig& config, const RunResult& result);
/// The decisions.json payload for a direct forward solve.
std::string decisions_json(const ScenarioConfig& config, const SolveResult& result);
/// The inverse.json payload.
std::string inverse_json(const InverseResult& result);

}  // namespace reflex::scenario
