#pragma once

#include "reflex/algebra.hpp"
#include "reflex/codec.hpp"
#include "reflex/neuron.hpp"
#include "reflex/rgt.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace reflex::netsim {

class NetsimError : public std::runtime_error {
public:
  explicit NetsimError(const std::string& what) : std::runtime_error(what) {}
};

/// A required spike did not occur (id phase unheard, or payload unheard on
/// the addressee channel).
class DeliveryError : public NetsimError {
public:
  explicit DeliveryError(const std::string& what) : NetsimError(what) {}
};

struct NegotiationParams {
  double p_alliance = 0.61;  // probability of proposing alliance (positive pole)
  std::uint64_t seed = 0;

  void validate() const;
};

/// Uniform draw in [0,1) with 53 mantissa bits. mt19937_64 is pinned by the
/// standard, so draws are bit-identical everywhere; this avoids
/// std::uniform_real_distribution, which is not.
double uniform_draw(std::mt19937_64& rng);

struct UnitConfig {
  std::string id;
  double omega = 0.0;
};

using OrderedPair = std::pair<std::string, std::string>;  // (from, to)

/// What a unit has learned by decoding the medium: transmitted relationship
/// codes and influence codes, keyed by (sender, addressee).
struct Knowledge {
  std::map<OrderedPair, rgt::Relation> relationship_codes;
  std::map<OrderedPair, algebra::ActionSet> influences;

  friend bool operator==(const Knowledge&, const Knowledge&) = default;
};

/// One group member: its frequency, resonator bank (one channel per group
/// frequency), private intents and accumulated knowledge.
class Unit {
public:
  Unit(std::string id, double omega) : id_(std::move(id)), omega_(omega) {}

  const std::string& id() const { return id_; }
  double omega() const { return omega_; }
  const std::map<std::string, neuron::NeuronParams>& bank() const { return bank_; }

  void intend_relation(const std::string& peer, rgt::Relation r) { relation_intents_[peer] = r; }
  void intend_influence(const std::string& peer, algebra::ActionSet value) {
    influence_intents_.insert_or_assign(peer, std::move(value));
  }
  const std::map<std::string, rgt::Relation>& relation_intents() const { return relation_intents_; }
  const std::map<std::string, algebra::ActionSet>& influence_intents() const {
    return influence_intents_;
  }
  const Knowledge& knowledge() const { return knowledge_; }

private:
  friend class Engine;
  std::string id_;
  double omega_;
  std::map<std::string, neuron::NeuronParams> bank_;
  std::map<std::string, rgt::Relation> relation_intents_;
  std::map<std::string, algebra::ActionSet> influence_intents_;
  Knowledge knowledge_;
};

/// The shared broadcast medium: every unit observes every train, and trains
/// are serialized so no two overlap in time. The clock is the earliest start
/// the next train may take.
struct Medium {
  std::vector<codec::PulseTrain> trains;
  double clock = 0.0;
};

/// One completed two-phase transmission.
struct Message {
  std::string sender;
  std::string addressee;
  codec::Symbol symbol;
  double id_phase_time = 0.0;  // detected ID spike sample
  double payload_time = 0.0;   // always id_phase_time + payload delay
};

/// One medium train as a message-log CSV row.
struct MessageRow {
  double time = 0.0;
  std::string sender;
  double carrier = 0.0;
  codec::Magnitudes magnitudes{};
  std::string decoded;
  std::string addressee;
};

struct EngineOptions {
  double start_time = 1.0;     // first train start ("1 ms after onset" in abstract units)
  double payload_delay = 0.5;  // payload start after the detected ID spike
  double ring_down = 2.0;      // detection window past a train's last pulse
};

/// Deterministic shared-medium simulation: units broadcast serialized pulse
/// trains, every unit demodulates every train through its own resonator
/// bank, and decisions come from the rgt module over the transmitted tables.
class Engine {
public:
  Engine(std::vector<UnitConfig> units, algebra::UniversePtr universe, codec::Codebook codebook,
         EngineOptions options = {});

  /// Two-phase addressed transmission: ID code on the sender's frequency,
  /// then the payload on the addressee's frequency one payload_delay after
  /// the detected ID spike. Every unit must hear both phases.
  Message send(const std::string& from, const std::string& to, const codec::Symbol& symbol);

  /// Draws one uniform value per ordered pair (lexicographic by sender then
  /// receiver): value > p_alliance proposes conflict, else alliance. Returns
  /// the raw draws.
  std::map<OrderedPair, double> draw_relationship_intents(const NegotiationParams& params);
  /// Injects recorded draws instead of drawing fresh ones.
  void set_relationship_draws(const std::map<OrderedPair, double>& draws,
                              double p_alliance = 0.61);
  void set_relationship_intents(const std::map<OrderedPair, rgt::Relation>& intents);
  void set_influence_intents(const std::map<OrderedPair, algebra::ActionSet>& intents);

  /// Transmits every pairwise relationship intent, then installs relations
  /// by the AND rule (alliance iff both directions proposed alliance). All
  /// units end up with identical graphs; the common graph is returned.
  rgt::RelationshipGraph install_relationships();

  /// Transmits every influence intent as an alternative code and returns the
  /// influence matrix every unit now holds.
  rgt::InfluenceMatrix exchange_influences();

  /// Per-unit RGT inference: each unit independently rebuilds the graph and
  /// matrix from its own knowledge (checked against the arguments when the
  /// exchange phases ran) and runs the forward task; results must agree.
  std::map<std::string, rgt::DecisionResult> rgt_round(const rgt::RelationshipGraph& graph,
                                                       const rgt::InfluenceMatrix& matrix) const;

  const std::vector<Unit>& units() const { return units_; }
  const Unit& unit(const std::string& id) const;
  const algebra::UniversePtr& universe() const { return universe_; }
  const codec::Codebook& codebook() const { return codebook_; }
  const std::vector<Message>& messages() const { return messages_; }
  const std::vector<MessageRow>& message_rows() const { return rows_; }
  const Medium& medium() const { return medium_; }
  const std::vector<codec::PulseTrain>& medium_log() const { return medium_.trains; }
  double clock() const { return medium_.clock; }
  const std::map<OrderedPair, double>& draws() const { return draws_; }

  /// Relationship graph derived from one unit's knowledge by the AND rule.
  rgt::RelationshipGraph unit_graph(const Unit& u) const;
  /// Influence matrix from one unit's knowledge.
  rgt::InfluenceMatrix unit_matrix(const Unit& u) const;

  /// Voltage trace of one channel's resonator across the whole medium log.
  /// State restarts at each train boundary, matching the per-train detection
  /// windows, so trace spikes coincide with detect() reports.
  neuron::Trace channel_trace(const std::string& channel_id) const;

private:
  void selectivity_self_test() const;
  double window_end(const codec::PulseTrain& train) const;
  MessageRow row_for(const codec::PulseTrain& train) const;
  const Unit& owner_of_carrier(double carrier_omega) const;
  Unit& unit_mut(const std::string& id);

  std::vector<Unit> units_;
  algebra::UniversePtr universe_;
  codec::Codebook codebook_;
  EngineOptions options_;
  Medium medium_;
  std::vector<Message> messages_;
  std::vector<MessageRow> rows_;
  std::map<OrderedPair, double> draws_;
};

/// Reflexive-control planning: the joint influences that force the
/// controlled subject to the target, with the lexicographically first tuple
/// (per inverse_task order) as the deterministic pick. Empty when no joint
/// influence works.
std::optional<rgt::InfluenceTuple> plan_influence(const rgt::RelationshipGraph& graph,
                                                  const std::string& unit_id,
                                                  const std::string& controlled,
                                                  const algebra::ActionSet& target);

}  // namespace reflex::netsim
