#include "reflex/netsim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

namespace reflex::netsim {

using algebra::ActionSet;
using codec::PulseTrain;
using codec::Symbol;
using codec::SymbolKind;

void NegotiationParams::validate() const {
  if (!(p_alliance >= 0.0 && p_alliance <= 1.0)) {
    throw NetsimError("p_alliance must lie in [0,1]");
  }
}

double uniform_draw(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Engine::Engine(std::vector<UnitConfig> units, algebra::UniversePtr universe,
               codec::Codebook codebook, EngineOptions options)
    : universe_(std::move(universe)), codebook_(std::move(codebook)), options_(options) {
  if (units.size() < 2) throw NetsimError("a group needs at least 2 units");
  std::set<std::string> ids;
  std::set<double> omegas;
  for (const UnitConfig& cfg : units) {
    if (cfg.id.empty()) throw NetsimError("unit id must be non-empty");
    if (!(cfg.omega > 0.0)) throw NetsimError("unit '" + cfg.id + "' needs a positive omega");
    if (!ids.insert(cfg.id).second) throw NetsimError("duplicate unit id '" + cfg.id + "'");
    if (!omegas.insert(cfg.omega).second) {
      throw NetsimError("unit '" + cfg.id + "' reuses another unit's frequency");
    }
    units_.emplace_back(cfg.id, cfg.omega);
  }
  for (Unit& u : units_) {
    for (const Unit& peer : units_) {
      neuron::NeuronParams params;
      params.omega = peer.omega();
      u.bank_.emplace(peer.id(), params);
    }
  }
  const neuron::NeuronParams reference;  // for the grid step
  medium_.clock = static_cast<double>(neuron::snap_index(options_.start_time, reference.tau)) *
           reference.tau;
  selectivity_self_test();
}

const Unit& Engine::unit(const std::string& id) const {
  for (const Unit& u : units_) {
    if (u.id() == id) return u;
  }
  throw NetsimError("unknown unit '" + id + "'");
}

Unit& Engine::unit_mut(const std::string& id) {
  return const_cast<Unit&>(std::as_const(*this).unit(id));
}

const Unit& Engine::owner_of_carrier(double carrier_omega) const {
  for (const Unit& u : units_) {
    if (u.omega() == carrier_omega) return u;
  }
  throw NetsimError("no unit owns carrier frequency " + std::to_string(carrier_omega));
}

double Engine::window_end(const PulseTrain& train) const {
  const neuron::NeuronParams reference;
  const double period = 2.0 * std::numbers::pi / train.carrier_omega;
  const std::size_t last_pulse = neuron::snap_index(train.start_time + 2.0 * period,
                                                    reference.tau);
  const std::size_t ring = neuron::snap_index(options_.ring_down, reference.tau);
  return static_cast<double>(last_pulse + ring) * reference.tau;
}

MessageRow Engine::row_for(const PulseTrain& train) const {
  MessageRow row;
  row.time = train.start_time;
  row.sender = train.sender;
  row.carrier = train.carrier_omega;
  row.magnitudes = train.magnitudes;
  row.decoded = codebook_.decode(train, unit(train.sender).omega()).to_string();
  row.addressee = owner_of_carrier(train.carrier_omega).id();
  return row;
}

// Startup guard for the frequency assignment. Checks the addressing layer:
// the id/alliance and conflict triples must be pairwise selective (spike on
// the carrier channel only), and every codebook tuple must at least fire its
// own carrier resonator so payloads are deliverable. Alternative codes are
// allowed to bleed onto non-carrier channels; reception is gated on the
// carrier channel, so the protocol ignores such spikes.
void Engine::selectivity_self_test() const {
  const double start = 1.0;
  for (const Unit& carrier : units_) {
    const double period = 2.0 * std::numbers::pi / carrier.omega();
    const double duration = start + 2.0 * period + options_.ring_down;
    for (const codec::Codebook::Entry& entry : codebook_.entries()) {
      PulseTrain train{carrier.omega(), entry.magnitudes, start, carrier.id()};
      const auto pulses = codec::expand(train);
      const bool addressing_tuple = entry.symbol.kind() == SymbolKind::Id ||
                                    entry.symbol.kind() == SymbolKind::Conflict;
      for (const Unit& resonator : units_) {
        neuron::NeuronParams params;
        params.omega = resonator.omega();
        const auto trace = neuron::simulate(params, pulses, duration);
        const bool spiked = !trace.spike_times.empty();
        if (resonator.id() == carrier.id() && !spiked) {
          throw NetsimError("selectivity self-test: tuple " + entry.symbol.to_string() +
                            " is subthreshold on its own carrier '" + carrier.id() + "'");
        }
        if (addressing_tuple && resonator.id() != carrier.id() && spiked) {
          throw NetsimError("selectivity self-test: addressing tuple " +
                            entry.symbol.to_string() + " on carrier '" + carrier.id() +
                            "' falsely fires channel '" + resonator.id() + "'");
        }
      }
    }
  }
}

Message Engine::send(const std::string& from, const std::string& to, const Symbol& symbol) {
  if (from == to) throw NetsimError("unit '" + from + "' cannot send to itself");
  const Unit& sender = unit(from);
  const Unit& addressee = unit(to);

  // Phase 1: announce on the sender's own frequency.
  const PulseTrain id_train = codebook_.encode(Symbol::id(), sender.omega(), medium_.clock, from);
  const auto id_pulses = codec::expand(id_train);
  const double id_window = window_end(id_train);
  std::optional<double> id_spike;
  for (const Unit& u : units_) {
    const auto detections = codec::detect(u.bank(), id_pulses, id_window);
    const auto hit = std::find_if(detections.begin(), detections.end(),
                                  [&](const codec::Detection& d) { return d.channel == from; });
    if (hit == detections.end()) {
      throw DeliveryError("id phase of '" + from + "' not detected at unit '" + u.id() + "'");
    }
    if (!id_spike) {
      id_spike = hit->spike_time;
    } else if (*id_spike != hit->spike_time) {
      throw NetsimError("units disagree on the id spike time of '" + from + "'");
    }
  }
  medium_.trains.push_back(id_train);
  rows_.push_back(row_for(id_train));

  // Phase 2: payload on the addressee's frequency after the fixed delay.
  const double payload_start = *id_spike + options_.payload_delay;
  const PulseTrain payload = codebook_.encode(symbol, addressee.omega(), payload_start, from);
  const auto payload_pulses = codec::expand(payload);
  const double payload_window = window_end(payload);
  for (Unit& u : units_) {
    const auto detections = codec::detect(u.bank(), payload_pulses, payload_window);
    const bool heard = std::any_of(detections.begin(), detections.end(),
                                   [&](const codec::Detection& d) { return d.channel == to; });
    if (!heard) {
      throw DeliveryError("payload of '" + from + "' to '" + to + "' not detected at unit '" +
                          u.id() + "'");
    }
    const Symbol observed = codebook_.decode(payload, sender.omega());
    switch (observed.kind()) {
      case SymbolKind::Alliance:
        u.knowledge_.relationship_codes.insert_or_assign({from, to}, rgt::Relation::Alliance);
        break;
      case SymbolKind::Conflict:
        u.knowledge_.relationship_codes.insert_or_assign({from, to}, rgt::Relation::Conflict);
        break;
      case SymbolKind::Alt:
        u.knowledge_.influences.insert_or_assign({from, to}, observed.alt_value());
        break;
      case SymbolKind::Id:
        break;  // bare addressing demo, nothing to record
    }
  }
  medium_.trains.push_back(payload);
  rows_.push_back(row_for(payload));

  medium_.clock = payload_window;
  Message message{from, to, symbol, *id_spike, payload_start};
  messages_.push_back(message);
  return message;
}

namespace {

std::vector<std::string> sorted_ids(const std::vector<Unit>& units) {
  std::vector<std::string> ids;
  ids.reserve(units.size());
  for (const Unit& u : units) ids.push_back(u.id());
  std::sort(ids.begin(), ids.end());
  return ids;
}

}  // namespace

std::map<OrderedPair, double> Engine::draw_relationship_intents(const NegotiationParams& params) {
  params.validate();
  std::mt19937_64 rng(params.seed);
  std::map<OrderedPair, double> draws;
  for (const std::string& from : sorted_ids(units_)) {
    for (const std::string& to : sorted_ids(units_)) {
      if (from == to) continue;
      draws.emplace(OrderedPair{from, to}, uniform_draw(rng));
    }
  }
  set_relationship_draws(draws, params.p_alliance);
  return draws;
}

void Engine::set_relationship_draws(const std::map<OrderedPair, double>& draws,
                                    double p_alliance) {
  std::map<OrderedPair, rgt::Relation> intents;
  for (const auto& [pair, value] : draws) {
    intents.emplace(pair, value > p_alliance ? rgt::Relation::Conflict : rgt::Relation::Alliance);
  }
  draws_ = draws;
  set_relationship_intents(intents);
}

void Engine::set_relationship_intents(const std::map<OrderedPair, rgt::Relation>& intents) {
  for (const auto& [pair, relation] : intents) {
    unit_mut(pair.first).intend_relation(pair.second, relation);
  }
}

void Engine::set_influence_intents(const std::map<OrderedPair, ActionSet>& intents) {
  for (const auto& [pair, value] : intents) {
    unit_mut(pair.first).intend_influence(pair.second, value);
  }
}

rgt::RelationshipGraph Engine::unit_graph(const Unit& u) const {
  rgt::RelationshipGraph graph(sorted_ids(units_));
  const auto& codes = u.knowledge().relationship_codes;
  for (const std::string& a : sorted_ids(units_)) {
    for (const std::string& b : sorted_ids(units_)) {
      if (a >= b) continue;
      const auto forward = codes.find({a, b});
      const auto backward = codes.find({b, a});
      if (forward == codes.end() || backward == codes.end()) {
        throw NetsimError("unit '" + u.id() + "' is missing relationship codes for (" + a + "," +
                          b + ")");
      }
      const bool alliance = forward->second == rgt::Relation::Alliance &&
                            backward->second == rgt::Relation::Alliance;
      graph.set_relation(a, b, alliance ? rgt::Relation::Alliance : rgt::Relation::Conflict);
    }
  }
  return graph;
}

rgt::InfluenceMatrix Engine::unit_matrix(const Unit& u) const {
  rgt::InfluenceMatrix matrix(sorted_ids(units_));
  for (const auto& [pair, value] : u.knowledge().influences) {
    matrix.set(pair.first, pair.second, value);
  }
  if (!matrix.complete()) {
    throw NetsimError("unit '" + u.id() + "' holds an incomplete influence matrix");
  }
  return matrix;
}

rgt::RelationshipGraph Engine::install_relationships() {
  for (const std::string& from : sorted_ids(units_)) {
    for (const std::string& to : sorted_ids(units_)) {
      if (from == to) continue;
      const auto& intents = unit(from).relation_intents();
      const auto it = intents.find(to);
      if (it == intents.end()) {
        throw NetsimError("relationship intent of '" + from + "' towards '" + to +
                          "' is not set");
      }
      send(from, to,
           it->second == rgt::Relation::Alliance ? Symbol::alliance() : Symbol::conflict());
    }
  }
  rgt::RelationshipGraph graph = unit_graph(units_.front());
  for (const Unit& u : units_) {
    if (!(unit_graph(u) == graph)) {
      throw NetsimError("units disagree on the installed relationship graph");
    }
  }
  return graph;
}

rgt::InfluenceMatrix Engine::exchange_influences() {
  for (const std::string& from : sorted_ids(units_)) {
    for (const std::string& to : sorted_ids(units_)) {
      if (from == to) continue;
      const auto& intents = unit(from).influence_intents();
      const auto it = intents.find(to);
      if (it == intents.end()) {
        throw NetsimError("influence intent of '" + from + "' towards '" + to + "' is not set");
      }
      send(from, to, Symbol::alt(it->second));
    }
  }
  rgt::InfluenceMatrix matrix = unit_matrix(units_.front());
  for (const Unit& u : units_) {
    if (!(unit_matrix(u) == matrix)) {
      throw NetsimError("units disagree on the exchanged influence matrix");
    }
  }
  return matrix;
}

std::map<std::string, rgt::DecisionResult> Engine::rgt_round(
    const rgt::RelationshipGraph& graph, const rgt::InfluenceMatrix& matrix) const {
  std::optional<std::map<std::string, rgt::DecisionResult>> agreed;
  for (const Unit& u : units_) {
    // Each unit works from its own knowledge when the exchange phases ran.
    rgt::RelationshipGraph own_graph =
        u.knowledge().relationship_codes.empty() ? graph : unit_graph(u);
    rgt::InfluenceMatrix own_matrix =
        u.knowledge().influences.empty() ? matrix : unit_matrix(u);
    if (!(own_graph == graph)) {
      throw NetsimError("unit '" + u.id() + "' disagrees with the given relationship graph");
    }
    if (!(own_matrix == matrix)) {
      throw NetsimError("unit '" + u.id() + "' disagrees with the given influence matrix");
    }
    const algebra::Expr polynomial = rgt::graph_to_polynomial(own_graph);
    const algebra::Expr folded = rgt::fold_diagonal(rgt::stratify(polynomial));
    auto decisions = rgt::forward_task(folded, own_matrix);
    if (!agreed) {
      agreed = std::move(decisions);
    } else if (!(*agreed == decisions)) {
      throw NetsimError("units disagree on the decision results");
    }
  }
  return *agreed;
}

neuron::Trace Engine::channel_trace(const std::string& channel_id) const {
  const Unit& owner = unit(channel_id);
  neuron::NeuronParams params;
  params.omega = owner.omega();

  neuron::Trace out;
  if (medium_.trains.empty()) return out;

  const double tau = params.tau;
  const std::size_t first_start = neuron::snap_index(medium_.trains.front().start_time, tau);
  for (std::size_t k = 0; k < first_start; ++k) {
    out.samples.push_back({static_cast<double>(k) * tau, 0.0, 0.0, false});
  }

  for (std::size_t i = 0; i < medium_.trains.size(); ++i) {
    const PulseTrain& train = medium_.trains[i];
    const std::size_t seg_start = neuron::snap_index(train.start_time, tau);
    const std::size_t seg_end = i + 1 < medium_.trains.size()
                                    ? neuron::snap_index(medium_.trains[i + 1].start_time, tau)
                                    : neuron::snap_index(window_end(train), tau);
    // Local pulse times relative to the segment start; the first pulse sits
    // exactly at 0 because each segment begins at its train's start.
    const double period = 2.0 * std::numbers::pi / train.carrier_omega;
    std::vector<neuron::Pulse> local{{0.0, train.magnitudes[0]},
                                     {period, train.magnitudes[1]},
                                     {2.0 * period, train.magnitudes[2]}};
    const neuron::Trace segment =
        neuron::simulate(params, local, static_cast<double>(seg_end - seg_start) * tau);
    const bool last = i + 1 == medium_.trains.size();
    const std::size_t take = last ? segment.samples.size() : seg_end - seg_start;
    for (std::size_t k = 0; k < take; ++k) {
      neuron::TraceSample sample = segment.samples[k];
      sample.t = static_cast<double>(seg_start + k) * tau;
      out.samples.push_back(sample);
      if (sample.spike) out.spike_times.push_back(sample.t);
    }
  }
  return out;
}

std::optional<rgt::InfluenceTuple> plan_influence(const rgt::RelationshipGraph& graph,
                                                  const std::string& unit_id,
                                                  const std::string& controlled,
                                                  const ActionSet& target) {
  graph.subject_index(unit_id);  // must participate
  const algebra::Expr folded = rgt::fold_diagonal(rgt::stratify(graph_to_polynomial(graph)));
  const auto solutions = rgt::inverse_task(folded, controlled, target);
  if (solutions.empty()) return std::nullopt;
  return solutions.front();
}

}  // namespace reflex::netsim
