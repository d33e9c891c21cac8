#include "reflex/codec.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace reflex::codec {

using algebra::ActionSet;

const ActionSet& Symbol::alt_value() const {
  if (kind_ != SymbolKind::Alt || !value_) {
    throw CodecError("symbol has no alternative payload");
  }
  return *value_;
}

std::string Symbol::to_string() const {
  switch (kind_) {
    case SymbolKind::Id: return "id";
    case SymbolKind::Alliance: return "alliance";
    case SymbolKind::Conflict: return "conflict";
    case SymbolKind::Alt: return "alt:" + value_->to_string();
  }
  throw CodecError("unreachable symbol kind");
}

std::vector<neuron::Pulse> expand(const PulseTrain& train) {
  const double period = 2.0 * std::numbers::pi / train.carrier_omega;
  return {
      {train.start_time, train.magnitudes[0]},
      {train.start_time + period, train.magnitudes[1]},
      {train.start_time + 2.0 * period, train.magnitudes[2]},
  };
}

namespace {

std::string format_magnitudes(const Magnitudes& m) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "{%.6g,%.6g,%.6g}", m[0], m[1], m[2]);
  return buf;
}

bool within_epsilon(const Magnitudes& a, const Magnitudes& b, double eps) {
  for (std::size_t i = 0; i < 3; ++i) {
    if (std::abs(a[i] - b[i]) > eps) return false;
  }
  return true;
}

}  // namespace

Codebook::Codebook(std::vector<Entry> entries, double epsilon)
    : entries_(std::move(entries)), epsilon_(epsilon) {
  if (entries_.empty()) throw CodecError("codebook needs at least one entry");
  if (!(epsilon_ > 0.0)) throw CodecError("codebook epsilon must be positive");
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    for (std::size_t j = i + 1; j < entries_.size(); ++j) {
      if (within_epsilon(entries_[i].magnitudes, entries_[j].magnitudes, epsilon_)) {
        throw CodecError("codebook entries " + format_magnitudes(entries_[i].magnitudes) +
                         " and " + format_magnitudes(entries_[j].magnitudes) +
                         " are indistinguishable at epsilon " + std::to_string(epsilon_));
      }
    }
  }
}

Codebook Codebook::defaults(const algebra::UniversePtr& universe) {
  std::vector<Entry> entries;
  entries.push_back({{0.4, 0.4, 0.4}, Symbol::id()});
  entries.push_back({{-0.4, -0.4, -0.4}, Symbol::conflict()});
  entries.push_back({{0.2, 0.3, 0.7}, Symbol::alt(ActionSet::full(universe))});
  entries.push_back({{0.7, 0.3, 0.2}, Symbol::alt(ActionSet::empty(universe))});
  if (universe->size() == 2) {
    entries.push_back({{0.5, 0.2, 0.5}, Symbol::alt(ActionSet::of(universe, {universe->actions()[0]}))});
    entries.push_back({{0.3, 0.6, 0.3}, Symbol::alt(ActionSet::of(universe, {universe->actions()[1]}))});
  }
  return Codebook(std::move(entries));
}

PulseTrain Codebook::encode(const Symbol& symbol, double carrier_omega, double start_time,
                            const std::string& sender) const {
  // Alliance rides on the Id tuple.
  const SymbolKind wanted =
      symbol.kind() == SymbolKind::Alliance ? SymbolKind::Id : symbol.kind();
  for (const Entry& entry : entries_) {
    if (entry.symbol.kind() != wanted) continue;
    if (wanted == SymbolKind::Alt && entry.symbol.alt_value() != symbol.alt_value()) continue;
    return PulseTrain{carrier_omega, entry.magnitudes, start_time, sender};
  }
  throw CodecError("no codebook tuple for symbol '" + symbol.to_string() + "'");
}

Symbol Codebook::decode(const PulseTrain& train, double sender_own_omega) const {
  const Entry* best = nullptr;
  double best_distance = 0.0;
  for (const Entry& entry : entries_) {
    if (!within_epsilon(entry.magnitudes, train.magnitudes, epsilon_)) continue;
    double distance = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
      distance = std::max(distance, std::abs(entry.magnitudes[i] - train.magnitudes[i]));
    }
    if (!best || distance < best_distance) {
      best = &entry;
      best_distance = distance;
    }
  }
  if (!best) {
    throw UnknownCodeError("no codebook tuple within epsilon of " +
                               format_magnitudes(train.magnitudes),
                           train.magnitudes);
  }
  if (best->symbol.kind() == SymbolKind::Id) {
    return train.carrier_omega == sender_own_omega ? Symbol::id() : Symbol::alliance();
  }
  return best->symbol;
}

std::vector<Detection> detect(const std::map<std::string, neuron::NeuronParams>& bank,
                              const std::vector<neuron::Pulse>& pulses, double window) {
  std::vector<Detection> out;
  for (const auto& [channel, params] : bank) {
    const neuron::Trace trace = neuron::simulate(params, pulses, window);
    if (!trace.spike_times.empty()) {
      out.push_back({channel, trace.spike_times.front()});
    }
  }
  return out;
}

}  // namespace reflex::codec
