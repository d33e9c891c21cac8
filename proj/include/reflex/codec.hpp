#pragma once

#include "reflex/algebra.hpp"
#include "reflex/neuron.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace reflex::codec {

class CodecError : public std::runtime_error {
public:
  explicit CodecError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when a received magnitude triple matches no codebook entry; carries
/// the raw magnitudes in the message text.
class UnknownCodeError : public CodecError {
public:
  UnknownCodeError(const std::string& what, std::array<double, 3> magnitudes)
      : CodecError(what), magnitudes(magnitudes) {}
  std::array<double, 3> magnitudes;
};

enum class SymbolKind { Id, Alliance, Conflict, Alt };

/// Protocol symbol. Id and Alliance share one pulse triple; which one a train
/// means is decided by whether its carrier is the sender's own frequency.
class Symbol {
public:
  static Symbol id() { return Symbol(SymbolKind::Id, std::nullopt); }
  static Symbol alliance() { return Symbol(SymbolKind::Alliance, std::nullopt); }
  static Symbol conflict() { return Symbol(SymbolKind::Conflict, std::nullopt); }
  static Symbol alt(algebra::ActionSet value) { return Symbol(SymbolKind::Alt, std::move(value)); }

  SymbolKind kind() const { return kind_; }
  const algebra::ActionSet& alt_value() const;

  /// "id" | "alliance" | "conflict" | "alt:<set literal>".
  std::string to_string() const;

  friend bool operator==(const Symbol& a, const Symbol& b) {
    return a.kind_ == b.kind_ && a.value_ == b.value_;
  }
  friend bool operator!=(const Symbol& a, const Symbol& b) { return !(a == b); }

private:
  Symbol(SymbolKind kind, std::optional<algebra::ActionSet> value)
      : kind_(kind), value_(std::move(value)) {}
  SymbolKind kind_;
  std::optional<algebra::ActionSet> value_;
};

using Magnitudes = std::array<double, 3>;

/// Three pulses of the given magnitudes on a carrier eigen-frequency, spaced
/// one carrier period 2*pi/omega apart.
struct PulseTrain {
  double carrier_omega = 0.0;
  Magnitudes magnitudes{};
  double start_time = 0.0;
  std::string sender;
};

/// Nominal pulses of a train (unsnapped; the neuron grid snap happens in
/// simulate()).
std::vector<neuron::Pulse> expand(const PulseTrain& train);

/// Map between magnitude triples and symbols, with a per-magnitude tolerance.
class Codebook {
public:
  struct Entry {
    Magnitudes magnitudes;
    Symbol symbol;  // Id entries double as Alliance; see decode()
  };

  /// Validates pairwise distinguishability: no two entries within epsilon in
  /// every component.
  explicit Codebook(std::vector<Entry> entries, double epsilon = 0.04);

  /// The stock six tuples. The two singleton alternative codes are only
  /// installed for two-action universes; elsewhere they would collide with
  /// the full/empty codes or leave the algebra uncovered anyway.
  static Codebook defaults(const algebra::UniversePtr& universe);

  const std::vector<Entry>& entries() const { return entries_; }
  double epsilon() const { return epsilon_; }

  /// Builds the train for a symbol: codebook tuple, pulses at start,
  /// start + T, start + 2T with T = 2*pi/carrier. Unknown symbols are
  /// errors; Alliance encodes with the Id tuple.
  PulseTrain encode(const Symbol& symbol, double carrier_omega, double start_time,
                    const std::string& sender) const;

  /// Nearest entry within epsilon componentwise, else UnknownCodeError. The
  /// shared Id/Alliance tuple resolves to Id when the train's carrier equals
  /// the sender's own frequency, Alliance otherwise.
  Symbol decode(const PulseTrain& train, double sender_own_omega) const;

private:
  std::vector<Entry> entries_;
  double epsilon_;
};

struct Detection {
  std::string channel;
  double spike_time;  // first spike on that channel
};

/// Feeds every pulse into every resonator of the bank (shared medium), each
/// from rest, and reports the channels that spike within [0, window], ordered
/// by channel id.
std::vector<Detection> detect(const std::map<std::string, neuron::NeuronParams>& bank,
                              const std::vector<neuron::Pulse>& pulses, double window);

}  // namespace reflex::codec
