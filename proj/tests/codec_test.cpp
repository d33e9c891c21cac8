#include "reflex/codec.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace reflex;
using codec::Codebook;
using codec::PulseTrain;
using codec::Symbol;

namespace {

constexpr double kOmegaA = 3.0 * std::numbers::pi / 2.0;
constexpr double kOmegaB = 4.0 * std::numbers::pi / 3.0;
constexpr double kOmegaC = 5.0 * std::numbers::pi / 3.0;

algebra::UniversePtr two_actions() { return algebra::UniversalSet::make({"alpha", "beta"}); }

std::map<std::string, neuron::NeuronParams> trio_bank() {
  std::map<std::string, neuron::NeuronParams> bank;
  for (const auto& [id, omega] :
       std::vector<std::pair<std::string, double>>{{"a", kOmegaA}, {"b", kOmegaB}, {"c", kOmegaC}}) {
    neuron::NeuronParams p;
    p.omega = omega;
    bank.emplace(id, p);
  }
  return bank;
}

}  // namespace

TEST_CASE("default codebook shape depends on the universe size") {
  auto u2 = two_actions();
  CHECK(Codebook::defaults(u2).entries().size() == 6);
  auto u1 = algebra::UniversalSet::make({"open"});
  CHECK(Codebook::defaults(u1).entries().size() == 4);
  auto u3 = algebra::UniversalSet::make({"x", "y", "z"});
  CHECK(Codebook::defaults(u3).entries().size() == 4);
}

TEST_CASE("encode produces the codebook tuple at carrier-period spacing") {
  auto u = two_actions();
  const Codebook book = Codebook::defaults(u);

  const PulseTrain id_train = book.encode(Symbol::id(), kOmegaA, 1.0, "a");
  const auto id_pulses = codec::expand(id_train);
  REQUIRE(id_pulses.size() == 3);
  CHECK(id_pulses[0].time == doctest::Approx(1.0));
  CHECK(id_pulses[1].time == doctest::Approx(1.0 + 4.0 / 3.0));
  CHECK(id_pulses[2].time == doctest::Approx(1.0 + 8.0 / 3.0));
  for (const auto& pulse : id_pulses) CHECK(pulse.magnitude == 0.4);

  const PulseTrain alpha_train =
      book.encode(Symbol::alt(algebra::parse_set("{alpha}", u)), kOmegaB, 0.0, "b");
  CHECK(alpha_train.magnitudes == codec::Magnitudes{0.5, 0.2, 0.5});
  const auto alpha_pulses = codec::expand(alpha_train);
  CHECK(alpha_pulses[1].time - alpha_pulses[0].time == doctest::Approx(1.5));

  const PulseTrain conflict_train = book.encode(Symbol::conflict(), kOmegaC, 2.0, "c");
  CHECK(conflict_train.magnitudes == codec::Magnitudes{-0.4, -0.4, -0.4});

  // Alliance rides on the id tuple.
  CHECK(book.encode(Symbol::alliance(), kOmegaA, 0.0, "b").magnitudes ==
        codec::Magnitudes{0.4, 0.4, 0.4});

  CHECK_THROWS_AS(
      book.encode(Symbol::alt(algebra::parse_set("{open}", algebra::UniversalSet::make({"open"}))),
                  kOmegaA, 0.0, "a"),
      codec::CodecError);
}

TEST_CASE("decode resolves tuples, with the id/alliance split by carrier") {
  auto u = two_actions();
  const Codebook book = Codebook::defaults(u);

  PulseTrain train{kOmegaA, {0.5, 0.2, 0.5}, 0.0, "a"};
  CHECK(book.decode(train, kOmegaA) == Symbol::alt(algebra::parse_set("{alpha}", u)));

  train.magnitudes = {0.4, 0.4, 0.4};
  CHECK(book.decode(train, kOmegaA) == Symbol::id());        // on the sender's own frequency
  CHECK(book.decode(train, kOmegaB) == Symbol::alliance());  // on someone else's

  train.magnitudes = {0.9, 0.9, 0.9};
  CHECK_THROWS_AS(book.decode(train, kOmegaA), codec::UnknownCodeError);
  try {
    book.decode(train, kOmegaA);
  } catch (const codec::UnknownCodeError& e) {
    CHECK(e.magnitudes == codec::Magnitudes{0.9, 0.9, 0.9});
    CHECK(std::string(e.what()).find("0.9") != std::string::npos);
  }

  // Within-epsilon values still resolve to the nearest tuple.
  train.magnitudes = {0.42, 0.38, 0.41};
  CHECK(book.decode(train, kOmegaB) == Symbol::alliance());
}

TEST_CASE("round trip over every symbol and scenario frequency") {
  auto u = two_actions();
  const Codebook book = Codebook::defaults(u);
  const std::vector<Symbol> symbols = {
      Symbol::conflict(),
      Symbol::alt(algebra::parse_set("1", u)),
      Symbol::alt(algebra::parse_set("0", u)),
      Symbol::alt(algebra::parse_set("{alpha}", u)),
      Symbol::alt(algebra::parse_set("{beta}", u)),
  };
  for (const double carrier : {kOmegaA, kOmegaB, kOmegaC}) {
    for (const auto& symbol : symbols) {
      const PulseTrain train = book.encode(symbol, carrier, 1.0, "a");
      CHECK(book.decode(train, kOmegaA) == symbol);
    }
    // The shared tuple: id on own carrier, alliance elsewhere.
    const PulseTrain train = book.encode(Symbol::id(), carrier, 1.0, "a");
    CHECK(book.decode(train, carrier) == Symbol::id());
    const double other = carrier == kOmegaA ? kOmegaB : kOmegaA;
    CHECK(book.decode(train, other) == Symbol::alliance());
  }
}

TEST_CASE("codebook rejects entries inside one epsilon ball") {
  auto u = two_actions();
  std::vector<Codebook::Entry> entries = {
      {{0.4, 0.4, 0.4}, Symbol::id()},
      {{0.41, 0.42, 0.43}, Symbol::conflict()},
  };
  CHECK_THROWS_AS(Codebook(std::move(entries)), codec::CodecError);

  std::vector<Codebook::Entry> fine = {
      {{0.4, 0.4, 0.4}, Symbol::id()},
      {{0.41, 0.42, 0.6}, Symbol::conflict()},  // one component far enough
  };
  CHECK_NOTHROW(Codebook(std::move(fine)));
}

TEST_CASE("detection singles out the carrier channel for id codes") {
  const auto bank = trio_bank();
  auto u = two_actions();
  const Codebook book = Codebook::defaults(u);

  for (const auto& [carrier_id, carrier] :
       std::vector<std::pair<std::string, double>>{{"a", kOmegaA}, {"c", kOmegaC}}) {
    const PulseTrain train = book.encode(Symbol::id(), carrier, 1.0, carrier_id);
    const double window = 1.0 + 2.0 * (2.0 * std::numbers::pi / carrier) + 2.0;
    const auto detections = codec::detect(bank, codec::expand(train), window);
    REQUIRE(detections.size() == 1);
    CHECK(detections[0].channel == carrier_id);
  }

  CHECK(codec::detect(bank, {}, 5.0).empty());
}

TEST_CASE("conflict detection mirrors alliance detection channel for channel") {
  const auto bank = trio_bank();
  for (const double carrier : {kOmegaA, kOmegaB, kOmegaC}) {
    const double period = 2.0 * std::numbers::pi / carrier;
    const double window = 1.0 + 2.0 * period + 2.0;
    std::vector<std::string> plus, minus;
    for (const double sign : {1.0, -1.0}) {
      std::vector<neuron::Pulse> pulses = {
          {1.0, sign * 0.4}, {1.0 + period, sign * 0.4}, {1.0 + 2.0 * period, sign * 0.4}};
      for (const auto& d : codec::detect(bank, pulses, window)) {
        (sign > 0 ? plus : minus).push_back(d.channel);
      }
    }
    CHECK(plus == minus);
  }
}
