#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace reflex::neuron {

class NeuronError : public std::runtime_error {
public:
  explicit NeuronError(const std::string& what) : std::runtime_error(what) {}
};

/// Resonate-and-fire parameters. The discrete map
///   z(t+tau) = z(t) + tau*(damping + i*omega)*z(t)
/// is normative: it is intentionally less damped than the exact exponential,
/// and several codebook threshold crossings depend on that, so do not swap in
/// a better integrator.
struct NeuronParams {
  double omega = 0.0;        // eigen-frequency, radians per time unit
  double damping = -0.1;     // oscillator damping factor
  double tau = 0.005;        // integration step
  double threshold = 1.0;
  double spike_value = 1.5;  // sample value written at a spike
  double reset_value = 0.1;  // forced y at the sample after a spike

  void validate() const;
};

struct NeuronState {
  double x = 0.0;  // current-like (recovery) variable
  double y = 0.0;  // voltage-like variable; pulses and spikes act here
  double t = 0.0;
};

/// One additive voltage pulse at a nominal time (snapped to the step grid by
/// simulate()).
struct Pulse {
  double time = 0.0;
  double magnitude = 0.0;
};

struct TraceSample {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
  bool spike = false;
};

struct Trace {
  std::vector<TraceSample> samples;   // uniformly spaced by tau
  std::vector<double> spike_times;    // subset of sample times
};

/// One Euler step of the normative map; advances t by tau. No threshold
/// logic.
NeuronState step(const NeuronState& s, const NeuronParams& p);

/// Adds the pulse magnitude to the voltage variable; x and t unchanged.
NeuronState inject(const NeuronState& s, double magnitude);

/// Grid index of the nearest step boundary at or after the nominal time
/// (with a small tolerance so on-grid times stay put).
std::size_t snap_index(double time, double tau);

/// Fixed-step simulation from rest. Per tick: apply the tick's pulses to y,
/// check the threshold (a pulse landing on a charged neuron spikes at the
/// injection sample), Euler-step, check again. A spike writes spike_value
/// into its sample and forces the next sample's y to reset_value; x is never
/// reset. Pulses must be sorted by time and non-negative.
Trace simulate(const NeuronParams& p, const std::vector<Pulse>& pulses, double duration);

/// CSV with header "t,x,y,spike", one row per sample, floats at 6
/// significant digits. Byte-stable for identical inputs.
void write_trace_csv(const Trace& trace, std::ostream& out);

}  // namespace reflex::neuron
