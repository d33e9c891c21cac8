#include "reflex/neuron.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>

namespace reflex::neuron {

void NeuronParams::validate() const {
  if (!(tau > 0.0)) throw NeuronError("tau must be positive");
  if (!(omega > 0.0)) throw NeuronError("omega must be positive");
  if (!(threshold > reset_value)) throw NeuronError("threshold must exceed reset_value");
}

NeuronState step(const NeuronState& s, const NeuronParams& p) {
  // (damping + i*omega) * (x + i*y), written out in real arithmetic.
  NeuronState next;
  next.x = s.x + p.tau * (p.damping * s.x - p.omega * s.y);
  next.y = s.y + p.tau * (p.omega * s.x + p.damping * s.y);
  next.t = s.t + p.tau;
  return next;
}

NeuronState inject(const NeuronState& s, double magnitude) {
  NeuronState next = s;
  next.y += magnitude;
  return next;
}

std::size_t snap_index(double time, double tau) {
  const double raw = time / tau;
  const double idx = std::ceil(raw - 1e-9);
  return idx <= 0.0 ? 0u : static_cast<std::size_t>(idx);
}

Trace simulate(const NeuronParams& p, const std::vector<Pulse>& pulses, double duration) {
  p.validate();
  for (std::size_t i = 0; i < pulses.size(); ++i) {
    if (pulses[i].time < 0.0) throw NeuronError("pulse times must be non-negative");
    if (i > 0 && pulses[i].time < pulses[i - 1].time) {
      throw NeuronError("pulses must be sorted by time");
    }
  }

  std::map<std::size_t, double> injections;
  for (const Pulse& pulse : pulses) {
    injections[snap_index(pulse.time, p.tau)] += pulse.magnitude;
  }

  const std::size_t steps = snap_index(duration, p.tau);
  Trace trace;
  trace.samples.reserve(steps + 1);

  NeuronState state;
  trace.samples.push_back({0.0, state.x, state.y, false});
  bool reset_pending = false;

  for (std::size_t k = 1; k <= steps; ++k) {
    if (auto it = injections.find(k - 1); it != injections.end()) {
      state = inject(state, it->second);
      if (!reset_pending && state.y >= p.threshold) {
        // Spike at the injection sample itself.
        state.y = p.spike_value;
        trace.samples[k - 1].y = p.spike_value;
        trace.samples[k - 1].spike = true;
        trace.spike_times.push_back(trace.samples[k - 1].t);
        reset_pending = true;
      }
    }
    state = step(state, p);
    // Keep sample times exactly on the grid instead of accumulating tau.
    state.t = static_cast<double>(k) * p.tau;
    bool spiked = false;
    if (reset_pending) {
      // The reset overrides the integrated y, exactly y(t+tau) = reset.
      state.y = p.reset_value;
      reset_pending = false;
    } else if (state.y >= p.threshold) {
      state.y = p.spike_value;
      trace.spike_times.push_back(state.t);
      reset_pending = true;
      spiked = true;
    }
    trace.samples.push_back({state.t, state.x, state.y, spiked});
  }
  return trace;
}

void write_trace_csv(const Trace& trace, std::ostream& out) {
  out << "t,x,y,spike\n";
  char buf[96];
  for (const TraceSample& s : trace.samples) {
    std::snprintf(buf, sizeof(buf), "%.6g,%.6g,%.6g,%d\n", s.t, s.x, s.y, s.spike ? 1 : 0);
    out << buf;
  }
}

}  // namespace reflex::neuron
