// reflexsim: solve reflexive-game tasks, trace resonate-and-fire neurons and
// run full group scenarios over the pulse channel.

#include "reflex/neuron.hpp"
#include "reflex/scenario.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitFrustration = 2;  // success, but some subject is frustrated

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << content;
}

bool any_frustrated(const std::map<std::string, reflex::rgt::DecisionResult>& decisions) {
  for (const auto& [_, decision] : decisions) {
    if (decision.frustrated()) return true;
  }
  return false;
}

double parse_omega_flag(const std::string& text) {
  const auto pi_pos = text.find("pi");
  if (pi_pos != std::string::npos) {
    const std::string head = text.substr(0, pi_pos);
    const std::string tail = text.substr(pi_pos + 2);
    const double numerator = head.empty() ? 1.0 : std::stod(head);
    double denominator = 1.0;
    if (!tail.empty()) {
      if (tail.front() != '/') throw std::invalid_argument("bad omega '" + text + "'");
      denominator = std::stod(tail.substr(1));
    }
    return numerator * std::numbers::pi / denominator;
  }
  return std::stod(text);
}

// "mag@time,mag@time,..."; empty spec means no pulses.
std::vector<reflex::neuron::Pulse> parse_pulse_spec(const std::string& spec) {
  std::vector<reflex::neuron::Pulse> pulses;
  std::string::size_type pos = 0;
  while (pos < spec.size()) {
    auto comma = spec.find(',', pos);
    if (comma == std::string::npos) comma = spec.size();
    const std::string item = spec.substr(pos, comma - pos);
    const auto at = item.find('@');
    if (at == std::string::npos) {
      throw std::invalid_argument("pulse '" + item + "' is not of the form mag@time");
    }
    reflex::neuron::Pulse pulse;
    pulse.magnitude = std::stod(item.substr(0, at));
    pulse.time = std::stod(item.substr(at + 1));
    pulses.push_back(pulse);
    pos = comma + 1;
  }
  std::sort(pulses.begin(), pulses.end(),
            [](const auto& a, const auto& b) { return a.time < b.time; });
  return pulses;
}

int cmd_solve(const std::string& config_path, const std::string& task,
              const std::string& subject, const std::string& target,
              const fs::path& out_dir) {
  const auto config = reflex::scenario::load_scenario(config_path);
  if (task == "forward") {
    const auto result = reflex::scenario::solve_forward(config);
    write_file(out_dir / "decisions.json", reflex::scenario::decisions_json(config, result));
    std::cout << "polynomial: " << result.polynomial << "\n";
    for (const auto& [id, decision] : *result.decisions) {
      if (decision.frustrated()) {
        std::cout << id << ": frustration\n";
      } else {
        std::cout << id << ": [" << decision.lower().to_string() << ", "
                  << decision.upper().to_string() << "]"
                  << (decision.is_point() ? " (point)" : "") << "\n";
      }
    }
    return any_frustrated(*result.decisions) ? kExitFrustration : kExitOk;
  }
  if (task == "inverse") {
    if (subject.empty() || target.empty()) {
      std::cerr << "error: --task inverse needs --subject and --target\n";
      return kExitError;
    }
    const auto result = reflex::scenario::solve_inverse(config, subject, target);
    write_file(out_dir / "inverse.json", reflex::scenario::inverse_json(result));
    std::cout << "polynomial: " << result.polynomial << "\n"
              << result.solutions.size() << " joint influence(s) force " << subject << " = "
              << result.target.to_string() << "\n";
    for (const auto& tuple : result.solutions) {
      std::string line;
      for (const auto& [id, value] : tuple) {
        line += (line.empty() ? "" : ", ") + id + "=" + value.to_string();
      }
      std::cout << "  (" << line << ")\n";
    }
    return kExitOk;
  }
  std::cerr << "error: --task must be \"forward\" or \"inverse\"\n";
  return kExitError;
}

int cmd_neuron_trace(const std::string& omega_text, const std::string& pulse_spec,
                     std::optional<double> duration, const fs::path& out_path) {
  const double omega = parse_omega_flag(omega_text);
  const auto pulses = parse_pulse_spec(pulse_spec);
  reflex::neuron::NeuronParams params;
  params.omega = omega;
  double horizon = duration.value_or((pulses.empty() ? 0.0 : pulses.back().time) + 2.0);
  const auto trace = reflex::neuron::simulate(params, pulses, horizon);

  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + out_path.string() + "'");
  reflex::neuron::write_trace_csv(trace, out);

  std::cout << trace.spike_times.size() << " spike(s)";
  char buf[32];
  for (const double t : trace.spike_times) {
    std::snprintf(buf, sizeof(buf), " %.6g", t);
    std::cout << buf;
  }
  std::cout << "\n";
  return kExitOk;
}

int cmd_run(const std::string& config_path, std::optional<std::uint64_t> seed,
            const fs::path& out_dir) {
  const auto config = reflex::scenario::load_scenario(config_path);
  const auto result = reflex::scenario::run_scenario(config, seed);

  std::ostringstream csv;
  reflex::scenario::write_messages_csv(result.engine.message_rows(), csv);
  write_file(out_dir / "messages.csv", csv.str());
  write_file(out_dir / "decisions.json", reflex::scenario::decisions_json(config, result));

  if (config.traces) {
    for (const auto& unit : result.engine.units()) {
      std::ostringstream trace_csv;
      reflex::neuron::write_trace_csv(result.engine.channel_trace(unit.id()), trace_csv);
      write_file(out_dir / ("trace_" + unit.id() + ".csv"), trace_csv.str());
    }
  }

  std::cout << "polynomial: " << result.polynomial << "\n"
            << result.engine.messages().size() << " messages, medium clock "
            << result.engine.clock() << "\n";
  if (result.decisions) {
    for (const auto& [id, decision] : *result.decisions) {
      if (decision.frustrated()) {
        std::cout << id << ": frustration\n";
      } else {
        std::cout << id << ": [" << decision.lower().to_string() << ", "
                  << decision.upper().to_string() << "]"
                  << (decision.is_point() ? " (point)" : "") << "\n";
      }
    }
    if (any_frustrated(*result.decisions)) return kExitFrustration;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"reflexive-game simulator for pulse-coupled autonomous units"};
  app.require_subcommand(1);

  std::string config_path;
  std::string task = "forward";
  std::string subject;
  std::string target;
  std::string out_dir = ".";

  auto* solve = app.add_subcommand("solve", "forward or inverse task, no channel simulation");
  solve->add_option("--config", config_path, "scenario file")->required();
  solve->add_option("--task", task, "forward|inverse");
  solve->add_option("--subject", subject, "controlled subject (inverse)");
  solve->add_option("--target", target, "target set literal (inverse)");
  solve->add_option("--out-dir", out_dir, "output directory");

  std::string omega_text;
  std::string pulse_spec;
  std::optional<double> duration;
  std::string out_path = "trace.csv";

  auto* trace = app.add_subcommand("neuron-trace", "single resonator trace CSV");
  trace->add_option("--omega", omega_text, "eigen-frequency (number or \"3pi/2\")")->required();
  trace->add_option("--pulses", pulse_spec, "pulse spec mag@time,mag@time,...");
  trace->add_option("--duration", duration, "simulation horizon");
  trace->add_option("--out", out_path, "output CSV path");

  std::optional<std::uint64_t> seed;

  auto* run = app.add_subcommand("run", "full scenario over the pulse channel");
  run->add_option("--config", config_path, "scenario file")->required();
  run->add_option("--seed", seed, "overrides the scenario seed");
  run->add_option("--out-dir", out_dir, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) return cmd_solve(config_path, task, subject, target, out_dir);
    if (trace->parsed()) return cmd_neuron_trace(omega_text, pulse_spec, duration, out_path);
    if (run->parsed()) return cmd_run(config_path, seed, out_dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
