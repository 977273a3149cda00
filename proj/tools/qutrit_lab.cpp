// Copyright 2026 The qutrit-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qutrit/circuit_text.hpp"
#include "qutrit/config.hpp"
#include "qutrit/gates.hpp"
#include "qutrit/harness.hpp"

namespace {

using nlohmann::json;
using namespace qutrit;

int print_error(const std::string& code, const std::string& message) {
  json doc = {{"error", {{"code", code}, {"message", message}}}};
  std::cout << doc.dump(2) << std::endl;
  return 2;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct GlobalFlags {
  std::string config_path;
  bool noisy = false;
  std::optional<std::int64_t> shots;
  std::optional<std::uint64_t> seed;
  bool mitigate = false;
  std::string out;
};

ExperimentConfig resolve_config(const GlobalFlags& f) {
  ExperimentConfig c = f.config_path.empty() ? ExperimentConfig{} : load_config(f.config_path);
  if (f.noisy) c.noisy = true;
  if (f.shots) c.shots = *f.shots;
  if (f.seed) c.seed = *f.seed;
  if (f.mitigate) c.mitigate = true;
  if (!f.out.empty()) c.output_dir = f.out;
  c.validate();
  return c;
}

void emit(const std::string& dir, const std::string& name, const std::string& json_text) {
  std::cout << json_text;
  write_output(dir, name, json_text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qutrit-lab: two-qutrit circuit compilation, simulation and device numerics"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", library_version());

  GlobalFlags flags;
  app.add_option("--config", flags.config_path, "YAML experiment profile")->check(CLI::ExistingFile);
  app.add_flag("--noisy", flags.noisy, "simulate with the Lindblad noise model");
  app.add_option("--shots", flags.shots, "sampled shots per circuit (0 = exact)");
  app.add_option("--seed", flags.seed, "sampling seed");
  app.add_flag("--mitigate", flags.mitigate, "apply readout error and MLE mitigation");
  app.add_option("--out", flags.out, "directory for JSON and CSV outputs");

  auto* sim = app.add_subcommand("sim", "run an algorithm over all its inputs");
  std::string algorithm;
  sim->add_option("algorithm", algorithm, "dj, bv or grover")
      ->required()
      ->check(CLI::IsMember({"dj", "bv", "grover"}));

  auto* compile = app.add_subcommand("compile", "compile a gate to native instructions");
  auto* cphase = compile->add_subcommand("cphase", "controlled phase on one basis state");
  compile->require_subcommand(1);
  double theta = 0.0;
  std::string target;
  cphase->add_option("--theta", theta, "phase in radians")->required();
  cphase->add_option("--target", target, "two-digit basis label, e.g. 21")->required();

  auto* device = app.add_subcommand("device", "circuit quantization of the device");
  auto* sweep = device->add_subcommand("sweep", "labeled spectrum over a flux grid");
  device->require_subcommand(1);
  double flux_from = 0.0, flux_to = 0.3;
  int steps = 31;
  sweep->add_option("--from", flux_from, "first flux point (flux quanta)");
  sweep->add_option("--to", flux_to, "last flux point (flux quanta)");
  sweep->add_option("--steps", steps, "number of grid points")->check(CLI::PositiveNumber);

  auto* tomo = app.add_subcommand("tomo", "process matrices of compiled gates");
  auto* process = tomo->add_subcommand("process", "chi matrix and process fidelity");
  tomo->require_subcommand(1);
  std::string gate = "H";
  int qutrit = 1;
  process->add_option("--gate", gate, "H, Hdag, X, Xsq, Z, Zsq or I");
  process->add_option("--qutrit", qutrit, "physical qutrit")->check(CLI::IsMember({1, 2}));

  auto* mitigate = app.add_subcommand("mitigate", "invert readout errors on measured counts");
  std::string counts_path, matrix_path;
  mitigate->add_option("--counts", counts_path, "whitespace separated counts")
      ->required()
      ->check(CLI::ExistingFile);
  mitigate->add_option("--matrix", matrix_path, "confusion matrix (default: synthetic)")
      ->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return print_error("usage", e.what());
  }

  try {
    if (*sim) {
      const ExperimentConfig cfg = resolve_config(flags);
      const ResultBundle b = algorithm == "dj"   ? run_dj(cfg)
                             : algorithm == "bv" ? run_bv(cfg)
                                                 : run_grover(cfg);
      emit(cfg.output_dir, b.experiment + ".json", b.to_json());
      write_output(cfg.output_dir, b.experiment + ".csv", b.to_csv());
      if (algorithm == "grover") {
        for (const auto& [name, m] : b.matrices) {
          std::ostringstream csv;
          csv.precision(17);
          for (const auto& row : m) {
            for (std::size_t i = 0; i < row.size(); ++i) csv << (i ? "," : "") << row[i];
            csv << '\n';
          }
          write_output(cfg.output_dir, name + "_matrix.csv", csv.str());
        }
      }
    } else if (*compile) {
      const BasisLabel label = BasisLabel::parse(target);
      if (label.num_qutrits() != 2) {
        throw Error(ErrorCode::InvalidArgument, "cphase target must have two digits");
      }
      const Circuit c = compile_cphase(theta, label);
      const double distance =
          phase_insensitive_distance(circuit_unitary_framed(c), cphase_matrix(theta, label));
      const CPhaseRoute route = cphase_route(label);
      json doc = {{"target", label.to_string()},
                  {"theta", theta},
                  {"native_target", route.native_target.to_string()},
                  {"moments", c.moments().size()},
                  {"instructions", c.instruction_count()},
                  {"pi_pulses", c.pi_pulse_count()},
                  {"duration_ns", c.total_duration_ns()},
                  {"distance_to_ideal", distance},
                  {"frame_equivalent", frame_equivalence_check(c)},
                  {"circuit", to_text(c)}};
      emit(flags.out, "cphase_" + label.to_string() + ".json", doc.dump(2) + "\n");
    } else if (*device) {
      const ExperimentConfig cfg = resolve_config(flags);
      const std::vector<double> grid = linear_grid(flux_from, flux_to, steps);
      const DeviceReport rep = run_device_report(cfg, grid);
      emit(cfg.output_dir, "device_sweep.json", rep.to_json());
      write_output(cfg.output_dir, "device_sweep.csv", rep.csv);
    } else if (*tomo) {
      const ExperimentConfig cfg = resolve_config(flags);
      const TomographyReport rep = run_process_tomo(cfg, gate, qutrit);
      emit(cfg.output_dir, "tomo_" + std::string(to_string(rep.gate)) + "_q" +
                               std::to_string(qutrit) + ".json",
           rep.to_json());
    } else if (*mitigate) {
      const std::vector<std::int64_t> counts = parse_counts(read_file(counts_path));
      const ConfusionMatrix m =
          matrix_path.empty() ? ConfusionMatrix::synthetic() : ConfusionMatrix::load(matrix_path);
      emit(flags.out, "mitigation.json", run_mitigation(counts, m).to_json());
    }
  } catch (const Error& e) {
    return print_error(std::string(to_string(e.code())), e.what());
  } catch (const std::exception& e) {
    return print_error("internal", e.what());
  }
  return 0;
}
