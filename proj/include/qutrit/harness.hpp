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

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qutrit/algorithms.hpp"
#include "qutrit/channel.hpp"
#include "qutrit/config.hpp"
#include "qutrit/device.hpp"
#include "qutrit/mitigation.hpp"

namespace qutrit {

struct RunRecord {
  std::string id;     // oracle name, BV string or Grover target
  std::string group;  // "constant", "balanced", "bv", "grover_k1", "grover_k2"
  std::string expected;
  std::vector<double> exact;  // simulated outcome distribution before readout
  std::optional<std::vector<std::int64_t>> counts;
  std::optional<std::vector<double>> mitigated;
  std::vector<double> reported;  // mitigated, else sampled frequencies, else exact
  double success = 0.0;          // success probability of the reported distribution
  bool correct = false;          // classification or decode of the reported distribution
  double duration_ns = 0.0;
  int pi_pulses = 0;
};

struct ResultBundle {
  std::string experiment;
  std::vector<RunRecord> runs;  // fixed order: oracle / string / target index
  std::map<std::string, double> summary;
  std::map<std::string, std::vector<std::vector<double>>> matrices;
  std::vector<std::string> warnings;
  std::string config_hash;
  std::string version;

  // Deterministic serialization: sorted keys, no timestamps.
  std::string to_json() const;
  // One row per run with the reported distribution keyed by ternary labels.
  std::string to_csv() const;
};

ResultBundle run_dj(const ExperimentConfig& config);
ResultBundle run_bv(const ExperimentConfig& config);
ResultBundle run_grover(const ExperimentConfig& config);

struct DeviceReport {
  FluxSweep sweep;
  std::optional<SpectrumReport> operating_point;  // at config.device.flux
  std::string operating_error;
  std::string csv;  // sweep_csv plus a column marking the operating flux
  std::string config_hash;
  std::string to_json() const;
};

DeviceReport run_device_report(const ExperimentConfig& config, std::span<const double> flux_grid);

struct TomographyReport {
  LogicalGate gate;
  int qutrit;  // 1 or 2
  double duration_ns;
  ProcessMatrix chi_ideal;
  ProcessMatrix chi_noiseless;
  ProcessMatrix chi_noisy;
  double fidelity_noiseless;
  double fidelity_noisy;
  std::string config_hash;
  std::string to_json() const;
};

// Single-qutrit process of a compiled logical gate on physical qutrit 1 or 2.
TomographyReport run_process_tomo(const ExperimentConfig& config, const std::string& gate,
                                  int qutrit);

struct MitigationReport {
  std::vector<std::int64_t> counts;
  SignedCounts inverted;
  std::vector<double> corrected;
  std::vector<double> distribution;
  std::string to_json() const;
};

MitigationReport run_mitigation(std::span<const std::int64_t> counts, const ConfusionMatrix& m);
// Whitespace separated counts, '#' comments.
std::vector<std::int64_t> parse_counts(const std::string& text);

// Writes <dir>/<name> creating the directory; no-op for an empty dir.
void write_output(const std::string& dir, const std::string& name, const std::string& content);

std::string library_version();

}  // namespace qutrit
