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
#include <optional>
#include <string>

#include "qutrit/device.hpp"
#include "qutrit/noise.hpp"

namespace qutrit {

struct ExperimentConfig {
  DeviceParams device;
  NoiseModel noise = NoiseModel::device_default();
  LindbladOptions lindblad;

  bool noisy = false;
  std::int64_t shots = 0;  // 0 reports exact distributions
  std::optional<std::uint64_t> seed;
  // Readout through a confusion matrix, then inversion and MLE repair.
  bool mitigate = false;
  std::string confusion_file;  // empty selects ConfusionMatrix::synthetic()
  std::string output_dir;      // empty writes nothing

  // Throws ErrorCode::Config.
  void validate() const;
};

// Missing keys keep their defaults; unknown keys are rejected.
ExperimentConfig parse_config(const std::string& yaml_text);
ExperimentConfig load_config(const std::string& path);

// Canonical JSON rendering of every field; the hash is 64-bit FNV-1a of it.
std::string canonical_config(const ExperimentConfig& config);
std::string config_hash(const ExperimentConfig& config);

}  // namespace qutrit
