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

#include "qutrit/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>
#include <yaml-cpp/yaml.h>

namespace qutrit {

namespace {

[[noreturn]] void fail(const std::string& message) { throw Error(ErrorCode::Config, message); }

void check_keys(const YAML::Node& node, const std::string& where,
                std::initializer_list<const char*> allowed) {
  if (!node.IsMap()) fail(where + " must be a mapping");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    if (!ok.count(key)) fail("unknown key '" + key + "' in " + where);
  }
}

template <typename T>
void read(const YAML::Node& node, const char* key, T& out, const std::string& where) {
  const YAML::Node v = node[key];
  if (!v) return;
  try {
    out = v.as<T>();
  } catch (const YAML::Exception&) {
    fail("bad value for " + where + "." + key);
  }
}

TransitionCoherence read_coherence(const YAML::Node& node, TransitionCoherence c,
                                   const std::string& where) {
  check_keys(node, where, {"t1_01_us", "t1_12_us", "t2r_01_us", "t2r_12_us"});
  read(node, "t1_01_us", c.t1_01, where);
  read(node, "t1_12_us", c.t1_12, where);
  read(node, "t2r_01_us", c.t2r_01, where);
  read(node, "t2r_12_us", c.t2r_12, where);
  return c;
}

ExperimentConfig from_yaml(const YAML::Node& root) {
  ExperimentConfig cfg;
  if (!root || root.IsNull()) return cfg;
  check_keys(root, "config", {"run", "noise", "device", "simulation"});

  if (const YAML::Node run = root["run"]) {
    check_keys(run, "run",
               {"noisy", "shots", "seed", "mitigate", "confusion_file", "output_dir"});
    read(run, "noisy", cfg.noisy, "run");
    read(run, "shots", cfg.shots, "run");
    read(run, "mitigate", cfg.mitigate, "run");
    read(run, "confusion_file", cfg.confusion_file, "run");
    read(run, "output_dir", cfg.output_dir, "run");
    if (run["seed"] && !run["seed"].IsNull()) {
      std::uint64_t seed = 0;
      read(run, "seed", seed, "run");
      cfg.seed = seed;
    }
  }

  if (const YAML::Node noise = root["noise"]) {
    check_keys(noise, "noise", {"kerr_compensation", "qutrits", "cross_kerr_khz"});
    read(noise, "kerr_compensation", cfg.noise.kerr_compensation, "noise");
    if (const YAML::Node qs = noise["qutrits"]) {
      if (!qs.IsSequence() || qs.size() != 2) fail("noise.qutrits must list both qutrits");
      for (std::size_t i = 0; i < 2; ++i) {
        cfg.noise.qutrits[i] = read_coherence(qs[i], cfg.noise.qutrits[i],
                                              "noise.qutrits[" + std::to_string(i) + "]");
      }
    }
    if (const YAML::Node k = noise["cross_kerr_khz"]) {
      check_keys(k, "noise.cross_kerr_khz", {"j11", "j21", "j12", "j22"});
      read(k, "j11", cfg.noise.kerr.j11, "noise.cross_kerr_khz");
      read(k, "j21", cfg.noise.kerr.j21, "noise.cross_kerr_khz");
      read(k, "j12", cfg.noise.kerr.j12, "noise.cross_kerr_khz");
      read(k, "j22", cfg.noise.kerr.j22, "noise.cross_kerr_khz");
    }
  }

  if (const YAML::Node dev = root["device"]) {
    check_keys(dev, "device",
               {"c_q1_ff", "c_q2_ff", "c_c_ff", "c_q12_ff", "e_j1_ghz", "e_j2_ghz", "e_jc_ghz",
                "flux", "n_levels", "n_levels_coupler"});
    DeviceParams& d = cfg.device;
    read(dev, "c_q1_ff", d.c_q1, "device");
    read(dev, "c_q2_ff", d.c_q2, "device");
    read(dev, "c_c_ff", d.c_c, "device");
    read(dev, "c_q12_ff", d.c_q12, "device");
    read(dev, "e_j1_ghz", d.e_j1, "device");
    read(dev, "e_j2_ghz", d.e_j2, "device");
    read(dev, "e_jc_ghz", d.e_jc, "device");
    read(dev, "flux", d.flux, "device");
    read(dev, "n_levels", d.n_levels, "device");
    read(dev, "n_levels_coupler", d.n_levels_coupler, "device");
  }

  if (const YAML::Node sim = root["simulation"]) {
    check_keys(sim, "simulation", {"max_step_ns", "min_steps_per_moment"});
    read(sim, "max_step_ns", cfg.lindblad.max_step_ns, "simulation");
    read(sim, "min_steps_per_moment", cfg.lindblad.min_steps_per_moment, "simulation");
  }
  return cfg;
}

// JSON has no infinity; coherence times may be infinite.
nlohmann::json number(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (shots < 0) fail("shots must be >= 0");
  if (shots > 0 && !seed) fail("sampled runs (shots > 0) require a seed");
  if (mitigate) {
    // The MLE floor sqrt(N) over nine outcomes needs 9 sqrt(N) <= N.
    if (shots < 81) fail("mitigation requires shots >= 81");
  }
  if (!(lindblad.max_step_ns > 0.0) || lindblad.min_steps_per_moment < 1) {
    fail("simulation step settings must be positive");
  }
  if (noise.num_qutrits() != 2) fail("noise model must describe two qutrits");
  try {
    noise.validate();
    device.validate();
  } catch (const Error& e) {
    fail(e.what());
  }
}

ExperimentConfig parse_config(const std::string& yaml_text) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::Exception& e) {
    fail(std::string("YAML parse error: ") + e.what());
  }
  ExperimentConfig cfg = from_yaml(root);
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string canonical_config(const ExperimentConfig& c) {
  nlohmann::json j;
  j["run"] = {{"noisy", c.noisy},
              {"shots", c.shots},
              {"seed", c.seed ? nlohmann::json(*c.seed) : nlohmann::json(nullptr)},
              {"mitigate", c.mitigate},
              {"confusion_file", c.confusion_file}};
  nlohmann::json qs = nlohmann::json::array();
  for (const auto& q : c.noise.qutrits) {
    qs.push_back({{"t1_01_us", number(q.t1_01)},
                  {"t1_12_us", number(q.t1_12)},
                  {"t2r_01_us", number(q.t2r_01)},
                  {"t2r_12_us", number(q.t2r_12)}});
  }
  j["noise"] = {{"kerr_compensation", c.noise.kerr_compensation},
                {"qutrits", qs},
                {"cross_kerr_khz",
                 {{"j11", c.noise.kerr.j11},
                  {"j21", c.noise.kerr.j21},
                  {"j12", c.noise.kerr.j12},
                  {"j22", c.noise.kerr.j22}}}};
  const DeviceParams& d = c.device;
  j["device"] = {{"c_q1_ff", d.c_q1},     {"c_q2_ff", d.c_q2},
                 {"c_c_ff", d.c_c},       {"c_q12_ff", d.c_q12},
                 {"e_j1_ghz", d.e_j1},    {"e_j2_ghz", d.e_j2},
                 {"e_jc_ghz", d.e_jc},    {"flux", d.flux},
                 {"n_levels", d.n_levels}, {"n_levels_coupler", d.n_levels_coupler}};
  j["simulation"] = {{"max_step_ns", c.lindblad.max_step_ns},
                     {"min_steps_per_moment", c.lindblad.min_steps_per_moment}};
  // The output directory does not change results and is left out.
  return j.dump();
}

std::string config_hash(const ExperimentConfig& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : canonical_config(config)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace qutrit
