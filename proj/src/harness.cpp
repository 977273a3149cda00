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

#include "qutrit/harness.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include <json.hpp>

#ifndef QUTRIT_LAB_VERSION
#define QUTRIT_LAB_VERSION "unknown"
#endif

namespace qutrit {

namespace {

using nlohmann::json;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Independent stream per run, stable under reordering of unrelated runs.
std::uint64_t run_seed(std::uint64_t seed, const std::string& experiment, std::size_t index) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : experiment) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return splitmix64(seed ^ splitmix64(h + index));
}

json distribution_json(std::span<const double> p) {
  json j = json::object();
  const int n = p.size() == 9 ? 2 : 1;
  for (std::size_t i = 0; i < p.size(); ++i) {
    j[BasisLabel::from_index(n, static_cast<int>(i)).to_string()] = p[i];
  }
  return j;
}

json matrix_json(const Matrix& m) {
  json re = json::array(), im = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json rr = json::array(), ir = json::array();
    for (int c = 0; c < m.cols(); ++c) {
      rr.push_back(m(r, c).real());
      ir.push_back(m(r, c).imag());
    }
    re.push_back(rr);
    im.push_back(ir);
  }
  return {{"re", re}, {"im", im}};
}

class Runner {
 public:
  Runner(const ExperimentConfig& config, std::string experiment)
      : config_(config), experiment_(std::move(experiment)) {
    config_.validate();
    if (config_.mitigate) {
      confusion_ = config_.confusion_file.empty() ? ConfusionMatrix::synthetic()
                                                  : ConfusionMatrix::load(config_.confusion_file);
      if (confusion_->dim() != 9) {
        throw Error(ErrorCode::Config, "confusion matrix must be 9x9 for two qutrits");
      }
    }
    if (config_.noisy) {
      warnings_ = build_collapse_ops(config_.noise).warnings;
    }
  }

  // Simulates from |00> and pushes the record with readout applied.
  RunRecord& run(const Circuit& circuit, std::string id, std::string group, std::string expected) {
    RunRecord r;
    r.id = std::move(id);
    r.group = std::move(group);
    r.expected = std::move(expected);
    r.duration_ns = circuit.total_duration_ns();
    r.pi_pulses = circuit.pi_pulse_count();
    const PureState init = PureState::basis(BasisLabel::from_digits({0, 0}));
    r.exact = config_.noisy ? measure_probs(simulate_lindblad(circuit, config_.noise,
                                                              DensityMatrix::from_pure(init),
                                                              config_.lindblad))
                                  .probs()
                            : measure_probs(simulate_pure(circuit, init)).probs();
    r.reported = r.exact;
    if (config_.shots > 0) {
      const std::uint64_t seed = run_seed(*config_.seed, experiment_, records_.size());
      if (confusion_) {
        const ProbDist observed = apply_confusion(ProbDist(r.exact), *confusion_);
        r.counts = sample_counts(observed, config_.shots, seed);
        const std::vector<double> fixed = mle_correct(invert_confusion(
            std::span<const std::int64_t>(*r.counts), *confusion_));
        const double total = std::accumulate(fixed.begin(), fixed.end(), 0.0);
        std::vector<double> p(fixed.size());
        for (std::size_t i = 0; i < p.size(); ++i) p[i] = fixed[i] / total;
        r.mitigated = p;
        r.reported = p;
      } else {
        r.counts = sample_counts(ProbDist(r.exact), config_.shots, seed);
        r.reported = ProbDist::from_counts(*r.counts).probs();
      }
    }
    records_.push_back(std::move(r));
    return records_.back();
  }

  ResultBundle finish(std::map<std::string, double> summary) {
    ResultBundle b;
    b.experiment = experiment_;
    b.runs = std::move(records_);
    b.summary = std::move(summary);
    b.warnings = warnings_;
    b.config_hash = config_hash(config_);
    b.version = library_version();
    b.summary["noisy"] = config_.noisy ? 1.0 : 0.0;
    b.summary["shots"] = static_cast<double>(config_.shots);
    return b;
  }

  const std::vector<RunRecord>& records() const { return records_; }

 private:
  ExperimentConfig config_;
  std::string experiment_;
  std::optional<ConfusionMatrix> confusion_;
  std::vector<RunRecord> records_;
  std::vector<std::string> warnings_;
};

double mean_success(const std::vector<RunRecord>& runs, const std::string& group) {
  double sum = 0.0;
  int n = 0;
  for (const auto& r : runs) {
    if (r.group == group) {
      sum += r.success;
      ++n;
    }
  }
  return n ? sum / n : std::numeric_limits<double>::quiet_NaN();
}

double mean_duration(const std::vector<RunRecord>& runs, const std::string& group) {
  double sum = 0.0;
  int n = 0;
  for (const auto& r : runs) {
    if (r.group == group) {
      sum += r.duration_ns;
      ++n;
    }
  }
  return n ? sum / n : 0.0;
}

json spectrum_json(const SpectrumReport& r) {
  json levels = json::object();
  for (const auto& l : r.levels) {
    levels[std::to_string(l.m) + std::to_string(l.n)] = {{"energy_ghz", l.energy_ghz},
                                                         {"overlap", l.overlap}};
  }
  return {{"flux", r.flux},
          {"w01_q1_ghz", r.w01_q1},
          {"w12_q1_ghz", r.w12_q1},
          {"w01_q2_ghz", r.w01_q2},
          {"w12_q2_ghz", r.w12_q2},
          {"coupler_ghz", r.coupler_ghz},
          {"j_khz", {{"j11", r.j11}, {"j21", r.j21}, {"j12", r.j12}, {"j22", r.j22}}},
          {"zz_khz", r.zz},
          {"levels", levels},
          {"ambiguous", r.ambiguous},
          {"sweet_spot", r.sweet_spot}};
}

}  // namespace

std::string library_version() { return QUTRIT_LAB_VERSION; }

std::string ResultBundle::to_json() const {
  json runs_j = json::array();
  for (const auto& r : runs) {
    json j = {{"id", r.id},
              {"group", r.group},
              {"expected", r.expected},
              {"exact", distribution_json(r.exact)},
              {"reported", distribution_json(r.reported)},
              {"success", r.success},
              {"correct", r.correct},
              {"duration_ns", r.duration_ns},
              {"pi_pulses", r.pi_pulses}};
    if (r.counts) {
      json c = json::object();
      for (std::size_t i = 0; i < r.counts->size(); ++i) {
        c[BasisLabel::from_index(2, static_cast<int>(i)).to_string()] = (*r.counts)[i];
      }
      j["counts"] = c;
    }
    if (r.mitigated) j["mitigated"] = distribution_json(*r.mitigated);
    runs_j.push_back(j);
  }
  json out = {{"experiment", experiment},
              {"runs", runs_j},
              {"summary", summary},
              {"matrices", matrices},
              {"warnings", warnings},
              {"metadata", {{"config_hash", config_hash}, {"version", version}}}};
  return out.dump(2) + "\n";
}

std::string ResultBundle::to_csv() const {
  std::ostringstream out;
  out.precision(17);
  out << "id,group,expected,success,correct,duration_ns";
  for (int i = 0; i < 9; ++i) out << ",p" << BasisLabel::from_index(2, i).to_string();
  out << '\n';
  for (const auto& r : runs) {
    out << r.id << ',' << r.group << ',' << r.expected << ',' << r.success << ','
        << (r.correct ? 1 : 0) << ',' << r.duration_ns;
    for (double p : r.reported) out << ',' << p;
    out << '\n';
  }
  return out.str();
}

ResultBundle run_dj(const ExperimentConfig& config) {
  Runner runner(config, "dj");
  for (const DJOracle& oracle : all_dj_oracles()) {
    const bool constant = oracle.kind() == OracleKind::Constant;
    RunRecord& r = runner.run(dj_circuit(oracle), oracle.name(),
                              constant ? "constant" : "balanced",
                              oracle.classical_function());
    const double p00 = r.reported[0];
    r.success = constant ? p00 : 1.0 - p00;
    r.correct = dj_classify(ProbDist(r.reported)) == oracle.kind();
  }
  const auto& runs = runner.records();
  const double accuracy =
      std::count_if(runs.begin(), runs.end(), [](const RunRecord& r) { return r.correct; }) /
      static_cast<double>(runs.size());
  return runner.finish({{"constant_average", mean_success(runs, "constant")},
                        {"balanced_average", mean_success(runs, "balanced")},
                        {"classification_accuracy", accuracy},
                        {"classical_baseline", classical_baselines().dj}});
}

ResultBundle run_bv(const ExperimentConfig& config) {
  Runner runner(config, "bv");
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      const BVString s{{a, b}};
      RunRecord& r = runner.run(bv_circuit(s), s.to_string(), "bv", s.to_string());
      r.success = r.reported[s.label().index()];
      r.correct = bv_decode(ProbDist(r.reported)).s == s.s;
    }
  }
  const auto& runs = runner.records();
  return runner.finish({{"bv_average", mean_success(runs, "bv")},
                        {"classical_baseline", classical_baselines().bv}});
}

ResultBundle run_grover(const ExperimentConfig& config) {
  Runner runner(config, "grover");
  std::map<std::string, std::vector<std::vector<double>>> matrices;
  for (int k = 1; k <= 2; ++k) {
    const std::string group = "grover_k" + std::to_string(k);
    auto& m = matrices[group];
    for (int t = 0; t < 9; ++t) {
      const BasisLabel target = BasisLabel::from_index(2, t);
      RunRecord& r = runner.run(grover_circuit({target, k}), target.to_string(), group,
                                target.to_string());
      r.success = r.reported[t];
      const auto best = std::max_element(r.reported.begin(), r.reported.end());
      r.correct = best - r.reported.begin() == t;
      m.push_back(r.reported);
    }
  }
  const auto& runs = runner.records();
  const ClassicalBaselines base = classical_baselines();
  ResultBundle b = runner.finish({{"grover_k1_average", mean_success(runs, "grover_k1")},
                                  {"grover_k2_average", mean_success(runs, "grover_k2")},
                                  {"grover_k1_ideal", grover_ideal_success(1)},
                                  {"grover_k2_ideal", grover_ideal_success(2)},
                                  {"grover_k1_mean_duration_ns", mean_duration(runs, "grover_k1")},
                                  {"grover_k2_mean_duration_ns", mean_duration(runs, "grover_k2")},
                                  {"classical_baseline_k1", base.grover1},
                                  {"classical_baseline_k2", base.grover2}});
  b.matrices = std::move(matrices);
  return b;
}

std::string DeviceReport::to_json() const {
  json points = json::array();
  for (const auto& p : sweep.points) {
    json j = {{"flux", p.flux}, {"error", p.error}};
    if (p.report) j["spectrum"] = spectrum_json(*p.report);
    points.push_back(j);
  }
  json out = {{"experiment", "device"},
              {"points", points},
              {"j11_min_flux", sweep.j11_min_flux ? json(*sweep.j11_min_flux) : json(nullptr)},
              {"j11_interior_minimum", sweep.j11_interior_minimum},
              {"w01_monotone_decreasing", sweep.w01_monotone_decreasing},
              {"operating_point",
               operating_point ? spectrum_json(*operating_point) : json(nullptr)},
              {"operating_error", operating_error},
              {"metadata", {{"config_hash", config_hash}, {"version", library_version()}}}};
  return out.dump(2) + "\n";
}

DeviceReport run_device_report(const ExperimentConfig& config, std::span<const double> flux_grid) {
  config.validate();
  DeviceReport rep;
  rep.sweep = flux_sweep(config.device, flux_grid);
  rep.config_hash = config_hash(config);
  try {
    rep.operating_point = labeled_spectrum(config.device);
  } catch (const Error& e) {
    rep.operating_error = e.what();
  }

  // Mark the grid row closest to the operating flux, if it lies on the grid.
  const double op = config.device.flux;
  double spacing = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < flux_grid.size(); ++i) {
    spacing = std::min(spacing, std::abs(flux_grid[i] - flux_grid[i - 1]));
  }
  const double window = std::isfinite(spacing) ? 0.5 * spacing : 1e-9;
  std::size_t mark = flux_grid.size();
  double best = window;
  for (std::size_t i = 0; i < flux_grid.size(); ++i) {
    const double d = std::abs(flux_grid[i] - op);
    if (d <= best) {
      best = d;
      mark = i;
    }
  }

  std::istringstream in(sweep_csv(rep.sweep));
  std::ostringstream out;
  std::string line;
  std::getline(in, line);
  out << line << ",operating_point\n";
  for (std::size_t i = 0; std::getline(in, line); ++i) {
    out << line << ',' << (i == mark ? 1 : 0) << '\n';
  }
  rep.csv = out.str();
  return rep;
}

std::string TomographyReport::to_json() const {
  json out = {{"experiment", "process_tomography"},
              {"gate", std::string(to_string(gate))},
              {"qutrit", qutrit},
              {"duration_ns", duration_ns},
              {"fidelity_noiseless", fidelity_noiseless},
              {"fidelity_noisy", fidelity_noisy},
              {"chi_ideal", matrix_json(chi_ideal.chi())},
              {"chi_noisy", matrix_json(chi_noisy.chi())},
              {"metadata", {{"config_hash", config_hash}, {"version", library_version()}}}};
  return out.dump(2) + "\n";
}

TomographyReport run_process_tomo(const ExperimentConfig& config, const std::string& gate,
                                  int qutrit) {
  config.validate();
  if (qutrit != 1 && qutrit != 2) {
    throw Error(ErrorCode::InvalidArgument, "qutrit must be 1 or 2");
  }
  const LogicalGate g = parse_logical_gate(gate);
  const PhysicalQutrit physical = qutrit == 1 ? PhysicalQutrit::Q1 : PhysicalQutrit::Q2;
  Circuit circuit(1);
  circuit.add_parallel({decompose_single(g, 0, physical)});

  const ProcessMatrix ideal = chi_matrix(QuantumChannel::from_unitary(logical_gate(g)));
  const ProcessMatrix clean =
      chi_matrix(circuit_channel(circuit, NoiseModel::noiseless(1), config.lindblad));
  const ProcessMatrix noisy =
      chi_matrix(circuit_channel(circuit, config.noise.restricted_to(qutrit - 1), config.lindblad));
  return TomographyReport{g,
                          qutrit,
                          circuit.total_duration_ns(),
                          ideal,
                          clean,
                          noisy,
                          process_fidelity(clean, ideal),
                          process_fidelity(noisy, ideal),
                          config_hash(config)};
}

std::string MitigationReport::to_json() const {
  json out = {{"experiment", "mitigation"},
              {"counts", counts},
              {"inverted", inverted.q},
              {"shots", inverted.shots},
              {"corrected", corrected},
              {"distribution", distribution_json(distribution)},
              {"metadata", {{"version", library_version()}}}};
  return out.dump(2) + "\n";
}

MitigationReport run_mitigation(std::span<const std::int64_t> counts, const ConfusionMatrix& m) {
  if (static_cast<int>(counts.size()) != m.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "counts and confusion matrix sizes differ");
  }
  MitigationReport rep;
  rep.counts.assign(counts.begin(), counts.end());
  rep.inverted = invert_confusion(counts, m);
  rep.corrected = mle_correct(rep.inverted);
  const double total = std::accumulate(rep.corrected.begin(), rep.corrected.end(), 0.0);
  rep.distribution.resize(rep.corrected.size());
  for (std::size_t i = 0; i < rep.corrected.size(); ++i) {
    rep.distribution[i] = rep.corrected[i] / total;
  }
  return rep;
}

std::vector<std::int64_t> parse_counts(const std::string& text) {
  std::vector<std::int64_t> counts;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    line = line.substr(0, line.find('#'));
    std::istringstream words(line);
    std::string w;
    while (words >> w) {
      std::size_t used = 0;
      long long v = 0;
      try {
        v = std::stoll(w, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != w.size() || v < 0) {
        throw Error(ErrorCode::Parse, "counts must be non-negative integers, got '" + w + "'");
      }
      counts.push_back(v);
    }
  }
  if (counts.empty()) throw Error(ErrorCode::Parse, "no counts found");
  return counts;
}

void write_output(const std::string& dir, const std::string& name, const std::string& content) {
  if (dir.empty()) return;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create output directory " + dir);
  const std::filesystem::path path = std::filesystem::path(dir) / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out << content;
}

}  // namespace qutrit
