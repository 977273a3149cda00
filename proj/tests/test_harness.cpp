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

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include "qutrit/config.hpp"
#include "qutrit/harness.hpp"

using namespace qutrit;

namespace {

const std::string kConfigDir = QUTRIT_CONFIG_DIR;
const std::string kData = QUTRIT_TEST_DATA_DIR;

void check_normalized(const ResultBundle& b) {
  for (const RunRecord& r : b.runs) {
    CHECK(std::accumulate(r.reported.begin(), r.reported.end(), 0.0) ==
          doctest::Approx(1.0).epsilon(1e-6));
    for (double p : r.reported) CHECK(p >= 0.0);
    if (r.mitigated) {
      CHECK(std::accumulate(r.mitigated->begin(), r.mitigated->end(), 0.0) ==
            doctest::Approx(1.0).epsilon(1e-6));
    }
  }
}

}  // namespace

TEST_CASE("shipped profile matches the built-in defaults") {
  ExperimentConfig shipped = load_config(kConfigDir + "/default.yaml");
  ExperimentConfig builtin;
  builtin.seed = shipped.seed;
  CHECK(canonical_config(shipped) == canonical_config(builtin));
  CHECK(config_hash(shipped) == config_hash(builtin));
  CHECK(config_hash(shipped).size() == 16);
}

TEST_CASE("config validation") {
  CHECK_NOTHROW(parse_config(""));
  CHECK_NOTHROW(parse_config("run: {shots: 100, seed: 3, mitigate: true}"));
  auto code_of = [](const std::string& yaml) {
    try {
      parse_config(yaml);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::Numerical;  // sentinel: no error
  };
  CHECK(code_of("run: {shots: 50, seed: 3, mitigate: true}") == ErrorCode::Config);
  CHECK(code_of("run: {shots: 500}") == ErrorCode::Config);
  CHECK(code_of("run: {shots: -1, seed: 1}") == ErrorCode::Config);
  CHECK(code_of("run: {shotz: 5}") == ErrorCode::Config);
  CHECK(code_of("device: {flux: abc}") == ErrorCode::Config);
  CHECK(code_of("device: {n_levels: 2}") == ErrorCode::Config);
  CHECK(code_of("noise: {qutrits: [{t1_01_us: 1}]}") == ErrorCode::Config);
  CHECK(code_of("noise: {qutrits: [{t1_01_us: -1}, {}]}") == ErrorCode::Config);
  CHECK(code_of("run: [") == ErrorCode::Config);
  CHECK_THROWS_AS(load_config(kConfigDir + "/nope.yaml"), Error);

  const ExperimentConfig c = parse_config(
      "noise:\n  cross_kerr_khz: {j11: -100}\n  qutrits:\n    - {t2r_01_us: .inf}\n    - {}\n");
  CHECK(c.noise.kerr.j11 == -100.0);
  CHECK(c.noise.kerr.j21 == 37.8);
  CHECK(std::isinf(c.noise.qutrits[0].t2r_01));
  CHECK(c.noise.qutrits[1].t1_01 == 35.1);
  CHECK(config_hash(c) != config_hash(ExperimentConfig{}));
}

TEST_CASE("ideal algorithm runs") {
  const ExperimentConfig cfg;
  const ResultBundle dj = run_dj(cfg);
  CHECK(dj.runs.size() == 25);
  for (const auto& r : dj.runs) {
    CHECK(r.success > 1.0 - 1e-9);
    CHECK(r.correct);
    CHECK(r.duration_ns > 0.0);
  }
  CHECK(dj.summary.at("constant_average") == doctest::Approx(1.0));
  CHECK(dj.summary.at("balanced_average") == doctest::Approx(1.0));
  CHECK(dj.runs[9].id == "Z⊗I");
  CHECK(dj.runs[9].expected == "A ⊕ 0");

  const ResultBundle bv = run_bv(cfg);
  CHECK(bv.runs.size() == 9);
  for (const auto& r : bv.runs) CHECK(r.success > 1.0 - 1e-9);

  const ResultBundle g = run_grover(cfg);
  CHECK(g.runs.size() == 18);
  const auto& m1 = g.matrices.at("grover_k1");
  const auto& m2 = g.matrices.at("grover_k2");
  for (int t = 0; t < 9; ++t) {
    CHECK(m1[t][t] == doctest::Approx(0.7265).epsilon(0.001 / 0.7265));
    CHECK(m2[t][t] == doctest::Approx(0.9835).epsilon(0.001 / 0.9835));
  }
  CHECK(g.summary.at("grover_k2_mean_duration_ns") == doctest::Approx(2110.0).epsilon(0.1));
  check_normalized(g);

  const std::string csv = g.to_csv();
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 19);
  const std::string json = g.to_json();
  CHECK(json.find("\"21\"") != std::string::npos);
  CHECK(json.find(config_hash(cfg)) != std::string::npos);
}

TEST_CASE("sampled and mitigated runs are reproducible") {
  ExperimentConfig cfg;
  cfg.shots = 2000;
  cfg.seed = 11;
  cfg.mitigate = true;
  const ResultBundle a = run_bv(cfg);
  const ResultBundle b = run_bv(cfg);
  CHECK(a.to_json() == b.to_json());
  check_normalized(a);
  for (const auto& r : a.runs) {
    REQUIRE(r.counts.has_value());
    CHECK(std::accumulate(r.counts->begin(), r.counts->end(), std::int64_t{0}) == 2000);
    CHECK(r.correct);
  }
  cfg.seed = 12;
  CHECK(run_bv(cfg).to_json() != a.to_json());

  cfg.mitigate = false;
  const ResultBundle raw = run_bv(cfg);
  check_normalized(raw);
  CHECK_FALSE(raw.runs[0].mitigated.has_value());

  ExperimentConfig loaded = cfg;
  loaded.mitigate = true;
  loaded.confusion_file = kData + "/confusion_device_like.txt";
  check_normalized(run_dj(loaded));
  loaded.confusion_file = kData + "/counts_example.txt";
  CHECK_THROWS_AS(run_dj(loaded), Error);
}

TEST_CASE("device report") {
  const ExperimentConfig cfg;
  const double one[] = {0.185};
  const DeviceReport r = run_device_report(cfg, one);
  CHECK(r.sweep.points.size() == 1);
  REQUIRE(r.operating_point.has_value());
  CHECK(r.operating_point->j11 < 0.0);
  std::istringstream in(r.csv);
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  CHECK(header.find("operating_point") != std::string::npos);
  CHECK(row.substr(row.size() - 2) == ",1");
  CHECK(r.to_json().find("\"j11_min_flux\"") != std::string::npos);

  const std::vector<double> grid = linear_grid(0.17, 0.2, 4);
  const DeviceReport s = run_device_report(cfg, grid);
  CHECK(std::count(s.csv.begin(), s.csv.end(), '\n') == 5);
  CHECK(std::count(s.csv.begin(), s.csv.end(), '1') > 0);
}

TEST_CASE("process tomography report") {
  const ExperimentConfig cfg;
  const TomographyReport h = run_process_tomo(cfg, "H", 1);
  CHECK(std::abs(h.fidelity_noiseless - 1.0) < 1e-8);
  CHECK(h.fidelity_noisy < 1.0);
  CHECK(h.fidelity_noisy > 0.9);
  CHECK(h.duration_ns == doctest::Approx(141.88).epsilon(1e-4));
  const TomographyReport z = run_process_tomo(cfg, "Z", 2);
  CHECK(std::abs(z.fidelity_noiseless - 1.0) < 1e-8);
  CHECK(z.duration_ns == 0.0);
  CHECK_THROWS_AS(run_process_tomo(cfg, "Y", 1), Error);
  CHECK_THROWS_AS(run_process_tomo(cfg, "H", 3), Error);
}

TEST_CASE("mitigation command helpers") {
  std::ifstream in(kData + "/counts_example.txt");
  std::stringstream ss;
  ss << in.rdbuf();
  const auto counts = parse_counts(ss.str());
  CHECK(counts.size() == 9);
  CHECK(std::accumulate(counts.begin(), counts.end(), std::int64_t{0}) == 20000);
  const MitigationReport r = run_mitigation(counts, ConfusionMatrix::synthetic());
  CHECK(std::accumulate(r.distribution.begin(), r.distribution.end(), 0.0) ==
        doctest::Approx(1.0));
  for (double x : r.corrected) CHECK(x >= std::sqrt(20000.0) - 1e-9);
  CHECK_THROWS_AS(parse_counts("1 2 x"), Error);
  CHECK_THROWS_AS(parse_counts("1 -2"), Error);
  CHECK_THROWS_AS(parse_counts("# nothing\n"), Error);
  CHECK_THROWS_AS(run_mitigation(std::vector<std::int64_t>{1, 2, 3}, ConfusionMatrix::synthetic()),
                  Error);
}

TEST_CASE("output files") {
  const auto dir = std::filesystem::temp_directory_path() / "qutrit_lab_test_out";
  std::filesystem::remove_all(dir);
  write_output(dir.string(), "a.json", "{}\n");
  std::ifstream in(dir / "a.json");
  std::string text;
  std::getline(in, text);
  CHECK(text == "{}");
  write_output("", "ignored.json", "{}");
  std::filesystem::remove_all(dir);
}
