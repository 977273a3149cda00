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

// Acceptance run: one PASS/FAIL line per criterion, details indented below.
// Exit status is nonzero when any criterion fails.

#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "qutrit/algorithms.hpp"
#include "qutrit/channel.hpp"
#include "qutrit/config.hpp"
#include "qutrit/device.hpp"
#include "qutrit/gates.hpp"
#include "qutrit/harness.hpp"
#include "qutrit/mitigation.hpp"
#include "qutrit/noise.hpp"

using namespace qutrit;

namespace {

class Criterion {
 public:
  explicit Criterion(std::string title) : title_(std::move(title)) {}

  void check(bool ok, const char* fmt, ...) __attribute__((format(printf, 3, 4))) {
    char buf[512];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof(buf), fmt, args);
    va_end(args);
    lines_.push_back(std::string(ok ? "      ok    " : "      FAIL  ") + buf);
    ok_ = ok_ && ok;
  }

  void note(const std::string& text) { lines_.push_back("      note  " + text); }

  bool ok() const { return ok_; }
  const std::string& title() const { return title_; }
  const std::vector<std::string>& lines() const { return lines_; }

 private:
  std::string title_;
  std::vector<std::string> lines_;
  bool ok_ = true;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

ProbDist ideal(const Circuit& c) {
  return measure_probs(simulate_pure(c, PureState::basis(BasisLabel::parse("00"))));
}

void criterion_1(Criterion& c) {
  const auto t0 = Clock::now();
  const double expect[] = {0.7265, 0.9835};
  for (int k = 1; k <= 2; ++k) {
    const double analytic = std::pow(std::sin((2 * k + 1) * std::asin(1.0 / 3.0)), 2);
    double worst = 0.0, worst_analytic = 0.0;
    for (int t = 0; t < 9; ++t) {
      const double p = ideal(grover_circuit({BasisLabel::from_index(2, t), k}))[t];
      worst = std::max(worst, std::abs(p - expect[k - 1]));
      worst_analytic = std::max(worst_analytic, std::abs(p - analytic));
    }
    c.check(worst <= 1e-3, "k=%d: max |P - %.4f| over 9 targets = %.2e (tol 1e-3)", k,
            expect[k - 1], worst);
    c.check(worst_analytic <= 1e-9, "k=%d: max |P - sin^2((2k+1) asin(1/3))| = %.2e (tol 1e-9)",
            k, worst_analytic);
  }
  const double dt = seconds_since(t0);
  c.check(dt < 1.0, "runtime %.3f s (limit 1 s)", dt);
}

void criterion_2(Criterion& c) {
  const auto t0 = Clock::now();
  double worst = 0.0;
  int misclassified = 0;
  for (const DJOracle& o : all_dj_oracles()) {
    const ProbDist p = ideal(dj_circuit(o));
    const double sp = o.kind() == OracleKind::Constant ? p[0] : 1.0 - p[0];
    worst = std::max(worst, 1.0 - sp);
    misclassified += dj_classify(p) != o.kind();
  }
  c.check(worst <= 1e-9, "DJ 9 constant + 16 balanced: min SP = 1 - %.2e (tol 1e-9)", worst);
  c.check(misclassified == 0, "DJ misclassified oracles: %d", misclassified);
  double worst_bv = 0.0;
  int wrong = 0;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      const BVString s{{a, b}};
      const ProbDist p = ideal(bv_circuit(s));
      worst_bv = std::max(worst_bv, 1.0 - p[s.label().index()]);
      wrong += bv_decode(p).s != s.s;
    }
  }
  c.check(worst_bv <= 1e-9, "BV 9 strings: min SP = 1 - %.2e (tol 1e-9)", worst_bv);
  c.check(wrong == 0, "BV wrong decodes: %d", wrong);
  const double dt = seconds_since(t0);
  c.check(dt < 5.0, "runtime %.3f s (limit 5 s)", dt);
}

void criterion_3(Criterion& c) {
  const auto t0 = Clock::now();
  for (LogicalGate g : {LogicalGate::H, LogicalGate::X, LogicalGate::Z, LogicalGate::Hdag}) {
    for (PhysicalQutrit q : {PhysicalQutrit::Q1, PhysicalQutrit::Q2}) {
      Circuit circ(1);
      circ.add_parallel({decompose_single(g, 0, q)});
      const double d = phase_insensitive_distance(circuit_unitary_framed(circ), logical_gate(g));
      c.check(d <= 1e-10, "compiled %s on Q%d: distance %.2e (tol 1e-10)",
              std::string(to_string(g)).c_str(), q == PhysicalQutrit::Q1 ? 1 : 2, d);
    }
  }
  const std::map<std::string, int> region = {{"00", 6}, {"01", 4}, {"02", 4}, {"10", 4}, {"11", 2},
                                             {"12", 2}, {"20", 2}, {"21", 0}, {"22", 0}};
  for (int t = 0; t < 9; ++t) {
    const BasisLabel target = BasisLabel::from_index(2, t);
    const Circuit circ = compile_cphase(kPi, target);
    // Brute-force product of the native matrices, VPhases explicit.
    Matrix u = Matrix::Identity(9, 9);
    for (const Moment& m : circ.moments()) {
      for (const GateInstruction& g : m) u = embed_operator(g.matrix(), g.targets(), 2) * u;
    }
    const double d = phase_insensitive_distance(u, cphase_matrix(kPi, target));
    const int expected = region.at(target.to_string());
    c.check(d <= 1e-10 && circ.pi_pulse_count() == expected,
            "C_p(pi,|%s>): distance %.2e, pi pulses %d (expected %d)", target.to_string().c_str(),
            d, circ.pi_pulse_count(), expected);
  }
  double lo = 1e300, hi = 0.0, sum = 0.0;
  for (int t = 0; t < 9; ++t) {
    const double d = grover_circuit({BasisLabel::from_index(2, t), 2}).total_duration_ns();
    lo = std::min(lo, d);
    hi = std::max(hi, d);
    sum += d;
  }
  const double mean = sum / 9.0;
  c.check(std::abs(mean - 2110.0) <= 211.0,
          "Grover-2 duration mean over targets %.1f ns (2110 +- 211), range [%.1f, %.1f]", mean,
          lo, hi);
  const double dt = seconds_since(t0);
  c.check(dt < 1.0, "runtime %.3f s (limit 1 s)", dt);
}

ExperimentConfig noisy_config() {
  ExperimentConfig cfg;
  cfg.noisy = true;
  return cfg;
}

void criterion_4(Criterion& c) {
  const auto t0 = Clock::now();
  const ResultBundle b = run_grover(noisy_config());
  const double a1 = b.summary.at("grover_k1_average");
  const double a2 = b.summary.at("grover_k2_average");
  c.check(a2 > a1, "round-2 average %.4f > round-1 average %.4f", a2, a1);
  c.check(a1 >= 0.35 && a1 <= 0.65, "round-1 average %.4f in [0.35, 0.65]", a1);
  c.check(a2 >= 0.35 && a2 <= 0.65, "round-2 average %.4f in [0.35, 0.65]", a2);
  c.check(a1 > 0.222, "round-1 average %.4f > 2 x 1/9", a1);
  c.check(a2 > 0.444, "round-2 average %.4f > 2 x 2/9", a2);
  const double dt = seconds_since(t0);
  c.check(dt < 300.0, "runtime %.1f s (limit 300 s)", dt);
}

void criterion_5(Criterion& c) {
  const ResultBundle dj = run_dj(noisy_config());
  const double bal = dj.summary.at("balanced_average");
  const double con = dj.summary.at("constant_average");
  c.check(bal >= 0.90 && bal <= 1.0, "balanced DJ average %.4f in [0.90, 1.0]", bal);
  c.check(con > 0.5, "constant DJ average %.4f > 0.5", con);
  const ResultBundle bv = run_bv(noisy_config());
  const double avg = bv.summary.at("bv_average");
  c.check(avg > 1.0 / 3.0, "BV average %.4f > 0.333", avg);
}

void criterion_6(Criterion& c) {
  const NoiseModel dev = NoiseModel::device_default();
  const DensityMatrix init = DensityMatrix::from_pure(PureState::basis(BasisLabel::parse("00")));
  double drift = 0.0, min_eig = 1.0, herm = 0.0, eq = 0.0, halving = 0.0;
  LindbladOptions half;
  half.max_step_ns = 0.5;
  half.min_steps_per_moment = 32;
  for (int t = 0; t < 9; ++t) {
    const Circuit circ = grover_circuit({BasisLabel::from_index(2, t), 2});
    const DensityMatrix rho = simulate_lindblad(circ, dev, init);
    drift = std::max(drift, std::abs(rho.matrix().trace().real() - 1.0));
    herm = std::max(herm, (rho.matrix() - rho.matrix().adjoint()).norm());
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix());
    min_eig = std::min(min_eig, es.eigenvalues().minCoeff());
    const DensityMatrix clean = simulate_lindblad(circ, NoiseModel::noiseless(2), init);
    eq = std::max(eq, 1.0 - fidelity(simulate_pure(circ, PureState::basis(BasisLabel::parse("00"))),
                                     clean));
    const DensityMatrix fine = simulate_lindblad(circ, dev, init, half);
    halving = std::max(halving, std::abs(1.0 - fidelity(rho, fine)));
  }
  c.check(drift < 1e-6, "trace drift over 9 Grover-2 circuits %.2e (< 1e-6)", drift);
  c.check(min_eig >= -1e-6, "minimum eigenvalue %.2e (>= -1e-6)", min_eig);
  c.check(herm < 1e-9, "Hermiticity defect %.2e (< 1e-9)", herm);
  c.check(eq <= 1e-8, "zero-noise vs pure backend: 1 - fidelity = %.2e (<= 1e-8)", eq);
  c.check(halving < 1e-6, "RK4 step halving: |1 - fidelity| = %.2e (< 1e-6)", halving);
  const struct {
    int q;
    GateKind t;
    double expect;
    const char* name;
  } cases[] = {{0, GateKind::R01, 4.5, "Q1 0-1"},
               {0, GateKind::R12, 2.0, "Q1 1-2"},
               {1, GateKind::R01, 3.2, "Q2 0-1"},
               {1, GateKind::R12, 2.4, "Q2 1-2"}};
  for (const auto& k : cases) {
    const double t2 = simulated_ramsey_time(dev, k.q, k.t);
    c.check(std::abs(t2 / k.expect - 1.0) <= 0.02, "Ramsey %s: %.4f us vs %.1f us (2%%)", k.name,
            t2, k.expect);
  }
}

void criterion_7(Criterion& c) {
  const ConfusionMatrix m = ConfusionMatrix::synthetic();
  double roundtrip = 0.0;
  for (int s = 0; s < 9; ++s) {
    std::vector<double> p(9, 0.02);
    p[s] = 0.84;
    const ProbDist obs = apply_confusion(ProbDist(p), m);
    std::vector<double> counts(9);
    for (int i = 0; i < 9; ++i) counts[i] = obs[i];
    const SignedCounts back = invert_confusion(counts, m);
    for (int i = 0; i < 9; ++i) roundtrip = std::max(roundtrip, std::abs(back.q[i] - p[i]));
  }
  c.check(roundtrip <= 1e-8, "confuse then invert, no sampling: max error %.2e (<= 1e-8)",
          roundtrip);

  // Brute-force oracle on d = 3, N = 100.
  const std::vector<SignedCounts> toys = {
      {{-10, 60, 50}, 100}, {{-20, 115, 5}, 100}, {{5, 5, 90}, 100}, {{-30, -5, 135}, 100}};
  for (const SignedCounts& q : toys) {
    const std::vector<double> p = mle_correct(q);
    double best = 1e300;
    double arg[3] = {0, 0, 0};
    for (int i = 0; i <= 8000; ++i) {
      const double a = 10.0 + 0.01 * i;
      for (int j = 0;; ++j) {
        const double b = 10.0 + 0.01 * j;
        const double cc = 100.0 - a - b;
        if (cc < 10.0 - 1e-9) break;
        double f = 0.0;
        const double v[3] = {a, b, cc};
        for (int k = 0; k < 3; ++k) {
          const double w = std::abs(q.q[k]) >= 10.0 ? q.q[k] : 10.0;
          f += std::pow((v[k] - q.q[k]) / w, 2);
        }
        if (f < best) {
          best = f;
          arg[0] = a;
          arg[1] = b;
          arg[2] = cc;
        }
      }
    }
    double dev = 0.0;
    for (int k = 0; k < 3; ++k) dev = std::max(dev, std::abs(p[k] - arg[k]));
    const double sum = p[0] + p[1] + p[2];
    const bool feasible = std::abs(sum - 100.0) < 1e-6 && *std::min_element(p.begin(), p.end()) >= 10.0 - 1e-9;
    c.check(feasible && dev <= 0.5,
            "MLE q=(%g, %g, %g): p=(%.2f, %.2f, %.2f), grid oracle off by %.3f, feasible=%d",
            q.q[0], q.q[1], q.q[2], p[0], p[1], p[2], dev, feasible);
  }

  int recovered = 0;
  bool feasible = true;
  for (int s = 0; s < 9; ++s) {
    const auto counts =
        sample_counts(apply_confusion(ProbDist::delta(BasisLabel::from_index(2, s)), m), 20000,
                      1000 + s);
    const std::vector<double> p = mle_correct(invert_confusion(counts, m));
    for (double x : p) feasible = feasible && x >= std::sqrt(20000.0) - 1e-9;
    feasible = feasible && std::abs(std::accumulate(p.begin(), p.end(), 0.0) - 20000.0) < 1e-6;
    recovered += std::max_element(p.begin(), p.end()) - p.begin() == s;
  }
  c.check(recovered == 9 && feasible,
          "prepare, confuse, sample 20000, invert, MLE: %d/9 labels recovered, feasible=%d",
          recovered, feasible);
}

void criterion_8(Criterion& c) {
  const auto t0 = Clock::now();
  const DeviceParams p;
  const SpectrumReport r = labeled_spectrum(p);
  c.check(std::abs(r.w01_q1 / 3.3494 - 1.0) <= 0.05, "omega_1/2pi = %.4f GHz vs 3.3494 (5%%)",
          r.w01_q1);
  c.check(std::abs(r.w01_q2 / 3.8310 - 1.0) <= 0.05, "omega_2/2pi = %.4f GHz vs 3.8310 (5%%)",
          r.w01_q2);
  c.check(r.j11 < 0.0 && std::abs(std::abs(r.j11) / 304.3 - 1.0) <= 0.5,
          "J11 = %.1f kHz, negative and within 50%% of -304.3", r.j11);
  c.check(r.j12 > 0.0, "J12 = %.1f kHz positive", r.j12);
  c.check(r.j21 > 0.0, "J21 = %.1f kHz positive", r.j21);
  c.note("ZZ = " + std::to_string(r.zz.at("ZZ")) + " kHz, J22 = " + std::to_string(r.j22) +
         " kHz, coupler mode " + std::to_string(r.coupler_ghz) + " GHz");

  const auto ts = Clock::now();
  const std::vector<double> grid = linear_grid(0.0, 0.3, 30);
  const FluxSweep s = flux_sweep(p, grid);
  const double sweep_time = seconds_since(ts);
  int valid = 0;
  for (const auto& pt : s.points) valid += pt.report.has_value();
  c.check(s.j11_interior_minimum,
          "|J11| interior minimum over [0, 0.3] (%d/30 points diagonalized, min near %.3f)",
          valid, s.j11_min_flux.value_or(-1.0));
  c.check(sweep_time < 120.0, "30-point sweep runtime %.1f s (limit 120 s)", sweep_time);

  DeviceParams conv = p;
  std::vector<SpectrumReport> runs;
  for (int n : {6, 8, 10}) {
    conv.n_levels = n;
    runs.push_back(labeled_spectrum(conv));
  }
  double dw = 0.0, dj = 0.0;
  for (std::size_t i = 1; i < runs.size(); ++i) {
    for (auto f : {&SpectrumReport::w01_q1, &SpectrumReport::w12_q1, &SpectrumReport::w01_q2,
                   &SpectrumReport::w12_q2}) {
      dw = std::max(dw, std::abs(runs[i].*f / runs[i - 1].*f - 1.0));
    }
    dj = std::max(dj, std::abs(runs[i].j11 / runs[i - 1].j11 - 1.0));
  }
  c.check(dw < 1e-3, "truncation 6->8->10: max relative change of omega01/omega12 %.2e (< 1e-3)",
          dw);
  c.check(dj < 0.05, "truncation 6->8->10: max relative change of J11 %.2e (< 5%%); J11 = %.1f, %.1f, %.1f kHz",
          dj, runs[0].j11, runs[1].j11, runs[2].j11);
  c.note("total device runtime " + std::to_string(seconds_since(t0)) + " s");
}

void criterion_9(Criterion& c) {
  const ExperimentConfig cfg;
  for (int q : {1, 2}) {
    const TomographyReport r = run_process_tomo(cfg, "H", q);
    c.check(std::abs(r.fidelity_noiseless - 1.0) <= 1e-8,
            "Q%d compiled H noiseless chi fidelity 1 - %.2e (tol 1e-8)", q,
            1.0 - r.fidelity_noiseless);
    c.check(r.fidelity_noisy >= 0.95 && r.fidelity_noisy <= 0.999,
            "Q%d compiled H noisy chi fidelity %.4f in [0.95, 0.999]", q, r.fidelity_noisy);
  }
}

void criterion_10(Criterion& c) {
  ExperimentConfig cfg;
  cfg.noisy = true;
  cfg.shots = 20000;
  cfg.seed = 2026;
  cfg.mitigate = true;
  const std::vector<std::pair<std::string, std::function<std::string()>>> runs = {
      {"dj", [&] { return run_dj(cfg).to_json(); }},
      {"bv", [&] { return run_bv(cfg).to_json(); }},
      {"grover", [&] { return run_grover(cfg).to_json(); }},
      {"tomo", [&] { return run_process_tomo(cfg, "H", 2).to_json(); }},
      {"device", [&] {
         const double g[] = {0.1, 0.185};
         return run_device_report(cfg, g).to_json();
       }}};
  for (const auto& [name, f] : runs) {
    const std::string a = f();
    const std::string b = f();
    c.check(a == b, "%s: two runs with seed 2026 byte-identical (%zu bytes)", name.c_str(),
            a.size());
  }
  ExperimentConfig other = cfg;
  other.seed = 2027;
  c.check(run_bv(other).to_json() != run_bv(cfg).to_json(), "bv: a different seed changes the bundle");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Criterion&)>>> criteria = {
      {"1  ideal Grover success probabilities", criterion_1},
      {"2  ideal DJ and BV", criterion_2},
      {"3  compiler exactness, pi-pulse regions, Grover-2 duration", criterion_3},
      {"4  noisy Grover brackets and ordering", criterion_4},
      {"5  noisy DJ/BV brackets", criterion_5},
      {"6  Lindblad backend properties", criterion_6},
      {"7  readout mitigation", criterion_7},
      {"8  device Hamiltonian", criterion_8},
      {"9  process matrices", criterion_9},
      {"10 determinism", criterion_10},
  };
  int failed = 0;
  for (const auto& [title, run] : criteria) {
    Criterion c(title);
    const auto t0 = Clock::now();
    try {
      run(c);
    } catch (const std::exception& e) {
      c.check(false, "exception: %s", e.what());
    }
    std::printf("%s  criterion %s  (%.2f s)\n", c.ok() ? "PASS" : "FAIL", title.c_str(),
                seconds_since(t0));
    for (const auto& line : c.lines()) std::printf("%s\n", line.c_str());
    std::fflush(stdout);
    failed += !c.ok();
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
