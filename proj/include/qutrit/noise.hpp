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
#include <span>
#include <string>
#include <vector>

#include "qutrit/core.hpp"
#include "qutrit/gates.hpp"

namespace qutrit {

// Coherence times of one transmon, microseconds. Infinity disables a channel.
struct TransitionCoherence {
  double t1_01;
  double t1_12;
  double t2r_01;
  double t2r_12;
};

// Coefficients of the static (n1)^j (n2)^k energy terms, kHz.
struct CrossKerr {
  double j11 = 0.0;
  double j21 = 0.0;
  double j12 = 0.0;
  double j22 = 0.0;
};

struct NoiseModel {
  std::vector<TransitionCoherence> qutrits;
  CrossKerr kerr;
  // Remove the single-qutrit part of the static ZZ shift, i.e. the virtual
  // phases calibrate_frame_phases assigns to the idle interaction.
  bool kerr_compensation = true;

  static NoiseModel device_default();
  static NoiseModel noiseless(int n_qutrits);
  NoiseModel restricted_to(int qutrit) const;
  int num_qutrits() const { return static_cast<int>(qutrits.size()); }
  void validate() const;
};

TransitionCoherence device_coherence(PhysicalQutrit q);
CrossKerr device_cross_kerr();

struct DephasingRates {
  double gamma_a;  // |1><1|
  double gamma_b;  // |2><2|
  double gamma_c;  // |1><1| + |2><2|
};

// Pure-dephasing rates (1/us) that make the 0-1 and 1-2 Ramsey decays match
// T2R_01 and T2R_12 given the relaxation rates. Negative targets clamp to 0
// and append a warning.
DephasingRates dephasing_rates(const TransitionCoherence& c,
                               std::vector<std::string>* warnings = nullptr);

struct CollapseOperators {
  std::vector<Matrix> ops;  // full-register operators, sqrt(rate) folded in
  std::vector<std::string> warnings;
};

CollapseOperators build_collapse_ops(const NoiseModel& noise);

// Diagonal static interaction energies in rad/us, 3^n x 3^n (zero for n = 1).
Matrix idle_hamiltonian(const NoiseModel& noise);

// Per-qutrit frame rates (rad/us) cancelling the separable part of the idle
// interaction; obtained by running calibrate_frame_phases on the idle channel.
FramePhases kerr_frame_rates(const NoiseModel& noise, int qutrit);

// Hamiltonian actually integrated between gates: idle_hamiltonian plus the
// frame correction when enabled.
Matrix effective_idle_hamiltonian(const NoiseModel& noise);

PureState apply_unitary(const PureState& state, const Matrix& u,
                        std::span<const int> targets);
DensityMatrix apply_unitary(const DensityMatrix& state, const Matrix& u,
                            std::span<const int> targets);

// Moment-by-moment execution; VPhases update per-qutrit frames and later
// rotation phases are rewritten.
PureState simulate_pure(const Circuit& circuit, const PureState& initial);

struct LindbladOptions {
  double max_step_ns = 1.0;
  int min_steps_per_moment = 16;
  double trace_tolerance = 1e-6;
  double positivity_tolerance = 1e-6;
};

// Each moment: fixed-step RK4 of the master equation over the moment length,
// then the moment's ideal unitary.
DensityMatrix simulate_lindblad(const Circuit& circuit, const NoiseModel& noise,
                                const DensityMatrix& initial,
                                const LindbladOptions& options = {});

// Same evolution applied to an arbitrary operator (linear, no physicality
// checks); used to tabulate channels on matrix units.
Matrix lindblad_propagate(const Circuit& circuit, const NoiseModel& noise, const Matrix& op,
                          const LindbladOptions& options = {});

// Free evolution only (no gates), used for Ramsey checks.
DensityMatrix evolve_idle(const DensityMatrix& initial, const NoiseModel& noise,
                          double duration_ns, const LindbladOptions& options = {});

// Decay constant (us) of the 0-1 (transition = R01) or 1-2 (R12) coherence of
// one qutrit, fitted from simulated free evolution.
double simulated_ramsey_time(const NoiseModel& noise, int qutrit, GateKind transition);

ProbDist measure_probs(const PureState& state);
ProbDist measure_probs(const DensityMatrix& state);

std::vector<std::int64_t> sample_counts(std::span<const double> probs,
                                        std::int64_t shots, std::uint64_t seed);
std::vector<std::int64_t> sample_counts(const ProbDist& probs, std::int64_t shots,
                                        std::uint64_t seed);

}  // namespace qutrit
