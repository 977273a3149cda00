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

#include <array>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "qutrit/core.hpp"

namespace qutrit {

enum class GateKind { R01, R12, VPhase, CPhaseNative21, CPhaseNative22 };

std::string_view to_string(GateKind kind);
GateKind parse_gate_kind(std::string_view text);

// Physical transmon a pulse is played on. Pulse lengths differ per device.
enum class PhysicalQutrit { Q1 = 0, Q2 = 1 };

struct PulseDurations {
  double half_pi_01;
  double half_pi_12;
  double pi_01;
  double pi_12;
};

PulseDurations calibrated_durations(PhysicalQutrit q);

inline constexpr double kCPhase21DurationNs = 55.9;
inline constexpr double kCPhase22DurationNs = 94.0;
inline constexpr double kEnvelopeSigmaNs = 2.5;
inline constexpr double kMinPulseDurationNs = 4.0 * kEnvelopeSigmaNs;

// Duration of a single native instruction. Rotations interpolate affinely in
// |theta| through the calibrated pi/2 and pi lengths, clamped at 4 sigma.
double gate_duration(GateKind kind, double theta, PhysicalQutrit q);

Matrix r01_matrix(double phi, double theta);
Matrix r12_matrix(double phi, double theta);
Matrix vphase_matrix(double x, double y);

class GateInstruction {
 public:
  // Explicit construction; used by the parser. Durations of VPhase and the
  // native CPhases are checked against their fixed values.
  GateInstruction(GateKind kind, std::vector<int> targets,
                  std::vector<double> params, double duration_ns);

  static GateInstruction r01(int q, double phi, double theta, PhysicalQutrit p);
  static GateInstruction r12(int q, double phi, double theta, PhysicalQutrit p);
  static GateInstruction vphase(int q, double x, double y);
  // targets = {first digit qutrit, second digit qutrit}.
  static GateInstruction cphase_native(const BasisLabel& native_target,
                                       double theta, int q_first = 0,
                                       int q_second = 1);

  GateKind kind() const { return kind_; }
  const std::vector<int>& targets() const { return targets_; }
  const std::vector<double>& params() const { return params_; }
  double duration_ns() const { return duration_ns_; }
  bool is_pulse() const { return kind_ == GateKind::R01 || kind_ == GateKind::R12; }

  // 3x3 for single-qutrit kinds, 9x9 for native CPhases.
  Matrix matrix() const;
  GateInstruction inverse() const;

 private:
  GateKind kind_;
  std::vector<int> targets_;
  std::vector<double> params_;
  double duration_ns_;
};

using Moment = std::vector<GateInstruction>;

class Circuit {
 public:
  explicit Circuit(int n_qutrits);

  int num_qutrits() const { return n_; }
  const std::vector<Moment>& moments() const { return moments_; }
  bool empty() const { return moments_.empty(); }

  // Rejects moments that touch a qutrit twice or address a missing qutrit.
  // An empty moment is ignored.
  void add_moment(Moment moment);
  void append(const Circuit& other);
  // Zips per-qutrit instruction streams: moment i holds the i-th instruction
  // of every stream that is long enough.
  void add_parallel(const std::vector<std::vector<GateInstruction>>& streams);

  static double moment_duration_ns(const Moment& moment);
  double total_duration_ns() const;
  std::size_t instruction_count() const;
  int count(GateKind kind) const;
  int pi_pulse_count() const;

 private:
  int n_;
  std::vector<Moment> moments_;
};

// Full-register unitary of one moment with VPhases applied explicitly.
Matrix moment_unitary(const Moment& moment, int n_qutrits);

// Product of all moment unitaries, VPhases as explicit matrices.
Matrix circuit_unitary_explicit(const Circuit& circuit);
// Same circuit executed by absorbing every VPhase into the per-qutrit frame
// and rewriting later rotation phases; the residual frame is applied last.
Matrix circuit_unitary_framed(const Circuit& circuit);

class PhaseFrame {
 public:
  void advance(double x, double y) {
    theta01_ += x;
    theta12_ += y;
  }
  double theta01() const { return theta01_; }
  double theta12() const { return theta12_; }
  // Phase a rotation must be played with once the frame has absorbed the
  // preceding virtual phases.
  double rewrite_phase(GateKind kind, double phi) const;

 private:
  double theta01_ = 0.0;
  double theta12_ = 0.0;
};

bool frame_equivalence_check(const Circuit& circuit, double tol = 1e-10);

enum class LogicalGate { I, H, Hdag, X, Xsq, Z, Zsq };

std::string_view to_string(LogicalGate g);
LogicalGate parse_logical_gate(std::string_view name);
LogicalGate inverse(LogicalGate g);
Matrix logical_gate(LogicalGate g);
Matrix logical_gate(std::string_view name);

// Time-ordered native sequence for a logical single-qutrit gate on circuit
// qutrit `target`; pulse lengths come from `physical`.
std::vector<GateInstruction> decompose_single(LogicalGate g, int target,
                                              PhysicalQutrit physical);
std::vector<GateInstruction> decompose_single(LogicalGate g, int target);

std::vector<GateInstruction> inverse_sequence(const std::vector<GateInstruction>& seq);

Matrix cphase_matrix(double theta, const BasisLabel& target);

struct LadderStep {
  int qutrit;
  GateKind transition;  // R01 or R12
};

struct CPhaseRoute {
  std::vector<LadderStep> forward;
  BasisLabel native_target;
};

CPhaseRoute cphase_route(const BasisLabel& target);
Circuit compile_cphase(double theta, const BasisLabel& target);

// Phase difference between the first and last pi segments of the 2 pi
// sideband rotation realizing C_p(theta). Metadata only.
double native_cphase_pulse_model(double theta);

struct FramePhases {
  double beta01;
  double beta12;
};

// Maps a 9x9 two-qutrit density matrix to another.
using TwoQutritProcess = std::function<Matrix(const Matrix&)>;
TwoQutritProcess unitary_process(const Matrix& u);

struct CalibrationOptions {
  int sweep_points = 16;  // at least 12
};

// Recovers the virtual phases Theta(beta01, beta12) a process imprints on
// qutrit `qutrit` (0 or 1). G1 is applied to both qutrits, the virtual phase
// is swept on the measured one and the population signal is fit to a
// sinusoid by linear least squares.
FramePhases calibrate_frame_phases(const TwoQutritProcess& process, int qutrit,
                                   const CalibrationOptions& options = {});

double pulse_envelope(double t, double t0, double t1,
                      double sigma = kEnvelopeSigmaNs, double amplitude = 1.0);

}  // namespace qutrit
