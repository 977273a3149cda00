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

#include "qutrit/gates.hpp"

#include <algorithm>
#include <cmath>

namespace qutrit {

namespace {

const Complex kI{0.0, 1.0};

bool is_single_kind(GateKind k) {
  return k == GateKind::R01 || k == GateKind::R12 || k == GateKind::VPhase;
}

Matrix level_rotation(int lo, double phi, double theta) {
  const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
  Matrix m = Matrix::Identity(3, 3);
  m(lo, lo) = c;
  m(lo, lo + 1) = -std::exp(-kI * phi) * s;
  m(lo + 1, lo) = std::exp(kI * phi) * s;
  m(lo + 1, lo + 1) = c;
  return m;
}

}  // namespace

std::string_view to_string(GateKind kind) {
  switch (kind) {
    case GateKind::R01: return "R01";
    case GateKind::R12: return "R12";
    case GateKind::VPhase: return "VPHASE";
    case GateKind::CPhaseNative21: return "CP21";
    case GateKind::CPhaseNative22: return "CP22";
  }
  return "?";
}

GateKind parse_gate_kind(std::string_view text) {
  for (GateKind k : {GateKind::R01, GateKind::R12, GateKind::VPhase,
                     GateKind::CPhaseNative21, GateKind::CPhaseNative22}) {
    if (text == to_string(k)) return k;
  }
  throw Error(ErrorCode::Parse, "unknown instruction kind '" + std::string(text) + "'");
}

PulseDurations calibrated_durations(PhysicalQutrit q) {
  if (q == PhysicalQutrit::Q1) return {49.50, 41.27, 94.98, 78.52};
  return {49.71, 44.15, 95.41, 84.28};
}

double gate_duration(GateKind kind, double theta, PhysicalQutrit q) {
  switch (kind) {
    case GateKind::VPhase: return 0.0;
    case GateKind::CPhaseNative21: return kCPhase21DurationNs;
    case GateKind::CPhaseNative22: return kCPhase22DurationNs;
    case GateKind::R01:
    case GateKind::R12: {
      const PulseDurations d = calibrated_durations(q);
      const bool low = kind == GateKind::R01;
      const double half = low ? d.half_pi_01 : d.half_pi_12;
      const double full = low ? d.pi_01 : d.pi_12;
      const double slope = (full - half) / (kPi / 2.0);
      return std::max(kMinPulseDurationNs, half + (std::abs(theta) - kPi / 2.0) * slope);
    }
  }
  return 0.0;
}

Matrix r01_matrix(double phi, double theta) { return level_rotation(0, phi, theta); }

Matrix r12_matrix(double phi, double theta) { return level_rotation(1, phi, theta); }

Matrix vphase_matrix(double x, double y) {
  Matrix m = Matrix::Zero(3, 3);
  m(0, 0) = 1.0;
  m(1, 1) = std::exp(kI * x);
  m(2, 2) = std::exp(kI * (x + y));
  return m;
}

GateInstruction::GateInstruction(GateKind kind, std::vector<int> targets,
                                 std::vector<double> params, double duration_ns)
    : kind_(kind),
      targets_(std::move(targets)),
      params_(std::move(params)),
      duration_ns_(duration_ns) {
  const std::size_t want_targets = is_single_kind(kind_) ? 1 : 2;
  const std::size_t want_params = is_single_kind(kind_) ? 2 : 1;
  if (targets_.size() != want_targets || params_.size() != want_params) {
    throw Error(ErrorCode::InvalidArgument,
                std::string(to_string(kind_)) + ": wrong number of targets or parameters");
  }
  for (int t : targets_) {
    if (t < 0) throw Error(ErrorCode::InvalidArgument, "negative qutrit index");
  }
  if (targets_.size() == 2 && targets_[0] == targets_[1]) {
    throw Error(ErrorCode::InvalidArgument, "two-qutrit gate on a single qutrit");
  }
  for (double p : params_) {
    if (!std::isfinite(p)) throw Error(ErrorCode::InvalidArgument, "non-finite angle");
  }
  if (!std::isfinite(duration_ns_) || duration_ns_ < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "duration must be finite and >= 0");
  }
  double fixed = -1.0;
  if (kind_ == GateKind::VPhase) fixed = 0.0;
  if (kind_ == GateKind::CPhaseNative21) fixed = kCPhase21DurationNs;
  if (kind_ == GateKind::CPhaseNative22) fixed = kCPhase22DurationNs;
  if (fixed >= 0.0 && std::abs(duration_ns_ - fixed) > 1e-9) {
    throw Error(ErrorCode::InvalidArgument,
                std::string(to_string(kind_)) + " duration must be " + std::to_string(fixed));
  }
}

GateInstruction GateInstruction::r01(int q, double phi, double theta, PhysicalQutrit p) {
  return {GateKind::R01, {q}, {phi, theta}, gate_duration(GateKind::R01, theta, p)};
}

GateInstruction GateInstruction::r12(int q, double phi, double theta, PhysicalQutrit p) {
  return {GateKind::R12, {q}, {phi, theta}, gate_duration(GateKind::R12, theta, p)};
}

GateInstruction GateInstruction::vphase(int q, double x, double y) {
  return {GateKind::VPhase, {q}, {x, y}, 0.0};
}

GateInstruction GateInstruction::cphase_native(const BasisLabel& native_target,
                                               double theta, int q_first, int q_second) {
  const std::string t = native_target.to_string();
  if (t == "21") {
    return {GateKind::CPhaseNative21, {q_first, q_second}, {theta}, kCPhase21DurationNs};
  }
  if (t == "22") {
    return {GateKind::CPhaseNative22, {q_first, q_second}, {theta}, kCPhase22DurationNs};
  }
  throw Error(ErrorCode::InvalidArgument, "no native CPhase for |" + t + ">");
}

Matrix GateInstruction::matrix() const {
  switch (kind_) {
    case GateKind::R01: return r01_matrix(params_[0], params_[1]);
    case GateKind::R12: return r12_matrix(params_[0], params_[1]);
    case GateKind::VPhase: return vphase_matrix(params_[0], params_[1]);
    case GateKind::CPhaseNative21:
      return cphase_matrix(params_[0], BasisLabel::from_digits({2, 1}));
    case GateKind::CPhaseNative22:
      return cphase_matrix(params_[0], BasisLabel::from_digits({2, 2}));
  }
  return {};
}

GateInstruction GateInstruction::inverse() const {
  switch (kind_) {
    case GateKind::R01:
    case GateKind::R12:
      return {kind_, targets_, {params_[0] + kPi, params_[1]}, duration_ns_};
    case GateKind::VPhase:
      return {kind_, targets_, {-params_[0], -params_[1]}, 0.0};
    case GateKind::CPhaseNative21:
    case GateKind::CPhaseNative22:
      return {kind_, targets_, {-params_[0]}, duration_ns_};
  }
  return *this;
}

Circuit::Circuit(int n_qutrits) : n_(n_qutrits) { dimension_for(n_qutrits); }

void Circuit::add_moment(Moment moment) {
  if (moment.empty()) return;
  std::vector<bool> used(n_, false);
  for (const auto& ins : moment) {
    for (int t : ins.targets()) {
      if (t >= n_) {
        throw Error(ErrorCode::InvalidArgument,
                    "instruction addresses qutrit " + std::to_string(t) +
                        " in a " + std::to_string(n_) + "-qutrit circuit");
      }
      if (used[t]) {
        throw Error(ErrorCode::InvalidArgument,
                    "qutrit " + std::to_string(t) + " appears twice in one moment");
      }
      used[t] = true;
    }
  }
  moments_.push_back(std::move(moment));
}

void Circuit::append(const Circuit& other) {
  if (other.n_ != n_) throw Error(ErrorCode::DimensionMismatch, "circuit widths differ");
  for (const auto& m : other.moments_) moments_.push_back(m);
}

void Circuit::add_parallel(const std::vector<std::vector<GateInstruction>>& streams) {
  std::size_t depth = 0;
  for (const auto& s : streams) depth = std::max(depth, s.size());
  for (std::size_t i = 0; i < depth; ++i) {
    Moment m;
    for (const auto& s : streams) {
      if (i < s.size()) m.push_back(s[i]);
    }
    add_moment(std::move(m));
  }
}

double Circuit::moment_duration_ns(const Moment& moment) {
  double d = 0.0;
  for (const auto& ins : moment) d = std::max(d, ins.duration_ns());
  return d;
}

double Circuit::total_duration_ns() const {
  double total = 0.0;
  for (const auto& m : moments_) total += moment_duration_ns(m);
  return total;
}

std::size_t Circuit::instruction_count() const {
  std::size_t n = 0;
  for (const auto& m : moments_) n += m.size();
  return n;
}

int Circuit::count(GateKind kind) const {
  int n = 0;
  for (const auto& m : moments_) {
    for (const auto& ins : m) n += ins.kind() == kind;
  }
  return n;
}

int Circuit::pi_pulse_count() const {
  int n = 0;
  for (const auto& m : moments_) {
    for (const auto& ins : m) {
      n += ins.is_pulse() && std::abs(std::abs(ins.params()[1]) - kPi) < 1e-12;
    }
  }
  return n;
}

Matrix moment_unitary(const Moment& moment, int n_qutrits) {
  const int dim = dimension_for(n_qutrits);
  Matrix u = Matrix::Identity(dim, dim);
  for (const auto& ins : moment) {
    u = embed_operator(ins.matrix(), ins.targets(), n_qutrits) * u;
  }
  return u;
}

Matrix circuit_unitary_explicit(const Circuit& circuit) {
  const int dim = dimension_for(circuit.num_qutrits());
  Matrix u = Matrix::Identity(dim, dim);
  for (const auto& m : circuit.moments()) u = moment_unitary(m, circuit.num_qutrits()) * u;
  return u;
}

double PhaseFrame::rewrite_phase(GateKind kind, double phi) const {
  if (kind == GateKind::R01) return phi - theta01_;
  if (kind == GateKind::R12) return phi - theta12_;
  return phi;
}

Matrix circuit_unitary_framed(const Circuit& circuit) {
  const int n = circuit.num_qutrits();
  const int dim = dimension_for(n);
  std::vector<PhaseFrame> frames(n);
  Matrix u = Matrix::Identity(dim, dim);
  for (const auto& m : circuit.moments()) {
    for (const auto& ins : m) {
      const int q = ins.targets()[0];
      switch (ins.kind()) {
        case GateKind::VPhase:
          frames[q].advance(ins.params()[0], ins.params()[1]);
          break;
        case GateKind::R01:
        case GateKind::R12: {
          const double phi = frames[q].rewrite_phase(ins.kind(), ins.params()[0]);
          const Matrix r = ins.kind() == GateKind::R01 ? r01_matrix(phi, ins.params()[1])
                                                       : r12_matrix(phi, ins.params()[1]);
          u = embed_operator(r, ins.targets(), n) * u;
          break;
        }
        default:
          // Diagonal two-qutrit gates commute with the frame.
          u = embed_operator(ins.matrix(), ins.targets(), n) * u;
      }
    }
  }
  for (int q = 0; q < n; ++q) {
    const int t[] = {q};
    u = embed_operator(vphase_matrix(frames[q].theta01(), frames[q].theta12()), t, n) * u;
  }
  return u;
}

bool frame_equivalence_check(const Circuit& circuit, double tol) {
  return equal_up_to_phase(circuit_unitary_explicit(circuit),
                           circuit_unitary_framed(circuit), tol);
}

std::string_view to_string(LogicalGate g) {
  switch (g) {
    case LogicalGate::I: return "I";
    case LogicalGate::H: return "H";
    case LogicalGate::Hdag: return "Hdag";
    case LogicalGate::X: return "X";
    case LogicalGate::Xsq: return "Xsq";
    case LogicalGate::Z: return "Z";
    case LogicalGate::Zsq: return "Zsq";
  }
  return "?";
}

LogicalGate parse_logical_gate(std::string_view name) {
  if (name == "I") return LogicalGate::I;
  if (name == "H") return LogicalGate::H;
  if (name == "Hdag" || name == "H†") return LogicalGate::Hdag;
  if (name == "X") return LogicalGate::X;
  if (name == "Xsq" || name == "X2" || name == "X²") return LogicalGate::Xsq;
  if (name == "Z") return LogicalGate::Z;
  if (name == "Zsq" || name == "Z2" || name == "Z²") return LogicalGate::Zsq;
  throw Error(ErrorCode::InvalidArgument, "unknown gate name '" + std::string(name) + "'");
}

LogicalGate inverse(LogicalGate g) {
  switch (g) {
    case LogicalGate::H: return LogicalGate::Hdag;
    case LogicalGate::Hdag: return LogicalGate::H;
    case LogicalGate::X: return LogicalGate::Xsq;
    case LogicalGate::Xsq: return LogicalGate::X;
    case LogicalGate::Z: return LogicalGate::Zsq;
    case LogicalGate::Zsq: return LogicalGate::Z;
    case LogicalGate::I: return LogicalGate::I;
  }
  return g;
}

Matrix logical_gate(LogicalGate g) {
  const Complex w = std::exp(kI * (2.0 * kPi / 3.0));
  const Complex w2 = w * w;
  Matrix m = Matrix::Zero(3, 3);
  switch (g) {
    case LogicalGate::I:
      return Matrix::Identity(3, 3);
    case LogicalGate::H:
    case LogicalGate::Hdag:
      m << 1.0, 1.0, 1.0, 1.0, w, w2, 1.0, w2, w;
      m /= std::sqrt(3.0);
      return g == LogicalGate::H ? m : Matrix(m.adjoint());
    case LogicalGate::X:
    case LogicalGate::Xsq:
      m(1, 0) = m(2, 1) = m(0, 2) = 1.0;
      return g == LogicalGate::X ? m : Matrix(m * m);
    case LogicalGate::Z:
      m.diagonal() << 1.0, w, w2;
      return m;
    case LogicalGate::Zsq:
      m.diagonal() << 1.0, w2, w;
      return m;
  }
  return m;
}

Matrix logical_gate(std::string_view name) { return logical_gate(parse_logical_gate(name)); }

std::vector<GateInstruction> inverse_sequence(const std::vector<GateInstruction>& seq) {
  std::vector<GateInstruction> out;
  out.reserve(seq.size());
  for (auto it = seq.rbegin(); it != seq.rend(); ++it) out.push_back(it->inverse());
  return out;
}

std::vector<GateInstruction> decompose_single(LogicalGate g, int target,
                                              PhysicalQutrit physical) {
  using GI = GateInstruction;
  const double beta = 2.0 * std::atan(std::sqrt(2.0));
  switch (g) {
    case LogicalGate::I:
      return {};
    case LogicalGate::H:
      // H = R12(0,pi/2) R01(0,beta) Theta(pi,pi/2) R12(0,pi/2) Theta(0,pi)
      return {GI::vphase(target, 0.0, kPi),
              GI::r12(target, 0.0, kPi / 2.0, physical),
              GI::vphase(target, kPi, kPi / 2.0),
              GI::r01(target, 0.0, beta, physical),
              GI::r12(target, 0.0, kPi / 2.0, physical)};
    case LogicalGate::Hdag:
      return inverse_sequence(decompose_single(LogicalGate::H, target, physical));
    case LogicalGate::X:
      // X = R01(0,pi) R12(0,pi)
      return {GI::r12(target, 0.0, kPi, physical), GI::r01(target, 0.0, kPi, physical)};
    case LogicalGate::Xsq:
      return inverse_sequence(decompose_single(LogicalGate::X, target, physical));
    case LogicalGate::Z:
      return {GI::vphase(target, 2.0 * kPi / 3.0, 2.0 * kPi / 3.0)};
    case LogicalGate::Zsq:
      return {GI::vphase(target, 4.0 * kPi / 3.0, 4.0 * kPi / 3.0)};
  }
  return {};
}

std::vector<GateInstruction> decompose_single(LogicalGate g, int target) {
  if (target < 0 || target > 1) {
    throw Error(ErrorCode::InvalidArgument,
                "pulse lengths are calibrated for qutrits 0 and 1 only");
  }
  return decompose_single(g, target, static_cast<PhysicalQutrit>(target));
}

Matrix cphase_matrix(double theta, const BasisLabel& target) {
  if (target.num_qutrits() != 2) {
    throw Error(ErrorCode::InvalidArgument, "CPhase target must be a two-qutrit label");
  }
  Matrix m = Matrix::Identity(9, 9);
  m(target.index(), target.index()) = std::exp(kI * theta);
  return m;
}

CPhaseRoute cphase_route(const BasisLabel& target) {
  if (target.num_qutrits() != 2) {
    throw Error(ErrorCode::InvalidArgument, "CPhase target must be a two-qutrit label");
  }
  constexpr GateKind a = GateKind::R01, b = GateKind::R12;
  std::vector<LadderStep> path;
  switch (target.index()) {
    case 0: path = {{0, a}, {0, b}, {1, a}}; break;  // 00 -> 21
    case 1: path = {{0, a}, {0, b}}; break;          // 01 -> 21
    case 2: path = {{0, a}, {0, b}}; break;          // 02 -> 22
    case 3: path = {{0, b}, {1, a}}; break;          // 10 -> 21
    case 4: path = {{0, b}}; break;                  // 11 -> 21
    case 5: path = {{0, b}}; break;                  // 12 -> 22
    case 6: path = {{1, a}}; break;                  // 20 -> 21
    default: break;                                  // 21, 22 native
  }
  std::vector<int> digits = target.digits();
  for (const auto& step : path) ++digits[step.qutrit];
  return {std::move(path), BasisLabel::from_digits(std::move(digits))};
}

Circuit compile_cphase(double theta, const BasisLabel& target) {
  const CPhaseRoute route = cphase_route(target);
  std::vector<std::vector<GateInstruction>> forward(2);
  for (const auto& step : route.forward) {
    const auto p = static_cast<PhysicalQutrit>(step.qutrit);
    forward[step.qutrit].push_back(step.transition == GateKind::R01
                                       ? GateInstruction::r01(step.qutrit, 0.0, kPi, p)
                                       : GateInstruction::r12(step.qutrit, 0.0, kPi, p));
  }
  Circuit up(2);
  up.add_parallel(forward);

  Circuit c(2);
  c.append(up);
  c.add_moment({GateInstruction::cphase_native(route.native_target, theta)});
  for (auto it = up.moments().rbegin(); it != up.moments().rend(); ++it) {
    Moment back;
    for (const auto& ins : *it) back.push_back(ins.inverse());
    c.add_moment(std::move(back));
  }
  return c;
}

double native_cphase_pulse_model(double theta) { return kPi - theta; }

TwoQutritProcess unitary_process(const Matrix& u) {
  if (u.rows() != 9 || u.cols() != 9) {
    throw Error(ErrorCode::DimensionMismatch, "two-qutrit process needs a 9x9 unitary");
  }
  return [u](const Matrix& rho) -> Matrix { return u * rho * u.adjoint(); };
}

FramePhases calibrate_frame_phases(const TwoQutritProcess& process, int qutrit,
                                   const CalibrationOptions& options) {
  if (qutrit < 0 || qutrit > 1) {
    throw Error(ErrorCode::InvalidArgument, "calibration qutrit must be 0 or 1");
  }
  if (options.sweep_points < 12) {
    throw Error(ErrorCode::InvalidArgument, "calibration needs at least 12 sweep points");
  }
  const int self[] = {qutrit};

  auto fit_phase = [&](const Matrix& g1, const Matrix& g2, bool sweep_low,
                       int readout_level) {
    const Matrix prep = tensor(g1, g1);
    Matrix rho = Matrix::Zero(9, 9);
    rho(0, 0) = 1.0;
    rho = prep * rho * prep.adjoint();
    const Matrix after = process(rho);
    if (after.rows() != 9 || after.cols() != 9) {
      throw Error(ErrorCode::DimensionMismatch, "process must return a 9x9 matrix");
    }

    const int n = options.sweep_points;
    RealMatrix design(n, 3);
    RealVector signal(n);
    for (int k = 0; k < n; ++k) {
      const double theta = 2.0 * kPi * k / n;
      const Matrix z = sweep_low ? vphase_matrix(theta, 0.0) : vphase_matrix(0.0, theta);
      const Matrix op = embed_operator(g2 * z, self, 2);
      const Matrix out = op * after * op.adjoint();
      double pop = 0.0;
      for (int i = 0; i < 9; ++i) {
        const int digit = qutrit == 0 ? i / 3 : i % 3;
        if (digit == readout_level) pop += out(i, i).real();
      }
      design(k, 0) = 1.0;
      design(k, 1) = std::sin(theta);
      design(k, 2) = std::cos(theta);
      signal(k) = pop;
    }
    const RealVector coef = design.colPivHouseholderQr().solve(signal);
    if (!coef.allFinite() || std::hypot(coef(1), coef(2)) < 1e-6) {
      throw Error(ErrorCode::FitFailure,
                  "calibration signal has no resolvable sinusoidal component");
    }
    // Signal is C0 + C1 sin(psi + theta) with psi = atan2(b, a); the
    // population read here equals 1/2 - 1/2 cos(beta + theta), so
    // beta = psi + pi/2.
    const double beta = std::atan2(coef(2), coef(1)) + kPi / 2.0;
    return std::remainder(beta, 2.0 * kPi);
  };

  FramePhases out{};
  out.beta01 = fit_phase(r01_matrix(0.0, kPi / 2.0), r01_matrix(kPi, kPi / 2.0), true, 1);
  out.beta12 = fit_phase(r12_matrix(0.0, kPi / 2.0) * r01_matrix(0.0, kPi),
                         r12_matrix(kPi, kPi / 2.0), false, 2);
  return out;
}

double pulse_envelope(double t, double t0, double t1, double sigma, double amplitude) {
  if (!(sigma > 0.0) || t1 - t0 < 4.0 * sigma) {
    throw Error(ErrorCode::InvalidArgument, "pulse shorter than its two Gaussian edges");
  }
  if (t < t0 || t > t1) return 0.0;
  const double edge = 2.0 * sigma;
  if (t < t0 + edge) {
    const double x = t - t0 - edge;
    return amplitude * std::exp(-x * x / (2.0 * sigma * sigma));
  }
  if (t > t1 - edge) {
    const double x = t1 - edge - t;
    return amplitude * std::exp(-x * x / (2.0 * sigma * sigma));
  }
  return amplitude;
}

}  // namespace qutrit
