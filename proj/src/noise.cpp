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

#include "qutrit/noise.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Eigenvalues>

namespace qutrit {

namespace {

const Complex kI{0.0, 1.0};

// Time reference for reading the idle interaction phases; short enough that
// every conditional phase stays far below pi.
constexpr double kKerrCalibrationTimeUs = 1e-3;

struct TargetLayout {
  std::vector<int> offsets;  // sub-index -> flat offset
  std::vector<int> bases;    // flat indices with all target trits zero
};

TargetLayout layout_for(std::span<const int> targets, int n) {
  const int dim = dimension_for(n);
  const int k = static_cast<int>(targets.size());
  std::vector<bool> used(n, false);
  for (int t : targets) {
    if (t < 0 || t >= n) throw Error(ErrorCode::InvalidArgument, "target qutrit out of range");
    if (used[t]) throw Error(ErrorCode::InvalidArgument, "overlapping targets");
    used[t] = true;
  }
  std::vector<int> place(n);
  for (int q = n - 1, p = 1; q >= 0; --q, p *= 3) place[q] = p;

  TargetLayout lay;
  const int sub_dim = dimension_for(k);
  lay.offsets.resize(sub_dim);
  for (int s = 0; s < sub_dim; ++s) {
    int off = 0;
    for (int j = k - 1, r = s; j >= 0; --j, r /= 3) off += (r % 3) * place[targets[j]];
    lay.offsets[s] = off;
  }
  for (int i = 0; i < dim; ++i) {
    bool base = true;
    for (int t : targets) base &= (i / place[t]) % 3 == 0;
    if (base) lay.bases.push_back(i);
  }
  return lay;
}

void apply_columns(Matrix& m, const Matrix& u, const TargetLayout& lay) {
  const int sub_dim = static_cast<int>(lay.offsets.size());
  Vector sub(sub_dim);
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    for (int base : lay.bases) {
      for (int s = 0; s < sub_dim; ++s) sub(s) = m(base + lay.offsets[s], c);
      const Vector out = u * sub;
      for (int s = 0; s < sub_dim; ++s) m(base + lay.offsets[s], c) = out(s);
    }
  }
}

void check_operator(const Matrix& u, std::span<const int> targets) {
  if (targets.empty() || u.rows() != u.cols() ||
      u.rows() != dimension_for(static_cast<int>(targets.size()))) {
    throw Error(ErrorCode::DimensionMismatch, "operator does not match target count");
  }
  if (!is_unitary(u, 1e-10)) throw Error(ErrorCode::InvalidArgument, "operator is not unitary");
}

Matrix single_site(int n, int q, const Matrix& op) {
  const int t[] = {q};
  return embed_operator(op, t, n);
}

Matrix projector(int level) {
  Matrix p = Matrix::Zero(3, 3);
  p(level, level) = 1.0;
  return p;
}

Matrix lowering(int from) {
  Matrix l = Matrix::Zero(3, 3);
  l(from - 1, from) = 1.0;
  return l;
}

double rate_of(double t) { return std::isinf(t) ? 0.0 : 1.0 / t; }

// Dense master-equation right-hand side with precomputed pieces.
class Lindbladian {
 public:
  Lindbladian(const Matrix& h, const std::vector<Matrix>& ops) : ops_(ops) {
    heff_ = h;
    for (const auto& l : ops_) heff_ -= 0.5 * kI * (l.adjoint() * l);
    for (const auto& l : ops_) ops_dag_.push_back(l.adjoint());
  }

  Matrix operator()(const Matrix& rho) const {
    Matrix out = -kI * (heff_ * rho) + kI * (rho * heff_.adjoint());
    for (std::size_t k = 0; k < ops_.size(); ++k) out.noalias() += ops_[k] * rho * ops_dag_[k];
    return out;
  }

  bool trivial() const { return ops_.empty() && heff_.cwiseAbs().maxCoeff() == 0.0; }

 private:
  Matrix heff_;
  std::vector<Matrix> ops_;
  std::vector<Matrix> ops_dag_;
};

void rk4_evolve(Matrix& rho, const Lindbladian& l, double duration_ns,
                const LindbladOptions& options) {
  if (duration_ns <= 0.0 || l.trivial()) return;
  if (!(options.max_step_ns > 0.0) || options.min_steps_per_moment < 1) {
    throw Error(ErrorCode::InvalidArgument, "invalid integrator step settings");
  }
  const double step_ns = std::min(options.max_step_ns, duration_ns / options.min_steps_per_moment);
  const int steps = static_cast<int>(std::ceil(duration_ns / step_ns - 1e-9));
  const double h = duration_ns / steps * 1e-3;  // us
  for (int s = 0; s < steps; ++s) {
    const Matrix k1 = l(rho);
    const Matrix k2 = l(rho + 0.5 * h * k1);
    const Matrix k3 = l(rho + 0.5 * h * k2);
    const Matrix k4 = l(rho + h * k3);
    rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
}

void check_physical(const Matrix& rho, const LindbladOptions& options) {
  const double drift = std::abs(rho.trace() - Complex(1.0));
  if (drift > options.trace_tolerance) {
    throw Error(ErrorCode::Numerical, "trace drift " + std::to_string(drift) + " exceeds tolerance");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (rho + rho.adjoint()), Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -options.positivity_tolerance) {
    throw Error(ErrorCode::Numerical,
                "density matrix lost positivity: eigenvalue " +
                    std::to_string(es.eigenvalues().minCoeff()));
  }
}

Matrix symmetrize_to_density(const Matrix& rho) { return 0.5 * (rho + rho.adjoint()); }

}  // namespace

TransitionCoherence device_coherence(PhysicalQutrit q) {
  if (q == PhysicalQutrit::Q1) return {47.9, 21.7, 4.5, 2.0};
  return {35.1, 3.9, 3.2, 2.4};
}

CrossKerr device_cross_kerr() { return {-304.3, 37.8, 23.6, 5.4}; }

NoiseModel NoiseModel::device_default() {
  NoiseModel m;
  m.qutrits = {device_coherence(PhysicalQutrit::Q1), device_coherence(PhysicalQutrit::Q2)};
  m.kerr = device_cross_kerr();
  return m;
}

NoiseModel NoiseModel::noiseless(int n_qutrits) {
  dimension_for(n_qutrits);
  const double inf = std::numeric_limits<double>::infinity();
  NoiseModel m;
  m.qutrits.assign(n_qutrits, TransitionCoherence{inf, inf, inf, inf});
  return m;
}

NoiseModel NoiseModel::restricted_to(int qutrit) const {
  if (qutrit < 0 || qutrit >= num_qutrits()) {
    throw Error(ErrorCode::InvalidArgument, "qutrit out of range for noise model");
  }
  NoiseModel m;
  m.qutrits = {qutrits[qutrit]};
  m.kerr_compensation = kerr_compensation;
  return m;
}

void NoiseModel::validate() const {
  dimension_for(num_qutrits());
  for (const auto& c : qutrits) {
    for (double t : {c.t1_01, c.t1_12, c.t2r_01, c.t2r_12}) {
      if (!(t > 0.0)) throw Error(ErrorCode::InvalidArgument, "coherence times must be > 0");
    }
  }
  for (double j : {kerr.j11, kerr.j21, kerr.j12, kerr.j22}) {
    if (!std::isfinite(j)) throw Error(ErrorCode::InvalidArgument, "cross-Kerr must be finite");
  }
}

DephasingRates dephasing_rates(const TransitionCoherence& c, std::vector<std::string>* warnings) {
  const double g1 = rate_of(c.t1_01), g2 = rate_of(c.t1_12);
  double target01 = rate_of(c.t2r_01) - 0.5 * g1;
  double target12 = rate_of(c.t2r_12) - 0.5 * (g1 + g2);
  auto clamp = [&](double& g, const char* what) {
    if (g < 0.0) {
      if (warnings) {
        warnings->push_back(std::string("negative pure-dephasing rate on ") + what +
                            " clamped to 0 (" + std::to_string(g) + " /us)");
      }
      g = 0.0;
    }
  };
  clamp(target01, "0-1");
  clamp(target12, "1-2");
  // |1><1| dephases both coherences, |2><2| only 1-2, |1><1|+|2><2| only 0-1.
  const double common = std::min(target01, target12);
  return {common, target12 - common, target01 - common};
}

CollapseOperators build_collapse_ops(const NoiseModel& noise) {
  noise.validate();
  const int n = noise.num_qutrits();
  CollapseOperators out;
  for (int q = 0; q < n; ++q) {
    const auto& c = noise.qutrits[q];
    const DephasingRates d = dephasing_rates(c, &out.warnings);
    auto push = [&](double rate, const Matrix& op) {
      if (rate > 0.0) out.ops.push_back(std::sqrt(rate) * single_site(n, q, op));
    };
    push(rate_of(c.t1_01), lowering(1));
    push(rate_of(c.t1_12), lowering(2));
    push(2.0 * d.gamma_a, projector(1));
    push(2.0 * d.gamma_b, projector(2));
    push(2.0 * d.gamma_c, projector(1) + projector(2));
  }
  return out;
}

Matrix idle_hamiltonian(const NoiseModel& noise) {
  const int n = noise.num_qutrits();
  const int dim = dimension_for(n);
  Matrix h = Matrix::Zero(dim, dim);
  if (n < 2) return h;
  if (n > 2) throw Error(ErrorCode::InvalidArgument, "cross-Kerr model covers two qutrits");
  const CrossKerr& j = noise.kerr;
  for (int m = 0; m < 3; ++m) {
    for (int k = 0; k < 3; ++k) {
      const double khz = j.j11 * m * k + j.j21 * m * m * k + j.j12 * m * k * k +
                         j.j22 * m * m * k * k;
      h(3 * m + k, 3 * m + k) = 2.0 * kPi * khz * 1e-3;
    }
  }
  return h;
}

FramePhases kerr_frame_rates(const NoiseModel& noise, int qutrit) {
  if (noise.num_qutrits() != 2) return {0.0, 0.0};
  const Matrix h = idle_hamiltonian(noise);
  Matrix u = Matrix::Zero(9, 9);
  for (int i = 0; i < 9; ++i) u(i, i) = std::exp(-kI * h(i, i).real() * kKerrCalibrationTimeUs);
  const FramePhases beta = calibrate_frame_phases(unitary_process(u), qutrit);
  return {beta.beta01 / kKerrCalibrationTimeUs, beta.beta12 / kKerrCalibrationTimeUs};
}

Matrix effective_idle_hamiltonian(const NoiseModel& noise) {
  Matrix h = idle_hamiltonian(noise);
  if (!noise.kerr_compensation || noise.num_qutrits() != 2) return h;
  for (int q = 0; q < 2; ++q) {
    const FramePhases r = kerr_frame_rates(noise, q);
    // Counter-rotating by Theta(-beta01, -beta12) per unit time.
    Matrix k = Matrix::Zero(3, 3);
    k(1, 1) = r.beta01;
    k(2, 2) = r.beta01 + r.beta12;
    h += single_site(2, q, k);
  }
  return h;
}

PureState apply_unitary(const PureState& state, const Matrix& u, std::span<const int> targets) {
  check_operator(u, targets);
  const TargetLayout lay = layout_for(targets, state.num_qutrits());
  Matrix v = state.amplitudes();
  apply_columns(v, u, lay);
  return PureState(Vector(v.col(0)));
}

DensityMatrix apply_unitary(const DensityMatrix& state, const Matrix& u,
                            std::span<const int> targets) {
  check_operator(u, targets);
  const TargetLayout lay = layout_for(targets, state.num_qutrits());
  Matrix m = state.matrix();
  apply_columns(m, u, lay);
  Matrix t = m.adjoint();
  apply_columns(t, u, lay);
  return DensityMatrix(symmetrize_to_density(t.adjoint()));
}

PureState simulate_pure(const Circuit& circuit, const PureState& initial) {
  const int n = circuit.num_qutrits();
  if (initial.num_qutrits() != n) {
    throw Error(ErrorCode::DimensionMismatch, "initial state width differs from circuit");
  }
  std::vector<PhaseFrame> frames(n);
  Matrix v = initial.amplitudes();
  for (const auto& moment : circuit.moments()) {
    for (const auto& ins : moment) {
      const int q = ins.targets()[0];
      Matrix u;
      switch (ins.kind()) {
        case GateKind::VPhase:
          frames[q].advance(ins.params()[0], ins.params()[1]);
          continue;
        case GateKind::R01:
          u = r01_matrix(frames[q].rewrite_phase(ins.kind(), ins.params()[0]), ins.params()[1]);
          break;
        case GateKind::R12:
          u = r12_matrix(frames[q].rewrite_phase(ins.kind(), ins.params()[0]), ins.params()[1]);
          break;
        default:
          u = ins.matrix();
      }
      check_operator(u, ins.targets());
      apply_columns(v, u, layout_for(ins.targets(), n));
    }
  }
  for (int q = 0; q < n; ++q) {
    const int t[] = {q};
    apply_columns(v, vphase_matrix(frames[q].theta01(), frames[q].theta12()), layout_for(t, n));
  }
  return PureState(Vector(v.col(0)));
}

namespace {

Matrix run_lindblad(const Circuit& circuit, const NoiseModel& noise, Matrix rho,
                    const LindbladOptions& options, bool check) {
  const int n = circuit.num_qutrits();
  if (noise.num_qutrits() != n || rho.rows() != dimension_for(n)) {
    throw Error(ErrorCode::DimensionMismatch,
                "circuit, noise model and initial state must have the same width");
  }
  const Lindbladian l(effective_idle_hamiltonian(noise), build_collapse_ops(noise).ops);
  for (const auto& moment : circuit.moments()) {
    rk4_evolve(rho, l, Circuit::moment_duration_ns(moment), options);
    const Matrix u = moment_unitary(moment, n);
    rho = u * rho * u.adjoint();
    if (check) check_physical(rho, options);
  }
  return rho;
}

}  // namespace

DensityMatrix simulate_lindblad(const Circuit& circuit, const NoiseModel& noise,
                                const DensityMatrix& initial, const LindbladOptions& options) {
  return DensityMatrix(
      symmetrize_to_density(run_lindblad(circuit, noise, initial.matrix(), options, true)));
}

Matrix lindblad_propagate(const Circuit& circuit, const NoiseModel& noise, const Matrix& op,
                          const LindbladOptions& options) {
  return run_lindblad(circuit, noise, op, options, false);
}

DensityMatrix evolve_idle(const DensityMatrix& initial, const NoiseModel& noise,
                          double duration_ns, const LindbladOptions& options) {
  if (noise.num_qutrits() != initial.num_qutrits()) {
    throw Error(ErrorCode::DimensionMismatch, "noise model width differs from state");
  }
  if (!(duration_ns >= 0.0)) throw Error(ErrorCode::InvalidArgument, "negative idle time");
  const Lindbladian l(effective_idle_hamiltonian(noise), build_collapse_ops(noise).ops);
  Matrix rho = initial.matrix();
  rk4_evolve(rho, l, duration_ns, options);
  check_physical(rho, options);
  return DensityMatrix(symmetrize_to_density(rho));
}

double simulated_ramsey_time(const NoiseModel& noise, int qutrit, GateKind transition) {
  if (transition != GateKind::R01 && transition != GateKind::R12) {
    throw Error(ErrorCode::InvalidArgument, "Ramsey transition must be R01 or R12");
  }
  const NoiseModel single = noise.restricted_to(qutrit);
  const int lo = transition == GateKind::R01 ? 0 : 1;
  Vector psi = Vector::Zero(3);
  psi(lo) = psi(lo + 1) = 1.0 / std::sqrt(2.0);
  DensityMatrix rho = DensityMatrix::from_pure(PureState(psi));

  // Log-linear least squares over one to three expected decay constants.
  const auto& c = single.qutrits[0];
  const double guess_us = transition == GateKind::R01 ? c.t2r_01 : c.t2r_12;
  const double span_us = std::isinf(guess_us) ? 10.0 : guess_us;
  const int samples = 12;
  const double dt_ns = 3.0 * span_us * 1e3 / samples;
  RealMatrix design(samples, 2);
  RealVector logc(samples);
  for (int k = 0; k < samples; ++k) {
    rho = evolve_idle(rho, single, dt_ns);
    const double coherence = 2.0 * std::abs(rho.matrix()(lo, lo + 1));
    design(k, 0) = 1.0;
    design(k, 1) = (k + 1) * dt_ns * 1e-3;
    logc(k) = std::log(coherence);
  }
  const RealVector coef = design.colPivHouseholderQr().solve(logc);
  if (!(coef(1) < 0.0)) return std::numeric_limits<double>::infinity();
  return -1.0 / coef(1);
}

ProbDist measure_probs(const PureState& state) {
  std::vector<double> p(state.dim());
  double sum = 0.0;
  for (int i = 0; i < state.dim(); ++i) sum += p[i] = std::norm(state.amplitudes()(i));
  for (double& x : p) x /= sum;
  return ProbDist(std::move(p));
}

ProbDist measure_probs(const DensityMatrix& state) {
  std::vector<double> p(state.dim());
  double sum = 0.0;
  for (int i = 0; i < state.dim(); ++i) {
    double d = state.matrix()(i, i).real();
    if (d < 0.0) {
      if (d < -1e-9) throw Error(ErrorCode::Numerical, "negative population in density matrix");
      d = 0.0;
    }
    sum += p[i] = d;
  }
  for (double& x : p) x /= sum;
  return ProbDist(std::move(p));
}

std::vector<std::int64_t> sample_counts(std::span<const double> probs, std::int64_t shots,
                                        std::uint64_t seed) {
  if (shots < 0) throw Error(ErrorCode::InvalidArgument, "shots must be >= 0");
  double sum = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0)) throw Error(ErrorCode::InvalidArgument, "invalid distribution entry");
    sum += p;
  }
  if (probs.empty() || std::abs(sum - 1.0) > 1e-9) {
    throw Error(ErrorCode::InvalidArgument, "distribution must sum to 1");
  }
  std::vector<double> cdf(probs.size());
  double acc = 0.0;
  std::size_t last = 0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    cdf[i] = acc += probs[i] / sum;
    if (probs[i] > 0.0) last = i;
  }
  std::fill(cdf.begin() + static_cast<std::ptrdiff_t>(last), cdf.end(), 1.0);

  std::vector<std::int64_t> counts(probs.size(), 0);
  std::mt19937_64 rng(seed);
  for (std::int64_t s = 0; s < shots; ++s) {
    // 53 random bits -> uniform in [0, 1); independent of the standard
    // library's distribution implementations.
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    ++counts[std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin()];
  }
  return counts;
}

std::vector<std::int64_t> sample_counts(const ProbDist& probs, std::int64_t shots,
                                        std::uint64_t seed) {
  return sample_counts(std::span<const double>(probs.probs()), shots, seed);
}

}  // namespace qutrit
