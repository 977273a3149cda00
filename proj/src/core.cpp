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

#include "qutrit/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

namespace qutrit {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid_argument";
    case ErrorCode::DimensionMismatch: return "dimension_mismatch";
    case ErrorCode::FitFailure: return "fit_failure";
    case ErrorCode::Infeasible: return "infeasible";
    case ErrorCode::IllConditioned: return "ill_conditioned";
    case ErrorCode::NotCptp: return "not_cptp";
    case ErrorCode::Numerical: return "numerical";
    case ErrorCode::Config: return "config";
    case ErrorCode::Io: return "io";
    case ErrorCode::Parse: return "parse";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(message), code_(code) {}

int dimension_for(int n_qutrits) {
  if (n_qutrits < 1 || n_qutrits > kMaxQutrits) {
    throw Error(ErrorCode::InvalidArgument,
                "qutrit count must be in [1, 6], got " +
                    std::to_string(n_qutrits));
  }
  int d = 1;
  for (int k = 0; k < n_qutrits; ++k) d *= 3;
  return d;
}

static int qutrit_count_for(Eigen::Index dim) {
  int n = 0;
  Eigen::Index d = 1;
  while (d < dim) {
    d *= 3;
    ++n;
  }
  if (d != dim || n < 1 || n > kMaxQutrits) {
    throw Error(ErrorCode::DimensionMismatch,
                "dimension " + std::to_string(dim) + " is not 3^n, 1 <= n <= 6");
  }
  return n;
}

BasisLabel BasisLabel::from_digits(std::vector<int> digits) {
  dimension_for(static_cast<int>(digits.size()));
  int index = 0;
  for (int d : digits) {
    if (d < 0 || d > 2) {
      throw Error(ErrorCode::InvalidArgument, "trit out of range: " + std::to_string(d));
    }
    index = index * 3 + d;
  }
  return BasisLabel(std::move(digits), index);
}

BasisLabel BasisLabel::from_index(int n_qutrits, int index) {
  const int dim = dimension_for(n_qutrits);
  if (index < 0 || index >= dim) {
    throw Error(ErrorCode::InvalidArgument,
                "basis index " + std::to_string(index) + " out of range");
  }
  std::vector<int> digits(n_qutrits);
  for (int k = n_qutrits - 1, r = index; k >= 0; --k, r /= 3) digits[k] = r % 3;
  return BasisLabel(std::move(digits), index);
}

BasisLabel BasisLabel::parse(std::string_view text) {
  std::vector<int> digits;
  for (char c : text) {
    if (c >= '0' && c <= '9') {
      digits.push_back(c - '0');
    } else if (c == '|' || c == '>' || c == ',' || c == ' ') {
      continue;
    } else {
      throw Error(ErrorCode::Parse, "bad basis label '" + std::string(text) + "'");
    }
  }
  if (digits.empty()) throw Error(ErrorCode::Parse, "empty basis label");
  return from_digits(std::move(digits));
}

std::string BasisLabel::to_string() const {
  std::string s;
  for (int d : digits_) s.push_back(static_cast<char>('0' + d));
  return s;
}

PureState::PureState(Vector amplitudes) : amps_(std::move(amplitudes)) {
  n_ = qutrit_count_for(amps_.size());
  const double norm2 = amps_.squaredNorm();
  if (std::abs(norm2 - 1.0) > 1e-9) {
    throw Error(ErrorCode::InvalidArgument,
                "state norm^2 = " + std::to_string(norm2) + ", expected 1");
  }
}

PureState PureState::basis(const BasisLabel& label) {
  Vector v = Vector::Zero(dimension_for(label.num_qutrits()));
  v(label.index()) = 1.0;
  return PureState(std::move(v));
}

PureState PureState::uniform(int n_qutrits) {
  const int d = dimension_for(n_qutrits);
  return PureState(Vector::Constant(d, 1.0 / std::sqrt(static_cast<double>(d))));
}

DensityMatrix::DensityMatrix(Matrix rho) : rho_(std::move(rho)) {
  if (rho_.rows() != rho_.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "density matrix must be square");
  }
  n_ = qutrit_count_for(rho_.rows());
  if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > 1e-9) {
    throw Error(ErrorCode::Numerical, "density matrix is not Hermitian");
  }
  const Complex tr = rho_.trace();
  if (std::abs(tr - 1.0) > 1e-8) {
    throw Error(ErrorCode::Numerical, "density matrix trace " +
                                          std::to_string(tr.real()) + " != 1");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-7) {
    throw Error(ErrorCode::Numerical, "density matrix has negative eigenvalue " +
                                          std::to_string(es.eigenvalues().minCoeff()));
  }
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  return DensityMatrix(psi.amplitudes() * psi.amplitudes().adjoint());
}

ProbDist::ProbDist(std::vector<double> probs, std::optional<std::int64_t> shots)
    : probs_(std::move(probs)), shots_(shots) {
  qutrit_count_for(static_cast<Eigen::Index>(probs_.size()));
  double sum = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0)) {
      throw Error(ErrorCode::InvalidArgument, "probability entries must be >= 0");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw Error(ErrorCode::InvalidArgument,
                "probabilities sum to " + std::to_string(sum) + ", expected 1");
  }
}

ProbDist ProbDist::delta(const BasisLabel& label) {
  std::vector<double> p(dimension_for(label.num_qutrits()), 0.0);
  p[label.index()] = 1.0;
  return ProbDist(std::move(p));
}

ProbDist ProbDist::uniform(int n_qutrits) {
  const int d = dimension_for(n_qutrits);
  return ProbDist(std::vector<double>(d, 1.0 / d));
}

ProbDist ProbDist::from_counts(std::span<const std::int64_t> counts) {
  std::int64_t total = 0;
  for (auto c : counts) {
    if (c < 0) throw Error(ErrorCode::InvalidArgument, "negative count");
    total += c;
  }
  if (total == 0) throw Error(ErrorCode::InvalidArgument, "zero total counts");
  std::vector<double> p(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    p[i] = static_cast<double>(counts[i]) / static_cast<double>(total);
  }
  return ProbDist(std::move(p), total);
}

int ProbDist::num_qutrits() const {
  return qutrit_count_for(static_cast<Eigen::Index>(probs_.size()));
}

Matrix tensor(const Matrix& a, const Matrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "tensor factors must be square");
  }
  return Eigen::kroneckerProduct(a, b).eval();
}

Matrix tensor(std::span<const Matrix> factors) {
  if (factors.empty()) throw Error(ErrorCode::InvalidArgument, "no tensor factors");
  Matrix out = factors[0];
  for (std::size_t k = 1; k < factors.size(); ++k) out = tensor(out, factors[k]);
  return out;
}

Matrix embed_operator(const Matrix& op, std::span<const int> targets, int n_qutrits) {
  const int dim = dimension_for(n_qutrits);
  const int k = static_cast<int>(targets.size());
  if (k == 0 || op.rows() != dimension_for(k) || op.cols() != op.rows()) {
    throw Error(ErrorCode::DimensionMismatch,
                "operator dimension does not match target count");
  }
  std::vector<bool> used(n_qutrits, false);
  for (int t : targets) {
    if (t < 0 || t >= n_qutrits) {
      throw Error(ErrorCode::InvalidArgument, "target qutrit out of range");
    }
    if (used[t]) throw Error(ErrorCode::InvalidArgument, "overlapping targets");
    used[t] = true;
  }
  if (k == n_qutrits) {
    bool identity_order = true;
    for (int i = 0; i < k; ++i) identity_order &= targets[i] == i;
    if (identity_order) return op;
  }

  std::vector<int> place(n_qutrits);
  for (int q = 0, p = 1; q < n_qutrits; ++q) place[n_qutrits - 1 - q] = p, p *= 3;

  auto sub_index = [&](int full) {
    int s = 0;
    for (int t : targets) s = s * 3 + (full / place[t]) % 3;
    return s;
  };
  auto rest_key = [&](int full) {
    int r = full;
    for (int t : targets) r -= ((full / place[t]) % 3) * place[t];
    return r;
  };

  Matrix out = Matrix::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const int ri = rest_key(i), si = sub_index(i);
    for (int j = 0; j < dim; ++j) {
      if (rest_key(j) != ri) continue;
      out(i, j) = op(si, sub_index(j));
    }
  }
  return out;
}

static void require_same_dim(Eigen::Index a, Eigen::Index b) {
  if (a != b) {
    throw Error(ErrorCode::DimensionMismatch, "state dimensions differ: " +
                                                  std::to_string(a) + " vs " +
                                                  std::to_string(b));
  }
}

static double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

double fidelity(const PureState& a, const PureState& b) {
  require_same_dim(a.dim(), b.dim());
  return clamp01(std::norm(a.amplitudes().dot(b.amplitudes())));
}

double fidelity(const PureState& a, const DensityMatrix& b) {
  require_same_dim(a.dim(), b.dim());
  const Complex v = a.amplitudes().dot(b.matrix() * a.amplitudes());
  return clamp01(v.real());
}

double fidelity(const DensityMatrix& a, const PureState& b) { return fidelity(b, a); }

static Matrix psd_sqrt(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  RealVector ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

double fidelity(const DensityMatrix& a, const DensityMatrix& b) {
  require_same_dim(a.dim(), b.dim());
  const Matrix sa = psd_sqrt(a.matrix());
  const Matrix inner = sa * b.matrix() * sa;
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (inner + inner.adjoint()),
                                           Eigen::EigenvaluesOnly);
  const double tr = es.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
  return clamp01(tr * tr);
}

double sso(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) {
    throw Error(ErrorCode::DimensionMismatch, "distribution lengths differ");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < 0.0 || q[i] < 0.0) {
      throw Error(ErrorCode::InvalidArgument, "sso requires non-negative entries");
    }
    s += std::sqrt(p[i] * q[i]);
  }
  return clamp01(s * s);
}

double sso(const ProbDist& p, const ProbDist& q) { return sso(p.probs(), q.probs()); }

double phase_insensitive_distance(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "matrix shapes differ");
  }
  const Complex overlap = (b.adjoint() * a).trace();
  const Complex phase = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : Complex(1.0);
  return (a - phase * b).cwiseAbs().maxCoeff();
}

bool equal_up_to_phase(const Matrix& a, const Matrix& b, double tol) {
  return phase_insensitive_distance(a, b) <= tol;
}

bool is_unitary(const Matrix& u, double tol) {
  if (u.rows() != u.cols()) return false;
  return (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace qutrit
