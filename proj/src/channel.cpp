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

#include "qutrit/channel.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace qutrit {

namespace {

Matrix matrix_unit(int dim, int i, int j) {
  Matrix e = Matrix::Zero(dim, dim);
  e(i, j) = 1.0;
  return e;
}

}  // namespace

QuantumChannel::QuantumChannel(int dim, std::vector<Matrix> unit_images)
    : dim_(dim), images_(std::move(unit_images)) {
  if (dim != 3 && dim != 9) {
    throw Error(ErrorCode::DimensionMismatch, "channels act on 3- or 9-dimensional operators");
  }
  if (images_.size() != static_cast<std::size_t>(dim * dim)) {
    throw Error(ErrorCode::DimensionMismatch, "channel needs d^2 matrix-unit images");
  }
  for (const auto& m : images_) {
    if (m.rows() != dim || m.cols() != dim) {
      throw Error(ErrorCode::DimensionMismatch, "matrix-unit image has wrong shape");
    }
  }
}

QuantumChannel QuantumChannel::from_map(int dim,
                                        const std::function<Matrix(const Matrix&)>& map) {
  std::vector<Matrix> images;
  images.reserve(dim * dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) images.push_back(map(matrix_unit(dim, i, j)));
  }
  return QuantumChannel(dim, std::move(images));
}

QuantumChannel QuantumChannel::from_unitary(const Matrix& u) {
  if (!is_unitary(u, 1e-10)) throw Error(ErrorCode::InvalidArgument, "matrix is not unitary");
  return from_map(static_cast<int>(u.rows()),
                  [&u](const Matrix& e) -> Matrix { return u * e * u.adjoint(); });
}

QuantumChannel QuantumChannel::identity(int dim) {
  return from_map(dim, [](const Matrix& e) { return e; });
}

Matrix QuantumChannel::apply(const Matrix& rho) const {
  if (rho.rows() != dim_ || rho.cols() != dim_) {
    throw Error(ErrorCode::DimensionMismatch, "operator shape does not match channel");
  }
  Matrix out = Matrix::Zero(dim_, dim_);
  for (int i = 0; i < dim_; ++i) {
    for (int j = 0; j < dim_; ++j) out += rho(i, j) * images_[i * dim_ + j];
  }
  return out;
}

Matrix QuantumChannel::choi() const {
  const int d = dim_;
  Matrix c = Matrix::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) c.block(i * d, j * d, d, d) = images_[i * d + j];
  }
  return c;
}

double QuantumChannel::trace_preservation_error() const {
  double err = 0.0;
  for (int i = 0; i < dim_; ++i) {
    for (int j = 0; j < dim_; ++j) {
      const Complex want = i == j ? 1.0 : 0.0;
      err = std::max(err, std::abs(images_[i * dim_ + j].trace() - want));
    }
  }
  return err;
}

double QuantumChannel::min_choi_eigenvalue() const {
  const Matrix c = choi();
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (c + c.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

bool QuantumChannel::is_cptp(double tol) const {
  const Matrix c = choi();
  if ((c - c.adjoint()).cwiseAbs().maxCoeff() > 1e-9) return false;
  return trace_preservation_error() <= 1e-8 && min_choi_eigenvalue() >= -tol;
}

QuantumChannel circuit_channel(const Circuit& circuit, const NoiseModel& noise,
                               const LindbladOptions& options) {
  const int d = dimension_for(circuit.num_qutrits());
  return QuantumChannel::from_map(d, [&](const Matrix& e) {
    return lindblad_propagate(circuit, noise, e, options);
  });
}

ProcessMatrix::ProcessMatrix(int dim, Matrix chi) : dim_(dim), chi_(std::move(chi)) {
  if (chi_.rows() != dim * dim || chi_.cols() != dim * dim) {
    throw Error(ErrorCode::DimensionMismatch, "process matrix must be d^2 x d^2");
  }
  if ((chi_ - chi_.adjoint()).cwiseAbs().maxCoeff() > 1e-9) {
    throw Error(ErrorCode::Numerical, "process matrix is not Hermitian");
  }
}

ProcessMatrix chi_matrix(const QuantumChannel& channel, double cptp_tol) {
  if (!channel.is_cptp(cptp_tol)) {
    throw Error(ErrorCode::NotCptp, "channel is not CPTP within tolerance");
  }
  // With E_m = |a><b| (m = a d + b), E_m E_ij E_n^dag = delta_bi delta_je |a><c|
  // for E_n = |c><e|, so chi_{(a,i),(c,j)} = <a| channel(E_ij) |c>.
  const int d = channel.dim();
  Matrix chi = Matrix::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const Matrix& img = channel.unit_images()[i * d + j];
      for (int a = 0; a < d; ++a) {
        for (int c = 0; c < d; ++c) chi(a * d + i, c * d + j) = img(a, c);
      }
    }
  }
  return ProcessMatrix(d, 0.5 * (chi + chi.adjoint()));
}

double process_fidelity(const ProcessMatrix& chi, const ProcessMatrix& chi_ideal) {
  if (chi.dim() != chi_ideal.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "process matrices act on different dimensions");
  }
  const Complex ta = chi.chi().trace(), tb = chi_ideal.chi().trace();
  if (std::abs(ta) == 0.0 || std::abs(tb) == 0.0) {
    throw Error(ErrorCode::Numerical, "process matrix has zero trace");
  }
  return ((chi_ideal.chi() * chi.chi()).trace() / (ta * tb)).real();
}

}  // namespace qutrit
