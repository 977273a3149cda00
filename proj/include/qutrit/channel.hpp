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

#include <functional>
#include <vector>

#include "qutrit/core.hpp"
#include "qutrit/noise.hpp"

namespace qutrit {

// Linear map on d x d operators stored as its images of the matrix units
// E_ij = |i><j|, index i * d + j.
class QuantumChannel {
 public:
  QuantumChannel(int dim, std::vector<Matrix> unit_images);

  static QuantumChannel from_unitary(const Matrix& u);
  static QuantumChannel from_map(int dim, const std::function<Matrix(const Matrix&)>& map);
  static QuantumChannel identity(int dim);

  int dim() const { return dim_; }
  const std::vector<Matrix>& unit_images() const { return images_; }
  Matrix apply(const Matrix& rho) const;

  // Choi operator sum_ij E_ij (x) channel(E_ij).
  Matrix choi() const;
  double trace_preservation_error() const;
  double min_choi_eigenvalue() const;
  bool is_cptp(double tol = 1e-7) const;

 private:
  int dim_;
  std::vector<Matrix> images_;
};

// Channel of a whole circuit under the Lindblad backend.
QuantumChannel circuit_channel(const Circuit& circuit, const NoiseModel& noise,
                               const LindbladOptions& options = {});

class ProcessMatrix {
 public:
  ProcessMatrix(int dim, Matrix chi);
  int dim() const { return dim_; }
  const Matrix& chi() const { return chi_; }

 private:
  int dim_;
  Matrix chi_;
};

// chi over the matrix-unit basis E_m = |a><b|, m = a * d + b, such that
// channel(rho) = sum_mn chi_mn E_m rho E_n^dag.
ProcessMatrix chi_matrix(const QuantumChannel& channel, double cptp_tol = 1e-7);

// Tr(chi_ideal chi) with both normalized to unit trace.
double process_fidelity(const ProcessMatrix& chi, const ProcessMatrix& chi_ideal);

}  // namespace qutrit
