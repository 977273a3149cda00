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

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace qutrit {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr int kMaxQutrits = 6;

enum class ErrorCode {
  InvalidArgument,
  DimensionMismatch,
  FitFailure,
  Infeasible,
  IllConditioned,
  NotCptp,
  Numerical,
  Config,
  Io,
  Parse,
};

std::string_view to_string(ErrorCode code);

// All library failures surface as this type; the code lets the CLI build a
// machine-readable error document without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

int dimension_for(int n_qutrits);

// Computational basis label. The first qutrit is the most significant trit,
// so |21> has index 7.
class BasisLabel {
 public:
  static BasisLabel from_digits(std::vector<int> digits);
  static BasisLabel from_index(int n_qutrits, int index);
  // Accepts "21", "|21>", or "2,1".
  static BasisLabel parse(std::string_view text);

  const std::vector<int>& digits() const { return digits_; }
  int index() const { return index_; }
  int num_qutrits() const { return static_cast<int>(digits_.size()); }
  std::string to_string() const;

  friend bool operator==(const BasisLabel&, const BasisLabel&) = default;

 private:
  BasisLabel(std::vector<int> digits, int index)
      : digits_(std::move(digits)), index_(index) {}
  std::vector<int> digits_;
  int index_ = 0;
};

class PureState {
 public:
  explicit PureState(Vector amplitudes);
  static PureState basis(const BasisLabel& label);
  static PureState uniform(int n_qutrits);

  const Vector& amplitudes() const { return amps_; }
  int num_qutrits() const { return n_; }
  int dim() const { return static_cast<int>(amps_.size()); }

 private:
  Vector amps_;
  int n_ = 0;
};

class DensityMatrix {
 public:
  // Validates Hermiticity (1e-9), unit trace (1e-8) and eigenvalues >= -1e-7.
  explicit DensityMatrix(Matrix rho);
  static DensityMatrix from_pure(const PureState& psi);

  const Matrix& matrix() const { return rho_; }
  int num_qutrits() const { return n_; }
  int dim() const { return static_cast<int>(rho_.rows()); }

 private:
  Matrix rho_;
  int n_ = 0;
};

class ProbDist {
 public:
  // Requires entries >= 0 summing to 1 within 1e-9.
  explicit ProbDist(std::vector<double> probs,
                    std::optional<std::int64_t> shots = std::nullopt);
  static ProbDist delta(const BasisLabel& label);
  static ProbDist uniform(int n_qutrits);
  static ProbDist from_counts(std::span<const std::int64_t> counts);

  const std::vector<double>& probs() const { return probs_; }
  std::optional<std::int64_t> shots() const { return shots_; }
  double operator[](std::size_t i) const { return probs_[i]; }
  std::size_t size() const { return probs_.size(); }
  int num_qutrits() const;

 private:
  std::vector<double> probs_;
  std::optional<std::int64_t> shots_;
};

Matrix tensor(const Matrix& a, const Matrix& b);
Matrix tensor(std::span<const Matrix> factors);

// Embeds a 3^k x 3^k operator acting on `targets` into the full 3^n space.
// targets[0] is the most significant trit of the small operator.
Matrix embed_operator(const Matrix& op, std::span<const int> targets,
                      int n_qutrits);

double fidelity(const PureState& a, const PureState& b);
double fidelity(const PureState& a, const DensityMatrix& b);
double fidelity(const DensityMatrix& a, const PureState& b);
double fidelity(const DensityMatrix& a, const DensityMatrix& b);

// Square statistical overlap (sum_i sqrt(p_i q_i))^2.
double sso(const ProbDist& p, const ProbDist& q);
double sso(std::span<const double> p, std::span<const double> q);

// Equality up to a global phase, Frobenius-normalized.
bool equal_up_to_phase(const Matrix& a, const Matrix& b, double tol);
double phase_insensitive_distance(const Matrix& a, const Matrix& b);

bool is_unitary(const Matrix& u, double tol);

}  // namespace qutrit
