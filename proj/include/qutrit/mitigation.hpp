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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qutrit/core.hpp"

namespace qutrit {

// Readout assignment matrix, M(i, j) = P(assigned i | prepared j); columns
// sum to one.
class ConfusionMatrix {
 public:
  explicit ConfusionMatrix(RealMatrix m);

  // Diagonal 0.90 down to 0.80 across the nine states, the remaining mass
  // of each column spread uniformly over the other outcomes.
  static ConfusionMatrix synthetic();
  static ConfusionMatrix uniform_leakage(int dim, double diagonal);
  static ConfusionMatrix identity(int dim);

  // Plain text, row-major, whitespace separated; '#' starts a comment.
  static ConfusionMatrix parse(const std::string& text);
  static ConfusionMatrix load(const std::string& path);
  std::string to_text() const;

  const RealMatrix& matrix() const { return m_; }
  int dim() const { return static_cast<int>(m_.rows()); }
  double condition_number() const;

 private:
  RealMatrix m_;
};

struct SignedCounts {
  std::vector<double> q;
  double shots;
};

ProbDist apply_confusion(const ProbDist& true_probs, const ConfusionMatrix& m);

// M^-1 counts. Rejects condition numbers above 1e6.
SignedCounts invert_confusion(std::span<const double> measured_counts, const ConfusionMatrix& m);
SignedCounts invert_confusion(std::span<const std::int64_t> measured_counts,
                              const ConfusionMatrix& m);

// Weighted least squares repair: minimize sum ((p_i - q_i) / w_i)^2 with
// w_i = q_i where |q_i| >= sqrt(N), sqrt(N) otherwise; subject to
// p_i >= floor (default sqrt(N)) and sum p_i = N.
std::vector<double> mle_correct(const SignedCounts& q,
                                std::optional<double> floor = std::nullopt);

double mle_cost(std::span<const double> p, const SignedCounts& q);

}  // namespace qutrit
