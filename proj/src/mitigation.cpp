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

#include "qutrit/mitigation.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include <Eigen/SVD>

namespace qutrit {

namespace {

double weight(double qi, double sqrt_n) { return std::abs(qi) >= sqrt_n ? qi : sqrt_n; }

}  // namespace

ConfusionMatrix::ConfusionMatrix(RealMatrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() < 2) {
    throw Error(ErrorCode::DimensionMismatch, "confusion matrix must be square");
  }
  for (Eigen::Index j = 0; j < m_.cols(); ++j) {
    for (Eigen::Index i = 0; i < m_.rows(); ++i) {
      if (!(m_(i, j) >= 0.0 && m_(i, j) <= 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "confusion entries must lie in [0, 1]");
      }
    }
    if (std::abs(m_.col(j).sum() - 1.0) > 1e-9) {
      throw Error(ErrorCode::InvalidArgument,
                  "confusion column " + std::to_string(j) + " does not sum to 1");
    }
  }
}

ConfusionMatrix ConfusionMatrix::uniform_leakage(int dim, double diagonal) {
  RealMatrix m = RealMatrix::Constant(dim, dim, (1.0 - diagonal) / (dim - 1));
  m.diagonal().setConstant(diagonal);
  return ConfusionMatrix(std::move(m));
}

ConfusionMatrix ConfusionMatrix::synthetic() {
  RealMatrix m(9, 9);
  for (int j = 0; j < 9; ++j) {
    const double d = 0.90 - 0.0125 * j;
    m.col(j).setConstant((1.0 - d) / 8.0);
    m(j, j) = d;
  }
  return ConfusionMatrix(std::move(m));
}

ConfusionMatrix ConfusionMatrix::identity(int dim) {
  return ConfusionMatrix(RealMatrix::Identity(dim, dim));
}

ConfusionMatrix ConfusionMatrix::parse(const std::string& text) {
  std::vector<double> values;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string tok;
    while (fields >> tok) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size()) throw Error(ErrorCode::Parse, "bad confusion entry '" + tok + "'");
      values.push_back(v);
    }
  }
  const int dim = static_cast<int>(std::lround(std::sqrt(static_cast<double>(values.size()))));
  if (dim < 2 || static_cast<std::size_t>(dim * dim) != values.size()) {
    throw Error(ErrorCode::Parse,
                "confusion table must be square, got " + std::to_string(values.size()) + " entries");
  }
  RealMatrix m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) m(i, j) = values[i * dim + j];
  }
  return ConfusionMatrix(std::move(m));
}

ConfusionMatrix ConfusionMatrix::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open confusion matrix file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

std::string ConfusionMatrix::to_text() const {
  std::ostringstream os;
  os << "# M[i][j] = P(assigned i | prepared j); rows = assigned, columns = prepared\n";
  os.precision(17);
  for (Eigen::Index i = 0; i < m_.rows(); ++i) {
    for (Eigen::Index j = 0; j < m_.cols(); ++j) os << (j ? " " : "") << m_(i, j);
    os << '\n';
  }
  return os.str();
}

double ConfusionMatrix::condition_number() const {
  Eigen::JacobiSVD<RealMatrix> svd(m_);
  const auto& s = svd.singularValues();
  const double smin = s(s.size() - 1);
  return smin > 0.0 ? s(0) / smin : std::numeric_limits<double>::infinity();
}

ProbDist apply_confusion(const ProbDist& true_probs, const ConfusionMatrix& m) {
  if (static_cast<int>(true_probs.size()) != m.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "distribution and confusion matrix sizes differ");
  }
  const RealVector p = Eigen::Map<const RealVector>(true_probs.probs().data(), m.dim());
  const RealVector out = m.matrix() * p;
  std::vector<double> v(out.data(), out.data() + out.size());
  const double sum = std::accumulate(v.begin(), v.end(), 0.0);
  for (double& x : v) x = std::max(0.0, x) / sum;
  return ProbDist(std::move(v));
}

SignedCounts invert_confusion(std::span<const double> measured_counts, const ConfusionMatrix& m) {
  if (static_cast<int>(measured_counts.size()) != m.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "count vector and confusion matrix sizes differ");
  }
  const double cond = m.condition_number();
  if (!(cond <= 1e6)) {
    throw Error(ErrorCode::IllConditioned,
                "confusion matrix condition number " + std::to_string(cond) + " exceeds 1e6");
  }
  const RealVector c = Eigen::Map<const RealVector>(measured_counts.data(), m.dim());
  const RealVector q = m.matrix().partialPivLu().solve(c);
  return {std::vector<double>(q.data(), q.data() + q.size()), c.sum()};
}

SignedCounts invert_confusion(std::span<const std::int64_t> measured_counts,
                              const ConfusionMatrix& m) {
  std::vector<double> c(measured_counts.begin(), measured_counts.end());
  return invert_confusion(std::span<const double>(c), m);
}

double mle_cost(std::span<const double> p, const SignedCounts& q) {
  if (p.size() != q.q.size()) throw Error(ErrorCode::DimensionMismatch, "count lengths differ");
  const double sqrt_n = std::sqrt(q.shots);
  double f = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double r = (p[i] - q.q[i]) / weight(q.q[i], sqrt_n);
    f += r * r;
  }
  return f;
}

std::vector<double> mle_correct(const SignedCounts& q, std::optional<double> floor) {
  const double n = q.shots;
  const std::size_t d = q.q.size();
  if (!(n > 0.0) || d == 0) throw Error(ErrorCode::InvalidArgument, "shots must be positive");
  const double total = std::accumulate(q.q.begin(), q.q.end(), 0.0);
  if (std::abs(total - n) > 1e-6 * std::max(1.0, n)) {
    throw Error(ErrorCode::InvalidArgument, "signed counts do not sum to the shot count");
  }
  const double sqrt_n = std::sqrt(n);
  const double lo = floor.value_or(sqrt_n);
  if (static_cast<double>(d) * lo > n) {
    throw Error(ErrorCode::Infeasible, "floor " + std::to_string(lo) + " x " + std::to_string(d) +
                                           " outcomes exceeds " + std::to_string(n) + " shots");
  }

  if (std::all_of(q.q.begin(), q.q.end(), [lo](double x) { return x >= lo; })) return q.q;

  // Stationarity: p_i = max(lo, q_i - mu * w_i^2); the sum is non-increasing
  // in mu, so mu is found by bisection.
  std::vector<double> w2(d);
  for (std::size_t i = 0; i < d; ++i) {
    const double w = weight(q.q[i], sqrt_n);
    w2[i] = w * w;
  }
  auto at = [&](double mu, std::vector<double>* out) {
    double s = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      const double pi = std::max(lo, q.q[i] - mu * w2[i]);
      if (out) (*out)[i] = pi;
      s += pi;
    }
    return s;
  };
  double mu_lo = -1.0, mu_hi = 1.0;
  while (at(mu_lo, nullptr) < n) mu_lo *= 2.0;
  while (at(mu_hi, nullptr) > n) mu_hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (mu_lo + mu_hi);
    if (at(mid, nullptr) > n) mu_lo = mid; else mu_hi = mid;
  }
  std::vector<double> p(d);
  at(0.5 * (mu_lo + mu_hi), &p);

  // Spread the residual of the bisection over the free coordinates.
  double residual = n - std::accumulate(p.begin(), p.end(), 0.0);
  std::size_t free_count = 0;
  for (double x : p) free_count += x > lo;
  if (free_count > 0) {
    for (double& x : p) {
      if (x > lo) x += residual / static_cast<double>(free_count);
    }
  }
  return p;
}

}  // namespace qutrit
