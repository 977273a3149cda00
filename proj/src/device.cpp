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

#include "qutrit/device.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <unsupported/Eigen/KroneckerProduct>

namespace qutrit {

namespace {

constexpr double kElementaryCharge = 1.602176634e-19;
constexpr double kPlanck = 6.62607015e-34;
constexpr double kLambdaZero = 1e-12;

void require(bool ok, ErrorCode code, const std::string& message) {
  if (!ok) throw Error(code, message);
}

double coupler_josephson(const DeviceParams& p) {
  return p.e_jc * std::cos(2.0 * kPi * p.flux);
}

RealMatrix symmetric_sqrt(const RealMatrix& a) {
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(a);
  RealVector w = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * w.asDiagonal() * es.eigenvectors().transpose();
}

// Exact truncated matrix elements of n^2 and phi^2 for a mode with C = D.
RealMatrix charge_squared(int n) {
  RealMatrix m = RealMatrix::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    m(k, k) = k + 0.5;
    if (k + 2 < n) m(k, k + 2) = m(k + 2, k) = -0.5 * std::sqrt((k + 1.0) * (k + 2.0));
  }
  return m;
}

RealMatrix flux_squared(int n) {
  RealMatrix m = charge_squared(n);
  for (int k = 0; k + 2 < n; ++k) m(k, k + 2) = m(k + 2, k) = -m(k, k + 2);
  return m;
}

RealMatrix flux_operator(int n) {
  RealMatrix x = RealMatrix::Zero(n, n);
  for (int k = 0; k + 1 < n; ++k) x(k, k + 1) = x(k + 1, k) = std::sqrt((k + 1.0) / 2.0);
  return x;
}

struct ModeCosines {
  RealMatrix vectors;
  RealVector values;
  std::pair<RealMatrix, RealMatrix> at(double c) const {
    RealVector cv = (c * values).array().cos();
    RealVector sv = (c * values).array().sin();
    return {vectors * cv.asDiagonal() * vectors.transpose(),
            vectors * sv.asDiagonal() * vectors.transpose()};
  }
};

RealMatrix kron3(const RealMatrix& a, const RealMatrix& b, const RealMatrix& c) {
  RealMatrix ab = Eigen::kroneckerProduct(a, b).eval();
  return Eigen::kroneckerProduct(ab, c).eval();
}

std::string level_name(int m, int n) {
  return std::to_string(m) + std::to_string(n);
}

// Table of double differences (a - b) - (c - d) over labeled energies.
struct ZzRow {
  const char* name;
  int a[2], b[2], c[2], d[2];
};
constexpr ZzRow kZzRows[] = {
    {"ZZ", {1,1}, {0,1}, {1,0}, {0,0}},
    {"(E21-E11)-(E20-E10)", {2,1}, {1,1}, {2,0}, {1,0}},
    {"(E12-E11)-(E02-E01)", {1,2}, {1,1}, {0,2}, {0,1}},
    {"(E22-E12)-(E20-E10)", {2,2}, {1,2}, {2,0}, {1,0}},
    {"(E22-E21)-(E02-E01)", {2,2}, {2,1}, {0,2}, {0,1}},
    {"(E12-E02)-(E10-E00)", {1,2}, {0,2}, {1,0}, {0,0}},
    {"(E21-E20)-(E01-E00)", {2,1}, {2,0}, {0,1}, {0,0}},
};

template <typename E>
std::map<std::string, double> zz_rows(E e, double scale) {
  std::map<std::string, double> zz;
  for (const auto& row : kZzRows) {
    zz[row.name] = ((e(row.a[0], row.a[1]) - e(row.b[0], row.b[1])) -
                    (e(row.c[0], row.c[1]) - e(row.d[0], row.d[1]))) * scale;
  }
  return zz;
}

}  // namespace

void DeviceParams::validate() const {
  for (double c : {c_q1, c_q2, c_c}) {
    require(std::isfinite(c) && c > 0.0, ErrorCode::InvalidArgument,
            "capacitances must be positive");
  }
  require(std::isfinite(c_q12) && c_q12 >= 0.0, ErrorCode::InvalidArgument,
          "coupling capacitance must be non-negative");
  for (double e : {e_j1, e_j2, e_jc}) {
    require(std::isfinite(e) && e >= 0.0, ErrorCode::InvalidArgument,
            "Josephson energies must be non-negative");
  }
  require(std::isfinite(flux), ErrorCode::InvalidArgument, "flux must be finite");
  require(n_levels >= 4 && n_levels_coupler >= 4, ErrorCode::InvalidArgument,
          "Fock truncation must keep at least 4 levels per mode");
  require(n_levels <= 40 && n_levels_coupler <= 40, ErrorCode::InvalidArgument,
          "Fock truncation above 40 levels per mode is not supported");
}

DeviceParams DeviceParams::at_flux(double phi) const {
  DeviceParams p = *this;
  p.flux = phi;
  return p;
}

double charge_energy_constant() {
  const double two_e = 2.0 * kElementaryCharge;
  return two_e * two_e / (2.0 * kPlanck) / 1e-15 / 1e9;
}

RealMatrix capacitance_matrix(const DeviceParams& p) {
  require(p.c_q1 > 0.0 && p.c_q2 > 0.0 && p.c_c > 0.0 && p.c_q12 >= 0.0,
          ErrorCode::InvalidArgument, "capacitances must be positive");
  RealMatrix c = RealMatrix::Zero(3, 3);
  c(0, 0) = p.c_q1 + p.c_q12;
  c(1, 1) = p.c_q2 + p.c_q12;
  c(0, 1) = c(1, 0) = -p.c_q12;
  c(2, 2) = p.c_q1 + p.c_q2 + p.c_c;
  return c;
}

RealMatrix kinetic_form(const DeviceParams& p) {
  return charge_energy_constant() * capacitance_matrix(p).inverse();
}

RealMatrix potential_form(const DeviceParams& p) {
  RealMatrix b = RealMatrix::Zero(3, 3);
  auto add = [&b](const Eigen::Vector3d& v, double weight) {
    b += 0.5 * weight * v * v.transpose();
  };
  add({-1.0, 0.0, 1.0}, p.e_j1);
  add({0.0, -1.0, 1.0}, p.e_j2);
  add({0.0, 0.0, 1.0}, coupler_josephson(p));
  return b;
}

RealVector NormalModes::frequencies() const {
  return 2.0 * (c_tilde.array() * d_tilde.array()).sqrt();
}

NormalModes normal_mode_transform(const DeviceParams& p) {
  p.validate();
  const RealMatrix a = kinetic_form(p);
  const RealMatrix b = potential_form(p);
  const RealMatrix a_half = symmetric_sqrt(a);

  // Whiten the kinetic term, then rotate the potential to its eigenbasis.
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(a_half * b * a_half);
  RealVector lambda = es.eigenvalues();
  const double scale = std::max(1.0, lambda.cwiseAbs().maxCoeff());
  if (lambda.minCoeff() < -kLambdaZero * scale) {
    throw Error(ErrorCode::Numerical,
                "linearized potential is not positive semidefinite at flux " +
                    std::to_string(p.flux));
  }
  RealMatrix t = a_half * es.eigenvectors();
  RealVector c(3), d(3);
  for (int k = 0; k < 3; ++k) {
    if (lambda(k) <= kLambdaZero * scale) {
      c(k) = 1.0;
      d(k) = 0.0;
      continue;
    }
    const double s = std::pow(lambda(k), -0.25);
    t.col(k) *= s;
    c(k) = d(k) = std::sqrt(lambda(k));
  }

  // Mode k is assigned to the node it displaces most; ties keep eigen order.
  std::array<int, 3> order{-1, -1, -1};
  std::array<bool, 3> used{false, false, false};
  for (int node = 0; node < 3; ++node) {
    int best = -1;
    for (int k = 0; k < 3; ++k) {
      if (used[k]) continue;
      if (best < 0 || std::abs(t(node, k)) > std::abs(t(node, best))) best = k;
    }
    order[node] = best;
    used[best] = true;
  }
  NormalModes modes{RealMatrix(3, 3), RealVector(3), RealVector(3)};
  for (int i = 0; i < 3; ++i) {
    const int k = order[i];
    const double sign = t(i, k) < 0.0 ? -1.0 : 1.0;
    modes.u.col(i) = sign * t.col(k);
    modes.c_tilde(i) = c(k);
    modes.d_tilde(i) = d(k);
  }
  return modes;
}

RealMatrix build_full_hamiltonian(const DeviceParams& p, const HamiltonianOptions& options) {
  p.validate();
  const NormalModes modes = normal_mode_transform(p);
  require(modes.d_tilde.minCoeff() > 0.0, ErrorCode::Numerical,
          "normal form has a zero-frequency mode; the circuit cannot be quantized");

  const std::array<int, 3> dims{p.n_levels, p.n_levels, p.n_levels_coupler};
  std::array<RealMatrix, 3> eye;
  for (int k = 0; k < 3; ++k) eye[k] = RealMatrix::Identity(dims[k], dims[k]);
  auto on_mode = [&](int k, const RealMatrix& op) {
    return kron3(k == 0 ? op : eye[0], k == 1 ? op : eye[1], k == 2 ? op : eye[2]);
  };

  const int dim = dims[0] * dims[1] * dims[2];
  RealMatrix h = RealMatrix::Zero(dim, dim);
  for (int k = 0; k < 3; ++k) h += modes.c_tilde(k) * on_mode(k, charge_squared(dims[k]));

  if (!options.include_nonlinear) {
    for (int k = 0; k < 3; ++k) h += modes.d_tilde(k) * on_mode(k, flux_squared(dims[k]));
    return h;
  }

  // With C~ = D~ the dressed flux is (a + a^dag)/sqrt(2) for every mode.
  std::array<ModeCosines, 3> cosines;
  for (int k = 0; k < 3; ++k) {
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(flux_operator(dims[k]));
    cosines[k] = {es.eigenvectors(), es.eigenvalues()};
  }
  // cos(a + b + c) with the three mode terms commuting.
  auto cos_of = [&](const RealVector& coef) {
    auto [c0, s0] = cosines[0].at(coef(0));
    auto [c1, s1] = cosines[1].at(coef(1));
    auto [c2, s2] = cosines[2].at(coef(2));
    return RealMatrix(kron3(c0, c1, c2) - kron3(c0, s1, s2) - kron3(s0, c1, s2) -
                      kron3(s0, s1, c2));
  };
  const RealVector row1 = modes.u.row(0).transpose();
  const RealVector row2 = modes.u.row(1).transpose();
  const RealVector rowc = modes.u.row(2).transpose();
  if (p.e_j1 != 0.0) h -= p.e_j1 * cos_of(rowc - row1);
  if (p.e_j2 != 0.0) h -= p.e_j2 * cos_of(rowc - row2);
  const double ejc = coupler_josephson(p);
  if (ejc != 0.0) h -= ejc * cos_of(rowc);
  return 0.5 * (h + h.transpose());
}

double SpectrumReport::energy(int m, int n) const {
  for (const auto& level : levels) {
    if (level.m == m && level.n == n) return level.energy_ghz;
  }
  throw Error(ErrorCode::InvalidArgument, "no labeled level |" + level_name(m, n) + "0>");
}

std::map<std::string, double> zz_from_j(double j11, double j21, double j12, double j22) {
  // Energy offsets D_mn = E_mn - E_m0 - E_0n + E_00 of the J polynomial.
  auto dmn = [&](int m, int n) {
    return j11 * m * n + j21 * m * m * n + j12 * m * n * n + j22 * m * m * n * n;
  };
  // Single-qutrit terms cancel in every double difference.
  return zz_rows(dmn, 1.0);
}

SpectrumReport labeled_spectrum(const DeviceParams& p) {
  const NormalModes modes = normal_mode_transform(p);
  const RealMatrix h = build_full_hamiltonian(p);
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(h);
  require(es.info() == Eigen::Success, ErrorCode::Numerical, "diagonalization failed");
  const RealVector& energies = es.eigenvalues();
  const RealMatrix& vectors = es.eigenvectors();

  const int nq = p.n_levels;
  const int nc = p.n_levels_coupler;
  auto fock = [&](int m, int n) { return (m * nq + n) * nc; };

  SpectrumReport r;
  r.flux = p.flux;
  r.coupler_ghz = modes.frequencies()(2);
  r.sweet_spot = std::abs(std::sin(2.0 * kPi * p.flux)) < 1e-9;

  double e00 = 0.0;
  std::vector<int> claimed;
  for (int m = 0; m <= 3; ++m) {
    for (int n = 0; n <= 3; ++n) {
      if (m + n > 4) continue;
      Eigen::Index best = 0;
      vectors.row(fock(m, n)).cwiseAbs2().maxCoeff(&best);
      const double overlap = vectors(fock(m, n), best) * vectors(fock(m, n), best);
      const bool reused = std::find(claimed.begin(), claimed.end(), best) != claimed.end();
      claimed.push_back(static_cast<int>(best));
      if (overlap < 0.5 || reused) r.ambiguous.push_back(level_name(m, n));
      if (m == 0 && n == 0) e00 = energies(best);
      r.levels.push_back({m, n, energies(best), overlap});
    }
  }
  for (auto& level : r.levels) level.energy_ghz -= e00;

  auto e = [&r](int m, int n) { return r.energy(m, n); };
  r.w01_q1 = e(1, 0);
  r.w12_q1 = e(2, 0) - e(1, 0);
  r.w01_q2 = e(0, 1);
  r.w12_q2 = e(0, 2) - e(0, 1);

  auto dmn = [&](int m, int n) { return e(m, n) - e(m, 0) - e(0, n); };
  Eigen::Matrix4d mm;
  mm << 1, 1, 1, 1,
        2, 4, 2, 4,
        2, 2, 4, 4,
        4, 8, 8, 16;
  const Eigen::Vector4d rhs(dmn(1, 1), dmn(2, 1), dmn(1, 2), dmn(2, 2));
  const Eigen::Vector4d j = mm.fullPivLu().solve(rhs) * 1e6;
  r.j11 = j(0);
  r.j21 = j(1);
  r.j12 = j(2);
  r.j22 = j(3);

  r.zz = zz_rows(e, 1e6);
  return r;
}

std::vector<double> linear_grid(double from, double to, int steps) {
  require(steps >= 1, ErrorCode::InvalidArgument, "a grid needs at least one point");
  require(std::isfinite(from) && std::isfinite(to), ErrorCode::InvalidArgument,
          "grid bounds must be finite");
  if (steps == 1) return {from};
  std::vector<double> grid(steps);
  for (int i = 0; i < steps; ++i) grid[i] = from + (to - from) * i / (steps - 1);
  return grid;
}

FluxSweep flux_sweep(const DeviceParams& p, std::span<const double> flux_grid) {
  require(!flux_grid.empty(), ErrorCode::InvalidArgument, "empty flux grid");
  FluxSweep sweep;
  for (double phi : flux_grid) {
    SweepPoint point{phi, std::nullopt, {}};
    try {
      point.report = labeled_spectrum(p.at_flux(phi));
      if (!point.report->ambiguous.empty()) {
        std::string names;
        for (const auto& a : point.report->ambiguous) names += (names.empty() ? "" : ",") + a;
        point.error = "ambiguous labels: " + names;
      }
    } catch (const Error& e) {
      point.error = e.what();
    }
    sweep.points.push_back(std::move(point));
  }

  std::vector<const SweepPoint*> ok;
  for (const auto& pt : sweep.points) {
    if (pt.report) ok.push_back(&pt);
  }
  if (ok.empty()) return sweep;

  std::size_t argmin = 0;
  for (std::size_t i = 1; i < ok.size(); ++i) {
    if (std::abs(ok[i]->report->j11) < std::abs(ok[argmin]->report->j11)) argmin = i;
  }
  sweep.j11_interior_minimum = argmin > 0 && argmin + 1 < ok.size();
  sweep.j11_min_flux = ok[argmin]->flux;
  for (std::size_t i = 1; i < ok.size(); ++i) {
    const double a = ok[i - 1]->report->j11;
    const double b = ok[i]->report->j11;
    if ((a < 0.0) != (b < 0.0)) {
      const double x0 = ok[i - 1]->flux;
      const double x1 = ok[i]->flux;
      sweep.j11_min_flux = x0 + (x1 - x0) * a / (a - b);
      break;
    }
  }

  // Monotone toward half flux: decreasing as |flux| grows on a one-sided grid.
  bool mono = ok.size() >= 2;
  for (std::size_t i = 1; i < ok.size(); ++i) {
    const auto& lo = std::abs(ok[i - 1]->flux) < std::abs(ok[i]->flux) ? *ok[i - 1] : *ok[i];
    const auto& hi = &lo == ok[i] ? *ok[i - 1] : *ok[i];
    if (!(hi.report->w01_q1 <= lo.report->w01_q1 && hi.report->w01_q2 <= lo.report->w01_q2)) {
      mono = false;
    }
  }
  sweep.w01_monotone_decreasing = mono;
  return sweep;
}

std::string sweep_csv(const FluxSweep& sweep) {
  std::ostringstream out;
  out << "flux,w01_q1_ghz,w12_q1_ghz,w01_q2_ghz,w12_q2_ghz,coupler_ghz,"
         "j11_khz,j21_khz,j12_khz,j22_khz,zz_khz,error\n";
  char buf[512];
  for (const auto& pt : sweep.points) {
    if (pt.report) {
      const auto& r = *pt.report;
      std::snprintf(buf, sizeof(buf), "%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.3f,%.3f,%.3f,%.3f,%.3f,",
                    pt.flux, r.w01_q1, r.w12_q1, r.w01_q2, r.w12_q2, r.coupler_ghz, r.j11,
                    r.j21, r.j12, r.j22, r.zz.at("ZZ"));
      out << buf;
    } else {
      std::snprintf(buf, sizeof(buf), "%.6f,,,,,,,,,,,", pt.flux);
      out << buf;
    }
    std::string err = pt.error;
    std::replace(err.begin(), err.end(), ',', ';');
    out << err << '\n';
  }
  return out.str();
}

ToyCouplings toy_couplings(const DeviceParams& p, double flux) {
  const SpectrumReport r = labeled_spectrum(p.at_flux(flux));
  return toy_couplings(p, flux, r.w01_q1, r.w01_q2);
}

ToyCouplings toy_couplings(const DeviceParams& p, double flux, double w1_ghz, double w2_ghz) {
  const double cos_term = std::cos(2.0 * kPi * flux);
  require(cos_term > 0.0, ErrorCode::InvalidArgument,
          "toy model needs cos(2 pi flux) > 0");
  require(p.e_jc > 0.0, ErrorCode::InvalidArgument, "toy model needs E_Jc > 0");
  require(w1_ghz > 0.0 && w2_ghz > 0.0, ErrorCode::InvalidArgument,
          "transmon frequencies must be positive");
  const double w = std::sqrt(w1_ghz * w2_ghz);
  ToyCouplings g;
  g.g1_mhz = std::sqrt(p.e_j1 * p.e_j2) / (2.0 * p.e_jc * cos_term) * w * 1e3;
  // Capacitive divider C12 / (2 sqrt(C1 C2)); the inverted ratio is off by
  // five orders of magnitude for realistic pads.
  g.g2_mhz = p.c_q12 / (2.0 * std::sqrt(p.c_q1 * p.c_q2)) * w * 1e3;
  return g;
}

}  // namespace qutrit
