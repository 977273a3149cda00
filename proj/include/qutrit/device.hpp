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

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qutrit/core.hpp"

namespace qutrit {

inline constexpr double kOperatingFlux = 0.185;

// Transmon - SQUID coupler - transmon circuit. Capacitances in fF, Josephson
// energies in GHz, flux in units of the flux quantum.
struct DeviceParams {
  double c_q1 = 178.0;
  double c_q2 = 131.0;
  double c_c = 193.6;
  double c_q12 = 2.0;
  double e_j1 = 13.6;
  double e_j2 = 13.3;
  double e_jc = 1140.0;
  double flux = kOperatingFlux;
  int n_levels = 12;         // Fock levels per transmon mode
  int n_levels_coupler = 5;  // Fock levels of the coupler mode

  void validate() const;
  DeviceParams at_flux(double phi) const;
};

// (2e)^2 / (2h) in GHz fF: charging energy scale of 1 fF.
double charge_energy_constant();

RealMatrix capacitance_matrix(const DeviceParams& p);
// Quadratic forms of the linearized circuit: H2 = n^T A n + phi^T B phi.
RealMatrix kinetic_form(const DeviceParams& p);
RealMatrix potential_form(const DeviceParams& p);

struct NormalModes {
  RealMatrix u;        // node flux = u * dressed flux; columns ordered q1, q2, coupler
  RealVector c_tilde;  // coefficient of n~_k^2
  RealVector d_tilde;  // coefficient of phi~_k^2
  RealVector frequencies() const;  // 2 sqrt(C~ D~), GHz
};

NormalModes normal_mode_transform(const DeviceParams& p);

struct HamiltonianOptions {
  // false keeps only the quadratic normal form (harmonic reference).
  bool include_nonlinear = true;
};

// Dense truncated Hamiltonian (GHz) on n_levels x n_levels x n_levels_coupler.
RealMatrix build_full_hamiltonian(const DeviceParams& p, const HamiltonianOptions& options = {});

struct LabeledLevel {
  int m;
  int n;
  double energy_ghz;  // relative to the ground state
  double overlap;     // with the bare product state |m, n, 0>
};

struct SpectrumReport {
  double flux = 0.0;
  double w01_q1 = 0.0, w12_q1 = 0.0, w01_q2 = 0.0, w12_q2 = 0.0;  // GHz
  double coupler_ghz = 0.0;                                       // normal-mode frequency
  double j11 = 0.0, j21 = 0.0, j12 = 0.0, j22 = 0.0;              // kHz
  // kHz. "ZZ" is (E11-E01)-(E10-E00); the rest are keyed by their formula.
  std::map<std::string, double> zz;
  std::vector<LabeledLevel> levels;
  std::vector<std::string> ambiguous;
  bool sweet_spot = false;

  double energy(int m, int n) const;
};

SpectrumReport labeled_spectrum(const DeviceParams& p);

// Static ZZ combinations reconstructed from the J polynomial alone.
std::map<std::string, double> zz_from_j(double j11, double j21, double j12, double j22);

struct SweepPoint {
  double flux;
  std::optional<SpectrumReport> report;
  std::string error;
};

struct FluxSweep {
  std::vector<SweepPoint> points;
  std::optional<double> j11_min_flux;  // zero crossing, else location of min |J11|
  bool j11_interior_minimum = false;
  bool w01_monotone_decreasing = false;
};

std::vector<double> linear_grid(double from, double to, int steps);
FluxSweep flux_sweep(const DeviceParams& p, std::span<const double> flux_grid);
std::string sweep_csv(const FluxSweep& sweep);

struct ToyCouplings {
  double g1_mhz;
  double g2_mhz;
};

// Adiabatic toy model. Transmon frequencies come from labeled_spectrum unless
// given explicitly (GHz).
ToyCouplings toy_couplings(const DeviceParams& p, double flux);
ToyCouplings toy_couplings(const DeviceParams& p, double flux, double w1_ghz, double w2_ghz);

}  // namespace qutrit
