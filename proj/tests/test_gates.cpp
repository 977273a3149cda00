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

#include <doctest.h>

#include <cmath>
#include <map>
#include <random>

#include "qutrit/algorithms.hpp"
#include "qutrit/circuit_text.hpp"
#include "qutrit/gates.hpp"

using namespace qutrit;

namespace {

Matrix h_oracle() {
  // H_jk = omega^(jk) / sqrt(3).
  const Complex omega = std::polar(1.0, 2.0 * kPi / 3.0);
  Matrix h(3, 3);
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) h(j, k) = std::pow(omega, j * k) / std::sqrt(3.0);
  }
  return h;
}

Circuit single(LogicalGate g, PhysicalQutrit q = PhysicalQutrit::Q1) {
  Circuit c(1);
  c.add_parallel({decompose_single(g, 0, q)});
  return c;
}

Vector ket(int d, int i) {
  Vector v = Vector::Zero(d);
  v(i) = 1.0;
  return v;
}

}  // namespace

TEST_CASE("native rotation matrices") {
  const double s = 1.0 / std::sqrt(2.0);
  CHECK((r01_matrix(0.0, kPi) * ket(3, 0) - ket(3, 1)).norm() < 1e-12);
  CHECK((r01_matrix(1.3, 0.0) - Matrix::Identity(3, 3)).norm() < 1e-15);
  Vector plus = Vector::Zero(3);
  plus << s, s, 0.0;
  CHECK((r01_matrix(0.0, kPi / 2.0) * ket(3, 0) - plus).norm() < 1e-12);

  const Matrix x12 = r12_matrix(0.0, kPi);
  CHECK(std::norm(x12(2, 1)) == doctest::Approx(1.0));
  CHECK(std::norm(x12(1, 2)) == doctest::Approx(1.0));
  CHECK((r12_matrix(0.0, 0.0) - Matrix::Identity(3, 3)).norm() < 1e-15);
  CHECK((r12_matrix(kPi / 2.0, kPi) * ket(3, 1) - Complex(0.0, 1.0) * ket(3, 2)).norm() < 1e-12);

  const Matrix v = vphase_matrix(kPi, kPi / 2.0);
  CHECK(std::abs(v(1, 1) + 1.0) < 1e-12);
  CHECK(std::abs(v(2, 2) - std::polar(1.0, 1.5 * kPi)) < 1e-12);
  CHECK((vphase_matrix(0.0, 0.0) - Matrix::Identity(3, 3)).norm() < 1e-15);
  CHECK((vphase_matrix(2 * kPi / 3, 2 * kPi / 3) - logical_gate(LogicalGate::Z)).norm() < 1e-12);

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ang(-10.0, 10.0);
  for (int i = 0; i < 200; ++i) {
    CHECK(is_unitary(r01_matrix(ang(rng), ang(rng)), 1e-12));
    CHECK(is_unitary(r12_matrix(ang(rng), ang(rng)), 1e-12));
    CHECK(is_unitary(vphase_matrix(ang(rng), ang(rng)), 1e-12));
  }
}

TEST_CASE("logical gates") {
  CHECK((logical_gate(LogicalGate::H) - h_oracle()).norm() < 1e-12);
  Vector uniform = Vector::Constant(3, 1.0 / std::sqrt(3.0));
  CHECK((logical_gate("H") * ket(3, 0) - uniform).norm() < 1e-12);
  CHECK((logical_gate("X") * ket(3, 2) - ket(3, 0)).norm() < 1e-12);
  const Matrix z = logical_gate("Z");
  CHECK((z * z * z - Matrix::Identity(3, 3)).norm() < 1e-12);
  CHECK((logical_gate("Hdag") - h_oracle().adjoint()).norm() < 1e-12);
  CHECK((logical_gate("Xsq") - logical_gate("X") * logical_gate("X")).norm() < 1e-12);
  CHECK((logical_gate("Zsq") - z * z).norm() < 1e-12);
  CHECK_THROWS_AS(logical_gate("Y"), Error);
}

TEST_CASE("single-qutrit decompositions") {
  for (LogicalGate g : {LogicalGate::I, LogicalGate::H, LogicalGate::Hdag, LogicalGate::X,
                        LogicalGate::Xsq, LogicalGate::Z, LogicalGate::Zsq}) {
    CAPTURE(to_string(g));
    for (PhysicalQutrit q : {PhysicalQutrit::Q1, PhysicalQutrit::Q2}) {
      const Circuit c = single(g, q);
      CHECK(equal_up_to_phase(circuit_unitary_explicit(c), logical_gate(g), 1e-10));
      CHECK(equal_up_to_phase(circuit_unitary_framed(c), logical_gate(g), 1e-10));
      CHECK(frame_equivalence_check(c));

      Circuit round = c;
      round.append(single(inverse(g), q));
      CHECK(equal_up_to_phase(circuit_unitary_explicit(round), Matrix::Identity(3, 3), 1e-10));
    }
  }

  const auto h = decompose_single(LogicalGate::H, 0, PhysicalQutrit::Q1);
  REQUIRE(h.size() == 5);
  CHECK(h[3].kind() == GateKind::R01);
  CHECK(h[3].params()[1] == doctest::Approx(2.0 * std::atan(std::sqrt(2.0))));
  int pulses = 0;
  for (const auto& i : h) pulses += i.is_pulse();
  CHECK(pulses == 3);

  const auto z = decompose_single(LogicalGate::Z, 0, PhysicalQutrit::Q1);
  REQUIRE(z.size() == 1);
  CHECK(z[0].kind() == GateKind::VPhase);
  CHECK(z[0].params()[0] == doctest::Approx(2 * kPi / 3));
  CHECK(z[0].params()[1] == doctest::Approx(2 * kPi / 3));

  const auto x = decompose_single(LogicalGate::X, 0, PhysicalQutrit::Q1);
  REQUIRE(x.size() == 2);
  // Time order R12 then R01, i.e. X = R01(0, pi) R12(0, pi).
  CHECK(x[0].kind() == GateKind::R12);
  CHECK(x[1].kind() == GateKind::R01);
  CHECK(equal_up_to_phase(r01_matrix(0, kPi) * r12_matrix(0, kPi), logical_gate("X"), 1e-12));

  Circuit h3 = single(LogicalGate::H);
  h3.append(single(LogicalGate::H));
  h3.append(single(LogicalGate::H));
  const Matrix hh = logical_gate("H");
  CHECK(equal_up_to_phase(circuit_unitary_framed(h3), hh * hh * hh, 1e-10));
}

TEST_CASE("gate durations") {
  CHECK(gate_duration(GateKind::R01, kPi, PhysicalQutrit::Q1) == doctest::Approx(94.98));
  CHECK(gate_duration(GateKind::R12, kPi / 2, PhysicalQutrit::Q2) == doctest::Approx(44.15));
  CHECK(gate_duration(GateKind::VPhase, 1.0, PhysicalQutrit::Q1) == 0.0);
  CHECK(gate_duration(GateKind::CPhaseNative21, kPi, PhysicalQutrit::Q1) == doctest::Approx(55.9));
  CHECK(gate_duration(GateKind::CPhaseNative22, kPi, PhysicalQutrit::Q1) == doctest::Approx(94.0));
  CHECK(gate_duration(GateKind::R01, 1e-6, PhysicalQutrit::Q1) == doctest::Approx(10.0));
  CHECK(single(LogicalGate::H, PhysicalQutrit::Q2).total_duration_ns() ==
        doctest::Approx(147.90).epsilon(1e-4));
  CHECK(single(LogicalGate::Z).total_duration_ns() == 0.0);
  CHECK_THROWS_AS(GateInstruction(GateKind::VPhase, {0}, {0.1, 0.2}, 5.0), Error);
  CHECK_THROWS_AS(GateInstruction(GateKind::CPhaseNative22, {0, 1}, {kPi}, 50.0), Error);
}

TEST_CASE("circuit moments") {
  Circuit c(2);
  const auto r = GateInstruction::r01(0, 0.0, kPi, PhysicalQutrit::Q1);
  CHECK_THROWS_AS(c.add_moment({r, GateInstruction::r12(0, 0.0, kPi, PhysicalQutrit::Q1)}), Error);
  CHECK_THROWS_AS(c.add_moment({GateInstruction::r01(2, 0.0, kPi, PhysicalQutrit::Q1)}), Error);
  c.add_moment({r, GateInstruction::r12(1, 0.0, kPi / 2, PhysicalQutrit::Q2)});
  c.add_moment({GateInstruction::vphase(0, 1.0, 1.0)});
  c.add_moment({GateInstruction::r12(1, 0.0, kPi, PhysicalQutrit::Q2)});
  CHECK(c.moments().size() == 3);
  CHECK(c.total_duration_ns() == doctest::Approx(94.98 + 84.28));
  CHECK(c.pi_pulse_count() == 2);
}

TEST_CASE("phase frame bookkeeping") {
  PhaseFrame f;
  f.advance(0.4, -1.7);
  f.advance(-0.4, 1.7);
  CHECK(f.theta01() == 0.0);
  CHECK(f.theta12() == 0.0);

  Circuit zr(1);
  zr.add_parallel({{GateInstruction::vphase(0, 2 * kPi / 3, 2 * kPi / 3),
                    GateInstruction::r01(0, 0.0, kPi, PhysicalQutrit::Q1)}});
  CHECK(frame_equivalence_check(zr));
  CHECK(frame_equivalence_check(compile_cphase(kPi, BasisLabel::parse("00"))));
  for (const auto& o : all_dj_oracles()) CHECK(frame_equivalence_check(dj_circuit(o)));
}

TEST_CASE("cphase matrices") {
  Matrix expect = Matrix::Identity(9, 9);
  expect(8, 8) = -1.0;
  CHECK((cphase_matrix(kPi, BasisLabel::parse("22")) - expect).norm() < 1e-12);
  CHECK((cphase_matrix(0.0, BasisLabel::parse("12")) - Matrix::Identity(9, 9)).norm() < 1e-15);
  const Matrix xx = tensor(logical_gate("X"), logical_gate("X"));
  CHECK((xx * cphase_matrix(kPi, BasisLabel::parse("22")) * xx.adjoint() -
         cphase_matrix(kPi, BasisLabel::parse("00")))
            .norm() < 1e-12);
  CHECK_THROWS_AS(cphase_matrix(kPi, BasisLabel::parse("2")), Error);
}

TEST_CASE("compiled cphase equals the logical gate for every target") {
  const std::map<std::string, int> region = {{"00", 6}, {"01", 4}, {"02", 4},
                                             {"10", 4}, {"11", 2}, {"12", 2},
                                             {"20", 2}, {"21", 0}, {"22", 0}};
  for (int t = 0; t < 9; ++t) {
    const BasisLabel target = BasisLabel::from_index(2, t);
    CAPTURE(target.to_string());
    for (double theta : {kPi, kPi / 2, 8 * kPi / 9, 1.234}) {
      const Circuit c = compile_cphase(theta, target);
      // Brute-force product of the explicit native matrices.
      Matrix u = Matrix::Identity(9, 9);
      for (const Moment& m : c.moments()) {
        for (const GateInstruction& g : m) u = embed_operator(g.matrix(), g.targets(), 2) * u;
      }
      CHECK(equal_up_to_phase(u, cphase_matrix(theta, target), 1e-10));
      CHECK(equal_up_to_phase(circuit_unitary_framed(c), cphase_matrix(theta, target), 1e-10));
    }
    const Circuit c = compile_cphase(kPi, target);
    CHECK(c.pi_pulse_count() == region.at(target.to_string()));
    CHECK(c.count(GateKind::CPhaseNative21) + c.count(GateKind::CPhaseNative22) == 1);
  }
  const Circuit c22 = compile_cphase(kPi, BasisLabel::parse("22"));
  CHECK(c22.instruction_count() == 1);
  CHECK(c22.count(GateKind::CPhaseNative22) == 1);
  const Circuit c21 = compile_cphase(kPi, BasisLabel::parse("21"));
  CHECK(c21.instruction_count() == 1);
  CHECK(c21.count(GateKind::CPhaseNative21) == 1);
  const Circuit c00 = compile_cphase(kPi, BasisLabel::parse("00"));
  CHECK(c00.count(GateKind::R01) + c00.count(GateKind::R12) == 6);
}

TEST_CASE("native cphase pulse model") {
  CHECK(native_cphase_pulse_model(kPi) == doctest::Approx(0.0));
  CHECK(native_cphase_pulse_model(0.0) == doctest::Approx(kPi));
  CHECK(native_cphase_pulse_model(8 * kPi / 9) == doctest::Approx(kPi / 9));
}

TEST_CASE("frame phase calibration recovers injected phases") {
  auto injected = [](double b01, double b12, int q) {
    const int t[] = {q};
    return unitary_process(embed_operator(vphase_matrix(b01, b12), t, 2) *
                           cphase_matrix(0.0, BasisLabel::parse("22")));
  };
  for (int q : {0, 1}) {
    const FramePhases zero = calibrate_frame_phases(injected(0.0, 0.0, q), q);
    CHECK(std::abs(zero.beta01) < 1e-3);
    CHECK(std::abs(zero.beta12) < 1e-3);
    const FramePhases a = calibrate_frame_phases(injected(0.7, 0.0, q), q);
    CHECK(std::abs(a.beta01 - 0.7) < 1e-3);
    const FramePhases b = calibrate_frame_phases(injected(0.3, -1.1, q), q);
    CHECK(std::abs(b.beta01 - 0.3) < 1e-3);
    CHECK(std::abs(b.beta12 + 1.1) < 1e-3);
  }
  // A process that erases coherence leaves nothing to fit.
  const TwoQutritProcess dephase = [](const Matrix& rho) {
    return Matrix(rho.diagonal().asDiagonal());
  };
  try {
    calibrate_frame_phases(dephase, 0);
    FAIL("expected a fit failure");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::FitFailure);
  }
  CalibrationOptions few;
  few.sweep_points = 8;
  CHECK_THROWS_AS(calibrate_frame_phases(injected(0, 0, 0), 0, few), Error);
}

TEST_CASE("pulse envelope") {
  const double t0 = 0.0, t1 = 60.0, s = kEnvelopeSigmaNs;
  CHECK(pulse_envelope(30.0, t0, t1, s, 0.8) == doctest::Approx(0.8));
  CHECK(pulse_envelope(-1.0, t0, t1, s, 0.8) == 0.0);
  CHECK(pulse_envelope(61.0, t0, t1, s, 0.8) == 0.0);
  CHECK(pulse_envelope(t0, t0, t1, s, 0.8) == doctest::Approx(0.8 * std::exp(-2.0)));
  CHECK(pulse_envelope(t1, t0, t1, s, 0.8) == doctest::Approx(0.8 * std::exp(-2.0)));
  CHECK(pulse_envelope(t0 + 2 * s, t0, t1, s, 0.8) == doctest::Approx(0.8));
  CHECK_THROWS_AS(pulse_envelope(1.0, 0.0, 9.0, s, 1.0), Error);
}

TEST_CASE("circuit text round trip") {
  const Circuit c = grover_circuit({BasisLabel::parse("12"), 2});
  const std::string text = to_text(c);
  const Circuit back = parse_circuit(text);
  CHECK(to_text(back) == text);
  CHECK(back.total_duration_ns() == c.total_duration_ns());
  CHECK((circuit_unitary_explicit(back) - circuit_unitary_explicit(c)).norm() == 0.0);

  const Circuit parsed = parse_circuit(
      "# two moments\n"
      "qutrits 2\n"
      "R01(0; 0, 3.141592653589793; 94.98) VPHASE(1; 1, 2; 0)\n"
      "\n"
      "CP22(0,1; 3.141592653589793; 94)\n");
  CHECK(parsed.moments().size() == 2);
  CHECK(parsed.count(GateKind::CPhaseNative22) == 1);

  CHECK_THROWS_AS(parse_circuit("qutrits 2\nR01(0; 0; 10)\n"), Error);
  CHECK_THROWS_AS(parse_circuit("qutrits 2\nFOO(0; 0, 1; 10)\n"), Error);
  CHECK_THROWS_AS(parse_circuit("R01(0; 0, 1; 10)\n"), Error);
  try {
    parse_circuit("qutrits 1\nR01(0; 0, 1; 50)\nR01(0; 0, 1;\n");
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Parse);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}
