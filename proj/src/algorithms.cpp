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

#include "qutrit/algorithms.hpp"

#include <cmath>

namespace qutrit {

namespace {

bool is_x_family(LogicalGate g) {
  return g == LogicalGate::I || g == LogicalGate::X || g == LogicalGate::Xsq;
}

bool is_z_family(LogicalGate g) { return g == LogicalGate::Z || g == LogicalGate::Zsq; }

int x_power(LogicalGate g) {
  return g == LogicalGate::X ? 1 : g == LogicalGate::Xsq ? 2 : 0;
}

int z_power(LogicalGate g) {
  return g == LogicalGate::Z ? 1 : g == LogicalGate::Zsq ? 2 : 0;
}

std::string power_name(LogicalGate g) {
  switch (g) {
    case LogicalGate::Xsq: return "X²";
    case LogicalGate::Zsq: return "Z²";
    default: return std::string(to_string(g));
  }
}

std::string term(int coefficient, const char* var) {
  return coefficient == 1 ? std::string(var) : "(2 ⊙ " + std::string(var) + ")";
}

Circuit skeleton(LogicalGate w1, LogicalGate w2) {
  Circuit c(2);
  c.add_parallel({decompose_single(LogicalGate::H, 0), decompose_single(LogicalGate::H, 1)});
  c.add_parallel({decompose_single(w1, 0), decompose_single(w2, 1)});
  c.add_parallel({decompose_single(LogicalGate::Hdag, 0), decompose_single(LogicalGate::Hdag, 1)});
  return c;
}

}  // namespace

DJOracle::DJOracle(LogicalGate w1, LogicalGate w2) : w1_(w1), w2_(w2) {
  for (LogicalGate g : {w1, w2}) {
    if (!is_x_family(g) && !is_z_family(g)) {
      throw Error(ErrorCode::InvalidArgument,
                  "oracle gates must be I, X, X², Z or Z², got " + std::string(to_string(g)));
    }
  }
}

OracleKind DJOracle::kind() const {
  return is_x_family(w1_) && is_x_family(w2_) ? OracleKind::Constant : OracleKind::Balanced;
}

int DJOracle::evaluate(int a, int b) const {
  if (a < 0 || a > 2 || b < 0 || b > 2) throw Error(ErrorCode::InvalidArgument, "inputs are trits");
  return (z_power(w1_) * a + z_power(w2_) * b + x_power(w1_) + x_power(w2_)) % 3;
}

int DJOracle::constant_value() const {
  if (kind() != OracleKind::Constant) return -1;
  return (x_power(w1_) + x_power(w2_)) % 3;
}

std::string DJOracle::classical_function() const {
  const int za = z_power(w1_), zb = z_power(w2_);
  const int c = (x_power(w1_) + x_power(w2_)) % 3;
  const std::string k = std::to_string(c);
  if (za && zb) return term(za, "A") + " ⊕ " + term(zb, "B");
  if (za) return term(za, "A") + " ⊕ " + k;
  if (zb) return k + " ⊕ " + term(zb, "B");
  return k;
}

std::string DJOracle::name() const { return power_name(w1_) + "⊗" + power_name(w2_); }

std::vector<DJOracle> constant_oracles() {
  const LogicalGate xs[] = {LogicalGate::I, LogicalGate::X, LogicalGate::Xsq};
  std::vector<DJOracle> out;
  for (LogicalGate a : xs) {
    for (LogicalGate b : xs) out.emplace_back(a, b);
  }
  return out;
}

std::vector<DJOracle> balanced_oracle_table() {
  using G = LogicalGate;
  return {{G::Z, G::I},    {G::I, G::Z},    {G::Z, G::X},     {G::X, G::Z},
          {G::Z, G::Xsq},  {G::Xsq, G::Z},  {G::Zsq, G::I},   {G::I, G::Zsq},
          {G::Zsq, G::X},  {G::X, G::Zsq},  {G::Zsq, G::Xsq}, {G::Xsq, G::Zsq},
          {G::Z, G::Z},    {G::Z, G::Zsq},  {G::Zsq, G::Z},   {G::Zsq, G::Zsq}};
}

std::vector<DJOracle> all_dj_oracles() {
  std::vector<DJOracle> out = constant_oracles();
  for (const auto& o : balanced_oracle_table()) out.push_back(o);
  return out;
}

Circuit dj_circuit(const DJOracle& oracle) { return skeleton(oracle.w1(), oracle.w2()); }

OracleKind dj_classify(const ProbDist& dist) {
  return dist[0] > 0.5 ? OracleKind::Constant : OracleKind::Balanced;
}

BasisLabel BVString::label() const { return BasisLabel::from_digits({s[0], s[1]}); }

std::string BVString::to_string() const { return label().to_string(); }

Circuit bv_circuit(const BVString& s) {
  const LogicalGate z[] = {LogicalGate::I, LogicalGate::Z, LogicalGate::Zsq};
  const BasisLabel checked = s.label();
  return skeleton(z[checked.digits()[0]], z[checked.digits()[1]]);
}

BVString bv_decode(const ProbDist& dist) {
  if (dist.size() != 9) throw Error(ErrorCode::DimensionMismatch, "BV decode needs two qutrits");
  std::size_t best = 0;
  for (std::size_t i = 1; i < dist.size(); ++i) {
    if (dist[i] > dist[best]) best = i;
  }
  const auto d = BasisLabel::from_index(2, static_cast<int>(best)).digits();
  return {{d[0], d[1]}};
}

Circuit grover_circuit(const GroverSpec& spec) {
  if (spec.iterations != 1 && spec.iterations != 2) {
    throw Error(ErrorCode::InvalidArgument, "Grover iterations must be 1 or 2");
  }
  if (spec.target.num_qutrits() != 2) {
    throw Error(ErrorCode::InvalidArgument, "Grover target must be a two-qutrit label");
  }
  const auto h0 = decompose_single(LogicalGate::H, 0), h1 = decompose_single(LogicalGate::H, 1);
  const auto hd0 = decompose_single(LogicalGate::Hdag, 0);
  const auto hd1 = decompose_single(LogicalGate::Hdag, 1);
  const BasisLabel zero = BasisLabel::from_digits({0, 0});

  Circuit c(2);
  c.add_parallel({h0, h1});
  for (int k = 0; k < spec.iterations; ++k) {
    c.append(compile_cphase(kPi, spec.target));
    c.add_parallel({hd0, hd1});
    c.append(compile_cphase(kPi, zero));
    c.add_parallel({h0, h1});
  }
  return c;
}

double grover_ideal_success(int iterations) {
  const double s = std::sin((2 * iterations + 1) * std::asin(1.0 / 3.0));
  return s * s;
}

ClassicalBaselines classical_baselines() {
  return {0.5, 1.0 / 3.0, 1.0 / 9.0, 1.0 / 9.0 + (8.0 / 9.0) * (1.0 / 8.0)};
}

long long dj_classical_query_count(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "qutrit count must be >= 1");
  if (n > 38) throw Error(ErrorCode::InvalidArgument, "query count overflows");
  long long p = 1;
  for (int k = 1; k < n; ++k) p *= 3;
  return p + 1;
}

}  // namespace qutrit
