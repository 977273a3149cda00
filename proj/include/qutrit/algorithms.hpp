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

#include <array>
#include <string>
#include <vector>

#include "qutrit/core.hpp"
#include "qutrit/gates.hpp"

namespace qutrit {

enum class OracleKind { Constant, Balanced };

class DJOracle {
 public:
  // W1, W2 from {I, X, Xsq, Z, Zsq}.
  DJOracle(LogicalGate w1, LogicalGate w2);

  LogicalGate w1() const { return w1_; }
  LogicalGate w2() const { return w2_; }
  OracleKind kind() const;
  // Classical ternary function f(A, B) = zA*A + zB*B + c (mod 3) where Z^z
  // contributes a coefficient and X^x a constant.
  int evaluate(int a, int b) const;
  // For constant oracles, the output value; -1 otherwise.
  int constant_value() const;
  // Rendering in the form "A ⊕ 1", "(2 ⊙ A) ⊕ B", ...
  std::string classical_function() const;
  std::string name() const;  // e.g. "Z⊗Xsq"

 private:
  LogicalGate w1_;
  LogicalGate w2_;
};

std::vector<DJOracle> all_dj_oracles();        // 25, constant ones first
std::vector<DJOracle> constant_oracles();      // 9
std::vector<DJOracle> balanced_oracle_table(); // 16, table order

Circuit dj_circuit(const DJOracle& oracle);
OracleKind dj_classify(const ProbDist& dist);

struct BVString {
  std::array<int, 2> s;
  BasisLabel label() const;
  std::string to_string() const;
};

Circuit bv_circuit(const BVString& s);
BVString bv_decode(const ProbDist& dist);

struct GroverSpec {
  BasisLabel target;
  int iterations;
};

Circuit grover_circuit(const GroverSpec& spec);
// sin^2((2k + 1) asin(1/3)) for a single marked item among nine.
double grover_ideal_success(int iterations);

struct ClassicalBaselines {
  double dj;
  double bv;
  double grover1;
  double grover2;
};

ClassicalBaselines classical_baselines();
long long dj_classical_query_count(int n);

}  // namespace qutrit
