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

#include <string>
#include <string_view>

#include "qutrit/gates.hpp"

namespace qutrit {

// Line-oriented circuit format.
//
//   file        := line*
//   line        := header | moment | comment | blank
//   header      := "qutrits" INT            (first non-comment line)
//   moment      := instruction (WS instruction)*
//   instruction := KIND "(" targets ";" params ";" duration_ns ")"
//   targets     := INT ("," INT)*
//   params      := REAL ("," REAL)*
//   KIND        := "R01" | "R12" | "VPHASE" | "CP21" | "CP22"
//   comment     := "#" any text to end of line
//
// Angles are radians, durations nanoseconds. Reals are written with 17
// significant digits so that parse(to_text(c)) reproduces c exactly.
std::string to_text(const Circuit& circuit);
Circuit parse_circuit(std::string_view text);

}  // namespace qutrit
