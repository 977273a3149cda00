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

#include "qutrit/circuit_text.hpp"

#include <cctype>
#include <charconv>
#include <optional>
#include <cstdio>
#include <sstream>
#include <vector>

namespace qutrit {

namespace {

std::string fmt_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

[[noreturn]] void fail(int line, const std::string& what) {
  throw Error(ErrorCode::Parse, "line " + std::to_string(line) + ": " + what);
}

double parse_real(std::string_view s, int line) {
  // std::from_chars for double is available in libstdc++ 11.
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) fail(line, "bad number '" + std::string(s) + "'");
  return v;
}

int parse_int(std::string_view s, int line) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) fail(line, "bad integer '" + std::string(s) + "'");
  return v;
}

}  // namespace

std::string to_text(const Circuit& circuit) {
  std::ostringstream os;
  os << "qutrits " << circuit.num_qutrits() << '\n';
  for (const auto& moment : circuit.moments()) {
    bool first = true;
    for (const auto& ins : moment) {
      if (!first) os << ' ';
      first = false;
      os << to_string(ins.kind()) << '(';
      for (std::size_t i = 0; i < ins.targets().size(); ++i) {
        os << (i ? "," : "") << ins.targets()[i];
      }
      os << "; ";
      for (std::size_t i = 0; i < ins.params().size(); ++i) {
        os << (i ? "," : "") << fmt_real(ins.params()[i]);
      }
      os << "; " << fmt_real(ins.duration_ns()) << ')';
    }
    os << '\n';
  }
  return os.str();
}

Circuit parse_circuit(std::string_view text) {
  std::optional<Circuit> circuit;
  int line_no = 0;
  for (std::string_view rest = text; !rest.empty();) {
    const std::size_t nl = rest.find('\n');
    std::string_view line = rest.substr(0, nl);
    rest = nl == std::string_view::npos ? std::string_view{} : rest.substr(nl + 1);
    ++line_no;
    if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;

    if (!circuit) {
      constexpr std::string_view kHeader = "qutrits";
      if (line.substr(0, kHeader.size()) != kHeader) fail(line_no, "expected 'qutrits <n>' header");
      circuit.emplace(parse_int(trim(line.substr(kHeader.size())), line_no));
      continue;
    }

    Moment moment;
    while (!line.empty()) {
      const std::size_t open = line.find('(');
      const std::size_t close = line.find(')');
      if (open == std::string_view::npos || close == std::string_view::npos || close < open) {
        fail(line_no, "malformed instruction");
      }
      const GateKind kind = parse_gate_kind(trim(line.substr(0, open)));
      const auto fields = split(line.substr(open + 1, close - open - 1), ';');
      if (fields.size() != 3) fail(line_no, "instruction needs 'targets; params; duration'");
      std::vector<int> targets;
      for (auto t : split(fields[0], ',')) targets.push_back(parse_int(t, line_no));
      std::vector<double> params;
      for (auto p : split(fields[1], ',')) params.push_back(parse_real(p, line_no));
      try {
        moment.emplace_back(kind, std::move(targets), std::move(params),
                            parse_real(fields[2], line_no));
      } catch (const Error& e) {
        fail(line_no, e.what());
      }
      line = trim(line.substr(close + 1));
    }
    try {
      circuit->add_moment(std::move(moment));
    } catch (const Error& e) {
      fail(line_no, e.what());
    }
  }
  if (!circuit) throw Error(ErrorCode::Parse, "missing 'qutrits <n>' header");
  return *circuit;
}

}  // namespace qutrit
