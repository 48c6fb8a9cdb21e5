// Copyright 2026 The ecrkit authors
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

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ecrkit/gates.hpp"

namespace ecrkit {

constexpr int kMaxQubits = 16;       // library bound on circuit width
constexpr int kMaxUnitaryQubits = 12;  // full-unitary construction bound

/// One gate application. Instruction order is temporal: the first
/// instruction of a circuit acts first.
struct Instruction {
  std::string gate;
  std::vector<int> qubits;
  std::vector<double> params;
};

struct Circuit {
  int n_qubits = 1;
  std::vector<Instruction> instructions;
};

/// Allowed two-qubit interaction pairs (unordered).
struct CouplingMap {
  int n_qubits = 0;
  std::set<std::pair<int, int>> edges;  // normalised to (min, max)

  static CouplingMap linear(int n) {
    CouplingMap m;
    m.n_qubits = n;
    for (int i = 0; i + 1 < n; ++i) m.edges.insert({i, i + 1});
    return m;
  }

  void add_edge(int a, int b) {
    if (a == b) throw Error("coupling map: self edge " + std::to_string(a));
    if (a < 0 || b < 0 || a >= n_qubits || b >= n_qubits)
      throw QubitOutOfRange("coupling map: edge (" + std::to_string(a) + "," +
                            std::to_string(b) + ") out of range");
    edges.insert({std::min(a, b), std::max(a, b)});
  }

  bool has_edge(int a, int b) const {
    return edges.count({std::min(a, b), std::max(a, b)}) > 0;
  }
};

struct ConnectivityViolation {
  std::size_t instruction_index = 0;
  int q0 = 0;
  int q1 = 0;
};

inline Circuit make_circuit(int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits)
    throw Error("circuit width " + std::to_string(n_qubits) + " outside [1, " +
                std::to_string(kMaxQubits) + "]");
  Circuit c;
  c.n_qubits = n_qubits;
  return c;
}

inline void validate_instruction(const Circuit& c, const Instruction& inst) {
  const GateDef& g = gate_or_throw(inst.gate);
  if (static_cast<int>(inst.qubits.size()) != g.arity)
    throw Error("gate '" + inst.gate + "' expects " + std::to_string(g.arity) +
                " qubit(s), got " + std::to_string(inst.qubits.size()));
  if (static_cast<int>(inst.params.size()) != g.param_count)
    throw WrongParamCount("gate '" + inst.gate + "' expects " +
                          std::to_string(g.param_count) + " parameter(s)");
  for (std::size_t i = 0; i < inst.qubits.size(); ++i) {
    const int q = inst.qubits[i];
    if (q < 0 || q >= c.n_qubits)
      throw QubitOutOfRange("qubit " + std::to_string(q) + " out of range for " +
                            std::to_string(c.n_qubits) + "-qubit circuit");
    for (std::size_t j = i + 1; j < inst.qubits.size(); ++j)
      if (inst.qubits[j] == q)
        throw DuplicateQubit("duplicate qubit " + std::to_string(q) + " in '" +
                             inst.gate + "'");
  }
}

inline void append(Circuit& c, const std::string& gate, std::vector<int> qubits,
                   std::vector<double> params = {}) {
  Instruction inst{gate, std::move(qubits), std::move(params)};
  validate_instruction(c, inst);
  c.instructions.push_back(std::move(inst));
}

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

/// Angle literals: decimal, or multiples of pi such as "pi/4", "-pi/2",
/// "3pi/4", "pi", "2pi".
inline double parse_angle(const std::string& tok, int line) {
  const std::size_t pp = tok.find("pi");
  if (pp != std::string::npos) {
    std::string head = tok.substr(0, pp);  // optional sign and multiplier
    std::string tail = tok.substr(pp + 2); // optional /denominator
    double sign = 1.0;
    if (!head.empty() && (head[0] == '+' || head[0] == '-')) {
      if (head[0] == '-') sign = -1.0;
      head = head.substr(1);
    }
    double k = 1.0;
    if (!head.empty()) {
      std::size_t used = 0;
      try {
        k = std::stod(head, &used);
      } catch (...) {
        throw SyntaxError(line, "bad angle '" + tok + "'");
      }
      if (used != head.size()) throw SyntaxError(line, "bad angle '" + tok + "'");
    }
    double d = 1.0;
    if (!tail.empty()) {
      if (tail[0] != '/') throw SyntaxError(line, "bad angle '" + tok + "'");
      std::string den = tail.substr(1);
      std::size_t used = 0;
      try {
        d = std::stod(den, &used);
      } catch (...) {
        throw SyntaxError(line, "bad angle '" + tok + "'");
      }
      if (used != den.size() || d == 0.0)
        throw SyntaxError(line, "bad angle '" + tok + "'");
    }
    return sign * k * M_PI / d;
  }
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(tok, &used);
  } catch (...) {
    throw SyntaxError(line, "bad angle '" + tok + "'");
  }
  if (used != tok.size()) throw SyntaxError(line, "bad angle '" + tok + "'");
  return v;
}

/// Shortest of a 12-significant-digit decimal and a pi-fraction k·π/d
/// (d ≤ 8, matched within 1e-12). Stable under emit∘parse.
inline std::string format_angle(double value) {
  char dec[64];
  std::snprintf(dec, sizeof dec, "%.12g", value);
  std::string best = dec;
  for (int d = 1; d <= 8; ++d) {
    const long long k = std::llround(value * d / M_PI);
    if (k == 0) continue;
    if (std::abs(value - static_cast<double>(k) * M_PI / d) > 1e-12) continue;
    std::string s = k < 0 ? "-" : "";
    const long long ak = k < 0 ? -k : k;
    if (ak != 1) s += std::to_string(ak);
    s += "pi";
    if (d != 1) s += "/" + std::to_string(d);
    if (s.size() <= best.size()) best = s;
    break;  // smallest denominator wins
  }
  return best;
}

}  // namespace detail

/// Parse the plain-text circuit format:
///   qubits N
///   <gate>[(<angle>)] <q0> [<q1> [<q2>]]
/// '#' starts a comment; blank lines are ignored.
inline Circuit parse(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  bool have_header = false;
  Circuit c;
  while (std::getline(in, raw)) {
    ++line;
    std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    const std::string s = detail::trim(raw);
    if (s.empty()) continue;
    const std::vector<std::string> toks = detail::split_ws(s);

    if (!have_header) {
      if (toks.size() != 2 || toks[0] != "qubits")
        throw SyntaxError(line, "expected 'qubits N'");
      int n = 0;
      try {
        std::size_t used = 0;
        n = std::stoi(toks[1], &used);
        if (used != toks[1].size()) throw std::invalid_argument("");
      } catch (...) {
        throw SyntaxError(line, "bad qubit count '" + toks[1] + "'");
      }
      if (n < 1 || n > kMaxQubits)
        throw SyntaxError(line, "qubit count " + std::to_string(n) +
                                    " outside [1, " + std::to_string(kMaxQubits) + "]");
      c.n_qubits = n;
      have_header = true;
      continue;
    }

    // Gate mnemonic, optionally with a single parenthesised angle.
    std::string head = toks[0];
    std::string name = head;
    std::vector<double> params;
    const std::size_t paren = head.find('(');
    if (paren != std::string::npos) {
      name = head.substr(0, paren);
      std::string inner = head.substr(paren + 1);
      if (inner.empty() || inner.back() != ')')
        throw SyntaxError(line, "unterminated parameter list");
      inner.pop_back();
      inner = detail::trim(inner);
      if (inner.empty()) throw SyntaxError(line, "empty parameter list");
      params.push_back(detail::parse_angle(inner, line));
    }
    const GateDef* g = find_gate(name);
    if (!g) throw UnknownGate("line " + std::to_string(line) + ": unknown gate '" + name + "'");
    if (static_cast<int>(params.size()) != g->param_count)
      throw SyntaxError(line, "gate '" + name + "' expects " +
                                  std::to_string(g->param_count) + " parameter(s)");
    if (static_cast<int>(toks.size()) - 1 != g->arity)
      throw SyntaxError(line, "gate '" + name + "' expects " +
                                  std::to_string(g->arity) + " qubit(s)");
    std::vector<int> qubits;
    for (std::size_t i = 1; i < toks.size(); ++i) {
      int q = 0;
      try {
        std::size_t used = 0;
        q = std::stoi(toks[i], &used);
        if (used != toks[i].size()) throw std::invalid_argument("");
      } catch (...) {
        throw SyntaxError(line, "bad qubit index '" + toks[i] + "'");
      }
      if (q < 0 || q >= c.n_qubits)
        throw QubitOutOfRange("line " + std::to_string(line) + ": qubit " +
                              std::to_string(q) + " out of range");
      if (std::find(qubits.begin(), qubits.end(), q) != qubits.end())
        throw DuplicateQubit("line " + std::to_string(line) + ": duplicate qubit " +
                             std::to_string(q));
      qubits.push_back(q);
    }
    c.instructions.push_back({name, std::move(qubits), std::move(params)});
  }
  if (!have_header) throw SyntaxError(line, "missing 'qubits N' header");
  return c;
}

/// Canonical text form; parse(emit(c)) is structurally identical to c and
/// emit∘parse∘emit is byte-stable.
inline std::string emit(const Circuit& c) {
  std::string out = "qubits " + std::to_string(c.n_qubits) + "\n";
  for (const Instruction& inst : c.instructions) {
    out += inst.gate;
    if (!inst.params.empty())
      out += "(" + detail::format_angle(inst.params[0]) + ")";
    for (int q : inst.qubits) out += " " + std::to_string(q);
    out += "\n";
  }
  return out;
}

namespace detail {

/// In-place U ← G_embedded · U, with G acting on the given qubits
/// (qubits[0] is the most significant index of G).
inline void apply_embedded(CMat& u, const CMat& g, const std::vector<int>& qubits,
                           int n_qubits) {
  const int k = static_cast<int>(qubits.size());
  const Eigen::Index dim = u.rows();
  const int sub = 1 << k;
  // Bit position (from LSB) of each gate qubit; qubit 0 is most significant.
  std::vector<int> shift(static_cast<std::size_t>(k));
  Eigen::Index mask = 0;
  for (int m = 0; m < k; ++m) {
    shift[static_cast<std::size_t>(m)] = n_qubits - 1 - qubits[static_cast<std::size_t>(m)];
    mask |= Eigen::Index(1) << shift[static_cast<std::size_t>(m)];
  }
  std::vector<Eigen::Index> offset(static_cast<std::size_t>(sub));
  for (int gidx = 0; gidx < sub; ++gidx) {
    Eigen::Index off = 0;
    for (int m = 0; m < k; ++m)
      if ((gidx >> (k - 1 - m)) & 1) off |= Eigen::Index(1) << shift[static_cast<std::size_t>(m)];
    offset[static_cast<std::size_t>(gidx)] = off;
  }
  std::vector<cplx> tmp(static_cast<std::size_t>(sub));
  for (Eigen::Index base = 0; base < dim; ++base) {
    if (base & mask) continue;
    for (Eigen::Index col = 0; col < dim; ++col) {
      for (int gi = 0; gi < sub; ++gi) tmp[static_cast<std::size_t>(gi)] = u(base + offset[static_cast<std::size_t>(gi)], col);
      for (int go = 0; go < sub; ++go) {
        cplx acc = 0;
        for (int gi = 0; gi < sub; ++gi) acc += g(go, gi) * tmp[static_cast<std::size_t>(gi)];
        u(base + offset[static_cast<std::size_t>(go)], col) = acc;
      }
    }
  }
}

}  // namespace detail

/// Full unitary of the circuit, instructions applied in temporal order:
/// U = U_last · … · U_first.
inline CMat unitary_of(const Circuit& c) {
  if (c.n_qubits > kMaxUnitaryQubits)
    throw TooManyQubits("unitary_of: " + std::to_string(c.n_qubits) + " qubits exceeds " +
                        std::to_string(kMaxUnitaryQubits));
  const Eigen::Index dim = Eigen::Index(1) << c.n_qubits;
  CMat u = CMat::Identity(dim, dim);
  for (const Instruction& inst : c.instructions) {
    validate_instruction(c, inst);
    const CMat g = gate_matrix(inst.gate, inst.params);
    detail::apply_embedded(u, g, inst.qubits, c.n_qubits);
  }
  return u;
}

/// Longest chain of instructions sharing qubits (greedy layering).
inline int depth(const Circuit& c) {
  std::vector<int> level(static_cast<std::size_t>(c.n_qubits), 0);
  int d = 0;
  for (const Instruction& inst : c.instructions) {
    int l = 0;
    for (int q : inst.qubits) l = std::max(l, level[static_cast<std::size_t>(q)]);
    ++l;
    for (int q : inst.qubits) level[static_cast<std::size_t>(q)] = l;
    d = std::max(d, l);
  }
  return d;
}

inline std::map<std::string, int> gate_counts(const Circuit& c) {
  std::map<std::string, int> counts;
  for (const Instruction& inst : c.instructions) ++counts[inst.gate];
  return counts;
}

inline int two_qubit_count(const Circuit& c) {
  int n = 0;
  for (const Instruction& inst : c.instructions)
    if (inst.qubits.size() == 2) ++n;
  return n;
}

/// Violations of a coupling map: every 2-qubit instruction whose pair is not
/// an edge, and every 3-qubit instruction with any missing pair (multi-qubit
/// gates must be lowered before they can satisfy hardware connectivity).
inline std::vector<ConnectivityViolation> validate_connectivity(
    const Circuit& c, const CouplingMap& m) {
  if (m.n_qubits < c.n_qubits)
    throw Error("coupling map covers " + std::to_string(m.n_qubits) +
                " qubits, circuit needs " + std::to_string(c.n_qubits));
  std::vector<ConnectivityViolation> out;
  for (std::size_t idx = 0; idx < c.instructions.size(); ++idx) {
    const Instruction& inst = c.instructions[idx];
    if (inst.qubits.size() < 2) continue;
    for (std::size_t i = 0; i < inst.qubits.size(); ++i)
      for (std::size_t j = i + 1; j < inst.qubits.size(); ++j)
        if (!m.has_edge(inst.qubits[i], inst.qubits[j]))
          out.push_back({idx, inst.qubits[i], inst.qubits[j]});
  }
  return out;
}

inline Circuit concat(const Circuit& a, const Circuit& b) {
  if (a.n_qubits != b.n_qubits) throw DimMismatch("concat: width mismatch");
  Circuit c = a;
  c.instructions.insert(c.instructions.end(), b.instructions.begin(),
                        b.instructions.end());
  return c;
}

}  // namespace ecrkit
