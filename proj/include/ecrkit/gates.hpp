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

#include <cmath>
#include <vector>

#include "ecrkit/linalg.hpp"

namespace ecrkit {

/// One entry of the gate registry. matrix_fn must return a unitary of
/// dimension 2^arity for every parameter value.
struct GateDef {
  std::string name;
  int arity = 1;
  int param_count = 0;
  CMat (*matrix_fn)(const std::vector<double>& params) = nullptr;
};

namespace detail {

inline CMat mat2(cplx a, cplx b, cplx c, cplx d) {
  CMat m(2, 2);
  m << a, b, c, d;
  return m;
}

inline CMat gate_id(const std::vector<double>&) { return mat2(1, 0, 0, 1); }
inline CMat gate_x(const std::vector<double>&) { return mat2(0, 1, 1, 0); }
inline CMat gate_y(const std::vector<double>&) {
  return mat2(0, cplx(0, -1), cplx(0, 1), 0);
}
inline CMat gate_z(const std::vector<double>&) { return mat2(1, 0, 0, -1); }
inline CMat gate_h(const std::vector<double>&) {
  const double r = 1.0 / std::sqrt(2.0);
  return mat2(r, r, r, -r);
}
inline CMat gate_s(const std::vector<double>&) { return mat2(1, 0, 0, cplx(0, 1)); }
inline CMat gate_sdg(const std::vector<double>&) { return mat2(1, 0, 0, cplx(0, -1)); }
inline CMat gate_t(const std::vector<double>&) {
  return mat2(1, 0, 0, std::polar(1.0, M_PI / 4));
}
inline CMat gate_tdg(const std::vector<double>&) {
  return mat2(1, 0, 0, std::polar(1.0, -M_PI / 4));
}
// sqrt(X), normalised so that sx·sx = X with no extra phase.
inline CMat gate_sx(const std::vector<double>&) {
  const cplx p(0.5, 0.5), m(0.5, -0.5);
  return mat2(p, m, m, p);
}
// Traceless convention: rz(θ) = diag(e^{-iθ/2}, e^{+iθ/2}). t and s match
// their projector forms only up to a global phase.
inline CMat gate_rz(const std::vector<double>& params) {
  const double theta = params[0];
  return mat2(std::polar(1.0, -theta / 2), 0, 0, std::polar(1.0, theta / 2));
}
inline CMat gate_cx(const std::vector<double>&) {
  CMat m = CMat::Zero(4, 4);
  m(0, 0) = 1;
  m(1, 1) = 1;
  m(2, 3) = 1;
  m(3, 2) = 1;
  return m;
}
inline CMat gate_cz(const std::vector<double>&) {
  CMat m = CMat::Identity(4, 4);
  m(3, 3) = -1;
  return m;
}
// ecr a b = (I⊗X - X⊗Y)/√2 with a as the first tensor factor.
inline CMat gate_ecr(const std::vector<double>&) {
  static const CMat m =
      ((kron(pauli_matrix('I'), pauli_matrix('X')) -
        kron(pauli_matrix('X'), pauli_matrix('Y'))) /
       std::sqrt(2.0))
          .eval();
  return m;
}
// Reversed orientation, (X⊗I - Y⊗X)/√2; what "ecr b a" produces once the
// tensor slots are swapped back.
inline CMat gate_ecr_rev(const std::vector<double>&) {
  static const CMat m =
      ((kron(pauli_matrix('X'), pauli_matrix('I')) -
        kron(pauli_matrix('Y'), pauli_matrix('X'))) /
       std::sqrt(2.0))
          .eval();
  return m;
}
inline CMat gate_ccx(const std::vector<double>&) {
  CMat m = CMat::Identity(8, 8);
  m(6, 6) = 0;
  m(7, 7) = 0;
  m(6, 7) = 1;
  m(7, 6) = 1;
  return m;
}
inline CMat gate_ccz(const std::vector<double>&) {
  CMat m = CMat::Identity(8, 8);
  m(7, 7) = -1;
  return m;
}

}  // namespace detail

/// Immutable registry of every named gate, in a stable order.
inline const std::vector<GateDef>& registry() {
  static const std::vector<GateDef> defs = {
      {"id", 1, 0, detail::gate_id},    {"x", 1, 0, detail::gate_x},
      {"y", 1, 0, detail::gate_y},      {"z", 1, 0, detail::gate_z},
      {"h", 1, 0, detail::gate_h},      {"s", 1, 0, detail::gate_s},
      {"sdg", 1, 0, detail::gate_sdg},  {"t", 1, 0, detail::gate_t},
      {"tdg", 1, 0, detail::gate_tdg},  {"sx", 1, 0, detail::gate_sx},
      {"rz", 1, 1, detail::gate_rz},    {"cx", 2, 0, detail::gate_cx},
      {"cz", 2, 0, detail::gate_cz},    {"ecr", 2, 0, detail::gate_ecr},
      {"ecr_rev", 2, 0, detail::gate_ecr_rev},
      {"ccx", 3, 0, detail::gate_ccx},  {"ccz", 3, 0, detail::gate_ccz},
  };
  return defs;
}

inline const GateDef* find_gate(const std::string& name) noexcept {
  for (const GateDef& g : registry())
    if (g.name == name) return &g;
  return nullptr;
}

inline const GateDef& gate_or_throw(const std::string& name) {
  const GateDef* g = find_gate(name);
  if (!g) throw UnknownGate("unknown gate '" + name + "'");
  return *g;
}

inline CMat matrix_of(const GateDef& gate, const std::vector<double>& params) {
  if (static_cast<int>(params.size()) != gate.param_count)
    throw WrongParamCount("gate '" + gate.name + "' expects " +
                          std::to_string(gate.param_count) + " parameter(s), got " +
                          std::to_string(params.size()));
  return gate.matrix_fn(params);
}

inline CMat gate_matrix(const std::string& name,
                        const std::vector<double>& params = {}) {
  return matrix_of(gate_or_throw(name), params);
}

}  // namespace ecrkit
