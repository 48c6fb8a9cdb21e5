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

#include <random>
#include <vector>

#include "ecrkit/circuit.hpp"

namespace testutil {

using ecrkit::CMat;
using ecrkit::cplx;

inline CMat random_gaussian(int dim, std::mt19937& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  CMat m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = cplx(dist(rng), dist(rng));
  return m;
}

/// Haar-random unitary via QR of a complex Gaussian matrix, with the R
/// diagonal phases normalised away.
inline CMat haar_random_unitary(int dim, std::mt19937& rng) {
  const CMat g = random_gaussian(dim, rng);
  Eigen::HouseholderQR<CMat> qr(g);
  CMat q = qr.householderQ();
  const CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < dim; ++j) {
    const cplx d = r(j, j);
    q.col(j) *= std::abs(d) > 0 ? d / std::abs(d) : cplx(1, 0);
  }
  return q;
}

inline CMat random_hermitian(int dim, std::mt19937& rng) {
  const CMat g = random_gaussian(dim, rng);
  return (g + g.adjoint()) / 2.0;
}

/// Independent Hermitian eigensolver (cyclic Jacobi with complex Givens
/// rotations); the oracle used against the library's eigendecomposition path.
struct JacobiResult {
  std::vector<double> eigenvalues;  // ascending
  CMat eigenvectors;                // columns, matching order
};

inline JacobiResult jacobi_hermitian(CMat a) {
  const int n = static_cast<int>(a.rows());
  CMat v = CMat::Identity(n, n);
  for (int sweep = 0; sweep < 200; ++sweep) {
    double off = 0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    if (off < 1e-28) break;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) < 1e-300) continue;
        // Unitary 2x2 rotation annihilating a(p,q).
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const cplx apq = a(p, q);
        const double phi = std::arg(apq);
        const double m = std::abs(apq);
        const double theta = 0.5 * std::atan2(2 * m, app - aqq);
        const double c = std::cos(theta);
        const cplx s = std::polar(std::sin(theta), phi);
        for (int k = 0; k < n; ++k) {
          const cplx akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp + std::conj(s) * akq;
          a(k, q) = -s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const cplx apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk + s * aqk;
          a(q, k) = -std::conj(s) * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          const cplx vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp + std::conj(s) * vkq;
          v(k, q) = -s * vkp + c * vkq;
        }
      }
  }
  std::vector<int> order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  std::sort(order.begin(), order.end(),
            [&a](int x, int y) { return a(x, x).real() < a(y, y).real(); });
  JacobiResult res;
  res.eigenvectors = CMat(n, n);
  for (int i = 0; i < n; ++i) {
    res.eigenvalues.push_back(a(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(i)]).real());
    res.eigenvectors.col(i) = v.col(order[static_cast<std::size_t>(i)]);
  }
  return res;
}

/// Random circuit over the given 1- and 2-qubit gate names.
inline ecrkit::Circuit random_circuit(int n_qubits, int n_gates,
                                      const std::vector<std::string>& gates,
                                      std::mt19937& rng) {
  ecrkit::Circuit c = ecrkit::make_circuit(n_qubits);
  std::uniform_int_distribution<std::size_t> pick_gate(0, gates.size() - 1);
  std::uniform_int_distribution<int> pick_q(0, n_qubits - 1);
  std::uniform_real_distribution<double> pick_angle(-M_PI, M_PI);
  for (int i = 0; i < n_gates; ++i) {
    const ecrkit::GateDef& g = ecrkit::gate_or_throw(gates[pick_gate(rng)]);
    if (g.arity > n_qubits) {
      --i;
      continue;
    }
    std::vector<int> qubits;
    while (static_cast<int>(qubits.size()) < g.arity) {
      const int q = pick_q(rng);
      if (std::find(qubits.begin(), qubits.end(), q) == qubits.end()) qubits.push_back(q);
    }
    std::vector<double> params;
    for (int p = 0; p < g.param_count; ++p) params.push_back(pick_angle(rng));
    ecrkit::append(c, g.name, qubits, params);
  }
  return c;
}

inline bool structurally_equal(const ecrkit::Circuit& a, const ecrkit::Circuit& b,
                               double angle_tol = 1e-9) {
  if (a.n_qubits != b.n_qubits) return false;
  if (a.instructions.size() != b.instructions.size()) return false;
  for (std::size_t i = 0; i < a.instructions.size(); ++i) {
    const auto& x = a.instructions[i];
    const auto& y = b.instructions[i];
    if (x.gate != y.gate || x.qubits != y.qubits) return false;
    if (x.params.size() != y.params.size()) return false;
    for (std::size_t p = 0; p < x.params.size(); ++p)
      if (std::abs(x.params[p] - y.params[p]) > angle_tol) return false;
  }
  return true;
}

}  // namespace testutil
