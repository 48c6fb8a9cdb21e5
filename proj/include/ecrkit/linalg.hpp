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

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <string>

#include "ecrkit/errors.hpp"

namespace ecrkit {

using cplx = std::complex<double>;

/// Dense row-major complex matrix; the carrier for all unitaries and
/// Hamiltonians in the library. Qubit 0 is the MOST significant tensor
/// factor everywhere: kron(A, B) puts A on qubit 0.
using CMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

inline constexpr double kDefaultTol = 1e-10;

inline CMat dagger(const CMat& m) { return m.adjoint(); }

inline double max_abs(const CMat& m) { return m.cwiseAbs().maxCoeff(); }

inline double frobenius_distance(const CMat& a, const CMat& b) {
  return (a - b).norm();
}

inline bool is_hermitian(const CMat& m, double tol = kDefaultTol) {
  if (m.rows() != m.cols()) return false;
  return max_abs(m - CMat(m.adjoint())) <= tol;
}

inline bool is_unitary(const CMat& m, double tol = kDefaultTol) {
  if (m.rows() != m.cols()) return false;
  CMat gram = m.adjoint() * m;
  gram -= CMat(CMat::Identity(m.rows(), m.cols()));
  return max_abs(gram) <= tol;
}

/// Tensor product: (a ⊗ b)[i*db+k][j*db+l] = a(i,j) * b(k,l).
inline CMat kron(const CMat& a, const CMat& b) {
  const Eigen::Index ra = a.rows(), ca = a.cols();
  const Eigen::Index rb = b.rows(), cb = b.cols();
  CMat out(ra * rb, ca * cb);
  for (Eigen::Index i = 0; i < ra; ++i)
    for (Eigen::Index j = 0; j < ca; ++j)
      out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
  return out;
}

/// exp(-i h t) for Hermitian h, computed through an eigendecomposition so
/// the result is unitary up to roundoff. Throws NonHermitian when
/// max|h - h†| > 1e-10.
inline CMat matrix_exp_hermitian(const CMat& h, double t) {
  if (h.rows() != h.cols()) throw DimMismatch("matrix_exp_hermitian: matrix not square");
  if (!is_hermitian(h, 1e-10)) throw NonHermitian("matrix_exp_hermitian: input is not Hermitian");
  Eigen::SelfAdjointEigenSolver<CMat> es(h);
  const auto& evals = es.eigenvalues();
  const CMat& vecs = es.eigenvectors();
  Eigen::VectorXcd phases(evals.size());
  for (Eigen::Index k = 0; k < evals.size(); ++k)
    phases(k) = std::exp(cplx(0.0, -evals(k) * t));
  return vecs * phases.asDiagonal() * vecs.adjoint();
}

inline const CMat& pauli_matrix(char c) {
  static const CMat I = [] { CMat m(2, 2); m << 1, 0, 0, 1; return m; }();
  static const CMat X = [] { CMat m(2, 2); m << 0, 1, 1, 0; return m; }();
  static const CMat Y = [] { CMat m(2, 2); m << 0, cplx(0, -1), cplx(0, 1), 0; return m; }();
  static const CMat Z = [] { CMat m(2, 2); m << 1, 0, 0, -1; return m; }();
  switch (c) {
    case 'I': return I;
    case 'X': return X;
    case 'Y': return Y;
    case 'Z': return Z;
    default: throw Error(std::string("pauli_matrix: unknown Pauli '") + c + "'");
  }
}

/// Matrix of a Pauli string such as "ZX" (first character on qubit 0).
inline CMat pauli_string_matrix(const std::string& s) {
  if (s.empty()) throw Error("pauli_string_matrix: empty string");
  CMat m = pauli_matrix(s[0]);
  for (std::size_t k = 1; k < s.size(); ++k) m = kron(m, pauli_matrix(s[k]));
  return m;
}

/// Coefficients of a matrix in the n-qubit Pauli basis,
/// c_P = tr(P† u) / 2^n. Holds all 4^n strings.
struct PauliDecomposition {
  int n_qubits = 0;
  std::map<std::string, cplx> coefficients;
};

inline PauliDecomposition pauli_decompose(const CMat& u) {
  if (u.rows() != u.cols()) throw DimMismatch("pauli_decompose: matrix not square");
  const Eigen::Index dim = u.rows();
  if (dim < 1 || (dim & (dim - 1)) != 0)
    throw NotPowerOfTwo("pauli_decompose: dimension " + std::to_string(dim) +
                        " is not a power of 2");
  int n = 0;
  while ((Eigen::Index(1) << n) < dim) ++n;

  PauliDecomposition out;
  out.n_qubits = n;
  static const char kPaulis[4] = {'I', 'X', 'Y', 'Z'};
  std::string label(static_cast<std::size_t>(n), 'I');
  std::vector<int> odo(static_cast<std::size_t>(n), 0);
  while (true) {
    for (int q = 0; q < n; ++q) label[static_cast<std::size_t>(q)] = kPaulis[odo[static_cast<std::size_t>(q)]];
    CMat p = pauli_string_matrix(label);
    cplx tr = 0;
    for (Eigen::Index i = 0; i < dim; ++i)
      for (Eigen::Index j = 0; j < dim; ++j) tr += p(i, j) * u(j, i);  // Paulis are Hermitian
    out.coefficients[label] = tr / static_cast<double>(dim);
    int q = n - 1;
    while (q >= 0 && ++odo[static_cast<std::size_t>(q)] == 4) odo[static_cast<std::size_t>(q--)] = 0;
    if (q < 0) break;
  }
  return out;
}

inline CMat pauli_reconstruct(const PauliDecomposition& d) {
  const Eigen::Index dim = Eigen::Index(1) << d.n_qubits;
  CMat out = CMat::Zero(dim, dim);
  for (const auto& [label, coeff] : d.coefficients) {
    if (coeff == cplx(0, 0)) continue;
    out += coeff * pauli_string_matrix(label);
  }
  return out;
}

/// |tr(u† v)| / dim — equals 1 exactly when u and v differ by a global phase.
inline double phase_insensitive_overlap(const CMat& u, const CMat& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols())
    throw DimMismatch("phase_insensitive_overlap: dimension mismatch");
  cplx tr = (u.adjoint() * v).trace();
  return std::abs(tr) / static_cast<double>(u.rows());
}

inline bool equiv_up_to_global_phase(const CMat& u, const CMat& v,
                                     double tol = kDefaultTol) {
  return phase_insensitive_overlap(u, v) >= 1.0 - tol;
}

/// Average gate fidelity (|tr(u†v)|² + d) / (d² + d) for d-dimensional unitaries.
inline double avg_gate_fidelity(const CMat& u, const CMat& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols())
    throw DimMismatch("avg_gate_fidelity: dimension mismatch");
  const double d = static_cast<double>(u.rows());
  const double overlap = std::abs((u.adjoint() * v).trace());
  return (overlap * overlap + d) / (d * d + d);
}

struct MakhlinInvariants {
  cplx g1;
  double g2;
};

inline bool operator==(const MakhlinInvariants& a, const MakhlinInvariants& b) {
  return a.g1 == b.g1 && a.g2 == b.g2;
}

/// Local invariants (g1, g2) of a two-qubit unitary: equal invariants mean the
/// unitaries coincide up to one-qubit rotations before and after.
///
/// The magic (Bell) basis is fixed to
///   Q = (1/√2) [[1,0,0,i],[0,i,1,0],[0,i,-1,0],[1,0,0,-i]]
/// so reported values are reproducible: CNOT → (0, 1), identity → (1, 3).
inline MakhlinInvariants makhlin_invariants(const CMat& u) {
  if (u.rows() != 4 || u.cols() != 4)
    throw DimMismatch("makhlin_invariants: expected a 4x4 matrix");
  if (!is_unitary(u, 1e-10)) throw NotUnitary("makhlin_invariants: input is not unitary");
  static const CMat q = [] {
    const double r = 1.0 / std::sqrt(2.0);
    const cplx i(0, 1);
    CMat m(4, 4);
    m << r, 0, 0, r * i,
         0, r * i, r, 0,
         0, r * i, -r, 0,
         r, 0, 0, -r * i;
    return m;
  }();
  CMat ub = q.adjoint() * u * q;
  CMat m = ub.transpose() * ub;
  const cplx trm = m.trace();
  const cplx trm2 = (m * m).trace();
  const cplx det = u.determinant();
  const cplx g1 = trm * trm / (16.0 * det);
  const cplx g2 = (trm * trm - trm2) / (4.0 * det);
  return {g1, g2.real()};
}

}  // namespace ecrkit
