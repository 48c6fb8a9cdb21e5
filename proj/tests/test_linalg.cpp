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

#include <catch2/catch_amalgamated.hpp>

#include "ecrkit/gates.hpp"
#include "ecrkit/linalg.hpp"
#include "helpers.hpp"

using namespace ecrkit;
using testutil::haar_random_unitary;
using testutil::random_hermitian;

namespace {

// ECR matrices, frozen elementwise from the tensor expansion.
CMat ecr_forward_literal() {
  const double r = 1.0 / std::sqrt(2.0);
  const cplx i(0, 1);
  CMat m(4, 4);
  m << 0, r, 0, r * i,
       r, 0, -r * i, 0,
       0, r * i, 0, r,
       -r * i, 0, r, 0;
  return m;
}

CMat ecr_reversed_literal() {
  const double r = 1.0 / std::sqrt(2.0);
  const cplx i(0, 1);
  CMat m(4, 4);
  m << 0, 0, r, r * i,
       0, 0, r * i, r,
       r, -r * i, 0, 0,
       -r * i, r, 0, 0;
  return m;
}

}  // namespace

TEST_CASE("kron reproduces block structure and the ECR matrices", "[linalg]") {
  const CMat id2 = pauli_matrix('I');
  const CMat x = pauli_matrix('X');
  const CMat y = pauli_matrix('Y');

  const CMat ix = kron(id2, x);
  REQUIRE(ix.rows() == 4);
  CHECK(max_abs(CMat(ix.block(0, 0, 2, 2)) - x) == 0.0);
  CHECK(max_abs(CMat(ix.block(2, 2, 2, 2)) - x) == 0.0);
  CHECK(max_abs(CMat(ix.block(0, 2, 2, 2))) == 0.0);
  CHECK(max_abs(CMat(ix.block(2, 0, 2, 2))) == 0.0);

  const CMat ecr = (kron(id2, x) - kron(x, y)) / std::sqrt(2.0);
  CHECK(max_abs(ecr - ecr_forward_literal()) <= 1e-15);

  const CMat ecr_rev = (kron(x, id2) - kron(y, x)) / std::sqrt(2.0);
  CHECK(max_abs(ecr_rev - ecr_reversed_literal()) <= 1e-15);
}

TEST_CASE("matrix_exp_hermitian handles the closed-form cases", "[linalg]") {
  const CMat zero = CMat::Zero(2, 2);
  CHECK(max_abs(matrix_exp_hermitian(zero, 1.7) - CMat(CMat::Identity(2, 2))) <= 1e-14);

  const CMat z = pauli_matrix('Z');
  const CMat u = matrix_exp_hermitian(z, M_PI / 2);
  CMat expected(2, 2);
  expected << cplx(0, -1), 0, 0, cplx(0, 1);
  CHECK(max_abs(u - expected) <= 1e-14);

  // exp(-i (ZX/2) w) = cos(w/2) II - i sin(w/2) ZX
  const CMat zx = pauli_string_matrix("ZX");
  const double w = 0.83;
  const CMat rot = matrix_exp_hermitian(CMat(zx / 2.0), w);
  const CMat closed = std::cos(w / 2) * CMat(CMat::Identity(4, 4)) -
                      cplx(0, 1) * std::sin(w / 2) * zx;
  CHECK(max_abs(rot - closed) <= 1e-13);
}

TEST_CASE("matrix_exp_hermitian rejects non-Hermitian input", "[linalg]") {
  CMat m(2, 2);
  m << 0, 1, 0, 0;
  CHECK_THROWS_AS(matrix_exp_hermitian(m, 1.0), NonHermitian);
}

TEST_CASE("matrix_exp_hermitian inverts under time reversal", "[linalg]") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const CMat h = random_hermitian(4, rng);
    const double t = 0.1 + 0.2 * trial;
    const CMat fwd = matrix_exp_hermitian(h, t);
    REQUIRE(is_unitary(fwd, 1e-10));
    const CMat bwd = matrix_exp_hermitian(h, -t);
    CHECK(max_abs(CMat(fwd * bwd) - CMat(CMat::Identity(4, 4))) <= 1e-10);
  }
}

TEST_CASE("pauli_decompose picks out the expected coefficients", "[linalg]") {
  const auto id_dec = pauli_decompose(CMat(CMat::Identity(4, 4)));
  CHECK(std::abs(id_dec.coefficients.at("II") - cplx(1, 0)) <= 1e-14);
  for (const auto& [label, coeff] : id_dec.coefficients)
    if (label != "II") CHECK(std::abs(coeff) <= 1e-14);

  const auto ecr_dec = pauli_decompose(gate_matrix("ecr"));
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(ecr_dec.coefficients.at("IX") - cplx(r, 0)) <= 1e-14);
  CHECK(std::abs(ecr_dec.coefficients.at("XY") - cplx(-r, 0)) <= 1e-14);
  for (const auto& [label, coeff] : ecr_dec.coefficients)
    if (label != "IX" && label != "XY") CHECK(std::abs(coeff) <= 1e-14);

  const double w = 1.234;
  const CMat zx = pauli_string_matrix("ZX");
  const CMat rot = matrix_exp_hermitian(CMat(zx / 2.0), w);
  const auto rot_dec = pauli_decompose(rot);
  CHECK(std::abs(rot_dec.coefficients.at("II") - cplx(std::cos(w / 2), 0)) <= 1e-12);
  CHECK(std::abs(rot_dec.coefficients.at("ZX") - cplx(0, -std::sin(w / 2))) <= 1e-12);
}

TEST_CASE("pauli_decompose rejects non-power-of-two dimensions", "[linalg]") {
  CHECK_THROWS_AS(pauli_decompose(CMat(CMat::Identity(3, 3))), NotPowerOfTwo);
}

TEST_CASE("pauli decomposition round-trips and is normalised for unitaries", "[linalg]") {
  std::mt19937 rng(12);
  for (int dim : {2, 4, 8}) {
    const CMat u = haar_random_unitary(dim, rng);
    const auto dec = pauli_decompose(u);
    CHECK(max_abs(pauli_reconstruct(dec) - u) <= 1e-12);
    double total = 0;
    for (const auto& [label, coeff] : dec.coefficients) total += std::norm(coeff);
    CHECK(std::abs(total - 1.0) <= 1e-12);
  }
}

TEST_CASE("equiv_up_to_global_phase ignores exactly a global phase", "[linalg]") {
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> phase(-M_PI, M_PI);
  for (int trial = 0; trial < 100; ++trial) {
    const CMat u = haar_random_unitary(4, rng);
    const CMat v = std::polar(1.0, phase(rng)) * u;
    CHECK(equiv_up_to_global_phase(u, v, 1e-10));
  }
  CHECK_FALSE(equiv_up_to_global_phase(pauli_matrix('I'), pauli_matrix('X'), 1e-10));
  CHECK_THROWS_AS(equiv_up_to_global_phase(pauli_matrix('I'), gate_matrix("cx"), 1e-10),
                  DimMismatch);
}

TEST_CASE("avg_gate_fidelity closed-form values", "[linalg]") {
  std::mt19937 rng(14);
  const CMat u = haar_random_unitary(4, rng);
  CHECK(std::abs(avg_gate_fidelity(u, u) - 1.0) <= 1e-12);
  CHECK(std::abs(avg_gate_fidelity(pauli_matrix('I'), pauli_matrix('X')) - 1.0 / 3.0) <=
        1e-12);
  CHECK_THROWS_AS(avg_gate_fidelity(pauli_matrix('I'), gate_matrix("cx")), DimMismatch);
}

TEST_CASE("makhlin_invariants classify local equivalence", "[linalg]") {
  std::mt19937 rng(15);

  const auto id_inv = makhlin_invariants(CMat(CMat::Identity(4, 4)));
  CHECK(std::abs(id_inv.g1 - cplx(1, 0)) <= 1e-12);
  CHECK(std::abs(id_inv.g2 - 3.0) <= 1e-12);

  const auto cx_inv = makhlin_invariants(gate_matrix("cx"));
  CHECK(std::abs(cx_inv.g1) <= 1e-12);
  CHECK(std::abs(cx_inv.g2 - 1.0) <= 1e-12);

  // Local gates share the identity's invariants.
  const CMat local = kron(haar_random_unitary(2, rng), haar_random_unitary(2, rng));
  const auto local_inv = makhlin_invariants(local);
  CHECK(std::abs(local_inv.g1 - id_inv.g1) <= 1e-12);
  CHECK(std::abs(local_inv.g2 - id_inv.g2) <= 1e-12);

  const auto ecr_inv = makhlin_invariants(gate_matrix("ecr"));
  CHECK(std::abs(ecr_inv.g1 - cx_inv.g1) <= 1e-12);
  CHECK(std::abs(ecr_inv.g2 - cx_inv.g2) <= 1e-12);
  CHECK(std::abs(ecr_inv.g1 - id_inv.g1) > 0.5);

  CHECK_THROWS_AS(makhlin_invariants(CMat(CMat::Identity(2, 2))), DimMismatch);
  CHECK_THROWS_AS(makhlin_invariants(CMat(2.0 * CMat::Identity(4, 4))), NotUnitary);
}

TEST_CASE("makhlin_invariants are invariant under local rotations", "[linalg]") {
  std::mt19937 rng(16);
  for (int trial = 0; trial < 100; ++trial) {
    const CMat u = haar_random_unitary(4, rng);
    const CMat before = kron(haar_random_unitary(2, rng), haar_random_unitary(2, rng));
    const CMat after = kron(haar_random_unitary(2, rng), haar_random_unitary(2, rng));
    const auto base = makhlin_invariants(u);
    const auto wrapped = makhlin_invariants(CMat(after * u * before));
    CHECK(std::abs(base.g1 - wrapped.g1) <= 1e-12);
    CHECK(std::abs(base.g2 - wrapped.g2) <= 1e-12);
  }
}
