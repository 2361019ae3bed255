// Copyright 2026 The bellmono authors
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

#include "bellmono/linalg.hpp"
#include "bellmono/pauli.hpp"

using namespace bellmono;

namespace {

Mat matrix_of(const PauliString& p) {
  auto v = to_matrix(p);
  Mat m(1 << p.n_qubits());
  m.a = v;
  return m;
}

bool matrices_equal(const Mat& a, const Mat& b, double tol = 0.0) {
  return max_abs(a - b) <= tol;
}

PauliString random_pauli(int n, Rng& rng) {
  std::uint64_t x = 0, z = 0;
  for (int q = 0; q < n; ++q) {
    if (rng.uniform01() < 0.5) x |= 1ULL << q;
    if (rng.uniform01() < 0.5) z |= 1ULL << q;
  }
  return PauliString(n, x, z, rng.uniform_int(4));
}

}  // namespace

TEST_CASE("parse_label encodes the binary symplectic form") {
  PauliString p = parse_label("XZ");
  REQUIRE(p.n_qubits() == 2);
  REQUIRE(p.x_bits() == 0b01u);  // X on qubit 0 (leftmost character)
  REQUIRE(p.z_bits() == 0b10u);
  REQUIRE(p.phase_exp() == 0);
}

TEST_CASE("parse_label realizes Y as the literal sigma_y matrix") {
  PauliString y = parse_label("Y");
  Mat expected(2);
  expected(0, 1) = cplx(0, -1);
  expected(1, 0) = cplx(0, 1);
  REQUIRE(matrices_equal(matrix_of(y), expected));
}

TEST_CASE("parse_label rejects bad labels") {
  REQUIRE_THROWS_AS(parse_label("X0"), Error);
  REQUIRE_THROWS_AS(parse_label(""), Error);
  try {
    parse_label("X0");
  } catch (const Error& e) {
    REQUIRE(e.code() == errc::invalid_character);
  }
}

TEST_CASE("symplectic inner product detects anti-commutation") {
  REQUIRE(symplectic_inner(parse_label("X"), parse_label("Z")) == 1);
  REQUIRE(symplectic_inner(parse_label("XX"), parse_label("ZZ")) == 0);
  REQUIRE(symplectic_inner(parse_label("XXIXIXI"), parse_label("ZIXIXIX")) == 1);
}

TEST_CASE("symplectic inner product agrees with the dense commutator oracle") {
  // large instance checked with the dense anticommutator
  PauliString p = parse_label("XXIXIXI"), q = parse_label("ZIXIXIX");
  Mat mp = matrix_of(p), mq = matrix_of(q);
  Mat anti = mp * mq + mq * mp;
  REQUIRE(max_abs(anti) == 0.0);

  Rng rng(42);
  for (int n = 1; n <= 4; ++n) {
    for (int rep = 0; rep < 250; ++rep) {
      PauliString a = random_pauli(n, rng), b = random_pauli(n, rng);
      Mat ma = matrix_of(a), mb = matrix_of(b);
      bool anti_matrix = max_abs(ma * mb + mb * ma) == 0.0;
      bool comm_matrix = max_abs(ma * mb - mb * ma) == 0.0;
      if (symplectic_inner(a, b) == 1) {
        REQUIRE(anti_matrix);
        REQUIRE(!comm_matrix);
      } else {
        REQUIRE(comm_matrix);
      }
    }
  }
}

TEST_CASE("multiply matches the matrix product") {
  PauliString x = parse_label("X"), z = parse_label("Z");
  PauliString xz = multiply(x, z);
  REQUIRE(matrices_equal(matrix_of(xz), matrix_of(x) * matrix_of(z)));
  // XZ = -i Y
  Mat minus_i_y = cplx(0, -1) * matrix_of(parse_label("Y"));
  REQUIRE(matrices_equal(matrix_of(xz), minus_i_y));

  Rng rng(7);
  for (int rep = 0; rep < 200; ++rep) {
    int n = 1 + rng.uniform_int(3);
    PauliString a = random_pauli(n, rng), b = random_pauli(n, rng);
    REQUIRE(matrices_equal(matrix_of(multiply(a, b)), matrix_of(a) * matrix_of(b)));
  }
}

TEST_CASE("multiply identity and involution laws") {
  Rng rng(3);
  for (int rep = 0; rep < 50; ++rep) {
    int n = 1 + rng.uniform_int(6);
    PauliString p = random_pauli(n, rng);
    PauliString id = PauliString::identity(n);
    REQUIRE(multiply(p, id) == p);
    REQUIRE(multiply(id, p) == p);
  }
  // Hermitian p squares to the identity with phase 0
  for (const char* label : {"X", "Y", "Z", "XYZ", "YY", "XIZY"}) {
    PauliString p = parse_label(label);
    REQUIRE(p.is_hermitian());
    REQUIRE(multiply(p, p) == PauliString::identity(p.n_qubits()));
  }
}

TEST_CASE("multiply is associative") {
  Rng rng(11);
  for (int rep = 0; rep < 1000; ++rep) {
    int n = 1 + rng.uniform_int(8);
    PauliString a = random_pauli(n, rng), b = random_pauli(n, rng), c = random_pauli(n, rng);
    REQUIRE(multiply(multiply(a, b), c) == multiply(a, multiply(b, c)));
  }
}

TEST_CASE("multiply rejects length mismatch") {
  REQUIRE_THROWS_AS(multiply(parse_label("X"), parse_label("XX")), Error);
  REQUIRE_THROWS_AS(symplectic_inner(parse_label("X"), parse_label("XX")), Error);
}

TEST_CASE("to_matrix basics") {
  Mat id2 = Mat::eye(2);
  REQUIRE(matrices_equal(matrix_of(parse_label("I")), id2));
  Mat z(2);
  z(0, 0) = 1;
  z(1, 1) = -1;
  REQUIRE(matrices_equal(matrix_of(parse_label("Z")), z));
  // XZ on 2 qubits equals the Kronecker product with qubit 0 leftmost
  Mat expected = kron(matrix_of(parse_label("Z")), matrix_of(parse_label("X")));
  // qubit 0 is the low bit, so the Kronecker factor order is reversed
  REQUIRE(matrices_equal(matrix_of(parse_label("XZ")), expected));
}

TEST_CASE("to_matrix guards against oversized registers") {
  REQUIRE_THROWS_AS(to_matrix(PauliString(13, 0, 0, 0)), Error);
}

TEST_CASE("label printing round-trips canonical Hermitian strings") {
  Rng rng(5);
  for (int rep = 0; rep < 300; ++rep) {
    int n = 1 + rng.uniform_int(8);
    std::string label;
    for (int q = 0; q < n; ++q) label += "IXYZ"[rng.uniform_int(4)];
    PauliString p = parse_label(label);
    REQUIRE(p.is_canonical());
    REQUIRE(label_of(p) == label);
  }
}

TEST_CASE("tensor and embed agree with label concatenation") {
  PauliString a = parse_label("XY"), b = parse_label("ZI");
  REQUIRE(label_of(tensor(a, b)) == "XYZI");
  PauliString e = embed(parse_label("XZ"), 5, {1, 3});
  REQUIRE(label_of(e) == "IXIZI");
}
