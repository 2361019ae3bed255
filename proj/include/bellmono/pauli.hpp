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

#pragma once

#include <bit>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "bellmono/common.hpp"

namespace bellmono {

/// An n-qubit Pauli operator in binary symplectic form: i^phase * X^a Z^b,
/// where bit q of a/z refers to qubit q and qubit 0 is the leftmost label
/// character. Supports n <= 64 (single machine word per component).
class PauliString {
 public:
  PauliString() = default;

  PauliString(int n_qubits, std::uint64_t x_bits, std::uint64_t z_bits, int phase_exp) {
    require(n_qubits >= 1 && n_qubits <= 64, errc::too_large,
            "PauliString supports 1..64 qubits, got " + std::to_string(n_qubits));
    n_ = n_qubits;
    std::uint64_t mask = n_ == 64 ? ~0ULL : ((1ULL << n_) - 1);
    require((x_bits & ~mask) == 0 && (z_bits & ~mask) == 0, errc::size_mismatch,
            "bit vector has entries beyond n_qubits");
    x_ = x_bits;
    z_ = z_bits;
    phase_ = ((phase_exp % 4) + 4) % 4;
  }

  static PauliString identity(int n_qubits) { return PauliString(n_qubits, 0, 0, 0); }

  int n_qubits() const { return n_; }
  std::uint64_t x_bits() const { return x_; }
  std::uint64_t z_bits() const { return z_; }
  int phase_exp() const { return phase_; }

  bool x_bit(int q) const { return (x_ >> q) & 1; }
  bool z_bit(int q) const { return (z_ >> q) & 1; }

  int y_count() const { return std::popcount(x_ & z_); }

  /// Hermitian iff i^phase * i^{#Y} is real, i.e. phase + #Y is even.
  bool is_hermitian() const { return ((phase_ + y_count()) % 2) == 0; }

  /// True when the realized matrix is exactly the tensor product of sigma
  /// matrices with a +1 prefactor (phase == #Y mod 4).
  bool is_canonical() const { return phase_ == (y_count() % 4); }

  bool same_letters(const PauliString& o) const {
    return n_ == o.n_ && x_ == o.x_ && z_ == o.z_;
  }

  bool operator==(const PauliString& o) const {
    return n_ == o.n_ && x_ == o.x_ && z_ == o.z_ && phase_ == o.phase_;
  }
  bool operator!=(const PauliString& o) const { return !(*this == o); }

  /// Strict weak order on (n, x, z, phase) for use in ordered containers.
  bool operator<(const PauliString& o) const {
    if (n_ != o.n_) return n_ < o.n_;
    if (x_ != o.x_) return x_ < o.x_;
    if (z_ != o.z_) return z_ < o.z_;
    return phase_ < o.phase_;
  }

 private:
  int n_ = 1;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
  int phase_ = 0;
};

/// Parses a label over {I,X,Y,Z}; the realized matrix equals the literal
/// tensor product of sigma matrices.
inline PauliString parse_label(const std::string& label) {
  require(!label.empty(), errc::empty_label, "empty Pauli label");
  require(label.size() <= 64, errc::too_large, "label longer than 64 qubits");
  std::uint64_t x = 0, z = 0;
  int y = 0;
  for (std::size_t q = 0; q < label.size(); ++q) {
    switch (label[q]) {
      case 'I':
        break;
      case 'X':
        x |= 1ULL << q;
        break;
      case 'Y':
        x |= 1ULL << q;
        z |= 1ULL << q;
        ++y;
        break;
      case 'Z':
        z |= 1ULL << q;
        break;
      default:
        fail(errc::invalid_character,
             std::string("invalid character '") + label[q] + "' in Pauli label");
    }
  }
  return PauliString(static_cast<int>(label.size()), x, z, y % 4);
}

/// Canonical text label. Operators that differ from the sigma tensor product
/// by a phase get a prefix among "-", "i", "-i".
inline std::string label_of(const PauliString& p) {
  static const char* prefixes[4] = {"", "i", "-", "-i"};
  int rel = ((p.phase_exp() - p.y_count()) % 4 + 4) % 4;
  std::string out = prefixes[rel];
  for (int q = 0; q < p.n_qubits(); ++q) {
    bool x = p.x_bit(q), z = p.z_bit(q);
    out += x ? (z ? 'Y' : 'X') : (z ? 'Z' : 'I');
  }
  return out;
}

/// Symplectic inner product (a|b) . (a'|b') = a.b' + a'.b mod 2.
/// 1 iff the operators anti-commute.
inline int symplectic_inner(const PauliString& p, const PauliString& q) {
  require(p.n_qubits() == q.n_qubits(), errc::length_mismatch,
          "symplectic_inner: operand length mismatch");
  int t = std::popcount(p.x_bits() & q.z_bits()) + std::popcount(q.x_bits() & p.z_bits());
  return t & 1;
}

inline bool anticommute(const PauliString& p, const PauliString& q) {
  return symplectic_inner(p, q) == 1;
}

/// Operator product: matrix(result) = matrix(p) * matrix(q).
inline PauliString multiply(const PauliString& p, const PauliString& q) {
  require(p.n_qubits() == q.n_qubits(), errc::length_mismatch,
          "multiply: operand length mismatch");
  // Z^b X^a' = (-1)^{b.a'} X^a' Z^b, and (-1) = i^2.
  int phase = p.phase_exp() + q.phase_exp() + 2 * std::popcount(p.z_bits() & q.x_bits());
  return PauliString(p.n_qubits(), p.x_bits() ^ q.x_bits(), p.z_bits() ^ q.z_bits(), phase % 4);
}

/// Dense matrix oracle: entrywise i^phase X^a Z^b as a row-major 2^n x 2^n
/// complex matrix. Entries are exact elements of {0, +-1, +-i}.
inline std::vector<std::complex<double>> to_matrix(const PauliString& p) {
  require(p.n_qubits() <= 12, errc::too_large, "to_matrix limited to 12 qubits");
  const std::size_t dim = 1ULL << p.n_qubits();
  std::vector<std::complex<double>> m(dim * dim, 0.0);
  static const std::complex<double> iphase[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const std::complex<double> ph = iphase[p.phase_exp()];
  for (std::uint64_t s = 0; s < dim; ++s) {
    // X^a Z^b |s> = (-1)^{b.s} |s ^ a>
    double sign = (std::popcount(p.z_bits() & s) & 1) ? -1.0 : 1.0;
    m[(s ^ p.x_bits()) * dim + s] = ph * sign;
  }
  return m;
}

inline PauliString tensor(const PauliString& a, const PauliString& b) {
  require(a.n_qubits() + b.n_qubits() <= 64, errc::too_large, "tensor exceeds 64 qubits");
  int n = a.n_qubits() + b.n_qubits();
  std::uint64_t x = a.x_bits() | (b.x_bits() << a.n_qubits());
  std::uint64_t z = a.z_bits() | (b.z_bits() << a.n_qubits());
  return PauliString(n, x, z, (a.phase_exp() + b.phase_exp()) % 4);
}

/// Embeds p on the given qubits of an n-qubit register (identity elsewhere).
inline PauliString embed(const PauliString& p, int n_qubits, const std::vector<int>& qubits) {
  require(static_cast<int>(qubits.size()) == p.n_qubits(), errc::size_mismatch,
          "embed: qubit list size differs from operator length");
  std::uint64_t x = 0, z = 0;
  for (int i = 0; i < p.n_qubits(); ++i) {
    int q = qubits[i];
    require(q >= 0 && q < n_qubits, errc::index_out_of_range, "embed: qubit index out of range");
    if (p.x_bit(i)) x |= 1ULL << q;
    if (p.z_bit(i)) z |= 1ULL << q;
  }
  return PauliString(n_qubits, x, z, p.phase_exp());
}

}  // namespace bellmono
