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

#include <cmath>
#include <complex>
#include <vector>

#include "bellmono/common.hpp"

namespace bellmono {

using cplx = std::complex<double>;

/// Small dense complex matrix, row-major. Only meant for oracle-sized
/// problems (dim <= a few hundred).
struct Mat {
  int n = 0;
  std::vector<cplx> a;

  Mat() = default;
  explicit Mat(int dim) : n(dim), a(static_cast<std::size_t>(dim) * dim, cplx(0, 0)) {}

  cplx& operator()(int r, int c) { return a[static_cast<std::size_t>(r) * n + c]; }
  const cplx& operator()(int r, int c) const { return a[static_cast<std::size_t>(r) * n + c]; }

  static Mat eye(int dim) {
    Mat m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
  }
};

inline Mat operator+(const Mat& x, const Mat& y) {
  Mat r(x.n);
  for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = x.a[i] + y.a[i];
  return r;
}

inline Mat operator-(const Mat& x, const Mat& y) {
  Mat r(x.n);
  for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = x.a[i] - y.a[i];
  return r;
}

inline Mat operator*(cplx s, const Mat& x) {
  Mat r(x.n);
  for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = s * x.a[i];
  return r;
}

inline Mat operator*(const Mat& x, const Mat& y) {
  Mat r(x.n);
  for (int i = 0; i < x.n; ++i)
    for (int k = 0; k < x.n; ++k) {
      cplx v = x(i, k);
      if (v == cplx(0, 0)) continue;
      for (int j = 0; j < x.n; ++j) r(i, j) += v * y(k, j);
    }
  return r;
}

inline Mat kron(const Mat& x, const Mat& y) {
  Mat r(x.n * y.n);
  for (int i = 0; i < x.n; ++i)
    for (int j = 0; j < x.n; ++j) {
      cplx v = x(i, j);
      if (v == cplx(0, 0)) continue;
      for (int k = 0; k < y.n; ++k)
        for (int l = 0; l < y.n; ++l) r(i * y.n + k, j * y.n + l) = v * y(k, l);
    }
  return r;
}

inline double max_abs(const Mat& x) {
  double m = 0;
  for (const auto& v : x.a) m = std::max(m, std::abs(v));
  return m;
}

inline Mat pauli_mat(char which) {
  Mat m(2);
  switch (which) {
    case 'I': m(0, 0) = 1; m(1, 1) = 1; break;
    case 'X': m(0, 1) = 1; m(1, 0) = 1; break;
    case 'Y': m(0, 1) = cplx(0, -1); m(1, 0) = cplx(0, 1); break;
    case 'Z': m(0, 0) = 1; m(1, 1) = -1; break;
    default: fail(errc::invalid_character, "pauli_mat: unknown letter");
  }
  return m;
}

inline Mat bloch_mat(const Vec3& v) {
  Mat m(2);
  m(0, 0) = v[2];
  m(1, 1) = -v[2];
  m(0, 1) = cplx(v[0], -v[1]);
  m(1, 0) = cplx(v[0], v[1]);
  return m;
}

/// Largest eigenvalue of a symmetric real matrix by cyclic Jacobi sweeps.
/// Deterministic and accurate to ~1e-14 relative at these sizes.
inline double symmetric_max_eigenvalue(std::vector<double> s, int n) {
  auto at = [&](int i, int j) -> double& { return s[static_cast<std::size_t>(i) * n + j]; };
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += at(i, j) * at(i, j);
    if (off < 1e-28) break;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        double apq = at(p, q);
        if (std::abs(apq) < 1e-300) continue;
        double theta = (at(q, q) - at(p, p)) / (2 * apq);
        double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::hypot(1.0, theta));
        double c = 1.0 / std::hypot(1.0, t);
        double sn = t * c;
        for (int k = 0; k < n; ++k) {
          double akp = at(k, p), akq = at(k, q);
          at(k, p) = c * akp - sn * akq;
          at(k, q) = sn * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          double apk = at(p, k), aqk = at(q, k);
          at(p, k) = c * apk - sn * aqk;
          at(q, k) = sn * apk + c * aqk;
        }
      }
  }
  double best = at(0, 0);
  for (int i = 1; i < n; ++i) best = std::max(best, at(i, i));
  return best;
}

/// Largest singular value of a dense real rows x cols matrix (row-major),
/// via the Gram matrix of the smaller side.
inline double max_singular_value(const std::vector<double>& m, int rows, int cols) {
  int small_dim = std::min(rows, cols);
  std::vector<double> gram(static_cast<std::size_t>(small_dim) * small_dim, 0.0);
  if (cols <= rows) {
    for (int i = 0; i < cols; ++i)
      for (int j = i; j < cols; ++j) {
        double s = 0;
        for (int r = 0; r < rows; ++r)
          s += m[static_cast<std::size_t>(r) * cols + i] * m[static_cast<std::size_t>(r) * cols + j];
        gram[static_cast<std::size_t>(i) * cols + j] = s;
        gram[static_cast<std::size_t>(j) * cols + i] = s;
      }
  } else {
    for (int i = 0; i < rows; ++i)
      for (int j = i; j < rows; ++j) {
        double s = 0;
        for (int c = 0; c < cols; ++c)
          s += m[static_cast<std::size_t>(i) * cols + c] * m[static_cast<std::size_t>(j) * cols + c];
        gram[static_cast<std::size_t>(i) * rows + j] = s;
        gram[static_cast<std::size_t>(j) * rows + i] = s;
      }
  }
  double lam = symmetric_max_eigenvalue(std::move(gram), small_dim);
  return lam > 0 ? std::sqrt(lam) : 0.0;
}

}  // namespace bellmono
