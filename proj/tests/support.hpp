#pragma once

#include <vector>

#include "gvna/linalg.hpp"
#include "gvna/random.hpp"

namespace gvna::testing {

inline CMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
  CMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

inline CMatrix sigma_x() { return mat2(0, 1, 1, 0); }
inline CMatrix sigma_y() { return mat2(0, Complex(0, -1), Complex(0, 1), 0); }
inline CMatrix sigma_z() { return mat2(1, 0, 0, -1); }

inline CMatrix unit(std::size_t d, std::size_t i, std::size_t j) {
  CMatrix e = zeros(d);
  e(i, j) = 1.0;
  return e;
}

inline CMatrix diagonal(const std::vector<Complex>& entries) {
  CMatrix m = zeros(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

inline CMatrix direct_sum(const CMatrix& a, const CMatrix& b) {
  CMatrix out = CMatrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

inline std::vector<CMatrix> matrix_units(std::size_t d) {
  std::vector<CMatrix> out;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) out.push_back(unit(d, i, j));
  }
  return out;
}

inline std::vector<CMatrix> diagonal_units(std::size_t d) {
  std::vector<CMatrix> out;
  for (std::size_t i = 0; i < d; ++i) out.push_back(unit(d, i, i));
  return out;
}

inline CMatrix random_matrix(std::size_t d, Rng& rng) {
  CMatrix m(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) m(i, j) = rng.complex_normal();
  }
  return m;
}

}  // namespace gvna::testing
