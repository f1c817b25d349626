/**
 * @file fixtures.hpp
 * @brief Standard small algebras and group tables.
 */
#pragma once

#include <string>
#include <vector>

#include "hopfgal/algebra.hpp"

namespace hopfgal {

using GroupTable = std::vector<std::vector<std::size_t>>;

/// Mat_n with matrix units E_ij at index i*n + j, conjugate transpose and normalized trace.
inline StarAlgebra matrix_algebra(std::size_t n) {
  StarAlgebra a;
  const std::size_t d = n * n;
  a.dim = d;
  a.mult = Tensor3(d, d, d);
  a.star = Mat(d, d);
  a.unit = Vec(d, Scalar(0));
  a.state = Vec(d, Scalar(0));
  a.tracial = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t l = 0; l < n; ++l) a.mult.set(i * n + j, j * n + l, i * n + l, Scalar(1));
      a.star(i * n + j, j * n + i) = 1;
    }
  for (std::size_t i = 0; i < n; ++i) {
    a.unit[i * n + i] = 1;
    (*a.state)[i * n + i] = Scalar(1, static_cast<long>(n));
  }
  return a;
}

/// Coordinates of a square matrix in Mat_n (row-major flattening).
inline Vec mat_element(const Mat& m) { return m.vec(); }
inline Mat element_mat(std::size_t n, const Vec& v) { return Mat::unvec(n, n, v); }

/// Functions on an n-point set: pointwise product, identity star, uniform probability state.
inline StarAlgebra function_algebra_on(std::size_t n) {
  StarAlgebra a;
  a.dim = n;
  a.mult = Tensor3(n, n, n);
  a.star = Mat::identity(n);
  a.unit = Vec(n, Scalar(1));
  a.state = Vec(n, Scalar(1, static_cast<long>(n)));
  a.tracial = true;
  for (std::size_t i = 0; i < n; ++i) a.mult.set(i, i, i, Scalar(1));
  return a;
}

/// A (x) B with basis index a*dim(B) + b; product state when both carry one.
inline StarAlgebra tensor_product(const StarAlgebra& a, const StarAlgebra& b) {
  StarAlgebra t;
  const std::size_t n = a.dim * b.dim;
  t.dim = n;
  t.mult = Tensor3(n, n, n);
  for (std::size_t i = 0; i < a.dim; ++i)
    for (std::size_t j = 0; j < a.dim; ++j)
      for (const auto& [k, c] : a.mult.fiber(i, j))
        for (std::size_t p = 0; p < b.dim; ++p)
          for (std::size_t q = 0; q < b.dim; ++q)
            for (const auto& [r, d] : b.mult.fiber(p, q)) t.mult.set(i * b.dim + p, j * b.dim + q, k * b.dim + r, c * d);
  t.star = kronecker(a.star, b.star);
  t.unit = kronecker(Mat::from_columns(a.dim, {a.unit}), Mat::from_columns(b.dim, {b.unit})).col(0);
  if (a.state && b.state) {
    t.state = kronecker(Mat::from_columns(a.dim, {*a.state}), Mat::from_columns(b.dim, {*b.state})).col(0);
    t.tracial = a.tracial && b.tracial;
  }
  return t;
}

/// x (x) y in A (x) B coordinates.
inline Vec tensor_vec(const Vec& x, const Vec& y) {
  Vec r(x.size() * y.size(), Scalar(0));
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (is_zero(x[i])) continue;
    for (std::size_t j = 0; j < y.size(); ++j)
      if (!is_zero(y[j])) r[i * y.size() + j] = x[i] * y[j];
  }
  return r;
}

/// The 2x2 matrices 1, X, Z, XZ (real, so they live over Q).
inline Mat pauli_x() {
  Mat m(2, 2);
  m(0, 1) = m(1, 0) = 1;
  return m;
}
inline Mat pauli_z() {
  Mat m(2, 2);
  m(0, 0) = 1;
  m(1, 1) = -1;
  return m;
}

inline GroupTable cyclic_group(std::size_t n) {
  GroupTable t(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t[i][j] = (i + j) % n;
  return t;
}

/// Z2 x Z2 with element index 2a + b for (a,b).
inline GroupTable klein_group() {
  GroupTable t(4, std::vector<std::size_t>(4));
  for (std::size_t g = 0; g < 4; ++g)
    for (std::size_t h = 0; h < 4; ++h) t[g][h] = g ^ h;
  return t;
}

/// S3 as permutations of {0,1,2}, elements e,(12),(13),(23),(123),(132); product g*h = g after h.
inline const std::vector<std::array<int, 3>>& s3_permutations() {
  static const std::vector<std::array<int, 3>> p = {
      {0, 1, 2}, {1, 0, 2}, {2, 1, 0}, {0, 2, 1}, {1, 2, 0}, {2, 0, 1}};
  return p;
}
inline const std::vector<std::string>& s3_names() {
  static const std::vector<std::string> n = {"e", "(12)", "(13)", "(23)", "(123)", "(132)"};
  return n;
}
inline GroupTable symmetric_group_3() {
  const auto& p = s3_permutations();
  GroupTable t(6, std::vector<std::size_t>(6));
  for (std::size_t g = 0; g < 6; ++g)
    for (std::size_t h = 0; h < 6; ++h) {
      std::array<int, 3> c{};
      for (int x = 0; x < 3; ++x) c[x] = p[g][p[h][x]];
      t[g][h] = static_cast<std::size_t>(std::find(p.begin(), p.end(), c) - p.begin());
    }
  return t;
}

}  // namespace hopfgal
