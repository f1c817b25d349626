/**
 * @file linalg.hpp
 * @brief Exact dense linear algebra over a field: matrices, incremental echelon
 * bases, kernels, affine solves and canonical subspaces.
 *
 * The field type F needs the arithmetic operators, construction from long and the
 * free functions is_zero(F) and conj(F). Overloads for mpq_class are provided here
 * so the same code doubles as a rational oracle in tests.
 */
#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hopfgal {

inline bool is_zero(const mpq_class& x) { return sgn(x) == 0; }
inline mpq_class conj(const mpq_class& x) { return x; }

template <class F>
using Vector = std::vector<F>;

template <class F>
Vector<F> zero_vector(std::size_t n) {
  return Vector<F>(n, F(0));
}

template <class F>
Vector<F> basis_vector(std::size_t n, std::size_t i) {
  Vector<F> v(n, F(0));
  v[i] = F(1);
  return v;
}

template <class F>
bool is_zero_vector(const Vector<F>& v) {
  return std::all_of(v.begin(), v.end(), [](const F& x) { return is_zero(x); });
}

/// y += s * x
template <class F>
void axpy(Vector<F>& y, const F& s, const Vector<F>& x) {
  if (is_zero(s)) return;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!is_zero(x[i])) y[i] += s * x[i];
}

template <class F>
Vector<F> scaled(const Vector<F>& x, const F& s) {
  Vector<F> r(x.size(), F(0));
  if (is_zero(s)) return r;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!is_zero(x[i])) r[i] = s * x[i];
  return r;
}

template <class F>
Vector<F> operator+(const Vector<F>& a, const Vector<F>& b) {
  Vector<F> r = a;
  axpy(r, F(1), b);
  return r;
}

template <class F>
Vector<F> operator-(const Vector<F>& a, const Vector<F>& b) {
  Vector<F> r = a;
  axpy(r, F(-1), b);
  return r;
}

template <class F>
Vector<F> conj_vector(const Vector<F>& v) {
  Vector<F> r;
  r.reserve(v.size());
  for (const auto& x : v) r.push_back(conj(x));
  return r;
}

/// Dense row-major matrix.
template <class F>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, F(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = F(1);
    return m;
  }
  /// Matrix whose columns are the given vectors (all of length rows).
  static Matrix from_columns(std::size_t rows, const std::vector<Vector<F>>& cols) {
    Matrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    return m;
  }
  static Matrix from_rows(std::size_t cols, const std::vector<Vector<F>>& rows) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  F& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const F& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  const std::vector<F>& data() const { return data_; }

  Vector<F> row(std::size_t i) const { return Vector<F>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_); }
  Vector<F> col(std::size_t j) const {
    Vector<F> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }
  Matrix conjugate() const {
    Matrix t(rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) t.data_[k] = conj(data_[k]);
    return t;
  }
  Matrix adjoint() const { return transpose().conjugate(); }

  Vector<F> apply(const Vector<F>& x) const {
    if (x.size() != cols_) throw std::invalid_argument("matrix-vector dimension mismatch");
    Vector<F> y(rows_, F(0));
    for (std::size_t j = 0; j < cols_; ++j) {
      if (is_zero(x[j])) continue;
      for (std::size_t i = 0; i < rows_; ++i)
        if (!is_zero((*this)(i, j))) y[i] += (*this)(i, j) * x[j];
    }
    return y;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product dimension mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const F& aik = a(i, k);
        if (is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (!is_zero(b(k, j))) c(i, j) += aik * b(k, j);
      }
    return c;
  }
  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    Matrix c = a;
    for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] += b.data_[k];
    return c;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    Matrix c = a;
    for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] -= b.data_[k];
    return c;
  }
  friend Matrix operator*(const F& s, const Matrix& a) {
    Matrix c = a;
    for (auto& x : c.data_)
      if (!is_zero(x)) x = s * x;
    return c;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  bool is_zero_matrix() const { return is_zero_vector(data_); }

  /// Row-major flattening, entry (i,j) at i*cols + j.
  Vector<F> vec() const { return data_; }
  static Matrix unvec(std::size_t rows, std::size_t cols, const Vector<F>& v) {
    Matrix m(rows, cols);
    m.data_ = v;
    return m;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<F> data_;
};

template <class F>
Matrix<F> kronecker(const Matrix<F>& a, const Matrix<F>& b) {
  Matrix<F> k(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (is_zero(a(i, j))) continue;
      for (std::size_t p = 0; p < b.rows(); ++p)
        for (std::size_t q = 0; q < b.cols(); ++q)
          if (!is_zero(b(p, q))) k(i * b.rows() + p, j * b.cols() + q) = a(i, j) * b(p, q);
    }
  return k;
}

/**
 * Incrementally built echelon basis. Rows are kept normalized at their pivot and
 * reduced against every earlier row, which is enough for membership tests; the
 * fully reduced form is produced on demand.
 */
template <class F>
class EchelonBasis {
 public:
  explicit EchelonBasis(std::size_t n) : n_(n) {}

  std::size_t ambient() const { return n_; }
  std::size_t rank() const { return rows_.size(); }
  bool full() const { return rows_.size() == n_; }

  /// Inserts v; returns true when v was independent of the current span.
  bool insert(Vector<F> v) {
    if (v.size() != n_) throw std::invalid_argument("echelon insert: dimension mismatch");
    reduce(v);
    std::size_t p = 0;
    while (p < n_ && is_zero(v[p])) ++p;
    if (p == n_) return false;
    F inv = F(1) / v[p];
    Row r;
    for (std::size_t j = p; j < n_; ++j)
      if (!is_zero(v[j])) {
        v[j] = j == p ? F(1) : v[j] * inv;
        r.nz.push_back(j);
      } else {
        v[j] = F(0);
      }
    for (std::size_t j = 0; j < p; ++j) v[j] = F(0);
    r.pivot = p;
    r.v = std::move(v);
    rows_.push_back(std::move(r));
    return true;
  }

  bool contains(Vector<F> v) const {
    reduce(v);
    return is_zero_vector(v);
  }

  /// Residual of v modulo the span (zero iff v is in the span).
  Vector<F> residual(Vector<F> v) const {
    reduce(v);
    return v;
  }

  /// Fully reduced row echelon form, sorted by pivot.
  std::vector<Vector<F>> rref() const {
    std::vector<Row> rs = rows_;
    for (std::size_t j = rs.size(); j-- > 0;) {
      const std::size_t p = rs[j].pivot;
      for (std::size_t i = 0; i < j; ++i) {
        if (is_zero(rs[i].v[p])) continue;
        F f = rs[i].v[p];
        const Vector<F>& src = rs[j].v;
        for (std::size_t k = p; k < n_; ++k)
          if (!is_zero(src[k])) rs[i].v[k] -= f * src[k];
      }
    }
    std::sort(rs.begin(), rs.end(), [](const Row& a, const Row& b) { return a.pivot < b.pivot; });
    std::vector<Vector<F>> out;
    out.reserve(rs.size());
    for (auto& r : rs) out.push_back(std::move(r.v));
    return out;
  }

  std::vector<std::size_t> pivots() const {
    std::vector<std::size_t> p;
    for (const auto& r : rows_) p.push_back(r.pivot);
    std::sort(p.begin(), p.end());
    return p;
  }

  /// Basis of {x : <row, x> = 0 for all rows} (rows treated as linear equations).
  std::vector<Vector<F>> kernel() const {
    auto r = rref();
    std::vector<std::size_t> piv;
    std::vector<char> is_piv(n_, 0);
    for (const auto& row : r) {
      std::size_t p = 0;
      while (is_zero(row[p])) ++p;
      piv.push_back(p);
      is_piv[p] = 1;
    }
    std::vector<Vector<F>> ker;
    for (std::size_t f = 0; f < n_; ++f) {
      if (is_piv[f]) continue;
      Vector<F> x(n_, F(0));
      x[f] = F(1);
      for (std::size_t i = 0; i < r.size(); ++i)
        if (!is_zero(r[i][f])) x[piv[i]] = -r[i][f];
      ker.push_back(std::move(x));
    }
    return ker;
  }

 private:
  struct Row {
    std::size_t pivot = 0;
    Vector<F> v;
    std::vector<std::size_t> nz;
  };

  void reduce(Vector<F>& v) const {
    for (const auto& r : rows_) {
      if (is_zero(v[r.pivot])) continue;
      F f = v[r.pivot];
      for (std::size_t k : r.nz) v[k] -= f * r.v[k];
    }
  }

  std::size_t n_;
  std::vector<Row> rows_;
};

template <class F>
std::size_t rank(const Matrix<F>& a) {
  EchelonBasis<F> e(a.cols());
  for (std::size_t i = 0; i < a.rows() && !e.full(); ++i) e.insert(a.row(i));
  return e.rank();
}

/// Kernel basis of A (vectors x with A x = 0).
template <class F>
std::vector<Vector<F>> nullspace(const Matrix<F>& a) {
  EchelonBasis<F> e(a.cols());
  for (std::size_t i = 0; i < a.rows() && !e.full(); ++i) e.insert(a.row(i));
  return e.kernel();
}

template <class F>
std::optional<Matrix<F>> inverse(const Matrix<F>& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("inverse of non-square matrix");
  const std::size_t n = a.rows();
  EchelonBasis<F> e(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    Vector<F> r(2 * n, F(0));
    for (std::size_t j = 0; j < n; ++j) r[j] = a(i, j);
    r[n + i] = F(1);
    e.insert(std::move(r));
  }
  auto r = e.rref();
  for (std::size_t i = 0; i < n; ++i)
    if (i >= r.size() || is_zero(r[i][i])) return std::nullopt;
  Matrix<F> inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = r[i][n + j];
  return inv;
}

/// Canonical subspace of F^n, stored as its fully reduced row echelon basis.
template <class F>
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(std::size_t n) : n_(n) {}

  static Subspace span(std::size_t n, const std::vector<Vector<F>>& vs) {
    EchelonBasis<F> e(n);
    for (const auto& v : vs) {
      if (e.full()) break;
      e.insert(v);
    }
    return from_echelon(e);
  }
  static Subspace from_echelon(const EchelonBasis<F>& e) {
    Subspace s(e.ambient());
    s.basis_ = e.rref();
    for (const auto& row : s.basis_) {
      std::size_t p = 0;
      while (is_zero(row[p])) ++p;
      s.pivots_.push_back(p);
    }
    return s;
  }
  static Subspace full(std::size_t n) {
    std::vector<Vector<F>> vs;
    for (std::size_t i = 0; i < n; ++i) vs.push_back(basis_vector<F>(n, i));
    return span(n, vs);
  }
  static Subspace zero(std::size_t n) { return Subspace(n); }
  /// Kernel of a linear map given as a matrix (column convention: x -> A x).
  static Subspace kernel_of(const Matrix<F>& a) { return span(a.cols(), nullspace(a)); }

  std::size_t ambient() const { return n_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<Vector<F>>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  EchelonBasis<F> echelon() const {
    EchelonBasis<F> e(n_);
    for (const auto& b : basis_) e.insert(b);
    return e;
  }

  bool contains(const Vector<F>& v) const {
    if (v.size() != n_) throw std::invalid_argument("subspace membership: ambient dimension mismatch");
    Vector<F> r = v;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      if (is_zero(r[pivots_[i]])) continue;
      F f = r[pivots_[i]];
      axpy(r, F(-f), basis_[i]);
    }
    return is_zero_vector(r);
  }

  /// Coordinates of v in the echelon basis (v assumed to lie in the subspace).
  Vector<F> coordinates(const Vector<F>& v) const {
    Vector<F> c(basis_.size());
    for (std::size_t i = 0; i < basis_.size(); ++i) c[i] = v[pivots_[i]];
    return c;
  }
  Vector<F> from_coordinates(const Vector<F>& c) const {
    Vector<F> v(n_, F(0));
    for (std::size_t i = 0; i < basis_.size(); ++i) axpy(v, c[i], basis_[i]);
    return v;
  }

  bool is_subspace_of(const Subspace& o) const {
    check_same(o);
    return std::all_of(basis_.begin(), basis_.end(), [&](const Vector<F>& b) { return o.contains(b); });
  }

  Subspace sum(const Subspace& o) const {
    check_same(o);
    std::vector<Vector<F>> vs = basis_;
    vs.insert(vs.end(), o.basis_.begin(), o.basis_.end());
    return span(n_, vs);
  }

  Subspace intersect(const Subspace& o) const {
    check_same(o);
    // x in both: x annihilated by the annihilators of both.
    EchelonBasis<F> eq(n_);
    for (const auto& a : annihilator()) eq.insert(a);
    for (const auto& a : o.annihilator()) eq.insert(a);
    return span(n_, eq.kernel());
  }

  /// Basis of linear functionals (as coefficient vectors) vanishing on the subspace.
  std::vector<Vector<F>> annihilator() const {
    EchelonBasis<F> e(n_);
    for (const auto& b : basis_) e.insert(b);
    return e.kernel();
  }

  /// Image under x -> A x.
  Subspace image(const Matrix<F>& a) const {
    if (a.cols() != n_) throw std::invalid_argument("subspace image: dimension mismatch");
    std::vector<Vector<F>> vs;
    for (const auto& b : basis_) vs.push_back(a.apply(b));
    return span(a.rows(), vs);
  }

  friend bool operator==(const Subspace& a, const Subspace& b) { return a.n_ == b.n_ && a.basis_ == b.basis_; }
  friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

 private:
  void check_same(const Subspace& o) const {
    if (o.n_ != n_) throw std::invalid_argument("subspace operation: ambient dimension mismatch");
  }

  std::size_t n_ = 0;
  std::vector<Vector<F>> basis_;
  std::vector<std::size_t> pivots_;
};

/// Solution set of A x = b: a particular solution plus the kernel.
template <class F>
struct AffineSolution {
  Vector<F> particular;
  Subspace<F> kernel;
};

/// Exact solve; nullopt when inconsistent.
template <class F>
std::optional<AffineSolution<F>> solve_linear(const Matrix<F>& a, const Vector<F>& b) {
  if (b.size() != a.rows()) throw std::invalid_argument("solve_linear: dimension mismatch");
  const std::size_t n = a.cols();
  EchelonBasis<F> e(n + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Vector<F> r = a.row(i);
    r.push_back(b[i]);
    e.insert(std::move(r));
  }
  auto r = e.rref();
  Vector<F> x(n, F(0));
  for (const auto& row : r) {
    std::size_t p = 0;
    while (is_zero(row[p])) ++p;
    if (p == n) return std::nullopt;
    x[p] = row[n];
  }
  return AffineSolution<F>{std::move(x), Subspace<F>::kernel_of(a)};
}

}  // namespace hopfgal
