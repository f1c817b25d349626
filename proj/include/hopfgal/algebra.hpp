/**
 * @file algebra.hpp
 * @brief Finite-dimensional unital *-algebras given by structure constants.
 *
 * Conventions used throughout the library:
 *  - e_i e_j = sum_k m(i,j,k) e_k;
 *  - star matrix St (row convention): e_i^* = sum_j St(i,j) e_j, extended conjugate-linearly;
 *  - linear operators act on coordinate columns, y = A x;
 *  - the inner product of a state is <x,y> = tau(y^* x) = y^H K x with K(j,i) = tau(e_j^* e_i).
 */
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hopfgal/cyclotomic.hpp"
#include "hopfgal/linalg.hpp"
#include "hopfgal/report.hpp"

namespace hopfgal {

using Scalar = Cyclotomic;
using Vec = Vector<Scalar>;
using Mat = Matrix<Scalar>;
using Space = Subspace<Scalar>;

/// Rank-3 tensor T(i,j,k) stored sparsely along the last index.
class Tensor3 {
 public:
  using Entry = std::pair<std::uint32_t, Scalar>;

  Tensor3() = default;
  Tensor3(std::size_t a, std::size_t b, std::size_t c) : a_(a), b_(b), c_(c), rows_(a * b) {}

  std::size_t dim0() const { return a_; }
  std::size_t dim1() const { return b_; }
  std::size_t dim2() const { return c_; }

  const std::vector<Entry>& fiber(std::size_t i, std::size_t j) const { return rows_[i * b_ + j]; }

  Scalar get(std::size_t i, std::size_t j, std::size_t k) const {
    for (const auto& [kk, v] : fiber(i, j))
      if (kk == k) return v;
    return Scalar(0);
  }
  void set(std::size_t i, std::size_t j, std::size_t k, const Scalar& v) {
    auto& r = rows_[i * b_ + j];
    for (auto it = r.begin(); it != r.end(); ++it)
      if (it->first == k) {
        if (is_zero(v)) r.erase(it);
        else it->second = v;
        return;
      }
    if (is_zero(v)) return;
    auto pos = std::lower_bound(r.begin(), r.end(), k, [](const Entry& e, std::size_t key) { return e.first < key; });
    r.insert(pos, Entry{static_cast<std::uint32_t>(k), v});
  }
  void add(std::size_t i, std::size_t j, std::size_t k, const Scalar& v) {
    if (!is_zero(v)) set(i, j, k, get(i, j, k) + v);
  }
  /// Fiber (i,j,.) as a dense vector.
  Vec fiber_vec(std::size_t i, std::size_t j) const {
    Vec v(c_, Scalar(0));
    for (const auto& [k, x] : fiber(i, j)) v[k] = x;
    return v;
  }
  void set_fiber(std::size_t i, std::size_t j, const Vec& v) {
    auto& r = rows_[i * b_ + j];
    r.clear();
    for (std::size_t k = 0; k < v.size(); ++k)
      if (!is_zero(v[k])) r.emplace_back(static_cast<std::uint32_t>(k), v[k]);
  }

  friend bool operator==(const Tensor3& x, const Tensor3& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && x.c_ == y.c_ && x.rows_ == y.rows_;
  }

 private:
  std::size_t a_ = 0, b_ = 0, c_ = 0;
  std::vector<std::vector<Entry>> rows_;
};

struct StarAlgebra {
  std::size_t dim = 0;
  Tensor3 mult;
  Vec unit;
  Mat star;
  std::optional<Vec> state;
  bool tracial = false;

  Vec basis(std::size_t i) const { return basis_vector<Scalar>(dim, i); }
  Vec one() const { return unit; }

  Vec mul(const Vec& x, const Vec& y) const {
    Vec r(dim, Scalar(0));
    for (std::size_t i = 0; i < dim; ++i) {
      if (is_zero(x[i])) continue;
      for (std::size_t j = 0; j < dim; ++j) {
        if (is_zero(y[j])) continue;
        const auto& f = mult.fiber(i, j);
        if (f.empty()) continue;
        Scalar s = x[i] * y[j];
        for (const auto& [k, c] : f) r[k] += s * c;
      }
    }
    return r;
  }
  Vec mul_basis(std::size_t i, std::size_t j) const { return mult.fiber_vec(i, j); }

  Vec apply_star(const Vec& x) const {
    Vec r(dim, Scalar(0));
    for (std::size_t i = 0; i < dim; ++i) {
      if (is_zero(x[i])) continue;
      Scalar c = conj(x[i]);
      for (std::size_t j = 0; j < dim; ++j)
        if (!is_zero(star(i, j))) r[j] += c * star(i, j);
    }
    return r;
  }

  Scalar tau(const Vec& x) const {
    Scalar s(0);
    for (std::size_t i = 0; i < dim; ++i)
      if (!is_zero(x[i]) && !is_zero((*state)[i])) s += x[i] * (*state)[i];
    return s;
  }

  /// Matrix of x -> a x.
  Mat left_matrix(const Vec& a) const {
    Mat l(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
      if (is_zero(a[i])) continue;
      for (std::size_t j = 0; j < dim; ++j)
        for (const auto& [k, c] : mult.fiber(i, j)) l(k, j) += a[i] * c;
    }
    return l;
  }
  /// Matrix of x -> x a.
  Mat right_matrix(const Vec& a) const {
    Mat r(dim, dim);
    for (std::size_t j = 0; j < dim; ++j) {
      if (is_zero(a[j])) continue;
      for (std::size_t i = 0; i < dim; ++i)
        for (const auto& [k, c] : mult.fiber(i, j)) r(k, i) += a[j] * c;
    }
    return r;
  }
};

/// Full subspace, the natural "all of A" argument for commutants.
inline Space whole(const StarAlgebra& a) { return Space::full(a.dim); }
inline Space scalars(const StarAlgebra& a) { return Space::span(a.dim, {a.unit}); }

/// Checks shapes; throws an input error on mismatch.
inline void check_shape(const StarAlgebra& a) {
  const std::size_t n = a.dim;
  if (a.mult.dim0() != n || a.mult.dim1() != n || a.mult.dim2() != n)
    throw input_error("shape", "multiplication tensor must be dim x dim x dim");
  if (a.unit.size() != n) throw input_error("shape", "unit vector has wrong length");
  if (a.star.rows() != n || a.star.cols() != n) throw input_error("shape", "star matrix must be dim x dim");
  if (a.state && a.state->size() != n) throw input_error("shape", "state vector has wrong length");
}

/// All failing associativity triples, in lexicographic order.
inline std::vector<std::array<std::size_t, 3>> associativity_defects(const StarAlgebra& a, std::size_t limit = std::numeric_limits<std::size_t>::max()) {
  std::vector<std::array<std::size_t, 3>> bad;
  const std::size_t n = a.dim;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Vec ij = a.mul_basis(i, j);
      for (std::size_t k = 0; k < n; ++k) {
        Vec lhs(n, Scalar(0));
        for (std::size_t l = 0; l < n; ++l)
          if (!is_zero(ij[l]))
            for (const auto& [p, c] : a.mult.fiber(l, k)) lhs[p] += ij[l] * c;
        Vec rhs(n, Scalar(0));
        for (const auto& [l, d] : a.mult.fiber(j, k))
          for (const auto& [p, c] : a.mult.fiber(i, l)) rhs[p] += d * c;
        if (lhs != rhs) {
          bad.push_back({i, j, k});
          if (bad.size() >= limit) return bad;
        }
      }
    }
  return bad;
}

/// Numerical positive-definiteness of a Hermitian matrix at the canonical embedding (Cholesky).
inline bool numerically_positive_definite(const Mat& k, double tol = 1e-9) {
  const std::size_t n = k.rows();
  std::vector<std::complex<double>> l(n * n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    std::complex<double> d = k(j, j).embed();
    for (std::size_t p = 0; p < j; ++p) d -= l[j * n + p] * std::conj(l[j * n + p]);
    if (d.real() <= tol || std::abs(d.imag()) > 1e-6) return false;
    const double s = std::sqrt(d.real());
    l[j * n + j] = s;
    for (std::size_t i = j + 1; i < n; ++i) {
      std::complex<double> v = k(i, j).embed();
      for (std::size_t p = 0; p < j; ++p) v -= l[i * n + p] * std::conj(l[j * n + p]);
      l[i * n + j] = v / s;
    }
  }
  return true;
}

/// Gram matrix K(j,i) = tau(e_j^* e_i); <x,y> = y^H K x.
inline Mat gram(const StarAlgebra& a) {
  if (!a.state) throw input_error("no-state", "algebra carries no state");
  Mat k(a.dim, a.dim);
  for (std::size_t j = 0; j < a.dim; ++j) {
    const Vec sj = a.apply_star(a.basis(j));
    for (std::size_t i = 0; i < a.dim; ++i) k(j, i) = a.tau(a.mul(sj, a.basis(i)));
  }
  return k;
}

inline Report validate_state(const StarAlgebra& a) {
  Report r("state");
  if (!a.state) {
    r.skip("state", "no state supplied");
    return r;
  }
  const std::size_t n = a.dim;
  r.add("normalized", a.tau(a.unit) == Scalar(1));
  std::string w;
  for (std::size_t i = 0; i < n && w.empty(); ++i)
    if (a.tau(a.apply_star(a.basis(i))) != conj((*a.state)[i])) w = witness(i);
  r.add("hermitian", w.empty(), w);
  if (a.tracial) {
    w.clear();
    for (std::size_t i = 0; i < n && w.empty(); ++i)
      for (std::size_t j = i + 1; j < n && w.empty(); ++j)
        if (a.tau(a.mul_basis(i, j)) != a.tau(a.mul_basis(j, i))) w = witness(i, j);
    r.add("tracial", w.empty(), w);
  }
  const Mat k = gram(a);
  r.add("nondegenerate", rank(k) == n, {}, "exact rank of the Gram matrix");
  r.add("positive", numerically_positive_definite(k), {}, "numerical verdict at zeta_N = exp(2 pi i/N), tol 1e-9");
  return r;
}

inline Report validate_algebra(const StarAlgebra& a) {
  check_shape(a);
  Report r("algebra");
  const std::size_t n = a.dim;
  auto assoc = associativity_defects(a, 1);
  r.add("associativity", assoc.empty(), assoc.empty() ? "" : witness(assoc[0][0], assoc[0][1], assoc[0][2]));

  std::string w;
  for (std::size_t i = 0; i < n && w.empty(); ++i) {
    const Vec e = a.basis(i);
    if (a.mul(a.unit, e) != e || a.mul(e, a.unit) != e) w = witness(i);
  }
  r.add("unit", w.empty(), w);

  w.clear();
  for (std::size_t i = 0; i < n && w.empty(); ++i)
    if (a.apply_star(a.apply_star(a.basis(i))) != a.basis(i)) w = witness(i);
  r.add("star-involutive", w.empty(), w);

  w.clear();
  std::vector<Vec> stars;
  for (std::size_t i = 0; i < n; ++i) stars.push_back(a.apply_star(a.basis(i)));
  for (std::size_t i = 0; i < n && w.empty(); ++i)
    for (std::size_t j = 0; j < n && w.empty(); ++j)
      if (a.apply_star(a.mul_basis(i, j)) != a.mul(stars[j], stars[i])) w = witness(i, j);
  r.add("star-antimultiplicative", w.empty(), w);
  if (a.state) r.merge(validate_state(a), "state");
  return r;
}

inline bool is_commutative(const StarAlgebra& a) {
  for (std::size_t i = 0; i < a.dim; ++i)
    for (std::size_t j = i + 1; j < a.dim; ++j)
      if (a.mult.fiber(i, j) != a.mult.fiber(j, i)) return false;
  return true;
}

/// {x in B : x s = s x for all s in S}.
inline Space relative_commutant(const Space& s, const StarAlgebra& b) {
  EchelonBasis<Scalar> eq(b.dim);
  for (const auto& v : s.basis()) {
    const Mat c = b.left_matrix(v) - b.right_matrix(v);
    for (std::size_t i = 0; i < c.rows() && !eq.full(); ++i) eq.insert(c.row(i));
  }
  return Space::span(b.dim, eq.kernel());
}

inline Space center(const StarAlgebra& a) { return relative_commutant(whole(a), a); }

/// Smallest subspace containing `start` and closed under right multiplication by every generator.
template <class Mul>
Space right_closure(std::size_t n, const std::vector<Vec>& start, const std::vector<Vec>& gens, Mul&& mul) {
  EchelonBasis<Scalar> e(n);
  std::vector<Vec> queue;
  for (const auto& v : start)
    if (e.insert(v)) queue.push_back(v);
  for (std::size_t q = 0; q < queue.size() && !e.full(); ++q)
    for (const auto& g : gens) {
      Vec w = mul(queue[q], g);
      if (e.insert(w)) queue.push_back(std::move(w));
      if (e.full()) break;
    }
  return Space::from_echelon(e);
}

/// Unital *-subalgebra generated by gens.
inline Space generated_subalgebra(const std::vector<Vec>& gens, const StarAlgebra& b) {
  std::vector<Vec> g = gens;
  for (const auto& x : gens) g.push_back(b.apply_star(x));
  return right_closure(b.dim, {b.unit}, g, [&](const Vec& x, const Vec& y) { return b.mul(x, y); });
}

inline bool is_unital_star_subalgebra(const Space& s, const StarAlgebra& a) {
  if (!s.contains(a.unit)) return false;
  for (const auto& x : s.basis())
    if (!s.contains(a.apply_star(x))) return false;
  for (const auto& x : s.basis())
    for (const auto& y : s.basis())
      if (!s.contains(a.mul(x, y))) return false;
  return true;
}

/**
 * Trace-preserving conditional expectation onto N, as the matrix of the orthogonal
 * projection E = B (B^H K B)^{-1} B^H K with B the basis columns of N.
 */
inline Mat conditional_expectation(const StarAlgebra& m, const Space& n) {
  if (!m.state) throw input_error("no-state", "conditional expectation needs a state");
  if (!is_unital_star_subalgebra(n, m)) throw input_error("not-a-subalgebra", "N is not a unital *-subalgebra");
  const Mat k = gram(m);
  const Mat b = Mat::from_columns(m.dim, n.basis());
  const Mat bh = b.adjoint();
  auto g = inverse(bh * k * b);
  if (!g) throw input_error("degenerate-form", "Gram matrix of the state on N is singular");
  return b * (*g * (bh * k));
}

/// Standalone structure constants of a subalgebra in the echelon basis of s.
inline StarAlgebra reify(const StarAlgebra& a, const Space& s) {
  if (!is_unital_star_subalgebra(s, a)) throw input_error("not-a-subalgebra", "subspace is not a unital *-subalgebra");
  StarAlgebra r;
  const std::size_t d = s.dim();
  r.dim = d;
  r.mult = Tensor3(d, d, d);
  r.star = Mat(d, d);
  const auto& bs = s.basis();
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) r.mult.set_fiber(i, j, s.coordinates(a.mul(bs[i], bs[j])));
    const Vec st = s.coordinates(a.apply_star(bs[i]));
    for (std::size_t j = 0; j < d; ++j) r.star(i, j) = st[j];
  }
  r.unit = s.coordinates(a.unit);
  if (a.state) {
    Vec t(d);
    for (std::size_t i = 0; i < d; ++i) t[i] = a.tau(bs[i]);
    r.state = t;
    r.tracial = a.tracial;
  }
  return r;
}

}  // namespace hopfgal
