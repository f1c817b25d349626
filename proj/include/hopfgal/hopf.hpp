/**
 * @file hopf.hpp
 * @brief Finite-dimensional Hopf *-algebras: validation, duals, variants, Haar
 * integrals, pairings and group-type constructions.
 *
 * Delta e_i = sum_{j,k} comult(i,j,k) e_j (x) e_k, tensors of A (x) A indexed j*n + k.
 * The antipode matrix uses the row convention of the star: S(e_i) = sum_j S(i,j) e_j.
 */
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hopfgal/algebra.hpp"
#include "hopfgal/fixtures.hpp"

namespace hopfgal {

struct HopfStarAlgebra {
  StarAlgebra alg;
  Tensor3 comult;
  Vec counit;
  Mat antipode;
  bool kac = false;

  std::size_t dim() const { return alg.dim; }

  Vec comul(const Vec& x) const {
    const std::size_t n = alg.dim;
    Vec r(n * n, Scalar(0));
    for (std::size_t i = 0; i < n; ++i) {
      if (is_zero(x[i])) continue;
      for (std::size_t j = 0; j < n; ++j)
        for (const auto& [k, c] : comult.fiber(i, j)) r[j * n + k] += x[i] * c;
    }
    return r;
  }
  Scalar eps(const Vec& x) const {
    Scalar s(0);
    for (std::size_t i = 0; i < x.size(); ++i)
      if (!is_zero(x[i]) && !is_zero(counit[i])) s += x[i] * counit[i];
    return s;
  }
  /// Column-convention matrix of S.
  Mat s_matrix() const { return antipode.transpose(); }
  Vec apply_s(const Vec& x) const { return s_matrix().apply(x); }
};

/// (f (x) g) applied to a tensor t in V1 (x) V2, f: V1 -> W1, g: V2 -> W2 in column convention.
inline Vec tensor_apply(const Mat& f, const Mat& g, const Vec& t) {
  const std::size_t n1 = f.cols(), n2 = g.cols(), m1 = f.rows(), m2 = g.rows();
  Vec mid(n1 * m2, Scalar(0));  // (id (x) g) t
  for (std::size_t a = 0; a < n1; ++a)
    for (std::size_t b = 0; b < n2; ++b) {
      const Scalar& x = t[a * n2 + b];
      if (is_zero(x)) continue;
      for (std::size_t q = 0; q < m2; ++q)
        if (!is_zero(g(q, b))) mid[a * m2 + q] += x * g(q, b);
    }
  Vec r(m1 * m2, Scalar(0));
  for (std::size_t a = 0; a < n1; ++a)
    for (std::size_t q = 0; q < m2; ++q) {
      const Scalar& x = mid[a * m2 + q];
      if (is_zero(x)) continue;
      for (std::size_t p = 0; p < m1; ++p)
        if (!is_zero(f(p, a))) r[p * m2 + q] += x * f(p, a);
    }
  return r;
}

/// m(x (x) y) on a tensor of A (x) B into a single algebra (both legs in the same algebra).
inline Vec multiply_legs(const StarAlgebra& a, const Vec& t) {
  const std::size_t n = a.dim;
  Vec r(n, Scalar(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Scalar& x = t[i * n + j];
      if (is_zero(x)) continue;
      for (const auto& [k, c] : a.mult.fiber(i, j)) r[k] += x * c;
    }
  return r;
}

/// Product in A (x) B of two tensors.
inline Vec tensor_mul(const StarAlgebra& a, const StarAlgebra& b, const Vec& x, const Vec& y) {
  const std::size_t na = a.dim, nb = b.dim;
  Vec r(na * nb, Scalar(0));
  for (std::size_t i = 0; i < na * nb; ++i) {
    if (is_zero(x[i])) continue;
    for (std::size_t j = 0; j < na * nb; ++j) {
      if (is_zero(y[j])) continue;
      const Scalar s = x[i] * y[j];
      for (const auto& [k, c] : a.mult.fiber(i / nb, j / nb))
        for (const auto& [l, d] : b.mult.fiber(i % nb, j % nb)) r[k * nb + l] += s * c * d;
    }
  }
  return r;
}

/// Swap of legs on V1 (x) V2.
inline Vec flip(const Vec& t, std::size_t n1, std::size_t n2) {
  Vec r(t.size(), Scalar(0));
  for (std::size_t a = 0; a < n1; ++a)
    for (std::size_t b = 0; b < n2; ++b) r[b * n1 + a] = t[a * n2 + b];
  return r;
}

/// Star matrix of a *-algebra as a conjugate-linear map on tensors: (x (x) y)^* legwise.
inline Vec tensor_star(const StarAlgebra& a, const StarAlgebra& b, const Vec& t) {
  return tensor_apply(a.star.transpose(), b.star.transpose(), conj_vector(t));
}

inline void check_shape(const HopfStarAlgebra& h) {
  check_shape(h.alg);
  const std::size_t n = h.alg.dim;
  if (h.comult.dim0() != n || h.comult.dim1() != n || h.comult.dim2() != n)
    throw input_error("shape", "comultiplication tensor must be dim x dim x dim");
  if (h.counit.size() != n) throw input_error("shape", "counit has wrong length");
  if (h.antipode.rows() != n || h.antipode.cols() != n) throw input_error("shape", "antipode must be dim x dim");
}

inline bool is_cocommutative(const HopfStarAlgebra& h) {
  const std::size_t n = h.dim();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec d = h.comul(h.alg.basis(i));
    if (flip(d, n, n) != d) return false;
  }
  return true;
}

inline bool antipode_involutive(const HopfStarAlgebra& h) {
  return h.antipode * h.antipode == Mat::identity(h.dim());
}

inline Report validate_hopf(const HopfStarAlgebra& h) {
  check_shape(h);
  Report r("hopf");
  r.merge(validate_algebra(h.alg), "algebra");
  const std::size_t n = h.dim();
  const StarAlgebra& a = h.alg;
  const Mat id = Mat::identity(n);
  const Mat eps_row = Mat::from_rows(n, {h.counit});
  const Mat smat = h.s_matrix();
  std::vector<Vec> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = h.comul(a.basis(i));

  auto first = [&](auto&& bad) {
    for (std::size_t i = 0; i < n; ++i)
      if (bad(i)) return witness(i);
    return std::string();
  };
  auto first2 = [&](auto&& bad) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (bad(i, j)) return witness(i, j);
    return std::string();
  };

  std::string w = first([&](std::size_t i) {
    // (Delta (x) id) Delta vs (id (x) Delta) Delta, both in A^(x)3 with index (p*n + q)*n + s
    Vec lhs(n * n * n, Scalar(0)), rhs(n * n * n, Scalar(0));
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const Scalar& c = d[i][j * n + k];
        if (is_zero(c)) continue;
        for (std::size_t p = 0; p < n * n; ++p) {
          if (!is_zero(d[j][p])) lhs[p * n + k] += c * d[j][p];
          if (!is_zero(d[k][p])) rhs[j * n * n + p] += c * d[k][p];
        }
      }
    return lhs != rhs;
  });
  r.add("coassociativity", w.empty(), w);

  w = first([&](std::size_t i) {
    return tensor_apply(eps_row, id, d[i]) != a.basis(i) || tensor_apply(id, eps_row, d[i]) != a.basis(i);
  });
  r.add("counit", w.empty(), w);

  w = first2([&](std::size_t i, std::size_t j) { return h.comul(a.mul_basis(i, j)) != tensor_mul(a, a, d[i], d[j]); });
  r.add("comult-multiplicative", w.empty(), w);
  r.add("comult-unital", h.comul(a.unit) == tensor_vec(a.unit, a.unit));

  w = first2([&](std::size_t i, std::size_t j) { return h.eps(a.mul_basis(i, j)) != h.counit[i] * h.counit[j]; });
  r.add("counit-multiplicative", w.empty(), w);
  r.add("counit-unital", h.eps(a.unit) == Scalar(1));

  w = first([&](std::size_t i) {
    const Vec target = scaled(a.unit, h.counit[i]);
    return multiply_legs(a, tensor_apply(smat, id, d[i])) != target ||
           multiply_legs(a, tensor_apply(id, smat, d[i])) != target;
  });
  r.add("antipode", w.empty(), w);

  w = first([&](std::size_t i) { return h.comul(a.apply_star(a.basis(i))) != tensor_star(a, a, d[i]); });
  r.add("comult-star", w.empty(), w);
  w = first([&](std::size_t i) { return h.eps(a.apply_star(a.basis(i))) != conj(h.counit[i]); });
  r.add("counit-star", w.empty(), w);
  w = first([&](std::size_t i) { return a.apply_star(h.apply_s(a.apply_star(h.apply_s(a.basis(i))))) != a.basis(i); });
  r.add("star-antipode-involution", w.empty(), w);

  w = first2([&](std::size_t i, std::size_t j) {
    return h.apply_s(a.mul_basis(i, j)) != a.mul(h.apply_s(a.basis(j)), h.apply_s(a.basis(i)));
  });
  r.add("antipode-antimultiplicative", w.empty(), w);
  w = first([&](std::size_t i) {
    return h.comul(h.apply_s(a.basis(i))) != flip(tensor_apply(smat, smat, d[i]), n, n);
  });
  r.add("antipode-anticomultiplicative", w.empty(), w);
  r.add("antipode-bijective", rank(h.antipode) == n);
  if (h.kac) r.add("kac", antipode_involutive(h), {}, "S^2 = id claimed");
  return r;
}

/// Dual Hopf *-algebra on the dual basis; *-structure <phi^*, h> = conj(<phi, S(h)^*>).
inline HopfStarAlgebra dual_hopf(const HopfStarAlgebra& h) {
  const std::size_t n = h.dim();
  HopfStarAlgebra d;
  d.alg.dim = n;
  d.alg.mult = Tensor3(n, n, n);
  d.comult = Tensor3(n, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < n; ++a) {
      for (const auto& [b, c] : h.comult.fiber(i, a)) d.alg.mult.set(a, b, i, c);
      for (const auto& [k, c] : h.alg.mult.fiber(i, a)) d.comult.set(k, i, a, c);
    }
  d.alg.unit = h.counit;
  d.counit = h.alg.unit;
  d.antipode = h.antipode.transpose();
  d.alg.star = Mat(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Scalar s(0);
      for (std::size_t k = 0; k < n; ++k)
        if (!is_zero(h.antipode(j, k)) && !is_zero(h.alg.star(k, i))) s += h.antipode(j, k) * conj(h.alg.star(k, i));
      d.alg.star(i, j) = s;
    }
  d.kac = h.kac;
  return d;
}

enum class Variant { op, cop, opcop };

/// H^op, H^cop (antipode S^{-1}) and H^{op,cop} (antipode S).
inline HopfStarAlgebra variant(const HopfStarAlgebra& h, Variant v) {
  const std::size_t n = h.dim();
  HopfStarAlgebra r = h;
  if (v != Variant::cop) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) r.alg.mult.set_fiber(i, j, h.alg.mult.fiber_vec(j, i));
  }
  if (v != Variant::op) {
    r.comult = Tensor3(n, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (const auto& [k, c] : h.comult.fiber(i, j)) r.comult.set(i, k, j, c);
  }
  if (v != Variant::opcop) {
    auto inv = inverse(h.antipode);
    if (!inv) throw input_error("antipode-singular", "antipode is not invertible");
    r.antipode = *inv;
  }
  return r;
}

/// Normalized two-sided integral: (id (x) t) Delta h = t(h) 1 = (t (x) id) Delta h, t(1) = 1.
inline Vec haar(const HopfStarAlgebra& h) {
  const std::size_t n = h.dim();
  std::vector<Vec> rows;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec d = h.comul(h.alg.basis(i));
    for (std::size_t p = 0; p < n; ++p) {
      Vec left(n, Scalar(0)), right(n, Scalar(0));
      for (std::size_t k = 0; k < n; ++k) {
        left[k] += d[p * n + k];   // coefficient of e_p after applying t to the right leg
        right[k] += d[k * n + p];  // coefficient of e_p after applying t to the left leg
      }
      left[i] -= h.alg.unit[p];
      right[i] -= h.alg.unit[p];
      rows.push_back(std::move(left));
      rows.push_back(std::move(right));
    }
  }
  const Space sol = Space::span(n, nullspace(Mat::from_rows(n, rows)));
  if (sol.dim() == 0) throw input_error("no-integral", "no normalizable two-sided integral");
  for (const auto& v : sol.basis()) {
    Scalar t1(0);
    for (std::size_t i = 0; i < n; ++i) t1 += v[i] * h.alg.unit[i];
    if (!is_zero(t1)) return scaled(v, Scalar(1) / t1);
  }
  throw input_error("no-integral", "no normalizable two-sided integral (tau(1) = 0)");
}

/// Checks that a table is a group with identity 0; returns an empty string or a reason.
inline std::string group_table_defect(const GroupTable& t) {
  const std::size_t n = t.size();
  if (n == 0) return "empty table";
  for (const auto& row : t) {
    if (row.size() != n) return "table is not square";
    for (auto x : row)
      if (x >= n) return "entry out of range";
  }
  for (std::size_t g = 0; g < n; ++g)
    if (t[0][g] != g || t[g][0] != g) return "element 0 is not the identity";
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (t[t[a][b]][c] != t[a][t[b][c]]) return "not associative at " + witness(a, b, c);
  for (std::size_t g = 0; g < n; ++g) {
    bool found = false;
    for (std::size_t h = 0; h < n && !found; ++h) found = t[g][h] == 0 && t[h][g] == 0;
    if (!found) return "no inverse for " + std::to_string(g);
  }
  return {};
}

inline std::vector<std::size_t> group_inverses(const GroupTable& t) {
  std::vector<std::size_t> inv(t.size());
  for (std::size_t g = 0; g < t.size(); ++g)
    for (std::size_t h = 0; h < t.size(); ++h)
      if (t[g][h] == 0) inv[g] = h;
  return inv;
}

/// Group algebra CG: g^* = g^{-1}, Delta g = g (x) g, S(g) = g^{-1}; state = Haar (delta at e).
inline HopfStarAlgebra group_algebra(const GroupTable& t) {
  if (auto why = group_table_defect(t); !why.empty()) throw input_error("not-a-group", "not a group: " + why);
  const std::size_t n = t.size();
  const auto inv = group_inverses(t);
  HopfStarAlgebra h;
  h.alg.dim = n;
  h.alg.mult = Tensor3(n, n, n);
  h.alg.star = Mat(n, n);
  h.comult = Tensor3(n, n, n);
  h.antipode = Mat(n, n);
  h.alg.unit = basis_vector<Scalar>(n, 0);
  h.counit = Vec(n, Scalar(1));
  for (std::size_t g = 0; g < n; ++g) {
    for (std::size_t k = 0; k < n; ++k) h.alg.mult.set(g, k, t[g][k], Scalar(1));
    h.alg.star(g, inv[g]) = 1;
    h.comult.set(g, g, g, Scalar(1));
    h.antipode(g, inv[g]) = 1;
  }
  h.alg.state = basis_vector<Scalar>(n, 0);
  h.alg.tracial = true;
  h.kac = true;
  return h;
}

/// Function algebra C(G) = dual of CG in the basis of point masses; state = uniform measure.
inline HopfStarAlgebra function_algebra(const GroupTable& t) {
  HopfStarAlgebra h = dual_hopf(group_algebra(t));
  h.alg.state = Vec(t.size(), Scalar(1, static_cast<long>(t.size())));
  h.alg.tracial = true;
  return h;
}

/// Bilinear pairing P(q,h) = <e_q, e_h> between Q and H.
struct HopfPairing {
  Mat p;
  Scalar operator()(const Vec& q, const Vec& h) const {
    Scalar s(0);
    for (std::size_t i = 0; i < q.size(); ++i) {
      if (is_zero(q[i])) continue;
      for (std::size_t j = 0; j < h.size(); ++j)
        if (!is_zero(h[j]) && !is_zero(p(i, j))) s += q[i] * p(i, j) * h[j];
    }
    return s;
  }
};

/// Evaluation pairing between dual_hopf(H) and H.
inline HopfPairing canonical_pairing(const HopfStarAlgebra& h) { return HopfPairing{Mat::identity(h.dim())}; }

inline Report validate_pairing(const HopfStarAlgebra& q, const HopfStarAlgebra& h, const HopfPairing& pr) {
  Report r("pairing");
  const std::size_t nq = q.dim(), nh = h.dim();
  if (pr.p.rows() != nq || pr.p.cols() != nh) throw input_error("shape", "pairing matrix must be dim Q x dim H");
  std::vector<Vec> dq(nq), dh(nh);
  for (std::size_t i = 0; i < nq; ++i) dq[i] = q.comul(q.alg.basis(i));
  for (std::size_t i = 0; i < nh; ++i) dh[i] = h.comul(h.alg.basis(i));
  // <e_a (x) e_b, t> for t in H (x) H
  auto pair2 = [&](std::size_t a, std::size_t b, const Vec& t) {
    Scalar s(0);
    for (std::size_t j = 0; j < nh; ++j)
      for (std::size_t k = 0; k < nh; ++k)
        if (!is_zero(t[j * nh + k])) s += t[j * nh + k] * pr.p(a, j) * pr.p(b, k);
    return s;
  };
  std::string w;
  for (std::size_t a = 0; a < nq && w.empty(); ++a)
    for (std::size_t b = 0; b < nq && w.empty(); ++b)
      for (std::size_t c = 0; c < nh && w.empty(); ++c)
        if (pr(q.alg.mul_basis(a, b), h.alg.basis(c)) != pair2(a, b, dh[c])) w = witness(a, b, c);
  r.add("product-to-coproduct", w.empty(), w);

  w.clear();
  for (std::size_t a = 0; a < nq && w.empty(); ++a)
    for (std::size_t c = 0; c < nh && w.empty(); ++c)
      for (std::size_t d = 0; d < nh && w.empty(); ++d) {
        Scalar rhs(0);
        for (std::size_t j = 0; j < nq; ++j)
          for (std::size_t k = 0; k < nq; ++k)
            if (!is_zero(dq[a][j * nq + k])) rhs += dq[a][j * nq + k] * pr.p(j, c) * pr.p(k, d);
        if (pr(q.alg.basis(a), h.alg.mul_basis(c, d)) != rhs) w = witness(a, c, d);
      }
  r.add("coproduct-to-product", w.empty(), w);

  w.clear();
  for (std::size_t c = 0; c < nh && w.empty(); ++c)
    if (pr(q.alg.unit, h.alg.basis(c)) != h.counit[c]) w = witness(c);
  r.add("unit-counit", w.empty(), w);
  w.clear();
  for (std::size_t a = 0; a < nq && w.empty(); ++a)
    if (pr(q.alg.basis(a), h.alg.unit) != q.counit[a]) w = witness(a);
  r.add("counit-unit", w.empty(), w);

  w.clear();
  for (std::size_t a = 0; a < nq && w.empty(); ++a)
    for (std::size_t c = 0; c < nh && w.empty(); ++c)
      if (pr(q.apply_s(q.alg.basis(a)), h.alg.basis(c)) != pr(q.alg.basis(a), h.apply_s(h.alg.basis(c))))
        w = witness(a, c);
  r.add("antipode", w.empty(), w);

  w.clear();
  for (std::size_t a = 0; a < nq && w.empty(); ++a)
    for (std::size_t c = 0; c < nh && w.empty(); ++c)
      if (pr(q.alg.apply_star(q.alg.basis(a)), h.alg.basis(c)) !=
          conj(pr(q.alg.basis(a), h.alg.apply_star(h.apply_s(h.alg.basis(c))))))
        w = witness(a, c);
  r.add("star", w.empty(), w, "convention <q^*,h> = conj(<q, S(h)^*>)");
  return r;
}

/// Checks that phi (column convention, dim H x dim Q) is a unital Hopf *-algebra morphism Q -> H.
inline Report validate_hopf_morphism(const HopfStarAlgebra& q, const HopfStarAlgebra& h, const Mat& phi) {
  Report r("hopf-morphism");
  const std::size_t nq = q.dim();
  std::string w;
  for (std::size_t a = 0; a < nq && w.empty(); ++a)
    for (std::size_t b = 0; b < nq && w.empty(); ++b)
      if (phi.apply(q.alg.mul_basis(a, b)) != h.alg.mul(phi.col(a), phi.col(b))) w = witness(a, b);
  r.add("multiplicative", w.empty(), w);
  r.add("unital", phi.apply(q.alg.unit) == h.alg.unit);
  w.clear();
  for (std::size_t a = 0; a < nq && w.empty(); ++a)
    if (h.comul(phi.col(a)) != tensor_apply(phi, phi, q.comul(q.alg.basis(a)))) w = witness(a);
  r.add("comultiplicative", w.empty(), w);
  w.clear();
  for (std::size_t a = 0; a < nq && w.empty(); ++a)
    if (h.eps(phi.col(a)) != q.counit[a]) w = witness(a);
  r.add("counit", w.empty(), w);
  w.clear();
  for (std::size_t a = 0; a < nq && w.empty(); ++a)
    if (phi.apply(q.apply_s(q.alg.basis(a))) != h.apply_s(phi.col(a))) w = witness(a);
  r.add("antipode", w.empty(), w);
  w.clear();
  for (std::size_t a = 0; a < nq && w.empty(); ++a)
    if (phi.apply(q.alg.apply_star(q.alg.basis(a))) != h.alg.apply_star(phi.col(a))) w = witness(a);
  r.add("star", w.empty(), w);
  return r;
}

/// Hopf *-subalgebra in its echelon basis as a standalone Hopf *-algebra.
inline HopfStarAlgebra reify_hopf(const HopfStarAlgebra& h, const Space& s) {
  HopfStarAlgebra r;
  r.alg = reify(h.alg, s);
  const std::size_t n = h.dim(), d = s.dim();
  const auto& bs = s.basis();
  const auto& piv = s.pivots();
  r.comult = Tensor3(d, d, d);
  r.antipode = Mat(d, d);
  r.counit = Vec(d);
  for (std::size_t i = 0; i < d; ++i) {
    const Vec t = h.comul(bs[i]);
    Vec rebuilt(n * n, Scalar(0));
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) {
        const Scalar c = t[piv[j] * n + piv[k]];
        if (is_zero(c)) continue;
        r.comult.set(i, j, k, c);
        axpy(rebuilt, c, tensor_vec(bs[j], bs[k]));
      }
    if (rebuilt != t) throw input_error("not-a-subcoalgebra", "subspace is not closed under comultiplication");
    const Vec sv = h.apply_s(bs[i]);
    if (!s.contains(sv)) throw input_error("not-antipode-closed", "subspace is not closed under the antipode");
    const Vec sc = s.coordinates(sv);
    for (std::size_t j = 0; j < d; ++j) r.antipode(i, j) = sc[j];
    r.counit[i] = h.eps(bs[i]);
  }
  r.kac = antipode_involutive(r);
  if (r.alg.state) r.alg.state.reset();
  return r;
}

}  // namespace hopfgal
