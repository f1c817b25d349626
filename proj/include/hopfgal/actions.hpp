/**
 * @file actions.hpp
 * @brief Module *-algebra actions, invariants, smash products and dual actions.
 *
 * e_h . e_a = sum_b act(h,a,b) e_b. The smash product A # H has basis a # h at
 * index a*dim(H) + h.
 */
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hopfgal/hopf.hpp"

namespace hopfgal {

struct ModuleAlgebraAction {
  HopfStarAlgebra hopf;
  StarAlgebra alg;
  Tensor3 act;

  /// Matrix of a -> h . a.
  Mat op(const Vec& h) const {
    const std::size_t n = alg.dim;
    Mat m(n, n);
    for (std::size_t i = 0; i < h.size(); ++i) {
      if (is_zero(h[i])) continue;
      for (std::size_t a = 0; a < n; ++a)
        for (const auto& [b, c] : act.fiber(i, a)) m(b, a) += h[i] * c;
    }
    return m;
  }
  Vec apply(const Vec& h, const Vec& a) const {
    Vec r(alg.dim, Scalar(0));
    for (std::size_t i = 0; i < h.size(); ++i) {
      if (is_zero(h[i])) continue;
      for (std::size_t j = 0; j < a.size(); ++j) {
        if (is_zero(a[j])) continue;
        const Scalar s = h[i] * a[j];
        for (const auto& [b, c] : act.fiber(i, j)) r[b] += s * c;
      }
    }
    return r;
  }
};

inline void check_shape(const ModuleAlgebraAction& m) {
  check_shape(m.hopf);
  check_shape(m.alg);
  if (m.act.dim0() != m.hopf.dim() || m.act.dim1() != m.alg.dim || m.act.dim2() != m.alg.dim)
    throw input_error("shape", "action tensor must be dim H x dim A x dim A");
}

/// Action tensor from operator matrices rho(e_h) (column convention).
inline Tensor3 action_tensor(const std::vector<Mat>& ops) {
  const std::size_t nh = ops.size(), na = ops.empty() ? 0 : ops[0].rows();
  Tensor3 t(nh, na, na);
  for (std::size_t h = 0; h < nh; ++h)
    for (std::size_t a = 0; a < na; ++a) t.set_fiber(h, a, ops[h].col(a));
  return t;
}

inline Report validate_action(const ModuleAlgebraAction& m) {
  check_shape(m);
  Report r("action");
  const HopfStarAlgebra& h = m.hopf;
  const StarAlgebra& a = m.alg;
  const std::size_t nh = h.dim(), na = a.dim;
  std::vector<Mat> ops(nh);
  for (std::size_t i = 0; i < nh; ++i) ops[i] = m.op(h.alg.basis(i));

  std::string w;
  for (std::size_t i = 0; i < nh && w.empty(); ++i)
    for (std::size_t j = 0; j < nh && w.empty(); ++j)
      if (m.op(h.alg.mul_basis(i, j)) != ops[i] * ops[j]) w = witness(i, j);
  r.add("module", w.empty(), w);
  r.add("module-unit", m.op(h.alg.unit) == Mat::identity(na));

  w.clear();
  for (std::size_t i = 0; i < nh && w.empty(); ++i) {
    const Vec d = h.comul(h.alg.basis(i));
    for (std::size_t x = 0; x < na && w.empty(); ++x)
      for (std::size_t y = 0; y < na && w.empty(); ++y) {
        Vec rhs(na, Scalar(0));
        for (std::size_t p = 0; p < nh; ++p)
          for (std::size_t q = 0; q < nh; ++q) {
            const Scalar& c = d[p * nh + q];
            if (is_zero(c)) continue;
            axpy(rhs, c, a.mul(ops[p].col(x), ops[q].col(y)));
          }
        if (ops[i].apply(a.mul_basis(x, y)) != rhs) w = witness(i, x, y);
      }
  }
  // h . 1 = eps(h) 1 belongs to the same module-algebra law
  for (std::size_t i = 0; i < nh && w.empty(); ++i)
    if (ops[i].apply(a.unit) != scaled(a.unit, h.counit[i])) w = witness(i);
  r.add("measuring", w.empty(), w);

  w.clear();
  for (std::size_t i = 0; i < nh && w.empty(); ++i) {
    const Mat sstar = m.op(h.alg.apply_star(h.apply_s(h.alg.basis(i))));
    for (std::size_t x = 0; x < na && w.empty(); ++x)
      if (a.apply_star(ops[i].col(x)) != sstar.apply(a.apply_star(a.basis(x)))) w = witness(i, x);
  }
  r.add("star-compatible", w.empty(), w);
  return r;
}

/// A^H = {a : h . a = eps(h) a}.
inline Space invariants(const ModuleAlgebraAction& m) {
  const std::size_t na = m.alg.dim;
  EchelonBasis<Scalar> eq(na);
  for (std::size_t i = 0; i < m.hopf.dim() && !eq.full(); ++i) {
    const Mat d = m.op(m.hopf.alg.basis(i)) - m.hopf.counit[i] * Mat::identity(na);
    for (std::size_t r = 0; r < na && !eq.full(); ++r) eq.insert(d.row(r));
  }
  return Space::span(na, eq.kernel());
}

struct SmashProduct {
  ModuleAlgebraAction action;
  StarAlgebra total;
  Mat embed_a;  // dim total x dim A
  Mat embed_h;  // dim total x dim H

  std::size_t dim_a() const { return action.alg.dim; }
  std::size_t dim_h() const { return action.hopf.dim(); }
  Vec elem(const Vec& a, const Vec& h) const { return tensor_vec(a, h); }
  /// Projection onto the A-leg, a # h -> eps(h) a.
  Mat project_a() const {
    Mat p(dim_a(), total.dim);
    for (std::size_t a = 0; a < dim_a(); ++a)
      for (std::size_t h = 0; h < dim_h(); ++h) p(a, a * dim_h() + h) = action.hopf.counit[h];
    return p;
  }
};

/// (a # h)(b # g) = a (h_1 . b) # h_2 g, (a # h)^* = (1 # h^*)(a^* # 1); state tau_A (x) haar when available.
inline SmashProduct smash_product(const ModuleAlgebraAction& m) {
  check_shape(m);
  const HopfStarAlgebra& h = m.hopf;
  const StarAlgebra& a = m.alg;
  const std::size_t nh = h.dim(), na = a.dim, n = na * nh;
  SmashProduct sp;
  sp.action = m;
  StarAlgebra& t = sp.total;
  t.dim = n;
  t.mult = Tensor3(n, n, n);
  std::vector<Vec> dh(nh);
  for (std::size_t i = 0; i < nh; ++i) dh[i] = h.comul(h.alg.basis(i));
  for (std::size_t x = 0; x < na; ++x)
    for (std::size_t i = 0; i < nh; ++i)
      for (std::size_t y = 0; y < na; ++y)
        for (std::size_t g = 0; g < nh; ++g) {
          Vec prod(n, Scalar(0));
          for (std::size_t p = 0; p < nh; ++p)
            for (std::size_t q = 0; q < nh; ++q) {
              const Scalar& c = dh[i][p * nh + q];
              if (is_zero(c)) continue;
              Vec left(na, Scalar(0));
              for (const auto& [b, s] : m.act.fiber(p, y))
                for (const auto& [k, u] : a.mult.fiber(x, b)) left[k] += s * u;
              if (is_zero_vector(left)) continue;
              axpy(prod, c, tensor_vec(left, h.alg.mul_basis(q, g)));
            }
          t.mult.set_fiber(x * nh + i, y * nh + g, prod);
        }
  t.unit = tensor_vec(a.unit, h.alg.unit);
  sp.embed_a = Mat(n, na);
  sp.embed_h = Mat(n, nh);
  for (std::size_t x = 0; x < na; ++x) {
    const Vec v = tensor_vec(a.basis(x), h.alg.unit);
    for (std::size_t k = 0; k < n; ++k) sp.embed_a(k, x) = v[k];
  }
  for (std::size_t g = 0; g < nh; ++g) {
    const Vec v = tensor_vec(a.unit, h.alg.basis(g));
    for (std::size_t k = 0; k < n; ++k) sp.embed_h(k, g) = v[k];
  }
  t.star = Mat(n, n);
  for (std::size_t x = 0; x < na; ++x)
    for (std::size_t i = 0; i < nh; ++i) {
      const Vec hs = h.alg.apply_star(h.alg.basis(i));
      const Vec as = a.apply_star(a.basis(x));
      const Vec v = t.mul(sp.embed_h.apply(hs), sp.embed_a.apply(as));
      for (std::size_t k = 0; k < n; ++k) t.star(x * nh + i, k) = v[k];
    }
  if (a.state) {
    try {
      const Vec th = h.alg.state ? *h.alg.state : haar(h);
      t.state = tensor_vec(*a.state, th);
      bool tracial = true;
      for (std::size_t i = 0; i < n && tracial; ++i)
        for (std::size_t j = i + 1; j < n && tracial; ++j)
          tracial = t.tau(t.mul_basis(i, j)) == t.tau(t.mul_basis(j, i));
      t.tracial = tracial;
    } catch (const Error&) {
      t.state.reset();
    }
  }
  return sp;
}

/**
 * V(h) = 1 # h and V^{-1}(h) = 1 # T(h) with T = S unless overridden (negative controls).
 * Checks the convolution inverse law and (h . x) # 1 = V(h_1)(x # 1)V^{-1}(h_2).
 */
inline Report innerify_check(const SmashProduct& sp, std::optional<Mat> vinv_map = std::nullopt) {
  Report r("innerify");
  const HopfStarAlgebra& h = sp.action.hopf;
  const StarAlgebra& t = sp.total;
  const std::size_t nh = h.dim(), na = sp.dim_a();
  const Mat tmap = vinv_map ? *vinv_map : h.s_matrix();
  auto v = [&](std::size_t g) { return sp.embed_h.col(g); };
  auto vinv = [&](std::size_t g) { return sp.embed_h.apply(tmap.col(g)); };
  std::string w;
  for (std::size_t i = 0; i < nh && w.empty(); ++i) {
    const Vec d = h.comul(h.alg.basis(i));
    Vec left(t.dim, Scalar(0)), right(t.dim, Scalar(0));
    for (std::size_t p = 0; p < nh; ++p)
      for (std::size_t q = 0; q < nh; ++q) {
        const Scalar& c = d[p * nh + q];
        if (is_zero(c)) continue;
        axpy(left, c, t.mul(v(p), vinv(q)));
        axpy(right, c, t.mul(vinv(p), v(q)));
      }
    const Vec target = scaled(t.unit, h.counit[i]);
    if (left != target || right != target) w = witness(i);
  }
  r.add("convolution-inverse", w.empty(), w);
  w.clear();
  for (std::size_t i = 0; i < nh && w.empty(); ++i) {
    const Vec d = h.comul(h.alg.basis(i));
    for (std::size_t x = 0; x < na && w.empty(); ++x) {
      Vec rhs(t.dim, Scalar(0));
      for (std::size_t p = 0; p < nh; ++p)
        for (std::size_t q = 0; q < nh; ++q) {
          const Scalar& c = d[p * nh + q];
          if (is_zero(c)) continue;
          axpy(rhs, c, t.mul(t.mul(v(p), sp.embed_a.col(x)), vinv(q)));
        }
      if (sp.embed_a.apply(sp.action.apply(h.alg.basis(i), sp.action.alg.basis(x))) != rhs) w = witness(i, x);
    }
  }
  r.add("innerification", w.empty(), w);
  return r;
}

/// u . (x # h) = x # h_1 <u, h_2> for a pairing of Hhat with H.
inline ModuleAlgebraAction dual_action(const SmashProduct& sp, const HopfStarAlgebra& hhat, const HopfPairing& pr) {
  if (!validate_pairing(hhat, sp.action.hopf, pr).passed())
    throw input_error("pairing-invalid", "pairing axioms fail");
  const HopfStarAlgebra& h = sp.action.hopf;
  const std::size_t nh = h.dim(), na = sp.dim_a(), nu = hhat.dim();
  ModuleAlgebraAction d;
  d.hopf = hhat;
  d.alg = sp.total;
  d.act = Tensor3(nu, sp.total.dim, sp.total.dim);
  for (std::size_t i = 0; i < nh; ++i) {
    const Vec dh = h.comul(h.alg.basis(i));
    for (std::size_t u = 0; u < nu; ++u) {
      Vec hv(nh, Scalar(0));  // h_1 <u, h_2>
      for (std::size_t p = 0; p < nh; ++p)
        for (std::size_t q = 0; q < nh; ++q)
          if (!is_zero(dh[p * nh + q]) && !is_zero(pr.p(u, q))) hv[p] += dh[p * nh + q] * pr.p(u, q);
      for (std::size_t x = 0; x < na; ++x) d.act.set_fiber(u, x * nh + i, tensor_vec(sp.action.alg.basis(x), hv));
    }
  }
  return d;
}

struct Verdict {
  bool holds = false;
  Space witness;
};

/// Outer iff A' n (A # H) = C 1.
inline Verdict is_outer(const SmashProduct& sp) {
  const Space a = Space::span(sp.total.dim, [&] {
    std::vector<Vec> cols;
    for (std::size_t x = 0; x < sp.dim_a(); ++x) cols.push_back(sp.embed_a.col(x));
    return cols;
  }());
  Space c = relative_commutant(a, sp.total);
  return {c.dim() == 1, std::move(c)};
}

/// Minimal iff (A^H)' n A = C 1.
inline Verdict is_minimal(const ModuleAlgebraAction& m) {
  Space c = relative_commutant(invariants(m), m.alg);
  return {c.dim() == 1, std::move(c)};
}

// ---- standard actions ----

/// h . a = eps(h) a
inline ModuleAlgebraAction trivial_action(const HopfStarAlgebra& h, const StarAlgebra& a) {
  std::vector<Mat> ops;
  for (std::size_t i = 0; i < h.dim(); ++i) ops.push_back(h.counit[i] * Mat::identity(a.dim));
  return {h, a, action_tensor(ops)};
}

/// CG acting on Mat_n by conjugation with unitaries u_g (g . x = u_g x u_g^*).
inline ModuleAlgebraAction conjugation_action(const GroupTable& t, const std::vector<Mat>& u) {
  const std::size_t n = u.at(0).rows();
  std::vector<Mat> ops;
  for (const auto& ug : u) {
    const Mat uh = ug.adjoint();
    Mat op(n * n, n * n);
    for (std::size_t k = 0; k < n * n; ++k) {
      const Mat e = Mat::unvec(n, n, basis_vector<Scalar>(n * n, k));
      const Vec c = (ug * e * uh).vec();
      for (std::size_t j = 0; j < n * n; ++j) op(j, k) = c[j];
    }
    ops.push_back(op);
  }
  return {group_algebra(t), matrix_algebra(n), action_tensor(ops)};
}

/// CG acting on C(G) by g . delta_h = delta_{gh}.
inline ModuleAlgebraAction translation_action(const GroupTable& t) {
  const std::size_t n = t.size();
  std::vector<Mat> ops;
  for (std::size_t g = 0; g < n; ++g) {
    Mat op(n, n);
    for (std::size_t h = 0; h < n; ++h) op(t[g][h], h) = 1;
    ops.push_back(op);
  }
  StarAlgebra c = function_algebra_on(n);
  return {group_algebra(t), c, action_tensor(ops)};
}

/// K4 acting on Mat_2 through the Pauli unitaries X^a Z^b for the element 2a + b.
inline ModuleAlgebraAction pauli_action() {
  const Mat x = pauli_x(), z = pauli_z(), one = Mat::identity(2);
  return conjugation_action(klein_group(), {one, z, x, x * z});
}

/// Z2 acting on Mat_2 by Ad(Z).
inline ModuleAlgebraAction z2_adz_action() {
  return conjugation_action(cyclic_group(2), {Mat::identity(2), pauli_z()});
}

}  // namespace hopfgal
