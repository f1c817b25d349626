/**
 * @file jones.hpp
 * @brief GNS space, Jones projection, basic construction and index for finite inclusions.
 *
 * L^2(M, tau) is M itself with <x,y> = y^H K x. Operators on it are n x n matrices
 * in column convention and are flattened row-major when treated as vectors of End(L^2).
 */
#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hopfgal/actions.hpp"

namespace hopfgal {

/// Above this dimension of L^2 the checks that solve in End(L^2) are skipped.
inline constexpr std::size_t kHeavyLimit = 16;

/// {Y : XY = YX for all X in gens} inside End(C^n).
inline Space operator_commutant(const std::vector<Mat>& gens, std::size_t n) {
  EchelonBasis<Scalar> eq(n * n);
  for (const auto& x : gens) {
    for (std::size_t i = 0; i < n && !eq.full(); ++i)
      for (std::size_t k = 0; k < n && !eq.full(); ++k) {
        Vec row(n * n, Scalar(0));
        for (std::size_t j = 0; j < n; ++j) {
          if (!is_zero(x(i, j))) row[j * n + k] += x(i, j);
          if (!is_zero(x(j, k))) row[i * n + j] -= x(j, k);
        }
        if (!is_zero_vector(row)) eq.insert(std::move(row));
      }
  }
  return Space::span(n * n, eq.kernel());
}

inline std::vector<Mat> as_operators(const Space& s, std::size_t n) {
  std::vector<Mat> r;
  for (const auto& v : s.basis()) r.push_back(Mat::unvec(n, n, v));
  return r;
}

/// Unital algebra generated by gens inside End(C^n).
inline Space operator_algebra(const std::vector<Mat>& gens, std::size_t n) {
  std::vector<Vec> g;
  for (const auto& x : gens) g.push_back(x.vec());
  return right_closure(n * n, {Mat::identity(n).vec()}, g,
                       [n](const Vec& x, const Vec& y) { return (Mat::unvec(n, n, x) * Mat::unvec(n, n, y)).vec(); });
}

inline Scalar matrix_trace(const Mat& x) {
  Scalar s(0);
  for (std::size_t i = 0; i < x.rows(); ++i) s += x(i, i);
  return s;
}

struct GnsSpace {
  StarAlgebra base;
  Mat gram;
  Mat gram_inv;
  Mat jmat;                  // J x = jmat * conj(x)
  std::vector<Mat> lambda;   // lambda(e_i)
  Report report{"gns"};

  std::size_t dim() const { return base.dim; }
  Mat lam(const Vec& a) const { return base.left_matrix(a); }
  /// Adjoint for the GNS inner product.
  Mat adjoint(const Mat& x) const { return gram_inv * (x.adjoint() * gram); }
  Vec j(const Vec& x) const { return jmat.apply(conj_vector(x)); }
  /// J X J, complex-linear.
  Mat conj_by_j(const Mat& x) const { return jmat * (x.conjugate() * jmat.conjugate()); }
  std::vector<Mat> lambda_of(const Space& s) const {
    std::vector<Mat> r;
    for (const auto& v : s.basis()) r.push_back(lam(v));
    return r;
  }
};

inline GnsSpace gns(const StarAlgebra& m, std::size_t heavy_limit = kHeavyLimit) {
  if (!m.state) throw input_error("no-state", "GNS needs a state");
  const std::size_t n = m.dim;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (m.tau(m.mul_basis(i, j)) != m.tau(m.mul_basis(j, i)))
        throw input_error("not-tracial", "state is not tracial at " + witness(i, j));
  GnsSpace g;
  g.base = m;
  g.base.tracial = true;
  g.gram = gram(m);
  auto inv = inverse(g.gram);
  if (!inv) throw input_error("degenerate-state", "Gram matrix of the state is singular");
  g.gram_inv = *inv;
  g.jmat = m.star.transpose();
  for (std::size_t i = 0; i < n; ++i) g.lambda.push_back(m.left_matrix(m.basis(i)));

  Report& r = g.report;
  r.add("gram-hermitian", g.gram.adjoint() == g.gram);
  r.add("positive", numerically_positive_definite(g.gram), {}, "numerical, tol 1e-9");
  std::string w;
  for (std::size_t i = 0; i < n && w.empty(); ++i)
    if (g.adjoint(g.lambda[i]) != g.lam(m.apply_star(m.basis(i)))) w = witness(i);
  r.add("star-representation", w.empty(), w);
  std::vector<Vec> flat;
  for (const auto& l : g.lambda) flat.push_back(l.vec());
  r.add("faithful", Space::span(n * n, flat).dim() == n);
  if (n <= heavy_limit) {
    std::vector<Vec> jmj;
    for (const auto& l : g.lambda) jmj.push_back(g.conj_by_j(l).vec());
    r.add("JMJ=M'", Space::span(n * n, jmj) == operator_commutant(g.lambda, n));
  } else {
    r.skip("JMJ=M'", "dim L^2 above heavy-check limit");
  }
  return g;
}

struct JonesProjection {
  Mat e;
  Report report{"jones-projection"};
};

/**
 * e_N is the orthogonal projection onto N. Property (1) is checked in operator form
 * e_N x e_N = E_N(x) e_N. Property (3) is checked as N' = (JMJ u {e_N})''.
 */
inline JonesProjection jones_projection(const GnsSpace& g, const Space& nsub, std::size_t heavy_limit = kHeavyLimit) {
  const StarAlgebra& m = g.base;
  const std::size_t n = m.dim;
  JonesProjection jp;
  const Mat e = conditional_expectation(m, nsub);
  jp.e = e;
  Report& r = jp.report;
  r.add("idempotent", e * e == e);
  r.add("self-adjoint", g.adjoint(e) == e);
  r.add("image", Space::span(n, [&] {
                   std::vector<Vec> c;
                   for (std::size_t i = 0; i < n; ++i) c.push_back(e.col(i));
                   return c;
                 }()) == nsub);

  std::string w;
  for (std::size_t i = 0; i < n && w.empty(); ++i)
    if (e * g.lambda[i] * e != g.lam(e.col(i)) * e) w = witness(i);
  r.add("(1) e x e = E(x) e", w.empty(), w, "operator form; E(x) alone is not an operator identity");

  Mat comm(n * n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec c = (e * g.lambda[i] - g.lambda[i] * e).vec();
    for (std::size_t k = 0; k < n * n; ++k) comm(k, i) = c[k];
  }
  const Space commuting = Space::kernel_of(comm);
  r.add("(2) x in N iff e x = x e", commuting == nsub, commuting == nsub ? "" : "dim " + std::to_string(commuting.dim()));

  if (n <= heavy_limit) {
    std::vector<Mat> gens;
    for (const auto& l : g.lambda) gens.push_back(g.conj_by_j(l));
    gens.push_back(e);
    const Space s1 = operator_commutant(gens, n);
    const Space s2 = operator_commutant(as_operators(s1, n), n);
    r.add("(3) N' = (JMJ u e)''", s2 == operator_commutant(g.lambda_of(nsub), n), {},
          "M' = JMJ in place of M; (M u e)'' is M_1");
  } else {
    r.skip("(3) N' = (JMJ u e)''", "dim L^2 above heavy-check limit");
  }
  r.add("(4) Je = eJ", g.jmat * e.conjugate() == e * g.jmat);
  return jp;
}

/// Throws unless N is a unital *-subalgebra with trivial center.
inline void require_factor(const StarAlgebra& m, const Space& nsub) {
  if (!is_unital_star_subalgebra(nsub, m)) throw input_error("not-a-subalgebra", "N is not a unital *-subalgebra");
  if (relative_commutant(nsub, m).intersect(nsub).dim() != 1) throw input_error("not-a-factor", "N has nontrivial center");
}

/// dim(N' xi) / dim(N xi), with N' xi generated by right multiplications and e_N.
inline Scalar coupling_constant(const GnsSpace& g, const Space& nsub, const Mat& e, const Vec& xi) {
  if (is_zero_vector(xi)) throw input_error("xi-degenerate", "xi must be nonzero");
  const StarAlgebra& m = g.base;
  const std::size_t n = m.dim;
  EchelonBasis<Scalar> nx(n);
  for (const auto& l : g.lambda_of(nsub)) nx.insert(l.apply(xi));
  std::vector<Mat> gens;
  for (std::size_t i = 0; i < n; ++i) gens.push_back(m.right_matrix(m.basis(i)));
  gens.push_back(e);
  EchelonBasis<Scalar> cx(n);
  std::vector<Vec> queue{xi};
  cx.insert(xi);
  for (std::size_t q = 0; q < queue.size() && !cx.full(); ++q)
    for (const auto& x : gens) {
      Vec v = x.apply(queue[q]);
      if (cx.insert(v)) queue.push_back(std::move(v));
      if (cx.full()) break;
    }
  if (nx.rank() == 0) throw input_error("xi-degenerate", "N xi is zero");
  return Scalar(mpq_class(static_cast<long>(cx.rank()), static_cast<long>(nx.rank())));
}

struct IndexResult {
  Scalar value;
  Report report{"index"};
};

/// [M:N] as the coupling constant at xi = 1, spot-checked at three pseudo-random xi.
inline IndexResult jones_index(const GnsSpace& g, const Space& nsub, std::uint32_t seed = 7) {
  require_factor(g.base, nsub);
  const Mat e = conditional_expectation(g.base, nsub);
  IndexResult ir;
  ir.value = coupling_constant(g, nsub, e, g.base.unit);
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> d(-2, 2);
  for (int t = 0; t < 3; ++t) {
    Vec xi(g.dim(), Scalar(0));
    while (is_zero_vector(xi))
      for (auto& c : xi) c = Scalar(d(rng));
    const Scalar v = coupling_constant(g, nsub, e, xi);
    ir.report.add("xi-independent", v == ir.value, v == ir.value ? "" : v.to_string());
  }
  return ir;
}

struct BasicConstruction {
  GnsSpace gns;
  Space nsub;
  Mat e;
  Space m1;      // inside End(L^2), flattened row-major
  Space ncomm;   // N' inside End(L^2)
  Space center;  // M_1 n M_1'
  std::optional<Scalar> index;  // set when N is a factor
  Report report{"basic-construction"};

  std::size_t dim_l2() const { return gns.dim(); }
  bool factor() const { return center.dim() == 1; }
  /// Normalized trace of End(L^2) restricted to M_1; the unique trace when M_1 is a factor.
  Scalar tau1(const Mat& x) const {
    if (!factor()) throw input_error("not-a-factor", "M_1 has nontrivial center, no canonical trace");
    return matrix_trace(x) / Scalar(static_cast<long>(dim_l2()));
  }
};

/**
 * M_1 three ways: alg(lambda(M), e_N), J N' J, and span{lambda(a) e_N lambda(b)}.
 * Disagreement is an internal error.
 */
inline BasicConstruction basic_construction(const GnsSpace& g, const Space& nsub) {
  if (!is_unital_star_subalgebra(nsub, g.base)) throw input_error("not-a-subalgebra", "N is not a unital *-subalgebra");
  const std::size_t n = g.dim();
  BasicConstruction bc;
  bc.gns = g;
  bc.nsub = nsub;
  bc.e = conditional_expectation(g.base, nsub);
  std::vector<Mat> gens = g.lambda;
  gens.push_back(bc.e);
  bc.m1 = operator_algebra(gens, n);
  bc.ncomm = operator_commutant(g.lambda_of(nsub), n);
  std::vector<Vec> jnj;
  for (const auto& y : as_operators(bc.ncomm, n)) jnj.push_back(g.conj_by_j(y).vec());
  const Space via_j = Space::span(n * n, jnj);
  EchelonBasis<Scalar> aeb(n * n);
  for (std::size_t a = 0; a < n && !aeb.full(); ++a) {
    const Mat ae = g.lambda[a] * bc.e;
    for (std::size_t b = 0; b < n && !aeb.full(); ++b) aeb.insert((ae * g.lambda[b]).vec());
  }
  const Space via_pp = Space::from_echelon(aeb);
  if (via_j != bc.m1 || via_pp != bc.m1)
    throw internal_error("basic-construction", "alg(M, e_N), J N' J and span{a e_N b} disagree");
  bc.report.add("M1 = J N' J", true, {}, "dim " + std::to_string(bc.m1.dim()));
  bc.report.add("M1 = span{a e b}", true);
  bool has_m = true;
  for (const auto& l : g.lambda) has_m = has_m && bc.m1.contains(l.vec());
  bc.report.add("lambda(M) in M1", has_m);
  bc.center = bc.m1.intersect(operator_commutant(gens, n));
  const bool n_factor = relative_commutant(nsub, g.base).intersect(nsub).dim() == 1;
  bc.report.add("M1 factor iff N factor", bc.factor() == n_factor);
  if (n_factor) bc.index = jones_index(g, nsub).value;
  return bc;
}

/// tau_1(e_N lambda(x)) = tau(x) / [M:N] on every basis element.
inline Report markov_check(const BasicConstruction& bc) {
  if (!bc.index) throw input_error("not-a-factor", "index needs a factor N");
  Report r("markov");
  const StarAlgebra& m = bc.gns.base;
  std::string w;
  for (std::size_t i = 0; i < m.dim && w.empty(); ++i)
    if (bc.tau1(bc.e * bc.gns.lambda[i]) != m.tau(m.basis(i)) / *bc.index) w = witness(i);
  r.add("markov", w.empty(), w, "index " + bc.index->to_string());
  r.add("tau1-normalized", bc.tau1(Mat::identity(bc.dim_l2())) == Scalar(1));
  return r;
}

/// {phi in End(M) : phi(a x b) = a phi(x) b, a in NL, b in NR}, as flattened matrices.
inline Space bimodule_endos(const StarAlgebra& m, const Space& nl, const Space& nr) {
  std::vector<Mat> gens;
  for (const auto& a : nl.basis()) gens.push_back(m.left_matrix(a));
  for (const auto& b : nr.basis()) gens.push_back(m.right_matrix(b));
  return operator_commutant(gens, m.dim);
}

/**
 * End(_N M_N) against N' n M_1. A bimodule map is already an operator on L^2 = M,
 * so the intertwiner is the inclusion; it must land in N' n M_1 and be onto.
 */
inline Report bimodule_endos_check(const BasicConstruction& bc) {
  Report r("bimodule-endos");
  const Space ends = bimodule_endos(bc.gns.base, bc.nsub, bc.nsub);
  const Space rel = bc.ncomm.intersect(bc.m1);
  r.add("dims-equal", ends.dim() == rel.dim(), {}, std::to_string(ends.dim()) + " vs " + std::to_string(rel.dim()));
  r.add("intertwiner", ends.is_subspace_of(rel));
  r.add("isomorphism", ends == rel);
  return r;
}

/// dim(M (x)_N M) as M (x) M modulo xn (x) y - x (x) ny.
inline std::size_t balanced_tensor_dim(const StarAlgebra& m, const Space& nsub) {
  const std::size_t n = m.dim;
  EchelonBasis<Scalar> rel(n * n);
  for (const auto& v : nsub.basis())
    for (std::size_t x = 0; x < n && !rel.full(); ++x) {
      const Vec xn = m.mul(m.basis(x), v);
      for (std::size_t y = 0; y < n && !rel.full(); ++y)
        rel.insert(tensor_vec(xn, m.basis(y)) - tensor_vec(m.basis(x), m.mul(v, m.basis(y))));
    }
  return n * n - rel.rank();
}

/// h . T = rho(h_1) T rho(S h_2), the action on operators that fixes e_N when H fixes N.
inline Mat act_on_operator(const ModuleAlgebraAction& act, const Vec& h, const Mat& t) {
  const HopfStarAlgebra& hh = act.hopf;
  const std::size_t nh = hh.dim();
  const Vec d = hh.comul(h);
  Mat r(t.rows(), t.cols());
  for (std::size_t p = 0; p < nh; ++p)
    for (std::size_t q = 0; q < nh; ++q) {
      const Scalar& c = d[p * nh + q];
      if (is_zero(c)) continue;
      r = r + c * (act.op(hh.alg.basis(p)) * t * act.op(hh.apply_s(hh.alg.basis(q))));
    }
  return r;
}

}  // namespace hopfgal
