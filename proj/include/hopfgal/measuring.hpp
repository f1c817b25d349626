/**
 * @file measuring.hpp
 * @brief Span constraints, largest subcoalgebras and measuring coalgebras inside a finite ambient.
 *
 * A carrier map psi: C -> Hom(A,B) stores column c as the row-major flattening of the
 * dim B x dim A matrix psi(e_c).
 */
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hopfgal/actions.hpp"

namespace hopfgal {

struct StarCoalgebra {
  std::size_t dim = 0;
  Tensor3 comult;
  Vec counit;
  std::optional<Mat> star;  // row convention, as in StarAlgebra

  Vec basis(std::size_t i) const { return basis_vector<Scalar>(dim, i); }
  Vec comul(const Vec& x) const {
    Vec r(dim * dim, Scalar(0));
    for (std::size_t i = 0; i < dim; ++i) {
      if (is_zero(x[i])) continue;
      for (std::size_t j = 0; j < dim; ++j)
        for (const auto& [k, c] : comult.fiber(i, j)) r[j * dim + k] += x[i] * c;
    }
    return r;
  }
  Scalar eps(const Vec& x) const {
    Scalar s(0);
    for (std::size_t i = 0; i < dim; ++i)
      if (!is_zero(x[i])) s += x[i] * counit[i];
    return s;
  }
};

inline StarCoalgebra coalgebra_of(const HopfStarAlgebra& h) {
  return StarCoalgebra{h.dim(), h.comult, h.counit, h.alg.star};
}

inline Report validate_coalgebra(const StarCoalgebra& c) {
  Report r("coalgebra");
  const std::size_t n = c.dim;
  const Mat id = Mat::identity(n);
  const Mat eps = Mat::from_rows(n, {c.counit});
  std::string w;
  for (std::size_t i = 0; i < n && w.empty(); ++i) {
    const Vec d = c.comul(c.basis(i));
    Vec left(n * n * n, Scalar(0)), right(n * n * n, Scalar(0));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        const Scalar& x = d[a * n + b];
        if (is_zero(x)) continue;
        const Vec da = c.comul(c.basis(a)), db = c.comul(c.basis(b));
        for (std::size_t k = 0; k < n * n; ++k) {
          if (!is_zero(da[k])) left[k * n + b] += x * da[k];
          if (!is_zero(db[k])) right[a * n * n + k] += x * db[k];
        }
      }
    if (left != right) w = witness(i);
  }
  r.add("coassociativity", w.empty(), w);
  w.clear();
  for (std::size_t i = 0; i < n && w.empty(); ++i) {
    const Vec d = c.comul(c.basis(i));
    if (tensor_apply(eps, id, d) != c.basis(i) || tensor_apply(id, eps, d) != c.basis(i)) w = witness(i);
  }
  r.add("counit", w.empty(), w);
  return r;
}

/// Delta^(k): k = 0 gives eps as a length-1 vector, k = 1 the identity.
inline Vec iterated_comul(const StarCoalgebra& c, const Vec& x, std::size_t k) {
  if (k == 0) return Vec{c.eps(x)};
  Vec t = x;
  const std::size_t n = c.dim;
  std::size_t rest = 1;  // dim of the legs after the first
  for (std::size_t step = 1; step < k; ++step) {
    Vec u(t.size() * n, Scalar(0));
    for (std::size_t i = 0; i < n; ++i) {
      const Vec d = c.comul(c.basis(i));
      for (std::size_t r = 0; r < rest; ++r) {
        const Scalar& v = t[i * rest + r];
        if (is_zero(v)) continue;
        for (std::size_t jk = 0; jk < n * n; ++jk)
          if (!is_zero(d[jk])) u[jk * rest + r] += v * d[jk];
      }
    }
    t = std::move(u);
    rest *= n;
  }
  return t;
}

/// psi^(x)k on a vector of C^(x)k.
inline Vec tensor_power_apply(const Mat& psi, const Vec& t, std::size_t k) {
  const std::size_t c = psi.cols(), v = psi.rows();
  Vec cur = t;
  std::size_t pre = 1, post = 1;
  for (std::size_t i = 1; i < k; ++i) post *= c;
  for (std::size_t leg = 0; leg < k; ++leg) {
    Vec next(pre * v * post, Scalar(0));
    for (std::size_t p = 0; p < pre; ++p)
      for (std::size_t a = 0; a < c; ++a)
        for (std::size_t q = 0; q < post; ++q) {
          const Scalar& x = cur[(p * c + a) * post + q];
          if (is_zero(x)) continue;
          for (std::size_t b = 0; b < v; ++b)
            if (!is_zero(psi(b, a))) next[(p * v + b) * post + q] += x * psi(b, a);
        }
    cur = std::move(next);
    pre *= v;
    if (leg + 1 < k) post /= c;
  }
  return cur;
}

/// left: V^(x)l -> T and right: V^(x)r -> T.
struct SpanConstraint {
  std::size_t l = 0, r = 0;
  Mat left, right;
  std::string name;
};

struct Multispan {
  std::size_t carrier = 0;
  Mat psi;  // carrier x dim C
  std::vector<SpanConstraint> spans;
};

inline std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

inline void check_shape(const StarCoalgebra& c, const Multispan& ms) {
  if (ms.psi.rows() != ms.carrier || ms.psi.cols() != c.dim)
    throw input_error("shape", "carrier map must be carrier x dim C");
  for (const auto& s : ms.spans) {
    if (s.left.cols() != ipow(ms.carrier, s.l) || s.right.cols() != ipow(ms.carrier, s.r) || s.left.rows() != s.right.rows())
      throw input_error("shape", "span '" + s.name + "' does not match its shape (" + std::to_string(s.l) + "," +
                                     std::to_string(s.r) + ")");
  }
}

/// Value of left psi^l Delta^(l) - right psi^r Delta^(r) at x.
inline Vec span_defect(const StarCoalgebra& c, const Multispan& ms, const SpanConstraint& s, const Vec& x) {
  const Vec lv = s.left.apply(tensor_power_apply(ms.psi, iterated_comul(c, x, s.l), s.l));
  const Vec rv = s.right.apply(tensor_power_apply(ms.psi, iterated_comul(c, x, s.r), s.r));
  return lv - rv;
}

inline Space star_image(const StarCoalgebra& c, const Space& w) {
  std::vector<Vec> v;
  for (const auto& b : w.basis()) v.push_back(c.star->transpose().apply(conj_vector(b)));
  return Space::span(c.dim, v);
}

/// {x : every span commutes at x}, intersected with its *-image when C carries *.
inline Space constraint_subspace(const StarCoalgebra& c, const Multispan& ms) {
  check_shape(c, ms);
  EchelonBasis<Scalar> eq(c.dim);
  for (const auto& s : ms.spans) {
    Mat m(s.left.rows(), c.dim);
    for (std::size_t i = 0; i < c.dim; ++i) {
      const Vec d = span_defect(c, ms, s, c.basis(i));
      for (std::size_t k = 0; k < d.size(); ++k) m(k, i) = d[k];
    }
    for (std::size_t k = 0; k < m.rows() && !eq.full(); ++k) eq.insert(m.row(k));
  }
  Space w = Space::span(c.dim, eq.kernel());
  if (c.star) w = w.intersect(star_image(c, w));
  return w;
}

// ---- built-in spans on Hom(A,B) ----

/// (f (x) g) -> m_B (f (x) g) against f -> f m_A.
inline SpanConstraint multiplication_span(const StarAlgebra& a, const StarAlgebra& b) {
  const std::size_t na = a.dim, nb = b.dim, v = na * nb, t = nb * na * na;
  SpanConstraint s{2, 1, Mat(t, v * v), Mat(t, v), "multiplication"};
  for (std::size_t b1 = 0; b1 < nb; ++b1)
    for (std::size_t a1 = 0; a1 < na; ++a1)
      for (std::size_t b2 = 0; b2 < nb; ++b2)
        for (std::size_t a2 = 0; a2 < na; ++a2)
          for (const auto& [k, c] : b.mult.fiber(b1, b2)) s.left(k * na * na + a1 * na + a2, (b1 * na + a1) * v + b2 * na + a2) += c;
  for (std::size_t x = 0; x < na; ++x)
    for (std::size_t y = 0; y < na; ++y)
      for (const auto& [k, c] : a.mult.fiber(x, y))
        for (std::size_t b1 = 0; b1 < nb; ++b1) s.right(b1 * na * na + x * na + y, b1 * na + k) += c;
  return s;
}

/// 1 -> 1_B against f -> f(1_A).
inline SpanConstraint unit_span(const StarAlgebra& a, const StarAlgebra& b) {
  const std::size_t na = a.dim, nb = b.dim;
  SpanConstraint s{0, 1, Mat::from_columns(nb, {b.unit}), Mat(nb, na * nb), "unit"};
  for (std::size_t b1 = 0; b1 < nb; ++b1)
    for (std::size_t a1 = 0; a1 < na; ++a1) s.right(b1, b1 * na + a1) = a.unit[a1];
  return s;
}

/// g -> g iota against 1 -> f, for iota: A' -> A (columns) and a distinguished f: A' -> B.
inline SpanConstraint fixing_span(std::size_t na, std::size_t nb, const Mat& iota, const Mat& f) {
  const std::size_t k = iota.cols();
  if (iota.rows() != na || f.rows() != nb || f.cols() != k) throw input_error("shape", "fixing span maps do not match");
  SpanConstraint s{1, 0, Mat(nb * k, na * nb), Mat(nb * k, 1), "fixing"};
  for (std::size_t b1 = 0; b1 < nb; ++b1)
    for (std::size_t a1 = 0; a1 < na; ++a1)
      for (std::size_t j = 0; j < k; ++j)
        if (!is_zero(iota(a1, j))) s.left(b1 * k + j, b1 * na + a1) = iota(a1, j);
  for (std::size_t b1 = 0; b1 < nb; ++b1)
    for (std::size_t j = 0; j < k; ++j) s.right(b1 * k + j, 0) = f(b1, j);
  return s;
}

/// A subspace of A fixed pointwise, B = A.
inline SpanConstraint fixing_span(const StarAlgebra& a, const Space& fixed) {
  const Mat iota = Mat::from_columns(a.dim, fixed.basis());
  return fixing_span(a.dim, a.dim, iota, iota);
}

/// g -> phi_B g against 1 -> phi_A.
inline SpanConstraint functional_span(const Vec& phi_a, const Vec& phi_b) {
  const std::size_t na = phi_a.size(), nb = phi_b.size();
  SpanConstraint s{1, 0, Mat(na, na * nb), Mat::from_columns(na, {phi_a}), "functional"};
  for (std::size_t b1 = 0; b1 < nb; ++b1)
    for (std::size_t a1 = 0; a1 < na; ++a1) s.left(a1, b1 * na + a1) = phi_b[b1];
  return s;
}

/// Carrier map of an action: column h is the operator of e_h.
inline Mat carrier_of(const ModuleAlgebraAction& m) {
  std::vector<Vec> cols;
  for (std::size_t h = 0; h < m.hopf.dim(); ++h) cols.push_back(m.op(m.hopf.alg.basis(h)).vec());
  return Mat::from_columns(m.alg.dim * m.alg.dim, cols);
}

// ---- largest subcoalgebra ----

/// sigma(x) = map x, or map conj(x) when antilinear.
struct Stabilizer {
  Mat map;
  bool antilinear = false;
};

inline Stabilizer antipode_stabilizer(const HopfStarAlgebra& h) { return {h.s_matrix(), false}; }
inline Stabilizer star_stabilizer(const Mat& star) { return {star.transpose(), true}; }

struct SubcoalgebraResult {
  Space space;
  std::vector<std::size_t> trace;  // dim V_k per iteration
};

inline bool is_subcoalgebra(const StarCoalgebra& c, const Space& d) {
  std::vector<Vec> dd;
  for (const auto& x : d.basis())
    for (const auto& y : d.basis()) dd.push_back(tensor_vec(x, y));
  const Space sq = Space::span(c.dim * c.dim, dd);
  for (const auto& x : d.basis())
    if (!sq.contains(c.comul(x))) return false;
  return true;
}

inline bool is_stable(const Space& d, const Stabilizer& s) {
  for (const auto& x : d.basis())
    if (!d.contains(s.map.apply(s.antilinear ? conj_vector(x) : x))) return false;
  return true;
}

/**
 * Largest D in W with Delta(D) in D (x) D and sigma(D) in D, by the decreasing iteration
 * V_{k+1} = {x in V_k : Delta x in V_k (x) V_k, sigma(x) in V_k}.
 */
inline SubcoalgebraResult largest_subcoalgebra(const StarCoalgebra& c, const Space& w,
                                               const std::vector<Stabilizer>& stabilizers = {}) {
  if (w.ambient() != c.dim) throw input_error("shape", "subspace does not live in the coalgebra");
  const std::size_t n = c.dim;
  std::vector<Vec> dx(n);
  for (std::size_t i = 0; i < n; ++i) dx[i] = c.comul(c.basis(i));
  SubcoalgebraResult res;
  Space v = w;
  res.trace.push_back(v.dim());
  for (;;) {
    const auto ann = v.annihilator();
    EchelonBasis<Scalar> eq(n);
    for (const auto& phi : ann) eq.insert(phi);
    for (const auto& phi : ann) {
      Mat lft(n, n), rgt(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t a = 0; a < n; ++a)
          for (std::size_t b = 0; b < n; ++b) {
            const Scalar& t = dx[i][a * n + b];
            if (is_zero(t)) continue;
            if (!is_zero(phi[a])) lft(b, i) += phi[a] * t;
            if (!is_zero(phi[b])) rgt(a, i) += phi[b] * t;
          }
      for (std::size_t j = 0; j < n && !eq.full(); ++j) {
        eq.insert(lft.row(j));
        eq.insert(rgt.row(j));
      }
      for (const auto& s : stabilizers) {
        Vec row(n, Scalar(0));
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t k = 0; k < n; ++k)
            if (!is_zero(phi[k]) && !is_zero(s.map(k, i))) row[i] += phi[k] * s.map(k, i);
        eq.insert(s.antilinear ? conj_vector(row) : row);
      }
      if (eq.full()) break;
    }
    Space next = Space::span(n, eq.kernel());
    res.trace.push_back(next.dim());
    if (next == v) break;
    v = std::move(next);
  }
  res.space = std::move(v);
  return res;
}

// ---- universal measuring relative to an ambient coalgebra ----

struct MeasuringResult {
  SubcoalgebraResult sub;
  Space constraints;
  StarCoalgebra induced;
  Report report{"measuring"};
};

/// Coalgebra structure of a subcoalgebra in its echelon basis.
inline StarCoalgebra reify_coalgebra(const StarCoalgebra& c, const Space& d) {
  if (!is_subcoalgebra(c, d)) throw input_error("not-a-subcoalgebra", "subspace is not closed under comultiplication");
  const std::size_t n = c.dim, k = d.dim();
  StarCoalgebra r{k, Tensor3(k, k, k), Vec(k), std::nullopt};
  const auto& piv = d.pivots();
  for (std::size_t i = 0; i < k; ++i) {
    const Vec t = c.comul(d.basis()[i]);
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b) {
        const Scalar& x = t[piv[a] * n + piv[b]];
        if (!is_zero(x)) r.comult.set(i, a, b, x);
      }
    r.counit[i] = c.eps(d.basis()[i]);
  }
  if (c.star && is_stable(d, star_stabilizer(*c.star))) {
    Mat st(k, k);
    for (std::size_t i = 0; i < k; ++i) {
      const Vec s = d.coordinates(c.star->transpose().apply(conj_vector(d.basis()[i])));
      for (std::size_t j = 0; j < k; ++j) st(i, j) = s[j];
    }
    r.star = st;
  }
  return r;
}

/**
 * Largest subcoalgebra of C whose image under psi measures A into B and satisfies the
 * extra spans. Terminal among measuring subcoalgebras of C.
 */
inline MeasuringResult universal_measuring_within(const StarCoalgebra& c, const StarAlgebra& a, const StarAlgebra& b,
                                                  const Mat& psi, const std::vector<SpanConstraint>& extra = {},
                                                  const std::vector<Stabilizer>& stabilizers = {}) {
  Multispan ms{a.dim * b.dim, psi, {multiplication_span(a, b), unit_span(a, b)}};
  ms.spans.insert(ms.spans.end(), extra.begin(), extra.end());
  MeasuringResult res;
  res.constraints = constraint_subspace(c, ms);
  res.sub = largest_subcoalgebra(c, res.constraints, stabilizers);
  res.induced = reify_coalgebra(c, res.sub.space);
  std::string w;
  for (std::size_t i = 0; i < res.sub.space.dim() && w.empty(); ++i)
    for (const auto& s : ms.spans)
      if (!is_zero_vector(span_defect(c, ms, s, res.sub.space.basis()[i]))) {
        w = s.name + witness(i);
        break;
      }
  res.report.add("measures", w.empty(), w);
  res.report.add("subcoalgebra", is_subcoalgebra(c, res.sub.space));
  res.report.add("induced-coalgebra", validate_coalgebra(res.induced).passed());
  return res;
}

// ---- Hopf *-subalgebras ----

struct HopfSubalgebraResult {
  Space space;
  SubcoalgebraResult coalgebra_step;
  Report report{"hopf-subalgebra"};
};

/// Hopf *-subalgebra axioms for a subspace: unital *-subalgebra, Delta- and S-closed.
inline Report hopf_subalgebra_check(const HopfStarAlgebra& q, const Space& s) {
  Report r("hopf-star-subalgebra");
  r.add("unital-star-subalgebra", is_unital_star_subalgebra(s, q.alg));
  r.add("comultiplication-closed", is_subcoalgebra(coalgebra_of(q), s));
  r.add("antipode-closed", is_stable(s, antipode_stabilizer(q)));
  return r;
}

/// Largest Hopf *-subalgebra of Q inside a unital *-subalgebra W.
inline HopfSubalgebraResult largest_hopf_star_subalgebra(const HopfStarAlgebra& q, const Space& w) {
  if (!is_unital_star_subalgebra(w, q.alg)) throw input_error("not-a-subalgebra", "W is not a unital *-subalgebra");
  HopfSubalgebraResult res;
  res.coalgebra_step = largest_subcoalgebra(coalgebra_of(q), w, {antipode_stabilizer(q), star_stabilizer(q.alg.star)});
  res.space = generated_subalgebra(res.coalgebra_step.space.basis(), q.alg);
  res.report.add("inside-W", res.space.is_subspace_of(w));
  res.report.merge(hopf_subalgebra_check(q, res.space));
  // any Hopf *-subalgebra of W is a stable subcoalgebra of W, hence inside the first step
  res.report.add("maximal", res.coalgebra_step.space.is_subspace_of(res.space));
  return res;
}

/// Largest Hopf *-subalgebra of Q commuting with the *-closed set S.
inline HopfSubalgebraResult hopf_centralizer(const HopfStarAlgebra& q, const Space& s) {
  for (const auto& x : s.basis())
    if (!s.contains(q.alg.apply_star(x))) throw input_error("not-star-closed", "S is not *-closed");
  return largest_hopf_star_subalgebra(q, relative_commutant(s, q.alg));
}

}  // namespace hopfgal
