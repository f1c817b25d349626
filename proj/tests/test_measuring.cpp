#include <gtest/gtest.h>

#include <random>

#include "hopfgal/measuring.hpp"

using namespace hopfgal;

namespace {

StarCoalgebra plain(StarCoalgebra c) {
  c.star.reset();
  return c;
}

// Oracle pool: small coalgebras whose subcoalgebra lattices are known in closed form.
struct Known {
  StarCoalgebra c;
  std::vector<Space> subs;  // every subcoalgebra
};

std::vector<Space> all_spans_of_basis_subsets(std::size_t n) {
  std::vector<Space> r;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    std::vector<Vec> v;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) v.push_back(basis_vector<Scalar>(n, i));
    r.push_back(Space::span(n, v));
  }
  return r;
}

// group coalgebra: subcoalgebras are spans of sets of group-likes
Known group_known(const GroupTable& t) { return {plain(coalgebra_of(group_algebra(t))), all_spans_of_basis_subsets(t.size())}; }

// divided powers x_0..x_k: subcoalgebras form the chain span{x_0..x_j}
Known divided_powers(std::size_t k) {
  const std::size_t n = k + 1;
  StarCoalgebra c{n, Tensor3(n, n, n), basis_vector<Scalar>(n, 0), std::nullopt};
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t i = 0; i <= m; ++i) c.comult.set(m, i, m - i, Scalar(1));
  std::vector<Space> subs{Space::zero(n)};
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Vec> v;
    for (std::size_t i = 0; i <= j; ++i) v.push_back(basis_vector<Scalar>(n, i));
    subs.push_back(Space::span(n, v));
  }
  return {c, subs};
}

// matrix coalgebra on Mat2 is simple
Known matrix_coalgebra() {
  StarCoalgebra c{4, Tensor3(4, 4, 4), Vec(4, Scalar(0)), std::nullopt};
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      for (std::size_t k = 0; k < 2; ++k) c.comult.set(i * 2 + j, i * 2 + k, k * 2 + j, Scalar(1));
      if (i == j) c.counit[i * 2 + j] = 1;
    }
  return {c, {Space::zero(4), Space::full(4)}};
}

Known direct_sum(const Known& a, const Known& b) {
  const std::size_t n = a.c.dim + b.c.dim, na = a.c.dim;
  StarCoalgebra c{n, Tensor3(n, n, n), Vec(n, Scalar(0)), std::nullopt};
  for (std::size_t i = 0; i < na; ++i) {
    c.counit[i] = a.c.counit[i];
    for (std::size_t j = 0; j < na; ++j)
      for (const auto& [k, x] : a.c.comult.fiber(i, j)) c.comult.set(i, j, k, x);
  }
  for (std::size_t i = 0; i < b.c.dim; ++i) {
    c.counit[na + i] = b.c.counit[i];
    for (std::size_t j = 0; j < b.c.dim; ++j)
      for (const auto& [k, x] : b.c.comult.fiber(i, j)) c.comult.set(na + i, na + j, na + k, x);
  }
  std::vector<Space> subs;
  for (const auto& sa : a.subs)
    for (const auto& sb : b.subs) {
      std::vector<Vec> v;
      for (const auto& x : sa.basis()) {
        Vec y(n, Scalar(0));
        for (std::size_t i = 0; i < na; ++i) y[i] = x[i];
        v.push_back(y);
      }
      for (const auto& x : sb.basis()) {
        Vec y(n, Scalar(0));
        for (std::size_t i = 0; i < b.c.dim; ++i) y[na + i] = x[i];
        v.push_back(y);
      }
      subs.push_back(Space::span(n, v));
    }
  return {c, subs};
}

// New basis f_i = P e_i: Delta'(f_i) = (P^-1 (x) P^-1) Delta(P e_i).
Known transformed(const Known& k, const Mat& p) {
  const Mat pinv = *inverse(p);
  const std::size_t n = k.c.dim;
  StarCoalgebra c{n, Tensor3(n, n, n), Vec(n), std::nullopt};
  for (std::size_t i = 0; i < n; ++i) {
    const Vec d = tensor_apply(pinv, pinv, k.c.comul(p.col(i)));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (!is_zero(d[a * n + b])) c.comult.set(i, a, b, d[a * n + b]);
    c.counit[i] = k.c.eps(p.col(i));
  }
  std::vector<Space> subs;
  for (const auto& s : k.subs) subs.push_back(s.image(pinv));
  return {c, subs};
}

Scalar small_gaussian(std::mt19937& rng) {
  std::uniform_int_distribution<int> d(-1, 1);
  return Scalar(d(rng)) + Scalar(d(rng)) * imag_unit();
}

Mat random_invertible(std::size_t n, std::mt19937& rng) {
  for (;;) {
    Mat p(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) p(i, j) = small_gaussian(rng);
    if (rank(p) == n) return p;
  }
}

Space oracle_largest(const Known& k, const Space& w) {
  Space best = Space::zero(k.c.dim);
  for (const auto& s : k.subs)
    if (s.is_subspace_of(w)) best = best.sum(s);
  return best;
}

Vec elem(std::initializer_list<long> xs) {
  Vec v;
  for (long x : xs) v.push_back(Scalar(x));
  return v;
}

ModuleAlgebraAction z4_by_adz() {
  const Mat z = pauli_z(), one = Mat::identity(2);
  return conjugation_action(cyclic_group(4), {one, z, one, z});
}

}  // namespace

TEST(Measuring, IteratedComultiplication) {
  auto c = divided_powers(2).c;
  EXPECT_EQ(iterated_comul(c, c.basis(2), 0), Vec{Scalar(0)});
  EXPECT_EQ(iterated_comul(c, c.basis(2), 1), c.basis(2));
  // Delta^(3) x_2 = sum over i+j+k = 2 of x_i x_j x_k: six terms
  auto t = iterated_comul(c, c.basis(2), 3);
  std::size_t nz = 0;
  for (const auto& x : t) nz += is_zero(x) ? 0 : 1;
  EXPECT_EQ(nz, 6u);
  EXPECT_EQ(t[0 * 9 + 1 * 3 + 1], Scalar(1));
}

TEST(Measuring, ConstraintSubspaceForActions) {
  auto m = translation_action(symmetric_group_3());
  auto c = coalgebra_of(m.hopf);
  Multispan ms{36, carrier_of(m), {multiplication_span(m.alg, m.alg), unit_span(m.alg, m.alg)}};
  EXPECT_EQ(constraint_subspace(c, ms), Space::full(6));
  EXPECT_EQ(constraint_subspace(c, Multispan{36, carrier_of(m), {}}), Space::full(6));
}

TEST(Measuring, FixingSpanPicksTrivialGroupLikes) {
  auto m = z4_by_adz();
  auto c = coalgebra_of(m.hopf);
  Multispan ms{16, carrier_of(m), {fixing_span(m.alg, whole(m.alg))}};
  auto w = constraint_subspace(c, ms);
  // c_1 + c_3 = 0 by hand
  EXPECT_EQ(w, Space::span(4, {elem({1, 0, 0, 0}), elem({0, 0, 1, 0}), elem({0, 1, 0, -1})}));
  auto d = largest_subcoalgebra(c, w);
  EXPECT_EQ(d.space, Space::span(4, {elem({1, 0, 0, 0}), elem({0, 0, 1, 0})}));
}

TEST(Measuring, ShapeMismatchIsAnError) {
  auto m = pauli_action();
  auto c = coalgebra_of(m.hopf);
  auto s = multiplication_span(m.alg, m.alg);
  s.l = 1;
  EXPECT_THROW(constraint_subspace(c, Multispan{16, carrier_of(m), {s}}), Error);
}

TEST(Measuring, LargestSubcoalgebraSmallCases) {
  auto c = plain(coalgebra_of(group_algebra(cyclic_group(2))));
  EXPECT_EQ(largest_subcoalgebra(c, Space::full(2)).space, Space::full(2));
  auto e = Space::span(2, {elem({1, 0})});
  EXPECT_EQ(largest_subcoalgebra(c, e).space, e);
  auto r = largest_subcoalgebra(c, Space::span(2, {elem({-1, 1})}));
  EXPECT_EQ(r.space.dim(), 0u);
  EXPECT_EQ(r.trace.front(), 1u);
  // the antipode stabilizer removes g and g^2 from ZZ3 unless both are present
  auto h3 = group_algebra(cyclic_group(3));
  auto w = Space::span(3, {elem({1, 0, 0}), elem({0, 1, 0})});
  EXPECT_EQ(largest_subcoalgebra(coalgebra_of(h3), w).space, w);
  EXPECT_EQ(largest_subcoalgebra(coalgebra_of(h3), w, {antipode_stabilizer(h3)}).space, Space::span(3, {elem({1, 0, 0})}));
}

TEST(Measuring, LargestSubcoalgebraMatchesOracle) {
  std::vector<Known> pool{group_known(cyclic_group(2)), group_known(cyclic_group(3)), group_known(cyclic_group(4)),
                          group_known(klein_group()),    divided_powers(1),             divided_powers(2),
                          divided_powers(3),             matrix_coalgebra(),            direct_sum(group_known(cyclic_group(2)), divided_powers(1))};
  std::mt19937 rng(11);
  int checked = 0;
  for (int t = 0; t < 120; ++t) {
    const Known& base = pool[static_cast<std::size_t>(t) % pool.size()];
    const std::size_t n = base.c.dim;
    Known k = transformed(base, random_invertible(n, rng));
    ASSERT_TRUE(validate_coalgebra(k.c).passed());
    Space w = Space::zero(n);
    for (const auto& s : k.subs)
      if (rng() % 3 == 0) w = w.sum(s);
    for (unsigned extra = rng() % 3; extra > 0; --extra) {
      Vec v(n);
      for (auto& x : v) x = small_gaussian(rng);
      w = w.sum(Space::span(n, {v}));
    }
    auto got = largest_subcoalgebra(k.c, w);
    EXPECT_EQ(got.space, oracle_largest(k, w)) << "instance " << t;
    EXPECT_TRUE(is_subcoalgebra(k.c, got.space));
    ++checked;
  }
  EXPECT_GE(checked, 100);
}

TEST(Measuring, Monotone) {
  auto k = divided_powers(3);
  std::mt19937 rng(5);
  for (int t = 0; t < 20; ++t) {
    Vec a(4), b(4);
    for (auto& x : a) x = small_gaussian(rng);
    for (auto& x : b) x = small_gaussian(rng);
    auto w1 = k.subs[2].sum(Space::span(4, {a}));
    auto w2 = w1.sum(Space::span(4, {b}));
    EXPECT_TRUE(largest_subcoalgebra(k.c, w1).space.is_subspace_of(largest_subcoalgebra(k.c, w2).space));
  }
}

TEST(Measuring, UniversalMeasuring) {
  auto m = translation_action(cyclic_group(2));
  auto c = coalgebra_of(m.hopf);
  auto full = universal_measuring_within(c, m.alg, m.alg, carrier_of(m));
  EXPECT_EQ(full.sub.space, Space::full(2));
  EXPECT_TRUE(full.report.passed()) << full.report.summary();

  // psi(g) = 2 id is linear but not multiplicative
  Mat psi = carrier_of(m);
  const Vec twice = (Scalar(2) * Mat::identity(2)).vec();
  for (std::size_t k = 0; k < 4; ++k) psi(k, 1) = twice[k];
  auto bad = universal_measuring_within(c, m.alg, m.alg, psi);
  EXPECT_EQ(bad.sub.space, Space::span(2, {elem({1, 0})}));
  EXPECT_TRUE(bad.report.passed());

  auto z = z4_by_adz();
  auto fixed = universal_measuring_within(coalgebra_of(z.hopf), z.alg, z.alg, carrier_of(z), {fixing_span(z.alg, whole(z.alg))});
  EXPECT_EQ(fixed.sub.space, Space::span(4, {elem({1, 0, 0, 0}), elem({0, 0, 1, 0})}));
  EXPECT_EQ(fixed.induced.dim, 2u);
}

TEST(Measuring, UniversalMeasuringIsTerminalAmongGroupLikeSpans) {
  auto z = z4_by_adz();
  auto c = coalgebra_of(z.hopf);
  auto extra = fixing_span(z.alg, whole(z.alg));
  auto d = universal_measuring_within(c, z.alg, z.alg, carrier_of(z), {extra}).sub.space;
  Multispan ms{16, carrier_of(z), {multiplication_span(z.alg, z.alg), unit_span(z.alg, z.alg), extra}};
  for (const auto& s : all_spans_of_basis_subsets(4)) {
    bool measures = true;
    for (const auto& x : s.basis())
      for (const auto& sp : ms.spans) measures = measures && is_zero_vector(span_defect(c, ms, sp, x));
    if (measures) {
      EXPECT_TRUE(s.is_subspace_of(d));
    }
  }
}

TEST(Measuring, FixingSpanAgreesWithInvariants) {
  for (const auto& m : {pauli_action(), z2_adz_action(), translation_action(cyclic_group(3)), z4_by_adz()}) {
    auto c = coalgebra_of(m.hopf);
    const Space inv = invariants(m);
    auto r = universal_measuring_within(c, m.alg, m.alg, carrier_of(m), {fixing_span(m.alg, inv)});
    EXPECT_EQ(r.sub.space, Space::full(m.hopf.dim()));
    // and the common fixed subspace of the terminal object is A^H again
    EchelonBasis<Scalar> eq(m.alg.dim);
    for (const auto& x : r.sub.space.basis()) {
      const Mat d = m.op(x) - c.eps(x) * Mat::identity(m.alg.dim);
      for (std::size_t i = 0; i < d.rows(); ++i) eq.insert(d.row(i));
    }
    EXPECT_EQ(Space::span(m.alg.dim, eq.kernel()), inv);
  }
}

TEST(Measuring, HopfCentralizerS3) {
  auto q = group_algebra(symmetric_group_3());
  auto s12 = Space::span(6, {q.alg.basis(0), q.alg.basis(1)});
  auto r = hopf_centralizer(q, s12);
  EXPECT_EQ(r.space, s12);
  EXPECT_TRUE(r.report.passed()) << r.report.summary();
  EXPECT_EQ(relative_commutant(s12, q.alg).dim(), 4u);

  auto one = hopf_centralizer(q, scalars(q.alg));
  EXPECT_EQ(one.space, Space::full(6));

  auto c = hopf_centralizer(q, whole(q.alg));
  EXPECT_EQ(c.space, scalars(q.alg));
  // brute force: the subcoalgebras of CS3 are spans of group-likes; keep those in the center
  Space best = Space::zero(6);
  for (const auto& s : all_spans_of_basis_subsets(6))
    if (s.is_subspace_of(center(q.alg)) && is_stable(s, antipode_stabilizer(q))) best = best.sum(s);
  EXPECT_EQ(generated_subalgebra(best.basis(), q.alg), c.space);
  EXPECT_TRUE(validate_hopf(reify_hopf(q, c.space)).passed());
  EXPECT_TRUE(validate_hopf(reify_hopf(q, r.space)).passed());
}

TEST(Measuring, HopfSubalgebraErrors) {
  auto q = group_algebra(symmetric_group_3());
  EXPECT_THROW(largest_hopf_star_subalgebra(q, Space::span(6, {q.alg.basis(1)})), Error);
  // (123) alone is not *-closed
  EXPECT_THROW(hopf_centralizer(q, Space::span(6, {q.alg.basis(4)})), Error);
  EXPECT_EQ(largest_hopf_star_subalgebra(q, Space::full(6)).space, Space::full(6));
}

TEST(Measuring, HopfSubalgebrasOfFunctionsOnS3) {
  auto f = function_algebra(symmetric_group_3());
  // C(S3) is commutative, so every centralizer is all of it
  EXPECT_EQ(hopf_centralizer(f, Space::span(6, {f.alg.basis(0), f.alg.unit})).space, Space::full(6));
  const auto t = symmetric_group_3();
  auto coset_functions = [&](const std::vector<std::size_t>& sub) {
    std::vector<Vec> v;
    for (std::size_t g = 0; g < 6; ++g) {
      Vec ind(6, Scalar(0));
      for (auto h : sub) ind[t[g][h]] = 1;
      v.push_back(ind);
    }
    return Space::span(6, v);
  };
  // A3 is normal: functions on S3/A3 form a Hopf *-subalgebra
  auto a3 = coset_functions({0, 4, 5});
  EXPECT_EQ(a3.dim(), 2u);
  EXPECT_EQ(largest_hopf_star_subalgebra(f, a3).space, a3);
  // <(12)> is not normal and contains no nontrivial normal subgroup
  auto h12 = coset_functions({0, 1});
  EXPECT_EQ(h12.dim(), 3u);
  EXPECT_EQ(largest_hopf_star_subalgebra(f, h12).space, scalars(f.alg));
}
