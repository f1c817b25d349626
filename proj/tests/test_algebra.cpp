#include <gtest/gtest.h>

#include <random>

#include "hopfgal/algebra.hpp"
#include "hopfgal/fixtures.hpp"

using namespace hopfgal;

namespace {

// Oracle: multiply actual n x n matrices and compare with the structure constants.
Mat mat_from(std::size_t n, const Vec& v) { return Mat::unvec(n, n, v); }

Vec diag2(long a, long b) { return Vec{Scalar(a), Scalar(0), Scalar(0), Scalar(b)}; }

}  // namespace

TEST(Algebra, MatrixAlgebraPassesAllAxioms) {
  for (std::size_t n : {1u, 2u, 3u}) {
    auto a = matrix_algebra(n);
    auto r = validate_algebra(a);
    EXPECT_TRUE(r.passed()) << r.summary();
  }
}

TEST(Algebra, StructureConstantsAgreeWithMatrixProduct) {
  auto a = matrix_algebra(3);
  std::mt19937 rng(1);
  std::uniform_int_distribution<int> d(-3, 3);
  for (int t = 0; t < 10; ++t) {
    Vec x(9), y(9);
    for (auto& v : x) v = d(rng);
    for (auto& v : y) v = d(rng);
    EXPECT_EQ(mat_from(3, a.mul(x, y)), mat_from(3, x) * mat_from(3, y));
    EXPECT_EQ(mat_from(3, a.apply_star(x)), mat_from(3, x).adjoint());
    EXPECT_EQ(a.left_matrix(x).apply(y), a.mul(x, y));
    EXPECT_EQ(a.right_matrix(y).apply(x), a.mul(x, y));
  }
}

TEST(Algebra, PerturbedAssociativityHasWitness) {
  auto a = matrix_algebra(2);
  a.mult.set(0, 1, 0, Scalar(1));  // E11 E12 = E12 + E11
  auto r = validate_algebra(a);
  EXPECT_FALSE(r.passed("associativity"));
  EXPECT_FALSE(r.find("associativity")->witness.empty());
  auto defects = associativity_defects(a);
  bool has_010 = std::find(defects.begin(), defects.end(), std::array<std::size_t, 3>{0, 1, 0}) != defects.end();
  EXPECT_TRUE(has_010);
  // (E11 E12) E11 = E11 but E11 (E12 E11) = 0
  EXPECT_NE(a.mul(a.mul_basis(0, 1), a.basis(0)), a.mul(a.basis(0), a.mul_basis(1, 0)));
}

TEST(Algebra, FunctionAlgebraIsCommutative) {
  auto c = function_algebra_on(2);
  EXPECT_TRUE(validate_algebra(c).passed());
  EXPECT_TRUE(is_commutative(c));
  EXPECT_FALSE(is_commutative(matrix_algebra(2)));
}

TEST(Algebra, CommutantOfMatrixAlgebraIsScalars) {
  auto a = matrix_algebra(2);
  EXPECT_EQ(relative_commutant(whole(a), a), scalars(a));
  EXPECT_EQ(center(a).dim(), 1u);
}

TEST(Algebra, CommutantOfDiagonal) {
  auto a = matrix_algebra(2);
  auto diag = Space::span(4, {diag2(1, 0), diag2(0, 1)});
  auto c = relative_commutant(diag, a);
  EXPECT_EQ(c, diag);
  // oracle: solve [x, E11] = 0 by hand; x = [[p, q], [r, s]] gives q = r = 0
  Mat e11 = mat_from(2, diag2(1, 0));
  for (const auto& v : c.basis()) EXPECT_EQ(mat_from(2, v) * e11, e11 * mat_from(2, v));
}

TEST(Algebra, CommutantOfLeftTensorLeg) {
  auto m2 = matrix_algebra(2);
  auto t = tensor_product(m2, m2);
  std::vector<Vec> left;
  for (std::size_t i = 0; i < 4; ++i) left.push_back(tensor_vec(m2.basis(i), m2.unit));
  auto c = relative_commutant(Space::span(16, left), t);
  EXPECT_EQ(c.dim(), 4u);
  std::vector<Vec> right;
  for (std::size_t i = 0; i < 4; ++i) right.push_back(tensor_vec(m2.unit, m2.basis(i)));
  EXPECT_EQ(c, Space::span(16, right));
}

TEST(Algebra, CommutantIsAntitoneAndDoubleCommutantContains) {
  auto a = matrix_algebra(2);
  std::mt19937 rng(4);
  std::uniform_int_distribution<int> d(-1, 1);
  for (int t = 0; t < 20; ++t) {
    std::vector<Vec> gs, hs;
    for (int k = 0; k < 2; ++k) {
      Vec x(4);
      for (auto& v : x) v = d(rng);
      gs.push_back(x);
    }
    hs = gs;
    Vec extra(4);
    for (auto& v : extra) v = d(rng);
    hs.push_back(extra);
    auto s = Space::span(4, gs), big = Space::span(4, hs);
    EXPECT_TRUE(relative_commutant(big, a).is_subspace_of(relative_commutant(s, a)));
    EXPECT_TRUE(s.is_subspace_of(relative_commutant(relative_commutant(s, a), a)));
  }
}

TEST(Algebra, GeneratedSubalgebra) {
  auto a = matrix_algebra(2);
  EXPECT_EQ(generated_subalgebra({a.unit}, a), scalars(a));
  EXPECT_EQ(generated_subalgebra({a.basis(1)}, a), whole(a));
  auto d = generated_subalgebra({diag2(1, -1)}, a);
  EXPECT_EQ(d.dim(), 2u);
  EXPECT_TRUE(is_unital_star_subalgebra(d, a));
  for (const auto& x : d.basis())
    for (const auto& y : d.basis()) EXPECT_TRUE(d.contains(a.mul(x, y)));
}

TEST(Algebra, ConditionalExpectations) {
  auto a = matrix_algebra(2);
  EXPECT_EQ(conditional_expectation(a, whole(a)), Mat::identity(4));
  // onto scalars: E(x) = tau(x) 1
  Mat e = conditional_expectation(a, scalars(a));
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(e.col(i), scaled(a.unit, a.tau(a.basis(i))));
  // onto the diagonal: kills E12, E21, fixes E11, E22
  auto diag = Space::span(4, {diag2(1, 0), diag2(0, 1)});
  Mat ed = conditional_expectation(a, diag);
  EXPECT_TRUE(is_zero_vector(ed.col(1)));
  EXPECT_TRUE(is_zero_vector(ed.col(2)));
  EXPECT_EQ(ed.col(0), a.basis(0));
  EXPECT_EQ(ed.col(3), a.basis(3));
  EXPECT_THROW(conditional_expectation(a, Space::span(4, {a.basis(1)})), Error);
}

TEST(Algebra, ConditionalExpectationProperties) {
  auto m2 = matrix_algebra(2);
  auto t = tensor_product(m2, m2);
  std::vector<Vec> left;
  for (std::size_t i = 0; i < 4; ++i) left.push_back(tensor_vec(m2.basis(i), m2.unit));
  auto n = Space::span(16, left);
  Mat e = conditional_expectation(t, n);
  EXPECT_EQ(e * e, e);
  for (std::size_t i = 0; i < 16; ++i) {
    const Vec x = t.basis(i);
    EXPECT_EQ(t.tau(e.apply(x)), t.tau(x));
    EXPECT_EQ(e.apply(t.apply_star(x)), t.apply_star(e.apply(x)));
    EXPECT_TRUE(n.contains(e.apply(x)));
    for (const auto& p : n.basis())
      for (const auto& q : n.basis()) EXPECT_EQ(e.apply(t.mul(p, t.mul(x, q))), t.mul(p, t.mul(e.apply(x), q)));
  }
}

TEST(Algebra, ReifiedSubalgebraValidates) {
  auto a = matrix_algebra(2);
  auto d = generated_subalgebra({diag2(1, -1)}, a);
  auto r = reify(a, d);
  EXPECT_EQ(r.dim, 2u);
  EXPECT_TRUE(validate_algebra(r).passed()) << validate_algebra(r).summary();
  EXPECT_TRUE(is_commutative(r));
}

TEST(Algebra, StateChecks) {
  auto a = matrix_algebra(2);
  auto r = validate_state(a);
  EXPECT_TRUE(r.passed()) << r.summary();
  a.state = Vec{Scalar(1), Scalar(0), Scalar(0), Scalar(0)};  // vector state, degenerate
  auto bad = validate_state(a);
  EXPECT_FALSE(bad.passed("nondegenerate"));
  EXPECT_FALSE(bad.passed("positive"));
}
