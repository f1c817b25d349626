#include <gtest/gtest.h>

#include "hopfgal/banica.hpp"

using namespace hopfgal;

namespace {

HopfStarAlgebra cz2() { return group_algebra(cyclic_group(2)); }

// g -> -g on CZ2, the nontrivial automorphism
ModuleAlgebraAction sign_flip_action() {
  const auto h = cz2();
  Mat s = Mat::identity(2);
  s(1, 1) = -1;
  return {h, h.alg, action_tensor({Mat::identity(2), s})};
}

// H = C(<t>) with t = (12), coacting on C(S3) by left translation: delta_h -> delta_h (x) delta_e + delta_th (x) delta_t
ComoduleAlgebra s3_left_translation_comodule() {
  const auto t = symmetric_group_3();
  const auto h = function_algebra(cyclic_group(2));
  const auto b = function_algebra_on(6);
  Mat co(12, 6);
  for (std::size_t x = 0; x < 6; ++x) {
    co(x * 2 + 0, x) = 1;
    co(t[1][x] * 2 + 1, x) = 1;
  }
  return {h, b, co};
}

}  // namespace

TEST(Banica, ComoduleValidation) {
  EXPECT_TRUE(validate_comodule(regular_comodule(cz2())).passed());
  EXPECT_TRUE(validate_comodule(trivial_comodule(cz2())).passed());
  EXPECT_TRUE(validate_comodule(s3_left_translation_comodule()).passed()) << validate_comodule(s3_left_translation_comodule()).summary();
  auto bad = regular_comodule(cz2());
  bad.coact(3, 1) = 0;  // beta(g) loses g (x) g
  const auto r = validate_comodule(bad);
  EXPECT_FALSE(r.passed("counit"));
  EXPECT_EQ(r.find("counit")->witness, "(1)");
}

TEST(Banica, ProductCoactionTrivialComodule) {
  const auto act = z2_adz_action();
  const auto sp = smash_product(act);
  const Mat m = product_coaction(trivial_comodule(cz2()), sp);
  // oracle: a # h -> a # h_(1) (x) h_(2) on group-likes is a # g (x) g
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t g = 0; g < 2; ++g) {
      Vec want(16, Scalar(0));
      want[(a * 2 + g) * 2 + g] = 1;
      EXPECT_EQ(m.col(a * 2 + g), want);
    }
}

TEST(Banica, ProductCoactionOnGroupLikes) {
  const auto sp = smash_product(z2_adz_action());
  const Mat m = product_coaction(regular_comodule(cz2()), sp);
  // b (x) a # k -> b (x) a # k (x) k b^{-1}; in Z2, k b^{-1} = k + b mod 2
  for (std::size_t b = 0; b < 2; ++b)
    for (std::size_t a = 0; a < 4; ++a)
      for (std::size_t k = 0; k < 2; ++k) {
        const std::size_t x = b * 8 + a * 2 + k;
        Vec want(32, Scalar(0));
        want[x * 2 + (k + b) % 2] = 1;
        EXPECT_EQ(m.col(x), want) << x;
      }
  EXPECT_TRUE(validate_coaction(m, sp.action.hopf, 16).passed());
}

TEST(Banica, RequiresInvolutiveAntipodeAndCop) {
  const auto sp = smash_product(z2_adz_action());
  auto h = cz2();
  auto b = regular_comodule(h);
  b.hopf.antipode = Mat::identity(2);
  b.hopf.antipode(0, 0) = 2;  // S^2 != id
  try {
    product_coaction(b, sp);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "antipode-not-involutive");
  }
  EXPECT_THROW(product_coaction(regular_comodule(group_algebra(cyclic_group(3))), sp), Error);
}

TEST(Banica, FixedPointAlgebraZ2) {
  const auto d = banica_data(regular_comodule(cz2()), z2_adz_action());
  EXPECT_TRUE(d.report.passed()) << d.report.summary();
  // oracle: b (x) a # k is invariant iff k = b, so C = span{g^i (x) a # g^i}
  std::vector<Vec> o;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t a = 0; a < 4; ++a) o.push_back(basis_vector<Scalar>(16, i * 8 + a * 2 + i));
  EXPECT_EQ(d.c, Space::span(16, o));
  EXPECT_EQ(d.c.dim(), 8u);
}

TEST(Banica, FixedPointAlgebraTrivialComodule) {
  const auto d = banica_data(trivial_comodule(cz2()), z2_adz_action());
  EXPECT_TRUE(d.report.passed()) << d.report.summary();
  std::vector<Vec> cols;
  for (std::size_t a = 0; a < 4; ++a) cols.push_back(d.embed_a.col(a));
  EXPECT_EQ(d.c, Space::span(8, cols));
  // E(a # g) = 0, E(a # e) = a # e
  for (std::size_t a = 0; a < 4; ++a) {
    EXPECT_EQ(d.e.col(a * 2 + 1), Vec(8, Scalar(0)));
    EXPECT_EQ(d.e.col(a * 2), basis_vector<Scalar>(8, a * 2));
  }
}

TEST(Banica, HaarSwap) {
  for (const auto& h : {cz2(), group_algebra(symmetric_group_3()), function_algebra(symmetric_group_3())}) {
    const auto r = haar_swap_check(h, haar(h));
    EXPECT_TRUE(r.passed()) << r.summary();
  }
  // x = y = g in CZ2: g tau(g g^{-1}) = g and tau(g g^{-1}) g = g
  const auto h = cz2();
  const Vec tau = haar(h);
  EXPECT_EQ(tau, (Vec{Scalar(1), Scalar(0)}));
}

TEST(Banica, LambdaAction) {
  const auto l = lambda_action(regular_comodule(group_algebra(symmetric_group_3())));
  EXPECT_TRUE(l.report.passed()) << l.report.summary();
  for (std::size_t g = 0; g < 6; ++g) {
    Mat p(6, 6);
    p(g, g) = 1;
    EXPECT_EQ(l.ops[g], p);
  }
  EXPECT_EQ(l.image.dim(), 6u);
  const auto l2 = lambda_action(regular_comodule(cz2()));
  EXPECT_EQ(l2.image.dim(), 2u);
  // epsilon acts as the identity
  EXPECT_EQ(l2.ops[0] + l2.ops[1], Mat::identity(2));
}

TEST(Banica, CentralizerOfTransposition) {
  const auto b = s3_left_translation_comodule();
  const auto k = function_algebra(cyclic_group(2));
  const auto d = banica_data(b, trivial_action(k, matrix_algebra(1)));
  EXPECT_TRUE(d.report.passed()) << d.report.summary();
  const auto qact = translation_action(symmetric_group_3());
  const auto r = qgal_banica(d, qact.hopf, qact);
  EXPECT_TRUE(r.passed()) << r.report.summary();
  EXPECT_EQ(r.commuting.dim(), 4u);
  EXPECT_EQ(r.space, Space::span(6, {basis_vector<Scalar>(6, 0), basis_vector<Scalar>(6, 1)}));
  // double centralizer, reported only
  const auto once = hopf_centralizer(qact.hopf, r.space);
  const auto twice = hopf_centralizer(qact.hopf, once.space);
  RecordProperty("double_centralizer_dim", static_cast<int>(twice.space.dim()));
}

TEST(Banica, TrivialLambdaGivesWholeAmbient) {
  const auto h = cz2();
  ComoduleAlgebra b{h, h.alg, Mat(4, 2)};
  for (std::size_t x = 0; x < 2; ++x) b.coact(x * 2 + 0, x) = 1;  // beta(b) = b (x) 1
  const auto d = banica_data(b, z2_adz_action());
  EXPECT_TRUE(d.report.passed()) << d.report.summary();
  EXPECT_EQ(d.c.dim(), 8u);
  const auto amb = sign_flip_action();
  const auto r = qgal_banica(d, amb.hopf, amb);
  EXPECT_TRUE(r.passed()) << r.report.summary();
  EXPECT_EQ(r.space.dim(), 2u);
}

TEST(Banica, Z2PipelineMatchesDepthTwo) {
  const auto d = banica_data(regular_comodule(cz2()), z2_adz_action());
  const auto amb = sign_flip_action();
  const auto r = qgal_banica(d, amb.hopf, amb);
  EXPECT_TRUE(r.passed()) << r.report.summary();
  EXPECT_EQ(r.qgal.dim(), 2u);
  const auto cmp = depth2_comparison(d, r);
  EXPECT_TRUE(cmp.report.passed()) << cmp.report.summary();
  // sign flip goes to the character delta_e - delta_g of C(Z2)
  Mat want(2, 2);
  want(0, 0) = 1;
  want(1, 0) = 1;
  want(0, 1) = 1;
  want(1, 1) = -1;
  const Vec sigma = r.space.coordinates(basis_vector<Scalar>(2, 1));
  const Vec unit = r.space.coordinates(basis_vector<Scalar>(2, 0));
  EXPECT_EQ(cmp.factor.phi.apply(sigma), want.col(1));
  EXPECT_EQ(cmp.factor.phi.apply(unit), want.col(0));
}

TEST(Banica, AmbientActionMustBeValid) {
  const auto d = banica_data(regular_comodule(cz2()), z2_adz_action());
  auto amb = sign_flip_action();
  Mat s = Mat::identity(2);
  s(1, 1) = 2;
  amb.act = action_tensor({Mat::identity(2), s});
  try {
    qgal_banica(d, amb.hopf, amb);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "ambient-action-invalid");
  }
}

TEST(Banica, TqTrivialComodule) {
  const auto d = banica_data(trivial_comodule(cz2()), z2_adz_action());
  const auto one = group_algebra(cyclic_group(1));
  const auto r = t_q_extraction(d, one, trivial_action(one, reify(d.total, d.c)));
  EXPECT_TRUE(r.report.passed()) << r.report.summary();
  // T_1(1 (x) h) = tau(h)
  EXPECT_EQ(r.t[0](0, 0), Scalar(1));
  EXPECT_EQ(r.t[0](0, 1), Scalar(0));
}

TEST(Banica, TqZ2Lifted) {
  const auto d = banica_data(regular_comodule(cz2()), z2_adz_action());
  const auto amb = sign_flip_action();
  const auto r = qgal_banica(d, amb.hopf, amb);
  const auto tq = t_q_extraction(d, r.qgal, r.lifted);
  EXPECT_TRUE(tq.report.passed()) << tq.report.summary();
  // unit of the centralizer: T(b (x) h) = b_0 tau(h S(b_1)) = [h = b] b
  const Vec u = r.space.coordinates(basis_vector<Scalar>(2, 0));
  Mat t1(2, 4);
  for (std::size_t i = 0; i < r.qgal.dim(); ++i)
    if (!is_zero(u[i])) t1 = t1 + u[i] * tq.t[i];
  Mat want(2, 4);
  want(0, 0) = 1;
  want(1, 3) = 1;
  EXPECT_EQ(t1, want);
  // sign flip: T(g (x) g) = -g
  const Vec s = r.space.coordinates(basis_vector<Scalar>(2, 1));
  Mat ts(2, 4);
  for (std::size_t i = 0; i < r.qgal.dim(); ++i)
    if (!is_zero(s[i])) ts = ts + s[i] * tq.t[i];
  want(1, 3) = -1;
  EXPECT_EQ(ts, want);
}
