#include <gtest/gtest.h>

#include "hopfgal/actions.hpp"

using namespace hopfgal;

namespace {

std::vector<Vec> embedded_a(const SmashProduct& sp) {
  std::vector<Vec> v;
  for (std::size_t x = 0; x < sp.dim_a(); ++x) v.push_back(sp.embed_a.col(x));
  return v;
}

// Oracle for outerness data: elements u_g^* # g commute with A # 1 when g acts by Ad(u_g).
std::vector<Vec> implementing_elements(const SmashProduct& sp, const std::vector<Mat>& u) {
  std::vector<Vec> v;
  for (std::size_t g = 0; g < u.size(); ++g) v.push_back(sp.elem(u[g].adjoint().vec(), sp.action.hopf.alg.basis(g)));
  return v;
}

std::vector<Mat> pauli_unitaries() {
  const Mat x = pauli_x(), z = pauli_z();
  return {Mat::identity(2), z, x, x * z};
}

}  // namespace

TEST(Actions, StandardActionsValidate) {
  for (const auto& m : {translation_action(cyclic_group(2)), translation_action(symmetric_group_3()), pauli_action(),
                        z2_adz_action()}) {
    auto r = validate_action(m);
    EXPECT_TRUE(r.passed()) << r.summary();
  }
}

TEST(Actions, ZeroedTranslationEntryBreaksMeasuring) {
  auto m = translation_action(cyclic_group(2));
  m.act.set(1, 0, 1, Scalar(0));  // g . delta_e = 0
  auto r = validate_action(m);
  // the damaged map is still multiplicative; the unit law g . 1 = 1 is what breaks
  EXPECT_FALSE(r.passed("measuring"));
  EXPECT_EQ(r.find("measuring")->witness, "(1)");
  EXPECT_FALSE(r.passed("module"));
}

TEST(Actions, Invariants) {
  auto h = group_algebra(cyclic_group(3));
  auto a = matrix_algebra(2);
  EXPECT_EQ(invariants(trivial_action(h, a)), whole(a));
  auto p = pauli_action();
  EXPECT_EQ(invariants(p), scalars(p.alg));
  auto z = z2_adz_action();
  auto inv = invariants(z);
  EXPECT_EQ(inv.dim(), 2u);
  EXPECT_TRUE(inv.contains(z.alg.basis(0)));
  EXPECT_TRUE(inv.contains(z.alg.basis(3)));
  EXPECT_TRUE(is_unital_star_subalgebra(inv, z.alg));
}

TEST(Actions, SmashWithScalarsIsH) {
  auto h = group_algebra(symmetric_group_3());
  auto sp = smash_product(trivial_action(h, matrix_algebra(1)));
  EXPECT_EQ(sp.total.mult, h.alg.mult);
  EXPECT_EQ(sp.total.star, h.alg.star);
}

TEST(Actions, TranslationCrossedProductIsMat2) {
  auto sp = smash_product(translation_action(cyclic_group(2)));
  EXPECT_TRUE(validate_algebra(sp.total).passed()) << validate_algebra(sp.total).summary();
  EXPECT_EQ(center(sp.total).dim(), 1u);
  // Oracle: delta_h # g -> E_hh P_g on l^2(Z2) is a *-isomorphism onto Mat_2.
  const auto t = cyclic_group(2);
  std::vector<Mat> images;
  for (std::size_t h = 0; h < 2; ++h)
    for (std::size_t g = 0; g < 2; ++g) {
      Mat e(2, 2), p(2, 2);
      e(h, h) = 1;
      for (std::size_t k = 0; k < 2; ++k) p(t[g][k], k) = 1;
      images.push_back(e * p);
    }
  auto rep = [&](const Vec& v) {
    Mat m(2, 2);
    for (std::size_t i = 0; i < 4; ++i) m = m + v[i] * images[i];
    return m;
  };
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(rep(sp.total.mul_basis(i, j)), images[i] * images[j]);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(rep(sp.total.apply_star(sp.total.basis(i))), images[i].adjoint());
  std::vector<Vec> flat;
  for (const auto& m : images) flat.push_back(m.vec());
  EXPECT_EQ(Space::span(4, flat).dim(), 4u);
}

TEST(Actions, PauliSmashValidates) {
  auto sp = smash_product(pauli_action());
  EXPECT_EQ(sp.total.dim, 16u);
  auto r = validate_algebra(sp.total);
  EXPECT_TRUE(r.passed()) << r.summary();
  EXPECT_TRUE(sp.total.tracial);
  // embeddings are injective unital *-morphisms
  for (std::size_t x = 0; x < 4; ++x)
    for (std::size_t y = 0; y < 4; ++y)
      EXPECT_EQ(sp.embed_a.apply(sp.action.alg.mul_basis(x, y)), sp.total.mul(sp.embed_a.col(x), sp.embed_a.col(y)));
  for (std::size_t x = 0; x < 4; ++x)
    EXPECT_EQ(sp.embed_h.apply(sp.action.hopf.alg.apply_star(sp.action.hopf.alg.basis(x))),
              sp.total.apply_star(sp.embed_h.col(x)));
  // a (x) h -> (a # 1)(1 # h) is a bijection
  std::vector<Vec> prods;
  for (std::size_t x = 0; x < 4; ++x)
    for (std::size_t g = 0; g < 4; ++g) prods.push_back(sp.total.mul(sp.embed_a.col(x), sp.embed_h.col(g)));
  EXPECT_EQ(Space::span(16, prods).dim(), 16u);
}

TEST(Actions, InnerificationHolds) {
  for (const auto& m : {pauli_action(), z2_adz_action(), translation_action(symmetric_group_3())}) {
    auto r = innerify_check(smash_product(m));
    EXPECT_TRUE(r.passed()) << r.summary();
  }
}

TEST(Actions, InnerificationNegativeControl) {
  // On Z2 the antipode is the identity, so replacing V^{-1} by V changes nothing.
  auto z2 = smash_product(translation_action(cyclic_group(2)));
  EXPECT_TRUE(innerify_check(z2, Mat::identity(2)).passed());
  auto z3 = smash_product(translation_action(cyclic_group(3)));
  auto r = innerify_check(z3, Mat::identity(3));
  EXPECT_FALSE(r.passed("convolution-inverse"));
}

TEST(Actions, InnerificationWithScalarsIsAntipodeAxiom) {
  auto h = group_algebra(symmetric_group_3());
  auto sp = smash_product(trivial_action(h, matrix_algebra(1)));
  EXPECT_TRUE(innerify_check(sp).passed());
  Mat bad = Mat::identity(6);
  EXPECT_FALSE(innerify_check(sp, bad).passed());
  auto hb = h;
  hb.antipode = bad;
  EXPECT_FALSE(validate_hopf(hb).passed("antipode"));
}

TEST(Actions, DualActions) {
  for (const auto& [m, expected] : {std::pair{z2_adz_action(), 4u}, std::pair{pauli_action(), 4u}}) {
    auto sp = smash_product(m);
    auto hh = dual_hopf(m.hopf);
    auto d = dual_action(sp, hh, canonical_pairing(m.hopf));
    auto r = validate_action(d);
    EXPECT_TRUE(r.passed()) << r.summary();
    auto inv = invariants(d);
    EXPECT_EQ(inv.dim(), expected);
    EXPECT_EQ(inv, Space::span(sp.total.dim, embedded_a(sp)));
    EXPECT_EQ(d.op(hh.alg.unit), Mat::identity(sp.total.dim));
  }
}

TEST(Actions, DualActionRejectsBadPairing) {
  auto m = z2_adz_action();
  auto sp = smash_product(m);
  EXPECT_THROW(dual_action(sp, dual_hopf(m.hopf), HopfPairing{Mat(2, 2)}), Error);
}

TEST(Actions, OuternessAndMinimality) {
  // Pauli: the commutant of Mat2 # 1 is spanned by u_g^* # g, one per group element.
  auto sp = smash_product(pauli_action());
  auto v = is_outer(sp);
  EXPECT_FALSE(v.holds);
  EXPECT_EQ(v.witness.dim(), 4u);
  EXPECT_EQ(v.witness, Space::span(16, implementing_elements(sp, pauli_unitaries())));
  // A^H = C, so (A^H)' n A is all of Mat2
  auto mp = is_minimal(pauli_action());
  EXPECT_FALSE(mp.holds);
  EXPECT_EQ(mp.witness.dim(), 4u);

  auto z = smash_product(z2_adz_action());
  auto vz = is_outer(z);
  EXPECT_FALSE(vz.holds);
  EXPECT_EQ(vz.witness.dim(), 2u);
  auto mz = is_minimal(z2_adz_action());
  EXPECT_FALSE(mz.holds);
  EXPECT_EQ(mz.witness.dim(), 2u);

  auto c = smash_product(translation_action(cyclic_group(2)));
  auto vc = is_outer(c);
  EXPECT_FALSE(vc.holds);
  EXPECT_EQ(vc.witness.dim(), 2u);
  EXPECT_EQ(vc.witness, Space::span(4, embedded_a(c)));
}
