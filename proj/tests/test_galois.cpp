#include <gtest/gtest.h>

#include <functional>

#include "hopfgal/fixtures.hpp"
#include "hopfgal/galois.hpp"

using namespace hopfgal;

namespace {

// q = delta_i acts on a # h as [label(h) == i] a # h; Q is a function algebra in point masses.
ModuleAlgebraAction grading_action(const SmashProduct& sp, const HopfStarAlgebra& q, const std::function<std::size_t(std::size_t)>& label) {
  const std::size_t n = sp.total.dim, nh = sp.dim_h();
  std::vector<Mat> ops;
  for (std::size_t i = 0; i < q.dim(); ++i) {
    Mat op(n, n);
    for (std::size_t x = 0; x < n; ++x)
      if (label(x % nh) == i) op(x, x) = 1;
    ops.push_back(op);
  }
  return {q, sp.total, action_tensor(ops)};
}

HopfStarAlgebra trivial_hopf() { return group_algebra(cyclic_group(1)); }

struct Case {
  std::string name;
  SmashProduct sp;
  HopfStarAlgebra q;
  ModuleAlgebraAction qact;
  Mat pairing;  // expected <q, h>
};

// K4 automorphism swapping the two generators: (a,b) -> (b,a)
std::size_t swap_k4(std::size_t g) { return 2 * (g % 2) + g / 2; }

std::vector<Case> corpus() {
  std::vector<Case> cs;
  const auto pauli = smash_product(pauli_action());
  const auto ck4 = function_algebra(klein_group());
  {
    Mat p = Mat::identity(4);
    cs.push_back({"pauli-dual", pauli, ck4, grading_action(pauli, ck4, [](std::size_t h) { return h; }), p});
  }
  {
    Mat p(4, 4);
    for (std::size_t g = 0; g < 4; ++g) p(g, swap_k4(g)) = 1;
    cs.push_back({"pauli-twisted", pauli, ck4, grading_action(pauli, ck4, [](std::size_t h) { return swap_k4(h); }), p});
  }
  {
    const auto cz2 = function_algebra(cyclic_group(2));
    Mat p(2, 4);
    for (std::size_t g = 0; g < 4; ++g) p(g / 2, g) = 1;
    cs.push_back({"pauli-quotient", pauli, cz2, grading_action(pauli, cz2, [](std::size_t h) { return h / 2; }), p});
  }
  {
    const auto one = trivial_hopf();
    Mat p(1, 4);
    for (std::size_t g = 0; g < 4; ++g) p(0, g) = 1;
    cs.push_back({"pauli-trivial", pauli, one, grading_action(pauli, one, [](std::size_t) { return 0; }), p});
  }
  {
    const auto adz = smash_product(z2_adz_action());
    const auto cz2 = function_algebra(cyclic_group(2));
    cs.push_back({"adz-dual", adz, cz2, grading_action(adz, cz2, [](std::size_t h) { return h; }), Mat::identity(2)});
  }
  {
    const auto s3 = smash_product(translation_action(symmetric_group_3()));
    const auto cs3 = function_algebra(symmetric_group_3());
    cs.push_back({"s3-translation", s3, cs3, grading_action(s3, cs3, [](std::size_t h) { return h; }), Mat::identity(6)});
  }
  return cs;
}

}  // namespace

TEST(Galois, BimoduleEndosAgreeWithGenericSolver) {
  for (const auto& act : {pauli_action(), z2_adz_action(), translation_action(cyclic_group(3))}) {
    const auto sp = smash_product(act);
    const Space fast = smash_bimodule_endos(sp);
    const Space a = embedded_a(sp);
    EXPECT_EQ(fast, bimodule_endos(sp.total, a, a));
  }
}

TEST(Galois, PauliEndosAreLargerThanDual) {
  const auto sp = smash_product(pauli_action());
  // A' n (A # H) has dimension dim H, so End has dimension dim H * dim A' = 16
  EXPECT_EQ(is_outer(sp).witness.dim(), 4u);
  EXPECT_EQ(smash_bimodule_endos(sp).dim(), 16u);
  const auto em = commutant_endos_map(sp);
  EXPECT_TRUE(em.report.passed("injective"));
  EXPECT_TRUE(em.report.passed("unital"));
  EXPECT_TRUE(em.report.passed("convolution=composition")) << em.report.summary();
  EXPECT_TRUE(em.report.passed("into-bimodule-endos"));
  EXPECT_FALSE(em.report.passed("onto"));
  try {
    commutant_endos_iso(sp);
    FAIL() << "expected not-outer";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "not-outer");
  }
}

TEST(Galois, EndosAreFunctionalsIntoCommutant) {
  const auto sp = smash_product(pauli_action());
  const std::size_t n = sp.total.dim, nh = sp.dim_h();
  const Space comm = relative_commutant(embedded_a(sp), sp.total);
  std::vector<Vec> endos;
  for (const auto& c : comm.basis())
    for (std::size_t h = 0; h < nh; ++h) {
      Mat psi(n, nh);
      for (std::size_t k = 0; k < n; ++k) psi(k, h) = c[k];
      const Mat e = endo_from_functional(sp, psi);
      EXPECT_EQ(functional_from_endo(sp, e), psi);
      endos.push_back(e.vec());
    }
  EXPECT_EQ(Space::span(n * n, endos), smash_bimodule_endos(sp));
  Mat bad(n, nh);
  bad(1, 0) = 1;  // X # e does not commute with A
  EXPECT_THROW(endo_from_functional(sp, bad), Error);
}

TEST(Galois, TrivialHopfIsOuterAndCertified) {
  const auto m2 = matrix_algebra(2);
  const auto sp = smash_product(trivial_action(trivial_hopf(), m2));
  const auto em = commutant_endos_iso(sp);
  EXPECT_TRUE(em.report.passed()) << em.report.summary();
  const auto c = canonical_qgal(sp);
  EXPECT_TRUE(c.passed()) << c.report.summary();
}

TEST(Galois, PairingExtractionCorpus) {
  const auto cs = corpus();
  ASSERT_GE(cs.size(), 5u);
  for (const auto& c : cs) {
    const auto r = extract_pairing(c.sp, c.q, c.qact);
    EXPECT_EQ(r.pairing.p, c.pairing) << c.name;
    EXPECT_TRUE(r.report.passed()) << c.name << r.report.summary();
    EXPECT_TRUE(r.report.find("outer")->skipped) << c.name;
  }
}

TEST(Galois, FactorizationIsUniqueMorphism) {
  for (const auto& c : corpus()) {
    const auto cert = canonical_qgal(c.sp);
    const auto f = factor_through(cert, c.q, c.qact);
    EXPECT_TRUE(f.report.passed()) << c.name << f.report.summary();
    EXPECT_EQ(f.phi, c.pairing.transpose()) << c.name;
  }
}

TEST(Galois, CertificateFailsOnlyOnOuterness) {
  const auto c = canonical_qgal(smash_product(pauli_action()));
  EXPECT_FALSE(c.passed());
  for (const auto* f : c.report.failures()) EXPECT_TRUE(f->name == "outer" || f->name == "endos.onto") << f->name;
  EXPECT_TRUE(c.report.passed("fixed-points=A"));
  EXPECT_EQ(c.fixed.dim(), 4u);
}

TEST(Galois, ExtractionRejectsBadInput) {
  const auto sp = smash_product(pauli_action());
  const std::size_t n = sp.total.dim;
  std::vector<Mat> swap_ops{Mat::identity(n), Mat::identity(n)};
  Mat s(n, n);
  for (std::size_t x = 0; x < n; ++x) s(x, (x + 4) % n) = 1;  // not an automorphism
  swap_ops[1] = s;
  const ModuleAlgebraAction bogus{group_algebra(cyclic_group(2)), sp.total, action_tensor(swap_ops)};
  EXPECT_THROW(extract_pairing(sp, bogus.hopf, bogus), Error);
  // a genuine action that moves A: Ad(1 # g) on A # H, for g = (1,0)
  std::vector<Mat> ad;
  const auto hk = group_algebra(klein_group());
  for (std::size_t g = 0; g < 4; ++g) {
    const Vec u = sp.embed_h.col(g);
    const Vec ui = sp.total.apply_star(u);
    ad.push_back(sp.total.left_matrix(u) * sp.total.right_matrix(ui));
  }
  const ModuleAlgebraAction moving{hk, sp.total, action_tensor(ad)};
  try {
    extract_pairing(sp, hk, moving);
    FAIL() << "expected A-not-fixed";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "A-not-fixed");
  }
}

TEST(Galois, TracePreservation) {
  const auto act = pauli_action();
  const auto bc = basic_construction(gns(act.alg), scalars(act.alg));
  const auto r = trace_preservation(act, &bc);
  EXPECT_TRUE(r.passed()) << r.summary();
  const auto sp = smash_product(pauli_action());
  const auto cert = canonical_qgal(sp);
  EXPECT_TRUE(cert.report.passed("trace.preserved")) << cert.report.summary();
}

TEST(Galois, DualReading) {
  const auto c = qgal_fixed_point(smash_product(z2_adz_action()));
  EXPECT_TRUE(c.report.passed("inner-fixed-points=A")) << c.report.summary();
  EXPECT_TRUE(c.report.passed("double-dual=H")) << c.report.summary();
  EXPECT_TRUE(c.report.passed("fixed-points=A")) << c.report.summary();
  EXPECT_EQ(c.sp.total.dim, 16u);
}

TEST(Galois, DualReadingPauli) {
  const auto c = qgal_fixed_point(smash_product(pauli_action()));
  EXPECT_EQ(c.sp.total.dim, 64u);
  EXPECT_TRUE(c.report.passed("inner-fixed-points=A"));
  EXPECT_TRUE(c.report.passed("double-dual=H"));
  EXPECT_TRUE(c.report.passed("fixed-points=A"));
}
