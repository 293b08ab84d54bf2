#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"

using namespace acm;

namespace {

// Christoffel symbols from central differences of metric values only.
Tensor christoffel_fd(const AlmostContactMetricStructure& s, const Point& p, double h = 1e-5) {
  const int n = s.dim;
  std::vector<SmallMatrix> dg;
  for (int k = 0; k < n; ++k)
    dg.push_back((evaluate_values(s, p.displaced(k, h)).g - evaluate_values(s, p.displaced(k, -h)).g) * (0.5 / h));
  const SmallMatrix ginv = invert(evaluate_values(s, p).g);
  Tensor G(n, 3);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double sum = 0;
        for (int l = 0; l < n; ++l) sum += ginv(k, l) * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
        G(k, i, j) = 0.5 * sum;
      }
  return G;
}

// R^l_ijk from central differences of the engine's Christoffel symbols.
Tensor riemann_fd(const AlmostContactMetricStructure& s, const Point& p, double h = 1e-5) {
  const int n = s.dim;
  const Tensor G = christoffel(s, p).gamma;
  std::vector<Tensor> dG;
  for (int m = 0; m < n; ++m) {
    Tensor d = christoffel(s, p.displaced(m, h)).gamma - christoffel(s, p.displaced(m, -h)).gamma;
    dG.push_back(d);
  }
  Tensor R(n, 4);
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          double v = (dG[i](l, j, k) - dG[j](l, i, k)) / (2 * h);
          for (int m = 0; m < n; ++m) v += G(l, i, m) * G(m, j, k) - G(l, j, m) * G(m, i, k);
          R(l, i, j, k) = v;
        }
  return R;
}

}  // namespace

TEST(Calculus, ChristoffelMatchesMetricDifferences) {
  for (const auto& s : {registry_get("example_paper_s6"), registry_get("alpha_kenmotsu_warped", {{"alpha", 0.7}})}) {
    for (const Point& p : test::seeded(test::example_box(), 8, 2)) {
      const Tensor d = christoffel(s, p).gamma - christoffel_fd(s, p);
      EXPECT_LT(d.max_abs(), 1e-8) << s.name;
    }
  }
}

TEST(Calculus, WarpedChristoffelClosedForm) {
  // dz^2 + e^{2az}(dx^2 + dy^2): Gamma^x_xz = a, Gamma^z_xx = -a e^{2az}
  const double a = 0.7, z = 0.4;
  const auto c = christoffel(registry_get("alpha_kenmotsu_warped", {{"alpha", a}}), Point{0.1, 0.2, z});
  EXPECT_NEAR(c.gamma(0, 0, 2), a, 1e-14);
  EXPECT_NEAR(c.gamma(1, 2, 1), a, 1e-14);
  EXPECT_NEAR(c.gamma(2, 0, 0), -a * std::exp(2 * a * z), 1e-13);
  EXPECT_NEAR(c.gamma(2, 2, 2), 0.0, 1e-15);
  EXPECT_LT(c.torsion, 1e-15);
  EXPECT_LT(c.metric_compatibility, 1e-13);
}

TEST(Calculus, RiemannMatchesChristoffelDifferences) {
  const auto s = registry_get("example_paper_s6");
  for (const Point& p : test::seeded(test::example_box(), 8, 3)) {
    const Tensor d = riemann(s, p).riemann - riemann_fd(s, p);
    EXPECT_LT(d.max_abs(), 1e-6);
  }
}

// The warped product is a space of constant curvature -alpha^2.
TEST(Calculus, WarpedProductHasConstantCurvature) {
  const double a = 0.7;
  const auto s = registry_get("alpha_kenmotsu_warped", {{"alpha", a}, {"n", 2.0}});
  const Point p{0.1, -0.3, 0.2, 0.5, -0.6};
  const auto G = compute_geometry(s, p);
  SplitMix64 rng(17);
  auto rnd = [&] {
    Vec v(5);
    for (int i = 0; i < 5; ++i) v[i] = 2 * rng.uniform() - 1;
    return v;
  };
  for (int t = 0; t < 10; ++t) {
    const Vec X = rnd(), Y = rnd(), Z = rnd();
    const Vec expect = -a * a * (G.inner(Y, Z) * X - G.inner(X, Z) * Y);
    EXPECT_LT((G.curvature(X, Y, Z) - expect).max_abs(), 1e-12);
  }
  EXPECT_NEAR(G.r, -a * a * 5 * 4, 1e-11);
}

TEST(Calculus, FlatStructureHasZeroCurvature) {
  const auto G = compute_geometry(registry_get("flat_cosymplectic", {{"n", 2.0}}), Point{0.1, 0.2, 0.3, 0.4, 0.5});
  EXPECT_EQ(G.riemann.max_abs(), 0.0);
  EXPECT_EQ(G.h.max_abs(), 0.0);
  EXPECT_EQ(G.nabla_phi.max_abs(), 0.0);
}

TEST(CalculusProperty, BianchiIdentities) {
  for (const auto& s : {registry_get("example_paper_s6"), registry_get("alpha_kenmotsu_warped", {{"alpha", 0.7}})}) {
    for (const Point& p : test::seeded(test::example_box(), 10, 4)) {
      const auto C = riemann(s, p);
      const int n = s.dim;
      double first = 0, second = 0;
      for (int l = 0; l < n; ++l)
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
              first = std::max(first, std::abs(C.riemann(l, i, j, k) + C.riemann(l, j, k, i) + C.riemann(l, k, i, j)));
              for (int m = 0; m < n; ++m)
                second = std::max(second, std::abs(C.nabla_riemann(m, l, i, j, k) + C.nabla_riemann(i, l, j, m, k) +
                                                   C.nabla_riemann(j, l, m, i, k)));
            }
      EXPECT_LT(first, 1e-6) << s.name;
      EXPECT_LT(second, 1e-6) << s.name;
    }
  }
}

TEST(Calculus, ExampleTensorHMatchesClosedForm) {
  const auto s = registry_get("example_paper_s6");
  for (const Point& p : test::seeded(test::example_box(), 10, 5)) {
    EXPECT_LT((tensor_h(s, p) - s.reference.h(p)).max_abs(), 1e-12);
    const auto G = compute_geometry(s, p, GeometryLevel::curvature);
    EXPECT_LT((G.h - s.reference.h(p)).max_abs(), 1e-12);
  }
}

TEST(Calculus, ClosedEtaAndFormCondition) {
  const double a = 1.3;
  const auto s = registry_get("example_paper_s6", {{"alpha", a}});
  for (const Point& p : test::seeded(test::example_box(), 10, 6)) {
    const auto f = structure_forms(s, p);
    EXPECT_LT(f.d_eta.max_abs(), 1e-14);
    double worst = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) worst = std::max(worst, std::abs(f.d_Phi(i, j, k) - 2 * a * f.eta_wedge_Phi(i, j, k)));
    EXPECT_LT(worst, 1e-12);
    EXPECT_GT(f.d_Phi.max_abs(), 0.1);
  }
}

TEST(Calculus, WedgeNormalisation) {
  // eta = dz, Phi = dx ^ dy (Phi_01 = 1): (eta ^ Phi)_{012} = 1, one cyclic term
  SmallMatrix Phi(3);
  Phi(0, 1) = 1;
  Phi(1, 0) = -1;
  const Tensor w = wedge(Vec{0, 0, 1}, Phi);
  EXPECT_DOUBLE_EQ(w(0, 1, 2), 1.0);
  EXPECT_DOUBLE_EQ(w(1, 0, 2), -1.0);
  EXPECT_DOUBLE_EQ(w(2, 0, 1), 1.0);
}
