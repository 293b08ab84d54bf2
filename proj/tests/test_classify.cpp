#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "support.hpp"

using namespace acm;

namespace {

const IdentityResult& row(const std::vector<IdentityResult>& rs, const std::string& name) {
  for (const auto& r : rs)
    if (r.name == name) return r;
  throw std::out_of_range(name);
}

void expect_all_gating_pass(const std::vector<IdentityResult>& rs, const std::string& label) {
  for (const auto& r : rs) {
    if (r.status == IdentityStatus::skipped || r.status == IdentityStatus::diagnostic) continue;
    EXPECT_TRUE(r.pass) << label << ": " << r.name << " residual " << r.max_residual << " tol " << r.tolerance;
  }
}

}  // namespace

TEST(Fit, ExampleMatchesClosedForms) {
  for (double alpha : {1.0, 0.5, 1.7}) {
    const auto s = registry_get("example_paper_s6", {{"alpha", alpha}});
    for (const Point& p : test::seeded(test::example_box(), 20, 21)) {
      const NullityFit f = fit_kmn(s, p);
      const double z = p[2];
      EXPECT_NEAR(f.kappa, test::example_kappa(alpha, z), 1e-9) << "alpha " << alpha;
      ASSERT_TRUE(f.mu && f.nu);
      EXPECT_NEAR(*f.mu, 2 * z, 1e-9);
      EXPECT_NEAR(*f.nu, 0.0, 1e-9);
      EXPECT_NEAR(f.lambda, std::exp(-2 * alpha * z), 1e-12);
      EXPECT_LT(f.residual_501, 1e-9);
      EXPECT_TRUE(f.flags.empty());
    }
  }
}

TEST(Fit, DegenerateSpectrumLeavesMuNuOpen) {
  const auto f = fit_kmn(registry_get("alpha_kenmotsu_warped", {{"alpha", 0.7}, {"n", 2.0}}),
                         Point{0.1, 0.2, 0.3, 0.4, 0.5});
  EXPECT_NEAR(f.kappa, -0.49, 1e-12);
  EXPECT_FALSE(f.mu.has_value());
  EXPECT_FALSE(f.nu.has_value());
  EXPECT_EQ(f.flags, std::vector<std::string>{"mu_nu_indeterminate"});
  const auto flat = fit_kmn(registry_get("flat_cosymplectic"), Point{0.1, 0.2, 0.3});
  EXPECT_EQ(flat.kappa, 0.0);
}

TEST(FitProperty, InvariantUnderFrameChoice) {
  const auto s = registry_get("example_paper_s6");
  SplitMix64 rng(23);
  for (const Point& p : test::seeded(test::example_box(), 25, 22)) {
    const auto G = compute_geometry(s, p, GeometryLevel::curvature);
    const FrameData F = adapted_frame(G);
    const NullityFit base = fit_in_frame(G, F);
    for (int t = 0; t < 4; ++t) {
      const FrameData R = test::rotated(F, G.phi, 2 * M_PI * rng.uniform());
      const NullityFit f = fit_in_frame(G, R);
      EXPECT_NEAR(f.kappa, base.kappa, 1e-7);
      EXPECT_NEAR(*f.mu, *base.mu, 1e-7);
      EXPECT_NEAR(*f.nu, *base.nu, 1e-7);
    }
    FrameData flipped = F;
    flipped.vectors[0] = -F.e();
    flipped.vectors[1] = -F.phi_e();
    const NullityFit f = fit_in_frame(G, flipped);
    EXPECT_NEAR(f.kappa, base.kappa, 1e-7);
    EXPECT_NEAR(*f.mu, *base.mu, 1e-7);
    EXPECT_NEAR(*f.nu, *base.nu, 1e-7);
  }
}

TEST(Alpha, DetectedOnRegistryStructures) {
  const auto pts = test::seeded(test::example_box(), 10, 24);
  EXPECT_NEAR(detect_alpha(registry_get("example_paper_s6", {{"alpha", 1.3}}), pts).alpha, 1.3, 1e-12);
  EXPECT_NEAR(detect_alpha(registry_get("alpha_kenmotsu_warped", {{"alpha", 0.7}}), pts).alpha, 0.7, 1e-12);
  EXPECT_EQ(detect_alpha(registry_get("flat_cosymplectic"), pts).alpha, 0.0);
}

TEST(Alpha, NonClosedEtaIsRejected) {
  auto s = registry_get("flat_cosymplectic");
  s.eta = OneFormField([](CoordJets x) { return JetVector{Jet(3), x[0], Jet(3, 1.0)}; });  // dz + x dy
  const auto pts = test::seeded(Box{{{-1, 1}, {-1, 1}, {-1, 1}}}, 5, 25);
  EXPECT_THROW(detect_alpha(s, pts), ClassificationError);
  const auto m = measure_alpha(s, pts);
  EXPECT_FALSE(m.closed);
  EXPECT_FALSE(m.message.empty());
}

TEST(Alpha, NonConstantAlphaIsRejected) {
  const auto s = registry_get("example_paper_s6");
  const auto d = make_deformation(parse_beta("exp_z:1"), 1.0, 3);
  const auto pts = test::seeded(test::example_box(), 5, 26);
  EXPECT_THROW(detect_alpha(apply_d_homothetic(s, d), pts), ClassificationError);
  EXPECT_FALSE(measure_alpha(apply_d_homothetic(s, d), pts).constant);
}

TEST(Gradient, NeighbourOutsideDomainThrows) {
  EXPECT_THROW(fit_gradient(registry_get("example_paper_s6"), Point{0.0, 0.0, 1e-5}), std::domain_error);
}

TEST(Gradient, ExampleGradientsMatchClosedForms) {
  const double z = 0.8;
  const auto g = fit_gradient(registry_get("example_paper_s6"), Point{0.3, -0.2, z});
  EXPECT_NEAR(g.kappa[2], 4 * std::exp(-4 * z), 1e-7);
  EXPECT_NEAR(g.mu[2], 2.0, 1e-7);
  EXPECT_NEAR(g.kappa[0], 0.0, 1e-8);
  EXPECT_TRUE(g.mu_nu_valid);
}

TEST(Suite, GatingIdentitiesPassOnRegistryStructures) {
  struct Case {
    std::string name;
    ParamMap params;
    double alpha;
  };
  const std::vector<Case> cases = {
      {"example_paper_s6", {{"alpha", 1.0}}, 1.0},
      {"example_paper_s6", {{"alpha", 0.6}}, 0.6},
      {"flat_cosymplectic", {{"n", 1.0}}, 0.0},
      {"flat_cosymplectic", {{"n", 2.0}}, 0.0},
      {"alpha_kenmotsu_warped", {{"alpha", 0.7}, {"n", 1.0}}, 0.7},
      {"alpha_kenmotsu_warped", {{"alpha", 0.7}, {"n", 2.0}}, 0.7},
  };
  for (const auto& c : cases) {
    const auto& e = registry_entry(c.name);
    const auto params = resolve_params(e, c.params);
    const auto s = e.make(params);
    const auto pts = test::seeded(e.default_box(params), 6, 27);
    const auto rs = identity_suite(s, pts, c.alpha);
    EXPECT_EQ(rs.size(), identity_catalog().size());
    expect_all_gating_pass(rs, c.name);
  }
}

TEST(Suite, ThreeDimensionalRowsSkipInHigherDimension) {
  const auto s = registry_get("alpha_kenmotsu_warped", {{"n", 2.0}});
  const auto rs = identity_suite(s, test::seeded(Box{std::vector<std::pair<double, double>>(5, {-1, 1})}, 3, 28), 1.0);
  EXPECT_EQ(row(rs, "eq_7_52b").status, IdentityStatus::skipped);
  EXPECT_EQ(row(rs, "eq_7_52b").note, "dimension 3 only");
  EXPECT_NE(row(rs, "kmn_eigenpair_constancy").status, IdentityStatus::skipped);
}

TEST(Suite, PerturbedPhiFailsStructureRows) {
  const auto s = perturb_phi(registry_get("example_paper_s6"), 0, 1, 1e-3);
  const auto rs = identity_suite(s, test::seeded(test::example_box(), 3, 29), 1.0);
  EXPECT_EQ(row(rs, "phi_squared").status, IdentityStatus::fail);
  EXPECT_EQ(row(rs, "compatibility").status, IdentityStatus::fail);
}

TEST(Suite, ToleranceOverrideApplies) {
  const auto pts = test::seeded(test::example_box(), 3, 30);
  const auto rs = identity_suite(registry_get("example_paper_s6"), pts, 1.0, {{"eq_7_31", 0.0}});
  EXPECT_EQ(row(rs, "eq_7_31").tolerance, 0.0);
  EXPECT_EQ(row(rs, "eq_7_31").status, IdentityStatus::fail);
  ASSERT_TRUE(row(rs, "eq_7_31").worst_point);
}

TEST(Suite, PrintedVariantsAreReportedNotGated) {
  const auto rs = identity_suite(registry_get("example_paper_s6"), test::seeded(test::example_box(), 4, 31), 1.0);
  for (const char* name : {"eq_4_1_printed", "prop_113_printed_convention", "eq_7_27_flipped", "eq_7_38_printed"}) {
    EXPECT_EQ(row(rs, name).status, IdentityStatus::diagnostic) << name;
    EXPECT_GT(row(rs, name).max_residual, 1e-3) << name;
  }
}

TEST(Aggregate, MaxTiesNaNAndSkips) {
  const auto& cat = identity_catalog();
  const std::size_t k = *identity_index("eq_7_31");
  const std::vector<Point> pts{Point{0.1, 0.1, 0.5}, Point{0.2, 0.2, 0.6}, Point{0.3, 0.3, 0.7}};
  std::vector<std::vector<IdentityEval>> ev(3, std::vector<IdentityEval>(cat.size()));
  ev[0][k].residual = 1e-7;
  ev[1][k].residual = 2e-7;
  ev[2][k].residual = 2e-7;
  auto rs = aggregate_identities(pts, ev);
  EXPECT_EQ(rs[k].max_residual, 2e-7);
  EXPECT_EQ(*rs[k].worst_point, pts[1]);
  EXPECT_TRUE(rs[k].pass);

  ev[2][k].residual = std::numeric_limits<double>::quiet_NaN();
  rs = aggregate_identities(pts, ev);
  EXPECT_FALSE(rs[k].pass);
  EXPECT_EQ(rs[k].status, IdentityStatus::fail);
  EXPECT_EQ(*rs[k].worst_point, pts[2]);

  ev[2][k] = IdentityEval{0.0, "h is not eta-parallel"};
  rs = aggregate_identities(pts, ev);
  EXPECT_EQ(rs[k].status, IdentityStatus::skipped);
  EXPECT_EQ(rs[k].note, "h is not eta-parallel");
}

TEST(Sweep, ParallelMatchesSerial) {
  const auto s = registry_get("example_paper_s6");
  const auto pts = test::seeded(test::example_box(), 12, 32);
  const auto a = sweep_serial(s, pts, 1.0);
  for (int threads : {1, 3}) {
    const auto b = sweep_parallel(s, pts, 1.0, 1e-5, threads);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      EXPECT_EQ(a[i].point, b[i].point);
      EXPECT_EQ(a[i].fit->kappa, b[i].fit->kappa);
      ASSERT_EQ(a[i].evals.size(), b[i].evals.size());
      for (std::size_t j = 0; j < a[i].evals.size(); ++j) {
        const double x = a[i].evals[j].residual, y = b[i].evals[j].residual;
        EXPECT_TRUE(x == y || (std::isnan(x) && std::isnan(y)));
      }
    }
  }
}

TEST(Sweep, PointErrorsBecomeFailures) {
  const auto s = registry_get("example_paper_s6");
  const auto rec = evaluate_point(s, Point{0.0, 0.0, 1e-5}, 1.0);
  EXPECT_FALSE(rec.error.empty());
  EXPECT_FALSE(rec.fit.has_value());
  const auto rs = aggregate({rec});
  EXPECT_EQ(rs[*identity_index("eq_7_31")].status, IdentityStatus::fail);
}
