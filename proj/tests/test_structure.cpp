#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"

using namespace acm;

TEST(Structure, RegistryStructuresAreValid) {
  const std::vector<std::pair<std::string, ParamMap>> cases = {
      {"example_paper_s6", {{"alpha", 1.0}}},
      {"example_paper_s6", {{"alpha", 0.5}}},
      {"flat_cosymplectic", {{"n", 2.0}}},
      {"alpha_kenmotsu_warped", {{"alpha", 0.7}, {"n", 2.0}}},
  };
  for (const auto& [name, params] : cases) {
    const auto& entry = registry_entry(name);
    const auto full = resolve_params(entry, params);
    const auto s = entry.make(full);
    for (const Point& p : test::seeded(entry.default_box(full), 10, 1)) {
      const auto v = validate_structure(s, p);
      EXPECT_LT(v.max(), 1e-12) << name;
      EXPECT_EQ(v.phi_rank, s.dim - 1);
    }
  }
}

TEST(Structure, PerturbedPhiIsDetected) {
  const auto s = perturb_phi(registry_get("example_paper_s6"), 0, 1, 1e-3);
  const auto v = validate_structure(s, Point{0.1, 0.2, 0.5});
  EXPECT_GT(v.phi_squared, 1e-4);
  EXPECT_FALSE(v.pass(1e-9));
}

TEST(Structure, RegistryRejectsBadInput) {
  EXPECT_THROW(registry_get("no_such_structure"), std::invalid_argument);
  EXPECT_THROW(registry_get("example_paper_s6", {{"beta", 1.0}}), std::invalid_argument);
  EXPECT_THROW(registry_get("flat_cosymplectic", {{"n", 1.5}}), std::invalid_argument);
  EXPECT_THROW(registry_get("flat_cosymplectic", {{"n", 3.0}}), std::invalid_argument);
}

TEST(Structure, ExampleDomainExcludesZPlane) {
  const auto s = registry_get("example_paper_s6");
  EXPECT_FALSE(s.box_in_domain(Box{{{-1, 1}, {-1, 1}, {-0.5, 0.5}}}));
  EXPECT_TRUE(s.box_in_domain(test::example_box()));
  EXPECT_FALSE(s.in_domain(Point{0.0, 0.0, 0.0}));
}

TEST(Structure, FundamentalFormIsSkew) {
  const auto s = registry_get("example_paper_s6");
  const SmallMatrix F = fundamental_form(s, Point{0.3, -0.4, 0.9});
  EXPECT_LT((F + F.transpose()).max_abs(), 1e-15);
}
