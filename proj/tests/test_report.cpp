#include <gtest/gtest.h>

#include <json.hpp>

#include "support.hpp"

using namespace acm;

namespace {

RunConfig example_config(int count = 6) {
  RunConfig c;
  c.structure = "example_paper_s6";
  c.params = {{"alpha", 1.0}};
  c.box = test::example_box();
  c.count = count;
  c.seed = 42;
  return c;
}

}  // namespace

TEST(Sampler, SplitMix64ReferenceOutputs) {
  SplitMix64 r(0);
  EXPECT_EQ(r.next(), 0xE220A8397B1DCDAFULL);
  EXPECT_EQ(r.next(), 0x6E789E6AA1B965F4ULL);
  EXPECT_EQ(r.next(), 0x06C45D188009454FULL);
}

TEST(Sampler, PointsStayInBoxAndRepeat) {
  const Box b{{{-1, 1}, {3, 4}, {0.2, 2}}};
  const auto a = sample_points(b, 200, 99);
  EXPECT_EQ(a, sample_points(b, 200, 99));
  EXPECT_NE(a, sample_points(b, 200, 100));
  for (const Point& p : a)
    for (int i = 0; i < 3; ++i) {
      EXPECT_GE(p[i], b.bounds[static_cast<std::size_t>(i)].first);
      EXPECT_LT(p[i], b.bounds[static_cast<std::size_t>(i)].second);
    }
  EXPECT_THROW(sample_points(b, 0, 1), ConfigError);
}

TEST(Points, ParsesCommentsAndRejectsGarbage) {
  const auto pts = parse_points("# header\n0.1 0.2 0.5\n\n  -1e-1\t0 1.5  # trailing\n");
  ASSERT_EQ(pts.size(), 2u);
  EXPECT_EQ(pts[1], (Point{-0.1, 0.0, 1.5}));
  EXPECT_THROW(parse_points("0.1 abc 0.5\n"), ConfigError);
  EXPECT_THROW(read_points_file("/nonexistent/points.txt"), ConfigError);
}

TEST(Config, ParsesJson) {
  const auto c = parse_config_json(R"({"structure": "example_paper_s6", "params": {"alpha": 0.5},
    "box": [[-1, 1], [-1, 1], [0.2, 2]], "count": 7, "seed": 18446744073709551615,
    "tolerances": {"eq_7_31": 1e-7}, "deformation": {"beta": {"poly_z": [1, 0.5]}, "gamma": 2}})");
  EXPECT_EQ(c.params.at("alpha"), 0.5);
  EXPECT_EQ(c.count, 7);
  EXPECT_EQ(c.seed, 18446744073709551615ULL);
  EXPECT_EQ(*c.deform_beta, "poly_z:1,0.5");
  EXPECT_EQ(c.deform_gamma, 2.0);
  EXPECT_EQ(c.box->dim(), 3);
  EXPECT_THROW(parse_config_json("{"), ConfigError);
  EXPECT_THROW(parse_config_json(R"({"structur": "x"})"), ConfigError);
  EXPECT_THROW(parse_config_json(R"({"count": "ten"})"), ConfigError);
}

TEST(Config, ValidationErrors) {
  auto c = example_config();
  c.box = Box{{{-1, 1}, {-1, 1}, {-0.5, 0.5}}};
  EXPECT_THROW(run_suite(c), ConfigError);
  c = example_config();
  c.box = Box{{{-1, 1}, {-1, 1}}};
  EXPECT_THROW(run_suite(c), ConfigError);
  c = example_config(0);
  EXPECT_THROW(run_suite(c), ConfigError);
  c = example_config();
  c.tolerances["not_an_identity"] = 1e-3;
  EXPECT_THROW(run_suite(c), ConfigError);
  c = example_config();
  c.points = {Point{0.0, 0.0, 0.0}};
  EXPECT_THROW(run_suite(c), ConfigError);
  c = example_config();
  c.structure = "no_such_structure";
  EXPECT_THROW(run_suite(c), std::invalid_argument);
  c = example_config();
  c.deform_beta = "poly_z:-0.5,1";
  c.points = {Point{0.0, 0.0, 0.5}};
  EXPECT_THROW(run_suite(c), ConfigError);
}

TEST(Report, ExampleRunPassesWithSchema) {
  auto c = example_config();
  c.deform_beta = "const:2";
  c.deform_gamma = 1.5;
  const auto rep = run_suite(c);
  EXPECT_TRUE(rep.pass);
  const auto j = nlohmann::json::parse(emit_report(rep, "json"));
  for (const char* k : {"version", "config", "conventions", "fits", "identities", "deformation", "pass"})
    EXPECT_TRUE(j.contains(k)) << k;
  EXPECT_EQ(j["fits"].size(), 6u);
  EXPECT_EQ(j["identities"].size(), identity_catalog().size());
  for (const auto& row : j["identities"])
    for (const char* k : {"name", "max_residual", "tolerance", "pass", "worst_point", "status"})
      EXPECT_TRUE(row.contains(k));
  for (const char* k : {"curvature", "ricci", "wedge"}) EXPECT_TRUE(j["conventions"].contains(k));
  EXPECT_TRUE(j["deformation"]["pass"].get<bool>());
  EXPECT_NE(emit_report(rep, "text").find("overall PASS"), std::string::npos);
  EXPECT_THROW(emit_report(rep, "xml"), ConfigError);
}

TEST(Report, FlatRunHasZeroResiduals) {
  RunConfig c;
  c.structure = "flat_cosymplectic";
  c.count = 10;
  const auto rep = run_suite(c);
  EXPECT_TRUE(rep.pass);
  for (const auto& r : rep.identities)
    if (r.status == IdentityStatus::pass) EXPECT_LT(r.max_residual, 1e-12) << r.name;
}

TEST(Report, FailingRunIsReported) {
  auto c = example_config(3);
  c.tolerances["eq_7_31"] = 0.0;
  const auto rep = run_suite(c);
  EXPECT_FALSE(rep.pass);
  const auto j = nlohmann::json::parse(emit_report(rep, "json"));
  EXPECT_FALSE(j["pass"].get<bool>());
}

TEST(Report, DeterministicBytes) {
  auto c = example_config(8);
  c.deform_beta = "exp_z:1";
  c.threads = 1;
  const std::string a = emit_report(run_suite(c), "json");
  c.threads = 3;
  EXPECT_EQ(a, emit_report(run_suite(c), "json"));
  EXPECT_EQ(a, emit_report(run_suite(c), "json"));
}

TEST(Report, UnwritablePath) {
  const auto rep = run_suite(example_config(2));
  EXPECT_THROW(write_report(rep, "json", "/nonexistent/dir/report.json"), std::runtime_error);
}
