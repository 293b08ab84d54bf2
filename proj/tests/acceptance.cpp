// One PASS/FAIL line per acceptance criterion; exit status 0 iff all pass.

#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include "support.hpp"

using namespace acm;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

void note(Outcome& o, bool ok, const std::string& what) {
  if (!ok) {
    o.pass = false;
    if (o.detail.size() < 400) o.detail += (o.detail.empty() ? "" : "; ") + what;
  }
}

std::string sci(double v) {
  char b[32];
  std::snprintf(b, sizeof b, "%.2e", v);
  return b;
}

const IdentityResult& row(const ResidualReport& r, const std::string& name) {
  for (const auto& i : r.identities)
    if (i.name == name) return i;
  throw std::out_of_range(name);
}

RunConfig example_run() {
  RunConfig c;
  c.structure = "example_paper_s6";
  c.params = {{"alpha", 1.0}};
  c.box = test::example_box();
  c.count = 50;
  c.seed = 42;
  return c;
}

const ResidualReport& example_report() {
  static const ResidualReport r = run_suite(example_run());
  return r;
}

Outcome example_reproduction() {
  Outcome o;
  double ek = 0, em = 0, en = 0;
  for (const auto& rec : example_report().records) {
    if (!rec.fit || !rec.fit->mu || !rec.fit->nu) {
      note(o, false, "no fit at a point");
      continue;
    }
    const double z = rec.point[2];
    ek = std::max(ek, std::abs(rec.fit->kappa - test::example_kappa(1.0, z)));
    em = std::max(em, std::abs(*rec.fit->mu - 2 * z));
    en = std::max(en, std::abs(*rec.fit->nu));
  }
  note(o, example_report().records.size() == 50, "expected 50 points");
  note(o, ek <= 1e-5, "kappa error " + sci(ek));
  note(o, em <= 1e-5, "mu error " + sci(em));
  note(o, en < 1e-5, "|nu| " + sci(en));
  if (o.pass) o.detail = "max errors kappa " + sci(ek) + ", mu " + sci(em) + ", nu " + sci(en);
  return o;
}

Outcome structure_class() {
  Outcome o;
  const double de = row(example_report(), "d_eta").max_residual;
  const double dp = row(example_report(), "dPhi_2alpha").max_residual;
  note(o, de < 1e-9, "d eta " + sci(de));
  note(o, dp < 1e-8, "dPhi - 2 alpha eta^Phi " + sci(dp));
  note(o, std::abs(example_report().alpha.alpha - 1.0) < 1e-9, "detected alpha " + sci(example_report().alpha.alpha));
  if (o.pass) o.detail = "d eta " + sci(de) + ", dPhi - 2 alpha eta^Phi " + sci(dp);
  return o;
}

Outcome spectrum_law() {
  Outcome o;
  double worst = 0;
  for (const auto& rec : example_report().records) {
    if (!rec.fit) {
      note(o, false, "no fit at a point");
      continue;
    }
    worst = std::max(worst, std::abs(rec.fit->lambda * rec.fit->lambda + rec.fit->kappa + 1.0));
  }
  note(o, worst < 1e-6, "|lambda^2 + kappa + alpha^2| " + sci(worst));
  if (o.pass) o.detail = "max |lambda^2 + kappa + alpha^2| " + sci(worst);
  return o;
}

Outcome identity_battery() {
  Outcome o;
  const std::vector<std::pair<std::string, ParamMap>> cases = {
      {"example_paper_s6", {{"alpha", 1.0}}},
      {"flat_cosymplectic", {{"n", 1.0}}},
      {"alpha_kenmotsu_warped", {{"alpha", 1.0}, {"n", 1.0}}},
      {"flat_cosymplectic", {{"n", 2.0}}},
      {"alpha_kenmotsu_warped", {{"alpha", 0.7}, {"n", 2.0}}},
  };
  int checked = 0;
  for (const auto& [name, params] : cases) {
    RunConfig c;
    c.structure = name;
    c.params = params;
    c.count = name == "example_paper_s6" ? 50 : 20;
    const ResidualReport r = name == "example_paper_s6" ? example_report() : run_suite(c);
    for (const auto& i : r.identities) {
      if (i.status == IdentityStatus::pass) ++checked;
      note(o, i.status != IdentityStatus::fail, name + " " + i.name + " " + sci(i.max_residual));
    }
  }
  // every named row must actually be evaluated on the Example
  for (const char* n : {"eq_2_3", "eq_2_7", "eq_3_1", "eq_3_6", "prop_113", "eq_7_28", "eq_7_37", "eq_7_52b", "eq_7_58",
                        "kaehler_leaf", "eq_7_36", "eq_7_27", "eq_7_32", "eq_7_33", "r_eta_kappa"})
    note(o, row(example_report(), n).status == IdentityStatus::pass, std::string(n) + " not evaluated");
  if (o.pass) o.detail = std::to_string(checked) + " identity/structure rows pass, 0 fail";
  return o;
}

Outcome deformation_invariance() {
  Outcome o;
  RunConfig c = example_run();
  c.deform_beta = "const:2";
  c.deform_gamma = 1.5;
  const auto r = run_suite(c);
  const auto& d = *r.deformation;
  const double a = d.alpha_deformed.value_or(NAN);
  note(o, std::abs(a - 0.5) <= 1e-8, "alpha' " + sci(a));
  double e = 0;
  for (const auto& p : d.points)
    e = std::max({e, std::abs(p.deformed_fit.kappa - p.fit.kappa / 4), std::abs(*p.deformed_fit.mu - *p.fit.mu / 2),
                  std::abs(*p.deformed_fit.nu - *p.fit.nu / 2)});
  note(o, e <= 1e-5, "constant beta triple error " + sci(e));

  c.deform_beta = "exp_z:1";
  c.deform_gamma = 1.0;
  const auto r2 = run_suite(c);
  const auto& d2 = *r2.deformation;
  note(o, d2.mu_error <= 1e-4, "exp beta mu' error " + sci(d2.mu_error));
  note(o, d2.nu_error <= 1e-4, "exp beta nu' error " + sci(d2.nu_error));
  note(o, !d2.kappa_variant_matches.empty(), "no kappa' variant matches");
  std::string m;
  for (const auto& v : d2.kappa_variant_matches) m += (m.empty() ? "" : ",") + v;
  if (o.pass)
    o.detail = "alpha' = " + std::to_string(a) + ", const-beta error " + sci(e) + "; exp beta mu'/nu' " +
               sci(std::max(d2.mu_error, d2.nu_error)) + ", kappa' matches " + m;
  return o;
}

Outcome theorem_closure() {
  Outcome o;
  const auto s = registry_get("example_paper_s6");
  double sigma = 0, err = 0;
  for (const Point& p : test::seeded(test::example_box(), 50, 42)) {
    const auto G = compute_geometry(s, p);
    FrameData F = adapted_frame(G);
    const auto D = frame_derivatives(s, F);
    complete_phi_basis(F, G, D, 1.0);
    sigma = std::max({sigma, std::abs(F.sigma_e), std::abs(F.sigma_phie)});
    const NullityFit fit = fit_kmn(G, F);
    const double k = 0.5 * G.l.trace();
    const double m = 2 * F.a.value_or(NAN);
    const double n = 2 * 1.0 + D.lambda_along(G.xi) / F.lambda;
    err = std::max({err, std::abs(k - fit.kappa), std::abs(m - *fit.mu), std::abs(n - *fit.nu)});
  }
  note(o, sigma < 1e-6, "sigma " + sci(sigma));
  note(o, err <= 1e-4, "frame triple vs fit " + sci(err));
  if (o.pass) o.detail = "max |sigma| " + sci(sigma) + ", frame triple vs fit " + sci(err);
  return o;
}

Outcome property_suites() {
  Outcome o;
  const double b1 = row(example_report(), "bianchi_1").max_residual;
  const double b2 = row(example_report(), "bianchi_2").max_residual;
  note(o, b1 < 1e-6 && b2 < 1e-6, "Bianchi " + sci(b1) + " / " + sci(b2));

  // jet partials of a metric entry against central differences
  const auto s = registry_get("example_paper_s6");
  double jet = 0;
  const double h = 1e-5;
  for (const Point& p : test::seeded(test::example_box(), 20, 7)) {
    const auto g = s.g.at(p);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        for (int k = 0; k < 3; ++k) {
          const double fd = (s.g.at(p.displaced(k, h))(a, b).value() - s.g.at(p.displaced(k, -h))(a, b).value()) / (2 * h);
          jet = std::max(jet, test::rel_err(g(a, b).d(k), fd));
        }
  }
  note(o, jet <= 1e-5, "jet vs FD " + sci(jet));

  double inv = 0;
  SplitMix64 rng(5);
  for (const Point& p : test::seeded(test::example_box(), 20, 8)) {
    const auto G = compute_geometry(s, p, GeometryLevel::curvature);
    const FrameData F = adapted_frame(G);
    const NullityFit base = fit_in_frame(G, F);
    for (int t = 0; t < 3; ++t) {
      const NullityFit f = fit_in_frame(G, test::rotated(F, G.phi, 6.283185307179586 * rng.uniform()));
      inv = std::max({inv, std::abs(f.kappa - base.kappa), std::abs(*f.mu - *base.mu), std::abs(*f.nu - *base.nu)});
    }
  }
  note(o, inv <= 1e-7, "frame invariance " + sci(inv));

  const std::string a = emit_report(example_report(), "json");
  const std::string b = emit_report(run_suite(example_run()), "json");
  note(o, a == b, "reports differ between runs");
  if (o.pass)
    o.detail = "Bianchi " + sci(std::max(b1, b2)) + ", jet vs FD " + sci(jet) + ", frame invariance " + sci(inv) +
               ", report bytes identical (" + std::to_string(a.size()) + ")";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"example reproduction", example_reproduction},
      {"structure class", structure_class},
      {"spectrum law", spectrum_law},
      {"identity battery", identity_battery},
      {"deformation invariance", deformation_invariance},
      {"frame-data theorem closure", theorem_closure},
      {"property suites", property_suites},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("criterion %zu %-28s %s  %s\n", i + 1, criteria[i].first, o.pass ? "PASS" : "FAIL", o.detail.c_str());
  }
  return failed == 0 ? 0 : 1;
}
