#include "acm/deform.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace acm {

namespace {

std::string shortest(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_real(const std::string& s) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (!s.empty() && *first == '+') ++first;
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last || !std::isfinite(v))
    throw std::invalid_argument("not a finite real number: '" + s + "'");
  return v;
}

void worse(double& m, double x) {
  if (std::isnan(m)) return;
  if (std::isnan(x) || x > m) m = x;
}

}  // namespace

std::string BetaSpec::to_string() const {
  std::string out;
  switch (kind) {
    case Kind::constant: out = "const:"; break;
    case Kind::exp_z: out = "exp_z:"; break;
    case Kind::poly_z: out = "poly_z:"; break;
  }
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (i) out += ',';
    out += shortest(coeffs[i]);
  }
  return out;
}

bool BetaSpec::is_constant() const {
  switch (kind) {
    case Kind::constant: return true;
    case Kind::exp_z: return coeffs[0] == 0.0;
    case Kind::poly_z:
      for (std::size_t i = 1; i < coeffs.size(); ++i)
        if (coeffs[i] != 0.0) return false;
      return true;
  }
  return false;
}

BetaSpec parse_beta(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("beta spec must look like kind:values, got '" + text + "'");
  const std::string kind = text.substr(0, colon);
  BetaSpec spec;
  if (kind == "const")
    spec.kind = BetaSpec::Kind::constant;
  else if (kind == "exp_z")
    spec.kind = BetaSpec::Kind::exp_z;
  else if (kind == "poly_z")
    spec.kind = BetaSpec::Kind::poly_z;
  else
    throw std::invalid_argument("unknown beta kind '" + kind + "' (expected const, exp_z or poly_z)");
  spec.coeffs.clear();
  std::stringstream ss(text.substr(colon + 1));
  std::string item;
  while (std::getline(ss, item, ',')) spec.coeffs.push_back(parse_real(item));
  if (spec.coeffs.empty()) throw std::invalid_argument("beta spec has no values: '" + text + "'");
  if (spec.kind != BetaSpec::Kind::poly_z && spec.coeffs.size() != 1)
    throw std::invalid_argument("beta kind '" + kind + "' takes exactly one value");
  return spec;
}

ScalarField make_beta(const BetaSpec& spec, int dim) {
  const int zi = dim - 1;
  switch (spec.kind) {
    case BetaSpec::Kind::constant: {
      const double c = spec.coeffs[0];
      return ScalarField([c, dim](CoordJets) { return Jet(dim, c); });
    }
    case BetaSpec::Kind::exp_z: {
      const double s = spec.coeffs[0];
      return ScalarField([s, zi](CoordJets x) { return exp(x[static_cast<std::size_t>(zi)] * s); });
    }
    case BetaSpec::Kind::poly_z: {
      const std::vector<double> c = spec.coeffs;
      return ScalarField([c, zi, dim](CoordJets x) {
        Jet acc(dim, c.back());
        for (std::size_t i = c.size() - 1; i-- > 0;) acc = acc * x[static_cast<std::size_t>(zi)] + c[i];
        return acc;
      });
    }
  }
  throw std::logic_error("unhandled beta kind");
}

DeformationParams make_deformation(const BetaSpec& spec, double gamma, int dim) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw std::invalid_argument("gamma must be a positive real");
  if (spec.is_constant() && spec.kind != BetaSpec::Kind::exp_z && spec.coeffs[0] == 0.0)
    throw std::invalid_argument("beta vanishes identically");
  return {spec, make_beta(spec, dim), gamma};
}

AlmostContactMetricStructure apply_d_homothetic(const AlmostContactMetricStructure& s, const DeformationParams& d) {
  if (!(d.gamma > 0.0)) throw std::invalid_argument("gamma must be a positive real");
  AlmostContactMetricStructure out = s;
  out.name = s.name + "_deformed";
  out.reference = {};
  out.alpha_hint.reset();
  if (s.alpha_hint && d.spec.is_constant()) {
    const double b = d.beta.at(Point(std::vector<double>(static_cast<std::size_t>(s.dim), 0.0))).value();
    out.alpha_hint = *s.alpha_hint / b;
  }
  const ScalarField beta = d.beta;
  const double gamma = d.gamma;
  out.xi = VectorField([xi = s.xi, beta](CoordJets x) {
    JetVector v = xi(x);
    const Jet b = beta(x);
    for (Jet& c : v) c /= b;
    return v;
  });
  out.eta = OneFormField([eta = s.eta, beta](CoordJets x) {
    JetVector v = eta(x);
    const Jet b = beta(x);
    for (Jet& c : v) c *= b;
    return v;
  });
  out.g = MetricField([g = s.g, eta = s.eta, beta, gamma](CoordJets x) {
    JetMatrix G = g(x);
    const JetVector e = eta(x);
    const Jet b = beta(x);
    const Jet c = b * b - gamma;
    for (int i = 0; i < G.dim(); ++i)
      for (int j = 0; j < G.dim(); ++j) G(i, j) = G(i, j) * gamma + c * e[static_cast<std::size_t>(i)] * e[static_cast<std::size_t>(j)];
    return G;
  });
  out.in_domain = [base = s.in_domain, beta](const Point& p) {
    if (base && !base(p)) return false;
    return beta.at(p).value() != 0.0;
  };
  return out;
}

BetaAt beta_at(const AlmostContactMetricStructure& s, const DeformationParams& d, const Point& p) {
  const Jet b = d.beta.at(p);
  const Vec xi = values(s.xi.at(p));
  BetaAt out;
  out.beta = b.value();
  out.d_beta = Vec(p.dim());
  for (int k = 0; k < p.dim(); ++k) out.d_beta[k] = b.d(k);
  out.xi_beta = dot(out.d_beta, xi);
  return out;
}

void check_deformation(const AlmostContactMetricStructure& s, const DeformationParams& d,
                       const std::vector<Point>& points) {
  for (const Point& p : points) {
    const BetaAt b = beta_at(s, d, p);
    if (!(std::abs(b.beta) > 1e-12)) throw std::domain_error("beta vanishes at a sampled point");
    const Vec eta = values(s.eta.at(p));
    if (!(r_eta_residual(b.d_beta, eta) < 1e-6)) throw std::domain_error("beta is not in R_eta: d beta ^ eta != 0");
  }
}

DeformationLawResiduals deformed_operator_laws(const AlmostContactMetricStructure& s, const DeformationParams& d,
                                               const Point& p, double alpha) {
  const AlmostContactMetricStructure def = apply_d_homothetic(s, d);
  const PointGeometry G = compute_geometry(s, p, GeometryLevel::curvature);
  const PointGeometry Gd = compute_geometry(def, p, GeometryLevel::curvature);
  const BetaAt b = beta_at(s, d, p);
  const double beta = b.beta;
  const double xb = b.xi_beta;

  DeformationLawResiduals r;
  r.h = (Gd.h - G.h * (1.0 / beta)).max_abs();
  r.A = (Gd.A - G.A * (1.0 / beta)).max_abs();
  r.fundamental_form = (fundamental_form(def, p) - fundamental_form(s, p) * d.gamma).max_abs();
  r.alpha = std::abs(point_alpha(structure_forms(def, p)) - alpha / beta);

  const FrameData F = adapted_frame(G);
  const double c = (beta * beta - d.gamma) / (beta * beta);
  for (const Vec& X : F.vectors) {
    const double eX = dot(G.eta, X);
    for (const Vec& Y : F.vectors) {
      const double eY = dot(G.eta, Y);
      const Vec dconn = Gd.connection(X, Y) - G.connection(X, Y);
      const Vec law = G.xi * (-c * G.inner(G.A * X, Y)) + G.xi * (xb / beta * eX * eY);
      worse(r.connection, G.norm(dconn - law));
      const Vec Rd = Gd.curvature(X, Y, Gd.xi);
      const Vec Rl = G.curvature(X, Y, G.xi) * (1.0 / beta) + (G.A * Y * eX - G.A * X * eY) * (xb / (beta * beta));
      worse(r.curvature, G.norm(Rd - Rl));
    }
  }
  return r;
}

KmnPrediction predict_kmn(const NullityFit& fit, const BetaAt& b, double alpha) {
  const double beta = b.beta;
  if (beta == 0.0) throw std::domain_error("beta = 0");
  const double b2 = beta * beta;
  KmnPrediction k;
  k.kappa_proposition = fit.kappa / b2;
  k.kappa_theorem_proof = fit.kappa / b2 + b.xi_beta / (b2 * beta);
  k.kappa_derived = fit.kappa / b2 + alpha * b.xi_beta / (b2 * beta);
  if (fit.mu && fit.nu) {
    k.mu = *fit.mu / beta;
    k.nu = (beta * *fit.nu - b.xi_beta) / b2;
  }
  return k;
}

namespace {

TheoremTransform theorem_transform(const AlmostContactMetricStructure& s, const std::vector<DeformedPoint>& pts,
                                   double alpha, double tol) {
  TheoremTransform t;
  t.applicable = true;
  for (const DeformedPoint& dp : pts) {
    if (!(dp.fit.kappa + alpha * alpha < 0.0)) {
      t.applicable = false;
      std::ostringstream os;
      os << "requires kappa < -alpha^2; kappa + alpha^2 = " << dp.fit.kappa + alpha * alpha << " at a sampled point";
      t.reason = os.str();
      return t;
    }
    if (!dp.fit.mu) {
      t.applicable = false;
      t.reason = "mu, nu indeterminate at a sampled point";
      return t;
    }
    t.beta_t.push_back(std::sqrt(-(dp.fit.kappa + alpha * alpha)));
  }
  t.beta_matches = true;
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (!(std::abs(pts[i].beta.beta - t.beta_t[i]) <= 1e-6 * std::max(1.0, t.beta_t[i]))) t.beta_matches = false;

  const char* names[] = {"statement", "proof", "derived"};
  auto triples = [&](std::size_t i) {
    const DeformedPoint& dp = pts[i];
    const double b = t.beta_t[i];
    const double b2 = b * b;
    const double k = dp.fit.kappa, m = *dp.fit.mu, n = *dp.fit.nu;
    // xi(beta) = -xi(kappa) / (2 beta) with xi(kappa) from central differences of the fit
    const FitGradient g = fit_gradient(s, dp.point);
    const double xb = -dot(g.kappa, values(s.xi.at(dp.point))) / (2.0 * b);
    return std::vector<TheoremTransform::Triple>{
        {names[0], -1.0 - (3.0 * alpha * alpha + alpha * n) / b2, m / b, 2.0 * alpha / b},
        {names[1], (k - 2.0 * alpha * alpha + alpha * n) / b2, m / b, 2.0 * alpha / b},
        {names[2], k / b2 + alpha * xb / (b2 * b), m / b, (b * n - xb) / b2},
    };
  };
  if (!pts.empty()) t.first_point = triples(0);
  if (!t.beta_matches) {
    t.reason = "requested beta differs from sqrt(-(kappa + alpha^2)); use exp_z:-2alpha-style beta to compare";
    return t;
  }
  t.variants = {{names[0]}, {names[1]}, {names[2]}};
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto tr = i == 0 ? t.first_point : triples(i);
    const NullityFit& f = pts[i].deformed_fit;
    // relative: kappa' grows like 1/beta^2 and beta_T is small where kappa is close to -alpha^2
    const auto rel = [](double fit, double pred) { return std::abs(fit - pred) / std::max(1.0, std::abs(pred)); };
    for (std::size_t v = 0; v < 3; ++v) {
      double e = rel(f.kappa, tr[v].kappa);
      if (f.mu && f.nu) {
        e = std::max({e, rel(*f.mu, tr[v].mu), rel(*f.nu, tr[v].nu)});
      } else {
        e = std::numeric_limits<double>::quiet_NaN();
      }
      worse(t.variants[v].max_error, e);
    }
  }
  for (auto& v : t.variants) {
    v.matches = v.max_error <= tol;
    if (v.matches) t.matches.push_back(v.name);
  }
  return t;
}

}  // namespace

DeformationReport compare_deformed(const AlmostContactMetricStructure& s, const DeformationParams& d,
                                   const std::vector<Point>& points, double alpha, double tolerance) {
  if (points.empty()) throw std::invalid_argument("no points to compare");
  check_deformation(s, d, points);
  const AlmostContactMetricStructure def = apply_d_homothetic(s, d);

  DeformationReport rep;
  rep.beta_spec = d.spec.to_string();
  rep.gamma = d.gamma;
  rep.alpha = alpha;
  rep.tolerance = tolerance > 0.0 ? tolerance : (d.spec.is_constant() ? 1e-5 : 1e-4);

  if (d.spec.is_constant()) {
    const AlphaDetection a = measure_alpha(def, points);
    rep.alpha_deformed = a.alpha;
    rep.alpha_deformed_residual = std::max(a.spread, a.d_phi_residual);
  }

  rep.kappa_variants = {{"proposition"}, {"theorem_proof"}, {"derived"}};
  for (const Point& p : points) {
    DeformedPoint dp;
    dp.point = p;
    dp.beta = beta_at(s, d, p);
    rep.r_eta_beta = std::max(rep.r_eta_beta, r_eta_residual(dp.beta.d_beta, values(s.eta.at(p))));
    dp.fit = fit_kmn(s, p);
    dp.deformed_fit = fit_kmn(def, p);
    dp.predicted = predict_kmn(dp.fit, dp.beta, alpha);
    dp.laws = deformed_operator_laws(s, d, p, alpha);

    const NullityFit& f = dp.deformed_fit;
    worse(rep.kappa_variants[0].max_error, std::abs(f.kappa - dp.predicted.kappa_proposition));
    worse(rep.kappa_variants[1].max_error, std::abs(f.kappa - dp.predicted.kappa_theorem_proof));
    worse(rep.kappa_variants[2].max_error, std::abs(f.kappa - dp.predicted.kappa_derived));
    if (dp.predicted.mu) {
      constexpr double nan = std::numeric_limits<double>::quiet_NaN();
      worse(rep.mu_error, f.mu ? std::abs(*f.mu - *dp.predicted.mu) : nan);
      worse(rep.nu_error, f.nu ? std::abs(*f.nu - *dp.predicted.nu) : nan);
    }
    worse(rep.max_laws.h, dp.laws.h);
    worse(rep.max_laws.A, dp.laws.A);
    worse(rep.max_laws.connection, dp.laws.connection);
    worse(rep.max_laws.curvature, dp.laws.curvature);
    worse(rep.max_laws.fundamental_form, dp.laws.fundamental_form);
    worse(rep.max_laws.alpha, dp.laws.alpha);
    rep.points.push_back(std::move(dp));
  }
  for (auto& v : rep.kappa_variants) {
    v.matches = v.max_error <= rep.tolerance;
    if (v.matches) rep.kappa_variant_matches.push_back(v.name);
  }
  rep.theorem = theorem_transform(s, rep.points, alpha, rep.tolerance);

  const double tol = rep.tolerance;
  const DeformationLawResiduals& L = rep.max_laws;
  rep.pass = L.h <= tol && L.A <= tol && L.connection <= tol && L.curvature <= tol && L.alpha <= tol &&
             L.fundamental_form <= 1e-9 && rep.mu_error <= tol && rep.nu_error <= tol &&
             !rep.kappa_variant_matches.empty() &&
             (!rep.alpha_deformed || rep.alpha_deformed_residual <= 1e-8);
  return rep;
}

}  // namespace acm
