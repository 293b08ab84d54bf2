#include "acm/classify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

namespace acm {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kHypothesisTol = 1e-6;

// Running maximum that keeps the first NaN.
struct Worst {
  double v = 0.0;
  void operator()(double x) {
    if (std::isnan(v)) return;
    if (std::isnan(x) || x > v) v = x;
  }
};

std::vector<double> frame_components(const PointGeometry& G, const std::vector<Vec>& V, const SmallMatrix& T) {
  std::vector<double> c;
  c.reserve(V.size() * V.size());
  for (const Vec& b : V) {
    const Vec Tb = T * b;
    for (const Vec& a : V) c.push_back(G.inner(a, Tb));
  }
  return c;
}

double frob(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

SmallMatrix nullity_operator(const PointGeometry& G, double kappa, double mu, double nu) {
  return SmallMatrix::identity(G.dim) * kappa + G.h * mu + (G.phi * G.h) * nu;
}

double residual_501(const PointGeometry& G, const std::vector<Vec>& V, const SmallMatrix& B) {
  Worst w;
  for (const Vec& X : V)
    for (const Vec& Y : V) {
      const Vec lhs = G.curvature(X, Y, G.xi);
      const Vec rhs = B * X * dot(G.eta, Y) - B * Y * dot(G.eta, X);
      w(G.norm(lhs - rhs));
    }
  return w.v;
}

}  // namespace

NullityFit fit_in_frame(const PointGeometry& G, const FrameData& F) {
  NullityFit fit;
  fit.point = G.point;
  fit.lambda = F.lambda;
  const SmallMatrix P = SmallMatrix::identity(G.dim) - SmallMatrix::outer(G.xi, G.eta);  // -phi^2
  const SmallMatrix phih = G.phi * G.h;
  const auto L = frame_components(G, F.vectors, G.l);
  const auto cP = frame_components(G, F.vectors, P);
  if (F.degenerate) {
    fit.kappa = frob(L, cP) / frob(cP, cP);
    fit.flags.push_back("mu_nu_indeterminate");
  } else {
    const auto cH = frame_components(G, F.vectors, G.h);
    const auto cK = frame_components(G, F.vectors, phih);
    const std::vector<const std::vector<double>*> basis{&cP, &cH, &cK};
    SmallMatrix N(3);
    Vec rhs(3);
    for (int i = 0; i < 3; ++i) {
      rhs[i] = frob(*basis[static_cast<std::size_t>(i)], L);
      for (int j = 0; j < 3; ++j) N(i, j) = frob(*basis[static_cast<std::size_t>(i)], *basis[static_cast<std::size_t>(j)]);
    }
    const Vec sol = invert(N) * rhs;
    fit.kappa = sol[0];
    fit.mu = sol[1];
    fit.nu = sol[2];
  }
  fit.residual_501 = residual_501(G, F.vectors, nullity_operator(G, fit.kappa, fit.mu.value_or(0.0), fit.nu.value_or(0.0)));
  return fit;
}

NullityFit fit_kmn(const PointGeometry& G, const FrameData& F) {
  NullityFit fit = fit_in_frame(G, F);
  if (F.n > 1 && !F.degenerate) {
    double dev = 0.0;
    for (int i = 0; i < F.n; ++i) {
      const Vec& e = F.e(i);
      const Vec& pe = F.phi_e(i);
      const double lam = F.lambdas[static_cast<std::size_t>(i)];
      const double le_e = G.inner(G.l * e, e);
      const double lpe_pe = G.inner(G.l * pe, pe);
      const double k = 0.5 * (le_e + lpe_pe);
      const double m = (le_e - lpe_pe) / (2.0 * lam);
      const double v = G.inner(G.l * e, pe) / lam;
      dev = std::max({dev, std::abs(k - fit.kappa), std::abs(m - *fit.mu), std::abs(v - *fit.nu),
                      std::abs(lam - F.lambda)});
    }
    if (!(dev <= 1e-6)) fit.flags.push_back("eigenpair_inconsistent");
  }
  return fit;
}

NullityFit fit_kmn(const AlmostContactMetricStructure& s, const Point& p) {
  const PointGeometry G = compute_geometry(s, p, GeometryLevel::curvature);
  return fit_kmn(G, adapted_frame(G));
}

double point_alpha(const StructureForms& forms) {
  const auto& d = forms.d_Phi.data();
  const auto& w = forms.eta_wedge_Phi.data();
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    num += d[i] * w[i];
    den += w[i] * w[i];
  }
  return den > 0.0 ? num / (2.0 * den) : 0.0;
}

AlphaDetection measure_alpha(const AlmostContactMetricStructure& s, const std::vector<Point>& points,
                             double d_eta_tol, double constancy_tol) {
  AlphaDetection r;
  std::vector<StructureForms> forms;
  forms.reserve(points.size());
  double num = 0.0, den = 0.0;
  for (const Point& p : points) {
    forms.push_back(structure_forms(s, p));
    const StructureForms& f = forms.back();
    r.per_point.push_back(point_alpha(f));
    r.d_eta_residual = std::max(r.d_eta_residual, f.d_eta.max_abs());
    for (std::size_t i = 0; i < f.d_Phi.data().size(); ++i) {
      num += f.d_Phi.data()[i] * f.eta_wedge_Phi.data()[i];
      den += f.eta_wedge_Phi.data()[i] * f.eta_wedge_Phi.data()[i];
    }
  }
  r.alpha = den > 0.0 ? num / (2.0 * den) : 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    r.spread = std::max(r.spread, std::abs(r.per_point[i] - r.alpha));
    const auto& d = forms[i].d_Phi.data();
    const auto& w = forms[i].eta_wedge_Phi.data();
    for (std::size_t j = 0; j < d.size(); ++j)
      r.d_phi_residual = std::max(r.d_phi_residual, std::abs(d[j] - 2.0 * r.alpha * w[j]));
  }
  r.closed = r.d_eta_residual <= d_eta_tol;
  r.constant = r.spread <= constancy_tol;
  r.form_ok = r.d_phi_residual <= 1e-8;
  std::ostringstream msg;
  if (!r.closed) msg << "eta is not closed: max |d eta| = " << r.d_eta_residual << "; ";
  if (!r.constant) msg << "alpha is not constant: spread " << r.spread << " exceeds " << constancy_tol << "; ";
  if (!r.form_ok) msg << "dPhi != 2 alpha eta ^ Phi: residual " << r.d_phi_residual << "; ";
  r.message = msg.str();
  if (!r.message.empty()) r.message.resize(r.message.size() - 2);
  return r;
}

AlphaDetection detect_alpha(const AlmostContactMetricStructure& s, const std::vector<Point>& points,
                            double d_eta_tol, double constancy_tol) {
  AlphaDetection r = measure_alpha(s, points, d_eta_tol, constancy_tol);
  if (!r.closed || !r.constant || !r.form_ok) throw ClassificationError(s.name + ": " + r.message);
  return r;
}

FitGradient fit_gradient(const AlmostContactMetricStructure& s, const Point& p, double step) {
  const int dim = p.dim();
  FitGradient g;
  g.step = step;
  g.kappa = g.mu = g.nu = g.lambda = Vec(dim);
  g.mu_nu_valid = true;
  for (int k = 0; k < dim; ++k) {
    const Point qp = p.displaced(k, step);
    const Point qm = p.displaced(k, -step);
    if (s.in_domain && (!s.in_domain(qp) || !s.in_domain(qm)))
      throw std::domain_error("finite-difference stencil leaves the domain");
    const NullityFit fp = fit_kmn(s, qp);
    const NullityFit fm = fit_kmn(s, qm);
    const double inv = 0.5 / step;
    g.kappa[k] = (fp.kappa - fm.kappa) * inv;
    g.lambda[k] = (fp.lambda - fm.lambda) * inv;
    if (fp.mu && fm.mu) {
      g.mu[k] = (*fp.mu - *fm.mu) * inv;
      g.nu[k] = (*fp.nu - *fm.nu) * inv;
    } else {
      g.mu_nu_valid = false;
    }
  }
  if (!g.mu_nu_valid) g.mu = g.nu = Vec(dim);
  return g;
}

double r_eta_residual(const Vec& grad, const Vec& eta) {
  double m = 0.0;
  for (int i = 0; i < grad.dim(); ++i)
    for (int j = i + 1; j < grad.dim(); ++j) m = std::max(m, std::abs(grad[i] * eta[j] - grad[j] * eta[i]));
  return m;
}

EtaParallelCheck check_eta_parallel_h(const PointGeometry& G, const FrameData& F, double alpha) {
  EtaParallelCheck c;
  const std::vector<Vec> D(F.vectors.begin(), F.vectors.end() - 1);
  Worst par, formula, printed;
  const SmallMatrix h2 = G.h * G.h;
  const SmallMatrix phi2 = G.phi * G.phi;
  for (const Vec& X : F.vectors) {
    const SmallMatrix nXh = PointGeometry::along(G.nabla_h, X);
    const double etaX = dot(G.eta, X);
    for (const Vec& Y : F.vectors) {
      const double etaY = dot(G.eta, Y);
      const Vec lhs = nXh * Y;
      const Vec rhs = -(G.phi * (G.l * Y) + G.phi * Y * (alpha * alpha) + G.h * Y * (2.0 * alpha) + G.phi * (h2 * Y)) * etaX -
                      (-(phi2 * (G.h * X)) * alpha + G.phi * (h2 * X)) * etaY;
      const Vec xi_part = G.xi * G.inner(Y, G.h * X * alpha + G.phi * (h2 * X));
      formula(G.norm(lhs - rhs + xi_part));
      printed(G.norm(lhs - rhs - xi_part));
    }
  }
  for (const Vec& X : D)
    for (const Vec& Y : D) {
      const Vec nh = PointGeometry::along(G.nabla_h, X) * Y;
      for (const Vec& Z : D) par(std::abs(G.inner(nh, Z)));
    }
  c.eta_parallel = par.v;
  c.formula = formula.v;
  c.formula_printed = printed.v;
  return c;
}

double check_kaehler_leaf_condition(const PointGeometry& G, const FrameData& F) {
  Worst w;
  for (const Vec& X : F.vectors) {
    const SmallMatrix nXphi = PointGeometry::along(G.nabla_phi, X);
    const Vec phiAX = G.phi * (G.A * X);
    for (const Vec& Y : F.vectors) {
      const Vec rhs = G.xi * -G.inner(phiAX, Y) + phiAX * dot(G.eta, Y);
      w(G.norm(nXphi * Y - rhs));
    }
  }
  return w.v;
}

// ---------------------------------------------------------------------------
// Identity battery

namespace {

// Quantities shared by the evaluators at one point.
struct Env {
  const PointContext& c;
  const PointGeometry& G;
  const FrameData& F;
  std::vector<Vec> V;  // full frame
  std::vector<Vec> D;  // contact distribution part
  int n;
  double al, kappa, mu, nu, lam;
  SmallMatrix I, phi, h, phih, hphi, h2, phi2, l, Q, nxh;
  Vec xi, eta, Qxi;
  double trl, r;

  explicit Env(const PointContext& ctx)
      : c(ctx), G(ctx.G), F(ctx.frame), V(F.vectors), D(F.vectors.begin(), F.vectors.end() - 1), n(G.n),
        al(ctx.alpha), kappa(ctx.fit.kappa), mu(ctx.fit.mu.value_or(0.0)), nu(ctx.fit.nu.value_or(0.0)),
        lam(F.lambda), I(SmallMatrix::identity(G.dim)), phi(G.phi), h(G.h), phih(G.phi * G.h),
        hphi(G.h * G.phi), h2(G.h * G.h), phi2(G.phi * G.phi), l(G.l), Q(G.Q),
        nxh(PointGeometry::along(G.nabla_h, G.xi)), xi(G.xi), eta(G.eta), Qxi(G.Q * G.xi), trl(G.l.trace()),
        r(G.r) {}

  double g(const Vec& X, const Vec& Y) const { return G.inner(X, Y); }
  double et(const Vec& X) const { return dot(eta, X); }
  double S(const Vec& X, const Vec& Y) const { return G.inner(Q * X, Y); }
  double sigma(const Vec& X) const { return G.inner(Qxi, X); }
  SmallMatrix nphi(const Vec& X) const { return PointGeometry::along(G.nabla_phi, X); }
  SmallMatrix nh(const Vec& X) const { return PointGeometry::along(G.nabla_h, X); }
  SmallMatrix nphih(const Vec& X) const { return PointGeometry::along(G.nabla_phih, X); }
  double d(const Vec& grad, const Vec& X) const { return dot(grad, X); }

  template <class Fn>
  double vec1(Fn f) const {
    Worst w;
    for (const Vec& X : V) w(G.norm(f(X)));
    return w.v;
  }
  template <class Fn>
  double vec2(Fn f) const {
    Worst w;
    for (const Vec& X : V)
      for (const Vec& Y : V) w(G.norm(f(X, Y)));
    return w.v;
  }
  template <class Fn>
  double vec3(Fn f) const {
    Worst w;
    for (const Vec& X : V)
      for (const Vec& Y : V)
        for (const Vec& Z : V) w(G.norm(f(X, Y, Z)));
    return w.v;
  }
  template <class Fn>
  double sca1(Fn f) const {
    Worst w;
    for (const Vec& X : V) w(std::abs(f(X)));
    return w.v;
  }
  template <class Fn>
  double sca2(Fn f) const {
    Worst w;
    for (const Vec& X : V)
      for (const Vec& Y : V) w(std::abs(f(X, Y)));
    return w.v;
  }
  template <class Fn>
  double sca3(Fn f) const {
    Worst w;
    for (const Vec& X : V)
      for (const Vec& Y : V)
        for (const Vec& Z : V) w(std::abs(f(X, Y, Z)));
    return w.v;
  }
  double op(const SmallMatrix& T) const {
    return vec1([&](const Vec& X) { return T * X; });
  }

  bool sigma_zero() const {
    return std::abs(F.sigma_e) < kHypothesisTol && std::abs(F.sigma_phie) < kHypothesisTol;
  }
  double a_tilde() const { return r / 2.0 + al * al + lam * lam; }
  double b_tilde() const { return -r / 2.0 - 3.0 * al * al - 3.0 * lam * lam; }
};

IdentityEval value(double r) { return {r, {}}; }
IdentityEval skip(std::string why) { return {0.0, std::move(why)}; }

using Evaluator = std::function<IdentityEval(const Env&)>;

struct Row {
  IdentityInfo info;
  Evaluator eval;
};

constexpr auto G_ = IdentityRole::gating;
constexpr auto D_ = IdentityRole::diagnostic;

const char* kOnly3 = "dimension 3 only";
const char* kDegenerate = "lambda below threshold: phi-basis not determined by h";
const char* kSigma = "sigma is not identically zero";

// (f1, f2) minimising |(Q phi - phi Q) - f1 h phi - f2 h| over frame components.
std::optional<std::pair<double, double>> fit_f1_f2(const Env& e) {
  if (e.F.degenerate) return std::nullopt;
  const auto M = frame_components(e.G, e.V, e.Q * e.phi - e.phi * e.Q);
  const auto P1 = frame_components(e.G, e.V, e.hphi);
  const auto P2 = frame_components(e.G, e.V, e.h);
  const double a11 = frob(P1, P1), a12 = frob(P1, P2), a22 = frob(P2, P2);
  const double det = a11 * a22 - a12 * a12;
  if (std::abs(det) <= 1e-24) return std::nullopt;
  const double b1 = frob(P1, M), b2 = frob(P2, M);
  return std::make_pair((a22 * b1 - a12 * b2) / det, (a11 * b2 - a12 * b1) / det);
}

Vec eq_7_27_residual(const Env& e, const Vec& X, const Vec& Y, double flip) {
  const FitGradient& gr = e.c.grad;
  const double xk = e.d(gr.kappa, e.xi), xm = e.d(gr.mu, e.xi), xn = e.d(gr.nu, e.xi);
  const double eX = e.et(X), eY = e.et(Y);
  return (Y * eX * -1.0 + X * eY) * xk + (e.h * X * eY - e.h * Y * eX) * xm + (e.phih * X * eY - e.phih * Y * eX) * xn -
         e.phi2 * Y * (flip * e.d(gr.kappa, X)) + e.h * Y * e.d(gr.mu, X) + e.phih * Y * e.d(gr.nu, X) -
         e.h * X * e.d(gr.mu, Y) - e.phih * X * e.d(gr.nu, Y) + e.phi2 * X * (flip * e.d(gr.kappa, Y)) +
         e.xi * (2.0 * (e.kappa + e.al * e.al) * e.mu * e.g(e.phi * X, Y)) +
         e.xi * (2.0 * e.mu * e.g(e.h * X, e.phih * Y));
}

double prop_113_residual(const Env& e, double phi_sign) {
  const double a = e.al;
  return e.sca3([&](const Vec& X, const Vec& Y, const Vec& Z) {
    const Vec pX = e.phi * X;
    const double lhs = e.g(e.G.curvature(e.xi, X, Y), Z) - e.g(e.G.curvature(e.xi, X, e.phi * Y), e.phi * Z) +
                       e.g(e.G.curvature(e.xi, pX, Y), e.phi * Z) + e.g(e.G.curvature(e.xi, pX, e.phi * Y), Z);
    const Vec phX = e.phih * X;
    const double rhs = 2.0 * phi_sign * e.G.nabla_Phi_at(e.h * X, Y, Z) + 2.0 * a * a * e.et(Y) * e.g(X, Z) -
                       2.0 * a * a * e.et(Z) * e.g(X, Y) - 2.0 * a * e.et(Y) * e.g(phX, Z) +
                       2.0 * a * e.et(Z) * e.g(phX, Y);
    return lhs - rhs;
  });
}

std::vector<Row> make_rows() {
  std::vector<Row> rows;
  auto add = [&](const char* name, double tol, IdentityRole role, Evaluator f) {
    rows.push_back({{name, tol, role}, std::move(f)});
  };

  // structure axioms and forms
  add("phi_squared", 1e-9, G_, [](const Env& e) { return value(e.c.validation.phi_squared); });
  add("eta_xi", 1e-9, G_, [](const Env& e) { return value(e.c.validation.eta_xi); });
  add("phi_xi", 1e-9, G_, [](const Env& e) { return value(e.c.validation.phi_xi); });
  add("eta_phi", 1e-9, G_, [](const Env& e) { return value(e.c.validation.eta_phi); });
  add("compatibility", 1e-9, G_, [](const Env& e) { return value(e.c.validation.compatibility); });
  add("phi_rank", 1e-9, G_, [](const Env& e) { return value(e.c.validation.rank_residual); });
  add("d_eta", 1e-9, G_, [](const Env& e) { return value(e.c.forms.d_eta.max_abs()); });
  add("dPhi_2alpha", 1e-8, G_, [](const Env& e) {
    const auto& d = e.c.forms.d_Phi.data();
    const auto& w = e.c.forms.eta_wedge_Phi.data();
    Worst m;
    for (std::size_t i = 0; i < d.size(); ++i) m(std::abs(d[i] - 2.0 * e.al * w[i]));
    return value(m.v);
  });
  add("alpha_constancy", 1e-7, G_, [](const Env& e) { return value(std::abs(e.c.alpha_point - e.al)); });
  add("normality", 1e-6, D_, [](const Env& e) { return value(e.G.nijenhuis.max_abs()); });

  // Riemannian structure
  add("levi_civita", 1e-9, G_, [](const Env& e) { return value(e.G.metric_compatibility); });
  add("bianchi_1", 1e-6, G_, [](const Env& e) {
    const int m = e.G.dim;
    const Tensor& R = e.G.riemann;
    Worst w;
    for (int l = 0; l < m; ++l)
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
          for (int k = 0; k < m; ++k) w(std::abs(R(l, i, j, k) + R(l, j, k, i) + R(l, k, i, j)));
    return value(w.v);
  });
  add("bianchi_2", 1e-6, G_, [](const Env& e) {
    const int d = e.G.dim;
    const Tensor& N = e.G.nabla_riemann;
    Worst w;
    for (int m = 0; m < d; ++m)
      for (int l = 0; l < d; ++l)
        for (int i = 0; i < d; ++i)
          for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k) w(std::abs(N(m, l, i, j, k) + N(i, l, j, m, k) + N(j, l, m, i, k)));
    return value(w.v);
  });
  add("pair_symmetry", 1e-8, G_, [](const Env& e) {
    Worst w;
    for (const Vec& X : e.V)
      for (const Vec& Y : e.V)
        for (const Vec& Z : e.V)
          for (const Vec& W : e.V) w(std::abs(e.g(e.G.curvature(X, Y, Z), W) - e.g(e.G.curvature(Z, W, X), Y)));
    return value(w.v);
  });

  // basic operator identities
  add("h_xi", 1e-6, G_, [](const Env& e) { return value(e.G.norm(e.h * e.xi)); });
  add("A_xi", 1e-6, G_, [](const Env& e) { return value(e.G.norm(e.G.A * e.xi)); });
  add("h_self_adjoint", 1e-6, G_, [](const Env& e) {
    return value(e.sca2([&](const Vec& X, const Vec& Y) { return e.g(e.h * X, Y) - e.g(X, e.h * Y); }));
  });
  add("A_self_adjoint", 1e-6, G_, [](const Env& e) {
    return value(e.sca2([&](const Vec& X, const Vec& Y) { return e.g(e.G.A * X, Y) - e.g(X, e.G.A * Y); }));
  });
  add("trace_h", 1e-6, G_, [](const Env& e) { return value(std::abs(e.h.trace())); });
  add("eq_2_0_delta_eta", 1e-6, G_, [](const Env& e) {
    return value(std::abs(-e.G.nabla_xi.trace() + 2.0 * e.al * e.n));
  });
  add("eq_2_3", 1e-6, G_, [](const Env& e) {
    return value(e.vec1([&](const Vec& X) { return e.G.nabla_xi * X + e.phi2 * X * e.al + e.phih * X; }));
  });
  add("eq_2_4_h", 1e-6, G_, [](const Env& e) { return value(e.op(e.phih + e.hphi)); });
  add("eq_2_4_A", 1e-6, G_, [](const Env& e) {
    return value(e.op(e.phi * e.G.A + e.G.A * e.phi + e.phi * (2.0 * e.al)));
  });
  add("eq_2_5", 1e-6, G_, [](const Env& e) {
    return value(e.sca2([&](const Vec& X, const Vec& Y) {
      double nxe = 0.0;
      for (int j = 0; j < e.G.dim; ++j)
        for (int i = 0; i < e.G.dim; ++i) nxe += X[j] * Y[i] * e.G.nabla_eta(j, i);
      return nxe - e.al * (e.g(X, Y) - e.et(X) * e.et(Y)) - e.g(e.phi * Y, e.h * X);
    }));
  });
  add("eq_2_6", 1e-6, G_, [](const Env& e) {
    return value(e.sca1([&](const Vec& X) {
      return e.G.norm(e.G.nabla_xi * X + e.phi2 * X * e.al) - e.G.norm(e.h * X);
    }));
  });
  add("eq_2_7", 1e-6, G_, [](const Env& e) {
    return value(e.vec2([&](const Vec& X, const Vec& Y) {
      return e.nphi(X) * Y + e.nphi(e.phi * X) * (e.phi * Y) + e.phi * X * (e.al * e.et(Y)) +
             e.xi * (2.0 * e.al * e.g(X, e.phi * Y)) + e.h * X * e.et(Y);
    }));
  });
  add("kaehler_leaf", 1e-6, G_, [](const Env& e) { return value(check_kaehler_leaf_condition(e.G, e.F)); });
  add("eq_7_36", 1e-6, G_, [](const Env& e) {
    return value(e.vec2([&](const Vec& X, const Vec& Y) {
      const Vec T = e.phi * X * e.al + e.h * X;
      return e.nphi(X) * Y - (e.xi * e.g(T, Y) - T * e.et(Y));
    }));
  });

  // curvature of xi
  add("eq_3_1", 1e-6, G_, [](const Env& e) {
    const double a = e.al;
    return value(e.vec2([&](const Vec& X, const Vec& Y) {
      const Vec rhs = (Y * e.et(X) - X * e.et(Y)) * (a * a) - (e.phih * Y * e.et(X) - e.phih * X * e.et(Y)) * a +
                      e.nphih(Y) * X - e.nphih(X) * Y;
      return e.G.curvature(X, Y, e.xi) - rhs;
    }));
  });
  add("eq_3_2", 1e-6, G_, [](const Env& e) {
    const double a = e.al;
    return value(e.op(e.l - (e.phi2 * (a * a) + e.phih * (2.0 * a) - e.h2 + e.phi * e.nxh)));
  });
  add("eq_3_3", 1e-6, G_, [](const Env& e) {
    const double a = e.al;
    return value(e.op(e.nxh - (e.phi * e.l * -1.0 - e.phi * (a * a) - e.h * (2.0 * a) - e.phi * e.h2)));
  });
  add("eq_3_4", 1e-6, G_, [](const Env& e) {
    const double a = e.al;
    return value(e.op(e.l - e.phi * e.l * e.phi - (e.phi2 * (a * a) - e.h2) * 2.0));
  });
  add("eq_3_5", 1e-6, G_, [](const Env& e) {
    return value(e.sca1([&](const Vec& X) {
      double div = 0.0;
      for (int k = 0; k < e.G.dim; ++k)
        for (int j = 0; j < e.G.dim; ++j) div += e.G.nabla_phih(k, k, j) * X[j];
      return e.S(X, e.xi) + 2.0 * e.n * e.al * e.al * e.et(X) + div;
    }));
  });
  add("eq_3_6", 1e-6, G_, [](const Env& e) {
    return value(std::abs(e.S(e.xi, e.xi) + 2.0 * e.n * e.al * e.al + e.h2.trace()));
  });
  add("eta_parallel_h", 1e-6, D_, [](const Env& e) { return value(check_eta_parallel_h(e.G, e.F, e.al).eta_parallel); });
  add("eq_4_1", 1e-6, G_, [](const Env& e) {
    const EtaParallelCheck c = check_eta_parallel_h(e.G, e.F, e.al);
    if (!(c.eta_parallel < kHypothesisTol)) return skip("h is not eta-parallel");
    return value(c.formula);
  });
  add("eq_4_1_printed", 1e-6, D_, [](const Env& e) {
    const EtaParallelCheck c = check_eta_parallel_h(e.G, e.F, e.al);
    if (!(c.eta_parallel < kHypothesisTol)) return skip("h is not eta-parallel");
    return value(c.formula_printed);
  });
  // Holds with Phi(X,Y) = g(X, phi Y) in the nabla Phi term; the other sign is kept as a diagnostic.
  add("prop_113", 1e-6, G_, [](const Env& e) { return value(prop_113_residual(e, -1.0)); });
  add("prop_113_printed_convention", 1e-6, D_, [](const Env& e) { return value(prop_113_residual(e, 1.0)); });

  // nullity fit
  add("eq_501", 1e-6, G_, [](const Env& e) { return value(e.c.fit.residual_501); });
  add("eq_7_28", 1e-6, G_, [](const Env& e) {
    return value(e.op(e.l - (e.phi2 * -e.kappa + e.h * e.mu + e.phih * e.nu)));
  });
  add("eq_7_29", 1e-6, G_, [](const Env& e) {
    return value(e.op(e.l * e.phi - e.phi * e.l - (e.hphi * (2.0 * e.mu) + e.h * (2.0 * e.nu))));
  });
  add("eq_7_30", 1e-6, G_, [](const Env& e) { return value(e.op(e.h2 - e.phi2 * (e.kappa + e.al * e.al))); });
  add("eq_7_30_lambda", 1e-6, G_, [](const Env& e) {
    return value(std::abs(e.lam * e.lam + e.kappa + e.al * e.al));
  });
  add("eq_7_31", 1e-6, G_, [](const Env& e) {
    return value(e.op(e.nxh - (e.phih * -e.mu + e.h * (e.nu - 2.0 * e.al))));
  });
  add("eq_7_32", 1e-3, G_, [](const Env& e) {
    return value(e.op(e.nxh * e.h + e.h * e.nxh - e.phi2 * (2.0 * (e.nu - 2.0 * e.al) * (e.kappa + e.al * e.al))));
  });
  add("eq_7_33", 1e-3, G_, [](const Env& e) {
    return value(std::abs(e.d(e.c.grad.kappa, e.xi) - 2.0 * (e.nu - 2.0 * e.al) * (e.kappa + e.al * e.al)));
  });
  add("eq_7_34", 1e-6, G_, [](const Env& e) {
    return value(e.vec2([&](const Vec& X, const Vec& Y) {
      const double eY = e.et(Y);
      const Vec rhs = (e.xi * e.g(Y, X) - X * eY) * e.kappa + (e.xi * e.g(e.h * Y, X) - e.h * X * eY) * e.mu +
                      (e.xi * e.g(e.phih * Y, X) - e.phih * X * eY) * e.nu;
      return e.G.curvature(e.xi, X, Y) - rhs;
    }));
  });
  add("eq_7_35", 1e-6, G_, [](const Env& e) { return value(e.G.norm(e.Qxi - e.xi * (2.0 * e.n * e.kappa))); });
  add("eq_7_25", 1e-6, G_, [](const Env& e) {
    return value(e.vec2([&](const Vec& X, const Vec& Y) {
      const double eX = e.et(X), eY = e.et(Y);
      const Vec rhs = (X * eY - Y * eX) * -(e.kappa + e.al * e.al) - (e.h * X * eY - e.h * Y * eX) * e.mu +
                      (e.phih * X * eY - e.phih * Y * eX) * (e.al - e.nu);
      return e.nphih(X) * Y - e.nphih(Y) * X - rhs;
    }));
  });
  add("eq_7_26", 1e-6, G_, [](const Env& e) {
    return value(e.vec2([&](const Vec& X, const Vec& Y) {
      const double eX = e.et(X), eY = e.et(Y);
      const Vec rhs = (e.phi * X * eY - e.phi * Y * eX + e.xi * (2.0 * e.g(e.phi * X, Y))) * (e.kappa + e.al * e.al) +
                      (e.phih * X * eY - e.phih * Y * eX) * e.mu + (e.h * X * eY - e.h * Y * eX) * (e.al - e.nu);
      return e.nh(X) * Y - e.nh(Y) * X - rhs;
    }));
  });
  add("eq_7_37", 1e-6, G_, [](const Env& e) {
    return value(e.op(e.Q * e.phi - e.phi * e.Q -
                      (e.hphi * (2.0 * e.mu) + e.h * (2.0 * (2.0 * e.al * (e.n - 1) + e.nu)))));
  });
  add("eq_7_27", 1e-3, G_, [](const Env& e) {
    return value(e.vec2([&](const Vec& X, const Vec& Y) { return eq_7_27_residual(e, X, Y, 1.0); }));
  });
  add("eq_7_27_flipped", 1e-3, D_, [](const Env& e) {
    return value(e.vec2([&](const Vec& X, const Vec& Y) { return eq_7_27_residual(e, X, Y, -1.0); }));
  });
  add("eq_7_38", 1e-6, G_, [](const Env& e) {
    const double lam = std::sqrt(std::max(0.0, -(e.kappa + e.al * e.al)));
    Worst w;
    for (int i = 0; i < e.F.n; ++i) {
      w(e.G.norm(e.h * e.F.e(i) - e.F.e(i) * lam));
      w(e.G.norm(e.h * e.F.phi_e(i) + e.F.phi_e(i) * lam));
    }
    w(e.G.norm(e.h * e.xi));
    return value(w.v);
  });
  add("eq_7_38_printed", 1e-6, D_, [](const Env& e) {
    const double lam = std::sqrt(std::max(0.0, -(e.kappa + e.al * e.al)));
    Worst w;
    for (int i = 0; i < e.F.n; ++i) w(e.G.norm(e.h * e.F.phi_e(i) + e.F.e(i) * lam));
    return value(w.v);
  });
  add("eq_7_47", 1e-6, G_, [](const Env& e) {
    for (double li : e.F.lambdas)
      if (std::abs(li - e.lam) > kHypothesisTol) return skip("spectrum of h on D is not +-lambda");
    return value(e.op(e.h2 - (e.I - SmallMatrix::outer(e.xi, e.eta)) * (e.lam * e.lam)));
  });
  add("kmn_eigenpair_constancy", 1e-3, G_, [](const Env& e) {
    if (e.G.dim == 3) return skip("dimension > 3 only");
    Worst w;
    for (const Vec& X : e.D) {
      w(std::abs(e.d(e.c.grad.kappa, X)));
      w(std::abs(e.d(e.c.grad.mu, X)));
      w(std::abs(e.d(e.c.grad.nu, X)));
    }
    return value(w.v);
  });
  add("r_eta_kappa", 1e-3, G_, [](const Env& e) { return value(r_eta_residual(e.c.grad.kappa, e.eta)); });
  add("r_eta_mu", 1e-3, G_, [](const Env& e) {
    if (!e.c.grad.mu_nu_valid) return skip("mu indeterminate");
    return value(r_eta_residual(e.c.grad.mu, e.eta));
  });
  add("r_eta_nu", 1e-3, G_, [](const Env& e) {
    if (!e.c.grad.mu_nu_valid) return skip("nu indeterminate");
    return value(r_eta_residual(e.c.grad.nu, e.eta));
  });
  add("r_eta_lambda", 1e-3, G_, [](const Env& e) { return value(r_eta_residual(e.c.grad.lambda, e.eta)); });
  add("reference_kmn", 1e-6, G_, [](const Env& e) {
    const auto& ref = e.c.structure->reference;
    if (!ref.nullity) return skip("no closed form for this structure");
    const auto k = ref.nullity(e.G.point);
    double m = std::abs(e.kappa - k.kappa);
    if (e.c.fit.mu) m = std::max({m, std::abs(*e.c.fit.mu - k.mu), std::abs(*e.c.fit.nu - k.nu)});
    return value(m);
  });
  add("reference_h", 1e-6, G_, [](const Env& e) {
    const auto& ref = e.c.structure->reference;
    if (!ref.h) return skip("no closed form for this structure");
    return value((e.h - ref.h(e.G.point)).max_abs());
  });
  add("reference_h_printed", 1e-6, D_, [](const Env& e) {
    const auto& ref = e.c.structure->reference;
    if (!ref.h_printed) return skip("no printed form for this structure");
    return value((e.h - ref.h_printed(e.G.point)).max_abs());
  });

  // three-dimensional phi-basis
  for (std::size_t i = 0; i < kFrameRelationNames.size(); ++i) {
    const std::string name = std::string("frame_") + kFrameRelationNames[i];
    rows.push_back({{name, 1e-6, G_}, [i](const Env& e) {
                      if (e.G.dim != 3) return skip(kOnly3);
                      if (e.F.degenerate) return skip(kDegenerate);
                      return value(e.F.relations[i]);
                    }});
  }
  add("frame_b", 1e-5, G_, [](const Env& e) {
    if (e.G.dim != 3) return skip(kOnly3);
    if (e.F.degenerate) return skip(kDegenerate);
    return value(e.F.b_formula);
  });
  add("frame_c", 1e-5, G_, [](const Env& e) {
    if (e.G.dim != 3) return skip(kOnly3);
    if (e.F.degenerate) return skip(kDegenerate);
    return value(e.F.c_formula);
  });
  add("sigma_zero", 1e-6, D_, [](const Env& e) {
    if (e.G.dim != 3) return skip(kOnly3);
    return value(std::max(std::abs(e.F.sigma_e), std::abs(e.F.sigma_phie)));
  });
  add("eq_7_52b", 1e-6, G_, [](const Env& e) {
    if (e.G.dim != 3) return skip(kOnly3);
    return value(e.vec3([&](const Vec& X, const Vec& Y, const Vec& Z) {
      const Vec rhs = Y * -e.S(X, Z) + X * e.S(Y, Z) - e.Q * Y * e.g(X, Z) + e.Q * X * e.g(Y, Z) +
                      (Y * e.g(X, Z) - X * e.g(Y, Z)) * (e.r / 2.0);
      return e.G.curvature(X, Y, Z) - rhs;
    }));
  });
  add("eq_7_53", 1e-6, G_, [](const Env& e) {
    if (e.G.dim != 3) return skip(kOnly3);
    const Vec& E = e.F.e();
    const Vec& PE = e.F.phi_e();
    return value(e.G.norm(e.G.curvature(E, PE, e.xi) - (PE * -e.F.sigma_e + E * e.F.sigma_phie)));
  });
  add("eq_7_52", 1e-5, G_, [](const Env& e) {
    if (e.G.dim != 3) return skip(kOnly3);
    if (e.F.degenerate) return skip(kDegenerate);
    const Vec& E = e.F.e();
    const Vec& PE = e.F.phi_e();
    const Vec rhs = E * (2.0 * e.lam * *e.F.c - e.d(e.c.grad.lambda, E)) +
                    PE * (-2.0 * e.lam * *e.F.b + e.d(e.c.grad.lambda, PE));
    return value(e.G.norm(e.G.curvature(E, PE, e.xi) - rhs));
  });
  add("eq_7_54", 1e-6, G_, [](const Env& e) {
    if (e.G.dim != 3) return skip(kOnly3);
    if (e.F.degenerate) return skip(kDegenerate);
    const Vec& E = e.F.e();
    const Vec& PE = e.F.phi_e();
    const double xl = e.d(e.c.grad.lambda, e.xi);
    return value(e.vec1([&](const Vec& X) {
      const Vec sX = E * e.g(X, E) - PE * e.g(X, PE);
      return e.nxh * X - (e.hphi * X * (2.0 * *e.F.a) + sX * xl);
    }));
  });
  add("eq_7_55", 1e-6, G_, [](const Env& e) {
    if (e.G.dim != 3) return skip(kOnly3);
    return value(e.sca3([&](const Vec& X, const Vec& Y, const Vec& Z) {
      return e.G.nabla_Phi_at(X, Z, Y) + e.et(Z) * e.G.nabla_Phi_at(X, Y, e.xi) -
             e.et(Y) * e.G.nabla_Phi_at(X, Z, e.xi);
    }));
  });
  add("eq_7_56", 1e-6, G_, [](const Env& e) {
    if (e.G.dim != 3) return skip(kOnly3);
    return value(e.op(e.h2 - e.phi2 * (e.al * e.al) - e.phi2 * (e.trl / 2.0)));
  });
  add("eq_7_57", 1e-6, G_, [](const Env& e) {
    if (e.G.dim != 3) return skip(kOnly3);
    return value(e.vec1([&](const Vec& X) {
      const double eX = e.et(X);
      const Vec rhs = e.phi2 * X * -(e.trl / 2.0) + e.phih * X * (2.0 * e.al) + e.phi * (e.nxh * X) - X * e.trl -
                      e.xi * e.S(e.phi2 * X, e.xi) + e.xi * (eX * e.trl) + e.Qxi * eX - e.phi2 * X * (e.r / 2.0);
      return e.Q * X - rhs;
    }));
  });
  add("eq_7_58", 1e-6, G_, [](const Env& e) {
    if (e.G.dim != 3) return skip(kOnly3);
    const Vec& E = e.F.e();
    const Vec& PE = e.F.phi_e();
    return value(e.vec1([&](const Vec& X) {
      const double eX = e.et(X);
      const Vec rhs = X * e.a_tilde() + e.xi * (e.b_tilde() * eX) + e.phih * X * (2.0 * e.al) + e.phi * (e.nxh * X) -
                      e.xi * e.sigma(e.phi2 * X) + E * (e.F.sigma_e * eX) + PE * (e.F.sigma_phie * eX);
      return e.Q * X - rhs;
    }));
  });
  add("eq_7_70", 1e-6, G_, [](const Env& e) {
    if (e.G.dim != 3) return skip(kOnly3);
    return value(e.vec2([&](const Vec& X, const Vec& Y) {
      const double eX = e.et(X), eY = e.et(Y);
      const Vec rhs = Y * -e.S(X, e.xi) + X * e.S(Y, e.xi) + e.Q * X * eY - e.Q * Y * eX -
                      (X * eY - Y * eX) * (e.r / 2.0);
      return e.G.curvature(X, Y, e.xi) - rhs;
    }));
  });

  // sigma = 0 consequences
  auto sigma_gate = [](const Env& e) -> std::optional<IdentityEval> {
    if (e.G.dim != 3) return skip(kOnly3);
    if (!e.sigma_zero()) return skip(kSigma);
    return std::nullopt;
  };
  add("eq_7_59", 1e-6, G_, [sigma_gate](const Env& e) {
    if (auto s = sigma_gate(e)) return *s;
    if (e.F.degenerate) return skip(kDegenerate);
    const double c = 2.0 * e.al + e.d(e.c.grad.lambda, e.xi) / e.lam;
    return value(e.op(e.Q - (e.I * e.a_tilde() + SmallMatrix::outer(e.xi, e.eta) * e.b_tilde() + e.h * (2.0 * *e.F.a) +
                             e.phih * c)));
  });
  add("eq_7_60", 1e-6, G_, [sigma_gate](const Env& e) {
    if (auto s = sigma_gate(e)) return *s;
    return value(e.G.norm(e.Qxi - e.xi * e.trl));
  });
  add("eq_7_62", 1e-6, G_, [sigma_gate](const Env& e) {
    if (auto s = sigma_gate(e)) return *s;
    return value(e.sca1([&](const Vec& Y) { return e.S(Y, e.xi) - e.trl * e.et(Y); }));
  });
  add("eq_7_64", 1e-6, G_, [sigma_gate](const Env& e) {
    if (auto s = sigma_gate(e)) return *s;
    const double a = e.al;
    return value(e.vec1([&](const Vec& X) {
      const double eX = e.et(X);
      const Vec lhs = e.phi2 * X * (a * a) + e.phih * X * (2.0 * a) - e.h2 * X + e.phi * (e.nxh * X);
      const Vec rhs = e.Q * X - e.xi * (2.0 * e.trl * eX) + X * e.trl - (X - e.xi * eX) * (e.r / 2.0);
      return lhs - rhs;
    }));
  });
  add("eq_7_65", 1e-6, G_, [sigma_gate](const Env& e) {
    if (auto s = sigma_gate(e)) return *s;
    const double a = e.al;
    return value(e.vec1([&](const Vec& X) {
      const Vec lhs = e.phi * X * -(a * a) - e.phi * (e.h2 * X) - e.h * X * (2.0 * a) - e.nxh * X;
      const Vec rhs = e.phi * (e.Q * X) + e.phi * X * e.trl - e.phi * X * (e.r / 2.0);
      return lhs - rhs;
    }));
  });
  add("eq_7_66", 1e-6, G_, [sigma_gate](const Env& e) {
    if (auto s = sigma_gate(e)) return *s;
    const double a = e.al;
    return value(e.vec1([&](const Vec& X) {
      const Vec lhs = e.phi * X * -(a * a) + e.h * X * (2.0 * a) - e.h2 * (e.phi * X) + e.nxh * X;
      const Vec rhs = e.Q * (e.phi * X) + e.phi * X * e.trl - e.phi * X * (e.r / 2.0);
      return lhs - rhs;
    }));
  });
  add("eq_7_63", 1e-6, G_, [](const Env& e) {
    const auto f = fit_f1_f2(e);
    if (!f) return skip("vacuous: h = 0");
    return value(e.op(e.Q * e.phi - e.phi * e.Q - e.hphi * f->first - e.h * f->second));
  });
  add("eq_7_67", 1e-6, G_, [sigma_gate](const Env& e) {
    if (auto s = sigma_gate(e)) return *s;
    const auto f = fit_f1_f2(e);
    if (!f) return skip("vacuous: h = 0");
    return value(e.op(e.nxh - (e.hphi * (0.5 * f->first) + e.h * (0.5 * (f->second - 4.0 * e.al)))));
  });
  add("eq_7_68", 1e-6, G_, [sigma_gate](const Env& e) {
    if (auto s = sigma_gate(e)) return *s;
    const auto f = fit_f1_f2(e);
    if (!f) return skip("vacuous: h = 0");
    return value(e.op(e.Q - (e.I * e.a_tilde() + SmallMatrix::outer(e.xi, e.eta) * e.b_tilde() + e.phih * (2.0 * e.al) +
                             e.h * (0.5 * f->first) + e.phih * (0.5 * (f->second - 4.0 * e.al)))));
  });
  add("kmn_sigma_zero", 1e-6, G_, [sigma_gate](const Env& e) {
    if (auto s = sigma_gate(e)) return *s;
    const auto f = fit_f1_f2(e);
    if (!f) return skip("vacuous: h = 0");
    return value(std::max({std::abs(e.trl + e.a_tilde() - e.r / 2.0 - e.kappa), std::abs(f->first / 2.0 - e.mu),
                           std::abs(f->second / 2.0 - e.nu)}));
  });
  add("kmn_frame_closure", 1e-4, G_, [sigma_gate](const Env& e) {
    if (auto s = sigma_gate(e)) return *s;
    if (e.F.degenerate) return skip(kDegenerate);
    const double nu3 = 2.0 * e.al + e.d(e.c.grad.lambda, e.xi) / e.lam;
    return value(std::max({std::abs(e.trl / 2.0 - e.kappa), std::abs(2.0 * *e.F.a - e.mu), std::abs(nu3 - e.nu)}));
  });
  return rows;
}

const std::vector<Row>& rows() {
  static const std::vector<Row> r = make_rows();
  return r;
}

}  // namespace

const std::vector<IdentityInfo>& identity_catalog() {
  static const std::vector<IdentityInfo> cat = [] {
    std::vector<IdentityInfo> c;
    for (const Row& r : rows()) c.push_back(r.info);
    return c;
  }();
  return cat;
}

std::optional<std::size_t> identity_index(const std::string& name) {
  const auto& cat = identity_catalog();
  for (std::size_t i = 0; i < cat.size(); ++i)
    if (cat[i].name == name) return i;
  return std::nullopt;
}

PointContext analyze_point(const AlmostContactMetricStructure& s, const Point& p, double alpha, double fd_step) {
  PointContext c;
  c.structure = &s;
  c.alpha = alpha;
  c.validation = validate_structure(s, p);
  c.forms = structure_forms(s, p);
  c.alpha_point = point_alpha(c.forms);
  c.G = compute_geometry(s, p, GeometryLevel::full);
  c.frame = adapted_frame(c.G);
  c.fit = fit_kmn(c.G, c.frame);
  c.grad = fit_gradient(s, p, fd_step);
  if (s.dim == 3) {
    if (!c.frame.degenerate) {
      complete_phi_basis(c.frame, c.G, frame_derivatives(s, c.frame, fd_step), alpha);
    } else {
      const Vec Qxi = c.G.Q * c.G.xi;
      c.frame.sigma_e = c.G.inner(Qxi, c.frame.e());
      c.frame.sigma_phie = c.G.inner(Qxi, c.frame.phi_e());
    }
  }
  return c;
}

std::vector<IdentityEval> evaluate_identities(const PointContext& ctx) {
  const Env env(ctx);
  std::vector<IdentityEval> out;
  out.reserve(rows().size());
  for (const Row& r : rows()) {
    try {
      out.push_back(r.eval(env));
    } catch (const std::exception&) {
      out.push_back({kNaN, {}});
    }
  }
  return out;
}

const char* to_string(IdentityStatus s) {
  switch (s) {
    case IdentityStatus::pass: return "pass";
    case IdentityStatus::fail: return "fail";
    case IdentityStatus::skipped: return "skipped";
    case IdentityStatus::diagnostic: return "diagnostic";
  }
  return "fail";
}

std::vector<IdentityResult> aggregate_identities(const std::vector<Point>& points,
                                                 const std::vector<std::vector<IdentityEval>>& evals,
                                                 const ToleranceMap& tolerances) {
  const auto& cat = identity_catalog();
  std::vector<IdentityResult> out;
  out.reserve(cat.size());
  for (std::size_t k = 0; k < cat.size(); ++k) {
    IdentityResult r;
    r.name = cat[k].name;
    const auto t = tolerances.find(r.name);
    r.tolerance = t != tolerances.end() ? t->second : cat[k].tolerance;
    bool skipped = false;
    bool any = false;
    for (std::size_t p = 0; p < points.size(); ++p) {
      const IdentityEval& e = evals[p][k];
      if (!e.skip.empty()) {
        if (!skipped) r.note = e.skip;
        skipped = true;
        continue;
      }
      if (std::isnan(e.residual)) {
        if (!std::isnan(r.max_residual)) {
          r.max_residual = kNaN;
          r.worst_point = points[p];
        }
        continue;
      }
      if (std::isnan(r.max_residual)) continue;
      if (!any || e.residual > r.max_residual) {
        r.max_residual = e.residual;
        r.worst_point = points[p];
      }
      any = true;
    }
    r.pass = !std::isnan(r.max_residual) && r.max_residual <= r.tolerance;
    if (cat[k].role == IdentityRole::diagnostic)
      r.status = IdentityStatus::diagnostic;
    else if (skipped)
      r.status = IdentityStatus::skipped;
    else
      r.status = r.pass ? IdentityStatus::pass : IdentityStatus::fail;
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<IdentityResult> identity_suite(const AlmostContactMetricStructure& s, const std::vector<Point>& points,
                                           double alpha, const ToleranceMap& tolerances) {
  std::vector<std::vector<IdentityEval>> evals;
  evals.reserve(points.size());
  for (const Point& p : points) {
    try {
      evals.push_back(evaluate_identities(analyze_point(s, p, alpha)));
    } catch (const std::exception&) {
      evals.emplace_back(identity_catalog().size(), IdentityEval{kNaN, {}});
    }
  }
  return aggregate_identities(points, evals, tolerances);
}

}  // namespace acm
