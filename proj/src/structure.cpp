#include "acm/structure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace acm {

JetMatrix::JetMatrix(int dim) : dim_(dim), a_(static_cast<std::size_t>(dim * dim), Jet(dim)) {}

SmallMatrix JetMatrix::values() const {
  SmallMatrix m(dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) m(i, j) = (*this)(i, j).value();
  return m;
}

Vec values(const JetVector& v) {
  Vec out(static_cast<int>(v.size()));
  for (int i = 0; i < out.dim(); ++i) out[i] = v[static_cast<std::size_t>(i)].value();
  return out;
}

std::vector<Jet> coordinate_jets(const Point& p) {
  std::vector<Jet> x;
  x.reserve(static_cast<std::size_t>(p.dim()));
  for (int i = 0; i < p.dim(); ++i) x.push_back(Jet::variable(i, p));
  return x;
}

StructureValues evaluate_values(const AlmostContactMetricStructure& s, const Point& p) {
  if (p.dim() != s.dim) throw std::invalid_argument("point dimension does not match structure");
  const auto x = coordinate_jets(p);
  return {s.phi(x).values(), s.g(x).values(), values(s.xi(x)), values(s.eta(x))};
}

double ValidationResidual::max() const {
  return std::max({phi_squared, eta_xi, phi_xi, eta_phi, compatibility, rank_residual});
}

ValidationResidual validate_structure(const AlmostContactMetricStructure& s, const Point& p) {
  const StructureValues v = evaluate_values(s, p);
  cholesky(v.g);  // positive definiteness

  const int n = s.dim;
  ValidationResidual r;
  const SmallMatrix I = SmallMatrix::identity(n);
  r.phi_squared = (v.phi * v.phi + I - SmallMatrix::outer(v.xi, v.eta)).max_abs();
  r.eta_xi = std::abs(dot(v.eta, v.xi) - 1.0);
  r.phi_xi = (v.phi * v.xi).max_abs();
  r.eta_phi = (v.phi.transpose() * v.eta).max_abs();
  r.compatibility = (v.phi.transpose() * v.g * v.phi - v.g + SmallMatrix::outer(v.eta, v.eta)).max_abs();

  r.singular_values = g_singular_values(v.phi, v.g);
  r.phi_rank = static_cast<int>(std::count_if(r.singular_values.begin(), r.singular_values.end(),
                                              [](double sv) { return sv > 1e-8; }));
  r.rank_residual = r.phi_rank == 2 * s.n() ? 0.0 : 1.0;
  return r;
}

SmallMatrix fundamental_form(const AlmostContactMetricStructure& s, const Point& p) {
  const StructureValues v = evaluate_values(s, p);
  // Phi(d_i, d_j) = g_kj phi^k_i
  return v.phi.transpose() * v.g;
}

namespace {

double param(const ParamMap& params, const std::string& key) { return params.at(key); }

int half_dimension(const ParamMap& params) {
  const double n = param(params, "n");
  if (n != 1.0 && n != 2.0) throw std::invalid_argument("parameter n must be 1 or 2");
  return static_cast<int>(n);
}

bool box_avoids_zero_z(const Box& box) {
  if (box.dim() != 3) return false;
  const auto [lo, hi] = box.bounds[2];
  return lo > 0.0 || hi < 0.0;
}

Box cube(int dim, double lo, double hi) {
  Box b;
  b.bounds.assign(static_cast<std::size_t>(dim), {lo, hi});
  return b;
}

// phi(d/dx_i) = d/dy_i, phi(d/dy_i) = -d/dx_i on coordinates (x_1..x_n, y_1..y_n, z).
JetMatrix standard_phi(int n) {
  JetMatrix phi(2 * n + 1);
  for (int i = 0; i < n; ++i) {
    phi(n + i, i) = Jet(2 * n + 1, 1.0);
    phi(i, n + i) = Jet(2 * n + 1, -1.0);
  }
  return phi;
}

JetVector unit_last(int dim) {
  JetVector v(static_cast<std::size_t>(dim), Jet(dim));
  v.back() = Jet(dim, 1.0);
  return v;
}

AlmostContactMetricStructure make_example(const ParamMap& params) {
  const double alpha = param(params, "alpha");
  AlmostContactMetricStructure s;
  s.name = "example_paper_s6";
  s.dim = 3;
  s.alpha_hint = alpha;

  struct Aux {
    Jet w, d, k;
  };
  // w = e^{-2 alpha z}, d = alpha x - y (w + z), k = x (z - w) + alpha y
  auto aux = [alpha](CoordJets x) {
    const Jet w = exp(x[2] * (-2.0 * alpha));
    Jet d = alpha * x[0] - x[1] * (w + x[2]);
    Jet k = x[0] * (x[2] - w) + alpha * x[1];
    return Aux{w, std::move(d), std::move(k)};
  };

  s.g = MetricField([aux](CoordJets x) {
    const Aux a = aux(x);
    JetMatrix g(3);
    g(0, 0) = Jet(3, 1.0);
    g(1, 1) = Jet(3, 1.0);
    g(0, 2) = g(2, 0) = -a.d;
    g(1, 2) = g(2, 1) = -a.k;
    g(2, 2) = 1.0 + a.d * a.d + a.k * a.k;
    return g;
  });
  s.phi = EndoField([aux](CoordJets x) {
    const Aux a = aux(x);
    JetMatrix phi(3);
    phi(0, 1) = Jet(3, -1.0);
    phi(0, 2) = a.k;
    phi(1, 0) = Jet(3, 1.0);
    phi(1, 2) = -a.d;
    return phi;
  });
  s.xi = VectorField([aux](CoordJets x) {
    const Aux a = aux(x);
    return JetVector{a.d, a.k, Jet(3, 1.0)};
  });
  s.eta = OneFormField([](CoordJets) { return unit_last(3); });
  s.box_in_domain = box_avoids_zero_z;
  s.in_domain = [](const Point& p) { return p[2] != 0.0; };

  auto h_with = [alpha](const Point& p, double rate) {
    const double x = p[0], y = p[1], z = p[2];
    const double w = std::exp(-2.0 * alpha * z);
    const double d = alpha * x - y * (w + z);
    const double k = x * (z - w) + alpha * y;
    const double e = std::exp(-rate * z);
    return SmallMatrix{{e, 0.0, -d * e}, {0.0, -e, k * e}, {0.0, 0.0, 0.0}};
  };
  s.reference.nullity = [alpha](const Point& p) {
    const double z = p[2];
    return ReferenceForms::Nullity{-(std::exp(-4.0 * alpha * z) + alpha * alpha), 2.0 * z, 0.0};
  };
  s.reference.h = [h_with, alpha](const Point& p) { return h_with(p, 2.0 * alpha); };
  s.reference.h_printed = [h_with](const Point& p) { return h_with(p, 2.0); };
  return s;
}

AlmostContactMetricStructure make_flat(const ParamMap& params) {
  const int n = half_dimension(params);
  const int dim = 2 * n + 1;
  AlmostContactMetricStructure s;
  s.name = "flat_cosymplectic";
  s.dim = dim;
  s.alpha_hint = 0.0;
  s.g = MetricField([dim](CoordJets) {
    JetMatrix g(dim);
    for (int i = 0; i < dim; ++i) g(i, i) = Jet(dim, 1.0);
    return g;
  });
  s.phi = EndoField([n](CoordJets) { return standard_phi(n); });
  s.xi = VectorField([dim](CoordJets) { return unit_last(dim); });
  s.eta = OneFormField([dim](CoordJets) { return unit_last(dim); });
  s.box_in_domain = [dim](const Box& b) { return b.dim() == dim; };
  s.in_domain = [](const Point&) { return true; };
  s.reference.nullity = [](const Point&) { return ReferenceForms::Nullity{0.0, 0.0, 0.0}; };
  s.reference.h = [dim](const Point&) { return SmallMatrix(dim); };
  return s;
}

// g = dz^2 + e^{2 alpha z} sum_i (dx_i^2 + dy_i^2), xi = d/dz, eta = dz
AlmostContactMetricStructure make_warped(const ParamMap& params) {
  const double alpha = param(params, "alpha");
  const int n = half_dimension(params);
  const int dim = 2 * n + 1;
  AlmostContactMetricStructure s;
  s.name = "alpha_kenmotsu_warped";
  s.dim = dim;
  s.alpha_hint = alpha;
  s.g = MetricField([dim, alpha](CoordJets x) {
    const Jet warp = exp(x[dim - 1] * (2.0 * alpha));
    JetMatrix g(dim);
    for (int i = 0; i < dim - 1; ++i) g(i, i) = warp;
    g(dim - 1, dim - 1) = Jet(dim, 1.0);
    return g;
  });
  s.phi = EndoField([n](CoordJets) { return standard_phi(n); });
  s.xi = VectorField([dim](CoordJets) { return unit_last(dim); });
  s.eta = OneFormField([dim](CoordJets) { return unit_last(dim); });
  s.box_in_domain = [dim](const Box& b) { return b.dim() == dim; };
  s.in_domain = [](const Point&) { return true; };
  s.reference.nullity = [alpha](const Point&) { return ReferenceForms::Nullity{-alpha * alpha, 0.0, 0.0}; };
  s.reference.h = [dim](const Point&) { return SmallMatrix(dim); };
  return s;
}

}  // namespace

const std::vector<RegistryEntry>& registry() {
  static const std::vector<RegistryEntry> entries = {
      {"example_paper_s6",
       {{"alpha", 1.0}},
       "3-dimensional almost alpha-cosymplectic (kappa, mu, nu)-space on {z != 0} with "
       "kappa = -(e^{-4 alpha z} + alpha^2), mu = 2z, nu = 0",
       make_example,
       [](const ParamMap&) { return Box{{{-1.0, 1.0}, {-1.0, 1.0}, {0.2, 2.0}}}; }},
      {"flat_cosymplectic",
       {{"n", 1.0}},
       "flat cosymplectic product R^{2n} x R with the standard phi",
       make_flat,
       [](const ParamMap& p) { return cube(2 * half_dimension(p) + 1, -1.0, 1.0); }},
      {"alpha_kenmotsu_warped",
       {{"alpha", 1.0}, {"n", 1.0}},
       "alpha-Kenmotsu warped product dz^2 + e^{2 alpha z} (dx^2 + dy^2)",
       make_warped,
       [](const ParamMap& p) { return cube(2 * half_dimension(p) + 1, -1.0, 1.0); }},
  };
  return entries;
}

const RegistryEntry& registry_entry(const std::string& name) {
  for (const auto& e : registry())
    if (e.name == name) return e;
  throw std::invalid_argument("unknown structure: " + name);
}

ParamMap resolve_params(const RegistryEntry& entry, const ParamMap& params) {
  ParamMap out;
  for (const auto& [key, def] : entry.params) out[key] = def;
  for (const auto& [key, value] : params) {
    if (!out.contains(key)) throw std::invalid_argument("unknown parameter '" + key + "' for " + entry.name);
    if (!std::isfinite(value)) throw std::invalid_argument("parameter '" + key + "' must be finite");
    out[key] = value;
  }
  return out;
}

AlmostContactMetricStructure registry_get(const std::string& name, const ParamMap& params) {
  const RegistryEntry& e = registry_entry(name);
  return e.make(resolve_params(e, params));
}

AlmostContactMetricStructure perturb_phi(AlmostContactMetricStructure s, int row, int col, double delta) {
  s.name += "_perturbed";
  s.phi = EndoField([phi = s.phi, row, col, delta](CoordJets x) {
    JetMatrix m = phi(x);
    m(row, col) += delta;
    return m;
  });
  s.reference = {};
  return s;
}

}  // namespace acm
