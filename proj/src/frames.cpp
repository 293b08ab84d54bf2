#include "acm/frames.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace acm {

FrameData adapted_frame(const Point& p, const SmallMatrix& g, const SmallMatrix& phi, const SmallMatrix& h,
                        const Vec& xi) {
  const int dim = g.dim();
  const int n = (dim - 1) / 2;
  const EigenPairs eig = g_orthonormal_eig(h, g);

  FrameData F;
  F.point = p;
  F.n = n;
  std::vector<Vec> es, pes;
  std::vector<Vec> taken{xi * (1.0 / g_norm(g, xi))};
  for (const Vec& v : eig.vectors) {
    if (static_cast<int>(es.size()) == n) break;
    Vec w = v;
    for (const Vec& u : taken) w -= u * inner(g, v, u);
    const double nw = g_norm(g, w);
    if (nw < 1e-6) continue;
    w = fix_sign(w * (1.0 / nw));
    const Vec pw = phi * w;
    es.push_back(w);
    pes.push_back(pw);
    taken.push_back(w);
    taken.push_back(pw * (1.0 / g_norm(g, pw)));
    F.lambdas.push_back(std::max(0.0, inner(g, h * w, w)));
  }
  if (static_cast<int>(es.size()) != n) throw std::runtime_error("could not complete a phi-basis");

  F.vectors = es;
  F.vectors.insert(F.vectors.end(), pes.begin(), pes.end());
  F.vectors.push_back(xi);
  F.lambda = F.lambdas.front();
  F.degenerate = *std::min_element(F.lambdas.begin(), F.lambdas.end()) < kLambdaThreshold;
  return F;
}

FrameData adapted_frame(const PointGeometry& G) { return adapted_frame(G.point, G.g, G.phi, G.h, G.xi); }

FrameData frame_at(const AlmostContactMetricStructure& s, const Point& p) {
  const StructureValues v = evaluate_values(s, p);
  return adapted_frame(p, v.g, v.phi, tensor_h(s, p), v.xi);
}

Vec FrameDerivatives::along(const Vec& X, int v) const {
  Vec out(X.dim());
  for (int k = 0; k < X.dim(); ++k) out += d_vectors[static_cast<std::size_t>(k)][static_cast<std::size_t>(v)] * X[k];
  return out;
}

double FrameDerivatives::lambda_along(const Vec& X) const {
  double s = 0.0;
  for (int k = 0; k < X.dim(); ++k) s += X[k] * d_lambda[static_cast<std::size_t>(k)];
  return s;
}

namespace {

FrameData aligned_neighbour(const AlmostContactMetricStructure& s, const FrameData& center, const SmallMatrix& g,
                            const Point& q) {
  if (s.in_domain && !s.in_domain(q)) throw std::domain_error("finite-difference stencil leaves the domain");
  FrameData F = frame_at(s, q);
  for (int i = 0; i < F.n; ++i) {
    if (inner(g, F.e(i), center.e(i)) < 0.0) {
      F.vectors[static_cast<std::size_t>(i)] = -F.e(i);
      F.vectors[static_cast<std::size_t>(F.n + i)] = -F.phi_e(i);
    }
  }
  return F;
}

}  // namespace

FrameDerivatives frame_derivatives(const AlmostContactMetricStructure& s, const FrameData& center, double step) {
  const int dim = center.point.dim();
  const SmallMatrix g = evaluate_values(s, center.point).g;
  FrameDerivatives D;
  D.step = step;
  for (int k = 0; k < dim; ++k) {
    const FrameData plus = aligned_neighbour(s, center, g, center.point.displaced(k, step));
    const FrameData minus = aligned_neighbour(s, center, g, center.point.displaced(k, -step));
    std::vector<Vec> dv;
    for (std::size_t v = 0; v < center.vectors.size(); ++v)
      dv.push_back((plus.vectors[v] - minus.vectors[v]) * (0.5 / step));
    D.d_vectors.push_back(std::move(dv));
    D.d_lambda.push_back((plus.lambda - minus.lambda) / (2.0 * step));
  }
  return D;
}

void complete_phi_basis(FrameData& F, const PointGeometry& G, const FrameDerivatives& D, double alpha) {
  if (G.dim != 3) throw std::invalid_argument("phi-basis coefficients are defined in dimension 3 only");
  const Vec& e = F.e();
  const Vec& pe = F.phi_e();
  const Vec& xi = F.xi();
  const double lam = F.lambda;

  // nabla_X of frame vector v: FD transport plus the connection term.
  auto nabla = [&](const Vec& X, int v) { return D.along(X, v) + G.connection(X, F.vectors[static_cast<std::size_t>(v)]); };
  const Vec xi_e = nabla(xi, 0);
  const Vec xi_pe = nabla(xi, 1);
  const Vec e_e = nabla(e, 0);
  const Vec e_pe = nabla(e, 1);
  const Vec pe_e = nabla(pe, 0);
  const Vec pe_pe = nabla(pe, 1);
  const Vec e_xi = G.nabla_xi * e;
  const Vec pe_xi = G.nabla_xi * pe;

  const Vec Qxi = G.Q * xi;
  F.sigma_e = G.inner(Qxi, e);
  F.sigma_phie = G.inner(Qxi, pe);

  const double a = G.inner(e, xi_pe);
  const double b = G.inner(e_e, pe);
  const double c = G.inner(pe_pe, e);

  F.relations = {
      G.norm(xi_e + pe * a),
      G.norm(xi_pe - e * a),
      G.norm(e_xi - (e * alpha - pe * lam)),
      G.norm(pe_xi - (pe * alpha - e * lam)),
      G.norm(e_e - (pe * b - xi * alpha)),
      G.norm(pe_pe - (e * c - xi * alpha)),
      G.norm(e_pe - (e * -b + xi * lam)),
      G.norm(pe_e - (pe * -c + xi * lam)),
  };
  F.b_formula = std::abs(2.0 * lam * b - D.lambda_along(pe) - F.sigma_e);
  F.c_formula = std::abs(2.0 * lam * c - D.lambda_along(e) - F.sigma_phie);
  if (F.degenerate) {
    F.a.reset();
    F.b.reset();
    F.c.reset();
  } else {
    F.a = a;
    F.b = b;
    F.c = c;
  }
}

FrameData build_phi_basis(const AlmostContactMetricStructure& s, const Point& p, double alpha, double step) {
  if (s.dim != 3) throw std::invalid_argument("build_phi_basis requires a three-dimensional structure");
  const PointGeometry G = compute_geometry(s, p, GeometryLevel::curvature);
  FrameData F = adapted_frame(G);
  if (!F.degenerate) {
    const FrameDerivatives D = frame_derivatives(s, F, step);
    complete_phi_basis(F, G, D, alpha);
  } else {
    F.sigma_e = G.inner(G.Q * F.xi(), F.e());
    F.sigma_phie = G.inner(G.Q * F.xi(), F.phi_e());
  }
  return F;
}

}  // namespace acm
