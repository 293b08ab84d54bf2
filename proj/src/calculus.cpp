#include "acm/calculus.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace acm {

Tensor::Tensor(int dim, int rank) : dim_(dim), rank_(rank) {
  std::size_t size = 1;
  for (int r = 0; r < rank; ++r) size *= static_cast<std::size_t>(dim);
  data_.assign(size, 0.0);
}

double Tensor::max_abs() const noexcept {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

Tensor& Tensor::operator-=(const Tensor& b) {
  if (b.dim_ != dim_ || b.rank_ != rank_) throw std::invalid_argument("tensor shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= b.data_[i];
  return *this;
}

JetMatrix jet_product(const JetMatrix& a, const JetMatrix& b) {
  const int n = a.dim();
  if (b.dim() != n) throw std::invalid_argument("jet matrix dimension mismatch");
  const int jd = n > 0 ? a(0, 0).dim() : 1;
  JetMatrix out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Jet sum(jd);
      for (int k = 0; k < n; ++k) sum += a(i, k) * b(k, j);
      out(i, j) = sum;
    }
  return out;
}

JetMatrix jet_inverse(const JetMatrix& m) {
  const int n = m.dim();
  invert(m.values());  // reject singular input with the same criterion as the value path
  const int jd = m(0, 0).dim();
  JetMatrix a = m;
  JetMatrix inv(n);
  for (int i = 0; i < n; ++i) inv(i, i) = Jet(jd, 1.0);
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a(r, col).value()) > std::abs(a(piv, col).value())) piv = r;
    if (piv != col)
      for (int j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    const Jet p = a(col, col);
    for (int j = 0; j < n; ++j) {
      a(col, j) /= p;
      inv(col, j) /= p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const Jet f = a(r, col);
      for (int j = 0; j < n; ++j) {
        a(r, j) -= f * a(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

namespace {

struct FieldJets {
  JetMatrix g, ginv, phi;
  JetVector xi, eta;
};

FieldJets field_jets(const AlmostContactMetricStructure& s, const Point& p) {
  if (p.dim() != s.dim) throw std::invalid_argument("point dimension does not match structure");
  const auto x = coordinate_jets(p);
  FieldJets F{s.g(x), {}, s.phi(x), s.xi(x), s.eta(x)};
  const auto n = static_cast<std::size_t>(s.dim);
  if (F.g.dim() != s.dim || F.phi.dim() != s.dim || F.xi.size() != n || F.eta.size() != n)
    throw std::logic_error("structure field has the wrong number of components");
  cholesky(F.g.values());
  F.ginv = jet_inverse(F.g);
  return F;
}

class GammaJets {
 public:
  explicit GammaJets(int n) : n_(n), a_(static_cast<std::size_t>(n * n * n), Jet(n)) {}
  Jet& operator()(int k, int i, int j) { return a_[static_cast<std::size_t>((k * n_ + i) * n_ + j)]; }
  const Jet& operator()(int k, int i, int j) const { return a_[static_cast<std::size_t>((k * n_ + i) * n_ + j)]; }

 private:
  int n_;
  std::vector<Jet> a_;
};

GammaJets gamma_jets(const FieldJets& F, int n) {
  std::vector<JetMatrix> dg(static_cast<std::size_t>(n), JetMatrix(n));
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) dg[l](i, j) = F.g(i, j).derivative(l);
  GammaJets G(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      for (int l = 0; l < n; ++l) {
        const Jet lower = (dg[i](j, l) + dg[j](i, l) - dg[l](i, j)) * 0.5;
        for (int k = 0; k < n; ++k) G(k, i, j) += F.ginv(k, l) * lower;
      }
      for (int k = 0; k < n; ++k) G(k, j, i) = G(k, i, j);
    }
  return G;
}

std::vector<JetMatrix> partials(const JetMatrix& T, int n) {
  std::vector<JetMatrix> d(static_cast<std::size_t>(n), JetMatrix(n));
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) d[k](i, j) = T(i, j).derivative(k);
  return d;
}

// h^i_j = 1/2 (xi^k d_k phi^i_j - phi^k_j d_k xi^i + phi^i_k d_j xi^k)
JetMatrix h_jets(const JetMatrix& phi, const JetVector& xi, int n) {
  const auto dphi = partials(phi, n);
  std::vector<JetVector> dxi(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i) dxi[k].push_back(xi[i].derivative(k));
  JetMatrix h(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Jet sum(n);
      for (int k = 0; k < n; ++k) sum += xi[k] * dphi[k](i, j) - phi(k, j) * dxi[k][i] + phi(i, k) * dxi[j][k];
      h(i, j) = sum * 0.5;
    }
  return h;
}

// (nabla_k T)^i_j = d_k T^i_j + Gamma^i_km T^m_j - Gamma^m_kj T^i_m
Tensor nabla_endo(const JetMatrix& T, const Tensor& gamma, int n) {
  Tensor out(n, 3);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double v = T(i, j).d(k);
        for (int m = 0; m < n; ++m) v += gamma(i, k, m) * T(m, j).value() - gamma(m, k, j) * T(i, m).value();
        out(k, i, j) = v;
      }
  return out;
}

Tensor nijenhuis_from(const JetMatrix& phi, const JetVector& eta, const JetVector& xi, int n) {
  const JetMatrix deta = exterior_derivative(eta);
  Tensor N(n, 3);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double v = deta(j, k).value() * xi[i].value();
        for (int m = 0; m < n; ++m) {
          v += phi(m, j).value() * phi(i, k).d(m) - phi(m, k).value() * phi(i, j).d(m);
          v += phi(i, m).value() * (phi(m, j).d(k) - phi(m, k).d(j));
        }
        N(i, j, k) = v;
      }
  return N;
}

// Phi_ij = g_kj phi^k_i
JetMatrix fundamental_form_jets(const FieldJets& F, int n) {
  JetMatrix Phi(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Jet sum(n);
      for (int k = 0; k < n; ++k) sum += F.g(k, j) * F.phi(k, i);
      Phi(i, j) = sum;
    }
  return Phi;
}

}  // namespace

Vec PointGeometry::curvature(const Vec& X, const Vec& Y, const Vec& Z) const {
  Vec out(dim);
  for (int l = 0; l < dim; ++l) {
    double v = 0.0;
    for (int i = 0; i < dim; ++i) {
      if (X[i] == 0.0) continue;
      for (int j = 0; j < dim; ++j) {
        if (Y[j] == 0.0) continue;
        for (int k = 0; k < dim; ++k) v += riemann(l, i, j, k) * X[i] * Y[j] * Z[k];
      }
    }
    out[l] = v;
  }
  return out;
}

Vec PointGeometry::nabla_curvature(const Vec& W, const Vec& X, const Vec& Y, const Vec& Z) const {
  if (level != GeometryLevel::full) throw std::logic_error("nabla R requires full geometry");
  Vec out(dim);
  for (int m = 0; m < dim; ++m) {
    if (W[m] == 0.0) continue;
    for (int l = 0; l < dim; ++l) {
      double v = 0.0;
      for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
          for (int k = 0; k < dim; ++k) v += nabla_riemann(m, l, i, j, k) * X[i] * Y[j] * Z[k];
      out[l] += W[m] * v;
    }
  }
  return out;
}

Vec PointGeometry::connection(const Vec& X, const Vec& Y) const {
  Vec out(dim);
  for (int k = 0; k < dim; ++k) {
    double v = 0.0;
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) v += gamma(k, i, j) * X[i] * Y[j];
    out[k] = v;
  }
  return out;
}

SmallMatrix PointGeometry::along(const Tensor& nabla_T, const Vec& X) {
  const int n = nabla_T.dim();
  SmallMatrix M(n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) M(i, j) += X[k] * nabla_T(k, i, j);
  return M;
}

double PointGeometry::nabla_Phi_at(const Vec& X, const Vec& Y, const Vec& Z) const {
  double v = 0.0;
  for (int k = 0; k < dim; ++k)
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) v += X[k] * Y[i] * Z[j] * nabla_Phi(k, i, j);
  return v;
}

PointGeometry compute_geometry(const AlmostContactMetricStructure& s, const Point& p, GeometryLevel level) {
  const int n = s.dim;
  const FieldJets F = field_jets(s, p);
  const GammaJets gam = gamma_jets(F, n);

  PointGeometry G;
  G.point = p;
  G.dim = n;
  G.n = s.n();
  G.level = level;
  G.g = F.g.values();
  G.ginv = F.ginv.values();
  G.phi = F.phi.values();
  G.xi = values(F.xi);
  G.eta = values(F.eta);

  G.gamma = Tensor(n, 3);
  G.d_gamma = Tensor(n, 4);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        G.gamma(k, i, j) = gam(k, i, j).value();
        for (int m = 0; m < n; ++m) G.d_gamma(m, k, i, j) = gam(k, i, j).d(m);
      }

  double compat = 0.0;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double v = F.g(i, j).d(k);
        for (int m = 0; m < n; ++m) v -= G.gamma(m, k, i) * G.g(m, j) + G.gamma(m, k, j) * G.g(i, m);
        compat = std::max(compat, std::abs(v));
      }
  G.metric_compatibility = compat;

  G.riemann = Tensor(n, 4);
  if (level == GeometryLevel::full) {
    // R as order-1 jets so that its first partials feed nabla R.
    std::vector<GammaJets> dgam(static_cast<std::size_t>(n), GammaJets(n));
    for (int m = 0; m < n; ++m)
      for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) dgam[m](k, i, j) = gam(k, i, j).derivative(m);
    std::vector<Jet> R(static_cast<std::size_t>(n * n * n * n), Jet(n));
    auto at = [n](int l, int i, int j, int k) { return static_cast<std::size_t>(((l * n + i) * n + j) * n + k); };
    for (int l = 0; l < n; ++l)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k) {
            Jet v = dgam[i](l, j, k) - dgam[j](l, i, k);
            for (int m = 0; m < n; ++m) v += gam(l, i, m) * gam(m, j, k) - gam(l, j, m) * gam(m, i, k);
            G.riemann(l, i, j, k) = v.value();
            R[at(l, i, j, k)] = std::move(v);
          }
    G.nabla_riemann = Tensor(n, 5);
    for (int m = 0; m < n; ++m)
      for (int l = 0; l < n; ++l)
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
              double v = R[at(l, i, j, k)].d(m);
              for (int q = 0; q < n; ++q) {
                v += G.gamma(l, m, q) * G.riemann(q, i, j, k);
                v -= G.gamma(q, m, i) * G.riemann(l, q, j, k);
                v -= G.gamma(q, m, j) * G.riemann(l, i, q, k);
                v -= G.gamma(q, m, k) * G.riemann(l, i, j, q);
              }
              G.nabla_riemann(m, l, i, j, k) = v;
            }
  } else {
    for (int l = 0; l < n; ++l)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k) {
            double v = G.d_gamma(i, l, j, k) - G.d_gamma(j, l, i, k);
            for (int m = 0; m < n; ++m) v += G.gamma(l, i, m) * G.gamma(m, j, k) - G.gamma(l, j, m) * G.gamma(m, i, k);
            G.riemann(l, i, j, k) = v;
          }
  }

  G.S = SmallMatrix(n);
  G.l = SmallMatrix(n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i) G.S(j, k) += G.riemann(i, i, j, k);
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) G.l(l, i) += G.riemann(l, i, j, k) * G.xi[j] * G.xi[k];
  G.Q = G.ginv * G.S;
  G.r = G.Q.trace();

  G.nabla_xi = SmallMatrix(n);
  G.nabla_eta = SmallMatrix(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double v = F.xi[i].d(j);
      double w = F.eta[i].d(j);
      for (int k = 0; k < n; ++k) {
        v += G.gamma(i, j, k) * G.xi[k];
        w -= G.gamma(k, j, i) * G.eta[k];
      }
      G.nabla_xi(i, j) = v;
      G.nabla_eta(j, i) = w;
    }
  G.A = G.nabla_xi * -1.0;
  G.d_eta = exterior_derivative(F.eta).values();

  const JetMatrix hJ = h_jets(F.phi, F.xi, n);
  G.h = hJ.values();
  const JetMatrix PhiJ = fundamental_form_jets(F, n);
  G.Phi = PhiJ.values();

  if (level == GeometryLevel::full) {
    G.nabla_phi = nabla_endo(F.phi, G.gamma, n);
    G.nabla_h = nabla_endo(hJ, G.gamma, n);
    G.nabla_phih = nabla_endo(jet_product(F.phi, hJ), G.gamma, n);
    G.d_Phi = exterior_derivative(PhiJ);
    G.nabla_Phi = Tensor(n, 3);
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double v = PhiJ(i, j).d(k);
          for (int m = 0; m < n; ++m) v -= G.gamma(m, k, i) * G.Phi(m, j) + G.gamma(m, k, j) * G.Phi(i, m);
          G.nabla_Phi(k, i, j) = v;
        }
    G.nijenhuis = nijenhuis_from(F.phi, F.eta, F.xi, n);
  }
  return G;
}

ConnectionCoefficients christoffel(const AlmostContactMetricStructure& s, const Point& p) {
  const int n = s.dim;
  const FieldJets F = field_jets(s, p);
  const GammaJets gam = gamma_jets(F, n);
  ConnectionCoefficients C;
  C.point = p;
  C.gamma = Tensor(n, 3);
  C.d_gamma = Tensor(n, 4);
  C.dd_gamma = Tensor(n, 5);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        C.gamma(k, i, j) = gam(k, i, j).value();
        for (int m = 0; m < n; ++m) {
          C.d_gamma(m, k, i, j) = gam(k, i, j).d(m);
          for (int q = 0; q < n; ++q) C.dd_gamma(m, q, k, i, j) = gam(k, i, j).d(m, q);
        }
      }
  const SmallMatrix g = F.g.values();
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double v = F.g(i, j).d(k);
        for (int m = 0; m < n; ++m) v -= C.gamma(m, k, i) * g(m, j) + C.gamma(m, k, j) * g(i, m);
        C.metric_compatibility = std::max(C.metric_compatibility, std::abs(v));
        C.torsion = std::max(C.torsion, std::abs(C.gamma(k, i, j) - C.gamma(k, j, i)));
      }
  return C;
}

CurvatureAtPoint riemann(const AlmostContactMetricStructure& s, const Point& p) {
  PointGeometry G = compute_geometry(s, p, GeometryLevel::full);
  CurvatureAtPoint c;
  c.point = p;
  c.riemann = std::move(G.riemann);
  c.nabla_riemann = std::move(G.nabla_riemann);
  c.S = G.S;
  c.Q = G.Q;
  c.l = G.l;
  c.r = G.r;
  return c;
}

Tensor covariant_derivative(const AlmostContactMetricStructure& s, const Point& p, TensorKind kind) {
  const PointGeometry G = compute_geometry(s, p, GeometryLevel::full);
  const int n = s.dim;
  switch (kind) {
    case TensorKind::vector: {
      Tensor out(n, 2);
      for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i) out(k, i) = G.nabla_xi(i, k);
      return out;
    }
    case TensorKind::one_form: {
      Tensor out(n, 2);
      for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i) out(k, i) = G.nabla_eta(k, i);
      return out;
    }
    case TensorKind::endomorphism:
      return G.nabla_phi;
  }
  throw std::invalid_argument("unknown tensor kind");
}

SmallMatrix tensor_h(const AlmostContactMetricStructure& s, const Point& p) {
  if (p.dim() != s.dim) throw std::invalid_argument("point dimension does not match structure");
  const auto x = coordinate_jets(p);
  return h_jets(s.phi(x), s.xi(x), s.dim).values();
}

SmallMatrix tensor_A(const AlmostContactMetricStructure& s, const Point& p) {
  return compute_geometry(s, p, GeometryLevel::curvature).A;
}

JetVector exterior_derivative(const Jet& f) {
  JetVector out;
  for (int i = 0; i < f.dim(); ++i) out.push_back(f.derivative(i));
  return out;
}

JetMatrix exterior_derivative(const JetVector& omega) {
  const int n = static_cast<int>(omega.size());
  JetMatrix d(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) {
        d(i, j) = Jet(n) * omega[i].derivative(i);  // zero, carrying the lowered order
        continue;
      }
      d(i, j) = omega[j].derivative(i) - omega[i].derivative(j);
    }
  return d;
}

Tensor exterior_derivative(const JetMatrix& omega) {
  const int n = omega.dim();
  Tensor d(n, 3);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) d(i, j, k) = omega(j, k).d(i) + omega(k, i).d(j) + omega(i, j).d(k);
  return d;
}

Tensor wedge(const Vec& a, const SmallMatrix& b) {
  const int n = a.dim();
  Tensor w(n, 3);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) w(i, j, k) = a[i] * b(j, k) + a[j] * b(k, i) + a[k] * b(i, j);
  return w;
}

StructureForms structure_forms(const AlmostContactMetricStructure& s, const Point& p) {
  if (p.dim() != s.dim) throw std::invalid_argument("point dimension does not match structure");
  const auto x = coordinate_jets(p);
  FieldJets F{s.g(x), {}, s.phi(x), {}, s.eta(x)};
  const JetMatrix PhiJ = fundamental_form_jets(F, s.dim);
  return {exterior_derivative(F.eta).values(), exterior_derivative(PhiJ), wedge(values(F.eta), PhiJ.values())};
}

Tensor nijenhuis(const AlmostContactMetricStructure& s, const Point& p) {
  if (p.dim() != s.dim) throw std::invalid_argument("point dimension does not match structure");
  const auto x = coordinate_jets(p);
  return nijenhuis_from(s.phi(x), s.eta(x), s.xi(x), s.dim);
}

}  // namespace acm
