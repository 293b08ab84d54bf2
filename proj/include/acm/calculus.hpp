#pragma once

// Connection, curvature and the structure operators at a point, all assembled
// from jets of the coordinate fields.
//
// Index conventions (components in the chart basis d_0..d_{dim-1}):
//   gamma(k, i, j)          = Gamma^k_ij
//   riemann(l, i, j, k)     = R^l_ijk,  R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z
//   nabla_riemann(m, ...)   = (nabla_m R)^l_ijk
//   nabla_T(k, i, j)        = (nabla_k T)^i_j for endomorphisms T
//   S(j, k) = R^i_ijk,  Q = g^{-1} S,  r = tr Q,  l^l_i = R^l_ijk xi^j xi^k

#include <cstddef>
#include <vector>

#include "acm/linalg.hpp"
#include "acm/structure.hpp"

namespace acm {

/// Dense rank-r array over a chart of dimension dim, last index fastest.
class Tensor {
 public:
  Tensor() = default;
  Tensor(int dim, int rank);

  int dim() const noexcept { return dim_; }
  int rank() const noexcept { return rank_; }

  template <class... I>
  double& operator()(I... idx) {
    return data_[offset(idx...)];
  }
  template <class... I>
  double operator()(I... idx) const {
    return data_[offset(idx...)];
  }

  double max_abs() const noexcept;
  const std::vector<double>& data() const noexcept { return data_; }

  Tensor& operator-=(const Tensor& b);
  friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }

 private:
  template <class... I>
  std::size_t offset(I... idx) const {
    std::size_t o = 0;
    ((o = o * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(idx)), ...);
    return o;
  }

  int dim_ = 0;
  int rank_ = 0;
  std::vector<double> data_;
};

struct ConnectionCoefficients {
  Point point;
  Tensor gamma;       // (k, i, j)
  Tensor d_gamma;     // (m, k, i, j) = d_m Gamma^k_ij
  Tensor dd_gamma;    // (m, n, k, i, j) = d_m d_n Gamma^k_ij
  double metric_compatibility = 0;  // max |nabla g|
  double torsion = 0;               // max |Gamma^k_ij - Gamma^k_ji|
};

struct CurvatureAtPoint {
  Point point;
  Tensor riemann;        // (l, i, j, k)
  Tensor nabla_riemann;  // (m, l, i, j, k)
  SmallMatrix S, Q, l;
  double r = 0;
};

enum class GeometryLevel {
  curvature,  // connection, R, Ricci, h, A, nabla xi, nabla eta
  full,       // adds nabla R, nabla phi, nabla h, nabla(phi h), nabla Phi, dPhi, Nijenhuis
};

/// Everything the identity battery needs at one point.
struct PointGeometry {
  Point point;
  int dim = 0;
  int n = 0;
  GeometryLevel level = GeometryLevel::full;

  SmallMatrix g, ginv, phi, h, A, Phi;
  Vec xi, eta;
  SmallMatrix nabla_xi;   // (i, j) = (nabla_j xi)^i, so nabla_X xi = nabla_xi * X
  SmallMatrix nabla_eta;  // (j, i) = (nabla_j eta)_i
  SmallMatrix d_eta;      // (i, j) = d_i eta_j - d_j eta_i
  SmallMatrix S, Q, l;
  double r = 0;
  double metric_compatibility = 0;

  Tensor gamma, d_gamma, riemann;
  Tensor nabla_riemann;
  Tensor nabla_phi, nabla_h, nabla_phih;
  Tensor nabla_Phi;  // (k, i, j) = (nabla_k Phi)_ij
  Tensor d_Phi;      // (i, j, k)
  Tensor nijenhuis;  // (i, j, k) = N^i_jk

  double inner(const Vec& a, const Vec& b) const { return acm::inner(g, a, b); }
  double norm(const Vec& a) const { return g_norm(g, a); }

  /// R(X,Y)Z
  Vec curvature(const Vec& X, const Vec& Y, const Vec& Z) const;
  /// (nabla_W R)(X,Y)Z
  Vec nabla_curvature(const Vec& W, const Vec& X, const Vec& Y, const Vec& Z) const;
  /// Gamma(X, Y)^k = Gamma^k_ij X^i Y^j, the connection part of nabla_X Y.
  Vec connection(const Vec& X, const Vec& Y) const;
  /// nabla_X of an endomorphism field given its covariant derivative tensor.
  static SmallMatrix along(const Tensor& nabla_T, const Vec& X);
  /// (nabla_X Phi)(Y, Z)
  double nabla_Phi_at(const Vec& X, const Vec& Y, const Vec& Z) const;
};

PointGeometry compute_geometry(const AlmostContactMetricStructure& s, const Point& p,
                               GeometryLevel level = GeometryLevel::full);

/// Gamma^k_ij = 1/2 g^{kl} (d_i g_jl + d_j g_il - d_l g_ij) with two orders of partials.
ConnectionCoefficients christoffel(const AlmostContactMetricStructure& s, const Point& p);

CurvatureAtPoint riemann(const AlmostContactMetricStructure& s, const Point& p);

enum class TensorKind { vector, one_form, endomorphism };

/// Covariant derivative of one of the structure fields at p:
/// vector -> xi, one_form -> eta, endomorphism -> phi.
/// Returns (k, i) / (k, i) / (k, i, j) components with the differentiation index first.
Tensor covariant_derivative(const AlmostContactMetricStructure& s, const Point& p, TensorKind kind);

/// h = 1/2 L_xi phi from coordinate partials only.
SmallMatrix tensor_h(const AlmostContactMetricStructure& s, const Point& p);
/// A = -nabla xi.
SmallMatrix tensor_A(const AlmostContactMetricStructure& s, const Point& p);

/// df as a covector of jets (valid order drops by one).
JetVector exterior_derivative(const Jet& f);
/// (d omega)_ij = d_i omega_j - d_j omega_i.
JetMatrix exterior_derivative(const JetVector& omega);
/// (d omega)_ijk = d_i omega_jk + d_j omega_ki + d_k omega_ij.
Tensor exterior_derivative(const JetMatrix& omega);
/// (a ^ b)_ijk = a_i b_jk + a_j b_ki + a_k b_ij for a 1-form a and 2-form b.
Tensor wedge(const Vec& a, const SmallMatrix& b);

/// d eta, d Phi and eta ^ Phi at a point, from the structure fields alone.
struct StructureForms {
  SmallMatrix d_eta;
  Tensor d_Phi;
  Tensor eta_wedge_Phi;
};
StructureForms structure_forms(const AlmostContactMetricStructure& s, const Point& p);

/// N^i_jk of [phi, phi] + (d eta) (x) xi.
Tensor nijenhuis(const AlmostContactMetricStructure& s, const Point& p);

/// Inverse of a jet matrix by Gauss-Jordan elimination with partial pivoting.
JetMatrix jet_inverse(const JetMatrix& m);
JetMatrix jet_product(const JetMatrix& a, const JetMatrix& b);

}  // namespace acm
