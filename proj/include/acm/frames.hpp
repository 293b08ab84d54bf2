#pragma once

// Pointwise g-orthonormal phi-bases {e_1..e_n, phi e_1..phi e_n, xi} adapted
// to the spectrum of h, and their finite-difference derivatives.

#include <array>
#include <optional>
#include <vector>

#include "acm/calculus.hpp"

namespace acm {

/// Below this value of lambda the eigenframe is not determined by h.
inline constexpr double kLambdaThreshold = 1e-7;

struct FrameData {
  Point point;
  int n = 0;
  std::vector<Vec> vectors;     // e_1..e_n, phi e_1..phi e_n, xi
  std::vector<double> lambdas;  // h e_i = lambda_i e_i, lambda_i >= 0
  double lambda = 0;            // lambda_1, the largest
  bool degenerate = true;       // some lambda_i below kLambdaThreshold

  // Three-dimensional data, filled by build_phi_basis / complete_phi_basis.
  std::optional<double> a, b, c;
  double sigma_e = 0, sigma_phie = 0;
  /// Residual norms of nabla_xi e + a phi e, nabla_xi phi e - a e, nabla_e xi - (alpha e - lambda phi e),
  /// nabla_{phi e} xi - (alpha phi e - lambda e), nabla_e e - (b phi e - alpha xi),
  /// nabla_{phi e} phi e - (c e - alpha xi), nabla_e phi e - (-b e + lambda xi), nabla_{phi e} e - (-c phi e + lambda xi).
  std::array<double, 8> relations{};
  double b_formula = 0;  // |2 lambda b - (phi e)(lambda) - sigma(e)|
  double c_formula = 0;  // |2 lambda c - e(lambda) - sigma(phi e)|

  const Vec& e(int i = 0) const { return vectors[static_cast<std::size_t>(i)]; }
  const Vec& phi_e(int i = 0) const { return vectors[static_cast<std::size_t>(n + i)]; }
  const Vec& xi() const { return vectors.back(); }
};

inline constexpr std::array<const char*, 8> kFrameRelationNames = {
    "xi_e", "xi_phi_e", "e_xi", "phi_e_xi", "e_e", "phi_e_phi_e", "e_phi_e", "phi_e_e"};

/// Eigenframe from point values. The e_i are the g-orthonormal eigenvectors of h
/// with the largest eigenvalues, taken greedily and projected off the span
/// already chosen; phi e_i = phi(e_i). Throws std::invalid_argument when h is
/// not g-self-adjoint.
FrameData adapted_frame(const Point& p, const SmallMatrix& g, const SmallMatrix& phi, const SmallMatrix& h,
                        const Vec& xi);
FrameData adapted_frame(const PointGeometry& G);

/// Eigenframe at p from the structure fields only (no curvature).
FrameData frame_at(const AlmostContactMetricStructure& s, const Point& p);

struct FrameDerivatives {
  double step = 0;
  std::vector<std::vector<Vec>> d_vectors;  // [k][v]: d_k of frame vector v
  std::vector<double> d_lambda;             // d_k lambda

  /// sum_k X^k d_k v
  Vec along(const Vec& X, int v) const;
  /// X(lambda)
  double lambda_along(const Vec& X) const;
};

/// Central differences of neighbouring eigenframes; each neighbour is sign-aligned
/// with the centre frame before differencing.
FrameDerivatives frame_derivatives(const AlmostContactMetricStructure& s, const FrameData& center,
                                   double step = 1e-5);

/// Fill a, b, c, sigma and the frame-relation residuals of a three-dimensional frame.
void complete_phi_basis(FrameData& frame, const PointGeometry& G, const FrameDerivatives& D, double alpha);

/// Three-dimensional phi-basis with a, b, c, sigma; throws std::invalid_argument when dim != 3.
FrameData build_phi_basis(const AlmostContactMetricStructure& s, const Point& p, double alpha, double step = 1e-5);

}  // namespace acm
