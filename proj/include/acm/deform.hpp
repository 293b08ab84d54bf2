#pragma once

// D-homothetic deformations
//   phi' = phi, xi' = xi / beta, eta' = beta eta, g' = gamma g + (beta^2 - gamma) eta (x) eta
// and the transformation laws of (alpha, kappa, mu, nu).

#include <optional>
#include <string>
#include <vector>

#include "acm/classify.hpp"

namespace acm {

/// beta as a function of the last chart coordinate z:
///   "const:c"            beta = c
///   "exp_z:s"            beta = e^{s z}
///   "poly_z:c0,c1,..."   beta = c0 + c1 z + c2 z^2 + ...
struct BetaSpec {
  enum class Kind { constant, exp_z, poly_z };
  Kind kind = Kind::constant;
  std::vector<double> coeffs{1.0};

  std::string to_string() const;
  bool is_constant() const;
};

/// Throws std::invalid_argument on malformed input.
BetaSpec parse_beta(const std::string& text);
ScalarField make_beta(const BetaSpec& spec, int dim);

struct DeformationParams {
  BetaSpec spec;
  ScalarField beta;
  double gamma = 1.0;
};

/// Throws std::invalid_argument when gamma <= 0 or beta is the zero constant.
DeformationParams make_deformation(const BetaSpec& spec, double gamma, int dim);

/// The deformed structure. Its in_domain additionally excludes zeros of beta.
AlmostContactMetricStructure apply_d_homothetic(const AlmostContactMetricStructure& s, const DeformationParams& d);

/// Throws std::domain_error if beta vanishes at a point or |d beta ^ eta| >= 1e-6.
void check_deformation(const AlmostContactMetricStructure& s, const DeformationParams& d,
                       const std::vector<Point>& points);

/// beta(p) and xi(beta)(p) from jets.
struct BetaAt {
  double beta = 0;
  double xi_beta = 0;
  Vec d_beta;
};
BetaAt beta_at(const AlmostContactMetricStructure& s, const DeformationParams& d, const Point& p);

struct DeformationLawResiduals {
  double h = 0;                 // |h' - h / beta|
  double A = 0;                 // |A' - A / beta|
  double connection = 0;        // nabla' - nabla against its closed form
  double curvature = 0;         // R'(X,Y)xi' against R(X,Y)xi / beta + xi(beta)/beta^2 [eta(X)AY - eta(Y)AX]
  double fundamental_form = 0;  // |Phi' - gamma Phi|
  double alpha = 0;             // |alpha'(p) - alpha / beta(p)|
};

/// Recomputes the deformed tensors from scratch and compares them with the laws.
DeformationLawResiduals deformed_operator_laws(const AlmostContactMetricStructure& s, const DeformationParams& d,
                                               const Point& p, double alpha);

struct KmnPrediction {
  double kappa_proposition = 0;    // kappa / beta^2
  double kappa_theorem_proof = 0;  // kappa / beta^2 + xi(beta) / beta^3
  double kappa_derived = 0;        // kappa / beta^2 + alpha xi(beta) / beta^3
  std::optional<double> mu, nu;    // mu / beta, (beta nu - xi(beta)) / beta^2
};

KmnPrediction predict_kmn(const NullityFit& fit, const BetaAt& beta, double alpha);

struct VariantComparison {
  std::string name;
  double max_error = 0;
  bool matches = false;
};

/// The transform beta^2 = -(kappa + alpha^2) and its printed predictions.
struct TheoremTransform {
  bool applicable = false;  // kappa < -alpha^2 at every point
  std::string reason;
  bool beta_matches = false;  // the requested beta equals sqrt(-(kappa + alpha^2)) at every point
  std::vector<double> beta_t;
  /// Predicted (kappa', mu', nu') per variant at the first point, for the report.
  struct Triple {
    std::string name;
    double kappa, mu, nu;
  };
  std::vector<Triple> first_point;
  std::vector<VariantComparison> variants;  // relative error against the fitted deformed triple, when beta_matches
  std::vector<std::string> matches;
};

struct DeformedPoint {
  Point point;
  BetaAt beta;
  NullityFit fit;
  NullityFit deformed_fit;
  KmnPrediction predicted;
  DeformationLawResiduals laws;
};

struct DeformationReport {
  std::string beta_spec;
  double gamma = 1;
  double alpha = 0;
  double tolerance = 1e-5;
  std::optional<double> alpha_deformed;  // global detection, constant beta only
  double alpha_deformed_residual = 0;
  double r_eta_beta = 0;
  std::vector<DeformedPoint> points;
  double mu_error = 0, nu_error = 0;
  std::vector<VariantComparison> kappa_variants;  // proposition, theorem_proof, derived
  std::vector<std::string> kappa_variant_matches;
  DeformationLawResiduals max_laws;
  TheoremTransform theorem;
  bool pass = false;
};

/// Fits both structures at every point and compares with predict_kmn.
/// tolerance <= 0 selects 1e-5 for constant beta and 1e-4 otherwise.
DeformationReport compare_deformed(const AlmostContactMetricStructure& s, const DeformationParams& d,
                                   const std::vector<Point>& points, double alpha, double tolerance = 0.0);

}  // namespace acm
