#pragma once

// alpha detection, pointwise (kappa, mu, nu) fits and the identity battery.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "acm/frames.hpp"

namespace acm {

class ClassificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct NullityFit {
  Point point;
  double kappa = 0;
  std::optional<double> mu, nu;  // empty when lambda < kLambdaThreshold
  double lambda = 0;
  double residual_501 = 0;  // max |R(X,Y)xi - eta(Y)BX + eta(X)BY|, B = kappa I + mu h + nu phi h
  std::vector<std::string> flags;
};

/// Least-squares projection of l onto {-phi^2, h, phi h} in the frame.
NullityFit fit_in_frame(const PointGeometry& G, const FrameData& frame);
/// Eigenframe fit; in dim > 3 each eigenpair is checked separately and
/// disagreement above 1e-6 adds the flag "eigenpair_inconsistent".
NullityFit fit_kmn(const PointGeometry& G, const FrameData& frame);
NullityFit fit_kmn(const AlmostContactMetricStructure& s, const Point& p);

struct AlphaDetection {
  double alpha = 0;
  std::vector<double> per_point;
  double spread = 0;            // max |alpha_p - alpha|
  double d_eta_residual = 0;    // max |d eta|
  double d_phi_residual = 0;    // max |dPhi - 2 alpha eta ^ Phi| at the global alpha
  bool closed = true;    // d eta = 0
  bool constant = true;  // spread within tolerance
  bool form_ok = true;   // dPhi = 2 alpha eta ^ Phi within 1e-8
  std::string message;
};

/// Least-squares alpha from dPhi = 2 alpha eta ^ Phi at one point.
double point_alpha(const StructureForms& forms);
/// Never throws on a failed hypothesis; see closed / constant.
AlphaDetection measure_alpha(const AlmostContactMetricStructure& s, const std::vector<Point>& points,
                             double d_eta_tol = 1e-9, double constancy_tol = 1e-7);
/// Throws ClassificationError unless eta is closed and alpha is constant.
AlphaDetection detect_alpha(const AlmostContactMetricStructure& s, const std::vector<Point>& points,
                            double d_eta_tol = 1e-9, double constancy_tol = 1e-7);

/// Central-difference coordinate gradients of the fitted functions.
struct FitGradient {
  double step = 0;
  Vec kappa, mu, nu, lambda;
  bool mu_nu_valid = false;
};
FitGradient fit_gradient(const AlmostContactMetricStructure& s, const Point& p, double step = 1e-5);

/// X(f) = X^k d_k f
inline double along(const Vec& grad, const Vec& X) { return dot(grad, X); }

struct EtaParallelCheck {
  double eta_parallel = 0;  // max |g((nabla_X h)Y, Z)| over X, Y, Z in D
  double formula = 0;          // closed form of nabla h, xi-component -g(Y, alpha hX + phi h^2 X)
  double formula_printed = 0;  // same with the xi-component sign as printed
};
EtaParallelCheck check_eta_parallel_h(const PointGeometry& G, const FrameData& frame, double alpha);

/// max_ij |(df ^ eta)_ij| from a coordinate gradient.
double r_eta_residual(const Vec& grad, const Vec& eta);

/// max |(nabla_X phi)Y + g(phi A X, Y) xi - eta(Y) phi A X| over frame pairs.
double check_kaehler_leaf_condition(const PointGeometry& G, const FrameData& frame);

enum class IdentityRole { gating, diagnostic };

struct IdentityInfo {
  std::string name;
  double tolerance;
  IdentityRole role;
};

/// Every identity the battery evaluates, in report order.
const std::vector<IdentityInfo>& identity_catalog();
std::optional<std::size_t> identity_index(const std::string& name);

/// Everything computed once per sample point.
struct PointContext {
  const AlmostContactMetricStructure* structure = nullptr;
  double alpha = 0;
  PointGeometry G;
  FrameData frame;
  NullityFit fit;
  FitGradient grad;
  ValidationResidual validation;
  StructureForms forms;
  double alpha_point = 0;
};

PointContext analyze_point(const AlmostContactMetricStructure& s, const Point& p, double alpha,
                           double fd_step = 1e-5);

struct IdentityEval {
  double residual = 0;
  std::string skip;  // non-empty: hypothesis not met at this point
};

/// One entry per identity_catalog() row.
std::vector<IdentityEval> evaluate_identities(const PointContext& ctx);

enum class IdentityStatus { pass, fail, skipped, diagnostic };
const char* to_string(IdentityStatus s);

struct IdentityResult {
  std::string name;
  double max_residual = 0;
  double tolerance = 0;
  bool pass = true;
  std::optional<Point> worst_point;
  IdentityStatus status = IdentityStatus::pass;
  std::string note;
};

using ToleranceMap = std::map<std::string, double>;

/// Reduce per-point evaluations: max residual with ties going to the first
/// point, NaN counts as failure. An identity skipped at any point is skipped.
std::vector<IdentityResult> aggregate_identities(const std::vector<Point>& points,
                                                 const std::vector<std::vector<IdentityEval>>& evals,
                                                 const ToleranceMap& tolerances = {});

std::vector<IdentityResult> identity_suite(const AlmostContactMetricStructure& s, const std::vector<Point>& points,
                                           double alpha, const ToleranceMap& tolerances = {});

}  // namespace acm
