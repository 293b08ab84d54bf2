#pragma once

// Almost contact metric structures (phi, xi, eta, g) authored as jet-valued
// coordinate fields on a single chart, plus the code-level registry.

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "acm/jet.hpp"
#include "acm/linalg.hpp"

namespace acm {

using CoordJets = std::span<const Jet>;

/// Square matrix of jets, row-major; (i, j) is row i, column j.
class JetMatrix {
 public:
  JetMatrix() = default;
  explicit JetMatrix(int dim);

  int dim() const noexcept { return dim_; }
  Jet& operator()(int i, int j) { return a_[static_cast<std::size_t>(i * dim_ + j)]; }
  const Jet& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i * dim_ + j)]; }

  SmallMatrix values() const;

 private:
  int dim_ = 0;
  std::vector<Jet> a_;
};

using JetVector = std::vector<Jet>;

Vec values(const JetVector& v);

/// Coordinate jets x_0..x_{dim-1} at p.
std::vector<Jet> coordinate_jets(const Point& p);

template <class Tag, class Value>
class Field {
 public:
  using Fn = std::function<Value(CoordJets)>;

  Field() = default;
  explicit Field(Fn fn) : fn_(std::move(fn)) {}

  Value operator()(CoordJets x) const { return fn_(x); }
  Value at(const Point& p) const {
    const auto x = coordinate_jets(p);
    return fn_(x);
  }
  explicit operator bool() const noexcept { return static_cast<bool>(fn_); }

 private:
  Fn fn_;
};

struct ScalarTag {};
struct VectorTag {};
struct OneFormTag {};
struct EndoTag {};
struct MetricTag {};

using ScalarField = Field<ScalarTag, Jet>;
using VectorField = Field<VectorTag, JetVector>;
using OneFormField = Field<OneFormTag, JetVector>;  // covector components eta_i
using EndoField = Field<EndoTag, JetMatrix>;        // (phi X)^i = phi(i, j) X^j
using MetricField = Field<MetricTag, JetMatrix>;    // g(i, j) = g_ij

/// Axis-aligned sampling box, one [lo, hi] interval per coordinate.
struct Box {
  std::vector<std::pair<double, double>> bounds;
  int dim() const noexcept { return static_cast<int>(bounds.size()); }
};

/// Closed forms known for a registry structure, used only as cross-checks.
struct ReferenceForms {
  struct Nullity {
    double kappa, mu, nu;
  };
  std::function<Nullity(const Point&)> nullity;
  std::function<SmallMatrix(const Point&)> h;          // the hypothesis the engine adopts
  std::function<SmallMatrix(const Point&)> h_printed;  // as printed, diagnostic only
};

struct AlmostContactMetricStructure {
  std::string name;
  int dim = 3;
  EndoField phi;
  VectorField xi;
  OneFormField eta;
  MetricField g;
  std::optional<double> alpha_hint;
  /// Declared domain; a sampling box must lie inside it.
  std::function<bool(const Box&)> box_in_domain;
  std::function<bool(const Point&)> in_domain;
  ReferenceForms reference;

  int n() const noexcept { return (dim - 1) / 2; }
};

/// Values of (phi, xi, eta, g) at a point.
struct StructureValues {
  SmallMatrix phi, g;
  Vec xi, eta;
};

StructureValues evaluate_values(const AlmostContactMetricStructure& s, const Point& p);

struct ValidationResidual {
  double phi_squared = 0;    // |phi^2 + I - eta (x) xi|
  double eta_xi = 0;         // |eta(xi) - 1|
  double phi_xi = 0;         // |phi xi|
  double eta_phi = 0;        // |eta o phi|
  double compatibility = 0;  // |g(phi., phi.) - g + eta (x) eta|
  int phi_rank = 0;
  double rank_residual = 0;  // 0 iff rank(phi) == 2n
  std::vector<double> singular_values;

  double max() const;
  bool pass(double tol) const { return max() <= tol; }
};

/// Throws std::domain_error when g is not positive definite at p.
ValidationResidual validate_structure(const AlmostContactMetricStructure& s, const Point& p);

/// Phi_ij = Phi(d_i, d_j) = g(phi d_i, d_j).
SmallMatrix fundamental_form(const AlmostContactMetricStructure& s, const Point& p);

using ParamMap = std::map<std::string, double>;

struct RegistryEntry {
  std::string name;
  std::vector<std::pair<std::string, double>> params;  // key, default
  std::string description;
  std::function<AlmostContactMetricStructure(const ParamMap&)> make;
  std::function<Box(const ParamMap&)> default_box;
};

const std::vector<RegistryEntry>& registry();
const RegistryEntry& registry_entry(const std::string& name);

/// Merge user params with defaults; rejects unknown keys.
ParamMap resolve_params(const RegistryEntry& entry, const ParamMap& params);

/// Throws std::invalid_argument for unknown names or invalid parameters.
AlmostContactMetricStructure registry_get(const std::string& name, const ParamMap& params = {});

/// Copy of s with phi(row, col) perturbed by delta everywhere (test helper).
AlmostContactMetricStructure perturb_phi(AlmostContactMetricStructure s, int row, int col, double delta);

}  // namespace acm
