#pragma once

// Per-point evaluation of the identity battery over a point list.

#include <optional>
#include <string>
#include <vector>

#include "acm/classify.hpp"

namespace acm {

struct PointRecord {
  Point point;
  std::optional<NullityFit> fit;
  std::vector<IdentityEval> evals;  // one per identity_catalog() row; NaN residuals on error
  std::string error;
};

/// Analyse one point; exceptions are caught and recorded in `error`.
PointRecord evaluate_point(const AlmostContactMetricStructure& s, const Point& p, double alpha, double fd_step = 1e-5);

/// Reference implementation, one point after another.
std::vector<PointRecord> sweep_serial(const AlmostContactMetricStructure& s, const std::vector<Point>& points,
                                      double alpha, double fd_step = 1e-5);

/// OpenMP over points. Output order and values match sweep_serial.
/// threads <= 0 uses the OpenMP default.
std::vector<PointRecord> sweep_parallel(const AlmostContactMetricStructure& s, const std::vector<Point>& points,
                                        double alpha, double fd_step = 1e-5, int threads = 0);

std::vector<IdentityResult> aggregate(const std::vector<PointRecord>& records, const ToleranceMap& tolerances = {});

}  // namespace acm
