#include "acm/sweep.hpp"

#include <limits>

#include <omp.h>

namespace acm {

PointRecord evaluate_point(const AlmostContactMetricStructure& s, const Point& p, double alpha, double fd_step) {
  PointRecord rec;
  rec.point = p;
  try {
    const PointContext ctx = analyze_point(s, p, alpha, fd_step);
    rec.fit = ctx.fit;
    rec.evals = evaluate_identities(ctx);
  } catch (const std::exception& e) {
    rec.error = e.what();
    rec.evals.assign(identity_catalog().size(), IdentityEval{std::numeric_limits<double>::quiet_NaN(), {}});
  }
  return rec;
}

std::vector<PointRecord> sweep_serial(const AlmostContactMetricStructure& s, const std::vector<Point>& points,
                                      double alpha, double fd_step) {
  std::vector<PointRecord> out;
  out.reserve(points.size());
  for (const Point& p : points) out.push_back(evaluate_point(s, p, alpha, fd_step));
  return out;
}

std::vector<PointRecord> sweep_parallel(const AlmostContactMetricStructure& s, const std::vector<Point>& points,
                                        double alpha, double fd_step, int threads) {
  identity_catalog();  // build the static table before fanning out
  std::vector<PointRecord> out(points.size());
  const auto count = static_cast<long>(points.size());
  const int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(nt)
  for (long i = 0; i < count; ++i) {
    const auto k = static_cast<std::size_t>(i);
    out[k] = evaluate_point(s, points[k], alpha, fd_step);
  }
  return out;
}

std::vector<IdentityResult> aggregate(const std::vector<PointRecord>& records, const ToleranceMap& tolerances) {
  std::vector<Point> points;
  std::vector<std::vector<IdentityEval>> evals;
  points.reserve(records.size());
  evals.reserve(records.size());
  for (const PointRecord& r : records) {
    points.push_back(r.point);
    evals.push_back(r.evals);
  }
  return aggregate_identities(points, evals, tolerances);
}

}  // namespace acm
