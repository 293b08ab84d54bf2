#pragma once

#include <cmath>
#include <vector>

#include "acm/report.hpp"

namespace acm::test {

inline Box example_box() { return Box{{{-1.0, 1.0}, {-1.0, 1.0}, {0.2, 2.0}}}; }

inline std::vector<Point> seeded(const Box& box, int count, std::uint64_t seed) {
  return sample_points(box, count, seed);
}

inline double example_kappa(double alpha, double z) { return -(std::exp(-4.0 * alpha * z) + alpha * alpha); }

/// Rotate the e-plane of a 3-dimensional frame by theta; phi e is recomputed as phi(e).
inline FrameData rotated(FrameData f, const SmallMatrix& phi, double theta) {
  const Vec e = std::cos(theta) * f.e() + std::sin(theta) * f.phi_e();
  f.vectors[0] = e;
  f.vectors[1] = phi * e;
  return f;
}

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace acm::test
