#pragma once

// Run configuration, seeded sampling, suite orchestration and report emission.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "acm/deform.hpp"
#include "acm/sweep.hpp"

namespace acm {

inline constexpr const char* kEngineVersion = "1.0.0";

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// SplitMix64. next(): state += 0x9E3779B97F4A7C15, then the usual xor-shift-multiply finaliser.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  /// (next() >> 11) * 2^-53, uniform on [0, 1).
  double uniform();

 private:
  std::uint64_t state_;
};

/// count points, coordinate-major within each point: x_i = lo_i + (hi_i - lo_i) u.
std::vector<Point> sample_points(const Box& box, int count, std::uint64_t seed);

/// One point per non-blank line, whitespace-separated reals; '#' starts a comment.
std::vector<Point> read_points_file(const std::string& path);
std::vector<Point> parse_points(const std::string& text);

struct RunConfig {
  std::string structure;
  ParamMap params;
  std::optional<Box> box;     // default: the registry box
  int count = 50;
  std::uint64_t seed = 42;
  std::vector<Point> points;  // non-empty: used instead of sampling
  ToleranceMap tolerances;    // identity name (or "deformation") -> tolerance
  std::optional<std::string> deform_beta;
  double deform_gamma = 1.0;
  std::string out;            // empty: stdout
  std::string format = "json";
  int threads = 0;            // not echoed; results do not depend on it
};

/// Keys: structure, params, box, count, seed, points, tolerances, deformation {beta, gamma}, out, format.
/// beta may be "kind:values" or an object {"const": c} / {"exp_z": s} / {"poly_z": [c0, ...]}.
RunConfig parse_config_json(const std::string& text);

struct ResidualReport {
  RunConfig config;
  std::vector<Point> points;
  AlphaDetection alpha;
  std::vector<PointRecord> records;
  std::vector<IdentityResult> identities;
  std::optional<DeformationReport> deformation;
  bool pass = false;
};

/// Throws ConfigError (or std::invalid_argument from the registry) for bad input.
ResidualReport run_suite(const RunConfig& config);

/// format is "json" or "text".
std::string emit_report(const ResidualReport& report, const std::string& format);
/// Throws std::runtime_error when the path cannot be written.
void write_report(const ResidualReport& report, const std::string& format, const std::string& path);

}  // namespace acm
