// acm_verify: run the identity suite on a registered structure and emit a residual report.
// Exit status: 0 overall pass, 1 some gating check failed, 2 usage or configuration error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "acm/report.hpp"

namespace {

std::pair<std::string, double> key_value(const std::string& s, const char* what) {
  const auto eq = s.find('=');
  if (eq == std::string::npos || eq == 0) throw acm::ConfigError(std::string(what) + " expects name=value, got '" + s + "'");
  try {
    std::size_t used = 0;
    const std::string v = s.substr(eq + 1);
    const double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return {s.substr(0, eq), d};
  } catch (const std::exception&) {
    throw acm::ConfigError(std::string(what) + ": not a real number in '" + s + "'");
  }
}

std::pair<double, double> interval(const std::string& s) {
  const auto c = s.find(':', s.empty() ? 0 : 1);  // allow a leading minus sign
  if (c == std::string::npos) throw acm::ConfigError("--box expects lo:hi, got '" + s + "'");
  try {
    std::size_t u1 = 0, u2 = 0;
    const std::string a = s.substr(0, c), b = s.substr(c + 1);
    const double lo = std::stod(a, &u1), hi = std::stod(b, &u2);
    if (u1 != a.size() || u2 != b.size()) throw std::invalid_argument(s);
    return {lo, hi};
  } catch (const std::exception&) {
    throw acm::ConfigError("--box: cannot parse '" + s + "'");
  }
}

void list_structures() {
  for (const auto& e : acm::registry()) {
    std::cout << e.name;
    for (const auto& [k, v] : e.params) std::cout << " " << k << "=" << v;
    std::cout << "\n    " << e.description << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical identity checks for almost alpha-cosymplectic (kappa, mu, nu)-spaces"};

  std::string config_path, structure, points_path, deform_beta, out, format;
  std::vector<std::string> params, boxes, tols;
  int count = 0;
  std::uint64_t seed = 0;
  double gamma = 0;
  int threads = 0;
  bool list = false;

  app.add_option("--config", config_path, "JSON config file; command-line flags override its fields");
  app.add_option("--structure", structure, "registered structure name (see --list)");
  app.add_option("--param", params, "structure parameter key=value (repeatable)");
  app.add_option("--box", boxes, "sampling interval lo:hi, one per coordinate (repeatable)");
  app.add_option("--count", count, "number of sampled points")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "64-bit sampler seed");
  app.add_option("--points", points_path, "file of explicit points, one per line");
  app.add_option("--tol", tols, "tolerance override name=value (repeatable)");
  app.add_option("--deform-beta", deform_beta, "D-homothetic beta: const:c | exp_z:s | poly_z:c0,c1,...");
  app.add_option("--deform-gamma", gamma, "D-homothetic gamma > 0");
  app.add_option("--out", out, "output path (default stdout)");
  app.add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--threads", threads, "worker threads (0: OpenMP default)")->check(CLI::NonNegativeNumber);
  app.add_flag("--list", list, "list registered structures and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (list) {
    list_structures();
    return 0;
  }

  try {
    acm::RunConfig cfg;
    if (!config_path.empty()) {
      std::ifstream f(config_path);
      if (!f) throw acm::ConfigError("cannot read config file: " + config_path);
      std::stringstream ss;
      ss << f.rdbuf();
      cfg = acm::parse_config_json(ss.str());
    }
    if (!structure.empty()) cfg.structure = structure;
    if (cfg.structure.empty()) throw acm::ConfigError("no structure given (use --structure or --config)");
    for (const auto& p : params) {
      const auto [k, v] = key_value(p, "--param");
      cfg.params[k] = v;
    }
    if (!boxes.empty()) {
      acm::Box b;
      for (const auto& s : boxes) b.bounds.push_back(interval(s));
      cfg.box = b;
    }
    if (app.count("--count")) cfg.count = count;
    if (app.count("--seed")) cfg.seed = seed;
    if (!points_path.empty()) {
      cfg.points = acm::read_points_file(points_path);
      if (cfg.points.empty()) throw acm::ConfigError("points file contains no points: " + points_path);
    }
    for (const auto& t : tols) {
      const auto [k, v] = key_value(t, "--tol");
      cfg.tolerances[k] = v;
    }
    if (!deform_beta.empty()) cfg.deform_beta = deform_beta;
    if (app.count("--deform-gamma")) cfg.deform_gamma = gamma;
    if (!out.empty()) cfg.out = out;
    if (!format.empty()) cfg.format = format;
    cfg.threads = threads;

    const acm::ResidualReport rep = acm::run_suite(cfg);
    if (cfg.out.empty()) {
      std::cout << acm::emit_report(rep, cfg.format);
    } else {
      acm::write_report(rep, cfg.format, cfg.out);
    }
    return rep.pass ? 0 : 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "acm_verify: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "acm_verify: " << e.what() << "\n";
    return 2;
  }
}
