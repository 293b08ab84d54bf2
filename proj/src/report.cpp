#include "acm/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace acm {

using ojson = nlohmann::ordered_json;

std::uint64_t SplitMix64::next() {
  state_ += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

std::vector<Point> sample_points(const Box& box, int count, std::uint64_t seed) {
  if (count < 1) throw ConfigError("count must be at least 1");
  SplitMix64 rng(seed);
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    std::vector<double> c;
    for (const auto& [lo, hi] : box.bounds) c.push_back(lo + (hi - lo) * rng.uniform());
    pts.emplace_back(std::move(c));
  }
  return pts;
}

std::vector<Point> parse_points(const std::string& text) {
  std::vector<Point> pts;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::vector<double> c;
    std::string tok;
    while (ls >> tok) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size() || !std::isfinite(v))
        throw ConfigError("points: line " + std::to_string(lineno) + ": not a real number: '" + tok + "'");
      c.push_back(v);
    }
    if (!c.empty()) pts.emplace_back(std::move(c));
  }
  return pts;
}

std::vector<Point> read_points_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read points file: " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_points(ss.str());
}

namespace {

std::string beta_from_json(const ojson& b) {
  if (b.is_string()) return b.get<std::string>();  // validated when the deformation is built
  if (!b.is_object() || b.size() != 1) throw ConfigError("deformation.beta must be a string or a one-key object");
  const auto& [kind, val] = *b.items().begin();
  std::string out = kind + ":";
  if (val.is_array()) {
    for (std::size_t i = 0; i < val.size(); ++i) {
      if (i) out += ',';
      out += ojson(val[i].get<double>()).dump();
    }
  } else {
    out += ojson(val.get<double>()).dump();
  }
  try {
    return parse_beta(out).to_string();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("deformation.beta: ") + e.what());
  }
}

}  // namespace

RunConfig parse_config_json(const std::string& text) {
  ojson j;
  try {
    j = ojson::parse(text);
  } catch (const ojson::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  RunConfig c;
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "structure") {
        c.structure = v.get<std::string>();
      } else if (key == "params") {
        for (const auto& [k, pv] : v.items()) c.params[k] = pv.get<double>();
      } else if (key == "box") {
        Box b;
        for (const auto& iv : v) b.bounds.emplace_back(iv.at(0).get<double>(), iv.at(1).get<double>());
        c.box = b;
      } else if (key == "count") {
        c.count = v.get<int>();
      } else if (key == "seed") {
        c.seed = v.get<std::uint64_t>();
      } else if (key == "points") {
        for (const auto& pv : v) c.points.emplace_back(pv.get<std::vector<double>>());
      } else if (key == "tolerances") {
        for (const auto& [k, tv] : v.items()) c.tolerances[k] = tv.get<double>();
      } else if (key == "deformation") {
        if (v.is_null()) continue;
        c.deform_beta = beta_from_json(v.at("beta"));
        if (v.contains("gamma")) c.deform_gamma = v.at("gamma").get<double>();
      } else if (key == "out") {
        c.out = v.get<std::string>();
      } else if (key == "format") {
        c.format = v.get<std::string>();
      } else {
        throw ConfigError("unknown config key: " + key);
      }
    }
  } catch (const ojson::exception& e) {
    throw ConfigError(std::string("config has a value of the wrong type: ") + e.what());
  }
  return c;
}

namespace {

void validate_config(const RunConfig& c, const AlmostContactMetricStructure& s) {
  if (c.format != "json" && c.format != "text") throw ConfigError("format must be json or text");
  for (const auto& [name, tol] : c.tolerances) {
    if (name != "deformation" && !identity_index(name)) throw ConfigError("unknown identity in tolerance override: " + name);
    if (!(tol >= 0.0) || !std::isfinite(tol)) throw ConfigError("tolerance for " + name + " must be a finite non-negative real");
  }
  if (!c.points.empty()) {
    for (const Point& p : c.points) {
      if (p.dim() != s.dim) throw ConfigError("point dimension does not match the structure");
      if (s.in_domain && !s.in_domain(p)) throw ConfigError("point outside the structure's domain");
    }
    return;
  }
  if (c.count < 1) throw ConfigError("count must be at least 1");
  if (c.box) {
    if (c.box->dim() != s.dim) throw ConfigError("box has " + std::to_string(c.box->dim()) + " intervals, structure dimension is " + std::to_string(s.dim));
    for (const auto& [lo, hi] : c.box->bounds)
      if (!(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi)) throw ConfigError("box interval must satisfy lo <= hi");
    if (s.box_in_domain && !s.box_in_domain(*c.box)) throw ConfigError("sampling box lies outside the structure's domain");
  }
}

}  // namespace

ResidualReport run_suite(const RunConfig& config) {
  ResidualReport rep;
  rep.config = config;
  const RegistryEntry& entry = registry_entry(config.structure);
  rep.config.params = resolve_params(entry, config.params);
  const AlmostContactMetricStructure s = entry.make(rep.config.params);
  validate_config(config, s);

  if (!config.points.empty()) {
    rep.points = config.points;
  } else {
    if (!rep.config.box) rep.config.box = entry.default_box(rep.config.params);
    rep.points = sample_points(*rep.config.box, config.count, config.seed);
  }

  rep.alpha = measure_alpha(s, rep.points);
  rep.records = sweep_parallel(s, rep.points, rep.alpha.alpha, 1e-5, config.threads);
  rep.identities = aggregate(rep.records, config.tolerances);

  if (config.deform_beta) {
    const DeformationParams d = make_deformation(parse_beta(*config.deform_beta), config.deform_gamma, s.dim);
    const auto t = config.tolerances.find("deformation");
    try {
      rep.deformation = compare_deformed(s, d, rep.points, rep.alpha.alpha, t != config.tolerances.end() ? t->second : 0.0);
    } catch (const std::domain_error& e) {
      throw ConfigError(std::string("deformation: ") + e.what());
    }
  }

  rep.pass = true;
  for (const IdentityResult& r : rep.identities)
    if ((r.status == IdentityStatus::pass || r.status == IdentityStatus::fail) && !r.pass) rep.pass = false;
  if (rep.deformation && !rep.deformation->pass) rep.pass = false;
  return rep;
}

// ---------------------------------------------------------------------------

namespace {

ojson num(double v) { return std::isfinite(v) ? ojson(v) : ojson(nullptr); }
ojson num(const std::optional<double>& v) { return v ? num(*v) : ojson(nullptr); }

ojson point_json(const Point& p) {
  ojson a = ojson::array();
  for (double c : p.coords()) a.push_back(num(c));
  return a;
}

ojson conventions() {
  return {
      {"curvature", "R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z; "
                    "R^l_ijk = d_i Gamma^l_jk - d_j Gamma^l_ik + Gamma^l_im Gamma^m_jk - Gamma^l_jm Gamma^m_ik"},
      {"ricci", "S(Y,Z) = trace(X -> R(X,Y)Z), S_jk = R^i_ijk; Q = g^{-1} S; r = trace Q"},
      {"jacobi_operator", "l X = R(X, xi) xi"},
      {"fundamental_form", "Phi(X,Y) = g(phi X, Y)"},
      {"h", "h = (1/2) L_xi phi; A = -nabla xi"},
      {"wedge", "(eta ^ Phi)_ijk = eta_i Phi_jk + eta_j Phi_ki + eta_k Phi_ij; "
                "(d Phi)_ijk = d_i Phi_jk + d_j Phi_ki + d_k Phi_ij; (d eta)_ij = d_i eta_j - d_j eta_i"},
      {"residual_norm", "max over the g-orthonormal phi-basis of the g-norm (vectors) or absolute value (scalars)"},
      {"finite_differences", "central, step 1e-5, for derivatives of fitted kappa, mu, nu, lambda and of the frame"},
      {"lambda_threshold", kLambdaThreshold},
  };
}

ojson config_json(const ResidualReport& r) {
  const RunConfig& c = r.config;
  ojson params = ojson::object();
  for (const auto& [k, v] : c.params) params[k] = v;
  ojson sampling;
  if (!c.points.empty()) {
    ojson pts = ojson::array();
    for (const Point& p : c.points) pts.push_back(point_json(p));
    sampling = {{"points", pts}};
  } else {
    ojson box = ojson::array();
    for (const auto& [lo, hi] : c.box->bounds) box.push_back({lo, hi});
    sampling = {{"generator", "splitmix64"}, {"box", box}, {"count", c.count}, {"seed", c.seed}};
  }
  ojson tol = ojson::object();
  for (const auto& [k, v] : c.tolerances) tol[k] = v;
  ojson def = nullptr;
  if (c.deform_beta) def = {{"beta", *c.deform_beta}, {"gamma", c.deform_gamma}};
  return {{"structure", c.structure}, {"params", params}, {"sampling", sampling},
          {"tolerances", tol},        {"deformation", def}, {"format", c.format}};
}

ojson laws_json(const DeformationLawResiduals& L) {
  return {{"h", num(L.h)},
          {"A", num(L.A)},
          {"connection", num(L.connection)},
          {"curvature", num(L.curvature)},
          {"fundamental_form", num(L.fundamental_form)},
          {"alpha", num(L.alpha)}};
}

ojson variants_json(const std::vector<VariantComparison>& vs) {
  ojson a = ojson::array();
  for (const auto& v : vs) a.push_back({{"name", v.name}, {"max_error", num(v.max_error)}, {"matches", v.matches}});
  return a;
}

ojson deformation_json(const DeformationReport& d) {
  ojson pts = ojson::array();
  for (const DeformedPoint& p : d.points) {
    const KmnPrediction& k = p.predicted;
    const NullityFit& f = p.deformed_fit;
    pts.push_back({
        {"point", point_json(p.point)},
        {"beta", num(p.beta.beta)},
        {"xi_beta", num(p.beta.xi_beta)},
        {"fitted", {{"kappa", num(f.kappa)}, {"mu", num(f.mu)}, {"nu", num(f.nu)}}},
        {"predicted",
         {{"kappa_proposition", num(k.kappa_proposition)},
          {"kappa_theorem_proof", num(k.kappa_theorem_proof)},
          {"kappa_derived", num(k.kappa_derived)},
          {"mu", num(k.mu)},
          {"nu", num(k.nu)}}},
        {"kappa_discrepancy",
         {{"proposition", num(f.kappa - k.kappa_proposition)},
          {"theorem_proof", num(f.kappa - k.kappa_theorem_proof)},
          {"derived", num(f.kappa - k.kappa_derived)}}},
    });
  }
  ojson first = ojson::array();
  for (const auto& t : d.theorem.first_point)
    first.push_back({{"name", t.name}, {"kappa", num(t.kappa)}, {"mu", num(t.mu)}, {"nu", num(t.nu)}});
  ojson theorem = {{"applicable", d.theorem.applicable},
                   {"reason", d.theorem.reason},
                   {"beta_matches", d.theorem.beta_matches},
                   {"first_point", first},
                   {"variants", variants_json(d.theorem.variants)},
                   {"kappa_variant_matches", d.theorem.matches}};
  return {{"beta", d.beta_spec},
          {"gamma", d.gamma},
          {"tolerance", d.tolerance},
          {"alpha", num(d.alpha)},
          {"alpha_deformed", num(d.alpha_deformed)},
          {"alpha_deformed_residual", num(d.alpha_deformed_residual)},
          {"r_eta_beta", num(d.r_eta_beta)},
          {"laws", laws_json(d.max_laws)},
          {"mu_error", num(d.mu_error)},
          {"nu_error", num(d.nu_error)},
          {"kappa_variants", variants_json(d.kappa_variants)},
          {"kappa_variant_matches", d.kappa_variant_matches},
          {"theorem_transform", theorem},
          {"points", pts},
          {"pass", d.pass}};
}

ojson report_json(const ResidualReport& r) {
  ojson fits = ojson::array();
  for (const PointRecord& rec : r.records) {
    if (rec.fit) {
      const NullityFit& f = *rec.fit;
      fits.push_back({{"point", point_json(rec.point)},
                      {"kappa", num(f.kappa)},
                      {"mu", num(f.mu)},
                      {"nu", num(f.nu)},
                      {"lambda", num(f.lambda)},
                      {"residual_501", num(f.residual_501)},
                      {"flags", f.flags}});
    } else {
      fits.push_back({{"point", point_json(rec.point)},
                      {"kappa", nullptr},
                      {"mu", nullptr},
                      {"nu", nullptr},
                      {"lambda", nullptr},
                      {"residual_501", nullptr},
                      {"flags", {"error: " + rec.error}}});
    }
  }
  ojson ids = ojson::array();
  for (const IdentityResult& i : r.identities) {
    const bool skipped = i.status == IdentityStatus::skipped;
    ids.push_back({{"name", i.name},
                   {"max_residual", skipped ? ojson(nullptr) : num(i.max_residual)},
                   {"tolerance", i.tolerance},
                   {"pass", skipped ? ojson(nullptr) : ojson(i.pass)},
                   {"worst_point", i.worst_point ? point_json(*i.worst_point) : ojson(nullptr)},
                   {"status", to_string(i.status)},
                   {"note", i.note}});
  }
  const AlphaDetection& a = r.alpha;
  return {{"version", kEngineVersion},
          {"config", config_json(r)},
          {"conventions", conventions()},
          {"alpha",
           {{"value", num(a.alpha)},
            {"spread", num(a.spread)},
            {"d_eta_residual", num(a.d_eta_residual)},
            {"d_phi_residual", num(a.d_phi_residual)},
            {"closed", a.closed},
            {"constant", a.constant},
            {"message", a.message}}},
          {"fits", fits},
          {"identities", ids},
          {"deformation", r.deformation ? deformation_json(*r.deformation) : ojson(nullptr)},
          {"pass", r.pass}};
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, v);
  return buf;
}

std::string fmt_opt(const std::optional<double>& v) { return v ? fmt("%12.6g", *v) : std::string("           -"); }

std::string point_text(const Point& p) {
  std::string s = "(";
  for (int i = 0; i < p.dim(); ++i) s += (i ? ", " : "") + fmt("%.6g", p[i]);
  return s + ")";
}

std::string report_text(const ResidualReport& r) {
  std::ostringstream o;
  o << "acm_verify " << kEngineVersion << "\n";
  o << "structure   " << r.config.structure;
  for (const auto& [k, v] : r.config.params) o << " " << k << "=" << fmt("%g", v);
  o << "\npoints      " << r.points.size();
  if (r.config.points.empty()) o << " (splitmix64 seed " << r.config.seed << ")";
  o << "\nalpha       " << fmt("%.12g", r.alpha.alpha) << "  spread " << fmt("%.3g", r.alpha.spread);
  if (!r.alpha.message.empty()) o << "  [" << r.alpha.message << "]";
  o << "\n\nfits\n";
  o << "  point                                   kappa           mu           nu       lambda  residual_501\n";
  for (const PointRecord& rec : r.records) {
    std::string pt = point_text(rec.point);
    pt.resize(std::max<std::size_t>(pt.size(), 36), ' ');
    o << "  " << pt;
    if (!rec.fit) {
      o << "  error: " << rec.error << "\n";
      continue;
    }
    const NullityFit& f = *rec.fit;
    o << fmt("%12.6g", f.kappa) << " " << fmt_opt(f.mu) << " " << fmt_opt(f.nu) << " " << fmt("%12.6g", f.lambda) << " "
      << fmt("%12.3e", f.residual_501);
    for (const auto& flag : f.flags) o << "  " << flag;
    o << "\n";
  }
  o << "\nidentities\n";
  for (const IdentityResult& i : r.identities) {
    std::string name = i.name;
    name.resize(std::max<std::size_t>(name.size(), 28), ' ');
    std::string st = to_string(i.status);
    st.resize(11, ' ');
    o << "  " << name << st << (i.status == IdentityStatus::skipped ? std::string("          -") : fmt("%11.3e", i.max_residual)) << "  tol " << fmt("%.0e", i.tolerance);
    if (!i.note.empty()) o << "  " << i.note;
    o << "\n";
  }
  if (r.deformation) {
    const DeformationReport& d = *r.deformation;
    o << "\ndeformation beta=" << d.beta_spec << " gamma=" << fmt("%g", d.gamma) << " tol " << fmt("%.0e", d.tolerance)
      << "  " << (d.pass ? "pass" : "FAIL") << "\n";
    if (d.alpha_deformed) o << "  alpha'          " << fmt("%.12g", *d.alpha_deformed) << "\n";
    const DeformationLawResiduals& L = d.max_laws;
    o << "  laws            h " << fmt("%.2e", L.h) << "  A " << fmt("%.2e", L.A) << "  connection "
      << fmt("%.2e", L.connection) << "  curvature " << fmt("%.2e", L.curvature) << "  Phi "
      << fmt("%.2e", L.fundamental_form) << "  alpha " << fmt("%.2e", L.alpha) << "\n";
    o << "  mu' error       " << fmt("%.3e", d.mu_error) << "\n  nu' error       " << fmt("%.3e", d.nu_error) << "\n";
    for (const auto& v : d.kappa_variants)
      o << "  kappa' " << v.name << std::string(16 - std::min<std::size_t>(16, v.name.size()), ' ')
        << fmt("%.3e", v.max_error) << (v.matches ? "  matches" : "") << "\n";
    o << "  theorem transform: ";
    if (!d.theorem.applicable)
      o << "not applicable (" << d.theorem.reason << ")\n";
    else if (!d.theorem.beta_matches)
      o << "beta differs from sqrt(-(kappa + alpha^2))\n";
    else {
      for (const auto& v : d.theorem.variants) o << v.name << " " << fmt("%.2e", v.max_error) << (v.matches ? "* " : " ");
      o << "\n";
    }
  }
  o << "\noverall " << (r.pass ? "PASS" : "FAIL") << "\n";
  return o.str();
}

}  // namespace

std::string emit_report(const ResidualReport& report, const std::string& format) {
  if (format == "json") return report_json(report).dump(2) + "\n";
  if (format == "text") return report_text(report);
  throw ConfigError("format must be json or text");
}

void write_report(const ResidualReport& report, const std::string& format, const std::string& path) {
  const std::string bytes = emit_report(report, format);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write report to " + path);
  f << bytes;
  f.flush();
  if (!f) throw std::runtime_error("cannot write report to " + path);
}

}  // namespace acm
