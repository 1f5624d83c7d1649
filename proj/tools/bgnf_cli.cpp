// bgnf: normal forms, Hopf-link analysis and numerical cross-checks from
// the command line.
//
//   bgnf normalize --model henon-heiles --order 4 --format json
//   bgnf analyze --model hill --order 6
//   bgnf verify --model hill --energies 1e-3,2e-3,4e-3 --horizon 6
//
// Exit codes: 0 success, 1 acceptance breach in --ci mode, 2 input error,
// 3 precondition failure, 4 internal error.

#include "bgnf/hopf/report.hpp"
#include "bgnf/models.hpp"
#include "bgnf/numeric/report.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <thread>

namespace {

using bgnf::ordered_json;

struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  std::string model;
  std::string input;
  int order = 0;
  int series_order = -1;
  std::vector<double> energies{1e-3, 2e-3, 4e-3};
  std::string alpha = "3", varpi = "1", alpha1 = "1", alpha2 = "2";
  std::string resonance;
  std::string gauge = "imD";
  std::string route;
  double tol_shoot = 1e-10;
  double tol_frame = 1e-13;
  int horizon = 6;
  int jobs = 0;
  std::string format = "text";
  std::string out;
  bool ci = false;
  double ci_max_diff = 5e-4;
  double ci_min_q = 1.5;
  std::string flow_model;
};

/// "3", "-1/2", "sqrt(2)" or a decimal (which selects the float field).
bgnf::Scalar parse_value(const std::string& s, const std::string& flag) {
  const std::string t = bgnf::detail::trim(s);
  try {
    if (t.rfind("sqrt(", 0) == 0 && t.back() == ')') {
      return bgnf::Scalar::sqrt_of(bgnf::detail::parse_rational(t.substr(5, t.size() - 6)));
    }
    if (t.find_first_of(".eE") == std::string::npos) return bgnf::Scalar(bgnf::detail::parse_rational(t));
    std::size_t used = 0;
    const double v = std::stod(t, &used);
    if (used != t.size()) throw std::invalid_argument(t);
    return bgnf::Scalar::from_double(v);
  } catch (const std::exception&) {
    throw input_error("cannot read " + flag + " value '" + s + "'");
  }
}

std::optional<bgnf::ResonanceVector> parse_resonance(const std::string& s) {
  if (s.empty()) return std::nullopt;
  if (s == "none") return bgnf::ResonanceVector::nonresonant();
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw input_error("--resonance expects 'none' or 'm1,m2'");
  try {
    return bgnf::ResonanceVector::pair(std::stoi(s.substr(0, comma)), std::stoi(s.substr(comma + 1)));
  } catch (const std::logic_error&) {
    throw input_error("cannot read --resonance '" + s + "'");
  }
}

int default_order(const std::string& model) { return model == "hill" ? 6 : 4; }

bgnf::ModelBundle bundle_from_input(const RunConfig& cfg, int order) {
  std::ifstream in(cfg.input);
  if (!in) throw input_error("cannot open " + cfg.input);
  bgnf::Polynomial h;
  try {
    h = bgnf::to_real(bgnf::read_polynomial(in));
  } catch (const bgnf::parse_error& e) {
    throw input_error(cfg.input + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw input_error(cfg.input + ": " + e.what());
  }
  bgnf::ModelBundle m;
  m.name = "input";
  m.order = std::max(order, h.order());
  m.polynomial_exact = true;
  m.h = h.with_order(m.order);
  m.alpha = bgnf::frequencies_of(m.h);
  m.res = bgnf::resonance_pair(m.alpha, parse_resonance(cfg.resonance));
  if (bgnf::check_plane_invariance(m.h, bgnf::Plane::y2x2)) m.invariant_plane = bgnf::Plane::y2x2;
  if (m.alpha.a1 == m.alpha.a2) {
    for (int p = 3; p <= 8 && !m.zp; ++p) {
      if (bgnf::check_zp_invariance(m.h, p)) m.zp = p;
    }
  }
  m.closed_form = bgnf::numeric::from_polynomial(m.h);
  return m;
}

bgnf::ModelBundle builtin_model(const RunConfig& cfg, const std::string& model, int order) {
  if (model == "henon-heiles") return bgnf::henon_heiles(order);
  if (model == "hill") return bgnf::hill_regularized(order);
  if (model == "quadratic") {
    return bgnf::quadratic_model(parse_value(cfg.alpha1, "--alpha1"), parse_value(cfg.alpha2, "--alpha2"),
                                 parse_resonance(cfg.resonance));
  }
  if (model == "isosceles") {
    return bgnf::isosceles(parse_value(cfg.alpha, "--alpha"), parse_value(cfg.varpi, "--varpi"), order);
  }
  throw input_error("unknown model '" + model + "' (henon-heiles, hill, isosceles, quadratic)");
}

bgnf::ModelBundle make_bundle(const RunConfig& cfg, int order) {
  if (!cfg.input.empty()) return bundle_from_input(cfg, order);
  return builtin_model(cfg, cfg.model, order);
}

ordered_json header(const RunConfig& cfg, const bgnf::ModelBundle& m, int order) {
  ordered_json j;
  j["version"] = bgnf::tool_version;
  j["command"] = cfg.command;
  if (cfg.input.empty()) {
    j["model"] = m.name;
  } else {
    j["input"] = cfg.input;
  }
  j["alpha"] = {m.alpha.a1.str(), m.alpha.a2.str()};
  j["resonance"] = bgnf::resonance_json(m.res);
  j["N"] = order;
  j["tolerances"] = {{"shoot", cfg.tol_shoot}, {"frame", cfg.tol_frame}, {"float_digits", bgnf::float_digits()}};
  return j;
}

std::string text_header(const ordered_json& h) {
  std::ostringstream os;
  os << "# bgnf " << h["version"].get<std::string>() << " " << h["command"].get<std::string>() << " "
     << (h.contains("model") ? h["model"].get<std::string>() : h["input"].get<std::string>()) << "\n";
  os << "# tolerances: shoot=" << h["tolerances"]["shoot"].get<double>()
     << " frame=" << h["tolerances"]["frame"].get<double>()
     << " float_digits=" << h["tolerances"]["float_digits"].get<unsigned>() << "\n";
  return os.str();
}

int run(const RunConfig& cfg, std::ostream& out) {
  const int order = cfg.order > 0 ? cfg.order : (cfg.input.empty() ? default_order(cfg.model) : 4);
  const bgnf::ModelBundle m = make_bundle(cfg, order);
  const std::string route_name = !cfg.route.empty() ? cfg.route : cfg.command == "normalize" ? "none" : "psi";
  const bgnf::Route route = bgnf::parse_route(route_name);
  const bgnf::NormalFormResult nf = bgnf::normal_form_for(m, order, route, cfg.gauge);
  ordered_json rep = header(cfg, m, order);
  rep["route"] = route_name;
  rep["gauge"] = nf.gauge;

  if (cfg.command == "normalize") {
    const bgnf::VerifyReport vr = bgnf::verify(nf, m.h.with_order(order));
    if (cfg.format == "json") {
      rep["normal_form"] = bgnf::normal_form_json(nf, vr);
      out << rep.dump(2) << "\n";
    } else {
      out << text_header(rep) << bgnf::normal_form_text(nf, vr);
    }
    return vr.ok() ? 0 : 4;
  }

  const bgnf::HopfAnalysis an = bgnf::analyze(nf, bgnf::symmetry_info(m), cfg.series_order);
  if (cfg.command == "analyze") {
    if (cfg.format == "json") {
      ordered_json body = bgnf::analysis_json(an);
      for (auto it = body.begin(); it != body.end(); ++it) rep[it.key()] = it.value();
      out << rep.dump(2) << "\n";
    } else {
      out << text_header(rep) << bgnf::analysis_text(an);
    }
    return 0;
  }

  // verify
  bgnf::numeric::ReportOptions ro;
  ro.shooting.tol = cfg.tol_shoot;
  ro.rotation.integration.abs_tol = ro.rotation.integration.rel_tol = cfg.tol_frame;
  ro.rotation.max_log2 = std::max(cfg.horizon, ro.rotation.min_log2);
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  ro.workers = cfg.jobs > 0 ? cfg.jobs : int(std::min<std::size_t>(hw, cfg.energies.size()));
  // The flow can come from another model's closed form, e.g. to test a
  // hand-edited truncation against the true dynamics.
  const bgnf::numeric::Evaluable flow =
      cfg.flow_model.empty() ? m.closed_form : builtin_model(cfg, cfg.flow_model, order).closed_form;
  if (!cfg.flow_model.empty()) rep["flow_model"] = cfg.flow_model;
  const auto table = bgnf::numeric::series_vs_numeric_report(flow, nf, cfg.energies, an.K, ro);

  int status = 0;
  std::vector<std::string> breaches;
  if (cfg.ci && !table.rows.empty()) {
    const auto& r0 = table.rows.front();
    for (auto [name, d] : {std::pair{"rho1", r0.rho1_num - r0.rho1_series}, std::pair{"rho2", r0.rho2_num - r0.rho2_series}}) {
      if (!(std::abs(d) <= cfg.ci_max_diff)) breaches.push_back(std::string(name) + " difference " + std::to_string(d));
    }
    const auto& f = table.fit_product;
    if (f.valid && f.q < cfg.ci_min_q) breaches.push_back("product fit q = " + std::to_string(f.q));
    status = breaches.empty() ? 0 : 1;
  }
  if (cfg.format == "json") {
    ordered_json rows = ordered_json::array();
    for (const auto& r : table.rows) {
      rows.push_back({{"E", r.E},
                      {"rho1_num", r.rho1_num},
                      {"rho1_series", r.rho1_series},
                      {"rho2_num", r.rho2_num},
                      {"rho2_series", r.rho2_series},
                      {"product_num", r.product_num},
                      {"product_series", r.product_series},
                      {"err_bar", r.err_bar},
                      {"period1", r.orbit1.period},
                      {"period2", r.orbit2.period}});
    }
    rep["series_order"] = table.series_order;
    rep["horizon_periods"] = 1 << ro.rotation.max_log2;
    rep["rows"] = rows;
    auto fit = [](const bgnf::numeric::PowerFit& f) { return f.valid ? ordered_json(f.q) : ordered_json(nullptr); };
    rep["fit_q"] = {{"rho1", fit(table.fit_rho1)}, {"rho2", fit(table.fit_rho2)}, {"product", fit(table.fit_product)}};
    if (cfg.ci) rep["ci"] = {{"passed", breaches.empty()}, {"breaches", breaches}};
    out << rep.dump(2) << "\n";
  } else {
    out << text_header(rep) << "# series order K = " << table.series_order << ", horizon " << (1 << ro.rotation.max_log2)
        << " periods\n"
        << table.tsv();
    for (const auto& b : breaches) out << "# CI breach: " << b << "\n";
  }
  return status;
}

void add_common(CLI::App* sub, RunConfig& cfg) {
  auto* src = sub->add_option_group("source");
  src->add_option("--model", cfg.model, "henon-heiles | hill | isosceles | quadratic");
  src->add_option("--input", cfg.input, "polynomial text file (real or complex chart)");
  src->require_option(1);
  sub->add_option("--order", cfg.order, "normalization order N (default: 6 for hill, else 4)");
  sub->add_option("--series-order", cfg.series_order, "series order K (default N/2 - 1)");
  sub->add_option("--alpha", cfg.alpha, "isosceles mass parameter")->capture_default_str();
  sub->add_option("--varpi", cfg.varpi, "isosceles angular-momentum parameter")->capture_default_str();
  sub->add_option("--alpha1", cfg.alpha1, "quadratic model frequency 1")->capture_default_str();
  sub->add_option("--alpha2", cfg.alpha2, "quadratic model frequency 2")->capture_default_str();
  sub->add_option("--resonance", cfg.resonance, "declared resonance: none | m1,m2");
  sub->add_option("--gauge", cfg.gauge, "imD | paper")->capture_default_str();
  sub->add_option("--route", cfg.route,
                  "psi | rotate | none, for equal frequencies with Z_p symmetry (default: none for normalize, "
                  "psi otherwise)");
  sub->add_option("--format", cfg.format, "text | json")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  sub->add_option("--out", cfg.out, "write the report to this file");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Birkhoff-Gustavson normal forms and Hopf-link rotation numbers"};
  app.set_version_flag("--version", std::string(bgnf::tool_version));
  app.require_subcommand(1);
  RunConfig cfg;
  for (const char* name : {"normalize", "analyze", "verify"}) {
    const char* desc = std::string(name) == "normalize" ? "compute and verify the normal form"
                       : std::string(name) == "analyze" ? "coefficients, rotation-number series and theorem verdict"
                                                         : "numerical rotation numbers against the series";
    auto* sub = app.add_subcommand(name, desc);
    add_common(sub, cfg);
    if (std::string(name) == "verify") {
      sub->add_option("--energies", cfg.energies, "energy grid")->delimiter(',')->capture_default_str();
      sub->add_option("--horizon", cfg.horizon, "longest averaging horizon is 2^horizon periods")->capture_default_str();
      sub->add_option("--tol-shoot", cfg.tol_shoot, "periodicity residual")->capture_default_str();
      sub->add_option("--tol-frame", cfg.tol_frame, "integrator tolerance along the orbit")->capture_default_str();
      sub->add_option("--jobs", cfg.jobs, "worker threads (default: one per energy)");
      sub->add_option("--flow-model", cfg.flow_model, "integrate this model's closed form instead of the source");
      sub->add_flag("--ci", cfg.ci, "exit 1 when the acceptance comparisons fail");
      sub->add_option("--ci-max-diff", cfg.ci_max_diff, "max |rho_num - rho_series| at the first energy")->capture_default_str();
      sub->add_option("--ci-min-q", cfg.ci_min_q, "min fitted order of the product difference")->capture_default_str();
    }
    sub->final_callback([&cfg, name] { cfg.command = name; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    std::ostringstream buf;
    const int rc = run(cfg, buf);
    if (cfg.out.empty()) {
      std::cout << buf.str();
    } else {
      std::ofstream f(cfg.out);
      if (!f) throw input_error("cannot write " + cfg.out);
      f << buf.str();
    }
    return rc;
  } catch (const input_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const bgnf::precondition_error& e) {
    std::cerr << "precondition failed: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
}
