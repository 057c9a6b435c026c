#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "leakywire/errors.hpp"
#include "run_config.hpp"

using namespace leakywire;
using namespace leakywire::cli;

namespace {

struct Flags {
  std::string config_path;
  double alpha = 0.0;
  std::vector<std::string> dots;
  std::vector<double> betas;
  std::string format, output;
  double abs_tol = 0.0, rel_tol = 0.0;
  int max_subdivisions = 0;

  int scan_points = 0;
  std::string x1, x2;
  std::string a;
  bool continuation = false;
  std::string region;
  std::string lambda;
  int lambda_points = 0;
  std::vector<double> b;
  std::string b_range;
  std::string normalization;
};

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config_path, "JSON config (a RunConfig document or a previous --format json output)");
  sub->add_option("--alpha", f.alpha, "line coupling alpha > 0");
  sub->add_option("--dot", f.dots, "dot position x1,x2 (repeatable)");
  sub->add_option("--beta", f.betas, "dot coupling beta (repeatable; one value is used for every dot)");
  sub->add_option("--format", f.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--output,-o", f.output, "output file (default stdout)");
  sub->add_option("--abs-tol", f.abs_tol, "quadrature absolute tolerance");
  sub->add_option("--rel-tol", f.rel_tol, "quadrature relative tolerance");
  sub->add_option("--max-subdivisions", f.max_subdivisions, "quadrature interval budget");
}

Point parse_dot(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw ConfigError("--dot: expected x1,x2, got '" + s + "'");
  try {
    std::size_t u1 = 0, u2 = 0;
    const std::string a = s.substr(0, comma), b = s.substr(comma + 1);
    const double x1 = std::stod(a, &u1), x2 = std::stod(b, &u2);
    if (u1 != a.size() || u2 != b.size()) throw std::invalid_argument(s);
    return {x1, x2};
  } catch (const std::logic_error&) {
    throw ConfigError("--dot: expected x1,x2, got '" + s + "'");
  }
}

SecondSheetRegion parse_region(const std::string& s) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string item;
  try {
    while (std::getline(ss, item, ':')) v.push_back(std::stod(item));
  } catch (const std::logic_error&) {
    v.clear();
  }
  if (v.size() != 3) throw ConfigError("--region: expected re_min:re_max:depth, got '" + s + "'");
  return {v[0], v[1], v[2]};
}

RunConfig build_config(const CLI::App& sub, const Flags& f) {
  RunConfig cfg;
  if (!f.config_path.empty()) {
    std::ifstream in(f.config_path);
    if (!in) throw ConfigError("cannot read config file '" + f.config_path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    cfg = config_from_json_text(buf.str(), f.config_path);
  }
  auto given = [&](const char* name) { return sub.count(name) > 0; };
  if (given("--alpha")) cfg.model.alpha = f.alpha;
  if (given("--dot")) {
    cfg.model.dots.clear();
    for (const auto& d : f.dots) cfg.model.dots.push_back(parse_dot(d));
  }
  if (given("--beta")) cfg.model.betas = f.betas;
  if (cfg.model.betas.size() == 1 && cfg.model.dots.size() > 1)
    cfg.model.betas.assign(cfg.model.dots.size(), cfg.model.betas[0]);
  if (given("--format")) cfg.format = f.format;
  if (given("--output")) cfg.output = f.output;
  if (given("--abs-tol")) cfg.quad.abs_tol = f.abs_tol;
  if (given("--rel-tol")) cfg.quad.rel_tol = f.rel_tol;
  if (given("--max-subdivisions")) cfg.quad.max_subdivisions = f.max_subdivisions;

  const std::string name = sub.get_name();
  if (name == "spectrum" && given("--scan-points")) cfg.scan_points = f.scan_points;
  if (name == "eigenfunction") {
    if (given("--x1")) cfg.x1_range = Range::parse(f.x1, "--x1");
    if (given("--x2")) cfg.x2_range = Range::parse(f.x2, "--x2");
  }
  if (name == "resonance") {
    if (given("--a")) cfg.a_range = Range::parse(f.a, "--a");
    if (given("--continuation")) cfg.continuation = f.continuation;
  }
  if ((name == "resonance" || name == "twopoint") && given("--region"))
    cfg.region = parse_region(f.region);
  if (name == "scatter") {
    if (given("--lambda")) cfg.lambda_range = Range::parse(f.lambda, "--lambda");
    if (given("--lambda-points")) cfg.lambda_points = f.lambda_points;
  }
  if (name == "twopoint") {
    if (given("--a")) {
      const Range r = Range::parse(f.a, "--a");
      if (r.count != 1) throw ConfigError("twopoint --a takes a single distance");
      cfg.model.dots = {{0.0, r.from}};
      if (cfg.model.betas.empty()) throw ConfigError("twopoint needs --beta");
      cfg.model.betas.resize(1);
    }
    if (given("--b")) cfg.b_values = f.b;
    if (given("--b-range")) cfg.b_values = Range::parse(f.b_range, "--b-range").values();
    if (given("--normalization")) cfg.normalization = f.normalization;
  }
  // resonance with --a and --beta but no --dot: the dot sits at (0, a).
  if (name == "resonance" && cfg.model.dots.empty() && cfg.a_range && cfg.model.betas.size() == 1)
    cfg.model.dots = {{0.0, cfg.a_range->from}};
  cfg.validate();
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bound states, resonances and guided-channel scattering for a leaky wire with point interactions"};
  app.require_subcommand(1);
  Flags f;

  auto* spectrum = app.add_subcommand("spectrum", "isolated eigenvalues below -alpha^2/4 with null vectors");
  spectrum->add_option("--scan-points", f.scan_points, "log-grid points of the eigenvalue scan");

  auto* eigenfunction = app.add_subcommand("eigenfunction", "bound-state eigenfunction of one dot on a grid");
  eigenfunction->add_option("--x1", f.x1, "x1 grid from:to:count");
  eigenfunction->add_option("--x2", f.x2, "x2 grid from:to:count");

  auto* resonance = app.add_subcommand("resonance", "second-sheet pole z(b) of one dot over a range of distances");
  resonance->add_option("--a", f.a, "distance(s) to the line, from:to:count");
  resonance->add_flag("--continuation", f.continuation, "seed each solve with the previous pole (sequential)");
  resonance->add_option("--region", f.region, "search region re_min:re_max:depth");

  auto* scatter = app.add_subcommand("scatter", "reflection and transmission amplitudes over a lambda grid");
  scatter->add_option("--lambda", f.lambda, "lambda grid from:to:count inside (-alpha^2/4, 0)");
  scatter->add_option("--lambda-points", f.lambda_points, "points of the default grid over the window");

  auto* twopoint = app.add_subcommand("twopoint", "two mirror dots with betas (beta, beta + b): pole z2(b)");
  twopoint->add_option("--a", f.a, "dots at (0, a) and (0, -a)");
  twopoint->add_option("--b", f.b, "coupling offset b (repeatable)");
  twopoint->add_option("--b-range", f.b_range, "coupling offsets from:to:count");
  twopoint->add_option("--normalization", f.normalization, "consistent | bare_k0")
      ->check(CLI::IsMember({"consistent", "bare_k0"}));
  twopoint->add_option("--region", f.region, "search region re_min:re_max:depth");

  auto* selftest = app.add_subcommand("selftest", "run the reference-implementation cross checks");

  for (auto* sub : {spectrum, eigenfunction, resonance, scatter, twopoint, selftest}) add_common(sub, f);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfig;
  }

  const CLI::App* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();
  try {
    const RunConfig cfg = build_config(*sub, f);
    const CommandResult result = run_command(command, cfg);
    std::ofstream file;
    if (!cfg.output.empty()) {
      file.open(cfg.output);
      if (!file) throw ConfigError("cannot write output file '" + cfg.output + "'");
    }
    std::ostream& out = cfg.output.empty() ? std::cout : file;
    if (cfg.format == "json")
      write_json(out, command, cfg, result);
    else
      write_csv(out, result);
    if (result.failed_rows > 0)
      std::cerr << command << ": " << result.failed_rows << " point(s) failed; output is partial\n";
    return result.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
}
