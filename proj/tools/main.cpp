#include "saddlepep/certify.hpp"
#include "saddlepep/json_io.hpp"

#include "svg.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

namespace {

using namespace pep;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitNoCertification = 2;
constexpr int kExitUsage = 64;
constexpr int kExitData = 65;

ConstraintSetId parse_set(const std::string& s) {
  if (s == "def" || s == "definition") return ConstraintSetId::Definition;
  if (s == "reduced") return ConstraintSetId::Reduced;
  if (s == "full") return ConstraintSetId::Full;
  if (s == "cocoercive" || s == "cc") return ConstraintSetId::Cocoercive;
  throw CLI::ValidationError("--set", "unknown constraint set '" + s + "'");
}

Method parse_method(const std::string& s) {
  if (s == "sim") return Method::SimGda;
  if (s == "alt") return Method::AltGda;
  throw CLI::ValidationError("--method", "unknown method '" + s + "'");
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ','))
    if (!part.empty()) parts.push_back(part);
  return parts;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file " + path);
  out << text;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input file " + path);
  Json j;
  in >> j;
  return j;
}

// --config FILE holds a JSON object mirroring long flag names; explicit
// flags win because config-derived arguments are injected first.
std::vector<std::string> apply_config(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string config_path;
  for (size_t i = 0; i + 1 < args.size(); ++i)
    if (args[i] == "--config") config_path = args[i + 1];
  if (config_path.empty()) return args;

  const Json cfg = read_json_file(config_path);
  std::vector<std::string> merged;
  if (!args.empty()) merged.push_back(args[0]);  // subcommand first
  for (auto it = cfg.begin(); it != cfg.end(); ++it) {
    merged.push_back("--" + it.key());
    if (it.value().is_boolean()) {
      if (!it.value().get<bool>()) merged.pop_back();
      continue;
    }
    if (it.value().is_string())
      merged.push_back(it.value().get<std::string>());
    else
      merged.push_back(it.value().dump());
  }
  for (size_t i = args.empty() ? 0 : 1; i < args.size(); ++i) {
    if (args[i] == "--config") {
      ++i;  // consumed here, hidden from CLI11
      continue;
    }
    merged.push_back(args[i]);
  }
  return merged;
}

SolveOptions solve_options(const std::string& backend, double tol) {
  SolveOptions opts = options_from_env();
  if (backend == "ipm") opts.backend = SdpBackend::InteriorPoint;
  if (backend == "dr") opts.backend = SdpBackend::ProjectionFallback;
  if (tol > 0.0) opts.tol = tol;
  return opts;
}

std::string csv_sweep(const std::vector<std::pair<ConstraintSetId,
                                                  std::vector<RateResult>>>&
                          blocks,
                      Method method, double kappa) {
  std::string out = "method,set,kappa,eta,rho\n";
  char line[160];
  for (const auto& [set_id, rows] : blocks)
    for (const RateResult& r : rows) {
      std::snprintf(line, sizeof(line), "%s,%s,%.17g,%.17g,%.17g\n",
                    to_string(method).c_str(), to_string(set_id).c_str(), kappa,
                    r.eta, r.rho);
      out += line;
    }
  return out;
}

int cmd_certify(const std::string& method, const std::string& set, double kappa,
                double eta, double bisect_tol, const std::string& backend,
                double tol, const std::string& out_path) {
  CertifyOptions opts;
  opts.bisect_tol = bisect_tol;
  opts.solve = solve_options(backend, tol);
  const RateResult r =
      min_rho({parse_method(method), eta}, parse_set(set), kappa, opts);
  write_text(out_path, to_json(r).dump(2) + "\n");
  return r.certificate.has_value() && r.rho < 1.0 ? kExitOk
                                                  : kExitNoCertification;
}

int cmd_sweep(const std::string& method, const std::string& sets, double kappa,
              double eta_min, double eta_max, int eta_steps, double bisect_tol,
              const std::string& backend, double tol, int jobs,
              const std::string& out_path, const std::string& svg_path) {
  CertifyOptions opts;
  opts.bisect_tol = bisect_tol;
  opts.solve = solve_options(backend, tol);
  opts.jobs = jobs;
  const std::vector<double> grid = default_eta_grid(eta_steps, eta_min, eta_max);
  const Method m = parse_method(method);

  std::vector<std::pair<ConstraintSetId, std::vector<RateResult>>> blocks;
  for (const std::string& s : split_csv(sets))
    blocks.push_back(
        {parse_set(s), sweep_eta(m, parse_set(s), kappa, grid, opts)});

  write_text(out_path, csv_sweep(blocks, m, kappa));
  if (!svg_path.empty()) {
    std::vector<tools::SvgSeries> series;
    for (const auto& [set_id, rows] : blocks) {
      tools::SvgSeries s;
      s.label = to_string(set_id);
      for (const RateResult& r : rows) {
        s.x.push_back(r.eta);
        s.y.push_back(r.rho);
      }
      series.push_back(std::move(s));
    }
    char title[128];
    std::snprintf(title, sizeof(title),
                  "%s-GDA: certified rate vs step size (kappa = %g)",
                  m == Method::SimGda ? "Sim" : "Alt", kappa);
    tools::write_line_chart(svg_path, title, "step size", "certified rho",
                            series);
  }
  return kExitOk;
}

int cmd_scaling(const std::string& method, const std::string& set,
                const std::string& kappas_csv, double bisect_tol,
                const std::string& backend, double tol, int jobs,
                const std::string& out_path) {
  CertifyOptions opts;
  opts.bisect_tol = bisect_tol;
  opts.solve = solve_options(backend, tol);
  opts.jobs = jobs;
  std::vector<double> kappas;
  for (const std::string& k : split_csv(kappas_csv))
    kappas.push_back(std::stod(k));
  const Method m = parse_method(method);
  const ConstraintSetId set_id = parse_set(set);

  std::string csv = "method,set,kappa,eta_star,rho_star,N\n";
  std::optional<double> slope;
  if (kappas.size() == 1) {
    // Degenerate request: one point, no fit.
    CertifyOptions single = opts;
    const OptimalEta o =
        optimal_eta(m, set_id, kappas[0], default_eta_grid(), 25, single);
    char line[200];
    std::snprintf(line, sizeof(line), "%s,%s,%.17g,%.17g,%.17g,%.17g\n",
                  to_string(m).c_str(), to_string(set_id).c_str(), kappas[0],
                  o.eta_star, o.rho_star,
                  o.converged ? -1.0 / std::log(o.rho_star) : 0.0);
    csv += line;
  } else {
    const ScalingCurve curve = scaling_curve(m, set_id, kappas, opts);
    slope = curve.slope;
    char line[200];
    for (const ScalingRow& r : curve.rows) {
      std::snprintf(line, sizeof(line), "%s,%s,%.17g,%.17g,%.17g,%.17g\n",
                    to_string(m).c_str(), to_string(set_id).c_str(), r.kappa,
                    r.eta_star, r.rho_star, r.iterations);
      csv += line;
    }
  }
  if (slope)
    csv += "# slope," + std::to_string(*slope) + "\n";
  else
    csv += "# slope,undefined\n";
  write_text(out_path, csv);
  if (slope)
    std::fprintf(stderr, "slope(log N vs log kappa) = %.4f\n", *slope);
  else
    std::fprintf(stderr, "slope undefined (needs >= 2 kappa >= 10 points)\n");
  return kExitOk;
}

int cmd_interp_check(const std::string& cls, const std::string& input,
                     double mu, double tol, const std::string& out_path) {
  const Json j = read_json_file(input);
  CheckReport report;
  if (cls == "s") {
    report = check_interp_s(sample_set_from_json(j), tol);
  } else if (cls == "smu") {
    report = check_interp_smu(sample_set_from_json(j), mu, tol);
  } else if (cls == "quad") {
    report = check_interp_squad(sample_set_from_json(j), mu, tol);
  } else if (cls == "fmm") {
    // {"d": int, "points": [{"x": [...], "g": [...], "f": num}]}
    std::vector<GradientSample> pts;
    for (const Json& p : j.at("points")) {
      GradientSample g;
      g.x = Vector(p.at("x").size());
      g.g = Vector(p.at("g").size());
      for (size_t i = 0; i < p.at("x").size(); ++i) g.x[i] = p.at("x")[i];
      for (size_t i = 0; i < p.at("g").size(); ++i) g.g[i] = p.at("g")[i];
      g.f = p.at("f").get<double>();
      pts.push_back(std::move(g));
    }
    report = check_interp_fmumu(pts, mu, tol);
  } else {
    throw CLI::ValidationError("--class", "unknown class '" + cls + "'");
  }
  write_text(out_path, to_json(report).dump(2) + "\n");
  return report.ok() ? kExitOk : kExitNoCertification;
}

int cmd_validate(std::uint64_t seed, int samples, double kappa, double eta,
                 int iters, const std::string& out_path) {
  const double mu = 1.0 / kappa;
  Json per_seed = Json::array();
  bool all_ok = true;

  const RateResult sim_rate =
      min_rho({Method::SimGda, eta}, ConstraintSetId::Definition, kappa);
  for (std::uint64_t s = seed; s < seed + 5; ++s) {
    const QuadraticGame game = random_game(3, 3, mu, 1.0, s);
    const CheckReport full = sample_check(game, ConstraintSetId::Full, samples,
                                          s, 1e-9);
    const CheckReport cc = sample_check(game, ConstraintSetId::Cocoercive,
                                        samples, s + 1, 1e-9);
    const SoundnessReport sound =
        empirical_vs_certified(game, {Method::SimGda, eta}, sim_rate, iters, s);
    const bool ok = full.ok() && cc.ok() && (sound.skipped || sound.ok);
    all_ok = all_ok && ok;
    per_seed.push_back({{"seed", s},
                        {"theorem8_violations", full.violations.size()},
                        {"theorem9_violations", cc.violations.size()},
                        {"soundness", to_json(sound)},
                        {"ok", ok}});
  }
  const Json out = {{"kappa", kappa},
                    {"eta", eta},
                    {"certified_rho", sim_rate.rho},
                    {"seeds", per_seed},
                    {"ok", all_ok}};
  write_text(out_path, out.dump(2) + "\n");
  return all_ok ? kExitOk : kExitNoCertification;
}

int cmd_kernels(const std::string& set, double mu_over_l,
                const std::string& out_path) {
  const KernelSet ks = kernel_matrices(parse_set(set), mu_over_l);
  write_text(out_path, to_json(ks).dump(2) + "\n");
  return kExitOk;
}

int cmd_dump_problem(const std::string& method, const std::string& set,
                     double kappa, double eta, double rho2,
                     const std::string& out_path) {
  const LyapSdp sdp =
      assemble({parse_method(method), eta}, parse_set(set), kappa, rho2);
  write_text(out_path, problem_dump(sdp).dump(2) + "\n");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Certified worst-case rates for Sim/Alt-GDA on smooth strongly "
      "convex-concave saddle problems"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");
  app.footer(
      "Every subcommand also accepts --config FILE: a JSON object whose keys\n"
      "mirror the long flag names; explicit flags win over config values.\n"
      "SADDLEPEP_SDP_BACKEND=ipm|dr selects the SDP backend (flag wins).");

  std::string method = "sim", set = "full", sets = "full";
  std::string backend, out_path, svg_path, input, cls = "quad";
  double kappa = 10.0, eta = 0.1, bisect_tol = 1e-4, tol = 0.0, mu = 1.0;
  double eta_min = 1e-4, eta_max = 2.0, mu_over_l = 0.5, rho2 = 1.0;
  double check_tol = 1e-8;
  int eta_steps = 60, jobs = 0, samples = 500, iters = 100;
  std::uint64_t seed = 1;
  std::string kappas = "2,10,100,1000";

  CLI::App* certify = app.add_subcommand("certify",
                                         "binary-search the smallest "
                                         "certifiable rate at one (kappa, eta)");
  certify->add_option("--method", method, "sim or alt");
  certify->add_option("--set", set, "def, reduced, full or cocoercive");
  certify->add_option("--kappa", kappa, "condition number L/mu")
      ->check(CLI::PositiveNumber);
  certify->add_option("--eta", eta, "step size")->check(CLI::PositiveNumber);
  certify->add_option("--bisect-tol", bisect_tol, "bisection tolerance on rho");
  certify->add_option("--backend", backend, "ipm (default) or dr");
  certify->add_option("--tol", tol, "solver feasibility tolerance");
  certify->add_option("--out", out_path, "output JSON path (default stdout)");

  CLI::App* sweep = app.add_subcommand("sweep",
                                       "rate as a function of step size");
  sweep->add_option("--method", method, "sim or alt");
  sweep->add_option("--set", sets, "comma-separated constraint sets");
  sweep->add_option("--kappa", kappa)->check(CLI::PositiveNumber);
  sweep->add_option("--eta-min", eta_min)->check(CLI::PositiveNumber);
  sweep->add_option("--eta-max", eta_max)->check(CLI::PositiveNumber);
  sweep->add_option("--eta-steps", eta_steps)->check(CLI::PositiveNumber);
  sweep->add_option("--bisect-tol", bisect_tol);
  sweep->add_option("--backend", backend);
  sweep->add_option("--tol", tol);
  sweep->add_option("--jobs", jobs, "parallel solves (0: all cores)");
  sweep->add_option("--out", out_path, "CSV path (default stdout)");
  sweep->add_option("--svg", svg_path, "optional SVG chart path");

  CLI::App* scaling = app.add_subcommand(
      "scaling", "iterations to convergence as a function of kappa");
  scaling->add_option("--method", method);
  scaling->add_option("--set", set);
  scaling->add_option("--kappas", kappas, "comma-separated condition numbers");
  scaling->add_option("--bisect-tol", bisect_tol)->default_val(1e-5);
  scaling->add_option("--backend", backend);
  scaling->add_option("--tol", tol);
  scaling->add_option("--jobs", jobs);
  scaling->add_option("--out", out_path, "CSV path (default stdout)");

  CLI::App* interp = app.add_subcommand(
      "interp-check", "finite-point interpolation checks on a JSON point set");
  interp->add_option("--class", cls, "s, smu, quad or fmm");
  interp->add_option("--input", input, "input JSON file")->required();
  interp->add_option("--mu", mu, "class parameter (smu, quad, fmm)");
  interp->add_option("--tol", check_tol, "absolute check tolerance");
  interp->add_option("--out", out_path, "report path (default stdout)");

  CLI::App* validate = app.add_subcommand(
      "validate", "random-game inequality and certificate soundness checks");
  validate->add_option("--seed", seed);
  validate->add_option("--samples", samples)->check(CLI::PositiveNumber);
  validate->add_option("--kappa", kappa)->check(CLI::PositiveNumber);
  validate->add_option("--eta", eta)->check(CLI::PositiveNumber);
  validate->add_option("--iters", iters)->check(CLI::PositiveNumber);
  validate->add_option("--out", out_path, "report path (default stdout)");

  CLI::App* kernels = app.add_subcommand("kernels",
                                         "dump constraint kernels as JSON");
  kernels->add_option("--set", set);
  kernels->add_option("--mu-over-l", mu_over_l);
  kernels->add_option("--out", out_path);

  CLI::App* dump = app.add_subcommand("dump-problem",
                                      "dump an assembled SDP as JSON");
  dump->add_option("--method", method);
  dump->add_option("--set", set);
  dump->add_option("--kappa", kappa);
  dump->add_option("--eta", eta);
  dump->add_option("--rho2", rho2);
  dump->add_option("--out", out_path);

  std::vector<std::string> args;
  try {
    args = apply_config(argc, argv);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitData;
  }
  try {
    std::vector<const char*> cargs = {argv[0]};
    for (const std::string& a : args) cargs.push_back(a.c_str());
    app.parse(static_cast<int>(cargs.size()), cargs.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (certify->parsed())
      return cmd_certify(method, set, kappa, eta, bisect_tol, backend, tol,
                         out_path);
    if (sweep->parsed())
      return cmd_sweep(method, sets, kappa, eta_min, eta_max, eta_steps,
                       bisect_tol, backend, tol, jobs, out_path, svg_path);
    if (scaling->parsed())
      return cmd_scaling(method, set, kappas, bisect_tol, backend, tol, jobs,
                         out_path);
    if (interp->parsed())
      return cmd_interp_check(cls, input, mu, check_tol, out_path);
    if (validate->parsed())
      return cmd_validate(seed, samples, kappa, eta, iters, out_path);
    if (kernels->parsed()) return cmd_kernels(set, mu_over_l, out_path);
    if (dump->parsed())
      return cmd_dump_problem(method, set, kappa, eta, rho2, out_path);
  } catch (const CLI::ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const Json::exception& e) {
    std::fprintf(stderr, "data error: %s\n", e.what());
    return kExitData;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::runtime_error& e) {
    const std::string msg = e.what();
    std::fprintf(stderr, "error: %s\n", msg.c_str());
    return msg.find("file") != std::string::npos ? kExitData : kExitInternal;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return kExitInternal;
  }
  return kExitUsage;
}
