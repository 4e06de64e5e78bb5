#include "agdrc/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <CLI11.hpp>

#include "agdrc/analytic.hpp"
#include "agdrc/io.hpp"
#include "agdrc/lmi.hpp"
#include "agdrc/simulate.hpp"

namespace agdrc {

namespace {

using nlohmann::json;

// Raised for unwritable output paths; maps to exit code 2.
struct OutputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::ofstream open_output(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw OutputError("cannot write '" + path + "'");
  return f;
}

void emit(const json& j, std::ostream& out, const std::string& path) {
  const std::string text = j.dump(2) + "\n";
  out << text;
  if (!path.empty()) {
    auto f = open_output(path);
    f << text;
    if (!f) throw OutputError("failed writing '" + path + "'");
  }
}

int scan_threads() {
  if (const char* env = std::getenv("AGD_RC_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

json rc_json(const RCParams& rc) {
  json j{{"mu", rc.mu()}, {"lambda", rc.lambda()}};
  if (rc.epsilon()) j["epsilon"] = *rc.epsilon();
  return j;
}

json params_json(const AGDParams& p) {
  return {{"alpha", p.alpha()}, {"beta1", p.beta1()}, {"beta2", p.beta2()}};
}

std::optional<Route> theorem_route(const Family& fam) {
  if (fam.kind == Family::Kind::HB) return Route::TheoremHB;
  if (fam.kind == Family::Kind::NAG) return Route::TheoremNAG;
  return std::nullopt;
}

// Inserts `_tag` before the extension of `path`.
std::string tagged(const std::string& path, const std::string& tag) {
  std::filesystem::path p(path);
  return (p.parent_path() / (p.stem().string() + "_" + tag + p.extension().string())).string();
}

struct RegionArgs {
  std::string family = "hb";
  std::string mu = "0.5";
  std::string lambda = "0.5";
  std::string alpha = "0.01:3:0.01";
  std::string beta = "0.01:0.99:0.01";
  std::string route = "fdi-exact";
  std::string csv = "region.csv";
  std::string svg;
  std::string json_out;
  bool boundary = false;
  int n_samples = 10000;
};

int cmd_region(const RegionArgs& a, std::ostream& out) {
  const Family fam = family_from_string(a.family);
  const Route route = route_from_string(a.route);
  const std::vector<double> mus = parse_grid(a.mu), lambdas = parse_grid(a.lambda);
  const std::vector<double> alphas = parse_grid(a.alpha), betas = parse_grid(a.beta);
  ScanOptions opts;
  opts.threads = scan_threads();
  opts.n_samples = a.n_samples;
  opts.flag_boundary = a.boundary;

  const bool sweep = mus.size() * lambdas.size() > 1;
  json runs = json::array();
  for (double mu : mus) {
    for (double lam : lambdas) {
      const RCParams rc(mu, lam);
      const ScanGrid grid = region_scan(rc, fam, alphas, betas, route, opts);
      const std::string tag = "mu" + format_double(mu) + "_lambda" + format_double(lam);
      const std::string csv_path = sweep ? tagged(a.csv, tag) : a.csv;
      {
        auto f = open_output(csv_path);
        write_region_csv(f, grid);
      }
      std::string svg_path;
      if (!a.svg.empty()) {
        svg_path = sweep ? tagged(a.svg, tag) : a.svg;
        auto f = open_output(svg_path);
        write_region_svg(f, grid, to_string(fam) + " " + tag + " " + std::string(to_string(route)));
      }
      runs.push_back({{"rc", rc_json(rc)},
                      {"csv", csv_path},
                      {"svg", svg_path},
                      {"cells", grid.cells.size()},
                      {"stable_cells", grid.stable_count()}});
    }
  }
  emit({{"schema", kSchema},
        {"command", "region"},
        {"family", to_string(fam)},
        {"route", std::string(to_string(route))},
        {"alpha_points", alphas.size()},
        {"beta_points", betas.size()},
        {"runs", runs}},
       out, a.json_out);
  return kExitOk;
}

struct PointArgs {
  std::string family = "hb";
  double mu = 0.5;
  double lambda = 0.5;
  double alpha = 0.1;
  double beta = 0.0;
  int n_samples = 10000;
  double band = 1e-3;
  double tol = 1e-3;
  std::optional<double> eps;
  std::string json_out;
};

int cmd_certify(const PointArgs& a, std::ostream& out) {
  const Family fam = family_from_string(a.family);
  const RCParams rc(a.mu, a.lambda);
  const AGDParams p = fam.at(a.alpha, a.beta);

  json report{{"schema", kSchema},
              {"command", "certify"},
              {"family", to_string(fam)},
              {"rc", rc_json(rc)},
              {"params", params_json(p)}};

  std::vector<std::pair<std::string, bool>> verdicts;
  bool boundary = false;

  const RegionVerdict exact = fdi_exact(rc, p);
  const RegionVerdict sampled = fdi_sampled(rc, p, a.n_samples);
  report["fdi_exact"] = to_json(exact);
  report["fdi_sampled"] = to_json(sampled);
  verdicts.emplace_back("fdi_exact", exact.stable);
  verdicts.emplace_back("fdi_sampled", sampled.stable);
  boundary = boundary || near_boundary(Route::FdiExact, rc, fam, a.alpha, a.beta, a.band);

  if (auto tr = theorem_route(fam); tr && a.beta > 0.0) {
    const RegionVerdict thm = evaluate(*tr, rc, fam, a.alpha, a.beta);
    report["theorem"] = to_json(thm);
    verdicts.emplace_back("theorem", thm.stable);
    boundary = boundary || near_boundary(*tr, rc, fam, a.alpha, a.beta, a.band);
  }

  const DeltaInterval shifts = admissible_delta_interval(rc, p);
  report["delta_interval"] = to_json(shifts);
  json lmi{{"found", false}};
  if (shifts.nonempty) {
    const double delta = shifts.midpoint();
    const LmiProblem prob = shifted_problem(rc, p, delta, 1.0);
    report["kypc"] = to_json(check_kypc(prob.sys, prob.quad));
    lmi["delta"] = delta;
    if (auto w = find_feasible_p(prob)) {
      lmi["found"] = true;
      lmi["witness"] = to_json(*w);
    }
  }
  report["lmi"] = lmi;
  verdicts.emplace_back("lmi", lmi["found"].get<bool>());

  const bool agreement = std::all_of(verdicts.begin(), verdicts.end(),
                                     [&](const auto& v) { return v.second == verdicts.front().second; });
  json routes = json::object();
  for (const auto& [name, stable] : verdicts) routes[name] = stable;
  report["route_verdicts"] = routes;
  report["stable"] = exact.stable;
  report["boundary"] = boundary;
  report["agreement"] = agreement;
  emit(report, out, a.json_out);
  return agreement || boundary ? kExitOk : kExitDisagreement;
}

int cmd_rate(const PointArgs& a, std::ostream& out) {
  const Family fam = family_from_string(a.family);
  const RCParams rc(a.mu, a.lambda);
  const AGDParams p = fam.at(a.alpha, a.beta);
  json report{{"schema", kSchema},
              {"command", "rate"},
              {"family", to_string(fam)},
              {"rc", rc_json(rc)},
              {"params", params_json(p)},
              {"tol", a.tol}};
  const auto cert = certify_rate(rc, p, a.tol);
  report["certified"] = cert.has_value();
  if (!cert) {
    report["status"] = "not certified";
    emit(report, out, a.json_out);
    return kExitOk;
  }
  report["status"] = "certified";
  report["rho"] = cert->rho;
  report["delta"] = cert->delta;
  report["witness"] = to_json(cert->witness);
  PWitness best = cert->witness;
  if (auto w = min_cond_p(rc, p, cert->rho); w && w->cond_p < best.cond_p) best = *w;
  report["min_cond_witness"] = to_json(best);
  report["cond_p"] = best.cond_p;
  if (a.eps) {
    report["eps"] = *a.eps;
    report["safe_init_radius"] = safe_init_radius(*a.eps, best.cond_p);
  }
  emit(report, out, a.json_out);
  return kExitOk;
}

GradOracle benchmark_by_name(const std::string& name) {
  if (name == "44") return benchmark_44();
  throw std::invalid_argument("unknown benchmark '" + name + "' (available: 44)");
}

struct SimulateArgs {
  std::string benchmark = "44";
  double init = 24.0;
  std::optional<double> init_prev;
  double alpha = 0.1;
  double hb_beta = 0.59;
  double nag_beta = 0.69;
  int max_iter = 1000;
  double stop_tol = kDefaultStopTol;
  std::string out_dir = ".";
  std::string json_out;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
  const GradOracle oracle = benchmark_by_name(a.benchmark);
  const Point z0{a.init}, zm1{a.init_prev.value_or(a.init)};
  struct Job {
    Algo algo;
    AGDParams params;
  };
  const std::vector<Job> jobs{{Algo::GD, AGDParams::gd(a.alpha)},
                              {Algo::HB, AGDParams::heavy_ball(a.alpha, a.hb_beta)},
                              {Algo::NAG, AGDParams::nesterov(a.alpha, a.nag_beta)}};
  std::filesystem::path dir(a.out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);

  json runs = json::array();
  for (const Job& job : jobs) {
    const Trace t = run(oracle, job.algo, job.params, z0, zm1, a.max_iter, a.stop_tol);
    const std::string path = (dir / (std::string(to_string(job.algo)) + ".csv")).string();
    {
      auto f = open_output(path);
      write_trace_csv(f, t, oracle);
    }
    json r{{"algo", std::string(to_string(job.algo))},
           {"params", params_json(job.params)},
           {"status", std::string(to_string(t.status))},
           {"iterations", t.iterations()},
           {"final_distance", distance(t.points.back(), oracle.minimizer)},
           {"csv", path}};
    if (!t.diagnostic.empty()) r["diagnostic"] = t.diagnostic;
    runs.push_back(r);
  }
  json summary{{"schema", kSchema},
               {"command", "simulate"},
               {"benchmark", a.benchmark},
               {"init", {z0[0], zm1[0]}},
               {"stop_tol", a.stop_tol},
               {"runs", runs}};
  emit(summary, out, a.json_out.empty() ? (dir / "summary.json").string() : a.json_out);
  return kExitOk;
}

struct VerifyArgs {
  std::string benchmark = "44";
  double mu = 0.5;
  double lambda = 0.5;
  std::string range = "-50:50";
  int n = 10000;
  std::string json_out;
};

int cmd_verify_rc(const VerifyArgs& a, std::ostream& out) {
  const GradOracle oracle = benchmark_by_name(a.benchmark);
  const RCParams rc(a.mu, a.lambda);
  if (a.n < 1) throw std::invalid_argument("--n must be >= 1");
  const auto [lo, hi] = parse_interval(a.range);
  std::vector<Point> pts;
  for (double x : linspace(lo, hi, static_cast<std::size_t>(a.n))) pts.push_back({x});
  const RcReport r = verify_rc(oracle, rc, pts);
  emit({{"schema", kSchema},
        {"command", "verify-rc"},
        {"benchmark", a.benchmark},
        {"rc", rc_json(rc)},
        {"range", {lo, hi}},
        {"n", r.n_points},
        {"passed", r.passed},
        {"min_slack", r.min_slack},
        {"worst_point", r.worst_point}},
       out, a.json_out);
  return kExitOk;
}

struct ConvertArgs {
  std::optional<double> m, l, mu, lambda;
  std::string json_out;
};

int cmd_convert(const ConvertArgs& a, std::ostream& out) {
  json j{{"schema", kSchema}, {"command", "convert"}};
  if (a.m && a.l && !a.mu && !a.lambda) {
    const RCParams rc = sector_to_rc(SectorBound(*a.m, *a.l));
    j["sector"] = {{"m", *a.m}, {"L", *a.l}};
    j["mu"] = rc.mu();
    j["lambda"] = rc.lambda();
  } else if (a.mu && a.lambda && !a.m && !a.l) {
    const SectorBound s = rc_to_sector(RCParams(*a.mu, *a.lambda));
    j["rc"] = {{"mu", *a.mu}, {"lambda", *a.lambda}};
    j["m"] = s.m_lo();
    j["L"] = s.l_hi();
  } else {
    throw std::invalid_argument("convert needs either --m and --L, or --mu and --lambda");
  }
  emit(j, out, a.json_out);
  return kExitOk;
}

void add_point_options(CLI::App* sub, PointArgs& a) {
  sub->add_option("--family", a.family, "hb, nag, gd or general:<scale>[,<offset>]");
  sub->add_option("--mu", a.mu, "RC constant mu")->required();
  sub->add_option("--lambda", a.lambda, "RC constant lambda")->required();
  sub->add_option("--alpha", a.alpha, "step size")->required();
  sub->add_option("--beta", a.beta, "momentum (beta1; beta2 follows the family)");
  sub->add_option("--json", a.json_out, "also write the report to this path");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Convergence regions and certificates for accelerated gradient methods under the Regularity Condition",
               "agd-rc"};
  app.require_subcommand(1);

  RegionArgs region;
  auto* sub_region = app.add_subcommand("region", "scan an (alpha, beta) grid and write CSV/SVG");
  sub_region->add_option("--family", region.family, "hb, nag, gd or general:<scale>[,<offset>]");
  sub_region->add_option("--mu", region.mu, "mu value or comma list");
  sub_region->add_option("--lambda", region.lambda, "lambda value or comma list");
  sub_region->add_option("--alpha", region.alpha, "alpha grid lo:hi:step");
  sub_region->add_option("--beta", region.beta, "beta grid lo:hi:step");
  sub_region->add_option("--route", region.route, "fdi-exact, fdi-sampled, theorem-hb or theorem-nag");
  sub_region->add_option("--csv", region.csv, "CSV output path");
  sub_region->add_option("--svg", region.svg, "SVG heatmap output path");
  sub_region->add_option("--json", region.json_out, "also write the summary to this path");
  sub_region->add_option("--n-samples", region.n_samples, "omega samples for fdi-sampled");
  sub_region->add_flag("--boundary", region.boundary, "flag cells within 1e-3 of a verdict change");

  PointArgs certify;
  auto* sub_certify = app.add_subcommand("certify", "evaluate every certification route at one point");
  add_point_options(sub_certify, certify);
  sub_certify->add_option("--n-samples", certify.n_samples, "omega samples for fdi-sampled");
  sub_certify->add_option("--band", certify.band, "boundary band in alpha/beta units");

  PointArgs rate;
  auto* sub_rate = app.add_subcommand("rate", "bisect the certified linear rate rho");
  add_point_options(sub_rate, rate);
  sub_rate->add_option("--tol", rate.tol, "bisection tolerance on rho");
  sub_rate->add_option("--eps", rate.eps, "local RC radius for the safe-initialization radius");

  SimulateArgs sim;
  auto* sub_sim = app.add_subcommand("simulate", "run GD, HB and NAG on a benchmark");
  sub_sim->add_option("--benchmark", sim.benchmark, "benchmark name (44)");
  sub_sim->add_option("--init", sim.init, "z_0");
  sub_sim->add_option("--init-prev", sim.init_prev, "z_{-1} (defaults to z_0)");
  sub_sim->add_option("--alpha", sim.alpha, "step size");
  sub_sim->add_option("--hb-beta", sim.hb_beta, "Heavy-ball momentum");
  sub_sim->add_option("--nag-beta", sim.nag_beta, "Nesterov momentum");
  sub_sim->add_option("--max-iter", sim.max_iter, "iteration cap");
  sub_sim->add_option("--stop-tol", sim.stop_tol, "stop when |z - x*| <= tol");
  sub_sim->add_option("--out-dir", sim.out_dir, "directory for trace CSVs and summary.json");
  sub_sim->add_option("--json", sim.json_out, "summary path (default <out-dir>/summary.json)");

  VerifyArgs verify;
  auto* sub_verify = app.add_subcommand("verify-rc", "check the RC inequality on a grid of points");
  sub_verify->add_option("--benchmark", verify.benchmark, "benchmark name (44)");
  sub_verify->add_option("--mu", verify.mu, "RC constant mu");
  sub_verify->add_option("--lambda", verify.lambda, "RC constant lambda");
  sub_verify->add_option("--range", verify.range, "sample interval lo:hi");
  sub_verify->add_option("--n", verify.n, "number of grid points");
  sub_verify->add_option("--json", verify.json_out, "also write the report to this path");

  ConvertArgs convert;
  auto* sub_convert = app.add_subcommand("convert", "convert between sector bounds and RC constants");
  sub_convert->add_option("--m", convert.m, "sector lower slope");
  sub_convert->add_option("--L", convert.l, "sector upper slope");
  sub_convert->add_option("--mu", convert.mu, "RC constant mu");
  sub_convert->add_option("--lambda", convert.lambda, "RC constant lambda");
  sub_convert->add_option("--json", convert.json_out, "also write the report to this path");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }

  try {
    if (sub_region->parsed()) return cmd_region(region, out);
    if (sub_certify->parsed()) return cmd_certify(certify, out);
    if (sub_rate->parsed()) return cmd_rate(rate, out);
    if (sub_sim->parsed()) return cmd_simulate(sim, out);
    if (sub_verify->parsed()) return cmd_verify_rc(verify, out);
    if (sub_convert->parsed()) return cmd_convert(convert, out);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const OutputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }
  return kExitInvalidInput;
}

}  // namespace agdrc
