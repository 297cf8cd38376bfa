#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "nehari/kernels.hpp"
#include "nehari/verify_cli.hpp"

namespace nehari::cli {

namespace {

std::string utc_timestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Json header(const std::string& command, const RunConfig& cfg) {
  Json j;
  j["command"] = command;
  j["timestamp"] = utc_timestamp();
  j["kernels"] = std::string(kernels::isa_name(kernels::active().isa));
  j["config"] = to_json(cfg);
  return j;
}

Json resolved(const CpResolution& res) {
  Json j;
  j["Cp"] = res.cp;
  j["cp_mode"] = res.automatic ? "auto" : "fixed";
  if (res.automatic) {
    j["cp_factor"] = kAutoCpFactor;
    j["cp_threshold"] = {{"statement", res.threshold->statement},
                         {"proof", res.threshold->proof}};
    j["m_p"] = res.aux->m_p;
  }
  return j;
}

std::filesystem::path out_path(const RunConfig& cfg, const char* file) {
  std::filesystem::create_directories(cfg.out_dir);
  return std::filesystem::path(cfg.out_dir) / file;
}

void write_json(const RunConfig& cfg, const char* file, const Json& doc) {
  const auto path = out_path(cfg, file);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

void write_csv(const RunConfig& cfg, const RadialFunction& u) {
  const auto path = out_path(cfg, "minimizer.csv");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_profile_csv(out, u);
}

// Maps exceptions onto exit codes.
template <class F>
int guarded(F&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  }
}

bool aux_ceiling_holds(const AuxResult& aux, const ModelParams& params) {
  const double p = params.p, q = params.q;
  return aux.p_norm_p <= p * q / (p - q) * aux.m_p + kBoundSlack;
}

}  // namespace

int cmd_solve(const RunConfig& cfg) {
  return guarded([&] {
    validate_config(cfg);
    const GridPtr grid = build_grid(cfg.n, cfg.scheme);
    const CpResolution res = resolve_cp(cfg, grid);
    ModelParams params = cfg.params;
    params.cp = res.cp;
    const GroundStateResult gs = ground_state(params, grid, cfg.search);

    Json doc = header("solve", cfg);
    doc["resolved"] = resolved(res);
    doc["result"] = to_json(gs);
    write_json(cfg, "report.json", doc);
    write_csv(cfg, gs.minimizer);
    if (!gs.converged)
      std::cerr << "no start converged; best gradient norm "
                << gs.gradient_norm << '\n';
    std::cout << "m = " << Json(gs.m).dump() << (gs.converged ? "" : " (not converged)")
              << '\n';
    return gs.converged ? kOk : kNumericalFailure;
  });
}

int cmd_aux(const RunConfig& cfg) {
  return guarded([&] {
    validate_config(cfg);
    const GridPtr grid = build_grid(cfg.n, cfg.scheme);
    const AuxResult aux = aux_ground_state(cfg.params, grid, cfg.search);
    const bool ceiling = aux_ceiling_holds(aux, cfg.params);

    Json doc = header("aux", cfg);
    doc["result"] = to_json(aux);
    doc["flags"] = {{"aux_ceiling_holds", ceiling}};
    write_json(cfg, "report.json", doc);
    write_csv(cfg, aux.w_p);
    std::cout << "m_p = " << Json(aux.m_p).dump() << '\n';
    return aux.run.converged && ceiling ? kOk : kNumericalFailure;
  });
}

int cmd_bounds(const RunConfig& cfg) {
  return guarded([&] {
    validate_config(cfg);
    const GridPtr grid = build_grid(cfg.n, cfg.scheme);
    CpResolution res = resolve_cp(cfg, grid);
    ModelParams params = cfg.params;
    params.cp = res.cp;
    const AuxResult aux =
        res.aux ? *res.aux : aux_ground_state(params, grid, cfg.search);
    const GroundStateResult gs = ground_state(params, grid, cfg.search);
    const BoundsReport b = level_bounds(gs.m, aux, params);

    Json doc = header("bounds", cfg);
    doc["resolved"] = resolved(res);
    doc["aux"] = to_json(aux);
    doc["result"] = to_json(gs);
    doc["bounds"] = to_json(b);
    write_json(cfg, "report.json", doc);
    write_csv(cfg, gs.minimizer);
    std::cout << "m = " << Json(b.m).dump() << ", m_p = " << Json(b.m_p).dump()
              << ", bounds " << (b.all_pass() ? "pass" : "FAIL") << '\n';
    const bool ok = gs.converged && aux.run.converged && b.all_pass();
    return ok ? kOk : kNumericalFailure;
  });
}

int cmd_verify(const RunConfig& cfg) {
  return guarded([&] {
    validate_config(cfg, /*degenerate=*/true);
    const SuiteReport rep = run_suite(cfg);
    Json doc = header("verify", cfg);
    doc["suite"] = to_json(rep);
    write_json(cfg, "suite.json", doc);
    for (const auto& c : rep.checks) {
      const char* tag = c.status == CheckStatus::pass   ? "pass"
                        : c.status == CheckStatus::fail ? "FAIL"
                                                        : "skip";
      std::cout << tag << "  " << c.name << '\n';
    }
    std::cout << "overall: " << (rep.overall() ? "pass" : "FAIL") << '\n';
    return rep.overall() ? kOk : kNumericalFailure;
  });
}

int run_cli(int argc, char** argv) {
  CLI::App app{"Radial ground states of a weighted fourth-order Kirchhoff "
               "problem on the unit ball of R^4"};
  app.require_subcommand(1);

  struct Flags {
    std::string config;
    std::optional<double> beta, q, p, cp, alpha0, delta, g0, a, tol;
    std::optional<int> n, starts, max_iter, threads;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> scheme, kind, out, fault;
    bool auto_cp = false;
  } f;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", f.config, "JSON config file")->check(CLI::ExistingFile);
    sub->add_option("--beta", f.beta, "weight exponent, in (0,1)");
    sub->add_option("--q", f.q, "power exponent q > 4");
    sub->add_option("--p", f.p, "critical power p > q");
    auto* cp = sub->add_option("--cp", f.cp, "coefficient Cp > 1");
    auto* autocp = sub->add_flag("--auto-cp", f.auto_cp,
                                 "Cp = 1.1 x admissibility threshold (default)");
    cp->excludes(autocp);
    sub->add_option("--alpha0", f.alpha0, "exponential rate alpha0 > 0");
    sub->add_option("--delta", f.delta, "delta > 0");
    sub->add_option("--kirchhoff", f.kind, "affine | log-type");
    sub->add_option("--g0", f.g0, "g(0) for affine g");
    sub->add_option("--a", f.a, "slope for affine g");
    sub->add_option("--n", f.n, "grid nodes (>= 8)");
    sub->add_option("--scheme", f.scheme, "spectral-even | uniform-fd");
    sub->add_option("--starts", f.starts, "random starts");
    sub->add_option("--max-iter", f.max_iter, "descent iterations per start");
    sub->add_option("--tol", f.tol, "relative gradient tolerance");
    sub->add_option("--seed", f.seed, "random seed");
    sub->add_option("--threads", f.threads, "worker threads (0 = all cores)");
    sub->add_option("--out", f.out, "output directory");
  };
  CLI::App* solve = app.add_subcommand("solve", "ground state of J");
  CLI::App* aux = app.add_subcommand("aux", "ground state of the pure-power problem");
  CLI::App* bounds = app.add_subcommand("bounds", "level bounds for m and Cp");
  CLI::App* verify = app.add_subcommand("verify", "run the verification suite");
  for (CLI::App* sub : {solve, aux, bounds, verify}) add_common(sub);
  verify->add_option("--inject-fault", f.fault, "laplacian-sign (self-test)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  RunConfig cfg;
  try {
    if (!f.config.empty()) cfg = load_config(f.config, cfg);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  }
  ModelParams& m = cfg.params;
  if (f.beta) m.beta = *f.beta;
  if (f.q) m.q = *f.q;
  if (f.p) m.p = *f.p;
  if (f.cp) cfg.cp = *f.cp;
  if (f.auto_cp) cfg.cp.reset();
  if (f.alpha0) m.alpha0 = *f.alpha0;
  if (f.delta) m.delta = *f.delta;
  if (f.g0) m.kirchhoff.g0 = *f.g0;
  if (f.a) m.kirchhoff.a = *f.a;
  if (f.n) cfg.n = *f.n;
  if (f.starts) cfg.search.starts = *f.starts;
  if (f.max_iter) cfg.search.max_iter = *f.max_iter;
  if (f.tol) cfg.search.tol = *f.tol;
  if (f.seed) cfg.search.seed = *f.seed;
  if (f.threads) cfg.search.threads = *f.threads;
  if (f.out) cfg.out_dir = *f.out;
  if (f.fault) cfg.inject_fault = *f.fault;
  try {
    if (f.kind) m.kirchhoff.kind = parse_kirchhoff_kind(*f.kind);
    if (f.scheme) cfg.scheme = parse_scheme(*f.scheme);
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  }

  if (solve->parsed()) return cmd_solve(cfg);
  if (aux->parsed()) return cmd_aux(cfg);
  if (bounds->parsed()) return cmd_bounds(cfg);
  return cmd_verify(cfg);
}

}  // namespace nehari::cli
