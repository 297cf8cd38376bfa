#include <fstream>
#include <sstream>

#include "nehari/verify_cli.hpp"

namespace nehari::cli {

namespace {

double number(const Json& v, const std::string& key) {
  if (!v.is_number()) throw ConfigError(key + " must be a number");
  return v.get<double>();
}

int integer(const Json& v, const std::string& key) {
  if (!v.is_number_integer()) throw ConfigError(key + " must be an integer");
  const auto x = v.get<long long>();
  if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max())
    throw ConfigError(key + " is out of range");
  return static_cast<int>(x);
}

std::string text(const Json& v, const std::string& key) {
  if (!v.is_string()) throw ConfigError(key + " must be a string");
  return v.get<std::string>();
}

}  // namespace

Json to_json(const RunConfig& cfg) {
  const ModelParams& m = cfg.params;
  Json j;
  j["beta"] = m.beta;
  j["q"] = m.q;
  j["p"] = m.p;
  if (cfg.cp)
    j["Cp"] = *cfg.cp;
  else
    j["Cp"] = "auto";
  j["alpha0"] = m.alpha0;
  j["delta"] = m.delta;
  j["kirchhoff.kind"] = to_string(m.kirchhoff.kind);
  j["kirchhoff.g0"] = m.kirchhoff.g0;
  j["kirchhoff.a"] = m.kirchhoff.a;
  j["n"] = cfg.n;
  j["scheme"] = std::string(to_string(cfg.scheme));
  j["starts"] = cfg.search.starts;
  j["max_iter"] = cfg.search.max_iter;
  j["tol"] = cfg.search.tol;
  j["seed"] = cfg.search.seed;
  return j;
}

RunConfig from_json(const Json& doc, RunConfig cfg) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  ModelParams& m = cfg.params;
  for (const auto& [key, v] : doc.items()) {
    if (key == "beta") m.beta = number(v, key);
    else if (key == "q") m.q = number(v, key);
    else if (key == "p") m.p = number(v, key);
    else if (key == "Cp") {
      if (v.is_string() && v.get<std::string>() == "auto")
        cfg.cp.reset();
      else if (v.is_number())
        cfg.cp = v.get<double>();
      else
        throw ConfigError("Cp must be a number or \"auto\"");
    } else if (key == "alpha0") m.alpha0 = number(v, key);
    else if (key == "delta") m.delta = number(v, key);
    else if (key == "kirchhoff.kind") {
      try {
        m.kirchhoff.kind = parse_kirchhoff_kind(text(v, key));
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
    } else if (key == "kirchhoff.g0") m.kirchhoff.g0 = number(v, key);
    else if (key == "kirchhoff.a") m.kirchhoff.a = number(v, key);
    else if (key == "n") cfg.n = integer(v, key);
    else if (key == "scheme") {
      try {
        cfg.scheme = parse_scheme(text(v, key));
      } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("scheme: ") + e.what());
      }
    } else if (key == "starts") cfg.search.starts = integer(v, key);
    else if (key == "max_iter") cfg.search.max_iter = integer(v, key);
    else if (key == "tol") cfg.search.tol = number(v, key);
    else if (key == "seed") {
      if (!v.is_number_unsigned())
        throw ConfigError("seed must be a nonnegative integer");
      cfg.search.seed = v.get<std::uint64_t>();
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  return cfg;
}

RunConfig load_config(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError("config: '" + path + "' is not valid JSON (" +
                      e.what() + ")");
  }
  return from_json(doc, std::move(base));
}

void validate_config(const RunConfig& cfg, bool degenerate) {
  ModelParams probe = cfg.params;
  // Auto-Cp always lands above 1; any admissible stand-in will do here.
  probe.cp = cfg.cp ? *cfg.cp : 2.0;
  try {
    validate(probe, degenerate);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (cfg.n < RadialGrid::kMinNodes)
    throw ConfigError("n must be at least 8");
  if (cfg.search.starts < 1) throw ConfigError("starts must be at least 1");
  if (cfg.search.max_iter < 0) throw ConfigError("max_iter must be >= 0");
  if (!(cfg.search.tol > 0.0)) throw ConfigError("tol must be positive");
  if (!cfg.inject_fault.empty() && cfg.inject_fault != "laplacian-sign")
    throw ConfigError("inject-fault must be laplacian-sign");
}

CpResolution resolve_cp(const RunConfig& cfg, const GridPtr& grid) {
  CpResolution res;
  if (cfg.cp) {
    res.cp = *cfg.cp;
    return res;
  }
  res.automatic = true;
  res.aux = aux_ground_state(cfg.params, grid, cfg.search);
  res.threshold = min_admissible_cp(*res.aux, cfg.params);
  res.cp = kAutoCpFactor * res.threshold->statement;
  return res;
}

}  // namespace nehari::cli
