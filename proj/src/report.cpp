#include <algorithm>

#include "nehari/verify_cli.hpp"

namespace nehari::cli {

namespace {

// JSON has no inf/nan; keep them visible as strings.
Json num(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

}  // namespace

Json to_json(const EnergyBreakdown& e) {
  Json j;
  j["kirchhoff_term"] = num(e.kirchhoff_term);
  j["power_term"] = num(e.power_term);
  j["f_term"] = num(e.f_term);
  j["total"] = num(e.total);
  return j;
}

Json to_json(const StartOutcome& s) {
  Json j;
  j["index"] = s.index;
  j["energy"] = num(s.energy);
  j["gradient_norm"] = num(s.gradient_norm);
  j["norm"] = num(s.norm);
  j["iterations"] = s.iterations;
  j["converged"] = s.converged;
  j["status"] = s.status;
  j["min_norm"] = num(s.min_norm);
  j["coercivity_violations"] = s.coercivity_violations;
  j["lowest_trial_energy"] = num(s.lowest_trial_energy);
  return j;
}

Json to_json(const GroundStateResult& r) {
  Json j;
  j["m"] = num(r.m);
  j["converged"] = r.converged;
  j["gradient_norm"] = num(r.gradient_norm);
  j["residual"] = num(r.residual);
  j["minimizer_norm"] = num(r.minimizer_norm);
  j["kappa"] = num(r.kappa);
  j["breakdown"] = to_json(r.breakdown);
  j["best_start"] = r.best_start;
  j["starts"] = r.starts;
  Json per = Json::array();
  for (const auto& s : r.per_start) per.push_back(to_json(s));
  j["per_start"] = std::move(per);
  return j;
}

Json to_json(const AuxResult& a) {
  Json j;
  j["m_p"] = num(a.m_p);
  j["p_norm_p"] = num(a.p_norm_p);
  j["run"] = to_json(a.run);
  return j;
}

Json to_json(const BoundsReport& b) {
  Json j;
  j["m"] = num(b.m);
  j["m_p"] = num(b.m_p);
  j["p_norm_p"] = num(b.p_norm_p);
  j["Cp"] = num(b.cp);
  j["tau_statement"] = num(b.tau_statement);
  j["tau_proof"] = num(b.tau_proof);
  j["alpha_beta"] = num(b.alpha_beta);
  j["cp_threshold"] = {{"statement", num(b.cp_threshold.statement)},
                       {"proof", num(b.cp_threshold.proof)}};
  j["level_ceiling"] = num(b.level_ceiling);
  j["norm_bound"] = {{"statement", num(b.norm_bound_statement)},
                     {"proof", num(b.norm_bound_proof)}};
  j["level_bound"] = {{"statement", num(b.level_bound_statement)},
                      {"proof", num(b.level_bound_proof)}};
  j["aux_ceiling"] = num(b.aux_ceiling);
  j["slack"] = kBoundSlack;
  Json flags;
  flags["aux_ceiling_holds"] = b.aux_ceiling_holds;
  flags["norm_bound_holds"] = b.norm_bound_holds;
  flags["level_bound_holds"] = b.level_bound_holds;
  flags["cp_admissible"] = b.cp_admissible;
  if (b.level_ceiling_holds)
    flags["level_ceiling_holds"] = *b.level_ceiling_holds;
  else
    flags["level_ceiling_holds"] = nullptr;
  flags["chain_consistent"] = b.chain_consistent;
  flags["all_pass"] = b.all_pass();
  j["flags"] = std::move(flags);
  return j;
}

bool SuiteReport::overall() const {
  return std::all_of(checks.begin(), checks.end(), [](const SuiteCheck& c) {
    return c.status != CheckStatus::fail;
  });
}

const SuiteCheck* SuiteReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

Json to_json(const SuiteReport& r, bool with_timing) {
  Json checks = Json::array();
  int passed = 0, failed = 0, skipped = 0;
  for (const auto& c : r.checks) {
    Json j;
    j["name"] = c.name;
    switch (c.status) {
      case CheckStatus::pass: j["status"] = "pass"; ++passed; break;
      case CheckStatus::fail: j["status"] = "fail"; ++failed; break;
      case CheckStatus::skip: j["status"] = "skip"; ++skipped; break;
    }
    j["margin"] = num(c.margin);
    j["witness"] = c.witness.is_null() ? Json::object() : c.witness;
    j["detail"] = c.detail;
    if (with_timing) j["seconds"] = c.seconds;
    checks.push_back(std::move(j));
  }
  Json j;
  j["overall"] = r.overall() ? "pass" : "fail";
  j["counts"] = {{"pass", passed}, {"fail", failed}, {"skip", skipped}};
  j["checks"] = std::move(checks);
  return j;
}

}  // namespace nehari::cli
