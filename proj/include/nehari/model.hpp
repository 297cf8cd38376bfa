#pragma once

// Scalar ingredients of the problem: the Kirchhoff function g and its
// primitive G, the critical nonlinearity f and its primitive F, the Adams
// constant alpha_beta and the growth exponent gamma, and a sampling checker
// for the structural hypotheses the variational argument relies on.

#include <stdexcept>
#include <string>
#include <vector>

namespace nehari {

// Raised when exp(alpha0 |t|^gamma) would leave double range.
class RangeError : public std::range_error {
 public:
  using std::range_error::range_error;
};

// Exponent arguments above this value (natural-log units) are rejected.
inline constexpr double kExpGuard = 700.0;

enum class KirchhoffKind { affine, log_type };

// g(t) = g0 + a t  (affine)  or  g(t) = 1 + ln(1 + t)  (log-type, g0 = 1).
struct KirchhoffSpec {
  KirchhoffKind kind = KirchhoffKind::affine;
  double g0 = 1.0;
  double a = 1.0;

  static KirchhoffSpec affine(double g0, double a) {
    return {KirchhoffKind::affine, g0, a};
  }
  static KirchhoffSpec log_type() { return {KirchhoffKind::log_type, 1.0, 0.0}; }

  double g_at_zero() const { return kind == KirchhoffKind::affine ? g0 : 1.0; }
};

std::string to_string(KirchhoffKind kind);
KirchhoffKind parse_kirchhoff_kind(const std::string& name);

double kirchhoff_g(const KirchhoffSpec& spec, double t);
double kirchhoff_G(const KirchhoffSpec& spec, double t);
double kirchhoff_g_prime(const KirchhoffSpec& spec, double t);

// f(t) = power_weight * Cp |t|^(p-2) t + exp_weight * |t|^(p-2) t exp(alpha0 |t|^gamma).
//
// The two weights are 1 for the model family; other values exist only to
// build deliberately broken nonlinearities for the hypothesis checker.
struct NonlinearitySpec {
  double cp = 2.0;
  double p = 6.0;
  double alpha0 = 1.0;
  double gamma = 4.0;
  double power_weight = 1.0;
  double exp_weight = 1.0;
};

double f_eval(const NonlinearitySpec& spec, double t);
double f_prime(const NonlinearitySpec& spec, double t);
// F(t) = int_0^t f. The exponential part is integrated by adaptive
// Gauss-Kronrod (relative tolerance 1e-10) and memoized per thread.
double F_eval(const NonlinearitySpec& spec, double t);

// Largest |t| accepted by f/F: alpha0 |t|^gamma <= kExpGuard.
double overflow_limit(const NonlinearitySpec& spec);

// 4 (8 pi^2 (1 - beta))^(1/(1-beta)), beta in (0,1).
double alpha_beta(double beta);
// 2 / (1 - beta), beta in [0,1).
double gamma_exp(double beta);

struct ModelParams {
  double beta = 0.5;
  double q = 5.0;
  double p = 6.0;
  double cp = 2.0;
  double alpha0 = 1.0;
  double delta = 0.1;
  KirchhoffSpec kirchhoff = KirchhoffSpec::affine(1.0, 1.0);
  // Test hooks forwarded into NonlinearitySpec.
  double power_weight = 1.0;
  double exp_weight = 1.0;

  double theta() const { return p; }
  double gamma() const { return gamma_exp(beta); }
  double g0() const { return kirchhoff.g_at_zero(); }
  NonlinearitySpec nonlinearity() const;
};

// Throws std::invalid_argument naming the offending key.
// `allow_degenerate` admits beta = 0, Cp <= 1 and alpha0 = 0 for the
// closed-form test modes; the ordering p > q > 4 is always enforced.
void validate(const ModelParams& params, bool allow_degenerate = false);

struct HypothesisCheck {
  std::string name;
  bool passed = true;
  double worst_margin = 0.0;  // most negative slack observed (>= 0 if passed)
  double witness_t = 0.0;     // sample at which the worst margin occurred
  double witness_s = 0.0;     // second coordinate for two-point checks
  std::string detail;
};

struct HypothesisReport {
  std::vector<HypothesisCheck> checks;
  bool all_passed() const;
  const HypothesisCheck& find(const std::string& name) const;
};

// Evaluates every structural hypothesis on log-spaced samples
// t in [1e-6, t_max] (t_max from the overflow guard, capped for G checks).
HypothesisReport check_hypotheses(const ModelParams& params, int sample_count);

}  // namespace nehari
