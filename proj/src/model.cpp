#include "nehari/model.hpp"

#include <algorithm>
#include <bit>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <unordered_map>

#include "nehari/radial_core.hpp"

namespace nehari {

namespace {

double sgn(double t) { return t > 0 ? 1.0 : (t < 0 ? -1.0 : 0.0); }

void guard(const NonlinearitySpec& spec, double t) {
  if (spec.exp_weight == 0.0 || spec.alpha0 == 0.0) return;
  const double arg = spec.alpha0 * std::pow(std::abs(t), spec.gamma);
  if (!(arg <= kExpGuard))
    throw RangeError("exponent alpha0*|t|^gamma = " + std::to_string(arg) +
                     " exceeds the overflow guard (t = " + std::to_string(t) +
                     ")");
}

// E(t) = int_0^t s^(p-1) exp(alpha0 s^gamma) ds, t >= 0, written as
// t^p int_0^1 x^(p-1) exp(alpha0 t^gamma x^gamma) dx so the quadrature error
// varies smoothly with t.
double exp_primitive_uncached(double p, double alpha0, double gamma, double t) {
  if (t == 0.0) return 0.0;
  const double tp = std::pow(t, p);
  if (alpha0 == 0.0) return tp / p;
  const double c = alpha0 * std::pow(t, gamma);
  auto integrand = [&](double x) {
    return std::pow(x, p - 1.0) * std::exp(c * std::pow(x, gamma));
  };
  const double value =
      boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
          integrand, 0.0, 1.0, 20, 1e-10);
  return tp * value;
}

struct PrimitiveKey {
  std::uint64_t p, alpha0, gamma, t;
  bool operator==(const PrimitiveKey&) const = default;
};

struct PrimitiveKeyHash {
  std::size_t operator()(const PrimitiveKey& k) const {
    std::uint64_t h = 1469598103934665603ull;
    for (std::uint64_t v : {k.p, k.alpha0, k.gamma, k.t}) {
      h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

// Per-thread memo; the cached value is exactly what a fresh evaluation
// returns, so results do not depend on scheduling.
double exp_primitive(double p, double alpha0, double gamma, double t) {
  thread_local std::unordered_map<PrimitiveKey, double, PrimitiveKeyHash> cache;
  constexpr std::size_t kMaxEntries = 1 << 18;
  const PrimitiveKey key{std::bit_cast<std::uint64_t>(p),
                         std::bit_cast<std::uint64_t>(alpha0),
                         std::bit_cast<std::uint64_t>(gamma),
                         std::bit_cast<std::uint64_t>(t)};
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  const double value = exp_primitive_uncached(p, alpha0, gamma, t);
  if (cache.size() >= kMaxEntries) cache.clear();
  cache.emplace(key, value);
  return value;
}

}  // namespace

std::string to_string(KirchhoffKind kind) {
  return kind == KirchhoffKind::affine ? "affine" : "log-type";
}

KirchhoffKind parse_kirchhoff_kind(const std::string& name) {
  if (name == "affine") return KirchhoffKind::affine;
  if (name == "log-type") return KirchhoffKind::log_type;
  throw std::invalid_argument("kirchhoff.kind: unknown kind '" + name +
                              "' (expected affine or log-type)");
}

double kirchhoff_g(const KirchhoffSpec& spec, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("kirchhoff_g: t must be >= 0");
  if (spec.kind == KirchhoffKind::affine) return spec.g0 + spec.a * t;
  return 1.0 + std::log1p(t);
}

double kirchhoff_G(const KirchhoffSpec& spec, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("kirchhoff_G: t must be >= 0");
  if (spec.kind == KirchhoffKind::affine)
    return spec.g0 * t + 0.5 * spec.a * t * t;
  return (1.0 + t) * std::log1p(t);
}

double kirchhoff_g_prime(const KirchhoffSpec& spec, double t) {
  if (!(t >= 0.0))
    throw std::invalid_argument("kirchhoff_g_prime: t must be >= 0");
  if (spec.kind == KirchhoffKind::affine) return spec.a;
  return 1.0 / (1.0 + t);
}

double overflow_limit(const NonlinearitySpec& spec) {
  if (spec.exp_weight == 0.0 || spec.alpha0 == 0.0)
    return std::numeric_limits<double>::infinity();
  return std::pow(kExpGuard / spec.alpha0, 1.0 / spec.gamma);
}

double f_eval(const NonlinearitySpec& spec, double t) {
  guard(spec, t);
  const double at = std::abs(t);
  if (at == 0.0) return 0.0;
  double coeff = spec.power_weight * spec.cp;
  if (spec.exp_weight != 0.0)
    coeff += spec.exp_weight * std::exp(spec.alpha0 * std::pow(at, spec.gamma));
  return sgn(t) * std::pow(at, spec.p - 1.0) * coeff;
}

double f_prime(const NonlinearitySpec& spec, double t) {
  guard(spec, t);
  const double at = std::abs(t);
  if (at == 0.0) return 0.0;
  const double e = spec.exp_weight != 0.0
                       ? std::exp(spec.alpha0 * std::pow(at, spec.gamma))
                       : 0.0;
  const double base = (spec.p - 1.0) * (spec.power_weight * spec.cp +
                                        spec.exp_weight * e);
  const double growth = spec.exp_weight * spec.alpha0 * spec.gamma *
                        std::pow(at, spec.gamma) * e;
  return std::pow(at, spec.p - 2.0) * (base + growth);
}

double F_eval(const NonlinearitySpec& spec, double t) {
  guard(spec, t);
  const double at = std::abs(t);
  if (at == 0.0) return 0.0;
  double value = spec.power_weight * spec.cp * std::pow(at, spec.p) / spec.p;
  if (spec.exp_weight != 0.0)
    value += spec.exp_weight * exp_primitive(spec.p, spec.alpha0, spec.gamma, at);
  return value;
}

double alpha_beta(double beta) {
  if (!(beta > 0.0 && beta < 1.0))
    throw std::invalid_argument("alpha_beta: beta must lie in (0,1)");
  return 4.0 * std::pow(8.0 * kPi * kPi * (1.0 - beta), 1.0 / (1.0 - beta));
}

double gamma_exp(double beta) {
  if (!(beta >= 0.0 && beta < 1.0))
    throw std::invalid_argument("gamma_exp: beta must lie in [0,1)");
  return 2.0 / (1.0 - beta);
}

NonlinearitySpec ModelParams::nonlinearity() const {
  NonlinearitySpec spec;
  spec.cp = cp;
  spec.p = p;
  spec.alpha0 = alpha0;
  spec.gamma = gamma_exp(beta);
  spec.power_weight = power_weight;
  spec.exp_weight = exp_weight;
  return spec;
}

void validate(const ModelParams& params, bool allow_degenerate) {
  auto fail = [](const std::string& msg) { throw std::invalid_argument(msg); };
  for (auto [key, value] :
       {std::pair<const char*, double>{"beta", params.beta},
        {"q", params.q},
        {"p", params.p},
        {"Cp", params.cp},
        {"alpha0", params.alpha0},
        {"delta", params.delta},
        {"kirchhoff.g0", params.kirchhoff.g0},
        {"kirchhoff.a", params.kirchhoff.a}})
    if (!std::isfinite(value)) fail(std::string(key) + " must be finite");

  if (allow_degenerate) {
    if (!(params.beta >= 0.0 && params.beta < 1.0))
      fail("beta must lie in [0,1)");
  } else if (!(params.beta > 0.0 && params.beta < 1.0)) {
    fail("beta must lie in (0,1)");
  }
  if (!(params.q > 4.0)) fail("q must exceed 4");
  if (!(params.p > 4.0)) fail("p must exceed 4");
  if (!(params.p > params.q)) fail("p must exceed q");
  if (allow_degenerate) {
    if (!(params.cp >= 0.0)) fail("Cp must be nonnegative");
    if (!(params.alpha0 >= 0.0)) fail("alpha0 must be nonnegative");
  } else {
    if (!(params.cp > 1.0)) fail("Cp must exceed 1");
    if (!(params.alpha0 > 0.0)) fail("alpha0 must be positive");
  }
  if (!(params.delta > 0.0)) fail("delta must be positive");
  if (params.kirchhoff.kind == KirchhoffKind::affine) {
    if (!(params.kirchhoff.g0 > 0.0)) fail("kirchhoff.g0 must be positive");
    if (!(params.kirchhoff.a >= 0.0)) fail("kirchhoff.a must be nonnegative");
  }
}

bool HypothesisReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const HypothesisCheck& c) { return c.passed; });
}

const HypothesisCheck& HypothesisReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return c;
  throw std::out_of_range("no hypothesis check named '" + name + "'");
}

namespace {

constexpr double kRelTol = 1e-9;

// Tracks the worst relative slack of a family of inequalities lhs <= rhs.
struct Tracker {
  HypothesisCheck check;
  explicit Tracker(std::string name) { check.name = std::move(name); check.worst_margin = std::numeric_limits<double>::infinity(); }

  void leq(double lhs, double rhs, double t, double s = 0.0) {
    const double scale = std::max({std::abs(lhs), std::abs(rhs),
                                   std::numeric_limits<double>::min()});
    record((rhs - lhs) / scale, t, s);
  }
  void record(double margin, double t, double s = 0.0) {
    if (margin < check.worst_margin) {
      check.worst_margin = margin;
      check.witness_t = t;
      check.witness_s = s;
    }
  }
  HypothesisCheck finish(std::string detail = {}) {
    if (!std::isfinite(check.worst_margin)) check.worst_margin = 0.0;
    check.passed = check.worst_margin >= -kRelTol;
    check.detail = std::move(detail);
    return check;
  }
};

std::vector<double> log_samples(double lo, double hi, int count) {
  std::vector<double> t(count);
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (int i = 0; i < count; ++i)
    t[i] = std::exp(a + (b - a) * i / (count - 1));
  return t;
}

// phi(t_{i+1}) >= phi(t_i) along the samples.
HypothesisCheck monotone(std::string name, const std::vector<double>& ts,
                         const std::function<double(double)>& phi,
                         bool increasing, std::string detail = {}) {
  Tracker tr(std::move(name));
  double prev = phi(ts[0]);
  for (std::size_t i = 1; i < ts.size(); ++i) {
    const double cur = phi(ts[i]);
    if (increasing)
      tr.leq(prev, cur, ts[i], ts[i - 1]);
    else
      tr.leq(cur, prev, ts[i], ts[i - 1]);
    prev = cur;
  }
  return tr.finish(std::move(detail));
}

}  // namespace

HypothesisReport check_hypotheses(const ModelParams& params, int sample_count) {
  if (sample_count < 100)
    throw std::invalid_argument("check_hypotheses: need at least 100 samples");
  const KirchhoffSpec& ks = params.kirchhoff;
  const NonlinearitySpec nl = params.nonlinearity();
  const double q = params.q;
  const double theta = params.theta();
  const double t_min = 1e-6;
  const double t_max = std::min(0.999 * overflow_limit(nl), 1e6);
  const auto ts = log_samples(t_min, t_max, sample_count);
  // Kirchhoff arguments are squared norms; sample them over a wider range.
  const auto gs = log_samples(1e-6, 1e6, sample_count);
  const double g1 = kirchhoff_g(ks, 1.0);

  HypothesisReport report;
  auto& out = report.checks;
  auto g = [&](double t) { return kirchhoff_g(ks, t); };
  auto G = [&](double t) { return kirchhoff_G(ks, t); };
  auto f = [&](double t) { return f_eval(nl, t); };
  auto F = [&](double t) { return F_eval(nl, t); };

  {
    Tracker tr("g_increasing");
    tr.record(ks.g_at_zero() > 0 ? 0.0 : -1.0, 0.0);
    tr.leq(ks.g_at_zero(), g(0.0), 0.0);
    tr.leq(g(0.0), ks.g_at_zero(), 0.0);
    double prev = g(0.0);
    for (double t : gs) {
      tr.leq(prev, g(t), t);
      prev = g(t);
    }
    out.push_back(tr.finish("g(0) = g0 > 0 and g nondecreasing"));
  }
  out.push_back(monotone(
      "g_over_t_nonincreasing", gs, [&](double t) { return g(t) / t; },
      false));
  {
    Tracker tr("G_superadditive");
    const int stride = std::max(1, sample_count / 40);
    for (std::size_t i = 0; i < gs.size(); i += stride)
      for (std::size_t j = 0; j < gs.size(); j += stride)
        tr.leq(G(gs[i]) + G(gs[j]), G(gs[i] + gs[j]), gs[i], gs[j]);
    out.push_back(tr.finish("G(s+t) >= G(s) + G(t)"));
  }
  {
    Tracker tr("g_linear_bound");
    for (double t : gs) tr.leq(g(t), g1 + g1 * t, t);
    out.push_back(tr.finish("g(t) <= g(1) + g(1) t"));
  }
  {
    Tracker tr("G_quadratic_bound");
    for (double t : gs) tr.leq(G(t), g1 * t + 0.5 * g1 * t * t, t);
    out.push_back(tr.finish("G(t) <= g(1) t + g(1) t^2 / 2"));
  }
  {
    auto h = [&](double t) { return 0.5 * G(t) - 0.25 * g(t) * t; };
    HypothesisCheck c = monotone("h_nondecreasing_positive", gs, h, true,
                                 "G(t)/2 - g(t) t/4 nondecreasing and positive");
    for (double t : gs)
      if (!(h(t) > 0.0)) {
        c.passed = false;
        c.worst_margin = std::min(c.worst_margin, h(t));
        c.witness_t = t;
      }
    out.push_back(c);
  }
  {
    auto h = [&](double t) { return 0.5 * G(t) - g(t) * t / q; };
    HypothesisCheck c = monotone("hq_nondecreasing_positive", gs, h,
                                 true, "G(t)/2 - g(t) t/q nondecreasing and positive");
    for (double t : gs)
      if (!(h(t) > 0.0)) {
        c.passed = false;
        c.worst_margin = std::min(c.worst_margin, h(t));
        c.witness_t = t;
      }
    out.push_back(c);
  }
  {
    Tracker tr("theta_F_le_tf");
    for (double sign : {1.0, -1.0})
      for (double a : ts) {
        const double t = sign * a;
        const double thF = theta * F(t);
        if (!(thF > 0.0)) tr.record(-1.0, t);
        tr.leq(thF, t * f(t), t);
      }
    out.push_back(tr.finish("0 < theta F(t) <= t f(t), theta = p"));
  }
  {
    auto ratio = [&](double t) { return f(t) / std::pow(std::abs(t), q - 1.0); };
    HypothesisCheck pos = monotone("f_over_t_q1_increasing", ts, ratio, true);
    std::vector<double> neg(ts.rbegin(), ts.rend());
    for (double& t : neg) t = -t;
    HypothesisCheck negc = monotone("f_over_t_q1_increasing", neg, ratio, true);
    HypothesisCheck c = pos.worst_margin <= negc.worst_margin ? pos : negc;
    c.name = "f_over_t_q1_increasing";
    c.passed = pos.passed && negc.passed;
    c.detail = "f(t)/|t|^(q-1) increasing on t>0 and on t<0";
    out.push_back(c);
  }
  {
    // |f(t)|/|t| -> 0: the ratio must decay like a positive power of t over
    // the two smallest decades.
    Tracker tr("f_over_t_vanishes");
    for (double sign : {1.0, -1.0}) {
      const double t0 = sign * t_min;
      const double r0 = std::abs(f(t0) / t0);
      const double r1 = std::abs(f(10 * t0) / (10 * t0));
      const double r2 = std::abs(f(100 * t0) / (100 * t0));
      const double slope01 = std::log10(r1 / r0);
      const double slope12 = std::log10(r2 / r1);
      tr.record(std::min(slope01, slope12) - 0.5, t0);
    }
    HypothesisCheck c = tr.finish("local decay exponent of |f(t)/t| at t -> 0 exceeds 1/2");
    c.passed = c.worst_margin > 0.0;
    out.push_back(c);
  }
  {
    Tracker tr("lower_power_bound");
    for (double sign : {1.0, -1.0})
      for (double a : ts) {
        const double t = sign * a;
        tr.leq(params.cp * std::pow(a, params.p - 1.0), sgn(t) * f(t), t);
      }
    out.push_back(tr.finish("sgn(t) f(t) >= Cp |t|^(p-1)"));
  }
  out.push_back(monotone(
      "f_over_t3_increasing", ts,
      [&](double t) { return f(t) / (t * t * t); }, true));
  {
    auto phi = [&](double t) { return t * f(t) - q * F(t); };
    HypothesisCheck pos = monotone("L", ts, phi, true);
    std::vector<double> neg(ts.rbegin(), ts.rend());
    for (double& t : neg) t = -t;
    HypothesisCheck negc = monotone("L", neg, phi, false);
    HypothesisCheck c = pos.worst_margin <= negc.worst_margin ? pos : negc;
    c.name = "tf_minus_qF_increasing";
    c.passed = pos.passed && negc.passed;
    c.detail = "t f(t) - q F(t) increasing on t>0, decreasing on t<0";
    out.push_back(c);
  }
  return report;
}

}  // namespace nehari
