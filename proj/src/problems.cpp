#include "tsrk/problems.hpp"

#include <cmath>
#include <numbers>

#include "tsrk/errors.hpp"
#include "tsrk/solver.hpp"
#include "tsrk/tableau.hpp"

namespace tsrk {

namespace {

constexpr unsigned kAnalyticDerivatives = 10;

ExactSolution sin_solution() {
  ExactSolution ex;
  ex.max_derivative = kAnalyticDerivatives;
  ex.derivative = [](long double t, unsigned k) {
    return std::vector<long double>{std::sin(t + k * std::numbers::pi_v<long double> / 2)};
  };
  return ex;
}

// d^k/dt^k e^(at) cos(bt) = rho^k e^(at) cos(bt + k phi), rho e^(i phi) = a + ib.
ExactSolution expcos_solution() {
  ExactSolution ex;
  ex.max_derivative = kAnalyticDerivatives;
  ex.derivative = [](long double t, unsigned k) {
    const long double a = -0.5L, b = 1.0L;
    const long double rho = std::hypot(a, b);
    const long double phi = std::atan2(b, a);
    return std::vector<long double>{std::pow(rho, static_cast<long double>(k)) * std::exp(a * t) * std::cos(b * t + k * phi)};
  };
  return ex;
}

InitialFunction from_exact(const ExactSolution& ex) {
  return [ex](double t) { return ex.value(t); };
}

double param(const ProblemParams& given, const ProblemParams& defaults, const std::string& key) {
  auto it = given.find(key);
  return it != given.end() ? it->second : defaults.at(key);
}

}  // namespace

RfdeProblem make_manufactured(ManufacturedKind kind, double tau, double lambda, double t0, double T) {
  if (!(tau > 0.0)) throw Error("manufactured problem needs tau > 0");
  RfdeProblem p;
  p.name = kind == ManufacturedKind::Sin ? "manufactured-sin" : "manufactured-expcos";
  p.dim = 1;
  p.t0 = t0;
  p.T = T;
  p.r = tau;
  const ExactSolution ex = kind == ManufacturedKind::Sin ? sin_solution() : expcos_solution();
  p.exact = ex;
  p.phi = from_exact(ex);
  p.rhs = [ex, tau, lambda](double t, const HistoryView& y) {
    const double forcing = static_cast<double>(ex.derivative(t, 1)[0]);
    const double lagged = static_cast<double>(ex.derivative(static_cast<long double>(t) - tau, 0)[0]);
    return Vec{forcing + lambda * (y.scalar_abs(t - tau) - lagged)};
  };
  return p;
}

RfdeProblem LinearDelayProblem::to_problem() const {
  if (!(tau > 0.0)) throw Error("linear delay problem needs tau > 0");
  RfdeProblem p;
  p.name = "linear-delay";
  p.t0 = t0;
  p.T = T;
  p.r = tau;
  p.phi = [phi = phi](double t) { return Vec{phi(t)}; };
  p.rhs = [a = a, b = b, tau = tau](double t, const HistoryView& y) {
    return Vec{a * y.scalar_abs(t) + b * y.scalar_abs(t - tau)};
  };
  for (int k = 1; t0 + k * tau < T; ++k) p.breaking_points.push_back(t0 + k * tau);
  p.reference = [self = *this](double h) {
    return std::make_shared<const Trajectory>(reference_method_of_steps(self, h / 64.0));
  };
  return p;
}

Trajectory reference_method_of_steps(const LinearDelayProblem& lp, double h_ref) {
  RfdeProblem p = lp.to_problem();
  p.reference = nullptr;
  std::vector<double> knots = p.breaking_points;
  return integrate_one_step(build_rk4_embedded(), p, knots, h_ref);
}

RfdeProblem make_stiff_demo(double lambda, double mu, double tau, double t0, double T) {
  if (!(lambda < 0.0)) throw Error("stiff demo needs lambda < 0");
  if (!(tau > 0.0)) throw Error("stiff demo needs tau > 0");
  RfdeProblem p;
  p.name = "stiff-demo";
  p.t0 = t0;
  p.T = T;
  p.r = tau;
  const ExactSolution g = sin_solution();
  p.exact = g;
  p.phi = from_exact(g);
  p.rhs = [lambda, mu, tau](double t, const HistoryView& y) {
    const double lag = t - tau;
    return Vec{lambda * (y.scalar_abs(t) - std::sin(t)) + std::cos(t) + mu * (y.scalar_abs(lag) - std::sin(lag))};
  };
  return p;
}

RfdeProblem make_constant(double y0, double r, double t0, double T) {
  RfdeProblem p;
  p.name = "constant";
  p.t0 = t0;
  p.T = T;
  p.r = r;
  p.phi = [y0](double) { return Vec{y0}; };
  p.rhs = [](double, const HistoryView&) { return Vec{0.0}; };
  ExactSolution ex;
  ex.max_derivative = kAnalyticDerivatives;
  ex.derivative = [y0](long double, unsigned k) { return std::vector<long double>{k == 0 ? y0 : 0.0L}; };
  p.exact = ex;
  return p;
}

RfdeProblem make_exponential(double lambda, double t0, double T) {
  RfdeProblem p;
  p.name = "exponential";
  p.t0 = t0;
  p.T = T;
  p.r = 0.0;
  ExactSolution ex;
  ex.max_derivative = kAnalyticDerivatives;
  ex.derivative = [lambda, t0](long double t, unsigned k) {
    const long double l = lambda;
    return std::vector<long double>{std::pow(l, static_cast<long double>(k)) * std::exp(l * (t - t0))};
  };
  p.exact = ex;
  p.phi = from_exact(ex);
  p.rhs = [lambda](double t, const HistoryView& y) { return Vec{lambda * y.scalar_abs(t)}; };
  return p;
}

std::vector<std::string> problem_names() {
  return {"manufactured-sin", "manufactured-expcos", "linear-delay", "stiff-demo", "constant", "exponential"};
}

ProblemParams problem_defaults(const std::string& name) {
  if (name == "manufactured-sin" || name == "manufactured-expcos") {
    return {{"lambda", 1.0}, {"tau", 1.0}, {"t0", 0.0}, {"T", 2.0}};
  }
  if (name == "linear-delay") return {{"a", 0.0}, {"b", -1.0}, {"tau", 1.0}, {"y0", 1.0}, {"t0", 0.0}, {"T", 2.0}};
  if (name == "stiff-demo") return {{"lambda", -50.0}, {"mu", 1.0}, {"tau", 1.0}, {"t0", 0.0}, {"T", 2.0}};
  if (name == "constant") return {{"y0", 1.0}, {"r", 1.0}, {"t0", 0.0}, {"T", 1.0}};
  if (name == "exponential") return {{"lambda", 1.0}, {"t0", 0.0}, {"T", 1.0}};
  throw Error("unknown problem '" + name + "'");
}

RfdeProblem make_problem(const std::string& name, const ProblemParams& params) {
  const ProblemParams d = problem_defaults(name);
  for (const auto& [key, value] : params) {
    if (!d.contains(key)) throw Error("problem '" + name + "' has no parameter '" + key + "'");
  }
  auto get = [&](const char* key) { return param(params, d, key); };
  if (name == "manufactured-sin" || name == "manufactured-expcos") {
    const auto kind = name == "manufactured-sin" ? ManufacturedKind::Sin : ManufacturedKind::ExpCos;
    return make_manufactured(kind, get("tau"), get("lambda"), get("t0"), get("T"));
  }
  if (name == "linear-delay") {
    LinearDelayProblem lp;
    lp.a = get("a");
    lp.b = get("b");
    lp.tau = get("tau");
    lp.t0 = get("t0");
    lp.T = get("T");
    const double y0 = get("y0");
    lp.phi = [y0](double) { return y0; };
    return lp.to_problem();
  }
  if (name == "stiff-demo") return make_stiff_demo(get("lambda"), get("mu"), get("tau"), get("t0"), get("T"));
  if (name == "constant") return make_constant(get("y0"), get("r"), get("t0"), get("T"));
  return make_exponential(get("lambda"), get("t0"), get("T"));
}

}  // namespace tsrk
