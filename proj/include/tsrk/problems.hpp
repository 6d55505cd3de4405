#pragma once

#include <map>
#include <string>
#include <vector>

#include "tsrk/problem.hpp"
#include "tsrk/trajectory.hpp"

namespace tsrk {

enum class ManufacturedKind { Sin, ExpCos };

/// y' = y_exact'(t) + lambda (y(t - tau) - y_exact(t - tau)) around
/// y_exact = sin t or e^(-t/2) cos t; delay bound r = tau.
RfdeProblem make_manufactured(ManufacturedKind kind, double tau, double lambda, double t0 = 0.0, double T = 2.0);

/// Scalar y'(t) = a y(t) + b y(t - tau), y = phi on [t0 - tau, t0].
struct LinearDelayProblem {
  double a = 0.0;
  double b = -1.0;
  double tau = 1.0;
  std::function<double(double)> phi = [](double) { return 1.0; };
  double t0 = 0.0;
  double T = 2.0;

  /// Breaking points t0 + k tau inside (t0, T), reference attached.
  RfdeProblem to_problem() const;
};

/// Method of steps with the embedded RK4 dense-output method: every delay
/// interval [t0 + k tau, t0 + (k+1) tau] is a mesh boundary, steps <= h_ref.
Trajectory reference_method_of_steps(const LinearDelayProblem& p, double h_ref);

/// y' = lambda (y - g) + g' + mu (y(t - tau) - g(t - tau)) with g = sin.
RfdeProblem make_stiff_demo(double lambda, double mu, double tau, double t0 = 0.0, double T = 2.0);

/// f == 0 with constant history y0.
RfdeProblem make_constant(double y0, double r = 1.0, double t0 = 0.0, double T = 1.0);

/// Delay-free y' = lambda y(t), y(t0) = 1.
RfdeProblem make_exponential(double lambda, double t0 = 0.0, double T = 1.0);

using ProblemParams = std::map<std::string, double>;

/// Registry: manufactured-sin, manufactured-expcos, linear-delay, stiff-demo,
/// constant, exponential. Unknown names or parameters throw.
RfdeProblem make_problem(const std::string& name, const ProblemParams& params = {});
std::vector<std::string> problem_names();

/// Parameters a registry entry accepts, with defaults.
ProblemParams problem_defaults(const std::string& name);

}  // namespace tsrk
