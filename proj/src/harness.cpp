#include "tsrk/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <future>
#include <sstream>

#include <json.hpp>

#include "tsrk/errors.hpp"

namespace tsrk {

namespace {

double max_abs_diff(const Vec& x, const Vec& y) {
  double m = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i] - y[i]));
  return m;
}

std::optional<double> observed_order(double coarse, double fine) {
  if (coarse > 0.0 && fine > 0.0) return std::log2(coarse / fine);
  return std::nullopt;
}

std::string order_cell(const ConvergenceRow& row, const std::optional<double>& order, double error) {
  if (row.failed) return "";
  if (error == 0.0) return "exact";
  return order ? format_double(*order) : "";
}

ConvergenceRow run_level(const TsrkTableau& t, const RfdeProblem& p, std::size_t N, const ConvergenceOptions& opt) {
  ConvergenceRow row;
  row.N = N;
  row.h = (p.T - p.t0) / static_cast<double>(N);
  try {
    const Trajectory tr = integrate(t, p, N, opt.start);
    ErrorPair e;
    if (p.exact) {
      const ExactHistory truth(*p.exact);
      e = measure_errors(tr, p, truth, opt.samples_per_step);
    } else if (p.reference) {
      const auto truth = p.reference(row.h);
      e = measure_errors(tr, p, *truth, opt.samples_per_step);
    } else {
      throw Error("problem '" + p.name + "' has neither exact data nor a reference");
    }
    row.discrete_error = e.discrete;
    row.uniform_error = e.uniform;
  } catch (const std::exception& ex) {
    row.failed = true;
    row.failure = ex.what();
  }
  return row;
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// "-76 - 12*sqrt(41)" rather than the canonical "-76/1-12/1*sqrt(41)".
std::string pretty(const ExactScalar& x) {
  const mpq_class& a = x.rational_part();
  if (x.is_rational()) return a.get_str();
  mpq_class b = x.surd_part();
  std::string out;
  if (a != 0) out = a.get_str() + (b < 0 ? " - " : " + ");
  else if (b < 0) out = "-";
  if (b < 0) b = -b;
  if (b != 1) out += b.get_str() + "*";
  return out + "sqrt(" + std::to_string(x.radicand()) + ")";
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) throw Error("float formatting failed");
  return std::string(buf, end);
}

ErrorPair measure_errors(const Trajectory& tr, const RfdeProblem& p, const HistorySource& truth,
                         unsigned samples_per_step) {
  if (samples_per_step < 1) throw Error("samples per step must be >= 1");
  (void)p;
  ErrorPair e;
  const auto& mesh = tr.mesh();
  for (std::size_t n = 1; n < mesh.size(); ++n) {
    const double ta = mesh[n - 1];
    const double tb = mesh[n];
    e.discrete = std::max(e.discrete, max_abs_diff(tr.eval(tb), truth.value_at(tb)));
    for (unsigned j = 0; j <= samples_per_step; ++j) {
      const double s = j == samples_per_step ? tb : ta + (tb - ta) * j / samples_per_step;
      e.uniform = std::max(e.uniform, max_abs_diff(tr.eval(s), truth.value_at(s)));
    }
  }
  return e;
}

ConvergenceStudy convergence_study(const TsrkTableau& t, const RfdeProblem& p, const ConvergenceOptions& opt) {
  ConvergenceStudy study;
  study.method = t.name;
  study.problem = p.name;
  study.stability = zero_stability(t);
  if (opt.ladder.empty()) throw Error("empty refinement ladder");

  if (opt.parallel) {
    std::vector<std::future<ConvergenceRow>> jobs;
    for (std::size_t N : opt.ladder) {
      jobs.push_back(std::async(std::launch::async, [&, N] { return run_level(t, p, N, opt); }));
    }
    for (auto& j : jobs) study.rows.push_back(j.get());
  } else {
    for (std::size_t N : opt.ladder) study.rows.push_back(run_level(t, p, N, opt));
  }

  for (std::size_t i = 1; i < study.rows.size(); ++i) {
    const auto& prev = study.rows[i - 1];
    auto& row = study.rows[i];
    if (prev.failed || row.failed) continue;
    // orders are only meaningful between successive halvings
    if (row.N != 2 * prev.N) continue;
    row.discrete_order = observed_order(prev.discrete_error, row.discrete_error);
    row.uniform_order = observed_order(prev.uniform_error, row.uniform_error);
  }
  return study;
}

std::string convergence_csv(const ConvergenceStudy& study) {
  std::ostringstream out;
  out << "N,h,discrete_error,uniform_error,discrete_order,uniform_order,zero_stable,status\n";
  const char* stable = study.stability.zero_stable ? "yes" : "no";
  for (const auto& row : study.rows) {
    out << row.N << ',' << format_double(row.h) << ',';
    if (row.failed) {
      out << ",,,," << stable << ",failed: ";
      for (char ch : row.failure) out << (ch == ',' || ch == '\n' ? ' ' : ch);
      out << '\n';
      continue;
    }
    out << format_double(row.discrete_error) << ',' << format_double(row.uniform_error) << ','
        << order_cell(row, row.discrete_order, row.discrete_error) << ','
        << order_cell(row, row.uniform_order, row.uniform_error) << ',' << stable << ",ok\n";
  }
  return out.str();
}

ResidualStudy residual_study(const TsrkTableau& t, const RfdeProblem& p, const ResidualOptions& opt) {
  if (!p.exact) throw Error("residual study needs exact data");
  if (opt.steps.empty()) throw Error("no step sizes given");
  ResidualStudy study;
  study.steps = opt.steps;
  study.order_p = opt.order_p != 0 ? opt.order_p : static_cast<unsigned>(uniform_order(t).order + 1);

  const std::size_t rows = t.stages() + 1;
  study.rows.resize(rows);
  for (std::size_t r = 0; r < rows; ++r) study.rows[r].row = r;

  for (double h : opt.steps) {
    const double k = (opt.t_star - p.t0) / h;
    if (std::abs(k - std::round(k)) > 1e-9) throw Error("t* must be a mesh node for every step size");
    const auto n = static_cast<std::size_t>(std::llround(k)) + 1;
    const auto res = local_residual(t, p, n, h, opt.fractions, study.order_p);
    for (const auto& rr : res) {
      double max_res = 0.0, max_diff = 0.0;
      for (std::size_t i = 0; i < rr.alphas.size(); ++i) {
        study.samples.push_back({h, rr.row, rr.alphas[i], rr.residual[i][0], rr.prediction[i][0]});
        max_res = std::max(max_res, max_abs_diff(rr.residual[i], Vec(rr.residual[i].size(), 0.0)));
        max_diff = std::max(max_diff, max_abs_diff(rr.residual[i], rr.prediction[i]));
      }
      study.rows[rr.row].max_residual.push_back(max_res);
      study.rows[rr.row].max_difference.push_back(max_diff);
    }
  }

  for (auto& row : study.rows) {
    std::vector<double> x, y;
    for (std::size_t i = 0; i < study.steps.size(); ++i) {
      if (row.max_residual[i] > 0.0) {
        x.push_back(std::log(study.steps[i]));
        y.push_back(std::log(row.max_residual[i]));
      }
    }
    if (x.size() >= 2) row.fitted_exponent = fit_slope(x, y);
  }
  return study;
}

std::string residual_csv(const ResidualStudy& study) {
  std::ostringstream out;
  out << "h,row,alpha,residual,prediction,difference,ratio\n";
  for (std::size_t i = 0; i < study.samples.size(); ++i) {
    const auto& s = study.samples[i];
    out << format_double(s.h) << ',' << s.row + 1 << ',' << format_double(s.alpha) << ',' << format_double(s.residual)
        << ',' << format_double(s.prediction) << ',' << format_double(s.residual - s.prediction) << ',';
    // ratio against the same (row, alpha fraction) at the previous step size
    const auto previous = std::find_if(study.samples.rbegin() + static_cast<long>(study.samples.size() - i),
                                       study.samples.rend(), [&](const ResidualSample& q) {
                                         return q.row == s.row && q.h != s.h && q.alpha == s.alpha;
                                       });
    if (previous != study.samples.rend() && s.residual != 0.0) out << format_double(previous->residual / s.residual);
    out << '\n';
  }
  return out.str();
}

std::string residual_summary(const ResidualStudy& study) {
  std::ostringstream out;
  out << "prediction terms k < " << study.order_p << '\n';
  for (const auto& row : study.rows) {
    out << "row " << row.row + 1 << ":";
    for (std::size_t i = 0; i < study.steps.size(); ++i) {
      out << " h=" << format_double(study.steps[i]) << " max|res|=" << format_double(row.max_residual[i])
          << " max|res-pred|=" << format_double(row.max_difference[i]);
      if (i > 0 && row.max_residual[i] > 0.0) {
        out << " ratio=" << format_double(row.max_residual[i - 1] / row.max_residual[i]);
      }
      out << ';';
    }
    if (row.fitted_exponent) {
      out << " exponent=" << format_double(*row.fitted_exponent);
    } else {
      out << " exponent=exact (residual identically zero)";
    }
    out << '\n';
  }
  return out.str();
}

std::string run_csv(const Trajectory& tr, unsigned samples_per_step) {
  if (samples_per_step < 1) throw Error("samples per step must be >= 1");
  std::ostringstream out;
  out << "step,sample,t,is_node";
  for (std::size_t d = 0; d < tr.dim(); ++d) out << ",y" << d;
  out << '\n';
  const auto& mesh = tr.mesh();
  for (std::size_t n = 1; n < mesh.size(); ++n) {
    const double ta = mesh[n - 1];
    const double tb = mesh[n];
    for (unsigned j = 0; j <= samples_per_step; ++j) {
      const double s = j == samples_per_step ? tb : ta + (tb - ta) * j / samples_per_step;
      out << n << ',' << j << ',' << format_double(s) << ',' << (j == 0 || j == samples_per_step ? 1 : 0);
      for (double y : tr.eval(s)) out << ',' << format_double(y);
      out << '\n';
    }
  }
  return out.str();
}

VerifyReport verify(const TsrkTableau& t) {
  VerifyReport r;
  r.name = t.name;
  r.order = uniform_order(t);
  r.probe_k = static_cast<unsigned>(r.order.order + 1);
  r.output_probe = discrete_order_probe(t, r.probe_k);
  const auto k_stage = static_cast<unsigned>(r.order.stage_order + 1);
  r.stage_probes = stage_order_probes(t, k_stage);
  for (std::size_t row = 0; row <= t.stages(); ++row) {
    const CoeffPolynomial g = gamma(t, row, k_stage);
    if (!vanishes_on_domain(g, t.row_c(row))) {
      r.stage_obstructions.push_back("gamma[" + std::to_string(row + 1) + "," + std::to_string(k_stage) +
                                     "](a) = " + g.to_string("a"));
    }
  }
  return r;
}

std::string render_text(const VerifyReport& r) {
  std::ostringstream out;
  const auto& o = r.order;
  out << "method:              " << r.name << '\n';
  out << "uniform stage order: " << o.stage_order << '\n';
  out << "uniform order:       " << o.order << " (" << to_string(o.path) << ")\n";
  out << "v(1):                " << pretty(o.v_at_1) << " ~ " << format_double(o.v_at_1.to_double()) << '\n';
  out << "zero-stable:         " << (o.zero_stable ? "yes" : "NO (requires 0 <= v(1) < 2)") << '\n';
  out << "gamma_" << r.probe_k << "(1):          " << pretty(r.output_probe.value) << " ~ "
      << format_double(r.output_probe.value.to_double()) << '\n';
  out << "  bracket (k-1)!*gamma: " << pretty(r.output_probe.bracket) << '\n';
  if (!o.first_failing_condition.empty()) out << "order " << o.order + 1 << " blocked by: " << o.first_failing_condition << '\n';
  if (o.next_order_uncertified) out << "note: next order not certifiable by the implemented conditions\n";
  out << "stage probes k=" << o.stage_order + 1 << ":\n";
  for (std::size_t i = 0; i < r.stage_probes.size(); ++i) {
    const auto& sp = r.stage_probes[i];
    out << "  row " << i + 1 << ": at c_i " << pretty(sp.at_node.value) << ", at 1 " << pretty(sp.at_one.value)
        << " (bracket " << pretty(sp.at_one.bracket) << ")\n";
  }
  for (const auto& s : r.stage_obstructions) out << "  " << s << '\n';
  return out.str();
}

std::string render_json(const VerifyReport& r) {
  nlohmann::ordered_json j;
  const auto& o = r.order;
  j["method"] = r.name;
  j["stage_order"] = o.stage_order;
  j["order"] = o.order;
  j["path"] = to_string(o.path);
  j["v_at_1"] = o.v_at_1.to_string();
  j["v_at_1_approx"] = o.v_at_1.to_double();
  j["zero_stable"] = o.zero_stable;
  j["first_failing_condition"] = o.first_failing_condition;
  j["next_order_uncertified"] = o.next_order_uncertified;
  j["probe_k"] = r.probe_k;
  j["gamma_probe"] = r.output_probe.value.to_string();
  j["gamma_probe_bracket"] = r.output_probe.bracket.to_string();
  j["gamma_probe_approx"] = r.output_probe.value.to_double();
  auto& probes = j["stage_probes"] = nlohmann::ordered_json::array();
  for (const auto& sp : r.stage_probes) {
    probes.push_back({{"at_node", sp.at_node.value.to_string()},
                      {"at_one", sp.at_one.value.to_string()},
                      {"at_one_bracket", sp.at_one.bracket.to_string()}});
  }
  j["stage_obstructions"] = r.stage_obstructions;
  return j.dump(2) + "\n";
}

}  // namespace tsrk
