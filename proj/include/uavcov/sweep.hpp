#ifndef UAVCOV_SWEEP_HPP
#define UAVCOV_SWEEP_HPP

#include <uavcov/closed_form.hpp>
#include <uavcov/error.hpp>
#include <uavcov/geometry.hpp>
#include <uavcov/monte_carlo.hpp>
#include <uavcov/oracle.hpp>

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace uavcov {

struct EvalPoint {
  double p_out = 0.0;
  std::optional<CaseId> case_id;
  double std_err = 0.0;
};

/// Outage evaluator over scenarios, tagged for output.
struct Evaluator {
  std::string tag;
  std::function<EvalPoint(const CorridorScenario&)> fn;

  EvalPoint operator()(const CorridorScenario& s) const { return fn(s); }
};

inline Evaluator closed_form_evaluator(ClosedFormOptions opts = {}) {
  return {"closed_form", [opts](const CorridorScenario& s) {
            const ClosedFormResult r = outage(s, opts);
            return EvalPoint{r.p_out, r.case_id, 0.0};
          }};
}

inline Evaluator quadrature_evaluator(OracleAssumptions a, std::size_t n_x, std::size_t n_z, std::size_t workers = 0) {
  return {"quadrature", [a = std::move(a), n_x, n_z, workers](const CorridorScenario& s) {
            return EvalPoint{1.0 - coverage_by_quadrature(s, a, n_x, n_z, workers), std::nullopt, 0.0};
          }};
}

/// Every call reuses the same seed, so an alpha search sees common random numbers.
inline Evaluator monte_carlo_evaluator(McConfig cfg) {
  return {"monte_carlo", [cfg = std::move(cfg)](const CorridorScenario& s) {
            const McResult r = estimate_outage(s, cfg);
            return EvalPoint{r.p_out, std::nullopt, r.std_err};
          }};
}

/// Degree grid lo, lo + step, ..., <= hi (with a small slack for rounding), in radians.
inline std::vector<double> alpha_grid_deg(double lo_deg, double hi_deg, double step_deg) {
  if (!(step_deg > 0.0) || !(hi_deg >= lo_deg)) throw DomainError("invalid alpha grid");
  std::vector<double> g;
  const auto n = static_cast<std::size_t>(std::floor((hi_deg - lo_deg) / step_deg + 1e-9));
  for (std::size_t k = 0; k <= n; ++k) g.push_back(deg_to_rad(lo_deg + static_cast<double>(k) * step_deg));
  return g;
}

struct SweepCurve {
  std::string evaluator;
  std::vector<double> alphas;  // rad
  std::vector<double> p_out;   // NaN where the evaluator failed
  std::vector<double> std_err;
  std::vector<std::optional<CaseId>> cases;
  std::vector<std::string> errors;  // empty string when the point succeeded

  std::size_t size() const noexcept { return alphas.size(); }
  bool ok(std::size_t i) const noexcept { return errors[i].empty(); }
};

inline SweepCurve sweep_alpha(const CorridorScenario& tmpl, const std::vector<double>& grid, const Evaluator& ev) {
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1])) throw DomainError("alpha grid must be strictly increasing");
  SweepCurve c;
  c.evaluator = ev.tag;
  for (double a : grid) {
    CorridorScenario s = tmpl;
    s.alpha = a;
    c.alphas.push_back(a);
    try {
      const EvalPoint p = ev(s);
      c.p_out.push_back(p.p_out);
      c.std_err.push_back(p.std_err);
      c.cases.push_back(p.case_id);
      c.errors.emplace_back();
    } catch (const Error& e) {
      c.p_out.push_back(std::numeric_limits<double>::quiet_NaN());
      c.std_err.push_back(0.0);
      c.cases.push_back(std::nullopt);
      c.errors.emplace_back(e.what());
    }
  }
  return c;
}

struct UnimodalityReport {
  std::size_t minima = 0;
  std::vector<std::size_t> valley_indices;
  bool pass = false;
};

/// Counts valleys with hysteresis `plateau_tol`: a turn is only registered once the curve has
/// moved more than the tolerance away from the running extreme. A monotone or flat curve has one.
inline UnimodalityReport unimodality_report(const std::vector<double>& values, double plateau_tol) {
  std::vector<double> v;
  for (double x : values)
    if (std::isfinite(x)) v.push_back(x);
  if (v.size() < 3) throw DomainError("unimodality check needs at least 3 points");
  // map back to original indices
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < values.size(); ++i)
    if (std::isfinite(values[i])) idx.push_back(i);

  UnimodalityReport r;
  bool rising = false;
  std::size_t arg_min = 0;
  double run_min = v[0];
  double run_max = v[0];
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!rising) {
      if (v[i] < run_min) {
        run_min = v[i];
        arg_min = i;
      }
      if (v[i] > run_min + plateau_tol) {
        r.valley_indices.push_back(idx[arg_min]);
        rising = true;
        run_max = v[i];
      }
    } else {
      run_max = std::max(run_max, v[i]);
      if (v[i] < run_max - plateau_tol) {
        rising = false;
        run_min = v[i];
        arg_min = i;
      }
    }
  }
  if (!rising) r.valley_indices.push_back(idx[arg_min]);
  r.minima = r.valley_indices.size();
  r.pass = r.minima == 1;
  return r;
}

inline UnimodalityReport unimodality_report(const SweepCurve& c, double plateau_tol) {
  return unimodality_report(c.p_out, plateau_tol);
}

struct OptimumResult {
  double alpha = 0.0;
  double p_out = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  std::size_t evaluations = 0;
  bool not_unimodal = false;
};

/// Golden-section minimisation of outage over alpha until the bracket is narrower than `tol`.
/// A post-check samples the original bracket; a sample more than `noise_tol` below the result
/// sets `not_unimodal`.
inline OptimumResult find_optimal_alpha(const CorridorScenario& tmpl, double lo, double hi, double tol,
                                        const Evaluator& ev, double noise_tol = 1e-3, std::size_t check_points = 17) {
  if (!(lo < hi)) throw DomainError("optimal alpha search needs lo < hi");
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  OptimumResult r;
  auto f = [&](double a) {
    CorridorScenario s = tmpl;
    s.alpha = a;
    ++r.evaluations;
    return ev(s).p_out;
  };
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  r.bracket_lo = a;
  r.bracket_hi = b;
  r.alpha = 0.5 * (a + b);
  r.p_out = f(r.alpha);

  for (std::size_t k = 0; k < check_points; ++k) {
    const double t = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(check_points - 1);
    if (f(t) < r.p_out - noise_tol) r.not_unimodal = true;
  }
  return r;
}

}  // namespace uavcov

#endif  // UAVCOV_SWEEP_HPP
