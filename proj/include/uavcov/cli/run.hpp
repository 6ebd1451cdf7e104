#ifndef UAVCOV_CLI_RUN_HPP
#define UAVCOV_CLI_RUN_HPP

#include <uavcov/cli/config.hpp>
#include <uavcov/closed_form.hpp>
#include <uavcov/heatmap.hpp>
#include <uavcov/monte_carlo.hpp>
#include <uavcov/oracle.hpp>
#include <uavcov/sweep.hpp>

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

namespace uavcov::cli {

enum ExitCode : int { kExitOk = 0, kExitConfig = 1, kExitValidation = 2 };

inline const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names{"classify", "analyze", "oracle", "mc",
                                              "sweep",    "optimize", "heatmap", "validate"};
  return names;
}

namespace detail {

inline std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

inline bool uses_closed_form(const std::string& sub, const RunConfig& c) {
  return sub == "classify" || sub == "analyze" || sub == "validate" ||
         (sub == "sweep" && c.sweep_evaluator == "closed_form") ||
         (sub == "optimize" && c.optimize_evaluator == "closed_form");
}

inline bool needs_alpha(const std::string& sub) {
  return sub == "classify" || sub == "analyze" || sub == "oracle" || sub == "mc" || sub == "heatmap";
}

/// Rejects inconsistent settings before any computation.
inline void check_ready(const std::string& sub, const RunConfig& c) {
  if (std::find(subcommands().begin(), subcommands().end(), sub) == subcommands().end())
    throw ConfigError("unknown subcommand '" + sub + "'");
  if (!c.beta_deg) throw ConfigError("scenario.beta_deg: beamwidth must be given explicitly");
  if (needs_alpha(sub) && !c.alpha_deg) throw ConfigError("scenario.alpha_deg: uptilt must be given for " + sub);
  try {
    c.scenario.validate_basic();
    c.assumptions.positions(c.scenario);
    if (uses_closed_form(sub, c)) {
      if (!(c.scenario.tau > 1.0)) throw ConfigError("scenario.tau_db: analytical evaluators require tau > 0 dB");
      if (needs_alpha(sub)) c.scenario.validate_analytical();
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(std::string("scenario: ") + e.what());
  }
  if (sub == "sweep" && !(c.sweep_hi_deg >= c.sweep_lo_deg)) throw ConfigError("sweep: alpha_max_deg < alpha_min_deg");
  if (sub == "optimize" && !(c.optimize_hi_deg > c.optimize_lo_deg))
    throw ConfigError("optimize: alpha_max_deg must exceed alpha_min_deg");
}

inline McConfig mc_config(const RunConfig& c) {
  McConfig m;
  m.n_samples = c.mc_samples;
  m.seed = c.mc_seed;
  m.assumptions = c.assumptions;
  m.los_mode = c.los_mode;
  m.workers = c.workers;
  return m;
}

inline Evaluator make_evaluator(const std::string& name, const RunConfig& c) {
  if (name == "closed_form") return closed_form_evaluator({c.case1_wedge, std::nullopt});
  if (name == "quadrature")
    return quadrature_evaluator(c.assumptions, c.grid_nx.value_or(2001), c.grid_nz.value_or(2001), c.workers);
  return monte_carlo_evaluator(mc_config(c));
}

inline nlohmann::json intermediates(const ClosedFormResult& r) {
  return {{"h3", r.crossing.h3},
          {"h4", r.crossing.h4},
          {"d2", r.borders.d2},
          {"d3", r.borders.d3},
          {"d4", r.borders.d4},
          {"d5", r.borders.d5},
          {"gamma1_deg", rad_to_deg(r.borders.gamma1)},
          {"gamma2_deg", rad_to_deg(r.borders.gamma2)},
          {"h_c3", r.corners.hc3},
          {"h_c4", r.corners.hc4},
          {"h_c5", r.corners.hc5},
          {"h_c6", r.corners.hc6}};
}

inline nlohmann::json mc_json(const McResult& r) {
  return {{"p_out", r.p_out}, {"std_err", r.std_err}, {"ci_lo", r.ci_lo}, {"ci_hi", r.ci_hi},
          {"n", r.n},         {"outages", r.outages}, {"seed", r.seed}};
}

}  // namespace detail

/// Executes a subcommand. Text results go to `out`, diagnostics to `err`; heatmap writes
/// `<output.path>.csv` and `<output.path>.ppm`.
inline int run(const std::string& sub, const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    detail::check_ready(sub, c);
  } catch (const Error& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  }

  const CorridorScenario& s = c.scenario;
  nlohmann::json j;
  j["command"] = sub;
  j["config"] = config_to_json(c);
  try {
    if (sub == "classify") {
      const ClosedFormResult r = outage(s, {c.case1_wedge, std::nullopt});
      out << "case=" << to_int(r.case_id) << '\n';
      j["case"] = to_int(r.case_id);
      j["intermediates"] = detail::intermediates(r);
      out << j.dump(2) << '\n';
      return kExitOk;
    }
    if (sub == "analyze") {
      const ClosedFormResult r = outage(s, {c.case1_wedge, std::nullopt});
      j["case"] = to_int(r.case_id);
      j["p_out"] = r.p_out;
      j["p_in"] = r.p_in;
      j["p_in_expression"] = r.p_in_expression;
      j["wedge_term"] = r.wedge_term;
      j["clamped"] = r.clamped;
      j["diagnostics"] = r.diagnostics;
      j["intermediates"] = detail::intermediates(r);
      out << j.dump(2) << '\n';
      return kExitOk;
    }
    if (sub == "oracle") {
      const std::size_t nx = c.grid_nx.value_or(2001);
      const std::size_t nz = c.grid_nz.value_or(2001);
      const double p_in = coverage_by_quadrature(s, c.assumptions, nx, nz, c.workers);
      j["p_in"] = p_in;
      j["p_out"] = 1.0 - p_in;
      j["n_x"] = nx;
      j["n_z"] = nz;
      out << j.dump(2) << '\n';
      return kExitOk;
    }
    if (sub == "mc") {
      j["result"] = detail::mc_json(estimate_outage(s, detail::mc_config(c)));
      out << j.dump(2) << '\n';
      return kExitOk;
    }
    if (sub == "sweep") {
      const SweepCurve curve = sweep_alpha(s, alpha_grid_deg(c.sweep_lo_deg, c.sweep_hi_deg, c.sweep_step_deg),
                                           detail::make_evaluator(c.sweep_evaluator, c));
      for (std::size_t i = 0; i < curve.size(); ++i)
        if (!curve.ok(i)) err << "alpha_deg=" << detail::fmt(rad_to_deg(curve.alphas[i])) << ": " << curve.errors[i] << '\n';
      if (c.output_format == "json") {
        nlohmann::json pts = nlohmann::json::array();
        for (std::size_t i = 0; i < curve.size(); ++i) {
          nlohmann::json p{{"alpha_deg", rad_to_deg(curve.alphas[i])}, {"evaluator", curve.evaluator}};
          if (curve.ok(i)) p["p_out"] = curve.p_out[i];
          else p["error"] = curve.errors[i];
          if (curve.cases[i]) p["case"] = to_int(*curve.cases[i]);
          if (curve.std_err[i] > 0.0) p["std_err"] = curve.std_err[i];
          pts.push_back(p);
        }
        j["points"] = pts;
        out << j.dump(2) << '\n';
      } else {
        out << "# config: " << j["config"].dump() << '\n';
        out << "alpha_deg,p_out,case,evaluator\n";
        for (std::size_t i = 0; i < curve.size(); ++i) {
          out << detail::fmt(rad_to_deg(curve.alphas[i])) << ',' << detail::fmt(curve.p_out[i]) << ','
              << (curve.cases[i] ? std::to_string(to_int(*curve.cases[i])) : std::string{}) << ','
              << curve.evaluator << '\n';
        }
      }
      return kExitOk;
    }
    if (sub == "optimize") {
      const OptimumResult r =
          find_optimal_alpha(s, deg_to_rad(c.optimize_lo_deg), deg_to_rad(c.optimize_hi_deg),
                             deg_to_rad(c.optimize_tol_deg), detail::make_evaluator(c.optimize_evaluator, c));
      j["evaluator"] = c.optimize_evaluator;
      j["alpha_deg"] = rad_to_deg(r.alpha);
      j["p_out"] = r.p_out;
      j["bracket_deg"] = {rad_to_deg(r.bracket_lo), rad_to_deg(r.bracket_hi)};
      j["evaluations"] = r.evaluations;
      j["not_unimodal"] = r.not_unimodal;
      if (r.not_unimodal) err << "warning: objective is not unimodal on the search interval\n";
      out << j.dump(2) << '\n';
      return kExitOk;
    }
    if (sub == "heatmap") {
      const SinrField f = sinr_field(s, c.assumptions, c.grid_nx.value_or(500), c.grid_nz.value_or(300),
                                     std::nullopt, std::nullopt, c.workers);
      const std::string base = c.output_path.empty() ? "heatmap" : c.output_path;
      const std::string comment = "config: " + j["config"].dump();
      {
        std::ofstream csv(base + ".csv");
        if (!csv) throw ConfigError("output.path: cannot write '" + base + ".csv'");
        write_field_csv(csv, f, comment);
      }
      {
        std::ofstream ppm(base + ".ppm", std::ios::binary);
        if (!ppm) throw ConfigError("output.path: cannot write '" + base + ".ppm'");
        write_field_ppm(ppm, f, comment);
      }
      j["csv"] = base + ".csv";
      j["ppm"] = base + ".ppm";
      j["nx"] = f.nx;
      j["nz"] = f.nz;
      j["covered_fraction_band"] = covered_fraction(f, s.tau_db(), f.band);
      j["contour_segments"] = coverage_contour(f, s.tau_db()).size();
      out << j.dump(2) << '\n';
      return kExitOk;
    }
    if (sub == "validate") {
      RunConfig mc = c;
      mc.assumptions = OracleAssumptions::matched();
      double max_quad = 0.0;
      double max_mc = 0.0;
      bool pass = true;
      nlohmann::json rows = nlohmann::json::array();
      for (double a_deg : c.validate_alphas_deg) {
        CorridorScenario sa = s;
        sa.alpha = deg_to_rad(a_deg);
        const ClosedFormResult cf = outage(sa, {c.case1_wedge, std::nullopt});
        const double q = 1.0 - coverage_by_quadrature(sa, mc.assumptions, c.validate_grid, c.validate_grid, c.workers);
        const McResult m = estimate_outage(sa, detail::mc_config(mc));
        const double dq = std::abs(cf.p_out - q);
        const double dm = std::abs(cf.p_out - m.p_out);
        const double mc_tol = std::max(c.validate_tolerance, 4.0 * m.std_err);
        const bool ok = dq <= c.validate_tolerance && dm <= mc_tol;
        pass = pass && ok;
        max_quad = std::max(max_quad, dq);
        max_mc = std::max(max_mc, dm);
        rows.push_back({{"alpha_deg", a_deg},
                        {"case", to_int(cf.case_id)},
                        {"closed_form", cf.p_out},
                        {"quadrature", q},
                        {"monte_carlo", m.p_out},
                        {"mc_std_err", m.std_err},
                        {"pass", ok}});
      }
      j["rows"] = rows;
      j["max_abs_closed_vs_quadrature"] = max_quad;
      j["max_abs_closed_vs_mc"] = max_mc;
      j["pass"] = pass;
      out << j.dump(2) << '\n';
      if (!pass) err << "validation failed: max |closed-quadrature| = " << detail::fmt(max_quad) << '\n';
      return pass ? kExitOk : kExitValidation;
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  err << "unknown subcommand '" << sub << "'\n";
  return kExitConfig;
}

}  // namespace uavcov::cli

#endif  // UAVCOV_CLI_RUN_HPP
