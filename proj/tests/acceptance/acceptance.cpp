// Acceptance gate: one PASS/FAIL line per criterion. Exit status is non-zero if any fails.

#include <uavcov/closed_form.hpp>
#include <uavcov/geometry.hpp>
#include <uavcov/heatmap.hpp>
#include <uavcov/monte_carlo.hpp>
#include <uavcov/oracle.hpp>
#include <uavcov/sweep.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace uavcov;

namespace {

// Tolerances
constexpr double kTriangleTol = 0.02;        // closed form vs quadrature / MC floor
constexpr double kTriangleSigmas = 4.0;      // MC band in standard errors
constexpr double kTriangleBudgetS = 120.0;   // runtime bound for criterion 2
constexpr double kClassifyBudgetS = 1.0;
constexpr double kPlateauTol = 1e-3;
constexpr double kBorderRelTol = 1e-9;
constexpr double kContourDbTol = 0.5;
constexpr double kGoldenLengthTol = 0.01;  // m
constexpr double kGoldenNoiseTol = 0.01;   // dB
constexpr double kCaseSixFormulaTol = 1e-9;
constexpr double kCaseSixStatedTol = 5e-6;  // stated value carries five decimals
constexpr double kCaseSixOracleTol = 0.02;
constexpr double kPdfTol = 1e-6;
constexpr double kKsCritical1pct = 1.628;  // times 1/sqrt(n)

constexpr std::size_t kQuadGrid = 2001;
constexpr std::uint64_t kMcSamples = 1'000'000;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

CorridorScenario at(double alpha_deg, double beta_deg = 40.0) {
  return default_scenario(deg_to_rad(alpha_deg), deg_to_rad(beta_deg));
}

int failures = 0;

void report(int id, const char* title, bool pass, const std::string& detail) {
  std::printf("%s criterion %d: %s | %s\n", pass ? "PASS" : "FAIL", id, title, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* f, double a = 0, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

void criterion_1() {
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<std::pair<double, int>> want{{8.0, 2}, {13.0, 3}, {17.0, 4}, {25.0, 5}};
  bool ok = true;
  std::string got;
  for (const auto& [a, c] : want) {
    const int id = to_int(classify_case(at(a)));
    ok = ok && id == c;
    got += (got.empty() ? "" : "/") + std::to_string(id);
  }
  const double dt = seconds_since(t0);
  ok = ok && dt < kClassifyBudgetS;
  report(1, "case classification at alpha 8/13/17/25 deg", ok, "cases " + got + fmt(", %.4f s", dt));
}

void criterion_2() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst_quad = 0.0;
  double worst_mc_ratio = 0.0;  // |cf - mc| / allowed
  std::string where_quad;
  std::string where_mc;
  bool ok = true;
  McConfig m;
  m.n_samples = kMcSamples;
  for (double beta : {30.0, 40.0}) {
    for (double a = 4.0; a <= 34.0 + 1e-9; a += 2.0) {
      const auto s = at(a, beta);
      const double cf = outage(s).p_out;
      const double q = 1.0 - coverage_by_quadrature(s, OracleAssumptions::matched(), kQuadGrid, kQuadGrid);
      const auto mc = estimate_outage(s, m);
      const double dq = std::abs(cf - q);
      const double allowed = std::max(kTriangleTol, kTriangleSigmas * mc.std_err);
      const double dm = std::abs(cf - mc.p_out);
      if (dq > kTriangleTol || dm > allowed) {
        ok = false;
        std::printf("  triangle miss: beta=%g alpha=%g cf=%.5f quad=%.5f mc=%.5f\n", beta, a, cf, q, mc.p_out);
      }
      if (dq > worst_quad) {
        worst_quad = dq;
        where_quad = fmt("beta=%g alpha=%g", beta, a);
      }
      if (dm / allowed > worst_mc_ratio) {
        worst_mc_ratio = dm / allowed;
        where_mc = fmt("%.4f at beta=%g alpha=%g", dm, beta, a);
      }
    }
  }
  const double dt = seconds_since(t0);
  ok = ok && dt <= kTriangleBudgetS;
  report(2, "closed form vs quadrature(2001^2) and MC(1e6), 32 scenarios", ok,
         fmt("max |cf-quad| = %.4f (", worst_quad) + where_quad + "), max |cf-mc| = " + where_mc +
             fmt(", %.1f s", dt));
}

void criterion_3() {
  McConfig strongest;
  strongest.n_samples = kMcSamples;
  strongest.assumptions.interference = InterferenceMode::SumAll;
  McConfig nearest = strongest;
  nearest.assumptions.association = Association::Nearest;
  bool ok = true;
  std::size_t pointwise_violations = 0;
  double min_gap = 1.0;
  for (double a : alpha_grid_deg(2.0, 38.0, 1.0)) {
    CorridorScenario s = at(13.0);
    s.alpha = a;
    const auto rs = estimate_outage(s, strongest);
    const auto rn = estimate_outage(s, nearest);
    if (rs.outages > rn.outages) ok = false;
    min_gap = std::min(min_gap, rn.p_out - rs.p_out);
    for (const auto& p : paired_association_sinr(s, strongest, 0, 20000))
      if (p.strongest < p.nearest) ++pointwise_violations;
  }
  ok = ok && pointwise_violations == 0;
  report(3, "strongest association never worse than nearest (SumAll, shared seed)", ok,
         fmt("min p_out(nearest) - p_out(strongest) = %.5f over 37 angles, per-sample violations = %.0f", min_gap,
             static_cast<double>(pointwise_violations)));
}

void criterion_4() {
  const auto grid = alpha_grid_deg(2.0, 38.0, 1.0);
  const auto cf = sweep_alpha(at(13.0), grid, closed_form_evaluator());
  McConfig m;
  m.n_samples = kMcSamples;
  const auto mc = sweep_alpha(at(13.0), grid, monte_carlo_evaluator(m));
  const auto rc = unimodality_report(cf, kPlateauTol);
  const auto rm = unimodality_report(mc, kPlateauTol);
  report(4, "single minimum of closed-form and MC sweeps (beta 40 deg)", rc.pass && rm.pass,
         fmt("closed-form minima = %.0f (alpha* ~ %.0f deg), MC minima = %.0f (alpha* ~ %.0f deg)",
             static_cast<double>(rc.minima), rad_to_deg(grid[rc.valley_indices.front()]),
             static_cast<double>(rm.minima), rad_to_deg(grid[rm.valley_indices.front()])));
}

void criterion_5() {
  auto s1000 = at(13.0);
  auto s1300 = s1000;
  s1300.d1 = 1300.0;
  const double tol = deg_to_rad(0.01);
  const auto r1 = find_optimal_alpha(s1000, deg_to_rad(2.0), deg_to_rad(38.0), tol, closed_form_evaluator());
  const auto r2 = find_optimal_alpha(s1300, deg_to_rad(2.0), deg_to_rad(38.0), tol, closed_form_evaluator());
  report(5, "wider BS spacing lowers the minimum closed-form outage", r2.p_out < r1.p_out,
         fmt("d1=1000: %.5f at %.2f deg, d1=1300: %.5f at %.2f deg", r1.p_out, rad_to_deg(r1.alpha), r2.p_out,
             rad_to_deg(r2.alpha)));
}

void criterion_6() {
  const auto s = at(8.0);
  const auto b = borderline_geometry(s);
  const double d1 = s.d1;
  const std::vector<double> ratios{simplified_sinr(b.d2, 0.0, 0.0, d1), simplified_sinr(b.d3, s.h2, 0.0, d1),
                                   simplified_sinr(b.d4, 0.0, d1, -d1), simplified_sinr(b.d5, s.h2, d1, -d1)};
  double worst_rel = 0.0;
  for (double r : ratios) worst_rel = std::max(worst_rel, std::abs(r / s.tau - 1.0));

  // Contour cells of the matched field next to the (d2, 0)-(d3, h2) border, inside the corridor.
  const auto f = sinr_field(s, OracleAssumptions::matched(), 1000, 600);
  const auto segs = coverage_contour(f, s.tau_db());
  std::size_t checked = 0;
  double worst_db = 0.0;
  for (const auto& seg : segs) {
    const double xm = 0.5 * (seg.x0 + seg.x1);
    const double zm = 0.5 * (seg.z0 + seg.z1);
    if (zm < s.h1 || zm > s.h2) continue;
    const double x_line = b.d2 + (b.d3 - b.d2) * zm / s.h2;
    if (std::abs(xm - x_line) > 5.0) continue;
    for (const auto& e : seg.edges) {
      worst_db = std::max({worst_db, std::abs(f.sinr_db[e.inside] - s.tau_db()),
                           std::abs(f.sinr_db[e.outside] - s.tau_db())});
    }
    ++checked;
  }
  const bool ok = worst_rel <= kBorderRelTol && checked >= 300 && worst_db <= kContourDbTol;
  report(6, "borderline endpoints hit tau; border contour cells near 2 dB", ok,
         fmt("max endpoint rel. error = %.2e, %.0f contour segments, max |SINR-2 dB| = %.3f dB", worst_rel,
             static_cast<double>(checked), worst_db));
}

void criterion_7() {
  const auto s = at(35.0);
  const auto b = borderline_geometry(s);
  const bool lengths = std::abs(b.d2 - 442.69) <= kGoldenLengthTol && std::abs(b.d3 - 421.68) <= kGoldenLengthTol &&
                       std::abs(b.d4 - 114.62) <= kGoldenLengthTol && std::abs(b.d5 - 125.08) <= kGoldenLengthTol;
  const double n0 = s.radio.noise_dbm();
  const bool noise = std::abs(n0 - (-91.99)) <= kGoldenNoiseTol;
  const auto r = outage(s);
  const double formula = 1.0 - (s.h2 + s.h1) / s.d1 * (cot(s.alpha) - cot(s.alpha + s.beta));
  const double oracle = 1.0 - coverage_by_quadrature(s, OracleAssumptions::matched(), kQuadGrid, kQuadGrid);
  const bool six = r.case_id == CaseId::Six && std::abs(r.p_out - formula) <= kCaseSixFormulaTol &&
                   std::abs(r.p_out - 0.53592) <= kCaseSixStatedTol && std::abs(r.p_out - oracle) <= kCaseSixOracleTol;
  report(7, "golden scalars: borderlines, noise floor, case-6 outage", lengths && noise && six,
         fmt("d2..d5 = %.4f/%.4f/%.4f/%.4f m, ", b.d2, b.d3, b.d4, b.d5) +
             fmt("N0 = %.4f dBm, case-6 p_out = %.9f (oracle %.6f)", n0, r.p_out, oracle));
}

void criterion_8() {
  // theta1 density normalisation over each height
  double worst_pdf = 0.0;
  for (double h : {100.0, 150.0, 200.0, 250.0, 300.0}) {
    const double lo = std::atan(2.0 * h / 1000.0);
    const double hi = kPi / 2.0;
    const int n = 200000;
    double sum = 0.0;
    for (int k = 0; k < n; ++k) sum += theta1_pdf(lo + (k + 0.5) * (hi - lo) / n, h, 1000.0);
    worst_pdf = std::max(worst_pdf, std::abs(sum * (hi - lo) / n - 1.0));
  }

  // KS on both sampled coordinates
  const auto s = at(13.0);
  const CounterRng rng(2024);
  const std::size_t n = 200000;
  std::vector<double> ux(n);
  std::vector<double> uz(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto p = sample_point(rng, i, s);
    ux[i] = p.d_x / (s.d1 / 2.0);
    uz[i] = (p.h_x - s.h1) / (s.h2 - s.h1);
  }
  auto ks = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const double m = static_cast<double>(v.size());
    double d = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i)
      d = std::max({d, static_cast<double>(i + 1) / m - v[i], v[i] - static_cast<double>(i) / m});
    return d;
  };
  const double crit = kKsCritical1pct / std::sqrt(static_cast<double>(n));
  const double dx = ks(ux);
  const double dz = ks(uz);

  // identical seeds across worker counts
  McConfig m;
  m.n_samples = kMcSamples;
  m.seed = 7;
  m.workers = 1;
  const auto one = estimate_outage(s, m);
  m.workers = 8;
  const auto eight = estimate_outage(s, m);
  const bool same = one.outages == eight.outages && one.p_out == eight.p_out && one.std_err == eight.std_err;

  report(8, "pdf normalisation, sampler KS at 1%, 1 vs 8 worker determinism",
         worst_pdf <= kPdfTol && dx < crit && dz < crit && same,
         fmt("pdf error = %.1e, KS D = %.5f/%.5f (crit %.5f)", worst_pdf, dx, dz, crit) +
             (same ? ", MC identical" : ", MC differs"));
}

}  // namespace

int main() {
  const std::vector<std::function<void()>> criteria{criterion_1, criterion_2, criterion_3, criterion_4,
                                                    criterion_5, criterion_6, criterion_7, criterion_8};
  for (const auto& c : criteria) {
    try {
      c();
    } catch (const std::exception& e) {
      std::printf("FAIL criterion: unexpected exception: %s\n", e.what());
      ++failures;
    }
  }
  std::printf("%s: %d failing criteria\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}
