#ifndef UAVCOV_CLOSED_FORM_HPP
#define UAVCOV_CLOSED_FORM_HPP

#include <uavcov/error.hpp>
#include <uavcov/geometry.hpp>
#include <uavcov/units.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace uavcov {

namespace detail {

/// Running sum of named closed-form terms; aborts on the first non-finite one.
class TermSum {
public:
  TermSum& add(const char* name, double value) {
    if (!std::isfinite(value)) throw NonFiniteTerm(name, value);
    total_ += value;
    return *this;
  }
  double value() const noexcept { return total_; }

private:
  double total_ = 0.0;
};

inline void require_finite(const char* name, double v) {
  if (!std::isfinite(v)) throw NonFiniteTerm(name, v);
}

/// Integral over [lo, hi] of max(0, min_k upper_k(h) - max_k lower_k(h)) for linear bounds
/// a + b h. Exact: the integrand is linear between pairwise line intersections.
struct Line {
  double a;
  double b;
  double at(double h) const noexcept { return a + b * h; }
};

template <std::size_t NU, std::size_t NL>
double band_area(const std::array<Line, NU>& upper, const std::array<Line, NL>& lower, double lo, double hi) {
  if (!(hi > lo)) return 0.0;
  std::vector<double> knots{lo, hi};
  std::array<Line, NU + NL> all{};
  std::copy(upper.begin(), upper.end(), all.begin());
  std::copy(lower.begin(), lower.end(), all.begin() + NU);
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      const double db = all[i].b - all[j].b;
      if (db == 0.0) continue;
      const double h = (all[j].a - all[i].a) / db;
      if (h > lo && h < hi) knots.push_back(h);
    }
  }
  std::sort(knots.begin(), knots.end());
  auto width = [&](double h) {
    double u = upper[0].at(h);
    for (const auto& l : upper) u = std::min(u, l.at(h));
    double w = lower[0].at(h);
    for (const auto& l : lower) w = std::max(w, l.at(h));
    return std::max(0.0, u - w);
  };
  double area = 0.0;
  for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
    const double a = knots[k];
    const double b = knots[k + 1];
    if (b > a) area += 0.5 * (b - a) * (width(a) + width(b));
  }
  return area;
}

}  // namespace detail

/// Covered fraction of the half corridor from the case expression of each uptilt regime.
///
/// Case 1 truncates h_c3 into [h1, h2] (first integral empty when h_c3 <= h1). `notes`, when
/// given, receives a line for every such adjustment.
inline double coverage_case_expression(const CorridorScenario& s, CaseId c,
                                       std::vector<std::string>* notes = nullptr) {
  s.validate_analytical();
  const BorderlineGeometry b = borderline_geometry(s);
  const CrossingHeights x = crossing_heights(s);
  const CornerHeights k = corner_heights(s, b);

  const double d1 = s.d1;
  const double h1 = s.h1;
  const double h2 = s.h2;
  const double H = h2 - h1;
  const double D = d1 * H;
  const double d2 = b.d2;
  const double d4 = b.d4;
  const double h3 = x.h3;
  const double h4 = x.h4;
  const double hc4 = k.hc4;
  const double hc5 = k.hc5;
  const double hc6 = k.hc6;
  const double ca = cot(s.alpha);
  const double cab = cot(s.alpha + s.beta);
  const double cg1 = cot(b.gamma1);
  const double cg2 = cot(b.gamma2);
  using Named = std::pair<const char*, double>;
  for (const auto& [n, v] : std::initializer_list<Named>{{"h3", h3}, {"h4", h4}, {"h_c4", hc4}, {"h_c5", hc5}, {"h_c6", hc6},
                      {"cot(alpha)", ca}, {"cot(alpha+beta)", cab}, {"cot(gamma1)", cg1}, {"cot(gamma2)", cg2}})
    detail::require_finite(n, v);

  detail::TermSum t;
  switch (c) {
    case CaseId::One: {
      double hc3 = k.hc3;
      detail::require_finite("h_c3", hc3);
      if (hc3 > h2 || hc3 < h1) {
        const double clipped = std::clamp(hc3, h1, h2);
        if (notes)
          notes->push_back("h_c3=" + std::to_string(hc3) + " outside [h1,h2]; truncated to " +
                           std::to_string(clipped));
        hc3 = clipped;
      }
      t.add("lobe-edge band", (-hc3 * hc3 + h1 * h1) / D * cab)
          .add("I12 border slope", -(h1 + h2) / d1 * cg1)
          .add("I12 border offset", 2.0 * d2 / d1)
          .add("I23 border slope", (-h2 * h2 + hc3 * hc3) / D * cg2)
          .add("I23 border offset", -2.0 * d4 * (h2 - hc3) / D);
      return t.value();
    }
    case CaseId::Two: {
      t.add("unit", 1.0)
          .add("BS-1 upper edge", -(-h4 * h4 + h1 * h1) / D * cab)
          .add("I12 border slope", (h1 + h2) / d1 * cg1)
          .add("I12 border offset", -2.0 * d2 / d1)
          .add("BS-2 lower edge slope", -(hc4 * hc4 - h4 * h4) / D * ca)
          .add("BS-2 lower edge offset", 2.0 * (hc4 - h4) / H)
          .add("BS-3 lower edge slope", -(-hc5 * hc5 + hc4 * hc4) / D * ca)
          .add("BS-3 lower edge offset", -2.0 * (hc5 - hc4) / H)
          .add("I23 border slope", -(-h2 * h2 + hc5 * hc5) / D * cg2)
          .add("I23 border offset", 2.0 * d4 * (h2 - hc5) / D);
      return 1.0 - t.value();
    }
    case CaseId::Three: {
      t.add("unit", 1.0)
          .add("full lobe band", -(h3 * h3 - h1 * h1) / D * (-cab + ca))
          .add("BS-2 lower edge band", (hc6 * hc6 - h3 * h3) / D * (cab + ca))
          .add("BS-2 lower edge offset", -2.0 * (hc6 - h3) / H)
          .add("I12 border slope", (h2 * h2 - hc6 * hc6) / D * cg1)
          .add("I12 border offset", -2.0 * d2 * (h2 - hc6) / D)
          .add("BS-1 upper edge", (h4 * h4 - hc6 * hc6) / D * cab)
          .add("BS-2 lower edge slope", -(hc4 * hc4 - h4 * h4) / D * ca)
          .add("BS-2 lower edge offset 2", 2.0 * (hc4 - h4) / H)
          .add("BS-3 lower edge slope", (hc5 * hc5 - hc4 * hc4) / D * ca)
          .add("BS-3 lower edge offset", -2.0 * (hc5 - hc4) / H)
          .add("I23 border slope", (h2 * h2 - hc5 * hc5) / D * cg2)
          .add("I23 border offset", 2.0 * d4 * (h2 - hc5) / D);
      return 1.0 - t.value();
    }
    case CaseId::Four: {
      t.add("unit", 1.0)
          .add("full lobe band", -(h3 * h3 - h1 * h1) / D * (-cab + ca))
          .add("BS-2 lower edge band", (hc6 * hc6 - h3 * h3) / D * (cab + ca))
          .add("BS-2 lower edge offset", -2.0 * (hc6 - h3) / H)
          .add("I12 border slope", (h2 * h2 - hc6 * hc6) / D * cg1)
          .add("I12 border offset", -2.0 * d2 * (h2 - hc6) / D)
          .add("BS-1 upper edge", (h4 * h4 - hc6 * hc6) / D * cab)
          .add("BS-2 lower edge slope", -(h2 * h2 - h4 * h4) / D * ca)
          .add("BS-2 lower edge offset 2", 2.0 * (h2 - h4) / H);
      return 1.0 - t.value();
    }
    case CaseId::Five: {
      t.add("unit", 1.0)
          .add("full lobe band", -(h3 * h3 - h1 * h1) / D * (-cab + ca))
          .add("BS-2 lower edge band", (hc6 * hc6 - h3 * h3) / D * (cab + ca))
          .add("BS-2 lower edge offset", -2.0 * (hc6 - h3) / H)
          .add("upper edge and I12 border", (h2 * h2 - hc6 * hc6) / D * (cab + cg1))
          .add("I12 border offset", -2.0 * d2 * (h2 - hc6) / D);
      return 1.0 - t.value();
    }
    case CaseId::Six: {
      t.add("full lobe strip", (h2 + h1) / d1 * (-cab + ca));
      return t.value();
    }
  }
  throw CaseUndefined("unknown case id");
}

/// Area fraction, inside Case 1, of the strip that BS-2 serves while BS-3's lobe is still
/// below the UAV (S2 wedge). It reaches the corridor once d1 tan(alpha) > h1, before h4 > h1
/// switches the classifier to Case 2.
inline double case1_bs2_wedge_coverage(const CorridorScenario& s) {
  s.validate_analytical();
  const BorderlineGeometry b = borderline_geometry(s);
  const double d1 = s.d1;
  const double ca = cot(s.alpha);
  const double cab = cot(s.alpha + s.beta);
  const double cg2 = cot(b.gamma2);
  using detail::Line;
  // Left of BS-1's upper edge and of the I23 border, inside BS-2's lobe, right of BS-3's lower edge.
  const std::array<Line, 4> upper{Line{0.0, cab}, Line{b.d4, cg2}, Line{d1, -cab}, Line{d1 / 2.0, 0.0}};
  const std::array<Line, 3> lower{Line{d1, -ca}, Line{-d1, ca}, Line{0.0, 0.0}};
  const double area = detail::band_area(upper, lower, s.h1, s.h2);
  return area / (d1 / 2.0 * (s.h2 - s.h1));
}

enum class Case1Wedge { Include, ExpressionOnly };

struct ClosedFormOptions {
  Case1Wedge case1_wedge = Case1Wedge::Include;
  std::optional<CaseId> case_override;  // research use; flagged in the result
};

struct ClosedFormResult {
  double p_out = 0.0;
  double p_in = 0.0;
  double p_in_raw = 0.0;      // before clamping into [0, 1]
  double p_in_expression = 0.0;  // case expression alone
  double wedge_term = 0.0;    // Case-1 S2 wedge, zero otherwise
  bool clamped = false;
  bool case_overridden = false;
  CaseId case_id = CaseId::One;
  CrossingHeights crossing{};
  BorderlineGeometry borders{};
  CornerHeights corners{};
  std::vector<std::string> diagnostics;
};

/// Classifies the regime and evaluates its coverage expression.
inline ClosedFormResult outage(const CorridorScenario& s, const ClosedFormOptions& opts = {}) {
  s.validate_analytical();
  ClosedFormResult r;
  const CaseId natural = classify_case(s);
  r.case_id = opts.case_override.value_or(natural);
  r.case_overridden = opts.case_override.has_value() && *opts.case_override != natural;
  if (r.case_overridden)
    r.diagnostics.push_back("case overridden: classifier says " + std::to_string(to_int(natural)));

  r.borders = borderline_geometry(s);
  r.crossing = crossing_heights(s);
  r.corners = corner_heights(s, r.borders);
  r.p_in_expression = coverage_case_expression(s, r.case_id, &r.diagnostics);
  if (r.case_id == CaseId::One && opts.case1_wedge == Case1Wedge::Include) {
    r.wedge_term = case1_bs2_wedge_coverage(s);
    if (r.wedge_term > 0.0) r.diagnostics.push_back("case-1 BS-2 wedge term " + std::to_string(r.wedge_term));
  }
  r.p_in_raw = r.p_in_expression + r.wedge_term;
  r.p_in = std::clamp(r.p_in_raw, 0.0, 1.0);
  if (r.p_in != r.p_in_raw) {
    r.clamped = true;
    r.diagnostics.push_back("raw coverage " + std::to_string(r.p_in_raw) + " clamped into [0,1]");
  }
  r.p_out = 1.0 - r.p_in;
  return r;
}

}  // namespace uavcov

#endif  // UAVCOV_CLOSED_FORM_HPP
