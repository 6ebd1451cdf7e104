#ifndef UAVCOV_GEOMETRY_HPP
#define UAVCOV_GEOMETRY_HPP

#include <uavcov/error.hpp>
#include <uavcov/propagation.hpp>
#include <uavcov/units.hpp>

#include <cmath>
#include <string>

namespace uavcov {

/// 2D corridor cross-section between BS-1 (x = 0) and BS-2 (x = d1).
///
/// Heights are measured from the BS antenna height. Angles are radians, `tau` is linear.
struct CorridorScenario {
  double d1 = 1000.0;
  double h1 = 100.0;
  double h2 = 300.0;
  double alpha = deg_to_rad(13.0);
  double beta = deg_to_rad(40.0);
  double tau = db_to_linear(2.0);
  LinkBudget radio{};

  double tau_db() const noexcept { return linear_to_db(tau); }

  /// Checks that hold for every evaluator, including Monte Carlo with downtilt.
  void validate_basic() const {
    if (!(d1 > 0.0)) throw DomainError("d1 must be positive");
    if (!(h1 > 0.0 && h1 < h2)) throw DomainError("corridor heights must satisfy 0 < h1 < h2");
    if (!(beta > 0.0)) throw DomainError("beamwidth must be positive");
    if (!(alpha + beta < kPi / 2.0)) throw DomainError("alpha + beta must stay below 90 degrees");
    if (!(tau > 0.0)) throw DomainError("SINR threshold must be positive");
    radio.validate();
  }

  /// Preconditions of the closed forms and the borderline construction.
  void validate_analytical() const {
    validate_basic();
    if (!(alpha > 0.0)) throw PreconditionViolation("analytical evaluators require alpha > 0");
    if (!(tau > 1.0)) throw TauOutOfRange("analytical evaluators require tau > 0 dB");
  }
};

/// Reference settings: d1 = 1000 m, h1 = 100 m, h2 = 300 m, tau = 2 dB, 30 dBm at 3 GHz.
inline CorridorScenario default_scenario(double alpha, double beta) {
  CorridorScenario s;
  s.alpha = alpha;
  s.beta = beta;
  return s;
}

struct ElevationAngles {
  double theta1;
  double theta2;
  double theta3;
};

/// Elevations from BS-1 (x = 0), BS-2 (x = d1) and BS-3 (x = -d1) to a UAV at (d_x, h_x).
inline ElevationAngles elevation_angles(double d_x, double h_x, double d1) {
  if (!(h_x > 0.0)) throw DomainError("h_x must be positive");
  if (!(d_x >= 0.0 && d_x <= d1 / 2.0)) throw DomainError("d_x must lie in [0, d1/2]");
  return {std::atan2(h_x, d_x), std::atan2(h_x, d1 - d_x), std::atan2(h_x, d1 + d_x)};
}

/// Density of theta1 given h_x for d_x ~ U(0, d1/2): (2 h_x / d1) csc^2(theta1).
inline double theta1_pdf(double theta1, double h_x, double d1) {
  if (!(h_x > 0.0)) throw DomainError("h_x must be positive");
  if (!(d1 > 0.0)) throw DomainError("d1 must be positive");
  const double lo = std::atan(2.0 * h_x / d1);
  if (theta1 < lo || theta1 > kPi / 2.0) return 0.0;
  const double s = std::sin(theta1);
  return 2.0 * h_x / d1 / (s * s);
}

struct CrossingHeights {
  double h3;  // BS-1 / BS-2 lower lobe edges meet above the midpoint
  double h4;  // BS-1 upper edge meets BS-2 lower edge
};

inline CrossingHeights crossing_heights(const CorridorScenario& s) {
  if (!(s.alpha > 0.0 && s.alpha + s.beta < kPi / 2.0))
    throw PreconditionViolation("crossing heights require alpha > 0 and alpha + beta < 90 deg");
  return {s.d1 / 2.0 * std::tan(s.alpha), s.d1 / (cot(s.alpha) + cot(s.alpha + s.beta))};
}

/// Straight coverage borderlines of I12 through (d2, 0)-(d3, h2) and of I23 through (d4, 0)-(d5, h2).
struct BorderlineGeometry {
  double d2;
  double d3;
  double d4;
  double d5;
  double gamma1;
  double gamma2;
};

inline BorderlineGeometry borderline_geometry(const CorridorScenario& s) {
  const double tau = s.tau;
  if (!(tau > 1.0)) throw TauOutOfRange("borderline construction requires tau > 1 (linear)");
  const double d1 = s.d1;
  const double h2 = s.h2;
  const double rt = std::sqrt(tau);
  const double omt = 1.0 - tau;

  const double disc3 = d1 * d1 - omt * omt * h2 * h2 - d1 * d1 * omt;
  const double disc5 = (1.0 + tau) * (1.0 + tau) * d1 * d1 - omt * omt * (h2 * h2 + d1 * d1);
  if (disc3 < 0.0 || disc5 < 0.0)
    throw GeometryInfeasible("corridor too tall for the linear borderline construction");

  BorderlineGeometry b{};
  b.d2 = d1 / (rt + 1.0);
  b.d3 = (d1 - std::sqrt(disc3)) / omt;
  b.d4 = (rt - 1.0) * d1 / (rt + 1.0);
  b.d5 = (-(1.0 + tau) * d1 + std::sqrt(disc5)) / omt;
  b.gamma1 = std::atan2(h2, b.d2 - b.d3);
  b.gamma2 = std::atan2(h2, b.d5 - b.d4);
  return b;
}

/// Noise-free equal-gain SINR (R_interferer / R_serving)^2 for BSs on the x axis.
inline double simplified_sinr(double x, double h, double serving_x, double interferer_x) {
  const double rs = (x - serving_x) * (x - serving_x) + h * h;
  const double ri = (x - interferer_x) * (x - interferer_x) + h * h;
  return ri / rs;
}

struct CornerHeights {
  double hc3;
  double hc4;
  double hc5;
  double hc6;
};

inline CornerHeights corner_heights(const CorridorScenario& s, const BorderlineGeometry& b) {
  if (!(s.alpha > 0.0 && s.alpha + s.beta < kPi / 2.0))
    throw PreconditionViolation("corner heights require alpha > 0 and alpha + beta < 90 deg");
  constexpr double kMinDenominator = 1e-12;
  const double cot_a = cot(s.alpha);
  const double cot_ab = cot(s.alpha + s.beta);
  const double cot_g1 = cot(b.gamma1);
  const double cot_g2 = cot(b.gamma2);

  auto checked = [](double den, const char* name) {
    if (std::abs(den) < kMinDenominator)
      throw DegenerateGeometry(std::string("vanishing denominator for ") + name);
    return den;
  };
  CornerHeights c{};
  c.hc3 = b.d4 / checked(cot_ab - cot_g2, "h_c3");
  c.hc4 = s.d1 / checked(cot_a, "h_c4");
  c.hc5 = (-b.d4 - s.d1) / checked(cot_g2 - cot_a, "h_c5");
  c.hc6 = (b.d2 - s.d1) / checked(cot_g1 - cot_a, "h_c6");
  return c;
}

/// BS-1 elevations, at height h_x, of the I12 border (delta1), the I23 border (delta2),
/// BS-2's lower lobe edge (delta3) and BS-3's lower lobe edge (delta4). Range (0, pi).
struct DeltaAngles {
  double delta1;
  double delta2;
  double delta3;
  double delta4;
};

inline DeltaAngles delta_angles(double h_x, const CorridorScenario& s, const BorderlineGeometry& b) {
  if (!(h_x > 0.0)) throw DomainError("h_x must be positive");
  const double cot_a = cot(s.alpha);
  return {acot(b.d2 / h_x - cot(b.gamma1)), acot(b.d4 / h_x + cot(b.gamma2)), acot(s.d1 / h_x - cot_a),
          acot(-s.d1 / h_x + cot_a)};
}

enum class CaseId : int { One = 1, Two = 2, Three = 3, Four = 4, Five = 5, Six = 6 };

inline int to_int(CaseId c) noexcept { return static_cast<int>(c); }

inline CaseId case_from_int(int v) {
  if (v < 1 || v > 6) throw DomainError("case id must be in 1..6");
  return static_cast<CaseId>(v);
}

/// Tie tolerance (metres) for the case inequalities; ties resolve to the lower case id.
inline constexpr double kCaseTieTolerance = 1e-9;

/// Uptilt regime, checked in order 1 -> 6.
inline CaseId classify_case(const CorridorScenario& s) {
  s.validate_analytical();
  const auto [h3, h4] = crossing_heights(s);
  const double hc4 = s.d1 * std::tan(s.alpha);
  const double h1 = s.h1;
  const double h2 = s.h2;
  // Non-strict within tolerance: an equality satisfies the earlier (lower-id) case first.
  auto lt = [](double a, double b) { return a < b + kCaseTieTolerance; };
  auto gt = [](double a, double b) { return a > b - kCaseTieTolerance; };

  if (gt(h1, h3) && gt(h1, h4)) return CaseId::One;
  if (gt(h1, h3) && lt(h1, h4)) return CaseId::Two;
  if (lt(h1, h3) && lt(h1, h4) && gt(h2, hc4)) return CaseId::Three;
  if (lt(h1, h3) && lt(h1, h4) && lt(h4, h2) && lt(h2, hc4)) return CaseId::Four;
  if (lt(h1, h3) && lt(h3, h2) && lt(h2, h4)) return CaseId::Five;
  if (lt(h2, h3) && lt(h2, h4)) return CaseId::Six;
  throw CaseUndefined("no uptilt regime matches h3=" + std::to_string(h3) + " h4=" + std::to_string(h4) +
                      " h_c4=" + std::to_string(hc4));
}

}  // namespace uavcov

#endif  // UAVCOV_GEOMETRY_HPP
