#ifndef UAVCOV_ORACLE_HPP
#define UAVCOV_ORACLE_HPP

#include <uavcov/error.hpp>
#include <uavcov/geometry.hpp>
#include <uavcov/parallel.hpp>
#include <uavcov/propagation.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

namespace uavcov {

enum class Association { Strongest, Nearest };

/// Modelling choices shared by the quadrature oracle, Monte Carlo and heatmaps.
struct OracleAssumptions {
  /// BS abscissae in metres; empty means {-d1, 0, d1, 2 d1} (BS-3, BS-1, BS-2, BS-4).
  std::vector<double> bs_positions;
  Association association = Association::Strongest;
  InterferenceMode interference = InterferenceMode::DominantOnly;
  BeamShape beam{};
  PathLossModel pathloss = FreeSpace{};
  bool include_noise = true;

  /// Rectangular beam, free space, strongest association, dominant interferer, noise on.
  static OracleAssumptions matched() { return {}; }

  std::vector<double> positions(const CorridorScenario& s) const {
    std::vector<double> p = bs_positions;
    if (p.empty()) p = {-s.d1, 0.0, s.d1, 2.0 * s.d1};
    if (p.size() < 2) throw DomainError("at least two base stations are required");
    for (std::size_t i = 1; i < p.size(); ++i)
      if (!(p[i] > p[i - 1])) throw DomainError("BS positions must be strictly increasing");
    return p;
  }
};

struct PointSinr {
  std::size_t serving = 0;  // index into the BS position list
  double sinr = 0.0;        // linear
};

/// Precomputed per-scenario evaluator for the raw SINR definition.
class PointEvaluator {
public:
  static constexpr std::size_t kMaxStations = 32;

  PointEvaluator(const CorridorScenario& s, const OracleAssumptions& a)
      : positions_(a.positions(s)),
        beam_(a.beam.make(s.alpha, s.beta)),
        pathloss_(a.pathloss),
        association_(a.association),
        interference_(a.interference),
        lambda_(s.radio.wavelength()),
        p_tx_(s.radio.p_tx_watt()),
        k_(s.radio.k_constant()),
        noise_(a.include_noise ? s.radio.noise_watt() : 0.0),
        free_space_(std::holds_alternative<FreeSpace>(a.pathloss)) {
    s.validate_basic();
    if (positions_.size() > kMaxStations) throw DomainError("too many base stations");
  }

  std::size_t station_count() const noexcept { return positions_.size(); }
  const std::vector<double>& positions() const noexcept { return positions_; }
  const BeamPattern& beam() const noexcept { return beam_; }
  double noise_watt() const noexcept { return noise_; }

  /// Elevation from station i; depends on horizontal separation only.
  double elevation(std::size_t i, double x, double h) const noexcept {
    return std::atan2(h, std::abs(x - positions_[i]));
  }

  /// Received power per station. `states` (optional, one per station) selects LoS/NLoS draws.
  void received_powers(double x, double h, std::span<double> out,
                       std::span<const LinkState> states = {}) const {
    for (std::size_t i = 0; i < positions_.size(); ++i) {
      const double dx = x - positions_[i];
      const double theta = std::atan2(h, std::abs(dx));
      const double g = beam_.gain(theta);
      if (g == 0.0) {
        out[i] = 0.0;
        continue;
      }
      const double r2 = dx * dx + h * h;
      if (!(r2 > 0.0)) throw DomainError("UAV coincides with a base station");
      if (free_space_) {
        out[i] = k_ * g / r2;
      } else {
        const LinkState st = states.empty() ? LinkState::Expected : states[i];
        out[i] = p_tx_ * g / path_loss(pathloss_, std::sqrt(r2), theta, lambda_, st);
      }
    }
  }

  std::size_t nearest(double x) const noexcept {
    std::size_t best = 0;
    double best_d = std::abs(x - positions_[0]);
    for (std::size_t i = 1; i < positions_.size(); ++i) {
      const double d = std::abs(x - positions_[i]);
      if (d < best_d) {
        best = i;
        best_d = d;
      }
    }
    return best;
  }

  PointSinr evaluate(double x, double h, std::span<const LinkState> states = {},
                     std::optional<Association> association = std::nullopt) const {
    const std::size_t n = positions_.size();
    std::array<double, kMaxStations> p{};
    received_powers(x, h, std::span<double>(p.data(), n), states);
    return from_powers(std::span<const double>(p.data(), n), x, association.value_or(association_));
  }

  PointSinr from_powers(std::span<const double> p, double x, Association assoc) const {
    const std::size_t n = p.size();
    std::size_t serving = 0;
    bool any = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (p[i] > 0.0) any = true;
      if (p[i] > p[serving]) serving = i;
    }
    if (assoc == Association::Nearest || !any) serving = nearest(x);

    std::array<double, kMaxStations> others{};
    std::size_t m = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (i != serving) others[m++] = p[i];
    const double s = sinr(p[serving], std::span<const double>(others.data(), m), noise_, interference_);
    // Unlit point with noise excluded: 0/0 is reported as SINR 0.
    if (p[serving] == 0.0) return {serving, 0.0};
    return {serving, s};
  }

private:
  std::vector<double> positions_;
  BeamPattern beam_;
  PathLossModel pathloss_;
  Association association_;
  InterferenceMode interference_;
  double lambda_;
  double p_tx_;
  double k_;
  double noise_;
  bool free_space_;
};

inline PointSinr point_sinr(double d_x, double h_x, const CorridorScenario& s, const OracleAssumptions& a) {
  return PointEvaluator(s, a).evaluate(d_x, h_x);
}

/// Midpoint-rule coverage over [0, d1/2] x [h1, h2]: fraction of cell centres with SINR >= tau.
inline double coverage_by_quadrature(const CorridorScenario& s, const OracleAssumptions& a, std::size_t n_x,
                                     std::size_t n_z, std::size_t workers = 0) {
  if (n_x < 64 || n_z < 64) throw DomainError("quadrature needs at least 64 cells per axis");
  const PointEvaluator ev(s, a);
  const double dx = s.d1 / 2.0 / static_cast<double>(n_x);
  const double dz = (s.h2 - s.h1) / static_cast<double>(n_z);
  std::vector<std::uint64_t> row_hits(n_z, 0);
  parallel_for_chunks(n_z, resolve_workers(workers), [&](std::size_t j) {
    const double z = s.h1 + (static_cast<double>(j) + 0.5) * dz;
    std::uint64_t hits = 0;
    for (std::size_t i = 0; i < n_x; ++i) {
      const double x = (static_cast<double>(i) + 0.5) * dx;
      if (ev.evaluate(x, z).sinr >= s.tau) ++hits;
    }
    row_hits[j] = hits;
  });
  std::uint64_t total = 0;
  for (auto h : row_hits) total += h;
  return static_cast<double>(total) / (static_cast<double>(n_x) * static_cast<double>(n_z));
}

struct QuadratureReport {
  double p_in = 0.0;          // at (n_x, n_z)
  double p_in_refined = 0.0;  // at (2 n_x, 2 n_z)
  double delta = 0.0;         // |p_in - p_in_refined|
  std::size_t n_x = 0;
  std::size_t n_z = 0;
};

inline QuadratureReport quadrature_with_refinement(const CorridorScenario& s, const OracleAssumptions& a,
                                                   std::size_t n_x, std::size_t n_z, std::size_t workers = 0) {
  QuadratureReport r;
  r.n_x = n_x;
  r.n_z = n_z;
  r.p_in = coverage_by_quadrature(s, a, n_x, n_z, workers);
  r.p_in_refined = coverage_by_quadrature(s, a, 2 * n_x, 2 * n_z, workers);
  r.delta = std::abs(r.p_in - r.p_in_refined);
  return r;
}

}  // namespace uavcov

#endif  // UAVCOV_ORACLE_HPP
