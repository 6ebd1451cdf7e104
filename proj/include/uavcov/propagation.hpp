#ifndef UAVCOV_PROPAGATION_HPP
#define UAVCOV_PROPAGATION_HPP

#include <uavcov/error.hpp>
#include <uavcov/units.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

namespace uavcov {

// ---------------------------------------------------------------------------
// Link budget
// ---------------------------------------------------------------------------

/// Thermal noise floor in dBm: TN + 10 log10(BW) + NF.
inline double noise_power_dbm(double thermal_noise_dbm_hz, double bandwidth_hz, double noise_figure_db) {
  if (!(bandwidth_hz > 0.0)) throw DomainError("bandwidth must be positive");
  return thermal_noise_dbm_hz + 10.0 * std::log10(bandwidth_hz) + noise_figure_db;
}

struct LinkBudget {
  double p_tx_dbm = 30.0;
  double carrier_hz = 3.0e9;
  double bandwidth_hz = 20.0e6;
  double noise_figure_db = 9.0;
  double thermal_noise_dbm_hz = -174.0;

  double wavelength() const noexcept { return kSpeedOfLight / carrier_hz; }
  double p_tx_watt() const noexcept { return dbm_to_watt(p_tx_dbm); }

  /// K = P_tx lambda^2 / (16 pi^2), in W m^2.
  double k_constant() const noexcept {
    const double lambda = wavelength();
    return p_tx_watt() * lambda * lambda / (16.0 * kPi * kPi);
  }

  double noise_dbm() const { return noise_power_dbm(thermal_noise_dbm_hz, bandwidth_hz, noise_figure_db); }
  double noise_watt() const { return dbm_to_watt(noise_dbm()); }

  void validate() const {
    if (!(carrier_hz > 0.0)) throw DomainError("carrier frequency must be positive");
    if (!(bandwidth_hz > 0.0)) throw DomainError("bandwidth must be positive");
    if (!std::isfinite(p_tx_dbm)) throw DomainError("transmit power must be finite");
  }
};

// ---------------------------------------------------------------------------
// Beam patterns
// ---------------------------------------------------------------------------

/// Maximum rectangular-beam gain rule 297.6 / beta_deg dB.
inline double rectangular_gain_db_for_beamwidth(double beta_rad) {
  if (!(beta_rad > 0.0)) throw DomainError("beamwidth must be positive");
  return 297.6 / rad_to_deg(beta_rad);
}

struct RectangularBeam {
  double g_max = 1.0;  // linear
};

struct CosineBeam {
  int n_t = 2;
};

/// Elevation-only main-lobe model. The lobe is nominally [alpha, alpha + beta].
class BeamPattern {
public:
  using Variant = std::variant<RectangularBeam, CosineBeam>;

  static BeamPattern rectangular(double alpha, double beta, double g_max_linear) {
    if (!(g_max_linear >= 0.0)) throw DomainError("rectangular gain must be non-negative");
    return BeamPattern(RectangularBeam{g_max_linear}, alpha, beta);
  }

  /// Rectangular beam with G = 297.6/beta_deg dB.
  static BeamPattern rectangular_default_gain(double alpha, double beta) {
    return rectangular(alpha, beta, db_to_linear(rectangular_gain_db_for_beamwidth(beta)));
  }

  static BeamPattern cosine(double alpha, double beta, int n_t) {
    if (n_t < 2) throw DomainError("cosine beam needs at least 2 antenna elements");
    return BeamPattern(CosineBeam{n_t}, alpha, beta);
  }

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  const Variant& variant() const noexcept { return variant_; }
  bool is_rectangular() const noexcept { return std::holds_alternative<RectangularBeam>(variant_); }

  double gain(double theta) const noexcept {
    if (const auto* r = std::get_if<RectangularBeam>(&variant_)) {
      return (theta >= alpha_ && theta <= alpha_ + beta_) ? r->g_max : 0.0;
    }
    const int n_t = std::get<CosineBeam>(variant_).n_t;
    const double x = (std::cos(theta) - cos_boresight_) / 2.0;
    const double n = static_cast<double>(n_t);
    if (std::abs(x) > 1.0 / n) return 0.0;
    const double c = std::cos(kPi * n * x / 2.0);
    return n * c * c;
  }

  double peak_gain() const noexcept {
    if (const auto* r = std::get_if<RectangularBeam>(&variant_)) return r->g_max;
    return static_cast<double>(std::get<CosineBeam>(variant_).n_t);
  }

private:
  BeamPattern(Variant v, double alpha, double beta)
      : variant_(v), alpha_(alpha), beta_(beta), cos_boresight_(std::cos(alpha + beta / 2.0)) {
    if (!(beta > 0.0)) throw DomainError("beamwidth must be positive");
  }

  Variant variant_;
  double alpha_;
  double beta_;
  double cos_boresight_;
};

inline double gain(const BeamPattern& p, double theta) noexcept { return p.gain(theta); }

/// Element count whose null-to-null lobe spans roughly [alpha, alpha + beta].
inline int suggest_cosine_elements(double alpha, double beta) {
  const double span = std::cos(alpha) - std::cos(alpha + beta);
  if (!(span > 0.0)) throw DomainError("cannot size a cosine lobe for this alpha/beta");
  return std::max(2, static_cast<int>(std::ceil(2.0 / span)));
}

/// Beam shape without the tilt, so sweeps can rebuild the pattern per alpha.
struct BeamShape {
  enum class Kind { Rectangular, Cosine };
  Kind kind = Kind::Rectangular;
  std::optional<double> g_max_db;  // rectangular; default 297.6/beta_deg
  std::optional<int> n_t;          // cosine; default suggest_cosine_elements

  BeamPattern make(double alpha, double beta) const {
    if (kind == Kind::Rectangular) {
      return g_max_db ? BeamPattern::rectangular(alpha, beta, db_to_linear(*g_max_db))
                      : BeamPattern::rectangular_default_gain(alpha, beta);
    }
    return BeamPattern::cosine(alpha, beta, n_t ? *n_t : suggest_cosine_elements(alpha, beta));
  }
};

// ---------------------------------------------------------------------------
// Path loss
// ---------------------------------------------------------------------------

struct FreeSpace {};

/// Sigmoid LoS probability with LoS/NLoS excess losses on top of free space.
struct AirToGround {
  double a = 4.88;
  double b = 0.43;
  double eta_los_db = 0.1;
  double eta_nlos_db = 21.0;

  /// theta in radians; the sigmoid itself is written in degrees.
  double p_los(double theta) const noexcept {
    return 1.0 / (1.0 + a * std::exp(-b * (rad_to_deg(theta) - a)));
  }
};

using PathLossModel = std::variant<FreeSpace, AirToGround>;

enum class LinkState { Expected, LoS, NLoS };

inline double free_space_loss(double r, double lambda) {
  if (!(r > 0.0)) throw DomainError("link distance must be positive");
  const double v = 4.0 * kPi * r / lambda;
  return v * v;
}

/// Linear path loss. `state` selects the LoS/NLoS branch for per-link draws.
inline double path_loss(const PathLossModel& m, double r, double theta, double lambda,
                        LinkState state = LinkState::Expected) {
  const double fs = free_space_loss(r, lambda);
  if (std::holds_alternative<FreeSpace>(m)) return fs;
  const auto& a2g = std::get<AirToGround>(m);
  const double eta_los = db_to_linear(a2g.eta_los_db);
  const double eta_nlos = db_to_linear(a2g.eta_nlos_db);
  switch (state) {
    case LinkState::LoS: return eta_los * fs;
    case LinkState::NLoS: return eta_nlos * fs;
    case LinkState::Expected: break;
  }
  const double p = a2g.p_los(theta);
  return p * eta_los * fs + (1.0 - p) * eta_nlos * fs;
}

// ---------------------------------------------------------------------------
// SINR
// ---------------------------------------------------------------------------

enum class InterferenceMode { DominantOnly, SumAll };

/// Sums non-negative powers in ascending order. Replacing any term by a smaller one
/// never increases the rounded result, which keeps association comparisons exact.
inline double sorted_power_sum(std::span<const double> powers) {
  constexpr std::size_t kSmall = 16;
  if (powers.size() <= kSmall) {
    std::array<double, kSmall> buf{};
    std::copy(powers.begin(), powers.end(), buf.begin());
    std::sort(buf.begin(), buf.begin() + static_cast<std::ptrdiff_t>(powers.size()));
    double s = 0.0;
    for (std::size_t i = 0; i < powers.size(); ++i) s += buf[i];
    return s;
  }
  std::vector<double> v(powers.begin(), powers.end());
  std::sort(v.begin(), v.end());
  double s = 0.0;
  for (double p : v) s += p;
  return s;
}

/// Linear SINR. Returns +inf when the denominator is exactly zero.
inline double sinr(double serving_w, std::span<const double> interferers_w, double noise_w,
                   InterferenceMode mode) {
  if (!(serving_w >= 0.0)) throw DomainError("serving power must be non-negative");
  if (!(noise_w >= 0.0)) throw DomainError("noise power must be non-negative");
  for (double p : interferers_w)
    if (!(p >= 0.0)) throw DomainError("interferer power must be non-negative");
  double interference = 0.0;
  if (!interferers_w.empty()) {
    interference = mode == InterferenceMode::DominantOnly
                       ? *std::max_element(interferers_w.begin(), interferers_w.end())
                       : sorted_power_sum(interferers_w);
  }
  const double denom = interference + noise_w;
  if (denom == 0.0) return std::numeric_limits<double>::infinity();
  return serving_w / denom;
}

inline double sinr(double serving_w, std::initializer_list<double> interferers_w, double noise_w,
                   InterferenceMode mode) {
  return sinr(serving_w, std::span<const double>(interferers_w.begin(), interferers_w.size()), noise_w,
              mode);
}

}  // namespace uavcov

#endif  // UAVCOV_PROPAGATION_HPP
