#ifndef UAVCOV_MONTE_CARLO_HPP
#define UAVCOV_MONTE_CARLO_HPP

#include <uavcov/error.hpp>
#include <uavcov/geometry.hpp>
#include <uavcov/oracle.hpp>
#include <uavcov/parallel.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace uavcov {

/// Stateless counter-based generator: draw k of sample i is SplitMix64 evaluated at
/// position i * stride + k of the stream keyed by `seed`. Any partition of the sample
/// range sees the same numbers.
class CounterRng {
public:
  static constexpr std::uint64_t kStride = 64;  // draws reserved per sample

  explicit CounterRng(std::uint64_t seed) noexcept : key_(mix(seed ^ 0x6a09e667f3bcc909ULL)) {}

  std::uint64_t bits(std::uint64_t sample, std::uint64_t draw) const noexcept {
    return mix(key_ + (sample * kStride + draw + 1) * 0x9e3779b97f4a7c15ULL);
  }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform(std::uint64_t sample, std::uint64_t draw) const noexcept {
    return static_cast<double>(bits(sample, draw) >> 11) * 0x1.0p-53;
  }

  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

private:
  std::uint64_t key_;
};

struct UavSample {
  double d_x;
  double h_x;
};

/// d_x ~ U(0, d1/2), h_x ~ U(h1, h2); uses draws 0 and 1 of the sample.
inline UavSample sample_point(const CounterRng& rng, std::uint64_t index, const CorridorScenario& s) noexcept {
  return {rng.uniform(index, 0) * (s.d1 / 2.0), s.h1 + rng.uniform(index, 1) * (s.h2 - s.h1)};
}

enum class LosMode { Expectation, Bernoulli };

struct McConfig {
  std::uint64_t n_samples = 1'000'000;
  std::uint64_t seed = 1;
  OracleAssumptions assumptions{};
  LosMode los_mode = LosMode::Expectation;
  std::size_t workers = 0;  // 0 = auto; never changes the result
};

struct McResult {
  double p_out = 0.0;
  double std_err = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  std::uint64_t n = 0;
  std::uint64_t outages = 0;
  std::uint64_t seed = 0;
};

inline McResult make_mc_result(std::uint64_t outages, std::uint64_t n, std::uint64_t seed) {
  McResult r;
  r.n = n;
  r.outages = outages;
  r.seed = seed;
  r.p_out = static_cast<double>(outages) / static_cast<double>(n);
  r.std_err = std::sqrt(r.p_out * (1.0 - r.p_out) / static_cast<double>(n));
  r.ci_lo = std::clamp(r.p_out - 1.96 * r.std_err, 0.0, 1.0);
  r.ci_hi = std::clamp(r.p_out + 1.96 * r.std_err, 0.0, 1.0);
  return r;
}

namespace detail {

/// Evaluates samples [first, last) and returns how many are in outage.
inline std::uint64_t mc_outage_count(const CorridorScenario& s, const PointEvaluator& ev, const McConfig& m,
                                     std::uint64_t first, std::uint64_t last) {
  const CounterRng rng(m.seed);
  const std::size_t n_bs = ev.station_count();
  std::array<LinkState, PointEvaluator::kMaxStations> states{};
  const bool bernoulli = m.los_mode == LosMode::Bernoulli && std::holds_alternative<AirToGround>(m.assumptions.pathloss);
  const AirToGround* a2g = std::get_if<AirToGround>(&m.assumptions.pathloss);
  std::uint64_t outages = 0;
  for (std::uint64_t i = first; i < last; ++i) {
    const UavSample u = sample_point(rng, i, s);
    std::span<const LinkState> st;
    if (bernoulli) {
      for (std::size_t b = 0; b < n_bs; ++b) {
        const double theta = ev.elevation(b, u.d_x, u.h_x);
        states[b] = rng.uniform(i, 2 + b) < a2g->p_los(theta) ? LinkState::LoS : LinkState::NLoS;
      }
      st = std::span<const LinkState>(states.data(), n_bs);
    }
    if (ev.evaluate(u.d_x, u.h_x, st).sinr < s.tau) ++outages;
  }
  return outages;
}

inline constexpr std::uint64_t kMcChunk = 1u << 15;

}  // namespace detail

/// Fraction of uniformly placed UAVs with SINR below tau. Deterministic for a fixed seed.
inline McResult estimate_outage(const CorridorScenario& s, const McConfig& m) {
  s.validate_basic();
  if (m.n_samples < 1) throw DomainError("n_samples must be at least 1");
  const PointEvaluator ev(s, m.assumptions);
  if (ev.station_count() + 2 > CounterRng::kStride) throw DomainError("too many base stations for RNG stride");
  const std::uint64_t n = m.n_samples;
  const std::size_t chunks = static_cast<std::size_t>((n + detail::kMcChunk - 1) / detail::kMcChunk);
  std::vector<std::uint64_t> counts(chunks, 0);
  parallel_for_chunks(chunks, resolve_workers(m.workers), [&](std::size_t c) {
    const std::uint64_t first = static_cast<std::uint64_t>(c) * detail::kMcChunk;
    counts[c] = detail::mc_outage_count(s, ev, m, first, std::min(n, first + detail::kMcChunk));
  });
  std::uint64_t total = 0;
  for (auto k : counts) total += k;
  return make_mc_result(total, n, m.seed);
}

/// Per-sample SINR under both associations on identical draws (dominance checks).
struct PairedSinr {
  double strongest;
  double nearest;
};

inline std::vector<PairedSinr> paired_association_sinr(const CorridorScenario& s, const McConfig& m,
                                                       std::uint64_t first, std::uint64_t count) {
  const PointEvaluator ev(s, m.assumptions);
  const CounterRng rng(m.seed);
  std::vector<PairedSinr> out;
  out.reserve(count);
  for (std::uint64_t i = first; i < first + count; ++i) {
    const UavSample u = sample_point(rng, i, s);
    out.push_back({ev.evaluate(u.d_x, u.h_x, {}, Association::Strongest).sinr,
                   ev.evaluate(u.d_x, u.h_x, {}, Association::Nearest).sinr});
  }
  return out;
}

}  // namespace uavcov

#endif  // UAVCOV_MONTE_CARLO_HPP
