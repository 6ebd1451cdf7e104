#ifndef UAVCOV_HEATMAP_HPP
#define UAVCOV_HEATMAP_HPP

#include <uavcov/error.hpp>
#include <uavcov/geometry.hpp>
#include <uavcov/oracle.hpp>
#include <uavcov/parallel.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace uavcov {

struct AxisRange {
  double lo;
  double hi;
};

/// SINR sampled at cell centres. Row-major with z as the outer index: cell (i, j) is
/// `sinr_db[j * nx + i]`.
struct SinrField {
  AxisRange x_range{};
  AxisRange z_range{};
  std::size_t nx = 0;
  std::size_t nz = 0;
  std::vector<double> sinr_db;       // -inf where the serving power is zero
  std::vector<std::uint8_t> serving;  // index into `positions`
  std::vector<double> positions;
  AxisRange band{};  // corridor heights, for overlays
  CorridorScenario scenario{};
  OracleAssumptions assumptions{};

  double x_at(std::size_t i) const noexcept {
    return x_range.lo + (static_cast<double>(i) + 0.5) * (x_range.hi - x_range.lo) / static_cast<double>(nx);
  }
  double z_at(std::size_t j) const noexcept {
    return z_range.lo + (static_cast<double>(j) + 0.5) * (z_range.hi - z_range.lo) / static_cast<double>(nz);
  }
  double at(std::size_t i, std::size_t j) const { return sinr_db[j * nx + i]; }
  std::size_t serving_at(std::size_t i, std::size_t j) const { return serving[j * nx + i]; }
};

/// Default window is x in [0, d1/2], z in [0, h2].
inline SinrField sinr_field(const CorridorScenario& s, const OracleAssumptions& a, std::size_t nx, std::size_t nz,
                            std::optional<AxisRange> x_range = std::nullopt,
                            std::optional<AxisRange> z_range = std::nullopt, std::size_t workers = 0) {
  if (nx < 2 || nz < 2) throw DomainError("heatmap grid needs at least 2 cells per axis");
  SinrField f;
  f.x_range = x_range.value_or(AxisRange{0.0, s.d1 / 2.0});
  f.z_range = z_range.value_or(AxisRange{0.0, s.h2});
  if (!(f.x_range.hi > f.x_range.lo) || !(f.z_range.hi > f.z_range.lo))
    throw DomainError("heatmap ranges must have positive extent");
  f.nx = nx;
  f.nz = nz;
  f.band = {s.h1, s.h2};
  f.scenario = s;
  f.assumptions = a;
  const PointEvaluator ev(s, a);
  f.positions = ev.positions();
  f.sinr_db.assign(nx * nz, 0.0);
  f.serving.assign(nx * nz, 0);
  parallel_for_chunks(nz, resolve_workers(workers), [&](std::size_t j) {
    const double z = f.z_at(j);
    for (std::size_t i = 0; i < nx; ++i) {
      const PointSinr p = ev.evaluate(f.x_at(i), z);
      f.sinr_db[j * nx + i] = p.sinr > 0.0 ? linear_to_db(p.sinr) : -std::numeric_limits<double>::infinity();
      f.serving[j * nx + i] = static_cast<std::uint8_t>(p.serving);
    }
  });
  return f;
}

/// Sample pair (flat indices) on either side of a contour crossing.
struct CrossedEdge {
  std::size_t inside;
  std::size_t outside;
};

struct ContourSegment {
  double x0, z0, x1, z1;
  std::array<CrossedEdge, 2> edges;
  std::array<std::size_t, 2> edge_ids;  // shared by neighbouring squares; used for chaining
};

namespace detail {

inline double saddle_value(double v) { return std::clamp(v, -1e3, 1e3); }

}  // namespace detail

/// Marching squares on the indicator SINR >= tau_db over the cell-centre lattice. Crossings sit
/// at edge midpoints. Saddles are split by the mean of the four corner values (clamped).
/// Segments come in scan order: squares row by row, lower-left corner first.
inline std::vector<ContourSegment> coverage_contour(const SinrField& f, double tau_db) {
  if (f.sinr_db.size() != f.nx * f.nz || f.nx < 2 || f.nz < 2) throw DomainError("heatmap field not populated");
  const std::size_t nx = f.nx;
  auto idx = [nx](std::size_t i, std::size_t j) { return j * nx + i; };
  auto in = [&](std::size_t k) { return f.sinr_db[k] >= tau_db; };
  // Edge ids: 2*idx(i,j) for (i,j)-(i+1,j); 2*idx(i,j)+1 for (i,j)-(i,j+1).
  std::vector<ContourSegment> out;
  for (std::size_t j = 0; j + 1 < f.nz; ++j) {
    for (std::size_t i = 0; i + 1 < nx; ++i) {
      // corners counter-clockwise: 0=(i,j) 1=(i+1,j) 2=(i+1,j+1) 3=(i,j+1)
      const std::array<std::size_t, 4> c{idx(i, j), idx(i + 1, j), idx(i + 1, j + 1), idx(i, j + 1)};
      const std::array<bool, 4> b{in(c[0]), in(c[1]), in(c[2]), in(c[3])};
      if (b[0] == b[1] && b[1] == b[2] && b[2] == b[3]) continue;
      // square edges e: e0 bottom (0-1), e1 right (1-2), e2 top (3-2), e3 left (0-3)
      const std::array<std::pair<int, int>, 4> ends{{{0, 1}, {1, 2}, {3, 2}, {0, 3}}};
      const std::array<std::size_t, 4> ids{2 * c[0], 2 * c[1] + 1, 2 * c[3], 2 * c[0] + 1};
      auto mid = [&](int e, double& x, double& z) {
        const auto [p, q] = ends[static_cast<std::size_t>(e)];
        const std::size_t kp = c[static_cast<std::size_t>(p)];
        const std::size_t kq = c[static_cast<std::size_t>(q)];
        x = 0.5 * (f.x_at(kp % nx) + f.x_at(kq % nx));
        z = 0.5 * (f.z_at(kp / nx) + f.z_at(kq / nx));
      };
      auto crossed = [&](int e) {
        const auto [p, q] = ends[static_cast<std::size_t>(e)];
        const std::size_t kp = c[static_cast<std::size_t>(p)];
        const std::size_t kq = c[static_cast<std::size_t>(q)];
        return b[static_cast<std::size_t>(p)] ? CrossedEdge{kp, kq} : CrossedEdge{kq, kp};
      };
      auto emit = [&](int e0, int e1) {
        ContourSegment s{};
        mid(e0, s.x0, s.z0);
        mid(e1, s.x1, s.z1);
        s.edges = {crossed(e0), crossed(e1)};
        s.edge_ids = {ids[static_cast<std::size_t>(e0)], ids[static_cast<std::size_t>(e1)]};
        out.push_back(s);
      };
      std::vector<int> cut;
      for (int e = 0; e < 4; ++e) {
        const auto [p, q] = ends[static_cast<std::size_t>(e)];
        if (b[static_cast<std::size_t>(p)] != b[static_cast<std::size_t>(q)]) cut.push_back(e);
      }
      if (cut.size() == 2) {
        emit(cut[0], cut[1]);
        continue;
      }
      // Saddle: diagonal corners agree. Join edges around the corners that differ from the centre.
      double mean = 0.0;
      for (auto k : c) mean += detail::saddle_value(f.sinr_db[k]);
      const bool centre_in = mean / 4.0 >= tau_db;
      // Corner v is isolated when b[v] != centre_in; its two incident edges pair up.
      const std::array<std::pair<int, int>, 4> around{{{3, 0}, {0, 1}, {1, 2}, {2, 3}}};
      for (std::size_t v = 0; v < 4; ++v)
        if (b[v] != centre_in) emit(around[v].first, around[v].second);
    }
  }
  return out;
}

struct Polyline {
  std::vector<std::pair<double, double>> points;
  bool closed = false;
};

/// Joins segments that share a crossed edge. Start points follow segment order; open chains
/// are walked from a free end.
inline std::vector<Polyline> chain_segments(const std::vector<ContourSegment>& segs) {
  std::map<std::size_t, std::vector<std::size_t>> by_edge;
  for (std::size_t k = 0; k < segs.size(); ++k)
    for (auto e : segs[k].edge_ids) by_edge[e].push_back(k);
  std::vector<bool> used(segs.size(), false);
  std::vector<Polyline> out;

  auto other = [&](std::size_t edge, std::size_t seg) -> std::optional<std::size_t> {
    for (auto k : by_edge[edge])
      if (k != seg && !used[k]) return k;
    return std::nullopt;
  };
  auto walk = [&](std::size_t start, int start_end) {
    Polyline pl;
    std::size_t cur = start;
    int entry = start_end;  // endpoint index we enter from
    used[cur] = true;
    const auto& s0 = segs[cur];
    pl.points.push_back(entry == 0 ? std::pair{s0.x0, s0.z0} : std::pair{s0.x1, s0.z1});
    const std::size_t first_edge = s0.edge_ids[static_cast<std::size_t>(entry)];
    for (;;) {
      const auto& s = segs[cur];
      const int exit = 1 - entry;
      pl.points.push_back(exit == 0 ? std::pair{s.x0, s.z0} : std::pair{s.x1, s.z1});
      const std::size_t e = s.edge_ids[static_cast<std::size_t>(exit)];
      const auto nxt = other(e, cur);
      if (!nxt) {
        pl.closed = e == first_edge;
        break;
      }
      cur = *nxt;
      used[cur] = true;
      entry = segs[cur].edge_ids[0] == e ? 0 : 1;
    }
    if (pl.closed) pl.points.back() = pl.points.front();
    out.push_back(std::move(pl));
  };

  for (std::size_t k = 0; k < segs.size(); ++k) {
    if (used[k]) continue;
    for (int end = 0; end < 2; ++end) {
      if (by_edge[segs[k].edge_ids[static_cast<std::size_t>(end)]].size() == 1) {
        walk(k, end);
        break;
      }
    }
  }
  for (std::size_t k = 0; k < segs.size(); ++k)
    if (!used[k]) walk(k, 0);
  return out;
}

/// Fraction of cells with SINR >= tau_db whose centre lies in `rows` (default: every row).
inline double covered_fraction(const SinrField& f, double tau_db, std::optional<AxisRange> rows = std::nullopt) {
  std::uint64_t hits = 0;
  std::uint64_t total = 0;
  for (std::size_t j = 0; j < f.nz; ++j) {
    const double z = f.z_at(j);
    if (rows && (z < rows->lo || z > rows->hi)) continue;
    for (std::size_t i = 0; i < f.nx; ++i) {
      ++total;
      if (f.at(i, j) >= tau_db) ++hits;
    }
  }
  if (total == 0) throw DomainError("no heatmap rows in the requested band");
  return static_cast<double>(hits) / static_cast<double>(total);
}

namespace detail {

inline std::string format_db(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

inline std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) lines.push_back(l);
  return lines;
}

}  // namespace detail

/// CSV: optional `# ` comment lines, then `x_m,z_m,sinr_db,serving_bs` and one row per cell.
inline void write_field_csv(std::ostream& os, const SinrField& f, const std::string& comment = {}) {
  for (const auto& l : detail::split_lines(comment)) os << "# " << l << '\n';
  os << "x_m,z_m,sinr_db,serving_bs\n";
  char buf[64];
  for (std::size_t j = 0; j < f.nz; ++j) {
    for (std::size_t i = 0; i < f.nx; ++i) {
      std::snprintf(buf, sizeof buf, "%.4f,%.4f,", f.x_at(i), f.z_at(j));
      os << buf << detail::format_db(f.at(i, j)) << ',' << static_cast<unsigned>(f.serving_at(i, j)) << '\n';
    }
  }
}

inline constexpr double kImageMinDb = -20.0;
inline constexpr double kImageMaxDb = 40.0;

/// 256-entry ramp; entry 0 is black and reserved for -inf.
inline std::array<std::uint8_t, 3> ramp_color(std::uint8_t level) noexcept {
  if (level == 0) return {0, 0, 0};
  // dark blue -> cyan -> yellow -> red over levels 1..255
  const int t = level - 1;  // 0..254
  struct Stop {
    int at, r, g, b;
  };
  constexpr std::array<Stop, 4> stops{{{0, 20, 20, 120}, {85, 0, 200, 220}, {170, 250, 230, 40}, {254, 200, 0, 0}}};
  std::size_t k = 0;
  while (k + 2 < stops.size() && t > stops[k + 1].at) ++k;
  const Stop a = stops[k];
  const Stop b = stops[k + 1];
  const int span = b.at - a.at;
  const int u = t - a.at;
  auto lerp = [&](int x, int y) { return static_cast<std::uint8_t>(x + ((y - x) * u) / span); };
  return {lerp(a.r, b.r), lerp(a.g, b.g), lerp(a.b, b.b)};
}

inline std::uint8_t ramp_level(double db) noexcept {
  if (std::isnan(db) || (std::isinf(db) && db < 0)) return 0;
  const double c = std::clamp(db, kImageMinDb, kImageMaxDb);
  return static_cast<std::uint8_t>(1 + std::lround((c - kImageMinDb) / (kImageMaxDb - kImageMinDb) * 254.0));
}

/// Binary PPM (P6), top row = highest z. `comment` lines are embedded after the magic number.
inline void write_field_ppm(std::ostream& os, const SinrField& f, const std::string& comment = {}) {
  os << "P6\n";
  for (const auto& l : detail::split_lines(comment)) os << "# " << l << '\n';
  os << f.nx << ' ' << f.nz << "\n255\n";
  std::vector<char> row(f.nx * 3);
  for (std::size_t jj = 0; jj < f.nz; ++jj) {
    const std::size_t j = f.nz - 1 - jj;
    for (std::size_t i = 0; i < f.nx; ++i) {
      const auto rgb = ramp_color(ramp_level(f.at(i, j)));
      for (std::size_t c = 0; c < 3; ++c) row[3 * i + c] = static_cast<char>(rgb[c]);
    }
    os.write(row.data(), static_cast<std::streamsize>(row.size()));
  }
}

}  // namespace uavcov

#endif  // UAVCOV_HEATMAP_HPP
