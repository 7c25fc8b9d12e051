#include "hadstar/separation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <optional>

#include "hadstar/errors.hpp"
#include "hadstar/parallel.hpp"

namespace hadstar {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

C2 i_map(const C2& z, Complex zeta) {
  if (zeta == Complex{}) throw invalid_parameter("i_map: zeta must be nonzero");
  return {z.z1 * (1.0 + zeta), z.z2 * (1.0 + 1.0 / zeta)};
}

namespace {

double round_up_half(double s) { return std::ceil(s / 0.5) * 0.5; }
double round_down_half(double s) { return std::floor(s / 0.5) * 0.5; }

// For an axis point (one coordinate zero) the extreme ring maps into a thin
// annulus around the nonzero coordinate; push the ring out until that
// annulus is uniformly inside or uniformly outside.
double homogeneous_axis_side(const Domain2& d, const C2& z, bool outer) {
  double s = 1.0;
  for (int it = 0; it < 60; ++it) {
    double delta = std::exp(-s);
    bool decided;
    if (d.is_reinhardt()) {
      const Shadow& sh = d.shadow();
      double x = std::abs(z.z1), y = std::abs(z.z2);
      double grow_x = outer ? x : x * (1.0 + delta);
      double grow_y = outer ? y * (1.0 + delta) : y;
      double shrink_x = outer ? x : x * (1.0 - delta);
      double shrink_y = outer ? y * (1.0 - delta) : y;
      decided = sh.contains(grow_x, grow_y) || !sh.contains_closed(shrink_x, shrink_y);
    } else {
      bool first = true, all_same = true, value = false;
      for (int j = 0; j < 64 && all_same; ++j) {
        Complex zeta = std::polar(outer ? std::exp(s) : std::exp(-s),
                                  2.0 * kPi * double(j) / 64.0);
        bool m = contains(d, i_map(z, zeta));
        if (first) {
          value = m;
          first = false;
        } else {
          all_same = (m == value);
        }
      }
      decided = all_same;
    }
    if (decided) return s;
    s *= 2.0;
  }
  return s;
}

}  // namespace

std::pair<double, double> auto_range(const Domain2& d, const C2& z) {
  if (is_zero(z)) return {-0.5, 0.5};
  double R = d.bound_radius();
  if (!std::isfinite(R)) throw range_required("auto_range: unbounded domain needs a range");
  double x = std::abs(z.z1), y = std::abs(z.z2);
  double s_max = x > 0.0 ? std::log1p(2.0 * R / x) : homogeneous_axis_side(d, z, true);
  double s_min = y > 0.0 ? -std::log1p(2.0 * R / y) : -homogeneous_axis_side(d, z, false);
  s_max = std::max(round_up_half(s_max), 0.5);
  s_min = std::min(round_down_half(s_min), -0.5);
  return {s_min, s_max};
}

// ---------------------------------------------------------------------------
// Certificates

namespace {

double loop_winding(const std::vector<Complex>& v) {
  double total = 0.0;
  for (size_t i = 0; i < v.size(); ++i) {
    Complex a = v[i], b = v[(i + 1) % v.size()];
    total += std::arg(b / a);
  }
  return total;
}

bool check_loop(const Domain2& d, const C2& z, const std::vector<Complex>& v,
                int samples_per_edge) {
  if (v.size() < 3) return false;
  for (size_t i = 0; i < v.size(); ++i) {
    Complex a = v[i], b = v[(i + 1) % v.size()];
    if (a == Complex{} || !contains(d, i_map(z, a))) return false;
    for (int k = 1; k <= samples_per_edge; ++k) {
      Complex m = a + (b - a) * (double(k) / double(samples_per_edge + 1));
      if (m == Complex{} || !contains(d, i_map(z, m))) return false;
    }
  }
  return std::abs(loop_winding(v) - 2.0 * kPi) < 1e-6;
}

bool check_path(const Domain2& d, const C2& z, const std::vector<Complex>& v, double s_min,
                double s_max, int samples_per_edge) {
  if (v.size() < 2) return false;
  if (std::abs(std::abs(v.front()) - std::exp(s_min)) > 1e-9 * std::exp(s_min)) return false;
  if (std::abs(std::abs(v.back()) - std::exp(s_max)) > 1e-9 * std::exp(s_max)) return false;
  for (size_t i = 0; i < v.size(); ++i) {
    if (v[i] == Complex{} || contains(d, i_map(z, v[i]))) return false;
    if (i + 1 < v.size()) {
      for (int k = 1; k <= samples_per_edge; ++k) {
        Complex m = v[i] + (v[i + 1] - v[i]) * (double(k) / double(samples_per_edge + 1));
        if (m == Complex{} || contains(d, i_map(z, m))) return false;
      }
    }
  }
  return true;
}

}  // namespace

bool verify_certificate(const Domain2& d, const C2& z, const SeparationVerdict& v,
                        int samples_per_edge) {
  switch (v.kind) {
    case SeparationVerdict::Kind::Separated:
      return check_loop(d, z, v.certificate, samples_per_edge);
    case SeparationVerdict::Kind::NotSeparated:
      return check_path(d, z, v.certificate, v.stats.s_min, v.stats.s_max, samples_per_edge);
    case SeparationVerdict::Kind::Undetermined:
      return v.certificate.empty();
  }
  return false;
}

// ---------------------------------------------------------------------------
// Reinhardt fast path
//
// For Reinhardt D the membership of I_z(zeta) depends on the moduli
//   (X(s), Y(s)) = (x(1+e^s), y(1+e^{-s}))   at zeta = e^{s+i theta}, theta=0,
// and on each circle |zeta| = e^s both moduli peak at theta = 0. Hence a
// positive-real preimage point makes the whole circle through it a loop
// inside the preimage, while any loop of winding 1 must cross the positive
// real axis. The test therefore reduces to whether the monotone curve
// (X(s), Y(s)) meets the shadow. Intervals [a, b] of s whose lower-left
// corner (X(a), Y(b)) already misses the closed shadow cannot contain curve
// points of the open shadow (every curve point dominates the corner
// coordinatewise), which gives an exact discard rule for the subdivision.

namespace {

struct ScanResult {
  enum class Kind { Inside, AllOutside, Exhausted } kind = Kind::Exhausted;
  double s_inside = 0.0;
  double finest = 0.0;
};

ScanResult scan_positive_ray(const Shadow& sh, double x, double y, double s_lo, double s_hi,
                             double delta_min) {
  auto X = [x](double s) { return x * (1.0 + std::exp(s)); };
  auto Y = [y](double s) { return y * (1.0 + std::exp(-s)); };
  auto inside = [&](double s) { return sh.contains(X(s), Y(s)); };

  if (inside(s_lo)) return {ScanResult::Kind::Inside, s_lo, 0.0};
  if (inside(s_hi)) return {ScanResult::Kind::Inside, s_hi, 0.0};

  // Cells on the absolute half-integer lattice, end slivers included.
  std::vector<std::pair<double, double>> stack;
  {
    double first = std::ceil(s_lo / 0.5) * 0.5;
    double last = std::floor(s_hi / 0.5) * 0.5;
    std::vector<double> cuts;
    cuts.push_back(s_lo);
    for (double c = first; c <= last + 1e-15; c += 0.5) {
      if (c > s_lo + 1e-15 && c < s_hi - 1e-15) cuts.push_back(c);
    }
    cuts.push_back(s_hi);
    for (size_t i = cuts.size() - 1; i-- > 0;) stack.emplace_back(cuts[i], cuts[i + 1]);
  }

  bool exhausted = false;
  while (!stack.empty()) {
    auto [a, b] = stack.back();
    stack.pop_back();
    if (!sh.contains_closed(X(a), Y(b))) continue;  // no curve point in [a,b] can be inside
    double m = 0.5 * (a + b);
    if (inside(m)) return {ScanResult::Kind::Inside, m, 0.0};
    if (b - a <= delta_min) {
      exhausted = true;
      continue;
    }
    stack.emplace_back(m, b);
    stack.emplace_back(a, m);  // left half explored first
  }
  if (exhausted) return {ScanResult::Kind::Exhausted, 0.0, delta_min};
  return {ScanResult::Kind::AllOutside, 0.0, delta_min};
}

// Widest delta with (X+delta, Y+delta) still inside; larger is sturdier for
// the ring certificate's chord midpoints.
double up_margin(const Shadow& sh, double X, double Y) {
  if (!sh.contains(X, Y)) return -1.0;
  double lo = 0.0, hi = std::max(1.0, sh.ymax() - Y);
  if (!sh.contains(X + hi, Y + hi)) {
    for (int it = 0; it < 60; ++it) {
      double mid = 0.5 * (lo + hi);
      (sh.contains(X + mid, Y + mid) ? lo : hi) = mid;
    }
  } else {
    lo = hi;
  }
  return lo;
}

std::optional<SeparationVerdict> try_ring_certificate(const Domain2& d, const C2& z, double s,
                                                      int ntheta, const GridStats& stats) {
  int m = std::max(ntheta, 64);
  double r = std::exp(s);
  for (int attempt = 0; attempt < 4; ++attempt, m *= 2) {
    SeparationVerdict v;
    v.kind = SeparationVerdict::Kind::Separated;
    v.stats = stats;
    v.certificate.resize(size_t(m));
    for (int k = 0; k < m; ++k) {
      v.certificate[size_t(k)] = std::polar(r, 2.0 * kPi * double(k) / double(m));
    }
    if (check_loop(d, z, v.certificate, 1)) return v;
  }
  return std::nullopt;
}

SeparationVerdict reinhardt_separates(const Domain2& d, const C2& z, const LogPolarGrid& grid) {
  const Shadow& sh = d.shadow();
  const double x = std::abs(z.z1), y = std::abs(z.z2);

  GridStats stats;
  stats.s_min = grid.s_min;
  stats.s_max = grid.s_max;
  stats.ns = grid.ns;
  stats.ntheta = grid.ntheta;

  int extra = 0;
  for (int n = grid.ns; n > 256; n /= 2) ++extra;
  const double delta_min = std::ldexp(1.0, -(9 + grid.max_refinements + extra));
  stats.finest_spacing = delta_min;

  ScanResult r = scan_positive_ray(sh, x, y, grid.s_min, grid.s_max, delta_min);
  if (r.kind == ScanResult::Kind::Inside) {
    // prefer a nearby dyadic s with the fattest coordinatewise margin
    double best_s = r.s_inside;
    double best_m = up_margin(sh, x * (1.0 + std::exp(best_s)), y * (1.0 + std::exp(-best_s)));
    for (int j = -8; j <= 8; ++j) {
      double s = r.s_inside + double(j) * delta_min;
      if (s < grid.s_min || s > grid.s_max) continue;
      double m = up_margin(sh, x * (1.0 + std::exp(s)), y * (1.0 + std::exp(-s)));
      if (m > best_m) {
        best_m = m;
        best_s = s;
      }
    }
    if (auto v = try_ring_certificate(d, z, best_s, grid.ntheta, stats)) return *v;
    SeparationVerdict v;
    v.kind = SeparationVerdict::Kind::Undetermined;
    v.stats = stats;
    return v;
  }
  if (r.kind == ScanResult::Kind::AllOutside) {
    // the positive-real ray itself is the blocking path
    SeparationVerdict v;
    v.kind = SeparationVerdict::Kind::NotSeparated;
    v.stats = stats;
    int m = std::max(grid.ns, 256);
    v.certificate.resize(size_t(m) + 1);
    for (int k = 0; k <= m; ++k) {
      double s = grid.s_min + (grid.s_max - grid.s_min) * double(k) / double(m);
      v.certificate[size_t(k)] = Complex(std::exp(s), 0.0);
    }
    return v;
  }
  SeparationVerdict v;
  v.kind = SeparationVerdict::Kind::Undetermined;
  v.stats = stats;
  return v;
}

// ---------------------------------------------------------------------------
// Conservative log-polar cell grid for general membership oracles.

enum Cell : uint8_t { kOut = 0, kIn = 1, kMixed = 2 };

struct CellGrid {
  int ns = 0, ntheta = 0;
  double s0 = 0.0, s1 = 0.0;
  std::vector<uint8_t> state;  // idx = i * ntheta + j
  uint8_t at(int i, int j) const { return state[size_t(i) * size_t(ntheta) + size_t(j)]; }
  double s_center(int i) const { return s0 + (s1 - s0) * (double(i) + 0.5) / double(ns); }
  double t_center(int j) const { return 2.0 * kPi * (double(j) + 0.5) / double(ntheta); }
};

CellGrid classify_cells(const Domain2& d, const C2& z, double s0, double s1, int ns, int ntheta,
                        int threads) {
  CellGrid g;
  g.ns = ns;
  g.ntheta = ntheta;
  g.s0 = s0;
  g.s1 = s1;
  g.state.assign(size_t(ns) * size_t(ntheta), kMixed);

  // corner memberships are shared between cells: (ns+1) x ntheta samples
  std::vector<uint8_t> corner(size_t(ns + 1) * size_t(ntheta));
  parallel_for(0, ns + 1, threads, [&](int i) {
    double s = s0 + (s1 - s0) * double(i) / double(ns);
    double es = std::exp(s);
    for (int j = 0; j < ntheta; ++j) {
      Complex zeta = std::polar(es, 2.0 * kPi * double(j) / double(ntheta));
      corner[size_t(i) * size_t(ntheta) + size_t(j)] = contains(d, i_map(z, zeta)) ? 1 : 0;
    }
  });
  parallel_for(0, ns, threads, [&](int i) {
    double es = std::exp(g.s_center(i));
    for (int j = 0; j < ntheta; ++j) {
      int jn = (j + 1) % ntheta;
      int total = corner[size_t(i) * size_t(ntheta) + size_t(j)] +
                  corner[size_t(i) * size_t(ntheta) + size_t(jn)] +
                  corner[size_t(i + 1) * size_t(ntheta) + size_t(j)] +
                  corner[size_t(i + 1) * size_t(ntheta) + size_t(jn)];
      Complex zeta = std::polar(es, g.t_center(j));
      total += contains(d, i_map(z, zeta)) ? 1 : 0;
      g.state[size_t(i) * size_t(ntheta) + size_t(j)] =
          total == 5 ? kIn : (total == 0 ? kOut : kMixed);
    }
  });
  return g;
}

// Spanning forest over IN cells on the cylinder. Each edge carries a seam
// weight (+1/-1 when it wraps across theta = 0, else 0) and each cell a lift
// accumulating those weights along the tree; for any cycle the sum of seam
// weights is its winding number, so a non-tree edge whose endpoints disagree
// on the lift by +-1 closes a winding-1 loop. Returns its cell indices.
std::optional<std::vector<int>> winding_search(const CellGrid& g) {
  const int n = g.ns * g.ntheta;
  std::vector<int32_t> lift(static_cast<size_t>(n)), parent(static_cast<size_t>(n), -1), depth(static_cast<size_t>(n));
  std::vector<uint8_t> seen(size_t(n), 0);
  std::deque<int> queue;

  auto cell_id = [&](int i, int j) { return i * g.ntheta + j; };

  for (int root = 0; root < n; ++root) {
    if (seen[size_t(root)] || g.state[size_t(root)] != kIn) continue;
    seen[size_t(root)] = 1;
    lift[size_t(root)] = 0;
    depth[size_t(root)] = 0;
    parent[size_t(root)] = -1;
    queue.clear();
    queue.push_back(root);
    while (!queue.empty()) {
      int cur = queue.front();
      queue.pop_front();
      int ci = cur / g.ntheta, cj = cur % g.ntheta;
      const int di[4] = {-1, 1, 0, 0};
      const int dj[4] = {0, 0, -1, 1};
      for (int e = 0; e < 4; ++e) {
        int ni = ci + di[e];
        if (ni < 0 || ni >= g.ns) continue;
        int nj = cj + dj[e];
        int dtheta = 0;
        if (nj < 0) {
          nj = g.ntheta - 1;
          dtheta = -1;
        } else if (nj >= g.ntheta) {
          nj = 0;
          dtheta = 1;
        } else {
          dtheta = 0;
        }
        int nb = cell_id(ni, nj);
        if (g.state[size_t(nb)] != kIn) continue;
        int32_t want = lift[size_t(cur)] + dtheta;
        if (!seen[size_t(nb)]) {
          seen[size_t(nb)] = 1;
          lift[size_t(nb)] = want;
          parent[size_t(nb)] = cur;
          depth[size_t(nb)] = depth[size_t(cur)] + 1;
          queue.push_back(nb);
        } else if (lift[size_t(nb)] != want) {
          if (std::abs(want - lift[size_t(nb)]) != 1) continue;  // |winding| != 1
          // tree path cur -> lca -> nb plus the edge nb -> cur
          std::vector<int> a, b;
          int u = cur, v = nb;
          while (depth[size_t(u)] > depth[size_t(v)]) {
            a.push_back(u);
            u = parent[size_t(u)];
          }
          while (depth[size_t(v)] > depth[size_t(u)]) {
            b.push_back(v);
            v = parent[size_t(v)];
          }
          while (u != v) {
            a.push_back(u);
            b.push_back(v);
            u = parent[size_t(u)];
            v = parent[size_t(v)];
          }
          a.push_back(u);
          std::reverse(b.begin(), b.end());
          a.insert(a.end(), b.begin(), b.end());
          return a;
        }
      }
    }
  }
  return std::nullopt;
}

// OUT-only 4-connected path from the innermost row to the outermost.
std::optional<std::vector<int>> blocking_search(const CellGrid& g) {
  const int n = g.ns * g.ntheta;
  std::vector<int32_t> parent(size_t(n), -2);
  std::deque<int> queue;
  for (int j = 0; j < g.ntheta; ++j) {
    if (g.state[size_t(j)] == kOut) {
      parent[size_t(j)] = -1;
      queue.push_back(j);
    }
  }
  while (!queue.empty()) {
    int cur = queue.front();
    queue.pop_front();
    int ci = cur / g.ntheta, cj = cur % g.ntheta;
    if (ci == g.ns - 1) {
      std::vector<int> path;
      for (int u = cur; u != -1; u = parent[size_t(u)]) path.push_back(u);
      std::reverse(path.begin(), path.end());
      return path;
    }
    const int di[4] = {-1, 1, 0, 0};
    const int dj[4] = {0, 0, -1, 1};
    for (int e = 0; e < 4; ++e) {
      int ni = ci + di[e];
      if (ni < 0 || ni >= g.ns) continue;
      int nj = (cj + dj[e] + g.ntheta) % g.ntheta;
      int nb = ni * g.ntheta + nj;
      if (g.state[size_t(nb)] != kOut || parent[size_t(nb)] != -2) continue;
      parent[size_t(nb)] = cur;
      queue.push_back(nb);
    }
  }
  return std::nullopt;
}

void count_cells(const CellGrid& g, GridStats& stats) {
  stats.in_cells = stats.out_cells = stats.mixed_cells = 0;
  for (uint8_t s : g.state) {
    if (s == kIn)
      ++stats.in_cells;
    else if (s == kOut)
      ++stats.out_cells;
    else
      ++stats.mixed_cells;
  }
}

SeparationVerdict grid_separates(const Domain2& d, const C2& z, const LogPolarGrid& grid,
                                 int threads) {
  GridStats stats;
  stats.s_min = grid.s_min;
  stats.s_max = grid.s_max;

  int ns = grid.ns, ntheta = grid.ntheta;
  for (int level = 0; level <= grid.max_refinements; ++level) {
    CellGrid g = classify_cells(d, z, grid.s_min, grid.s_max, ns, ntheta, threads);
    stats.ns = ns;
    stats.ntheta = ntheta;
    stats.refinements = level;
    stats.finest_spacing = (grid.s_max - grid.s_min) / double(ns);
    count_cells(g, stats);

    auto loop_cells = winding_search(g);
    auto path_cells = blocking_search(g);
    if (loop_cells && path_cells) {
      throw internal_error("separates: winding loop and blocking path on one grid");
    }
    if (loop_cells) {
      SeparationVerdict v;
      v.kind = SeparationVerdict::Kind::Separated;
      v.stats = stats;
      v.certificate.reserve(loop_cells->size());
      for (int c : *loop_cells) {
        v.certificate.push_back(std::polar(std::exp(g.s_center(c / ntheta)),
                                           g.t_center(c % ntheta)));
      }
      if (std::abs(loop_winding(v.certificate) + 2.0 * kPi) < 1e-6) {
        std::reverse(v.certificate.begin(), v.certificate.end());
      }
      if (check_loop(d, z, v.certificate, 1)) return v;
    } else if (path_cells) {
      SeparationVerdict v;
      v.kind = SeparationVerdict::Kind::NotSeparated;
      v.stats = stats;
      v.certificate.reserve(path_cells->size() + 2);
      double t_first = g.t_center((*path_cells)[0] % ntheta);
      v.certificate.push_back(std::polar(std::exp(grid.s_min), t_first));
      for (int c : *path_cells) {
        v.certificate.push_back(std::polar(std::exp(g.s_center(c / ntheta)),
                                           g.t_center(c % ntheta)));
      }
      double t_last = g.t_center(path_cells->back() % ntheta);
      v.certificate.push_back(std::polar(std::exp(grid.s_max), t_last));
      if (check_path(d, z, v.certificate, grid.s_min, grid.s_max, 1)) return v;
    }
    ns *= 2;
    ntheta *= 2;
    if (ns > 4096 || ntheta > 4096) break;  // refinement ceiling
  }
  SeparationVerdict v;
  v.kind = SeparationVerdict::Kind::Undetermined;
  v.stats = stats;
  return v;
}

void validate_grid(const LogPolarGrid& g) {
  if (!(g.s_min < 0.0) || !(g.s_max > 0.0)) {
    throw invalid_parameter("grid: need s_min < 0 < s_max");
  }
  if (g.ns < 16 || g.ntheta < 16) throw invalid_parameter("grid: ns, ntheta must be >= 16");
  if (g.max_refinements < 0) throw invalid_parameter("grid: max_refinements must be >= 0");
}

}  // namespace

SeparationVerdict separates(const Domain2& d, const C2& z, const LogPolarGrid& grid) {
  // the grid's [s_min, s_max] is the caller-certified range; verdicts are
  // relative to it (auto_range certifies one for bounded domains)
  validate_grid(grid);
  if (!std::isfinite(z.z1.real()) || !std::isfinite(z.z1.imag()) ||
      !std::isfinite(z.z2.real()) || !std::isfinite(z.z2.imag())) {
    throw invalid_parameter("separates: z must be finite");
  }

  if (is_zero(z)) {
    // the preimage is all of C_*; the unit circle is a loop
    GridStats stats;
    stats.s_min = grid.s_min;
    stats.s_max = grid.s_max;
    SeparationVerdict v;
    v.kind = SeparationVerdict::Kind::Separated;
    v.stats = stats;
    int m = std::max(grid.ntheta, 64);
    v.certificate.resize(size_t(m));
    for (int k = 0; k < m; ++k) {
      v.certificate[size_t(k)] = std::polar(1.0, 2.0 * kPi * double(k) / double(m));
    }
    return v;
  }
  if (d.is_reinhardt()) return reinhardt_separates(d, z, grid);
  return grid_separates(d, z, grid, 1);
}

SeparationVerdict separates(const Domain2& d, const C2& z) {
  auto [s_min, s_max] = auto_range(d, z);
  LogPolarGrid grid;
  grid.s_min = s_min;
  grid.s_max = s_max;
  return separates(d, z, grid);
}

}  // namespace hadstar
