#include "hadstar/star.hpp"

#include <cmath>
#include <deque>

#include "hadstar/dual.hpp"
#include "hadstar/errors.hpp"
#include "hadstar/parallel.hpp"
#include "hadstar/separation.hpp"

namespace hadstar {

CellState GridMask::state_at_point(double u, double v) const {
  if (u < 0.0 || v < 0.0) return CellState::Out;
  if (u >= x1 || v >= y1) return CellState::Out;
  int i = std::min(nx - 1, int(u / x1 * nx));
  int j = std::min(ny - 1, int(v / y1 * ny));
  return at(i, j);
}

std::pair<double, double> GridMask::cell_center(int i, int j) const {
  return {(double(i) + 0.5) * x1 / nx, (double(j) + 0.5) * y1 / ny};
}

GridMask cc0(const GridMask& mask) {
  if (mask.nx <= 0 || mask.ny <= 0) throw invalid_parameter("cc0: empty mask");
  if (mask.at(0, 0) != CellState::In) throw origin_excluded("cc0: origin cell is not In");
  GridMask out = mask;
  std::vector<uint8_t> keep(size_t(mask.nx) * size_t(mask.ny), 0);
  std::deque<std::pair<int, int>> queue;
  keep[0] = 1;
  queue.emplace_back(0, 0);
  while (!queue.empty()) {
    auto [i, j] = queue.front();
    queue.pop_front();
    const int di[4] = {-1, 1, 0, 0};
    const int dj[4] = {0, 0, -1, 1};
    for (int e = 0; e < 4; ++e) {
      int ni = i + di[e], nj = j + dj[e];
      if (ni < 0 || ni >= mask.nx || nj < 0 || nj >= mask.ny) continue;
      size_t idx = size_t(nj) * size_t(mask.nx) + size_t(ni);
      if (keep[idx] || mask.at(ni, nj) != CellState::In) continue;
      keep[idx] = 1;
      queue.emplace_back(ni, nj);
    }
  }
  for (int j = 0; j < mask.ny; ++j)
    for (int i = 0; i < mask.nx; ++i) {
      size_t idx = size_t(j) * size_t(mask.nx) + size_t(i);
      if (mask.at(i, j) == CellState::In && !keep[idx]) out.at(i, j) = CellState::Out;
    }
  return out;
}

namespace {

// Same reduction as the Reinhardt branch of separates(): classification of a
// shadow point (x, y) against Reinhardt G by scanning the monotone curve
// (x(1+e^s), y(1+e^{-s})) with the exact lower-left-corner discard rule.
struct SweepContext {
  const Shadow* sh = nullptr;
  double delta_min = 0.0;
};

CellState sweep_classify(const SweepContext& ctx, double x, double y, Provenance& prov) {
  const Shadow& sh = *ctx.sh;
  const double R = std::max(sh.xmax(), sh.ymax());
  double s_hi = std::ceil(std::log1p(2.0 * R / x) / 0.5) * 0.5;
  double s_lo = -std::ceil(std::log1p(2.0 * R / y) / 0.5) * 0.5;

  auto X = [x](double s) { return x * (1.0 + std::exp(s)); };
  auto Y = [y](double s) { return y * (1.0 + std::exp(-s)); };

  if (sh.contains(X(s_lo), Y(s_lo)) || sh.contains(X(s_hi), Y(s_hi))) {
    prov = Provenance::ScanRing;
    return CellState::In;
  }
  std::vector<std::pair<double, double>> stack;
  for (double c = s_hi; c > s_lo + 1e-15; c -= 0.5) stack.emplace_back(c - 0.5, c);
  bool exhausted = false;
  while (!stack.empty()) {
    auto [a, b] = stack.back();
    stack.pop_back();
    if (!sh.contains_closed(X(a), Y(b))) continue;
    double m = 0.5 * (a + b);
    if (sh.contains(X(m), Y(m))) {
      prov = Provenance::ScanRing;
      return CellState::In;
    }
    if (b - a <= ctx.delta_min) {
      exhausted = true;
      continue;
    }
    stack.emplace_back(m, b);
    stack.emplace_back(a, m);
  }
  prov = exhausted ? Provenance::ScanExhausted : Provenance::ScanRay;
  return exhausted ? CellState::Mixed : CellState::Out;
}

Shadow extract_shadow(const GridMask& mask, std::vector<std::string>& warnings) {
  const double dx = mask.x1 / mask.nx;
  const double dy = mask.y1 / mask.ny;
  std::vector<std::pair<double, double>> pts;
  pts.reserve(size_t(mask.nx) + 2);
  double prev_beta = mask.y1;
  int clipped = 0;
  int stranded = 0;
  int last_col = -1;
  for (int i = 0; i < mask.nx; ++i) {
    int run = 0;
    while (run < mask.ny && mask.at(i, run) == CellState::In) ++run;
    if (run == 0) {
      // columns past a bottom-row gap cannot join a downward-closed profile
      for (int i2 = i; i2 < mask.nx; ++i2)
        for (int j = 0; j < mask.ny; ++j)
          if (mask.at(i2, j) == CellState::In) ++stranded;
      break;
    }
    last_col = i;
    double beta = (double(run) - 0.5) * dy;  // center of the topmost certified cell
    if (beta > prev_beta) {
      if (beta - prev_beta > dy) ++clipped;
      beta = prev_beta;  // profiles of complete Reinhardt regions are monotone
    }
    pts.emplace_back((double(i) + 0.5) * dx, beta);
    prev_beta = beta;
  }
  if (clipped > 0) {
    warnings.push_back("shadow extraction: clipped " + std::to_string(clipped) +
                       " column(s) rising more than one cell");
  }
  if (stranded > 0) {
    warnings.push_back("shadow extraction: dropped " + std::to_string(stranded) +
                       " In cell(s) beyond a bottom-row gap");
  }
  if (pts.empty()) {
    // keep the origin cell as a minimal region
    return Shadow::from_points({{0.0, 0.5 * dy}, {0.5 * dx, 0.5 * dy}}, 0.5 * dx, 0.5 * dy);
  }
  double xmax = (double(last_col) + 1.0) * dx;
  std::vector<std::pair<double, double>> profile;
  profile.reserve(pts.size() + 2);
  profile.emplace_back(0.0, pts.front().second);
  for (auto& p : pts) profile.push_back(p);
  profile.emplace_back(xmax, pts.back().second);
  return Shadow::from_points(std::move(profile), xmax, profile.front().second);
}

}  // namespace

StarResult h_star_shadow(const Domain2& G, int grid_n, int threads, int max_refinements) {
  if (!G.is_reinhardt()) {
    throw unsupported_domain("h_star_shadow: the full sweep needs a Reinhardt domain");
  }
  const Shadow& sh = G.shadow();
  if (!sh.bounded()) throw unbounded_domain("h_star_shadow: domain must be bounded");
  if (grid_n < 2) throw invalid_parameter("h_star_shadow: grid too small");

  StarResult r;
  r.mask.nx = r.mask.ny = grid_n;
  r.mask.x1 = sh.xmax();
  r.mask.y1 = sh.ymax();
  r.mask.cells.assign(size_t(grid_n) * size_t(grid_n), CellState::Out);
  r.provenance.assign(size_t(grid_n) * size_t(grid_n), 0);

  SweepContext ctx;
  ctx.sh = &sh;
  ctx.delta_min = std::ldexp(1.0, -(9 + max_refinements));

  parallel_for(0, grid_n, threads, [&](int j) {
    double y = (double(j) + 0.5) * r.mask.y1 / grid_n;
    for (int i = 0; i < grid_n; ++i) {
      double x = (double(i) + 0.5) * r.mask.x1 / grid_n;
      Provenance prov;
      r.mask.at(i, j) = sweep_classify(ctx, x, y, prov);
      r.provenance[size_t(j) * size_t(grid_n) + size_t(i)] = std::uint8_t(prov);
    }
  });

  GridMask kept = cc0(r.mask);
  for (int j = 0; j < grid_n; ++j)
    for (int i = 0; i < grid_n; ++i) {
      if (r.mask.at(i, j) == CellState::In && kept.at(i, j) != CellState::In) {
        r.provenance[size_t(j) * size_t(grid_n) + size_t(i)] = std::uint8_t(Provenance::Dropped);
      }
    }
  r.mask = std::move(kept);
  r.shadow = extract_shadow(r.mask, r.warnings);
  return r;
}

CellState star_membership(std::span<const std::pair<double, double>> dual_pts,
                          const StarResult& hstar, double x, double y) {
  if (hstar.mask.nx <= 0 || hstar.mask.ny <= 0 ||
      hstar.mask.cells.size() != size_t(hstar.mask.nx) * size_t(hstar.mask.ny)) {
    throw invalid_parameter("star_membership: inconsistent mask");
  }
  if (dual_pts.empty()) throw invalid_parameter("star_membership: no dual samples");
  bool any_mixed = false;
  for (const auto& [a, b] : dual_pts) {
    CellState s = hstar.mask.state_at_point(x * a, y * b);
    if (s == CellState::Out) return CellState::Out;
    if (s == CellState::Mixed) any_mixed = true;
  }
  return any_mixed ? CellState::Mixed : CellState::In;
}

CellState star_membership(const Domain2& D, const StarResult& hstar, double x, double y,
                          int dual_samples) {
  auto pts = dual_boundary(D, dual_samples);
  return star_membership(pts, hstar, x, y);
}

std::vector<StarPathPoint> star_path_membership(const Domain2& D, const Domain2& G,
                                                const std::vector<C2>& path, int dual_samples,
                                                int phase_samples) {
  if (path.empty()) throw invalid_parameter("star_path_membership: empty path");
  if (phase_samples < 1) throw invalid_parameter("star_path_membership: need phase samples");
  auto dual_pts = dual_boundary(D, dual_samples);
  const double two_pi = 2.0 * std::acos(-1.0);

  std::vector<StarPathPoint> out;
  out.reserve(path.size());
  bool chain = true;
  for (const C2& z : path) {
    StarPathPoint p;
    p.z = z;
    bool any_mixed = false, any_out = false;
    for (const auto& [a, b] : dual_pts) {
      for (int k = 0; k < phase_samples && !any_out; ++k) {
        double phi1 = two_pi * double(k) / double(phase_samples);
        double phi2 = two_pi * double((k * 5) % phase_samples) / double(phase_samples);
        C2 xi{std::polar(a, phi1), std::polar(b, phi2)};
        SeparationVerdict v = separates(G, cwise(z, xi));
        if (v.kind == SeparationVerdict::Kind::NotSeparated) any_out = true;
        if (v.kind == SeparationVerdict::Kind::Undetermined) any_mixed = true;
      }
      if (any_out) break;
    }
    p.state = any_out ? CellState::Out : (any_mixed ? CellState::Mixed : CellState::In);
    chain = chain && p.state == CellState::In;
    p.connected_to_origin = chain;
    out.push_back(p);
  }
  return out;
}

StarResult star_shadow(const Domain2& D, const Domain2& G, int grid_n, int threads,
                       int dual_samples, int max_refinements, double window_x,
                       double window_y) {
  if (!D.is_reinhardt()) throw unsupported_domain("star_shadow: D must be Reinhardt");
  if (!D.bounded()) throw unbounded_domain("star_shadow: D must be bounded");

  StarResult hs = h_star_shadow(G, grid_n, threads, max_refinements);
  auto dual_pts = dual_boundary(D, dual_samples);

  StarResult r;
  r.mask.nx = r.mask.ny = grid_n;
  // the axis extremes of D* cap the window: x * (1/sigma(1,0)) must stay
  // inside the bounding box of the h-star region
  r.mask.x1 = window_x > 0.0 ? window_x : support(D, 1.0, 0.0) * hs.mask.x1;
  r.mask.y1 = window_y > 0.0 ? window_y : support(D, 0.0, 1.0) * hs.mask.y1;
  r.mask.cells.assign(size_t(grid_n) * size_t(grid_n), CellState::Out);
  r.provenance.assign(size_t(grid_n) * size_t(grid_n), 0);

  parallel_for(0, grid_n, threads, [&](int j) {
    double y = (double(j) + 0.5) * r.mask.y1 / grid_n;
    for (int i = 0; i < grid_n; ++i) {
      double x = (double(i) + 0.5) * r.mask.x1 / grid_n;
      CellState s = star_membership(dual_pts, hs, x, y);
      r.mask.at(i, j) = s;
      Provenance prov = s == CellState::In     ? Provenance::DualAllIn
                        : s == CellState::Out  ? Provenance::DualHitOut
                                               : Provenance::DualMixed;
      r.provenance[size_t(j) * size_t(grid_n) + size_t(i)] = std::uint8_t(prov);
    }
  });

  GridMask kept = cc0(r.mask);
  for (int j = 0; j < grid_n; ++j)
    for (int i = 0; i < grid_n; ++i) {
      if (r.mask.at(i, j) == CellState::In && kept.at(i, j) != CellState::In) {
        r.provenance[size_t(j) * size_t(grid_n) + size_t(i)] = std::uint8_t(Provenance::Dropped);
      }
    }
  r.mask = std::move(kept);
  r.warnings = hs.warnings;
  r.shadow = extract_shadow(r.mask, r.warnings);
  return r;
}

}  // namespace hadstar
