#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hadstar/domain.hpp"
#include "hadstar/shadow.hpp"

namespace hadstar {

enum class CellState : std::uint8_t { Out = 0, In = 1, Mixed = 2 };

/// Rectangular cell grid over the window [0, x1] x [0, y1] in shadow
/// coordinates. Points beyond the window count as Out: a modulus at or past
/// the bounding box of the target Reinhardt domain pushes one coordinate of
/// the map image outside along the whole positive real ray, so separation
/// certifiably fails there.
struct GridMask {
  int nx = 0, ny = 0;
  double x1 = 0.0, y1 = 0.0;
  std::vector<CellState> cells;  // idx = j * nx + i

  CellState at(int i, int j) const { return cells[size_t(j) * size_t(nx) + size_t(i)]; }
  CellState& at(int i, int j) { return cells[size_t(j) * size_t(nx) + size_t(i)]; }
  CellState state_at_point(double u, double v) const;
  std::pair<double, double> cell_center(int i, int j) const;
};

/// Mask plus the extracted boundary profile of the origin component, with
/// per-cell verdict provenance for diagnostics.
struct StarResult {
  Shadow shadow;
  GridMask mask;
  std::vector<std::uint8_t> provenance;  // Provenance values, same layout as mask
  std::vector<std::string> warnings;
};

enum class Provenance : std::uint8_t {
  ScanRing = 0,     // inside point on the positive real ray (ring loop)
  ScanRay = 1,      // whole positive real ray certified outside
  ScanExhausted = 2,
  DualAllIn = 3,    // every dual boundary sample landed in an In cell
  DualHitOut = 4,   // some dual boundary sample landed in a certified Out cell
  DualMixed = 5,
  Dropped = 6,      // removed by the origin-component pass
};

/// Keeps only the In cells 4-connected to the origin cell; all other In
/// cells become Out. Throws origin_excluded when the origin cell is not In.
GridMask cc0(const GridMask& mask);

/// Shadow of the largest domain to which every product of the degree-two
/// multiplier with a function on G continues: each cell center (x, y) runs
/// the separation test against G (for Reinhardt G the verdict depends only
/// on the moduli), the mask keeps the origin component, and the boundary
/// profile is read off the columns. In cells are certified from inside and
/// Out cells from outside; the Mixed fringe is the resolution limit.
StarResult h_star_shadow(const Domain2& G, int grid_n, int threads = 1,
                         int max_refinements = 4);

/// One point of the product-domain test: In when every sampled dual boundary
/// point (a, b) of D lands the scaled point (x a, y b) in the In region of
/// `hstar`, Out when some sample lands in a certified Out cell, Mixed
/// otherwise.
CellState star_membership(std::span<const std::pair<double, double>> dual_pts,
                          const StarResult& hstar, double x, double y);
CellState star_membership(const Domain2& D, const StarResult& hstar, double x, double y,
                          int dual_samples = 257);

/// Full product-domain sweep D * G for bounded Reinhardt D and G: scales the
/// window by the support extremes of D, sweeps star_membership, keeps the
/// origin component and extracts the boundary. A positive window_x/window_y
/// overrides the derived window (cells beyond the natural one are certified
/// Out, so enlarging is sound); sweeps over a shared window compare cellwise.
StarResult star_shadow(const Domain2& D, const Domain2& G, int grid_n, int threads = 1,
                       int dual_samples = 257, int max_refinements = 4, double window_x = 0.0,
                       double window_y = 0.0);

/// Pointwise product-domain test along a user path for targets outside the
/// full Reinhardt sweep (non-Reinhardt G in particular). At each path point z
/// the scaled dual boundary of D is sampled over moduli and phases and each
/// sample runs the separation test against G; the answer is approximate (no
/// global component extraction), with the origin component estimated by
/// connectivity along the path: a point connects when every earlier point is
/// In. The path should start at or near 0.
struct StarPathPoint {
  C2 z;
  CellState state = CellState::Mixed;
  bool connected_to_origin = false;
};
std::vector<StarPathPoint> star_path_membership(const Domain2& D, const Domain2& G,
                                                const std::vector<C2>& path,
                                                int dual_samples = 33, int phase_samples = 8);

}  // namespace hadstar
