#pragma once

#include <vector>

#include "hadstar/domain.hpp"
#include "hadstar/point2.hpp"

namespace hadstar {

/// zeta -> (z1 (1 + zeta), z2 (1 + 1/zeta)). Throws for zeta = 0.
C2 i_map(const C2& z, Complex zeta);

/// Log-polar grid over [s_min, s_max] x [0, 2 pi), zeta = e^(s + i theta).
/// Refinement doubles both cell counts.
struct LogPolarGrid {
  double s_min = -1.0;
  double s_max = 1.0;
  int ns = 256;
  int ntheta = 256;
  int max_refinements = 4;
};

/// Log-radius range whose extreme rings are homogeneous (entirely inside or
/// entirely outside the preimage): with R the bound radius, a nonzero z1
/// gives |z1|(e^s - 1) > 2R beyond s_max, hence certified outside, and z2
/// plays the same role at s_min through zeta -> 1/zeta. Axis points get a
/// ring whose image hugs the nonzero coordinate. The returned range is
/// widened outward onto multiples of 1/2.
std::pair<double, double> auto_range(const Domain2& d, const C2& z);

struct GridStats {
  double s_min = 0.0, s_max = 0.0;
  int ns = 0, ntheta = 0;
  int refinements = 0;
  long in_cells = 0, out_cells = 0, mixed_cells = 0;
  double finest_spacing = 0.0;
};

/// Outcome of the separation test, with a machine-checkable witness:
///   Separated:     closed polyline in C_* with angular winding 1 whose
///                  vertices and edge midpoints all map into D.
///   NotSeparated:  polyline from the inner ring |zeta| = e^(s_min) to the
///                  outer ring e^(s_max) all of whose sampled points map
///                  outside D.
///   Undetermined:  neither witness found at the resolution reached.
struct SeparationVerdict {
  enum class Kind { Separated, NotSeparated, Undetermined };
  Kind kind = Kind::Undetermined;
  std::vector<Complex> certificate;  // loop (implicitly closed) or path
  GridStats stats;
};

/// Decides whether the preimage of D under i_map at z separates 0 and
/// infinity. Reinhardt domains are resolved by an adaptive scan of the
/// positive real axis (see separation.cpp for the reduction); general
/// membership oracles go through conservative log-polar cell classification
/// with a covering-space winding search, refining up to
/// grid.max_refinements before answering Undetermined.
SeparationVerdict separates(const Domain2& d, const C2& z, const LogPolarGrid& grid);

/// Same, with the range from auto_range and the default 256 x 256 grid.
SeparationVerdict separates(const Domain2& d, const C2& z);

/// Re-evaluates a certificate at `samples_per_edge` interior points per
/// segment (plus all vertices), including the winding/endpoint conditions.
bool verify_certificate(const Domain2& d, const C2& z, const SeparationVerdict& v,
                        int samples_per_edge = 2);

}  // namespace hadstar
