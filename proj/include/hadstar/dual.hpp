#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "hadstar/domain.hpp"
#include "hadstar/point2.hpp"

namespace hadstar {

/// The compact set D* = {xi : xi.z != 1 for all z in D} in moduli
/// coordinates. For bounded Reinhardt D the set {xi.z : z in D} is the open
/// disc of radius sigma(|xi1|, |xi2|), where sigma is the support function of
/// the shadow, so xi lies in D* exactly when sigma <= 1. Boundary points of
/// {sigma = 1} in the positive quadrant are cached eagerly at construction.
class DualSet {
 public:
  explicit DualSet(const Domain2& d, int boundary_samples = 257);

  double support(double a, double b) const;
  bool contains(const C2& xi) const;  // sigma(|xi1|,|xi2|) <= 1, closed
  const std::vector<std::pair<double, double>>& boundary() const { return boundary_; }

 private:
  std::vector<double> xs_, betas_;
  std::vector<std::pair<double, double>> boundary_;
};

/// sigma(a,b) = sup over the closure of the shadow of a*x + b*y.
double support(const Domain2& d, double a, double b);

struct DualMembership {
  bool inside = false;
  bool exact = false;  // general-domain answers are up to sampling only
};

/// Membership in D*. Reinhardt answers are exact (sigma <= 1); for general
/// bounded domains the hyperplane {xi.z = 1} is sampled inside the bounding
/// polydisc and a hit excludes xi, so the result is approximate and flagged.
DualMembership dual_contains(const Domain2& d, const C2& xi, int mc_samples = 4096,
                             std::uint64_t seed = 1);

/// n >= 2 points on {sigma = 1} in the closed positive quadrant, found by
/// bisection along rays to |sigma - 1| <= 1e-12 and always including the two
/// axis extremes (1/sigma(1,0), 0) and (0, 1/sigma(0,1)).
std::vector<std::pair<double, double>> dual_boundary(const Domain2& d, int n);

/// Boundary point w with its unit hyperplane conormal nu: the affine complex
/// hyperplane {z : (z - w) . nu = 0} should miss the domain. The constructor
/// of samples normalises nu.
struct NormalSample {
  C2 w;
  C2 nu;
  NormalSample(C2 w_, C2 nu_);
};

/// nu / (w . nu); satisfies w . phi_map(s) = 1 and lies in D* whenever the
/// hyperplane through w misses D. Throws degenerate_normal when w . nu ~ 0.
C2 phi_map(const NormalSample& s);

}  // namespace hadstar
