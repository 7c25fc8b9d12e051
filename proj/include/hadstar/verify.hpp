#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hadstar/domain.hpp"
#include "hadstar/series.hpp"
#include "hadstar/shadow.hpp"

namespace hadstar {

struct CaseResult {
  std::string inputs;
  double predicted = 0.0;
  double observed = 0.0;
  double tolerance = 0.0;
  bool pass = false;  // |predicted - observed| <= tolerance
  bool negative_control = false;
};

struct Report {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<CaseResult> cases;

  int passed() const;
  int failed() const;
  /// Regular cases all pass and every designed-to-fail control fails.
  bool ok() const;
};

CaseResult make_case(std::string inputs, double predicted, double observed, double tolerance,
                     bool negative_control = false);

struct ShadowDistance {
  double sym_diff_area = 0.0;  // symmetric difference normalised by the window
  double max_ray_gap = 0.0;    // worst radial boundary discrepancy over 64 rays
};

/// Area of the symmetric difference of two bounded shadows, on an n x n grid
/// over the union window, normalised by window area.
double shadow_distance(const Shadow& a, const Shadow& b, int grid_n);
ShadowDistance shadow_distance_detail(const Shadow& a, const Shadow& b, int grid_n,
                                      int rays = 64);

inline constexpr double kShadowTol = 5e-2;  // shadow comparisons on 256^2 grids
inline constexpr double kRelTol = 1e-9;     // exact identities, quadrature-limited

/// Cross-validates the geometric h-star sweep of G against the convergence
/// shadow of the coefficient product of the degree-two multiplier with a
/// caller-supplied extremal germ on G. A single germ certifies one side only
/// (the continuation domain contains the h-star domain), so agreement is
/// evidence, not proof; mismatch above the tolerance fails.
Report verify_hstar(const Domain2& G, const TruncatedSeries2& g_extremal, int grid_n,
                    double shadow_tol = kShadowTol);

/// Random polynomials (degree <= 8, coefficients in the unit disc) at random
/// z in the radius-2 polydisc: the contour integral must match the
/// coefficientwise product evaluated directly, to rel_tol relative.
Report verify_contour_vs_series(int trials, std::uint64_t seed, double rel_tol = kRelTol);

/// Exhaustion elements D_n of D: the product sweep must grow cellwise with n
/// and cover all but a vanishing fraction of the full product sweep.
Report verify_union_lemma(const Domain2& D, const Domain2& G, int n_max, int grid_n);

// Suite drivers used by the CLI; each embeds a designed-to-fail control.
Report run_suite_hstar(int grid_n = 256, double shadow_tol = kShadowTol);
Report run_suite_contour(int trials = 50, std::uint64_t seed = 20240701,
                         double rel_tol = kRelTol);
Report run_suite_union(int grid_n = 128, int n_max = 6);

/// Deterministic uniform doubles built from raw generator bits, so reports
/// are reproducible bit for bit across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}
  double unit();                       // [0, 1)
  double range(double lo, double hi);  // [lo, hi)
  Complex disc(double radius);         // uniform in the closed disc

 private:
  std::uint64_t next();
  std::uint64_t state_;
};

}  // namespace hadstar
