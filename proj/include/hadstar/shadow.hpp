#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace hadstar {

/// Absolute image of a complete Reinhardt region: an open, downward-closed
/// subset of the closed positive quadrant, described by a sampled
/// non-increasing upper boundary profile y = beta(x).
///
/// The profile is interpolated linearly between samples and membership is
/// strict (the region is open, so interpolated boundary points count as
/// outside). xmax/ymax may be +infinity; a shadow with no samples is the
/// rectangle {x < xmax, y < ymax}.
class Shadow {
 public:
  static constexpr int kDefaultSamples = 2048;

  Shadow() = default;

  /// Samples `beta` at `samples` abscissae over [0, xmax] (clustered towards
  /// both ends) and clamps the result into a valid non-increasing profile.
  static Shadow from_profile(const std::function<double(double)>& beta, double xmax,
                             int samples = kDefaultSamples);

  /// Builds a shadow from explicit (x, beta(x)) pairs. Throws
  /// invalid_parameter unless x is strictly increasing, beta non-increasing
  /// and everything non-negative.
  static Shadow from_points(std::vector<std::pair<double, double>> points, double xmax,
                            double ymax);

  static Shadow whole_quadrant();

  bool contains(double x, double y) const;         // open membership
  bool contains_closed(double x, double y) const;  // membership in the closure
  double beta_at(double x) const;                  // interpolated profile value

  double xmax() const { return xmax_; }
  double ymax() const { return ymax_; }
  bool bounded() const;

  /// Coordinatewise scaling (lx*x, ly*y) of the region.
  Shadow scaled(double lx, double ly) const;

  const std::vector<double>& sample_xs() const { return xs_; }
  const std::vector<double>& sample_betas() const { return betas_; }

 private:
  void validate() const;

  std::vector<double> xs_;     // strictly increasing
  std::vector<double> betas_;  // non-increasing, non-negative
  double xmax_ = 0.0;
  double ymax_ = 0.0;
};

}  // namespace hadstar
