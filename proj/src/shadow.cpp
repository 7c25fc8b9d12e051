#include "hadstar/shadow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hadstar/errors.hpp"

namespace hadstar {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

Shadow Shadow::from_profile(const std::function<double(double)>& beta, double xmax,
                            int samples) {
  if (!(xmax > 0.0) || !std::isfinite(xmax)) {
    throw invalid_parameter("from_profile: xmax must be positive and finite");
  }
  if (samples < 2) throw invalid_parameter("from_profile: need at least 2 samples");

  Shadow s;
  s.xs_.resize(samples);
  s.betas_.resize(samples);
  const double pi = std::acos(-1.0);
  double prev = kInf;
  for (int i = 0; i < samples; ++i) {
    // Chebyshev-style clustering: profiles of round domains drop steeply at
    // the right end, so resolve both ends better than the middle.
    double t = 0.5 * (1.0 - std::cos(pi * double(i) / double(samples - 1)));
    double x = (i == samples - 1) ? xmax : xmax * t;
    double b = beta(x);
    if (!std::isfinite(b)) throw invalid_parameter("from_profile: profile value not finite");
    b = std::max(0.0, std::min(b, prev));  // clamp fp jitter into monotone shape
    s.xs_[i] = x;
    s.betas_[i] = b;
    prev = b;
  }
  s.xmax_ = xmax;
  s.ymax_ = s.betas_.front();
  s.validate();
  return s;
}

Shadow Shadow::from_points(std::vector<std::pair<double, double>> points, double xmax,
                           double ymax) {
  Shadow s;
  s.xs_.reserve(points.size());
  s.betas_.reserve(points.size());
  for (const auto& [x, b] : points) {
    s.xs_.push_back(x);
    s.betas_.push_back(b);
  }
  s.xmax_ = xmax;
  s.ymax_ = ymax;
  s.validate();
  return s;
}

Shadow Shadow::whole_quadrant() {
  Shadow s;
  s.xmax_ = kInf;
  s.ymax_ = kInf;
  return s;
}

void Shadow::validate() const {
  if (!(xmax_ > 0.0) || !(ymax_ > 0.0)) {
    throw invalid_parameter("shadow: xmax and ymax must be positive");
  }
  if (xs_.size() != betas_.size()) throw invalid_parameter("shadow: sample size mismatch");
  for (size_t i = 0; i < xs_.size(); ++i) {
    if (xs_[i] < 0.0 || betas_[i] < 0.0) {
      throw invalid_parameter("shadow: samples must be non-negative");
    }
    if (i > 0 && !(xs_[i] > xs_[i - 1])) {
      throw invalid_parameter("shadow: sample x must be strictly increasing");
    }
    if (i > 0 && betas_[i] > betas_[i - 1]) {
      throw invalid_parameter("shadow: profile must be non-increasing");
    }
  }
  if (!xs_.empty() && std::isfinite(xmax_) && xs_.back() > xmax_) {
    throw invalid_parameter("shadow: samples exceed xmax");
  }
}

double Shadow::beta_at(double x) const {
  if (xs_.empty()) return ymax_;
  if (x <= xs_.front()) return betas_.front();
  if (x >= xs_.back()) return betas_.back();
  auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  size_t k = size_t(it - xs_.begin());  // xs_[k-1] <= x < xs_[k]
  double t = (x - xs_[k - 1]) / (xs_[k] - xs_[k - 1]);
  return betas_[k - 1] + t * (betas_[k] - betas_[k - 1]);
}

bool Shadow::contains(double x, double y) const {
  if (x < 0.0 || y < 0.0) return false;
  if (!(x < xmax_)) return false;
  if (!(y < ymax_)) return false;
  if (xs_.empty()) return true;
  return y < beta_at(x);
}

bool Shadow::contains_closed(double x, double y) const {
  if (x < 0.0 || y < 0.0) return false;
  if (!(x <= xmax_)) return false;
  if (!(y <= ymax_)) return false;
  if (xs_.empty()) return true;
  return y <= beta_at(std::min(x, xmax_));
}

bool Shadow::bounded() const { return std::isfinite(xmax_) && std::isfinite(ymax_); }

Shadow Shadow::scaled(double lx, double ly) const {
  if (!(lx > 0.0) || !(ly > 0.0)) throw invalid_parameter("scaled: factors must be positive");
  Shadow s;
  s.xs_.reserve(xs_.size());
  s.betas_.reserve(betas_.size());
  for (size_t i = 0; i < xs_.size(); ++i) {
    s.xs_.push_back(lx * xs_[i]);
    s.betas_.push_back(ly * betas_[i]);
  }
  s.xmax_ = lx * xmax_;
  s.ymax_ = ly * ymax_;
  s.validate();
  return s;
}

}  // namespace hadstar
