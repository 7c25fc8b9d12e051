#include "hadstar/dual.hpp"

#include <cmath>
#include <random>

#include "hadstar/errors.hpp"

namespace hadstar {

namespace {

const Shadow& bounded_shadow(const Domain2& d) {
  if (!d.is_reinhardt()) throw unsupported_domain("dual: domain must be Reinhardt");
  const Shadow& s = d.shadow();
  if (!s.bounded()) throw unbounded_domain("dual: domain must be bounded");
  return s;
}

double support_of(const std::vector<double>& xs, const std::vector<double>& betas, double a,
                  double b) {
  // Linear forms attain their sup over the closed region at a profile vertex.
  double best = 0.0;
  for (size_t i = 0; i < xs.size(); ++i) {
    best = std::max(best, a * xs[i] + b * betas[i]);
  }
  return best;
}

std::vector<std::pair<double, double>> boundary_points(const std::vector<double>& xs,
                                                       const std::vector<double>& betas, int n) {
  if (n < 2) throw invalid_parameter("dual_boundary: need at least 2 points");
  std::vector<std::pair<double, double>> pts;
  pts.reserve(size_t(n));
  const double half_pi = std::acos(-1.0) / 2.0;
  for (int k = 0; k < n; ++k) {
    double theta = half_pi * double(k) / double(n - 1);
    double ca = (k == n - 1) ? 0.0 : std::cos(theta);
    double sa = (k == 0) ? 0.0 : std::sin(theta);
    double s1 = support_of(xs, betas, ca, sa);
    // sigma is homogeneous along the ray; bracket t*sigma = 1 and bisect.
    double lo = 0.0, hi = 2.0 / s1;
    while (support_of(xs, betas, hi * ca, hi * sa) < 1.0) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
      double mid = 0.5 * (lo + hi);
      double v = support_of(xs, betas, mid * ca, mid * sa);
      if (std::abs(v - 1.0) <= 1e-12) {
        lo = hi = mid;
        break;
      }
      (v < 1.0 ? lo : hi) = mid;
    }
    double t = 0.5 * (lo + hi);
    pts.emplace_back(t * ca, t * sa);
  }
  return pts;
}

}  // namespace

DualSet::DualSet(const Domain2& d, int boundary_samples) {
  const Shadow& s = bounded_shadow(d);
  xs_ = s.sample_xs();
  betas_ = s.sample_betas();
  if (xs_.empty()) {
    xs_ = {0.0, s.xmax()};
    betas_ = {s.ymax(), s.ymax()};
  }
  boundary_ = boundary_points(xs_, betas_, boundary_samples);
}

double DualSet::support(double a, double b) const {
  if (a < 0.0 || b < 0.0) throw invalid_parameter("support: a, b must be non-negative");
  return support_of(xs_, betas_, a, b);
}

bool DualSet::contains(const C2& xi) const {
  return support(std::abs(xi.z1), std::abs(xi.z2)) <= 1.0;
}

double support(const Domain2& d, double a, double b) {
  if (a < 0.0 || b < 0.0) throw invalid_parameter("support: a, b must be non-negative");
  const Shadow& s = bounded_shadow(d);
  if (s.sample_xs().empty()) return a * s.xmax() + b * s.ymax();
  return support_of(s.sample_xs(), s.sample_betas(), a, b);
}

DualMembership dual_contains(const Domain2& d, const C2& xi, int mc_samples,
                             std::uint64_t seed) {
  if (d.is_reinhardt()) {
    return {support(d, std::abs(xi.z1), std::abs(xi.z2)) <= 1.0, true};
  }
  const GeneralDomain& g = d.general_part();
  if (!g.flags.bounded || !std::isfinite(g.bound_radius)) {
    throw unbounded_domain("dual_contains: general domain needs a finite bound_radius");
  }
  if (is_zero(xi)) return {true, false};  // xi.z = 1 is unreachable

  // Sample the complex line {xi.z = 1} inside the bounding polydisc; any
  // point of it that the oracle accepts excludes xi from D*.
  const double R = g.bound_radius;
  std::mt19937_64 rng(seed);
  auto unit = [&rng] { return double(rng() >> 11) * 0x1.0p-53; };
  const bool solve_first = std::abs(xi.z1) >= std::abs(xi.z2);
  const Complex pivot = solve_first ? xi.z1 : xi.z2;
  for (int i = 0; i < mc_samples; ++i) {
    double r = R * std::sqrt(unit());
    double phi = 2.0 * std::acos(-1.0) * unit();
    Complex t = std::polar(r, phi);
    Complex other = solve_first ? xi.z2 : xi.z1;
    Complex solved = (1.0 - other * t) / pivot;
    if (std::abs(solved) > R) continue;
    C2 z = solve_first ? C2{solved, t} : C2{t, solved};
    if (contains(d, z)) return {false, false};
  }
  return {true, false};
}

std::vector<std::pair<double, double>> dual_boundary(const Domain2& d, int n) {
  const Shadow& s = bounded_shadow(d);
  if (s.sample_xs().empty()) {
    std::vector<double> xs = {0.0, s.xmax()};
    std::vector<double> betas = {s.ymax(), s.ymax()};
    return boundary_points(xs, betas, n);
  }
  return boundary_points(s.sample_xs(), s.sample_betas(), n);
}

NormalSample::NormalSample(C2 w_, C2 nu_) : w(w_), nu(nu_) {
  double len = std::sqrt(std::norm(nu.z1) + std::norm(nu.z2));
  if (!(len > 0.0)) throw invalid_parameter("NormalSample: zero normal");
  nu.z1 /= len;
  nu.z2 /= len;
}

C2 phi_map(const NormalSample& s) {
  Complex denom = dot(s.w, s.nu);
  double scale = std::sqrt(std::norm(s.w.z1) + std::norm(s.w.z2));
  if (std::abs(denom) <= 1e-14 * std::max(1.0, scale)) {
    throw degenerate_normal("phi_map: w . nu vanishes");
  }
  return {s.nu.z1 / denom, s.nu.z2 / denom};
}

}  // namespace hadstar
