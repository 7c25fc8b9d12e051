#include "hadstar/domain.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "hadstar/errors.hpp"

namespace hadstar {

namespace {

// One-sided C-infinity bump on (0,1), midpoint-sampled, weights normalised to
// sum exactly to 1 so constant profiles are reproduced exactly.
const std::vector<std::pair<double, double>>& bump_nodes() {
  static const std::vector<std::pair<double, double>> nodes = [] {
    const int n = 128;
    std::vector<std::pair<double, double>> v(n);
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      double t = (i + 0.5) / n;
      double w = std::exp(-1.0 / (t * (1.0 - t)));
      v[i] = {t, w};
      total += w;
    }
    for (auto& [t, w] : v) w /= total;
    return v;
  }();
  return nodes;
}

}  // namespace

Domain2 Domain2::reinhardt(Shadow s) { return Domain2(std::variant<Shadow, GeneralDomain>(std::move(s))); }

Domain2 Domain2::general(GeneralDomain g) {
  if (!g.member) throw invalid_parameter("general domain: missing membership oracle");
  if (!g.member(C2{})) throw invalid_parameter("general domain: must contain the origin");
  if (g.flags.bounded && !(g.bound_radius > 0.0)) {
    throw invalid_parameter("general domain: bounded flag needs a positive bound_radius");
  }
  if (!g.flags.bounded) g.bound_radius = std::numeric_limits<double>::infinity();
  return Domain2(std::variant<Shadow, GeneralDomain>(std::move(g)));
}

const Shadow& Domain2::shadow() const {
  if (!is_reinhardt()) throw unsupported_domain("domain is not Reinhardt");
  return std::get<Shadow>(v_);
}

const GeneralDomain& Domain2::general_part() const {
  if (is_reinhardt()) throw unsupported_domain("domain is Reinhardt");
  return std::get<GeneralDomain>(v_);
}

bool Domain2::bounded() const {
  if (is_reinhardt()) return shadow().bounded();
  return general_part().flags.bounded;
}

double Domain2::bound_radius() const {
  if (is_reinhardt()) {
    const Shadow& s = shadow();
    return std::max(s.xmax(), s.ymax());
  }
  return general_part().bound_radius;
}

Domain2 make_polydisc(double r1, double r2, int samples) {
  if (!(r1 > 0.0) || !(r2 > 0.0)) throw invalid_parameter("polydisc: radii must be positive");
  return Domain2::reinhardt(Shadow::from_profile([r2](double) { return r2; }, r1, samples));
}

Domain2 make_ball(double r, int samples) {
  if (!(r > 0.0)) throw invalid_parameter("ball: radius must be positive");
  auto beta = [r](double x) { return std::sqrt(std::max(0.0, r * r - x * x)); };
  return Domain2::reinhardt(Shadow::from_profile(beta, r, samples));
}

Domain2 make_ellipsoid(double p1, double p2, int samples) {
  if (!(p1 > 0.0) || !(p2 > 0.0)) throw invalid_parameter("ellipsoid: exponents must be positive");
  auto beta = [p1, p2](double x) {
    double u = 1.0 - std::pow(x, 2.0 * p1);
    return std::pow(std::max(0.0, u), 1.0 / (2.0 * p2));
  };
  return Domain2::reinhardt(Shadow::from_profile(beta, 1.0, samples));
}

bool contains(const Domain2& d, const C2& z) {
  if (d.is_reinhardt()) {
    return d.shadow().contains(std::abs(z.z1), std::abs(z.z2));
  }
  const GeneralDomain& g = d.general_part();
  if (g.flags.bounded && max_abs(z) > g.bound_radius) return false;
  return g.member(z);
}

Domain2 exhaustion(const Domain2& d, int n, int samples) {
  if (!d.is_reinhardt()) throw unsupported_domain("exhaustion: general domains unsupported");
  if (n < 0) throw invalid_parameter("exhaustion: index must be non-negative");
  const Shadow& sh = d.shadow();
  if (!sh.bounded()) throw unsupported_domain("exhaustion: shadow must be bounded");

  const double scale = 1.0 - std::ldexp(1.0, -(n + 1));
  const double w = sh.xmax() * std::ldexp(1.0, -(n + 2));
  const double new_xmax = scale * sh.xmax();

  // beta_n(x) = scale * integral K(t) beta(x/scale + w t) dt with beta
  // extended by 0 past xmax. Averaging only over rightward shifts of a
  // non-increasing profile keeps beta_n <= scale * beta(x/scale), and the
  // same endpoint comparison gives beta_n <= beta_{n+1} pointwise.
  auto blended = [&sh, scale, w](double x) {
    const double u = x / scale;
    double acc = 0.0;
    for (const auto& [t, kw] : bump_nodes()) {
      double p = u + w * t;
      if (p < sh.xmax()) acc += kw * sh.beta_at(p);
    }
    return scale * acc;
  };
  return Domain2::reinhardt(Shadow::from_profile(blended, new_xmax, samples));
}

}  // namespace hadstar
