#pragma once

#include <functional>
#include <variant>

#include "hadstar/point2.hpp"
#include "hadstar/shadow.hpp"

namespace hadstar {

/// Non-Reinhardt domain given by a membership oracle. The class flags are
/// self-declared and trusted: the library cannot decide linear convexity or
/// Runge-ness from an oracle, and wrong flags void the guarantees of the
/// operations that rely on them.
struct GeneralDomain {
  std::function<bool(const C2&)> member;
  double bound_radius = 0.0;  // +infinity allowed
  struct Flags {
    bool bounded = false;
    bool linearly_convex = false;
    bool runge = false;
    bool smooth = false;
  } flags;
};

/// A domain 0 in D in C^2: either Reinhardt (carries a Shadow) or General
/// (membership oracle plus bound and class flags). Immutable once built;
/// oracles must be pure, so values are safe to share across threads.
class Domain2 {
 public:
  static Domain2 reinhardt(Shadow s);
  static Domain2 general(GeneralDomain g);  // checks member((0,0))

  bool is_reinhardt() const { return std::holds_alternative<Shadow>(v_); }
  const Shadow& shadow() const;              // throws unsupported_domain if general
  const GeneralDomain& general_part() const; // throws unsupported_domain if reinhardt

  bool bounded() const;
  /// sup over the domain of max(|z1|, |z2|); +infinity when unbounded.
  double bound_radius() const;

 private:
  explicit Domain2(std::variant<Shadow, GeneralDomain> v) : v_(std::move(v)) {}
  std::variant<Shadow, GeneralDomain> v_;
};

Domain2 make_polydisc(double r1, double r2, int samples = Shadow::kDefaultSamples);
Domain2 make_ball(double r, int samples = Shadow::kDefaultSamples);
/// Reinhardt domain with shadow {x^(2 p1) + y^(2 p2) < 1}.
Domain2 make_ellipsoid(double p1, double p2, int samples = Shadow::kDefaultSamples);

bool contains(const Domain2& d, const C2& z);

/// n-th element of a non-decreasing smooth exhaustion of a bounded Reinhardt
/// domain: the shadow profile is averaged against a one-sided C-infinity bump
/// of width xmax*2^-(n+2) and scaled by 1 - 2^-(n+1). The construction keeps
/// D_n inside D_{n+1} inside D and the union of the D_n equals D.
Domain2 exhaustion(const Domain2& d, int n, int samples = Shadow::kDefaultSamples);

}  // namespace hadstar
