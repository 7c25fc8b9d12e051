#pragma once

#include <functional>
#include <vector>

#include "hadstar/errors.hpp"
#include "hadstar/point2.hpp"
#include "hadstar/shadow.hpp"

namespace hadstar {

inline constexpr int kMaxSeriesCap = 200;

/// Dense triangular table of bivariate Taylor coefficients c[a1][a2] for
/// a1 + a2 <= degree_cap, over an arbitrary coefficient field K (complex
/// doubles in production, exact rationals in tests).
template <class K>
class Series2 {
 public:
  explicit Series2(int degree_cap) : cap_(degree_cap) {
    if (cap_ < 0) throw invalid_parameter("series: degree cap must be non-negative");
    if (cap_ > kMaxSeriesCap) throw invalid_parameter("series: degree cap above 200 rejected");
    c_.assign(size_t(cap_ + 1) * size_t(cap_ + 2) / 2, K{});
  }

  int degree_cap() const { return cap_; }

  K& at(int a1, int a2) { return c_[index(a1, a2)]; }
  const K& at(int a1, int a2) const { return c_[index(a1, a2)]; }

  template <class F>  // F(a1, a2, value)
  void for_each(F&& f) const {
    for (int a1 = 0; a1 <= cap_; ++a1)
      for (int a2 = 0; a2 + a1 <= cap_; ++a2) f(a1, a2, at(a1, a2));
  }

  friend bool operator==(const Series2& a, const Series2& b) {
    return a.cap_ == b.cap_ && a.c_ == b.c_;
  }

 private:
  size_t index(int a1, int a2) const {
    if (a1 < 0 || a2 < 0 || a1 + a2 > cap_) throw invalid_parameter("series: index out of cap");
    size_t row = size_t(a1) * size_t(cap_ + 1) - size_t(a1) * size_t(a1 - 1) / 2;
    return row + size_t(a2);
  }

  int cap_;
  std::vector<K> c_;
};

using TruncatedSeries2 = Series2<Complex>;

/// Coefficientwise product; the output cap is the smaller of the two.
template <class K>
Series2<K> hadamard(const Series2<K>& f, const Series2<K>& g) {
  Series2<K> out(std::min(f.degree_cap(), g.degree_cap()));
  for (int a1 = 0; a1 <= out.degree_cap(); ++a1)
    for (int a2 = 0; a2 + a1 <= out.degree_cap(); ++a2)
      out.at(a1, a2) = f.at(a1, a2) * g.at(a1, a2);
  return out;
}

/// Taylor coefficients of (1 - z1 xi1 - z2 xi2)^-2:
/// c[a1][a2] = (a1 + a2 + 1)!/(a1! a2!) * xi1^a1 * xi2^a2,
/// built by incremental ratios so the factorial weights never form directly.
template <class K>
Series2<K> h_xi_coeffs(const K& xi1, const K& xi2, int cap) {
  Series2<K> out(cap);
  out.at(0, 0) = K(1);
  for (int a2 = 0; a2 < cap; ++a2) {
    out.at(0, a2 + 1) = out.at(0, a2) * xi2 * K(a2 + 2) / K(a2 + 1);
  }
  for (int a1 = 0; a1 < cap; ++a1) {
    for (int a2 = 0; a2 + a1 <= cap; ++a2) {
      if (a1 + 1 + a2 > cap) break;
      out.at(a1 + 1, a2) = out.at(a1, a2) * xi1 * K(a1 + a2 + 2) / K(a1 + 1);
    }
  }
  return out;
}

inline TruncatedSeries2 h_xi_coeffs(const C2& xi, int cap) {
  return h_xi_coeffs<Complex>(xi.z1, xi.z2, cap);
}

/// c[a1][a2] = a1! a2! / (a1 + a2 + 1)! * f * g; the weights are exactly the
/// reciprocals of the h coefficients at xi = (1,1).
template <class K>
Series2<K> weighted_hadamard(const Series2<K>& f, const Series2<K>& g) {
  int cap = std::min(f.degree_cap(), g.degree_cap());
  Series2<K> out(cap);
  std::vector<K> col(size_t(cap) + 1);  // weights along a1 = 0
  col[0] = K(1);
  for (int a2 = 0; a2 < cap; ++a2) col[size_t(a2) + 1] = col[size_t(a2)] * K(a2 + 1) / K(a2 + 2);
  for (int a2 = 0; a2 <= cap; ++a2) {
    K w = col[size_t(a2)];
    for (int a1 = 0; a1 + a2 <= cap; ++a1) {
      out.at(a1, a2) = w * f.at(a1, a2) * g.at(a1, a2);
      w = w * K(a1 + 1) / K(a1 + a2 + 2);
    }
  }
  return out;
}

/// f + z1 * df/dz1: multiplies c[a1][a2] by (1 + a1).
template <class K>
Series2<K> lambda_op(const Series2<K>& f) {
  Series2<K> out(f.degree_cap());
  for (int a1 = 0; a1 <= f.degree_cap(); ++a1)
    for (int a2 = 0; a2 + a1 <= f.degree_cap(); ++a2)
      out.at(a1, a2) = f.at(a1, a2) * K(1 + a1);
  return out;
}

/// Horner evaluation of the truncated sum.
template <class K>
K eval(const Series2<K>& f, const K& z1, const K& z2) {
  K result{};
  for (int a1 = f.degree_cap(); a1 >= 0; --a1) {
    K inner{};
    for (int a2 = f.degree_cap() - a1; a2 >= 0; --a2) inner = inner * z2 + f.at(a1, a2);
    result = result * z1 + inner;
  }
  return result;
}

inline Complex eval(const TruncatedSeries2& f, const C2& z) {
  return eval<Complex>(f, z.z1, z.z2);
}

template <class K>
Series2<K> operator+(const Series2<K>& f, const Series2<K>& g) {
  Series2<K> out(std::min(f.degree_cap(), g.degree_cap()));
  for (int a1 = 0; a1 <= out.degree_cap(); ++a1)
    for (int a2 = 0; a2 + a1 <= out.degree_cap(); ++a2)
      out.at(a1, a2) = f.at(a1, a2) + g.at(a1, a2);
  return out;
}

template <class K>
Series2<K> operator*(const K& s, const Series2<K>& f) {
  Series2<K> out(f.degree_cap());
  for (int a1 = 0; a1 <= out.degree_cap(); ++a1)
    for (int a2 = 0; a2 + a1 <= out.degree_cap(); ++a2) out.at(a1, a2) = s * f.at(a1, a2);
  return out;
}

using Evaluator2 = std::function<Complex(Complex, Complex)>;

inline Evaluator2 evaluator(TruncatedSeries2 f) {
  return [f = std::move(f)](Complex z1, Complex z2) { return eval<Complex>(f, z1, z2); };
}

/// Closed integration contour in the punctured plane. Circles must enclose
/// the origin (they then sit in the identity homotopy class); for polylines
/// the homotopy class is the caller's responsibility.
struct ContourSpec {
  enum class Kind { Circle, Polyline } kind = Kind::Circle;
  Complex center{};
  double radius = 1.0;
  std::vector<Complex> vertices;  // closed implicitly
  int nodes = 64;

  static ContourSpec circle(Complex center, double radius, int nodes = 64);
  static ContourSpec polyline(std::vector<Complex> vertices, int nodes_per_edge = 32);
};

struct QuadratureResult {
  Complex value{};
  double convergence = 0.0;  // change across the last node doubling
};

/// Trapezoidal tensor rule on the torus of radius 1/rho for the product
/// integral (2 pi i)^-2 \oint f(z zeta) g(1/zeta1, 1/zeta2) dzeta/zeta;
/// nodes double until successive values agree to 1e-10 relative (2^14 cap).
QuadratureResult torus_hadamard(const Evaluator2& f, const Evaluator2& g, double rho,
                                const C2& z, int nodes);

/// (2 pi i)^-1 \oint (1 + 1/zeta) lambda_f(z1 (1+zeta), z2 (1+1/zeta)) dzeta,
/// the analytic continuation of the multiplier product through the given
/// loop; `lambda_f` must evaluate f + z1 df/dz1.
Complex contour_h_star(const Evaluator2& lambda_f, const C2& z, const ContourSpec& gamma);
Complex contour_h_star(const TruncatedSeries2& f, const C2& z, const ContourSpec& gamma);

/// Convergence shadow estimated from the coefficient tail: along each
/// direction of the unit quarter circle the top degree band gives
/// limsup (|c| u^a1 v^a2)^(1/d) by a least-squares slope of log-magnitudes
/// (log space throughout, so large caps cannot overflow). Returns the region
/// below the estimated radial boundary; an all-zero tail yields the infinite
/// flags.
Shadow cauchy_hadamard_shadow(const TruncatedSeries2& f, int directions = 128);

}  // namespace hadstar
