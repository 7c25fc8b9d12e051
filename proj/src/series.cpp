#include "hadstar/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hadstar {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr int kMaxNodes = 1 << 14;
constexpr double kRelTol = 1e-10;
constexpr double kAbsTol = 1e-14;

bool converged(Complex a, Complex b) {
  return std::abs(a - b) <= kAbsTol + kRelTol * std::max(std::abs(a), std::abs(b));
}

// Deterministic pairwise reduction; keeps sums schedule-independent and the
// rounding error logarithmic in the node count.
Complex pairwise_sum(std::vector<Complex>& v) {
  size_t n = v.size();
  while (n > 1) {
    size_t half = n / 2;
    for (size_t i = 0; i < half; ++i) v[i] = v[2 * i] + v[2 * i + 1];
    if (n % 2) {
      v[half] = v[n - 1];
      ++half;
    }
    n = half;
  }
  return n ? v[0] : Complex{};
}

Complex torus_pass(const Evaluator2& f, const Evaluator2& g, double rho, const C2& z, int n) {
  std::vector<Complex> rows(static_cast<size_t>(n));
  std::vector<Complex> row(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    double t1 = 2.0 * kPi * double(i) / double(n);
    Complex zeta1 = std::polar(1.0 / rho, t1);
    Complex g1 = std::polar(rho, -t1);
    for (int j = 0; j < n; ++j) {
      double t2 = 2.0 * kPi * double(j) / double(n);
      Complex zeta2 = std::polar(1.0 / rho, t2);
      Complex g2 = std::polar(rho, -t2);
      row[size_t(j)] = f(z.z1 * zeta1, z.z2 * zeta2) * g(g1, g2);
    }
    rows[size_t(i)] = pairwise_sum(row);
  }
  return pairwise_sum(rows) / (double(n) * double(n));
}

}  // namespace

QuadratureResult torus_hadamard(const Evaluator2& f, const Evaluator2& g, double rho,
                                const C2& z, int nodes) {
  if (!(rho > 0.0)) throw invalid_parameter("torus_hadamard: rho must be positive");
  if (nodes < 8) throw invalid_parameter("torus_hadamard: need at least 8 nodes");
  if (!f || !g) throw invalid_parameter("torus_hadamard: missing evaluator");

  Complex prev = torus_pass(f, g, rho, z, nodes);
  for (int n = 2 * nodes; n <= kMaxNodes; n *= 2) {
    Complex cur = torus_pass(f, g, rho, z, n);
    if (converged(prev, cur)) return {cur, std::abs(cur - prev)};
    prev = cur;
  }
  throw quadrature_failure("torus_hadamard: node doubling did not converge");
}

ContourSpec ContourSpec::circle(Complex center, double radius, int nodes) {
  if (!(radius > 0.0)) throw invalid_parameter("contour: radius must be positive");
  if (std::abs(center) >= radius) {
    throw invalid_parameter("contour: circle must enclose the origin");
  }
  if (nodes < 8) throw invalid_parameter("contour: need at least 8 nodes");
  ContourSpec c;
  c.kind = Kind::Circle;
  c.center = center;
  c.radius = radius;
  c.nodes = nodes;
  return c;
}

ContourSpec ContourSpec::polyline(std::vector<Complex> vertices, int nodes_per_edge) {
  if (vertices.size() < 3) throw invalid_parameter("contour: polyline needs >= 3 vertices");
  if (nodes_per_edge < 2) throw invalid_parameter("contour: need >= 2 nodes per edge");
  for (size_t i = 0; i < vertices.size(); ++i) {
    Complex a = vertices[i];
    Complex b = vertices[(i + 1) % vertices.size()];
    // distance from the segment [a, b] to 0
    Complex d = b - a;
    double len2 = std::norm(d);
    double t = len2 > 0.0 ? std::clamp(-((a.real() * d.real()) + (a.imag() * d.imag())) / len2,
                                       0.0, 1.0)
                          : 0.0;
    if (std::abs(a + t * d) <= 1e-12) {
      throw invalid_parameter("contour: polyline passes through 0");
    }
  }
  ContourSpec c;
  c.kind = Kind::Polyline;
  c.vertices = std::move(vertices);
  c.nodes = nodes_per_edge;
  return c;
}

namespace {

Complex contour_integrand(const Evaluator2& lambda_f, const C2& z, Complex zeta) {
  Complex inv = 1.0 / zeta;
  return (1.0 + inv) * lambda_f(z.z1 * (1.0 + zeta), z.z2 * (1.0 + inv));
}

// (2 pi i)^-1 over a circle: zeta = c + r e^{it} makes the weighted mean of
// h(zeta) r e^{it} over t; spectrally accurate for analytic integrands.
Complex circle_pass(const Evaluator2& lf, const C2& z, Complex c, double r, int n) {
  std::vector<Complex> terms(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    Complex e = std::polar(1.0, 2.0 * kPi * double(i) / double(n));
    terms[size_t(i)] = contour_integrand(lf, z, c + r * e) * e;
  }
  return r * pairwise_sum(terms) / double(n);
}

// Trapezoid sums along one edge under interval doubling, accelerated by
// Richardson extrapolation (Romberg); plain doubling alone converges too
// slowly on a non-periodic edge to hit the shared tolerance.
Complex edge_romberg(const Evaluator2& lf, const C2& z, Complex a, Complex b, int start_n) {
  constexpr int kMaxLevels = 16;
  Complex d = b - a;
  auto f = [&](double t) { return contour_integrand(lf, z, a + t * d); };

  int n = std::max(1, start_n);
  double h = 1.0 / double(n);
  Complex t0 = 0.5 * (f(0.0) + f(1.0));
  for (int i = 1; i < n; ++i) t0 += f(double(i) * h);

  std::vector<std::vector<Complex>> table = {{t0 * h}};
  for (int level = 1; level <= kMaxLevels; ++level) {
    n *= 2;
    h *= 0.5;
    Complex add{};
    for (int i = 1; i < n; i += 2) add += f(double(i) * h);
    std::vector<Complex> row = {0.5 * table[size_t(level) - 1][0] + add * h};
    double pow4 = 1.0;
    for (int j = 1; j <= level; ++j) {
      pow4 *= 4.0;
      row.push_back((pow4 * row[size_t(j) - 1] - table[size_t(level) - 1][size_t(j) - 1]) /
                    (pow4 - 1.0));
    }
    if (converged(row.back(), table.back().back())) return row.back() * d;
    table.push_back(std::move(row));
  }
  throw quadrature_failure("contour_h_star: edge quadrature did not converge");
}

Complex polyline_integral(const Evaluator2& lf, const C2& z, const std::vector<Complex>& v,
                          int nodes_per_edge) {
  std::vector<Complex> edges(v.size());
  for (size_t e = 0; e < v.size(); ++e) {
    edges[e] = edge_romberg(lf, z, v[e], v[(e + 1) % v.size()], nodes_per_edge);
  }
  return pairwise_sum(edges) / Complex(0.0, 2.0 * kPi);
}

}  // namespace

Complex contour_h_star(const Evaluator2& lambda_f, const C2& z, const ContourSpec& gamma) {
  if (!lambda_f) throw invalid_parameter("contour_h_star: missing evaluator");
  if (gamma.kind == ContourSpec::Kind::Circle) {
    if (gamma.radius - std::abs(gamma.center) <= 1e-12) {
      throw invalid_parameter("contour: contour passes through 0");
    }
    Complex prev = circle_pass(lambda_f, z, gamma.center, gamma.radius, gamma.nodes);
    for (int n = 2 * gamma.nodes; n <= kMaxNodes; n *= 2) {
      Complex cur = circle_pass(lambda_f, z, gamma.center, gamma.radius, n);
      if (converged(prev, cur)) return cur;
      prev = cur;
    }
    throw quadrature_failure("contour_h_star: node doubling did not converge");
  }
  return polyline_integral(lambda_f, z, gamma.vertices, gamma.nodes);
}

Complex contour_h_star(const TruncatedSeries2& f, const C2& z, const ContourSpec& gamma) {
  return contour_h_star(evaluator(lambda_op(f)), z, gamma);
}

Shadow cauchy_hadamard_shadow(const TruncatedSeries2& f, int directions) {
  const int cap = f.degree_cap();
  if (cap < 20) throw invalid_parameter("cauchy_hadamard_shadow: degree cap must be >= 20");
  if (directions < 2) throw invalid_parameter("cauchy_hadamard_shadow: need >= 2 directions");

  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  std::vector<double> logc(size_t(cap + 1) * size_t(cap + 2) / 2);
  {
    size_t k = 0;
    for (int a1 = 0; a1 <= cap; ++a1)
      for (int a2 = 0; a2 + a1 <= cap; ++a2) {
        double m = std::abs(f.at(a1, a2));
        if (!std::isfinite(m)) {
          throw invalid_parameter("cauchy_hadamard_shadow: non-finite coefficient");
        }
        logc[k++] = m > 0.0 ? std::log(m) : kNegInf;
      }
  }
  auto log_coeff = [&](int a1, int a2) {
    size_t row = size_t(a1) * size_t(cap + 1) - size_t(a1) * size_t(a1 - 1) / 2;
    return logc[row + size_t(a2)];
  };

  const int band = std::max(8, cap / 4);
  const int d0 = cap - band + 1;
  const double half_pi = std::acos(-1.0) / 2.0;

  std::vector<double> radial(static_cast<size_t>(directions));
  bool any_finite = false;
  for (int k = 0; k < directions; ++k) {
    double theta = half_pi * double(k) / double(directions - 1);
    double u = (k == directions - 1) ? 0.0 : std::cos(theta);
    double v = (k == 0) ? 0.0 : std::sin(theta);
    double lu = u > 0.0 ? std::log(u) : kNegInf;
    double lv = v > 0.0 ? std::log(v) : kNegInf;

    // log m_d = max over |alpha| = d of log|c| + a1 log u + a2 log v; the
    // least-squares slope over the band kills polynomial prefactors.
    std::vector<std::pair<double, double>> pts;
    for (int d = d0; d <= cap; ++d) {
      double best = kNegInf;
      for (int a1 = 0; a1 <= d; ++a1) {
        double lc = log_coeff(a1, d - a1);
        if (lc == kNegInf) continue;
        double term = lc;
        if (a1 > 0) {
          if (lu == kNegInf) continue;
          term += a1 * lu;
        }
        if (d - a1 > 0) {
          if (lv == kNegInf) continue;
          term += (d - a1) * lv;
        }
        best = std::max(best, term);
      }
      if (best != kNegInf) pts.emplace_back(double(d), best);
    }
    if (pts.size() < 2) {
      radial[size_t(k)] = std::numeric_limits<double>::infinity();
      continue;
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [x, y] : pts) {
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    double nn = double(pts.size());
    double slope = (nn * sxy - sx * sy) / (nn * sxx - sx * sx);
    radial[size_t(k)] = std::exp(-slope);
    any_finite = true;
  }

  if (!any_finite) return Shadow::whole_quadrant();

  // Boundary points (t cos, t sin); the downward closure of the open region
  // under them has profile beta(x) = max{y_k : x_k > x}.
  std::vector<std::pair<double, double>> bpts;
  double xmax = 0.0, ymax = 0.0;
  bool x_inf = false, y_inf = false;
  for (int k = 0; k < directions; ++k) {
    double theta = half_pi * double(k) / double(directions - 1);
    double u = (k == directions - 1) ? 0.0 : std::cos(theta);
    double v = (k == 0) ? 0.0 : std::sin(theta);
    double t = radial[size_t(k)];
    if (!std::isfinite(t)) {
      if (k == 0) x_inf = true;
      if (k == directions - 1) y_inf = true;
      continue;
    }
    bpts.emplace_back(t * u, t * v);
    xmax = std::max(xmax, t * u);
    ymax = std::max(ymax, t * v);
  }
  if (bpts.empty()) return Shadow::whole_quadrant();
  if (x_inf || y_inf) {
    // Unbounded along an axis: fall back to the rectangle hull of the finite
    // part with infinite flags where the tail carried no decay.
    Shadow s = Shadow::whole_quadrant();
    if (!x_inf || !y_inf) {
      double bx = x_inf ? std::numeric_limits<double>::infinity() : xmax;
      double by = y_inf ? std::numeric_limits<double>::infinity() : ymax;
      return Shadow::from_points({}, bx, by);
    }
    return s;
  }

  std::sort(bpts.begin(), bpts.end());
  std::vector<std::pair<double, double>> profile;
  profile.reserve(bpts.size() + 1);
  // suffix maxima of y over strictly larger x
  std::vector<double> suffix(bpts.size() + 1, 0.0);
  for (size_t i = bpts.size(); i-- > 0;) {
    suffix[i] = std::max(suffix[i + 1], bpts[i].second);
  }
  profile.emplace_back(0.0, ymax);
  for (size_t i = 0; i < bpts.size(); ++i) {
    double x = bpts[i].first;
    if (x <= profile.back().first) continue;
    size_t j = i + 1;
    while (j < bpts.size() && bpts[j].first <= x) ++j;
    double b = std::min(profile.back().second, suffix[j]);
    profile.emplace_back(x, b);
  }
  if (profile.back().first < xmax) profile.emplace_back(xmax, 0.0);
  return Shadow::from_points(std::move(profile), xmax, ymax);
}

}  // namespace hadstar
