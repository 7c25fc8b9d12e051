// Independent reference computations for the test suites. Everything here
// recomputes expected values through a different route than the library:
// closed forms, brute-force grids and flood fills, Pascal-triangle
// binomials. Keep this file free of calls into the code paths it checks.
#pragma once

#include <cmath>
#include <cstdint>
#include <deque>
#include <functional>
#include <vector>

namespace oracles {

// --- support function ------------------------------------------------------

// sup of a*x + b*y over {x^2 + y^2 <= r^2, x,y >= 0}: Cauchy-Schwarz.
inline double support_ball(double r, double a, double b) { return r * std::hypot(a, b); }

// sup over the rectangle [0,r1] x [0,r2].
inline double support_polydisc(double r1, double r2, double a, double b) {
  return a * r1 + b * r2;
}

// brute-force sup of a*x + b*beta(x) over a dense x grid
inline double support_profile_bruteforce(const std::function<double(double)>& beta, double xmax,
                                         double a, double b, int n = 1000000) {
  double best = 0.0;
  for (int i = 0; i <= n; ++i) {
    double x = xmax * double(i) / double(n);
    best = std::max(best, a * x + b * beta(x));
  }
  return best;
}

// --- separation ------------------------------------------------------------

// Closed form for the polydisc target: with R1 = r1/x and R2 = r2/y, the
// preimage region is the disc {|1+zeta| < R1} minus the Apollonius disc of
// {|1+1/zeta| >= R2}, which carries a loop around 0 exactly when the excluded
// disc (center 1/(R2^2-1), radius R2/(R2^2-1)) sits strictly inside the first
// one: 1 + (1+R2)/(R2^2-1) < R1, i.e. (R1-1)(R2-1) > 1. Axis cases degenerate
// to plain membership.
inline bool separated_polydisc_closed_form(double r1, double r2, double x, double y) {
  if (x <= 0.0 && y <= 0.0) return true;
  if (x <= 0.0) return y < r2;
  if (y <= 0.0) return x < r1;
  if (x >= r1 || y >= r2) return false;
  return (r1 / x - 1.0) * (r2 / y - 1.0) > 1.0;
}

// Brute-force sweep on a dense log-polar point grid: mark points of the
// preimage, then flood-fill the complement (8-connected, angular wraparound)
// from the inner ring; reaching the outer ring means no loop survives.
inline bool separated_bruteforce(const std::function<bool(double, double)>& shadow_contains,
                                 double x, double y, double s_min, double s_max, int n = 1024) {
  std::vector<uint8_t> inside(size_t(n) * size_t(n));
  for (int i = 0; i < n; ++i) {
    double s = s_min + (s_max - s_min) * double(i) / double(n - 1);
    double es = std::exp(s);
    for (int j = 0; j < n; ++j) {
      double t = 2.0 * std::acos(-1.0) * double(j) / double(n);
      double u = std::sqrt(1.0 + 2.0 * es * std::cos(t) + es * es);
      double v = std::sqrt(1.0 + 2.0 * std::cos(t) / es + 1.0 / (es * es));
      inside[size_t(i) * size_t(n) + size_t(j)] = shadow_contains(x * u, y * v) ? 1 : 0;
    }
  }
  std::vector<uint8_t> seen(size_t(n) * size_t(n), 0);
  std::deque<int> queue;
  for (int j = 0; j < n; ++j) {
    if (!inside[size_t(j)]) {
      seen[size_t(j)] = 1;
      queue.push_back(j);
    }
  }
  if (queue.empty()) return true;  // inner ring wholly inside: it is a loop
  while (!queue.empty()) {
    int cur = queue.front();
    queue.pop_front();
    int i = cur / n, j = cur % n;
    if (i == n - 1) return false;  // outside points join both rings
    for (int di = -1; di <= 1; ++di) {
      for (int dj = -1; dj <= 1; ++dj) {
        if (di == 0 && dj == 0) continue;
        int ni = i + di;
        if (ni < 0 || ni >= n) continue;
        int nj = (j + dj + n) % n;
        int nb = ni * n + nj;
        if (seen[size_t(nb)] || inside[size_t(nb)]) continue;
        seen[size_t(nb)] = 1;
        queue.push_back(nb);
      }
    }
  }
  return true;
}

// --- coefficient identities -------------------------------------------------

// Pascal-triangle binomials, exact in double for the sizes used here.
inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  std::vector<double> row(size_t(n) + 1, 0.0);
  row[0] = 1.0;
  for (int i = 1; i <= n; ++i) {
    for (int j = i; j >= 1; --j) row[size_t(j)] += row[size_t(j) - 1];
  }
  return row[size_t(k)];
}

// Residue of the continuation integrand for a monomial z1^a1 z2^a2:
// (1+a1) (1+zeta)^a1 (1+1/zeta)^(a2+1) has residue (1+a1) C(a1+a2+1, a2)
// at 0, by reading the zeta^a2 coefficient of (1+zeta)^(a1+a2+1).
inline double contour_monomial_factor(int a1, int a2) {
  return (1.0 + a1) * binomial(a1 + a2 + 1, a2);
}

// (f*g)(z) summed term by term from raw coefficient tables.
inline std::complex<double> coefficient_product_eval(
    const std::vector<std::vector<std::complex<double>>>& f,
    const std::vector<std::vector<std::complex<double>>>& g, std::complex<double> z1,
    std::complex<double> z2) {
  std::complex<double> acc = 0.0;
  for (size_t a1 = 0; a1 < f.size() && a1 < g.size(); ++a1) {
    for (size_t a2 = 0; a2 < f[a1].size() && a2 < g[a1].size(); ++a2) {
      acc += f[a1][a2] * g[a1][a2] * std::pow(z1, double(a1)) * std::pow(z2, double(a2));
    }
  }
  return acc;
}

}  // namespace oracles
