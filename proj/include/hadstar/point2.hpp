#pragma once

#include <algorithm>
#include <complex>

namespace hadstar {

using Complex = std::complex<double>;

// Point of C^2.
struct C2 {
  Complex z1{};
  Complex z2{};
};

// Bilinear pairing z1*w1 + z2*w2 (no conjugation).
inline Complex dot(const C2& a, const C2& b) { return a.z1 * b.z1 + a.z2 * b.z2; }

// Coordinatewise product.
inline C2 cwise(const C2& a, const C2& b) { return {a.z1 * b.z1, a.z2 * b.z2}; }

inline bool is_zero(const C2& z) { return z.z1 == 0.0 && z.z2 == 0.0; }

inline double max_abs(const C2& z) { return std::max(std::abs(z.z1), std::abs(z.z2)); }

}  // namespace hadstar
