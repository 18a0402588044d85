#pragma once

#include "bcs/types.hpp"

#include <tuple>

namespace bcs {

template <class Scalar>
Scalar abs_value(const Scalar& x) {
  return x < 0 ? Scalar(-x) : x;
}

template <class Scalar>
Scalar floor_div(const Scalar& a, const Scalar& b) {
  Scalar q = a / b;
  if (q * b != a && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

/// Representative of a mod b in [0, |b|).
template <class Scalar>
Scalar floor_mod(const Scalar& a, const Scalar& b) {
  Scalar r = a % b;
  if (r < 0) r += abs_value(b);
  return r;
}

/// (g, x, y) with a*x + b*y = g = gcd(a, b) >= 0.
template <class Scalar>
std::tuple<Scalar, Scalar, Scalar> extended_gcd(const Scalar& a, const Scalar& b) {
  Scalar old_r = a, r = b;
  Scalar old_s = 1, s = 0;
  Scalar old_t = 0, t = 1;
  while (r != 0) {
    Scalar q = old_r / r;
    Scalar tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) return {Scalar(-old_r), Scalar(-old_s), Scalar(-old_t)};
  return {old_r, old_s, old_t};
}

template <class Scalar>
Scalar gcd_value(const Scalar& a, const Scalar& b) {
  return std::get<0>(extended_gcd(a, b));
}

inline Integer isqrt(const Integer& n) {
  if (n < 0) throw std::invalid_argument("isqrt of negative number");
  return boost::multiprecision::sqrt(n);
}

inline bool is_square(const Integer& n) {
  if (n < 0) return false;
  Integer r = isqrt(n);
  return r * r == n;
}

inline Integer pow_int(const Integer& base, unsigned exponent) {
  return boost::multiprecision::pow(base, exponent);
}

}  // namespace bcs
