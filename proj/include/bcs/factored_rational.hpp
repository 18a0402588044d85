#pragma once

#include "bcs/types.hpp"

#include <map>
#include <string>

namespace bcs {

/// A positive rational number held as its exponent vector over the rational
/// primes. Multiplication is exponent addition, so norm bookkeeping stays exact
/// regardless of how large the underlying integers get.
class FactoredRational {
 public:
  FactoredRational() = default;

  static FactoredRational prime_power(Prime p, const Integer& exponent);
  /// Factors a positive integer by trial division.
  static FactoredRational from_integer(const Integer& n);

  const std::map<Prime, Integer>& exponents() const { return exponents_; }
  Integer exponent(Prime p) const;
  bool is_one() const { return exponents_.empty(); }

  FactoredRational& operator*=(const FactoredRational& other);
  FactoredRational operator*(const FactoredRational& other) const;
  FactoredRational inverse() const;
  FactoredRational pow(const Integer& k) const;

  /// Exact value; only sensible for small exponents.
  Rational value() const;
  double log() const;
  /// Sign of log(this), decided exactly.
  int compare_to_one() const;

  /// "2^2*5^-1", or "1".
  std::string str() const;

  bool operator==(const FactoredRational&) const = default;

 private:
  void set(Prime p, Integer e);
  std::map<Prime, Integer> exponents_;
};

}  // namespace bcs
