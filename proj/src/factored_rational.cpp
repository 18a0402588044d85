#include "bcs/factored_rational.hpp"

#include <cmath>
#include <sstream>

namespace bcs {

void FactoredRational::set(Prime p, Integer e) {
  if (e == 0) {
    exponents_.erase(p);
  } else {
    exponents_[p] = std::move(e);
  }
}

FactoredRational FactoredRational::prime_power(Prime p, const Integer& exponent) {
  FactoredRational r;
  r.set(p, exponent);
  return r;
}

FactoredRational FactoredRational::from_integer(const Integer& n) {
  if (n <= 0) throw std::invalid_argument("FactoredRational needs a positive integer");
  FactoredRational r;
  Integer m = n;
  for (Prime p = 2; Integer(p) * p <= m; ++p) {
    Integer e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (e != 0) r.set(p, e);
  }
  if (m > 1) r.set(m.convert_to<Prime>(), 1);
  return r;
}

Integer FactoredRational::exponent(Prime p) const {
  auto it = exponents_.find(p);
  return it == exponents_.end() ? Integer(0) : it->second;
}

FactoredRational& FactoredRational::operator*=(const FactoredRational& other) {
  for (const auto& [p, e] : other.exponents_) set(p, exponent(p) + e);
  return *this;
}

FactoredRational FactoredRational::operator*(const FactoredRational& other) const {
  FactoredRational r = *this;
  r *= other;
  return r;
}

FactoredRational FactoredRational::inverse() const { return pow(-1); }

FactoredRational FactoredRational::pow(const Integer& k) const {
  FactoredRational r;
  for (const auto& [p, e] : exponents_) r.set(p, e * k);
  return r;
}

Rational FactoredRational::value() const {
  Integer num = 1, den = 1;
  for (const auto& [p, e] : exponents_) {
    unsigned k = (e < 0 ? Integer(-e) : e).convert_to<unsigned>();
    if (e > 0) {
      num *= boost::multiprecision::pow(Integer(p), k);
    } else {
      den *= boost::multiprecision::pow(Integer(p), k);
    }
  }
  return Rational(num, den);
}

double FactoredRational::log() const {
  double s = 0;
  for (const auto& [p, e] : exponents_) s += to_double(e) * std::log(static_cast<double>(p));
  return s;
}

int FactoredRational::compare_to_one() const {
  Rational v = value();
  return v > 1 ? 1 : (v < 1 ? -1 : 0);
}

std::string FactoredRational::str() const {
  if (exponents_.empty()) return "1";
  std::ostringstream out;
  bool first = true;
  for (const auto& [p, e] : exponents_) {
    if (!first) out << '*';
    first = false;
    out << p;
    if (e != 1) out << '^' << e;
  }
  return out.str();
}

}  // namespace bcs
