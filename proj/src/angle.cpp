#include "bcs/angle.hpp"
#include "bcs/integer_ops.hpp"

#include <boost/math/constants/constants.hpp>

#include <cmath>
#include <sstream>

namespace bcs {
namespace {

constexpr double kPi = boost::math::constants::pi<double>();

Rational reduce_turn(const Rational& r) {
  Integer num = boost::multiprecision::numerator(r);
  Integer den = boost::multiprecision::denominator(r);
  Integer q = floor_div(num, den);
  return r - Rational(q);
}

}  // namespace

double TimeValue::value() const { return to_double(real) + to_double(pi_multiple) * kPi; }

AngleExpr::AngleExpr(const Rational& turn) : turn_(reduce_turn(turn)) {}

void AngleExpr::add_term(Prime q, const TimeValue& t) {
  TimeValue sum = log_terms_[q] + t;
  if (sum.is_zero()) {
    log_terms_.erase(q);
  } else {
    log_terms_[q] = sum;
  }
}

AngleExpr AngleExpr::operator+(const AngleExpr& o) const {
  AngleExpr r(turn_ + o.turn_);
  r.log_terms_ = log_terms_;
  for (const auto& [q, t] : o.log_terms_) r.add_term(q, t);
  return r;
}

AngleExpr AngleExpr::operator-() const {
  AngleExpr r(-turn_);
  for (const auto& [q, t] : log_terms_) r.log_terms_[q] = -t;
  return r;
}

AngleExpr AngleExpr::operator-(const AngleExpr& o) const { return *this + (-o); }

AngleExpr AngleExpr::operator*(const Integer& k) const {
  AngleExpr r(turn_ * Rational(k));
  if (k == 0) return r;
  for (const auto& [q, t] : log_terms_) r.log_terms_[q] = t * k;
  return r;
}

AngleExpr AngleExpr::shifted(const TimeValue& t, const FactoredRational& norm) const {
  AngleExpr r = *this;
  if (t.is_zero()) return r;
  for (const auto& [q, e] : norm.exponents()) r.add_term(q, t * e);
  return r;
}

double AngleExpr::evaluate() const {
  // (a + b pi) / (2 pi) * ln q = (a / (2 pi) + b / 2) * ln q
  double s = 0;
  for (const auto& [q, t] : log_terms_) {
    double coeff = to_double(t.real) / (2 * kPi) + to_double(t.pi_multiple) / 2;
    s += coeff * std::log(static_cast<double>(q));
  }
  s -= std::floor(s);
  double v = to_double(turn_) + s;
  v -= std::floor(v);
  return v;
}

double AngleExpr::distance_to_integer() const {
  double v = evaluate();
  return std::min(v, 1.0 - v);
}

Complex AngleExpr::phase() const { return std::polar(1.0, 2 * kPi * evaluate()); }

std::string AngleExpr::str() const {
  std::ostringstream out;
  out << turn_;
  for (const auto& [q, t] : log_terms_) {
    out << " + (" << t.real << " + " << t.pi_multiple << "*pi)/(2pi)*ln" << q;
  }
  return out.str();
}

}  // namespace bcs
