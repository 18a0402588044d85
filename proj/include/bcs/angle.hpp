#pragma once

#include "bcs/factored_rational.hpp"

#include <map>
#include <string>

namespace bcs {

/// A time parameter t = real + pi_multiple * pi, both parts rational.
/// The values used by the flow (0, 1, pi, 2*pi m) are all of this form, which
/// keeps the one-parameter group law exact.
struct TimeValue {
  Rational real = 0;
  Rational pi_multiple = 0;

  static TimeValue seconds(const Rational& r) { return {r, 0}; }
  static TimeValue pi_times(const Rational& r) { return {0, r}; }

  double value() const;
  bool is_zero() const { return real == 0 && pi_multiple == 0; }

  TimeValue operator+(const TimeValue& o) const { return {real + o.real, pi_multiple + o.pi_multiple}; }
  TimeValue operator-() const { return {-real, -pi_multiple}; }
  TimeValue operator*(const Integer& k) const { return {real * Rational(k), pi_multiple * Rational(k)}; }
  bool operator==(const TimeValue&) const = default;
};

/// An angle measured in turns (e^{2 pi i a}), held exactly as
///   turn + sum_q (t_q / 2 pi) * ln q
/// with a rational turn reduced into [0, 1) and one time coefficient per
/// rational prime q. Characters shifted by N(.)^{it} stay exact this way.
class AngleExpr {
 public:
  AngleExpr() = default;
  explicit AngleExpr(const Rational& turn);

  const Rational& turn() const { return turn_; }
  const std::map<Prime, TimeValue>& log_terms() const { return log_terms_; }
  /// True when no transcendental term is present.
  bool is_rational() const { return log_terms_.empty(); }

  AngleExpr operator+(const AngleExpr& o) const;
  AngleExpr operator-(const AngleExpr& o) const;
  AngleExpr operator-() const;
  AngleExpr operator*(const Integer& k) const;

  /// Adds (t / 2 pi) * ln N.
  AngleExpr shifted(const TimeValue& t, const FactoredRational& norm) const;

  /// Value reduced into [0, 1).
  double evaluate() const;
  /// Distance from the nearest integer, in turns.
  double distance_to_integer() const;
  Complex phase() const;

  std::string str() const;
  bool operator==(const AngleExpr&) const = default;

 private:
  void add_term(Prime q, const TimeValue& t);
  Rational turn_ = 0;
  std::map<Prime, TimeValue> log_terms_;
};

}  // namespace bcs
