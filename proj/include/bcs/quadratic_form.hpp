#pragma once

// Primitive binary quadratic forms a x^2 + b x y + c y^2 of a fixed
// discriminant: reduction (definite and indefinite), reduction cycles and
// Gauss composition. Transforms are tracked so callers can recover
// representations of the reduced form.

#include "bcs/integer_ops.hpp"

#include <compare>
#include <string>
#include <vector>

namespace bcs {

struct QuadForm {
  Integer a, b, c;

  Integer discriminant() const { return b * b - 4 * a * c; }
  bool is_primitive() const;
  Integer evaluate(const Integer& x, const Integer& y) const { return a * x * x + b * x * y + c * y * y; }
  /// The inverse class: (a, -b, c).
  QuadForm opposite() const { return {a, -b, c}; }
  std::string str() const;

  bool operator==(const QuadForm&) const = default;
  std::strong_ordering operator<=>(const QuadForm& o) const;
};

using Transform = Eigen::Matrix<Integer, 2, 2>;

/// f o M, i.e. (x, y) -> f(M (x, y)^T).
QuadForm apply_transform(const QuadForm& f, const Transform& M);

struct ReducedForm {
  QuadForm form;
  Transform transform;  // input o transform == form, det transform = 1
};

/// Principal form of discriminant D.
QuadForm principal_form(const Integer& D);

bool is_reduced(const QuadForm& f);
/// Reduction to a reduced form properly equivalent to f.
ReducedForm reduce(const QuadForm& f);

/// One step of the indefinite reduction operator, with its transform.
ReducedForm rho_step(const QuadForm& f);
/// The rho-cycle of a reduced indefinite form, starting at f.
std::vector<QuadForm> reduction_cycle(const QuadForm& f);

/// All reduced primitive forms of discriminant D (positive definite ones if D < 0).
std::vector<QuadForm> reduced_forms(const Integer& D);

/// Gauss composition of two forms with positive leading coefficients,
/// returned reduced.
QuadForm compose(const QuadForm& f, const QuadForm& g);

/// A form properly equivalent to f with a > 0.
ReducedForm with_positive_leading(const QuadForm& f);

}  // namespace bcs
