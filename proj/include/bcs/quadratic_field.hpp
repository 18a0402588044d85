#pragma once

// Arithmetic of Q and quadratic fields: prime splitting, narrow class groups
// through binary quadratic forms, ideals as Z-lattices and totally positive
// generators of narrowly principal ideals.

#include "bcs/abelian_group.hpp"
#include "bcs/factored_rational.hpp"
#include "bcs/field.hpp"
#include "bcs/quadratic_form.hpp"

#include <map>
#include <optional>
#include <span>

namespace bcs {

/// (u + v sqrt(D)) / 2 with u = v D mod 2: an element of the maximal order.
struct QuadInt {
  Integer u = 0, v = 0;

  static QuadInt from_integer(const Integer& n) { return {2 * n, 0}; }
  QuadInt conjugate() const { return {u, -v}; }
  QuadInt operator-() const { return {-u, -v}; }
  bool is_zero() const { return u == 0 && v == 0; }
  bool operator==(const QuadInt&) const = default;
  std::string str(const Integer& D) const;
};

QuadInt multiply(const QuadInt& x, const QuadInt& y, const Integer& D);
QuadInt add(const QuadInt& x, const QuadInt& y);
Integer norm(const QuadInt& x, const Integer& D);
/// Sign of (u + v sqrt(D)) / 2 for D > 0 non-square, decided exactly.
int real_sign(const Integer& u, const Integer& v, const Integer& D);
/// Positive at every real embedding (vacuous when D < 0, nonzero required).
bool is_totally_positive(const QuadInt& x, const Integer& D);
/// Coordinates (x, y) of the element in the basis 1, w = (D mod 2 + sqrt D) / 2.
std::pair<Integer, Integer> basis_coordinates(const QuadInt& x, const Integer& D);
QuadInt from_basis_coordinates(const Integer& x, const Integer& y, const Integer& D);

/// Integral ideal of the maximal order, as a Z-lattice in coordinates (y, x)
/// for x + y w. The canonical basis makes equality a matrix comparison.
class QuadIdeal {
 public:
  QuadIdeal() = default;
  QuadIdeal(const Integer& D, const std::vector<QuadInt>& generators);

  static QuadIdeal unit(const Integer& D);
  static QuadIdeal principal(const Integer& D, const QuadInt& generator);
  /// a Z + ((-b + sqrt D) / 2) Z for a form with a > 0.
  static QuadIdeal from_form(const QuadForm& f);

  const Integer& discriminant() const { return D_; }
  const Lattice& lattice() const { return lattice_; }
  Integer norm() const;
  bool contains(const QuadInt& x) const;
  QuadIdeal operator*(const QuadIdeal& other) const;
  QuadIdeal pow(unsigned k) const;
  QuadIdeal conjugate() const;
  /// (content m, primitive form f) with this = m * from_form(f).
  std::pair<Integer, QuadForm> primitive_form() const;
  bool operator==(const QuadIdeal& o) const { return D_ == o.D_ && lattice_ == o.lattice_; }

 private:
  Integer D_ = 1;
  Lattice lattice_{2};
};

/// Fundamental unit (u + v sqrt D) / 2 > 1 of a real quadratic field.
QuadInt fundamental_unit(const Integer& D);

/// Narrow class group of a quadratic field computed as the proper-equivalence
/// class group of primitive forms of discriminant D.
class FormClassGroup {
 public:
  explicit FormClassGroup(const Integer& D);

  const Integer& discriminant() const { return D_; }
  std::size_t class_number() const { return representatives_.size(); }
  const FgAbelianGroup& group() const { return group_; }
  /// One reduced form with a > 0 per class, sorted.
  const std::vector<QuadForm>& representatives() const { return representatives_; }
  std::size_t identity_class() const { return identity_; }

  /// Class index of any primitive form of discriminant D.
  std::size_t classify(const QuadForm& f) const;
  std::size_t compose_classes(std::size_t i, std::size_t j) const { return table_[i][j]; }
  /// Coordinates of a class in the Smith presentation of group().
  const IntVector& coordinates(std::size_t class_index) const { return coordinates_[class_index]; }
  std::size_t class_of_coordinates(const IntVector& coords) const;

 private:
  Integer D_;
  std::vector<QuadForm> representatives_;
  std::map<QuadForm, std::size_t> reduced_to_class_;
  std::vector<std::vector<std::size_t>> table_;
  std::size_t identity_ = 0;
  FgAbelianGroup group_;
  std::vector<IntVector> coordinates_;
  std::map<std::vector<long>, std::size_t> coordinates_to_class_;
};

/// Cached to avoid recomputation: one FormClassGroup per discriminant.
const FormClassGroup& form_class_group(const Integer& D);

enum class SplitType { split, inert, ramified };
const char* to_string(SplitType s);

SplitType split_type(const FieldSpec& field, Prime p);

/// A prime ideal together with its norm and narrow class.
struct PrimeIdealData {
  Prime p = 0;
  int e = 1;
  int f = 1;
  FactoredRational norm;
  QuadForm class_form;   // quadratic fields: the form attached to the ideal
  IntVector class_coords;  // narrow class in Smith coordinates
  std::optional<QuadIdeal> ideal;  // quadratic fields only
  int conjugate_offset = 0;  // position of the conjugate prime relative to this one
  std::string label;        // "p", "p'" for split, "p^2" norm, ...

  Integer norm_value() const { return boost::multiprecision::pow(Integer(p), static_cast<unsigned>(f)); }
};

/// Primes of the field above p, conjugates ordered by (class representative, own form).
std::vector<PrimeIdealData> prime_ideal_above(const FieldSpec& field, Prime p);

/// Narrow class group of a rational or quadratic field (form route for quadratic).
FgAbelianGroup narrow_class_group(const FieldSpec& field);

/// A totally positive generator of prod P_i^{v_i}, stored as numerator / denominator.
struct GeneratorCertificate {
  QuadInt numerator;     // for Q: v = 0 and u = 2 * numerator
  Integer denominator = 1;
  std::string str(const Integer& D) const;
};

/// Returns a certificate iff the ideal prod P_i^{v_i} is generated by a totally
/// positive element; the certificate's ideal equality is checked before returning.
std::optional<GeneratorCertificate> is_totally_positive_principal(const FieldSpec& field,
                                                                  std::span<const PrimeIdealData> primes,
                                                                  const IntVector& exponents);

/// A totally positive generator of an integral ideal, if one exists.
std::optional<QuadInt> totally_positive_generator(const QuadIdeal& ideal);

}  // namespace bcs
