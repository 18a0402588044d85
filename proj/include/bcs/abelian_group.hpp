#pragma once

// Lattices, finitely generated abelian groups and their characters.
// Everything here is exact; complex values only appear in Character::value.

#include "bcs/angle.hpp"
#include "bcs/normal_form.hpp"

#include <optional>
#include <vector>

namespace bcs {

/// Sublattice of Z^n stored by its canonical (Hermite) row basis.
class Lattice {
 public:
  explicit Lattice(Eigen::Index ambient_rank = 0);
  /// Lattice spanned by the rows of `generators`.
  Lattice(Eigen::Index ambient_rank, const IntMatrix& generators);

  static Lattice full(Eigen::Index ambient_rank);

  Eigen::Index ambient_rank() const { return ambient_rank_; }
  Eigen::Index rank() const { return basis_.rows(); }
  const IntMatrix& basis() const { return basis_; }
  IntVector basis_vector(Eigen::Index i) const { return basis_.row(i).transpose(); }

  /// Coordinates of v in the stored basis, if v lies in the lattice.
  std::optional<IntVector> coordinates(const IntVector& v) const;
  bool contains(const IntVector& v) const { return coordinates(v).has_value(); }
  bool contains(const Lattice& other) const;

  /// |Z^n : L| when L has full rank.
  std::optional<Integer> index() const;

  Lattice operator+(const Lattice& other) const;
  bool operator==(const Lattice& other) const;

 private:
  Eigen::Index ambient_rank_ = 0;
  IntMatrix basis_;
  std::vector<Eigen::Index> pivots_;
};

/// Z/d_1 x ... x Z/d_k with d_1 | d_2 | ... (d_i = 0 for a free factor), together
/// with the maps to and from an ambient Z^n it was presented as a quotient of.
class FgAbelianGroup {
 public:
  FgAbelianGroup() = default;
  FgAbelianGroup(std::vector<Integer> invariant_factors, IntMatrix generator_lift,
                 IntMatrix projection);

  const std::vector<Integer>& invariant_factors() const { return invariant_factors_; }
  /// Row i lifts generator i into the ambient lattice.
  const IntMatrix& generator_lift() const { return generator_lift_; }
  /// Ambient coordinates (rows) to group coordinates (columns), before reduction.
  const IntMatrix& projection() const { return projection_; }

  std::size_t generator_count() const { return invariant_factors_.size(); }
  Eigen::Index ambient_rank() const { return projection_.rows(); }
  bool is_finite() const;
  std::size_t free_rank() const;
  /// Group order, empty for infinite groups.
  std::optional<Integer> order() const;
  bool is_trivial() const { return invariant_factors_.empty(); }

  IntVector project(const IntVector& ambient) const;
  IntVector reduce(IntVector coords) const;
  IntVector identity() const { return IntVector::Zero(generator_count()); }
  IntVector add(const IntVector& a, const IntVector& b) const { return reduce(a + b); }
  IntVector negate(const IntVector& a) const { return reduce(-a); }
  Integer element_order(const IntVector& coords) const;

  /// All elements of a finite group, in mixed-radix order (first generator fastest).
  std::vector<IntVector> elements() const;
  std::size_t index_of(const IntVector& coords) const;

  bool isomorphic_to(const FgAbelianGroup& other) const {
    return invariant_factors_ == other.invariant_factors_;
  }

 private:
  std::vector<Integer> invariant_factors_;
  IntMatrix generator_lift_;
  IntMatrix projection_;
};

/// Z^ambient_rank / sub, presented in Smith coordinates.
FgAbelianGroup quotient_group(Eigen::Index ambient_rank, const Lattice& sub);

/// Z/d_1 x ... x Z/d_k for an arbitrary list of orders (normalized via SNF).
/// Its ambient lattice is Z^k with the given cyclic coordinates.
FgAbelianGroup group_from_cyclic_factors(const std::vector<Integer>& orders);

/// A character of a finitely generated abelian group, one angle per generator.
class Character {
 public:
  Character() = default;
  explicit Character(std::vector<AngleExpr> angles) : angles_(std::move(angles)) {}

  static Character trivial(std::size_t generators);

  const std::vector<AngleExpr>& angles() const { return angles_; }
  std::size_t size() const { return angles_.size(); }
  const AngleExpr& operator[](std::size_t i) const { return angles_[i]; }
  /// All angles rational, so equality and pairing are decided exactly.
  bool is_exact() const;

  /// <v, chi> as an angle.
  AngleExpr pairing(const IntVector& v) const;
  Complex value(const IntVector& v) const { return pairing(v).phase(); }

  Character operator*(const Character& other) const;
  Character inverse() const;
  bool operator==(const Character&) const = default;

 private:
  std::vector<AngleExpr> angles_;
};

/// Every character of a finite group, angle a_i / d_i on generator i.
std::vector<Character> characters_of(const FgAbelianGroup& group);

/// Kernel of f : Z^m -> Z^n (f given as an n x m matrix acting on columns),
/// a basis of its image, and a section mapping each image basis vector back.
struct KernelAndSection {
  Lattice kernel;          // in Z^m
  IntMatrix image_basis;   // rows, HNF, in Z^n
  IntMatrix section;       // row i in Z^m, f * section_i = image_basis_i
};

KernelAndSection kernel_and_section(const IntMatrix& f);

}  // namespace bcs
