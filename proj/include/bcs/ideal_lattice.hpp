#pragma once
// Truncated ideal groups: the free abelian group on the prime ideals of a
// window, its sublattice of narrowly principal ideals, the norm map and the
// splitting of that sublattice into a norm-injective part and the norm kernel.
#include "bcs/quadratic_field.hpp"

namespace bcs {

/// Prime ideals of a field in canonical order: by norm, then rational prime,
/// then the conjugate rule of prime_ideal_above.
struct PrimeWindow {
  FieldSpec field;
  Integer bound = 0;  // every prime of norm <= bound is present
  std::vector<PrimeIdealData> primes;

  Eigen::Index size() const { return static_cast<Eigen::Index>(primes.size()); }
  /// Distinct rational primes below the window, ascending.
  std::vector<Prime> rational_primes() const;
  /// Row i: exponent vector of N(P_i) over rational_primes().
  IntMatrix norm_matrix() const;
  /// Position of the first prime above p, or -1.
  Eigen::Index position(Prime p) const;
};

/// All primes of norm <= B.
PrimeWindow enumerate_primes(const FieldSpec& field, const Integer& B);
/// All primes of norm <= B together with every prime above the listed rational primes.
PrimeWindow enumerate_primes(const FieldSpec& field, const Integer& B, const std::vector<Prime>& extra);

struct TruncatedP1 {
  PrimeWindow window;
  Lattice lattice;
  /// One certificate per basis row of lattice; empty when not certified
  /// (table-kind fields, or certification switched off).
  std::vector<GeneratorCertificate> certificates;
  bool certified = false;
};

/// Kernel of the class map Z^window -> narrow class group. With certify set,
/// every basis vector gets a totally positive generator and every element of
/// prime order in the quotient is checked to have none.
TruncatedP1 truncated_P1(const PrimeWindow& window, bool certify = true);
TruncatedP1 truncated_P1(const FieldSpec& field, const Integer& B, bool certify = true);

FgAbelianGroup narrow_class_group_truncated(const TruncatedP1& p1);
FgAbelianGroup narrow_class_group_truncated(const FieldSpec& field, const Integer& B);

FactoredRational norm_map(const PrimeWindow& window, const IntVector& v);

struct P1Decomposition {
  std::vector<IntVector> free_basis;
  std::vector<FactoredRational> free_norms;
  std::vector<IntVector> kernel_basis;
};

/// P^1 = (part on which the norm is injective) + (kernel of the norm).
P1Decomposition decompose_P1(const TruncatedP1& p1);

/// Bound below which a norm window may miss narrow classes.
Integer guard_bound(const FieldSpec& field);

struct StabilizationReport {
  Integer guard;
  /// First window bound after which three further increments left the group unchanged.
  Integer empirical_bound;
  /// Group at empirical_bound equals the group at the guard bound.
  bool agrees_with_guard = false;
  FgAbelianGroup group;  // at max(guard, empirical_bound)
  std::vector<std::pair<Integer, std::vector<Integer>>> history;  // (bound, invariant factors)
};

/// Increments are the successive distinct prime-ideal norms.
StabilizationReport stabilization(const FieldSpec& field);

}  // namespace bcs
