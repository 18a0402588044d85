#pragma once
// Finite-dimensional representations of the crossed product C(C) x| J on
// l^2(C), C the narrow class group, and Gram-matrix models of the induced
// representations attached to an isotropy sublattice.
#include "bcs/ideal_lattice.hpp"

#include <random>

namespace bcs {

/// Narrow class group together with the class of every prime of a window.
struct ClassModel {
  TruncatedP1 p1;
  FgAbelianGroup classes;
  std::vector<IntVector> elements;       // classes.elements()
  std::vector<std::size_t> prime_class;  // index into elements, per window prime

  std::size_t size() const { return elements.size(); }
  std::size_t class_of(const IntVector& ideal_vector) const;
  /// Permutation x -> x + c of the element indices.
  std::vector<std::size_t> translation(std::size_t c) const;
};

/// Throws BoundTooSmall when the window primes do not generate the class group.
ClassModel class_model(const FieldSpec& field, const Integer& B);

/// One generator u_P: phase times the permutation e_x -> e_{x + [P]}.
struct GeneratorImage {
  AngleExpr phase;
  std::vector<std::size_t> permutation;
  FactoredRational norm;
};

struct MatrixRep {
  std::size_t dimension = 0;
  std::vector<GeneratorImage> generators;  // one per window prime

  ComplexMatrix generator_matrix(std::size_t i) const;
  /// Multiplication by a function on the class group.
  static ComplexMatrix diagonal(const ComplexVector& f) { return f.asDiagonal(); }
  /// Every generator image plus the point masses.
  std::vector<ComplexMatrix> algebra_generators() const;
};

/// A character of Z^window given by one angle per prime.
MatrixRep build_rho(const ClassModel& model, const Character& gamma);

/// Random character with exact rational angles k / 2^53.
Character random_character(std::size_t n, std::mt19937_64& rng);

/// Dimension of the joint commutant of a set of square matrices.
std::size_t commutant_dimension(const std::vector<ComplexMatrix>& matrices, double threshold = 1e-9);
bool check_irreducible(const MatrixRep& rep);

/// Decides equivalence through the pairing of gamma / delta with P1.
bool are_equivalent(const ClassModel& model, const Character& gamma, const Character& delta);

struct Intertwiner {
  ComplexMatrix W;
  double residual = 0;
};

/// Solves W rho_gamma(a) = rho_delta(a) W for an invertible W.
std::optional<Intertwiner> find_intertwiner(const MatrixRep& from, const MatrixRep& to);

/// Shifts every phase by (t / 2 pi) ln N(P).
MatrixRep time_evolve(const MatrixRep& rep, const TimeValue& t);
Character time_evolve(const Character& gamma, const PrimeWindow& window, const TimeValue& t);

/// sum_k coefficient_k * f_k * u_{g_k}.
struct CrossedProductTerm {
  Complex coefficient;
  ComplexVector function;  // on the class group
  IntVector group_element;  // ideal vector over the window
};

/// Largest operator norm of rho_gamma(element) over sampled gamma exceeds 1e-9.
bool joint_kernel_probe(const ClassModel& model, const std::vector<CrossedProductTerm>& element,
                        std::size_t sample_count, std::uint64_t seed, double* largest_norm = nullptr);

struct GramModel {
  std::vector<IntVector> window;
  Lattice subgroup;
  Character character;  // on the ambient Z^r
  ComplexMatrix gram;

  std::size_t rank(double threshold = 1e-9) const;
  double min_eigenvalue() const;
  Complex inner(const ComplexVector& x, const ComplexVector& y) const { return x.dot(gram * y); }
};

/// <xi_s, xi_t> = gamma(t - s) when t - s lies in the subgroup, else 0.
GramModel induced_gram(Eigen::Index r, const Lattice& subgroup, const Character& gamma,
                       const std::vector<IntVector>& window);

/// Vectors gamma(-s) xi_s for the given coset representatives (which must lie
/// in the window, one per coset met by the window).
std::vector<ComplexVector> canonical_onb(const GramModel& model, const std::vector<IntVector>& coset_reps);

/// Gram rank over the window {k e_P : k = 0..depth} modulo the sublattice
/// omitting the coordinate of P.
std::size_t unbounded_dimension_witness(const PrimeWindow& window, Eigen::Index prime_index, int depth);

}  // namespace bcs
