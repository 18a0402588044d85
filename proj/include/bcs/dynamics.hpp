#pragma once
// The torus flow on the dual of P1, its norm-image lattice, comparison of two
// fields through these invariants, and recovery of inert primes from the norm
// image.
#include "bcs/ideal_lattice.hpp"

namespace bcs {

struct FlowModel {
  std::size_t free_rank = 0;
  std::vector<FactoredRational> frequencies;  // each > 1, flowing with frequency ln N
  std::vector<IntVector> free_basis;
  std::size_t fixed_rank = 0;
};

FlowModel build_flow(const TruncatedP1& p1);

/// Full row rank over Z of the exponent vectors of the frequencies.
bool check_frequency_independence(const std::vector<FactoredRational>& frequencies);

struct NormImageLattice {
  FieldSpec field;
  Integer bound;
  std::vector<Prime> primes;  // coordinates
  Lattice lattice;

  /// Same lattice re-expressed over a larger coordinate list.
  Lattice embedded(const std::vector<Prime>& coordinates) const;
};

NormImageLattice norm_image(const TruncatedP1& p1);

enum class SplitVerdict { inert, not_inert };
const char* to_string(SplitVerdict v);

/// inert iff the p-coordinates of the lattice generate gZ with g >= n.
SplitVerdict recover_split(const NormImageLattice& norms, Prime p, int degree, Integer* g_out = nullptr);

struct SplitRecovery {
  SplitVerdict verdict;
  Integer g;
  Integer bound;  // bound at which the primes above p entered
  Eigen::Index window_size = 0;
};

/// Window: every prime of norm <= the guard bound plus the primes above p of
/// norm <= B, with B doubling from p up to the ceiling.
SplitRecovery recover_split_escalating(const FieldSpec& field, Prime p, const Integer& ceiling = 1000000);

struct Comparison {
  bool distinguished = false;
  std::string invariant;  // "narrow_class_number", "norm_image", "prime_norms"
  std::string witness;
};

Comparison compare_fields(const FieldSpec& left, const FieldSpec& right, const Integer& B);

}  // namespace bcs
