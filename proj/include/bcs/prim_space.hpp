#pragma once
// Finite model of the primitive ideal space: zero sets of finite adeles,
// approximants of the isotropy groups Gamma_S, the power-cofinite topology on
// zero sets, and the CRT construction moving one finite adele onto another.
#include "bcs/ideal_lattice.hpp"

#include <set>

namespace bcs {

/// Indices into a window of primes.
using ZeroSet = std::set<std::size_t>;

struct SupportPattern {
  std::vector<bool> zero_at;  // one flag per window prime
};

ZeroSet quasi_orbit(const SupportPattern& x);

/// Residues modulo p^precision of an element of the maximal order, one per
/// rational prime, in coordinates x + y w with w the standard ring generator.
struct ResidueVector {
  std::vector<Prime> primes;
  unsigned precision = 1;
  std::vector<std::pair<Integer, Integer>> residues;

  Integer modulus(std::size_t i) const;
};

ZeroSet quasi_orbit(const ResidueVector& x);

/// Thrown when a residue is neither zero nor invertible at the given precision.
class PrecisionTooLow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CrtOutcome {
  std::optional<QuadInt> lambda;  // totally positive, lambda rho = sigma
  std::string failure;            // set when lambda is empty
};

/// Totally positive lambda with lambda rho = sigma at every prime of the
/// window, or a definitive failure when sigma is nonzero where rho vanishes.
CrtOutcome crt_orbit_solver(const FieldSpec& field, const ResidueVector& rho, const ResidueVector& sigma);

/// Residue of the product of two elements modulo m, coordinates (x, y).
std::pair<Integer, Integer> multiply_mod(const FieldSpec& field, const std::pair<Integer, Integer>& a,
                                         const std::pair<Integer, Integer>& b, const Integer& m);

struct GammaApproximant {
  Lattice lattice;      // inside Z^window, supported on S
  bool stable = false;  // unchanged when the height bound is halved
  std::vector<QuadInt> generators;  // elements found, one per relation
};

/// Ideal vectors (a) with a totally positive, N((a)) <= height, support in S
/// and a = 1 mod P^precision for every window prime P outside S.
GammaApproximant gamma_S_approx(const PrimeWindow& window, const ZeroSet& S, unsigned precision,
                                const Integer& height);

enum class Separation { equal, separated, first_specializes_to_second, second_specializes_to_first };
const char* to_string(Separation s);

struct SeparationResult {
  Separation relation;
  /// U_G with G inside S1 \ S2: contains S2, misses S1 (separated case).
  ZeroSet open_around_second;
  /// U_G with G inside S2 \ S1: contains S1, misses S2 (separated case).
  ZeroSet open_around_first;
};

/// S lies in U_G = {S : S and G disjoint}.
bool in_basic_open(const ZeroSet& S, const ZeroSet& G);
SeparationResult separation_relation(const ZeroSet& S1, const ZeroSet& S2);

struct PrimPoint {
  ZeroSet zero_set;
  Lattice isotropy;  // Gamma_S approximant
  std::vector<FactoredRational> norms;  // norm of each isotropy basis vector
  Character character;  // one angle per isotropy basis vector

  /// The flow moves nothing: every isotropy generator has norm 1.
  bool is_fixed() const;
};

PrimPoint make_prim_point(const PrimeWindow& window, const ZeroSet& S, const Lattice& isotropy,
                          const Character& character);
PrimPoint flow_on_prim(const PrimPoint& point, const TimeValue& t);

}  // namespace bcs
