#include "bcs/representations.hpp"

#include <Eigen/SVD>

namespace bcs {

std::size_t ClassModel::class_of(const IntVector& ideal_vector) const {
  IntVector c = classes.identity();
  for (Eigen::Index i = 0; i < ideal_vector.size(); ++i) {
    if (ideal_vector(i) != 0) c += ideal_vector(i) * elements[prime_class[static_cast<std::size_t>(i)]];
  }
  return classes.index_of(classes.reduce(c));
}

std::vector<std::size_t> ClassModel::translation(std::size_t c) const {
  std::vector<std::size_t> out(size());
  for (std::size_t x = 0; x < size(); ++x) out[x] = classes.index_of(classes.add(elements[x], elements[c]));
  return out;
}

ClassModel class_model(const FieldSpec& field, const Integer& B) {
  ClassModel model;
  model.p1 = truncated_P1(field, B, false);
  model.classes = narrow_class_group(field);
  model.elements = model.classes.elements();
  const auto truncated = narrow_class_group_truncated(model.p1);
  if (!truncated.isomorphic_to(model.classes)) {
    throw BoundTooSmall("primes of norm <= " + B.str() + " do not generate the narrow class group of " + field.id() +
                        " (need at least " + guard_bound(field).str() + ")");
  }
  for (const auto& P : model.p1.window.primes) {
    model.prime_class.push_back(model.classes.index_of(model.classes.reduce(P.class_coords)));
  }
  return model;
}

ComplexMatrix MatrixRep::generator_matrix(std::size_t i) const {
  const auto& g = generators[i];
  const auto n = static_cast<Eigen::Index>(dimension);
  ComplexMatrix M = ComplexMatrix::Zero(n, n);
  const Complex phase = g.phase.phase();
  for (std::size_t x = 0; x < dimension; ++x) {
    M(static_cast<Eigen::Index>(g.permutation[x]), static_cast<Eigen::Index>(x)) = phase;
  }
  return M;
}

std::vector<ComplexMatrix> MatrixRep::algebra_generators() const {
  std::vector<ComplexMatrix> out;
  for (std::size_t i = 0; i < generators.size(); ++i) out.push_back(generator_matrix(i));
  const auto n = static_cast<Eigen::Index>(dimension);
  for (Eigen::Index x = 0; x < n; ++x) out.push_back(diagonal(ComplexVector::Unit(n, x)));
  return out;
}

MatrixRep build_rho(const ClassModel& model, const Character& gamma) {
  const auto& window = model.p1.window;
  if (gamma.size() != window.primes.size()) throw std::invalid_argument("character does not match the window");
  MatrixRep rep;
  rep.dimension = model.size();
  for (std::size_t i = 0; i < window.primes.size(); ++i) {
    rep.generators.push_back({gamma[i], model.translation(model.prime_class[i]), window.primes[i].norm});
  }
  return rep;
}

Character random_character(std::size_t n, std::mt19937_64& rng) {
  const Integer denominator = Integer(1) << 53;
  std::vector<AngleExpr> angles;
  for (std::size_t i = 0; i < n; ++i) {
    angles.emplace_back(Rational(Integer(rng() >> 11), denominator));
  }
  return Character(std::move(angles));
}

std::size_t commutant_dimension(const std::vector<ComplexMatrix>& matrices, double threshold) {
  if (matrices.empty()) throw std::invalid_argument("no matrices");
  const Eigen::Index n = matrices.front().rows();
  const ComplexMatrix I = ComplexMatrix::Identity(n, n);
  ComplexMatrix system(static_cast<Eigen::Index>(matrices.size()) * n * n, n * n);
  // vec(XA - AX) = (A^T kron I - I kron A) vec(X)
  for (std::size_t k = 0; k < matrices.size(); ++k) {
    const ComplexMatrix& A = matrices[k];
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        system.block(static_cast<Eigen::Index>(k) * n * n + i * n, j * n, n, n) = A(j, i) * I - (i == j ? A : ComplexMatrix::Zero(n, n));
      }
    }
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(system);
  const auto& s = svd.singularValues();
  std::size_t nullity = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) nullity += s(i) < threshold;
  return nullity + static_cast<std::size_t>(n * n - s.size());
}

bool check_irreducible(const MatrixRep& rep) { return commutant_dimension(rep.algebra_generators()) == 1; }

bool are_equivalent(const ClassModel& model, const Character& gamma, const Character& delta) {
  const Character quotient = gamma * delta.inverse();
  const Lattice& p1 = model.p1.lattice;
  for (Eigen::Index i = 0; i < p1.rank(); ++i) {
    if (quotient.pairing(p1.basis_vector(i)).distance_to_integer() > 1e-9) return false;
  }
  return true;
}

std::optional<Intertwiner> find_intertwiner(const MatrixRep& from, const MatrixRep& to) {
  const auto a = from.algebra_generators();
  const auto b = to.algebra_generators();
  const auto n = static_cast<Eigen::Index>(from.dimension);
  const ComplexMatrix I = ComplexMatrix::Identity(n, n);
  ComplexMatrix system(static_cast<Eigen::Index>(a.size()) * n * n, n * n);
  // vec(W A - B W) = (A^T kron I - I kron B) vec(W)
  for (std::size_t k = 0; k < a.size(); ++k) {
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        system.block(static_cast<Eigen::Index>(k) * n * n + i * n, j * n, n, n) =
            a[k](j, i) * I - (i == j ? b[k] : ComplexMatrix::Zero(n, n));
      }
    }
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(system, Eigen::ComputeFullV);
  const Eigen::Index last = n * n - 1;
  if (svd.singularValues()(last) > 1e-9) return std::nullopt;
  ComplexVector w = svd.matrixV().col(last);
  ComplexMatrix W = Eigen::Map<ComplexMatrix>(w.data(), n, n);
  W *= std::sqrt(static_cast<double>(n)) / W.norm();
  if (std::abs(W.determinant()) < 1e-9) return std::nullopt;
  double residual = 0;
  for (std::size_t k = 0; k < a.size(); ++k) residual = std::max(residual, (W * a[k] - b[k] * W).cwiseAbs().maxCoeff());
  return Intertwiner{W, residual};
}

MatrixRep time_evolve(const MatrixRep& rep, const TimeValue& t) {
  MatrixRep out = rep;
  for (auto& g : out.generators) g.phase = g.phase.shifted(t, g.norm);
  return out;
}

Character time_evolve(const Character& gamma, const PrimeWindow& window, const TimeValue& t) {
  std::vector<AngleExpr> angles;
  for (std::size_t i = 0; i < gamma.size(); ++i) angles.push_back(gamma[i].shifted(t, window.primes[i].norm));
  return Character(std::move(angles));
}

bool joint_kernel_probe(const ClassModel& model, const std::vector<CrossedProductTerm>& element,
                        std::size_t sample_count, std::uint64_t seed, double* largest_norm) {
  std::mt19937_64 rng(seed);
  const auto n = static_cast<Eigen::Index>(model.size());
  double largest = 0;
  for (std::size_t s = 0; s < sample_count; ++s) {
    const Character gamma = random_character(model.p1.window.primes.size(), rng);
    ComplexMatrix total = ComplexMatrix::Zero(n, n);
    for (const auto& term : element) {
      const auto shift = model.translation(model.class_of(term.group_element));
      const Complex phase = gamma.value(term.group_element);
      ComplexMatrix U = ComplexMatrix::Zero(n, n);
      for (Eigen::Index x = 0; x < n; ++x) U(static_cast<Eigen::Index>(shift[static_cast<std::size_t>(x)]), x) = phase;
      total += term.coefficient * MatrixRep::diagonal(term.function) * U;
    }
    largest = std::max(largest, n == 0 ? 0.0 : Eigen::JacobiSVD<ComplexMatrix>(total).singularValues()(0));
  }
  if (largest_norm) *largest_norm = largest;
  return largest > 1e-9;
}

std::size_t GramModel::rank(double threshold) const {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(gram);
  std::size_t r = 0;
  for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) r += eig.eigenvalues()(i) > threshold;
  return r;
}

double GramModel::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(gram);
  return eig.eigenvalues().size() == 0 ? 0.0 : eig.eigenvalues().minCoeff();
}

GramModel induced_gram(Eigen::Index r, const Lattice& subgroup, const Character& gamma,
                       const std::vector<IntVector>& window) {
  if (subgroup.ambient_rank() != r || gamma.size() != static_cast<std::size_t>(r)) {
    throw std::invalid_argument("subgroup and character must live on Z^r");
  }
  GramModel model{window, subgroup, gamma, ComplexMatrix::Zero(static_cast<Eigen::Index>(window.size()),
                                                               static_cast<Eigen::Index>(window.size()))};
  for (std::size_t s = 0; s < window.size(); ++s) {
    for (std::size_t t = 0; t < window.size(); ++t) {
      const IntVector diff = window[t] - window[s];
      if (subgroup.contains(diff)) model.gram(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(t)) = gamma.value(diff);
    }
  }
  return model;
}

std::vector<ComplexVector> canonical_onb(const GramModel& model, const std::vector<IntVector>& coset_reps) {
  const auto size = static_cast<Eigen::Index>(model.window.size());
  auto same_coset = [&](const IntVector& a, const IntVector& b) { return model.subgroup.contains(IntVector(a - b)); };
  for (std::size_t i = 0; i < coset_reps.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (same_coset(coset_reps[i], coset_reps[j])) throw std::invalid_argument("two representatives of one coset");
    }
  }
  for (const auto& s : model.window) {
    bool covered = false;
    for (const auto& rep : coset_reps) covered = covered || same_coset(s, rep);
    if (!covered) throw std::invalid_argument("coset representatives do not cover the window");
  }
  std::vector<ComplexVector> out;
  for (const auto& rep : coset_reps) {
    Eigen::Index position = -1;
    for (Eigen::Index j = 0; j < size; ++j) {
      if (model.window[static_cast<std::size_t>(j)] == rep) position = j;
    }
    if (position < 0) throw std::invalid_argument("coset representative outside the window");
    ComplexVector v = ComplexVector::Zero(size);
    v(position) = model.character.value(IntVector(-rep));
    out.push_back(std::move(v));
  }
  return out;
}

std::size_t unbounded_dimension_witness(const PrimeWindow& window, Eigen::Index prime_index, int depth) {
  const Eigen::Index n = window.size();
  IntMatrix others(n - 1, n);
  for (Eigen::Index i = 0, row = 0; i < n; ++i) {
    if (i == prime_index) continue;
    others.row(row++) = IntVector::Unit(n, i).transpose();
  }
  std::vector<IntVector> points;
  for (int k = 0; k <= depth; ++k) points.push_back(IntVector::Unit(n, prime_index) * Integer(k));
  return induced_gram(n, Lattice(n, others), Character::trivial(static_cast<std::size_t>(n)), points).rank();
}

}  // namespace bcs
