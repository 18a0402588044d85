#include "bcs/abelian_group.hpp"

#include <algorithm>
#include <numeric>

namespace bcs {

Lattice::Lattice(Eigen::Index ambient_rank) : ambient_rank_(ambient_rank), basis_(0, ambient_rank) {}

Lattice::Lattice(Eigen::Index ambient_rank, const IntMatrix& generators) : ambient_rank_(ambient_rank) {
  if (generators.rows() > 0 && generators.cols() != ambient_rank) {
    throw std::invalid_argument("lattice generators do not match the ambient rank");
  }
  basis_ = generators.rows() == 0 ? IntMatrix(0, ambient_rank) : hermite_normal_form(generators);
  for (Eigen::Index i = 0; i < basis_.rows(); ++i) {
    Eigen::Index c = 0;
    while (basis_(i, c) == 0) ++c;
    pivots_.push_back(c);
  }
}

Lattice Lattice::full(Eigen::Index ambient_rank) {
  return Lattice(ambient_rank, IntMatrix::Identity(ambient_rank, ambient_rank));
}

std::optional<IntVector> Lattice::coordinates(const IntVector& v) const {
  if (v.size() != ambient_rank_) throw std::invalid_argument("vector does not match the ambient rank");
  IntVector residual = v;
  IntVector coords(rank());
  for (Eigen::Index i = 0; i < rank(); ++i) {
    const Integer& pivot = basis_(i, pivots_[i]);
    if (residual(pivots_[i]) % pivot != 0) return std::nullopt;
    coords(i) = residual(pivots_[i]) / pivot;
    if (coords(i) != 0) residual -= coords(i) * basis_.row(i).transpose();
  }
  for (Eigen::Index j = 0; j < residual.size(); ++j) {
    if (residual(j) != 0) return std::nullopt;
  }
  return coords;
}

bool Lattice::contains(const Lattice& other) const {
  for (Eigen::Index i = 0; i < other.rank(); ++i) {
    if (!contains(other.basis_vector(i))) return false;
  }
  return true;
}

std::optional<Integer> Lattice::index() const {
  if (rank() != ambient_rank_) return std::nullopt;
  Integer d = 1;
  for (Eigen::Index i = 0; i < rank(); ++i) d *= basis_(i, i);
  return d;
}

Lattice Lattice::operator+(const Lattice& other) const {
  IntMatrix stacked(rank() + other.rank(), ambient_rank_);
  stacked << basis_, other.basis_;
  return Lattice(ambient_rank_, stacked);
}

bool Lattice::operator==(const Lattice& other) const {
  return ambient_rank_ == other.ambient_rank_ && basis_.rows() == other.basis_.rows() &&
         basis_ == other.basis_;
}

FgAbelianGroup::FgAbelianGroup(std::vector<Integer> invariant_factors, IntMatrix generator_lift,
                               IntMatrix projection)
    : invariant_factors_(std::move(invariant_factors)),
      generator_lift_(std::move(generator_lift)),
      projection_(std::move(projection)) {}

bool FgAbelianGroup::is_finite() const { return free_rank() == 0; }

std::size_t FgAbelianGroup::free_rank() const {
  return static_cast<std::size_t>(
      std::count(invariant_factors_.begin(), invariant_factors_.end(), Integer(0)));
}

std::optional<Integer> FgAbelianGroup::order() const {
  if (!is_finite()) return std::nullopt;
  Integer n = 1;
  for (const auto& d : invariant_factors_) n *= d;
  return n;
}

IntVector FgAbelianGroup::project(const IntVector& ambient) const {
  if (ambient.size() != projection_.rows()) throw std::invalid_argument("ambient vector has wrong size");
  IntVector coords = projection_.transpose() * ambient;
  return reduce(std::move(coords));
}

IntVector FgAbelianGroup::reduce(IntVector coords) const {
  for (std::size_t i = 0; i < invariant_factors_.size(); ++i) {
    if (invariant_factors_[i] != 0) coords(i) = floor_mod(coords(i), invariant_factors_[i]);
  }
  return coords;
}

Integer FgAbelianGroup::element_order(const IntVector& coords) const {
  Integer order = 1;
  for (std::size_t i = 0; i < invariant_factors_.size(); ++i) {
    const Integer& d = invariant_factors_[i];
    if (d == 0) {
      if (coords(i) != 0) return 0;
      continue;
    }
    Integer o = d / gcd_value(coords(i), d);
    order = order / gcd_value(order, o) * o;
  }
  return order;
}

std::vector<IntVector> FgAbelianGroup::elements() const {
  if (!is_finite()) throw std::invalid_argument("cannot enumerate an infinite group");
  std::vector<IntVector> out;
  IntVector current = identity();
  const std::size_t n = static_cast<std::size_t>(*order());
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    out.push_back(current);
    for (std::size_t i = 0; i < invariant_factors_.size(); ++i) {
      current(i) += 1;
      if (current(i) < invariant_factors_[i]) break;
      current(i) = 0;
    }
  }
  return out;
}

std::size_t FgAbelianGroup::index_of(const IntVector& coords) const {
  IntVector c = reduce(coords);
  std::size_t index = 0, stride = 1;
  for (std::size_t i = 0; i < invariant_factors_.size(); ++i) {
    index += static_cast<std::size_t>(c(i)) * stride;
    stride *= static_cast<std::size_t>(invariant_factors_[i]);
  }
  return index;
}

FgAbelianGroup quotient_group(Eigen::Index ambient_rank, const Lattice& sub) {
  if (sub.ambient_rank() != ambient_rank) throw std::invalid_argument("sublattice has wrong ambient rank");
  const auto snf = smith_normal_form(sub.basis());
  std::vector<Integer> factors;
  std::vector<Eigen::Index> kept;
  for (Eigen::Index i = 0; i < ambient_rank; ++i) {
    Integer d = i < std::min(snf.D.rows(), snf.D.cols()) ? snf.D(i, i) : Integer(0);
    if (d == 1) continue;
    factors.push_back(d);
    kept.push_back(i);
  }
  IntMatrix lift(static_cast<Eigen::Index>(kept.size()), ambient_rank);
  IntMatrix projection(ambient_rank, static_cast<Eigen::Index>(kept.size()));
  for (std::size_t k = 0; k < kept.size(); ++k) {
    lift.row(k) = snf.V_inverse.row(kept[k]);
    projection.col(k) = snf.V.col(kept[k]);
  }
  return FgAbelianGroup(std::move(factors), std::move(lift), std::move(projection));
}

FgAbelianGroup group_from_cyclic_factors(const std::vector<Integer>& orders) {
  const auto k = static_cast<Eigen::Index>(orders.size());
  IntMatrix relations = IntMatrix::Zero(k, k);
  for (Eigen::Index i = 0; i < k; ++i) relations(i, i) = orders[i];
  return quotient_group(k, Lattice(k, relations));
}

Character Character::trivial(std::size_t generators) {
  return Character(std::vector<AngleExpr>(generators));
}

bool Character::is_exact() const {
  return std::all_of(angles_.begin(), angles_.end(), [](const AngleExpr& a) { return a.is_rational(); });
}

AngleExpr Character::pairing(const IntVector& v) const {
  if (static_cast<std::size_t>(v.size()) != angles_.size()) {
    throw std::invalid_argument("character and vector sizes differ");
  }
  AngleExpr sum;
  for (std::size_t i = 0; i < angles_.size(); ++i) {
    if (v(i) != 0) sum = sum + angles_[i] * v(i);
  }
  return sum;
}

Character Character::operator*(const Character& other) const {
  if (other.size() != size()) throw std::invalid_argument("character sizes differ");
  std::vector<AngleExpr> out(size());
  for (std::size_t i = 0; i < size(); ++i) out[i] = angles_[i] + other.angles_[i];
  return Character(std::move(out));
}

Character Character::inverse() const {
  std::vector<AngleExpr> out(size());
  for (std::size_t i = 0; i < size(); ++i) out[i] = -angles_[i];
  return Character(std::move(out));
}

std::vector<Character> characters_of(const FgAbelianGroup& group) {
  if (!group.is_finite()) {
    throw std::invalid_argument("full character enumeration needs a finite group");
  }
  std::vector<Character> out;
  for (const auto& element : group.elements()) {
    std::vector<AngleExpr> angles;
    for (std::size_t i = 0; i < group.generator_count(); ++i) {
      angles.emplace_back(Rational(element(i), group.invariant_factors()[i]));
    }
    out.emplace_back(std::move(angles));
  }
  return out;
}

KernelAndSection kernel_and_section(const IntMatrix& f) {
  const Eigen::Index m = f.cols();
  IntMatrix transposed = f.transpose();
  const auto hnf = hermite_decomposition(transposed);
  KernelAndSection out;
  out.kernel = Lattice(m, hnf.U.bottomRows(m - hnf.rank));
  out.image_basis = hnf.H;
  out.section = hnf.U.topRows(hnf.rank);
  return out;
}

}  // namespace bcs
