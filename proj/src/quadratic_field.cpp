#include "bcs/quadratic_field.hpp"

#include "bcs/arithmetic.hpp"

#include <mutex>
#include <set>
#include <sstream>

namespace bcs {
namespace {

Integer delta_of(const Integer& D) { return floor_mod(D, Integer(4)) == 1 ? Integer(1) : Integer(0); }

QuadInt omega(const Integer& D) { return {delta_of(D), 1}; }

std::vector<long> to_key(const IntVector& v) {
  std::vector<long> key(static_cast<std::size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) key[static_cast<std::size_t>(i)] = to_long(v(i));
  return key;
}

}  // namespace

std::string QuadInt::str(const Integer& D) const {
  std::ostringstream out;
  out << "(" << u << (v < 0 ? " - " : " + ") << abs_value(v) << "*sqrt(" << D << "))/2";
  return out.str();
}

QuadInt multiply(const QuadInt& x, const QuadInt& y, const Integer& D) {
  return {(x.u * y.u + D * x.v * y.v) / 2, (x.u * y.v + x.v * y.u) / 2};
}

QuadInt add(const QuadInt& x, const QuadInt& y) { return {x.u + y.u, x.v + y.v}; }

Integer norm(const QuadInt& x, const Integer& D) { return (x.u * x.u - D * x.v * x.v) / 4; }

int real_sign(const Integer& u, const Integer& v, const Integer& D) {
  auto sgn = [](const Integer& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); };
  if (v == 0) return sgn(u);
  if (u == 0) return sgn(v);
  if (sgn(u) == sgn(v)) return sgn(u);
  Integer lhs = u * u, rhs = v * v * D;
  if (u > 0) return lhs > rhs ? 1 : -1;
  return rhs > lhs ? 1 : -1;
}

bool is_totally_positive(const QuadInt& x, const Integer& D) {
  if (x.is_zero()) return false;
  if (D < 0) return true;
  return real_sign(x.u, x.v, D) > 0 && real_sign(x.u, Integer(-x.v), D) > 0;
}

std::pair<Integer, Integer> basis_coordinates(const QuadInt& x, const Integer& D) {
  return {(x.u - x.v * delta_of(D)) / 2, x.v};
}

QuadInt from_basis_coordinates(const Integer& x, const Integer& y, const Integer& D) {
  return {2 * x + y * delta_of(D), y};
}

QuadIdeal::QuadIdeal(const Integer& D, const std::vector<QuadInt>& generators) : D_(D) {
  const QuadInt w = omega(D);
  IntMatrix rows(static_cast<Eigen::Index>(2 * generators.size()), 2);
  Eigen::Index r = 0;
  for (const auto& g : generators) {
    for (const auto& element : {g, multiply(g, w, D)}) {
      auto [x, y] = basis_coordinates(element, D);
      rows(r, 0) = y;
      rows(r, 1) = x;
      ++r;
    }
  }
  lattice_ = Lattice(2, rows);
}

QuadIdeal QuadIdeal::unit(const Integer& D) { return QuadIdeal(D, {QuadInt::from_integer(1)}); }

QuadIdeal QuadIdeal::principal(const Integer& D, const QuadInt& generator) {
  return QuadIdeal(D, {generator});
}

QuadIdeal QuadIdeal::from_form(const QuadForm& f) {
  if (f.a <= 0) throw std::invalid_argument("ideal from form needs a > 0");
  const Integer D = f.discriminant();
  return QuadIdeal(D, {QuadInt::from_integer(f.a), QuadInt{-f.b, 1}});
}

Integer QuadIdeal::norm() const {
  auto idx = lattice_.index();
  if (!idx) throw std::logic_error("ideal lattice is not of full rank");
  return *idx;
}

bool QuadIdeal::contains(const QuadInt& x) const {
  auto [bx, by] = basis_coordinates(x, D_);
  IntVector v(2);
  v << by, bx;
  return lattice_.contains(v);
}

QuadIdeal QuadIdeal::operator*(const QuadIdeal& other) const {
  std::vector<QuadInt> gens;
  for (Eigen::Index i = 0; i < lattice_.rank(); ++i) {
    QuadInt a = from_basis_coordinates(lattice_.basis()(i, 1), lattice_.basis()(i, 0), D_);
    for (Eigen::Index j = 0; j < other.lattice_.rank(); ++j) {
      QuadInt b = from_basis_coordinates(other.lattice_.basis()(j, 1), other.lattice_.basis()(j, 0), D_);
      gens.push_back(multiply(a, b, D_));
    }
  }
  QuadIdeal out;
  out.D_ = D_;
  IntMatrix rows(static_cast<Eigen::Index>(gens.size()), 2);
  for (std::size_t k = 0; k < gens.size(); ++k) {
    auto [x, y] = basis_coordinates(gens[k], D_);
    rows(static_cast<Eigen::Index>(k), 0) = y;
    rows(static_cast<Eigen::Index>(k), 1) = x;
  }
  out.lattice_ = Lattice(2, rows);
  return out;
}

QuadIdeal QuadIdeal::pow(unsigned k) const {
  QuadIdeal result = unit(D_), base = *this;
  while (k > 0) {
    if (k & 1U) result = result * base;
    k >>= 1U;
    if (k > 0) base = base * base;
  }
  return result;
}

QuadIdeal QuadIdeal::conjugate() const {
  std::vector<QuadInt> gens;
  for (Eigen::Index i = 0; i < lattice_.rank(); ++i) {
    gens.push_back(from_basis_coordinates(lattice_.basis()(i, 1), lattice_.basis()(i, 0), D_).conjugate());
  }
  return QuadIdeal(D_, gens);
}

std::pair<Integer, QuadForm> QuadIdeal::primitive_form() const {
  const IntMatrix& H = lattice_.basis();
  if (H.rows() != 2 || H(1, 0) != 0) throw std::logic_error("ideal lattice is not of full rank");
  const Integer m = H(0, 0), B = H(0, 1), A = H(1, 1);
  if (A % m != 0 || B % m != 0) throw ConsistencyError("lattice is not an ideal");
  const Integer a = A / m;
  const Integer b = -(2 * (B / m) + delta_of(D_));
  const Integer num = b * b - D_;
  if (num % (4 * a) != 0) throw ConsistencyError("lattice is not an ideal");
  return {m, QuadForm{a, b, num / (4 * a)}};
}

QuadInt fundamental_unit(const Integer& D) {
  if (D <= 0 || is_square(D)) throw std::invalid_argument("fundamental unit needs a real quadratic field");
  // Continued fraction of w = (delta + sqrt D) / 2; the first convergent p/q
  // with N(p - q w) = +-1 gives the fundamental unit p - q conj(w).
  const Integer delta = delta_of(D);
  const Integer root = isqrt(D);
  Integer P = delta, Q = 2;
  Integer p_prev = 1, p_prev2 = 0, q_prev = 0, q_prev2 = 1;
  for (int iter = 0; iter < 100000; ++iter) {
    Integer a = Q > 0 ? floor_div(Integer(P + root), Q) : Integer(-floor_div(Integer(P + root), Integer(-Q)) - 1);
    Integer p = a * p_prev + p_prev2;
    Integer q = a * q_prev + q_prev2;
    Integer n = p * p - p * q * delta + q * q * (delta * delta - D) / 4;
    if (n == 1 || n == -1) return {2 * p - q * delta, q};
    p_prev2 = p_prev;
    p_prev = p;
    q_prev2 = q_prev;
    q_prev = q;
    Integer P_next = a * Q - P;
    Q = (D - P_next * P_next) / Q;
    P = P_next;
  }
  throw std::runtime_error("continued fraction did not produce a unit");
}

FormClassGroup::FormClassGroup(const Integer& D) : D_(D) {
  if (!is_fundamental_discriminant(D)) {
    throw std::invalid_argument("form class groups are computed for fundamental discriminants only, got " +
                                D.str());
  }
  const auto reduced = reduced_forms(D);
  std::vector<std::vector<QuadForm>> classes;
  if (D < 0) {
    for (const auto& f : reduced) classes.push_back({f});
  } else {
    std::set<QuadForm> seen;
    for (const auto& f : reduced) {
      if (seen.count(f)) continue;
      auto cycle = reduction_cycle(f);
      seen.insert(cycle.begin(), cycle.end());
      classes.push_back(std::move(cycle));
    }
  }
  std::vector<std::pair<QuadForm, std::size_t>> reps;
  for (std::size_t k = 0; k < classes.size(); ++k) {
    std::optional<QuadForm> best;
    for (const auto& f : classes[k]) {
      if (f.a > 0 && (!best || f < *best)) best = f;
    }
    if (!best) throw ConsistencyError("reduced cycle without positive leading coefficient");
    reps.emplace_back(*best, k);
  }
  std::sort(reps.begin(), reps.end());
  for (std::size_t i = 0; i < reps.size(); ++i) {
    representatives_.push_back(reps[i].first);
    for (const auto& f : classes[reps[i].second]) reduced_to_class_[f] = i;
  }
  const std::size_t h = representatives_.size();
  identity_ = classify(principal_form(D));
  table_.assign(h, std::vector<std::size_t>(h));
  for (std::size_t i = 0; i < h; ++i) {
    for (std::size_t j = i; j < h; ++j) {
      table_[i][j] = table_[j][i] = classify(compose(representatives_[i], representatives_[j]));
    }
  }

  // Presentation of the finite abelian group from its Cayley table: add a
  // generator outside the current subgroup, record its order modulo that
  // subgroup, repeat.
  std::map<std::size_t, std::vector<Integer>> span{{identity_, {}}};
  std::vector<std::vector<Integer>> relations;
  while (span.size() < h) {
    std::size_t g = 0;
    while (span.count(g)) ++g;
    std::size_t current = g;
    long n = 1;
    while (!span.count(current)) {
      current = table_[current][g];
      ++n;
    }
    std::vector<Integer> relation = span.at(current);
    for (auto& x : relation) x = -x;
    relation.push_back(n);
    relations.push_back(relation);
    std::map<std::size_t, std::vector<Integer>> extended;
    for (const auto& [element, coords] : span) {
      std::size_t y = element;
      for (long j = 0; j < n; ++j) {
        auto c = coords;
        c.push_back(j);
        extended.emplace(y, std::move(c));
        y = table_[y][g];
      }
    }
    span = std::move(extended);
  }
  const auto k = static_cast<Eigen::Index>(relations.size());
  IntMatrix R = IntMatrix::Zero(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < relations[static_cast<std::size_t>(i)].size(); ++j) {
      R(i, static_cast<Eigen::Index>(j)) = relations[static_cast<std::size_t>(i)][j];
    }
  }
  group_ = quotient_group(k, Lattice(k, R));
  if (*group_.order() != Integer(h)) throw ConsistencyError("class group presentation has the wrong order");
  coordinates_.resize(h);
  for (const auto& [element, coords] : span) {
    IntVector ambient = IntVector::Zero(k);
    for (std::size_t j = 0; j < coords.size(); ++j) ambient(static_cast<Eigen::Index>(j)) = coords[j];
    coordinates_[element] = group_.project(ambient);
    coordinates_to_class_[to_key(coordinates_[element])] = element;
  }
}

std::size_t FormClassGroup::classify(const QuadForm& f) const {
  if (f.discriminant() != D_) throw std::invalid_argument("form " + f.str() + " has the wrong discriminant");
  if (!f.is_primitive()) throw std::invalid_argument("form " + f.str() + " is not primitive");
  auto it = reduced_to_class_.find(reduce(f).form);
  if (it == reduced_to_class_.end()) throw ConsistencyError("reduced form missing from the class list");
  return it->second;
}

std::size_t FormClassGroup::class_of_coordinates(const IntVector& coords) const {
  return coordinates_to_class_.at(to_key(group_.reduce(coords)));
}

const FormClassGroup& form_class_group(const Integer& D) {
  static std::mutex mutex;
  static std::map<Integer, std::unique_ptr<FormClassGroup>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(D);
  if (it == cache.end()) it = cache.emplace(D, std::make_unique<FormClassGroup>(D)).first;
  return *it->second;
}

const char* to_string(SplitType s) {
  switch (s) {
    case SplitType::split:
      return "split";
    case SplitType::inert:
      return "inert";
    case SplitType::ramified:
      return "ramified";
  }
  return "?";
}

SplitType split_type(const FieldSpec& field, Prime p) {
  switch (field.kind) {
    case FieldKind::rational:
      if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
      return SplitType::split;
    case FieldKind::quadratic: {
      int k = kronecker_symbol(field.discriminant, p);
      return k == 1 ? SplitType::split : (k == -1 ? SplitType::inert : SplitType::ramified);
    }
    case FieldKind::table: {
      int count = 0;
      bool ramified = false;
      for (const auto& tp : field.table->primes) {
        if (tp.p != p) continue;
        ++count;
        ramified = ramified || tp.e > 1;
      }
      if (count == 0) throw IngestionError("no table data for the prime " + std::to_string(p));
      if (ramified) return SplitType::ramified;
      return count == 1 ? SplitType::inert : SplitType::split;
    }
  }
  throw std::logic_error("unknown field kind");
}

namespace {

Integer root_for_prime(const Integer& D, Prime p) {
  // b with b^2 = D mod 4p and b = D mod 2.
  if (p == 2) {
    for (Integer b = 0; b < 4; ++b) {
      if (floor_mod(Integer(b * b - D), Integer(8)) == 0) return b;
    }
    throw std::logic_error("no square root of D modulo 8");
  }
  Integer s = sqrt_mod_prime(D, p);
  if (floor_mod(Integer(s - D), Integer(2)) != 0) s = Integer(p) - s;
  return s;
}

}  // namespace

std::vector<PrimeIdealData> prime_ideal_above(const FieldSpec& field, Prime p) {
  if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
  std::vector<PrimeIdealData> out;
  if (field.kind == FieldKind::rational) {
    PrimeIdealData d;
    d.p = p;
    d.norm = FactoredRational::prime_power(p, 1);
    d.class_form = {1, 1, 0};
    d.class_coords = IntVector(0);
    d.label = "(" + std::to_string(p) + ")";
    out.push_back(std::move(d));
    return out;
  }
  if (field.kind == FieldKind::table) {
    const auto& t = *field.table;
    const auto group = group_from_cyclic_factors(t.class_factors);
    int k = 0;
    for (const auto& tp : t.primes) {
      if (tp.p != p) continue;
      PrimeIdealData d;
      d.p = p;
      d.e = tp.e;
      d.f = tp.f;
      d.norm = FactoredRational::prime_power(p, tp.f);
      d.class_coords = group.project(tp.label);
      d.label = std::to_string(p) + "." + std::to_string(++k);
      out.push_back(std::move(d));
    }
    if (out.empty()) throw IngestionError("no table data for the prime " + std::to_string(p));
    return out;
  }

  const Integer& D = field.discriminant;
  const auto& classes = form_class_group(D);
  auto make = [&](const QuadForm& form, int e, int f, const std::string& label) {
    PrimeIdealData d;
    d.p = p;
    d.e = e;
    d.f = f;
    d.norm = FactoredRational::prime_power(p, f);
    d.class_form = form;
    d.class_coords = classes.coordinates(classes.classify(form));
    d.label = label;
    if (f == 2) {
      d.ideal = QuadIdeal::principal(D, QuadInt::from_integer(p));
    } else {
      d.ideal = QuadIdeal::from_form(form);
    }
    return d;
  };
  const std::string ps = std::to_string(p);
  switch (split_type(field, p)) {
    case SplitType::inert:
      out.push_back(make(principal_form(D), 1, 2, "(" + ps + ")"));
      break;
    case SplitType::ramified: {
      Integer b = root_for_prime(D, p);
      out.push_back(make(QuadForm{p, b, (b * b - D) / (4 * p)}, 2, 1, "P" + ps));
      break;
    }
    case SplitType::split: {
      Integer b = root_for_prime(D, p);
      Integer c = (b * b - D) / (4 * p);
      auto first = make(QuadForm{p, b, c}, 1, 1, "");
      auto second = make(QuadForm{p, -b, c}, 1, 1, "");
      auto key = [&](const PrimeIdealData& d) {
        return std::make_pair(classes.representatives()[classes.classify(d.class_form)], d.class_form);
      };
      if (key(second) < key(first)) std::swap(first, second);
      first.label = "P" + ps;
      second.label = "P" + ps + "'";
      first.conjugate_offset = 1;
      second.conjugate_offset = -1;
      out.push_back(std::move(first));
      out.push_back(std::move(second));
      break;
    }
  }
  return out;
}

FgAbelianGroup narrow_class_group(const FieldSpec& field) {
  switch (field.kind) {
    case FieldKind::rational:
      return quotient_group(0, Lattice(0));
    case FieldKind::quadratic:
      return form_class_group(field.discriminant).group();
    case FieldKind::table:
      return group_from_cyclic_factors(field.table->class_factors);
  }
  throw std::logic_error("unknown field kind");
}

std::optional<QuadInt> totally_positive_generator(const QuadIdeal& ideal) {
  const Integer& D = ideal.discriminant();
  auto [m, f] = ideal.primitive_form();
  auto r = reduce(f);
  QuadForm g = r.form;
  Transform M = r.transform;
  if (D < 0) {
    if (g != principal_form(D) && g != reduce(principal_form(D)).form) return std::nullopt;
  } else {
    const QuadForm start = g;
    while (g.a != 1) {
      auto step = rho_step(g);
      g = step.form;
      M = M * step.transform;
      if (g == start) return std::nullopt;
    }
  }
  const Integer x = M(0, 0), y = M(1, 0);
  if (f.evaluate(x, y) != 1) throw ConsistencyError("reduction transform does not represent 1");
  QuadInt alpha{m * (2 * x * f.a + y * f.b), -m * y};
  if (D > 0 && real_sign(alpha.u, alpha.v, D) < 0) alpha = -alpha;
  if (!is_totally_positive(alpha, D)) throw ConsistencyError("generator of positive norm is not totally positive");
  if (!(QuadIdeal::principal(D, alpha) == ideal)) {
    throw ConsistencyError("generator certificate does not generate the ideal");
  }
  return alpha;
}

std::string GeneratorCertificate::str(const Integer& D) const {
  std::string num = D == 1 ? (numerator.u / 2).str() : numerator.str(D);
  return denominator == 1 ? num : num + " / " + denominator.str();
}

std::optional<GeneratorCertificate> is_totally_positive_principal(const FieldSpec& field,
                                                                  std::span<const PrimeIdealData> primes,
                                                                  const IntVector& exponents) {
  if (static_cast<std::size_t>(exponents.size()) != primes.size()) {
    throw std::invalid_argument("exponent vector does not match the prime list");
  }
  GeneratorCertificate cert;
  if (field.kind == FieldKind::rational) {
    Integer num = 1;
    for (std::size_t i = 0; i < primes.size(); ++i) {
      const Integer& e = exponents(static_cast<Eigen::Index>(i));
      if (e == 0) continue;
      Integer power = pow_int(Integer(primes[i].p), (e < 0 ? Integer(-e) : e).convert_to<unsigned>());
      if (e > 0) {
        num *= power;
      } else {
        cert.denominator *= power;
      }
    }
    cert.numerator = QuadInt::from_integer(num);
    return cert;
  }
  if (field.kind == FieldKind::table) {
    throw std::invalid_argument("table-kind fields carry ingested relations, not generator search");
  }
  const Integer& D = field.discriminant;
  QuadIdeal J = QuadIdeal::unit(D);
  for (std::size_t i = 0; i < primes.size(); ++i) {
    const Integer& e = exponents(static_cast<Eigen::Index>(i));
    if (e == 0) continue;
    const auto& P = *primes[i].ideal;
    if (e > 0) {
      J = J * P.pow(e.convert_to<unsigned>());
    } else {
      unsigned k = Integer(-e).convert_to<unsigned>();
      J = J * P.conjugate().pow(k);
      cert.denominator *= pow_int(primes[i].norm_value(), k);
    }
  }
  auto beta = totally_positive_generator(J);
  if (!beta) return std::nullopt;
  cert.numerator = *beta;
  return cert;
}

}  // namespace bcs
