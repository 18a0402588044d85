#include "bcs/prim_space.hpp"

#include "bcs/arithmetic.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace bcs {
namespace {

using Residue = std::pair<Integer, Integer>;

Integer delta_of(const FieldSpec& field) {
  return floor_mod(field.discriminant, Integer(4)) == 1 && field.kind == FieldKind::quadratic ? Integer(1) : Integer(0);
}

// w^2 = delta w + (D - delta) / 4
Integer omega_square_constant(const FieldSpec& field) {
  return field.kind == FieldKind::quadratic ? Integer((field.discriminant - delta_of(field)) / 4) : Integer(0);
}

Residue reduce_residue(const Residue& r, const Integer& m) { return {floor_mod(r.first, m), floor_mod(r.second, m)}; }

bool is_zero(const Residue& r, const Integer& m) {
  auto z = reduce_residue(r, m);
  return z.first == 0 && z.second == 0;
}

Integer residue_norm(const FieldSpec& field, const Residue& r) {
  const Integer& x = r.first;
  const Integer& y = r.second;
  return x * x + delta_of(field) * x * y - omega_square_constant(field) * y * y;
}

Residue inverse_residue(const FieldSpec& field, const Residue& r, const Integer& m, Prime p) {
  const Integer n = residue_norm(field, r);
  if (n % p == 0) throw PrecisionTooLow("residue is neither zero nor a unit at " + std::to_string(p) + "; raise the precision");
  const Integer inv = inverse_mod(n, m);
  // conjugate of x + y w is (x + y delta) - y w
  return reduce_residue({(r.first + r.second * delta_of(field)) * inv, -r.second * inv}, m);
}

Integer crt(const std::vector<Integer>& values, const std::vector<Integer>& moduli) {
  Integer x = 0, M = 1;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const Integer t = floor_mod(Integer((values[i] - x) * inverse_mod(M, moduli[i])), moduli[i]);
    x += M * t;
    M *= moduli[i];
  }
  return floor_mod(x, M);
}

}  // namespace

ZeroSet quasi_orbit(const SupportPattern& x) {
  ZeroSet out;
  for (std::size_t i = 0; i < x.zero_at.size(); ++i) {
    if (x.zero_at[i]) out.insert(i);
  }
  return out;
}

Integer ResidueVector::modulus(std::size_t i) const { return pow_int(Integer(primes[i]), precision); }

ZeroSet quasi_orbit(const ResidueVector& x) {
  ZeroSet out;
  for (std::size_t i = 0; i < x.primes.size(); ++i) {
    if (is_zero(x.residues[i], x.modulus(i))) out.insert(i);
  }
  return out;
}

std::pair<Integer, Integer> multiply_mod(const FieldSpec& field, const Residue& a, const Residue& b, const Integer& m) {
  // (x1 + y1 w)(x2 + y2 w) with w^2 = delta w + c
  const Integer c = omega_square_constant(field);
  const Integer yy = a.second * b.second;
  return reduce_residue({a.first * b.first + c * yy, a.first * b.second + a.second * b.first + delta_of(field) * yy}, m);
}

CrtOutcome crt_orbit_solver(const FieldSpec& field, const ResidueVector& rho, const ResidueVector& sigma) {
  if (field.kind == FieldKind::table) throw std::invalid_argument("the CRT solver needs a rational or quadratic field");
  if (rho.primes != sigma.primes || rho.precision != sigma.precision) {
    throw std::invalid_argument("residue vectors use different windows or precisions");
  }
  std::vector<Integer> xs, ys, moduli;
  for (std::size_t i = 0; i < rho.primes.size(); ++i) {
    const Integer m = rho.modulus(i);
    Residue tau{1, 0};
    if (is_zero(rho.residues[i], m)) {
      if (!is_zero(sigma.residues[i], m)) {
        return {std::nullopt, "support condition fails at " + std::to_string(rho.primes[i]) +
                                  ": rho vanishes there and sigma does not"};
      }
    } else {
      tau = multiply_mod(field, inverse_residue(field, rho.residues[i], m, rho.primes[i]), sigma.residues[i], m);
    }
    xs.push_back(tau.first);
    ys.push_back(tau.second);
    moduli.push_back(m);
  }
  Integer M = 1;
  for (const auto& m : moduli) M *= m;
  Integer x = crt(xs, moduli), y = crt(ys, moduli);
  if (field.kind == FieldKind::rational || field.discriminant < 0) {
    if (x == 0 && y == 0) x = M;
    QuadInt lambda = from_basis_coordinates(x, y, field.discriminant);
    return {lambda, ""};
  }
  // Real quadratic: add multiples of the modulus until both embeddings are positive.
  const Integer D = field.discriminant;
  const Integer step = (y < 0 ? Integer(-y) : y) * (isqrt(D) + 2) / M + 1;
  for (int depth = 0; depth < 64; ++depth) {
    const QuadInt lambda = from_basis_coordinates(x + M * step * depth, y, D);
    if (is_totally_positive(lambda, D)) return {lambda, ""};
  }
  throw ConsistencyError("total positivity adjustment did not terminate");
}

namespace {

// Totally positive units used to adjust a generator: roots of unity for
// imaginary fields, powers of a totally positive fundamental unit otherwise.
std::vector<QuadInt> positive_units(const FieldSpec& field, int span) {
  const Integer D = field.discriminant;
  if (field.kind == FieldKind::rational) return {QuadInt::from_integer(1)};
  if (D < 0) {
    std::vector<QuadInt> out{QuadInt::from_integer(1), QuadInt::from_integer(-1)};
    if (D == -4) {
      out.push_back({0, 1});
      out.push_back({0, -1});
    }
    if (D == -3) {
      for (int a : {1, -1}) {
        for (int b : {1, -1}) out.push_back({a, b});
      }
    }
    return out;
  }
  QuadInt eps = fundamental_unit(D);
  if (norm(eps, D) == -1) eps = multiply(eps, eps, D);
  QuadInt inverse = eps.conjugate();
  std::vector<QuadInt> out{QuadInt::from_integer(1)};
  QuadInt up = QuadInt::from_integer(1), down = QuadInt::from_integer(1);
  for (int j = 1; j <= span; ++j) {
    up = multiply(up, eps, D);
    down = multiply(down, inverse, D);
    out.push_back(up);
    out.push_back(down);
  }
  return out;
}

bool congruent_to_one(const PrimeWindow& window, std::size_t index, const QuadInt& a, unsigned precision) {
  const auto& P = window.primes[index];
  if (window.field.kind != FieldKind::quadratic) {
    const Integer m = pow_int(Integer(P.p), precision);
    return floor_mod(Integer(a.u / 2 - 1), m) == 0;
  }
  return P.ideal->pow(precision).contains(add(a, QuadInt::from_integer(-1)));
}

}  // namespace

GammaApproximant gamma_S_approx(const PrimeWindow& window, const ZeroSet& S, unsigned precision, const Integer& height) {
  if (window.field.kind == FieldKind::table) throw std::invalid_argument("Gamma_S approximants need a computable field");
  const Eigen::Index n = window.size();
  const std::vector<std::size_t> support(S.begin(), S.end());
  for (auto i : support) {
    if (static_cast<Eigen::Index>(i) >= n) throw std::invalid_argument("zero set outside the window");
  }
  auto search = [&](const Integer& H, std::vector<QuadInt>* found) {
    std::vector<IntVector> relations;
    IntVector v = IntVector::Zero(n);
    const auto units = positive_units(window.field, 4);
    // Depth-first walk over ideal vectors supported on S with norm <= H.
    std::function<void(std::size_t, const Integer&)> walk = [&](std::size_t pos, const Integer& norm_so_far) {
      if (pos == support.size()) {
        if (v.isZero()) return;
        auto cert = is_totally_positive_principal(window.field, window.primes, v);
        if (!cert) return;
        for (const auto& u : units) {
          QuadInt a = window.field.kind == FieldKind::rational ? cert->numerator
                                                               : multiply(cert->numerator, u, window.field.discriminant);
          bool ok = true;
          for (Eigen::Index i = 0; i < n && ok; ++i) {
            if (S.count(static_cast<std::size_t>(i))) continue;
            ok = congruent_to_one(window, static_cast<std::size_t>(i), a, precision);
          }
          if (ok) {
            relations.push_back(v);
            if (found) found->push_back(a);
            break;
          }
        }
        return;
      }
      const auto i = static_cast<Eigen::Index>(support[pos]);
      const Integer p_norm = window.primes[support[pos]].norm_value();
      Integer norm = norm_so_far;
      for (long e = 0; norm <= H; ++e) {
        v(i) = e;
        walk(pos + 1, norm);
        norm *= p_norm;
      }
      v(i) = 0;
    };
    walk(0, Integer(1));
    IntMatrix rows(static_cast<Eigen::Index>(relations.size()), n);
    for (std::size_t r = 0; r < relations.size(); ++r) rows.row(static_cast<Eigen::Index>(r)) = relations[r].transpose();
    return Lattice(n, rows);
  };
  GammaApproximant out;
  out.lattice = search(height, &out.generators);
  out.stable = search(height / 2, nullptr) == out.lattice;
  return out;
}

const char* to_string(Separation s) {
  switch (s) {
    case Separation::equal:
      return "equal";
    case Separation::separated:
      return "separated";
    case Separation::first_specializes_to_second:
      return "S1_specializes_to_S2";
    case Separation::second_specializes_to_first:
      return "S2_specializes_to_S1";
  }
  return "?";
}

bool in_basic_open(const ZeroSet& S, const ZeroSet& G) {
  return std::none_of(G.begin(), G.end(), [&](std::size_t g) { return S.count(g) > 0; });
}

SeparationResult separation_relation(const ZeroSet& S1, const ZeroSet& S2) {
  SeparationResult out{Separation::equal, {}, {}};
  if (S1 == S2) return out;
  const bool first_in_second = std::includes(S2.begin(), S2.end(), S1.begin(), S1.end());
  const bool second_in_first = std::includes(S1.begin(), S1.end(), S2.begin(), S2.end());
  // S1 inside S2: every U_G around S2 also contains S1.
  if (first_in_second) {
    out.relation = Separation::first_specializes_to_second;
    return out;
  }
  if (second_in_first) {
    out.relation = Separation::second_specializes_to_first;
    return out;
  }
  out.relation = Separation::separated;
  for (auto g : S1) {
    if (!S2.count(g)) {
      out.open_around_second = {g};
      break;
    }
  }
  for (auto g : S2) {
    if (!S1.count(g)) {
      out.open_around_first = {g};
      break;
    }
  }
  return out;
}

bool PrimPoint::is_fixed() const {
  return std::all_of(norms.begin(), norms.end(), [](const FactoredRational& n) { return n.is_one(); });
}

PrimPoint make_prim_point(const PrimeWindow& window, const ZeroSet& S, const Lattice& isotropy, const Character& character) {
  if (character.size() != static_cast<std::size_t>(isotropy.rank())) {
    throw std::invalid_argument("character needs one angle per isotropy generator");
  }
  PrimPoint point{S, isotropy, {}, character};
  for (Eigen::Index i = 0; i < isotropy.rank(); ++i) point.norms.push_back(norm_map(window, isotropy.basis_vector(i)));
  return point;
}

PrimPoint flow_on_prim(const PrimPoint& point, const TimeValue& t) {
  PrimPoint out = point;
  std::vector<AngleExpr> angles;
  for (std::size_t i = 0; i < point.character.size(); ++i) angles.push_back(point.character[i].shifted(t, point.norms[i]));
  out.character = Character(std::move(angles));
  return out;
}

}  // namespace bcs
