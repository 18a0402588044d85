#include "bcs/quadratic_form.hpp"

#include <map>
#include <set>
#include <sstream>

namespace bcs {
namespace {

Transform identity_transform() { return Transform::Identity(); }

Transform translation(const Integer& k) {
  Transform t;
  t << Integer(1), k, Integer(0), Integer(1);
  return t;
}

bool definite(const QuadForm& f) { return f.discriminant() < 0; }

// Indefinite reduced: 0 < b < sqrt(D) and sqrt(D) - b < 2|a| < sqrt(D) + b.
bool is_reduced_indefinite(const QuadForm& f) {
  const Integer D = f.discriminant();
  if (f.b <= 0 || f.b * f.b >= D) return false;
  const Integer two_a = 2 * abs_value(f.a);
  Integer lower = two_a + f.b;  // 2|a| + b > sqrt(D)
  if (lower * lower <= D) return false;
  Integer upper = two_a - f.b;  // 2|a| - b < sqrt(D)
  return upper <= 0 || upper * upper < D;
}

bool is_reduced_definite(const QuadForm& f) {
  if (f.a <= 0) return false;
  if (abs_value(f.b) > f.a || f.a > f.c) return false;
  if ((abs_value(f.b) == f.a || f.a == f.c) && f.b < 0) return false;
  return true;
}

ReducedForm reduce_definite(const QuadForm& f) {
  if (f.a <= 0) throw std::invalid_argument("only positive definite forms are reduced: " + f.str());
  QuadForm g = f;
  Transform M = identity_transform();
  Transform swap;
  swap << Integer(0), Integer(-1), Integer(1), Integer(0);
  for (;;) {
    // b into (-a, a]
    if (g.b <= -g.a || g.b > g.a) {
      Integer k = floor_div(Integer(g.a - g.b), Integer(2 * g.a));
      Transform t = translation(k);
      g = apply_transform(g, t);
      M = M * t;
    }
    if (g.a > g.c || (g.a == g.c && g.b < 0)) {
      g = apply_transform(g, swap);
      M = M * swap;
      continue;
    }
    return {g, M};
  }
}

}  // namespace

bool QuadForm::is_primitive() const { return gcd_value(gcd_value(a, b), c) == 1; }

std::string QuadForm::str() const {
  std::ostringstream out;
  out << '(' << a << ", " << b << ", " << c << ')';
  return out.str();
}

std::strong_ordering QuadForm::operator<=>(const QuadForm& o) const {
  if (a != o.a) return a < o.a ? std::strong_ordering::less : std::strong_ordering::greater;
  if (b != o.b) return b < o.b ? std::strong_ordering::less : std::strong_ordering::greater;
  if (c != o.c) return c < o.c ? std::strong_ordering::less : std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

QuadForm apply_transform(const QuadForm& f, const Transform& M) {
  const Integer &p = M(0, 0), &q = M(0, 1), &r = M(1, 0), &s = M(1, 1);
  return {f.evaluate(p, r), 2 * f.a * p * q + f.b * (p * s + q * r) + 2 * f.c * r * s, f.evaluate(q, s)};
}

QuadForm principal_form(const Integer& D) {
  if (floor_mod(D, Integer(4)) == 0) return {1, 0, -D / 4};
  return {1, 1, (1 - D) / 4};
}

bool is_reduced(const QuadForm& f) {
  return definite(f) ? is_reduced_definite(f) : is_reduced_indefinite(f);
}

ReducedForm rho_step(const QuadForm& f) {
  const Integer D = f.discriminant();
  if (D <= 0) throw std::invalid_argument("rho_step is for indefinite forms");
  if (f.c == 0) throw std::invalid_argument("form represents zero: " + f.str());
  const Integer root = isqrt(D);
  const Integer abs_c = abs_value(f.c);
  const Integer modulus = 2 * abs_c;
  Integer b_next;
  if (abs_c > root) {
    b_next = floor_mod(Integer(-f.b), modulus);
    if (b_next > abs_c) b_next -= modulus;
  } else {
    // Largest value below sqrt(D) congruent to -b mod 2|c|.
    b_next = root - floor_mod(Integer(root + f.b), modulus);
  }
  Integer s = (b_next + f.b) / (2 * f.c);
  Transform M;
  M << Integer(0), Integer(-1), Integer(1), s;
  QuadForm g = apply_transform(f, M);
  return {g, M};
}

ReducedForm reduce(const QuadForm& f) {
  if (definite(f)) return reduce_definite(f);
  QuadForm g = f;
  Transform M = identity_transform();
  while (!is_reduced_indefinite(g)) {
    auto step = rho_step(g);
    g = step.form;
    M = M * step.transform;
  }
  return {g, M};
}

std::vector<QuadForm> reduction_cycle(const QuadForm& f) {
  if (!is_reduced_indefinite(f)) throw std::invalid_argument("cycle needs a reduced indefinite form");
  std::vector<QuadForm> cycle{f};
  QuadForm g = rho_step(f).form;
  while (g != f) {
    cycle.push_back(g);
    g = rho_step(g).form;
  }
  return cycle;
}

std::vector<QuadForm> reduced_forms(const Integer& D) {
  std::vector<QuadForm> out;
  if (D < 0) {
    // a <= sqrt(|D| / 3)
    for (Integer a = 1; 3 * a * a <= -D; ++a) {
      for (Integer b = -a + 1; b <= a; ++b) {
        Integer num = b * b - D;
        if (num % (4 * a) != 0) continue;
        QuadForm f{a, b, num / (4 * a)};
        if (is_reduced_definite(f) && f.is_primitive()) out.push_back(f);
      }
    }
  } else {
    const Integer root = isqrt(D);
    for (Integer b = 1; b <= root; ++b) {
      Integer num = b * b - D;  // = 4ac < 0
      if (num % 4 != 0) continue;
      Integer ac = num / 4;
      for (Integer a = 1; a <= abs_value(ac); ++a) {
        if (ac % a != 0) continue;
        for (int sign : {1, -1}) {
          QuadForm f{sign * a, b, ac / (sign * a)};
          if (is_reduced_indefinite(f) && f.is_primitive()) out.push_back(f);
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

ReducedForm with_positive_leading(const QuadForm& f) {
  if (f.a > 0) return {f, identity_transform()};
  if (f.discriminant() < 0) throw std::invalid_argument("negative definite form");
  QuadForm g = f;
  Transform M = identity_transform();
  // In a reduced cycle the leading coefficients alternate in sign.
  if (!is_reduced_indefinite(g)) {
    auto r = reduce(g);
    g = r.form;
    M = r.transform;
  }
  while (g.a <= 0) {
    auto step = rho_step(g);
    g = step.form;
    M = M * step.transform;
  }
  return {g, M};
}

QuadForm compose(const QuadForm& f_in, const QuadForm& g_in) {
  // Cohen, Algorithm 5.4.7.
  QuadForm f1 = f_in, f2 = g_in;
  if (f1.discriminant() != f2.discriminant()) throw std::invalid_argument("discriminants differ");
  if (f1.a <= 0 || f2.a <= 0) throw std::invalid_argument("compose needs positive leading coefficients");
  if (f1.a > f2.a) std::swap(f1, f2);
  const Integer s = (f1.b + f2.b) / 2;
  const Integer n = f2.b - s;
  Integer y1, d;
  if (f2.a % f1.a == 0) {
    y1 = 0;
    d = f1.a;
  } else {
    auto [g, u, v] = extended_gcd(f2.a, f1.a);
    (void)v;
    d = g;
    y1 = u;
  }
  Integer x2, y2, d1;
  if (s % d == 0) {
    y2 = -1;
    x2 = 0;
    d1 = d;
  } else {
    auto [g, u, v] = extended_gcd(s, d);
    d1 = g;
    x2 = u;
    y2 = -v;
  }
  const Integer v1 = f1.a / d1, v2 = f2.a / d1;
  const Integer r = floor_mod(Integer(y1 * y2 * n - x2 * f2.c), v1);
  const Integer b3 = f2.b + 2 * v2 * r;
  const Integer a3 = v1 * v2;
  const Integer c3 = (f2.c * d1 + r * (f2.b + v2 * r)) / v1;
  return reduce(QuadForm{a3, b3, c3}).form;
}

}  // namespace bcs
