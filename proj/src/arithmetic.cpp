#include "bcs/arithmetic.hpp"

#include "bcs/integer_ops.hpp"

namespace bcs {

std::vector<Prime> primes_up_to(Prime bound) {
  std::vector<Prime> out;
  if (bound < 2) return out;
  std::vector<bool> composite(bound + 1, false);
  for (Prime i = 2; i <= bound; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (Prime j = i * i; j <= bound; j += i) composite[j] = true;
  }
  return out;
}

bool is_prime(Prime n) {
  if (n < 2) return false;
  for (Prime d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

bool is_squarefree(const Integer& n) {
  if (n == 0) return false;
  Integer m = abs_value(n);
  for (Integer d = 2; d * d <= m; ++d) {
    if (m % (d * d) == 0) return false;
    if (m % d == 0) m /= d;
  }
  return true;
}

Integer pow_mod(Integer base, Integer exponent, const Integer& modulus) {
  Integer result = 1;
  base = floor_mod(base, modulus);
  while (exponent > 0) {
    if (exponent % 2 == 1) result = result * base % modulus;
    base = base * base % modulus;
    exponent /= 2;
  }
  return floor_mod(result, modulus);
}

Integer inverse_mod(const Integer& a, const Integer& m) {
  auto [g, x, y] = extended_gcd(floor_mod(a, m), m);
  (void)y;
  if (g != 1) throw std::invalid_argument("element is not invertible modulo " + m.str());
  return floor_mod(x, m);
}

int kronecker(const Integer& D, const Integer& n_in) {
  // Cohen, Algorithm 1.4.10 restricted to n >= 1.
  if (n_in < 1) throw std::invalid_argument("kronecker symbol needs n >= 1");
  Integer a = D, b = n_in;
  if (b == 1) return 1;
  if (a % 2 == 0 && b % 2 == 0) return 0;
  int k = 1;
  unsigned v = 0;
  while (b % 2 == 0) {
    ++v;
    b /= 2;
  }
  if (v % 2 == 1) {
    Integer r = floor_mod(a, Integer(8));
    if (r == 3 || r == 5) k = -k;
  }
  if (a < 0) {
    // b is odd and positive from here on.
    a = -a;
    if (b % 4 == 3) k = -k;
  }
  while (a != 0) {
    v = 0;
    while (a % 2 == 0) {
      ++v;
      a /= 2;
    }
    if (v % 2 == 1) {
      Integer r = b % 8;
      if (r == 3 || r == 5) k = -k;
    }
    if (a % 4 == 3 && b % 4 == 3) k = -k;
    Integer r = abs_value(a);
    a = b % r;
    b = r;
  }
  return b == 1 ? k : 0;
}

int kronecker_symbol(const Integer& D, Prime p) {
  if (!is_prime(p)) throw std::invalid_argument("kronecker_symbol: " + std::to_string(p) + " is not prime");
  if (p == 2) {
    if (D % 2 == 0) return 0;
    Integer r = floor_mod(D, Integer(8));
    return (r == 1 || r == 7) ? 1 : -1;
  }
  Integer a = floor_mod(D, Integer(p));
  if (a == 0) return 0;
  Integer e = pow_mod(a, Integer((p - 1) / 2), Integer(p));
  return e == 1 ? 1 : -1;
}

Integer sqrt_mod_prime(const Integer& a_in, Prime p_in) {
  const Integer p(p_in);
  Integer a = floor_mod(a_in, p);
  if (a == 0) return 0;
  if (p == 2) return a;
  if (pow_mod(a, (p - 1) / 2, p) != 1) throw std::invalid_argument("not a quadratic residue");
  // Tonelli-Shanks
  Integer q = p - 1;
  unsigned s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  Integer z = 2;
  while (pow_mod(z, (p - 1) / 2, p) != p - 1) ++z;
  Integer m = s, c = pow_mod(z, q, p), t = pow_mod(a, q, p), r = pow_mod(a, (q + 1) / 2, p);
  while (t != 1) {
    Integer i = 0, t2 = t;
    while (t2 != 1) {
      t2 = t2 * t2 % p;
      ++i;
    }
    Integer b = c;
    for (Integer j = 0; j < m - i - 1; ++j) b = b * b % p;
    m = i;
    c = b * b % p;
    t = t * c % p;
    r = r * b % p;
  }
  return r;
}

Integer fundamental_discriminant(const Integer& d) {
  if (d == 0 || d == 1 || !is_squarefree(d)) {
    throw std::invalid_argument("d must be a squarefree integer other than 0 and 1, got " + d.str());
  }
  return floor_mod(d, Integer(4)) == 1 ? d : Integer(4 * d);
}

bool is_fundamental_discriminant(const Integer& D) {
  if (D == 0 || D == 1) return false;
  Integer r = floor_mod(D, Integer(4));
  if (r == 1) return is_squarefree(D);
  if (r != 0) return false;
  Integer d = D / 4;
  Integer r4 = floor_mod(d, Integer(4));
  return (r4 == 2 || r4 == 3) && is_squarefree(d);
}

}  // namespace bcs
