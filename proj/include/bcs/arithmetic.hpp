#pragma once

#include "bcs/types.hpp"

#include <vector>

namespace bcs {

std::vector<Prime> primes_up_to(Prime bound);
bool is_prime(Prime n);
bool is_squarefree(const Integer& n);

/// Kronecker symbol (D / n) for any n >= 1.
int kronecker(const Integer& D, const Integer& n);
/// (D / p) for a prime p; rejects composite p.
int kronecker_symbol(const Integer& D, Prime p);

/// x with x^2 = a mod p, p an odd prime and a a square mod p.
Integer sqrt_mod_prime(const Integer& a, Prime p);

Integer pow_mod(Integer base, Integer exponent, const Integer& modulus);
/// Inverse of a modulo m; throws when gcd(a, m) != 1.
Integer inverse_mod(const Integer& a, const Integer& m);

/// Discriminant of Q(sqrt d) for squarefree d != 0, 1.
Integer fundamental_discriminant(const Integer& d);
bool is_fundamental_discriminant(const Integer& D);

}  // namespace bcs
