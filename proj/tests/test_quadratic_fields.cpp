#include "bcs/arithmetic.hpp"
#include "bcs/quadratic_field.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace bcs;

namespace {

// Number of roots of the minimal polynomial of the ring generator modulo p:
// 2 roots means split, 1 ramified, 0 inert.
int minimal_polynomial_symbol(long D, long p) {
  int roots = 0;
  for (long x = 0; x < p; ++x) {
    long value = (((D % 4 + 4) % 4) == 1) ? x * x - x + (1 - D) / 4 : x * x - D / 4;
    if (((value % p) + p) % p == 0) ++roots;
  }
  return roots == 2 ? 1 : (roots == 1 ? 0 : -1);
}

std::size_t brute_force_definite_class_number(long D) {
  std::size_t count = 0;
  for (long a = 1; 3 * a * a <= -D; ++a) {
    for (long b = -a + 1; b <= a; ++b) {
      long num = b * b - D;
      if (num % (4 * a) != 0) continue;
      long c = num / (4 * a);
      if (c < a || (c == a && b < 0)) continue;
      if (std::gcd(std::gcd(a, std::abs(b)), c) != 1) continue;
      ++count;
    }
  }
  return count;
}

// Sign of the norm of the fundamental unit by a direct Pell search.
int pell_unit_norm(long D, long* v_out = nullptr) {
  for (long y = 1;; ++y) {
    for (int s : {-1, 1}) {
      long target = D * y * y + 4 * s;
      long x = static_cast<long>(std::llround(std::sqrt(static_cast<double>(target))));
      if (x * x == target) {
        if (v_out) *v_out = y;
        return s;
      }
    }
  }
}

}  // namespace

TEST_CASE("kronecker symbol examples") {
  CHECK(kronecker_symbol(-20, 5) == 0);
  CHECK(kronecker_symbol(-20, 2) == 0);
  CHECK(kronecker_symbol(12, 3) == 0);
  CHECK(kronecker_symbol(-20, 3) == 1);
  CHECK(kronecker_symbol(-20, 11) == -1);
  CHECK_THROWS_AS(kronecker_symbol(-20, 9), std::invalid_argument);
  CHECK(kronecker_symbol(1, 7) == 1);
}

TEST_CASE("kronecker symbol agrees with factoring the minimal polynomial") {
  const auto primes = primes_up_to(200);
  for (long D = -400; D <= 400; ++D) {
    if (!is_fundamental_discriminant(D)) continue;
    for (Prime p : primes) {
      CHECK_MESSAGE(kronecker_symbol(D, p) == minimal_polynomial_symbol(D, static_cast<long>(p)), D << " " << p);
    }
  }
}

TEST_CASE("kronecker symbol is multiplicative in the lower argument") {
  const std::vector<long> small{2, 3, 5, 7, 11, 13};
  for (long D : {-20, -4, -3, 5, 12, 13, -84, 8}) {
    for (long m : small) {
      for (long n : small) {
        CHECK(kronecker(D, m * n) == kronecker_symbol(D, m) * kronecker_symbol(D, n));
      }
    }
  }
}

TEST_CASE("split types") {
  const auto Q = FieldSpec::rational();
  CHECK(split_type(Q, 7) == SplitType::split);
  const auto K = FieldSpec::quadratic(-5);
  CHECK(K.discriminant == -20);
  CHECK(split_type(K, 3) == SplitType::split);
  CHECK(split_type(K, 2) == SplitType::ramified);
  CHECK(split_type(K, 11) == SplitType::inert);
  CHECK(FieldSpec::quadratic(3).discriminant == 12);
  CHECK(FieldSpec::quadratic(5).discriminant == 5);
  CHECK_THROWS(FieldSpec::quadratic(12));
  CHECK_THROWS(FieldSpec::from_discriminant(-12));
}

TEST_CASE("form class group examples") {
  {
    const auto& G = form_class_group(-4);
    CHECK(G.class_number() == 1);
    CHECK(G.representatives()[0] == QuadForm{1, 0, 1});
  }
  {
    const auto& G = form_class_group(-20);
    CHECK(G.class_number() == 2);
    CHECK(G.representatives() == std::vector<QuadForm>{{1, 0, 5}, {2, 2, 3}});
    CHECK(G.group().isomorphic_to(group_from_cyclic_factors({2})));
  }
  {
    const auto& G = form_class_group(12);
    CHECK(G.class_number() == 2);
    CHECK(G.group().isomorphic_to(group_from_cyclic_factors({2})));
    CHECK(norm(fundamental_unit(12), 12) == 1);
    CHECK(fundamental_unit(12) == QuadInt{4, 1});  // 2 + sqrt(3)
  }
  {
    const auto& G = form_class_group(5);
    CHECK(G.class_number() == 1);
    CHECK(norm(fundamental_unit(5), 5) == -1);
  }
  CHECK(form_class_group(-84).group().isomorphic_to(group_from_cyclic_factors({2, 2})));
  CHECK_THROWS_AS(FormClassGroup(-12), std::invalid_argument);
}

TEST_CASE("definite class numbers match brute-force reduced form counts") {
  for (long D = -3; D >= -500; --D) {
    if (!is_fundamental_discriminant(D)) continue;
    CHECK_MESSAGE(form_class_group(D).class_number() == brute_force_definite_class_number(D), D);
  }
}

TEST_CASE("real quadratic narrow class numbers against the Pell oracle") {
  // (D, wide class number, narrow class number) computed with PARI/GP.
  const std::vector<std::array<long, 3>> table{
      {5, 1, 1},     {8, 1, 1},     {12, 1, 2},    {13, 1, 1},    {17, 1, 1},    {21, 1, 2},    {24, 1, 2},
      {28, 1, 2},    {29, 1, 1},    {33, 1, 2},    {37, 1, 1},    {40, 2, 2},    {41, 1, 1},    {44, 1, 2},
      {53, 1, 1},    {56, 1, 2},    {57, 1, 2},    {60, 2, 4},    {61, 1, 1},    {65, 2, 2},    {69, 1, 2},
      {73, 1, 1},    {76, 1, 2},    {77, 1, 2},    {85, 2, 2},    {88, 1, 2},    {89, 1, 1},    {92, 1, 2},
      {93, 1, 2},    {97, 1, 1},    {101, 1, 1},   {104, 2, 2},   {105, 2, 4},   {109, 1, 1},   {113, 1, 1},
      {120, 2, 4},   {124, 1, 2},   {129, 1, 2},   {133, 1, 2},   {136, 2, 4},   {137, 1, 1},   {140, 2, 4},
      {141, 1, 2},   {145, 4, 4},   {149, 1, 1},   {152, 1, 2},   {156, 2, 4},   {157, 1, 1},   {161, 1, 2},
      {165, 2, 4},   {168, 2, 4},   {172, 1, 2},   {173, 1, 1},   {177, 1, 2},   {181, 1, 1},   {184, 1, 2},
      {185, 2, 2},   {188, 1, 2},   {193, 1, 1},   {197, 1, 1}};
  std::size_t seen = 0;
  for (long D = 5; D <= 200; ++D) {
    if (!is_fundamental_discriminant(D)) continue;
    const auto& row = table.at(seen++);
    REQUIRE(row[0] == D);
    long v = 0;
    const int unit_norm = pell_unit_norm(D, &v);
    const auto eps = fundamental_unit(D);
    CHECK(eps.v == v);
    CHECK(norm(eps, D) == unit_norm);
    const std::size_t narrow = form_class_group(D).class_number();
    CHECK_MESSAGE(narrow == static_cast<std::size_t>(row[2]), D);
    CHECK_MESSAGE(narrow == static_cast<std::size_t>(row[1] * (unit_norm == 1 ? 2 : 1)), D);
  }
  CHECK(seen == table.size());
}

TEST_CASE("ideals and forms") {
  const Integer D = -20;
  const auto P3 = QuadIdeal::from_form({3, 2, 2});
  CHECK(P3.norm() == 3);
  CHECK(P3.contains(QuadInt{6, 0}));
  CHECK(P3.contains(QuadInt{2, 2}));  // 1 + sqrt(-5)
  CHECK_FALSE(P3.contains(QuadInt{2, 0}));
  CHECK((P3 * P3.conjugate()) == QuadIdeal::principal(D, QuadInt::from_integer(3)));
  auto [m, f] = (P3 * P3.conjugate()).primitive_form();
  CHECK(m == 3);
  CHECK(f == principal_form(D));
  const auto P2 = QuadIdeal::from_form({2, 2, 3});
  CHECK(P2.pow(2) == QuadIdeal::principal(D, QuadInt::from_integer(2)));
}

TEST_CASE("composition matches ideal multiplication") {
  std::mt19937_64 rng(7);
  for (long D : {-20L, -84L, -104L, -231L, 60L, 145L, 229L, 136L}) {
    const auto& G = form_class_group(D);
    const auto& reps = G.representatives();
    for (std::size_t i = 0; i < reps.size(); ++i) {
      for (std::size_t j = 0; j < reps.size(); ++j) {
        const auto I = QuadIdeal::from_form(reps[i]) * QuadIdeal::from_form(reps[j]);
        auto [m, f] = I.primitive_form();
        CHECK(G.classify(f) == G.compose_classes(i, j));
      }
    }
    // Conjugation is inversion.
    for (std::size_t i = 0; i < reps.size(); ++i) {
      auto [m, f] = QuadIdeal::from_form(reps[i]).conjugate().primitive_form();
      CHECK(G.compose_classes(i, G.classify(f)) == G.identity_class());
    }
  }
}

TEST_CASE("prime ideals above p") {
  const auto Q = FieldSpec::rational();
  auto q7 = prime_ideal_above(Q, 7);
  REQUIRE(q7.size() == 1);
  CHECK(q7[0].norm_value() == 7);
  CHECK(q7[0].class_coords.size() == 0);

  const auto K = FieldSpec::quadratic(-5);
  const auto& G = form_class_group(-20);
  auto p3 = prime_ideal_above(K, 3);
  REQUIRE(p3.size() == 2);
  for (const auto& P : p3) {
    CHECK(P.norm_value() == 3);
    CHECK(G.representatives()[G.classify(P.class_form)] == QuadForm{2, 2, 3});
    CHECK(P.ideal->norm() == 3);
  }
  CHECK(*p3[1].ideal == p3[0].ideal->conjugate());
  CHECK(p3[0].class_form < p3[1].class_form);
  // No element of norm 3: x^2 + 5 y^2 = 3 has no solution.
  for (long x = -2; x <= 2; ++x) {
    for (long y = -1; y <= 1; ++y) CHECK(x * x + 5 * y * y != 3);
  }
  auto p11 = prime_ideal_above(K, 11);
  REQUIRE(p11.size() == 1);
  CHECK(p11[0].norm_value() == 121);
  CHECK(G.classify(p11[0].class_form) == G.identity_class());
  auto p2 = prime_ideal_above(K, 2);
  REQUIRE(p2.size() == 1);
  CHECK(p2[0].e == 2);
  CHECK(p2[0].norm_value() == 2);
  CHECK(p2[0].ideal->pow(2) == QuadIdeal::principal(-20, QuadInt::from_integer(2)));
}

TEST_CASE("e f g sums to the degree and prime ideals have the right norm") {
  for (long d : {-1L, -2L, -3L, -5L, -21L, 2L, 3L, 5L, 7L, 15L, 17L, 33L, 35L}) {
    const auto K = FieldSpec::quadratic(d);
    for (Prime p : primes_up_to(60)) {
      auto above = prime_ideal_above(K, p);
      int total = 0;
      for (const auto& P : above) {
        total += P.e * P.f;
        CHECK(P.ideal->norm() == P.norm_value());
      }
      CHECK(total == 2);
      // The product of the primes above p with multiplicity is (p).
      QuadIdeal prod = QuadIdeal::unit(K.discriminant);
      for (const auto& P : above) prod = prod * P.ideal->pow(static_cast<unsigned>(P.e));
      CHECK(prod == QuadIdeal::principal(K.discriminant, QuadInt::from_integer(p)));
    }
  }
}

TEST_CASE("totally positive generator certificates") {
  const auto K = FieldSpec::quadratic(-5);
  auto p3 = prime_ideal_above(K, 3);
  std::vector<PrimeIdealData> primes{p3[0]};
  IntVector zero = IntVector::Zero(1), one(1), two(1);
  one << 1;
  two << 2;
  auto c0 = is_totally_positive_principal(K, primes, zero);
  REQUIRE(c0);
  CHECK(c0->numerator == QuadInt::from_integer(1));
  CHECK_FALSE(is_totally_positive_principal(K, primes, one));
  auto c2 = is_totally_positive_principal(K, primes, two);
  REQUIRE(c2);
  CHECK(norm(c2->numerator, -20) == 9);
  CHECK(abs_value(c2->numerator.u) == 4);
  CHECK(abs_value(c2->numerator.v) == 1);

  const auto Q = FieldSpec::rational();
  std::vector<PrimeIdealData> qp{prime_ideal_above(Q, 2)[0], prime_ideal_above(Q, 3)[0]};
  IntVector v(2);
  v << 2, -1;
  auto cq = is_totally_positive_principal(Q, qp, v);
  REQUIRE(cq);
  CHECK(cq->numerator == QuadInt::from_integer(4));
  CHECK(cq->denominator == 3);
}

TEST_CASE("real quadratic certificates need total positivity") {
  // In Q(sqrt 3) the ideal (sqrt 3) is principal but not narrowly principal.
  const auto K = FieldSpec::quadratic(3);
  auto p3 = prime_ideal_above(K, 3);
  REQUIRE(p3.size() == 1);
  CHECK(p3[0].ideal == QuadIdeal::principal(12, QuadInt{0, 1}));
  std::vector<PrimeIdealData> primes{p3[0]};
  IntVector one(1);
  one << 1;
  CHECK_FALSE(is_totally_positive_principal(K, primes, one));
  one << 2;
  auto c = is_totally_positive_principal(K, primes, one);
  REQUIRE(c);
  CHECK(is_totally_positive(c->numerator, 12));
}

TEST_CASE("certificates exist exactly for trivial classes") {
  std::mt19937_64 rng(11);
  for (long d : {-5L, -21L, -26L, 3L, 10L, 15L, 34L, 79L, 145L}) {
    const auto K = FieldSpec::quadratic(d);
    const auto& G = form_class_group(K.discriminant);
    std::vector<PrimeIdealData> primes;
    for (Prime p : primes_up_to(30)) {
      for (auto& P : prime_ideal_above(K, p)) primes.push_back(P);
    }
    std::uniform_int_distribution<int> pick(-2, 2);
    for (int trial = 0; trial < 40; ++trial) {
      IntVector v(static_cast<Eigen::Index>(primes.size()));
      IntVector cls = G.coordinates(G.identity_class());
      for (std::size_t i = 0; i < primes.size(); ++i) {
        v(static_cast<Eigen::Index>(i)) = pick(rng) * (i % 3 == 0 ? 1 : 0);
        cls += v(static_cast<Eigen::Index>(i)) * primes[i].class_coords;
      }
      const bool trivial = G.class_of_coordinates(cls) == G.identity_class();
      auto cert = is_totally_positive_principal(K, primes, v);
      CHECK_MESSAGE(cert.has_value() == trivial, d);
      if (cert) CHECK(is_totally_positive(cert->numerator, K.discriminant));
    }
  }
}
