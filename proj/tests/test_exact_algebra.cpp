#include <doctest.h>

#include "bcs/abelian_group.hpp"

#include <random>
#include <set>

using namespace bcs;

namespace {

IntMatrix int_matrix(std::initializer_list<std::initializer_list<long>> rows) {
  IntMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (long v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

IntMatrix random_matrix(std::mt19937& rng, Eigen::Index rows, Eigen::Index cols, int bound) {
  std::uniform_int_distribution<int> dist(-bound, bound);
  IntMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = dist(rng);
  return m;
}

bool is_diagonal(const IntMatrix& d) {
  for (Eigen::Index i = 0; i < d.rows(); ++i)
    for (Eigen::Index j = 0; j < d.cols(); ++j)
      if (i != j && d(i, j) != 0) return false;
  return true;
}

// Oracle: gcd of all k x k minors (determinantal divisors).
Integer minor_gcd(const IntMatrix& m, Eigen::Index k) {
  std::vector<Eigen::Index> rows(k), cols(k);
  Integer g = 0;
  std::function<void(Eigen::Index, Eigen::Index)> choose_cols;
  std::function<void(Eigen::Index, Eigen::Index)> choose_rows = [&](Eigen::Index start, Eigen::Index depth) {
    if (depth == k) {
      choose_cols(0, 0);
      return;
    }
    for (Eigen::Index r = start; r < m.rows(); ++r) {
      rows[depth] = r;
      choose_rows(r + 1, depth + 1);
    }
  };
  choose_cols = [&](Eigen::Index start, Eigen::Index depth) {
    if (depth == k) {
      IntMatrix sub(k, k);
      for (Eigen::Index i = 0; i < k; ++i)
        for (Eigen::Index j = 0; j < k; ++j) sub(i, j) = m(rows[i], cols[j]);
      g = gcd_value(g, integer_determinant(sub));
      return;
    }
    for (Eigen::Index c = start; c < m.cols(); ++c) {
      cols[depth] = c;
      choose_cols(c + 1, depth + 1);
    }
  };
  choose_rows(0, 0);
  return g;
}

}  // namespace

TEST_CASE("smith normal form examples") {
  SUBCASE("identity") {
    auto snf = smith_normal_form(IntMatrix::Identity(2, 2).eval());
    CHECK(snf.D == IntMatrix::Identity(2, 2));
    CHECK(snf.U == IntMatrix::Identity(2, 2));
    CHECK(snf.V == IntMatrix::Identity(2, 2));
  }
  SUBCASE("2x2 with invariant factors 2, 4") {
    IntMatrix m = int_matrix({{2, 4}, {6, 8}});
    // Oracle: d1 = gcd of entries, d1*d2 = |det|.
    CHECK(minor_gcd(m, 1) == 2);
    CHECK(minor_gcd(m, 2) == 8);
    auto snf = smith_normal_form(m);
    CHECK(snf.D == int_matrix({{2, 0}, {0, 4}}));
    CHECK(snf.U * m * snf.V == snf.D);
  }
  SUBCASE("zero matrix") {
    IntMatrix z = IntMatrix::Zero(2, 3);
    CHECK(smith_normal_form(z).D == z);
  }
}

TEST_CASE("smith normal form on random matrices") {
  std::mt19937 rng(20240611);
  for (int trial = 0; trial < 200; ++trial) {
    Eigen::Index r = 1 + rng() % 5, c = 1 + rng() % 5;
    IntMatrix m = random_matrix(rng, r, c, 9);
    auto snf = smith_normal_form(m);
    REQUIRE(snf.U * m * snf.V == snf.D);
    CHECK(is_diagonal(snf.D));
    CHECK(abs_value(integer_determinant(snf.U)) == 1);
    CHECK(abs_value(integer_determinant(snf.V)) == 1);
    CHECK(snf.V * snf.V_inverse == IntMatrix::Identity(c, c));
    Integer previous = 1;
    Integer minors_prev = 1;
    for (Eigen::Index i = 0; i < std::min(r, c); ++i) {
      CHECK(snf.D(i, i) >= 0);
      if (snf.D(i, i) != 0) CHECK(snf.D(i, i) % previous == 0);
      if (previous == 0) CHECK(snf.D(i, i) == 0);
      previous = snf.D(i, i);
      if (r <= 4 && c <= 4) {
        Integer minors = minor_gcd(m, i + 1);
        if (minors_prev != 0) {
          CHECK(snf.D(i, i) * minors_prev == minors);
        }
        minors_prev = minors;
      }
    }
    // idempotence
    CHECK(smith_normal_form(snf.D).D == snf.D);
  }
}

TEST_CASE("hermite normal form examples") {
  CHECK(hermite_normal_form(IntMatrix::Identity(3, 3).eval()) == IntMatrix::Identity(3, 3));
  CHECK(hermite_normal_form(int_matrix({{0, 1}, {1, 0}})) == IntMatrix::Identity(2, 2));

  IntMatrix m = int_matrix({{2, 1}, {0, 3}});
  CHECK(hermite_normal_form(m) == m);
  // Oracle: lattice membership by bounded enumeration of combinations.
  std::set<std::pair<long, long>> from_generators, from_hnf;
  IntMatrix h = hermite_normal_form(m);
  for (long a = -12; a <= 12; ++a) {
    for (long b = -12; b <= 12; ++b) {
      IntVector v = Integer(a) * m.row(0).transpose() + Integer(b) * m.row(1).transpose();
      IntVector w = Integer(a) * h.row(0).transpose() + Integer(b) * h.row(1).transpose();
      if (abs_value(v(0)) <= 6 && abs_value(v(1)) <= 6) from_generators.insert({to_long(v(0)), to_long(v(1))});
      if (abs_value(w(0)) <= 6 && abs_value(w(1)) <= 6) from_hnf.insert({to_long(w(0)), to_long(w(1))});
    }
  }
  CHECK(from_generators == from_hnf);
}

TEST_CASE("hermite normal form is canonical") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::Index n = 1 + rng() % 4;
    IntMatrix m = random_matrix(rng, 1 + rng() % 5, n, 9);
    auto dec = hermite_decomposition(m);
    IntMatrix stacked = IntMatrix::Zero(m.rows(), n);
    stacked.topRows(dec.rank) = dec.H;
    CHECK(dec.U * m == stacked);
    CHECK(abs_value(integer_determinant(dec.U)) == 1);
    CHECK(hermite_normal_form(dec.H) == dec.H);
    // A unimodular change of generators gives the same HNF.
    IntMatrix u = IntMatrix::Identity(m.rows(), m.rows());
    for (Eigen::Index i = 0; i + 1 < m.rows(); ++i) u(i, i + 1) = static_cast<long>(rng() % 5) - 2;
    CHECK(hermite_normal_form((u * m).eval()) == dec.H);
  }
}

TEST_CASE("quotient groups") {
  SUBCASE("Z^2 / Z^2 is trivial") {
    auto g = quotient_group(2, Lattice::full(2));
    CHECK(g.is_trivial());
    CHECK(*g.order() == 1);
  }
  SUBCASE("Z / 2Z") {
    auto g = quotient_group(1, Lattice(1, int_matrix({{2}})));
    CHECK(g.invariant_factors() == std::vector<Integer>{2});
  }
  SUBCASE("Z^2 / <(2,0),(1,2)> is cyclic of order 4") {
    Lattice sub(2, int_matrix({{2, 0}, {1, 2}}));
    // Oracle: count cosets of a box of points by pairwise membership of differences.
    std::vector<IntVector> reps;
    for (long x = 0; x < 4; ++x) {
      for (long y = 0; y < 4; ++y) {
        IntVector v(2);
        v << x, y;
        bool fresh = true;
        for (const auto& r : reps) fresh = fresh && !sub.contains((v - r).eval());
        if (fresh) reps.push_back(v);
      }
    }
    CHECK(reps.size() == 4);
    auto g = quotient_group(2, sub);
    CHECK(g.invariant_factors() == std::vector<Integer>{4});
    Integer max_order = 0;
    for (const auto& r : reps) max_order = std::max(max_order, g.element_order(g.project(r)));
    CHECK(max_order == 4);
    // The projection kills the sublattice and the lift is a section.
    for (Eigen::Index i = 0; i < sub.rank(); ++i) CHECK(g.project(sub.basis_vector(i)) == g.identity());
    for (std::size_t i = 0; i < g.generator_count(); ++i) {
      IntVector e = IntVector::Zero(1);
      e(i) = 1;
      CHECK(g.project(g.generator_lift().row(i).transpose()) == e);
    }
  }
  SUBCASE("partially free quotient") {
    auto g = quotient_group(3, Lattice(3, int_matrix({{2, 0, 0}, {0, 6, 0}})));
    CHECK(g.invariant_factors() == std::vector<Integer>{2, 6, 0});
    CHECK_FALSE(g.order().has_value());
    CHECK(g.free_rank() == 1);
  }
}

TEST_CASE("quotient order equals determinant for random full-rank lattices") {
  std::mt19937 rng(99);
  int tested = 0;
  while (tested < 100) {
    IntMatrix m = random_matrix(rng, 3, 3, 9);
    Integer det = integer_determinant(m);
    if (det == 0) continue;
    ++tested;
    auto g = quotient_group(3, Lattice(3, m));
    CHECK(*g.order() == abs_value(det));
    CHECK(*Lattice(3, m).index() == abs_value(det));
  }
}

TEST_CASE("characters of small groups") {
  SUBCASE("Z/2") {
    auto chars = characters_of(group_from_cyclic_factors({2}));
    REQUIRE(chars.size() == 2);
    CHECK(chars[0][0].turn() == 0);
    CHECK(chars[1][0].turn() == Rational(1, 2));
  }
  SUBCASE("trivial group") {
    auto chars = characters_of(group_from_cyclic_factors({}));
    REQUIRE(chars.size() == 1);
    CHECK(chars[0].size() == 0);
  }
  SUBCASE("Z/4 against brute-force homomorphisms") {
    auto g = group_from_cyclic_factors({4});
    auto chars = characters_of(g);
    // Oracle: a map Z/4 -> mu_4 is a homomorphism iff it is k -> z^k for a 4th root z.
    std::set<Rational> expected{Rational(0), Rational(1, 4), Rational(1, 2), Rational(3, 4)};
    std::set<Rational> got;
    for (const auto& c : chars) got.insert(c[0].turn());
    CHECK(got == expected);
  }
  SUBCASE("infinite group rejected") {
    CHECK_THROWS_AS(characters_of(group_from_cyclic_factors({0})), std::invalid_argument);
  }
}

TEST_CASE("character groups are isomorphic to the group, order <= 16") {
  // All abelian groups of order <= 16 as invariant factor lists.
  std::vector<std::vector<Integer>> groups;
  for (int n = 1; n <= 16; ++n) groups.push_back({n});
  groups.push_back({2, 2});
  groups.push_back({2, 4});
  groups.push_back({2, 2, 2});
  groups.push_back({3, 3});
  groups.push_back({2, 6});
  groups.push_back({2, 2, 4});
  groups.push_back({4, 4});
  groups.push_back({2, 8});
  groups.push_back({2, 2, 2, 2});
  for (const auto& factors : groups) {
    auto g = group_from_cyclic_factors(factors);
    auto chars = characters_of(g);
    auto elements = g.elements();
    REQUIRE(chars.size() == elements.size());
    for (std::size_t a = 0; a < chars.size(); ++a) {
      // chi_a is a homomorphism
      for (const auto& x : elements) {
        for (const auto& y : elements) {
          AngleExpr lhs = chars[a].pairing(g.add(x, y));
          AngleExpr rhs = chars[a].pairing(x) + chars[a].pairing(y);
          CHECK(lhs == rhs);
        }
      }
      // multiplication table matches the group's addition table under a -> chi_a
      for (std::size_t b = 0; b < chars.size(); ++b) {
        Character product = chars[a] * chars[b];
        std::size_t c = g.index_of(g.add(elements[a], elements[b]));
        CHECK(product == chars[c]);
      }
    }
    std::set<std::string> distinct;
    for (const auto& c : chars) {
      std::string key;
      for (const auto& angle : c.angles()) key += angle.str() + ";";
      distinct.insert(key);
    }
    CHECK(distinct.size() == chars.size());
  }
}

TEST_CASE("kernel and section") {
  SUBCASE("identity") {
    auto ks = kernel_and_section(IntMatrix::Identity(3, 3));
    CHECK(ks.kernel.rank() == 0);
    CHECK(ks.section == IntMatrix::Identity(3, 3));
  }
  SUBCASE("sum map") {
    IntMatrix f = int_matrix({{1, 1}});
    auto ks = kernel_and_section(f);
    CHECK(ks.kernel == Lattice(2, int_matrix({{1, -1}})));
    CHECK(f * ks.section.transpose() == ks.image_basis.transpose());
    CHECK(ks.image_basis == int_matrix({{1}}));
  }
  SUBCASE("columns (2,0),(0,3),(2,3)") {
    IntMatrix f = int_matrix({{2, 0, 2}, {0, 3, 3}});
    // Oracle: brute-force kernel search in a box.
    Lattice expected(3, int_matrix({{1, 1, -1}}));
    for (long a = -5; a <= 5; ++a)
      for (long b = -5; b <= 5; ++b)
        for (long c = -5; c <= 5; ++c) {
          IntVector v(3);
          v << a, b, c;
          bool in_kernel = (f * v).isZero();
          CHECK(in_kernel == expected.contains(v));
        }
    auto ks = kernel_and_section(f);
    CHECK(ks.kernel == expected);
    CHECK(f * ks.section.transpose() == ks.image_basis.transpose());
  }
}

TEST_CASE("kernel plus section spans the domain when the image is saturated") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    IntMatrix f = random_matrix(rng, 1 + rng() % 3, 1 + rng() % 4, 5);
    auto ks = kernel_and_section(f);
    CHECK(f * ks.section.transpose() == ks.image_basis.transpose());
    for (Eigen::Index i = 0; i < ks.kernel.rank(); ++i) CHECK((f * ks.kernel.basis_vector(i)).isZero());
    Lattice spanned = ks.kernel + Lattice(f.cols(), ks.section);
    // image_basis is a basis of the full image, so kernel + section is all of Z^m.
    CHECK(spanned == Lattice::full(f.cols()));
  }
}
