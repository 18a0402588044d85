#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include "bcs/arithmetic.hpp"
#include "bcs/cli.hpp"
#include "bcs/dynamics.hpp"
#include "bcs/field_io.hpp"
#include "bcs/ideal_lattice.hpp"
#include "bcs/prim_space.hpp"
#include "bcs/quadratic_field.hpp"
#include "bcs/representations.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <exception>
#include <filesystem>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

using namespace bcs;

namespace {

const std::filesystem::path kSource = BCS_SOURCE_DIR;

std::map<int, bool>& outcomes() {
  static std::map<int, bool> m;
  return m;
}

// Collects the verdict of one criterion; a thrown exception counts as failure.
class Criterion {
 public:
  explicit Criterion(int number) : number_(number) {}
  ~Criterion() { outcomes()[number_] = ok_ && std::uncaught_exceptions() == 0; }

  void expect(bool condition, const std::string& what) {
    if (condition) return;
    ok_ = false;
    FAIL_CHECK(what);
  }

 private:
  int number_;
  bool ok_ = true;
};

std::string name(const FieldSpec& f) { return f.id(); }

// Fields with narrow class numbers 1, 1, 2, 2, 3, 3, 4, 4, 4, 4.
std::vector<FieldSpec> test_fields() {
  std::vector<FieldSpec> out{FieldSpec::rational()};
  for (long d : {-1L, -5L, 3L, -23L, -31L, -14L, -17L, -21L, 15L}) out.push_back(FieldSpec::quadratic(d));
  return out;
}

Integer model_bound(const FieldSpec& f) { return std::max(guard_bound(f), Integer(10)); }

// Character of the class group pulled back to the window primes.
Character pulled_back(const ClassModel& model, const Character& chi) {
  std::vector<AngleExpr> angles;
  for (std::size_t c : model.prime_class) angles.push_back(chi.pairing(model.elements[c]));
  return Character(std::move(angles));
}

bool pairs_trivially_with_p1(const ClassModel& model, const Character& gamma, const Character& delta) {
  const auto quotient = gamma * delta.inverse();
  const auto& L = model.p1.lattice;
  for (Eigen::Index i = 0; i < L.rank(); ++i) {
    if (quotient.pairing(L.basis_vector(i)).distance_to_integer() > 1e-9) return false;
  }
  return true;
}

bool same_phases(const MatrixRep& a, const MatrixRep& b) {
  if (a.generators.size() != b.generators.size()) return false;
  for (std::size_t i = 0; i < a.generators.size(); ++i) {
    if (!(a.generators[i].phase == b.generators[i].phase)) return false;
    if (a.generators[i].permutation != b.generators[i].permutation) return false;
  }
  return true;
}

IntVector vec(std::vector<long> xs) {
  IntVector v(static_cast<Eigen::Index>(xs.size()));
  for (std::size_t i = 0; i < xs.size(); ++i) v(static_cast<Eigen::Index>(i)) = xs[i];
  return v;
}

std::vector<ZeroSet> power_set(std::size_t n) {
  std::vector<ZeroSet> out;
  for (unsigned mask = 0; mask < (1U << n); ++mask) {
    ZeroSet S;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1U << i)) S.insert(i);
    }
    out.push_back(S);
  }
  return out;
}

struct CliResult {
  int code;
  std::string out;
};

CliResult run(std::vector<std::string> args) {
  args.insert(args.begin(), "bcs");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str()};
}

}  // namespace

TEST_CASE("criterion 1: lattice route and form route agree for |D| <= 300") {
  Criterion c(1);
  const auto start = std::chrono::steady_clock::now();
  int fields = 0;
  for (long D = -300; D <= 300; ++D) {
    if (!is_fundamental_discriminant(D)) continue;
    ++fields;
    const auto field = FieldSpec::from_discriminant(D);
    const auto p1 = truncated_P1(field, guard_bound(field));
    const auto lattice_route = narrow_class_group_truncated(p1);
    const auto& form_route = form_class_group(D).group();
    c.expect(p1.certified, "uncertified P1 for D = " + std::to_string(D));
    c.expect(lattice_route.isomorphic_to(form_route), "groups differ for D = " + std::to_string(D));
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  MESSAGE(fields << " discriminants in " << seconds << " s");
  c.expect(fields == 184, "unexpected number of fundamental discriminants: " + std::to_string(fields));
  c.expect(seconds < 60, "runtime over 60 s");
}

TEST_CASE("criterion 2: rho has dimension h and is irreducible") {
  Criterion c(2);
  std::mt19937_64 rng(2);
  std::set<Integer> class_numbers;
  for (const auto& field : test_fields()) {
    const auto model = class_model(field, model_bound(field));
    const auto h = *narrow_class_group(field).order();
    class_numbers.insert(h);
    for (int i = 0; i < 20; ++i) {
      const auto rep = build_rho(model, random_character(model.p1.window.primes.size(), rng));
      c.expect(Integer(rep.dimension) == h, name(field) + ": dimension differs from h");
      c.expect(check_irreducible(rep), name(field) + ": reducible");
    }
    for (int m = 0; m <= 8; ++m) {
      c.expect(unbounded_dimension_witness(model.p1.window, 0, m) == static_cast<std::size_t>(m + 1),
               name(field) + ": witness rank differs at m = " + std::to_string(m));
    }
  }
  c.expect(class_numbers == std::set<Integer>{1, 2, 3, 4}, "class numbers do not span 1..4");
}

TEST_CASE("criterion 3: equivalence classification") {
  Criterion c(3);
  std::mt19937_64 rng(3);
  for (const auto& field : test_fields()) {
    const auto model = class_model(field, model_bound(field));
    const auto chars = characters_of(model.classes);
    const std::size_t n = model.p1.window.primes.size();
    int equivalent = 0;
    for (int trial = 0; trial < 200; ++trial) {
      const auto gamma = random_character(n, rng);
      const auto delta = trial % 2 == 0 ? gamma * pulled_back(model, chars[rng() % chars.size()])
                                        : random_character(n, rng);
      const bool expected = pairs_trivially_with_p1(model, gamma, delta);
      const bool decided = are_equivalent(model, gamma, delta);
      c.expect(decided == expected, name(field) + ": are_equivalent disagrees with the P1 pairing");
      c.expect(expected == (trial % 2 == 0), name(field) + ": sampled pair has the wrong pairing");
      if (decided) {
        ++equivalent;
        const auto w = find_intertwiner(build_rho(model, gamma), build_rho(model, delta));
        c.expect(w.has_value() && w->residual <= 1e-8, name(field) + ": no intertwiner with residual <= 1e-8");
      }
    }
    c.expect(equivalent == 100, name(field) + ": expected 100 equivalent pairs");
  }
}

TEST_CASE("criterion 4: time evolution") {
  Criterion c(4);
  std::mt19937_64 rng(4);
  const std::vector<TimeValue> times{TimeValue{}, TimeValue::seconds(1), TimeValue::pi_times(1), TimeValue::pi_times(2)};
  for (const auto& field : test_fields()) {
    const auto model = class_model(field, model_bound(field));
    const auto gamma = random_character(model.p1.window.primes.size(), rng);
    const auto rep = build_rho(model, gamma);
    c.expect(same_phases(time_evolve(rep, TimeValue{}), rep), name(field) + ": t = 0 is not the identity");
    for (const auto& t : times) {
      const auto moved = time_evolve(rep, t);
      const auto rebuilt = build_rho(model, time_evolve(gamma, model.p1.window, t));
      c.expect(same_phases(moved, rebuilt), name(field) + ": evolution differs from rho at the shifted character");
      for (const auto& s : times) {
        c.expect(same_phases(time_evolve(moved, s), time_evolve(rep, t + s)), name(field) + ": group law fails");
      }
    }
  }
}

TEST_CASE("criterion 5: induced Gram rank and canonical basis") {
  Criterion c(5);
  std::mt19937_64 rng(5);
  int instances = 0;
  while (instances < 50) {
    const Eigen::Index r = 1 + static_cast<Eigen::Index>(rng() % 3);
    IntMatrix basis = IntMatrix::Zero(r, r);
    long index = 1;
    for (Eigen::Index i = 0; i < r; ++i) {
      basis(i, i) = 1 + static_cast<long>(rng() % 4);
      index *= static_cast<long>(basis(i, i));
      for (Eigen::Index j = i + 1; j < r; ++j) basis(i, j) = static_cast<long>(rng() % 7) - 3;
    }
    if (index > 8) continue;
    ++instances;
    const Lattice sub(r, basis);
    // The box [0, d_1) x ... x [0, d_r) meets every coset once.
    std::vector<IntVector> box{IntVector::Zero(r)};
    for (Eigen::Index i = 0; i < r; ++i) {
      std::vector<IntVector> next;
      for (const auto& v : box) {
        for (long k = 0; k < basis(i, i); ++k) {
          IntVector w = v;
          w(i) = k;
          next.push_back(w);
        }
      }
      box = next;
    }
    std::vector<IntVector> shifted, window = box;
    for (const auto& v : box) {
      IntVector w = v;
      for (Eigen::Index i = 0; i < r; ++i) w += Integer(static_cast<long>(rng() % 5) - 2) * IntVector(basis.row(i).transpose());
      shifted.push_back(w);
      if (std::find(window.begin(), window.end(), w) == window.end()) window.push_back(w);
    }
    const auto gamma = random_character(static_cast<std::size_t>(r), rng);
    const auto gram = induced_gram(r, sub, gamma, window);
    c.expect(Integer(gram.rank()) == sub.index(), "Gram rank differs from the index");
    const auto a = canonical_onb(gram, box), b = canonical_onb(gram, shifted);
    // In the induced space e_s = gamma(s) u for the unit vector u of the coset of s,
    // so sum_s c_s gamma(s) is the coordinate of sum_s c_s e_s on that coset.
    const auto coordinates = [&](const ComplexVector& v) {
      ComplexVector out = ComplexVector::Zero(static_cast<Eigen::Index>(box.size()));
      for (std::size_t s = 0; s < window.size(); ++s) {
        for (std::size_t i = 0; i < box.size(); ++i) {
          if (sub.contains(IntVector(window[s] - box[i]))) out(static_cast<Eigen::Index>(i)) += v(static_cast<Eigen::Index>(s)) * gamma.value(window[s]);
        }
      }
      return out;
    };
    for (std::size_t i = 0; i < a.size(); ++i) {
      c.expect((coordinates(a[i]) - coordinates(b[i])).cwiseAbs().maxCoeff() <= 1e-12, "canonical vector depends on the representative");
      for (std::size_t j = 0; j < a.size(); ++j) {
        c.expect(std::abs(gram.inner(a[i], a[j]) - (i == j ? 1.0 : 0.0)) <= 1e-12, "canonical vectors not orthonormal");
      }
    }
  }
}

TEST_CASE("criterion 6: split recovery agrees with the Kronecker symbol") {
  Criterion c(6);
  const Integer ceiling = 1000000;
  Integer largest = 0;
  for (long d : {-1L, -2L, -3L, -5L, -6L, -7L, -10L, -11L, -14L, -23L, 2L, 3L, 5L, 6L, 7L, 10L, 13L, 15L, 17L, 21L}) {
    const auto field = FieldSpec::quadratic(d);
    for (Prime p : primes_up_to(499)) {
      const auto r = recover_split_escalating(field, p, ceiling);
      const bool inert = kronecker_symbol(field.discriminant, p) == -1;
      c.expect((r.verdict == SplitVerdict::inert) == inert, name(field) + ": wrong verdict at p = " + std::to_string(p));
      c.expect(r.bound <= ceiling, "bound above the ceiling");
      largest = std::max(largest, r.bound);
    }
  }
  MESSAGE("largest bound used: " << largest);
}

TEST_CASE("criterion 7: distinct quadratic fields are distinguished") {
  Criterion c(7);
  std::vector<FieldSpec> fields;
  for (long D = -200; D <= 200; ++D) {
    if (is_fundamental_discriminant(D)) fields.push_back(FieldSpec::from_discriminant(D));
  }
  std::size_t pairs = 0, indistinguishable = 0;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    for (std::size_t j = i + 1; j < fields.size(); ++j) {
      ++pairs;
      const auto cmp = compare_fields(fields[i], fields[j], 200);
      if (!cmp.distinguished || cmp.witness.empty()) {
        ++indistinguishable;
        c.expect(false, name(fields[i]) + " and " + name(fields[j]) + " not distinguished");
      }
    }
  }
  MESSAGE(pairs << " pairs, " << indistinguishable << " indistinguishable");
}

TEST_CASE("criterion 8: CRT orbit solver") {
  Criterion c(8);
  std::mt19937_64 rng(8);
  for (const auto& field : {FieldSpec::rational(), FieldSpec::quadratic(3)}) {
    const bool quadratic = field.kind == FieldKind::quadratic;
    const Integer D = field.discriminant;
    const Integer delta = quadratic && floor_mod(D, Integer(4)) == 1 ? 1 : 0;
    const Integer cw = quadratic ? Integer((D - delta) / 4) : Integer(0);  // w^2 = delta w + cw
    const std::vector<Prime> primes{2, 3, 5, 7, 11};
    const unsigned k = 2;
    int solved = 0, violated = 0;
    for (int trial = 0; trial < 400; ++trial) {
      ResidueVector rho{primes, k, {}}, sigma{primes, k, {}};
      const bool violate = trial % 2 == 1;
      const std::size_t bad = rng() % primes.size();
      for (std::size_t i = 0; i < primes.size(); ++i) {
        const long m = static_cast<long>(primes[i] * primes[i]);
        std::uniform_int_distribution<long> any(0, m - 1);
        std::pair<Integer, Integer> r, s{any(rng), quadratic ? any(rng) : 0};
        do {
          r = {any(rng), quadratic ? any(rng) : 0};
        } while ((r.first * r.first + delta * r.first * r.second - cw * r.second * r.second) % static_cast<long>(primes[i]) == 0);
        const bool zero_here = rng() % 3 == 0 || (violate && i == bad);
        if (zero_here) {
          r = {0, 0};
          if (!(violate && i == bad)) s = {0, 0};
          if (violate && i == bad && s.first == 0 && s.second == 0) s.first = 1;
        }
        rho.residues.push_back(r);
        sigma.residues.push_back(s);
      }
      const auto out = crt_orbit_solver(field, rho, sigma);
      c.expect(out.lambda.has_value() == !violate, name(field) + ": solver outcome does not match the support condition");
      if (!out.lambda) {
        ++violated;
        continue;
      }
      ++solved;
      // Direct check: lambda rho = sigma modulo p^k, lambda totally positive.
      const Integer u = out.lambda->u, v = out.lambda->v;
      const Integer x = quadratic ? Integer((u - delta * v) / 2) : Integer(u / 2), y = v;
      for (std::size_t i = 0; i < primes.size(); ++i) {
        const Integer m = Integer(primes[i]) * primes[i];
        const auto& [a, b] = rho.residues[i];
        const Integer px = x * a + cw * y * b, py = x * b + y * a + delta * y * b;
        c.expect(floor_mod(px - sigma.residues[i].first, m) == 0 && floor_mod(py - sigma.residues[i].second, m) == 0,
                 name(field) + ": lambda rho differs from sigma");
      }
      const bool positive = quadratic ? u > 0 && u * u > v * v * D : v == 0 && u > 0;
      c.expect(positive, name(field) + ": lambda not totally positive");
    }
    c.expect(solved == 200 && violated == 200, name(field) + ": expected 200 solved and 200 violating instances");
  }
}

TEST_CASE("criterion 9: separation trichotomy and trivial Gamma_S over Q") {
  Criterion c(9);
  const auto subsets = power_set(5);
  for (const auto& a : subsets) {
    for (const auto& b : subsets) {
      const auto r = separation_relation(a, b);
      const bool ab = std::includes(b.begin(), b.end(), a.begin(), a.end());
      const bool ba = std::includes(a.begin(), a.end(), b.begin(), b.end());
      switch (r.relation) {
        case Separation::equal:
          c.expect(a == b, "equal verdict on different sets");
          break;
        case Separation::first_specializes_to_second:
          c.expect(ab && !ba, "wrong specialization verdict");
          break;
        case Separation::second_specializes_to_first:
          c.expect(ba && !ab, "wrong specialization verdict");
          break;
        case Separation::separated: {
          c.expect(!ab && !ba, "separated verdict on comparable sets");
          const bool inside_first = std::includes(a.begin(), a.end(), r.open_around_second.begin(), r.open_around_second.end());
          const bool inside_second = std::includes(b.begin(), b.end(), r.open_around_first.begin(), r.open_around_first.end());
          c.expect(inside_first && inside_second, "witness not drawn from the set differences");
          c.expect(in_basic_open(b, r.open_around_second) && !in_basic_open(a, r.open_around_second), "invalid witness");
          c.expect(in_basic_open(a, r.open_around_first) && !in_basic_open(b, r.open_around_first), "invalid witness");
          break;
        }
      }
      if (!ab && !ba) c.expect(r.relation == Separation::separated, "incomparable sets not separated");
    }
  }
  // S runs over proper subsets of the first five primes; primes up to 50 impose the congruences.
  const auto T = enumerate_primes(FieldSpec::rational(), 50);
  for (unsigned k : {2U, 3U}) {
    for (const auto& S : subsets) {
      if (S.size() == 5) continue;
      c.expect(gamma_S_approx(T, S, k, 10000).lattice.rank() == 0, "nontrivial Gamma_S over Q");
    }
  }
}

TEST_CASE("criterion 10: arithmetically equivalent octic fixtures") {
  Criterion c(10);
  const auto left = (kSource / "tests" / "fixtures" / "octic_m15.field").string();
  const auto right = (kSource / "tests" / "fixtures" / "octic_m240.field").string();
  const auto K = load_field(left), L = load_field(right);
  const auto hK = *narrow_class_group(K).order(), hL = *narrow_class_group(L).order();
  c.expect(hK == 2 * hL, "class number ratio is not 2");
  std::map<Integer, int> nK, nL;
  for (const auto& P : enumerate_primes(K, K.table->bound).primes) ++nK[P.norm_value()];
  for (const auto& P : enumerate_primes(L, L.table->bound).primes) ++nL[P.norm_value()];
  c.expect(nK == nL, "prime norm multisets differ");
  const auto report = run({"compare", "--left", left, "--right", right, "--bound", "200"});
  c.expect(report.code == 0, "compare failed");
  if (report.code == 0) {
    const auto j = nlohmann::json::parse(report.out);
    c.expect(j["left"]["provenance"] == "ingested, not computed", "left field not marked as ingested");
    c.expect(j["right"]["provenance"] == "ingested, not computed", "right field not marked as ingested");
    c.expect(j["verdict"] == "distinguished" && j["invariant"] == "narrow_class_number", "fixtures not told apart by h");
  }
}

int main(int argc, char** argv) {
  doctest::Context context(argc, argv);
  const int status = context.run();
  if (context.shouldExit()) return status;
  int failed = 0;
  for (int n = 1; n <= 10; ++n) {
    const auto it = outcomes().find(n);
    const bool pass = it != outcomes().end() && it->second;
    if (!pass) ++failed;
    std::cout << "criterion " << n << ": " << (pass ? "PASS" : "FAIL") << (it == outcomes().end() ? " (not run)" : "")
              << "\n";
  }
  return status != 0 || failed != 0 ? 1 : 0;
}
