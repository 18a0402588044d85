#include "bcs/ideal_lattice.hpp"

#include "bcs/arithmetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace bcs {

std::vector<Prime> PrimeWindow::rational_primes() const {
  std::vector<Prime> out;
  for (const auto& P : primes) out.push_back(P.p);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

IntMatrix PrimeWindow::norm_matrix() const {
  const auto ps = rational_primes();
  IntMatrix out = IntMatrix::Zero(size(), static_cast<Eigen::Index>(ps.size()));
  for (Eigen::Index i = 0; i < size(); ++i) {
    const auto& P = primes[static_cast<std::size_t>(i)];
    auto col = std::lower_bound(ps.begin(), ps.end(), P.p) - ps.begin();
    out(i, col) = P.f;
  }
  return out;
}

Eigen::Index PrimeWindow::position(Prime p) const {
  for (Eigen::Index i = 0; i < size(); ++i) {
    if (primes[static_cast<std::size_t>(i)].p == p) return i;
  }
  return -1;
}

PrimeWindow enumerate_primes(const FieldSpec& field, const Integer& B) { return enumerate_primes(field, B, {}); }

PrimeWindow enumerate_primes(const FieldSpec& field, const Integer& B, const std::vector<Prime>& extra) {
  if (B < 1) throw std::invalid_argument("prime window bound must be positive");
  PrimeWindow window;
  window.field = field;
  window.bound = B;
  if (field.kind == FieldKind::table && B > field.table->bound) {
    throw IngestionError("table data for " + field.table->name + " stops at " + std::to_string(field.table->bound) +
                         ", no data for primes up to " + B.str());
  }
  std::vector<std::pair<std::size_t, PrimeIdealData>> keyed;
  auto add_prime = [&](Prime p, bool all_above) {
    auto above = prime_ideal_above(field, p);
    for (std::size_t k = 0; k < above.size(); ++k) {
      if (all_above || above[k].norm_value() <= B) keyed.emplace_back(keyed.size(), std::move(above[k]));
    }
  };
  const Prime limit = B.convert_to<Prime>();
  std::vector<Prime> rational = primes_up_to(limit);
  for (Prime p : rational) add_prime(p, false);
  for (Prime p : extra) {
    if (p > limit) add_prime(p, true);
  }
  std::stable_sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) {
    if (x.second.norm_value() != y.second.norm_value()) return x.second.norm_value() < y.second.norm_value();
    return x.second.p < y.second.p;
  });
  for (auto& [order, P] : keyed) window.primes.push_back(std::move(P));
  return window;
}

namespace {

// Narrow class of every window prime as a column of a matrix, and the
// invariant factors of the group those columns live in.
std::pair<IntMatrix, std::vector<Integer>> class_map(const PrimeWindow& window) {
  const auto group = narrow_class_group(window.field);
  const auto k = static_cast<Eigen::Index>(group.generator_count());
  IntMatrix C(k, window.size());
  for (Eigen::Index i = 0; i < window.size(); ++i) {
    C.col(i) = window.primes[static_cast<std::size_t>(i)].class_coords;
  }
  return {C, group.invariant_factors()};
}

}  // namespace

TruncatedP1 truncated_P1(const PrimeWindow& window, bool certify) {
  const Eigen::Index n = window.size();
  auto [C, factors] = class_map(window);
  const auto k = static_cast<Eigen::Index>(factors.size());
  IntMatrix f(k, n + k);
  f.leftCols(n) = C;
  f.rightCols(k) = IntMatrix::Zero(k, k);
  for (Eigen::Index i = 0; i < k; ++i) f(i, n + i) = factors[static_cast<std::size_t>(i)];
  const auto ks = kernel_and_section(f);
  TruncatedP1 out;
  out.window = window;
  out.lattice = Lattice(n, IntMatrix(ks.kernel.basis().leftCols(n)));

  if (window.field.kind == FieldKind::table) {
    const auto& t = *window.field.table;
    for (const auto& rel : t.relations) {
      IntVector v = IntVector::Zero(n);
      bool inside = true;
      for (const auto& [index, e] : rel.terms) {
        const Prime q = t.primes[index].p;
        int rank_above = 0;
        for (std::size_t j = 0; j <= index; ++j) rank_above += t.primes[j].p == q;
        const std::string label = std::to_string(q) + "." + std::to_string(rank_above);
        auto it = std::find_if(window.primes.begin(), window.primes.end(),
                               [&](const PrimeIdealData& P) { return P.label == label; });
        if (it == window.primes.end()) {
          inside = false;
          break;
        }
        v(it - window.primes.begin()) += e;
      }
      if (inside && !out.lattice.contains(v)) {
        throw ConsistencyError("ingested relation is not in the kernel of the class map");
      }
    }
    return out;
  }
  if (!certify) return out;

  for (Eigen::Index i = 0; i < out.lattice.rank(); ++i) {
    auto cert = is_totally_positive_principal(window.field, window.primes, out.lattice.basis_vector(i));
    if (!cert) {
      throw ConsistencyError("class map and generator search disagree on a basis vector of P1 for " +
                             window.field.id());
    }
    out.certificates.push_back(std::move(*cert));
  }
  // Maximality: no element of prime order in the quotient is narrowly principal.
  const auto quotient = quotient_group(n, out.lattice);
  for (std::size_t g = 0; g < quotient.generator_count(); ++g) {
    const Integer& d = quotient.invariant_factors()[g];
    for (Prime q : primes_up_to(d.convert_to<Prime>())) {
      if (d % q != 0) continue;
      IntVector v = (d / q) * quotient.generator_lift().row(static_cast<Eigen::Index>(g)).transpose();
      if (is_totally_positive_principal(window.field, window.primes, v)) {
        throw ConsistencyError("generator search found a narrowly principal ideal outside P1 for " +
                               window.field.id());
      }
    }
  }
  out.certified = true;
  return out;
}

TruncatedP1 truncated_P1(const FieldSpec& field, const Integer& B, bool certify) {
  return truncated_P1(enumerate_primes(field, B), certify);
}

FgAbelianGroup narrow_class_group_truncated(const TruncatedP1& p1) {
  return quotient_group(p1.window.size(), p1.lattice);
}

FgAbelianGroup narrow_class_group_truncated(const FieldSpec& field, const Integer& B) {
  return narrow_class_group_truncated(truncated_P1(field, B));
}

FactoredRational norm_map(const PrimeWindow& window, const IntVector& v) {
  if (v.size() != window.size()) throw std::invalid_argument("ideal vector does not match the window");
  FactoredRational out;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (v(i) == 0) continue;
    const auto& P = window.primes[static_cast<std::size_t>(i)];
    out *= FactoredRational::prime_power(P.p, v(i) * P.f);
  }
  return out;
}

P1Decomposition decompose_P1(const TruncatedP1& p1) {
  const IntMatrix& basis = p1.lattice.basis();
  const IntMatrix images = basis * p1.window.norm_matrix();
  const auto ks = kernel_and_section(images.transpose());
  const auto ps = p1.window.rational_primes();
  P1Decomposition out;
  for (Eigen::Index i = 0; i < ks.image_basis.rows(); ++i) {
    out.free_basis.push_back((ks.section.row(i) * basis).transpose());
    FactoredRational n;
    for (Eigen::Index j = 0; j < ks.image_basis.cols(); ++j) {
      if (ks.image_basis(i, j) != 0) n *= FactoredRational::prime_power(ps[static_cast<std::size_t>(j)], ks.image_basis(i, j));
    }
    out.free_norms.push_back(std::move(n));
  }
  for (Eigen::Index i = 0; i < ks.kernel.rank(); ++i) {
    out.kernel_basis.push_back((ks.kernel.basis().row(i) * basis).transpose());
  }
  return out;
}

Integer guard_bound(const FieldSpec& field) {
  if (field.kind != FieldKind::quadratic) return 2;
  const double root = std::sqrt(std::abs(to_double(field.discriminant)));
  const double value = field.discriminant > 0 ? 2 * root : 4 / std::numbers::pi * root;
  return std::max<Integer>(2, Integer(static_cast<long>(std::ceil(value))));
}

StabilizationReport stabilization(const FieldSpec& field) {
  StabilizationReport report;
  report.guard = guard_bound(field);
  // Norms are at least 2, so the candidate bounds are the distinct norms up
  // to a little past the guard; the search extends until three unchanged
  // increments follow a candidate.
  Integer limit = report.guard * 2 + 10;
  std::vector<Integer> norms;
  PrimeWindow full;
  std::optional<std::size_t> found;
  while (true) {
    full = enumerate_primes(field, limit);
    norms.clear();
    for (const auto& P : full.primes) {
      if (norms.empty() || norms.back() != P.norm_value()) norms.push_back(P.norm_value());
    }
    report.history.clear();
    for (const auto& B : norms) {
      PrimeWindow w = full;
      w.bound = B;
      w.primes.erase(std::remove_if(w.primes.begin(), w.primes.end(),
                                    [&](const PrimeIdealData& P) { return P.norm_value() > B; }),
                     w.primes.end());
      report.history.emplace_back(B, narrow_class_group_truncated(truncated_P1(w, false)).invariant_factors());
    }
    for (std::size_t i = 0; i + 3 < report.history.size(); ++i) {
      const auto& g = report.history[i].second;
      if (report.history[i + 1].second == g && report.history[i + 2].second == g && report.history[i + 3].second == g) {
        found = i;
        break;
      }
    }
    if (found && report.history.back().first >= report.guard) break;
    limit *= 2;
  }
  report.empirical_bound = report.history[*found].first;
  const Integer final_bound = std::max(report.guard, report.empirical_bound);
  report.group = narrow_class_group_truncated(field, final_bound);
  report.agrees_with_guard = report.group.invariant_factors() == report.history[*found].second;
  return report;
}

}  // namespace bcs
