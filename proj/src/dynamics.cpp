#include "bcs/dynamics.hpp"

#include <algorithm>
#include <sstream>

namespace bcs {

FlowModel build_flow(const TruncatedP1& p1) {
  const auto dec = decompose_P1(p1);
  FlowModel flow;
  flow.free_rank = dec.free_basis.size();
  flow.fixed_rank = dec.kernel_basis.size();
  for (std::size_t j = 0; j < dec.free_basis.size(); ++j) {
    if (dec.free_norms[j].compare_to_one() < 0) {
      flow.free_basis.push_back(-dec.free_basis[j]);
      flow.frequencies.push_back(dec.free_norms[j].inverse());
    } else {
      flow.free_basis.push_back(dec.free_basis[j]);
      flow.frequencies.push_back(dec.free_norms[j]);
    }
  }
  return flow;
}

bool check_frequency_independence(const std::vector<FactoredRational>& frequencies) {
  if (frequencies.empty()) return true;
  std::vector<Prime> primes;
  for (const auto& f : frequencies) {
    for (const auto& [p, e] : f.exponents()) primes.push_back(p);
  }
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  IntMatrix M = IntMatrix::Zero(static_cast<Eigen::Index>(frequencies.size()), static_cast<Eigen::Index>(primes.size()));
  for (std::size_t i = 0; i < frequencies.size(); ++i) {
    for (std::size_t j = 0; j < primes.size(); ++j) M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = frequencies[i].exponent(primes[j]);
  }
  if (M.cols() < M.rows()) return false;
  const auto snf = smith_normal_form(M);
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    if (snf.D(i, i) == 0) return false;
  }
  return true;
}

Lattice NormImageLattice::embedded(const std::vector<Prime>& coordinates) const {
  const auto n = static_cast<Eigen::Index>(coordinates.size());
  IntMatrix rows = IntMatrix::Zero(lattice.rank(), n);
  for (std::size_t j = 0; j < primes.size(); ++j) {
    auto it = std::find(coordinates.begin(), coordinates.end(), primes[j]);
    if (it == coordinates.end()) throw std::invalid_argument("coordinate list misses a prime of the lattice");
    rows.col(it - coordinates.begin()) = lattice.basis().col(static_cast<Eigen::Index>(j));
  }
  return Lattice(n, rows);
}

NormImageLattice norm_image(const TruncatedP1& p1) {
  NormImageLattice out;
  out.field = p1.window.field;
  out.bound = p1.window.bound;
  out.primes = p1.window.rational_primes();
  const IntMatrix images = p1.lattice.basis() * p1.window.norm_matrix();
  out.lattice = Lattice(static_cast<Eigen::Index>(out.primes.size()), images);
  return out;
}

const char* to_string(SplitVerdict v) { return v == SplitVerdict::inert ? "inert" : "not_inert"; }

SplitVerdict recover_split(const NormImageLattice& norms, Prime p, int degree, Integer* g_out) {
  auto it = std::find(norms.primes.begin(), norms.primes.end(), p);
  if (it == norms.primes.end()) {
    throw BoundTooSmall("no prime above " + std::to_string(p) + " in the window of bound " + norms.bound.str());
  }
  const auto col = it - norms.primes.begin();
  Integer g = 0;
  for (Eigen::Index i = 0; i < norms.lattice.rank(); ++i) g = gcd_value(g, norms.lattice.basis()(i, col));
  if (g_out) *g_out = g;
  if (g == 0) throw BoundTooSmall("no narrowly principal ideal meets " + std::to_string(p) + " at bound " + norms.bound.str());
  if (degree == 1) return SplitVerdict::not_inert;
  return g >= degree ? SplitVerdict::inert : SplitVerdict::not_inert;
}

SplitRecovery recover_split_escalating(const FieldSpec& field, Prime p, const Integer& ceiling) {
  const Integer base = guard_bound(field);
  const auto above = prime_ideal_above(field, p);
  for (Integer B = std::max<Integer>(Integer(p), base); B <= ceiling; B *= 2) {
    PrimeWindow window = enumerate_primes(field, std::min(B, base));
    std::vector<PrimeIdealData> extra;
    for (const auto& P : above) {
      const bool present = std::any_of(window.primes.begin(), window.primes.end(),
                                       [&](const PrimeIdealData& Q) { return Q.p == p && Q.label == P.label; });
      if (P.norm_value() <= B && !present) extra.push_back(P);
    }
    window.primes.insert(window.primes.end(), extra.begin(), extra.end());
    window.bound = B;
    try {
      const auto p1 = truncated_P1(window);
      Integer g;
      const auto verdict = recover_split(norm_image(p1), p, field.degree, &g);
      return {verdict, g, B, window.size()};
    } catch (const BoundTooSmall&) {
      continue;
    }
  }
  throw BoundTooSmall("split recovery for " + std::to_string(p) + " in " + field.id() + " exceeded the bound " +
                      ceiling.str());
}

namespace {

Integer class_number(const FieldSpec& field) {
  const auto order = narrow_class_group(field).order();
  return order ? *order : Integer(0);
}

std::vector<Prime> union_of(std::vector<Prime> a, const std::vector<Prime>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

std::string describe(const IntVector& v, const std::vector<Prime>& primes) {
  FactoredRational n;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (v(i) != 0) n *= FactoredRational::prime_power(primes[static_cast<std::size_t>(i)], v(i));
  }
  return n.str();
}

}  // namespace

Comparison compare_fields(const FieldSpec& left, const FieldSpec& right, const Integer& B) {
  Comparison out;
  const Integer hl = class_number(left), hr = class_number(right);
  if (hl != hr) {
    out.distinguished = true;
    out.invariant = "narrow_class_number";
    out.witness = "h = " + hl.str() + " vs " + hr.str();
    return out;
  }
  const auto wl = enumerate_primes(left, B), wr = enumerate_primes(right, B);
  // Euler factor check: multisets of prime-ideal norms.
  std::vector<Integer> nl, nr;
  for (const auto& P : wl.primes) nl.push_back(P.norm_value());
  for (const auto& P : wr.primes) nr.push_back(P.norm_value());
  if (nl != nr) {
    std::size_t i = 0;
    while (i < nl.size() && i < nr.size() && nl[i] == nr[i]) ++i;
    const Integer first = i < nl.size() ? (i < nr.size() ? std::min(nl[i], nr[i]) : nl[i]) : nr[i];
    const auto count = [&](const std::vector<Integer>& ns) { return std::count(ns.begin(), ns.end(), first); };
    out.distinguished = true;
    out.invariant = "prime_norms";
    out.witness = "primes of norm " + first.str() + ": " + std::to_string(count(nl)) + " vs " + std::to_string(count(nr));
    return out;
  }
  if (left.kind != FieldKind::table && right.kind != FieldKind::table) {
    const auto il = norm_image(truncated_P1(wl, false)), ir = norm_image(truncated_P1(wr, false));
    const auto coords = union_of(il.primes, ir.primes);
    const Lattice ll = il.embedded(coords), lr = ir.embedded(coords);
    if (!(ll == lr)) {
      out.distinguished = true;
      out.invariant = "norm_image";
      for (Eigen::Index i = 0; i < ll.rank(); ++i) {
        if (!lr.contains(ll.basis_vector(i))) {
          out.witness = "norm " + describe(ll.basis_vector(i), coords) + " lies in N(P1) of the left field only";
          return out;
        }
      }
      for (Eigen::Index i = 0; i < lr.rank(); ++i) {
        if (!ll.contains(lr.basis_vector(i))) {
          out.witness = "norm " + describe(lr.basis_vector(i), coords) + " lies in N(P1) of the right field only";
          return out;
        }
      }
    }
  }
  out.invariant = "none";
  return out;
}

}  // namespace bcs
