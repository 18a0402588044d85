#include "bcs/cli.hpp"

#include "bcs/arithmetic.hpp"
#include "bcs/dynamics.hpp"
#include "bcs/field_io.hpp"
#include "bcs/prim_space.hpp"
#include "bcs/representations.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <sstream>

namespace bcs {
namespace {

using Json = nlohmann::ordered_json;

Json integers(const std::vector<Integer>& xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(to_long(x));
  return out;
}

Json matrix_rows(const IntMatrix& m) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_long(m(i, j)));
    out.push_back(row);
  }
  return out;
}

std::string provenance(const FieldSpec& field) {
  return field.kind == FieldKind::table ? "ingested, not computed" : "computed";
}

Json field_summary(const FieldSpec& field) {
  Json j;
  j["id"] = field.id();
  j["degree"] = field.degree;
  if (field.kind == FieldKind::quadratic) j["discriminant"] = to_long(field.discriminant);
  j["provenance"] = provenance(field);
  if (field.kind == FieldKind::table) j["source"] = field.table->provenance;
  return j;
}

// P1 lattice through the cache; only certified lattices are stored.
TruncatedP1 cached_p1(const FieldSpec& field, const Integer& B, const Cache& cache, std::string& status) {
  const CacheKey key{field.id(), B, "p1"};
  PrimeWindow window = enumerate_primes(field, B);
  if (auto hit = cache.load(key)) {
    status = "hit";
    TruncatedP1 p1;
    p1.window = std::move(window);
    p1.lattice = *hit;
    p1.certified = true;
    return p1;
  }
  status = cache.enabled() ? "miss" : "disabled";
  auto p1 = truncated_P1(window);
  if (p1.certified) cache.store(key, p1.lattice);
  return p1;
}

Rational parse_rational(const std::string& s) {
  try {
    return Rational(s);
  } catch (const std::exception&) {
    throw CLI::ValidationError("time", "expected a rational number, got '" + s + "'");
  }
}

ZeroSet parse_indices(const std::string& s) {
  ZeroSet out;
  std::istringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.insert(std::stoul(item));
  }
  return out;
}

Json zero_set_json(const PrimeWindow& w, const ZeroSet& S) {
  Json out = Json::array();
  for (auto i : S) out.push_back(w.primes.at(i).label);
  return out;
}

void print_pretty(const Json& j, const std::string& prefix, std::ostream& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      print_pretty(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    }
  } else {
    out << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

Json classgroup_report(const FieldSpec& field, const Integer& requested, const Cache& cache) {
  Json r;
  r["command"] = "classgroup";
  r["field"] = field_summary(field);
  const auto group = narrow_class_group(field);
  r["h_narrow"] = to_long(*group.order());
  r["structure"] = integers(group.invariant_factors());
  if (field.kind == FieldKind::table) {
    const Integer B = std::min<Integer>(requested, field.table->bound);
    const auto p1 = truncated_P1(enumerate_primes(field, B), false);
    const auto truncated = narrow_class_group_truncated(p1);
    r["stabilized_at"] = nullptr;
    r["bounds"] = {{"requested", to_long(requested)}, {"used", to_long(B)}, {"table_bound", field.table->bound}};
    r["lattice_route"] = {{"structure", integers(truncated.invariant_factors())},
                          {"agrees", truncated.isomorphic_to(group)},
                          {"relations_checked", field.table->relations.size()}};
    r["stabilization"] = {{"flag", "not applicable: ingested class data"}};
    return r;
  }
  if (field.kind == FieldKind::quadratic) {
    Json reps = Json::array();
    for (const auto& f : form_class_group(field.discriminant).representatives()) {
      reps.push_back({to_long(f.a), to_long(f.b), to_long(f.c)});
    }
    r["representatives"] = reps;
  }
  const auto stab = stabilization(field);
  r["stabilized_at"] = to_long(stab.empirical_bound);
  std::string cache_status;
  const auto p1 = cached_p1(field, requested, cache, cache_status);
  const auto truncated = narrow_class_group_truncated(p1);
  r["bounds"] = {{"requested", to_long(requested)}, {"guard", to_long(stab.guard)}};
  r["stabilization"] = {{"flag", "empirical: first bound followed by three unchanged increments"},
                        {"agrees_with_guard", stab.agrees_with_guard},
                        {"requested_bound_stabilized", requested >= stab.empirical_bound}};
  r["lattice_route"] = {{"structure", integers(truncated.invariant_factors())},
                        {"agrees", truncated.isomorphic_to(group)},
                        {"certified", p1.certified},
                        {"cache", cache_status}};
  return r;
}

Json reps_report(const FieldSpec& field, const Integer& B, int samples, std::uint64_t seed) {
  const auto model = class_model(field, B);
  std::mt19937_64 rng(seed);
  Json r;
  r["command"] = "reps";
  r["field"] = field_summary(field);
  r["bound"] = to_long(B);
  r["seed"] = seed;
  r["h_narrow"] = model.size();
  int irreducible = 0, agree = 0;
  double unitarity = 0, residual = 0;
  std::size_t dimension = 0;
  const Eigen::Index n = static_cast<Eigen::Index>(model.size());
  for (int s = 0; s < samples; ++s) {
    const auto gamma = random_character(model.p1.window.primes.size(), rng);
    const auto rep = build_rho(model, gamma);
    dimension = rep.dimension;
    irreducible += check_irreducible(rep);
    for (std::size_t i = 0; i < rep.generators.size(); ++i) {
      const ComplexMatrix U = rep.generator_matrix(i);
      unitarity = std::max(unitarity, (U.adjoint() * U - ComplexMatrix::Identity(n, n)).cwiseAbs().maxCoeff());
    }
    const auto delta = random_character(model.p1.window.primes.size(), rng);
    const bool equivalent = are_equivalent(model, gamma, delta);
    const auto w = find_intertwiner(rep, build_rho(model, delta));
    agree += equivalent == w.has_value();
    if (w) residual = std::max(residual, w->residual);
  }
  r["dimension"] = dimension;
  r["samples"] = samples;
  r["irreducible"] = irreducible;
  r["max_unitarity_error"] = unitarity;
  r["equivalence_agrees_with_intertwiner_solve"] = agree;
  r["max_intertwiner_residual"] = residual;
  return r;
}

Json dynamics_report(const FieldSpec& field, const Integer& B, const TimeValue& t, const Cache& cache) {
  Json r;
  r["command"] = "dynamics";
  r["field"] = field_summary(field);
  std::string cache_status = "disabled";
  const auto p1 = field.kind == FieldKind::table ? truncated_P1(enumerate_primes(field, B), false)
                                                 : cached_p1(field, B, cache, cache_status);
  const auto flow = build_flow(p1);
  Json freqs = Json::array();
  Json phases = Json::array();
  for (const auto& f : flow.frequencies) {
    freqs.push_back(f.str());
    phases.push_back(AngleExpr().shifted(t, f).evaluate());
  }
  r["bound"] = to_long(B);
  r["free_rank"] = flow.free_rank;
  r["fixed_rank"] = flow.fixed_rank;
  r["frequencies"] = freqs;
  r["frequencies_independent"] = check_frequency_independence(flow.frequencies);
  r["time"] = t.value();
  r["phases_at_time"] = phases;
  const auto ni = norm_image(p1);
  Json primes = Json::array();
  for (Prime p : ni.primes) primes.push_back(p);
  r["norm_image"] = {{"primes", primes}, {"hnf", matrix_rows(ni.lattice.basis())}};
  r["cache"] = cache_status;
  return r;
}

Json prim_report(const FieldSpec& field, const Integer& B, const ZeroSet& S, const std::optional<ZeroSet>& other,
                 unsigned precision, const Integer& height) {
  const auto window = enumerate_primes(field, B);
  for (auto i : S) {
    if (static_cast<Eigen::Index>(i) >= window.size()) throw std::invalid_argument("zero set index outside the window");
  }
  Json r;
  r["command"] = "prim";
  r["field"] = field_summary(field);
  Json labels = Json::array();
  for (const auto& P : window.primes) labels.push_back(P.label);
  r["window"] = labels;
  r["zero_set"] = zero_set_json(window, S);
  const auto gamma = gamma_S_approx(window, S, precision, height);
  const auto point = make_prim_point(window, S, gamma.lattice, Character::trivial(static_cast<std::size_t>(gamma.lattice.rank())));
  r["gamma_S"] = {{"status", "approximant"},
                  {"precision", precision},
                  {"height", to_long(height)},
                  {"rank", gamma.lattice.rank()},
                  {"basis", matrix_rows(gamma.lattice.basis())},
                  {"stable_under_halving_height", gamma.stable}};
  r["flow_fixes_point"] = point.is_fixed();
  if (other) {
    const auto sep = separation_relation(S, *other);
    r["other_zero_set"] = zero_set_json(window, *other);
    r["separation"] = {{"relation", to_string(sep.relation)},
                       {"open_around_other", zero_set_json(window, sep.open_around_second)},
                       {"open_around_this", zero_set_json(window, sep.open_around_first)}};
  }
  return r;
}

Json split_report(const FieldSpec& field, Prime p, const Integer& ceiling) {
  Json r;
  r["command"] = "split-recover";
  r["field"] = field_summary(field);
  r["prime"] = p;
  const auto rec = recover_split_escalating(field, p, ceiling);
  r["verdict"] = to_string(rec.verdict);
  r["g"] = to_long(rec.g);
  r["bound"] = to_long(rec.bound);
  r["window_size"] = rec.window_size;
  if (field.kind == FieldKind::rational) {
    r["oracle"] = "degree one: every prime counts as split";
    r["oracle_agrees"] = rec.verdict == SplitVerdict::not_inert;
  } else {
    const auto st = split_type(field, p);
    r["oracle"] = to_string(st);
    r["oracle_agrees"] = (st == SplitType::inert) == (rec.verdict == SplitVerdict::inert);
  }
  r["interpretation"] = "non-split read as inert; ramified primes count as not_inert";
  return r;
}

Json compare_report(const FieldSpec& left, const FieldSpec& right, const Integer& B) {
  const auto c = compare_fields(left, right, B);
  Json r;
  r["command"] = "compare";
  r["left"] = field_summary(left);
  r["right"] = field_summary(right);
  r["left"]["h_narrow"] = to_long(*narrow_class_group(left).order());
  r["right"]["h_narrow"] = to_long(*narrow_class_group(right).order());
  r["bound"] = to_long(B);
  r["verdict"] = c.distinguished ? "distinguished" : "indistinguishable_at_bound";
  r["invariant"] = c.invariant;
  r["witness"] = c.witness;
  return r;
}

Json selftest_report() {
  Json checks = Json::array();
  bool all = true;
  auto check = [&](const std::string& name, bool ok) {
    checks.push_back({{"check", name}, {"passed", ok}});
    all = all && ok;
  };
  check("class number of Q(sqrt -5) is 2", form_class_group(-20).class_number() == 2);
  check("narrow class number of Q(sqrt 3) is 2", form_class_group(12).class_number() == 2);
  check("lattice route agrees for Q(sqrt -5)",
        narrow_class_group_truncated(FieldSpec::quadratic(-5), 25).isomorphic_to(form_class_group(-20).group()));
  check("11 is recovered as inert in Q(sqrt -5)",
        recover_split_escalating(FieldSpec::quadratic(-5), 11).verdict == SplitVerdict::inert);
  check("3 is recovered as not inert in Q(sqrt -5)",
        recover_split_escalating(FieldSpec::quadratic(-5), 3).verdict == SplitVerdict::not_inert);
  const auto model = class_model(FieldSpec::quadratic(-5), 5);
  check("rho is irreducible for Q(sqrt -5)", check_irreducible(build_rho(model, Character::trivial(4))));
  Json r;
  r["command"] = "selftest";
  r["checks"] = checks;
  r["passed"] = all;
  return r;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Class-group, representation and flow invariants of Bost-Connes systems for Q and quadratic fields"};
  app.require_subcommand(1);
  bool pretty = false, no_cache = false;
  app.add_flag("--pretty", pretty, "Human-readable output instead of JSON");
  app.add_flag("--no-cache", no_cache, "Neither read nor write the cache (directory from BCS_CACHE_DIR)");
  app.fallthrough();

  std::string field_path, left_path, right_path, time_real = "0", time_pi = "0", zero_set, other_zero_set;
  long bound = 50, ceiling = 1000000, height = 10000;
  unsigned precision = 2;
  int samples = 20;
  std::uint64_t seed = 1;
  Prime prime = 0;

  auto* classgroup = app.add_subcommand("classgroup", "Narrow class group by forms and by ideal lattices");
  classgroup->add_option("--field", field_path, "Field file")->required();
  classgroup->add_option("--bound", bound, "Prime norm bound")->check(CLI::PositiveNumber);

  auto* reps = app.add_subcommand("reps", "Finite-dimensional irreducible representations");
  reps->add_option("--field", field_path, "Field file")->required();
  reps->add_option("--bound", bound, "Prime norm bound")->check(CLI::PositiveNumber);
  reps->add_option("--samples", samples, "Sampled characters")->check(CLI::PositiveNumber);
  reps->add_option("--seed", seed, "Random seed");

  auto* dynamics = app.add_subcommand("dynamics", "Flow frequencies and norm-image lattice");
  dynamics->add_option("--field", field_path, "Field file")->required();
  dynamics->add_option("--bound", bound, "Prime norm bound")->check(CLI::PositiveNumber);
  dynamics->add_option("--time", time_real, "Rational part of t");
  dynamics->add_option("--time-pi", time_pi, "Rational multiple of pi added to t");

  auto* prim = app.add_subcommand("prim", "Isotropy approximants and separation of zero sets");
  prim->add_option("--field", field_path, "Field file")->required();
  prim->add_option("--bound", bound, "Prime norm bound of the window")->check(CLI::PositiveNumber);
  prim->add_option("--zero-set", zero_set, "Comma-separated window indices");
  prim->add_option("--other-zero-set", other_zero_set, "Second zero set for the separation query");
  prim->add_option("--precision", precision, "Congruence precision k");
  prim->add_option("--height", height, "Norm bound of the search")->check(CLI::PositiveNumber);

  auto* split = app.add_subcommand("split-recover", "Decide inertness of p from the norm image of P1");
  split->add_option("--field", field_path, "Field file")->required();
  split->add_option("--prime", prime, "Rational prime")->required();
  split->add_option("--ceiling", ceiling, "Largest bound tried")->check(CLI::PositiveNumber);

  auto* compare = app.add_subcommand("compare", "Try to distinguish two fields");
  compare->add_option("--left", left_path, "Field file")->required();
  compare->add_option("--right", right_path, "Field file")->required();
  compare->add_option("--bound", bound, "Prime norm bound")->check(CLI::PositiveNumber);

  auto* selftest = app.add_subcommand("selftest", "Quick end-to-end checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    const int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? 0 : 1;
  }

  try {
    const Cache cache = no_cache ? Cache(std::nullopt) : Cache::from_environment();
    Json report;
    if (*classgroup) {
      report = classgroup_report(load_field(field_path), bound, cache);
    } else if (*reps) {
      report = reps_report(load_field(field_path), bound, samples, seed);
    } else if (*dynamics) {
      report = dynamics_report(load_field(field_path), bound, TimeValue{parse_rational(time_real), parse_rational(time_pi)},
                               cache);
    } else if (*prim) {
      std::optional<ZeroSet> other;
      if (!other_zero_set.empty()) other = parse_indices(other_zero_set);
      report = prim_report(load_field(field_path), bound, parse_indices(zero_set), other, precision, height);
    } else if (*split) {
      if (!is_prime(prime)) throw std::invalid_argument(std::to_string(prime) + " is not prime");
      report = split_report(load_field(field_path), prime, ceiling);
    } else if (*compare) {
      report = compare_report(load_field(left_path), load_field(right_path), bound);
    } else if (*selftest) {
      report = selftest_report();
    }
    if (pretty) {
      print_pretty(report, "", out);
    } else {
      out << report.dump(2) << "\n";
    }
    if (*selftest && !report["passed"].get<bool>()) return 1;
    return 0;
  } catch (const BoundTooSmall& e) {
    err << "bound too small: " << e.what() << "\n";
    return 2;
  } catch (const IngestionError& e) {
    err << "ingestion error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace bcs
