#pragma once

#include "bcs/types.hpp"

#include <memory>
#include <string>
#include <vector>

namespace bcs {

enum class FieldKind { rational, quadratic, table };

/// One prime ideal of a table-kind field: p, ramification e, residue degree f
/// and its narrow class in coordinates of the declared cyclic factors.
struct TablePrime {
  Prime p = 0;
  int e = 1;
  int f = 1;
  IntVector label;
};

/// Ingested assertion that prod_i P_i^{k_i} is narrowly principal.
struct TableRelation {
  std::vector<std::pair<std::size_t, Integer>> terms;  // (index into TableData::primes, exponent)
};

struct TableData {
  std::string name;
  int degree = 0;
  std::vector<Integer> class_factors;
  Prime bound = 0;  // every rational prime <= bound is listed
  std::vector<TablePrime> primes;
  std::vector<TableRelation> relations;
  std::string provenance;
};

struct FieldSpec {
  FieldKind kind = FieldKind::rational;
  Integer d = 1;             // squarefree, quadratic kind only
  Integer discriminant = 1;  // fundamental discriminant (1 for Q)
  int degree = 1;
  std::shared_ptr<const TableData> table;

  static FieldSpec rational();
  static FieldSpec quadratic(const Integer& d);
  static FieldSpec from_discriminant(const Integer& D);
  static FieldSpec from_table(TableData data);

  bool is_real_quadratic() const { return kind == FieldKind::quadratic && discriminant > 0; }
  /// Stable identifier, e.g. "Q", "Q(sqrt(-5))", "table:<name>".
  std::string id() const;
  /// Filesystem-safe variant of id().
  std::string slug() const;
};

}  // namespace bcs
