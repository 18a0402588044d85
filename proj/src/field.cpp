#include "bcs/field.hpp"

#include "bcs/arithmetic.hpp"

#include <cctype>

namespace bcs {

FieldSpec FieldSpec::rational() { return FieldSpec{}; }

FieldSpec FieldSpec::quadratic(const Integer& d) {
  FieldSpec f;
  f.kind = FieldKind::quadratic;
  f.discriminant = fundamental_discriminant(d);
  f.d = d;
  f.degree = 2;
  return f;
}

FieldSpec FieldSpec::from_discriminant(const Integer& D) {
  if (!is_fundamental_discriminant(D)) {
    throw std::invalid_argument(D.str() + " is not a fundamental discriminant");
  }
  Integer r = D % 4;
  return quadratic(r == 0 ? Integer(D / 4) : D);
}

FieldSpec FieldSpec::from_table(TableData data) {
  FieldSpec f;
  f.kind = FieldKind::table;
  f.degree = data.degree;
  f.table = std::make_shared<const TableData>(std::move(data));
  return f;
}

std::string FieldSpec::id() const {
  switch (kind) {
    case FieldKind::rational:
      return "Q";
    case FieldKind::quadratic:
      return "Q(sqrt(" + d.str() + "))";
    case FieldKind::table:
      return "table:" + table->name;
  }
  return "?";
}

std::string FieldSpec::slug() const {
  std::string out;
  for (char ch : id()) {
    if (std::isalnum(static_cast<unsigned char>(ch))) {
      out += ch;
    } else if (ch == '-') {
      out += 'm';
    } else if (!out.empty() && out.back() != '_') {
      out += '_';
    }
  }
  while (!out.empty() && out.back() == '_') out.pop_back();
  return out;
}

}  // namespace bcs
