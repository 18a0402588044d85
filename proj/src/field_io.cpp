#include "bcs/field_io.hpp"

#include "bcs/arithmetic.hpp"

#include <boost/crc.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace bcs {
namespace {

constexpr const char* kCacheHeader = "bcs-cache 1";

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  return out;
}

Integer parse_integer(const std::string& s, const std::string& where) {
  try {
    if (s.empty() || s.find_first_not_of("+-0123456789") != std::string::npos) throw std::invalid_argument(s);
    return Integer(s);
  } catch (const std::exception&) {
    throw IngestionError(where + ": expected an integer, got '" + s + "'");
  }
}

struct PendingRelation {
  std::vector<std::tuple<Prime, std::size_t, Integer>> terms;  // (p, k-th prime above p, exponent)
  std::string where;
};

}  // namespace

FieldSpec parse_field(const std::string& text, const std::string& source) {
  std::map<std::string, std::string> values;
  TableData table;
  std::vector<PendingRelation> relations;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string where = source + ":" + std::to_string(number);
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw IngestionError(where + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "prime") {
      const auto parts = split(value, ':');
      if (parts.size() != 4) throw IngestionError(where + ": prime entries are p:e:f:class");
      TablePrime tp;
      tp.p = parse_integer(parts[0], where).convert_to<Prime>();
      tp.e = static_cast<int>(to_long(parse_integer(parts[1], where)));
      tp.f = static_cast<int>(to_long(parse_integer(parts[2], where)));
      const auto coords = split(parts[3], ',');
      tp.label = IntVector(static_cast<Eigen::Index>(coords.size()));
      for (std::size_t i = 0; i < coords.size(); ++i) tp.label(static_cast<Eigen::Index>(i)) = parse_integer(coords[i], where);
      if (!is_prime(tp.p) || tp.e < 1 || tp.f < 1) throw IngestionError(where + ": malformed prime entry");
      table.primes.push_back(std::move(tp));
    } else if (key == "p1_relation") {
      PendingRelation rel{{}, where};
      for (const auto& term : split(value, ' ')) {
        if (term.empty()) continue;
        const auto caret = term.find('^');
        const auto dot = term.find('.');
        if (dot == std::string::npos || caret == std::string::npos || dot > caret) {
          throw IngestionError(where + ": relation terms are p.k^e");
        }
        rel.terms.emplace_back(parse_integer(term.substr(0, dot), where).convert_to<Prime>(),
                               parse_integer(term.substr(dot + 1, caret - dot - 1), where).convert_to<std::size_t>(),
                               parse_integer(term.substr(caret + 1), where));
      }
      relations.push_back(std::move(rel));
    } else if (key == "kind" || key == "d" || key == "name" || key == "degree" || key == "narrow_class_group" ||
               key == "bound" || key == "provenance") {
      if (values.count(key)) throw IngestionError(where + ": duplicate key '" + key + "'");
      values[key] = value;
    } else {
      throw IngestionError(where + ": unknown key '" + key + "'");
    }
  }
  if (!values.count("kind")) throw IngestionError(source + ": missing key 'kind'");
  const std::string kind = values["kind"];
  if (kind == "rational") return FieldSpec::rational();
  if (kind == "quadratic") {
    if (!values.count("d")) throw IngestionError(source + ": quadratic fields need 'd'");
    const Integer d = parse_integer(values["d"], source);
    try {
      return FieldSpec::quadratic(d);
    } catch (const std::invalid_argument& e) {
      throw IngestionError(source + ": " + e.what());
    }
  }
  if (kind != "table") throw IngestionError(source + ": unknown kind '" + kind + "'");
  for (const char* required : {"name", "degree", "narrow_class_group", "bound", "provenance"}) {
    if (!values.count(required) || values[required].empty()) {
      throw IngestionError(source + ": table fields need '" + required + "'");
    }
  }
  table.name = values["name"];
  table.degree = static_cast<int>(to_long(parse_integer(values["degree"], source)));
  for (const auto& c : split(values["narrow_class_group"], ',')) table.class_factors.push_back(parse_integer(c, source));
  table.bound = parse_integer(values["bound"], source).convert_to<Prime>();
  table.provenance = values["provenance"];
  for (const auto& rel : relations) {
    TableRelation resolved;
    for (const auto& [p, k, e] : rel.terms) {
      std::size_t seen = 0, index = table.primes.size();
      for (std::size_t i = 0; i < table.primes.size(); ++i) {
        if (table.primes[i].p == p && ++seen == k) index = i;
      }
      if (index == table.primes.size()) {
        throw IngestionError(rel.where + ": relation refers to prime " + std::to_string(p) + "." + std::to_string(k) +
                             " which is not listed");
      }
      resolved.terms.emplace_back(index, e);
    }
    table.relations.push_back(std::move(resolved));
  }
  validate_table(table);
  return FieldSpec::from_table(std::move(table));
}

void validate_table(const TableData& table) {
  if (table.degree < 1) throw IngestionError("degree must be positive");
  for (const auto& d : table.class_factors) {
    if (d < 1) throw IngestionError("class group factors must be positive");
  }
  const auto group = group_from_cyclic_factors(table.class_factors);
  const auto k = static_cast<Eigen::Index>(table.class_factors.size());
  std::map<Prime, int> sum_ef;
  for (const auto& tp : table.primes) {
    if (tp.label.size() != k) {
      throw IngestionError("class label of a prime above " + std::to_string(tp.p) + " has the wrong length");
    }
    sum_ef[tp.p] += tp.e * tp.f;
  }
  for (Prime p : primes_up_to(table.bound)) {
    if (!sum_ef.count(p)) throw IngestionError("no data for the prime " + std::to_string(p) + " below the bound");
  }
  for (const auto& [p, total] : sum_ef) {
    if (total != table.degree) {
      throw IngestionError("sum of e*f is " + std::to_string(total) + ", not the degree " + std::to_string(table.degree) +
                           ", at p=" + std::to_string(p));
    }
  }
  // Labels must generate the declared group.
  IntMatrix labels(static_cast<Eigen::Index>(table.primes.size()) + k, k);
  for (std::size_t i = 0; i < table.primes.size(); ++i) labels.row(static_cast<Eigen::Index>(i)) = table.primes[i].label.transpose();
  labels.bottomRows(k) = IntMatrix::Zero(k, k);
  for (Eigen::Index i = 0; i < k; ++i) labels(static_cast<Eigen::Index>(table.primes.size()) + i, i) = table.class_factors[static_cast<std::size_t>(i)];
  if (Lattice(k, labels).index() != Integer(1)) throw IngestionError("class labels do not generate the declared group");
  for (std::size_t r = 0; r < table.relations.size(); ++r) {
    IntVector cls = IntVector::Zero(k);
    for (const auto& [index, e] : table.relations[r].terms) cls += e * table.primes[index].label;
    if (!group.project(cls).isZero()) {
      throw IngestionError("p1_relation number " + std::to_string(r + 1) + " does not map to the trivial class");
    }
  }
}

FieldSpec load_field(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IngestionError("cannot read field file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_field(buffer.str(), path.string());
}

std::string CacheKey::file_name() const {
  std::string slug;
  for (char ch : field_id) slug += std::isalnum(static_cast<unsigned char>(ch)) ? ch : (ch == '-' ? 'm' : '_');
  return slug + "." + bound.str() + "." + artifact + ".txt";
}

namespace {

std::string checksum(const std::string& body) {
  boost::crc_32_type crc;
  crc.process_bytes(body.data(), body.size());
  std::ostringstream out;
  out << std::hex << crc.checksum();
  return out.str();
}

}  // namespace

std::string serialize_lattice(const CacheKey& key, const Lattice& lattice) {
  std::ostringstream body;
  body << kCacheHeader << "\n";
  body << "field " << key.field_id << "\n";
  body << "bound " << key.bound << "\n";
  body << "artifact " << key.artifact << "\n";
  body << "ambient " << lattice.ambient_rank() << "\n";
  body << "rows " << lattice.rank() << "\n";
  for (Eigen::Index i = 0; i < lattice.rank(); ++i) {
    for (Eigen::Index j = 0; j < lattice.ambient_rank(); ++j) body << (j ? " " : "") << lattice.basis()(i, j);
    body << "\n";
  }
  const std::string text = body.str();
  return text + "checksum " + checksum(text) + "\n";
}

std::optional<Lattice> deserialize_lattice(const CacheKey& key, const std::string& text) {
  const auto last = text.rfind("checksum ");
  if (last == std::string::npos) return std::nullopt;
  const std::string body = text.substr(0, last);
  if (trim(text.substr(last + 9)) != checksum(body)) return std::nullopt;
  std::istringstream in(body);
  std::string line, word;
  if (!std::getline(in, line) || line != kCacheHeader) return std::nullopt;
  auto expect = [&](const std::string& name, const std::string& value) {
    return std::getline(in, line) && line == name + " " + value;
  };
  if (!expect("field", key.field_id) || !expect("bound", key.bound.str()) || !expect("artifact", key.artifact)) {
    return std::nullopt;
  }
  long ambient = 0, rows = 0;
  if (!(in >> word >> ambient) || word != "ambient" || !(in >> word >> rows) || word != "rows") return std::nullopt;
  IntMatrix basis(rows, ambient);
  for (long i = 0; i < rows; ++i) {
    for (long j = 0; j < ambient; ++j) {
      if (!(in >> word)) return std::nullopt;
      basis(i, j) = Integer(word);
    }
  }
  Lattice lattice(ambient, basis);
  if (lattice.basis() != basis) return std::nullopt;
  return lattice;
}

Cache Cache::from_environment() {
  const char* dir = std::getenv("BCS_CACHE_DIR");
  if (!dir || !*dir) return Cache(std::nullopt);
  return Cache(std::filesystem::path(dir));
}

std::optional<Lattice> Cache::load(const CacheKey& key) const {
  if (!dir_) return std::nullopt;
  std::ifstream in(*dir_ / key.file_name());
  if (!in) return std::nullopt;
  std::stringstream buffer;
  buffer << in.rdbuf();
  return deserialize_lattice(key, buffer.str());
}

void Cache::store(const CacheKey& key, const Lattice& lattice) const {
  if (!dir_) return;
  std::filesystem::create_directories(*dir_);
  std::random_device rd;
  const auto target = *dir_ / key.file_name();
  auto temp = target;
  temp += ".tmp" + std::to_string(rd());
  {
    std::ofstream out(temp, std::ios::binary);
    out << serialize_lattice(key, lattice);
    if (!out) throw std::runtime_error("cannot write cache file " + temp.string());
  }
  std::filesystem::rename(temp, target);
}

}  // namespace bcs
