#pragma once
// Field files, the on-disk cache of computed lattices, and their text formats.
#include "bcs/abelian_group.hpp"
#include "bcs/field.hpp"

#include <filesystem>
#include <optional>

namespace bcs {

/// Parses the `key = value` field format; errors carry the line number.
FieldSpec parse_field(const std::string& text, const std::string& source = "<string>");
FieldSpec load_field(const std::filesystem::path& path);

/// Runs the table-kind axioms; throws IngestionError naming the failing one.
void validate_table(const TableData& table);

struct CacheKey {
  std::string field_id;
  Integer bound;
  std::string artifact;  // "p1", ...

  std::string file_name() const;
};

/// Versioned plain-text form of a lattice, checksum on the last line.
std::string serialize_lattice(const CacheKey& key, const Lattice& lattice);
/// Empty when the text is malformed, of another version, or fails its checksum.
std::optional<Lattice> deserialize_lattice(const CacheKey& key, const std::string& text);

class Cache {
 public:
  /// A disabled cache never reads or writes.
  explicit Cache(std::optional<std::filesystem::path> dir) : dir_(std::move(dir)) {}
  /// Directory from BCS_CACHE_DIR, disabled when unset.
  static Cache from_environment();

  bool enabled() const { return dir_.has_value(); }
  std::optional<Lattice> load(const CacheKey& key) const;
  /// Whole-file replace through a temporary file and rename.
  void store(const CacheKey& key, const Lattice& lattice) const;

 private:
  std::optional<std::filesystem::path> dir_;
};

}  // namespace bcs
