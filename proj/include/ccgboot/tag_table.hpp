#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ccgboot/semtype.hpp"

namespace ccgboot {

enum class TypeRule {
  Typed,              // the row lists explicit types
  NotConsidered,      // exempt from the type check
  HandledSeparately,  // copula
  Prep,               // prepositions, configurable
};

struct TagEntry {
  std::string tag;
  std::string shell_marker;
  TypeRule rule = TypeRule::Typed;
  std::vector<types::SemanticType> types;
};

// Closed inventory of part-of-speech tags with their shell markers and
// semantic types. Immutable once built.
class TagTable {
 public:
  // The table shipped in data/tags.tsv (compiled in).
  static const TagTable& builtin();
  static TagTable parse(std::string_view text);
  static TagTable load(const std::string& path);

  bool contains(std::string_view tag) const;
  // Throws DataError for tags outside the inventory.
  const TagEntry& at(std::string_view tag) const;
  const std::map<std::string, TagEntry, std::less<>>& entries() const { return entries_; }

 private:
  std::map<std::string, TagEntry, std::less<>> entries_;
};

std::string_view builtin_tag_table_text();

}  // namespace ccgboot
