#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "ccgboot/category.hpp"
#include "ccgboot/lf.hpp"
#include "ccgboot/semtype.hpp"
#include "ccgboot/tag_table.hpp"

namespace ccgboot::types {

struct TagTypes {
  TypeRule rule;
  std::vector<SemanticType> types;
};

// Row of the tag table; throws DataError for unknown tags.
TagTypes tag_to_types(std::string_view tag, const TagTable& table = TagTable::builtin());

// S-family atoms map to t, NP to e, N to <e,t>; each slash is an arrow from
// argument to result, whatever its direction.
SemanticType ccg_to_semtype(const ccg::Category& cat);

struct TypeOptions {
  // Prepositions are exempt from type checking unless this is cleared, in
  // which case they get the modifier type <e,<<e,t>,<e,t>>>.
  bool prep_untyped = true;
};

// Every type the term can take, canonicalized and sorted by rendered text.
// Constants with exempt tags contribute unconstrained type variables, so
// results may contain variables. Empty when the term is untypeable.
std::vector<SemanticType> infer_types(const lf::Term& t, const TagTable& table = TagTable::builtin(),
                                      const TypeOptions& options = {});

bool congruent(const ccg::Category& cat, const lf::Term& t, const TagTable& table = TagTable::builtin(),
               const TypeOptions& options = {});

// Memoizing front end for the forest search. Not thread-safe.
class TypeChecker {
 public:
  explicit TypeChecker(const TagTable& table = TagTable::builtin(), TypeOptions options = {})
      : table_(table), options_(options) {}

  const std::vector<SemanticType>& types_of(const lf::Term& t);
  bool congruent(const ccg::Category& cat, const lf::Term& t);

 private:
  struct Key {
    ccg::Category cat;
    lf::Term term;
    friend bool operator==(const Key&, const Key&) = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const { return k.cat.hash() * 31 + k.term.hash(); }
  };

  const TagTable& table_;
  TypeOptions options_;
  std::unordered_map<lf::Term, std::vector<SemanticType>, lf::TermHash> types_;
  std::unordered_map<Key, bool, KeyHash> congruent_;
};

}  // namespace ccgboot::types
