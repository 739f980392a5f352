#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ccgboot/tag_table.hpp"

namespace ccgboot::lf {

// A tagged constant. Features (past, 3s, BARE, ...) are part of its identity.
struct Constant {
  std::string tag;
  std::string lemma;
  std::vector<std::string> features;

  bool has_feature(std::string_view f) const;
  friend bool operator==(const Constant&, const Constant&) = default;
};

// Lambda-calculus logical form with de Bruijn indices.
//
// Applications are stored flattened (head plus ordered arguments) and the
// head of an application is never itself an application. Terms are immutable
// and share structure; copying is cheap.
class Term {
 public:
  enum class Kind { Variable, Constant, Lambda, Application };

  static Term variable(std::size_t index);
  static Term constant(Constant c);
  static Term constant(std::string tag, std::string lemma, std::vector<std::string> features = {});
  static Term lambda(Term body);
  // Flattens a nested head; performs no beta reduction.
  static Term application(Term head, std::vector<Term> args);

  Kind kind() const { return node_->kind; }
  bool is_variable() const { return kind() == Kind::Variable; }
  bool is_constant() const { return kind() == Kind::Constant; }
  bool is_lambda() const { return kind() == Kind::Lambda; }
  bool is_application() const { return kind() == Kind::Application; }

  std::size_t index() const { return node_->index; }
  const Constant& constant() const { return *node_->constant; }
  const Term& body() const { return node_->kids.front(); }
  const Term& head() const { return node_->kids.front(); }
  std::span<const Term> args() const { return std::span<const Term>(node_->kids).subspan(1); }

  // Number of nodes; an application counts itself, its head and its arguments.
  std::size_t size() const { return node_->size; }
  std::size_t hash() const { return node_->hash; }

  friend bool operator==(const Term& a, const Term& b);

 private:
  struct Node {
    Kind kind;
    std::size_t index = 0;
    std::shared_ptr<const Constant> constant;
    std::vector<Term> kids;
    std::size_t size = 1;
    std::size_t hash = 0;
  };
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Term make(Node n);
  std::shared_ptr<const Node> node_;
};

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

// Canonical text: binders named L0, L1, ... by depth, variables by the depth
// of their binder. Shell markers (empty tag) print as the bare marker.
std::string render(const Term& t);

// Parses the LF text grammar. Binders may be written "L0." or "\lambda x."
// (also "λx."); the special atoms not, Q, WH and & map to fixed constants.
// Returns the beta-normal form. Throws ParseError or DataError (unknown tag).
Term parse_lf(std::string_view text, const TagTable& tags = TagTable::builtin());

Term normalize(const Term& t);
// Beta-reduces functor applied to argument. Throws DataError if the functor
// has no leading binder.
Term apply(const Term& functor, const Term& argument);
bool alpha_eq(const Term& a, const Term& b);
// Eta-normal form of a beta-normal term: \x.f x becomes f when x is not free in f.
Term eta_reduce(const Term& t);
bool eta_eq(const Term& a, const Term& b);

std::size_t count_binders(const Term& t);
// Term with its leading binders removed.
const Term& strip_binders(const Term& t);
bool is_closed(const Term& t);
// Head constant of the body, if the body is a constant or headed by one.
const Constant* head_constant(const Term& t);
// Constants in left-to-right order.
std::vector<Constant> constants(const Term& t);

// de Bruijn plumbing.
Term shift(const Term& t, long delta, std::size_t cutoff = 0);
bool has_free_below(const Term& t, std::size_t bound, std::size_t depth = 0);

// Shell logical form: every constant replaced by its tag's shell marker.
struct ShellTerm {
  Term term;
  friend bool operator==(const ShellTerm&, const ShellTerm&) = default;
};

ShellTerm to_shell(const Term& t, const TagTable& tags = TagTable::builtin());
std::string render(const ShellTerm& s);

struct SplitOptions {
  // Binders introduced per split: 1 gives plain subterm abstraction; larger
  // values let the argument abstract inner subterms of its own.
  std::size_t max_new_binders = 1;
  // Abstract any non-empty subset of a subterm's occurrences, not only all.
  bool subset_occurrences = false;
};

struct Split {
  Term functor;
  Term argument;
};

// Reverse function application: every (functor, argument) pair with
// apply(functor, argument) == t, deduplicated and sorted by rendered text.
std::vector<Split> enumerate_splits(const Term& t, const SplitOptions& options = {});

}  // namespace ccgboot::lf
