#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>

namespace ccgboot::types {

// Montagovian semantic type: e, t, <a,b>, or a type variable.
//
// Variables serve two purposes: the schematic X of the conj/coord table rows,
// and unconstrained positions during inference (lambda-bound variables and
// constants whose tag is exempt from type checking).
class SemanticType {
 public:
  enum class Kind { Entity, Truth, Variable, Arrow };

  static SemanticType e();
  static SemanticType t();
  static SemanticType var(int id);
  static SemanticType arrow(SemanticType from, SemanticType to);

  Kind kind() const { return node_->kind; }
  bool is_arrow() const { return kind() == Kind::Arrow; }
  bool is_var() const { return kind() == Kind::Variable; }
  int var_id() const { return node_->var; }
  const SemanticType& from() const { return *node_->from; }
  const SemanticType& to() const { return *node_->to; }

  // Number of arrows along the result spine.
  int arity() const;
  bool has_vars() const;

  friend bool operator==(const SemanticType& a, const SemanticType& b);

 private:
  struct Node {
    Kind kind;
    int var = 0;
    std::shared_ptr<const SemanticType> from = nullptr;
    std::shared_ptr<const SemanticType> to = nullptr;
  };
  explicit SemanticType(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// "e", "t", "X", "X3", "<e,<e,t>>".
std::string render(const SemanticType& type);
SemanticType parse_semtype(std::string_view text);

// Triangular substitution produced by unification.
class Substitution {
 public:
  SemanticType resolve(const SemanticType& type) const;
  bool unify(const SemanticType& a, const SemanticType& b);
  int fresh() { return next_++; }
  void reserve_above(int id) {
    if (id >= next_) next_ = id + 1;
  }

 private:
  bool occurs(int id, const SemanticType& type) const;
  std::map<int, SemanticType> bindings_;
  int next_ = 1000;
};

// Renumber variables 0, 1, ... in order of first appearance.
SemanticType canonicalize(const SemanticType& type);

// Replace every variable by a fresh one drawn from `subst`.
SemanticType instantiate(const SemanticType& type, Substitution& subst);

bool unifiable(const SemanticType& a, const SemanticType& b);

}  // namespace ccgboot::types
