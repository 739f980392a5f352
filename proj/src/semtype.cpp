#include "ccgboot/semtype.hpp"

#include <cctype>

#include "ccgboot/error.hpp"

namespace ccgboot::types {

SemanticType SemanticType::e() {
  static const SemanticType v(std::make_shared<const Node>(Node{.kind = Kind::Entity}));
  return v;
}

SemanticType SemanticType::t() {
  static const SemanticType v(std::make_shared<const Node>(Node{.kind = Kind::Truth}));
  return v;
}

SemanticType SemanticType::var(int id) {
  return SemanticType(std::make_shared<const Node>(Node{.kind = Kind::Variable, .var = id}));
}

SemanticType SemanticType::arrow(SemanticType from, SemanticType to) {
  return SemanticType(std::make_shared<const Node>(
      Node{.kind = Kind::Arrow, .var = 0, .from = std::make_shared<const SemanticType>(std::move(from)),
           .to = std::make_shared<const SemanticType>(std::move(to))}));
}

int SemanticType::arity() const {
  int n = 0;
  const SemanticType* cur = this;
  while (cur->is_arrow()) {
    ++n;
    cur = &cur->to();
  }
  return n;
}

bool SemanticType::has_vars() const {
  switch (kind()) {
    case Kind::Variable:
      return true;
    case Kind::Arrow:
      return from().has_vars() || to().has_vars();
    default:
      return false;
  }
}

bool operator==(const SemanticType& a, const SemanticType& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case SemanticType::Kind::Variable:
      return a.var_id() == b.var_id();
    case SemanticType::Kind::Arrow:
      return a.from() == b.from() && a.to() == b.to();
    default:
      return true;
  }
}

std::string render(const SemanticType& type) {
  switch (type.kind()) {
    case SemanticType::Kind::Entity:
      return "e";
    case SemanticType::Kind::Truth:
      return "t";
    case SemanticType::Kind::Variable:
      return type.var_id() == 0 ? "X" : "X" + std::to_string(type.var_id());
    case SemanticType::Kind::Arrow:
      return "<" + render(type.from()) + "," + render(type.to()) + ">";
  }
  return {};
}

namespace {

class TypeReader {
 public:
  explicit TypeReader(std::string_view text) : text_(text) {}

  SemanticType read_all() {
    SemanticType t = read();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("trailing characters in type", pos_);
    return t;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c)
      throw ParseError(std::string("expected '") + c + "' in type", pos_);
    ++pos_;
  }

  SemanticType read() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of type", pos_);
    char c = text_[pos_];
    if (c == '<') {
      ++pos_;
      SemanticType from = read();
      expect(',');
      SemanticType to = read();
      expect('>');
      return SemanticType::arrow(std::move(from), std::move(to));
    }
    if (c == 'e') {
      ++pos_;
      return SemanticType::e();
    }
    if (c == 't') {
      ++pos_;
      return SemanticType::t();
    }
    if (c == 'X') {
      ++pos_;
      int id = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        id = id * 10 + (text_[pos_] - '0');
        ++pos_;
      }
      return SemanticType::var(id);
    }
    throw ParseError(std::string("unexpected character '") + c + "' in type", pos_);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

SemanticType parse_semtype(std::string_view text) { return TypeReader(text).read_all(); }

SemanticType Substitution::resolve(const SemanticType& type) const {
  switch (type.kind()) {
    case SemanticType::Kind::Variable: {
      auto it = bindings_.find(type.var_id());
      return it == bindings_.end() ? type : resolve(it->second);
    }
    case SemanticType::Kind::Arrow:
      return SemanticType::arrow(resolve(type.from()), resolve(type.to()));
    default:
      return type;
  }
}

bool Substitution::occurs(int id, const SemanticType& type) const {
  SemanticType r = resolve(type);
  switch (r.kind()) {
    case SemanticType::Kind::Variable:
      return r.var_id() == id;
    case SemanticType::Kind::Arrow:
      return occurs(id, r.from()) || occurs(id, r.to());
    default:
      return false;
  }
}

bool Substitution::unify(const SemanticType& a, const SemanticType& b) {
  SemanticType x = resolve(a);
  SemanticType y = resolve(b);
  if (x.is_var() && y.is_var() && x.var_id() == y.var_id()) return true;
  if (x.is_var()) {
    if (occurs(x.var_id(), y)) return false;
    bindings_.insert_or_assign(x.var_id(), y);
    return true;
  }
  if (y.is_var()) return unify(y, x);
  if (x.kind() != y.kind()) return false;
  if (x.is_arrow()) return unify(x.from(), y.from()) && unify(x.to(), y.to());
  return true;
}

namespace {

SemanticType rename(const SemanticType& type, std::map<int, int>& ids) {
  switch (type.kind()) {
    case SemanticType::Kind::Variable: {
      auto [it, inserted] = ids.try_emplace(type.var_id(), static_cast<int>(ids.size()));
      return SemanticType::var(it->second);
    }
    case SemanticType::Kind::Arrow: {
      SemanticType from = rename(type.from(), ids);
      SemanticType to = rename(type.to(), ids);
      return SemanticType::arrow(std::move(from), std::move(to));
    }
    default:
      return type;
  }
}

SemanticType freshen(const SemanticType& type, std::map<int, int>& ids, Substitution& subst) {
  switch (type.kind()) {
    case SemanticType::Kind::Variable: {
      auto it = ids.find(type.var_id());
      if (it == ids.end()) it = ids.emplace(type.var_id(), subst.fresh()).first;
      return SemanticType::var(it->second);
    }
    case SemanticType::Kind::Arrow: {
      SemanticType from = freshen(type.from(), ids, subst);
      SemanticType to = freshen(type.to(), ids, subst);
      return SemanticType::arrow(std::move(from), std::move(to));
    }
    default:
      return type;
  }
}

}  // namespace

SemanticType canonicalize(const SemanticType& type) {
  std::map<int, int> ids;
  return rename(type, ids);
}

SemanticType instantiate(const SemanticType& type, Substitution& subst) {
  std::map<int, int> ids;
  return freshen(type, ids, subst);
}

bool unifiable(const SemanticType& a, const SemanticType& b) {
  Substitution s;
  SemanticType x = instantiate(a, s);
  SemanticType y = instantiate(b, s);
  return s.unify(x, y);
}

}  // namespace ccgboot::types
