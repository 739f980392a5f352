#include "ccgboot/type_system.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "ccgboot/error.hpp"

namespace ccgboot::types {

namespace {

SemanticType arrow(SemanticType a, SemanticType b) { return SemanticType::arrow(std::move(a), std::move(b)); }

SemanticType et() { return arrow(SemanticType::e(), SemanticType::t()); }

// hasproperty takes its subject first and the property second.
SemanticType hasproperty_type() {
  SemanticType property = arrow(et(), et());
  return arrow(SemanticType::e(), arrow(property, SemanticType::t()));
}

bool is_noun_tag(std::string_view tag) { return tag == "n" || tag == "n:pt"; }

using Cont = std::function<void(const SemanticType&, const Substitution&)>;

class Inferrer {
 public:
  Inferrer(const TagTable& table, const TypeOptions& options) : table_(table), options_(options) {}

  void run(const lf::Term& t, std::vector<SemanticType>& env, const Substitution& subst, const Cont& k) {
    switch (t.kind()) {
      case lf::Term::Kind::Variable:
        k(env[env.size() - 1 - t.index()], subst);
        return;
      case lf::Term::Kind::Constant:
        constant(t.constant(), 0, subst, k);
        return;
      case lf::Term::Kind::Lambda: {
        Substitution s = subst;
        SemanticType param = SemanticType::var(s.fresh());
        env.push_back(param);
        run(t.body(), env, s, [&](const SemanticType& body, const Substitution& s2) { k(arrow(param, body), s2); });
        env.pop_back();
        return;
      }
      case lf::Term::Kind::Application:
        auto rest = [&](const SemanticType& head, const Substitution& s2) { apply_args(t, 0, head, env, s2, k); };
        if (t.head().is_constant()) {
          constant(t.head().constant(), t.args().size(), subst, rest);
        } else {
          run(t.head(), env, subst, rest);
        }
        return;
    }
  }

 private:
  void apply_args(const lf::Term& app, std::size_t i, const SemanticType& fn, std::vector<SemanticType>& env,
                  const Substitution& subst, const Cont& k) {
    if (i == app.args().size()) {
      k(fn, subst);
      return;
    }
    run(app.args()[i], env, subst, [&](const SemanticType& arg, const Substitution& s2) {
      Substitution s3 = s2;
      SemanticType result = SemanticType::var(s3.fresh());
      if (!s3.unify(fn, arrow(arg, result))) return;
      apply_args(app, i + 1, result, env, s3, k);
    });
  }

  // `nargs` is the number of arguments the constant is applied to. A tag with
  // several types of different arity (v, neg) uses the saturating ones when
  // any exist, so a transitive reading cannot hide under partial application.
  void constant(const lf::Constant& c, std::size_t nargs, const Substitution& subst, const Cont& k) {
    if (c.lemma == "hasproperty") {
      k(hasproperty_type(), subst);
      return;
    }
    const TagEntry& entry = table_.at(c.tag);
    auto unconstrained = [&] {
      Substitution s = subst;
      SemanticType v = SemanticType::var(s.fresh());
      k(v, s);
    };
    switch (entry.rule) {
      case TypeRule::NotConsidered:
        unconstrained();
        return;
      case TypeRule::Prep:
        if (options_.prep_untyped) {
          unconstrained();
        } else {
          k(arrow(SemanticType::e(), et()), subst);
          k(et(), subst);
        }
        return;
      case TypeRule::HandledSeparately:
        k(arrow(SemanticType::e(), et()), subst);
        return;
      case TypeRule::Typed:
        break;
    }
    bool saturating = nargs > 0 && entry.types.size() > 1 &&
                      std::any_of(entry.types.begin(), entry.types.end(),
                                  [&](const SemanticType& type) { return type.arity() == static_cast<int>(nargs); });
    for (const SemanticType& type : entry.types) {
      if (saturating && type.arity() != static_cast<int>(nargs)) continue;
      Substitution s = subst;
      k(instantiate(type, s), s);
    }
    if (is_noun_tag(c.tag) && c.has_feature("BARE")) k(SemanticType::e(), subst);
  }

  const TagTable& table_;
  const TypeOptions& options_;
};

}  // namespace

TagTypes tag_to_types(std::string_view tag, const TagTable& table) {
  const TagEntry& entry = table.at(tag);
  return TagTypes{entry.rule, entry.types};
}

SemanticType ccg_to_semtype(const ccg::Category& cat) {
  if (cat.is_atom()) {
    if (cat.name() == "NP") return SemanticType::e();
    if (cat.name() == "N") return et();
    return SemanticType::t();
  }
  return arrow(ccg_to_semtype(cat.argument()), ccg_to_semtype(cat.result()));
}

std::vector<SemanticType> infer_types(const lf::Term& t, const TagTable& table, const TypeOptions& options) {
  Inferrer inferrer(table, options);
  std::vector<SemanticType> env;
  std::map<std::string, SemanticType> found;
  inferrer.run(t, env, Substitution{}, [&](const SemanticType& type, const Substitution& s) {
    SemanticType c = canonicalize(s.resolve(type));
    found.emplace(render(c), c);
  });
  std::vector<SemanticType> out;
  out.reserve(found.size());
  for (auto& [text, type] : found) out.push_back(type);
  return out;
}

namespace {

bool exempt(const lf::Term& t, const TagTable& table, const TypeOptions& options) {
  const lf::Constant* head = lf::head_constant(t);
  if (!head || head->lemma == "hasproperty") return false;
  const TagEntry& entry = table.at(head->tag);
  return entry.rule == TypeRule::NotConsidered || (entry.rule == TypeRule::Prep && options.prep_untyped);
}

// Type-raised forms LP. P a1 .. an with the raised variable outermost.
const lf::Term* raised_argument(const lf::Term& t) {
  if (!t.is_lambda()) return nullptr;
  const lf::Term& body = t.body();
  if (!body.is_application() || body.args().size() != 1) return nullptr;
  if (!body.head().is_variable() || body.head().index() != 0) return nullptr;
  if (lf::has_free_below(body.args()[0], 1)) return nullptr;
  return &body.args()[0];
}

std::size_t arity(const ccg::Category& cat) {
  std::size_t n = 0;
  for (const ccg::Category* c = &cat; !c->is_atom(); c = &c->result()) ++n;
  return n;
}

template <class TypesOf>
bool congruent_impl(const ccg::Category& cat, const lf::Term& t, const TagTable& table, const TypeOptions& options,
                    TypesOf&& types_of) {
  if (exempt(t, table, options)) return true;
  SemanticType target = ccg_to_semtype(cat);
  if (lf::count_binders(t) == arity(cat)) {
    for (const SemanticType& type : types_of(t))
      if (unifiable(target, type)) return true;
  }
  ccg::Category base = ccg::strip_type_raising(cat);
  if (!(base == cat)) {
    if (const lf::Term* inner = raised_argument(t)) {
      lf::Term a = lf::shift(*inner, -1);
      if (lf::count_binders(a) != arity(base)) return false;
      SemanticType want = ccg_to_semtype(base);
      for (const SemanticType& type : types_of(a))
        if (unifiable(want, type)) return true;
    }
  }
  return false;
}

}  // namespace

bool congruent(const ccg::Category& cat, const lf::Term& t, const TagTable& table, const TypeOptions& options) {
  return congruent_impl(cat, t, table, options,
                        [&](const lf::Term& x) { return infer_types(x, table, options); });
}

const std::vector<SemanticType>& TypeChecker::types_of(const lf::Term& t) {
  auto it = types_.find(t);
  if (it == types_.end()) it = types_.emplace(t, infer_types(t, table_, options_)).first;
  return it->second;
}

bool TypeChecker::congruent(const ccg::Category& cat, const lf::Term& t) {
  Key key{cat, t};
  auto it = congruent_.find(key);
  if (it != congruent_.end()) return it->second;
  bool ok = congruent_impl(cat, t, table_, options_, [&](const lf::Term& x) { return types_of(x); });
  congruent_.emplace(std::move(key), ok);
  return ok;
}

}  // namespace ccgboot::types
