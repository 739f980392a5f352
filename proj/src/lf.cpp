#include "ccgboot/lf.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <set>

#include "ccgboot/error.hpp"

namespace ccgboot::lf {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

struct Special {
  std::string_view text;
  std::string_view tag;
  std::string_view lemma;
};

constexpr Special kSpecials[] = {
    {"not", "neg", "not"},
    {"Q", "Q", "Q"},
    {"WH", "WH", "WH"},
    {"&", "coord", "&"},
};

}  // namespace

bool Constant::has_feature(std::string_view f) const {
  return std::find(features.begin(), features.end(), f) != features.end();
}

Term Term::make(Node n) {
  std::size_t h = mix(0, static_cast<std::size_t>(n.kind));
  switch (n.kind) {
    case Kind::Variable:
      h = mix(h, n.index);
      break;
    case Kind::Constant: {
      std::hash<std::string> hs;
      h = mix(h, hs(n.constant->tag));
      h = mix(h, hs(n.constant->lemma));
      for (const auto& f : n.constant->features) h = mix(h, hs(f));
      break;
    }
    default:
      for (const Term& k : n.kids) {
        h = mix(h, k.hash());
        n.size += k.size();
      }
  }
  n.hash = h;
  return Term(std::make_shared<const Node>(std::move(n)));
}

Term Term::variable(std::size_t index) {
  Node n{};
  n.kind = Kind::Variable;
  n.index = index;
  return make(std::move(n));
}

Term Term::constant(Constant c) {
  Node n{};
  n.kind = Kind::Constant;
  n.constant = std::make_shared<const Constant>(std::move(c));
  return make(std::move(n));
}

Term Term::constant(std::string tag, std::string lemma, std::vector<std::string> features) {
  return constant(Constant{std::move(tag), std::move(lemma), std::move(features)});
}

Term Term::lambda(Term body) {
  Node n{};
  n.kind = Kind::Lambda;
  n.kids.push_back(std::move(body));
  return make(std::move(n));
}

Term Term::application(Term head, std::vector<Term> args) {
  if (args.empty()) return head;
  Node n{};
  n.kind = Kind::Application;
  if (head.is_application()) {
    n.kids.assign(head.node_->kids.begin(), head.node_->kids.end());
  } else {
    n.kids.push_back(std::move(head));
  }
  for (Term& a : args) n.kids.push_back(std::move(a));
  return make(std::move(n));
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.kind() != b.kind() || a.size() != b.size()) return false;
  switch (a.kind()) {
    case Term::Kind::Variable:
      return a.index() == b.index();
    case Term::Kind::Constant:
      return a.constant() == b.constant();
    default:
      return a.node_->kids == b.node_->kids;
  }
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

std::string constant_text(const Constant& c) {
  for (const Special& s : kSpecials)
    if (c.tag == s.tag && c.lemma == s.lemma && c.features.empty()) return std::string(s.text);
  std::string out;
  if (!c.tag.empty()) {
    out = c.tag;
    out += '|';
  }
  out += c.lemma;
  for (const auto& f : c.features) {
    out += '-';
    out += f;
  }
  return out;
}

void render_into(const Term& t, std::size_t depth, std::string& out) {
  switch (t.kind()) {
    case Term::Kind::Variable:
      if (t.index() < depth) {
        out += std::to_string(depth - 1 - t.index());
      } else {
        out += "F" + std::to_string(t.index() - depth);
      }
      return;
    case Term::Kind::Constant:
      out += constant_text(t.constant());
      return;
    case Term::Kind::Lambda:
      out += "L" + std::to_string(depth) + ".";
      render_into(t.body(), depth + 1, out);
      return;
    case Term::Kind::Application: {
      bool paren_head = t.head().is_lambda();
      if (paren_head) out += '(';
      render_into(t.head(), depth, out);
      if (paren_head) out += ')';
      for (const Term& a : t.args()) {
        out += ' ';
        bool paren = a.is_application() || a.is_lambda();
        if (paren) out += '(';
        render_into(a, depth, out);
        if (paren) out += ')';
      }
      return;
    }
  }
}

}  // namespace

std::string render(const Term& t) {
  std::string out;
  render_into(t, 0, out);
  return out;
}

std::string render(const ShellTerm& s) { return render(s.term); }

// ---------------------------------------------------------------------------
// de Bruijn operations

Term shift(const Term& t, long delta, std::size_t cutoff) {
  switch (t.kind()) {
    case Term::Kind::Variable:
      if (t.index() >= cutoff) return Term::variable(static_cast<std::size_t>(static_cast<long>(t.index()) + delta));
      return t;
    case Term::Kind::Constant:
      return t;
    case Term::Kind::Lambda:
      return Term::lambda(shift(t.body(), delta, cutoff + 1));
    case Term::Kind::Application: {
      std::vector<Term> args;
      args.reserve(t.args().size());
      for (const Term& a : t.args()) args.push_back(shift(a, delta, cutoff));
      return Term::application(shift(t.head(), delta, cutoff), std::move(args));
    }
  }
  return t;
}

bool has_free_below(const Term& t, std::size_t bound, std::size_t depth) {
  switch (t.kind()) {
    case Term::Kind::Variable:
      return t.index() >= depth && t.index() - depth < bound;
    case Term::Kind::Constant:
      return false;
    case Term::Kind::Lambda:
      return has_free_below(t.body(), bound, depth + 1);
    case Term::Kind::Application:
      if (has_free_below(t.head(), bound, depth)) return true;
      for (const Term& a : t.args())
        if (has_free_below(a, bound, depth)) return true;
      return false;
  }
  return false;
}

namespace {

bool has_any_free(const Term& t, std::size_t depth) {
  switch (t.kind()) {
    case Term::Kind::Variable:
      return t.index() >= depth;
    case Term::Kind::Constant:
      return false;
    case Term::Kind::Lambda:
      return has_any_free(t.body(), depth + 1);
    case Term::Kind::Application:
      if (has_any_free(t.head(), depth)) return true;
      for (const Term& a : t.args())
        if (has_any_free(a, depth)) return true;
      return false;
  }
  return false;
}

// Replace variable `target` (at binder depth 0 of t) by s.
Term substitute(const Term& t, std::size_t target, const Term& s, std::size_t depth = 0) {
  switch (t.kind()) {
    case Term::Kind::Variable:
      if (t.index() == target + depth) return shift(s, static_cast<long>(depth));
      return t;
    case Term::Kind::Constant:
      return t;
    case Term::Kind::Lambda:
      return Term::lambda(substitute(t.body(), target, s, depth + 1));
    case Term::Kind::Application: {
      std::vector<Term> args;
      args.reserve(t.args().size());
      for (const Term& a : t.args()) args.push_back(substitute(a, target, s, depth));
      return Term::application(substitute(t.head(), target, s, depth), std::move(args));
    }
  }
  return t;
}

Term beta(const Term& body, const Term& arg) {
  return shift(substitute(body, 0, shift(arg, 1)), -1);
}

struct Normalizer {
  std::size_t budget = 200000;

  Term run(const Term& t) {
    if (budget-- == 0) throw DataError("logical form normalization did not terminate");
    switch (t.kind()) {
      case Term::Kind::Variable:
      case Term::Kind::Constant:
        return t;
      case Term::Kind::Lambda:
        return Term::lambda(run(t.body()));
      case Term::Kind::Application: {
        Term head = run(t.head());
        std::vector<Term> args;
        args.reserve(t.args().size());
        for (const Term& a : t.args()) args.push_back(run(a));
        std::size_t next = 0;
        while (head.is_lambda() && next < args.size()) {
          head = run(beta(head.body(), args[next]));
          ++next;
        }
        // A normal-form application never has a lambda head, so flattening
        // the remaining arguments onto it cannot expose a new redex.
        std::vector<Term> rest(args.begin() + static_cast<long>(next), args.end());
        return Term::application(std::move(head), std::move(rest));
      }
    }
    return t;
  }
};

}  // namespace

Term normalize(const Term& t) { return Normalizer{}.run(t); }

Term apply(const Term& functor, const Term& argument) {
  if (!functor.is_lambda()) throw DataError("cannot apply a logical form with no binder: " + render(functor));
  return normalize(beta(functor.body(), argument));
}

bool alpha_eq(const Term& a, const Term& b) { return a == b; }

Term eta_reduce(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Variable:
    case Term::Kind::Constant:
      return t;
    case Term::Kind::Application: {
      std::vector<Term> args;
      for (const Term& a : t.args()) args.push_back(eta_reduce(a));
      return Term::application(eta_reduce(t.head()), std::move(args));
    }
    case Term::Kind::Lambda: {
      Term body = eta_reduce(t.body());
      if (body.is_application()) {
        auto args = body.args();
        const Term& last = args.back();
        if (last.is_variable() && last.index() == 0) {
          std::vector<Term> rest(args.begin(), args.end() - 1);
          bool free = has_free_below(body.head(), 1);
          for (const Term& a : rest) free = free || has_free_below(a, 1);
          if (!free) {
            Term f = rest.empty() ? body.head() : Term::application(body.head(), std::move(rest));
            return shift(f, -1);
          }
        }
      }
      return Term::lambda(std::move(body));
    }
  }
  return t;
}

bool eta_eq(const Term& a, const Term& b) { return eta_reduce(a) == eta_reduce(b); }

std::size_t count_binders(const Term& t) {
  std::size_t n = 0;
  const Term* cur = &t;
  while (cur->is_lambda()) {
    ++n;
    cur = &cur->body();
  }
  return n;
}

const Term& strip_binders(const Term& t) {
  const Term* cur = &t;
  while (cur->is_lambda()) cur = &cur->body();
  return *cur;
}

bool is_closed(const Term& t) { return !has_any_free(t, 0); }

const Constant* head_constant(const Term& t) {
  const Term& body = strip_binders(t);
  if (body.is_constant()) return &body.constant();
  if (body.is_application() && body.head().is_constant()) return &body.head().constant();
  return nullptr;
}

namespace {

void collect_constants(const Term& t, std::vector<Constant>& out) {
  switch (t.kind()) {
    case Term::Kind::Constant:
      out.push_back(t.constant());
      return;
    case Term::Kind::Lambda:
      collect_constants(t.body(), out);
      return;
    case Term::Kind::Application:
      collect_constants(t.head(), out);
      for (const Term& a : t.args()) collect_constants(a, out);
      return;
    default:
      return;
  }
}

}  // namespace

std::vector<Constant> constants(const Term& t) {
  std::vector<Constant> out;
  collect_constants(t, out);
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

bool is_delim(char c) { return std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')'; }

class Reader {
 public:
  Reader(std::string_view text, const TagTable& tags) : text_(text), tags_(tags) {}

  Term read_all() {
    Term t = read_term();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("unexpected ')' in logical form", pos_);
    return t;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool starts_with(std::string_view s) const { return text_.substr(pos_, s.size()) == s; }

  // Recognises "L<int>.", "\lambda <name>." and "λ<name>.", returning the
  // binder name, or nothing when the input does not start with a binder.
  bool read_binder(std::string& name) {
    std::size_t save = pos_;
    if (starts_with("\\lambda")) {
      pos_ += 7;
    } else if (starts_with("\xce\xbb")) {
      pos_ += 2;
    } else if (pos_ < text_.size() && text_[pos_] == 'L') {
      std::size_t p = pos_ + 1;
      while (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) ++p;
      if (p == pos_ + 1 || p >= text_.size() || text_[p] != '.') return false;
      name = std::string(text_.substr(pos_ + 1, p - pos_ - 1));
      pos_ = p + 1;
      return true;
    } else {
      return false;
    }
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != '.' && !is_delim(text_[pos_])) ++pos_;
    if (pos_ == start || pos_ >= text_.size() || text_[pos_] != '.') {
      pos_ = save;
      throw ParseError("malformed lambda binder", save);
    }
    name = std::string(text_.substr(start, pos_ - start));
    ++pos_;
    return true;
  }

  Term read_term() {
    skip_ws();
    std::string name;
    if (read_binder(name)) return read_lambda_body(std::move(name));
    return read_sequence();
  }

  Term read_lambda_body(std::string name) {
    scope_.push_back(std::move(name));
    Term body = read_term();
    scope_.pop_back();
    return Term::lambda(std::move(body));
  }

  Term read_sequence() {
    std::vector<Term> items;
    std::size_t start = pos_;
    while (true) {
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] == ')') break;
      if (text_[pos_] == '(') {
        std::size_t open = pos_;
        ++pos_;
        items.push_back(read_term());
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != ')') throw ParseError("unbalanced '('", open);
        ++pos_;
        continue;
      }
      std::string name;
      if (read_binder(name)) {
        items.push_back(read_lambda_body(std::move(name)));
        break;
      }
      items.push_back(read_atom());
    }
    if (items.empty()) throw ParseError("expected a term", start);
    Term head = items.front();
    items.erase(items.begin());
    return Term::application(std::move(head), std::move(items));
  }

  Term read_atom() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && !is_delim(text_[pos_])) ++pos_;
    std::string_view tok = text_.substr(start, pos_ - start);
    for (std::size_t i = scope_.size(); i-- > 0;)
      if (scope_[i] == tok) return Term::variable(scope_.size() - 1 - i);
    for (const Special& s : kSpecials)
      if (tok == s.text) return Term::constant(std::string(s.tag), std::string(s.lemma));
    std::size_t bar = tok.find('|');
    if (bar == std::string_view::npos) {
      if (!tok.empty() && std::all_of(tok.begin(), tok.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw ParseError("unbound variable '" + std::string(tok) + "'", start);
      throw ParseError("unbound variable or untagged atom '" + std::string(tok) + "'", start);
    }
    std::string tag(tok.substr(0, bar));
    if (!tags_.contains(tag)) throw DataError("unknown tag '" + tag + "' at position " + std::to_string(start));
    std::string_view rest = tok.substr(bar + 1);
    if (rest.empty()) throw ParseError("empty lemma", start + bar + 1);
    Constant c;
    c.tag = std::move(tag);
    std::size_t dash = rest.find('-', 1);
    c.lemma = std::string(rest.substr(0, dash));
    while (dash != std::string_view::npos) {
      std::size_t next = rest.find('-', dash + 1);
      c.features.emplace_back(rest.substr(dash + 1, next == std::string_view::npos ? rest.npos : next - dash - 1));
      dash = next;
    }
    return Term::constant(std::move(c));
  }

  std::string_view text_;
  const TagTable& tags_;
  std::size_t pos_ = 0;
  std::vector<std::string> scope_;
};

}  // namespace

Term parse_lf(std::string_view text, const TagTable& tags) {
  Reader reader(text, tags);
  return normalize(reader.read_all());
}

// ---------------------------------------------------------------------------
// Shells

namespace {

Term shell_of(const Term& t, const TagTable& tags) {
  switch (t.kind()) {
    case Term::Kind::Variable:
      return t;
    case Term::Kind::Constant:
      return Term::constant("", tags.at(t.constant().tag).shell_marker);
    case Term::Kind::Lambda:
      return Term::lambda(shell_of(t.body(), tags));
    case Term::Kind::Application: {
      std::vector<Term> args;
      args.reserve(t.args().size());
      for (const Term& a : t.args()) args.push_back(shell_of(a, tags));
      return Term::application(shell_of(t.head(), tags), std::move(args));
    }
  }
  return t;
}

}  // namespace

ShellTerm to_shell(const Term& t, const TagTable& tags) { return ShellTerm{shell_of(t, tags)}; }

// ---------------------------------------------------------------------------
// Splits

namespace {

struct Position {
  std::size_t id;
  Term term;
  std::size_t depth;  // lambdas between the body root and this node
};

void collect_positions(const Term& t, std::size_t& next_id, std::size_t depth, std::vector<Position>& out) {
  out.push_back(Position{next_id++, t, depth});
  switch (t.kind()) {
    case Term::Kind::Lambda:
      collect_positions(t.body(), next_id, depth + 1, out);
      break;
    case Term::Kind::Application:
      collect_positions(t.head(), next_id, depth, out);
      for (const Term& a : t.args()) collect_positions(a, next_id, depth, out);
      break;
    default:
      break;
  }
}

using Replacement = std::function<Term(std::size_t depth)>;

// Rebuild t (whose preorder ids start at `id`) with the nodes in `targets`
// replaced.
Term rebuild(const Term& t, std::size_t id, std::size_t depth, const std::set<std::size_t>& targets,
             const Replacement& replace) {
  if (targets.count(id)) return replace(depth);
  auto first = targets.lower_bound(id);
  if (first == targets.end() || *first >= id + t.size()) return t;
  switch (t.kind()) {
    case Term::Kind::Lambda:
      return Term::lambda(rebuild(t.body(), id + 1, depth + 1, targets, replace));
    case Term::Kind::Application: {
      std::size_t cur = id + 1;
      Term head = rebuild(t.head(), cur, depth, targets, replace);
      cur += t.head().size();
      std::vector<Term> args;
      for (const Term& a : t.args()) {
        args.push_back(rebuild(a, cur, depth, targets, replace));
        cur += a.size();
      }
      return Term::application(std::move(head), std::move(args));
    }
    default:
      return t;
  }
}

Term wrap(Term t, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) t = Term::lambda(std::move(t));
  return t;
}

const std::string kPlaceholderTag = "\x01hole";

bool has_constant(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Constant:
      return t.constant().tag != kPlaceholderTag;
    case Term::Kind::Lambda:
      return has_constant(t.body());
    case Term::Kind::Application:
      if (has_constant(t.head())) return true;
      for (const Term& a : t.args())
        if (has_constant(a)) return true;
      return false;
    default:
      return false;
  }
}

// Replace occurrences of `pattern` (given relative to the root of t) with a
// placeholder constant numbered `slot`. Returns whether anything matched.
Term replace_pattern(const Term& t, const Term& pattern, std::size_t slot, std::size_t depth, bool& matched) {
  if (t == (depth == 0 ? pattern : shift(pattern, static_cast<long>(depth)))) {
    matched = true;
    return Term::constant(kPlaceholderTag, std::to_string(slot));
  }
  switch (t.kind()) {
    case Term::Kind::Lambda:
      return Term::lambda(replace_pattern(t.body(), pattern, slot, depth + 1, matched));
    case Term::Kind::Application: {
      Term head = replace_pattern(t.head(), pattern, slot, depth, matched);
      std::vector<Term> args;
      for (const Term& a : t.args()) args.push_back(replace_pattern(a, pattern, slot, depth, matched));
      return Term::application(std::move(head), std::move(args));
    }
    default:
      return t;
  }
}

// Turn placeholders 0..m-1 into variables bound by m binders wrapped around t.
Term bind_placeholders(const Term& t, std::size_t m, std::size_t depth = 0) {
  switch (t.kind()) {
    case Term::Kind::Constant:
      if (t.constant().tag == kPlaceholderTag) {
        std::size_t slot = std::stoul(t.constant().lemma);
        return Term::variable(depth + (m - 1 - slot));
      }
      return t;
    case Term::Kind::Lambda:
      return Term::lambda(bind_placeholders(t.body(), m, depth + 1));
    case Term::Kind::Application: {
      Term head = bind_placeholders(t.head(), m, depth);
      std::vector<Term> args;
      for (const Term& a : t.args()) args.push_back(bind_placeholders(a, m, depth));
      return Term::application(std::move(head), std::move(args));
    }
    default:
      return t;
  }
}

class SplitCollector {
 public:
  void add(Term functor, Term argument) {
    std::string key = render(functor) + "\x1f" + render(argument);
    if (seen_.emplace(std::move(key), splits_.size()).second)
      splits_.push_back(Split{std::move(functor), std::move(argument)});
  }

  std::vector<Split> take() {
    std::vector<std::pair<std::string, std::size_t>> order(seen_.begin(), seen_.end());
    std::vector<Split> out;
    out.reserve(order.size());
    for (auto& [key, idx] : order) out.push_back(std::move(splits_[idx]));
    return out;
  }

 private:
  std::map<std::string, std::size_t> seen_;
  std::vector<Split> splits_;
};

// Ordered selections of up to `m` distinct elements.
void selections(std::size_t n, std::size_t m, std::vector<std::size_t>& cur,
                const std::function<void(const std::vector<std::size_t>&)>& visit) {
  if (!cur.empty()) visit(cur);
  if (cur.size() == m) return;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::find(cur.begin(), cur.end(), i) != cur.end()) continue;
    cur.push_back(i);
    selections(n, m, cur, visit);
    cur.pop_back();
  }
}

}  // namespace

std::vector<Split> enumerate_splits(const Term& t, const SplitOptions& options) {
  const std::size_t k = count_binders(t);
  const Term& body = strip_binders(t);

  std::vector<Position> positions;
  std::size_t next_id = 0;
  collect_positions(body, next_id, 0, positions);

  SplitCollector out;

  // Group closed proper subterms by identity.
  std::vector<std::pair<Term, std::vector<std::size_t>>> groups;
  std::unordered_map<Term, std::size_t, TermHash> group_of;
  for (const Position& p : positions) {
    if (p.id == 0 || !is_closed(p.term)) continue;
    auto [it, inserted] = group_of.try_emplace(p.term, groups.size());
    if (inserted) groups.push_back({p.term, {}});
    groups[it->second].second.push_back(p.id);
  }

  auto functor_for = [&](const std::set<std::size_t>& ids) {
    Term f_body = rebuild(body, 0, 0, ids, [&](std::size_t d) { return Term::variable(d + k); });
    return Term::lambda(wrap(std::move(f_body), k));
  };

  for (const auto& [sub, ids] : groups) {
    if (options.subset_occurrences && ids.size() > 1) {
      std::size_t n = std::min<std::size_t>(ids.size(), 12);
      for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
        std::set<std::size_t> chosen;
        for (std::size_t i = 0; i < n; ++i)
          if (mask & (std::size_t{1} << i)) chosen.insert(ids[i]);
        out.add(functor_for(chosen), sub);
      }
    } else {
      out.add(functor_for(std::set<std::size_t>(ids.begin(), ids.end())), sub);
    }
  }

  if (options.max_new_binders >= 2) {
    const std::size_t m_max = options.max_new_binders - 1;
    for (const Position& p : positions) {
      // Candidate inner subterms, expressed relative to p's root.
      std::vector<Term> inner;
      std::vector<Position> sub_positions;
      std::size_t sub_id = 0;
      collect_positions(p.term, sub_id, 0, sub_positions);
      for (const Position& q : sub_positions) {
        if (q.id == 0 || has_free_below(q.term, q.depth)) continue;
        Term rel = shift(q.term, -static_cast<long>(q.depth), 0);
        if (std::find(inner.begin(), inner.end(), rel) == inner.end()) inner.push_back(std::move(rel));
      }
      std::set<std::size_t> targets;
      if (p.id != 0 && is_closed(p.term)) {
        const auto& ids = groups[group_of.at(p.term)].second;
        targets.insert(ids.begin(), ids.end());
      } else {
        targets.insert(p.id);
      }
      std::vector<std::size_t> cur;
      selections(inner.size(), m_max, cur, [&](const std::vector<std::size_t>& pick) {
        Term s = p.term;
        for (std::size_t slot = 0; slot < pick.size(); ++slot) {
          bool matched = false;
          s = replace_pattern(s, inner[pick[slot]], slot, 0, matched);
          if (!matched) return;
        }
        if (has_any_free(s, 0) || !has_constant(s)) return;
        Term argument = wrap(bind_placeholders(s, pick.size()), pick.size());
        Term f_body = rebuild(body, 0, 0, targets, [&](std::size_t d) {
          std::vector<Term> call_args;
          for (std::size_t idx : pick) call_args.push_back(shift(inner[idx], static_cast<long>(d - p.depth), 0));
          return Term::application(Term::variable(d + k), std::move(call_args));
        });
        out.add(Term::lambda(wrap(std::move(f_body), k)), std::move(argument));
      });
    }
  }
  return out.take();
}

}  // namespace ccgboot::lf
