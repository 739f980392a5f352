#include "ccgboot/category.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

#include "ccgboot/error.hpp"

namespace ccgboot::ccg {

Category Category::atom(std::string name) {
  Node n;
  n.hash = std::hash<std::string>{}(name);
  n.name = std::move(name);
  return Category(std::make_shared<const Node>(std::move(n)));
}

Category Category::slash(Category result, Direction dir, Category argument) {
  Node n;
  n.dir = dir;
  n.slashes = 1 + result.slash_count() + argument.slash_count();
  std::size_t h = result.hash() * 1000003u + (dir == Direction::Forward ? 17 : 29);
  n.hash = h ^ (argument.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
  n.result = std::make_shared<const Category>(std::move(result));
  n.argument = std::make_shared<const Category>(std::move(argument));
  return Category(std::make_shared<const Node>(std::move(n)));
}

bool operator==(const Category& a, const Category& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.is_atom() != b.is_atom()) return false;
  if (a.is_atom()) return a.name() == b.name();
  return a.direction() == b.direction() && a.result() == b.result() && a.argument() == b.argument();
}

namespace {

void render_into(const Category& c, bool undirected, std::string& out) {
  if (c.is_atom()) {
    out += c.name();
    return;
  }
  render_into(c.result(), undirected, out);
  out += undirected ? '|' : (c.direction() == Direction::Forward ? '/' : '\\');
  if (c.argument().is_atom()) {
    out += c.argument().name();
  } else {
    out += '(';
    render_into(c.argument(), undirected, out);
    out += ')';
  }
}

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  Category read_all() {
    Category c = read_expr();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("unexpected character in category", pos_);
    return c;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && text_[pos_] == ' ') ++pos_;
  }

  Category read_expr() {
    Category left = read_primary();
    while (true) {
      skip_ws();
      if (pos_ >= text_.size()) break;
      Direction dir;
      if (text_[pos_] == '/') {
        dir = Direction::Forward;
        ++pos_;
      } else if (text_[pos_] == '\\') {
        dir = Direction::Backward;
        ++pos_;
        if (pos_ < text_.size() && text_[pos_] == '\\') ++pos_;
      } else {
        break;
      }
      left = Category::slash(std::move(left), dir, read_primary());
    }
    return left;
  }

  Category read_primary() {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '(') {
      std::size_t open = pos_++;
      Category inner = read_expr();
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != ')') throw ParseError("unbalanced '(' in category", open);
      ++pos_;
      return inner;
    }
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    std::string name(text_.substr(start, pos_ - start));
    if (name.empty()) throw ParseError("expected a category", start);
    const auto& atoms = atom_names();
    if (std::find(atoms.begin(), atoms.end(), name) == atoms.end())
      throw ParseError("unknown category atom '" + name + "'", start);
    return Category::atom(std::move(name));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string render(const Category& c) {
  std::string out;
  render_into(c, false, out);
  return out;
}

std::string render_undirected(const Category& c) {
  std::string out;
  render_into(c, true, out);
  return out;
}

Category parse_category(std::string_view text) { return Reader(text).read_all(); }

std::vector<Category> SplitInventory::default_arguments() {
  return {parse_category("NP"), parse_category("N"), parse_category("S"), parse_category("S\\NP"),
          parse_category("S/NP")};
}

std::vector<CategorySplit> split_category(const Category& cat, const SplitInventory& inventory) {
  std::vector<CategorySplit> out;
  for (const Category& y : inventory.arguments) {
    if (y.slash_count() > inventory.max_slashes) continue;
    Category fwd = Category::slash(cat, Direction::Forward, y);
    if (fwd.slash_count() <= inventory.max_slashes) out.push_back(CategorySplit{fwd, y, true});
    Category bwd = Category::slash(cat, Direction::Backward, y);
    if (bwd.slash_count() <= inventory.max_slashes) out.push_back(CategorySplit{y, bwd, false});
  }
  std::sort(out.begin(), out.end(), [](const CategorySplit& a, const CategorySplit& b) {
    return std::make_pair(render(a.left), render(a.right)) < std::make_pair(render(b.left), render(b.right));
  });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const CategorySplit& a, const CategorySplit& b) {
                          return a.left == b.left && a.right == b.right;
                        }),
            out.end());
  return out;
}

std::optional<Category> combine(const Category& left, const Category& right) {
  if (!left.is_atom() && left.direction() == Direction::Forward && left.argument() == right) return left.result();
  if (!right.is_atom() && right.direction() == Direction::Backward && right.argument() == left)
    return right.result();
  return std::nullopt;
}

Category strip_type_raising(const Category& cat) {
  if (cat.is_atom() || cat.argument().is_atom()) return cat;
  const Category& inner = cat.argument();
  Direction want = cat.direction() == Direction::Forward ? Direction::Backward : Direction::Forward;
  if (inner.direction() == want && inner.result() == cat.result()) return inner.argument();
  return cat;
}

}  // namespace ccgboot::ccg
