#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ccgboot::ccg {

enum class Direction { Forward, Backward };

// CCG category: an atom (S, Sq, Swhq, NP, N) or result/argument with a slash.
class Category {
 public:
  static Category atom(std::string name);
  static Category slash(Category result, Direction dir, Category argument);

  bool is_atom() const { return !node_->result; }
  const std::string& name() const { return node_->name; }
  const Category& result() const { return *node_->result; }
  const Category& argument() const { return *node_->argument; }
  Direction direction() const { return node_->dir; }

  std::size_t slash_count() const { return node_->slashes; }
  std::size_t hash() const { return node_->hash; }

  friend bool operator==(const Category& a, const Category& b);

 private:
  struct Node {
    std::string name;
    Direction dir = Direction::Forward;
    std::shared_ptr<const Category> result = nullptr;
    std::shared_ptr<const Category> argument = nullptr;
    std::size_t slashes = 0;
    std::size_t hash = 0;
  };
  explicit Category(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct CategoryHash {
  std::size_t operator()(const Category& c) const { return c.hash(); }
};

inline const std::vector<std::string>& atom_names() {
  static const std::vector<std::string> names{"S", "Sq", "Swhq", "NP", "N"};
  return names;
}

// Left-associative text form: "S\NP/NP" is ((S\NP)/NP).
std::string render(const Category& c);
// Same shape with both slashes written '|'; the context key for shell LFs.
std::string render_undirected(const Category& c);

// Accepts "/", "\" and the doubled "\\" used in some lexicon files.
Category parse_category(std::string_view text);

struct SplitInventory {
  std::vector<Category> arguments = default_arguments();
  std::size_t max_slashes = 2;

  static std::vector<Category> default_arguments();
};

struct CategorySplit {
  Category left;
  Category right;
  // True when the left child is the functor (forward application).
  bool forward;
};

// Reverse application: for each candidate argument Y, (cat/Y, Y) and
// (Y, cat\Y), keeping pairs whose categories stay within the slash bound.
// Sorted by rendered text.
std::vector<CategorySplit> split_category(const Category& cat, const SplitInventory& inventory = {});

// Forward or backward application of two adjacent categories, if any applies.
std::optional<Category> combine(const Category& left, const Category& right);

// T/(T\A) and T\(T/A) become A; anything else is returned unchanged.
Category strip_type_raising(const Category& cat);

}  // namespace ccgboot::ccg
