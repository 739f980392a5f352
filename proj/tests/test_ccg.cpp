#include <gtest/gtest.h>

#include "ccgboot/category.hpp"
#include "ccgboot/error.hpp"

using namespace ccgboot;
using namespace ccgboot::ccg;

namespace {

Category C(const char* s) { return parse_category(s); }

bool has_pair(const std::vector<CategorySplit>& splits, const char* l, const char* r) {
  for (const auto& sp : splits)
    if (render(sp.left) == l && render(sp.right) == r) return true;
  return false;
}

}  // namespace

TEST(Category, ParseLeftAssociative) {
  Category c = C("S\\NP/NP");
  ASSERT_FALSE(c.is_atom());
  EXPECT_EQ(c.direction(), Direction::Forward);
  EXPECT_EQ(c.argument(), C("NP"));
  EXPECT_EQ(c.result().direction(), Direction::Backward);
  EXPECT_EQ(c.result().result(), C("S"));
  EXPECT_EQ(c.slash_count(), 2u);
}

TEST(Category, ParseAndRender) {
  EXPECT_TRUE(C("NP").is_atom());
  EXPECT_EQ(render(C("S\\NP/(S\\NP)")), "S\\NP/(S\\NP)");
  EXPECT_EQ(C("S\\\\NP/NP"), C("S\\NP/NP"));
  EXPECT_EQ(render(C("((S\\NP))/NP")), "S\\NP/NP");
  EXPECT_EQ(render(C("S\\(S/NP)")), "S\\(S/NP)");
  EXPECT_EQ(render_undirected(C("S\\NP/NP")), "S|NP|NP");
  EXPECT_EQ(render_undirected(C("S/NP")), render_undirected(C("S\\NP")));
  for (const char* t : {"Sq", "Swhq\\NP", "NP/N", "S\\NP\\(S\\NP)/NP", "N/N"}) EXPECT_EQ(render(C(t)), t);
}

TEST(Category, ParseErrors) {
  EXPECT_THROW(C("VP"), ParseError);
  EXPECT_THROW(C("S/"), ParseError);
  EXPECT_THROW(C("(S/NP"), ParseError);
  EXPECT_THROW(C("S NP"), ParseError);
}

TEST(CategorySplit, Examples) {
  auto s = split_category(C("S"));
  EXPECT_TRUE(has_pair(s, "NP", "S\\NP"));
  EXPECT_TRUE(has_pair(s, "S/NP", "NP"));
  auto vp = split_category(C("S\\NP"));
  EXPECT_TRUE(has_pair(vp, "S\\NP/NP", "NP"));
  EXPECT_TRUE(has_pair(vp, "NP", "S\\NP\\NP"));
  EXPECT_TRUE(has_pair(split_category(C("N")), "N/N", "N"));
}

TEST(CategorySplit, RecombinesAndRespectsBound) {
  SplitInventory inv;
  for (const char* text : {"S", "Sq", "NP", "N", "S\\NP", "S/NP", "NP/N", "S\\NP/NP"}) {
    Category c = C(text);
    auto splits = split_category(c, inv);
    for (const auto& sp : splits) {
      auto back = combine(sp.left, sp.right);
      ASSERT_TRUE(back.has_value()) << text;
      EXPECT_EQ(*back, c);
      EXPECT_LE(sp.left.slash_count(), inv.max_slashes);
      EXPECT_LE(sp.right.slash_count(), inv.max_slashes);
      EXPECT_EQ(sp.forward, !sp.left.is_atom() && sp.left.direction() == Direction::Forward &&
                                 sp.left.result() == c && sp.left.argument() == sp.right);
    }
    for (std::size_t i = 1; i < splits.size(); ++i)
      EXPECT_LT(std::make_pair(render(splits[i - 1].left), render(splits[i - 1].right)),
                std::make_pair(render(splits[i].left), render(splits[i].right)));
  }
  EXPECT_TRUE(split_category(C("S\\NP/NP")).empty());
}

TEST(CategorySplit, CountForAtomicS) {
  // five candidates, both directions, all within two slashes
  EXPECT_EQ(split_category(C("S")).size(), 10u);
  // S\NP: only atomic arguments keep the functor at two slashes
  EXPECT_EQ(split_category(C("S\\NP")).size(), 6u);
}

TEST(Category, StripTypeRaising) {
  EXPECT_EQ(strip_type_raising(C("S/(S\\NP)")), C("NP"));
  EXPECT_EQ(strip_type_raising(C("S\\(S/NP)")), C("NP"));
  EXPECT_EQ(strip_type_raising(C("NP")), C("NP"));
  EXPECT_EQ(strip_type_raising(C("S\\NP/NP")), C("S\\NP/NP"));
  EXPECT_EQ(strip_type_raising(C("S/(S/NP)")), C("S/(S/NP)"));
}
