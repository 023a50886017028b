#include "fractal/subtyping.hpp"

#include <gtest/gtest.h>

#include "fractal/error.hpp"
#include "fractal/types.hpp"
#include "support/oracles.hpp"

namespace fractal {
namespace {

class SubtypingTest : public ::testing::Test {
 protected:
  ClassTable table = parse_skeleton("class C<T> extends Object; class D<T> extends Object;");

  TypeTerm T(const char* text) { return parse_type(table, text); }
  bool sub(const char* a, const char* b) { return is_subtype(table, T(a), T(b)); }
  Interval I(const char* lo, const char* hi) { return {T(lo), T(hi)}; }
};

TEST_F(SubtypingTest, SuperObjectIdentifiedWithObject) {
  EXPECT_TRUE(sub("C<Object>", "C<? super Object>"));
  EXPECT_TRUE(sub("C<? super Object>", "C<Object>"));
}

TEST_F(SubtypingTest, Examples) {
  EXPECT_TRUE(sub("C<? extends C<?>>", "C<?>"));
  EXPECT_FALSE(sub("C<?>", "C<? extends C<?>>"));
  EXPECT_FALSE(sub("C<Null>", "D<?>"));
  EXPECT_TRUE(sub("Null", "D<? super C<?>>"));
  EXPECT_FALSE(sub("C<?>", "Null"));
  EXPECT_TRUE(sub("D<Null>", "Object"));
}

TEST_F(SubtypingTest, GroundAncestors) {
  ClassTable t2 = parse_skeleton("class A; class B extends A; class G<T> extends B;");
  auto ty = [&](const char* s) { return parse_type(t2, s); };
  EXPECT_TRUE(is_subtype(t2, ty("G<?>"), ty("A")));
  EXPECT_TRUE(is_subtype(t2, ty("G<G<?>>"), ty("B")));
  EXPECT_FALSE(is_subtype(t2, ty("A"), ty("G<?>")));
  EXPECT_FALSE(is_subtype(t2, ty("B"), ty("G<?>")));
  EXPECT_TRUE(is_subtype(t2, ty("G<B>"), ty("G<? extends A>")));
  EXPECT_FALSE(is_subtype(t2, ty("G<A>"), ty("G<? extends B>")));
  EXPECT_TRUE(is_subtype(t2, ty("G<A>"), ty("G<? super B>")));
}

TEST_F(SubtypingTest, IntervalContains) {
  EXPECT_TRUE(interval_contains(table, I("Null", "Object"), I("C<?>", "C<?>")));
  EXPECT_FALSE(interval_contains(table, I("Null", "C<?>"), I("C<?>", "Object")));
  EXPECT_TRUE(interval_contains(table, I("C<?>", "C<?>"), I("C<?>", "C<?>")));
}

TEST_F(SubtypingTest, IntervalPrecedes) {
  EXPECT_TRUE(interval_precedes(table, I("Null", "Null"), I("Object", "Object")));
  EXPECT_FALSE(interval_precedes(table, I("Null", "Object"), I("Null", "Object")));
  EXPECT_TRUE(interval_precedes(table, I("Null", "C<?>"), I("C<?>", "Object")));
}

TEST_F(SubtypingTest, IntervalRelationsAgreeWithPairEnumeration) {
  // Containment and precedence decided by brute force over G0 as sets.
  ClassTable one = parse_skeleton("class C<T>;");
  auto g0 = oracle::levels(one, 0)[0];
  std::vector<Interval> ivs;
  for (std::size_t i = 0; i < g0.nodes.size(); ++i) {
    for (std::size_t j = 0; j < g0.nodes.size(); ++j) {
      if (g0.leq[i][j]) ivs.push_back({g0.nodes[i], g0.nodes[j]});
    }
  }
  auto in = [&](const Interval& iv, std::size_t z) {
    return g0.leq[g0.find(iv.lo)][z] && g0.leq[z][g0.find(iv.hi)];
  };
  for (const auto& a : ivs) {
    for (const auto& b : ivs) {
      bool contains = true;
      bool precedes = true;
      for (std::size_t z = 0; z < g0.nodes.size(); ++z) {
        if (in(b, z) && !in(a, z)) contains = false;
        // every member of a is below every member of b
        for (std::size_t w = 0; w < g0.nodes.size(); ++w) {
          if (in(a, z) && in(b, w) && !g0.leq[z][w]) precedes = false;
        }
      }
      EXPECT_EQ(interval_contains(one, a, b), contains);
      EXPECT_EQ(interval_precedes(one, a, b), precedes);
    }
  }
}

TEST_F(SubtypingTest, TopAndBottom) {
  ClassTable one = parse_skeleton("class C<T>;");
  const auto posets = oracle::levels(one, 2);
  for (const auto& t : posets[2].nodes) {
    EXPECT_TRUE(is_subtype(one, t, TypeTerm::object()));
    EXPECT_TRUE(is_subtype(one, TypeTerm::null(), t));
  }
}

TEST_F(SubtypingTest, VarianceLaws) {
  ClassTable one = parse_skeleton("class C<T>;");
  const auto g1 = oracle::levels(one, 1)[1];
  const TypeTerm o = TypeTerm::object();
  const TypeTerm n = TypeTerm::null();
  for (const auto& s : g1.nodes) {
    for (const auto& t : g1.nodes) {
      if (!is_subtype(one, s, t)) continue;
      auto c = [](const TypeTerm& lo, const TypeTerm& hi) {
        return TypeTerm::apply("C", {{lo, hi}});
      };
      EXPECT_TRUE(is_subtype(one, c(n, s), c(n, t)));
      EXPECT_TRUE(is_subtype(one, c(t, o), c(s, o)));
      if (s != t) {
        EXPECT_FALSE(is_subtype(one, c(s, s), c(t, t)));
        EXPECT_FALSE(is_subtype(one, c(t, t), c(s, s)));
      }
    }
  }
}

TEST_F(SubtypingTest, PartialOrderOnLevelTwo) {
  ClassTable one = parse_skeleton("class C<T>;");
  const auto nodes = oracle::levels(one, 2)[2].nodes;
  for (const auto& a : nodes) {
    EXPECT_TRUE(is_subtype(one, a, a));
    for (const auto& b : nodes) {
      const bool ab = is_subtype(one, a, b);
      if (a != b && ab) EXPECT_FALSE(is_subtype(one, b, a));
      for (const auto& c : nodes) {
        if (ab && is_subtype(one, b, c)) EXPECT_TRUE(is_subtype(one, a, c));
      }
    }
  }
}

TEST_F(SubtypingTest, AgreesWithSetInclusionOracle) {
  ClassTable one = parse_skeleton("class C<T>;");
  const auto g2 = oracle::levels(one, 2)[2];
  for (std::size_t i = 0; i < g2.nodes.size(); ++i) {
    for (std::size_t j = 0; j < g2.nodes.size(); ++j) {
      EXPECT_EQ(is_subtype(one, g2.nodes[i], g2.nodes[j]), g2.leq[i][j]);
    }
  }
}

TEST_F(SubtypingTest, RejectsIllFormedTerms) {
  EXPECT_THROW(is_subtype(table, TypeTerm::ground("C"), TypeTerm::object()), Error);
  EXPECT_THROW(is_subtype(table, TypeTerm::ground("Q"), TypeTerm::object()), Error);
}

}  // namespace
}  // namespace fractal
