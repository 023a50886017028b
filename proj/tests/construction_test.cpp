#include "fractal/construction.hpp"

#include <cstdlib>
#include <set>

#include <gtest/gtest.h>

#include "fractal/error.hpp"
#include "fractal/subtyping.hpp"
#include "fractal/types.hpp"
#include "support/oracles.hpp"

namespace fractal {
namespace {

std::shared_ptr<const ClassTable> table_of(const char* text) {
  return std::make_shared<const ClassTable>(parse_skeleton(text));
}

std::vector<std::size_t> node_counts(const LevelSequence& seq) {
  std::vector<std::size_t> out;
  for (const auto& g : seq.levels) out.push_back(g.size());
  return out;
}

class ConstructionTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    one_ = table_of("class C<T> extends Object {}");
    seq_ = new LevelSequence(expand(one_, 2));
  }
  static void TearDownTestSuite() { delete seq_; }

  const SubtypingGraph& G(std::size_t i) { return seq_->levels.at(i); }
  TypeTerm T(const char* text) { return parse_type(*one_, text); }

  static std::shared_ptr<const ClassTable> one_;
  static LevelSequence* seq_;
};

std::shared_ptr<const ClassTable> ConstructionTest::one_;
LevelSequence* ConstructionTest::seq_ = nullptr;

TEST_F(ConstructionTest, IntervalsOverLevelZero) {
  EXPECT_EQ(intervals_over(*one_, G(0)).size(), 6u);
  ArgumentSet pruned = intervals_over(*one_, G(0), Interval{TypeTerm::null(), T("C<?>")});
  ASSERT_EQ(pruned.size(), 3u);
  EXPECT_TRUE(pruned.contains(Interval::exact(TypeTerm::null())));
  EXPECT_TRUE(pruned.contains(Interval{TypeTerm::null(), T("C<?>")}));
  EXPECT_TRUE(pruned.contains(Interval::exact(T("C<?>"))));
}

TEST_F(ConstructionTest, IntervalsOverTwoClasses) {
  auto seq = expand(table_of("class C<T>; class D<T>;"), 0);
  EXPECT_EQ(intervals_over(*seq.table, seq.levels[0]).size(), 9u);
}

TEST_F(ConstructionTest, IntervalsAreSortedAndComparable) {
  ArgumentSet args = intervals_over(*one_, G(1));
  EXPECT_EQ(args.size(), G(1).order().count());
  EXPECT_TRUE(std::is_sorted(args.intervals.begin(), args.intervals.end()));
  for (const auto& iv : args.intervals) EXPECT_TRUE(is_subtype(*one_, iv.lo, iv.hi));
}

TEST_F(ConstructionTest, WildcardForms) {
  ArgumentSet w0 = wildcard_forms_over(*one_, G(0));
  EXPECT_EQ(w0.size(), 6u);
  EXPECT_EQ(w0.intervals, intervals_over(*one_, G(0)).intervals);
  EXPECT_EQ(w0.provenance, Mode::Wildcards);
  EXPECT_EQ(wildcard_forms_over(*one_, G(1)).size(), 21u);

  auto two = expand(table_of("class C<T>; class D<T>;"), 0);
  ArgumentSet w2 = wildcard_forms_over(*two.table, two.levels[0]);
  EXPECT_EQ(w2.size(), 9u);
  EXPECT_EQ(w2.intervals, intervals_over(*two.table, two.levels[0]).intervals);
}

TEST_F(ConstructionTest, BuildCounts) {
  auto g1 = build(one_, admissible_arguments(*one_, intervals_over(*one_, G(0))), 1);
  EXPECT_EQ(g1.size(), 8u);
  EXPECT_EQ(g1.edge_count(), 10u);
  auto g2 = build(one_, admissible_arguments(*one_, intervals_over(*one_, G(1))), 2);
  EXPECT_EQ(g2.size(), 32u);
  EXPECT_EQ(g2.edge_count(), oracle::levels(*one_, 2)[2].covering_pairs());
}

TEST_F(ConstructionTest, BuildTwoHoles) {
  auto table = table_of("class P<S, T>;");
  auto seq = expand(table, 1);
  EXPECT_EQ(intervals_over(*table, seq.levels[0]).size(), 6u);
  EXPECT_EQ(seq.levels[1].size(), 38u);
  EXPECT_EQ(planned_node_count(*table, admissible_arguments(*table, intervals_over(*table, seq.levels[0]))),
            38u);
}

TEST_F(ConstructionTest, BuildRejectsArgumentsOutsideBounds) {
  auto table = table_of("class C<T>; class E<T extends C<?>>;");
  auto seq = expand(table, 0);
  HoleArguments args = admissible_arguments(*table, intervals_over(*table, seq.levels[0]));
  args["E"][0].intervals.push_back(Interval::exact(TypeTerm::object()));
  EXPECT_THROW(build(table, args), Error);
}

TEST_F(ConstructionTest, ApplyHost) {
  ArgumentSet i0 = intervals_over(*one_, G(0));
  ArgumentSet i1 = intervals_over(*one_, G(1));
  EXPECT_TRUE(graph_equal(apply_host(G(0), i1), G(2)));
  EXPECT_TRUE(graph_equal(apply_host(G(1), i1), apply_host(G(0), i1)));
  EXPECT_TRUE(graph_equal(apply_host(G(1), i0), apply_host(G(0), i0)));
  EXPECT_TRUE(graph_equal(apply_host(G(0), i0), G(1)));
  EXPECT_EQ(apply_host(G(0), i1).level(), 2u);
}

TEST_F(ConstructionTest, ExpandCounts) {
  EXPECT_EQ(node_counts(*seq_), (std::vector<std::size_t>{3, 8, 32}));
  EXPECT_EQ(node_counts(expand(one_, 2, Mode::Wildcards)), (std::vector<std::size_t>{3, 8, 23}));
  EXPECT_EQ(node_counts(expand(table_of("class C<T>; class D<T>;"), 1)),
            (std::vector<std::size_t>{4, 20}));
  EXPECT_FALSE(seq_->budget_error);
  ASSERT_EQ(seq_->census.size(), 3u);
  EXPECT_EQ(seq_->census[1].counts, (std::vector<std::size_t>{8, 10, 7, 4, 1}));
}

TEST_F(ConstructionTest, ModesCoincideThroughLevelOne) {
  auto w = expand(one_, 2, Mode::Wildcards);
  EXPECT_TRUE(graph_equal(w.levels[0], G(0)));
  EXPECT_TRUE(graph_equal(w.levels[1], G(1)));
  EXPECT_FALSE(graph_equal(w.levels[2], G(2)));
  for (const auto& t : w.levels[2].nodes()) EXPECT_TRUE(G(2).contains(t));
}

TEST_F(ConstructionTest, AgreesWithEnumerationOracle) {
  for (auto [mode, posets] : {std::pair{Mode::Intervals, oracle::levels(*one_, 2)},
                              std::pair{Mode::Wildcards, oracle::wildcard_levels(*one_, 2)}}) {
    auto seq = expand(one_, 2, mode);
    for (std::size_t i = 0; i <= 2; ++i) {
      const auto& g = seq.levels[i];
      const auto& p = posets[i];
      ASSERT_EQ(g.size(), p.nodes.size()) << to_string(mode) << " level " << i;
      for (std::size_t a = 0; a < g.size(); ++a) {
        const auto pa = p.find(g.node(a));
        ASSERT_GE(pa, 0);
        for (std::size_t b = 0; b < g.size(); ++b) {
          EXPECT_EQ(g.below(a, b), p.leq[pa][p.find(g.node(b))]);
        }
      }
    }
  }
}

TEST_F(ConstructionTest, LevelMonotonicity) {
  for (const auto& table : {one_, table_of("class A; class C<T> extends A; class D<T> extends A;"),
                            table_of("class A; class C<T> extends A; class E<T extends C<?>>;")}) {
    auto seq = expand(table, 2);
    for (std::size_t i = 0; i + 1 < seq.levels.size(); ++i) {
      const auto& lo = seq.levels[i];
      const auto& hi = seq.levels[i + 1];
      EXPECT_LT(lo.size(), hi.size());
      for (std::size_t a = 0; a < lo.size(); ++a) {
        const auto ha = hi.index_of(lo.node(a));
        ASSERT_TRUE(ha.has_value()) << lo.name(a);
        for (std::size_t b = 0; b < lo.size(); ++b) {
          EXPECT_EQ(lo.below(a, b), hi.below(*ha, *hi.index_of(lo.node(b))));
        }
      }
    }
  }
}

TEST_F(ConstructionTest, CountLaw) {
  for (std::size_t i = 0; i + 1 <= 2; ++i) {
    EXPECT_EQ(G(i + 1).size(), 2 + seq_->census[i].total());
  }
  auto seq = expand(table_of("class A; class B extends A; class C<T> extends B;"), 2);
  for (std::size_t i = 0; i + 1 <= 2; ++i) {
    EXPECT_EQ(seq.levels[i + 1].size(), 4 + seq.census[i].total());
  }
}

TEST_F(ConstructionTest, LongestPathGrowsByTwo) {
  for (std::size_t i = 0; i <= 2; ++i) EXPECT_EQ(longest_path(G(i)), 2 * (i + 1));
}

TEST_F(ConstructionTest, Pruning) {
  auto table = table_of("class C<T>; class E<T extends C<?>>;");
  auto seq = expand(table, 2);
  const Interval bound{TypeTerm::null(), parse_type(*table, "C<?>")};
  std::size_t e_nodes = 0;
  for (const auto& g : seq.levels) {
    for (const auto& t : g.nodes()) {
      if (t.head() != "E") continue;
      ++e_nodes;
      for (const auto& iv : t.args()) EXPECT_TRUE(interval_contains(*table, bound, iv));
    }
  }
  EXPECT_GT(e_nodes, 3u);
  EXPECT_EQ(render(*table, parse_type(*table, "E<?>"), Style::Interval), "E<[Null-C<[Null-Object]>]>");
}

TEST_F(ConstructionTest, AdmissibleArgumentsAddDefault) {
  auto table = table_of("class C<T>; class E<T extends C<?>>;");
  ArgumentSet nulls;
  nulls.intervals = {Interval::exact(TypeTerm::null()), Interval::exact(TypeTerm::object())};
  HoleArguments args = admissible_arguments(*table, nulls);
  ASSERT_EQ(args.at("E").size(), 1u);
  EXPECT_EQ(args.at("E")[0].size(), 2u);  // [Null,Null] and the default, Object pruned
  EXPECT_TRUE(args.at("E")[0].contains(Interval{TypeTerm::null(), parse_type(*table, "C<?>")}));
  EXPECT_EQ(args.at("C")[0].size(), 3u);
}

TEST_F(ConstructionTest, BudgetExceededKeepsPartialSequence) {
  Budget small{.max_nodes = 10, .max_level = 4};
  auto seq = expand(one_, 2, Mode::Intervals, small);
  EXPECT_EQ(seq.levels.size(), 2u);
  ASSERT_TRUE(seq.budget_error.has_value());

  Budget shallow{.max_nodes = 100'000, .max_level = 1};
  auto capped = expand(one_, 2, Mode::Intervals, shallow);
  EXPECT_EQ(capped.levels.size(), 2u);
  EXPECT_TRUE(capped.budget_error.has_value());

  EXPECT_THROW(build(one_, admissible_arguments(*one_, intervals_over(*one_, G(1))), 2,
                     Mode::Intervals, small),
               Error);
}

TEST_F(ConstructionTest, ExtendReusesLevels) {
  auto seq = expand(one_, 0);
  extend(seq, 2);
  EXPECT_EQ(node_counts(seq), (std::vector<std::size_t>{3, 8, 32}));
  EXPECT_TRUE(graph_equal(seq.levels[2], G(2)));
}

TEST(BudgetTest, EnvironmentOverride) {
  ::setenv("FRACTAL_BUDGET", "1234", 1);
  EXPECT_EQ(Budget::from_env().max_nodes, 1234u);
  ::unsetenv("FRACTAL_BUDGET");
  EXPECT_EQ(Budget::from_env().max_nodes, 100'000u);
}

TEST_F(ConstructionTest, TransformChain) {
  SubtypingGraph flipped = transform(G(0), TransformKind::Flip);
  EXPECT_TRUE(flipped.below(*G(0).index_of(TypeTerm::object()), *G(0).index_of(TypeTerm::null())));
  EXPECT_TRUE(graph_equal(transform(flipped, TransformKind::Flip), G(0)));
  EXPECT_TRUE(graph_equal(transform(transform(G(1), TransformKind::Flip), TransformKind::Flip), G(1)));
  EXPECT_TRUE(graph_equal(transform(G(1), TransformKind::Copy), G(1)));
  SubtypingGraph flat = transform(G(1), TransformKind::Flatten);
  EXPECT_EQ(flat.size(), 8u);
  EXPECT_EQ(flat.order().count(), 8u);
  EXPECT_EQ(flat.edge_count(), 0u);
  EXPECT_THROW(parse_transform_kind("rotate"), Error);
}

TEST_F(ConstructionTest, CopyEmbedding) {
  EmbeddingReport r = embedding_image(*one_, G(0), G(1), "C", 0, TransformKind::Copy);
  EXPECT_TRUE(r.verified);
  std::map<TypeTerm, TypeTerm> m(r.mapping.begin(), r.mapping.end());
  EXPECT_EQ(m.at(TypeTerm::object()), T("C<?>"));
  EXPECT_EQ(m.at(T("C<?>")), T("C<? extends C<?>>"));
  EXPECT_EQ(m.at(TypeTerm::null()), T("C<Null>"));
}

TEST_F(ConstructionTest, FlipEmbedding) {
  EmbeddingReport r = embedding_image(*one_, G(0), G(1), "C", 0, TransformKind::Flip);
  EXPECT_TRUE(r.verified);
  std::map<TypeTerm, TypeTerm> m(r.mapping.begin(), r.mapping.end());
  EXPECT_EQ(m.at(TypeTerm::object()), T("C<Object>"));
  EXPECT_EQ(m.at(TypeTerm::null()), T("C<?>"));
  EXPECT_TRUE(is_subtype(*one_, m.at(TypeTerm::object()), m.at(T("C<?>"))));
}

TEST_F(ConstructionTest, FlattenEmbedding) {
  EmbeddingReport r = embedding_image(*one_, G(0), G(1), "C", 0, TransformKind::Flatten);
  EXPECT_TRUE(r.verified);
  std::set<TypeTerm> image;
  for (const auto& [src, img] : r.mapping) image.insert(img);
  EXPECT_EQ(image, (std::set<TypeTerm>{T("C<Null>"), T("C<C<?>>"), T("C<Object>")}));
  for (const auto& a : image) {
    for (const auto& b : image) {
      if (a != b) EXPECT_FALSE(is_subtype(*one_, a, b));
    }
  }
}

TEST_F(ConstructionTest, EmbeddingsVerifiedOnLevelsZeroAndOne) {
  for (std::size_t i = 0; i <= 1; ++i) {
    for (auto kind : {TransformKind::Copy, TransformKind::Flip, TransformKind::Flatten}) {
      EmbeddingReport r = embedding_image(*one_, G(i), G(i + 1), "C", 0, kind);
      EXPECT_TRUE(r.verified) << to_string(kind) << " at level " << i;
      EXPECT_EQ(r.mapping.size(), G(i).size());
      EXPECT_TRUE(r.pruned.empty());
    }
  }
}

TEST_F(ConstructionTest, EmbeddingPrunesByBound) {
  auto table = table_of("class C<T>; class E<T extends C<?>>;");
  auto seq = expand(table, 1);
  EmbeddingReport r = embedding_image(*table, seq.levels[0], seq.levels[1], "E", 0, TransformKind::Flip);
  EXPECT_TRUE(r.verified);
  EXPECT_FALSE(r.pruned.empty());
  EXPECT_EQ(r.mapping.size() + r.pruned.size(), seq.levels[0].size());
}

TEST_F(ConstructionTest, EmbeddingErrors) {
  EXPECT_THROW(embedding_image(*one_, G(0), "Nope", 0, TransformKind::Copy), Error);
  EXPECT_THROW(embedding_image(*one_, G(0), "C", 1, TransformKind::Copy), Error);
  EXPECT_THROW(embedding_image(*one_, G(0), "Object", 0, TransformKind::Copy), Error);
}

TEST_F(ConstructionTest, EmbeddingWithoutExplicitNextLevel) {
  EmbeddingReport r = embedding_image(*one_, G(1), "C", 0, TransformKind::Flip);
  EXPECT_TRUE(r.verified);
}

TEST_F(ConstructionTest, Equations) {
  EquationReport report = check_equations(one_, 2);
  EXPECT_TRUE(report.all_passed());
  EXPECT_FALSE(report.budget_error);
  ASSERT_EQ(report.checks.size(), 6u);
  for (const auto& c : report.checks) {
    EXPECT_TRUE(c.passed()) << c.description;
    if (!c.expect_equal && c.level == 1) {
      EXPECT_EQ(c.lhs_nodes, 8u);
      EXPECT_EQ(c.rhs_nodes, 32u);
    }
  }
}

}  // namespace
}  // namespace fractal
