#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fractal/graph.hpp"
#include "fractal/skeleton.hpp"
#include "fractal/term.hpp"

namespace fractal {

// Distinct intervals available to fill holes, kept sorted.
struct ArgumentSet {
  std::vector<Interval> intervals;
  Mode provenance = Mode::Intervals;
  std::size_t level = 0;  // level of the graph the set was taken over

  std::size_t size() const noexcept { return intervals.size(); }
  bool contains(const Interval& iv) const;
};

// Per generic class, one admissible argument set per type parameter.
using HoleArguments = std::map<std::string, std::vector<ArgumentSet>, std::less<>>;

struct Budget {
  std::size_t max_nodes = 100'000;  // per level
  std::size_t max_level = 4;

  // Default budget, with FRACTAL_BUDGET overriding max_nodes when set.
  static Budget from_env();
};

// All comparable pairs [S,T] of g contained in bound.
ArgumentSet intervals_over(const ClassTable& table, const SubtypingGraph& g,
                           const Interval& bound = Interval::unbounded());

// The three variance forms [L,T], [T,U] and [T,T] of every node T of g,
// where bound = [L,U]; forms outside the bound are pruned.
ArgumentSet wildcard_forms_over(const ClassTable& table, const SubtypingGraph& g,
                                const Interval& bound = Interval::unbounded());

// Prunes args to each parameter's declared bound and adds the parameter's
// default interval.
HoleArguments admissible_arguments(const ClassTable& table, const ArgumentSet& args);

// Number of nodes build() would produce for these arguments.
std::size_t planned_node_count(const ClassTable& table, const HoleArguments& args);

// Ground class types plus every generic class applied to each combination of
// its hole arguments; order from the subtyping judgment.
SubtypingGraph build(std::shared_ptr<const ClassTable> table, const HoleArguments& args,
                     std::size_t level = 0, Mode mode = Mode::Intervals,
                     const Budget& budget = {});

// G_host(X): keeps host's ground nodes, turns every parameterized node into
// its head-class pattern, and fills the pattern's holes from args.
SubtypingGraph apply_host(const SubtypingGraph& host, const ArgumentSet& args,
                          const Budget& budget = {});

struct LevelSequence {
  std::shared_ptr<const ClassTable> table;
  Mode mode = Mode::Intervals;
  std::vector<SubtypingGraph> levels;
  std::vector<Census> census;
  // Set when the requested depth could not be reached within budget.
  std::optional<std::string> budget_error;

  std::size_t deepest() const { return levels.size() - 1; }
};

// G0 has every hole at its default; G(i+1) = G0 with holes filled from the
// intervals (or wildcard forms) over Gi.
LevelSequence expand(std::shared_ptr<const ClassTable> table, std::size_t upto,
                     Mode mode = Mode::Intervals, const Budget& budget = {});

// Extends an existing sequence in place to at least `upto` levels.
void extend(LevelSequence& seq, std::size_t upto, const Budget& budget = {});

enum class TransformKind { Copy, Flip, Flatten };
const char* to_string(TransformKind kind);
TransformKind parse_transform_kind(std::string_view name);

// copy is the identity, flip the dual order, flatten the antichain on the
// same nodes.
SubtypingGraph transform(const SubtypingGraph& g, TransformKind kind);

struct EmbeddingReport {
  std::string cls;
  std::size_t hole = 0;
  TransformKind kind = TransformKind::Copy;
  std::vector<std::pair<TypeTerm, TypeTerm>> mapping;  // source -> image
  std::vector<TypeTerm> pruned;                          // sources outside the bound
  bool injective = false;
  bool images_present = false;  // every image is a node of the next level
  bool law_holds = false;       // order-preserving / reversing / antichain
  bool verified = false;
};

// Maps every node T of g into class `cls` at position `hole` (other holes at
// their defaults) and checks the image inside `next`, the level built over g.
EmbeddingReport embedding_image(const ClassTable& table, const SubtypingGraph& g,
                                const SubtypingGraph& next, std::string_view cls,
                                std::size_t hole, TransformKind kind);

// Same, building the next level from the intervals over g.
EmbeddingReport embedding_image(const ClassTable& table, const SubtypingGraph& g,
                                std::string_view cls, std::size_t hole, TransformKind kind);

struct EquationCheck {
  std::string description;
  std::size_t level = 0;
  bool expect_equal = true;
  bool equal = false;
  std::size_t lhs_nodes = 0;
  std::size_t rhs_nodes = 0;

  bool passed() const { return equal == expect_equal; }
};

struct EquationReport {
  std::vector<EquationCheck> checks;
  std::optional<std::string> budget_error;

  bool all_passed() const;
};

// For each 1 <= i <= upto: G0(I(Gi)) = Gi(I(Gi)), Gi(I(G0)) = G0(I(G0)) and
// Gi(I(G0)) != G0(I(Gi)).
EquationReport check_equations(std::shared_ptr<const ClassTable> table, std::size_t upto,
                               const Budget& budget = {});

}  // namespace fractal
