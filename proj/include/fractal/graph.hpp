#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fractal/bool_matrix.hpp"
#include "fractal/skeleton.hpp"
#include "fractal/term.hpp"

namespace fractal {

enum class Mode { Intervals, Wildcards };

const char* to_string(Mode mode);
Mode parse_mode(std::string_view name);

// A finite poset of type terms. Nodes are sorted by their Java rendering.
// relation(i, j) means nodes[i] <: nodes[j]; it may be any relation whose
// reflexive-transitive closure is a partial order. The closure (order) and
// covering relation (hasse) are computed once at construction.
class SubtypingGraph {
 public:
  SubtypingGraph(std::shared_ptr<const ClassTable> table, std::vector<TypeTerm> nodes,
                 const BoolMatrix& relation, std::size_t level = 0,
                 Mode mode = Mode::Intervals);

  const ClassTable& table() const noexcept { return *table_; }
  const std::shared_ptr<const ClassTable>& table_ptr() const noexcept { return table_; }

  std::size_t size() const noexcept { return nodes_.size(); }
  const std::vector<TypeTerm>& nodes() const noexcept { return nodes_; }
  const TypeTerm& node(std::size_t i) const { return nodes_.at(i); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const noexcept { return names_; }

  std::optional<std::size_t> index_of(const TypeTerm& t) const;
  bool contains(const TypeTerm& t) const { return index_of(t).has_value(); }

  const BoolMatrix& relation() const noexcept { return relation_; }
  const BoolMatrix& order() const noexcept { return order_; }
  const BoolMatrix& hasse() const noexcept { return hasse_; }
  bool below(std::size_t i, std::size_t j) const { return order_(i, j); }

  // Hasse edges as (supertype, subtype) index pairs, sorted.
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;
  std::size_t edge_count() const { return hasse_.count(); }

  std::size_t level() const noexcept { return level_; }
  Mode mode() const noexcept { return mode_; }

 private:
  std::shared_ptr<const ClassTable> table_;
  std::vector<TypeTerm> nodes_;
  std::vector<std::string> names_;
  BoolMatrix relation_;
  BoolMatrix order_;
  BoolMatrix hasse_;
  std::size_t level_;
  Mode mode_;
};

// counts[d] is the number of comparable ordered pairs x <= y whose longest
// Hasse path from y down to x has d edges.
struct Census {
  std::vector<std::size_t> counts;

  std::size_t total() const;
  friend bool operator==(const Census&, const Census&) = default;
};

SubtypingGraph transitive_closure(const SubtypingGraph& g);
SubtypingGraph transitive_reduction(const SubtypingGraph& g);

// The graph's own relation as a 0-1 matrix, row <: column.
BoolMatrix adjacency_matrix(const SubtypingGraph& g);

Census census_by_distance(const SubtypingGraph& g);
std::size_t longest_path(const SubtypingGraph& g);

// Lumps every parameterized node into one node per head class, labelled with
// the class at its default arguments.
SubtypingGraph quotient_by_head(const SubtypingGraph& g);

// Induced sub-poset on {x : low <: x <: high}.
SubtypingGraph window(const SubtypingGraph& g, const TypeTerm& low, const TypeTerm& high);

bool graph_equal(const SubtypingGraph& a, const SubtypingGraph& b);

enum class ExportFormat { Dot, Json, MatrixCsv };
ExportFormat parse_export_format(std::string_view name);

// Deterministic serializations. Edges always point from supertype to subtype.
std::string export_graph(const SubtypingGraph& g, ExportFormat format);

}  // namespace fractal
