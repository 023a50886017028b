#include "fractal/graph.hpp"

#include <algorithm>
#include <numeric>

#include <nlohmann/json.hpp>

#include "fractal/error.hpp"
#include "fractal/subtyping.hpp"
#include "fractal/types.hpp"

namespace fractal {

const char* to_string(Mode mode) {
  return mode == Mode::Intervals ? "intervals" : "wildcards";
}

Mode parse_mode(std::string_view name) {
  if (name == "intervals") return Mode::Intervals;
  if (name == "wildcards") return Mode::Wildcards;
  throw Error(ErrorKind::InvalidArgument, "unknown mode '" + std::string(name) + "'");
}

SubtypingGraph::SubtypingGraph(std::shared_ptr<const ClassTable> table,
                               std::vector<TypeTerm> nodes, const BoolMatrix& relation,
                               std::size_t level, Mode mode)
    : table_(std::move(table)), level_(level), mode_(mode) {
  const std::size_t n = nodes.size();
  if (relation.rows() != n || relation.cols() != n) {
    throw Error(ErrorKind::InvalidArgument, "relation size does not match node count");
  }
  std::vector<std::string> names(n);
  for (std::size_t i = 0; i < n; ++i) names[i] = render(*table_, nodes[i]);
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(),
            [&](std::size_t a, std::size_t b) { return names[a] < names[b]; });
  for (std::size_t i = 1; i < n; ++i) {
    if (names[perm[i]] == names[perm[i - 1]]) {
      throw Error(ErrorKind::InvalidArgument, "duplicate graph node " + names[perm[i]]);
    }
  }
  nodes_.reserve(n);
  names_.reserve(n);
  for (auto p : perm) {
    nodes_.push_back(std::move(nodes[p]));
    names_.push_back(std::move(names[p]));
  }
  relation_ = BoolMatrix(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (relation(perm[i], perm[j])) relation_.set(i, j);
    }
  }
  hasse_ = hasse_reduction(relation_);
  order_ = warshall_closure(relation_);
}

std::optional<std::size_t> SubtypingGraph::index_of(const TypeTerm& t) const {
  const std::string key = render(*table_, t);
  auto it = std::lower_bound(names_.begin(), names_.end(), key);
  if (it == names_.end() || *it != key) return std::nullopt;
  return static_cast<std::size_t>(it - names_.begin());
}

std::vector<std::pair<std::size_t, std::size_t>> SubtypingGraph::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t sup = 0; sup < size(); ++sup) {
    for (std::size_t sub = 0; sub < size(); ++sub) {
      if (hasse_(sub, sup)) out.emplace_back(sup, sub);
    }
  }
  return out;
}

std::size_t Census::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::size_t{0});
}

SubtypingGraph transitive_closure(const SubtypingGraph& g) {
  return SubtypingGraph(g.table_ptr(), g.nodes(), g.order(), g.level(), g.mode());
}

SubtypingGraph transitive_reduction(const SubtypingGraph& g) {
  return SubtypingGraph(g.table_ptr(), g.nodes(), g.hasse(), g.level(), g.mode());
}

BoolMatrix adjacency_matrix(const SubtypingGraph& g) { return g.relation(); }

namespace {

// Nodes ordered so that every supertype precedes its subtypes.
std::vector<std::size_t> top_down(const SubtypingGraph& g) {
  std::vector<std::size_t> idx(g.size());
  std::iota(idx.begin(), idx.end(), 0);
  // The number of strict supertypes strictly increases along the order.
  std::vector<std::size_t> ups(g.size(), 0);
  for (std::size_t i = 0; i < g.size(); ++i) ups[i] = g.order().row_count(i);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return ups[a] < ups[b]; });
  return idx;
}

}  // namespace

Census census_by_distance(const SubtypingGraph& g) {
  const std::size_t n = g.size();
  const auto order = top_down(g);
  std::vector<std::vector<std::size_t>> children(n);
  for (auto [sup, sub] : g.edges()) children[sup].push_back(sub);

  Census census;
  std::vector<long> dist(n);
  for (std::size_t top = 0; top < n; ++top) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[top] = 0;
    for (std::size_t u : order) {
      if (dist[u] < 0) continue;
      for (std::size_t v : children[u]) dist[v] = std::max(dist[v], dist[u] + 1);
    }
    for (std::size_t x = 0; x < n; ++x) {
      if (dist[x] < 0) continue;
      auto d = static_cast<std::size_t>(dist[x]);
      if (census.counts.size() <= d) census.counts.resize(d + 1, 0);
      ++census.counts[d];
    }
  }
  return census;
}

std::size_t longest_path(const SubtypingGraph& g) {
  const std::size_t n = g.size();
  if (n == 0) return 0;
  std::vector<std::size_t> depth(n, 0);
  std::size_t best = 0;
  for (std::size_t u : top_down(g)) {
    for (std::size_t v = 0; v < n; ++v) {
      if (g.hasse()(v, u)) {
        depth[v] = std::max(depth[v], depth[u] + 1);
        best = std::max(best, depth[v]);
      }
    }
  }
  return best;
}

SubtypingGraph quotient_by_head(const SubtypingGraph& g) {
  const ClassTable& table = g.table();
  std::vector<TypeTerm> groups;
  std::vector<std::size_t> group_of(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const TypeTerm& t = g.node(i);
    TypeTerm label = t.is_ground() ? t : table.default_type(t.head());
    auto it = std::find(groups.begin(), groups.end(), label);
    group_of[i] = static_cast<std::size_t>(it - groups.begin());
    if (it == groups.end()) groups.push_back(std::move(label));
  }
  BoolMatrix rel(groups.size(), groups.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = 0; j < g.size(); ++j) {
      if (g.below(i, j) && group_of[i] != group_of[j]) rel.set(group_of[i], group_of[j]);
    }
  }
  return SubtypingGraph(g.table_ptr(), std::move(groups), rel, g.level(), g.mode());
}

SubtypingGraph window(const SubtypingGraph& g, const TypeTerm& low, const TypeTerm& high) {
  const ClassTable& table = g.table();
  if (!is_subtype(table, low, high)) {
    throw Error(ErrorKind::InvertedWindow,
                "window low " + render(table, low) + " is not a subtype of high " +
                    render(table, high));
  }
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (is_subtype(table, low, g.node(i)) && is_subtype(table, g.node(i), high)) {
      keep.push_back(i);
    }
  }
  std::vector<TypeTerm> nodes;
  BoolMatrix rel(keep.size(), keep.size());
  for (std::size_t a = 0; a < keep.size(); ++a) {
    nodes.push_back(g.node(keep[a]));
    for (std::size_t b = 0; b < keep.size(); ++b) {
      if (g.below(keep[a], keep[b])) rel.set(a, b);
    }
  }
  return SubtypingGraph(g.table_ptr(), std::move(nodes), rel, g.level(), g.mode());
}

bool graph_equal(const SubtypingGraph& a, const SubtypingGraph& b) {
  return a.nodes() == b.nodes() && a.order() == b.order();
}

ExportFormat parse_export_format(std::string_view name) {
  if (name == "dot") return ExportFormat::Dot;
  if (name == "json") return ExportFormat::Json;
  if (name == "matrix-csv") return ExportFormat::MatrixCsv;
  throw Error(ErrorKind::UnknownFormat, "unknown export format '" + std::string(name) + "'");
}

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

std::string csv_field(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string export_dot(const SubtypingGraph& g) {
  const ClassTable& table = g.table();
  std::vector<bool> expressible(g.size());
  std::string out = "digraph subtyping {\n  rankdir=TB;\n";
  for (std::size_t i = 0; i < g.size(); ++i) {
    expressible[i] = is_expressible(table, g.node(i));
    out += "  n" + std::to_string(i) + " [label=\"" + dot_escape(g.name(i)) + "\"";
    if (!expressible[i]) out += ", style=dotted";
    out += "];\n";
  }
  for (auto [sup, sub] : g.edges()) {
    out += "  n" + std::to_string(sup) + " -> n" + std::to_string(sub);
    if (!expressible[sup] || !expressible[sub]) out += " [style=dotted]";
    out += ";\n";
  }
  out += "}\n";
  return out;
}

std::string export_json(const SubtypingGraph& g) {
  const ClassTable& table = g.table();
  nlohmann::ordered_json doc;
  doc["level"] = g.level();
  doc["mode"] = to_string(g.mode());
  auto nodes = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < g.size(); ++i) {
    const TypeTerm& t = g.node(i);
    nodes.push_back({{"id", i},
                     {"render_java", g.name(i)},
                     {"render_short", render(table, t, Style::Short)},
                     {"render_interval", render(table, t, Style::Interval)},
                     {"rank", rank(table, t)},
                     {"expressible", is_expressible(table, t)}});
  }
  doc["nodes"] = std::move(nodes);
  auto edges = nlohmann::ordered_json::array();
  for (auto [sup, sub] : g.edges()) edges.push_back({sup, sub});
  doc["edges"] = std::move(edges);
  return doc.dump(2) + "\n";
}

std::string export_csv(const SubtypingGraph& g) {
  std::string out;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (i > 0) out += ',';
    out += csv_field(g.name(i));
  }
  out += '\n';
  for (std::size_t sup = 0; sup < g.size(); ++sup) {
    for (std::size_t sub = 0; sub < g.size(); ++sub) {
      if (sub > 0) out += ',';
      out += g.hasse()(sub, sup) ? '1' : '0';
    }
    out += '\n';
  }
  return out;
}

}  // namespace

std::string export_graph(const SubtypingGraph& g, ExportFormat format) {
  switch (format) {
    case ExportFormat::Dot: return export_dot(g);
    case ExportFormat::Json: return export_json(g);
    case ExportFormat::MatrixCsv: return export_csv(g);
  }
  throw Error(ErrorKind::UnknownFormat, "unknown export format");
}

}  // namespace fractal
