#include "fractal/construction.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

#include "fractal/error.hpp"
#include "fractal/subtyping.hpp"
#include "fractal/types.hpp"

namespace fractal {

bool ArgumentSet::contains(const Interval& iv) const {
  return std::binary_search(intervals.begin(), intervals.end(), iv);
}

Budget Budget::from_env() {
  Budget budget;
  if (const char* env = std::getenv("FRACTAL_BUDGET"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end == nullptr || *end != '\0' || v == 0) {
      throw Error(ErrorKind::InvalidArgument,
                  "FRACTAL_BUDGET must be a positive integer, got '" + std::string(env) + "'");
    }
    budget.max_nodes = static_cast<std::size_t>(v);
  }
  return budget;
}

namespace {

void normalize(std::vector<Interval>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

// Per-parameter argument sets over g, bound by each parameter's declaration.
HoleArguments hole_arguments_over(const ClassTable& table, const SubtypingGraph& g, Mode mode) {
  HoleArguments out;
  for (const ClassDecl* decl : table.generic_classes()) {
    auto& sets = out[decl->name];
    for (const auto& param : decl->params) {
      ArgumentSet set = mode == Mode::Intervals ? intervals_over(table, g, param.bound())
                                                : wildcard_forms_over(table, g, param.bound());
      set.intervals.push_back(param.bound());
      normalize(set.intervals);
      sets.push_back(std::move(set));
    }
  }
  return out;
}

HoleArguments default_arguments(const ClassTable& table) {
  HoleArguments out;
  for (const ClassDecl* decl : table.generic_classes()) {
    auto& sets = out[decl->name];
    for (const auto& param : decl->params) sets.push_back(ArgumentSet{{param.bound()}});
  }
  return out;
}

std::size_t saturating_mul(std::size_t a, std::size_t b) {
  if (a != 0 && b > SIZE_MAX / a) return SIZE_MAX;
  return a * b;
}

std::size_t product_size(const std::vector<ArgumentSet>& sets) {
  std::size_t n = 1;
  for (const auto& s : sets) n = saturating_mul(n, s.size());
  return n;
}

void append_products(const std::string& cls, const std::vector<ArgumentSet>& sets,
                     std::vector<TypeTerm>& out) {
  if (sets.empty() || product_size(sets) == 0) return;
  std::vector<std::size_t> digit(sets.size(), 0);
  for (;;) {
    std::vector<Interval> args;
    args.reserve(sets.size());
    for (std::size_t k = 0; k < sets.size(); ++k) args.push_back(sets[k].intervals[digit[k]]);
    out.push_back(TypeTerm::apply(cls, std::move(args)));
    std::size_t k = sets.size();
    while (k > 0) {
      --k;
      if (++digit[k] < sets[k].size()) break;
      digit[k] = 0;
      if (k == 0) return;
    }
  }
}

SubtypingGraph assemble(std::shared_ptr<const ClassTable> table, std::vector<TypeTerm> grounds,
                        const std::vector<std::string>& heads, const HoleArguments& args,
                        std::size_t level, Mode mode, const Budget& budget) {
  std::size_t planned = grounds.size();
  for (const auto& head : heads) {
    auto it = args.find(head);
    if (it == args.end()) {
      throw Error(ErrorKind::InvalidArgument, "no hole arguments for class '" + head + "'");
    }
    const ClassDecl& decl = table->at(head);
    if (it->second.size() != decl.arity()) {
      throw Error(ErrorKind::ArityMismatch, "wrong number of hole argument sets for '" + head + "'");
    }
    for (std::size_t k = 0; k < decl.arity(); ++k) {
      for (const auto& iv : it->second[k].intervals) {
        if (!interval_contains(*table, decl.params[k].bound(), iv)) {
          throw Error(ErrorKind::BoundViolation,
                      "argument [" + render(*table, iv.lo) + "-" + render(*table, iv.hi) +
                          "] violates the bound of parameter '" + decl.params[k].name +
                          "' of '" + head + "'");
        }
      }
    }
    planned += product_size(it->second);
    if (planned > budget.max_nodes) break;
  }
  if (planned > budget.max_nodes) {
    throw Error(ErrorKind::BudgetExceeded,
                "level " + std::to_string(level) + " needs more than " +
                    std::to_string(budget.max_nodes) + " nodes");
  }

  std::vector<TypeTerm> nodes = std::move(grounds);
  for (const auto& head : heads) append_products(head, args.find(head)->second, nodes);

  const std::size_t n = nodes.size();
  BoolMatrix rel(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || is_subtype(*table, nodes[i], nodes[j])) rel.set(i, j);
    }
  }
  return SubtypingGraph(std::move(table), std::move(nodes), rel, level, mode);
}

}  // namespace

ArgumentSet intervals_over(const ClassTable& table, const SubtypingGraph& g,
                           const Interval& bound) {
  ArgumentSet out{{}, Mode::Intervals, g.level()};
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = 0; j < g.size(); ++j) {
      if (!g.below(i, j)) continue;
      Interval iv{g.node(i), g.node(j)};
      if (interval_contains(table, bound, iv)) out.intervals.push_back(std::move(iv));
    }
  }
  normalize(out.intervals);
  return out;
}

ArgumentSet wildcard_forms_over(const ClassTable& table, const SubtypingGraph& g,
                                const Interval& bound) {
  ArgumentSet out{{}, Mode::Wildcards, g.level()};
  for (const auto& t : g.nodes()) {
    if (!is_subtype(table, bound.lo, t) || !is_subtype(table, t, bound.hi)) continue;
    out.intervals.push_back({bound.lo, t});
    out.intervals.push_back({t, bound.hi});
    out.intervals.push_back({t, t});
  }
  normalize(out.intervals);
  return out;
}

HoleArguments admissible_arguments(const ClassTable& table, const ArgumentSet& args) {
  HoleArguments out;
  for (const ClassDecl* decl : table.generic_classes()) {
    auto& sets = out[decl->name];
    for (const auto& param : decl->params) {
      const Interval bound = param.bound();
      ArgumentSet set{{}, args.provenance, args.level};
      for (const auto& iv : args.intervals) {
        if (interval_contains(table, bound, iv)) set.intervals.push_back(iv);
      }
      set.intervals.push_back(bound);
      normalize(set.intervals);
      sets.push_back(std::move(set));
    }
  }
  return out;
}

std::size_t planned_node_count(const ClassTable& table, const HoleArguments& args) {
  std::size_t n = table.ground_types().size();
  for (const ClassDecl* decl : table.generic_classes()) {
    auto it = args.find(decl->name);
    if (it != args.end()) n += product_size(it->second);
  }
  return n;
}

SubtypingGraph build(std::shared_ptr<const ClassTable> table, const HoleArguments& args,
                     std::size_t level, Mode mode, const Budget& budget) {
  std::vector<std::string> heads;
  for (const ClassDecl* decl : table->generic_classes()) heads.push_back(decl->name);
  auto grounds = table->ground_types();
  return assemble(std::move(table), std::move(grounds), heads, args, level, mode, budget);
}

SubtypingGraph apply_host(const SubtypingGraph& host, const ArgumentSet& args,
                          const Budget& budget) {
  const ClassTable& table = host.table();
  std::vector<TypeTerm> grounds;
  std::vector<std::string> heads;
  for (const auto& t : host.nodes()) {
    if (t.is_ground()) {
      grounds.push_back(t);
    } else if (std::find(heads.begin(), heads.end(), t.head()) == heads.end()) {
      heads.push_back(t.head());
    }
  }
  return assemble(host.table_ptr(), std::move(grounds), heads,
                  admissible_arguments(table, args), args.level + 1, args.provenance, budget);
}

void extend(LevelSequence& seq, std::size_t upto, const Budget& budget) {
  const ClassTable& table = *seq.table;
  auto record = [&](SubtypingGraph g) {
    seq.census.push_back(census_by_distance(g));
    seq.levels.push_back(std::move(g));
  };
  try {
    if (seq.levels.empty()) {
      record(build(seq.table, default_arguments(table), 0, seq.mode, budget));
    }
    while (seq.levels.size() <= upto) {
      const std::size_t next = seq.levels.size();
      if (next > budget.max_level) {
        throw Error(ErrorKind::BudgetExceeded,
                    "level " + std::to_string(next) + " exceeds the level cap of " +
                        std::to_string(budget.max_level));
      }
      auto args = hole_arguments_over(table, seq.levels.back(), seq.mode);
      record(build(seq.table, args, next, seq.mode, budget));
    }
    seq.budget_error.reset();
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::BudgetExceeded) throw;
    seq.budget_error = e.what();
  }
}

LevelSequence expand(std::shared_ptr<const ClassTable> table, std::size_t upto, Mode mode,
                     const Budget& budget) {
  LevelSequence seq;
  seq.table = std::move(table);
  seq.mode = mode;
  extend(seq, upto, budget);
  return seq;
}

const char* to_string(TransformKind kind) {
  switch (kind) {
    case TransformKind::Copy: return "copy";
    case TransformKind::Flip: return "flip";
    case TransformKind::Flatten: return "flatten";
  }
  return "copy";
}

TransformKind parse_transform_kind(std::string_view name) {
  if (name == "copy") return TransformKind::Copy;
  if (name == "flip") return TransformKind::Flip;
  if (name == "flatten") return TransformKind::Flatten;
  throw Error(ErrorKind::InvalidArgument, "unknown transformation '" + std::string(name) + "'");
}

SubtypingGraph transform(const SubtypingGraph& g, TransformKind kind) {
  switch (kind) {
    case TransformKind::Copy:
      return g;
    case TransformKind::Flip:
      return SubtypingGraph(g.table_ptr(), g.nodes(), g.order().transposed(), g.level(),
                            g.mode());
    case TransformKind::Flatten:
      return SubtypingGraph(g.table_ptr(), g.nodes(), BoolMatrix(g.size(), g.size()),
                            g.level(), g.mode());
  }
  return g;
}

EmbeddingReport embedding_image(const ClassTable& table, const SubtypingGraph& g,
                                const SubtypingGraph& next, std::string_view cls,
                                std::size_t hole, TransformKind kind) {
  const ClassDecl& decl = table.at(cls);
  if (!decl.is_generic()) {
    throw Error(ErrorKind::InvalidArgument, "class '" + decl.name + "' is not generic");
  }
  if (hole >= decl.arity()) {
    throw Error(ErrorKind::InvalidArgument,
                "class '" + decl.name + "' has no hole " + std::to_string(hole));
  }
  EmbeddingReport report;
  report.cls = decl.name;
  report.hole = hole;
  report.kind = kind;

  const Interval bound = decl.params[hole].bound();
  std::vector<Interval> args;
  for (const auto& p : decl.params) args.push_back(p.bound());

  std::vector<std::size_t> sources;
  std::vector<std::optional<std::size_t>> images;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const TypeTerm& t = g.node(i);
    if (!is_subtype(table, bound.lo, t) || !is_subtype(table, t, bound.hi)) {
      report.pruned.push_back(t);
      continue;
    }
    switch (kind) {
      case TransformKind::Copy: args[hole] = {bound.lo, t}; break;
      case TransformKind::Flip: args[hole] = {t, bound.hi}; break;
      case TransformKind::Flatten: args[hole] = {t, t}; break;
    }
    TypeTerm image = TypeTerm::apply(decl.name, args);
    images.push_back(next.index_of(image));
    sources.push_back(i);
    report.mapping.emplace_back(t, std::move(image));
  }

  std::set<TypeTerm> distinct;
  for (const auto& [src, img] : report.mapping) distinct.insert(img);
  report.injective = distinct.size() == report.mapping.size();
  report.images_present =
      std::all_of(images.begin(), images.end(), [](const auto& i) { return i.has_value(); });

  report.law_holds = report.images_present;
  for (std::size_t a = 0; a < sources.size() && report.law_holds; ++a) {
    for (std::size_t b = 0; b < sources.size(); ++b) {
      const bool src = g.below(sources[a], sources[b]);
      const bool img = next.below(*images[a], *images[b]);
      bool ok = false;
      switch (kind) {
        case TransformKind::Copy: ok = img == src; break;
        case TransformKind::Flip: ok = next.below(*images[b], *images[a]) == src; break;
        case TransformKind::Flatten: ok = img == (a == b); break;
      }
      if (!ok) {
        report.law_holds = false;
        break;
      }
    }
  }
  report.verified = report.injective && report.images_present && report.law_holds;
  return report;
}

EmbeddingReport embedding_image(const ClassTable& table, const SubtypingGraph& g,
                                std::string_view cls, std::size_t hole, TransformKind kind) {
  SubtypingGraph next = build(g.table_ptr(), hole_arguments_over(table, g, Mode::Intervals),
                              g.level() + 1, Mode::Intervals);
  return embedding_image(table, g, next, cls, hole, kind);
}

bool EquationReport::all_passed() const {
  return !budget_error && std::all_of(checks.begin(), checks.end(),
                                      [](const EquationCheck& c) { return c.passed(); });
}

EquationReport check_equations(std::shared_ptr<const ClassTable> table, std::size_t upto,
                               const Budget& budget) {
  EquationReport report;
  LevelSequence seq = expand(table, upto, Mode::Intervals, budget);
  if (seq.budget_error) {
    report.budget_error = seq.budget_error;
    return report;
  }
  const SubtypingGraph& g0 = seq.levels[0];
  const ArgumentSet i0 = intervals_over(*table, g0);
  auto record = [&](std::string what, std::size_t level, bool expect_equal,
                    const SubtypingGraph& lhs, const SubtypingGraph& rhs) {
    report.checks.push_back(EquationCheck{std::move(what), level, expect_equal,
                                          graph_equal(lhs, rhs), lhs.size(), rhs.size()});
  };
  try {
    const SubtypingGraph g0_i0 = apply_host(g0, i0, budget);
    for (std::size_t i = 1; i <= upto; ++i) {
      const SubtypingGraph& gi = seq.levels[i];
      const std::string n = std::to_string(i);
      const ArgumentSet ii = intervals_over(*table, gi);
      const SubtypingGraph g0_ii = apply_host(g0, ii, budget);
      const SubtypingGraph gi_ii = apply_host(gi, ii, budget);
      const SubtypingGraph gi_i0 = apply_host(gi, i0, budget);
      record("G0(I(G" + n + ")) = G" + n + "(I(G" + n + "))", i, true, g0_ii, gi_ii);
      record("G" + n + "(I(G0)) = G0(I(G0))", i, true, gi_i0, g0_i0);
      record("G" + n + "(I(G0)) != G0(I(G" + n + "))", i, false, gi_i0, g0_ii);
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::BudgetExceeded) throw;
    report.budget_error = e.what();
  }
  return report;
}

}  // namespace fractal
