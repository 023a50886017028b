#include "fractal/cli.hpp"

#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "fractal/construction.hpp"
#include "fractal/error.hpp"
#include "fractal/explorer_service.hpp"
#include "fractal/graph.hpp"
#include "fractal/subtyping.hpp"
#include "fractal/types.hpp"

namespace fractal::cli {

namespace {

struct UsageError {
  std::string message;
};

struct Options {
  std::string in;
  std::string mode = "intervals";
  std::size_t upto = 2;
  std::size_t check_upto = 1;
  std::optional<std::size_t> budget;
  std::string out;
  int port = 8080;
  std::string host = "127.0.0.1";
  std::size_t level = 0;
  std::string format = "dot";
  std::string window;
  std::vector<std::string> types;
};

std::string read_file(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw UsageError{"cannot read input file '" + path + "'"};
  std::ostringstream ss;
  ss << file.rdbuf();
  return ss.str();
}

std::shared_ptr<const ClassTable> load_table(const Options& o) {
  if (o.in.empty()) throw UsageError{"--in FILE is required"};
  return std::make_shared<const ClassTable>(parse_skeleton(read_file(o.in)));
}

Budget budget_of(const Options& o) {
  Budget b = Budget::from_env();
  if (o.budget) b.max_nodes = *o.budget;
  return b;
}

void write_output(const Options& o, const std::string& text, std::ostream& out) {
  if (o.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(o.out, std::ios::binary);
  if (!file) throw UsageError{"cannot write output file '" + o.out + "'"};
  file << text;
}

// Levels beyond the budget are reported on err; returns whether the full
// depth was reached.
bool report_budget(const LevelSequence& seq, std::ostream& err) {
  if (!seq.budget_error) return true;
  err << "error: " << *seq.budget_error << " (largest level built: " << seq.deepest() << ")\n";
  return false;
}

int cmd_parse(const Options& o, std::ostream& out, std::ostream&) {
  auto table = load_table(o);
  for (const auto& decl : table->classes()) {
    out << "class " << decl.name;
    if (decl.is_generic()) {
      out << '<';
      for (std::size_t k = 0; k < decl.params.size(); ++k) {
        const auto& p = decl.params[k];
        if (k > 0) out << ", ";
        out << p.name;
        if (!p.upper.is_object()) out << " extends " << render(*table, p.upper);
        if (!p.lower.is_null()) out << " super " << render(*table, p.lower);
      }
      out << '>';
    }
    if (!decl.superclass.empty()) out << " extends " << decl.superclass;
    out << '\n';
  }
  return 0;
}

int cmd_expand(const Options& o, std::ostream& out, std::ostream& err) {
  auto seq = expand(load_table(o), o.upto, parse_mode(o.mode), budget_of(o));
  for (const auto& g : seq.levels) {
    out << "level " << g.level() << ": " << g.size() << " nodes, " << g.edge_count()
        << " edges\n";
    for (std::size_t i = 0; i < g.size(); ++i) {
      out << "  " << g.name(i) << "  [rank " << rank(g.table(), g.node(i)) << "]";
      if (!is_expressible(g.table(), g.node(i))) out << " (inexpressible)";
      out << '\n';
    }
  }
  return report_budget(seq, err) ? 0 : 2;
}

int cmd_counts(const Options& o, std::ostream& out, std::ostream& err) {
  auto seq = expand(load_table(o), o.upto, parse_mode(o.mode), budget_of(o));
  out << "nodes:";
  for (const auto& g : seq.levels) out << ' ' << g.size();
  out << "\nedges:";
  for (const auto& g : seq.levels) out << ' ' << g.edge_count();
  out << '\n';
  return report_budget(seq, err) ? 0 : 2;
}

int cmd_census(const Options& o, std::ostream& out, std::ostream& err) {
  auto seq = expand(load_table(o), o.upto, parse_mode(o.mode), budget_of(o));
  for (std::size_t i = 0; i < seq.levels.size(); ++i) {
    out << "level " << i << ":";
    for (auto c : seq.census[i].counts) out << ' ' << c;
    out << " (sum " << seq.census[i].total() << ", longest path "
        << longest_path(seq.levels[i]) << ")\n";
  }
  return report_budget(seq, err) ? 0 : 2;
}

int cmd_rank(const Options& o, std::ostream& out, std::ostream&) {
  auto table = load_table(o);
  for (const auto& text : o.types) out << rank(*table, parse_type(*table, text)) << '\n';
  return 0;
}

int cmd_sub(const Options& o, std::ostream& out, std::ostream&) {
  auto table = load_table(o);
  if (o.types.size() != 2) throw UsageError{"sub takes exactly two type expressions"};
  const TypeTerm s = parse_type(*table, o.types[0]);
  const TypeTerm t = parse_type(*table, o.types[1]);
  out << (is_subtype(*table, s, t) ? "true" : "false") << '\n';
  return 0;
}

int cmd_check(const Options& o, std::ostream& out, std::ostream& err) {
  auto table = load_table(o);
  const Budget budget = budget_of(o);
  if (o.check_upto < 1) throw UsageError{"check needs --upto of at least 1"};
  bool ok = true;
  auto line = [&](bool pass, const std::string& what) {
    out << (pass ? "PASS " : "FAIL ") << what << '\n';
    ok = ok && pass;
  };

  EquationReport eq = check_equations(table, o.check_upto, budget);
  for (const auto& c : eq.checks) {
    line(c.passed(), c.description + " (" + std::to_string(c.lhs_nodes) + " vs " +
                         std::to_string(c.rhs_nodes) + " nodes)");
  }
  if (eq.budget_error) {
    err << "error: " << *eq.budget_error << '\n';
    return 2;
  }

  auto seq = expand(table, o.check_upto, Mode::Intervals, budget);
  if (!report_budget(seq, err)) return 2;
  const SubtypingGraph& g0 = seq.levels[0];
  for (std::size_t i = 0; i + 1 < seq.levels.size(); ++i) {
    const auto& gi = seq.levels[i];
    const auto& next = seq.levels[i + 1];
    for (const ClassDecl* decl : table->generic_classes()) {
      for (std::size_t hole = 0; hole < decl->arity(); ++hole) {
        for (auto kind : {TransformKind::Copy, TransformKind::Flip, TransformKind::Flatten}) {
          auto rep = embedding_image(*table, gi, next, decl->name, hole, kind);
          line(rep.verified, std::string(to_string(kind)) + " of G" + std::to_string(i) +
                                 " into " + decl->name + " hole " + std::to_string(hole));
        }
      }
    }
    bool monotone = true;
    for (std::size_t a = 0; a < gi.size() && monotone; ++a) {
      auto ia = next.index_of(gi.node(a));
      if (!ia) {
        monotone = false;
        break;
      }
      for (std::size_t b = 0; b < gi.size(); ++b) {
        auto ib = next.index_of(gi.node(b));
        if (!ib || next.below(*ia, *ib) != gi.below(a, b)) {
          monotone = false;
          break;
        }
      }
    }
    line(monotone, "G" + std::to_string(i) + " embeds in G" + std::to_string(i + 1));
  }
  for (std::size_t i = 1; i < seq.levels.size(); ++i) {
    line(graph_equal(quotient_by_head(seq.levels[i]), g0),
         "quotient of G" + std::to_string(i) + " by head class equals G0");
  }
  const auto generics = table->generic_classes();
  if (generics.size() == 1 && generics[0]->arity() == 1 &&
      generics[0]->params[0].bound() == Interval::unbounded()) {
    const std::size_t grounds = table->ground_types().size();
    for (std::size_t i = 0; i + 1 < seq.levels.size(); ++i) {
      line(seq.levels[i + 1].size() == grounds + seq.census[i].total(),
           "|G" + std::to_string(i + 1) + "| = grounds + census sum of G" + std::to_string(i));
    }
  }
  return ok ? 0 : 2;
}

int cmd_export(const Options& o, std::ostream& out, std::ostream& err) {
  auto table = load_table(o);
  const ExportFormat format = parse_export_format(o.format);
  auto seq = expand(table, o.level, parse_mode(o.mode), budget_of(o));
  if (!report_budget(seq, err)) return 2;
  SubtypingGraph g = seq.levels[o.level];
  if (!o.window.empty()) {
    auto sep = o.window.find("..");
    if (sep == std::string::npos) throw UsageError{"--window must look like LOW..HIGH"};
    g = window(g, parse_type(*table, o.window.substr(0, sep)),
               parse_type(*table, o.window.substr(sep + 2)));
  }
  write_output(o, export_graph(g, format), out);
  return 0;
}

int cmd_serve(const Options& o, std::ostream& out, std::ostream&) {
  std::string source = o.in.empty() ? std::string() : read_file(o.in);
  ExplorerService service(source, budget_of(o));
  out << "serving on http://" << o.host << ':' << o.port << '\n' << std::flush;
  service.serve(o.host, o.port);
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Builds and queries the level graphs of generic subtyping", "fractal"};
  app.require_subcommand(1);
  Options o;

  auto add_in = [&](CLI::App* sub) { sub->add_option("--in", o.in, "Class declaration file"); };
  auto add_levels = [&](CLI::App* sub) {
    sub->add_option("--mode", o.mode, "intervals or wildcards")
        ->check(CLI::IsMember({"intervals", "wildcards"}));
    sub->add_option("--upto", o.upto, "Deepest level to build");
    sub->add_option("--budget", o.budget, "Maximum nodes per level");
  };

  auto* parse = app.add_subcommand("parse", "Parse and print the class table");
  add_in(parse);
  auto* expand_cmd = app.add_subcommand("expand", "Build and list levels");
  add_in(expand_cmd);
  add_levels(expand_cmd);
  auto* counts = app.add_subcommand("counts", "Node and Hasse edge counts per level");
  add_in(counts);
  add_levels(counts);
  auto* census = app.add_subcommand("census", "Comparable pairs by longest distance");
  add_in(census);
  add_levels(census);
  auto* rank_cmd = app.add_subcommand("rank", "Rank of type expressions");
  add_in(rank_cmd);
  rank_cmd->add_option("types", o.types, "Type expressions")->required();
  auto* sub = app.add_subcommand("sub", "Decide LHS <: RHS");
  add_in(sub);
  sub->add_option("types", o.types, "LHS RHS")->required()->expected(2);
  auto* check = app.add_subcommand("check", "Verify equations, embeddings and quotients");
  add_in(check);
  check->add_option("--upto", o.check_upto, "Deepest level to check");
  check->add_option("--budget", o.budget, "Maximum nodes per level");
  auto* export_cmd = app.add_subcommand("export", "Serialize one level");
  add_in(export_cmd);
  export_cmd->add_option("--mode", o.mode, "intervals or wildcards")
      ->check(CLI::IsMember({"intervals", "wildcards"}));
  export_cmd->add_option("--budget", o.budget, "Maximum nodes per level");
  export_cmd->add_option("--level", o.level, "Level to export");
  export_cmd->add_option("--format", o.format, "dot, json or matrix-csv")
      ->check(CLI::IsMember({"dot", "json", "matrix-csv"}));
  export_cmd->add_option("--window", o.window, "LOW..HIGH type window");
  export_cmd->add_option("--out", o.out, "Output file (default stdout)");
  auto* serve = app.add_subcommand("serve", "Run the HTTP explorer backend");
  add_in(serve);
  serve->add_option("--port", o.port, "Port to listen on");
  serve->add_option("--host", o.host, "Address to bind");
  serve->add_option("--budget", o.budget, "Maximum nodes per level");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (parse->parsed()) return cmd_parse(o, out, err);
    if (expand_cmd->parsed()) return cmd_expand(o, out, err);
    if (counts->parsed()) return cmd_counts(o, out, err);
    if (census->parsed()) return cmd_census(o, out, err);
    if (rank_cmd->parsed()) return cmd_rank(o, out, err);
    if (sub->parsed()) return cmd_sub(o, out, err);
    if (check->parsed()) return cmd_check(o, out, err);
    if (export_cmd->parsed()) return cmd_export(o, out, err);
    if (serve->parsed()) return cmd_serve(o, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.message << '\n';
    return 1;
  } catch (const Error& e) {
    err << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return 2;
  }
  return 1;
}

}  // namespace fractal::cli
