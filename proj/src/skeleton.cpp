#include "fractal/skeleton.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <utility>

#include "fractal/error.hpp"
#include "fractal/subtyping.hpp"
#include "syntax.hpp"

namespace fractal {

ClassTable::ClassTable() {
  add(ClassDecl{kObject, {}, {}});
  add(ClassDecl{kNull, {}, kObject});
}

ClassDecl& ClassTable::add(ClassDecl decl) {
  // Null stays last so classes() reads top-down.
  std::string name = decl.name;
  if (decls_.size() >= 2) {
    auto null_pos = decls_.end() - 1;
    decls_.insert(null_pos, std::move(decl));
    index_.clear();
    for (std::size_t i = 0; i < decls_.size(); ++i) index_[decls_[i].name] = i;
  } else {
    index_[name] = decls_.size();
    decls_.push_back(std::move(decl));
  }
  return decls_[index_.at(name)];
}

const ClassDecl* ClassTable::find(std::string_view name) const {
  auto it = index_.find(name);
  return it == index_.end() ? nullptr : &decls_[it->second];
}

const ClassDecl& ClassTable::at(std::string_view name) const {
  const ClassDecl* decl = find(name);
  if (decl == nullptr) {
    throw Error(ErrorKind::UnknownClass, "unknown class '" + std::string(name) + "'");
  }
  return *decl;
}

ClassDecl& ClassTable::mutable_at(std::string_view name) {
  return decls_[index_.at(std::string(name))];
}

bool ClassTable::subclass_of(std::string_view a, std::string_view b) const {
  const ClassDecl* from = &at(a);
  at(b);
  if (a == kNull || b == kObject) return true;
  if (b == kNull) return false;
  while (from != nullptr) {
    if (from->name == b) return true;
    if (from->superclass.empty()) break;
    from = find(from->superclass);
  }
  return false;
}

std::vector<TypeTerm> ClassTable::ground_types() const {
  std::vector<TypeTerm> out;
  for (const auto& d : decls_) {
    if (!d.is_generic()) out.push_back(TypeTerm::ground(d.name));
  }
  return out;
}

std::vector<const ClassDecl*> ClassTable::generic_classes() const {
  std::vector<const ClassDecl*> out;
  for (const auto& d : decls_) {
    if (d.is_generic()) out.push_back(&d);
  }
  return out;
}

TypeTerm ClassTable::default_type(std::string_view name) const {
  const ClassDecl& decl = at(name);
  if (!decl.is_generic()) return TypeTerm::ground(decl.name);
  std::vector<Interval> args;
  for (const auto& p : decl.params) args.push_back(p.bound());
  return TypeTerm::apply(decl.name, std::move(args));
}

namespace {

struct RawParam {
  std::string name;
  std::optional<detail::TypeExpr> upper;
  std::optional<detail::TypeExpr> lower;
  std::size_t pos = 0;
};

struct RawDecl {
  std::string name;
  std::size_t pos = 0;
  std::vector<RawParam> params;
  std::string superclass = kObject;
  std::size_t super_pos = 0;
};

std::string checked_identifier(detail::Cursor& cursor, std::size_t& pos) {
  cursor.peek();
  pos = cursor.pos();
  std::string id = cursor.identifier();
  if (detail::is_keyword(id)) {
    throw Error(ErrorKind::Syntax,
                "expected identifier at offset " + std::to_string(pos) + ", found '" + id + "'",
                pos);
  }
  return id;
}

std::vector<RawDecl> parse_program(std::string_view text) {
  detail::Cursor cursor(text);
  std::vector<RawDecl> decls;
  while (!cursor.at_end()) {
    if (!cursor.consume_keyword("class")) cursor.fail("'class'");
    RawDecl decl;
    decl.name = checked_identifier(cursor, decl.pos);
    if (cursor.consume('<')) {
      do {
        RawParam param;
        param.name = checked_identifier(cursor, param.pos);
        if (cursor.consume_keyword("extends")) param.upper = detail::parse_type_expr(cursor);
        if (cursor.consume_keyword("super")) param.lower = detail::parse_type_expr(cursor);
        decl.params.push_back(std::move(param));
      } while (cursor.consume(','));
      cursor.expect('>');
    }
    if (cursor.consume_keyword("extends")) {
      decl.superclass = checked_identifier(cursor, decl.super_pos);
    }
    if (cursor.consume('{')) {
      cursor.expect('}');
      cursor.consume(';');
    } else {
      cursor.consume(';');
    }
    decls.push_back(std::move(decl));
  }
  return decls;
}

}  // namespace

ClassTable parse_skeleton(std::string_view text) {
  std::vector<RawDecl> raw = parse_program(text);

  ClassTable table;
  for (const auto& d : raw) {
    if (table.contains(d.name)) {
      std::string what = (d.name == kObject || d.name == kNull) ? "built-in class '" : "class '";
      throw Error(ErrorKind::DuplicateClass, what + d.name + "' is already declared", d.pos);
    }
    ClassDecl decl{d.name, {}, d.superclass};
    std::set<std::string> seen;
    for (const auto& p : d.params) {
      if (!seen.insert(p.name).second) {
        throw Error(ErrorKind::IllFormedBound,
                    "duplicate type parameter '" + p.name + "' in class '" + d.name + "'", p.pos);
      }
      decl.params.push_back(TypeParam{p.name});
    }
    table.add(std::move(decl));
  }

  for (const auto& d : raw) {
    if (d.superclass == kNull) {
      throw Error(ErrorKind::UnknownSuperclass, "class '" + d.name + "' cannot extend Null",
                  d.super_pos);
    }
    if (!table.contains(d.superclass)) {
      throw Error(ErrorKind::UnknownSuperclass,
                  "class '" + d.name + "' extends unknown class '" + d.superclass + "'",
                  d.super_pos);
    }
  }
  for (const auto& d : raw) {
    std::set<std::string> chain{d.name};
    for (std::string cur = d.superclass; cur != kObject; cur = table.at(cur).superclass) {
      if (!chain.insert(cur).second) {
        throw Error(ErrorKind::CyclicExtends,
                    "cyclic extends chain through class '" + d.name + "'", d.pos);
      }
    }
  }
  for (const auto& d : raw) {
    if (table.at(d.superclass).is_generic()) {
      throw Error(ErrorKind::GenericSuperclass,
                  "class '" + d.name + "' extends generic class '" + d.superclass +
                      "'; only non-generic superclasses are supported",
                  d.super_pos);
    }
  }

  // Bounds may mention other generic classes, whose own defaults must be
  // resolved first. Any cycle here is an F-bound and is rejected.
  enum class Mark { None, Active, Done };
  std::map<std::string, Mark> marks;
  std::map<std::string, const RawDecl*> by_name;
  for (const auto& d : raw) by_name[d.name] = &d;

  std::function<void(const RawDecl&)> visit = [&](const RawDecl& d) {
    Mark& mark = marks[d.name];
    if (mark == Mark::Done) return;
    if (mark == Mark::Active) {
      throw Error(ErrorKind::IllFormedBound,
                  "type-parameter bounds of class '" + d.name + "' depend on themselves", d.pos);
    }
    mark = Mark::Active;
    for (const auto& p : d.params) {
      std::vector<std::string> names;
      if (p.upper) detail::collect_names(*p.upper, names);
      if (p.lower) detail::collect_names(*p.lower, names);
      for (const auto& n : names) {
        auto it = by_name.find(n);
        if (it != by_name.end()) visit(*it->second);
      }
    }
    for (std::size_t k = 0; k < d.params.size(); ++k) {
      const RawParam& p = d.params[k];
      TypeParam resolved{p.name};
      if (p.upper) resolved.upper = detail::resolve(table, *p.upper);
      if (p.lower) resolved.lower = detail::resolve(table, *p.lower);
      if (!is_subtype(table, resolved.lower, resolved.upper)) {
        throw Error(ErrorKind::IllFormedBound,
                    "lower bound of parameter '" + p.name + "' in class '" + d.name +
                        "' is not a subtype of its upper bound",
                    p.pos);
      }
      table.mutable_at(d.name).params[k] = std::move(resolved);
    }
    marks[d.name] = Mark::Done;
  };
  for (const auto& d : raw) visit(d);

  return table;
}

}  // namespace fractal
