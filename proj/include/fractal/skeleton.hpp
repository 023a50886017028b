#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fractal/term.hpp"

namespace fractal {

struct TypeParam {
  std::string name;
  TypeTerm upper = TypeTerm::object();
  TypeTerm lower = TypeTerm::null();

  // The declared bound interval [lower, upper]; also the default argument.
  Interval bound() const { return {lower, upper}; }
};

struct ClassDecl {
  std::string name;
  std::vector<TypeParam> params;
  std::string superclass;  // empty only for Object

  bool is_generic() const noexcept { return !params.empty(); }
  std::size_t arity() const noexcept { return params.size(); }
};

// The declared class hierarchy. Object (top) and Null (bottom) are always
// present and non-generic. Immutable once returned by parse_skeleton.
class ClassTable {
 public:
  ClassTable();

  // Object first, then declared classes in source order, then Null.
  std::span<const ClassDecl> classes() const noexcept { return decls_; }

  const ClassDecl* find(std::string_view name) const;
  const ClassDecl& at(std::string_view name) const;  // throws UnknownClass
  bool contains(std::string_view name) const { return find(name) != nullptr; }

  // Reflexive-transitive `extends`, with Null below and Object above every
  // class.
  bool subclass_of(std::string_view a, std::string_view b) const;

  // Ground types of all non-generic classes, in classes() order.
  std::vector<TypeTerm> ground_types() const;
  std::vector<const ClassDecl*> generic_classes() const;

  // Ground type for non-generic classes, K<?, ...> (bound defaults) otherwise.
  TypeTerm default_type(std::string_view name) const;

 private:
  friend ClassTable parse_skeleton(std::string_view text);

  ClassDecl& add(ClassDecl decl);
  ClassDecl& mutable_at(std::string_view name);

  std::vector<ClassDecl> decls_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

// Parses the class-declaration DSL:
//
//   program := decl*
//   decl    := "class" IDENT tparams? ("extends" IDENT)? (";" | "{" "}")?
//   tparams := "<" tparam ("," tparam)* ">"
//   tparam  := IDENT ("extends" typeexpr)? ("super" typeexpr)?
ClassTable parse_skeleton(std::string_view text);

inline bool subclass_of(const ClassTable& table, std::string_view a, std::string_view b) {
  return table.subclass_of(a, b);
}

}  // namespace fractal
