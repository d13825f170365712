#pragma once

// Simply typed lambda terms over a first-order-ish signature.
// Formulas are terms of type o built from logical constants, so one
// substitution/normalization engine serves both levels.  Bound variables
// use de Bruijn indices, which makes alpha-equality plain structural
// equality.  Terms are immutable and shared via shared_ptr.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lolli {

struct SimpleType;
using TypePtr = std::shared_ptr<const SimpleType>;

struct SimpleType {
  std::string base;  // nonempty for a base type
  TypePtr arg, res;  // set for an arrow type
  bool is_arrow() const { return !arg == false; }
};

TypePtr ty_base(const std::string& name);
TypePtr ty_arrow(TypePtr arg, TypePtr res);
TypePtr ty_o();
TypePtr ty_i();
TypePtr ty_nat();
TypePtr ty_prog();
bool type_eq(const TypePtr& a, const TypePtr& b);
std::string type_str(const TypePtr& t);
// parses "nat -> nat -> o" (right associative), parens allowed
TypePtr parse_type(const std::string& text);

enum class TermKind { BVar, FVar, Const, Num, Meta, Abs, App };

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  TermKind kind;
  int idx = 0;             // BVar: de Bruijn index; Meta: id; Const: scope serial (0 = plain)
  std::uint64_t num = 0;   // Num: value
  std::string name;        // FVar/Const/Meta: printed name; Abs: binder hint
  TypePtr type;            // FVar/Const/Meta: type; Abs: binder type
  bool logical = false;    // Const: logical (connective/quantifier) vs nonlogical
  TermPtr t1, t2;          // Abs: body in t1; App: function t1, argument t2
};

struct TypeError : std::runtime_error {
  explicit TypeError(const std::string& what) : std::runtime_error(what) {}
};

TermPtr mk_bvar(int idx);
TermPtr mk_fvar(const std::string& name, TypePtr ty);
TermPtr mk_const(const std::string& name, TypePtr ty, bool logical = false, int serial = 0);
TermPtr mk_num(std::uint64_t v);
TermPtr mk_meta(int id, TypePtr ty);
TermPtr mk_abs(const std::string& hint, TypePtr ty, TermPtr body);
// Applies eagerly: beta redexes are contracted and s applied to a numeral
// collapses, so constructed terms are always in normal form.
TermPtr mk_app(TermPtr f, TermPtr a);
TermPtr mk_app(TermPtr f, const std::vector<TermPtr>& args);

// the shared successor/zero spellings for naturals; z normalizes to 0
TermPtr nat_s();
TermPtr nat_z();

bool term_eq(const TermPtr& a, const TermPtr& b);
int term_cmp(const TermPtr& a, const TermPtr& b);  // total order, kind-major
inline bool alpha_equal(const TermPtr& a, const TermPtr& b) { return term_eq(a, b); }

// replaces de Bruijn index 0 in body (the binder just stripped) by value
TermPtr substitute(const TermPtr& body, const TermPtr& value);
TermPtr shift(const TermPtr& t, int d, int cutoff = 0);
TermPtr beta_normalize(const TermPtr& t);

// instantiates metavariables from the map; unbound ones stay put
TermPtr subst_metas(const TermPtr& t, const std::map<int, TermPtr>& binding);

bool contains_meta(const TermPtr& t, int id);
bool contains_any_meta(const TermPtr& t);
void collect_metas(const TermPtr& t, std::vector<int>& out);
bool contains_const(const TermPtr& t, const std::string& name);
// largest scope serial among constants in t, 0 if none
int max_const_serial(const TermPtr& t);

using TypeEnv = std::map<std::string, TypePtr>;
// Checks well-typedness and returns the type.  env supplies types for free
// variables and constants; node-carried types must agree with it.
TypePtr infer_type(const TermPtr& t, const TypeEnv& env);

std::string term_str(const TermPtr& t);

}  // namespace lolli
