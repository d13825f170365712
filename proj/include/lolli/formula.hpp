#pragma once

// Formula layer: logical constants over type o, a destructuring view,
// the clause/goal classifier and the textual syntax.
//
//   P ::= Ar | P & P | G -o P | G => P | all x. P
//   G ::= top | A | G & G | P -o G | P => G | all x. G | ex x. G
//       | ! G | G * G | G + G | builtin
//
// Precedence, tightest first:  application, !, *, &, +, -o/=> (right
// associative; * & + associate to the right as well).  Quantifiers
// `all x : T. F` and `ex x : T. F` scope as far right as possible.

#include "lolli/term.hpp"

namespace lolli {

enum class FKind {
  RigidAtom,  // head is a nonlogical constant
  FlexAtom,   // head is a metavariable or variable
  Builtin,
  Top,
  With,
  Lolli,
  Imp,
  Tensor,
  Oplus,
  Bang,
  All,
  Ex,
  Other,  // not a formula shape (e.g. partially applied connective)
};

enum class Builtin { Eq, Neq, Gt, Le, Add3, Sub3 };

const char* builtin_name(Builtin b);
std::optional<Builtin> builtin_by_name(const std::string& name);
int builtin_arity(Builtin b);

struct FView {
  FKind kind = FKind::Other;
  TermPtr l, r;               // binary connectives; Bang keeps the body in l
  TermPtr binder;             // All/Ex: the abstraction
  TermPtr head;               // atoms: spine head
  std::vector<TermPtr> args;  // atoms and builtins: spine arguments
  Builtin btag = Builtin::Eq;
};

FView view(const TermPtr& f);

TermPtr f_top();
TermPtr f_with(TermPtr a, TermPtr b);
TermPtr f_lolli(TermPtr a, TermPtr b);
TermPtr f_imp(TermPtr a, TermPtr b);
TermPtr f_tensor(TermPtr a, TermPtr b);
TermPtr f_oplus(TermPtr a, TermPtr b);
TermPtr f_bang(TermPtr a);
// body uses de Bruijn index 0 for the bound variable
TermPtr f_all(const std::string& hint, TypePtr ty, TermPtr body);
TermPtr f_ex(const std::string& hint, TypePtr ty, TermPtr body);
TermPtr f_builtin(Builtin b, const std::vector<TermPtr>& args);

enum class FormulaClass { Clause, Goal, Both, Neither };

FormulaClass classify(const TermPtr& f);
bool is_clause(const TermPtr& f);  // Clause or Both
bool is_goal(const TermPtr& f);    // Goal or Both
const char* formula_class_str(FormulaClass c);

std::string formula_str(const TermPtr& f);

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Names not in the signature are declared on first use: bare identifiers in
// formula position get type o, applied heads get a type built from their
// argument types, and otherwise-unconstrained arguments get type i.
struct Signature {
  TypeEnv types;
  void declare(const std::string& name, TypePtr ty);
  void declare(const std::string& name, const std::string& ty);
};

TermPtr parse_formula(const std::string& text, Signature& sig);
TermPtr parse_term(const std::string& text, Signature& sig);

}  // namespace lolli
