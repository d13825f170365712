#include "lolli/formula.hpp"

#include <cctype>
#include <sstream>

namespace lolli {

namespace {

TypePtr conn2_ty() {
  static TypePtr t = ty_arrow(ty_o(), ty_arrow(ty_o(), ty_o()));
  return t;
}

TermPtr conn(const char* name) { return mk_const(name, conn2_ty(), true); }

TermPtr top_c() {
  static TermPtr t = mk_const("top", ty_o(), true);
  return t;
}

TermPtr bang_c() {
  static TermPtr t = mk_const("!", ty_arrow(ty_o(), ty_o()), true);
  return t;
}

TermPtr quant_c(const char* name, const TypePtr& ty) {
  return mk_const(name, ty_arrow(ty_arrow(ty, ty_o()), ty_o()), true);
}

void spine(const TermPtr& t, TermPtr& head, std::vector<TermPtr>& args) {
  if (t->kind == TermKind::App) {
    spine(t->t1, head, args);
    args.push_back(t->t2);
  } else {
    head = t;
  }
}

}  // namespace

const char* builtin_name(Builtin b) {
  switch (b) {
    case Builtin::Eq: return "eq";
    case Builtin::Neq: return "neq";
    case Builtin::Gt: return "gt";
    case Builtin::Le: return "le";
    case Builtin::Add3: return "add3";
    case Builtin::Sub3: return "sub3";
  }
  return "?";
}

std::optional<Builtin> builtin_by_name(const std::string& name) {
  if (name == "eq") return Builtin::Eq;
  if (name == "neq") return Builtin::Neq;
  if (name == "gt") return Builtin::Gt;
  if (name == "le") return Builtin::Le;
  if (name == "add3") return Builtin::Add3;
  if (name == "sub3") return Builtin::Sub3;
  return std::nullopt;
}

int builtin_arity(Builtin b) {
  return (b == Builtin::Add3 || b == Builtin::Sub3) ? 3 : 2;
}

FView view(const TermPtr& f) {
  FView v;
  TermPtr head;
  std::vector<TermPtr> args;
  spine(f, head, args);
  if (!head) return v;
  switch (head->kind) {
    case TermKind::Meta:
    case TermKind::FVar:
    case TermKind::BVar:
      v.kind = FKind::FlexAtom;
      v.head = head;
      v.args = std::move(args);
      return v;
    case TermKind::Const:
      break;
    default:
      return v;  // Abs/Num head: not a formula
  }
  const std::string& n = head->name;
  if (head->logical) {
    if (n == "top" && args.empty()) { v.kind = FKind::Top; return v; }
    if (n == "!" && args.size() == 1) { v.kind = FKind::Bang; v.l = args[0]; return v; }
    if ((n == "all" || n == "ex") && args.size() == 1 && args[0]->kind == TermKind::Abs) {
      v.kind = n == "all" ? FKind::All : FKind::Ex;
      v.binder = args[0];
      return v;
    }
    if (args.size() == 2) {
      if (n == "&") v.kind = FKind::With;
      else if (n == "-o") v.kind = FKind::Lolli;
      else if (n == "=>") v.kind = FKind::Imp;
      else if (n == "*") v.kind = FKind::Tensor;
      else if (n == "+") v.kind = FKind::Oplus;
      else return v;
      v.l = args[0];
      v.r = args[1];
      return v;
    }
    return v;
  }
  if (auto b = builtin_by_name(n)) {
    if ((int)args.size() != builtin_arity(*b)) return v;
    v.kind = FKind::Builtin;
    v.btag = *b;
    v.head = head;
    v.args = std::move(args);
    return v;
  }
  v.kind = FKind::RigidAtom;
  v.head = head;
  v.args = std::move(args);
  return v;
}

TermPtr f_top() { return top_c(); }
TermPtr f_with(TermPtr a, TermPtr b) { return mk_app(conn("&"), {a, b}); }
TermPtr f_lolli(TermPtr a, TermPtr b) { return mk_app(conn("-o"), {a, b}); }
TermPtr f_imp(TermPtr a, TermPtr b) { return mk_app(conn("=>"), {a, b}); }
TermPtr f_tensor(TermPtr a, TermPtr b) { return mk_app(conn("*"), {a, b}); }
TermPtr f_oplus(TermPtr a, TermPtr b) { return mk_app(conn("+"), {a, b}); }
TermPtr f_bang(TermPtr a) { return mk_app(bang_c(), a); }

TermPtr f_all(const std::string& hint, TypePtr ty, TermPtr body) {
  return mk_app(quant_c("all", ty), mk_abs(hint, ty, std::move(body)));
}

TermPtr f_ex(const std::string& hint, TypePtr ty, TermPtr body) {
  return mk_app(quant_c("ex", ty), mk_abs(hint, ty, std::move(body)));
}

TermPtr f_builtin(Builtin b, const std::vector<TermPtr>& args) {
  TypePtr ty = ty_o();
  for (int i = 0; i < builtin_arity(b); i++) ty = ty_arrow(ty_nat(), ty);
  return mk_app(mk_const(builtin_name(b), ty), args);
}

namespace {

struct Cls {
  bool clause, goal;
};

Cls cls(const TermPtr& f) {
  FView v = view(f);
  switch (v.kind) {
    case FKind::RigidAtom: return {true, true};
    case FKind::FlexAtom:
    case FKind::Builtin:
    case FKind::Top: return {false, true};
    case FKind::With: {
      Cls l = cls(v.l), r = cls(v.r);
      return {l.clause && r.clause, l.goal && r.goal};
    }
    case FKind::Lolli:
    case FKind::Imp: {
      Cls l = cls(v.l), r = cls(v.r);
      return {l.goal && r.clause, l.clause && r.goal};
    }
    case FKind::Tensor:
    case FKind::Oplus: {
      Cls l = cls(v.l), r = cls(v.r);
      return {false, l.goal && r.goal};
    }
    case FKind::Bang: return {false, cls(v.l).goal};
    case FKind::All: {
      Cls b = cls(v.binder->t1);
      return {b.clause, b.goal};
    }
    case FKind::Ex: return {false, cls(v.binder->t1).goal};
    case FKind::Other: return {false, false};
  }
  return {false, false};
}

}  // namespace

FormulaClass classify(const TermPtr& f) {
  Cls c = cls(f);
  if (c.clause && c.goal) return FormulaClass::Both;
  if (c.clause) return FormulaClass::Clause;
  if (c.goal) return FormulaClass::Goal;
  return FormulaClass::Neither;
}

bool is_clause(const TermPtr& f) { return cls(f).clause; }
bool is_goal(const TermPtr& f) { return cls(f).goal; }

const char* formula_class_str(FormulaClass c) {
  switch (c) {
    case FormulaClass::Clause: return "clause";
    case FormulaClass::Goal: return "goal";
    case FormulaClass::Both: return "both";
    case FormulaClass::Neither: return "neither";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// printing

namespace {

// precedence: -o/=> 0, + 1, & 2, * 3, ! 4, application 5
void fprint(const TermPtr& f, int prec, std::vector<std::string>& names, std::ostringstream& os);

void arg_print(const TermPtr& a, std::vector<std::string>& names, std::ostringstream& os) {
  switch (a->kind) {
    case TermKind::Num:
    case TermKind::Meta:
      os << (a->kind == TermKind::Num ? std::to_string(a->num) : a->name);
      return;
    case TermKind::Const:
      if (!a->logical) { os << a->name; return; }
      break;
    case TermKind::FVar:
      os << a->name;
      return;
    case TermKind::BVar: {
      int i = a->idx;
      if (i >= 0 && i < (int)names.size()) os << names[names.size() - 1 - i];
      else os << "#" << i;
      return;
    }
    default:
      break;
  }
  os << "(";
  fprint(a, 0, names, os);
  os << ")";
}

std::string fresh_hint(const std::string& hint, const std::vector<std::string>& names) {
  std::string n = hint.empty() ? "x" : hint;
  auto taken = [&](const std::string& s) {
    for (const auto& e : names) if (e == s) return true;
    return false;
  };
  if (!taken(n)) return n;
  for (int i = 1;; i++) {
    std::string c = n + std::to_string(i);
    if (!taken(c)) return c;
  }
}

void binop(const char* op, int myprec, const FView& v, int prec,
           std::vector<std::string>& names, std::ostringstream& os) {
  bool paren = prec > myprec;
  if (paren) os << "(";
  fprint(v.l, myprec + 1, names, os);  // right associative: left operand needs higher level
  os << " " << op << " ";
  fprint(v.r, myprec, names, os);
  if (paren) os << ")";
}

void fprint(const TermPtr& f, int prec, std::vector<std::string>& names, std::ostringstream& os) {
  FView v = view(f);
  switch (v.kind) {
    case FKind::Top: os << "top"; return;
    case FKind::Lolli: binop("-o", 0, v, prec, names, os); return;
    case FKind::Imp: binop("=>", 0, v, prec, names, os); return;
    case FKind::Oplus: binop("+", 1, v, prec, names, os); return;
    case FKind::With: binop("&", 2, v, prec, names, os); return;
    case FKind::Tensor: binop("*", 3, v, prec, names, os); return;
    case FKind::Bang: {
      bool paren = prec > 4;
      if (paren) os << "(";
      os << "! ";
      fprint(v.l, 4, names, os);
      if (paren) os << ")";
      return;
    }
    case FKind::All:
    case FKind::Ex: {
      bool paren = prec > 0;
      if (paren) os << "(";
      std::string n = fresh_hint(v.binder->name, names);
      os << (v.kind == FKind::All ? "all " : "ex ") << n << " : "
         << type_str(v.binder->type) << ". ";
      names.push_back(n);
      fprint(v.binder->t1, 0, names, os);
      names.pop_back();
      if (paren) os << ")";
      return;
    }
    case FKind::RigidAtom:
    case FKind::FlexAtom:
    case FKind::Builtin: {
      bool paren = prec > 5 || (!v.args.empty() && prec == 5);
      if (paren) os << "(";
      arg_print(v.head ? v.head : f, names, os);
      for (const auto& a : v.args) {
        os << " ";
        arg_print(a, names, os);
      }
      if (paren) os << ")";
      return;
    }
    case FKind::Other:
      // not formula shaped; fall back to raw term syntax
      os << term_str(f);
      return;
  }
}

}  // namespace

std::string formula_str(const TermPtr& f) {
  std::ostringstream os;
  std::vector<std::string> names;
  fprint(f, 0, names, os);
  return os.str();
}

// ---------------------------------------------------------------------------
// parsing

void Signature::declare(const std::string& name, TypePtr ty) { types[name] = std::move(ty); }
void Signature::declare(const std::string& name, const std::string& ty) {
  types[name] = parse_type(ty);
}

namespace {

struct Tok {
  enum Kind { Ident, Number, Metavar, LP, RP, Lambda, Colon, Dot, Amp, Star, Plus, Bang,
              LolliOp, ImpOp, Arrow, End } kind;
  std::string text;
  std::uint64_t num = 0;
  size_t pos = 0;
};

struct Lexer {
  const std::string& s;
  size_t p = 0;
  explicit Lexer(const std::string& text) : s(text) {}

  Tok next() {
    while (p < s.size() && isspace((unsigned char)s[p])) p++;
    Tok t;
    t.pos = p;
    if (p >= s.size()) { t.kind = Tok::End; return t; }
    char c = s[p];
    if (isdigit((unsigned char)c)) {
      size_t start = p;
      while (p < s.size() && isdigit((unsigned char)s[p])) p++;
      t.kind = Tok::Number;
      t.text = s.substr(start, p - start);
      t.num = std::stoull(t.text);
      return t;
    }
    if (isalpha((unsigned char)c) || c == '_') {
      size_t start = p;
      while (p < s.size() && (isalnum((unsigned char)s[p]) || s[p] == '_')) p++;
      t.kind = Tok::Ident;
      t.text = s.substr(start, p - start);
      return t;
    }
    if (c == '?' && p + 1 < s.size() && isdigit((unsigned char)s[p + 1])) {
      p++;
      size_t start = p;
      while (p < s.size() && isdigit((unsigned char)s[p])) p++;
      t.kind = Tok::Metavar;
      t.num = std::stoull(s.substr(start, p - start));
      return t;
    }
    if (c == '-' && p + 1 < s.size() && s[p + 1] == 'o' &&
        (p + 2 >= s.size() || !(isalnum((unsigned char)s[p + 2]) || s[p + 2] == '_'))) {
      p += 2;
      t.kind = Tok::LolliOp;
      return t;
    }
    if (c == '-' && p + 1 < s.size() && s[p + 1] == '>') {
      p += 2;
      t.kind = Tok::Arrow;
      return t;
    }
    if (c == '=' && p + 1 < s.size() && s[p + 1] == '>') {
      p += 2;
      t.kind = Tok::ImpOp;
      return t;
    }
    p++;
    switch (c) {
      case '(': t.kind = Tok::LP; return t;
      case ')': t.kind = Tok::RP; return t;
      case '\\': t.kind = Tok::Lambda; return t;
      case ':': t.kind = Tok::Colon; return t;
      case '.': t.kind = Tok::Dot; return t;
      case '&': t.kind = Tok::Amp; return t;
      case '*': t.kind = Tok::Star; return t;
      case '+': t.kind = Tok::Plus; return t;
      case '!': t.kind = Tok::Bang; return t;
      default:
        throw ParseError("unexpected character '" + std::string(1, c) + "' at " +
                         std::to_string(p - 1));
    }
  }
};

struct Binder {
  std::string name;
  TypePtr ty;
};

struct FormulaParser {
  Lexer lex;
  Tok tok;
  Signature& sig;
  std::vector<Binder> binders;

  FormulaParser(const std::string& text, Signature& s) : lex(text), sig(s) { tok = lex.next(); }

  void advance() { tok = lex.next(); }

  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(msg + " at position " + std::to_string(tok.pos));
  }

  void expect(Tok::Kind k, const char* what) {
    if (tok.kind != k) fail(std::string("expected ") + what);
    advance();
  }

  int binder_index(const std::string& name) {
    for (int i = (int)binders.size() - 1; i >= 0; i--)
      if (binders[i].name == name) return (int)binders.size() - 1 - i;
    return -1;
  }

  bool starts_atom() {
    switch (tok.kind) {
      case Tok::Ident:
      case Tok::Number:
      case Tok::Metavar:
      case Tok::LP:
      case Tok::Lambda:
        return true;
      default:
        return false;
    }
  }

  // expected may be null; base types other than o shut off connective parsing
  TermPtr expr(const TypePtr& expected) {
    if (tok.kind == Tok::Ident && (tok.text == "all" || tok.text == "ex")) {
      bool isall = tok.text == "all";
      advance();
      if (tok.kind != Tok::Ident) fail("expected binder name");
      std::string name = tok.text;
      advance();
      expect(Tok::Colon, "':' after binder");
      TypePtr bty = type_expr();
      expect(Tok::Dot, "'.' after binder type");
      binders.push_back({name, bty});
      TermPtr body = expr(ty_o());
      binders.pop_back();
      return isall ? f_all(name, bty, body) : f_ex(name, bty, body);
    }
    return lolli_level(expected);
  }

  TermPtr lolli_level(const TypePtr& expected) {
    TermPtr l = plus_level(expected);
    if (tok.kind == Tok::LolliOp || tok.kind == Tok::ImpOp) {
      bool lolli = tok.kind == Tok::LolliOp;
      advance();
      TermPtr r = tok_is_quant() ? expr(ty_o()) : lolli_level(ty_o());
      return lolli ? f_lolli(l, r) : f_imp(l, r);
    }
    return l;
  }

  bool tok_is_quant() {
    return tok.kind == Tok::Ident && (tok.text == "all" || tok.text == "ex");
  }

  TermPtr plus_level(const TypePtr& expected) {
    TermPtr l = with_level(expected);
    if (tok.kind == Tok::Plus) {
      advance();
      TermPtr r = tok_is_quant() ? expr(ty_o()) : plus_level(ty_o());
      return f_oplus(l, r);
    }
    return l;
  }

  TermPtr with_level(const TypePtr& expected) {
    TermPtr l = tensor_level(expected);
    if (tok.kind == Tok::Amp) {
      advance();
      TermPtr r = tok_is_quant() ? expr(ty_o()) : with_level(ty_o());
      return f_with(l, r);
    }
    return l;
  }

  TermPtr tensor_level(const TypePtr& expected) {
    TermPtr l = bang_level(expected);
    if (tok.kind == Tok::Star) {
      advance();
      TermPtr r = tok_is_quant() ? expr(ty_o()) : tensor_level(ty_o());
      return f_tensor(l, r);
    }
    return l;
  }

  TermPtr bang_level(const TypePtr& expected) {
    if (tok.kind == Tok::Bang) {
      advance();
      return f_bang(bang_level(ty_o()));
    }
    return app_level(expected);
  }

  TermPtr app_level(const TypePtr& expected) {
    TermPtr head = atom(expected);
    TypePtr hty = type_of(head);
    std::vector<TermPtr> args;
    while (starts_atom()) {
      TypePtr argty = nullptr;
      if (hty && hty->is_arrow()) argty = hty->arg;
      TermPtr a = atom(argty);
      // a fresh bare identifier in argument position takes the declared type
      if (a->kind == TermKind::Const && !a->type && argty) a = retype(a, argty);
      if (hty) {
        if (!hty->is_arrow())
          fail("too many arguments for " + formula_str(head));
        hty = hty->res;
      }
      args.push_back(a);
    }
    if (!hty) {
      // head seen for the first time: build its type from the arguments
      TypePtr rty = expected ? expected : ty_i();
      TypePtr ty = rty;
      for (auto it = args.rbegin(); it != args.rend(); ++it) {
        TypePtr at = type_of(*it);
        if (!at) at = ty_i();
        ty = ty_arrow(at, ty);
      }
      head = retype(head, ty);
    }
    TermPtr result = head;
    for (auto& a : args) {
      if (a->kind == TermKind::Const && !a->type) a = retype(a, ty_i());
      result = mk_app(result, a);
    }
    return result;
  }

  // null for a not-yet-declared constant
  TypePtr type_of(const TermPtr& t) {
    switch (t->kind) {
      case TermKind::Num: return ty_nat();
      case TermKind::BVar: {
        int i = t->idx;
        return binders[binders.size() - 1 - i].ty;
      }
      case TermKind::Const:
      case TermKind::FVar:
      case TermKind::Meta: return t->type;
      case TermKind::Abs: {
        binders.push_back({t->name, t->type});
        TypePtr b = type_of(t->t1);
        binders.pop_back();
        return b ? ty_arrow(t->type, b) : nullptr;
      }
      case TermKind::App: {
        TypePtr f = type_of(t->t1);
        return f && f->is_arrow() ? f->res : nullptr;
      }
    }
    return nullptr;
  }

  TermPtr retype(const TermPtr& t, const TypePtr& ty) {
    if (t->kind != TermKind::Const || t->type) return t;
    sig.declare(t->name, ty);
    return mk_const(t->name, ty);
  }

  TermPtr atom(const TypePtr& expected) {
    switch (tok.kind) {
      case Tok::Number: {
        auto v = tok.num;
        advance();
        return mk_num(v);
      }
      case Tok::Metavar: {
        int id = (int)tok.num;
        advance();
        return mk_meta(id, expected ? expected : ty_i());
      }
      case Tok::LP: {
        advance();
        TermPtr t = expr(expected);
        expect(Tok::RP, "')'");
        return t;
      }
      case Tok::Lambda: {
        advance();
        if (tok.kind != Tok::Ident) fail("expected lambda binder");
        std::string name = tok.text;
        advance();
        expect(Tok::Colon, "':' after lambda binder");
        TypePtr bty = type_expr();
        expect(Tok::Dot, "'.' after lambda binder type");
        binders.push_back({name, bty});
        TermPtr body = expr(expected && expected->is_arrow() ? expected->res : nullptr);
        binders.pop_back();
        return mk_abs(name, bty, body);
      }
      case Tok::Ident: {
        std::string name = tok.text;
        advance();
        int bi = binder_index(name);
        if (bi >= 0) return mk_bvar(bi);
        if (name == "top") return f_top();
        if (name == "z") return mk_num(0);
        if (name == "s") return nat_s();
        if (auto b = builtin_by_name(name)) {
          TypePtr ty = ty_o();
          for (int i = 0; i < builtin_arity(*b); i++) ty = ty_arrow(ty_nat(), ty);
          return mk_const(name, ty);
        }
        auto it = sig.types.find(name);
        if (it != sig.types.end()) return mk_const(name, it->second);
        // fresh identifier: app_level declares it once the context is known
        return mk_const(name, nullptr);
      }
      default:
        fail("expected a formula or term");
    }
  }

  TypePtr type_expr() {
    // reuse the simple arrow grammar; collect tokens until '.' at depth 0
    std::string text;
    int depth = 0;
    size_t guard = 0;
    while (!(depth == 0 && tok.kind == Tok::Dot)) {
      if (tok.kind == Tok::End) fail("unterminated binder type");
      switch (tok.kind) {
        case Tok::Ident: text += tok.text; break;
        case Tok::LP: text += "("; depth++; break;
        case Tok::RP: text += ")"; depth--; break;
        case Tok::Arrow: text += "->"; break;
        default: fail("unexpected token in type");
      }
      text += " ";
      advance();
      if (++guard > 1000) fail("unterminated binder type");
    }
    return parse_type(text);
  }
};

}  // namespace

TermPtr parse_formula(const std::string& text, Signature& sig) {
  FormulaParser p(text, sig);
  TermPtr f = p.expr(ty_o());
  if (p.tok.kind != Tok::End) p.fail("trailing input after formula");
  TypePtr ty;
  try {
    ty = infer_type(f, sig.types);
  } catch (const TypeError& e) {
    throw ParseError(std::string(e.what()) + " in: " + text);
  }
  if (!type_eq(ty, ty_o()))
    throw ParseError("formula has type " + type_str(ty) + ", expected o: " + text);
  return f;
}

TermPtr parse_term(const std::string& text, Signature& sig) {
  FormulaParser p(text, sig);
  TermPtr t = p.expr(nullptr);
  if (p.tok.kind != Tok::End) p.fail("trailing input after term");
  try {
    infer_type(t, sig.types);
  } catch (const TypeError& e) {
    throw ParseError(std::string(e.what()) + " in: " + text);
  }
  return t;
}

}  // namespace lolli
