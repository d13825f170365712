#include "lolli/term.hpp"

#include <sstream>

namespace lolli {

TypePtr ty_base(const std::string& name) {
  auto t = std::make_shared<SimpleType>();
  t->base = name;
  return t;
}

TypePtr ty_arrow(TypePtr arg, TypePtr res) {
  auto t = std::make_shared<SimpleType>();
  t->arg = std::move(arg);
  t->res = std::move(res);
  return t;
}

TypePtr ty_o() { static TypePtr t = ty_base("o"); return t; }
TypePtr ty_i() { static TypePtr t = ty_base("i"); return t; }
TypePtr ty_nat() { static TypePtr t = ty_base("nat"); return t; }
TypePtr ty_prog() { static TypePtr t = ty_base("prog"); return t; }

bool type_eq(const TypePtr& a, const TypePtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->is_arrow() != b->is_arrow()) return false;
  if (!a->is_arrow()) return a->base == b->base;
  return type_eq(a->arg, b->arg) && type_eq(a->res, b->res);
}

std::string type_str(const TypePtr& t) {
  if (!t) return "?";
  if (!t->is_arrow()) return t->base;
  std::string lhs = type_str(t->arg);
  if (t->arg && t->arg->is_arrow()) lhs = "(" + lhs + ")";
  return lhs + " -> " + type_str(t->res);
}

namespace {

struct TypeParser {
  const std::string& s;
  size_t p = 0;
  explicit TypeParser(const std::string& text) : s(text) {}
  void ws() { while (p < s.size() && isspace((unsigned char)s[p])) p++; }
  TypePtr atom() {
    ws();
    if (p < s.size() && s[p] == '(') {
      p++;
      TypePtr t = arrow();
      ws();
      if (p >= s.size() || s[p] != ')') throw TypeError("expected ')' in type: " + s);
      p++;
      return t;
    }
    size_t start = p;
    while (p < s.size() && (isalnum((unsigned char)s[p]) || s[p] == '_')) p++;
    if (p == start) throw TypeError("expected type name: " + s);
    return ty_base(s.substr(start, p - start));
  }
  TypePtr arrow() {
    TypePtr lhs = atom();
    ws();
    if (p + 1 < s.size() && s[p] == '-' && s[p + 1] == '>') {
      p += 2;
      return ty_arrow(lhs, arrow());
    }
    return lhs;
  }
};

}  // namespace

TypePtr parse_type(const std::string& text) {
  TypeParser tp(text);
  TypePtr t = tp.arrow();
  tp.ws();
  if (tp.p != text.size()) throw TypeError("trailing input in type: " + text);
  return t;
}

TermPtr mk_bvar(int idx) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::BVar;
  t->idx = idx;
  return t;
}

TermPtr mk_fvar(const std::string& name, TypePtr ty) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::FVar;
  t->name = name;
  t->type = std::move(ty);
  return t;
}

TermPtr mk_const(const std::string& name, TypePtr ty, bool logical, int serial) {
  if (name == "z") return mk_num(0);
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Const;
  t->name = name;
  t->type = std::move(ty);
  t->logical = logical;
  t->idx = serial;
  return t;
}

TermPtr mk_num(std::uint64_t v) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Num;
  t->num = v;
  t->type = ty_nat();
  return t;
}

TermPtr mk_meta(int id, TypePtr ty) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Meta;
  t->idx = id;
  t->name = "?" + std::to_string(id);
  t->type = std::move(ty);
  return t;
}

TermPtr mk_abs(const std::string& hint, TypePtr ty, TermPtr body) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Abs;
  t->name = hint;
  t->type = std::move(ty);
  t->t1 = std::move(body);
  return t;
}

TermPtr nat_s() {
  static TermPtr s = mk_const("s", ty_arrow(ty_nat(), ty_nat()));
  return s;
}

TermPtr nat_z() { return mk_num(0); }

TermPtr mk_app(TermPtr f, TermPtr a) {
  if (f->kind == TermKind::Abs) return substitute(f->t1, a);
  if (f->kind == TermKind::Const && f->name == "s" && a->kind == TermKind::Num)
    return mk_num(a->num + 1);
  auto t = std::make_shared<Term>();
  t->kind = TermKind::App;
  t->t1 = std::move(f);
  t->t2 = std::move(a);
  return t;
}

TermPtr mk_app(TermPtr f, const std::vector<TermPtr>& args) {
  for (const auto& a : args) f = mk_app(std::move(f), a);
  return f;
}

bool term_eq(const TermPtr& a, const TermPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case TermKind::BVar: return a->idx == b->idx;
    case TermKind::FVar: return a->name == b->name;
    case TermKind::Const: return a->name == b->name;
    case TermKind::Num: return a->num == b->num;
    case TermKind::Meta: return a->idx == b->idx;
    case TermKind::Abs: return type_eq(a->type, b->type) && term_eq(a->t1, b->t1);
    case TermKind::App: return term_eq(a->t1, b->t1) && term_eq(a->t2, b->t2);
  }
  return false;
}

int term_cmp(const TermPtr& a, const TermPtr& b) {
  if (a == b) return 0;
  auto rank = [](const TermPtr& t) { return static_cast<int>(t->kind); };
  if (rank(a) != rank(b)) return rank(a) < rank(b) ? -1 : 1;
  auto by = [](auto x, auto y) { return x < y ? -1 : (x > y ? 1 : 0); };
  switch (a->kind) {
    case TermKind::BVar: return by(a->idx, b->idx);
    case TermKind::FVar: return a->name.compare(b->name) < 0 ? -1 : (a->name == b->name ? 0 : 1);
    case TermKind::Const: {
      int c = a->name.compare(b->name);
      return c ? (c < 0 ? -1 : 1) : 0;
    }
    case TermKind::Num: return by(a->num, b->num);
    case TermKind::Meta: return by(a->idx, b->idx);
    case TermKind::Abs: return term_cmp(a->t1, b->t1);
    case TermKind::App: {
      int c = term_cmp(a->t1, b->t1);
      return c ? c : term_cmp(a->t2, b->t2);
    }
  }
  return 0;
}

TermPtr shift(const TermPtr& t, int d, int cutoff) {
  if (d == 0) return t;
  switch (t->kind) {
    case TermKind::BVar:
      if (t->idx < cutoff) return t;
      return mk_bvar(t->idx + d);
    case TermKind::FVar:
    case TermKind::Const:
    case TermKind::Num:
    case TermKind::Meta:
      return t;
    case TermKind::Abs: {
      TermPtr body = shift(t->t1, d, cutoff + 1);
      if (body == t->t1) return t;
      return mk_abs(t->name, t->type, body);
    }
    case TermKind::App: {
      TermPtr f = shift(t->t1, d, cutoff);
      TermPtr a = shift(t->t2, d, cutoff);
      if (f == t->t1 && a == t->t2) return t;
      return mk_app(f, a);
    }
  }
  return t;
}

namespace {

TermPtr subst_bvar(const TermPtr& t, int j, const TermPtr& value) {
  switch (t->kind) {
    case TermKind::BVar:
      if (t->idx == j) return shift(value, j);
      if (t->idx > j) return mk_bvar(t->idx - 1);
      return t;
    case TermKind::FVar:
    case TermKind::Const:
    case TermKind::Num:
    case TermKind::Meta:
      return t;
    case TermKind::Abs: {
      TermPtr body = subst_bvar(t->t1, j + 1, value);
      if (body == t->t1) return t;
      return mk_abs(t->name, t->type, body);
    }
    case TermKind::App: {
      TermPtr f = subst_bvar(t->t1, j, value);
      TermPtr a = subst_bvar(t->t2, j, value);
      if (f == t->t1 && a == t->t2) return t;
      return mk_app(f, a);  // substitution can expose a redex; mk_app contracts it
    }
  }
  return t;
}

bool has_bvar_above(const TermPtr& t, int cutoff) {
  switch (t->kind) {
    case TermKind::BVar: return t->idx >= cutoff;
    case TermKind::Abs: return has_bvar_above(t->t1, cutoff + 1);
    case TermKind::App: return has_bvar_above(t->t1, cutoff) || has_bvar_above(t->t2, cutoff);
    default: return false;
  }
}

}  // namespace

TermPtr substitute(const TermPtr& body, const TermPtr& value) {
  return subst_bvar(body, 0, value);
}

TermPtr beta_normalize(const TermPtr& t) {
  switch (t->kind) {
    case TermKind::Abs: {
      TermPtr body = beta_normalize(t->t1);
      if (body == t->t1) return t;
      return mk_abs(t->name, t->type, body);
    }
    case TermKind::App: {
      TermPtr f = beta_normalize(t->t1);
      TermPtr a = beta_normalize(t->t2);
      return mk_app(f, a);  // contracts if f normalized to an abstraction
    }
    default:
      return t;
  }
}

TermPtr subst_metas(const TermPtr& t, const std::map<int, TermPtr>& binding) {
  switch (t->kind) {
    case TermKind::Meta: {
      auto it = binding.find(t->idx);
      if (it == binding.end()) return t;
      // bindings may themselves mention bound metas
      return subst_metas(it->second, binding);
    }
    case TermKind::Abs: {
      TermPtr body = subst_metas(t->t1, binding);
      if (body == t->t1) return t;
      return mk_abs(t->name, t->type, body);
    }
    case TermKind::App: {
      TermPtr f = subst_metas(t->t1, binding);
      TermPtr a = subst_metas(t->t2, binding);
      if (f == t->t1 && a == t->t2) return t;
      return mk_app(f, a);
    }
    default:
      return t;
  }
}

bool contains_meta(const TermPtr& t, int id) {
  switch (t->kind) {
    case TermKind::Meta: return t->idx == id;
    case TermKind::Abs: return contains_meta(t->t1, id);
    case TermKind::App: return contains_meta(t->t1, id) || contains_meta(t->t2, id);
    default: return false;
  }
}

bool contains_any_meta(const TermPtr& t) {
  switch (t->kind) {
    case TermKind::Meta: return true;
    case TermKind::Abs: return contains_any_meta(t->t1);
    case TermKind::App: return contains_any_meta(t->t1) || contains_any_meta(t->t2);
    default: return false;
  }
}

void collect_metas(const TermPtr& t, std::vector<int>& out) {
  switch (t->kind) {
    case TermKind::Meta: out.push_back(t->idx); return;
    case TermKind::Abs: collect_metas(t->t1, out); return;
    case TermKind::App:
      collect_metas(t->t1, out);
      collect_metas(t->t2, out);
      return;
    default: return;
  }
}

bool contains_const(const TermPtr& t, const std::string& name) {
  switch (t->kind) {
    case TermKind::Const: return t->name == name;
    case TermKind::Abs: return contains_const(t->t1, name);
    case TermKind::App: return contains_const(t->t1, name) || contains_const(t->t2, name);
    default: return false;
  }
}

int max_const_serial(const TermPtr& t) {
  switch (t->kind) {
    case TermKind::Const: return t->idx;
    case TermKind::Abs: return max_const_serial(t->t1);
    case TermKind::App: return std::max(max_const_serial(t->t1), max_const_serial(t->t2));
    default: return 0;
  }
}

namespace {

TypePtr infer(const TermPtr& t, const TypeEnv& env, std::vector<TypePtr>& bound) {
  switch (t->kind) {
    case TermKind::BVar: {
      int i = t->idx;
      if (i < 0 || i >= (int)bound.size())
        throw TypeError("unbound de Bruijn index " + std::to_string(i));
      return bound[bound.size() - 1 - i];
    }
    case TermKind::FVar:
    case TermKind::Const: {
      auto it = env.find(t->name);
      if (it != env.end()) {
        if (t->type && !type_eq(t->type, it->second))
          throw TypeError("type mismatch for " + t->name + ": " + type_str(t->type) +
                          " vs env " + type_str(it->second));
        return it->second;
      }
      if (!t->type) throw TypeError("no type for " + t->name);
      return t->type;
    }
    case TermKind::Num:
      return ty_nat();
    case TermKind::Meta:
      if (!t->type) throw TypeError("untyped metavariable " + t->name);
      return t->type;
    case TermKind::Abs: {
      bound.push_back(t->type);
      TypePtr body = infer(t->t1, env, bound);
      bound.pop_back();
      return ty_arrow(t->type, body);
    }
    case TermKind::App: {
      TypePtr f = infer(t->t1, env, bound);
      TypePtr a = infer(t->t2, env, bound);
      if (!f->is_arrow())
        throw TypeError("applying non-function " + term_str(t->t1));
      if (!type_eq(f->arg, a))
        throw TypeError("argument type " + type_str(a) + " does not match " + type_str(f));
      return f->res;
    }
  }
  throw TypeError("malformed term");
}

void print(const TermPtr& t, std::vector<std::string>& names, bool paren, std::ostringstream& os) {
  switch (t->kind) {
    case TermKind::BVar: {
      int i = t->idx;
      if (i >= 0 && i < (int)names.size())
        os << names[names.size() - 1 - i];
      else
        os << "#" << i;
      return;
    }
    case TermKind::FVar:
    case TermKind::Const:
      os << t->name;
      return;
    case TermKind::Num:
      os << t->num;
      return;
    case TermKind::Meta:
      os << t->name;
      return;
    case TermKind::Abs: {
      if (paren) os << "(";
      std::string n = t->name.empty() ? "x" : t->name;
      os << "\\" << n << ":" << type_str(t->type) << ". ";
      names.push_back(n);
      print(t->t1, names, false, os);
      names.pop_back();
      if (paren) os << ")";
      return;
    }
    case TermKind::App: {
      if (paren) os << "(";
      print(t->t1, names, t->t1->kind == TermKind::Abs, os);
      os << " ";
      print(t->t2, names, t->t2->kind == TermKind::App || t->t2->kind == TermKind::Abs, os);
      if (paren) os << ")";
      return;
    }
  }
}

}  // namespace

TypePtr infer_type(const TermPtr& t, const TypeEnv& env) {
  std::vector<TypePtr> bound;
  return infer(t, env, bound);
}

std::string term_str(const TermPtr& t) {
  std::ostringstream os;
  std::vector<std::string> names;
  print(t, names, false, os);
  return os.str();
}

}  // namespace lolli
