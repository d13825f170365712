#include "lolli/imp.hpp"

#include <sstream>

namespace lolli {

namespace {

ProgPtr mk(PKind k, std::uint64_t n, ProgPtr a, ProgPtr b) {
  auto p = std::make_shared<Prog>();
  p->kind = k;
  p->num = n;
  p->a = std::move(a);
  p->b = std::move(b);
  return p;
}

}  // namespace

ProgPtr p_num(std::uint64_t n) { return mk(PKind::Num, n, nullptr, nullptr); }
ProgPtr p_add(ProgPtr a, ProgPtr b) { return mk(PKind::Add, 0, std::move(a), std::move(b)); }
ProgPtr p_sub(ProgPtr a, ProgPtr b) { return mk(PKind::Sub, 0, std::move(a), std::move(b)); }
ProgPtr p_gt(ProgPtr a, ProgPtr b) { return mk(PKind::Gt, 0, std::move(a), std::move(b)); }
ProgPtr p_deref(ProgPtr a) { return mk(PKind::Deref, 0, std::move(a), nullptr); }
ProgPtr p_assign(ProgPtr t, ProgPtr s) { return mk(PKind::Assign, 0, std::move(t), std::move(s)); }
ProgPtr p_seq(ProgPtr a, ProgPtr b) { return mk(PKind::Seq, 0, std::move(a), std::move(b)); }
ProgPtr p_while(ProgPtr g, ProgPtr b) { return mk(PKind::While, 0, std::move(g), std::move(b)); }

bool prog_eq(const ProgPtr& a, const ProgPtr& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  if (a->kind == PKind::Num) return a->num == b->num;
  if (a->kind == PKind::Deref) return prog_eq(a->a, b->a);
  return prog_eq(a->a, b->a) && prog_eq(a->b, b->b);
}

namespace {

// precedence levels for printing: 0 seq, 1 assign, 2 cmp, 3 sum, 4 unary
void print(const ProgPtr& p, int level, std::ostream& os) {
  auto paren = [&](int mine, auto body) {
    if (level > mine) os << "(";
    body();
    if (level > mine) os << ")";
  };
  switch (p->kind) {
    case PKind::Num:
      os << p->num;
      return;
    case PKind::Deref:
      os << "*";
      print(p->a, 4, os);
      return;
    case PKind::Add:
      paren(3, [&] { print(p->a, 3, os); os << " + "; print(p->b, 4, os); });
      return;
    case PKind::Sub:
      paren(3, [&] { print(p->a, 3, os); os << " - "; print(p->b, 4, os); });
      return;
    case PKind::Gt:
      paren(2, [&] { print(p->a, 2, os); os << " > "; print(p->b, 3, os); });
      return;
    case PKind::Assign:
      paren(1, [&] { print(p->a, 2, os); os << " <- "; print(p->b, 1, os); });
      return;
    case PKind::Seq:
      paren(0, [&] { print(p->a, 1, os); os << " ; "; print(p->b, 0, os); });
      return;
    case PKind::While:
      // a bare while swallows everything to its right when re-parsed
      paren(0, [&] { os << "while "; print(p->a, 0, os); os << " do "; print(p->b, 0, os); });
      return;
  }
}

struct ProgParser {
  const std::string& text;
  size_t pos = 0;
  int line = 1, col = 1;

  struct Tok {
    enum Kind { Num, Star, Plus, Minus, Gt, Arrow, Semi, LP, RP, While, Do, End } kind;
    std::uint64_t num = 0;
    int line, col;
  };
  Tok tok;

  explicit ProgParser(const std::string& t) : text(t) { advance(); }

  [[noreturn]] void fail(const std::string& msg, int l, int c) {
    throw ImpError("syntax error at line " + std::to_string(l) + ", column " +
                   std::to_string(c) + ": " + msg);
  }
  [[noreturn]] void fail(const std::string& msg) { fail(msg, tok.line, tok.col); }

  void bump(char c) {
    if (c == '\n') {
      line++;
      col = 1;
    } else {
      col++;
    }
    pos++;
  }

  void advance() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\r' ||
                                 text[pos] == '\n'))
      bump(text[pos]);
    tok.line = line;
    tok.col = col;
    if (pos >= text.size()) {
      tok.kind = Tok::End;
      return;
    }
    char c = text[pos];
    if (c >= '0' && c <= '9') {
      std::uint64_t v = 0;
      while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
        if (v > (UINT64_MAX - 9) / 10) fail("numeral too large", tok.line, tok.col);
        v = v * 10 + (text[pos] - '0');
        bump(text[pos]);
      }
      tok.kind = Tok::Num;
      tok.num = v;
      return;
    }
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_') {
      std::string word;
      while (pos < text.size() &&
             ((text[pos] >= 'a' && text[pos] <= 'z') || (text[pos] >= 'A' && text[pos] <= 'Z') ||
              (text[pos] >= '0' && text[pos] <= '9') || text[pos] == '_')) {
        word += text[pos];
        bump(text[pos]);
      }
      if (word == "while") {
        tok.kind = Tok::While;
      } else if (word == "do") {
        tok.kind = Tok::Do;
      } else {
        fail("unknown identifier '" + word + "'", tok.line, tok.col);
      }
      return;
    }
    switch (c) {
      case '*': tok.kind = Tok::Star; break;
      case '+': tok.kind = Tok::Plus; break;
      case '-': tok.kind = Tok::Minus; break;
      case '>': tok.kind = Tok::Gt; break;
      case ';': tok.kind = Tok::Semi; break;
      case '(': tok.kind = Tok::LP; break;
      case ')': tok.kind = Tok::RP; break;
      case '<':
        if (pos + 1 < text.size() && text[pos + 1] == '-') {
          bump('<');
          tok.kind = Tok::Arrow;
          break;
        }
        fail("expected '<-'", tok.line, tok.col);
      default:
        fail(std::string("unexpected character '") + c + "'", tok.line, tok.col);
    }
    bump(text[pos]);
  }

  ProgPtr expr() {  // seq level, right associative
    ProgPtr l = assign();
    if (tok.kind == Tok::Semi) {
      advance();
      return p_seq(std::move(l), expr());
    }
    return l;
  }

  ProgPtr assign() {
    ProgPtr l = cmp();
    if (tok.kind == Tok::Arrow) {
      advance();
      return p_assign(std::move(l), assign());
    }
    return l;
  }

  ProgPtr cmp() {
    ProgPtr l = sum();
    while (tok.kind == Tok::Gt) {
      advance();
      l = p_gt(std::move(l), sum());
    }
    return l;
  }

  ProgPtr sum() {
    ProgPtr l = unary();
    while (tok.kind == Tok::Plus || tok.kind == Tok::Minus) {
      bool plus = tok.kind == Tok::Plus;
      advance();
      ProgPtr r = unary();
      l = plus ? p_add(std::move(l), std::move(r)) : p_sub(std::move(l), std::move(r));
    }
    return l;
  }

  ProgPtr unary() {
    if (tok.kind == Tok::Star) {
      advance();
      return p_deref(unary());
    }
    return primary();
  }

  ProgPtr primary() {
    switch (tok.kind) {
      case Tok::Num: {
        auto v = tok.num;
        advance();
        return p_num(v);
      }
      case Tok::LP: {
        advance();
        ProgPtr p = expr();
        if (tok.kind != Tok::RP) fail("expected ')'");
        advance();
        return p;
      }
      case Tok::While: {
        advance();
        ProgPtr g = expr();
        if (tok.kind != Tok::Do) fail("expected 'do'");
        advance();
        return p_while(std::move(g), expr());
      }
      default:
        fail("expected a program expression");
    }
  }
};

}  // namespace

std::string prog_str(const ProgPtr& p) {
  std::ostringstream os;
  print(p, 0, os);
  return os.str();
}

ProgPtr parse_program(const std::string& text) {
  ProgParser p(text);
  ProgPtr r = p.expr();
  if (p.tok.kind != ProgParser::Tok::End) p.fail("trailing input after program");
  return r;
}

Memory parse_memory(const std::string& text) {
  Memory m;
  std::istringstream is(text);
  std::string ln;
  int lineno = 0;
  while (std::getline(is, ln)) {
    lineno++;
    std::istringstream ls(ln);
    std::uint64_t loc, val;
    if (!(ls >> loc)) {
      std::string rest;
      if (ls.clear(), ls >> rest)
        throw ImpError("memory line " + std::to_string(lineno) + ": expected 'loc value'");
      continue;  // blank line
    }
    if (!(ls >> val)) throw ImpError("memory line " + std::to_string(lineno) + ": missing value");
    std::string rest;
    if (ls >> rest) throw ImpError("memory line " + std::to_string(lineno) + ": trailing input");
    m[loc] = val;
  }
  return m;
}

std::string memory_str(const Memory& m) {
  std::ostringstream os;
  for (const auto& [loc, val] : m) os << loc << " " << val << "\n";
  return os.str();
}

const char* drule_name(DRule r) {
  switch (r) {
    case DRule::Num: return "num";
    case DRule::Add: return "add";
    case DRule::Sub: return "sub";
    case DRule::GtTrue: return "gtTrue";
    case DRule::GtFalse: return "gtFalse";
    case DRule::Deref: return "deref";
    case DRule::Assign: return "assign";
    case DRule::Seq: return "seq";
    case DRule::WhileTrue: return "whileTrue";
    case DRule::WhileFalse: return "whileFalse";
  }
  return "?";
}

int deriv_size(const DerivPtr& d) {
  int n = 1;
  for (const auto& p : d->premises) n += deriv_size(p);
  return n;
}

void count_drules(const DerivPtr& d, std::map<DRule, int>& out) {
  out[d->rule]++;
  for (const auto& p : d->premises) count_drules(p, out);
}

namespace {

void deriv_print(const DerivPtr& d, int depth, std::ostream& os) {
  for (int i = 0; i < depth; i++) os << "  ";
  os << drule_name(d->rule) << " <" << prog_str(d->prog) << "> ~> (" << d->value << ")";
  for (const auto& s : d->sides) os << " [" << s << "]";
  os << "\n";
  for (const auto& p : d->premises) deriv_print(p, depth + 1, os);
}

}  // namespace

std::string deriv_str(const DerivPtr& d) {
  std::ostringstream os;
  deriv_print(d, 0, os);
  return os.str();
}

namespace {

struct Evaluator {
  long budget;
  bool stuck = false;
  long steps = 0;

  DerivPtr make(DRule r, const ProgPtr& p, const Memory& m, std::uint64_t value, Memory out,
                std::vector<DerivPtr> prems, std::vector<std::string> sides) {
    auto d = std::make_shared<Deriv>();
    d->rule = r;
    d->prog = p;
    d->mem_in = m;
    d->value = value;
    d->mem_out = std::move(out);
    d->premises = std::move(prems);
    d->sides = std::move(sides);
    return d;
  }

  DerivPtr eval(const ProgPtr& p, const Memory& m) {
    if (steps >= budget) return nullptr;  // budget, not stuck
    steps++;
    switch (p->kind) {
      case PKind::Num:
        return make(DRule::Num, p, m, p->num, m, {}, {});
      case PKind::Add:
      case PKind::Sub:
      case PKind::Gt: {
        DerivPtr l = eval(p->a, m);
        if (!l) return nullptr;
        DerivPtr r = eval(p->b, l->mem_out);
        if (!r) return nullptr;
        std::uint64_t n1 = l->value, n2 = r->value;
        Memory out = r->mem_out;
        if (p->kind == PKind::Add)
          return make(DRule::Add, p, m, n1 + n2, std::move(out), {l, r}, {});
        if (p->kind == PKind::Sub)  // monus
          return make(DRule::Sub, p, m, n1 > n2 ? n1 - n2 : 0, std::move(out), {l, r}, {});
        if (n1 > n2)
          return make(DRule::GtTrue, p, m, 1, std::move(out), {l, r},
                      {std::to_string(n1) + " > " + std::to_string(n2)});
        return make(DRule::GtFalse, p, m, 0, std::move(out), {l, r},
                    {std::to_string(n1) + " <= " + std::to_string(n2)});
      }
      case PKind::Deref: {
        DerivPtr a = eval(p->a, m);
        if (!a) return nullptr;
        auto it = a->mem_out.find(a->value);
        if (it == a->mem_out.end()) {
          stuck = true;
          return nullptr;
        }
        return make(DRule::Deref, p, m, it->second, a->mem_out, {a},
                    {"M(" + std::to_string(a->value) + ") = " + std::to_string(it->second)});
      }
      case PKind::Assign: {
        DerivPtr l = eval(p->a, m);
        if (!l) return nullptr;
        DerivPtr r = eval(p->b, l->mem_out);
        if (!r) return nullptr;
        auto it = r->mem_out.find(l->value);
        if (it == r->mem_out.end()) {  // the domain of memory stays fixed
          stuck = true;
          return nullptr;
        }
        std::string side = "M(" + std::to_string(l->value) + ") = " + std::to_string(it->second);
        Memory out = r->mem_out;
        out[l->value] = r->value;
        return make(DRule::Assign, p, m, r->value, std::move(out), {l, r}, {side});
      }
      case PKind::Seq: {
        DerivPtr l = eval(p->a, m);
        if (!l) return nullptr;
        DerivPtr r = eval(p->b, l->mem_out);
        if (!r) return nullptr;
        return make(DRule::Seq, p, m, r->value, r->mem_out, {l, r}, {});
      }
      case PKind::While: {
        DerivPtr g = eval(p->a, m);
        if (!g) return nullptr;
        if (g->value == 0)
          return make(DRule::WhileFalse, p, m, 0, g->mem_out, {g}, {});
        DerivPtr b = eval(p->b, g->mem_out);
        if (!b) return nullptr;
        DerivPtr rec = eval(p, b->mem_out);
        if (!rec) return nullptr;
        return make(DRule::WhileTrue, p, m, rec->value, rec->mem_out, {g, b, rec},
                    {std::to_string(g->value) + " > 0"});
      }
    }
    return nullptr;
  }
};

}  // namespace

EvalResult eval_oracle(const ProgPtr& p, const Memory& m, long step_budget) {
  Evaluator ev{step_budget};
  DerivPtr d = ev.eval(p, m);
  EvalResult r;
  r.steps = ev.steps;
  if (!d) {
    r.status = ev.stuck ? EvalStatus::Stuck : EvalStatus::Budget;
    return r;
  }
  r.status = EvalStatus::Ok;
  r.value = d->value;
  r.memory = d->mem_out;
  r.deriv = d;
  return r;
}

namespace {

struct DCheckFail {
  std::string msg;
};

void dcheck(const DerivPtr& d) {
  auto bad = [&](const std::string& what) {
    throw DCheckFail{std::string(drule_name(d->rule)) + " node on <" + prog_str(d->prog) +
                     ">: " + what};
  };
  auto premise = [&](size_t i, const ProgPtr& prog, const Memory& in) {
    if (i >= d->premises.size()) bad("missing premise " + std::to_string(i));
    const DerivPtr& p = d->premises[i];
    if (!prog_eq(p->prog, prog)) bad("premise " + std::to_string(i) + " evaluates the wrong program");
    if (p->mem_in != in) bad("premise " + std::to_string(i) + " breaks the memory thread");
  };
  auto arity = [&](size_t n) {
    if (d->premises.size() != n) bad("expected " + std::to_string(n) + " premises");
  };
  switch (d->rule) {
    case DRule::Num:
      if (d->prog->kind != PKind::Num) bad("rule does not match the program");
      arity(0);
      if (d->value != d->prog->num || d->mem_out != d->mem_in) bad("conclusion off schema");
      break;
    case DRule::Add:
    case DRule::Sub:
    case DRule::GtTrue:
    case DRule::GtFalse: {
      PKind want = d->rule == DRule::Add  ? PKind::Add
                   : d->rule == DRule::Sub ? PKind::Sub
                                           : PKind::Gt;
      if (d->prog->kind != want) bad("rule does not match the program");
      arity(2);
      premise(0, d->prog->a, d->mem_in);
      premise(1, d->prog->b, d->premises[0]->mem_out);
      std::uint64_t n1 = d->premises[0]->value, n2 = d->premises[1]->value;
      if (d->mem_out != d->premises[1]->mem_out) bad("output memory off schema");
      if (d->rule == DRule::Add && d->value != n1 + n2) bad("sum is wrong");
      if (d->rule == DRule::Sub && d->value != (n1 > n2 ? n1 - n2 : 0)) bad("monus is wrong");
      if (d->rule == DRule::GtTrue && !(n1 > n2 && d->value == 1)) bad("guard is wrong");
      if (d->rule == DRule::GtFalse && !(n1 <= n2 && d->value == 0)) bad("guard is wrong");
      break;
    }
    case DRule::Deref: {
      if (d->prog->kind != PKind::Deref) bad("rule does not match the program");
      arity(1);
      premise(0, d->prog->a, d->mem_in);
      const Memory& mo = d->premises[0]->mem_out;
      auto it = mo.find(d->premises[0]->value);
      if (it == mo.end()) bad("lookup at an undefined location");
      if (d->value != it->second || d->mem_out != mo) bad("conclusion off schema");
      break;
    }
    case DRule::Assign: {
      if (d->prog->kind != PKind::Assign) bad("rule does not match the program");
      arity(2);
      premise(0, d->prog->a, d->mem_in);
      premise(1, d->prog->b, d->premises[0]->mem_out);
      const Memory& mo = d->premises[1]->mem_out;
      std::uint64_t loc = d->premises[0]->value;
      if (mo.find(loc) == mo.end()) bad("update at an undefined location");
      Memory want = mo;
      want[loc] = d->premises[1]->value;
      if (d->value != d->premises[1]->value || d->mem_out != want) bad("conclusion off schema");
      break;
    }
    case DRule::Seq:
      if (d->prog->kind != PKind::Seq) bad("rule does not match the program");
      arity(2);
      premise(0, d->prog->a, d->mem_in);
      premise(1, d->prog->b, d->premises[0]->mem_out);
      if (d->value != d->premises[1]->value || d->mem_out != d->premises[1]->mem_out)
        bad("conclusion off schema");
      break;
    case DRule::WhileFalse:
      if (d->prog->kind != PKind::While) bad("rule does not match the program");
      arity(1);
      premise(0, d->prog->a, d->mem_in);
      if (d->premises[0]->value != 0) bad("guard is not false");
      if (d->value != 0 || d->mem_out != d->premises[0]->mem_out) bad("conclusion off schema");
      break;
    case DRule::WhileTrue:
      if (d->prog->kind != PKind::While) bad("rule does not match the program");
      arity(3);
      premise(0, d->prog->a, d->mem_in);
      if (d->premises[0]->value == 0) bad("guard is not true");
      premise(1, d->prog->b, d->premises[0]->mem_out);
      premise(2, d->prog, d->premises[1]->mem_out);
      if (d->value != d->premises[2]->value || d->mem_out != d->premises[2]->mem_out)
        bad("conclusion off schema");
      break;
  }
  for (const auto& p : d->premises) dcheck(p);
}

}  // namespace

DerivCheck check_derivation(const DerivPtr& d) {
  try {
    dcheck(d);
  } catch (const DCheckFail& f) {
    return {false, f.msg};
  }
  return {};
}

ProgPtr sum_loop() {
  // while *1 > 0 do (0 <- *0 + *1 ; 1 <- *1 - 1)
  ProgPtr guard = p_gt(p_deref(p_num(1)), p_num(0));
  ProgPtr body = p_seq(p_assign(p_num(0), p_add(p_deref(p_num(0)), p_deref(p_num(1)))),
                       p_assign(p_num(1), p_sub(p_deref(p_num(1)), p_num(1))));
  return p_while(std::move(guard), std::move(body));
}

ProgPtr sum_prog(std::uint64_t n) {
  return p_seq(p_assign(p_num(0), p_num(0)), p_seq(p_assign(p_num(1), p_num(n)), sum_loop()));
}

std::pair<std::uint64_t, Memory> run_sum(std::uint64_t n) {
  Memory m{{0, 0}, {1, 0}};
  EvalResult r = eval_oracle(sum_prog(n), m, 1000000);
  if (r.status != EvalStatus::Ok) throw ImpError("run_sum did not terminate within budget");
  return {r.value, r.memory};
}

}  // namespace lolli
