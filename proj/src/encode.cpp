#include "lolli/encode.hpp"

#include <algorithm>
#include <sstream>

namespace lolli {

namespace {

TypePtr ty_binop() { return ty_arrow(ty_prog(), ty_arrow(ty_prog(), ty_prog())); }

TermPtr c_v() { return mk_const("v", ty_arrow(ty_nat(), ty_prog())); }
TermPtr c_get() { return mk_const("get", ty_arrow(ty_prog(), ty_prog())); }
TermPtr c_bin(const char* name) { return mk_const(name, ty_binop()); }
TermPtr c_e() {
  return mk_const("e", ty_arrow(ty_prog(), ty_arrow(ty_nat(), ty_arrow(ty_o(), ty_o()))));
}
TermPtr c_m() { return mk_const("m", ty_arrow(ty_nat(), ty_arrow(ty_nat(), ty_o()))); }

}  // namespace

Signature encoding_signature() {
  Signature sig;
  sig.declare("e", "prog -> nat -> o -> o");
  sig.declare("m", "nat -> nat -> o");
  sig.declare("v", "nat -> prog");
  sig.declare("get", "prog -> prog");
  for (const char* c : {"add", "sub", "grt", "set", "sq", "wh"}) sig.declare(c, "prog -> prog -> prog");
  return sig;
}

TermPtr translate_program(const ProgPtr& p) {
  switch (p->kind) {
    case PKind::Num: return mk_app(c_v(), mk_num(p->num));
    case PKind::Add: return mk_app(c_bin("add"), {translate_program(p->a), translate_program(p->b)});
    case PKind::Sub: return mk_app(c_bin("sub"), {translate_program(p->a), translate_program(p->b)});
    case PKind::Gt: return mk_app(c_bin("grt"), {translate_program(p->a), translate_program(p->b)});
    case PKind::Deref: return mk_app(c_get(), translate_program(p->a));
    case PKind::Assign:
      return mk_app(c_bin("set"), {translate_program(p->a), translate_program(p->b)});
    case PKind::Seq: return mk_app(c_bin("sq"), {translate_program(p->a), translate_program(p->b)});
    case PKind::While: return mk_app(c_bin("wh"), {translate_program(p->a), translate_program(p->b)});
  }
  throw EngineError("malformed program");
}

std::vector<TermPtr> translate_memory(const Memory& m) {
  std::vector<TermPtr> out;
  for (const auto& [loc, val] : m) out.push_back(mk_app(c_m(), {mk_num(loc), mk_num(val)}));
  return out;
}

const std::vector<TermPtr>& gamma_clauses() {
  static const std::vector<TermPtr> clauses = [] {
    Signature sig = encoding_signature();
    const char* text[] = {
        // the value clause: the continuation is proved in unchanged memory
        "all N : nat. all C : o. C -o e (v N) N C",
        "all E1 : prog. all E2 : prog. all N3 : nat. all C : o."
        " (ex N1 : nat. ex N2 : nat. e E1 N1 (e E2 N2 (add3 N1 N2 N3 * C)))"
        " -o e (add E1 E2) N3 C",
        "all E1 : prog. all E2 : prog. all N3 : nat. all C : o."
        " (ex N1 : nat. ex N2 : nat. e E1 N1 (e E2 N2 (sub3 N1 N2 N3 * C)))"
        " -o e (sub E1 E2) N3 C",
        "all E1 : prog. all E2 : prog. all C : o."
        " (ex N1 : nat. ex N2 : nat. e E1 N1 (e E2 N2 (gt N1 N2 * C)))"
        " -o e (grt E1 E2) 1 C",
        "all E1 : prog. all E2 : prog. all C : o."
        " (ex N1 : nat. ex N2 : nat. e E1 N1 (e E2 N2 (le N1 N2 * C)))"
        " -o e (grt E1 E2) 0 C",
        // memory access: remove the cell, then put it back in front of C
        "all E : prog. all N2 : nat. all C : o."
        " (ex N1 : nat. e E N1 (m N1 N2 * (m N1 N2 -o C)))"
        " -o e (get E) N2 C",
        "all E1 : prog. all E2 : prog. all N2 : nat. all C : o."
        " (ex N1 : nat. ex N3 : nat. e E1 N1 (e E2 N2 (m N1 N3 * (m N1 N2 -o C))))"
        " -o e (set E1 E2) N2 C",
        "all E1 : prog. all E2 : prog. all N2 : nat. all C : o."
        " (ex N1 : nat. e E1 N1 (e E2 N2 C))"
        " -o e (sq E1 E2) N2 C",
        // while returns 0 in both cases; the guard value decides the clause.
        // The exit clause comes first: its side condition fails right after
        // the guard evaluates, while trying the loop clause on a false guard
        // would run the body and recurse before gt ever sees the value.
        "all E1 : prog. all E2 : prog. all C : o."
        " (ex N1 : nat. e E1 N1 C * eq N1 0)"
        " -o e (wh E1 E2) 0 C",
        "all E1 : prog. all E2 : prog. all C : o."
        " (ex N1 : nat. ex N2 : nat. e E1 N1 (e E2 N2 (e (wh E1 E2) 0 C)) * gt N1 0)"
        " -o e (wh E1 E2) 0 C",
    };
    std::vector<TermPtr> out;
    for (const char* t : text) {
      TermPtr f = parse_formula(t, sig);
      if (!is_clause(f)) throw EngineError("program clause is not clausal: " + std::string(t));
      out.push_back(f);
    }
    return out;
  }();
  return clauses;
}

const std::vector<std::string>& gamma_clause_names() {
  static const std::vector<std::string> names = {"v",   "add", "sub", "gt1", "gt0",
                                                 "get", "set", "sq",  "wh0", "wh1"};
  return names;
}

int clause_index_of(const ProofPtr& bcu) {
  if (bcu->rule != Rule::BCu) return -1;
  if (bcu->principal < 0 || bcu->principal >= (int)bcu->conclusion.gamma.size()) return -1;
  const TermPtr& c = bcu->conclusion.gamma[bcu->principal];
  const auto& all = gamma_clauses();
  for (size_t i = 0; i < all.size(); ++i)
    if (term_eq(all[i], c)) return (int)i;
  return -1;
}

Query build_query(const ProgPtr& p, const Memory& m, bool collect) {
  Query q;
  q.gamma = gamma_clauses();
  q.delta = translate_memory(m);
  q.value_meta = 1;
  TermPtr cont = f_top();
  if (collect) {
    int id = 2;
    for (const auto& [loc, val] : m) q.cell_metas.emplace_back(loc, id++);
    for (auto it = q.cell_metas.rbegin(); it != q.cell_metas.rend(); ++it)
      cont = f_tensor(mk_app(c_m(), {mk_num(it->first), mk_meta(it->second, ty_nat())}), cont);
  }
  q.goal = mk_app(c_e(), {translate_program(p), mk_meta(q.value_meta, ty_nat()), cont});
  return q;
}

LogicRun run_via_logic(const ProgPtr& p, const Memory& m, const SearchConfig& cfg) {
  Query q = build_query(p, m, true);
  SearchConfig c = cfg;
  c.trace = true;
  if (c.gamma_names.empty()) c.gamma_names = gamma_clause_names();
  if (c.delta_names.empty())
    for (const auto& [loc, val] : m) c.delta_names.push_back("m" + std::to_string(loc));

  ProveResult r = prove(q.gamma, q.delta, q.goal, c);
  LogicRun run;
  run.trace = std::move(r.trace);
  run.bc_nodes = r.bc_nodes;
  if (r.status == ProveStatus::Unprovable) return run;
  if (r.status == ProveStatus::BudgetExhausted) {
    run.status = LogicRun::Status::Budget;
    return run;
  }
  run.status = LogicRun::Status::Ok;
  run.proof = r.proof;

  // the instantiated root goal carries the results: e(t, value, collector)
  FView g = view(r.proof->conclusion.goal);
  if (g.kind != FKind::RigidAtom || g.args.size() != 3)
    throw EngineError("result goal is not an e-atom");
  if (g.args[1]->kind != TermKind::Num) throw EngineError("return value is not a numeral");
  run.value = g.args[1]->num;
  TermPtr cont = g.args[2];
  while (true) {
    FView v = view(cont);
    if (v.kind == FKind::Top) break;
    if (v.kind != FKind::Tensor) throw EngineError("collector lost its shape");
    FView cell = view(v.l);
    if (cell.kind != FKind::RigidAtom || cell.args.size() != 2 ||
        cell.args[0]->kind != TermKind::Num || cell.args[1]->kind != TermKind::Num)
      throw EngineError("collector cell is not a ground m-atom");
    run.memory[cell.args[0]->num] = cell.args[1]->num;
    cont = v.r;
  }
  return run;
}

namespace {

const char* tag_for_clause(int i) {
  static const char* tags[] = {"num",   "add", "sub",    "gtTrue",     "gtFalse",
                               "deref", "assign", "seq", "whileFalse", "whileTrue"};
  return tags[i];
}

DRule drule_for_clause(int i) {
  static const DRule rules[] = {DRule::Num,    DRule::Add,    DRule::Sub, DRule::GtTrue,
                                DRule::GtFalse, DRule::Deref, DRule::Assign, DRule::Seq,
                                DRule::WhileFalse, DRule::WhileTrue};
  return rules[i];
}

}  // namespace

MimicryReport mimicry_report(const DerivPtr& d, const ProofPtr& t) {
  MimicryReport rep;
  std::map<DRule, int> oracle;
  count_drules(d, oracle);
  for (int i = 0; i < 10; ++i) {
    MimicryRow row;
    row.tag = tag_for_clause(i);
    row.clause = gamma_clause_names()[i];
    row.oracle = oracle[drule_for_clause(i)];
    rep.rows.push_back(row);
  }
  visit(t, [&](const ProofPtr& n, const Path&) {
    int i = clause_index_of(n);
    if (i >= 0) rep.rows[i].bc++;
  });
  rep.ok = true;
  for (const auto& row : rep.rows) rep.ok = rep.ok && row.oracle == row.bc;
  return rep;
}

std::string MimicryReport::text() const {
  size_t w = 0;
  for (const auto& r : rows) w = std::max(w, r.tag.size());
  std::ostringstream os;
  std::string offending;
  for (const auto& r : rows) {
    os << r.tag << std::string(w - r.tag.size() + 1, ' ') << r.oracle << " " << r.bc << "\n";
    if (r.oracle != r.bc) offending += (offending.empty() ? "" : ", ") + r.tag;
  }
  if (offending.empty())
    os << "verdict ok\n";
  else
    os << "verdict mismatch: " << offending << "\n";
  return os.str();
}

}  // namespace lolli
