#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "lolli/checker.hpp"
#include "lolli/clause.hpp"
#include "lolli/encode.hpp"
#include "progen.hpp"

using namespace lolli;

namespace {

ProgPtr swap_prog() { return parse_program("2 <- *0 ; (0 <- *1 ; 1 <- *2)"); }

// collects the delta principals of every BCb node in the subtree
void bcb_principals(const ProofPtr& p, std::vector<TermPtr>& out) {
  if (p->rule == Rule::BCb) out.push_back(p->conclusion.delta[p->principal]);
  for (const auto& q : p->premises) bcb_principals(q, out);
}

// clone with the first BCu resolved against `clause` spliced out, replaced
// by its last premise (the continuation obligation)
ProofPtr splice_first(const ProofPtr& p, int clause, bool& done) {
  if (!done && clause_index_of(p) == clause && !p->premises.empty()) {
    done = true;
    return p->premises.back();
  }
  auto n = std::make_shared<ProofNode>(*p);
  for (auto& q : n->premises) q = splice_first(q, clause, done);
  return n;
}

}  // namespace

TEST_CASE("programs translate structurally") {
  CHECK(term_str(translate_program(p_num(3))) == "v 3");
  CHECK(term_str(translate_program(parse_program("1 <- *2"))) == "set (v 1) (get (v 2))");
  CHECK(term_str(translate_program(parse_program("1 + 2 ; 2 - 1"))) ==
        "sq (add (v 1) (v 2)) (sub (v 2) (v 1))");
  CHECK(term_str(translate_program(parse_program("while *1 > 0 do 0 <- 0"))) ==
        "wh (grt (get (v 1)) (v 0)) (set (v 0) (v 0))");
}

TEST_CASE("memory translates to one m-atom per cell") {
  CHECK(translate_memory({}).empty());
  auto one = translate_memory({{0, 5}});
  REQUIRE(one.size() == 1);
  CHECK(formula_str(one[0]) == "m 0 5");
  auto two = translate_memory({{1, 7}, {0, 5}});
  REQUIRE(two.size() == 2);
  CHECK(formula_str(two[0]) == "m 0 5");
  CHECK(formula_str(two[1]) == "m 1 7");
}

TEST_CASE("the ten program clauses are clausal and elaborate to single triples") {
  const auto& cs = gamma_clauses();
  REQUIRE(cs.size() == 10);
  REQUIRE(gamma_clause_names().size() == 10);
  int next = 1000;
  FreshMeta fresh = [&next](const TypePtr& ty) { return mk_meta(next++, ty); };
  for (const auto& c : cs) {
    CAPTURE(formula_str(c));
    CHECK(is_clause(c));
    auto triples = elaborate(c, fresh);
    REQUIRE(triples.size() == 1);
    CHECK(triples[0].unbounded.empty());
    CHECK(triples[0].bounded.size() == 1);
    FView head = view(triples[0].head);
    REQUIRE(head.kind == FKind::RigidAtom);
    CHECK(term_str(head.head) == "e");
  }
  // clause text survives printing and re-parsing
  Signature sig = encoding_signature();
  for (const auto& c : cs) CHECK(term_eq(parse_formula(formula_str(c), sig), c));
}

TEST_CASE("queries wire the translated parts together") {
  Query d = build_query(p_num(7), {{0, 1}}, false);
  CHECK(d.gamma.size() == 10);
  REQUIRE(d.delta.size() == 1);
  CHECK(formula_str(d.delta[0]) == "m 0 1");
  CHECK(formula_str(d.goal) == "e (v 7) ?1 (top)");
  CHECK(d.cell_metas.empty());

  Query c = build_query(swap_prog(), {{0, 5}, {1, 7}, {2, 0}}, true);
  REQUIRE(c.cell_metas.size() == 3);
  FView g = view(c.goal);
  REQUIRE(g.kind == FKind::RigidAtom);
  TermPtr cont = g.args[2];
  for (std::uint64_t loc = 0; loc < 3; ++loc) {
    FView t = view(cont);
    REQUIRE(t.kind == FKind::Tensor);
    FView cell = view(t.l);
    CHECK(cell.args[0]->num == loc);
    CHECK(cell.args[1]->kind == TermKind::Meta);
    cont = t.r;
  }
  CHECK(view(cont).kind == FKind::Top);

  // the single-location inspection query shape
  Query one = build_query(p_num(7), {{1, 9}}, true);
  CHECK(formula_str(one.goal) == "e (v 7) ?1 (m 1 ?2 * top)");
}

TEST_CASE("the logic side swaps the cells and accounts for every resource") {
  Memory m{{0, 5}, {1, 7}, {2, 0}};
  LogicRun r = run_via_logic(swap_prog(), m, {});
  REQUIRE(r.status == LogicRun::Status::Ok);
  CHECK(r.value == 5);
  CHECK(r.memory == Memory{{0, 7}, {1, 5}, {2, 5}});
  CheckResult cr = check_reduced(r.proof);
  CAPTURE(cr.error);
  CHECK(cr.ok);

  CHECK(count_rule(r.proof, Rule::BCu) == 14);
  CHECK(count_rule(r.proof, Rule::BCb) == 9);
  std::map<std::string, int> by_clause;
  for (const auto& e : r.trace)
    if (e.rule == Rule::BCu) by_clause[e.clause_id]++;
  CHECK(by_clause == std::map<std::string, int>{{"sq", 2}, {"set", 3}, {"v", 6}, {"get", 3}});

  // linearity: the collector consumes exactly the final memory image
  TermPtr collector = view(r.proof->conclusion.goal).args[2];
  ProofPtr coll;
  visit(r.proof, [&](const ProofPtr& n, const Path&) {
    if (!coll && term_eq(n->conclusion.goal, collector)) coll = n;
  });
  REQUIRE(coll);
  std::vector<TermPtr> consumed;
  bcb_principals(coll, consumed);
  CHECK(multiset_eq(consumed, translate_memory(r.memory)));
}

TEST_CASE("the Q fragment resolves through four clause instances in order") {
  // 1 <- *2 in the post-swap intermediate memory
  Memory m{{0, 7}, {1, 7}, {2, 5}};
  ProgPtr frag = parse_program("1 <- *2");
  LogicRun r = run_via_logic(frag, m, {});
  REQUIRE(r.status == LogicRun::Status::Ok);
  CHECK(r.value == 5);
  CHECK(r.memory == Memory{{0, 7}, {1, 5}, {2, 5}});
  std::vector<std::string> bcu;
  for (const auto& e : r.trace)
    if (e.rule == Rule::BCu) bcu.push_back(e.clause_id);
  CHECK(bcu == std::vector<std::string>{"set", "v", "get", "v"});

  EvalResult o = eval_oracle(frag, m);
  REQUIRE(o.status == EvalStatus::Ok);
  MimicryReport rep = mimicry_report(o.deriv, r.proof);
  CHECK(rep.ok);
  int oracle_total = 0, bc_total = 0;
  for (const auto& row : rep.rows) {
    oracle_total += row.oracle;
    bc_total += row.bc;
  }
  CHECK(oracle_total == 4);
  CHECK(bc_total == 4);
}

TEST_CASE("mimicry holds on small goldens and fails on a tampered proof") {
  Memory m{{0, 1}};
  EvalResult o = eval_oracle(p_num(7), m);
  LogicRun r = run_via_logic(p_num(7), m, {});
  REQUIRE(r.status == LogicRun::Status::Ok);
  CHECK(r.value == 7);
  MimicryReport rep = mimicry_report(o.deriv, r.proof);
  CHECK(rep.ok);
  CHECK(rep.rows[0].oracle == 1);
  CHECK(rep.rows[0].bc == 1);
  CHECK(rep.text().find("verdict ok") != std::string::npos);

  Memory sm{{0, 5}, {1, 7}, {2, 0}};
  EvalResult so = eval_oracle(swap_prog(), sm);
  LogicRun sr = run_via_logic(swap_prog(), sm, {});
  bool done = false;
  ProofPtr cut = splice_first(sr.proof, 0, done);  // drop one v-clause step
  REQUIRE(done);
  MimicryReport bad = mimicry_report(so.deriv, cut);
  CHECK(!bad.ok);
  CHECK(bad.text().find("mismatch: num") != std::string::npos);
}

TEST_CASE("the sum programs run to the closed form through the logic") {
  LogicRun v3 = run_via_logic(sum_prog(3), {{0, 9}, {1, 9}}, {});
  REQUIRE(v3.status == LogicRun::Status::Ok);
  CHECK(v3.value == 0);
  CHECK(v3.memory == Memory{{0, 6}, {1, 0}});

  LogicRun u = run_via_logic(sum_loop(), {{0, 5}, {1, 4}}, {});
  REQUIRE(u.status == LogicRun::Status::Ok);
  CHECK(u.value == 0);
  CHECK(u.memory == Memory{{0, 15}, {1, 0}});
  CHECK(check_reduced(u.proof).ok);

  EvalResult uo = eval_oracle(sum_loop(), Memory{{0, 5}, {1, 4}});
  CHECK(mimicry_report(uo.deriv, u.proof).ok);
}

TEST_CASE("oracle and logic agree on random loop-free programs") {
  std::mt19937 rng(0x5EED);
  int ok = 0, stuck = 0;
  for (int i = 0; i < 320; i++) {
    ProgPtr p = random_program(rng, 4);
    Memory m = random_memory(rng);
    EvalResult o = eval_oracle(p, m, 10000);
    REQUIRE(o.status != EvalStatus::Budget);  // loop-free programs terminate
    SearchConfig cfg;
    cfg.trace = true;
    cfg.budget = o.status == EvalStatus::Ok ? std::max(10 * o.steps, 100L) : 100000;
    LogicRun r = run_via_logic(p, m, cfg);
    CAPTURE(prog_str(p));
    if (o.status == EvalStatus::Stuck) {
      stuck++;
      REQUIRE(r.status == LogicRun::Status::Unprovable);
      continue;
    }
    ok++;
    REQUIRE(r.status == LogicRun::Status::Ok);
    CHECK(r.value == o.value);
    CHECK(r.memory == o.memory);
    CHECK(mimicry_report(o.deriv, r.proof).ok);
    if (i % 25 == 0) CHECK(check_reduced(r.proof).ok);
  }
  CHECK(ok > 100);
  CHECK(stuck > 20);
}

TEST_CASE("a divergent loop exhausts the proof budget") {
  SearchConfig cfg;
  cfg.budget = 2000;
  LogicRun r = run_via_logic(parse_program("while 1 > 0 do 0 <- 0"), {{0, 0}}, cfg);
  CHECK(r.status == LogicRun::Status::Budget);
  CHECK(!r.proof);
}
