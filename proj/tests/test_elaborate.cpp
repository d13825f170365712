#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>

#include "lolli/clause.hpp"

using namespace lolli;

namespace {

TermPtr parse(const std::string& text, Signature& sig) { return parse_formula(text, sig); }

std::vector<ClauseTriple> elab(const std::string& text, Signature& sig) {
  int next = 0;
  FreshMeta fresh = [&next](const TypePtr& ty) { return mk_meta(next++, ty); };
  return elaborate(parse(text, sig), fresh);
}

}  // namespace

TEST_CASE("an atom elaborates to a single bare triple") {
  Signature sig;
  auto ts = elab("a", sig);
  REQUIRE(ts.size() == 1);
  CHECK(ts[0].unbounded.empty());
  CHECK(ts[0].bounded.empty());
  CHECK(formula_str(ts[0].head) == "a");
  CHECK(triple_str(ts[0]) == "<{}, {}, a>");
}

TEST_CASE("with splits, implications accumulate obligations") {
  Signature sig;
  auto ts = elab("g1 => g2 -o a & (g3 -o b)", sig);
  REQUIRE(ts.size() == 2);
  CHECK(triple_str(ts[0]) == "<{g1}, {g2}, a>");
  CHECK(triple_str(ts[1]) == "<{g1}, {g2, g3}, b>");
}

TEST_CASE("obligations shared below a with appear in every triple") {
  Signature sig;
  auto ts = elab("g -o a & b", sig);
  REQUIRE(ts.size() == 2);
  CHECK(triple_str(ts[0]) == "<{}, {g}, a>");
  CHECK(triple_str(ts[1]) == "<{}, {g}, b>");
}

TEST_CASE("triples come out in left-to-right clause order") {
  Signature sig;
  auto ts = elab("(a & b) & c", sig);
  REQUIRE(ts.size() == 3);
  CHECK(formula_str(ts[0].head) == "a");
  CHECK(formula_str(ts[1].head) == "b");
  CHECK(formula_str(ts[2].head) == "c");
}

TEST_CASE("quantifiers instantiate with fresh metavariables in binding order") {
  Signature sig;
  auto ts = elab("all x : nat. all y : nat. m x y -o p x y", sig);
  REQUIRE(ts.size() == 1);
  CHECK(formula_str(ts[0].head) == "p ?0 ?1");
  REQUIRE(ts[0].bounded.size() == 1);
  CHECK(formula_str(ts[0].bounded[0]) == "m ?0 ?1");
}

TEST_CASE("head filter drops triples that cannot match") {
  Signature sig;
  TermPtr clause = parse("(g -o a) & (h -o b)", sig);
  TermPtr want = parse("b", sig);
  int next = 0;
  FreshMeta fresh = [&next](const TypePtr& ty) { return mk_meta(next++, ty); };
  auto ts = elaborate(clause, fresh, want);
  REQUIRE(ts.size() == 1);
  CHECK(formula_str(ts[0].head) == "b");
}

TEST_CASE("non-clauses are rejected") {
  Signature sig;
  int next = 0;
  FreshMeta fresh = [&next](const TypePtr& ty) { return mk_meta(next++, ty); };
  CHECK_THROWS_AS(elaborate(parse("a * b", sig), fresh), ElaborateError);
  CHECK_THROWS_AS(elaborate(parse("top", sig), fresh), ElaborateError);
  CHECK_THROWS_AS(elaborate(parse("a -o b * c", sig), fresh), ElaborateError);
}

TEST_CASE("match_term instantiates pattern metavariables only") {
  Signature sig;
  sig.declare("p", "nat -> nat -> o");
  TermPtr pat = parse_formula("p ?1 (s ?1)", sig);
  TermPtr t = parse_formula("p 3 4", sig);
  std::map<int, TermPtr> b;
  REQUIRE(match_term(pat, t, b));
  CHECK(term_eq(b.at(1), mk_num(3)));
  // inconsistent reuse fails
  std::map<int, TermPtr> b2;
  CHECK(!match_term(pat, parse_formula("p 3 5", sig), b2));
  // s-patterns do not match zero
  std::map<int, TermPtr> b3;
  TermPtr pat0 = parse_formula("p ?2 (s ?3)", sig);
  CHECK(!match_term(pat0, parse_formula("p 1 0", sig), b3));
}

TEST_CASE("triple membership in the elaboration closure") {
  Signature sig;
  TermPtr clause = parse("all x : nat. (q x => p x) & (r -o p (s x))", sig);

  auto member = [&](std::vector<std::string> unb, std::vector<std::string> bnd,
                    const std::string& head) {
    ClauseTriple t;
    for (auto& u : unb) t.unbounded.push_back(parse_formula(u, sig));
    for (auto& b : bnd) t.bounded.push_back(parse_formula(b, sig));
    t.head = parse_formula(head, sig);
    return triple_in_elaboration(clause, t);
  };

  CHECK(member({"q 3"}, {}, "p 3"));
  CHECK(member({}, {"r"}, "p 4"));       // s x matched x = 3
  CHECK(!member({}, {"r"}, "p 0"));      // s pattern cannot give zero
  CHECK(!member({"q 3"}, {}, "p 4"));    // head and obligation disagree on x
  CHECK(!member({}, {}, "p 3"));         // missing obligation
  CHECK(!member({"q 3", "q 3"}, {}, "p 3"));
}

TEST_CASE("membership respects repeated variables across head positions") {
  Signature sig;
  TermPtr clause = parse("all x : nat. m x -o p x x", sig);
  ClauseTriple good;
  good.bounded.push_back(parse_formula("m 2", sig));
  good.head = parse_formula("p 2 2", sig);
  CHECK(triple_in_elaboration(clause, good));
  ClauseTriple bad;
  bad.bounded.push_back(parse_formula("m 2", sig));
  bad.head = parse_formula("p 2 3", sig);
  CHECK(!triple_in_elaboration(clause, bad));
}

namespace {

// canonical string form; the unbounded side is sorted but NOT deduplicated,
// so set-versus-list discrepancies would show up as mismatches
std::string canon_triple(std::vector<std::string> u, std::vector<std::string> b,
                         const std::string& head) {
  std::sort(u.begin(), u.end());
  std::sort(b.begin(), b.end());
  std::string k = "<";
  for (const auto& x : u) k += x + "|";
  k += ";";
  for (const auto& x : b) k += x + "|";
  return k + ";" + head + ">";
}

std::set<std::string> elab_norms(const TermPtr& clause) {
  int next = 0;
  FreshMeta fresh = [&next](const TypePtr& ty) { return mk_meta(next++, ty); };
  std::set<std::string> out;
  for (const auto& t : elaborate(clause, fresh)) {
    std::vector<std::string> u, b;
    for (const auto& f : t.unbounded) u.push_back(formula_str(f));
    for (const auto& f : t.bounded) b.push_back(formula_str(f));
    out.insert(canon_triple(std::move(u), std::move(b), formula_str(t.head)));
  }
  return out;
}

// independent oracle: saturate the membership rules bottom-up over all
// clause positions until no new triple appears
std::set<std::string> fixpoint_norms(const TermPtr& clause) {
  struct T {
    std::vector<std::string> u, b;
    std::string head;
  };
  std::vector<TermPtr> subs;
  std::function<void(const TermPtr&)> walk = [&](const TermPtr& c) {
    subs.push_back(c);
    FView v = view(c);
    if (v.kind == FKind::With) {
      walk(v.l);
      walk(v.r);
    } else if (v.kind == FKind::Imp || v.kind == FKind::Lolli) {
      walk(v.r);
    }
  };
  walk(clause);

  std::map<std::string, std::map<std::string, T>> m;
  bool changed = true;
  auto insert = [&](const TermPtr& c, T t) {
    std::string k = canon_triple(t.u, t.b, t.head);
    if (m[formula_str(c)].emplace(std::move(k), std::move(t)).second) changed = true;
  };
  while (changed) {
    changed = false;
    for (const auto& c : subs) {
      FView v = view(c);
      switch (v.kind) {
        case FKind::RigidAtom:
          insert(c, {{}, {}, formula_str(c)});
          break;
        case FKind::With:
          for (const auto& part : {v.l, v.r})
            for (const auto& [k, t] : m[formula_str(part)]) insert(c, t);
          break;
        case FKind::Imp: {
          std::string g = formula_str(v.l);
          for (auto [k, t] : m[formula_str(v.r)]) {
            if (std::find(t.u.begin(), t.u.end(), g) == t.u.end()) t.u.push_back(g);
            insert(c, std::move(t));
          }
          break;
        }
        case FKind::Lolli: {
          std::string g = formula_str(v.l);
          for (auto [k, t] : m[formula_str(v.r)]) {
            t.b.push_back(g);
            insert(c, std::move(t));
          }
          break;
        }
        default:
          break;
      }
    }
  }
  std::set<std::string> out;
  for (const auto& [k, t] : m[formula_str(clause)]) out.insert(k);
  return out;
}

}  // namespace

TEST_CASE("elaborate agrees with a bottom-up fixpoint of the membership rules") {
  Signature sig;
  std::vector<TermPtr> atoms = {parse("a", sig), parse("b", sig)};
  std::vector<TermPtr> gs = {parse("g1", sig), parse("g2", sig), parse("g1 * g2", sig)};

  // every quantifier-free clause of depth <=3, then a sampled slice of depth 4
  std::vector<TermPtr> pool = atoms;
  for (int round = 0; round < 2; ++round) {
    std::vector<TermPtr> next = atoms;
    for (const auto& x : pool)
      for (const auto& y : pool) next.push_back(f_with(x, y));
    for (const auto& x : pool)
      for (const auto& g : gs) {
        next.push_back(f_lolli(g, x));
        next.push_back(f_imp(g, x));
      }
    pool = std::move(next);
  }
  std::vector<TermPtr> cases = pool;
  std::mt19937 rng(7);
  auto pick = [&](size_t n) { return (size_t)(rng() % n); };
  for (int i = 0; i < 300; ++i) {
    switch (pick(3)) {
      case 0: cases.push_back(f_with(pool[pick(pool.size())], pool[pick(pool.size())])); break;
      case 1: cases.push_back(f_lolli(gs[pick(gs.size())], pool[pick(pool.size())])); break;
      default: cases.push_back(f_imp(gs[pick(gs.size())], pool[pick(pool.size())])); break;
    }
  }

  for (const auto& clause : cases) {
    INFO(formula_str(clause));
    REQUIRE(elab_norms(clause) == fixpoint_norms(clause));
  }
}

TEST_CASE("duplicate unbounded obligations collapse") {
  Signature sig;
  auto ts = elab("g1 => g1 => a", sig);
  REQUIRE(ts.size() == 1);
  CHECK(triple_str(ts[0]) == "<{g1}, {}, a>");
  // the bounded side stays a multiset
  auto tb = elab("g1 -o g1 -o a", sig);
  REQUIRE(tb.size() == 1);
  CHECK(triple_str(tb[0]) == "<{}, {g1, g1}, a>");
}

TEST_CASE("membership handles metavariables inside the checked triple") {
  // a triple whose instance terms are themselves metavariables is still an
  // instance of the clause, and repeated occurrences must stay consistent
  Signature sig;
  TermPtr clause = parse("all x : nat. m x -o p x x", sig);
  ClauseTriple t;
  t.bounded.push_back(parse_formula("m ?7", sig));
  t.head = parse_formula("p ?7 ?7", sig);
  CHECK(triple_in_elaboration(clause, t));
  ClauseTriple u;
  u.bounded.push_back(parse_formula("m ?7", sig));
  u.head = parse_formula("p ?7 ?8", sig);
  CHECK(!triple_in_elaboration(clause, u));
}
