#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <fstream>
#include <sstream>

#include "brute.hpp"
#include "lolli/normalize.hpp"
#include "lolli/proof_io.hpp"

using namespace lolli;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(LOLLI_DATA_DIR) + "/proofs/" + name);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

ProofPtr load(const std::string& name, Signature& sig) {
  return parse_proof(slurp(name), sig);
}

// to_uniform plus the invariants every call must satisfy
NormalizeResult run_uniform(const ProofPtr& p) {
  int m = nonuniformity_measure(p);
  NormalizeResult r = to_uniform(p);
  CheckResult c = check_full(r.proof);
  INFO(c.error);
  CHECK(c.ok);
  CHECK(is_uniform(r.proof).uniform);
  CHECK(sequent_eq(p->conclusion, r.proof->conclusion));
  CHECK((int)r.checkpoints.size() == m);
  for (const auto& snap : r.checkpoints) {
    int next = nonuniformity_measure(snap);
    CHECK(next == m - 1);
    m = next;
  }
  return r;
}

NormalizeResult run_simple(const ProofPtr& p) {
  NormalizeResult r = to_simple(p);
  CheckResult c = check_full(r.proof);
  INFO(c.error);
  CHECK(c.ok);
  CHECK(is_uniform(r.proof).uniform);
  CHECK(is_simple(r.proof).simple);
  CHECK(sequent_eq(p->conclusion, r.proof->conclusion));
  return r;
}

NormalizeResult run_coincided(const ProofPtr& p) {
  NormalizeResult r = to_coincided(p);
  CheckResult c = check_full(r.proof);
  INFO(c.error);
  CHECK(c.ok);
  CHECK(is_simple(r.proof).simple);
  CHECK(is_coincided(r.proof).coincided);
  CHECK(sequent_eq(p->conclusion, r.proof->conclusion));
  return r;
}

NormalizeResult run_reduced(const ProofPtr& p) {
  NormalizeResult r = to_reduced(p);
  CheckResult c = check_reduced(r.proof);
  INFO(c.error);
  CHECK(c.ok);
  CHECK(sequent_eq(p->conclusion, r.proof->conclusion));
  return r;
}

}  // namespace

TEST_CASE("to_uniform rewrites the bundled nonuniform proof to the bundled uniform one") {
  Signature sig;
  ProofPtr p = load("nonuniform.proof", sig);
  ProofPtr want = load("uniform.proof", sig);
  NormalizeResult r = run_uniform(p);
  CHECK(tree_eq(r.proof, want));
  REQUIRE(r.steps.size() == 4);
  CHECK(r.steps[0].scheme == "perm-withL2-tensorR");
  CHECK(r.steps[1].scheme == "perm-withL1-tensorR");
  CHECK(r.steps[2].scheme == "perm-absorb-tensorR");
  CHECK(r.steps[3].scheme == "perm-absorb-tensorR");
}

TEST_CASE("to_uniform is the identity on a uniform proof") {
  Signature sig;
  ProofPtr p = load("uniform.proof", sig);
  NormalizeResult r = run_uniform(p);
  CHECK(tree_eq(r.proof, p));
  CHECK(r.steps.empty());
}

TEST_CASE("withL below lolliR swaps and chases its residue through tensorR") {
  Signature sig;
  ProofPtr p = parse_proof(
      "(withL1 [ ; a1 & a2 |- a2 -o a1 * a2] p=0 i=0\n"
      "  (lolliR [ ; a1 |- a2 -o a1 * a2] i=1\n"
      "    (tensorR [ ; a1, a2 |- a1 * a2]\n"
      "      (id [ ; a1 |- a1] p=0)\n"
      "      (id [ ; a2 |- a2] p=0))))",
      sig);
  ProofPtr want = parse_proof(
      "(lolliR [ ; a1 & a2 |- a2 -o a1 * a2] i=1\n"
      "  (tensorR [ ; a1 & a2, a2 |- a1 * a2]\n"
      "    (withL1 [ ; a1 & a2 |- a1] p=0 i=0\n"
      "      (id [ ; a1 |- a1] p=0))\n"
      "    (id [ ; a2 |- a2] p=0)))",
      sig);
  NormalizeResult r = run_uniform(p);
  CHECK(tree_eq(r.proof, want));
  REQUIRE(r.steps.size() == 2);
  CHECK(r.steps[0].scheme == "perm-withL1-lolliR");
  CHECK(r.steps[1].scheme == "perm-withL1-tensorR");
}

TEST_CASE("left rule below topR dissolves") {
  Signature sig;
  ProofPtr p = parse_proof(
      "(withL1 [ ; a1 & a2 |- top] p=0 i=0\n"
      "  (topR [ ; a1 |- top]))",
      sig);
  NormalizeResult r = run_uniform(p);
  CHECK(tree_eq(r.proof, parse_proof("(topR [ ; a1 & a2 |- top])", sig)));
  REQUIRE(r.steps.size() == 1);
  CHECK(r.steps[0].scheme == "perm-withL1-topR");
}

TEST_CASE("lolliL below withR is duplicated into both branches") {
  Signature sig;
  ProofPtr p = parse_proof(
      "(lolliL [ ; a1, a1 -o a2 |- a2 & a2] p=1 i=-1,0\n"
      "  (id [ ; a1 |- a1] p=0)\n"
      "  (withR [ ; a2 |- a2 & a2]\n"
      "    (id [ ; a2 |- a2] p=0)\n"
      "    (id [ ; a2 |- a2] p=0)))",
      sig);
  std::string branch =
      "  (lolliL [ ; a1, a1 -o a2 |- a2] p=1 i=-1,0\n"
      "    (id [ ; a1 |- a1] p=0)\n"
      "    (id [ ; a2 |- a2] p=0))\n";
  ProofPtr want = parse_proof(
      "(withR [ ; a1, a1 -o a2 |- a2 & a2]\n" + branch + branch + ")", sig);
  NormalizeResult r = run_uniform(p);
  CHECK(tree_eq(r.proof, want));
  // the duplicated copies land simple and coincided already
  CHECK(is_simple(r.proof).simple);
  CHECK(is_coincided(r.proof).coincided);
  ProofPtr red = run_reduced(r.proof).proof;
  CHECK(count_rule(red, Rule::BCb) == 4);
}

TEST_CASE("lolliL below impR widens its side premise's unbounded context") {
  Signature sig;
  ProofPtr p = parse_proof(
      "(lolliL [ ; a1, a1 -o a2 |- a3 => a2] p=1 i=-1,0\n"
      "  (id [ ; a1 |- a1] p=0)\n"
      "  (impR [ ; a2 |- a3 => a2]\n"
      "    (id [a3 ; a2 |- a2] p=0)))",
      sig);
  ProofPtr want = parse_proof(
      "(impR [ ; a1, a1 -o a2 |- a3 => a2]\n"
      "  (lolliL [a3 ; a1, a1 -o a2 |- a2] p=1 i=-1,0\n"
      "    (id [a3 ; a1 |- a1] p=0)\n"
      "    (id [a3 ; a2 |- a2] p=0)))",
      sig);
  NormalizeResult r = run_uniform(p);
  CHECK(tree_eq(r.proof, want));
}

TEST_CASE("left rule below forallR refreshes the eigenvariable") {
  Signature sig;
  ProofPtr p = parse_proof(
      "(withL1 [ ; a1 & a2 |- all x : i. a1] p=0 i=0\n"
      "  (forallR [ ; a1 |- all x : i. a1] w=(c)\n"
      "    (id [ ; a1 |- a1] p=0)))",
      sig);
  NormalizeResult r = run_uniform(p);
  ProofPtr want = parse_proof(
      "(forallR [ ; a1 & a2 |- all x : i. a1] w=(c1)\n"
      "  (withL1 [ ; a1 & a2 |- a1] p=0 i=0\n"
      "    (id [ ; a1 |- a1] p=0)))",
      sig);
  CHECK(tree_eq(r.proof, want));
}

TEST_CASE("left rule below oplusR keeps the chosen disjunct") {
  Signature sig;
  ProofPtr p = parse_proof(
      "(withL2 [ ; a1 & a2 |- a3 + a2] p=0 i=0\n"
      "  (oplusR2 [ ; a2 |- a3 + a2]\n"
      "    (id [ ; a2 |- a2] p=0)))",
      sig);
  ProofPtr want = parse_proof(
      "(oplusR2 [ ; a1 & a2 |- a3 + a2]\n"
      "  (withL2 [ ; a1 & a2 |- a2] p=0 i=0\n"
      "    (id [ ; a2 |- a2] p=0)))",
      sig);
  CHECK(tree_eq(run_uniform(p).proof, want));
}

TEST_CASE("to_simple transplants the forward-chaining proof into the backward one") {
  Signature sig;
  ProofPtr p = load("forward.proof", sig);
  ProofPtr want = load("backward.proof", sig);
  NormalizeResult r = run_simple(p);
  CHECK(tree_eq(r.proof, want));
  REQUIRE(r.steps.size() == 1);
  CHECK(r.steps[0].scheme == "transplant-lolliL");
  CHECK(r.steps[0].at == Path{});
}

TEST_CASE("to_simple is the identity on a simple proof") {
  Signature sig;
  ProofPtr p = load("backward.proof", sig);
  NormalizeResult r = run_simple(p);
  CHECK(tree_eq(r.proof, p));
  CHECK(r.steps.empty());
}

TEST_CASE("an unmarked withL rotates up its spine, then transplants") {
  Signature sig;
  ProofPtr p = parse_proof(
      "(withL1 [ ; a1 & a2, (a1 -o a3) & a4 |- a3] p=0 i=0\n"
      "  (withL1 [ ; a1, (a1 -o a3) & a4 |- a3] p=1 i=1\n"
      "    (lolliL [ ; a1, a1 -o a3 |- a3] p=1 i=-1,0\n"
      "      (id [ ; a1 |- a1] p=0)\n"
      "      (id [ ; a3 |- a3] p=0))))",
      sig);
  ProofPtr want = parse_proof(
      "(withL1 [ ; a1 & a2, (a1 -o a3) & a4 |- a3] p=1 i=1\n"
      "  (lolliL [ ; a1 & a2, a1 -o a3 |- a3] p=1 i=-1,0\n"
      "    (withL1 [ ; a1 & a2 |- a1] p=0 i=0\n"
      "      (id [ ; a1 |- a1] p=0))\n"
      "    (id [ ; a3 |- a3] p=0)))",
      sig);
  NormalizeResult r = run_simple(p);
  CHECK(tree_eq(r.proof, want));
  REQUIRE(r.steps.size() == 2);
  CHECK(r.steps[0].scheme == "rot-withL1-withL1");
  CHECK(r.steps[1].scheme == "transplant-withL1");
}

TEST_CASE("to_coincided reseats two stacked detached absorbs") {
  Signature sig;
  ProofPtr p = parse_proof(
      "(impR [a1 ; |- a2 => a1 * a2]\n"
      "  (absorb [a1, a2 ; |- a1 * a2] p=0 i=0\n"
      "    (absorb [a1, a2 ; a1 |- a1 * a2] p=1 i=1\n"
      "      (tensorR [a1, a2 ; a1, a2 |- a1 * a2]\n"
      "        (id [a1, a2 ; a1 |- a1] p=0)\n"
      "        (id [a1, a2 ; a2 |- a2] p=0)))))",
      sig);
  ProofPtr want = parse_proof(
      "(impR [a1 ; |- a2 => a1 * a2]\n"
      "  (tensorR [a1, a2 ; |- a1 * a2]\n"
      "    (absorb [a1, a2 ; |- a1] p=0 i=0\n"
      "      (id [a1, a2 ; a1 |- a1] p=0))\n"
      "    (absorb [a1, a2 ; |- a2] p=1 i=0\n"
      "      (id [a1, a2 ; a2 |- a2] p=0))))",
      sig);
  REQUIRE(check_full(p).ok);
  CHECK_FALSE(is_coincided(p).coincided);
  NormalizeResult r = run_coincided(p);
  CHECK(tree_eq(r.proof, want));
  REQUIRE(r.steps.size() == 2);
  CHECK(r.steps[0].scheme == "absorb-coincide");
  CHECK(r.steps[1].scheme == "absorb-coincide");
}

TEST_CASE("an absorbed copy swallowed by topR is dropped") {
  Signature sig;
  ProofPtr p = parse_proof(
      "(absorb [a1 ; |- top] p=0 i=0\n"
      "  (topR [a1 ; a1 |- top]))",
      sig);
  NormalizeResult r = run_coincided(p);
  CHECK(tree_eq(r.proof, parse_proof("(topR [a1 ; |- top])", sig)));
  REQUIRE(r.steps.size() == 1);
  CHECK(r.steps[0].scheme == "absorb-drop");
}

TEST_CASE("to_coincided is the identity on the backward proof") {
  Signature sig;
  ProofPtr p = load("backward.proof", sig);
  NormalizeResult r = run_coincided(p);
  CHECK(tree_eq(r.proof, p));
  CHECK(r.steps.empty());
}

TEST_CASE("to_reduced collapses the backward proof into three backchaining nodes") {
  Signature sig;
  ProofPtr p = load("backward.proof", sig);
  NormalizeResult r = run_reduced(p);
  CHECK(tree_size(r.proof) == 3);
  CHECK(count_rule(r.proof, Rule::BCb) == 2);
  CHECK(count_rule(r.proof, Rule::BCu) == 1);

  const ProofPtr& root = r.proof;
  CHECK(root->rule == Rule::BCb);
  CHECK(root->principal == 1);
  REQUIRE(root->triple.has_value());
  CHECK(root->triple->unbounded.empty());
  REQUIRE(root->triple->bounded.size() == 1);
  CHECK(formula_str(root->triple->bounded[0]) == "a2");
  CHECK(formula_str(root->triple->head) == "a3");

  REQUIRE(root->premises.size() == 1);
  const ProofPtr& mid = root->premises[0];
  CHECK(mid->rule == Rule::BCb);
  REQUIRE(mid->premises.size() == 1);
  const ProofPtr& leaf = mid->premises[0];
  CHECK(leaf->rule == Rule::BCu);
  CHECK(leaf->premises.empty());
  REQUIRE(leaf->triple.has_value());
  CHECK(leaf->triple->unbounded.empty());
  CHECK(leaf->triple->bounded.empty());
  CHECK(formula_str(leaf->triple->head) == "a1");

  // the collapsed proof survives a print/parse round trip
  Signature sig2;
  ProofPtr back = parse_proof(proof_str(r.proof), sig2);
  CHECK(tree_eq(back, r.proof));
}

TEST_CASE("an id-only proof becomes a single trivial BCb") {
  Signature sig;
  ProofPtr p = parse_proof("(id [ ; a1 |- a1] p=0)", sig);
  NormalizeResult r = run_reduced(p);
  CHECK(tree_size(r.proof) == 1);
  CHECK(r.proof->rule == Rule::BCb);
  CHECK(r.proof->principal == 0);
  REQUIRE(r.proof->triple.has_value());
  CHECK(r.proof->triple->unbounded.empty());
  CHECK(r.proof->triple->bounded.empty());
  CHECK(formula_str(r.proof->triple->head) == "a1");
}

TEST_CASE("the full chain runs on the bundled nonuniform proof") {
  Signature sig;
  ProofPtr p = load("nonuniform.proof", sig);
  ProofPtr u = run_uniform(p).proof;
  ProofPtr s = run_simple(u).proof;
  ProofPtr c = run_coincided(s).proof;
  ProofPtr red = run_reduced(c).proof;
  CHECK(sequent_eq(red->conclusion, p->conclusion));
  CHECK(tree_size(red) == 4);  // impR, tensorR, two BCu leaves
  CHECK(count_rule(red, Rule::BCu) == 2);
  CHECK(count_rule(red, Rule::BCb) == 0);
}

TEST_CASE("the full chain succeeds on brute-force search output") {
  Signature sig;
  std::vector<Sequent> seqs = brute::corpus(sig, 2, 150);
  int proved = 0;
  for (bool left_first : {true, false}) {
    brute::Searcher search;
    search.left_first = left_first;
    search.max_depth = 7;  // refutation depth dominates runtime; proofs here are shallow
    for (const Sequent& s : seqs) {
      auto p = search.prove(s);
      if (!p) continue;
      ++proved;
      CheckResult c = check_full(*p);
      INFO(sequent_str(s));
      INFO(c.error);
      REQUIRE(c.ok);
      ProofPtr u = to_uniform(*p).proof;
      ProofPtr sm = to_simple(u).proof;
      ProofPtr co = to_coincided(sm).proof;
      ProofPtr red = to_reduced(co).proof;
      CheckResult cr = check_reduced(red);
      INFO(cr.error);
      REQUIRE(cr.ok);
      REQUIRE(sequent_eq(red->conclusion, s));
    }
  }
  CHECK(proved > 50);  // the sample must exercise the chain broadly
}

TEST_CASE("normalization preconditions are enforced") {
  Signature sig;
  ProofPtr nonuniform = load("nonuniform.proof", sig);
  ProofPtr forward = load("forward.proof", sig);
  CHECK_THROWS_AS(to_simple(nonuniform), NormalizeError);
  CHECK_THROWS_AS(to_coincided(forward), NormalizeError);   // uniform but not simple
  CHECK_THROWS_AS(to_reduced(nonuniform), NormalizeError);
  CHECK_THROWS_AS(to_reduced(forward), NormalizeError);

  // already-reduced input fails the full-calculus precondition
  Signature sig2;
  ProofPtr reduced = parse_proof("(BCb [ ; a1 |- a1] p=0 t={ ; |- a1})", sig2);
  REQUIRE(check_reduced(reduced).ok);
  CHECK_THROWS_AS(to_reduced(reduced), NormalizeError);
  CHECK_THROWS_AS(to_uniform(reduced), NormalizeError);
}
