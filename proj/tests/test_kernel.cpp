#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <fstream>
#include <sstream>

#include "lolli/checker.hpp"
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

}  // namespace

TEST_CASE("bundled proof: nonuniform with/tensor proof") {
  Signature sig;
  ProofPtr p = load("nonuniform.proof", sig);
  CheckResult r = check_full(p);
  INFO(r.error);
  CHECK(r.ok);
  CHECK(tree_size(p) == 8);
  CHECK(count_rule(p, Rule::Absorb) == 2);

  auto u = is_uniform(p);
  CHECK_FALSE(u.uniform);
  // two absorbs and the two &L instances all sit under the tensor goal
  CHECK(nonuniformity_measure(p) == 4);
  CHECK_FALSE(is_simple(p).simple);
  CHECK_FALSE(is_coincided(p).coincided);
}

TEST_CASE("bundled proof: uniform with/tensor proof") {
  Signature sig;
  ProofPtr p = load("uniform.proof", sig);
  CheckResult r = check_full(p);
  INFO(r.error);
  CHECK(r.ok);
  CHECK(tree_size(p) == 8);
  CHECK(is_uniform(p).uniform);
  CHECK(nonuniformity_measure(p) == 0);
  CHECK(is_simple(p).simple);
  CHECK(is_coincided(p).coincided);
}

TEST_CASE("bundled proof: forward chaining") {
  Signature sig;
  ProofPtr p = load("forward.proof", sig);
  CheckResult r = check_full(p);
  INFO(r.error);
  CHECK(r.ok);
  CHECK(is_uniform(p).uniform);  // every goal is atomic

  auto s = is_simple(p);
  CHECK_FALSE(s.simple);
  REQUIRE(s.offending.size() == 1);
  CHECK(s.offending[0] == Path{});  // the root -oL acts on an unmarked clause
  CHECK(is_coincided(p).coincided);
}

TEST_CASE("bundled proof: backward chaining") {
  Signature sig;
  ProofPtr p = load("backward.proof", sig);
  CheckResult r = check_full(p);
  INFO(r.error);
  CHECK(r.ok);
  CHECK(is_uniform(p).uniform);
  CHECK(is_simple(p).simple);
  CHECK(is_coincided(p).coincided);
}

TEST_CASE("marking of the backward proof follows the id chain") {
  Signature sig;
  ProofPtr p = load("backward.proof", sig);
  Marking m = compute_marking(p);
  CHECK(m.at(Path{}) == 1);        // a2 -o a3 marked at the root
  CHECK(m.at(Path{0}) == 0);       // a1 -o a2 marked in the side branch
  CHECK(m.at(Path{1}) == 0);       // id a3
  CHECK_FALSE(m.at(Path{0, 0}));   // absorb conclusion carries no mark
}

TEST_CASE("proof text round trips") {
  for (const char* name : {"nonuniform.proof", "uniform.proof", "forward.proof",
                           "backward.proof"}) {
    Signature sig;
    ProofPtr p = load(name, sig);
    Signature sig2;
    ProofPtr q = parse_proof(proof_str(p), sig2);
    CHECK(tree_eq(p, q));
  }
}

TEST_CASE("checker rejects a deleted premise") {
  Signature sig;
  ProofPtr p = load("backward.proof", sig);
  ProofPtr bad = clone_tree(p);
  bad->premises.pop_back();
  CheckResult r = check_full(bad);
  CHECK_FALSE(r.ok);
  CHECK(r.error.find("premises") != std::string::npos);
}

TEST_CASE("checker rejects a duplicated delta at a tensor split") {
  Signature sig;
  ProofPtr p = parse_proof(
      "(tensorR [ ; a |- a * a]\n"
      "  (id [ ; a |- a] p=0)\n"
      "  (id [ ; a |- a] p=0))\n",
      sig);
  CheckResult r = check_full(p);
  CHECK_FALSE(r.ok);
  CHECK(r.error.find("tensorR") != std::string::npos);
}

TEST_CASE("system membership: BC nodes vs left rules") {
  Signature sig;
  ProofPtr bc = parse_proof("(BCu [a ; |- a] p=0 t={ ; |- a})", sig);
  CHECK_FALSE(check_full(bc).ok);
  CheckResult r = check_reduced(bc);
  INFO(r.error);
  CHECK(r.ok);

  Signature sig2;
  ProofPtr fwd = load("forward.proof", sig2);
  CheckResult r2 = check_reduced(fwd);
  CHECK_FALSE(r2.ok);
  CHECK(r2.error.find("not a rule") != std::string::npos);
}

TEST_CASE("backchaining triples are verified against the clause") {
  Signature sig;
  // claims head b from clause a: not in the elaboration
  ProofPtr p = parse_proof("(BCb [ ; a |- b] p=0 t={ ; |- b})", sig);
  CheckResult r = check_reduced(p);
  CHECK_FALSE(r.ok);
  CHECK(r.error.find("elaboration") != std::string::npos);
}

TEST_CASE("quantifier rules") {
  SUBCASE("forallR with a fresh eigenvariable") {
    Signature sig;
    ProofPtr p = parse_proof(
        "(forallR [ ; |- all x : i. p x -o p x] w=(c)\n"
        "  (lolliR [ ; |- p c -o p c] i=0\n"
        "    (id [ ; p c |- p c] p=0)))\n",
        sig);
    CheckResult r = check_full(p);
    INFO(r.error);
    CHECK(r.ok);

    Signature sig2;
    CHECK(tree_eq(p, parse_proof(proof_str(p), sig2)));
  }
  SUBCASE("forallR eigenvariable must not occur below") {
    Signature sig;
    ProofPtr p = parse_proof(
        "(forallR [ ; p c |- all x : i. p x] w=(c)\n"
        "  (id [ ; p c |- p c] p=0))\n",
        sig);
    CheckResult r = check_full(p);
    CHECK_FALSE(r.ok);
    CHECK(r.error.find("eigenvariable") != std::string::npos);
  }
  SUBCASE("existsR with a numeral witness") {
    Signature sig;
    ProofPtr p = parse_proof(
        "(existsR [ ; q 3 |- ex x : nat. q x] w=(3)\n"
        "  (id [ ; q 3 |- q 3] p=0))\n",
        sig);
    CheckResult r = check_full(p);
    INFO(r.error);
    CHECK(r.ok);
  }
  SUBCASE("forallL instantiates the clause") {
    Signature sig;
    ProofPtr p = parse_proof(
        "(forallL [ ; all x : nat. q x |- q 7] p=0 i=0 w=(7)\n"
        "  (id [ ; q 7 |- q 7] p=0))\n",
        sig);
    CheckResult r = check_full(p);
    INFO(r.error);
    CHECK(r.ok);
  }
}

TEST_CASE("remaining rule forms") {
  SUBCASE("bangR needs an empty bounded context") {
    Signature sig;
    ProofPtr p = parse_proof(
        "(bangR [a ; |- ! a]\n"
        "  (absorb [a ; |- a] p=0 i=0\n"
        "    (id [a ; a |- a] p=0)))\n",
        sig);
    CheckResult r = check_full(p);
    INFO(r.error);
    CHECK(r.ok);

    Signature sig2;
    ProofPtr bad = parse_proof("(bangR [ ; a |- ! a] (id [ ; a |- a] p=0))", sig2);
    CHECK_FALSE(check_full(bad).ok);
  }
  SUBCASE("oplusR picks one side") {
    Signature sig;
    ProofPtr p = parse_proof("(oplusR2 [ ; b |- a + b] (id [ ; b |- b] p=0))", sig);
    CheckResult r = check_full(p);
    INFO(r.error);
    CHECK(r.ok);
  }
  SUBCASE("withR duplicates the bounded context") {
    Signature sig;
    ProofPtr p = parse_proof(
        "(withR [ ; a |- a & a] (id [ ; a |- a] p=0) (id [ ; a |- a] p=0))", sig);
    CheckResult r = check_full(p);
    INFO(r.error);
    CHECK(r.ok);
  }
  SUBCASE("impL side premise runs on the unbounded context alone") {
    Signature sig;
    ProofPtr p = parse_proof(
        "(impL [b ; b => c |- c] p=0 i=-1,0\n"
        "  (absorb [b ; |- b] p=0 i=0\n"
        "    (id [b ; b |- b] p=0))\n"
        "  (id [b ; c |- c] p=0))\n",
        sig);
    CheckResult r = check_full(p);
    INFO(r.error);
    CHECK(r.ok);

    Signature sig2;
    ProofPtr bad = parse_proof(
        "(impL [b ; b => c, b |- c] p=0 i=-1,0\n"
        "  (id [b ; b |- b] p=0)\n"
        "  (id [b ; c |- c] p=0))\n",
        sig2);
    CheckResult r2 = check_full(bad);
    CHECK_FALSE(r2.ok);
    CHECK(r2.error.find("empty bounded") != std::string::npos);
  }
  SUBCASE("builtin leaves") {
    Signature sig;
    CHECK(check_full(parse_proof("(builtin [ ; |- gt 5 3])", sig)).ok);
    CHECK(check_full(parse_proof("(builtin [ ; |- add3 2 2 4])", sig)).ok);
    CHECK_FALSE(check_full(parse_proof("(builtin [ ; |- gt 3 3])", sig)).ok);
    CHECK_FALSE(check_full(parse_proof("(builtin [ ; m 0 1 |- le 1 1])", sig)).ok);
  }
}
