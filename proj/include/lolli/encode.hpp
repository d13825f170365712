#pragma once

// The translation layer between the object language and the logic: programs
// become terms of type prog, memory becomes a multiset of m-atoms, and the
// evaluation predicate e is axiomatized by ten program clause formulas in
// continuation-passing style.  run_via_logic executes a program purely by
// proof search and reads value and final memory back out of the proof;
// mimicry_report aligns the oracle derivation with the BCu steps.

#include "lolli/engine.hpp"
#include "lolli/imp.hpp"

namespace lolli {

// e : prog -> nat -> o -> o, m : nat -> nat -> o, plus the eight program
// constructors v, add, sub, grt, get, set, sq, wh.  The comparison
// constructor is spelled grt because gt names the arithmetic builtin.
Signature encoding_signature();

TermPtr translate_program(const ProgPtr& p);             // term of type prog
std::vector<TermPtr> translate_memory(const Memory& m);  // one m(l,v) per cell, ascending

// the program clause formulas, in fixed order, with explicit quantifiers:
// head variables universal, body-only variables existential
const std::vector<TermPtr>& gamma_clauses();
const std::vector<std::string>& gamma_clause_names();  // v add sub gt1 gt0 get set sq wh0 wh1

// index into gamma_clauses() of the clause a BCu node resolved against,
// -1 when its principal is none of them
int clause_index_of(const ProofPtr& bcu);

struct Query {
  std::vector<TermPtr> gamma;
  std::vector<TermPtr> delta;
  TermPtr goal;        // e(t(p), ?value, continuation)
  int value_meta = 0;  // metavariable ids appearing in the goal
  std::vector<std::pair<std::uint64_t, int>> cell_metas;  // collect mode: location, meta id
};

// discard mode throws the final memory away behind top; collect mode chains
// m(l, ?Vl) across the locations in ascending order in front of top
Query build_query(const ProgPtr& p, const Memory& m, bool collect);

struct LogicRun {
  enum class Status { Ok, Unprovable, Budget } status = Status::Unprovable;
  std::uint64_t value = 0;
  Memory memory;
  ProofPtr proof;  // on Ok: passes check_reduced
  std::vector<TraceEvent> trace;
  long bc_nodes = 0;
};

// proves the collect-mode query and extracts value and memory from the
// instantiated root goal
LogicRun run_via_logic(const ProgPtr& p, const Memory& m, const SearchConfig& cfg = {});

struct MimicryRow {
  std::string tag;     // derivation rule
  std::string clause;  // the program clause modeling it
  int oracle = 0;
  int bc = 0;
};

struct MimicryReport {
  std::vector<MimicryRow> rows;  // clause order, all ten tags
  bool ok = false;
  std::string text() const;  // `tag oracle-count bc-count` lines plus a verdict
};

// counts rule instances in the derivation by tag against BCu instances in the
// proof by principal clause; BCb steps, builtin leaves and the collect-mode
// continuation take no part in the correspondence
MimicryReport mimicry_report(const DerivPtr& d, const ProofPtr& t);

}  // namespace lolli
