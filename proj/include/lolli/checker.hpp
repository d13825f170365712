#pragma once

// Proof checking and structural classification.
//
// check_full accepts exactly the sequent-calculus rules (plus builtin
// leaves); check_reduced accepts right rules, id and the backchaining
// nodes.  Both verify each node locally: context arithmetic, principal
// and intro positions, witnesses, eigenvariable freshness, builtin truth
// and backchaining triples.

#include "lolli/proof.hpp"

namespace lolli {

struct CheckResult {
  bool ok = true;
  std::string error;
  Path where;
};

CheckResult check_full(const ProofPtr& p);
CheckResult check_reduced(const ProofPtr& p);

bool is_atomic_formula(const TermPtr& f);  // rigid or flexible atom
// complex = carries a top-level logical symbol (top counts, builtins do not)
bool is_complex_goal(const TermPtr& f);

struct UniformReport {
  bool uniform = true;
  std::vector<Path> offending;
};

// a proof is uniform when every complex-goal sequent is concluded by the
// right rule of its top-level connective
UniformReport is_uniform(const ProofPtr& p);
int nonuniformity_measure(const ProofPtr& p);

// Marking: at most one delta position per sequent is marked.  The id
// principal is marked, and left rules propagate the mark from the schema
// formula in the (right-hand) premise to their principal.
struct Marking {
  // pairs of (path, marked delta index of that node's conclusion)
  std::vector<std::pair<Path, int>> marked;
  std::optional<int> at(const Path& p) const;
};

Marking compute_marking(const ProofPtr& p);

struct SimpleReport {
  bool simple = true;
  std::vector<Path> offending;  // left rules acting on an unmarked formula
};

SimpleReport is_simple(const ProofPtr& p);

struct CoincidedReport {
  bool coincided = true;
  std::vector<Path> offending;  // absorbs detached from their consumer
};

// an absorb coincides when the rule directly above is a left or id
// instance whose principal formula is the copy the absorb introduced
CoincidedReport is_coincided(const ProofPtr& p);

bool eval_builtin(Builtin b, const std::vector<std::uint64_t>& args);

}  // namespace lolli
