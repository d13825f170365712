#pragma once

// Proof normalization.  Any full-calculus proof rewrites in stages to the
// backchaining fragment:
//   to_uniform    every complex-goal node becomes the goal's right intro;
//                 a left rule or absorb sitting below a right rule is bubbled
//                 upward (duplicated at &R, deleted at topR, following its
//                 residue at *R) until its goal is atomic.
//   to_simple     every left rule's principal becomes marked; an unmarked
//                 left rule moves up its atomic spine and, when its residue
//                 crosses into the side premise of a -oL above, is
//                 transplanted into that side premise.
//   to_coincided  every absorb is reseated directly below the rule instance
//                 that consumes its copy (copies swallowed by topR are
//                 dropped, copies crossing &R are re-absorbed in each branch).
//   to_reduced    each atomic spine — an optional absorb, a run of left
//                 rules, an id — collapses into one BCu/BCb node whose
//                 obligation premises are the run's side premises.
//
// Every transform preserves the end-sequent, and its output passes
// check_full (check_reduced for to_reduced).  Preconditions are enforced:
// the input must pass check_full and reach the previous stage.

#include "lolli/checker.hpp"

namespace lolli {

struct NormalizeError : std::runtime_error {
  explicit NormalizeError(const std::string& what) : std::runtime_error(what) {}
};

struct NormalizeStep {
  std::string scheme;  // e.g. "perm-withL1-tensorR", "transplant-lolliL"
  Path at;             // node position when the step was applied
};

struct NormalizeResult {
  ProofPtr proof;
  std::vector<NormalizeStep> steps;
  // Snapshot after each relocated rule instance.  For to_uniform the
  // nonuniformity measure drops by exactly one per snapshot.
  std::vector<ProofPtr> checkpoints;
};

NormalizeResult to_uniform(const ProofPtr& p);
NormalizeResult to_simple(const ProofPtr& p);
NormalizeResult to_coincided(const ProofPtr& p);
NormalizeResult to_reduced(const ProofPtr& p);

}  // namespace lolli
