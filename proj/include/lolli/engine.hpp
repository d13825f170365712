#pragma once

// Backchaining proof search for the reduced system: right rules plus BCu/BCb
// and builtin leaves.  Depth-first with chronological backtracking; goals are
// decomposed right-rule-first, atomic goals resolve by BCb over the bounded
// context then BCu over the unbounded one, clause order as written.  Bounded
// resources are threaded input/output style (consumed flags plus a slack bit
// for top) instead of guessing context splits.  The budget bounds the number
// of BC nodes in the candidate proof under construction.

#include <string>
#include <vector>

#include "lolli/checker.hpp"
#include "lolli/unify.hpp"

namespace lolli {

struct EngineError : std::runtime_error {
  explicit EngineError(const std::string& what) : std::runtime_error(what) {}
};

struct SearchConfig {
  long budget = 100000;  // max BC nodes in one candidate proof
  bool trace = false;
  // clause ids used in traces; default G1..Gn / D1..Dm in as-written order
  std::vector<std::string> gamma_names;
  std::vector<std::string> delta_names;
};

struct TraceEvent {
  Rule rule;  // BCu or BCb
  std::string clause_id;
  TermPtr head;  // the resolved atom after substitution
};

// `BCu|BCb <clause-id> <head-after-subst>`
std::string trace_line(const TraceEvent& e);

enum class ProveStatus { Proved, Unprovable, BudgetExhausted };

struct ProveResult {
  ProveStatus status = ProveStatus::Unprovable;
  ProofPtr proof;                  // on Proved: passes check_reduced
  std::vector<TraceEvent> trace;   // on Proved with cfg.trace: preorder BC events
  long bc_nodes = 0;               // BC nodes in the returned proof
};

ProveResult prove(const std::vector<TermPtr>& gamma, const std::vector<TermPtr>& delta,
                  const TermPtr& goal, const SearchConfig& cfg = {});

}  // namespace lolli
