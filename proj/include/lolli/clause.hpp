#pragma once

// Elaboration of a program clause into backchaining triples
// <unbounded obligations, bounded obligations, head>, the smallest set
// closed under:
//   <{},{},A>            for atomic A
//   P1 & P2   splits into the triples of P1 and of P2
//   all x. P  instantiates x (here: with a fresh metavariable)
//   G => P    adds G to the unbounded obligations
//   G -o P    adds G to the bounded obligations
// Obligations are listed outermost first.

#include <functional>

#include "lolli/formula.hpp"

namespace lolli {

struct ClauseTriple {
  std::vector<TermPtr> unbounded;
  std::vector<TermPtr> bounded;
  TermPtr head;
};

using FreshMeta = std::function<TermPtr(const TypePtr&)>;

struct ElaborateError : std::runtime_error {
  explicit ElaborateError(const std::string& what) : std::runtime_error(what) {}
};

// head_filter, when given, drops triples whose head cannot match it
// (different head constant or argument count).
std::vector<ClauseTriple> elaborate(const TermPtr& clause, const FreshMeta& fresh,
                                    const TermPtr& head_filter = nullptr);

// One-sided matching: instantiates metavariables of pat only.  Returns false
// and leaves binding unspecified when no match exists.
bool match_term(const TermPtr& pat, const TermPtr& t, std::map<int, TermPtr>& binding);

// True iff the triple is an instance of some element of ||clause||.
bool triple_in_elaboration(const TermPtr& clause, const ClauseTriple& triple);

std::string triple_str(const ClauseTriple& t);

}  // namespace lolli
