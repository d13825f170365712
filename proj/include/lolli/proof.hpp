#pragma once

// Sequents and explicit proof trees.  Every node carries its full conclusion
// sequent; the checker verifies the bookkeeping instead of reconstructing it.
//
// Conventions a well-formed tree follows (enforced by the checker):
//  * gamma is a set, kept sorted and deduplicated; delta is a multiset in
//    writer-chosen order.
//  * principal is an index into delta for left rules / id / BCb, and an index
//    into gamma for absorb / BCu.
//  * intro[k] gives, for premise k, the delta position of the formula the rule
//    schema introduced into that premise (the &L replacement, the -oL/=>L
//    right-premise clause, the copied formula of absorb, the antecedent moved
//    by -oR), or -1 when the schema adds nothing there.
//  * witness holds the forallL/existsR instantiation term or the forallR
//    eigenvariable constant.
//  * triple is present on BCu/BCb nodes; obligation premises come unbounded
//    first, then bounded, in triple order.

#include "lolli/clause.hpp"

namespace lolli {

struct Sequent {
  std::vector<TermPtr> gamma;
  std::vector<TermPtr> delta;
  TermPtr goal;
};

void canon_gamma(std::vector<TermPtr>& gamma);  // sort and dedup
Sequent mk_sequent(std::vector<TermPtr> gamma, std::vector<TermPtr> delta, TermPtr goal);
bool sequent_eq(const Sequent& a, const Sequent& b);  // delta compared as multiset
std::string sequent_str(const Sequent& s);

bool multiset_eq(std::vector<TermPtr> a, std::vector<TermPtr> b);
// a minus b when b is contained in a (multiset); nullopt otherwise
std::optional<std::vector<TermPtr>> multiset_minus(const std::vector<TermPtr>& a,
                                                   const std::vector<TermPtr>& b);

enum class Rule {
  Id, Absorb, TopR,
  WithL1, WithL2, WithR,
  LolliL, LolliR, ImpL, ImpR,
  ForallL, ForallR, ExistsR,
  BangR, OplusR1, OplusR2, TensorR,
  BCu, BCb, BuiltinR,
};

const char* rule_name(Rule r);
std::optional<Rule> rule_by_name(const std::string& name);
bool is_left_rule(Rule r);   // WithL1/2, LolliL, ImpL, ForallL
bool is_right_rule(Rule r);  // TopR, WithR, LolliR, ImpR, ForallR, ExistsR, BangR, OplusR1/2, TensorR

struct ProofNode;
using ProofPtr = std::shared_ptr<ProofNode>;

struct ProofNode {
  Rule rule;
  Sequent conclusion;
  std::vector<ProofPtr> premises;
  int principal = -1;
  std::vector<int> intro;
  TermPtr witness;
  std::optional<ClauseTriple> triple;
};

ProofPtr mk_node(Rule rule, Sequent conclusion, std::vector<ProofPtr> premises = {},
                 int principal = -1, std::vector<int> intro = {}, TermPtr witness = nullptr,
                 std::optional<ClauseTriple> triple = std::nullopt);
ProofPtr clone_tree(const ProofPtr& p);
bool tree_eq(const ProofPtr& a, const ProofPtr& b);

// paths address nodes by premise indices from the root
using Path = std::vector<int>;
std::string path_str(const Path& p);
ProofPtr node_at(const ProofPtr& root, const Path& path);
int tree_size(const ProofPtr& p);

int count_rule(const ProofPtr& p, Rule r);
void visit(const ProofPtr& p, const std::function<void(const ProofPtr&, const Path&)>& fn);

}  // namespace lolli
