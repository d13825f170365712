#include "lolli/proof.hpp"

#include <algorithm>
#include <sstream>

namespace lolli {

void canon_gamma(std::vector<TermPtr>& gamma) {
  std::sort(gamma.begin(), gamma.end(),
            [](const TermPtr& a, const TermPtr& b) { return term_cmp(a, b) < 0; });
  gamma.erase(std::unique(gamma.begin(), gamma.end(),
                          [](const TermPtr& a, const TermPtr& b) { return term_eq(a, b); }),
              gamma.end());
}

Sequent mk_sequent(std::vector<TermPtr> gamma, std::vector<TermPtr> delta, TermPtr goal) {
  canon_gamma(gamma);
  return Sequent{std::move(gamma), std::move(delta), std::move(goal)};
}

bool multiset_eq(std::vector<TermPtr> a, std::vector<TermPtr> b) {
  if (a.size() != b.size()) return false;
  auto lt = [](const TermPtr& x, const TermPtr& y) { return term_cmp(x, y) < 0; };
  std::sort(a.begin(), a.end(), lt);
  std::sort(b.begin(), b.end(), lt);
  for (size_t i = 0; i < a.size(); i++)
    if (!term_eq(a[i], b[i])) return false;
  return true;
}

std::optional<std::vector<TermPtr>> multiset_minus(const std::vector<TermPtr>& a,
                                                   const std::vector<TermPtr>& b) {
  std::vector<TermPtr> rest = a;
  for (const auto& x : b) {
    auto it = std::find_if(rest.begin(), rest.end(),
                           [&](const TermPtr& y) { return term_eq(x, y); });
    if (it == rest.end()) return std::nullopt;
    rest.erase(it);
  }
  return rest;
}

bool sequent_eq(const Sequent& a, const Sequent& b) {
  if (!term_eq(a.goal, b.goal)) return false;
  if (a.gamma.size() != b.gamma.size()) return false;
  for (size_t i = 0; i < a.gamma.size(); i++)
    if (!term_eq(a.gamma[i], b.gamma[i])) return false;
  return multiset_eq(a.delta, b.delta);
}

std::string sequent_str(const Sequent& s) {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < s.gamma.size(); i++)
    os << (i ? ", " : "") << formula_str(s.gamma[i]);
  os << " ; ";
  for (size_t i = 0; i < s.delta.size(); i++)
    os << (i ? ", " : "") << formula_str(s.delta[i]);
  os << " |- " << formula_str(s.goal) << "]";
  return os.str();
}

const char* rule_name(Rule r) {
  switch (r) {
    case Rule::Id: return "id";
    case Rule::Absorb: return "absorb";
    case Rule::TopR: return "topR";
    case Rule::WithL1: return "withL1";
    case Rule::WithL2: return "withL2";
    case Rule::WithR: return "withR";
    case Rule::LolliL: return "lolliL";
    case Rule::LolliR: return "lolliR";
    case Rule::ImpL: return "impL";
    case Rule::ImpR: return "impR";
    case Rule::ForallL: return "forallL";
    case Rule::ForallR: return "forallR";
    case Rule::ExistsR: return "existsR";
    case Rule::BangR: return "bangR";
    case Rule::OplusR1: return "oplusR1";
    case Rule::OplusR2: return "oplusR2";
    case Rule::TensorR: return "tensorR";
    case Rule::BCu: return "BCu";
    case Rule::BCb: return "BCb";
    case Rule::BuiltinR: return "builtin";
  }
  return "?";
}

std::optional<Rule> rule_by_name(const std::string& name) {
  static const Rule all[] = {
      Rule::Id, Rule::Absorb, Rule::TopR, Rule::WithL1, Rule::WithL2, Rule::WithR,
      Rule::LolliL, Rule::LolliR, Rule::ImpL, Rule::ImpR, Rule::ForallL, Rule::ForallR,
      Rule::ExistsR, Rule::BangR, Rule::OplusR1, Rule::OplusR2, Rule::TensorR,
      Rule::BCu, Rule::BCb, Rule::BuiltinR};
  for (Rule r : all)
    if (name == rule_name(r)) return r;
  return std::nullopt;
}

bool is_left_rule(Rule r) {
  switch (r) {
    case Rule::WithL1:
    case Rule::WithL2:
    case Rule::LolliL:
    case Rule::ImpL:
    case Rule::ForallL:
      return true;
    default:
      return false;
  }
}

bool is_right_rule(Rule r) {
  switch (r) {
    case Rule::TopR:
    case Rule::WithR:
    case Rule::LolliR:
    case Rule::ImpR:
    case Rule::ForallR:
    case Rule::ExistsR:
    case Rule::BangR:
    case Rule::OplusR1:
    case Rule::OplusR2:
    case Rule::TensorR:
      return true;
    default:
      return false;
  }
}

ProofPtr mk_node(Rule rule, Sequent conclusion, std::vector<ProofPtr> premises, int principal,
                 std::vector<int> intro, TermPtr witness, std::optional<ClauseTriple> triple) {
  auto n = std::make_shared<ProofNode>();
  n->rule = rule;
  n->conclusion = std::move(conclusion);
  n->premises = std::move(premises);
  n->principal = principal;
  if (intro.empty()) intro.assign(n->premises.size(), -1);
  n->intro = std::move(intro);
  n->witness = std::move(witness);
  n->triple = std::move(triple);
  return n;
}

ProofPtr clone_tree(const ProofPtr& p) {
  auto n = std::make_shared<ProofNode>(*p);
  for (auto& q : n->premises) q = clone_tree(q);
  return n;
}

bool tree_eq(const ProofPtr& a, const ProofPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->rule != b->rule || a->principal != b->principal) return false;
  if (!sequent_eq(a->conclusion, b->conclusion)) return false;
  if (a->intro != b->intro) return false;
  if (!a->witness != !b->witness) return false;
  if (a->witness && !term_eq(a->witness, b->witness)) return false;
  if (a->triple.has_value() != b->triple.has_value()) return false;
  if (a->triple) {
    auto same = [](const std::vector<TermPtr>& x, const std::vector<TermPtr>& y) {
      if (x.size() != y.size()) return false;
      for (size_t i = 0; i < x.size(); i++)
        if (!term_eq(x[i], y[i])) return false;
      return true;
    };
    if (!same(a->triple->unbounded, b->triple->unbounded) ||
        !same(a->triple->bounded, b->triple->bounded) ||
        !term_eq(a->triple->head, b->triple->head))
      return false;
  }
  if (a->premises.size() != b->premises.size()) return false;
  for (size_t i = 0; i < a->premises.size(); i++)
    if (!tree_eq(a->premises[i], b->premises[i])) return false;
  return true;
}

std::string path_str(const Path& p) {
  if (p.empty()) return "root";
  std::ostringstream os;
  for (size_t i = 0; i < p.size(); i++) os << (i ? "." : "") << p[i];
  return os.str();
}

ProofPtr node_at(const ProofPtr& root, const Path& path) {
  ProofPtr n = root;
  for (int i : path) {
    if (!n || i < 0 || i >= (int)n->premises.size()) return nullptr;
    n = n->premises[i];
  }
  return n;
}

int tree_size(const ProofPtr& p) {
  int n = 1;
  for (const auto& q : p->premises) n += tree_size(q);
  return n;
}

int count_rule(const ProofPtr& p, Rule r) {
  int n = p->rule == r ? 1 : 0;
  for (const auto& q : p->premises) n += count_rule(q, r);
  return n;
}

namespace {

void visit_rec(const ProofPtr& p, Path& path,
               const std::function<void(const ProofPtr&, const Path&)>& fn) {
  fn(p, path);
  for (int i = 0; i < (int)p->premises.size(); i++) {
    path.push_back(i);
    visit_rec(p->premises[i], path, fn);
    path.pop_back();
  }
}

}  // namespace

void visit(const ProofPtr& p, const std::function<void(const ProofPtr&, const Path&)>& fn) {
  Path path;
  visit_rec(p, path, fn);
}

}  // namespace lolli
