#include "lolli/normalize.hpp"

#include <algorithm>
#include <set>

namespace lolli {

namespace {

int find_formula(const std::vector<TermPtr>& v, const TermPtr& f) {
  for (size_t i = 0; i < v.size(); i++)
    if (term_eq(v[i], f)) return (int)i;
  return -1;
}

Path child(Path p, int k) {
  p.push_back(k);
  return p;
}

// ---- constant renaming (eigenvariable refreshes) ----

TermPtr replace_const(const TermPtr& t, const std::string& name, const TermPtr& repl) {
  if (!t) return t;
  switch (t->kind) {
    case TermKind::Const:
      return (!t->logical && t->name == name) ? repl : t;
    case TermKind::Abs: {
      TermPtr b = replace_const(t->t1, name, repl);
      return b == t->t1 ? t : mk_abs(t->name, t->type, b);
    }
    case TermKind::App: {
      TermPtr f = replace_const(t->t1, name, repl);
      TermPtr a = replace_const(t->t2, name, repl);
      return (f == t->t1 && a == t->t2) ? t : mk_app(f, a);
    }
    default:
      return t;
  }
}

void collect_const_names(const TermPtr& t, std::set<std::string>& out) {
  if (!t) return;
  if (t->kind == TermKind::Const && !t->logical) out.insert(t->name);
  collect_const_names(t->t1, out);
  collect_const_names(t->t2, out);
}

void collect_const_names(const ProofPtr& p, std::set<std::string>& out) {
  visit(p, [&out](const ProofPtr& n, const Path&) {
    for (const auto& f : n->conclusion.gamma) collect_const_names(f, out);
    for (const auto& f : n->conclusion.delta) collect_const_names(f, out);
    collect_const_names(n->conclusion.goal, out);
    collect_const_names(n->witness, out);
    if (n->triple) {
      for (const auto& f : n->triple->unbounded) collect_const_names(f, out);
      for (const auto& f : n->triple->bounded) collect_const_names(f, out);
      collect_const_names(n->triple->head, out);
    }
  });
}

// ---- shared transform state ----

struct Worker {
  ProofPtr root;
  std::vector<NormalizeStep> steps;
  std::vector<ProofPtr> checkpoints;
  std::set<std::string> used_names;

  void note(std::string scheme, Path at) { steps.push_back({std::move(scheme), std::move(at)}); }

  std::string fresh_name(const std::string& base) {
    for (int i = 1;; i++) {
      std::string cand = base + std::to_string(i);
      if (used_names.insert(cand).second) return cand;
    }
  }
};

void replace_at(ProofPtr& root, const Path& p, ProofPtr sub) {
  if (p.empty()) {
    root = std::move(sub);
    return;
  }
  Path parent(p.begin(), p.end() - 1);
  node_at(root, parent)->premises[p.back()] = std::move(sub);
}

// among the reported paths, the first in postorder: a node none of whose
// descendants is also reported, leftmost on ties
Path pick_innermost(const std::vector<Path>& paths) {
  auto is_prefix = [](const Path& a, const Path& b) {
    return a.size() < b.size() && std::equal(a.begin(), a.end(), b.begin());
  };
  const Path* best = nullptr;
  for (const auto& p : paths) {
    bool leaf = true;
    for (const auto& q : paths)
      if (is_prefix(p, q)) { leaf = false; break; }
    if (leaf && (!best || std::lexicographical_compare(p.begin(), p.end(), best->begin(), best->end())))
      best = &p;
  }
  if (!best) throw std::logic_error("normalize: empty offender list");
  return *best;
}

// ---- left-rule / absorb anatomy ----

bool has_side(Rule r) { return r == Rule::LolliL || r == Rule::ImpL; }
int main_index(Rule r) { return has_side(r) ? 1 : 0; }

TermPtr principal_formula(const ProofPtr& n) {
  if (n->rule == Rule::Absorb || n->rule == Rule::BCu)
    return n->conclusion.gamma[n->principal];
  return n->conclusion.delta[n->principal];
}

// the formula the rule places into its main premise
TermPtr residue_formula(const ProofPtr& n) {
  TermPtr p = principal_formula(n);
  FView v = view(p);
  switch (n->rule) {
    case Rule::WithL1: return v.l;
    case Rule::WithL2: return v.r;
    case Rule::ForallL: return substitute(v.binder->t1, n->witness);
    case Rule::LolliL:
    case Rule::ImpL: return v.r;
    case Rule::Absorb: return p;
    default: throw std::logic_error("residue_formula on a right rule");
  }
}

// Rebuilds the rule instance `like` (a left rule or absorb) directly on top
// of the given premises.  The conclusion is main's sequent with the residue
// occurrence swapped back for the principal formula (removed outright for
// absorb, whose principal lives in gamma) and the side premise's bounded
// context prepended.
ProofPtr stack_left(const ProofPtr& like, const ProofPtr& side, const ProofPtr& main) {
  TermPtr p = principal_formula(like);
  TermPtr rho = residue_formula(like);
  const Sequent& m = main->conclusion;
  int ri = find_formula(m.delta, rho);
  if (ri < 0) throw std::logic_error("normalize: residue vanished from the premise");
  std::vector<TermPtr> delta;
  if (side) delta = side->conclusion.delta;
  int base = (int)delta.size();
  for (int i = 0; i < (int)m.delta.size(); i++) {
    if (i == ri) {
      if (like->rule != Rule::Absorb) delta.push_back(p);
    } else {
      delta.push_back(m.delta[i]);
    }
  }
  int principal;
  if (like->rule == Rule::Absorb) {
    principal = find_formula(m.gamma, p);
    if (principal < 0) throw std::logic_error("normalize: absorbed clause left the unbounded context");
  } else {
    principal = base + ri;
  }
  std::vector<ProofPtr> prems;
  std::vector<int> intro;
  if (has_side(like->rule)) {
    prems = {side, main};
    intro = {-1, ri};
  } else {
    prems = {main};
    intro = {ri};
  }
  return mk_node(like->rule, mk_sequent(m.gamma, std::move(delta), m.goal), std::move(prems),
                 principal, std::move(intro), like->witness);
}

// permute the conclusion delta into `target` order, remapping the principal
void reorder_delta(const ProofPtr& n, const std::vector<TermPtr>& target) {
  auto& cur = n->conclusion.delta;
  if (cur.size() != target.size())
    throw std::logic_error("normalize: conclusion delta changed size");
  std::vector<int> newpos(cur.size(), -1);
  std::vector<bool> used(target.size(), false);
  for (size_t i = 0; i < cur.size(); i++) {
    for (size_t j = 0; j < target.size(); j++) {
      if (!used[j] && term_eq(target[j], cur[i])) {
        newpos[i] = (int)j;
        used[j] = true;
        break;
      }
    }
    if (newpos[i] < 0) throw std::logic_error("normalize: conclusion delta changed content");
  }
  if (n->principal >= 0 && n->rule != Rule::Absorb && n->rule != Rule::BCu)
    n->principal = newpos[n->principal];
  cur = target;
}

// adds g to the unbounded context of every sequent in the subtree, first
// refreshing any eigenvariable that occurs in g
ProofPtr add_unbounded(Worker& w, const ProofPtr& n, const TermPtr& g);

ProofPtr rename_const_tree(const ProofPtr& n, const std::string& name, const TermPtr& repl) {
  auto fix = [&](const TermPtr& t) { return replace_const(t, name, repl); };
  std::vector<TermPtr> gamma, delta;
  for (const auto& f : n->conclusion.gamma) gamma.push_back(fix(f));
  for (const auto& f : n->conclusion.delta) delta.push_back(fix(f));
  TermPtr goal = fix(n->conclusion.goal);
  canon_gamma(gamma);
  int principal = n->principal;
  if (n->rule == Rule::Absorb || n->rule == Rule::BCu)
    principal = find_formula(gamma, fix(principal_formula(n)));
  std::optional<ClauseTriple> triple;
  if (n->triple) {
    ClauseTriple t;
    for (const auto& f : n->triple->unbounded) t.unbounded.push_back(fix(f));
    for (const auto& f : n->triple->bounded) t.bounded.push_back(fix(f));
    t.head = fix(n->triple->head);
    triple = std::move(t);
  }
  std::vector<ProofPtr> prems;
  for (const auto& q : n->premises) prems.push_back(rename_const_tree(q, name, repl));
  return mk_node(n->rule, mk_sequent(std::move(gamma), std::move(delta), goal), std::move(prems),
                 principal, n->intro, fix(n->witness), std::move(triple));
}

ProofPtr add_unbounded(Worker& w, const ProofPtr& n, const TermPtr& g) {
  ProofPtr s = n;
  std::vector<std::pair<std::string, TypePtr>> clashes;
  visit(s, [&](const ProofPtr& q, const Path&) {
    if (q->rule == Rule::ForallR && q->witness && contains_const(g, q->witness->name))
      clashes.emplace_back(q->witness->name, q->witness->type);
  });
  for (const auto& [name, ty] : clashes)
    s = rename_const_tree(s, name, mk_const(w.fresh_name(name), ty));

  std::function<ProofPtr(const ProofPtr&)> go = [&](const ProofPtr& q) -> ProofPtr {
    std::vector<TermPtr> gamma = q->conclusion.gamma;
    gamma.push_back(g);
    canon_gamma(gamma);
    int principal = q->principal;
    if (q->rule == Rule::Absorb || q->rule == Rule::BCu)
      principal = find_formula(gamma, principal_formula(q));
    std::vector<ProofPtr> prems;
    for (const auto& r : q->premises) prems.push_back(go(r));
    return mk_node(q->rule, mk_sequent(std::move(gamma), q->conclusion.delta, q->conclusion.goal),
                   std::move(prems), principal, q->intro, q->witness, q->triple);
  };
  return go(s);
}

// ---- to_uniform: bubble one offending instance past right rules ----

// L is a left rule or absorb whose subtree contains no other offender.
// Returns a subtree with the same conclusion in which every copy of L has an
// atomic goal or was swallowed by topR.
ProofPtr bubble(Worker& w, const ProofPtr& L, const Path& at) {
  if (!is_complex_goal(L->conclusion.goal)) return L;
  int mi = main_index(L->rule);
  ProofPtr S = has_side(L->rule) ? L->premises[0] : nullptr;
  ProofPtr R = L->premises[mi];
  if (!is_right_rule(R->rule))
    throw std::logic_error(std::string("normalize: no permutation scheme for ") +
                           rule_name(L->rule) + " under " + rule_name(R->rule));
  w.note(std::string("perm-") + rule_name(L->rule) + "-" + rule_name(R->rule), at);
  switch (R->rule) {
    case Rule::TopR:
      return mk_node(Rule::TopR, L->conclusion);
    case Rule::WithR: {
      ProofPtr l0 = bubble(w, stack_left(L, S, R->premises[0]), child(at, 0));
      ProofPtr l1 = bubble(w, stack_left(L, S ? clone_tree(S) : nullptr, R->premises[1]), child(at, 1));
      return mk_node(Rule::WithR, L->conclusion, {std::move(l0), std::move(l1)});
    }
    case Rule::LolliR: {
      FView g = view(L->conclusion.goal);
      ProofPtr up = bubble(w, stack_left(L, S, R->premises[0]), child(at, 0));
      int ip = find_formula(up->conclusion.delta, g.l);
      if (ip < 0) throw std::logic_error("normalize: -oR antecedent vanished");
      return mk_node(Rule::LolliR, L->conclusion, {std::move(up)}, -1, {ip});
    }
    case Rule::ImpR: {
      FView g = view(L->conclusion.goal);
      ProofPtr S2 = S ? add_unbounded(w, S, g.l) : nullptr;
      ProofPtr up = bubble(w, stack_left(L, S2, R->premises[0]), child(at, 0));
      return mk_node(Rule::ImpR, L->conclusion, {std::move(up)});
    }
    case Rule::ForallR: {
      // refresh the eigenvariable before widening its scope over L
      TermPtr c2 = mk_const(w.fresh_name(R->witness->name), R->witness->type);
      ProofPtr body = rename_const_tree(R->premises[0], R->witness->name, c2);
      ProofPtr up = bubble(w, stack_left(L, S, body), child(at, 0));
      return mk_node(Rule::ForallR, L->conclusion, {std::move(up)}, -1, {}, c2);
    }
    case Rule::ExistsR: {
      ProofPtr up = bubble(w, stack_left(L, S, R->premises[0]), child(at, 0));
      return mk_node(Rule::ExistsR, L->conclusion, {std::move(up)}, -1, {}, R->witness);
    }
    case Rule::OplusR1:
    case Rule::OplusR2: {
      ProofPtr up = bubble(w, stack_left(L, S, R->premises[0]), child(at, 0));
      return mk_node(R->rule, L->conclusion, {std::move(up)});
    }
    case Rule::TensorR: {
      TermPtr rho = residue_formula(L);
      int b = find_formula(R->premises[0]->conclusion.delta, rho) >= 0 ? 0 : 1;
      if (b == 1 && find_formula(R->premises[1]->conclusion.delta, rho) < 0)
        throw std::logic_error("normalize: residue missing from both *R branches");
      ProofPtr nb = bubble(w, stack_left(L, S, R->premises[b]), child(at, b));
      std::vector<ProofPtr> prems(2);
      prems[b] = std::move(nb);
      prems[1 - b] = R->premises[1 - b];
      return mk_node(Rule::TensorR, L->conclusion, std::move(prems));
    }
    default:
      throw std::logic_error(std::string("normalize: no permutation scheme for ") +
                             rule_name(L->rule) + " under " + rule_name(R->rule));
  }
}

void require_checked(const ProofPtr& p, const char* who) {
  CheckResult r = check_full(p);
  if (!r.ok)
    throw NormalizeError(std::string(who) + ": input fails the checker: " + r.error +
                         " at " + path_str(r.where));
}

}  // namespace

NormalizeResult to_uniform(const ProofPtr& input) {
  require_checked(input, "to_uniform");
  Worker w;
  w.root = clone_tree(input);
  collect_const_names(w.root, w.used_names);
  while (true) {
    UniformReport rep = is_uniform(w.root);
    if (rep.uniform) break;
    int before = (int)rep.offending.size();
    Path p = pick_innermost(rep.offending);
    replace_at(w.root, p, bubble(w, node_at(w.root, p), p));
    if (nonuniformity_measure(w.root) != before - 1)
      throw std::logic_error("normalize: relocation did not lower the measure by one");
    w.checkpoints.push_back(clone_tree(w.root));
  }
  return {std::move(w.root), std::move(w.steps), std::move(w.checkpoints)};
}

namespace {

// ---- to_simple: move an unmarked left rule up its spine ----

ProofPtr simplify_step(Worker& w, const ProofPtr& L, const Path& at) {
  int mi = main_index(L->rule);
  ProofPtr S = has_side(L->rule) ? L->premises[0] : nullptr;
  ProofPtr A = L->premises[mi];  // rule above on the spine; marked if a left rule
  TermPtr rho = residue_formula(L);
  ProofPtr out;
  if (A->rule == Rule::LolliL && find_formula(A->premises[0]->conclusion.delta, rho) >= 0) {
    // the residue crosses into the side premise: transplant L onto it
    w.note(std::string("transplant-") + rule_name(L->rule), at);
    ProofPtr inner = stack_left(L, S, A->premises[0]);
    if (is_complex_goal(inner->conclusion.goal)) inner = bubble(w, inner, child(at, 0));
    out = stack_left(A, inner, A->premises[1]);
  } else if (is_left_rule(A->rule) || A->rule == Rule::Absorb) {
    w.note(std::string("rot-") + rule_name(L->rule) + "-" + rule_name(A->rule), at);
    ProofPtr AS = has_side(A->rule) ? A->premises[0] : nullptr;
    ProofPtr lifted = stack_left(L, S, A->premises[main_index(A->rule)]);
    out = stack_left(A, AS, lifted);
  } else {
    throw std::logic_error(std::string("normalize: no scheme for a non-simple ") +
                           rule_name(L->rule) + " under " + rule_name(A->rule));
  }
  reorder_delta(out, L->conclusion.delta);
  return out;
}

}  // namespace

NormalizeResult to_simple(const ProofPtr& input) {
  require_checked(input, "to_simple");
  if (!is_uniform(input).uniform) throw NormalizeError("to_simple: input proof is not uniform");
  Worker w;
  w.root = clone_tree(input);
  collect_const_names(w.root, w.used_names);
  int guard = 16 * tree_size(w.root) * (tree_size(w.root) + 4);
  while (true) {
    SimpleReport rep = is_simple(w.root);
    if (rep.simple) break;
    if (--guard < 0) throw std::logic_error("normalize: simplification failed to converge");
    Path p = pick_innermost(rep.offending);
    replace_at(w.root, p, simplify_step(w, node_at(w.root, p), p));
    w.checkpoints.push_back(clone_tree(w.root));
  }
  return {std::move(w.root), std::move(w.steps), std::move(w.checkpoints)};
}

namespace {

// ---- to_coincided: reseat each detached absorb below its consumer ----

struct Reseated {
  ProofPtr sub;
  int removed;  // position deleted from sub's conclusion delta
  bool dropped;
};

// absorb (templated by `like`) placed directly below `consumer`, which holds
// the copy at delta position `pos`
ProofPtr insert_absorb(const ProofPtr& like, const ProofPtr& consumer, int pos) {
  const Sequent& c = consumer->conclusion;
  std::vector<TermPtr> delta = c.delta;
  delta.erase(delta.begin() + pos);
  int gp = find_formula(c.gamma, principal_formula(like));
  if (gp < 0) throw std::logic_error("normalize: absorbed clause left the unbounded context");
  return mk_node(Rule::Absorb, mk_sequent(c.gamma, std::move(delta), c.goal), {consumer}, gp,
                 {pos});
}

// Threads one occurrence of the copy out of n's conclusion and upward until
// the rule instance that consumes it, where the absorb (templated by `like`)
// is reinserted directly below; a copy reaching topR is dropped, one crossing
// &R is reinserted in both branches.  `below` is the node that sat directly
// below n, used to skip a consumer already claimed by a coincided absorb.
Reseated reseat(Worker& w, const ProofPtr& n, const TermPtr& copy, const ProofPtr& like,
                const ProofPtr& below) {
  if (n->rule == Rule::Id)
    return {insert_absorb(like, n, 0), 0, false};
  if (is_left_rule(n->rule) && term_eq(principal_formula(n), copy)) {
    bool claimed = below && below->rule == Rule::Absorb && !below->intro.empty() &&
                   below->intro[0] == n->principal;
    if (!claimed) return {insert_absorb(like, n, n->principal), n->principal, false};
  }
  if (n->rule == Rule::TopR) {
    int r = find_formula(n->conclusion.delta, copy);
    if (r < 0) throw std::logic_error("normalize: absorbed copy vanished");
    std::vector<TermPtr> delta = n->conclusion.delta;
    delta.erase(delta.begin() + r);
    return {mk_node(Rule::TopR, mk_sequent(n->conclusion.gamma, std::move(delta),
                                           n->conclusion.goal)),
            r, true};
  }
  if (n->rule == Rule::WithR) {
    Reseated a = reseat(w, n->premises[0], copy, like, n);
    Reseated b = reseat(w, n->premises[1], copy, like, n);
    int r = find_formula(n->conclusion.delta, copy);
    if (r < 0) throw std::logic_error("normalize: absorbed copy vanished");
    std::vector<TermPtr> delta = n->conclusion.delta;
    delta.erase(delta.begin() + r);
    ProofPtr sub = mk_node(Rule::WithR, mk_sequent(n->conclusion.gamma, std::move(delta),
                                                   n->conclusion.goal),
                           {a.sub, b.sub});
    return {sub, r, a.dropped && b.dropped};
  }
  // route the copy into the first premise whose bounded context carries it
  for (size_t k = 0; k < n->premises.size(); k++) {
    if (find_formula(n->premises[k]->conclusion.delta, copy) < 0) continue;
    Reseated up = reseat(w, n->premises[k], copy, like, n);
    // conclusion loses one occurrence; a consumed-here principal slot is
    // excluded so the claimed-consumer skip above stays sound
    int r = -1;
    for (int i = 0; i < (int)n->conclusion.delta.size(); i++) {
      bool is_principal = n->rule != Rule::Absorb && n->rule != Rule::BCu && i == n->principal;
      if (!is_principal && term_eq(n->conclusion.delta[i], copy)) { r = i; break; }
    }
    if (r < 0) throw std::logic_error("normalize: absorbed copy vanished");
    std::vector<TermPtr> delta = n->conclusion.delta;
    delta.erase(delta.begin() + r);
    int principal = n->principal;
    if (n->rule != Rule::Absorb && n->rule != Rule::BCu && principal > r) principal--;
    std::vector<int> intro = n->intro;
    if (k < intro.size() && intro[k] >= 0) {
      TermPtr pointed = n->premises[k]->conclusion.delta[intro[k]];
      if (intro[k] > up.removed) {
        intro[k]--;
      } else if (intro[k] == up.removed) {
        intro[k] = find_formula(up.sub->conclusion.delta, pointed);
        if (intro[k] < 0) throw std::logic_error("normalize: introduced formula vanished");
      }
    }
    std::vector<ProofPtr> prems = n->premises;
    prems[k] = up.sub;
    ProofPtr sub = mk_node(n->rule, mk_sequent(n->conclusion.gamma, std::move(delta),
                                               n->conclusion.goal),
                           std::move(prems), principal, std::move(intro), n->witness, n->triple);
    return {sub, r, up.dropped};
  }
  throw std::logic_error(std::string("normalize: absorbed copy untraceable past ") +
                         rule_name(n->rule));
}

}  // namespace

NormalizeResult to_coincided(const ProofPtr& input) {
  require_checked(input, "to_coincided");
  if (!is_simple(input).simple) throw NormalizeError("to_coincided: input proof is not simple");
  Worker w;
  w.root = clone_tree(input);
  collect_const_names(w.root, w.used_names);
  int guard = 4 * tree_size(w.root) * (tree_size(w.root) + 4);
  while (true) {
    CoincidedReport rep = is_coincided(w.root);
    if (rep.coincided) break;
    if (--guard < 0) throw std::logic_error("normalize: absorb placement failed to converge");
    Path p = pick_innermost(rep.offending);
    ProofPtr a = node_at(w.root, p);
    Reseated rs = reseat(w, a->premises[0], principal_formula(a), a, a);
    w.note(rs.dropped ? "absorb-drop" : "absorb-coincide", p);
    reorder_delta(rs.sub, a->conclusion.delta);
    replace_at(w.root, p, rs.sub);
    w.checkpoints.push_back(clone_tree(w.root));
  }
  return {std::move(w.root), std::move(w.steps), std::move(w.checkpoints)};
}

namespace {

// ---- to_reduced: collapse each spine into a backchaining node ----

ProofPtr reduce_node(Worker& w, const ProofPtr& n, const Path& at);

ProofPtr collapse_spine(Worker& w, const ProofPtr& n, const Path& at) {
  if (n->rule == Rule::Id) {
    w.note("collapse-BCb", at);
    return mk_node(Rule::BCb, n->conclusion, {}, 0, {}, nullptr,
                   ClauseTriple{{}, {}, n->conclusion.goal});
  }
  Rule bc;
  int principal;
  ProofPtr cur;
  Path cp = at;
  if (n->rule == Rule::Absorb) {
    bc = Rule::BCu;
    principal = n->principal;  // gamma position carries over
    cur = n->premises[0];
    cp = child(cp, 0);
  } else {
    bc = Rule::BCb;
    principal = n->principal;
    cur = n;
  }
  ClauseTriple t;
  std::vector<ProofPtr> obls_u, obls_b;
  while (true) {
    switch (cur->rule) {
      case Rule::Id:
        t.head = cur->conclusion.goal;
        break;
      case Rule::WithL1:
      case Rule::WithL2:
      case Rule::ForallL:
        cur = cur->premises[0];
        cp = child(cp, 0);
        continue;
      case Rule::ImpL: {
        // the unbounded obligation set absorbs duplicates; drop the spare subproof
        TermPtr g = cur->premises[0]->conclusion.goal;
        if (find_formula(t.unbounded, g) < 0) {
          t.unbounded.push_back(g);
          obls_u.push_back(reduce_node(w, cur->premises[0], child(cp, 0)));
        }
        cur = cur->premises[1];
        cp = child(cp, 1);
        continue;
      }
      case Rule::LolliL:
        t.bounded.push_back(cur->premises[0]->conclusion.goal);
        obls_b.push_back(reduce_node(w, cur->premises[0], child(cp, 0)));
        cur = cur->premises[1];
        cp = child(cp, 1);
        continue;
      default:
        throw std::logic_error(std::string("normalize: spine interrupted by ") +
                               rule_name(cur->rule));
    }
    break;
  }
  w.note(bc == Rule::BCu ? "collapse-BCu" : "collapse-BCb", at);
  std::vector<ProofPtr> prems = std::move(obls_u);
  prems.insert(prems.end(), obls_b.begin(), obls_b.end());
  return mk_node(bc, n->conclusion, std::move(prems), principal, {}, nullptr, std::move(t));
}

ProofPtr reduce_node(Worker& w, const ProofPtr& n, const Path& at) {
  if (is_right_rule(n->rule) || n->rule == Rule::BuiltinR) {
    std::vector<ProofPtr> prems;
    for (size_t k = 0; k < n->premises.size(); k++)
      prems.push_back(reduce_node(w, n->premises[k], child(at, (int)k)));
    return mk_node(n->rule, n->conclusion, std::move(prems), n->principal, n->intro, n->witness,
                   n->triple);
  }
  return collapse_spine(w, n, at);
}

}  // namespace

NormalizeResult to_reduced(const ProofPtr& input) {
  require_checked(input, "to_reduced");
  if (!is_uniform(input).uniform) throw NormalizeError("to_reduced: input proof is not uniform");
  if (!is_simple(input).simple) throw NormalizeError("to_reduced: input proof is not simple");
  if (!is_coincided(input).coincided)
    throw NormalizeError("to_reduced: input proof is not coincided");
  Worker w;
  w.root = clone_tree(input);
  ProofPtr out = reduce_node(w, w.root, {});
  CheckResult r = check_reduced(out);
  if (!r.ok)
    throw std::logic_error("normalize: collapsed proof fails the reduced checker: " + r.error);
  return {std::move(out), std::move(w.steps), std::move(w.checkpoints)};
}

}  // namespace lolli
