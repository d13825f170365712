#include "lolli/clause.hpp"

#include <set>
#include <sstream>

namespace lolli {

namespace {

bool head_may_match(const TermPtr& head, const TermPtr& filter) {
  if (!filter) return true;
  FView a = view(head), b = view(filter);
  if (a.kind != FKind::RigidAtom || b.kind != FKind::RigidAtom) return true;
  return a.head->name == b.head->name && a.args.size() == b.args.size();
}

void elab(std::vector<TermPtr> gamma, std::vector<TermPtr> delta, const TermPtr& p,
          const FreshMeta& fresh, const TermPtr& filter, std::vector<ClauseTriple>& out) {
  FView v = view(p);
  switch (v.kind) {
    case FKind::RigidAtom:
      if (head_may_match(p, filter)) out.push_back({std::move(gamma), std::move(delta), p});
      return;
    case FKind::With:
      elab(gamma, delta, v.l, fresh, filter, out);
      elab(std::move(gamma), std::move(delta), v.r, fresh, filter, out);
      return;
    case FKind::All:
      elab(std::move(gamma), std::move(delta),
           substitute(v.binder->t1, fresh(v.binder->type)), fresh, filter, out);
      return;
    case FKind::Imp: {
      // the unbounded side is a set: absorb duplicates
      bool dup = false;
      for (const auto& u : gamma)
        if (term_eq(u, v.l)) { dup = true; break; }
      if (!dup) gamma.push_back(v.l);
      elab(std::move(gamma), std::move(delta), v.r, fresh, filter, out);
      return;
    }
    case FKind::Lolli:
      delta.push_back(v.l);
      elab(std::move(gamma), std::move(delta), v.r, fresh, filter, out);
      return;
    default:
      throw ElaborateError("not a program clause: " + formula_str(p));
  }
}

}  // namespace

std::vector<ClauseTriple> elaborate(const TermPtr& clause, const FreshMeta& fresh,
                                    const TermPtr& head_filter) {
  std::vector<ClauseTriple> out;
  elab({}, {}, clause, fresh, head_filter, out);
  return out;
}

namespace {

// Only metavariables of the original pattern may be bound; metavariables
// appearing on the target side (or inside values bound earlier) are rigid
// and match themselves only.
bool match_rec(const TermPtr& pat, const TermPtr& t, std::map<int, TermPtr>& binding,
               const std::set<int>& patvars) {
  TermPtr p = pat;
  while (p->kind == TermKind::Meta && patvars.count(p->idx)) {
    auto it = binding.find(p->idx);
    if (it == binding.end()) break;
    p = it->second;
  }
  if (p->kind == TermKind::Meta) {
    if (patvars.count(p->idx)) {
      binding[p->idx] = t;
      return true;
    }
    return t->kind == TermKind::Meta && t->idx == p->idx;
  }
  if (p->kind != t->kind) {
    // allow s-successor patterns against numerals
    if (p->kind == TermKind::App && t->kind == TermKind::Num && t->num > 0 &&
        p->t1->kind == TermKind::Const && p->t1->name == "s")
      return match_rec(p->t2, mk_num(t->num - 1), binding, patvars);
    return false;
  }
  switch (p->kind) {
    case TermKind::BVar: return p->idx == t->idx;
    case TermKind::FVar:
    case TermKind::Const: return p->name == t->name;
    case TermKind::Num: return p->num == t->num;
    case TermKind::Meta: return false;  // unreachable
    case TermKind::Abs:
      return type_eq(p->type, t->type) && match_rec(p->t1, t->t1, binding, patvars);
    case TermKind::App:
      return match_rec(p->t1, t->t1, binding, patvars) &&
             match_rec(p->t2, t->t2, binding, patvars);
  }
  return false;
}

}  // namespace

bool match_term(const TermPtr& pat, const TermPtr& t, std::map<int, TermPtr>& binding) {
  std::vector<int> ids;
  collect_metas(pat, ids);
  std::set<int> patvars(ids.begin(), ids.end());
  for (const auto& [id, value] : binding) {
    (void)value;
    patvars.insert(id);
  }
  return match_rec(pat, t, binding, patvars);
}

bool triple_in_elaboration(const TermPtr& clause, const ClauseTriple& triple) {
  int next = -1;
  FreshMeta fresh = [&next](const TypePtr& ty) { return mk_meta(next--, ty); };
  std::vector<ClauseTriple> cands;
  try {
    cands = elaborate(clause, fresh, triple.head);
  } catch (const ElaborateError&) {
    return false;
  }
  for (const auto& c : cands) {
    if (c.unbounded.size() != triple.unbounded.size()) continue;
    if (c.bounded.size() != triple.bounded.size()) continue;
    std::map<int, TermPtr> b;
    if (!match_term(c.head, triple.head, b)) continue;
    bool ok = true;
    for (size_t i = 0; ok && i < c.unbounded.size(); i++)
      ok = match_term(c.unbounded[i], triple.unbounded[i], b);
    for (size_t i = 0; ok && i < c.bounded.size(); i++)
      ok = match_term(c.bounded[i], triple.bounded[i], b);
    if (ok) return true;
  }
  return false;
}

std::string triple_str(const ClauseTriple& t) {
  std::ostringstream os;
  os << "<{";
  for (size_t i = 0; i < t.unbounded.size(); i++)
    os << (i ? ", " : "") << formula_str(t.unbounded[i]);
  os << "}, {";
  for (size_t i = 0; i < t.bounded.size(); i++)
    os << (i ? ", " : "") << formula_str(t.bounded[i]);
  os << "}, " << formula_str(t.head) << ">";
  return os.str();
}

}  // namespace lolli
