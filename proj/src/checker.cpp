#include "lolli/checker.hpp"

#include <sstream>

namespace lolli {

bool is_atomic_formula(const TermPtr& f) {
  FKind k = view(f).kind;
  return k == FKind::RigidAtom || k == FKind::FlexAtom;
}

bool is_complex_goal(const TermPtr& f) {
  FKind k = view(f).kind;
  return !(k == FKind::RigidAtom || k == FKind::FlexAtom || k == FKind::Builtin ||
           k == FKind::Other);
}

bool eval_builtin(Builtin b, const std::vector<std::uint64_t>& a) {
  switch (b) {
    case Builtin::Eq: return a[0] == a[1];
    case Builtin::Neq: return a[0] != a[1];
    case Builtin::Gt: return a[0] > a[1];
    case Builtin::Le: return a[0] <= a[1];
    case Builtin::Add3: return a[0] + a[1] == a[2];
    case Builtin::Sub3: return (a[0] >= a[1] ? a[0] - a[1] : 0) == a[2];
  }
  return false;
}

namespace {

struct Violation {
  std::string msg;
  Path where;
};

struct Checker {
  bool reduced;  // reduced system vs full calculus
  std::optional<Violation> bad;

  void flag(const Path& at, const std::string& msg) {
    if (!bad) bad = Violation{msg, at};
  }

  bool rule_allowed(Rule r) {
    switch (r) {
      case Rule::BCu:
      case Rule::BCb:
        return reduced;
      case Rule::Id:
      case Rule::TopR:
      case Rule::BuiltinR:
        return true;
      case Rule::Absorb:
        return !reduced;
      default:
        return reduced ? is_right_rule(r) : true;
    }
  }

  // returns rest of delta after removing the intro formula, or flags
  std::optional<std::vector<TermPtr>> strip_intro(const ProofPtr& n, int k,
                                                  const TermPtr& expected, const Path& at) {
    const auto& prem = n->premises[k]->conclusion;
    int pos = k < (int)n->intro.size() ? n->intro[k] : -1;
    if (pos < 0 || pos >= (int)prem.delta.size()) {
      flag(at, "missing or bad intro position for premise " + std::to_string(k));
      return std::nullopt;
    }
    if (!term_eq(prem.delta[pos], expected)) {
      flag(at, "premise " + std::to_string(k) + " intro formula is " +
               formula_str(prem.delta[pos]) + ", expected " + formula_str(expected));
      return std::nullopt;
    }
    std::vector<TermPtr> rest = prem.delta;
    rest.erase(rest.begin() + pos);
    return rest;
  }

  bool gamma_same(const ProofPtr& n, int k, const Path& at) {
    const auto& a = n->conclusion.gamma;
    const auto& b = n->premises[k]->conclusion.gamma;
    if (a.size() == b.size()) {
      bool eq = true;
      for (size_t i = 0; eq && i < a.size(); i++) eq = term_eq(a[i], b[i]);
      if (eq) return true;
    }
    flag(at, "premise " + std::to_string(k) + " changes the unbounded context");
    return false;
  }

  bool goal_same(const ProofPtr& n, int k, const Path& at) {
    if (term_eq(n->conclusion.goal, n->premises[k]->conclusion.goal)) return true;
    flag(at, "premise " + std::to_string(k) + " changes the goal");
    return false;
  }

  bool premise_count(const ProofPtr& n, size_t want, const Path& at) {
    if (n->premises.size() == want) return true;
    flag(at, std::string(rule_name(n->rule)) + " expects " + std::to_string(want) +
             " premises, has " + std::to_string(n->premises.size()));
    return false;
  }

  TermPtr principal_delta(const ProofPtr& n, const Path& at) {
    int p = n->principal;
    if (p < 0 || p >= (int)n->conclusion.delta.size()) {
      flag(at, "principal delta index out of range");
      return nullptr;
    }
    return n->conclusion.delta[p];
  }

  TermPtr principal_gamma(const ProofPtr& n, const Path& at) {
    int p = n->principal;
    if (p < 0 || p >= (int)n->conclusion.gamma.size()) {
      flag(at, "principal gamma index out of range");
      return nullptr;
    }
    return n->conclusion.gamma[p];
  }

  std::vector<TermPtr> delta_minus_principal(const ProofPtr& n) {
    std::vector<TermPtr> d = n->conclusion.delta;
    d.erase(d.begin() + n->principal);
    return d;
  }

  void check_node(const ProofPtr& n, const Path& at) {
    if (bad) return;
    const Sequent& c = n->conclusion;
    if (!rule_allowed(n->rule)) {
      flag(at, std::string(rule_name(n->rule)) + " is not a rule of this system");
      return;
    }
    for (const auto& f : c.gamma)
      if (!is_clause(f)) { flag(at, "unbounded context formula is not a clause: " + formula_str(f)); return; }
    for (const auto& f : c.delta)
      if (!is_clause(f)) { flag(at, "bounded context formula is not a clause: " + formula_str(f)); return; }
    if (!is_goal(c.goal)) { flag(at, "goal is not a goal formula: " + formula_str(c.goal)); return; }

    FView g = view(c.goal);
    switch (n->rule) {
      case Rule::Id: {
        if (!premise_count(n, 0, at)) return;
        if (!is_atomic_formula(c.goal)) { flag(at, "id goal is not atomic"); return; }
        if (c.delta.size() != 1 || !term_eq(c.delta[0], c.goal)) {
          flag(at, "id requires the bounded context to be exactly the goal atom");
          return;
        }
        if (n->principal != 0) { flag(at, "id principal must be 0"); return; }
        return;
      }
      case Rule::Absorb: {
        if (!premise_count(n, 1, at)) return;
        TermPtr b = principal_gamma(n, at);
        if (!b) return;
        if (!gamma_same(n, 0, at) || !goal_same(n, 0, at)) return;
        auto rest = strip_intro(n, 0, b, at);
        if (!rest) return;
        if (!multiset_eq(*rest, c.delta))
          flag(at, "absorb premise delta must be the conclusion delta plus the copy");
        return;
      }
      case Rule::TopR: {
        if (!premise_count(n, 0, at)) return;
        if (g.kind != FKind::Top) flag(at, "topR goal is not top");
        return;
      }
      case Rule::WithL1:
      case Rule::WithL2: {
        if (!premise_count(n, 1, at)) return;
        TermPtr b = principal_delta(n, at);
        if (!b) return;
        FView v = view(b);
        if (v.kind != FKind::With) { flag(at, "withL principal is not a & formula"); return; }
        TermPtr pick = n->rule == Rule::WithL1 ? v.l : v.r;
        if (!gamma_same(n, 0, at) || !goal_same(n, 0, at)) return;
        auto rest = strip_intro(n, 0, pick, at);
        if (!rest) return;
        if (!multiset_eq(*rest, delta_minus_principal(n)))
          flag(at, "withL premise delta mismatch");
        return;
      }
      case Rule::WithR: {
        if (!premise_count(n, 2, at)) return;
        if (g.kind != FKind::With) { flag(at, "withR goal is not a & formula"); return; }
        for (int k = 0; k < 2; k++) {
          if (!gamma_same(n, k, at)) return;
          if (!multiset_eq(n->premises[k]->conclusion.delta, c.delta)) {
            flag(at, "withR premises must keep the bounded context");
            return;
          }
        }
        if (!term_eq(n->premises[0]->conclusion.goal, g.l) ||
            !term_eq(n->premises[1]->conclusion.goal, g.r))
          flag(at, "withR premise goals mismatch");
        return;
      }
      case Rule::LolliL:
      case Rule::ImpL: {
        if (!premise_count(n, 2, at)) return;
        TermPtr b = principal_delta(n, at);
        if (!b) return;
        FView v = view(b);
        FKind want = n->rule == Rule::LolliL ? FKind::Lolli : FKind::Imp;
        if (v.kind != want) { flag(at, "principal does not match the rule connective"); return; }
        if (!gamma_same(n, 0, at) || !gamma_same(n, 1, at)) return;
        const Sequent& side = n->premises[0]->conclusion;
        if (!term_eq(side.goal, v.l)) { flag(at, "side premise must prove the clause body"); return; }
        if (n->rule == Rule::ImpL && !side.delta.empty()) {
          flag(at, "=>L side premise must have an empty bounded context");
          return;
        }
        if (!goal_same(n, 1, at)) return;
        auto rest = strip_intro(n, 1, v.r, at);
        if (!rest) return;
        std::vector<TermPtr> combined = side.delta;
        combined.insert(combined.end(), rest->begin(), rest->end());
        if (!multiset_eq(combined, delta_minus_principal(n)))
          flag(at, "left-rule context split does not add up");
        return;
      }
      case Rule::LolliR: {
        if (!premise_count(n, 1, at)) return;
        if (g.kind != FKind::Lolli) { flag(at, "lolliR goal is not -o"); return; }
        if (!gamma_same(n, 0, at)) return;
        if (!term_eq(n->premises[0]->conclusion.goal, g.r)) {
          flag(at, "lolliR premise goal mismatch");
          return;
        }
        auto rest = strip_intro(n, 0, g.l, at);
        if (!rest) return;
        if (!multiset_eq(*rest, c.delta)) flag(at, "lolliR premise delta mismatch");
        return;
      }
      case Rule::ImpR: {
        if (!premise_count(n, 1, at)) return;
        if (g.kind != FKind::Imp) { flag(at, "impR goal is not =>"); return; }
        const Sequent& prem = n->premises[0]->conclusion;
        std::vector<TermPtr> want = c.gamma;
        want.push_back(g.l);
        canon_gamma(want);
        bool eq = want.size() == prem.gamma.size();
        for (size_t i = 0; eq && i < want.size(); i++) eq = term_eq(want[i], prem.gamma[i]);
        if (!eq) { flag(at, "impR premise unbounded context mismatch"); return; }
        if (!multiset_eq(prem.delta, c.delta)) { flag(at, "impR premise delta mismatch"); return; }
        if (!term_eq(prem.goal, g.r)) flag(at, "impR premise goal mismatch");
        return;
      }
      case Rule::ForallL: {
        if (!premise_count(n, 1, at)) return;
        TermPtr b = principal_delta(n, at);
        if (!b) return;
        FView v = view(b);
        if (v.kind != FKind::All) { flag(at, "forallL principal is not quantified"); return; }
        if (!n->witness) { flag(at, "forallL needs a witness term"); return; }
        TermPtr inst = substitute(v.binder->t1, n->witness);
        if (!is_clause(inst)) { flag(at, "forallL instance is not a clause"); return; }
        if (!gamma_same(n, 0, at) || !goal_same(n, 0, at)) return;
        auto rest = strip_intro(n, 0, inst, at);
        if (!rest) return;
        if (!multiset_eq(*rest, delta_minus_principal(n)))
          flag(at, "forallL premise delta mismatch");
        return;
      }
      case Rule::ForallR:
      case Rule::ExistsR: {
        if (!premise_count(n, 1, at)) return;
        FKind want = n->rule == Rule::ForallR ? FKind::All : FKind::Ex;
        if (g.kind != want) { flag(at, "quantifier rule goal mismatch"); return; }
        if (!n->witness) { flag(at, "quantifier rule needs a witness"); return; }
        if (n->rule == Rule::ForallR) {
          if (n->witness->kind != TermKind::Const) {
            flag(at, "forallR witness must be an eigenvariable constant");
            return;
          }
          const std::string& name = n->witness->name;
          bool occurs = contains_const(c.goal, name);
          for (const auto& f : c.gamma) occurs = occurs || contains_const(f, name);
          for (const auto& f : c.delta) occurs = occurs || contains_const(f, name);
          if (occurs) {
            flag(at, "eigenvariable " + name + " occurs in the conclusion");
            return;
          }
        }
        TermPtr inst = substitute(g.binder->t1, n->witness);
        if (n->rule == Rule::ExistsR && !is_goal(inst)) {
          flag(at, "existsR instance is not a goal formula");
          return;
        }
        if (!gamma_same(n, 0, at)) return;
        const Sequent& prem = n->premises[0]->conclusion;
        if (!multiset_eq(prem.delta, c.delta)) { flag(at, "quantifier premise delta mismatch"); return; }
        if (!term_eq(prem.goal, inst)) flag(at, "quantifier premise goal mismatch");
        return;
      }
      case Rule::BangR: {
        if (!premise_count(n, 1, at)) return;
        if (g.kind != FKind::Bang) { flag(at, "bangR goal is not !"); return; }
        if (!c.delta.empty()) { flag(at, "bangR requires an empty bounded context"); return; }
        if (!gamma_same(n, 0, at)) return;
        const Sequent& prem = n->premises[0]->conclusion;
        if (!prem.delta.empty()) { flag(at, "bangR premise delta must be empty"); return; }
        if (!term_eq(prem.goal, g.l)) flag(at, "bangR premise goal mismatch");
        return;
      }
      case Rule::OplusR1:
      case Rule::OplusR2: {
        if (!premise_count(n, 1, at)) return;
        if (g.kind != FKind::Oplus) { flag(at, "oplusR goal is not +"); return; }
        if (!gamma_same(n, 0, at)) return;
        const Sequent& prem = n->premises[0]->conclusion;
        if (!multiset_eq(prem.delta, c.delta)) { flag(at, "oplusR premise delta mismatch"); return; }
        TermPtr pick = n->rule == Rule::OplusR1 ? g.l : g.r;
        if (!term_eq(prem.goal, pick)) flag(at, "oplusR premise goal mismatch");
        return;
      }
      case Rule::TensorR: {
        if (!premise_count(n, 2, at)) return;
        if (g.kind != FKind::Tensor) { flag(at, "tensorR goal is not *"); return; }
        if (!gamma_same(n, 0, at) || !gamma_same(n, 1, at)) return;
        if (!term_eq(n->premises[0]->conclusion.goal, g.l) ||
            !term_eq(n->premises[1]->conclusion.goal, g.r)) {
          flag(at, "tensorR premise goals mismatch");
          return;
        }
        std::vector<TermPtr> combined = n->premises[0]->conclusion.delta;
        const auto& d2 = n->premises[1]->conclusion.delta;
        combined.insert(combined.end(), d2.begin(), d2.end());
        if (!multiset_eq(combined, c.delta)) flag(at, "tensorR context split does not add up");
        return;
      }
      case Rule::BuiltinR: {
        if (!premise_count(n, 0, at)) return;
        if (g.kind != FKind::Builtin) { flag(at, "builtin leaf goal is not a builtin atom"); return; }
        if (!c.delta.empty()) { flag(at, "builtin leaf requires an empty bounded context"); return; }
        std::vector<std::uint64_t> args;
        for (const auto& a : g.args) {
          if (a->kind != TermKind::Num) {
            flag(at, "builtin argument is not a ground numeral: " + formula_str(c.goal));
            return;
          }
          args.push_back(a->num);
        }
        if (!eval_builtin(g.btag, args))
          flag(at, "builtin relation does not hold: " + formula_str(c.goal));
        return;
      }
      case Rule::BCu:
      case Rule::BCb: {
        if (view(c.goal).kind != FKind::RigidAtom) {
          flag(at, "backchaining goal must be a rigid atom");
          return;
        }
        if (!n->triple) { flag(at, "backchaining node has no triple"); return; }
        TermPtr b = n->rule == Rule::BCu ? principal_gamma(n, at) : principal_delta(n, at);
        if (!b) return;
        const ClauseTriple& t = *n->triple;
        if (!term_eq(t.head, c.goal)) { flag(at, "triple head differs from the goal"); return; }
        if (!triple_in_elaboration(b, t)) {
          flag(at, "triple is not in the elaboration of " + formula_str(b));
          return;
        }
        size_t nu = t.unbounded.size(), nb = t.bounded.size();
        if (!premise_count(n, nu + nb, at)) return;
        std::vector<TermPtr> combined;
        for (size_t k = 0; k < nu + nb; k++) {
          if (!gamma_same(n, (int)k, at)) return;
          const Sequent& prem = n->premises[k]->conclusion;
          TermPtr want = k < nu ? t.unbounded[k] : t.bounded[k - nu];
          if (!term_eq(prem.goal, want)) {
            flag(at, "obligation premise goal mismatch at " + std::to_string(k));
            return;
          }
          if (k < nu) {
            if (!prem.delta.empty()) {
              flag(at, "unbounded obligation premise must have an empty bounded context");
              return;
            }
          } else {
            combined.insert(combined.end(), prem.delta.begin(), prem.delta.end());
          }
        }
        std::vector<TermPtr> want =
            n->rule == Rule::BCb ? delta_minus_principal(n) : c.delta;
        if (!multiset_eq(combined, want))
          flag(at, "backchaining context split does not add up");
        return;
      }
    }
  }

  void run(const ProofPtr& p) {
    visit(p, [this](const ProofPtr& n, const Path& at) { check_node(n, at); });
  }
};

CheckResult result_of(Checker& c) {
  CheckResult r;
  if (c.bad) {
    r.ok = false;
    r.error = c.bad->msg;
    r.where = c.bad->where;
  }
  return r;
}

}  // namespace

CheckResult check_full(const ProofPtr& p) {
  Checker c{false, std::nullopt};
  c.run(p);
  return result_of(c);
}

CheckResult check_reduced(const ProofPtr& p) {
  Checker c{true, std::nullopt};
  c.run(p);
  return result_of(c);
}

UniformReport is_uniform(const ProofPtr& p) {
  UniformReport r;
  visit(p, [&r](const ProofPtr& n, const Path& at) {
    if (!is_complex_goal(n->conclusion.goal)) return;
    FView g = view(n->conclusion.goal);
    Rule rule = n->rule;
    bool ok = false;
    switch (g.kind) {
      case FKind::Top: ok = rule == Rule::TopR; break;
      case FKind::With: ok = rule == Rule::WithR; break;
      case FKind::Lolli: ok = rule == Rule::LolliR; break;
      case FKind::Imp: ok = rule == Rule::ImpR; break;
      case FKind::All: ok = rule == Rule::ForallR; break;
      case FKind::Ex: ok = rule == Rule::ExistsR; break;
      case FKind::Bang: ok = rule == Rule::BangR; break;
      case FKind::Tensor: ok = rule == Rule::TensorR; break;
      case FKind::Oplus: ok = rule == Rule::OplusR1 || rule == Rule::OplusR2; break;
      default: ok = true; break;
    }
    if (!ok) {
      r.uniform = false;
      r.offending.push_back(at);
    }
  });
  return r;
}

int nonuniformity_measure(const ProofPtr& p) {
  return (int)is_uniform(p).offending.size();
}

std::optional<int> Marking::at(const Path& p) const {
  for (const auto& [path, idx] : marked)
    if (path == p) return idx;
  return std::nullopt;
}

namespace {

// marked delta position of n's conclusion, or -1
int marked_pos(const ProofPtr& n) {
  switch (n->rule) {
    case Rule::Id:
      return 0;
    case Rule::WithL1:
    case Rule::WithL2:
    case Rule::ForallL: {
      int m = marked_pos(n->premises[0]);
      return (m >= 0 && !n->intro.empty() && m == n->intro[0]) ? n->principal : -1;
    }
    case Rule::LolliL:
    case Rule::ImpL: {
      int m = marked_pos(n->premises[1]);
      return (m >= 0 && n->intro.size() > 1 && m == n->intro[1]) ? n->principal : -1;
    }
    default:
      return -1;
  }
}

}  // namespace

Marking compute_marking(const ProofPtr& p) {
  Marking m;
  visit(p, [&m](const ProofPtr& n, const Path& at) {
    int pos = marked_pos(n);
    if (pos >= 0) m.marked.emplace_back(at, pos);
  });
  return m;
}

SimpleReport is_simple(const ProofPtr& p) {
  SimpleReport r;
  visit(p, [&r](const ProofPtr& n, const Path& at) {
    if (!is_left_rule(n->rule)) return;
    if (marked_pos(n) != n->principal || n->principal < 0) {
      r.simple = false;
      r.offending.push_back(at);
    }
  });
  return r;
}

CoincidedReport is_coincided(const ProofPtr& p) {
  CoincidedReport r;
  visit(p, [&r](const ProofPtr& n, const Path& at) {
    if (n->rule != Rule::Absorb) return;
    bool ok = false;
    if (!n->premises.empty() && !n->intro.empty()) {
      const ProofPtr& up = n->premises[0];
      if ((is_left_rule(up->rule) || up->rule == Rule::Id) && up->principal == n->intro[0])
        ok = true;
    }
    if (!ok) {
      r.coincided = false;
      r.offending.push_back(at);
    }
  });
  return r;
}

}  // namespace lolli
