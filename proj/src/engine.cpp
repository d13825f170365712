#include "lolli/engine.hpp"

#include <pthread.h>

#include <algorithm>
#include <functional>

#include "lolli/clause.hpp"

namespace lolli {

std::string trace_line(const TraceEvent& e) {
  return std::string(rule_name(e.rule)) + " " + e.clause_id + " " + formula_str(e.head);
}

namespace {

void collect_names(const TermPtr& t, Unifier& un) {
  if (!t) return;
  if (t->kind == TermKind::Const) un.reserve_name(t->name);
  if (t->t1) collect_names(t->t1, un);
  if (t->t2) collect_names(t->t2, un);
}

// proto proof node built during search; sequents are reconstructed afterwards
struct SNode;
using SPtr = std::shared_ptr<SNode>;
struct SNode {
  Rule rule;
  TermPtr goal;  // pre-substitution
  std::vector<SPtr> prems;
  int dprincipal = -1;  // BCb: consumed resource index
  int gprincipal = -1;  // BCu: unbounded entry index
  std::string clause_id;
  std::optional<ClauseTriple> triple;  // BC: instantiated, pre-substitution
  size_t n_unbounded = 0;              // BC: leading restricted premises
  TermPtr witness;                     // forallR eigenvariable / existsR term
  int intro_index = -1;                // lolliR: pushed resource index
  std::vector<TermPtr> gamma;          // unbounded context snapshot
  std::vector<std::string> gamma_ids;
};

struct DEntry {
  TermPtr clause;
  std::string id;
  bool consumed = false;
  bool dead = false;  // scope ended
};

struct Search {
  const SearchConfig& cfg;
  Unifier un;
  std::vector<DEntry> avail;
  std::vector<std::pair<TermPtr, std::string>> gamma;
  long bc_live = 0;
  bool truncated = false;

  using K = std::function<bool()>;

  explicit Search(const SearchConfig& c) : cfg(c) {}

  SPtr node(Rule r, const TermPtr& goal) {
    auto n = std::make_shared<SNode>();
    n->rule = r;
    n->goal = goal;
    n->gamma.reserve(gamma.size());
    for (const auto& [f, id] : gamma) {
      n->gamma.push_back(f);
      n->gamma_ids.push_back(id);
    }
    return n;
  }

  // can this finished subtree still absorb extra resources from outside?
  static bool has_slack(const SPtr& n) {
    switch (n->rule) {
      case Rule::TopR:
        return true;
      case Rule::BangR:
      case Rule::BuiltinR:
        return false;
      case Rule::WithR:
        return has_slack(n->prems[0]) && has_slack(n->prems[1]);
      case Rule::BCu:
      case Rule::BCb:
        for (size_t j = n->n_unbounded; j < n->prems.size(); ++j)
          if (has_slack(n->prems[j])) return true;
        return false;
      default:
        for (const auto& p : n->prems)
          if (has_slack(p)) return true;
        return false;
    }
  }

  // all resource indices consumed in the subtree (scoped ones included;
  // callers filter by visibility)
  static void claims(const SPtr& n, std::vector<int>& out) {
    if (n->rule == Rule::BCb) out.push_back(n->dprincipal);
    for (const auto& p : n->prems) claims(p, out);
  }

  std::vector<int> visible_claims(const SPtr& n, size_t below) {
    std::vector<int> all;
    claims(n, all);
    std::vector<int> out;
    for (int i : all)
      if (i < (int)below) out.push_back(i);
    std::sort(out.begin(), out.end());
    return out;
  }

  bool solve(const TermPtr& goal0, size_t floor, SPtr& slot, const K& k);
  bool solve_atom(const TermPtr& goal, size_t floor, SPtr& slot, const K& k);
  bool solve_builtin_goal(const TermPtr& goal, const FView& v, SPtr& slot, const K& k);
};

bool Search::solve(const TermPtr& goal0, size_t floor, SPtr& slot, const K& k) {
  TermPtr goal = goal0;
  FView v = view(goal);
  if (v.kind == FKind::FlexAtom) {
    goal = un.zonk(goal);
    v = view(goal);
    if (v.kind == FKind::FlexAtom)
      throw EngineError("flexible atomic goal: " + formula_str(goal));
  }
  switch (v.kind) {
    case FKind::Top: {
      slot = node(Rule::TopR, goal);
      return k();
    }
    case FKind::Builtin:
      return solve_builtin_goal(goal, v, slot, k);
    case FKind::RigidAtom:
      return solve_atom(goal, floor, slot, k);
    case FKind::With: {
      SPtr n = node(Rule::WithR, goal);
      n->prems.resize(2);
      size_t base = avail.size();
      return solve(v.l, floor, n->prems[0], [&]() {
        // both branches see the same input state
        std::vector<int> c1 = visible_claims(n->prems[0], base);
        for (int i : c1) avail[i].consumed = false;
        bool ok = solve(v.r, floor, n->prems[1], [&]() {
          std::vector<int> c2 = visible_claims(n->prems[1], base);
          bool s1 = has_slack(n->prems[0]), s2 = has_slack(n->prems[1]);
          std::vector<int> only1, only2;
          std::set_difference(c1.begin(), c1.end(), c2.begin(), c2.end(),
                              std::back_inserter(only1));
          std::set_difference(c2.begin(), c2.end(), c1.begin(), c1.end(),
                              std::back_inserter(only2));
          // a branch without slack must account for the other's consumption
          if (!s2 && !only1.empty()) return false;
          if (!s1 && !only2.empty()) return false;
          for (int i : only1) avail[i].consumed = true;  // outer view: the union
          slot = n;
          if (k()) return true;
          slot = nullptr;
          for (int i : only1) avail[i].consumed = false;
          return false;
        });
        if (!ok)
          for (int i : c1) avail[i].consumed = true;  // restore branch-1 state
        return ok;
      });
    }
    case FKind::Tensor: {
      SPtr n = node(Rule::TensorR, goal);
      n->prems.resize(2);
      return solve(v.l, floor, n->prems[0], [&]() {
        return solve(v.r, floor, n->prems[1], [&]() {
          slot = n;
          if (k()) return true;
          slot = nullptr;
          return false;
        });
      });
    }
    case FKind::Oplus: {
      SPtr n1 = node(Rule::OplusR1, goal);
      n1->prems.resize(1);
      size_t m = un.mark();
      if (solve(v.l, floor, n1->prems[0], [&]() {
            slot = n1;
            if (k()) return true;
            slot = nullptr;
            return false;
          }))
        return true;
      un.undo_to(m);
      SPtr n2 = node(Rule::OplusR2, goal);
      n2->prems.resize(1);
      if (solve(v.r, floor, n2->prems[0], [&]() {
            slot = n2;
            if (k()) return true;
            slot = nullptr;
            return false;
          }))
        return true;
      un.undo_to(m);
      return false;
    }
    case FKind::Lolli: {  // clause -o goal
      SPtr n = node(Rule::LolliR, goal);
      n->prems.resize(1);
      avail.push_back({v.l, "local"});
      size_t idx = avail.size() - 1;
      n->intro_index = (int)idx;
      bool ok = solve(v.r, floor, n->prems[0], [&]() {
        if (!avail[idx].consumed && !has_slack(n->prems[0]))
          return false;  // the assumption must be used up inside
        avail[idx].dead = true;
        slot = n;
        if (k()) return true;
        slot = nullptr;
        avail[idx].dead = false;
        return false;
      });
      avail.pop_back();
      return ok;
    }
    case FKind::Imp: {  // clause => goal
      SPtr n = node(Rule::ImpR, goal);
      n->prems.resize(1);
      gamma.emplace_back(v.l, "local");
      bool ok = solve(v.r, floor, n->prems[0], [&]() {
        // the hypothesis scope ends here, before any sibling work runs
        auto hyp = gamma.back();
        gamma.pop_back();
        slot = n;
        if (k()) return true;
        slot = nullptr;
        gamma.push_back(std::move(hyp));
        return false;
      });
      if (!ok) gamma.pop_back();
      return ok;
    }
    case FKind::All: {
      SPtr n = node(Rule::ForallR, goal);
      n->prems.resize(1);
      n->witness = un.fresh_eigen(v.binder->name, v.binder->type);
      return solve(substitute(v.binder->t1, n->witness), floor, n->prems[0], [&]() {
        slot = n;
        if (k()) return true;
        slot = nullptr;
        return false;
      });
    }
    case FKind::Ex: {
      SPtr n = node(Rule::ExistsR, goal);
      n->prems.resize(1);
      n->witness = un.fresh_meta(v.binder->type);
      return solve(substitute(v.binder->t1, n->witness), floor, n->prems[0], [&]() {
        slot = n;
        if (k()) return true;
        slot = nullptr;
        return false;
      });
    }
    case FKind::Bang: {
      SPtr n = node(Rule::BangR, goal);
      n->prems.resize(1);
      return solve(v.l, avail.size(), n->prems[0], [&]() {
        slot = n;
        if (k()) return true;
        slot = nullptr;
        return false;
      });
    }
    default:
      throw EngineError("not a goal formula: " + formula_str(goal));
  }
}

bool Search::solve_builtin_goal(const TermPtr& goal, const FView& v, SPtr& slot, const K& k) {
  std::vector<TermPtr> args;
  args.reserve(v.args.size());
  for (const auto& a : v.args) args.push_back(un.zonk(a));
  auto need_num = [&](const TermPtr& a) -> std::uint64_t {
    if (a->kind != TermKind::Num)
      throw EngineError("builtin argument not ground: " + formula_str(un.zonk(goal)));
    return a->num;
  };
  size_t m = un.mark();
  bool ok = false;
  if (v.btag == Builtin::Add3 || v.btag == Builtin::Sub3) {
    std::uint64_t a = need_num(args[0]), b = need_num(args[1]);
    std::uint64_t r = v.btag == Builtin::Add3 ? a + b : (a > b ? a - b : 0);
    ok = un.unify(args[2], mk_num(r));
  } else {
    ok = eval_builtin(v.btag, {need_num(args[0]), need_num(args[1])});
  }
  if (!ok) {
    un.undo_to(m);
    return false;
  }
  slot = node(Rule::BuiltinR, goal);
  if (k()) return true;
  slot = nullptr;
  un.undo_to(m);
  return false;
}

bool Search::solve_atom(const TermPtr& goal, size_t floor, SPtr& slot, const K& k) {
  TermPtr gz = un.zonk(goal);
  FreshMeta fresh = [this](const TypePtr& ty) { return un.fresh_meta(ty); };

  auto attempt = [&](Rule rule, const TermPtr& clause, const std::string& id, int dpr,
                     int gpr) -> bool {
    if (bc_live >= cfg.budget) {
      truncated = true;
      return false;
    }
    TermPtr cz = un.zonk(clause);
    std::vector<ClauseTriple> triples;
    try {
      triples = elaborate(cz, fresh, gz);
    } catch (const ElaborateError& e) {
      throw EngineError(e.what());
    }
    for (const auto& t : triples) {
      size_t m = un.mark();
      if (!un.unify(t.head, gz)) {
        un.undo_to(m);
        continue;
      }
      SPtr n = node(rule, goal);
      n->dprincipal = dpr;
      n->gprincipal = gpr;
      n->clause_id = id;
      n->triple = t;
      n->n_unbounded = t.unbounded.size();
      size_t total = t.unbounded.size() + t.bounded.size();
      n->prems.resize(total);
      if (dpr >= 0) avail[dpr].consumed = true;
      ++bc_live;
      std::function<bool(size_t)> step = [&](size_t j) -> bool {
        if (j == total) {
          slot = n;
          if (k()) return true;
          slot = nullptr;
          return false;
        }
        bool unbounded = j < t.unbounded.size();
        const TermPtr& ob = unbounded ? t.unbounded[j] : t.bounded[j - t.unbounded.size()];
        size_t fl = unbounded ? avail.size() : floor;
        return solve(ob, fl, n->prems[j], [&]() { return step(j + 1); });
      };
      if (step(0)) return true;
      --bc_live;
      if (dpr >= 0) avail[dpr].consumed = false;
      un.undo_to(m);
    }
    return false;
  };

  for (size_t di = floor; di < avail.size(); ++di) {
    if (avail[di].dead || avail[di].consumed) continue;
    if (attempt(Rule::BCb, avail[di].clause, avail[di].id, (int)di, -1)) return true;
  }
  for (size_t gi = 0; gi < gamma.size(); ++gi)
    if (attempt(Rule::BCu, gamma[gi].first, gamma[gi].second, -1, (int)gi)) return true;
  return false;
}

// ---- proof reconstruction ----

struct Finalizer {
  Search& S;
  bool want_trace;
  std::vector<TraceEvent> trace;

  TermPtr formula_at(int i) { return S.un.zonk(S.avail[i].clause); }

  std::vector<TermPtr> delta_formulas(const std::vector<int>& D) {
    std::vector<TermPtr> out;
    out.reserve(D.size());
    for (int i : D) out.push_back(formula_at(i));
    return out;
  }

  // split D among threaded children by their own claims; leftovers ride
  // with the first child that has slack
  std::vector<std::vector<int>> distribute(const std::vector<SPtr>& kids, size_t from,
                                           std::vector<int> D) {
    std::vector<std::vector<int>> out(kids.size() - from);
    std::vector<int> used;
    for (size_t j = from; j < kids.size(); ++j) {
      std::vector<int> all;
      Search::claims(kids[j], all);
      std::sort(all.begin(), all.end());
      std::vector<int> mine;
      std::set_intersection(all.begin(), all.end(), D.begin(), D.end(),
                            std::back_inserter(mine));
      out[j - from] = std::move(mine);
      used.insert(used.end(), out[j - from].begin(), out[j - from].end());
    }
    std::sort(used.begin(), used.end());
    std::vector<int> extra;
    std::set_difference(D.begin(), D.end(), used.begin(), used.end(),
                        std::back_inserter(extra));
    if (!extra.empty()) {
      for (size_t j = from; j < kids.size(); ++j) {
        if (Search::has_slack(kids[j])) {
          auto& Di = out[j - from];
          Di.insert(Di.end(), extra.begin(), extra.end());
          std::sort(Di.begin(), Di.end());
          extra.clear();
          break;
        }
      }
      if (!extra.empty()) throw std::logic_error("engine: unplaced leftover resources");
    }
    return out;
  }

  ProofPtr assign(const SPtr& n, std::vector<int> D) {
    std::vector<TermPtr> gamma;
    gamma.reserve(n->gamma.size());
    for (const auto& f : n->gamma) gamma.push_back(S.un.zonk(f));
    Sequent con = mk_sequent(std::move(gamma), delta_formulas(D), S.un.zonk(n->goal));

    auto pos_in = [](const std::vector<int>& v, int x) {
      return (int)(std::lower_bound(v.begin(), v.end(), x) - v.begin());
    };

    switch (n->rule) {
      case Rule::TopR:
        return mk_node(Rule::TopR, std::move(con));
      case Rule::BuiltinR:
        return mk_node(Rule::BuiltinR, std::move(con));
      case Rule::WithR: {
        ProofPtr a = assign(n->prems[0], D), b = assign(n->prems[1], D);
        return mk_node(Rule::WithR, std::move(con), {std::move(a), std::move(b)});
      }
      case Rule::TensorR: {
        auto parts = distribute(n->prems, 0, D);
        ProofPtr a = assign(n->prems[0], parts[0]);
        ProofPtr b = assign(n->prems[1], parts[1]);
        return mk_node(Rule::TensorR, std::move(con), {std::move(a), std::move(b)});
      }
      case Rule::OplusR1:
      case Rule::OplusR2:
      case Rule::ImpR:
        return mk_node(n->rule, std::move(con), {assign(n->prems[0], D)});
      case Rule::ForallR:
      case Rule::ExistsR:
        return mk_node(n->rule, std::move(con), {assign(n->prems[0], D)}, -1, {},
                       S.un.zonk(n->witness));
      case Rule::BangR:
        return mk_node(Rule::BangR, std::move(con), {assign(n->prems[0], {})});
      case Rule::LolliR: {
        std::vector<int> Dc = D;
        Dc.push_back(n->intro_index);
        std::sort(Dc.begin(), Dc.end());
        int at = pos_in(Dc, n->intro_index);
        return mk_node(Rule::LolliR, std::move(con), {assign(n->prems[0], std::move(Dc))}, -1,
                       {at});
      }
      case Rule::BCu:
      case Rule::BCb: {
        ClauseTriple t;
        for (const auto& f : n->triple->unbounded) t.unbounded.push_back(S.un.zonk(f));
        for (const auto& f : n->triple->bounded) t.bounded.push_back(S.un.zonk(f));
        t.head = S.un.zonk(n->triple->head);
        int principal;
        std::vector<int> Drest = D;
        if (n->rule == Rule::BCb) {
          principal = pos_in(D, n->dprincipal);
          Drest.erase(Drest.begin() + principal);
        } else {
          TermPtr cl = S.un.zonk(n->gamma[n->gprincipal]);
          principal = -1;
          for (size_t i = 0; i < con.gamma.size(); ++i)
            if (term_eq(con.gamma[i], cl)) {
              principal = (int)i;
              break;
            }
          if (principal < 0) throw std::logic_error("engine: principal clause lost");
        }
        if (want_trace) trace.push_back({n->rule, n->clause_id, con.goal});
        std::vector<ProofPtr> prems;
        prems.reserve(n->prems.size());
        for (size_t j = 0; j < n->n_unbounded; ++j) prems.push_back(assign(n->prems[j], {}));
        auto parts = distribute(n->prems, n->n_unbounded, std::move(Drest));
        for (size_t j = n->n_unbounded; j < n->prems.size(); ++j)
          prems.push_back(assign(n->prems[j], parts[j - n->n_unbounded]));
        return mk_node(n->rule, std::move(con), std::move(prems), principal, {}, nullptr,
                       std::move(t));
      }
      default:
        throw std::logic_error("engine: unexpected rule in reconstruction");
    }
  }

  void ground_all(const SPtr& n) {
    S.un.ground(n->goal);
    if (n->witness) S.un.ground(n->witness);
    if (n->triple) {
      for (const auto& f : n->triple->unbounded) S.un.ground(f);
      for (const auto& f : n->triple->bounded) S.un.ground(f);
      S.un.ground(n->triple->head);
    }
    for (const auto& f : n->gamma) S.un.ground(f);
    for (const auto& p : n->prems) ground_all(p);
  }
};

ProveResult prove_impl(const std::vector<TermPtr>& gamma, const std::vector<TermPtr>& delta,
                       const TermPtr& goal, const SearchConfig& cfg) {
  if (cfg.budget < 1) throw EngineError("budget must be at least 1");
  for (const auto& c : gamma)
    if (!is_clause(c)) throw EngineError("not a clause: " + formula_str(c));
  for (const auto& c : delta)
    if (!is_clause(c)) throw EngineError("not a clause: " + formula_str(c));
  if (!is_goal(goal)) throw EngineError("not a goal: " + formula_str(goal));

  Search S(cfg);
  for (const auto& c : gamma) collect_names(c, S.un);
  for (const auto& c : delta) collect_names(c, S.un);
  collect_names(goal, S.un);
  // metavariables the caller wrote into the query stay theirs
  for (const auto& c : gamma) S.un.reserve_metas(c);
  for (const auto& c : delta) S.un.reserve_metas(c);
  S.un.reserve_metas(goal);

  for (size_t i = 0; i < gamma.size(); ++i) {
    std::string id = i < cfg.gamma_names.size() ? cfg.gamma_names[i] : "G" + std::to_string(i + 1);
    S.gamma.emplace_back(gamma[i], std::move(id));
  }
  for (size_t i = 0; i < delta.size(); ++i) {
    std::string id = i < cfg.delta_names.size() ? cfg.delta_names[i] : "D" + std::to_string(i + 1);
    S.avail.push_back({delta[i], std::move(id)});
  }

  ProveResult result;
  SPtr root;
  bool proved = S.solve(goal, 0, root, [&]() {
    // the whole bounded context must be used up, or fall to slack
    for (size_t i = 0; i < delta.size(); ++i)
      if (!S.avail[i].consumed && !Search::has_slack(root)) return false;
    Finalizer fin{S, cfg.trace, {}};
    for (auto& e : S.avail) S.un.ground(e.clause);
    fin.ground_all(root);
    std::vector<int> D(delta.size());
    for (size_t i = 0; i < delta.size(); ++i) D[i] = (int)i;
    result.proof = fin.assign(root, std::move(D));
    result.trace = std::move(fin.trace);
    return true;
  });

  if (proved) {
    result.status = ProveStatus::Proved;
    result.bc_nodes = count_rule(result.proof, Rule::BCu) + count_rule(result.proof, Rule::BCb);
  } else {
    result.status = S.truncated ? ProveStatus::BudgetExhausted : ProveStatus::Unprovable;
  }
  return result;
}

}  // namespace

ProveResult prove(const std::vector<TermPtr>& gamma, const std::vector<TermPtr>& delta,
                  const TermPtr& goal, const SearchConfig& cfg) {
  // The search recurses once per live BC node, so a default-sized native
  // stack overflows long before a large budget runs out on a divergent
  // query.  Run it on a thread with room for the worst case instead.
  struct Job {
    const std::vector<TermPtr>& gamma;
    const std::vector<TermPtr>& delta;
    const TermPtr& goal;
    const SearchConfig& cfg;
    ProveResult result;
    std::exception_ptr error;
  } job{gamma, delta, goal, cfg, {}, nullptr};

  auto body = [](void* arg) -> void* {
    Job* j = static_cast<Job*>(arg);
    try {
      j->result = prove_impl(j->gamma, j->delta, j->goal, j->cfg);
    } catch (...) {
      j->error = std::current_exception();
    }
    return nullptr;
  };

  pthread_attr_t attr;
  pthread_t tid;
  bool threaded = pthread_attr_init(&attr) == 0;
  if (threaded) {
    pthread_attr_setstacksize(&attr, std::size_t(2) << 30);
    threaded = pthread_create(&tid, &attr, body, &job) == 0;
    pthread_attr_destroy(&attr);
  }
  if (threaded)
    pthread_join(tid, nullptr);
  else
    job.result = prove_impl(gamma, delta, goal, cfg);
  if (job.error) std::rethrow_exception(job.error);
  return job.result;
}

}  // namespace lolli
