#include "lolli/unify.hpp"

namespace lolli {

TermPtr Unifier::fresh_meta(const TypePtr& ty) {
  int id = next_meta_++;
  scope_[id] = eigen_serial_;
  return mk_meta(id, ty);
}

TermPtr Unifier::fresh_eigen(const std::string& hint, const TypePtr& ty) {
  std::string base = hint.empty() ? "c" : hint;
  std::string name;
  do {
    name = base + std::to_string(++eigen_serial_);
  } while (names_.count(name));
  names_.insert(name);
  return mk_const(name, ty, false, eigen_serial_);
}

TermPtr Unifier::fresh_plain(const std::string& hint, const TypePtr& ty) {
  std::string base = hint.empty() ? "u" : hint;
  std::string name = base;
  for (int k = 1; names_.count(name); ++k) name = base + std::to_string(k);
  names_.insert(name);
  return mk_const(name, ty);
}

void Unifier::reserve_name(const std::string& name) { names_.insert(name); }

void Unifier::reserve_metas(const TermPtr& t) {
  std::vector<int> ids;
  collect_metas(t, ids);
  for (int id : ids)
    if (id >= next_meta_) next_meta_ = id + 1;
}

void Unifier::undo_to(std::size_t m) {
  while (trail_.size() > m) {
    TrailEntry e = trail_.back();
    trail_.pop_back();
    if (e.scope_change)
      scope_[e.id] = e.old_scope;
    else
      subst_.erase(e.id);
  }
}

TermPtr Unifier::walk(TermPtr t) const {
  while (t->kind == TermKind::Meta) {
    auto it = subst_.find(t->idx);
    if (it == subst_.end()) break;
    t = it->second;
  }
  return t;
}

TermPtr Unifier::zonk(const TermPtr& t0) const {
  TermPtr t = walk(t0);
  switch (t->kind) {
    case TermKind::Abs: {
      TermPtr body = zonk(t->t1);
      return body == t->t1 ? t : mk_abs(t->name, t->type, body);
    }
    case TermKind::App: {
      TermPtr f = zonk(t->t1), a = zonk(t->t2);
      return (f == t->t1 && a == t->t2) ? t : mk_app(f, a);
    }
    default:
      return t;
  }
}

void Unifier::ground(const TermPtr& t0) {
  TermPtr t = walk(t0);
  switch (t->kind) {
    case TermKind::Meta:
      bind(t->idx, fresh_plain("u", t->type));
      return;
    case TermKind::Abs:
      ground(t->t1);
      return;
    case TermKind::App:
      ground(t->t1);
      ground(t->t2);
      return;
    default:
      return;
  }
}

// occurs check plus scope discipline: t may not contain id itself, nor an
// eigenvariable younger than the watermark; other unbound metavariables in
// t get their watermark lowered (trailed) so they stay bindable soundly
bool Unifier::bindable(int id, int watermark, const TermPtr& t0) {
  TermPtr t = walk(t0);
  switch (t->kind) {
    case TermKind::Meta: {
      if (t->idx == id) return false;
      int& sc = scope_[t->idx];
      if (sc > watermark) {
        trail_.push_back({t->idx, true, sc});
        sc = watermark;
      }
      return true;
    }
    case TermKind::Const:
      return t->idx <= watermark;
    case TermKind::Abs:
      return bindable(id, watermark, t->t1);
    case TermKind::App:
      return bindable(id, watermark, t->t1) && bindable(id, watermark, t->t2);
    default:
      return true;
  }
}

void Unifier::bind(int id, const TermPtr& t) {
  subst_[id] = t;
  trail_.push_back({id, false, 0});
}

bool Unifier::unify(const TermPtr& a0, const TermPtr& b0) {
  TermPtr a = walk(a0), b = walk(b0);
  if (a == b) return true;
  if (a->kind == TermKind::Meta && b->kind == TermKind::Meta) {
    if (a->idx == b->idx) return true;
    // bind the younger to the older
    if (a->idx < b->idx) std::swap(a, b);
    if (!bindable(a->idx, scope_[a->idx], b)) return false;
    bind(a->idx, b);
    return true;
  }
  if (a->kind == TermKind::Meta || b->kind == TermKind::Meta) {
    if (b->kind == TermKind::Meta) std::swap(a, b);
    if (!bindable(a->idx, scope_[a->idx], b)) return false;
    bind(a->idx, b);
    return true;
  }
  if (a->kind != b->kind) {
    // s-successor spines against numerals
    auto succ_num = [this](const TermPtr& app, const TermPtr& num) -> bool {
      if (num->num == 0) return false;
      if (app->t1->kind != TermKind::Const || app->t1->name != "s") return false;
      return unify(app->t2, mk_num(num->num - 1));
    };
    if (a->kind == TermKind::App && b->kind == TermKind::Num) return succ_num(a, b);
    if (b->kind == TermKind::App && a->kind == TermKind::Num) return succ_num(b, a);
    return false;
  }
  switch (a->kind) {
    case TermKind::BVar:
      return a->idx == b->idx;
    case TermKind::FVar:
      return a->name == b->name;
    case TermKind::Const:
      return a->name == b->name;
    case TermKind::Num:
      return a->num == b->num;
    case TermKind::Abs:
      return type_eq(a->type, b->type) && unify(a->t1, b->t1);
    case TermKind::App:
      return unify(a->t1, b->t1) && unify(a->t2, b->t2);
    default:
      return false;
  }
}

}  // namespace lolli
