#pragma once

// First-order unification with occurs check and eigenvariable scoping.
//
// The unifier owns metavariable numbering and the binding store.  Every
// metavariable remembers the eigenvariable serial current at its creation;
// it may only be bound to terms whose eigenvariables carry a serial at or
// below that watermark, and binding a term that contains younger
// metavariables lowers their watermark.  A trail makes bindings and
// watermark changes undoable for chronological backtracking.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "lolli/term.hpp"

namespace lolli {

class Unifier {
 public:
  TermPtr fresh_meta(const TypePtr& ty);
  // eigenvariable constant: next scope serial, name unused so far
  TermPtr fresh_eigen(const std::string& hint, const TypePtr& ty);
  // ordinary constant with an unused name and no scope restriction
  TermPtr fresh_plain(const std::string& hint, const TypePtr& ty);
  void reserve_name(const std::string& name);
  // keeps fresh_meta clear of metavariables already present in t
  void reserve_metas(const TermPtr& t);

  std::size_t mark() const { return trail_.size(); }
  void undo_to(std::size_t m);

  bool unify(const TermPtr& a, const TermPtr& b);
  bool is_bound(int id) const { return subst_.count(id) != 0; }
  TermPtr walk(TermPtr t) const;         // dereference a bound meta at the head
  TermPtr zonk(const TermPtr& t) const;  // deep application of all bindings
  // binds every metavariable still unbound in t to a fresh plain constant
  void ground(const TermPtr& t);

 private:
  struct TrailEntry {
    int id;
    bool scope_change;
    int old_scope;
  };
  std::map<int, TermPtr> subst_;
  std::map<int, int> scope_;  // meta id -> eigen serial watermark
  std::vector<TrailEntry> trail_;
  std::set<std::string> names_;
  int next_meta_ = 0;
  int eigen_serial_ = 0;
  bool bindable(int id, int watermark, const TermPtr& t);
  void bind(int id, const TermPtr& t);
};

}  // namespace lolli
