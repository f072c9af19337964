#pragma once

// Shared test helpers: environment lookups, deterministic random formula
// generation, and workspace comparison.

#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "tgc/report.hpp"

namespace tgctest {

inline std::string env_or(const char* var, const char* fallback) {
  const char* v = std::getenv(var);
  return v && *v ? v : fallback;
}

inline std::string corpus_dir() { return env_or("TGC_CORPUS_DIR", "corpus"); }
inline std::string data_dir() { return env_or("TGC_DATA_DIR", "tests/data"); }
inline std::string tgc_bin() { return env_or("TGC_BIN", "build/tgc"); }

inline tgc::LoadResult load_corpus(std::vector<std::string> extra = {}) {
  std::vector<std::string> paths{corpus_dir()};
  for (auto& e : extra) paths.push_back(std::move(e));
  return tgc::load_paths(paths);
}

// ---------------------------------------------------------------------------
// Random closed formulas over a signature.  Terms are built from quantified
// variables in scope, constants, and function applications; equations compare
// same-sorted terms.  Everything is driven by a seeded mt19937_64.

class Gen {
 public:
  Gen(const tgc::Signature& sig, std::uint64_t seed) : sig_(sig), rng_(seed) {
    for (const auto& s : sig.sorts()) sorts_.push_back(s);
  }

  std::mt19937_64& rng() { return rng_; }

  tgc::TermPtr term(const std::string& sort, int depth) {
    std::vector<size_t> in_scope;
    for (size_t i = 0; i < scope_.size(); ++i)
      if (scope_[i].second == sort) in_scope.push_back(i);
    using NamedFunc = std::pair<const std::string*, const tgc::FuncDecl*>;
    std::vector<NamedFunc> ctors, apps;
    for (const auto& [name, d] : sig_.functions()) {
      if (d.result != sort) continue;
      (d.args.empty() ? ctors : apps).emplace_back(&name, &d);
    }
    bool may_app = depth > 0 && !apps.empty();
    int kinds = (in_scope.empty() ? 0 : 1) + (ctors.empty() ? 0 : 1) +
                (may_app ? 2 : 0);
    // Fall back to any constant-producing path; signatures used in tests
    // always have one.
    int pick = kinds ? pick_int(0, kinds - 1) : 0;
    if (!in_scope.empty()) {
      if (pick == 0) {
        const auto& [n, s] = scope_[in_scope[pick_int(0, int(in_scope.size()) - 1)]];
        return tgc::mk_var(n, s);
      }
      --pick;
    }
    if (!ctors.empty()) {
      if (pick == 0 || !may_app) {
        NamedFunc d = ctors[pick_int(0, int(ctors.size()) - 1)];
        return tgc::mk_app(*d.first);
      }
      --pick;
    }
    NamedFunc d = apps[pick_int(0, int(apps.size()) - 1)];
    std::vector<tgc::TermPtr> args;
    for (const auto& a : d.second->args) args.push_back(term(a, depth - 1));
    return tgc::mk_app(*d.first, std::move(args));
  }

  tgc::FormulaPtr atom(int term_depth) {
    // predicates when available, otherwise an equation
    std::vector<const std::pair<const std::string, std::vector<std::string>>*> preds;
    for (const auto& p : sig_.predicates()) preds.push_back(&p);
    if (!preds.empty() && pick_int(0, 2) == 0) {
      const auto* p = preds[pick_int(0, int(preds.size()) - 1)];
      std::vector<tgc::TermPtr> args;
      for (const auto& s : p->second) args.push_back(term(s, term_depth));
      return tgc::mk_pred(p->first, std::move(args));
    }
    const std::string& s = sorts_[pick_int(0, int(sorts_.size()) - 1)];
    return tgc::mk_eq(term(s, term_depth), term(s, term_depth));
  }

  tgc::FormulaPtr formula(int depth) {
    if (depth <= 0) {
      int k = pick_int(0, 9);
      if (k == 0) return tgc::mk_truth();
      if (k == 1) return tgc::mk_falsity();
      return atom(1);
    }
    switch (pick_int(0, 6)) {
      case 0: return atom(2);
      case 1: return tgc::mk_not(formula(depth - 1));
      case 2:
        return tgc::mk_bin(tgc::BinOp::And, formula(depth - 1), formula(depth - 1));
      case 3:
        return tgc::mk_bin(tgc::BinOp::Or, formula(depth - 1), formula(depth - 1));
      case 4:
        return tgc::mk_bin(tgc::BinOp::Implies, formula(depth - 1),
                           formula(depth - 1));
      case 5:
        return tgc::mk_bin(tgc::BinOp::Iff, formula(depth - 1), formula(depth - 1));
      default: {
        const std::string& s = sorts_[pick_int(0, int(sorts_.size()) - 1)];
        std::string v = "x" + std::to_string(++counter_);
        scope_.emplace_back(v, s);
        tgc::FormulaPtr body = formula(depth - 1);
        scope_.pop_back();
        auto q = pick_int(0, 1) ? tgc::Quant::Forall : tgc::Quant::Exists;
        return tgc::mk_quant(q, v, s, std::move(body));
      }
    }
  }

  // Closed by construction: the scope starts empty and atoms only draw from it.
  tgc::FormulaPtr closed_formula(int depth) { return formula(depth); }

 private:
  int pick_int(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng_);
  }

  const tgc::Signature& sig_;
  std::mt19937_64 rng_;
  std::vector<std::string> sorts_;
  std::vector<std::pair<std::string, std::string>> scope_;
  int counter_ = 0;
};

// ---------------------------------------------------------------------------

inline bool theory_equiv(const tgc::Theory& a, const tgc::Theory& b) {
  if (a.id != b.id || a.logic != b.logic) return false;
  if (a.axioms.size() != b.axioms.size()) return false;
  for (const auto& [name, f] : a.axioms) {
    const tgc::FormulaPtr* g = b.axioms.find(name);
    if (!g || !tgc::alpha_eq(f, *g)) return false;
  }
  if (a.theorems.size() != b.theorems.size()) return false;
  for (const auto& [name, e] : a.theorems) {
    const tgc::TheoremEntry* g = b.theorems.find(name);
    if (!g || !tgc::alpha_eq(e.formula, g->formula)) return false;
    if (e.provenance.kind != g->provenance.kind) return false;
  }
  return true;
}

inline bool morphism_equiv(const tgc::Morphism& a, const tgc::Morphism& b) {
  if (a.id != b.id || a.source != b.source || a.target != b.target) return false;
  if (a.assignment.sorts != b.assignment.sorts) return false;
  if (a.assignment.functions.size() != b.assignment.functions.size()) return false;
  for (const auto& [n, t] : a.assignment.functions) {
    auto it = b.assignment.functions.find(n);
    if (it == b.assignment.functions.end() || !tgc::term_eq(t, it->second))
      return false;
  }
  if (a.assignment.predicates.size() != b.assignment.predicates.size())
    return false;
  for (const auto& [n, f] : a.assignment.predicates) {
    auto it = b.assignment.predicates.find(n);
    if (it == b.assignment.predicates.end() || !tgc::alpha_eq(f, it->second))
      return false;
  }
  if (a.obligations.size() != b.obligations.size()) return false;
  for (size_t i = 0; i < a.obligations.size(); ++i)
    if (a.obligations[i].axiom != b.obligations[i].axiom ||
        a.obligations[i].status != b.obligations[i].status)
      return false;
  return true;
}

inline bool workspace_equiv(const tgc::Workspace& a, const tgc::Workspace& b) {
  if (a.graph.theories.size() != b.graph.theories.size()) return false;
  for (const auto& [id, t] : a.graph.theories) {
    const tgc::Theory* u = b.graph.theories.find(id);
    if (!u || !theory_equiv(t, *u)) return false;
  }
  if (a.graph.morphisms.size() != b.graph.morphisms.size()) return false;
  for (const auto& [id, m] : a.graph.morphisms) {
    const tgc::Morphism* n = b.graph.morphisms.find(id);
    if (!n || !morphism_equiv(m, *n)) return false;
  }
  if (a.derivations.size() != b.derivations.size()) return false;
  if (a.checks.size() != b.checks.size()) return false;
  if (a.docs.size() != b.docs.size()) return false;
  if (a.statements.size() != b.statements.size()) return false;
  for (size_t i = 0; i < a.statements.size(); ++i)
    if (a.statements[i].theory != b.statements[i].theory ||
        a.statements[i].name != b.statements[i].name ||
        !tgc::alpha_eq(a.statements[i].formula, b.statements[i].formula))
      return false;
  return true;
}

// A small signature shared by the kernel exemplars: one sort, a unary
// function, a constant, and two predicates.
inline tgc::Signature toy_signature() {
  tgc::Signature sig;
  sig.add_sort("S");
  sig.add_function("c", {}, "S");
  sig.add_function("f", {"S"}, "S");
  sig.add_predicate("P", {"S"});
  sig.add_predicate("Q", {"S"});
  return sig;
}

}  // namespace tgctest
