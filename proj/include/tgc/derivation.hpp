#pragma once

// Natural-deduction derivations and the kernel checker.  A derivation is an
// explicit list of steps; each step names a rule, earlier steps as premises,
// and the full sequent it claims.  check_derivation recomputes what the rule
// actually produces and rejects any step whose claim differs, so a derivation
// that passes is correct independent of whatever produced it.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tgc/expr.hpp"
#include "tgc/ordered_map.hpp"

namespace tgc {

struct Sequent {
  std::vector<FormulaPtr> hyps;
  FormulaPtr concl;
};

// Hypothesis lists are treated as sets up to alpha-equivalence.
bool hyp_member(const std::vector<FormulaPtr>& hs, const FormulaPtr& f);
std::vector<FormulaPtr> hyp_union(const std::vector<FormulaPtr>& a,
                                  const std::vector<FormulaPtr>& b);
std::vector<FormulaPtr> hyp_minus(const std::vector<FormulaPtr>& hs,
                                  const FormulaPtr& f);
bool hyp_set_eq(const std::vector<FormulaPtr>& a, const std::vector<FormulaPtr>& b);
std::string to_text(const Sequent& s);

enum class Rule {
  Hypothesis,
  Axiom,
  AndIntro,
  AndElimLeft,
  AndElimRight,
  OrIntroLeft,
  OrIntroRight,
  OrElim,
  ImplIntro,
  ImplElim,
  IffIntro,
  IffElimLeft,
  IffElimRight,
  NegIntro,
  NegElim,
  TruthIntro,
  FalsityElim,
  ClassicalContradiction,
  ForallIntro,
  ForallElim,
  ExistsIntro,
  ExistsElim,
  EqRefl,
  EqSubst,
};

const char* rule_name(Rule r);
std::optional<Rule> rule_from_name(const std::string& name);

struct VarBind {
  std::string name;
  std::string sort;
};

struct Step {
  std::string label;
  Rule rule = Rule::Hypothesis;
  std::vector<size_t> premises;      // indices of earlier steps
  std::vector<TermPtr> terms;        // [t] parameters
  std::optional<VarBind> var;        // eigenvariable / substitution marker
  FormulaPtr formula;                // eq-subst template
  std::string axiom;                 // axiom name for Rule::Axiom
  Sequent claimed;
};

struct Derivation {
  std::vector<Step> steps;  // root is the last step
};

using AxiomMap = OrderedMap<FormulaPtr>;

// Validates every step and returns the root sequent (always the last step's,
// which by then has been confirmed).  Throws Error with codes
// BadRuleApplication, EigenvariableViolation, UnknownAxiom, or
// IllFormedFormula; the failing step's label is included in the message.
Sequent check_derivation(const Signature& sig, const AxiomMap& axioms,
                         const Derivation& d);

// Names of axiom leaves appearing in the derivation, in step order, deduped.
std::vector<std::string> axiom_leaves(const Derivation& d);

}  // namespace tgc
