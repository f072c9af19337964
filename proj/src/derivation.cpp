#include "tgc/derivation.hpp"

#include <algorithm>

namespace tgc {

bool hyp_member(const std::vector<FormulaPtr>& hs, const FormulaPtr& f) {
  for (const auto& h : hs)
    if (alpha_eq(h, f)) return true;
  return false;
}

std::vector<FormulaPtr> hyp_union(const std::vector<FormulaPtr>& a,
                                  const std::vector<FormulaPtr>& b) {
  std::vector<FormulaPtr> out;
  for (const auto& h : a)
    if (!hyp_member(out, h)) out.push_back(h);
  for (const auto& h : b)
    if (!hyp_member(out, h)) out.push_back(h);
  return out;
}

std::vector<FormulaPtr> hyp_minus(const std::vector<FormulaPtr>& hs,
                                  const FormulaPtr& f) {
  std::vector<FormulaPtr> out;
  for (const auto& h : hs)
    if (!alpha_eq(h, f)) out.push_back(h);
  return out;
}

bool hyp_set_eq(const std::vector<FormulaPtr>& a, const std::vector<FormulaPtr>& b) {
  for (const auto& h : a)
    if (!hyp_member(b, h)) return false;
  for (const auto& h : b)
    if (!hyp_member(a, h)) return false;
  return true;
}

std::string to_text(const Sequent& s) {
  std::string out;
  for (size_t i = 0; i < s.hyps.size(); ++i) {
    if (i) out += "; ";
    out += to_text(s.hyps[i]);
  }
  if (!s.hyps.empty()) out += " ";
  out += "|- " + to_text(s.concl);
  return out;
}

const char* rule_name(Rule r) {
  switch (r) {
    case Rule::Hypothesis: return "hypothesis";
    case Rule::Axiom: return "axiom";
    case Rule::AndIntro: return "and-intro";
    case Rule::AndElimLeft: return "and-elim-left";
    case Rule::AndElimRight: return "and-elim-right";
    case Rule::OrIntroLeft: return "or-intro-left";
    case Rule::OrIntroRight: return "or-intro-right";
    case Rule::OrElim: return "or-elim";
    case Rule::ImplIntro: return "impl-intro";
    case Rule::ImplElim: return "impl-elim";
    case Rule::IffIntro: return "iff-intro";
    case Rule::IffElimLeft: return "iff-elim-left";
    case Rule::IffElimRight: return "iff-elim-right";
    case Rule::NegIntro: return "neg-intro";
    case Rule::NegElim: return "neg-elim";
    case Rule::TruthIntro: return "truth-intro";
    case Rule::FalsityElim: return "falsity-elim";
    case Rule::ClassicalContradiction: return "classical-contradiction";
    case Rule::ForallIntro: return "forall-intro";
    case Rule::ForallElim: return "forall-elim";
    case Rule::ExistsIntro: return "exists-intro";
    case Rule::ExistsElim: return "exists-elim";
    case Rule::EqRefl: return "eq-refl";
    case Rule::EqSubst: return "eq-subst";
  }
  return "?";
}

std::optional<Rule> rule_from_name(const std::string& name) {
  static const std::map<std::string, Rule> table = [] {
    std::map<std::string, Rule> t;
    for (int i = 0; i <= static_cast<int>(Rule::EqSubst); ++i)
      t.emplace(rule_name(static_cast<Rule>(i)), static_cast<Rule>(i));
    return t;
  }();
  auto it = table.find(name);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

namespace {

struct StepChecker {
  const Signature& sig;
  const AxiomMap& axioms;
  const Derivation& d;
  size_t idx;
  const Step& step;
  const VarCtx& ctx;

  [[noreturn]] void bad(const std::string& why) const {
    throw Error(ErrCode::BadRuleApplication,
                "step " + step.label + " (" + rule_name(step.rule) + "): " + why);
  }

  [[noreturn]] void eigen(const std::string& why) const {
    throw Error(ErrCode::EigenvariableViolation,
                "step " + step.label + " (" + rule_name(step.rule) + "): " + why);
  }

  const Sequent& premise(size_t k) const {
    if (k >= step.premises.size()) bad("missing premise");
    size_t p = step.premises[k];
    if (p >= idx) bad("premise must be an earlier step");
    return d.steps[p].claimed;
  }

  void need_premises(size_t n) const {
    if (step.premises.size() != n)
      bad("expects " + std::to_string(n) + " premise(s), got " +
          std::to_string(step.premises.size()));
  }

  void need_terms(size_t n) const {
    if (step.terms.size() != n)
      bad("expects " + std::to_string(n) + " term parameter(s), got " +
          std::to_string(step.terms.size()));
  }

  const FormulaPtr& concl() const { return step.claimed.concl; }
  const std::vector<FormulaPtr>& hyps() const { return step.claimed.hyps; }

  void expect_concl(const FormulaPtr& f) const {
    if (!alpha_eq(concl(), f))
      bad("conclusion should be " + to_text(f) + ", claimed " + to_text(concl()));
  }

  void expect_hyps(const std::vector<FormulaPtr>& hs) const {
    if (!hyp_set_eq(hyps(), hs)) bad("hypothesis set does not match the rule");
  }

  // Destructuring helpers on the *claimed* conclusion.
  const Bin& claimed_bin(BinOp op, const char* what) const {
    const Bin* b = std::get_if<Bin>(&concl()->node);
    if (!b || b->op != op) bad(std::string("conclusion must be ") + what);
    return *b;
  }

  const Quantified& claimed_quant(Quant q, const char* what) const {
    const Quantified* qn = std::get_if<Quantified>(&concl()->node);
    if (!qn || qn->q != q) bad(std::string("conclusion must be ") + what);
    return *qn;
  }

  // Destructuring helpers on premise conclusions.
  const Bin& premise_bin(size_t k, BinOp op, const char* what) const {
    const Bin* b = std::get_if<Bin>(&premise(k).concl->node);
    if (!b || b->op != op)
      bad("premise " + std::to_string(k + 1) + " must conclude " + what);
    return *b;
  }

  const Quantified& premise_quant(size_t k, Quant q, const char* what) const {
    const Quantified* qn = std::get_if<Quantified>(&premise(k).concl->node);
    if (!qn || qn->q != q)
      bad("premise " + std::to_string(k + 1) + " must conclude " + what);
    return *qn;
  }

  void premise_falsity(size_t k) const {
    if (!std::get_if<Falsity>(&premise(k).concl->node))
      bad("premise " + std::to_string(k + 1) + " must conclude false");
  }

  std::string term_sort(const TermPtr& t) const {
    try {
      return wf_term(sig, ctx, t);
    } catch (const Error& e) {
      throw Error(ErrCode::IllFormedFormula,
                  "step " + step.label + ": ill-formed term parameter: " +
                      e.message());
    }
  }

  VarBind eigenvar(const std::string& bound, const std::string& sort) const {
    VarBind v = step.var.value_or(VarBind{bound, sort});
    if (v.sort != sort)
      bad("eigenvariable " + v.name + ":" + v.sort + " must have sort " + sort);
    return v;
  }

  void check() {
    switch (step.rule) {
      case Rule::Hypothesis: {
        need_premises(0);
        if (hyps().size() != 1 || !alpha_eq(hyps()[0], concl()))
          bad("sequent must be of the form phi |- phi");
        break;
      }
      case Rule::Axiom: {
        need_premises(0);
        const FormulaPtr* ax = axioms.find(step.axiom);
        if (!ax)
          throw Error(ErrCode::UnknownAxiom,
                      "step " + step.label + ": no axiom named '" + step.axiom + "'");
        expect_concl(*ax);
        expect_hyps({});
        break;
      }
      case Rule::TruthIntro: {
        need_premises(0);
        if (!std::get_if<Truth>(&concl()->node)) bad("conclusion must be true");
        expect_hyps({});
        break;
      }
      case Rule::FalsityElim: {
        need_premises(1);
        premise_falsity(0);
        expect_hyps(premise(0).hyps);
        break;
      }
      case Rule::AndIntro: {
        need_premises(2);
        const Bin& c = claimed_bin(BinOp::And, "a conjunction");
        if (!alpha_eq(c.lhs, premise(0).concl) || !alpha_eq(c.rhs, premise(1).concl))
          bad("conjuncts must match the premises");
        expect_hyps(hyp_union(premise(0).hyps, premise(1).hyps));
        break;
      }
      case Rule::AndElimLeft:
      case Rule::AndElimRight: {
        need_premises(1);
        const Bin& p = premise_bin(0, BinOp::And, "a conjunction");
        expect_concl(step.rule == Rule::AndElimLeft ? p.lhs : p.rhs);
        expect_hyps(premise(0).hyps);
        break;
      }
      case Rule::OrIntroLeft:
      case Rule::OrIntroRight: {
        need_premises(1);
        const Bin& c = claimed_bin(BinOp::Or, "a disjunction");
        const FormulaPtr& grown = step.rule == Rule::OrIntroLeft ? c.lhs : c.rhs;
        if (!alpha_eq(grown, premise(0).concl))
          bad("the retained disjunct must match the premise");
        expect_hyps(premise(0).hyps);
        break;
      }
      case Rule::OrElim: {
        need_premises(3);
        const Bin& p = premise_bin(0, BinOp::Or, "a disjunction");
        if (!alpha_eq(premise(1).concl, concl()) ||
            !alpha_eq(premise(2).concl, concl()))
          bad("both case premises must conclude the claimed formula");
        expect_hyps(hyp_union(premise(0).hyps,
                              hyp_union(hyp_minus(premise(1).hyps, p.lhs),
                                        hyp_minus(premise(2).hyps, p.rhs))));
        break;
      }
      case Rule::ImplIntro: {
        need_premises(1);
        const Bin& c = claimed_bin(BinOp::Implies, "an implication");
        if (!alpha_eq(c.rhs, premise(0).concl))
          bad("consequent must match the premise conclusion");
        expect_hyps(hyp_minus(premise(0).hyps, c.lhs));
        break;
      }
      case Rule::ImplElim: {
        need_premises(2);
        const Bin& p = premise_bin(0, BinOp::Implies, "an implication");
        if (!alpha_eq(premise(1).concl, p.lhs))
          bad("second premise must conclude the antecedent");
        expect_concl(p.rhs);
        expect_hyps(hyp_union(premise(0).hyps, premise(1).hyps));
        break;
      }
      case Rule::IffIntro: {
        need_premises(2);
        const Bin& c = claimed_bin(BinOp::Iff, "a biconditional");
        if (!alpha_eq(premise(0).concl, mk_implies(c.lhs, c.rhs)))
          bad("first premise must conclude the forward implication");
        if (!alpha_eq(premise(1).concl, mk_implies(c.rhs, c.lhs)))
          bad("second premise must conclude the backward implication");
        expect_hyps(hyp_union(premise(0).hyps, premise(1).hyps));
        break;
      }
      case Rule::IffElimLeft:
      case Rule::IffElimRight: {
        need_premises(1);
        const Bin& p = premise_bin(0, BinOp::Iff, "a biconditional");
        expect_concl(step.rule == Rule::IffElimLeft ? mk_implies(p.lhs, p.rhs)
                                                    : mk_implies(p.rhs, p.lhs));
        expect_hyps(premise(0).hyps);
        break;
      }
      case Rule::NegIntro: {
        need_premises(1);
        premise_falsity(0);
        const Not* c = std::get_if<Not>(&concl()->node);
        if (!c) bad("conclusion must be a negation");
        expect_hyps(hyp_minus(premise(0).hyps, c->body));
        break;
      }
      case Rule::NegElim: {
        need_premises(2);
        const Not* p = std::get_if<Not>(&premise(0).concl->node);
        if (!p) bad("premise 1 must conclude a negation");
        if (!alpha_eq(premise(1).concl, p->body))
          bad("premise 2 must conclude the negated formula");
        if (!std::get_if<Falsity>(&concl()->node)) bad("conclusion must be false");
        expect_hyps(hyp_union(premise(0).hyps, premise(1).hyps));
        break;
      }
      case Rule::ClassicalContradiction: {
        need_premises(1);
        premise_falsity(0);
        expect_hyps(hyp_minus(premise(0).hyps, mk_not(concl())));
        break;
      }
      case Rule::ForallIntro: {
        need_premises(1);
        need_terms(0);
        const Quantified& c = claimed_quant(Quant::Forall, "universally quantified");
        VarBind y = eigenvar(c.var, c.sort);
        FormulaPtr instantiated =
            substitute(c.body, Subst{{c.var, mk_var(y.name, c.sort)}});
        if (!alpha_eq(premise(0).concl, instantiated))
          bad("premise must conclude the body instantiated at the eigenvariable");
        for (const auto& h : premise(0).hyps)
          if (occurs_free(y.name, h))
            eigen("eigenvariable " + y.name + " occurs free in hypothesis " +
                  to_text(h));
        if (y.name != c.var && occurs_free(y.name, concl()))
          eigen("eigenvariable " + y.name + " occurs free in the conclusion");
        expect_hyps(premise(0).hyps);
        break;
      }
      case Rule::ForallElim: {
        need_premises(1);
        need_terms(1);
        const Quantified& p = premise_quant(0, Quant::Forall, "a universal");
        std::string ts = term_sort(step.terms[0]);
        if (ts != p.sort)
          bad("instantiating term has sort " + ts + ", the binder needs " + p.sort);
        expect_concl(substitute(p.body, Subst{{p.var, step.terms[0]}}));
        expect_hyps(premise(0).hyps);
        break;
      }
      case Rule::ExistsIntro: {
        need_premises(1);
        need_terms(1);
        const Quantified& c = claimed_quant(Quant::Exists, "existentially quantified");
        std::string ts = term_sort(step.terms[0]);
        if (ts != c.sort)
          bad("witnessing term has sort " + ts + ", the binder needs " + c.sort);
        if (!alpha_eq(premise(0).concl,
                      substitute(c.body, Subst{{c.var, step.terms[0]}})))
          bad("premise must conclude the body instantiated at the witness");
        expect_hyps(premise(0).hyps);
        break;
      }
      case Rule::ExistsElim: {
        need_premises(2);
        const Quantified& p = premise_quant(0, Quant::Exists, "an existential");
        VarBind y = eigenvar(p.var, p.sort);
        FormulaPtr witness_hyp =
            substitute(p.body, Subst{{p.var, mk_var(y.name, p.sort)}});
        if (!alpha_eq(premise(1).concl, concl()))
          bad("second premise must conclude the claimed formula");
        std::vector<FormulaPtr> kept =
            hyp_union(premise(0).hyps, hyp_minus(premise(1).hyps, witness_hyp));
        if (occurs_free(y.name, concl()))
          eigen("eigenvariable " + y.name + " occurs free in the conclusion");
        if (y.name != p.var && occurs_free(y.name, premise(0).concl))
          eigen("eigenvariable " + y.name + " occurs free in the existential");
        for (const auto& h : kept)
          if (occurs_free(y.name, h))
            eigen("eigenvariable " + y.name + " occurs free in hypothesis " +
                  to_text(h));
        expect_hyps(kept);
        break;
      }
      case Rule::EqRefl: {
        need_premises(0);
        need_terms(1);
        term_sort(step.terms[0]);
        const Eq* e = std::get_if<Eq>(&concl()->node);
        if (!e || !alpha_eq(e->lhs, step.terms[0]) || !alpha_eq(e->rhs, step.terms[0]))
          bad("conclusion must equate the given term with itself");
        expect_hyps({});
        break;
      }
      case Rule::EqSubst: {
        need_premises(2);
        if (!step.var) bad("missing substitution marker [v:S]");
        if (!step.formula) bad("missing template formula");
        const Eq* eq = std::get_if<Eq>(&premise(0).concl->node);
        if (!eq) bad("premise 1 must conclude an equality");
        // Template must be well-formed with the marker in scope.
        VarCtx tmpl_ctx = ctx;
        tmpl_ctx[step.var->name] = step.var->sort;
        try {
          wf_formula(sig, tmpl_ctx, step.formula);
        } catch (const Error& e) {
          throw Error(ErrCode::IllFormedFormula,
                      "step " + step.label + ": ill-formed template: " + e.message());
        }
        std::string eq_sort = term_sort(eq->lhs);
        if (eq_sort != step.var->sort)
          bad("marker sort " + step.var->sort + " does not match equality sort " +
              eq_sort);
        FormulaPtr before = substitute(step.formula, Subst{{step.var->name, eq->lhs}});
        FormulaPtr after = substitute(step.formula, Subst{{step.var->name, eq->rhs}});
        if (!alpha_eq(premise(1).concl, before))
          bad("premise 2 must conclude the template at the left-hand side");
        expect_concl(after);
        expect_hyps(hyp_union(premise(0).hyps, premise(1).hyps));
        break;
      }
    }
  }
};

// Every free variable of every claimed formula and parameter must carry one
// consistent sort across the whole derivation; the resulting table is the
// context used for well-formedness.
VarCtx derivation_context(const Derivation& d) {
  VarCtx ctx;
  auto note = [&](const std::pair<std::string, std::string>& v,
                  const std::string& where) {
    auto [it, fresh] = ctx.emplace(v.first, v.second);
    if (!fresh && it->second != v.second)
      throw Error(ErrCode::IllFormedFormula,
                  "variable '" + v.first + "' used at sorts " + it->second +
                      " and " + v.second + " (" + where + ")");
  };
  for (const auto& step : d.steps) {
    for (const auto& h : step.claimed.hyps)
      for (const auto& v : free_vars(h)) note(v, "step " + step.label);
    if (step.claimed.concl)
      for (const auto& v : free_vars(step.claimed.concl))
        note(v, "step " + step.label);
    for (const auto& t : step.terms)
      for (const auto& v : free_vars(t)) note(v, "step " + step.label);
    if (step.formula) {
      for (const auto& v : free_vars(step.formula)) {
        if (step.var && v.first == step.var->name) continue;  // marker is local
        note(v, "step " + step.label);
      }
    }
  }
  return ctx;
}

}  // namespace

Sequent check_derivation(const Signature& sig, const AxiomMap& axioms,
                         const Derivation& d) {
  if (d.steps.empty())
    throw Error(ErrCode::BadRuleApplication, "derivation has no steps");
  VarCtx ctx = derivation_context(d);
  for (size_t i = 0; i < d.steps.size(); ++i) {
    const Step& step = d.steps[i];
    if (!step.claimed.concl)
      throw Error(ErrCode::BadRuleApplication,
                  "step " + step.label + ": missing claimed sequent");
    try {
      for (const auto& h : step.claimed.hyps) wf_formula(sig, ctx, h);
      wf_formula(sig, ctx, step.claimed.concl);
    } catch (const Error& e) {
      throw Error(ErrCode::IllFormedFormula,
                  "step " + step.label + ": " + e.message(), e.path());
    }
    StepChecker{sig, axioms, d, i, step, ctx}.check();
  }
  return d.steps.back().claimed;
}

std::vector<std::string> axiom_leaves(const Derivation& d) {
  std::vector<std::string> out;
  for (const auto& step : d.steps) {
    if (step.rule != Rule::Axiom) continue;
    if (std::find(out.begin(), out.end(), step.axiom) == out.end())
      out.push_back(step.axiom);
  }
  return out;
}

}  // namespace tgc
