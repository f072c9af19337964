#include "tgc/theory.hpp"

namespace tgc {

Provenance Provenance::derived(std::shared_ptr<const Derivation> d) {
  Provenance p;
  p.kind = Kind::Derived;
  p.derivation = std::move(d);
  return p;
}

Provenance Provenance::transported(std::string theory, std::string theorem,
                                   std::vector<std::string> path, bool partial) {
  Provenance p;
  p.kind = Kind::Transported;
  p.source_theory = std::move(theory);
  p.source_theorem = std::move(theorem);
  p.path = std::move(path);
  p.partial = partial;
  return p;
}

Provenance Provenance::assumed(std::string reason) {
  Provenance p;
  p.kind = Kind::Assumed;
  p.reason = std::move(reason);
  return p;
}

Theory make_theory(std::string id, Signature sig, std::string logic) {
  Theory t;
  t.id = std::move(id);
  t.logic = std::move(logic);
  t.signature = std::move(sig);
  return t;
}

namespace {

void check_name_free(const Theory& t, const std::string& name) {
  if (t.axioms.contains(name) || t.theorems.contains(name))
    throw Error(ErrCode::DuplicateName,
                "'" + name + "' already names an axiom or theorem of " + t.id);
}

}  // namespace

Theory add_axiom(const Theory& t, const std::string& name, const FormulaPtr& f) {
  check_name_free(t, name);
  wf_formula(t.signature, {}, f);
  if (!is_closed(f))
    throw Error(ErrCode::OpenFormula, "axiom '" + name + "' has free variables");
  Theory out = t;
  out.axioms.insert(name, f);
  return out;
}

Theory add_theorem(const Theory& t, const std::string& name, const FormulaPtr& f,
                   Provenance prov) {
  check_name_free(t, name);
  wf_formula(t.signature, {}, f);
  if (!is_closed(f))
    throw Error(ErrCode::OpenFormula, "theorem '" + name + "' has free variables");
  if (prov.kind == Provenance::Kind::Derived) {
    if (!prov.derivation)
      throw Error(ErrCode::DerivationMismatch,
                  "theorem '" + name + "' claims a derivation but carries none");
    Sequent root = check_derivation(t.signature, t.axioms, *prov.derivation);
    if (!root.hyps.empty())
      throw Error(ErrCode::DerivationMismatch,
                  "derivation for '" + name + "' leaves open hypotheses");
    if (!alpha_eq(root.concl, f))
      throw Error(ErrCode::DerivationMismatch,
                  "derivation for '" + name + "' concludes " + to_text(root.concl) +
                      ", not " + to_text(f));
  }
  Theory out = t;
  out.theorems.insert(name, TheoremEntry{f, std::move(prov)});
  return out;
}

bool extends(const Theory& ext, const Theory& base) {
  if (ext.logic != base.logic) return false;
  if (!ext.signature.includes(base.signature)) return false;
  for (const auto& [name, f] : base.axioms) {
    const FormulaPtr* g = ext.axioms.find(name);
    if (!g || !alpha_eq(*g, f)) return false;
  }
  return true;
}

}  // namespace tgc
