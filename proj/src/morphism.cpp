#include "tgc/morphism.hpp"

#include <algorithm>

namespace tgc {

const char* name(ObligationStatus s) {
  switch (s) {
    case ObligationStatus::Pending: return "pending";
    case ObligationStatus::Proved: return "proved";
    case ObligationStatus::ByAxiom: return "by-axiom";
    case ObligationStatus::Assumed: return "assumed";
    case ObligationStatus::ByComposition: return "by-composition";
  }
  return "?";
}

namespace {

std::string param_name(size_t i) { return "p" + std::to_string(i + 1); }

const std::string& mapped_sort(const Assignment& a, const std::string& s) {
  auto it = a.sorts.find(s);
  if (it == a.sorts.end())
    throw Error(ErrCode::UnmappedSymbol, "sort '" + s + "' has no image");
  return it->second;
}

}  // namespace

void validate_assignment(const Assignment& a, const Signature& source,
                         const Signature& target) {
  for (const auto& s : source.sorts()) {
    auto it = a.sorts.find(s);
    if (it == a.sorts.end())
      throw Error(ErrCode::UnmappedSymbol, "sort '" + s + "' has no image");
    if (!target.has_sort(it->second))
      throw Error(ErrCode::IllTypedAssignment,
                  "sort '" + s + "' maps to unknown target sort '" + it->second + "'");
  }
  for (const auto& [fn, decl] : source.functions()) {
    auto it = a.functions.find(fn);
    if (it == a.functions.end())
      throw Error(ErrCode::UnmappedSymbol, "function '" + fn + "' has no image");
    VarCtx ctx;
    for (size_t i = 0; i < decl.args.size(); ++i)
      ctx[param_name(i)] = mapped_sort(a, decl.args[i]);
    std::string got;
    try {
      got = wf_term(target, ctx, it->second);
    } catch (const Error& e) {
      throw Error(ErrCode::IllTypedAssignment,
                  "image of function '" + fn + "': " + e.message());
    }
    if (got != mapped_sort(a, decl.result))
      throw Error(ErrCode::IllTypedAssignment,
                  "image of function '" + fn + "' has sort " + got +
                      ", expected " + mapped_sort(a, decl.result));
    for (const auto& [vn, vs] : free_vars(it->second))
      if (!ctx.count(vn))
        throw Error(ErrCode::IllTypedAssignment,
                    "image of function '" + fn + "' mentions stray variable '" +
                        vn + "'");
  }
  for (const auto& [pn, args] : source.predicates()) {
    auto it = a.predicates.find(pn);
    if (it == a.predicates.end())
      throw Error(ErrCode::UnmappedSymbol, "predicate '" + pn + "' has no image");
    VarCtx ctx;
    for (size_t i = 0; i < args.size(); ++i)
      ctx[param_name(i)] = mapped_sort(a, args[i]);
    try {
      wf_formula(target, ctx, it->second);
    } catch (const Error& e) {
      throw Error(ErrCode::IllTypedAssignment,
                  "image of predicate '" + pn + "': " + e.message());
    }
    for (const auto& [vn, vs] : free_vars(it->second))
      if (!ctx.count(vn))
        throw Error(ErrCode::IllTypedAssignment,
                    "image of predicate '" + pn + "' mentions stray variable '" +
                        vn + "'");
  }
}

TermPtr translate_term(const Assignment& a, const TermPtr& t) {
  if (const Var* v = std::get_if<Var>(&t->node))
    return mk_var(v->name, mapped_sort(a, v->sort));
  const App& app = std::get<App>(t->node);
  auto it = a.functions.find(app.fn);
  if (it == a.functions.end())
    throw Error(ErrCode::UnmappedSymbol, "function '" + app.fn + "' has no image");
  Subst s;
  for (size_t i = 0; i < app.args.size(); ++i)
    s[param_name(i)] = translate_term(a, app.args[i]);
  return substitute(it->second, s);
}

FormulaPtr translate_formula(const Assignment& a, const FormulaPtr& f) {
  if (const Pred* p = std::get_if<Pred>(&f->node)) {
    auto it = a.predicates.find(p->name);
    if (it == a.predicates.end())
      throw Error(ErrCode::UnmappedSymbol,
                  "predicate '" + p->name + "' has no image");
    Subst s;
    for (size_t i = 0; i < p->args.size(); ++i)
      s[param_name(i)] = translate_term(a, p->args[i]);
    return substitute(it->second, s);
  }
  if (const Eq* e = std::get_if<Eq>(&f->node))
    return mk_eq(translate_term(a, e->lhs), translate_term(a, e->rhs));
  if (std::get_if<Truth>(&f->node)) return mk_truth();
  if (std::get_if<Falsity>(&f->node)) return mk_falsity();
  if (const Not* n = std::get_if<Not>(&f->node))
    return mk_not(translate_formula(a, n->body));
  if (const Bin* b = std::get_if<Bin>(&f->node))
    return mk_bin(b->op, translate_formula(a, b->lhs), translate_formula(a, b->rhs));
  const Quantified& q = std::get<Quantified>(f->node);
  return mk_quant(q.q, q.var, mapped_sort(a, q.sort), translate_formula(a, q.body));
}

std::vector<Obligation> generate_obligations(const Assignment& a,
                                             const Theory& source,
                                             const Theory& target) {
  std::vector<Obligation> out;
  for (const auto& [name, ax] : source.axioms) {
    Obligation o;
    o.axiom = name;
    o.translated = translate_formula(a, ax);
    for (const auto& [tname, tax] : target.axioms) {
      if (alpha_eq(o.translated, tax)) {
        o.status = ObligationStatus::ByAxiom;
        o.target_axiom = tname;
        break;
      }
    }
    out.push_back(std::move(o));
  }
  return out;
}

Obligation discharge_by_axiom(const Obligation& o, const std::string& axiom_name,
                              const Theory& target) {
  const FormulaPtr* ax = target.axioms.find(axiom_name);
  if (!ax)
    throw Error(ErrCode::NoSuchAxiom,
                "target theory " + target.id + " has no axiom '" + axiom_name + "'");
  if (!alpha_eq(*ax, o.translated))
    throw Error(ErrCode::AxiomNotAlphaEqual,
                "axiom '" + axiom_name + "' is not alpha-equal to the translated " +
                    "obligation for '" + o.axiom + "'");
  Obligation out = o;
  out.status = ObligationStatus::ByAxiom;
  out.target_axiom = axiom_name;
  out.derivation = nullptr;
  out.reason.clear();
  return out;
}

Obligation discharge_proved(const Obligation& o,
                            std::shared_ptr<const Derivation> d,
                            const Theory& target) {
  Sequent root = check_derivation(target.signature, target.axioms, *d);
  if (!root.hyps.empty())
    throw Error(ErrCode::DerivationMismatch,
                "obligation derivation for '" + o.axiom + "' leaves open hypotheses");
  if (!alpha_eq(root.concl, o.translated))
    throw Error(ErrCode::DerivationMismatch,
                "obligation derivation for '" + o.axiom + "' concludes " +
                    to_text(root.concl) + ", not " + to_text(o.translated));
  Obligation out = o;
  out.status = ObligationStatus::Proved;
  out.derivation = std::move(d);
  out.target_axiom.clear();
  out.reason.clear();
  return out;
}

Obligation discharge_assumed(const Obligation& o, std::string reason) {
  Obligation out = o;
  out.status = ObligationStatus::Assumed;
  out.reason = std::move(reason);
  out.derivation = nullptr;
  out.target_axiom.clear();
  return out;
}

VerificationStatus verify(const Morphism& m) {
  VerificationStatus st;
  for (const auto& o : m.obligations) {
    switch (o.status) {
      case ObligationStatus::Pending:
        st.pending.push_back(o.axiom);
        break;
      case ObligationStatus::Assumed:
        st.assumed.push_back(o.axiom);
        break;
      default:
        break;
    }
  }
  st.verified = st.pending.empty() && st.assumed.empty();
  return st;
}

Morphism compose(const Morphism& m1, const Morphism& m2, const Theory& source,
                 const Theory& target, const std::string& id) {
  if (m1.target != m2.source)
    throw Error(ErrCode::TheoryMismatch,
                "cannot compose " + m1.id + " : .. -> " + m1.target + " with " +
                    m2.id + " : " + m2.source + " -> ..");
  if (m1.source != source.id || m2.target != target.id)
    throw Error(ErrCode::TheoryMismatch,
                "endpoint theories do not match the morphisms being composed");

  Assignment c;
  for (const auto& [s, img] : m1.assignment.sorts) {
    auto it = m2.assignment.sorts.find(img);
    if (it == m2.assignment.sorts.end())
      throw Error(ErrCode::UnmappedSymbol,
                  "sort '" + img + "' has no image under " + m2.id);
    c.sorts[s] = it->second;
  }
  for (const auto& [fn, img] : m1.assignment.functions)
    c.functions[fn] = translate_term(m2.assignment, img);
  for (const auto& [pn, img] : m1.assignment.predicates)
    c.predicates[pn] = translate_formula(m2.assignment, img);

  Morphism out;
  out.id = id.empty() ? m1.id + "." + m2.id : id;
  out.source = m1.source;
  out.target = m2.target;
  out.assignment = std::move(c);
  out.obligations = generate_obligations(out.assignment, source, target);

  // An axiom that held along both legs holds along the composite; record that
  // without re-proving, but only when both inputs are fully verified.
  if (verify(m1).verified && verify(m2).verified) {
    for (auto& o : out.obligations)
      if (o.status == ObligationStatus::Pending)
        o.status = ObligationStatus::ByComposition;
  }
  return out;
}

bool is_inclusion(const Morphism& m, const Theory& source, const Theory& target) {
  if (!extends(target, source)) return false;
  for (const auto& [s, img] : m.assignment.sorts)
    if (s != img) return false;
  for (const auto& [fn, img] : m.assignment.functions) {
    const FuncDecl* d = source.signature.function(fn);
    if (!d) return false;
    std::vector<TermPtr> params;
    for (size_t i = 0; i < d->args.size(); ++i)
      params.push_back(mk_var(param_name(i), d->args[i]));
    if (!term_eq(img, mk_app(fn, params))) return false;
  }
  for (const auto& [pn, img] : m.assignment.predicates) {
    const std::vector<std::string>* args = source.signature.predicate(pn);
    if (!args) return false;
    std::vector<TermPtr> params;
    for (size_t i = 0; i < args->size(); ++i)
      params.push_back(mk_var(param_name(i), (*args)[i]));
    if (!formula_eq(img, mk_pred(pn, params))) return false;
  }
  return true;
}

Morphism identity_morphism(const Theory& t, const std::string& id) {
  Morphism m;
  m.id = id;
  m.source = t.id;
  m.target = t.id;
  for (const auto& s : t.signature.sorts()) m.assignment.sorts[s] = s;
  for (const auto& [fn, d] : t.signature.functions()) {
    std::vector<TermPtr> params;
    for (size_t i = 0; i < d.args.size(); ++i)
      params.push_back(mk_var(param_name(i), d.args[i]));
    m.assignment.functions[fn] = mk_app(fn, std::move(params));
  }
  for (const auto& [pn, args] : t.signature.predicates()) {
    std::vector<TermPtr> params;
    for (size_t i = 0; i < args.size(); ++i)
      params.push_back(mk_var(param_name(i), args[i]));
    m.assignment.predicates[pn] = mk_pred(pn, std::move(params));
  }
  m.obligations = generate_obligations(m.assignment, t, t);
  return m;
}

}  // namespace tgc
