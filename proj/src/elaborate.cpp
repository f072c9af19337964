#include <map>
#include <set>

#include "tgc/frontend.hpp"

namespace tgc {

std::string diagnostic_code(ErrCode c) {
  switch (c) {
    case ErrCode::UnknownSort: return "E-UNKNOWN-SORT";
    case ErrCode::DuplicateName:
    case ErrCode::DuplicateId:
    case ErrCode::DuplicateTheoryId: return "E-DUP-NAME";
    case ErrCode::OpenFormula: return "E-OPEN-FORMULA";
    case ErrCode::UnknownSymbol:
    case ErrCode::UnknownVariable:
    case ErrCode::ArityMismatch:
    case ErrCode::SortMismatch:
    case ErrCode::EqSortMismatch:
    case ErrCode::IllFormedFormula:
    case ErrCode::IllFormedTheorem: return "E-ILL-FORMED";
    case ErrCode::UnmappedSymbol: return "E-UNMAPPED-SYMBOL";
    case ErrCode::IllTypedAssignment: return "E-ILL-TYPED-ASSIGNMENT";
    case ErrCode::NoSuchAxiom:
    case ErrCode::AxiomNotAlphaEqual:
    case ErrCode::ObligationFailure: return "E-OBLIGATION-FAIL";
    case ErrCode::BadRuleApplication:
    case ErrCode::EigenvariableViolation:
    case ErrCode::UnknownAxiom: return "E-DERIVATION";
    case ErrCode::DerivationMismatch: return "E-THEOREM-MISMATCH";
    case ErrCode::TheoryMismatch: return "E-THEORY-MISMATCH";
    case ErrCode::UnknownTheory:
    case ErrCode::UnknownTheorem:
    case ErrCode::UnknownMorphism:
    case ErrCode::UnknownDerivation:
    case ErrCode::UnknownReference: return "E-UNKNOWN-REF";
    case ErrCode::IllFormedCheck: return "E-ILL-FORMED-CHECK";
    case ErrCode::NotEstablished: return "E-NOT-ESTABLISHED";
    case ErrCode::AssumedContent: return "E-ASSUMED-CONTENT";
    case ErrCode::PathMismatch:
    case ErrCode::UnverifiedPath: return "E-PATH";
    case ErrCode::ParseError: return "E-PARSE";
    case ErrCode::IoError: return "E-IO";
    case ErrCode::UsageError: return "E-USAGE";
    default: return "E-INTERNAL";
  }
}

namespace {

struct ElabDiag {
  Diagnostic d;
};

[[noreturn]] void edie(std::string code, std::string message, SourceSpan span) {
  throw ElabDiag{{Diagnostic::Severity::Error, std::move(code), std::move(message),
                  std::move(span)}};
}

// ---------------------------------------------------------------------------
// Type-directed formula elaboration

// Free variables pinned to the sort their first typed occurrence requires.
struct FreeVarTable {
  std::map<std::string, std::string> pinned;
};

struct FormulaElab {
  const Signature& sig;
  std::map<std::string, std::string> bound;
  FreeVarTable* frees = nullptr;  // nullptr: expression must be closed

  struct Typed {
    TermPtr term;
    std::string sort;
  };

  void check_sort(const std::string& got, const std::optional<std::string>& want,
                  const SourceSpan& span, const std::string& what) {
    if (want && got != *want)
      edie("E-ILL-FORMED", what + " has sort " + got + ", expected " + *want, span);
  }

  Typed term(const STerm& t, const std::optional<std::string>& expected) {
    if (!t.call) {
      auto b = bound.find(t.name);
      if (b != bound.end()) {
        check_sort(b->second, expected, t.span, "variable '" + t.name + "'");
        return {mk_var(t.name, b->second), b->second};
      }
      if (const FuncDecl* d = sig.function(t.name)) {
        if (!d->args.empty())
          edie("E-ILL-FORMED",
               "'" + t.name + "' expects " + std::to_string(d->args.size()) +
                   " argument(s)",
               t.span);
        check_sort(d->result, expected, t.span, "constant '" + t.name + "'");
        return {mk_app(t.name), d->result};
      }
      if (!frees)
        edie("E-OPEN-FORMULA",
             "unknown name '" + t.name +
                 "' (not a bound variable, parameter, or declared constant; "
                 "this expression must be closed)",
             t.span);
      auto p = frees->pinned.find(t.name);
      if (p != frees->pinned.end()) {
        check_sort(p->second, expected, t.span, "variable '" + t.name + "'");
        return {mk_var(t.name, p->second), p->second};
      }
      if (!expected)
        edie("E-AMBIGUOUS-VAR",
             "cannot infer the sort of free variable '" + t.name + "'", t.span);
      frees->pinned[t.name] = *expected;
      return {mk_var(t.name, *expected), *expected};
    }

    const FuncDecl* d = sig.function(t.name);
    if (!d) {
      if (sig.predicate(t.name))
        edie("E-ILL-FORMED", "'" + t.name + "' is a predicate, not a function",
             t.span);
      edie("E-ILL-FORMED", "unknown function '" + t.name + "'", t.span);
    }
    if (d->args.size() != t.args.size())
      edie("E-ILL-FORMED",
           "'" + t.name + "' expects " + std::to_string(d->args.size()) +
               " argument(s), got " + std::to_string(t.args.size()),
           t.span);
    std::vector<TermPtr> args;
    for (size_t i = 0; i < t.args.size(); ++i)
      args.push_back(term(t.args[i], d->args[i]).term);
    check_sort(d->result, expected, t.span, "'" + t.name + "(...)'");
    return {mk_app(t.name, std::move(args)), d->result};
  }

  FormulaPtr formula(const SFormulaPtr& f) {
    if (const SAtom* a = std::get_if<SAtom>(&f->node)) {
      const std::vector<std::string>* args = sig.predicate(a->term.name);
      if (!args) {
        if (sig.function(a->term.name) || bound.count(a->term.name))
          edie("E-ILL-FORMED",
               "'" + a->term.name + "' is a term; a formula was expected", f->span);
        edie("E-ILL-FORMED", "unknown predicate '" + a->term.name + "'", f->span);
      }
      if (args->size() != a->term.args.size())
        edie("E-ILL-FORMED",
             "'" + a->term.name + "' expects " + std::to_string(args->size()) +
                 " argument(s), got " + std::to_string(a->term.args.size()),
             f->span);
      std::vector<TermPtr> elab;
      for (size_t i = 0; i < a->term.args.size(); ++i)
        elab.push_back(term(a->term.args[i], (*args)[i]).term);
      return mk_pred(a->term.name, std::move(elab));
    }
    if (const SEq* e = std::get_if<SEq>(&f->node)) {
      // Sorts flow across '=': if one side cannot fix its own sort, infer it
      // from the other.
      try {
        Typed l = term(e->lhs, std::nullopt);
        Typed r = term(e->rhs, l.sort);
        return mk_eq(l.term, r.term);
      } catch (const ElabDiag& d) {
        if (d.d.code != "E-AMBIGUOUS-VAR") throw;
        Typed r = term(e->rhs, std::nullopt);
        Typed l = term(e->lhs, r.sort);
        return mk_eq(l.term, r.term);
      }
    }
    if (std::get_if<STrue>(&f->node)) return mk_truth();
    if (std::get_if<SFalse>(&f->node)) return mk_falsity();
    if (const SNot* n = std::get_if<SNot>(&f->node)) return mk_not(formula(n->body));
    if (const SBin* b = std::get_if<SBin>(&f->node))
      return mk_bin(b->op, formula(b->lhs), formula(b->rhs));

    const SQuant& q = std::get<SQuant>(f->node);
    // Elaborate under the extended scope, then fold binders right-to-left.
    std::vector<std::pair<std::string, std::optional<std::string>>> saved;
    for (const auto& b : q.binders) {
      if (!sig.has_sort(b.sort))
        edie("E-UNKNOWN-SORT", "unknown sort '" + b.sort + "'", b.sort_span);
      auto it = bound.find(b.var);
      saved.emplace_back(b.var, it == bound.end()
                                    ? std::nullopt
                                    : std::optional<std::string>(it->second));
      bound[b.var] = b.sort;
    }
    FormulaPtr body = formula(q.body);
    for (auto it = saved.rbegin(); it != saved.rend(); ++it) {
      if (it->second)
        bound[it->first] = *it->second;
      else
        bound.erase(it->first);
    }
    for (auto it = q.binders.rbegin(); it != q.binders.rend(); ++it)
      body = mk_quant(q.q, it->var, it->sort, std::move(body));
    return body;
  }
};

// ---------------------------------------------------------------------------
// Declaration elaboration

struct Elaborator {
  const Ast& ast;
  Workspace ws;
  std::vector<Diagnostic> diags;

  std::set<std::string> global_names;
  std::set<size_t> skip;                  // duplicate declarations
  std::set<std::string> deferred;         // derivations checked only at use

  void add_error(std::string code, std::string message, SourceSpan span) {
    diags.push_back({Diagnostic::Severity::Error, std::move(code),
                     std::move(message), std::move(span)});
  }

  void add_warning(std::string code, std::string message, SourceSpan span) {
    diags.push_back({Diagnostic::Severity::Warning, std::move(code),
                     std::move(message), std::move(span)});
  }

  // Runs one elaboration unit, converting thrown diagnostics/errors into
  // entries; returns whether the unit succeeded.
  template <typename F>
  bool guard(const SourceSpan& fallback, F&& f) {
    try {
      f();
      return true;
    } catch (const ElabDiag& d) {
      diags.push_back(d.d);
    } catch (const Error& e) {
      add_error(diagnostic_code(e.code()), e.message(), fallback);
    }
    return false;
  }

  // --- pass 1: names --------------------------------------------------------

  static const Named* decl_name(const Declaration& d) {
    if (const DTheory* t = std::get_if<DTheory>(&d)) return &t->name;
    if (const DMorphism* m = std::get_if<DMorphism>(&d)) return &m->name;
    if (const DDerivation* v = std::get_if<DDerivation>(&d)) return &v->name;
    if (const DProofDoc* p = std::get_if<DProofDoc>(&d)) return &p->name;
    if (const DCheck* c = std::get_if<DCheck>(&d)) return &c->name;
    return nullptr;  // theorems are named per theory; includes are anonymous
  }

  void register_names() {
    for (size_t i = 0; i < ast.decls.size(); ++i) {
      const Named* n = decl_name(ast.decls[i]);
      if (n && !global_names.insert(n->text).second) {
        add_error("E-DUP-NAME", "the name '" + n->text + "' is already taken",
                  n->span);
        skip.insert(i);
      }
      if (const DCheck* c = std::get_if<DCheck>(&ast.decls[i])) {
        if (c->witness) deferred.insert(c->witness->text);
      }
      if (const DProofDoc* p = std::get_if<DProofDoc>(&ast.decls[i])) {
        for (const auto& s : p->steps)
          if (s.formal) deferred.insert(s.derivation.text);
      }
    }
  }

  // --- theories --------------------------------------------------------------

  void do_theory(const DTheory& d) {
    Signature sig;
    for (const auto& s : d.sorts) {
      guard(s.name.span, [&] { sig.add_sort(s.name.text); });
    }
    for (const auto& f : d.funcs) {
      guard(f.name.span, [&] {
        for (const auto& a : f.args)
          if (!sig.has_sort(a.text))
            edie("E-UNKNOWN-SORT", "unknown sort '" + a.text + "'", a.span);
        if (!sig.has_sort(f.result.text))
          edie("E-UNKNOWN-SORT", "unknown sort '" + f.result.text + "'",
               f.result.span);
        std::vector<std::string> args;
        for (const auto& a : f.args) args.push_back(a.text);
        sig.add_function(f.name.text, std::move(args), f.result.text);
      });
    }
    for (const auto& p : d.preds) {
      guard(p.name.span, [&] {
        for (const auto& a : p.args)
          if (!sig.has_sort(a.text))
            edie("E-UNKNOWN-SORT", "unknown sort '" + a.text + "'", a.span);
        std::vector<std::string> args;
        for (const auto& a : p.args) args.push_back(a.text);
        sig.add_predicate(p.name.text, std::move(args));
      });
    }
    Theory t = make_theory(d.name.text, std::move(sig));
    for (const auto& a : d.axioms) {
      guard(a.name.span, [&] {
        FormulaElab fe{t.signature, {}, nullptr};
        FormulaPtr f = fe.formula(a.formula);
        t = add_axiom(t, a.name.text, f);
      });
    }
    guard(d.name.span, [&] { ws.graph = add_theory(ws.graph, std::move(t)); });
  }

  // --- theorem statements -----------------------------------------------------

  const Statement* find_statement(const std::string& theory,
                                  const std::string& name) const {
    for (const auto& s : ws.statements)
      if (s.theory == theory && s.name == name) return &s;
    return nullptr;
  }

  void do_statement(const DTheorem& d) {
    guard(d.name.span, [&] {
      const Theory* t = ws.graph.theories.find(d.theory.text);
      if (!t)
        edie("E-UNKNOWN-REF", "unknown theory '" + d.theory.text + "'",
             d.theory.span);
      if (t->axioms.contains(d.name.text) || t->theorems.contains(d.name.text) ||
          find_statement(d.theory.text, d.name.text))
        edie("E-DUP-NAME",
             "'" + d.name.text + "' already names a statement of " + d.theory.text,
             d.name.span);
      FormulaElab fe{t->signature, {}, nullptr};
      FormulaPtr f = fe.formula(d.formula);
      if (d.assumed) {
        Theory updated = add_theorem(*t, d.name.text, f,
                                     Provenance::assumed(d.reason));
        ws.graph = with_theory_replaced(ws.graph, std::move(updated));
      }
      ws.statements.push_back(
          Statement{d.theory.text, d.name.text, f, d.assumed});
    });
  }

  // --- derivations -------------------------------------------------------------

  void do_derivation(const DDerivation& d) {
    guard(d.name.span, [&] {
      const Theory* t = ws.graph.theories.find(d.theory.text);
      if (!t)
        edie("E-UNKNOWN-REF", "unknown theory '" + d.theory.text + "'",
             d.theory.span);
      const Signature& sig = t->signature;

      FreeVarTable frees;
      auto deriv = std::make_shared<Derivation>();
      std::map<std::string, size_t> labels;

      for (const auto& s : d.steps) {
        Step ks;
        ks.label = s.label.text;
        ks.rule = s.rule;
        if (!labels.emplace(s.label.text, deriv->steps.size()).second)
          edie("E-DUP-NAME", "duplicate step label '" + s.label.text + "'",
               s.label.span);
        for (const auto& p : s.premises) {
          auto it = labels.find(p.text);
          if (it == labels.end() || it->second == deriv->steps.size())
            edie("E-UNKNOWN-REF", "premise '" + p.text + "' is not an earlier step",
                 p.span);
          ks.premises.push_back(it->second);
        }

        FormulaElab fe{sig, {}, &frees};
        for (const auto& h : s.hyps) ks.claimed.hyps.push_back(fe.formula(h));
        ks.claimed.concl = fe.formula(s.concl);

        // Parameters, with sort hints drawn from the already-elaborated
        // context where the rule fixes them.
        switch (s.rule) {
          case Rule::Axiom:
            ks.axiom = s.axiom.text;
            break;
          case Rule::ForallElim: {
            std::optional<std::string> hint;
            if (!ks.premises.empty()) {
              const FormulaPtr& pc = deriv->steps[ks.premises[0]].claimed.concl;
              if (const Quantified* q = std::get_if<Quantified>(&pc->node))
                hint = q->sort;
            }
            ks.terms.push_back(fe.term(s.terms[0], hint).term);
            break;
          }
          case Rule::ExistsIntro: {
            std::optional<std::string> hint;
            if (const Quantified* q =
                    std::get_if<Quantified>(&ks.claimed.concl->node))
              hint = q->sort;
            ks.terms.push_back(fe.term(s.terms[0], hint).term);
            break;
          }
          case Rule::EqRefl:
            ks.terms.push_back(fe.term(s.terms[0], std::nullopt).term);
            break;
          case Rule::ForallIntro:
          case Rule::ExistsElim:
            if (s.var) {
              if (!sig.has_sort(s.var->sort))
                edie("E-UNKNOWN-SORT", "unknown sort '" + s.var->sort + "'",
                     s.var->sort_span);
              ks.var = VarBind{s.var->var, s.var->sort};
            }
            break;
          case Rule::EqSubst: {
            if (!sig.has_sort(s.var->sort))
              edie("E-UNKNOWN-SORT", "unknown sort '" + s.var->sort + "'",
                   s.var->sort_span);
            ks.var = VarBind{s.var->var, s.var->sort};
            FormulaElab te{sig, {{s.var->var, s.var->sort}}, &frees};
            ks.formula = te.formula(s.formula);
            break;
          }
          default:
            break;
        }
        deriv->steps.push_back(std::move(ks));
      }

      // Witness and document derivations may cite via:/step: pseudo-axioms
      // that only exist at their point of use, so they are checked there.
      bool eager = d.proves.has_value() || !deferred.count(d.name.text);
      if (d.proves) {
        const Statement* st = find_statement(d.theory.text, d.proves->text);
        if (!st)
          edie("E-UNKNOWN-REF",
               "no theorem statement '" + d.proves->text + "' in " + d.theory.text,
               d.proves->span);
        if (st->assumed)
          edie("E-DUP-NAME",
               "'" + d.proves->text + "' was declared assumed; drop the marker "
               "to prove it",
               d.proves->span);
        if (t->theorems.contains(d.proves->text))
          edie("E-DUP-NAME", "'" + d.proves->text + "' is already proved",
               d.proves->span);
        try {
          Theory updated =
              add_theorem(*t, d.proves->text, st->formula,
                          Provenance::derived(deriv));
          ws.graph = with_theory_replaced(ws.graph, std::move(updated));
        } catch (const Error& e) {
          if (e.code() == ErrCode::DerivationMismatch)
            edie("E-THEOREM-MISMATCH", e.message(), d.proves->span);
          edie("E-DERIVATION", e.message(), d.name.span);
        }
      } else if (eager) {
        try {
          check_derivation(sig, t->axioms, *deriv);
        } catch (const Error& e) {
          edie("E-DERIVATION", e.message(), d.name.span);
        }
      }

      ws.derivations.insert(
          d.name.text,
          NamedDerivation{d.theory.text, deriv,
                          d.proves ? d.proves->text : std::string()});
    });
  }

  // --- morphisms ----------------------------------------------------------------

  void do_morphism(const DMorphism& d) {
    guard(d.name.span, [&] {
      const Theory* src = ws.graph.theories.find(d.source.text);
      if (!src)
        edie("E-UNKNOWN-REF", "unknown theory '" + d.source.text + "'",
             d.source.span);
      const Theory* tgt = ws.graph.theories.find(d.target.text);
      if (!tgt)
        edie("E-UNKNOWN-REF", "unknown theory '" + d.target.text + "'",
             d.target.span);

      Assignment a;
      for (const auto& m : d.sorts) {
        if (!src->signature.has_sort(m.from.text))
          edie("E-UNKNOWN-REF",
               "'" + m.from.text + "' is not a sort of " + src->id, m.from.span);
        if (!tgt->signature.has_sort(m.to.text))
          edie("E-UNKNOWN-SORT", "'" + m.to.text + "' is not a sort of " + tgt->id,
               m.to.span);
        if (!a.sorts.emplace(m.from.text, m.to.text).second)
          edie("E-DUP-NAME", "sort '" + m.from.text + "' mapped twice", m.from.span);
      }

      auto image_sort = [&](const std::string& s, const SourceSpan& span) {
        auto it = a.sorts.find(s);
        if (it == a.sorts.end())
          edie("E-UNMAPPED-SYMBOL", "sort '" + s + "' has no image", span);
        return it->second;
      };

      for (const auto& m : d.funcs) {
        const FuncDecl* decl = src->signature.function(m.from.text);
        if (!decl)
          edie("E-UNKNOWN-REF",
               "'" + m.from.text + "' is not a function of " + src->id,
               m.from.span);
        if (decl->args.size() != m.params.size())
          edie("E-ILL-FORMED",
               "'" + m.from.text + "' has " + std::to_string(decl->args.size()) +
                   " argument(s), the image names " +
                   std::to_string(m.params.size()),
               m.from.span);
        FormulaElab fe{tgt->signature, {}, nullptr};
        Subst canon;
        for (size_t i = 0; i < m.params.size(); ++i) {
          std::string ms = image_sort(decl->args[i], m.params[i].span);
          if (!fe.bound.emplace(m.params[i].text, ms).second)
            edie("E-DUP-NAME", "duplicate parameter '" + m.params[i].text + "'",
                 m.params[i].span);
          canon[m.params[i].text] = mk_var("p" + std::to_string(i + 1), ms);
        }
        std::string want = image_sort(decl->result, m.from.span);
        TermPtr image = fe.term(m.image, want).term;
        if (!a.functions.emplace(m.from.text, substitute(image, canon)).second)
          edie("E-DUP-NAME", "function '" + m.from.text + "' mapped twice",
               m.from.span);
      }

      for (const auto& m : d.preds) {
        const std::vector<std::string>* args = src->signature.predicate(m.from.text);
        if (!args)
          edie("E-UNKNOWN-REF",
               "'" + m.from.text + "' is not a predicate of " + src->id,
               m.from.span);
        if (args->size() != m.params.size())
          edie("E-ILL-FORMED",
               "'" + m.from.text + "' has " + std::to_string(args->size()) +
                   " argument(s), the image names " +
                   std::to_string(m.params.size()),
               m.from.span);
        FormulaElab fe{tgt->signature, {}, nullptr};
        Subst canon;
        for (size_t i = 0; i < m.params.size(); ++i) {
          std::string ms = image_sort((*args)[i], m.params[i].span);
          if (!fe.bound.emplace(m.params[i].text, ms).second)
            edie("E-DUP-NAME", "duplicate parameter '" + m.params[i].text + "'",
                 m.params[i].span);
          canon[m.params[i].text] = mk_var("p" + std::to_string(i + 1), ms);
        }
        FormulaPtr image = fe.formula(m.image);
        if (!a.predicates.emplace(m.from.text, substitute(image, canon)).second)
          edie("E-DUP-NAME", "predicate '" + m.from.text + "' mapped twice",
               m.from.span);
      }

      try {
        validate_assignment(a, src->signature, tgt->signature);
      } catch (const Error& e) {
        edie(diagnostic_code(e.code()), e.message(), d.name.span);
      }

      Morphism m;
      m.id = d.name.text;
      m.source = src->id;
      m.target = tgt->id;
      m.assignment = std::move(a);
      m.obligations = generate_obligations(m.assignment, *src, *tgt);

      for (const auto& o : d.obligations) {
        auto ob = std::find_if(m.obligations.begin(), m.obligations.end(),
                               [&](const Obligation& x) { return x.axiom == o.axiom.text; });
        if (ob == m.obligations.end())
          edie("E-UNKNOWN-REF",
               "'" + o.axiom.text + "' is not an axiom of " + src->id, o.axiom.span);
        try {
          switch (o.method) {
            case ObMethod::ByAxiom:
              *ob = discharge_by_axiom(*ob, o.ref.text, *tgt);
              break;
            case ObMethod::ByDerivation: {
              const NamedDerivation* nd = ws.derivations.find(o.ref.text);
              if (!nd)
                edie("E-UNKNOWN-REF", "unknown derivation '" + o.ref.text + "'",
                     o.ref.span);
              if (nd->theory != tgt->id)
                edie("E-THEORY-MISMATCH",
                     "derivation '" + o.ref.text + "' lives in " + nd->theory +
                         ", the obligation must be discharged in " + tgt->id,
                     o.ref.span);
              *ob = discharge_proved(*ob, nd->derivation, *tgt);
              break;
            }
            case ObMethod::Assumed:
              *ob = discharge_assumed(*ob, o.reason);
              break;
          }
        } catch (const Error& e) {
          edie("E-OBLIGATION-FAIL", e.message(), o.span);
        }
      }

      VerificationStatus vs = verify(m);
      if (!vs.verified) {
        std::string open;
        for (const auto& n : vs.pending) open += (open.empty() ? "" : ", ") + n;
        for (const auto& n : vs.assumed)
          open += (open.empty() ? "" : ", ") + n + " (assumed)";
        add_warning("W-PARTIAL-MORPHISM",
                    "morphism '" + m.id + "' is only partially verified; open: " +
                        open,
                    d.name.span);
      }
      ws.graph = add_morphism(ws.graph, std::move(m));
    });
  }

  // --- cross-checks ----------------------------------------------------------------

  // A lone identifier in statement position refers to a named axiom, theorem,
  // or statement when one exists; anything else is an inline formula.
  std::pair<FormulaPtr, std::string> resolve_stmt(const DStmtRef& r,
                                                  const Theory& t) {
    if (const SAtom* a = std::get_if<SAtom>(&r.formula->node)) {
      if (!a->term.call) {
        const std::string& n = a->term.name;
        if (const FormulaPtr* ax = t.axioms.find(n)) return {*ax, n};
        if (const TheoremEntry* th = t.theorems.find(n)) return {th->formula, n};
        if (const Statement* st = find_statement(t.id, n)) return {st->formula, n};
        if (!t.signature.predicate(n))
          edie("E-UNKNOWN-REF",
               "no axiom, theorem, or statement named '" + n + "' in " + t.id,
               r.formula->span);
      }
    }
    FormulaElab fe{t.signature, {}, nullptr};
    return {fe.formula(r.formula), ""};
  }

  void do_check(const DCheck& d) {
    guard(d.name.span, [&] {
      if (!d.structural) {
        const Theory* t1 = ws.graph.theories.find(d.a1.theory.text);
        if (!t1)
          edie("E-UNKNOWN-REF", "unknown theory '" + d.a1.theory.text + "'",
               d.a1.theory.span);
        const Theory* t2 = ws.graph.theories.find(d.a2.theory.text);
        if (!t2)
          edie("E-UNKNOWN-REF", "unknown theory '" + d.a2.theory.text + "'",
               d.a2.theory.span);

        SemanticCheck c;
        c.id = d.name.text;
        c.theory1 = t1->id;
        c.theory2 = t2->id;
        std::tie(c.a1, c.a1_name) = resolve_stmt(d.a1, *t1);
        std::tie(c.a2, c.a2_name) = resolve_stmt(d.a2, *t2);

        std::string at = t1->id;
        for (const auto& v : d.via) {
          const Morphism* m = ws.graph.morphisms.find(v.text);
          if (!m)
            edie("E-UNKNOWN-REF", "unknown morphism '" + v.text + "'", v.span);
          if (m->source != at)
            edie("E-ILL-FORMED-CHECK",
                 "morphism '" + v.text + "' starts at " + m->source +
                     ", expected " + at,
                 v.span);
          at = m->target;
          c.via.push_back(v.text);
        }
        if (at != t2->id)
          edie("E-ILL-FORMED-CHECK",
               "the morphism path ends at " + at + ", the counterpart lives in " +
                   t2->id,
               d.name.span);

        if (d.witness) {
          const NamedDerivation* nd = ws.derivations.find(d.witness->text);
          if (!nd)
            edie("E-UNKNOWN-REF", "unknown derivation '" + d.witness->text + "'",
                 d.witness->span);
          if (nd->theory != t2->id)
            edie("E-THEORY-MISMATCH",
                 "witness '" + d.witness->text + "' lives in " + nd->theory +
                     ", the check concludes in " + t2->id,
                 d.witness->span);
          c.witness = nd->derivation;
          c.witness_name = d.witness->text;
        }
        std::string cid = c.id;
        ws.checks.insert(cid, Check{std::move(c)});
      } else {
        StructuralCheck c;
        c.id = d.name.text;
        auto resolve_deriv = [&](const Named& dn, const Named& tn,
                                 std::string& theory,
                                 std::shared_ptr<const Derivation>& out,
                                 std::string& out_name) {
          if (!ws.graph.theories.contains(tn.text))
            edie("E-UNKNOWN-REF", "unknown theory '" + tn.text + "'", tn.span);
          const NamedDerivation* nd = ws.derivations.find(dn.text);
          if (!nd)
            edie("E-UNKNOWN-REF", "unknown derivation '" + dn.text + "'", dn.span);
          if (nd->theory != tn.text)
            edie("E-THEORY-MISMATCH",
                 "derivation '" + dn.text + "' lives in " + nd->theory + ", not " +
                     tn.text,
                 dn.span);
          theory = tn.text;
          out = nd->derivation;
          out_name = dn.text;
        };
        resolve_deriv(d.deriv1, d.theory1, c.theory1, c.deriv1, c.deriv1_name);
        resolve_deriv(d.deriv2, d.theory2, c.theory2, c.deriv2, c.deriv2_name);
        for (const auto& [from, to] : d.correspondence) {
          if (c.correspondence.count(from.text))
            edie("E-DUP-NAME", "'" + from.text + "' corresponds twice", from.span);
          c.correspondence[from.text] = to.text;
        }
        std::string cid = c.id;
        ws.checks.insert(cid, Check{std::move(c)});
      }
    });
  }

  // --- proof documents ---------------------------------------------------------------

  void do_doc(const DProofDoc& d) {
    guard(d.name.span, [&] {
      const Theory* home = ws.graph.theories.find(d.theory.text);
      if (!home)
        edie("E-UNKNOWN-REF", "unknown theory '" + d.theory.text + "'",
             d.theory.span);

      ProofDoc doc;
      doc.id = d.name.text;
      doc.home = home->id;
      doc.theorem_name = d.shows.text;
      if (const TheoremEntry* th = home->theorems.find(d.shows.text)) {
        doc.theorem = th->formula;
      } else if (const Statement* st = find_statement(home->id, d.shows.text)) {
        doc.theorem = st->formula;
      } else {
        edie("E-UNKNOWN-REF",
             "no theorem or statement named '" + d.shows.text + "' in " + home->id,
             d.shows.span);
      }

      std::set<std::string> labels;
      for (const auto& s : d.steps) {
        if (!s.label.text.empty() && !labels.insert(s.label.text).second)
          edie("E-DUP-NAME", "duplicate step label '" + s.label.text + "'",
               s.label.span);
        DocStep step;
        step.label = s.label.text;
        if (s.formal) {
          step.kind = DocStep::Kind::Formal;
          const NamedDerivation* nd = ws.derivations.find(s.derivation.text);
          if (!nd)
            edie("E-UNKNOWN-REF", "unknown derivation '" + s.derivation.text + "'",
                 s.derivation.span);
          if (nd->theory != home->id)
            edie("E-THEORY-MISMATCH",
                 "derivation '" + s.derivation.text + "' lives in " + nd->theory +
                     ", the document's home is " + home->id,
                 s.derivation.span);
          step.derivation_name = s.derivation.text;
          step.derivation = nd->derivation;
        } else {
          step.kind = DocStep::Kind::Informal;
          step.text = s.text;
          if (s.claim) {
            FormulaElab fe{home->signature, {}, nullptr};
            step.claim = fe.formula(s.claim);
          }
        }
        doc.steps.push_back(std::move(step));
      }
      for (const auto& c : d.checks) {
        if (!ws.checks.contains(c.text))
          edie("E-UNKNOWN-REF", "unknown cross-check '" + c.text + "'", c.span);
        doc.checks.push_back(c.text);
      }
      std::string did = doc.id;
      ws.docs.insert(did, std::move(doc));
    });
  }

  // --- driver ---------------------------------------------------------------------

  ElabResult run() {
    register_names();
    for (size_t i = 0; i < ast.decls.size(); ++i)
      if (!skip.count(i))
        if (const DTheory* t = std::get_if<DTheory>(&ast.decls[i])) do_theory(*t);
    for (size_t i = 0; i < ast.decls.size(); ++i)
      if (!skip.count(i))
        if (const DTheorem* t = std::get_if<DTheorem>(&ast.decls[i]))
          do_statement(*t);
    for (size_t i = 0; i < ast.decls.size(); ++i)
      if (!skip.count(i))
        if (const DDerivation* t = std::get_if<DDerivation>(&ast.decls[i]))
          do_derivation(*t);
    for (size_t i = 0; i < ast.decls.size(); ++i)
      if (!skip.count(i))
        if (const DMorphism* t = std::get_if<DMorphism>(&ast.decls[i]))
          do_morphism(*t);
    for (size_t i = 0; i < ast.decls.size(); ++i)
      if (!skip.count(i))
        if (const DCheck* t = std::get_if<DCheck>(&ast.decls[i])) do_check(*t);
    for (size_t i = 0; i < ast.decls.size(); ++i)
      if (!skip.count(i))
        if (const DProofDoc* t = std::get_if<DProofDoc>(&ast.decls[i])) do_doc(*t);
    return ElabResult{std::move(ws), std::move(diags)};
  }
};

}  // namespace

ElabResult elaborate(const Ast& ast) { return Elaborator{ast}.run(); }

}  // namespace tgc
