#pragma once

// Many-sorted first-order expressions: signatures, terms, formulas, and the
// operations every other layer is built on (well-formedness, substitution,
// alpha-equivalence, free variables).
//
// Terms and formulas are immutable trees shared through shared_ptr<const T>;
// all operations build fresh nodes and never mutate inputs.  Variable binding
// is by name: a quantifier binds every same-named occurrence in scope, and
// well-formedness requires the occurrence's sort annotation to agree with its
// binder.

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "tgc/error.hpp"

namespace tgc {

// ---------------------------------------------------------------------------
// Signatures

struct FuncDecl {
  std::vector<std::string> args;
  std::string result;
};

// Sort symbols plus typed function and predicate symbols.  Function and
// predicate names share one namespace.
class Signature {
 public:
  void add_sort(const std::string& name);
  void add_function(const std::string& name, std::vector<std::string> args,
                    std::string result);
  void add_predicate(const std::string& name, std::vector<std::string> args);

  bool has_sort(const std::string& name) const { return sorts_.count(name) > 0; }
  const FuncDecl* function(const std::string& name) const;
  const std::vector<std::string>* predicate(const std::string& name) const;

  const std::set<std::string>& sorts() const { return sorts_; }
  const std::map<std::string, FuncDecl>& functions() const { return functions_; }
  const std::map<std::string, std::vector<std::string>>& predicates() const {
    return predicates_;
  }

  // True when every declaration of `sub` appears identically in this one.
  bool includes(const Signature& sub) const;

 private:
  void check_fresh(const std::string& name) const;
  void check_sort(const std::string& name) const;

  std::set<std::string> sorts_;
  std::map<std::string, FuncDecl> functions_;
  std::map<std::string, std::vector<std::string>> predicates_;
};

// ---------------------------------------------------------------------------
// Terms

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Var {
  std::string name;
  std::string sort;
};

struct App {
  std::string fn;
  std::vector<TermPtr> args;
};

struct Term {
  std::variant<Var, App> node;
};

TermPtr mk_var(std::string name, std::string sort);
TermPtr mk_app(std::string fn, std::vector<TermPtr> args = {});

// ---------------------------------------------------------------------------
// Formulas

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Pred {
  std::string name;
  std::vector<TermPtr> args;
};

struct Eq {
  TermPtr lhs;
  TermPtr rhs;
};

struct Truth {};
struct Falsity {};

struct Not {
  FormulaPtr body;
};

enum class BinOp { And, Or, Implies, Iff };

struct Bin {
  BinOp op;
  FormulaPtr lhs;
  FormulaPtr rhs;
};

enum class Quant { Forall, Exists };

struct Quantified {
  Quant q;
  std::string var;
  std::string sort;
  FormulaPtr body;
};

struct Formula {
  std::variant<Pred, Eq, Truth, Falsity, Not, Bin, Quantified> node;
};

FormulaPtr mk_pred(std::string name, std::vector<TermPtr> args = {});
FormulaPtr mk_eq(TermPtr lhs, TermPtr rhs);
FormulaPtr mk_truth();
FormulaPtr mk_falsity();
FormulaPtr mk_not(FormulaPtr body);
FormulaPtr mk_bin(BinOp op, FormulaPtr lhs, FormulaPtr rhs);
FormulaPtr mk_and(FormulaPtr l, FormulaPtr r);
FormulaPtr mk_or(FormulaPtr l, FormulaPtr r);
FormulaPtr mk_implies(FormulaPtr l, FormulaPtr r);
FormulaPtr mk_iff(FormulaPtr l, FormulaPtr r);
FormulaPtr mk_quant(Quant q, std::string var, std::string sort, FormulaPtr body);
FormulaPtr mk_forall(std::string var, std::string sort, FormulaPtr body);
FormulaPtr mk_exists(std::string var, std::string sort, FormulaPtr body);

// ---------------------------------------------------------------------------
// Well-formedness

// Variable context: free-variable name -> sort.
using VarCtx = std::map<std::string, std::string>;

// Returns the sort of `t`; throws Error (UnknownSymbol, UnknownVariable,
// ArityMismatch, SortMismatch) with the child-index path of the offending
// subterm.
std::string wf_term(const Signature& sig, const VarCtx& ctx, const TermPtr& t);

// Throws Error (additionally EqSortMismatch, IllFormedFormula, UnknownSort)
// if `f` is not well-formed.
void wf_formula(const Signature& sig, const VarCtx& ctx, const FormulaPtr& f);

bool is_closed(const FormulaPtr& f);

// ---------------------------------------------------------------------------
// Structural and alpha equality

bool term_eq(const TermPtr& a, const TermPtr& b);
bool formula_eq(const FormulaPtr& a, const FormulaPtr& b);  // syntactic

bool alpha_eq(const TermPtr& a, const TermPtr& b);
bool alpha_eq(const FormulaPtr& a, const FormulaPtr& b);

// ---------------------------------------------------------------------------
// Free variables

// Free occurrences as (name, sort) pairs.
std::set<std::pair<std::string, std::string>> free_vars(const TermPtr& t);
std::set<std::pair<std::string, std::string>> free_vars(const FormulaPtr& f);
std::set<std::string> free_var_names(const FormulaPtr& f);
bool occurs_free(const std::string& name, const FormulaPtr& f);

// ---------------------------------------------------------------------------
// Substitution

// Simultaneous substitution, keyed by variable name.  Capture-avoiding:
// binders are renamed (numeric-suffix freshening) exactly when a replacement
// term would otherwise be captured.
using Subst = std::map<std::string, TermPtr>;

TermPtr substitute(const TermPtr& t, const Subst& s);
FormulaPtr substitute(const FormulaPtr& f, const Subst& s);

// ---------------------------------------------------------------------------
// Printing (canonical ASCII concrete syntax)

std::string to_text(const TermPtr& t);
std::string to_text(const FormulaPtr& f);

}  // namespace tgc
