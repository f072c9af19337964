#pragma once

// Surface syntax tree for .tg files.  Every node keeps its source span;
// elaboration (frontend.hpp) turns this into kernel values and reports
// diagnostics against these spans.

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tgc/derivation.hpp"
#include "tgc/expr.hpp"

namespace tgc {

// 1-based line/column, end-exclusive columns; columns count codepoints.
struct SourceSpan {
  std::string file;
  int line = 1;
  int col = 1;
  int end_line = 1;
  int end_col = 1;
};

std::string to_text(const SourceSpan& s);

struct Diagnostic {
  enum class Severity { Error, Warning };
  Severity severity = Severity::Error;
  std::string code;     // stable, e.g. "E-UNKNOWN-SORT"
  std::string message;
  SourceSpan span;
};

std::string to_text(const Diagnostic& d);

// --- formulas / terms ------------------------------------------------------

struct STerm {
  std::string name;
  bool call = false;  // parenthesized application
  std::vector<STerm> args;
  SourceSpan span;
};

struct SFormula;
using SFormulaPtr = std::shared_ptr<const SFormula>;

struct SAtom { STerm term; };
struct SEq { STerm lhs, rhs; };
struct STrue {};
struct SFalse {};
struct SNot { SFormulaPtr body; };
struct SBin { BinOp op; SFormulaPtr lhs, rhs; };

struct SBinder {
  std::string var;
  std::string sort;
  SourceSpan span;
  SourceSpan sort_span;
};

struct SQuant {
  Quant q;
  std::vector<SBinder> binders;
  SFormulaPtr body;
};

struct SFormula {
  std::variant<SAtom, SEq, STrue, SFalse, SNot, SBin, SQuant> node;
  SourceSpan span;
};

// --- declarations ----------------------------------------------------------

struct Named {
  std::string text;
  SourceSpan span;
};

struct DSortDecl { Named name; };

struct DFuncDecl {
  Named name;
  std::vector<Named> args;
  Named result;
};

struct DPredDecl {
  Named name;
  std::vector<Named> args;
};

struct DAxiom {
  Named name;
  SFormulaPtr formula;
};

struct DTheory {
  Named name;
  std::vector<DSortDecl> sorts;
  std::vector<DFuncDecl> funcs;
  std::vector<DPredDecl> preds;
  std::vector<DAxiom> axioms;
  SourceSpan span;
};

struct DMapSort { Named from, to; };
struct DMapFunc {
  Named from;
  std::vector<Named> params;
  STerm image;
};
struct DMapPred {
  Named from;
  std::vector<Named> params;
  SFormulaPtr image;
};

enum class ObMethod { ByAxiom, ByDerivation, Assumed };

struct DObligation {
  Named axiom;
  ObMethod method = ObMethod::Assumed;
  Named ref;           // target axiom or derivation name
  std::string reason;  // assumed
  SourceSpan span;
};

struct DMorphism {
  Named name;
  Named source, target;
  std::vector<DMapSort> sorts;
  std::vector<DMapFunc> funcs;
  std::vector<DMapPred> preds;
  std::vector<DObligation> obligations;
  SourceSpan span;
};

struct DTheorem {
  Named name;
  Named theory;
  SFormulaPtr formula;
  bool assumed = false;
  std::string reason;
  SourceSpan span;
};

struct DStep {
  Named label;
  Rule rule = Rule::Hypothesis;
  SourceSpan rule_span;
  std::vector<Named> premises;
  std::vector<STerm> terms;          // [t]
  std::optional<SBinder> var;        // [x:S]
  SFormulaPtr formula;               // eq-subst template
  Named axiom;                       // axiom name (may carry via:/step: prefix)
  std::vector<SFormulaPtr> hyps;
  SFormulaPtr concl;
  SourceSpan span;
};

struct DDerivation {
  Named name;
  Named theory;
  std::optional<Named> proves;
  std::vector<DStep> steps;
  SourceSpan span;
};

struct DDocStep {
  bool formal = false;
  Named label;  // optional (empty text)
  std::string text;
  SFormulaPtr claim;
  Named derivation;
  SourceSpan span;
};

struct DProofDoc {
  Named name;
  Named theory;
  Named shows;
  std::vector<DDocStep> steps;
  std::vector<Named> checks;
  SourceSpan span;
};

// A statement position in a semantic check: either a reference to a named
// axiom/theorem or an inline formula (disambiguated during elaboration).
struct DStmtRef {
  SFormulaPtr formula;
  Named theory;
};

struct DCheck {
  Named name;
  bool structural = false;
  // semantic
  DStmtRef a1, a2;
  std::vector<Named> via;
  std::optional<Named> witness;
  // structural
  Named deriv1, theory1, deriv2, theory2;
  std::vector<std::pair<Named, Named>> correspondence;
  SourceSpan span;
};

struct DInclude {
  std::string path;
  SourceSpan span;
};

using Declaration =
    std::variant<DTheory, DMorphism, DTheorem, DDerivation, DProofDoc, DCheck,
                 DInclude>;

struct Ast {
  std::vector<Declaration> decls;
};

}  // namespace tgc
