#pragma once

// The .tg frontend: parsing, elaboration into kernel values, and the
// canonical pretty-printer.

#include <string>
#include <vector>

#include "tgc/ast.hpp"
#include "tgc/crosscheck.hpp"
#include "tgc/graph.hpp"
#include "tgc/proofdoc.hpp"

namespace tgc {

struct SourceFile {
  std::string name;  // path or synthetic label
  std::string text;
};

struct ParseResult {
  Ast ast;
  std::vector<Diagnostic> diagnostics;
  bool ok() const {
    for (const auto& d : diagnostics)
      if (d.severity == Diagnostic::Severity::Error) return false;
    return true;
  }
};

// Parses the given sources in order.  Recovers at declaration boundaries, so
// one malformed declaration yields one diagnostic and the rest of the file is
// still parsed.  include declarations are resolved relative to the including
// file (each file loaded once); unresolvable includes become diagnostics.
ParseResult parse_sources(const std::vector<SourceFile>& sources);
ParseResult parse_files(const std::vector<std::string>& paths);

// An unproven theorem statement (a `theorem` declaration not yet backed by a
// derivation or promotion).
struct Statement {
  std::string theory;
  std::string name;
  FormulaPtr formula;
  bool assumed = false;
};

struct NamedDerivation {
  std::string theory;
  std::shared_ptr<const Derivation> derivation;
  std::string proves;  // statement name, empty when standalone
};

struct Workspace {
  TheoryGraph graph;
  OrderedMap<NamedDerivation> derivations;
  OrderedMap<Check> checks;
  OrderedMap<ProofDoc> docs;
  std::vector<Statement> statements;
};

struct ElabResult {
  Workspace workspace;
  std::vector<Diagnostic> diagnostics;
  bool ok() const {
    for (const auto& d : diagnostics)
      if (d.severity == Diagnostic::Severity::Error) return false;
    return true;
  }
};

// Two passes: all declaration names are registered first, then bodies are
// elaborated by group — theories, theorem statements, derivations, morphisms,
// cross-checks, proof documents — in declaration order within each group.
// Never throws for input defects; each defect becomes one diagnostic and the
// offending declaration is skipped.
ElabResult elaborate(const Ast& ast);

// Canonical concrete syntax.  parse(pretty_print(parse(text))) elaborates to
// the same workspace as parse(text).
std::string pretty_print(const Ast& ast);
std::string pretty_print(const SFormulaPtr& f);

// Maps library error codes onto stable diagnostic codes.
std::string diagnostic_code(ErrCode c);

}  // namespace tgc
