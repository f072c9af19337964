#pragma once

// Flexiformal proof documents: an ordered mixture of informal prose steps
// (optionally carrying a claimed formula) and formal derivation steps, tied
// to a home theory, a stated theorem, and any number of cross-checks.
// Formal steps may cite the claim of an earlier labeled step through the
// pseudo-axiom "step:<label>"; a step resting only on axioms and formally
// established claims is grounded.

#include <memory>
#include <string>
#include <vector>

#include "tgc/crosscheck.hpp"
#include "tgc/derivation.hpp"
#include "tgc/graph.hpp"

namespace tgc {

struct DocStep {
  enum class Kind { Informal, Formal };
  Kind kind = Kind::Informal;
  std::string label;  // optional; required for citation
  // informal
  std::string text;
  FormulaPtr claim;  // optional
  // formal
  std::string derivation_name;
  std::shared_ptr<const Derivation> derivation;
};

struct ProofDoc {
  std::string id;
  std::string home;          // home theory id
  std::string theorem_name;  // statement the document shows
  FormulaPtr theorem;
  std::vector<DocStep> steps;
  std::vector<std::string> checks;  // attached cross-check ids
};

struct StepStatus {
  size_t index = 0;
  std::string label;
  bool formal = false;
  bool checked = false;    // formal only: kernel accepted it
  bool grounded = false;   // checked and every citation leads to grounded steps
  std::string conclusion;  // printable claim/conclusion, empty if none
  std::string note;        // kernel failure message, if any
};

struct DocFlag {
  enum class Kind { AssumedReliance, FailedFormalStep };
  Kind kind;
  std::string what;
};

struct DocReport {
  bool established = false;
  std::vector<std::pair<size_t, std::string>> gaps;  // step index + description
  double coverage = 0.0;
  std::vector<StepStatus> steps;
  std::vector<std::pair<std::string, CheckOutcome>> check_outcomes;
  std::vector<DocFlag> flags;
};

double formal_coverage(const ProofDoc& doc);

// Validates the statement and every claim against the home theory, runs each
// formal step through the kernel (axioms extended with the step:* claims
// available at that point), computes groundedness, gaps, coverage, and the
// attached cross-check outcomes.  Read-only.  Throws UnknownTheory /
// IllFormedTheorem / UnknownReference for malformed documents.
DocReport check_doc(const ProofDoc& doc, const TheoryGraph& g,
                    const OrderedMap<Check>& checks);

// Adds the documented theorem to the home theory with Derived provenance
// (the closing derivation).  Requires an Established report with no assumed
// reliance; throws NotEstablished / AssumedContent otherwise.  Re-promoting
// an already-present statement returns the theory unchanged.
Theory promote(const ProofDoc& doc, const TheoryGraph& g,
               const OrderedMap<Check>& checks);

}  // namespace tgc
