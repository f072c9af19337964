#pragma once

// Cross-verification of parallel developments.  A structural check compares
// two derivations: same rule skeleton, and conclusions that correspond under
// a bijective symbol renaming.  A semantic check relates two statements
// through a morphism (or morphism path): the translation of the first must be
// alpha-equal to the second, or a witness derivation must bridge the gap.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tgc/derivation.hpp"
#include "tgc/graph.hpp"

namespace tgc {

// Rule tree of a derivation, read off from the root (last) step.
struct SkeletonNode {
  std::string rule;
  std::vector<SkeletonNode> children;
};

SkeletonNode skeleton(const Derivation& d);
bool skeleton_eq(const SkeletonNode& a, const SkeletonNode& b);
std::string to_text(const SkeletonNode& n);

struct StructuralCheck {
  std::string id;
  std::string theory1;
  std::shared_ptr<const Derivation> deriv1;
  std::string deriv1_name;
  std::string theory2;
  std::shared_ptr<const Derivation> deriv2;
  std::string deriv2_name;
  // Declared seed of the symbol correspondence (sorts and symbols share it);
  // the matcher extends it and insists on bijectivity.
  std::map<std::string, std::string> correspondence;
};

struct SemanticCheck {
  std::string id;
  std::string theory1;
  FormulaPtr a1;
  std::string a1_name;  // empty when a1 was given inline
  std::string theory2;
  FormulaPtr a2;
  std::string a2_name;
  std::vector<std::string> via;  // morphism ids forming a path theory1 -> theory2
  std::shared_ptr<const Derivation> witness;
  std::string witness_name;
};

using Check = std::variant<StructuralCheck, SemanticCheck>;

const std::string& check_id(const Check& c);

struct CheckOutcome {
  enum class Status { Success, Failure, Pending };
  Status status = Status::Pending;
  std::string reason;  // short explanation
  std::string locus;   // for structural failures: where the divergence sits
};

const char* name(CheckOutcome::Status s);

// Derivation leaves citing a statement `n` of the paired theory may use the
// pseudo-axiom "via:n"; semantic witnesses run against the target's axioms
// extended with via:<a1-name> bound to the translated statement.
std::string via_axiom_name(const SemanticCheck& c);

CheckOutcome run_check(const StructuralCheck& c, const TheoryGraph& g);
CheckOutcome run_check(const SemanticCheck& c, const TheoryGraph& g);

struct CheckReport {
  std::vector<std::pair<std::string, CheckOutcome>> outcomes;  // sorted by id
  size_t successes = 0;
  size_t failures = 0;
  size_t pending = 0;
};

// Runs every check, ordered by id; resolution or kernel errors surface as
// Failure outcomes rather than exceptions.
CheckReport run_all(const OrderedMap<Check>& checks, const TheoryGraph& g);

}  // namespace tgc
