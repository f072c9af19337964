#pragma once

#include <exception>
#include <string>
#include <vector>

namespace tgc {

// Every failure mode the library reports deliberately.  Frontend code maps
// these onto stable diagnostic codes; tests assert on the enum, not on
// message text.
enum class ErrCode {
  // expressions / signatures
  UnknownSort,
  UnknownSymbol,
  UnknownVariable,
  ArityMismatch,
  SortMismatch,
  EqSortMismatch,
  IllFormedFormula,
  DuplicateName,
  OpenFormula,
  // derivations
  BadRuleApplication,
  EigenvariableViolation,
  UnknownAxiom,
  DerivationMismatch,
  // theories
  DuplicateTheoryId,
  // morphisms
  IllTypedAssignment,
  UnmappedSymbol,
  TheoryMismatch,
  NoSuchAxiom,
  AxiomNotAlphaEqual,
  ObligationFailure,
  // graph
  DuplicateId,
  DanglingEndpoint,
  UnknownTheory,
  UnknownTheorem,
  PathMismatch,
  UnverifiedPath,
  // cross-checks
  UnknownDerivation,
  UnknownMorphism,
  IllFormedCheck,
  // proof documents
  IllFormedTheorem,
  NotEstablished,
  AssumedContent,
  // frontend / driver
  ParseError,
  UnknownReference,
  IoError,
  UsageError,
};

const char* name(ErrCode code);

// Exception carrying a structured payload: the code, a human-readable
// message, and (when it concerns a subexpression) the child-index path from
// the root of the offending expression.
class Error : public std::exception {
 public:
  Error(ErrCode code, std::string message, std::vector<int> path = {})
      : code_(code), message_(std::move(message)), path_(std::move(path)) {
    rendered_ = std::string(name(code_)) + ": " + message_;
    if (!path_.empty()) {
      rendered_ += " (at ";
      for (size_t i = 0; i < path_.size(); ++i) {
        rendered_ += (i ? "." : "") + std::to_string(path_[i]);
      }
      rendered_ += ")";
    }
  }

  ErrCode code() const { return code_; }
  const std::string& message() const { return message_; }
  const std::vector<int>& path() const { return path_; }
  const char* what() const noexcept override { return rendered_.c_str(); }

 private:
  ErrCode code_;
  std::string message_;
  std::vector<int> path_;
  std::string rendered_;
};

}  // namespace tgc
