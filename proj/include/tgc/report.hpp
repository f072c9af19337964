#pragma once

// Batch driver shared by the command-line tool and the language bindings:
// load .tg inputs, elaborate them, run the requested command, and render the
// result as plain text or a JSON-like document.  Rendering is deterministic —
// the same inputs and command always produce byte-identical output.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tgc/frontend.hpp"

namespace tgc {

inline constexpr const char* kToolVersion = "0.1.0";

struct LoadResult {
  Workspace workspace;
  std::vector<Diagnostic> diagnostics;  // parse + elaboration, input order
  std::vector<std::string> inputs;      // files actually read, input order
  std::uint64_t digest = 0;             // FNV-1a over names and contents
  bool has_errors() const;
};

// Expands directories to the .tg files inside them (recursive, sorted),
// parses and elaborates.  Unreadable paths become E-IO diagnostics.
LoadResult load_paths(const std::vector<std::string>& paths);
LoadResult load_sources(const std::vector<SourceFile>& sources);

struct Options {
  bool json = false;           // render json-like instead of text
  bool allow_partial = false;  // tolerate pending obligations / checks
};

struct Outcome {
  int exit_code = 0;  // 0 ok, 1 verification failure, 2 error
  std::string output;
};

Outcome run_check(const LoadResult& in, const Options& opt);
Outcome run_paths(const LoadResult& in, const std::string& to, int max_depth,
                  const Options& opt);
Outcome run_transport(const LoadResult& in, const std::string& source_theory,
                      const std::string& theorem,
                      const std::vector<std::string>& via, const Options& opt);
Outcome run_crosschecks(const LoadResult& in,
                        const std::optional<std::string>& id,
                        const Options& opt);

}  // namespace tgc
