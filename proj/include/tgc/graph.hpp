#pragma once

// The theory graph: named theories plus named morphism edges (a multigraph;
// parallel edges are meaningful).  Graphs are values — every update returns a
// new snapshot — and queries never mutate.

#include <optional>
#include <string>
#include <vector>

#include "tgc/morphism.hpp"
#include "tgc/ordered_map.hpp"
#include "tgc/theory.hpp"

namespace tgc {

struct TheoryGraph {
  OrderedMap<Theory> theories;
  OrderedMap<Morphism> morphisms;
};

TheoryGraph add_theory(const TheoryGraph& g, Theory t);           // DuplicateId
TheoryGraph add_morphism(const TheoryGraph& g, Morphism m);       // DuplicateId, DanglingEndpoint
TheoryGraph with_theory_replaced(const TheoryGraph& g, Theory t); // UnknownTheory

const Theory& get_theory(const TheoryGraph& g, const std::string& id);
const Morphism& get_morphism(const TheoryGraph& g, const std::string& id);

// An edge-simple directed path of morphism ids together with its composite.
struct MorphismPath {
  std::vector<std::string> edges;
  Morphism composite;
};

// Folds compose() over the edges; a single edge keeps its morphism (and its
// obligation statuses) verbatim.  Throws PathMismatch when edges do not chain.
MorphismPath make_path(const TheoryGraph& g, const std::vector<std::string>& edges);

// All edge-simple paths of length <= max_depth ending at `target`, as
// (source theory id, path) pairs ordered by length, then lexicographically by
// edge ids.  max_depth must be >= 1.
std::vector<std::pair<std::string, MorphismPath>> backward_reach(
    const TheoryGraph& g, const std::string& target, size_t max_depth);

struct TransportResult {
  TheoryGraph graph;       // updated snapshot
  std::string theory;      // destination theory id
  std::string name;        // theorem name in the destination
  FormulaPtr formula;      // translated statement
  bool duplicate = false;  // an alpha-equal theorem was already present
};

// Moves a theorem (or axiom) of src along the path's composite morphism into
// the path's final theory, with Transported provenance.  The composite must
// be fully verified unless allow_partial is set, in which case the result is
// flagged.  Re-transporting an already-present statement reports a duplicate
// and leaves the graph unchanged.
TransportResult transport(const TheoryGraph& g, const std::string& src_theory,
                          const std::string& theorem, const MorphismPath& path,
                          bool allow_partial = false,
                          const std::optional<std::string>& new_name = {});

// Targets of verified morphisms out of t — the theories realizing t's
// structure — one entry per edge, in edge declaration order.
std::vector<std::string> instances_of(const TheoryGraph& g, const std::string& t);

struct RealmCandidate {
  std::string theory1, theory2;  // theory1 < theory2
  std::string forward, backward; // theory1 -> theory2, theory2 -> theory1
};

// Unordered pairs of distinct theories connected by verified morphisms in
// both directions, sorted by (theory1, theory2, forward, backward).
std::vector<RealmCandidate> realm_candidates(const TheoryGraph& g);

}  // namespace tgc
