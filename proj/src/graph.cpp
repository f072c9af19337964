#include "tgc/graph.hpp"

#include <algorithm>
#include <set>
#include <tuple>

namespace tgc {

TheoryGraph add_theory(const TheoryGraph& g, Theory t) {
  TheoryGraph out = g;
  std::string id = t.id;
  if (!out.theories.insert(id, std::move(t)))
    throw Error(ErrCode::DuplicateId, "theory '" + id + "' already in the graph");
  return out;
}

TheoryGraph add_morphism(const TheoryGraph& g, Morphism m) {
  if (!g.theories.contains(m.source))
    throw Error(ErrCode::DanglingEndpoint,
                "morphism '" + m.id + "' starts at unknown theory '" + m.source + "'");
  if (!g.theories.contains(m.target))
    throw Error(ErrCode::DanglingEndpoint,
                "morphism '" + m.id + "' ends at unknown theory '" + m.target + "'");
  TheoryGraph out = g;
  std::string id = m.id;
  if (!out.morphisms.insert(id, std::move(m)))
    throw Error(ErrCode::DuplicateId, "morphism '" + id + "' already in the graph");
  return out;
}

TheoryGraph with_theory_replaced(const TheoryGraph& g, Theory t) {
  if (!g.theories.contains(t.id))
    throw Error(ErrCode::UnknownTheory, "no theory '" + t.id + "' to replace");
  TheoryGraph out = g;
  std::string id = t.id;
  out.theories.insert_or_assign(id, std::move(t));
  return out;
}

const Theory& get_theory(const TheoryGraph& g, const std::string& id) {
  const Theory* t = g.theories.find(id);
  if (!t) throw Error(ErrCode::UnknownTheory, "unknown theory '" + id + "'");
  return *t;
}

const Morphism& get_morphism(const TheoryGraph& g, const std::string& id) {
  const Morphism* m = g.morphisms.find(id);
  if (!m) throw Error(ErrCode::UnknownMorphism, "unknown morphism '" + id + "'");
  return *m;
}

MorphismPath make_path(const TheoryGraph& g, const std::vector<std::string>& edges) {
  if (edges.empty())
    throw Error(ErrCode::PathMismatch, "a morphism path needs at least one edge");
  MorphismPath p;
  p.edges = edges;
  p.composite = get_morphism(g, edges[0]);
  for (size_t i = 1; i < edges.size(); ++i) {
    const Morphism& next = get_morphism(g, edges[i]);
    if (p.composite.target != next.source)
      throw Error(ErrCode::PathMismatch,
                  "edge '" + edges[i] + "' starts at " + next.source +
                      ", previous edge ends at " + p.composite.target);
    p.composite = compose(p.composite, next, get_theory(g, p.composite.source),
                          get_theory(g, next.target));
  }
  return p;
}

std::vector<std::pair<std::string, MorphismPath>> backward_reach(
    const TheoryGraph& g, const std::string& target, size_t max_depth) {
  get_theory(g, target);
  if (max_depth < 1)
    throw Error(ErrCode::UsageError, "max_depth must be at least 1");

  // Edge-simple DFS over reversed edges, collecting forward-ordered paths.
  std::vector<std::vector<std::string>> found;
  std::vector<std::string> trail;  // reversed: edge into current node first
  std::set<std::string> used;

  auto dfs = [&](auto&& self, const std::string& node, size_t depth) -> void {
    if (depth == max_depth) return;
    for (const auto& [id, m] : g.morphisms) {
      if (m.target != node || used.count(id)) continue;
      trail.push_back(id);
      used.insert(id);
      std::vector<std::string> forward(trail.rbegin(), trail.rend());
      found.push_back(std::move(forward));
      self(self, m.source, depth + 1);
      used.erase(id);
      trail.pop_back();
    }
  };
  dfs(dfs, target, 0);

  std::sort(found.begin(), found.end(),
            [](const std::vector<std::string>& a, const std::vector<std::string>& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return a < b;
            });

  std::vector<std::pair<std::string, MorphismPath>> out;
  out.reserve(found.size());
  for (const auto& edges : found) {
    MorphismPath p = make_path(g, edges);
    out.emplace_back(p.composite.source, std::move(p));
  }
  return out;
}

namespace {

const FormulaPtr* find_statement(const Theory& t, const std::string& name) {
  if (const FormulaPtr* ax = t.axioms.find(name)) return ax;
  if (const TheoremEntry* th = t.theorems.find(name)) return &th->formula;
  return nullptr;
}

}  // namespace

TransportResult transport(const TheoryGraph& g, const std::string& src_theory,
                          const std::string& theorem, const MorphismPath& path,
                          bool allow_partial,
                          const std::optional<std::string>& new_name) {
  const Theory& src = get_theory(g, src_theory);
  const FormulaPtr* stmt = find_statement(src, theorem);
  if (!stmt)
    throw Error(ErrCode::UnknownTheorem,
                "theory " + src_theory + " has no statement '" + theorem + "'");
  if (path.composite.source != src_theory)
    throw Error(ErrCode::PathMismatch,
                "path starts at " + path.composite.source + ", not " + src_theory);

  VerificationStatus vs = verify(path.composite);
  bool partial = !vs.verified;
  if (partial && !allow_partial) {
    std::string open;
    for (const auto& n : vs.pending) open += (open.empty() ? "" : ", ") + n;
    for (const auto& n : vs.assumed) open += (open.empty() ? "" : ", ") + n;
    throw Error(ErrCode::UnverifiedPath,
                "path is not fully verified (open obligations: " + open + ")");
  }

  const Theory& dst = get_theory(g, path.composite.target);
  FormulaPtr translated = translate_formula(path.composite.assignment, *stmt);

  TransportResult r;
  r.theory = dst.id;
  r.formula = translated;
  for (const auto& [tname, entry] : dst.theorems) {
    if (alpha_eq(entry.formula, translated)) {
      r.graph = g;
      r.name = tname;
      r.duplicate = true;
      return r;
    }
  }

  std::string base = new_name.value_or([&] {
    std::string n = theorem + "_via";
    for (const auto& e : path.edges) n += "_" + e;
    return n;
  }());
  std::string name = base;
  for (int i = 2; dst.axioms.contains(name) || dst.theorems.contains(name); ++i)
    name = base + "_" + std::to_string(i);

  Theory updated = add_theorem(
      dst, name, translated,
      Provenance::transported(src_theory, theorem, path.edges, partial));
  r.graph = with_theory_replaced(g, std::move(updated));
  r.name = name;
  return r;
}

std::vector<std::string> instances_of(const TheoryGraph& g, const std::string& t) {
  get_theory(g, t);
  std::vector<std::string> out;
  for (const auto& [id, m] : g.morphisms)
    if (m.source == t && verify(m).verified) out.push_back(m.target);
  return out;
}

std::vector<RealmCandidate> realm_candidates(const TheoryGraph& g) {
  std::vector<RealmCandidate> out;
  for (const auto& [id1, m1] : g.morphisms) {
    if (m1.source == m1.target || !verify(m1).verified) continue;
    for (const auto& [id2, m2] : g.morphisms) {
      if (m2.source != m1.target || m2.target != m1.source) continue;
      if (!verify(m2).verified) continue;
      RealmCandidate c;
      if (m1.source < m1.target) {
        c = {m1.source, m1.target, id1, id2};
      } else {
        c = {m2.source, m2.target, id2, id1};
      }
      if (std::find_if(out.begin(), out.end(), [&](const RealmCandidate& o) {
            return o.theory1 == c.theory1 && o.theory2 == c.theory2 &&
                   o.forward == c.forward && o.backward == c.backward;
          }) == out.end())
        out.push_back(std::move(c));
    }
  }
  std::sort(out.begin(), out.end(), [](const RealmCandidate& a, const RealmCandidate& b) {
    return std::tie(a.theory1, a.theory2, a.forward, a.backward) <
           std::tie(b.theory1, b.theory2, b.forward, b.backward);
  });
  return out;
}

}  // namespace tgc
