#ifndef CATRANK_NOETHERIAN_HPP
#define CATRANK_NOETHERIAN_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "catrank/rank.hpp"
#include "catrank/skeleton.hpp"

namespace catrank {

// Eventually periodic parallel morphism tower, denoting stem . cycle^w.
struct Tower {
  std::vector<TowerStep> stem;
  std::vector<TowerStep> cycle;  // nonempty
};

// Graph of expression loci reachable through hom positions. Edges are
// labelled with the object pair whose hom they follow; edges that reduce the
// suspension depth inside an omegasusp family are marked decreasing and can
// never close a cycle.
struct PairGraph {
  struct Vertex {
    ExprPtr expr;             // null for the symbolic family vertex
    ExprPtr family_inner;     // set iff this is a family vertex
    std::string label;
    bool point_like = false;
    bool has_objects = false;
    bool is_family() const { return family_inner != nullptr; }
  };
  struct Edge {
    std::size_t from, to;
    std::string a, b;
    bool decreasing = false;
  };
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  std::size_t root = 0;

  std::vector<std::vector<std::size_t>> out_edges() const;
};

PairGraph build_pair_graph(const SkeletonEnv& env, const ExprPtr& e);

struct NoetherianResult {
  std::optional<Tower> counter_tower;  // empty means Certified
  bool certified() const { return !counter_tower.has_value(); }
};

// Decides the Noetherian property by lasso search on the pair graph:
// Certified iff no reachable cycle of non-point-like, object-bearing
// vertices exists once decreasing edges are excluded.
NoetherianResult certify(const SkeletonEnv& env, const ExprPtr& e);

struct ReplayResult {
  bool ok = true;
  std::size_t failed_step = 0;
  std::string reason;
  explicit operator bool() const { return ok; }
};

// Unrolls the tower for `steps` steps from e, checking that every step's
// pair exists among the current vertex's objects, that each successive
// vertex is the hom of the previous pair, and that no visited vertex is
// point-like.
ReplayResult replay_tower(const SkeletonEnv& env, const ExprPtr& e, const Tower& t,
                          std::size_t steps);

}  // namespace catrank

#endif  // CATRANK_NOETHERIAN_HPP
