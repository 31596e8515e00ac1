#include "catrank/noetherian.hpp"

#include <algorithm>
#include <unordered_map>

namespace catrank {

std::vector<std::vector<std::size_t>> PairGraph::out_edges() const {
  std::vector<std::vector<std::size_t>> adj(vertices.size());
  for (std::size_t i = 0; i < edges.size(); ++i) adj[edges[i].from].push_back(i);
  return adj;
}

PairGraph build_pair_graph(const SkeletonEnv& env, const ExprPtr& e) {
  Eval ev(env);
  PairGraph g;
  std::unordered_map<const Expr*, std::size_t> vertex_of;
  std::unordered_map<const Expr*, std::size_t> family_of;  // keyed by inner node

  auto add_vertex = [&](const ExprPtr& raw) -> std::size_t {
    ExprPtr node = resolve(env, raw);
    auto it = vertex_of.find(node.get());
    if (it != vertex_of.end()) return it->second;
    std::size_t id = g.vertices.size();
    vertex_of.emplace(node.get(), id);
    PairGraph::Vertex v;
    v.expr = node;
    v.label = locus_label(env, node);
    v.point_like = ev.is_point_like(node);
    v.has_objects = ev.has_objects(node);
    g.vertices.push_back(std::move(v));
    return id;
  };

  g.root = add_vertex(e);

  std::vector<std::size_t> worklist{g.root};
  std::vector<bool> expanded;
  while (!worklist.empty()) {
    std::size_t id = worklist.back();
    worklist.pop_back();
    if (id < expanded.size() && expanded[id]) continue;
    if (expanded.size() <= id) expanded.resize(id + 1, false);
    expanded[id] = true;

    const PairGraph::Vertex v = g.vertices[id];
    // Point-like vertices have no outgoing edges: their towers are
    // terminally trivial.
    if (v.is_family() || v.point_like || !v.has_objects) continue;

    HomFamily fam = ev.hom_pairs(v.expr);
    for (const auto& f : fam.finite) {
      std::size_t to = add_vertex(f.hom);
      g.edges.push_back(PairGraph::Edge{id, to, f.a, f.b, false});
      if (to >= expanded.size() || !expanded[to]) worklist.push_back(to);
    }
    for (const auto& l : fam.linear) {
      // Concrete depth-one exit: hom(bot_1, top_1) = susp^0(inner) = inner.
      std::size_t to = add_vertex(l.inner);
      g.edges.push_back(PairGraph::Edge{id, to, l.a, l.b, false});
      if (to >= expanded.size() || !expanded[to]) worklist.push_back(to);

      // Symbolic family vertex for the components susp^n(inner), n >= 1; its
      // self-edge reduces the suspension depth and so cannot close a cycle.
      ExprPtr inner = resolve(env, l.inner);
      std::size_t fid;
      auto fit = family_of.find(inner.get());
      if (fit != family_of.end()) {
        fid = fit->second;
      } else {
        fid = g.vertices.size();
        family_of.emplace(inner.get(), fid);
        PairGraph::Vertex fv;
        fv.family_inner = inner;
        fv.label = "susp^n(" + locus_label(env, inner) + ")";
        fv.point_like = false;
        fv.has_objects = true;
        g.vertices.push_back(std::move(fv));
        g.edges.push_back(PairGraph::Edge{fid, fid, "bot", "top", true});
        g.edges.push_back(PairGraph::Edge{fid, to, "bot", "top", false});
      }
      g.edges.push_back(PairGraph::Edge{id, fid, l.a, l.b, false});
    }
  }
  return g;
}

NoetherianResult certify(const SkeletonEnv& env, const ExprPtr& e) {
  PairGraph g = build_pair_graph(env, e);
  auto adj = g.out_edges();

  enum Color : unsigned char { white, gray, black };
  std::vector<Color> color(g.vertices.size(), white);

  auto traversable = [&](std::size_t v) {
    const auto& vx = g.vertices[v];
    return !vx.is_family() && !vx.point_like && vx.has_objects;
  };

  if (!traversable(g.root)) return NoetherianResult{};

  struct Frame {
    std::size_t v;
    std::size_t next;
  };
  std::vector<Frame> frames{{g.root, 0}};
  std::vector<TowerStep> path;  // path[k] leads from frames[k].v to frames[k+1].v
  color[g.root] = gray;

  while (!frames.empty()) {
    Frame& f = frames.back();
    if (f.next >= adj[f.v].size()) {
      color[f.v] = black;
      frames.pop_back();
      if (!path.empty()) path.pop_back();
      continue;
    }
    const PairGraph::Edge& edge = g.edges[adj[f.v][f.next]];
    ++f.next;
    if (edge.decreasing) continue;
    std::size_t w = edge.to;
    if (!traversable(w)) continue;
    if (color[w] == gray) {
      // Lasso: the current path from w onward plus the closing edge.
      std::size_t k = 0;
      while (frames[k].v != w) ++k;
      Tower t;
      t.stem.assign(path.begin(), path.begin() + static_cast<long>(k));
      t.cycle.assign(path.begin() + static_cast<long>(k), path.end());
      t.cycle.push_back(TowerStep{g.vertices[f.v].label, edge.a, edge.b});
      return NoetherianResult{std::move(t)};
    }
    if (color[w] == white) {
      path.push_back(TowerStep{g.vertices[f.v].label, edge.a, edge.b});
      color[w] = gray;
      frames.push_back(Frame{w, 0});
    }
  }
  return NoetherianResult{};
}

ReplayResult replay_tower(const SkeletonEnv& env, const ExprPtr& e, const Tower& t,
                          std::size_t steps) {
  if (t.cycle.empty()) return ReplayResult{false, 0, "tower has an empty cycle"};
  Eval ev(env);
  ExprPtr cur;
  try {
    cur = resolve(env, e);
  } catch (const eval_error& err) {
    return ReplayResult{false, 0, err.what()};
  }
  for (std::size_t k = 0; k < steps; ++k) {
    const TowerStep& s = k < t.stem.size()
                             ? t.stem[k]
                             : t.cycle[(k - t.stem.size()) % t.cycle.size()];
    if (ev.is_point_like(cur))
      return ReplayResult{false, k, "visited hom is point-like"};
    auto objs = ev.objects(cur);
    auto known = [&](const std::string& n) {
      return std::find(objs.begin(), objs.end(), n) != objs.end();
    };
    if (!known(s.a) || !known(s.b))
      return ReplayResult{false, k, "pair (" + s.a + ", " + s.b + ") not among objects"};
    ExprPtr hom = ev.hom_of_pair(cur, s.a, s.b);
    if (!hom) return ReplayResult{false, k, "pair has no hom"};
    cur = resolve(env, hom);
  }
  return ReplayResult{};
}

}  // namespace catrank
