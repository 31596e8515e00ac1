#include "catrank/skeleton.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace catrank {

const ExprPtr* NodeT::find_hom(const std::string& a, const std::string& b) const {
  for (const auto& [pair, hom] : homs) {
    if (pair.first == a && pair.second == b) return &hom;
  }
  return nullptr;
}

ExprPtr mk_point() {
  static const ExprPtr p = std::make_shared<const Expr>(Expr{PointT{}});
  return p;
}

ExprPtr mk_empty() {
  static const ExprPtr p = std::make_shared<const Expr>(Expr{EmptyT{}});
  return p;
}

ExprPtr mk_node(std::vector<std::string> objects,
                std::vector<std::pair<std::pair<std::string, std::string>, ExprPtr>> homs) {
  if (objects.empty()) throw std::invalid_argument("cat requires at least one object");
  for (const auto& [pair, hom] : homs) {
    auto known = [&](const std::string& n) {
      return std::find(objects.begin(), objects.end(), n) != objects.end();
    };
    if (!known(pair.first) || !known(pair.second))
      throw std::invalid_argument("hom entry names unknown object '" + pair.first + "','" +
                                  pair.second + "'");
  }
  return std::make_shared<const Expr>(Expr{NodeT{std::move(objects), std::move(homs)}});
}

ExprPtr mk_susp(ExprPtr inner) { return std::make_shared<const Expr>(Expr{SuspT{std::move(inner)}}); }

ExprPtr mk_coprod(std::vector<ExprPtr> components) {
  return std::make_shared<const Expr>(Expr{CoprodT{std::move(components)}});
}

ExprPtr mk_omegasusp(ExprPtr inner) {
  return std::make_shared<const Expr>(Expr{OmegaSuspT{std::move(inner)}});
}

ExprPtr mk_ref(std::string name, int line, int col) {
  return std::make_shared<const Expr>(Expr{RefT{std::move(name), line, col}});
}

void SkeletonEnv::define(std::string name, ExprPtr body) {
  if (index_.count(name)) throw eval_error("duplicate definition '" + name + "'");
  index_[name] = defs_.size();
  names_.emplace(body.get(), name);
  defs_.emplace_back(std::move(name), std::move(body));
}

const ExprPtr* SkeletonEnv::lookup(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return nullptr;
  return &defs_[it->second].second;
}

const ExprPtr& SkeletonEnv::require(const std::string& name) const {
  const ExprPtr* p = lookup(name);
  if (!p) throw eval_error("unresolved reference '" + name + "'");
  return *p;
}

const std::string* SkeletonEnv::name_of(const Expr* node) const {
  auto it = names_.find(node);
  return it == names_.end() ? nullptr : &it->second;
}

const ExprPtr& SkeletonEnv::entry(const std::optional<std::string>& requested) const {
  if (requested) return require(*requested);
  if (main_) return require(*main_);
  if (defs_.size() == 1) return defs_[0].second;
  throw eval_error(defs_.empty() ? "environment has no definitions"
                                 : "no main definition selected; pass a definition name");
}

namespace {

enum class RefKind { alias, hom, component };

struct RefEdge {
  std::string from, to;
  RefKind kind;
  int line, col;
};

void collect_refs(const std::string& from, const ExprPtr& e, bool via_hom, bool via_component,
                  std::vector<RefEdge>& out) {
  if (const auto* r = as<RefT>(e)) {
    RefKind kind = via_component ? RefKind::component
                                 : (via_hom ? RefKind::hom : RefKind::alias);
    out.push_back(RefEdge{from, r->name, kind, r->line, r->col});
    return;
  }
  if (const auto* n = as<NodeT>(e)) {
    for (const auto& [pair, hom] : n->homs) collect_refs(from, hom, true, via_component, out);
    return;
  }
  if (const auto* s = as<SuspT>(e)) {
    collect_refs(from, s->inner, true, via_component, out);
    return;
  }
  if (const auto* c = as<CoprodT>(e)) {
    for (const auto& comp : c->components) collect_refs(from, comp, via_hom, true, out);
    return;
  }
  if (const auto* o = as<OmegaSuspT>(e)) {
    collect_refs(from, o->inner, via_hom, true, out);
    return;
  }
}

// Tarjan strongly connected components over definition names.
struct SccFinder {
  const std::map<std::string, std::vector<std::string>>& adj;
  std::map<std::string, int> index, low, comp;
  std::vector<std::string> stack;
  std::map<std::string, bool> on_stack;
  int counter = 0, comps = 0;

  explicit SccFinder(const std::map<std::string, std::vector<std::string>>& a) : adj(a) {}

  void run() {
    for (const auto& [v, _] : adj)
      if (!index.count(v)) strongconnect(v);
  }

  void strongconnect(const std::string& v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    auto it = adj.find(v);
    if (it != adj.end()) {
      for (const auto& w : it->second) {
        if (!index.count(w)) {
          strongconnect(w);
          low[v] = std::min(low[v], low[w]);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
      }
    }
    if (low[v] == index[v]) {
      while (true) {
        std::string w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp[w] = comps;
        if (w == v) break;
      }
      ++comps;
    }
  }
};

}  // namespace

void SkeletonEnv::validate() const {
  if (main_ && !lookup(*main_))
    throw eval_error("main names an unknown definition '" + *main_ + "'");

  std::vector<RefEdge> edges;
  for (const auto& [name, body] : defs_) collect_refs(name, body, false, false, edges);

  for (const auto& e : edges) {
    if (!lookup(e.to)) {
      std::ostringstream os;
      os << "unresolved reference '" << e.to << "' in definition '" << e.from << "'";
      if (e.line >= 0) os << " at line " << e.line << ", col " << e.col;
      throw eval_error(os.str());
    }
  }

  std::map<std::string, std::vector<std::string>> full, aliases;
  for (const auto& [name, _] : defs_) {
    full[name];
    aliases[name];
  }
  for (const auto& e : edges) {
    full[e.from].push_back(e.to);
    if (e.kind == RefKind::alias) aliases[e.from].push_back(e.to);
  }

  SccFinder scc(full);
  scc.run();
  for (const auto& e : edges) {
    if (e.kind == RefKind::component && scc.comp.at(e.from) == scc.comp.at(e.to)) {
      throw eval_error("ill-founded cycle through a component position involving definition '" +
                       e.from + "'");
    }
  }

  SccFinder ascc(aliases);
  ascc.run();
  std::map<int, int> alias_comp_size;
  for (const auto& [v, c] : ascc.comp) ++alias_comp_size[c];
  for (const auto& e : edges) {
    if (e.kind != RefKind::alias) continue;
    bool self_loop = e.from == e.to;
    if (self_loop || (ascc.comp.at(e.from) == ascc.comp.at(e.to) &&
                      alias_comp_size[ascc.comp.at(e.from)] > 1)) {
      throw eval_error("ill-founded alias cycle involving definition '" + e.from + "'");
    }
  }
}

ExprPtr resolve(const SkeletonEnv& env, ExprPtr e) {
  std::unordered_set<std::string> seen;
  while (const auto* r = as<RefT>(e)) {
    if (!seen.insert(r->name).second)
      throw eval_error("alias cycle at reference '" + r->name + "'");
    e = env.require(r->name);
  }
  return e;
}

bool Eval::has_objects(const ExprPtr& e) {
  std::unordered_set<std::string> in_progress;
  return has_objects_impl(e, in_progress);
}

bool Eval::has_objects_impl(const ExprPtr& e, std::unordered_set<std::string>& in_progress) {
  if (!e) throw eval_error("null expression");
  if (const auto* r = as<RefT>(e)) {
    if (in_progress.count(r->name)) return false;
    in_progress.insert(r->name);
    bool v = has_objects_impl(env_.require(r->name), in_progress);
    in_progress.erase(r->name);
    return v;
  }
  auto it = memo_objects_.find(e);
  if (it != memo_objects_.end()) return it->second;
  bool v = false;
  if (as<PointT>(e)) {
    v = true;
  } else if (as<EmptyT>(e)) {
    v = false;
  } else if (as<NodeT>(e)) {
    v = true;  // objects list is nonempty by construction
  } else if (as<SuspT>(e)) {
    v = true;  // bot and top exist regardless of the inner skeleton
  } else if (const auto* c = as<CoprodT>(e)) {
    for (const auto& comp : c->components)
      if (has_objects_impl(comp, in_progress)) {
        v = true;
        break;
      }
  } else if (as<OmegaSuspT>(e)) {
    v = true;  // the susp^1 component always has objects
  }
  memo_objects_[e] = v;
  return v;
}

bool Eval::is_point_like(const ExprPtr& e) {
  std::unordered_set<std::string> in_progress;
  return is_point_like_impl(e, in_progress);
}

bool Eval::is_point_like_impl(const ExprPtr& e, std::unordered_set<std::string>& in_progress) {
  if (!e) throw eval_error("null expression");
  if (const auto* r = as<RefT>(e)) {
    if (in_progress.count(r->name)) return false;  // least fixed point
    in_progress.insert(r->name);
    bool v = is_point_like_impl(env_.require(r->name), in_progress);
    in_progress.erase(r->name);
    return v;
  }
  auto it = memo_point_like_.find(e);
  if (it != memo_point_like_.end()) return it->second;
  bool v = false;
  if (as<PointT>(e)) {
    v = true;
  } else if (const auto* n = as<NodeT>(e)) {
    if (n->objects.size() == 1) {
      const ExprPtr* endo = n->find_hom(n->objects[0], n->objects[0]);
      v = endo ? is_point_like_impl(*endo, in_progress) : false;
    }
  } else if (const auto* c = as<CoprodT>(e)) {
    int with_objects = 0;
    ExprPtr candidate;
    for (const auto& comp : c->components) {
      if (has_objects(comp)) {
        ++with_objects;
        candidate = comp;
      }
    }
    v = with_objects == 1 && is_point_like_impl(candidate, in_progress);
  }
  memo_point_like_[e] = v;
  return v;
}

bool Eval::hereditarily_finite(const ExprPtr& e) {
  std::unordered_set<const Expr*> seen;
  return hf_impl(e, seen);
}

bool Eval::hf_impl(const ExprPtr& e, std::unordered_set<const Expr*>& seen) {
  if (!e) throw eval_error("null expression");
  if (const auto* r = as<RefT>(e)) {
    const ExprPtr& body = env_.require(r->name);
    if (!seen.insert(body.get()).second) return true;
    return hf_impl(body, seen);
  }
  auto it = memo_hf_.find(e);
  if (it != memo_hf_.end()) return it->second;
  bool v = true;
  if (as<OmegaSuspT>(e)) {
    v = false;
  } else if (const auto* n = as<NodeT>(e)) {
    for (const auto& [pair, hom] : n->homs)
      if (!hf_impl(hom, seen)) {
        v = false;
        break;
      }
  } else if (const auto* s = as<SuspT>(e)) {
    v = hf_impl(s->inner, seen);
  } else if (const auto* c = as<CoprodT>(e)) {
    for (const auto& comp : c->components)
      if (!hf_impl(comp, seen)) {
        v = false;
        break;
      }
  }
  memo_hf_[e] = v;
  return v;
}

std::vector<std::string> Eval::objects(const ExprPtr& e) {
  std::vector<std::string> out;
  objects_into(resolve(env_, e), "", out);
  return out;
}

void Eval::objects_into(const ExprPtr& e0, const std::string& prefix,
                        std::vector<std::string>& out) {
  ExprPtr e = resolve(env_, e0);
  if (as<PointT>(e)) {
    out.push_back(prefix + "pt");
  } else if (as<EmptyT>(e)) {
    // no objects
  } else if (const auto* n = as<NodeT>(e)) {
    for (const auto& o : n->objects) out.push_back(prefix + o);
  } else if (as<SuspT>(e)) {
    out.push_back(prefix + "bot");
    out.push_back(prefix + "top");
  } else if (const auto* c = as<CoprodT>(e)) {
    for (std::size_t i = 0; i < c->components.size(); ++i)
      objects_into(c->components[i], prefix + std::to_string(i) + ".", out);
  } else if (const auto* o = as<OmegaSuspT>(e)) {
    objects_into(o->inner, prefix + "0.", out);
    out.push_back(prefix + "fam.bot");
    out.push_back(prefix + "fam.top");
  }
}

ExprPtr Eval::hom_of_pair(const ExprPtr& e0, const std::string& a, const std::string& b) {
  ExprPtr e = resolve(env_, e0);
  if (as<PointT>(e)) {
    if (a == "pt" && b == "pt") return mk_point();
    return nullptr;
  }
  if (as<EmptyT>(e)) return nullptr;
  if (const auto* n = as<NodeT>(e)) {
    auto known = [&](const std::string& x) {
      return std::find(n->objects.begin(), n->objects.end(), x) != n->objects.end();
    };
    if (!known(a) || !known(b)) return nullptr;
    const ExprPtr* hom = n->find_hom(a, b);
    return hom ? *hom : mk_empty();
  }
  if (const auto* s = as<SuspT>(e)) {
    if (a == "bot" && b == "top") return s->inner;
    if (a == "bot" && b == "bot") return mk_point();
    if (a == "top" && b == "top") return mk_point();
    if (a == "top" && b == "bot") return mk_empty();
    return nullptr;
  }
  if (const auto* c = as<CoprodT>(e)) {
    auto split = [&](const std::string& q) -> std::optional<std::pair<std::size_t, std::string>> {
      auto dot = q.find('.');
      if (dot == std::string::npos) return std::nullopt;
      std::size_t idx = 0;
      for (char ch : q.substr(0, dot)) {
        if (ch < '0' || ch > '9') return std::nullopt;
        idx = idx * 10 + static_cast<std::size_t>(ch - '0');
      }
      if (idx >= c->components.size()) return std::nullopt;
      return std::make_pair(idx, q.substr(dot + 1));
    };
    auto pa = split(a);
    auto pb = split(b);
    if (!pa || !pb) return nullptr;
    if (pa->first != pb->first) return mk_empty();  // cross-component hom
    return hom_of_pair(c->components[pa->first], pa->second, pb->second);
  }
  if (const auto* o = as<OmegaSuspT>(e)) {
    auto strip = [](const std::string& q, const char* prefix) -> std::optional<std::string> {
      std::string p(prefix);
      if (q.rfind(p, 0) == 0) return q.substr(p.size());
      return std::nullopt;
    };
    auto a0 = strip(a, "0.");
    auto b0 = strip(b, "0.");
    bool a_fam = a == "fam.bot" || a == "fam.top";
    bool b_fam = b == "fam.bot" || b == "fam.top";
    if (a0 && b0) return hom_of_pair(o->inner, *a0, *b0);
    if (a_fam && b_fam) {
      // family pair read at depth one: hom(bot, top) of susp^1(inner)
      if (a == "fam.bot" && b == "fam.top") return o->inner;
      if (a == b) return mk_point();
      return mk_empty();
    }
    if ((a0 && b_fam) || (a_fam && b0)) return mk_empty();  // cross hom
    return nullptr;
  }
  return nullptr;
}

HomFamily Eval::hom_pairs(const ExprPtr& e0) {
  if (as<RefT>(e0)) throw eval_error("hom_pairs requires a resolved expression");
  const ExprPtr& e = e0;
  HomFamily fam;
  if (as<PointT>(e)) {
    fam.finite.push_back({"pt", "pt", mk_point()});
    return fam;
  }
  if (as<EmptyT>(e)) return fam;
  if (const auto* n = as<NodeT>(e)) {
    for (const auto& x : n->objects) {
      for (const auto& y : n->objects) {
        const ExprPtr* hom = n->find_hom(x, y);
        fam.finite.push_back({x, y, hom ? *hom : mk_empty()});
      }
    }
    return fam;
  }
  if (const auto* s = as<SuspT>(e)) {
    fam.finite.push_back({"bot", "top", s->inner});
    fam.finite.push_back({"bot", "bot", mk_point()});
    fam.finite.push_back({"top", "top", mk_point()});
    fam.finite.push_back({"top", "bot", mk_empty()});
    return fam;
  }
  if (const auto* c = as<CoprodT>(e)) {
    std::vector<bool> nonempty(c->components.size());
    std::vector<std::string> first_obj(c->components.size());
    for (std::size_t i = 0; i < c->components.size(); ++i) {
      nonempty[i] = has_objects(c->components[i]);
      if (nonempty[i]) {
        auto objs = objects(c->components[i]);
        first_obj[i] = objs.empty() ? "?" : objs.front();
      }
      std::string prefix = std::to_string(i) + ".";
      HomFamily sub = hom_pairs(resolve(env_, c->components[i]));
      for (auto& f : sub.finite) fam.finite.push_back({prefix + f.a, prefix + f.b, f.hom});
      for (auto& l : sub.linear) fam.linear.push_back({prefix + l.a, prefix + l.b, l.inner});
    }
    for (std::size_t i = 0; i < c->components.size(); ++i) {
      for (std::size_t j = 0; j < c->components.size(); ++j) {
        if (i == j || !nonempty[i] || !nonempty[j]) continue;
        fam.finite.push_back({std::to_string(i) + "." + first_obj[i],
                              std::to_string(j) + "." + first_obj[j], mk_empty()});
      }
    }
    return fam;
  }
  if (const auto* o = as<OmegaSuspT>(e)) {
    HomFamily sub = hom_pairs(resolve(env_, o->inner));
    for (auto& f : sub.finite) fam.finite.push_back({"0." + f.a, "0." + f.b, f.hom});
    for (auto& l : sub.linear) fam.linear.push_back({"0." + l.a, "0." + l.b, l.inner});
    fam.finite.push_back({"fam.bot", "fam.bot", mk_point()});
    fam.finite.push_back({"fam.top", "fam.bot", mk_empty()});
    fam.linear.push_back({"fam.bot", "fam.top", o->inner});
    return fam;
  }
  throw eval_error("hom_pairs: unhandled expression");
}

bool has_objects(const SkeletonEnv& env, const ExprPtr& e) { return Eval(env).has_objects(e); }
bool is_point_like(const SkeletonEnv& env, const ExprPtr& e) { return Eval(env).is_point_like(e); }
HomFamily hom_pairs(const SkeletonEnv& env, const ExprPtr& e) {
  Eval ev(env);
  return ev.hom_pairs(resolve(env, e));
}

ExprPtr construct(const Ordinal& theta) {
  std::uint64_t omega_coeff = 0, finite_part = 0;
  for (const auto& t : theta.terms()) {
    if (t.exponent.is_zero()) {
      finite_part = t.coefficient;
    } else if (t.exponent.is_finite() && t.exponent.finite_value() == 1) {
      omega_coeff = t.coefficient;
    } else {
      throw unsupported_ordinal("construct requires theta < w^2, got " + print_ordinal(theta));
    }
  }
  if (theta.is_zero()) return mk_empty();
  ExprPtr e = mk_empty();
  for (std::uint64_t i = 0; i < omega_coeff; ++i) e = mk_omegasusp(e);
  for (std::uint64_t i = 0; i < finite_part; ++i) e = mk_susp(e);
  return e;
}

namespace {

void print_into(const ExprPtr& e, std::ostringstream& os) {
  if (as<PointT>(e)) {
    os << "point";
  } else if (as<EmptyT>(e)) {
    os << "empty";
  } else if (const auto* n = as<NodeT>(e)) {
    os << "cat { objects: [";
    for (std::size_t i = 0; i < n->objects.size(); ++i) {
      if (i) os << ", ";
      os << n->objects[i];
    }
    os << "];";
    for (const auto& [pair, hom] : n->homs) {
      if (as<EmptyT>(hom)) continue;  // omitted entries denote empty
      os << " hom(" << pair.first << ", " << pair.second << ") = ";
      print_into(hom, os);
      os << ";";
    }
    os << " }";
  } else if (const auto* s = as<SuspT>(e)) {
    os << "susp(";
    print_into(s->inner, os);
    os << ")";
  } else if (const auto* c = as<CoprodT>(e)) {
    os << "coprod(";
    for (std::size_t i = 0; i < c->components.size(); ++i) {
      if (i) os << ", ";
      print_into(c->components[i], os);
    }
    os << ")";
  } else if (const auto* o = as<OmegaSuspT>(e)) {
    os << "omegasusp(";
    print_into(o->inner, os);
    os << ")";
  } else if (const auto* r = as<RefT>(e)) {
    os << r->name;
  }
}

}  // namespace

std::string print_expr(const ExprPtr& e) {
  std::ostringstream os;
  print_into(e, os);
  return os.str();
}

std::string print_env(const SkeletonEnv& env) {
  std::ostringstream os;
  for (const auto& [name, body] : env.defs()) {
    os << "def " << name << " = ";
    print_into(body, os);
    os << ";\n";
  }
  if (env.main()) os << "main = " << *env.main() << ";\n";
  return os.str();
}

std::string locus_label(const SkeletonEnv& env, const ExprPtr& e) {
  if (const auto* r = as<RefT>(e)) return r->name;
  if (const std::string* n = env.name_of(e.get())) return *n;
  return print_expr(e);
}

}  // namespace catrank
