#include "catrank/rank.hpp"

namespace catrank {

bool Rank::operator==(const Rank& o) const {
  if (is_bottom() && o.is_bottom()) return true;
  if (is_of() && o.is_of()) return value() == o.value();
  // NoSmallRank values compare equal as ranks regardless of the witness.
  return is_no_small_rank() && o.is_no_small_rank();
}

std::string print_rank(const Rank& r) {
  if (r.is_bottom()) return "bottom";
  if (r.is_of()) return print_ordinal(r.value());
  return "no-small-rank";
}

Ordinal rank_plus_one(const Rank& r) {
  if (r.is_bottom()) return Ordinal{};
  if (r.is_of()) return succ(r.value());
  throw eval_error("rank_plus_one applied to a rank-free value");
}

Rank RankEval::rank_of(const ExprPtr& e) { return rank_impl(e); }

namespace {

// Witness stems recorded in the memo table are rooted at the memoised node;
// the session path at detection time is rooted at the query expression.
// These two helpers convert between the two framings.
Rank rebase_witness(const Rank& r, std::size_t depth) {
  if (!r.is_no_small_rank()) return r;
  const CycleWitness& w = r.witness();
  CycleWitness out;
  if (w.stem.size() >= depth) {
    out.stem.assign(w.stem.begin() + static_cast<long>(depth), w.stem.end());
    out.cycle = w.cycle;
  } else {
    // The node sits inside the cycle: rotate so the cycle starts at it.
    std::size_t offset = depth - w.stem.size();
    out.cycle.assign(w.cycle.begin() + static_cast<long>(offset), w.cycle.end());
    out.cycle.insert(out.cycle.end(), w.cycle.begin(),
                     w.cycle.begin() + static_cast<long>(offset));
  }
  return Rank::no_small_rank(std::move(out));
}

Rank prepend_path(const Rank& r, const std::vector<TowerStep>& path) {
  if (!r.is_no_small_rank() || path.empty()) return r;
  CycleWitness out;
  out.stem = path;
  out.stem.insert(out.stem.end(), r.witness().stem.begin(), r.witness().stem.end());
  out.cycle = r.witness().cycle;
  return Rank::no_small_rank(std::move(out));
}

}  // namespace

Rank RankEval::rank_impl(const ExprPtr& e) {
  if (!e) throw eval_error("null expression");
  if (const auto* r = as<RefT>(e)) {
    auto hit = in_progress_.find(r->name);
    if (hit != in_progress_.end()) {
      // Re-entry through a hom position: the steps since the first entry of
      // this definition form a genuine cycle, everything before is the stem.
      CycleWitness w;
      w.stem.assign(path_.begin(), path_.begin() + static_cast<long>(hit->second));
      w.cycle.assign(path_.begin() + static_cast<long>(hit->second), path_.end());
      return Rank::no_small_rank(std::move(w));
    }
    return rank_impl(eval_.env().require(r->name));
  }

  auto memo_hit = memo_.find(e);
  if (memo_hit != memo_.end()) return prepend_path(memo_hit->second, path_);

  if (eval_.is_point_like(e)) {
    Rank result = Rank::bottom();
    memo_[e] = result;
    return result;
  }

  auto node_hit = nodes_in_progress_.find(e.get());
  if (node_hit != nodes_in_progress_.end()) {
    // Structural re-entry: the node is shared between definitions, so the
    // name set never saw the loop close.
    CycleWitness w;
    w.stem.assign(path_.begin(), path_.begin() + static_cast<long>(node_hit->second));
    w.cycle.assign(path_.begin() + static_cast<long>(node_hit->second), path_.end());
    return Rank::no_small_rank(std::move(w));
  }
  nodes_in_progress_.emplace(e.get(), path_.size());

  // A definition body marks its name in progress, so re-entry through any
  // reference chain is caught at the same depth whichever way it was entered.
  const std::string* def_name = eval_.env().name_of(e.get());
  bool registered = false;
  if (def_name) registered = in_progress_.emplace(*def_name, path_.size()).second;

  const std::string locus = locus_label(eval_.env(), e);
  HomFamily fam = eval_.hom_pairs(e);
  std::vector<Ordinal> contributions;
  contributions.reserve(fam.finite.size() + fam.linear.size());

  Rank result;
  bool found_cycle = false;
  for (const auto& f : fam.finite) {
    path_.push_back(TowerStep{locus, f.a, f.b});
    Rank hr = rank_impl(f.hom);
    path_.pop_back();
    if (hr.is_no_small_rank()) {
      result = hr;
      found_cycle = true;
      break;
    }
    contributions.push_back(rank_plus_one(hr));
  }
  if (!found_cycle) {
    for (const auto& l : fam.linear) {
      path_.push_back(TowerStep{locus, l.a, l.b});
      Rank ir = rank_impl(l.inner);
      path_.pop_back();
      if (ir.is_no_small_rank()) {
        result = ir;
        found_cycle = true;
        break;
      }
      contributions.push_back(sup_linear(LinearFamily{rank_plus_one(ir)}));
    }
  }
  if (!found_cycle) result = Rank::of(sup_finite(contributions));

  if (registered) in_progress_.erase(*def_name);
  nodes_in_progress_.erase(e.get());
  memo_[e] = found_cycle ? rebase_witness(result, path_.size()) : result;
  return result;
}

bool RankEval::member(const ExprPtr& e, const OrdinalExt& theta) {
  Rank r = rank_of(e);
  if (r.is_bottom()) return true;
  if (r.is_no_small_rank()) return false;
  return OrdinalExt(r.value()) < theta;
}

bool RankEval::member_via_homs(const ExprPtr& e, const Ordinal& theta) {
  if (!theta.is_successor())
    throw eval_error("member_via_homs requires a successor stage, got " + print_ordinal(theta));
  Ordinal theta0 = pred(theta);

  HomFamily fam = eval_.hom_pairs(resolve(eval_.env(), e));
  for (const auto& f : fam.finite) {
    if (!member(f.hom, OrdinalExt(theta0))) return false;
  }
  for (const auto& l : fam.linear) {
    Rank ir = rank_of(l.inner);
    if (ir.is_no_small_rank()) return false;
    if (!(sup_linear(LinearFamily{rank_plus_one(ir)}) <= theta0)) return false;
  }
  return true;
}

bool RankEval::bounded_member(const ExprPtr& e, const OrdinalExt& theta) {
  return eval_.hereditarily_finite(e) && member(e, theta);
}

Rank rank_of(const SkeletonEnv& env, const ExprPtr& e) { return RankEval(env).rank_of(e); }

bool member(const SkeletonEnv& env, const ExprPtr& e, const OrdinalExt& theta) {
  return RankEval(env).member(e, theta);
}

bool member_via_homs(const SkeletonEnv& env, const ExprPtr& e, const Ordinal& theta) {
  return RankEval(env).member_via_homs(e, theta);
}

bool bounded_member(const SkeletonEnv& env, const ExprPtr& e, const OrdinalExt& theta) {
  return RankEval(env).bounded_member(e, theta);
}

}  // namespace catrank
