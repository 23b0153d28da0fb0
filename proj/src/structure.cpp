#include "pcg/structure.hpp"

#include <algorithm>
#include <map>

#include "pcg/kernels.hpp"

namespace pcg {

namespace {

void check_cap(const PcPresentation& pres, const char* who) {
  if (pres.order() > order_cap())
    throw ResourceError(std::string(who) + ": group order " + std::to_string(pres.order()) +
                        " exceeds enumeration cap " + std::to_string(order_cap()));
}

/// BFS closure under right multiplication by gens, starting from seeds
/// (seeds must include index 0 slot handling by caller). Returns mask.
std::vector<bool> right_mult_closure(const PcPresentation& pres,
                                     const std::vector<GroupElement>& gens,
                                     const std::vector<std::uint64_t>& seeds) {
  std::vector<bool> mask(static_cast<std::size_t>(pres.order()), false);
  std::vector<std::uint64_t> queue;
  auto add = [&](std::uint64_t idx) {
    if (!mask[idx]) {
      mask[idx] = true;
      queue.push_back(idx);
    }
  };
  add(0);
  for (auto s : seeds) add(s);
  for (std::size_t q = 0; q < queue.size(); ++q) {
    GroupElement x = pres.element_at(queue[q]);
    for (const auto& g : gens) add(pres.index_of(pres.multiply(x, g)));
  }
  return mask;
}

std::vector<std::uint64_t> mask_to_indices(const std::vector<bool>& mask) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 0; i < mask.size(); ++i)
    if (mask[i]) out.push_back(i);
  return out;
}

/// Greedy generating list for a multiplication-closed member set.
std::vector<GroupElement> reduce_generators(const PcPresentation& pres,
                                            const std::vector<std::uint64_t>& members) {
  std::vector<GroupElement> gens;
  std::vector<bool> span(static_cast<std::size_t>(pres.order()), false);
  span[0] = true;
  std::uint64_t span_size = 1;
  for (auto idx : members) {
    if (span[idx]) continue;
    gens.push_back(pres.element_at(idx));
    span = right_mult_closure(pres, gens, {});
    span_size = 0;
    for (auto b : span) span_size += b;
    if (span_size == members.size()) break;
  }
  return gens;
}

} // namespace

bool Subgroup::contains_subgroup(const Subgroup& other) const {
  for (auto idx : other.members)
    if (!mask[idx]) return false;
  return true;
}

Subgroup subgroup_closure(const PcPresentation& pres, const std::vector<GroupElement>& gens,
                          bool normal_closure) {
  check_cap(pres, "subgroup_closure");
  for (const auto& g : gens) pres.validate_element(g, "subgroup_closure");
  std::vector<GroupElement> work = gens;
  std::vector<bool> mask;
  while (true) {
    mask = right_mult_closure(pres, work, {});
    if (!normal_closure) break;
    std::vector<GroupElement> extra;
    for (std::uint64_t idx = 0; idx < mask.size(); ++idx) {
      if (!mask[idx]) continue;
      GroupElement x = pres.element_at(idx);
      for (std::uint32_t i = 0; i < pres.num_gens(); ++i) {
        GroupElement c = pres.conjugate(x, pres.generator(i));
        if (!mask[pres.index_of(c)]) extra.push_back(c);
      }
    }
    if (extra.empty()) break;
    work.insert(work.end(), extra.begin(), extra.end());
  }
  Subgroup s;
  s.ambient = &pres;
  s.members = mask_to_indices(mask);
  s.mask = std::move(mask);
  s.generators = reduce_generators(pres, s.members);
  return s;
}

Subgroup trivial_subgroup(const PcPresentation& pres) {
  check_cap(pres, "trivial_subgroup");
  std::vector<bool> mask(static_cast<std::size_t>(pres.order()), false);
  mask[0] = true;
  Subgroup s;
  s.ambient = &pres;
  s.members = {0};
  s.mask = std::move(mask);
  return s;
}

Subgroup whole_group(const PcPresentation& pres) {
  check_cap(pres, "whole_group");
  Subgroup s;
  s.ambient = &pres;
  s.mask.assign(static_cast<std::size_t>(pres.order()), true);
  s.members.resize(static_cast<std::size_t>(pres.order()));
  for (std::uint64_t i = 0; i < pres.order(); ++i) s.members[i] = i;
  for (std::uint32_t i = 0; i < pres.num_gens(); ++i) s.generators.push_back(pres.generator(i));
  return s;
}

Subgroup subgroup_from_indices(const PcPresentation& pres, std::vector<std::uint64_t> indices) {
  check_cap(pres, "subgroup_from_indices");
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  std::vector<bool> mask(static_cast<std::size_t>(pres.order()), false);
  for (auto i : indices) {
    if (i >= pres.order()) throw InputError("subgroup_from_indices: index out of range");
    mask[i] = true;
  }
  if (indices.empty() || !mask[0]) throw InternalError("subgroup_from_indices: identity missing");
  for (auto i : indices) {
    GroupElement x = pres.element_at(i);
    if (!mask[pres.index_of(pres.inverse(x))])
      throw InternalError("subgroup_from_indices: set not closed under inversion");
  }
  Subgroup s;
  s.ambient = &pres;
  s.members = std::move(indices);
  s.mask = std::move(mask);
  s.generators = reduce_generators(pres, s.members);
  // closure sanity: the greedy generators must reproduce the set
  auto re = right_mult_closure(pres, s.generators, {});
  if (mask_to_indices(re) != s.members)
    throw InternalError("subgroup_from_indices: set not multiplication-closed");
  return s;
}

Subgroup center(const PcPresentation& pres) {
  check_cap(pres, "center");
  pres.require_consistent("center");
  return subgroup_from_indices(pres, kernels::central_element_indices(pres));
}

Subgroup derived_subgroup(const PcPresentation& pres) {
  check_cap(pres, "derived_subgroup");
  pres.require_consistent("derived_subgroup");
  std::vector<GroupElement> comms;
  for (std::uint32_t j = 1; j < pres.num_gens(); ++j)
    for (std::uint32_t i = 0; i < j; ++i)
      comms.push_back(pres.commutator(pres.generator(j), pres.generator(i)));
  Subgroup d = subgroup_closure(pres, comms, /*normal_closure=*/true);
  if (!is_normal(d)) throw InternalError("derived subgroup not normal");
  return d;
}

Subgroup frattini(const PcPresentation& pres) {
  check_cap(pres, "frattini");
  pres.require_consistent("frattini");
  std::vector<GroupElement> gens;
  for (std::uint32_t j = 1; j < pres.num_gens(); ++j)
    for (std::uint32_t i = 0; i < j; ++i)
      gens.push_back(pres.commutator(pres.generator(j), pres.generator(i)));
  for (std::uint32_t i = 0; i < pres.num_gens(); ++i)
    gens.push_back(pres.power(pres.generator(i), pres.prime()));
  Subgroup f = subgroup_closure(pres, gens, /*normal_closure=*/true);
  // G/Phi must be elementary abelian: x^p in Phi for every x
  for (std::uint64_t i = 0; i < pres.order(); ++i)
    if (!f.contains(pres.power(pres.element_at(i), pres.prime())))
      throw InternalError("frattini: quotient not elementary abelian");
  return f;
}

bool is_normal(const Subgroup& sub) {
  const PcPresentation& pres = *sub.ambient;
  for (auto idx : sub.members) {
    GroupElement x = pres.element_at(idx);
    for (std::uint32_t i = 0; i < pres.num_gens(); ++i)
      if (!sub.contains(pres.conjugate(x, pres.generator(i)))) return false;
  }
  return true;
}

SeriesReport upper_central_series(const PcPresentation& pres) {
  check_cap(pres, "upper_central_series");
  pres.require_consistent("upper_central_series");
  SeriesReport rep{SeriesKind::UpperCentral, {}};
  rep.terms.push_back(center(pres));
  while (!rep.terms.back().is_whole_group()) {
    const Subgroup& prev = rep.terms.back();
    auto pred = [&](std::uint64_t idx) {
      GroupElement x = pres.element_at(idx);
      for (std::uint32_t i = 0; i < pres.num_gens(); ++i)
        if (!prev.contains(pres.commutator(x, pres.generator(i)))) return false;
      return true;
    };
    auto next = subgroup_from_indices(pres, kernels::filter_indices(pres.order(), pred));
    if (next.size() <= prev.size())
      throw InternalError("upper central series stalled (non-nilpotent input?)");
    rep.terms.push_back(std::move(next));
  }
  return rep;
}

SeriesReport lower_central_series(const PcPresentation& pres) {
  check_cap(pres, "lower_central_series");
  pres.require_consistent("lower_central_series");
  SeriesReport rep{SeriesKind::LowerCentral, {}};
  rep.terms.push_back(whole_group(pres));
  while (!rep.terms.back().is_trivial()) {
    const Subgroup& prev = rep.terms.back();
    std::vector<GroupElement> comms;
    for (auto idx : prev.members) {
      GroupElement x = pres.element_at(idx);
      for (std::uint32_t i = 0; i < pres.num_gens(); ++i) {
        GroupElement c = pres.commutator(x, pres.generator(i));
        if (!c.is_identity()) comms.push_back(c);
      }
    }
    Subgroup next = comms.empty() ? trivial_subgroup(pres)
                                  : subgroup_closure(pres, comms, /*normal_closure=*/true);
    if (next.size() >= prev.size())
      throw InternalError("lower central series stalled (non-nilpotent input?)");
    rep.terms.push_back(std::move(next));
  }
  return rep;
}

std::uint32_t nilpotency_class(const PcPresentation& pres) {
  return static_cast<std::uint32_t>(lower_central_series(pres).terms.size() - 1);
}

GroupElement QuotientResult::project(const GroupElement& x) const {
  ambient_->validate_element(x, "quotient projection");
  GroupElement cur = x;
  GroupElement q = quotient_.identity();
  for (std::size_t k = 0; k < kept_.size(); ++k) {
    std::uint32_t m = quotient_.rel_order(static_cast<std::uint32_t>(k));
    std::uint32_t y = 0;
    while (y < m && !layer_masks_[k + 1][ambient_->index_of(cur)]) {
      cur = ambient_->multiply(kept_elem_invs_[k], cur);
      ++y;
    }
    if (y == m) throw InternalError("quotient projection failed to peel");
    q.exps[k] = y;
  }
  return q;
}

GroupElement QuotientResult::section(const GroupElement& q) const {
  quotient_.validate_element(q, "quotient section");
  GroupElement x = ambient_->identity();
  for (std::size_t k = 0; k < kept_.size(); ++k)
    if (q.exps[k])
      x = ambient_->multiply(x, ambient_->power(kept_elems_[k], q.exps[k]));
  return x;
}

QuotientResult quotient(const PcPresentation& pres, const Subgroup& n) {
  check_cap(pres, "quotient");
  pres.require_consistent("quotient");
  if (n.ambient != &pres) throw InputError("quotient: subgroup belongs to another group");
  if (!is_normal(n)) throw InputError("quotient: subgroup is not normal");

  const std::uint32_t ngens = pres.num_gens();
  const std::uint32_t p = pres.prime();

  // right-to-left greedy: U starts at N and absorbs generators upward;
  // a generator whose image already lies in U is dropped. U stays
  // normalized by every later generator, so <U, g_i> = U * <g_i>.
  std::vector<bool> u_mask = n.mask;
  std::vector<std::uint32_t> kept_rev;
  std::vector<std::uint32_t> kept_exp_rev;
  std::vector<std::vector<bool>> layer_rev; // pullback below each kept generator
  for (std::uint32_t ii = ngens; ii-- > 0;) {
    GroupElement g = pres.generator(ii);
    std::uint32_t t = 0;
    GroupElement gp = g;
    while (!u_mask[pres.index_of(gp)]) {
      gp = pres.power(gp, p);
      ++t;
      if (t > 64) throw InternalError("quotient: relative order runaway");
    }
    if (t == 0) continue;
    layer_rev.push_back(u_mask);
    kept_rev.push_back(ii);
    kept_exp_rev.push_back(t);
    // U <- U * <g>, exact coset fill
    std::uint64_t m = 1;
    for (std::uint32_t s = 0; s < t; ++s) m *= p;
    std::vector<bool> bigger(u_mask.size(), false);
    GroupElement ga = pres.identity();
    for (std::uint64_t a = 0; a < m; ++a) {
      for (std::uint64_t idx = 0; idx < u_mask.size(); ++idx)
        if (u_mask[idx]) bigger[pres.index_of(pres.multiply(pres.element_at(idx), ga))] = true;
      ga = pres.multiply(ga, g);
    }
    u_mask = std::move(bigger);
  }

  QuotientResult out;
  out.ambient_ = &pres;
  const std::uint32_t r = static_cast<std::uint32_t>(kept_rev.size());
  std::vector<std::uint32_t> exps(r);
  out.kept_.resize(r);
  out.layer_masks_.resize(r + 1);
  for (std::uint32_t k = 0; k < r; ++k) {
    out.kept_[k] = kept_rev[r - 1 - k];
    exps[k] = kept_exp_rev[r - 1 - k];
    out.layer_masks_[k + 1] = layer_rev[r - 1 - k];
  }
  out.layer_masks_[0] = u_mask; // full pullback = G when N <= G proper; unused slot kept for symmetry
  for (std::uint32_t k = 0; k < r; ++k) {
    out.kept_elems_.push_back(pres.generator(out.kept_[k]));
    out.kept_elem_invs_.push_back(pres.inverse(out.kept_elems_[k]));
  }

  if (r == 0) {
    // N = G: the quotient is the trivial group
    out.quotient_ = PcPresentation(p, {}, {}, {});
    out.quotient_.check_consistency();
    return out;
  }

  // peel helper against the final layer data
  auto express = [&](const GroupElement& x) {
    GroupElement cur = x;
    ExpVec word(r, 0);
    for (std::uint32_t k = 0; k < r; ++k) {
      std::uint64_t m = 1;
      for (std::uint32_t s = 0; s < exps[k]; ++s) m *= p;
      std::uint64_t y = 0;
      while (y < m && !out.layer_masks_[k + 1][pres.index_of(cur)]) {
        cur = pres.multiply(out.kept_elem_invs_[k], cur);
        ++y;
      }
      if (y == m) throw InternalError("quotient: express failed");
      word[k] = static_cast<std::uint32_t>(y);
    }
    return word;
  };

  std::vector<ExpVec> pow_tails;
  for (std::uint32_t k = 0; k < r; ++k) {
    std::uint64_t m = 1;
    for (std::uint32_t s = 0; s < exps[k]; ++s) m *= p;
    ExpVec tail = express(pres.power(out.kept_elems_[k], static_cast<std::int64_t>(m)));
    for (std::uint32_t l = 0; l <= k; ++l)
      if (tail[l]) throw InternalError("quotient: power tail not rightward");
    pow_tails.push_back(std::move(tail));
  }
  std::vector<ExpVec> comm_tails(static_cast<std::size_t>(r) * (r - 1) / 2);
  for (std::uint32_t j = 1; j < r; ++j)
    for (std::uint32_t i = 0; i < j; ++i) {
      ExpVec tail = express(pres.commutator(out.kept_elems_[j], out.kept_elems_[i]));
      for (std::uint32_t l = 0; l <= i; ++l)
        if (tail[l]) throw InternalError("quotient: commutator tail not rightward");
      comm_tails[PcPresentation::pair_index(j, i)] = std::move(tail);
    }

  out.quotient_ = PcPresentation(p, std::move(exps), std::move(pow_tails), std::move(comm_tails));
  auto rep = out.quotient_.check_consistency();
  if (!rep.pass)
    throw InternalError("quotient presentation inconsistent: " + rep.failing_word);
  if (out.quotient_.order() * n.size() != pres.order())
    throw InternalError("quotient: order mismatch");
  return out;
}

std::uint32_t minimal_generators(const PcPresentation& pres) {
  check_cap(pres, "minimal_generators");
  pres.require_consistent("minimal_generators");
  Subgroup f = frattini(pres);
  std::uint64_t q = pres.order() / f.size();
  std::uint32_t d = 0;
  while (q > 1) {
    q /= pres.prime();
    ++d;
  }
  return d;
}

std::vector<GroupElement> minimal_generating_sequence(const PcPresentation& pres) {
  Subgroup f = frattini(pres);
  std::vector<GroupElement> kept;
  std::vector<GroupElement> span_gens = f.generators;
  Subgroup span = subgroup_closure(pres, span_gens);
  for (std::uint32_t i = 0; i < pres.num_gens(); ++i) {
    GroupElement g = pres.generator(i);
    if (span.contains(g)) continue;
    kept.push_back(g);
    span_gens.push_back(g);
    span = subgroup_closure(pres, span_gens);
  }
  if (kept.size() != minimal_generators(pres))
    throw InternalError("minimal generating sequence has wrong size");
  return kept;
}

std::vector<GroupElement> greedy_generating_sequence(const PcPresentation& pres) {
  check_cap(pres, "greedy_generating_sequence");
  pres.require_consistent("greedy_generating_sequence");
  std::vector<GroupElement> kept;
  Subgroup span = trivial_subgroup(pres);
  for (std::uint32_t i = 0; i < pres.num_gens(); ++i) {
    GroupElement g = pres.generator(i);
    if (span.contains(g)) continue;
    kept.push_back(g);
    span = subgroup_closure(pres, kept);
    if (span.is_whole_group()) break;
  }
  return kept;
}

bool is_cyclic(const Subgroup& sub) {
  const PcPresentation& pres = *sub.ambient;
  for (auto idx : sub.members)
    if (pres.element_order(pres.element_at(idx)) == sub.size()) return true;
  return false;
}

std::uint64_t exponent(const PcPresentation& pres) {
  check_cap(pres, "exponent");
  auto hist = kernels::element_order_histogram(pres);
  return hist.rbegin()->first;
}

std::uint64_t exponent(const Subgroup& sub) {
  std::uint64_t e = 1;
  for (auto idx : sub.members)
    e = std::max(e, sub.ambient->element_order(sub.ambient->element_at(idx)));
  return e;
}

std::vector<std::uint64_t> abelian_invariants(const PcPresentation& pres) {
  check_cap(pres, "abelian_invariants");
  for (std::uint32_t j = 1; j < pres.num_gens(); ++j)
    for (std::uint32_t i = 0; i < j; ++i)
      if (pres.has_comm_tail(j, i))
        throw InputError("abelian_invariants: presentation is not abelian");
  if (pres.order() == 1) return {};
  auto hist = kernels::element_order_histogram(pres);
  // n_k = #elements with x^{p^k} = 1; rank profile r_k = log_p(n_k/n_{k-1})
  const std::uint64_t p = pres.prime();
  std::vector<std::uint32_t> ranks;
  std::uint64_t nk_prev = 1, pk = 1, seen = hist.count(1) ? hist.at(1) : 1;
  while (seen < pres.order() || pk < hist.rbegin()->first) {
    pk *= p;
    std::uint64_t nk = 0;
    for (const auto& [ord, cnt] : hist)
      if (ord <= pk) nk += cnt;
    std::uint64_t ratio = nk / nk_prev;
    std::uint32_t rk = 0;
    while (ratio > 1) {
      ratio /= p;
      ++rk;
    }
    ranks.push_back(rk);
    nk_prev = nk;
    seen = nk;
  }
  std::vector<std::uint64_t> factors;
  if (ranks.empty()) return factors;
  for (std::uint32_t i = 0; i < ranks[0]; ++i) {
    std::uint32_t lambda = 0;
    for (auto rk : ranks)
      if (rk > i) ++lambda;
    std::uint64_t f = 1;
    for (std::uint32_t s = 0; s < lambda; ++s) f *= p;
    factors.push_back(f);
  }
  return factors; // descending since ranks are non-increasing
}

} // namespace pcg
