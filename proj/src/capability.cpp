#include "pcg/capability.hpp"

#include <algorithm>

#include "pcg/kernels.hpp"

namespace pcg {

std::string status_name(CapStatus s) {
  switch (s) {
    case CapStatus::Capable: return "CAPABLE";
    case CapStatus::NotCapable: return "NOT_CAPABLE";
    case CapStatus::Unknown: return "UNKNOWN";
  }
  return "?";
}

std::string reason_name(CapReason r) {
  switch (r) {
    case CapReason::MatchedCapableFamily: return "matched-capable-family";
    case CapReason::MatchedNoncapableFamily: return "matched-noncapable-family";
    case CapReason::NoFamilyMatch: return "no-family-match";
    case CapReason::WitnessFound: return "witness-found";
    case CapReason::BudgetExhausted: return "budget-exhausted";
    case CapReason::HypothesisViolation: return "hypothesis-violation";
    case CapReason::NotTwoGenerated: return "not-two-generated";
  }
  return "?";
}

CapabilityVerdict classify_capable(const PcPresentation& g) {
  g.require_consistent("classify_capable");
  CapabilityVerdict v;
  std::uint32_t cls = nilpotency_class(g);
  if (cls != 2) {
    v.status = CapStatus::Unknown;
    v.reason = CapReason::HypothesisViolation;
    v.detail = "classification requires nilpotency class exactly 2, got " + std::to_string(cls);
    return v;
  }
  std::uint32_t d = minimal_generators(g);
  if (d != 2) {
    v.status = CapStatus::Unknown;
    v.reason = CapReason::HypothesisViolation;
    v.detail = "classification requires a 2-generated group, got d = " + std::to_string(d);
    return v;
  }

  Fingerprint fg = fingerprint(g);
  std::optional<FamilyParams> noncapable_match;
  for (const FamilyParams& pr : family_instances_of_order(g.prime(), g.order())) {
    PcPresentation inst = build_family(pr);
    if (fingerprint(inst) != fg) continue;
    if (!are_isomorphic(g, inst)) continue;
    if (capability_condition(pr)) {
      v.status = CapStatus::Capable;
      v.reason = CapReason::MatchedCapableFamily;
      v.matched = pr;
      v.detail = params_to_string(pr) + " satisfies " + capability_clause(pr.variant);
      return v;
    }
    if (!noncapable_match) noncapable_match = pr;
  }
  if (noncapable_match) {
    v.status = CapStatus::NotCapable;
    v.reason = CapReason::MatchedNoncapableFamily;
    v.matched = noncapable_match;
    v.detail = params_to_string(*noncapable_match) + " violates " +
               capability_clause(noncapable_match->variant) +
               ", and no other instance matches";
    return v;
  }
  v.status = CapStatus::NotCapable;
  v.reason = CapReason::NoFamilyMatch;
  v.detail = "no family instance of order " + std::to_string(g.order()) + " is isomorphic to G";
  return v;
}

namespace {

struct CandidateSpace {
  const PcPresentation& g;
  std::uint32_t m;           // new central generators
  std::uint64_t combos;      // p^m tail choices per relation slot
  std::uint64_t total;       // combos^slots
  std::uint32_t slots;       // n power slots + n(n-1)/2 commutator slots

  CandidateSpace(const PcPresentation& gg, std::uint32_t mm) : g(gg), m(mm) {
    const std::uint32_t n = g.num_gens();
    slots = n + n * (n - 1) / 2;
    combos = 1;
    for (std::uint32_t k = 0; k < m; ++k) combos *= g.prime();
    total = 1;
    bool overflow = false;
    for (std::uint32_t s = 0; s < slots; ++s) {
      if (total > kWitnessCandidateGuard / combos + 1) overflow = true;
      total *= combos;
      if (overflow || total > 100 * kWitnessCandidateGuard) {
        total = ~std::uint64_t(0);
        break;
      }
    }
  }

  /// Candidate presentation for the given index. Slot order matches the
  /// text format: power tails ascending, then commutator pairs (j, i)
  /// lexicographically. Digits are little-endian base-p^m counters.
  PcPresentation build(std::uint64_t idx) const {
    const std::uint32_t n = g.num_gens();
    const std::uint32_t np = n + m;
    const std::uint32_t p = g.prime();
    std::vector<std::uint32_t> exps;
    for (std::uint32_t i = 0; i < n; ++i) exps.push_back(g.rel_order_exp(i));
    for (std::uint32_t k = 0; k < m; ++k) exps.push_back(1);

    auto widen = [&](const ExpVec& t, std::uint64_t digit) {
      ExpVec out(np, 0);
      std::copy(t.begin(), t.end(), out.begin());
      for (std::uint32_t k = 0; k < m; ++k) {
        out[n + k] = static_cast<std::uint32_t>(digit % p);
        digit /= p;
      }
      return out;
    };

    std::vector<ExpVec> pows;
    std::uint64_t rem = idx;
    for (std::uint32_t i = 0; i < n; ++i) {
      pows.push_back(widen(g.power_tail(i), rem % combos));
      rem /= combos;
    }
    for (std::uint32_t k = 0; k < m; ++k) pows.push_back(ExpVec(np, 0));

    std::vector<ExpVec> comms(static_cast<std::size_t>(np) * (np - 1) / 2, ExpVec(np, 0));
    for (std::uint32_t j = 1; j < n; ++j)
      for (std::uint32_t i = 0; i < j; ++i) {
        comms[PcPresentation::pair_index(j, i)] = widen(g.comm_tail(j, i), rem % combos);
        rem /= combos;
      }
    return PcPresentation(p, std::move(exps), std::move(pows), std::move(comms));
  }
};

/// Full witness test for one candidate index; fills `iso` on success.
bool candidate_is_witness(const PcPresentation& g, const CandidateSpace& space, std::uint64_t idx,
                          std::optional<IsoWitness>* iso_out) {
  PcPresentation h = space.build(idx);
  if (!h.check_consistency().pass) return false;
  Subgroup der = derived_subgroup(h);
  // every new generator must land in gamma_2(H), else Z(H) escapes it
  for (std::uint32_t k = 0; k < space.m; ++k)
    if (!der.contains(h.generator(g.num_gens() + k))) return false;
  Subgroup z = center(h);
  if (!der.contains_subgroup(z)) return false;
  if (h.order() != z.size() * g.order()) return false;
  auto q = quotient(h, z);
  auto iso = find_isomorphism(q.group(), g);
  if (!iso) return false;
  if (iso_out) *iso_out = std::move(iso);
  return true;
}

} // namespace

CapabilityVerdict witness_search(const PcPresentation& g, std::uint32_t m_max,
                                 bool deterministic) {
  g.require_consistent("witness_search");
  if (m_max < 1 || m_max > 3)
    throw InputError("witness_search: budget m_max must lie in [1, 3]");
  std::uint64_t pm = 1;
  for (std::uint32_t k = 0; k < m_max; ++k) pm *= g.prime();
  if (g.order() * pm > order_cap())
    throw ResourceError("witness_search: extensions of order " + std::to_string(g.order() * pm) +
                        " exceed the enumeration cap " + std::to_string(order_cap()));
  if (g.order() > kIsoOrderCap)
    throw ResourceError("witness_search: quotient isomorphism tests capped at order " +
                        std::to_string(kIsoOrderCap));

  for (std::uint32_t m = 1; m <= m_max; ++m) {
    CandidateSpace space(g, m);
    if (space.total > kWitnessCandidateGuard)
      throw ResourceError("witness_search: candidate space of size " +
                          (space.total == ~std::uint64_t(0) ? std::string("> 10^9")
                                                            : std::to_string(space.total)) +
                          " exceeds the guard " + std::to_string(kWitnessCandidateGuard));
    auto pred = [&](std::uint64_t idx) { return candidate_is_witness(g, space, idx, nullptr); };
    std::uint64_t found = kernels::find_first(space.total, pred, /*first_found=*/!deterministic);
    if (found != kernels::knpos) {
      CapabilityVerdict v;
      v.status = CapStatus::Capable;
      v.reason = CapReason::WitnessFound;
      WitnessExtension w;
      w.h = space.build(found);
      w.h.check_consistency();
      w.new_gens = m;
      w.candidate_index = found;
      std::optional<IsoWitness> iso;
      if (!candidate_is_witness(g, space, found, &iso) || !iso)
        throw InternalError("witness_search: winning candidate failed re-evaluation");
      w.quotient_iso = std::move(*iso);
      v.witness = std::move(w);
      v.detail = "central extension of order " + std::to_string(v.witness->h.order()) +
                 " with " + std::to_string(m) + " new central generator(s), candidate #" +
                 std::to_string(found);
      return v;
    }
  }
  CapabilityVerdict v;
  v.status = CapStatus::Unknown;
  v.reason = CapReason::BudgetExhausted;
  v.detail = "no witness among central extensions with up to " + std::to_string(m_max) +
             " new generator(s); search cannot prove non-capability";
  return v;
}

TheoremAReport theorem_a_check(const PcPresentation& g, const CapabilityVerdict& verdict) {
  g.require_consistent("theorem_a_check");
  TheoremAReport rep;
  std::uint32_t cls = nilpotency_class(g);
  Subgroup der = derived_subgroup(g);
  bool cyc = is_cyclic(der);
  rep.hypotheses_ok = verdict.status == CapStatus::Capable && cls == 2 && cyc;
  if (!rep.hypotheses_ok) {
    rep.note = verdict.status != CapStatus::Capable
                   ? "verdict is not Capable; the statement asserts nothing"
                   : (cls != 2 ? "nilpotency class is " + std::to_string(cls) + ", not 2"
                               : "commutator subgroup is not cyclic");
  }
  // arithmetic is always reported; for hypothesis violations it documents
  // near-misses such as Q8, where |G/Z| = |gamma_2|^2 without capability
  Subgroup z = center(g);
  auto q = quotient(g, z);
  rep.central_quotient_order = q.group().order();
  rep.derived_order = der.size();
  rep.central_quotient_rank = minimal_generators(q.group());
  rep.quotient_exponent = exponent(q.group());
  rep.derived_exponent = exponent(der);
  if (cls <= 1 || nilpotency_class(q.group()) <= 1)
    rep.quotient_invariants = abelian_invariants(q.group());
  rep.pass = rep.hypotheses_ok && rep.central_quotient_rank == 2 &&
             rep.central_quotient_order == rep.derived_order * rep.derived_order &&
             rep.quotient_exponent == rep.derived_exponent &&
             rep.quotient_invariants ==
                 std::vector<std::uint64_t>{rep.derived_exponent, rep.derived_exponent};
  return rep;
}

CapabilityVerdict theorem_b_decide(const PcPresentation& g) {
  g.require_consistent("theorem_b_decide");
  CapabilityVerdict v;
  std::uint32_t cls = nilpotency_class(g);
  if (cls != 2) {
    v.detail = "hypothesis failed: nilpotency class is " + std::to_string(cls) + ", not 2";
    return v;
  }
  Subgroup der = derived_subgroup(g);
  if (!is_cyclic(der)) {
    v.detail = "hypothesis failed: commutator subgroup is not cyclic";
    return v;
  }
  Subgroup z = center(g);
  Subgroup phi = frattini(g);
  if (!phi.contains_subgroup(z)) {
    v.detail = "hypothesis failed: Z(G) is not contained in Phi(G)";
    return v;
  }
  std::uint32_t d = minimal_generators(g);
  if (d != 2) {
    v.status = CapStatus::NotCapable;
    v.reason = CapReason::NotTwoGenerated;
    v.detail = "a capable group under these hypotheses must be 2-generated; d(G) = " +
               std::to_string(d);
    return v;
  }
  return classify_capable(g);
}

Corollary2Report corollary2_check(const PcPresentation& g) {
  g.require_consistent("corollary2_check");
  Corollary2Report rep;
  std::uint32_t cls = nilpotency_class(g);
  Subgroup z = center(g);
  Subgroup phi = frattini(g);
  rep.hypotheses_ok = cls == 2 && phi.contains_subgroup(z);
  if (!rep.hypotheses_ok) {
    rep.note = cls != 2 ? "nilpotency class is " + std::to_string(cls) + ", not 2"
                        : "Z(G) is not contained in Phi(G)";
    return rep;
  }
  Subgroup der = derived_subgroup(g);
  rep.derived_cyclic = is_cyclic(der);
  rep.min_generators = minimal_generators(g);
  if (rep.derived_cyclic && rep.min_generators != 2) {
    // the statement itself rules capability out
    rep.capability = CapStatus::NotCapable;
    rep.capability_reason = CapReason::NotTwoGenerated;
    rep.note = "cyclic commutator subgroup with d(G) = " + std::to_string(rep.min_generators) +
               " != 2 forces non-capability";
    rep.pass = true;
    return rep;
  }
  if (rep.min_generators == 2) {
    // 2-generated class 2 always has cyclic gamma_2; capability from the
    // classification
    rep.pass = rep.derived_cyclic;
    if (!rep.pass) {
      rep.note = "2-generated class-2 group with non-cyclic commutator subgroup (impossible)";
      return rep;
    }
    CapabilityVerdict cv = classify_capable(g);
    rep.capability = cv.status;
    rep.capability_reason = cv.reason;
    rep.note = cv.detail;
    return rep;
  }
  // non-cyclic gamma_2 with d != 2: both sides of the biconditional are
  // false, so any capability status is consistent
  rep.capability = CapStatus::Unknown;
  rep.capability_reason = CapReason::BudgetExhausted;
  rep.note = "biconditional vacuously consistent: gamma_2 non-cyclic and d != 2";
  rep.pass = true;
  return rep;
}

Lemma3Report lemma3_reduce(const PcPresentation& h) {
  h.require_consistent("lemma3_reduce");
  Lemma3Report rep;
  rep.nilpotency_class = nilpotency_class(h);
  if (rep.nilpotency_class > 3)
    throw InputError("lemma3_reduce: requires class <= 3, got " +
                     std::to_string(rep.nilpotency_class));

  Subgroup z = center(h);
  Subgroup der = derived_subgroup(h);
  auto modz = quotient(h, z);
  std::vector<GroupElement> der_images;
  for (const auto& gen : der.generators) der_images.push_back(modz.project(gen));
  Subgroup der_mod_z = subgroup_closure(modz.group(), der_images);
  if (!is_cyclic(der_mod_z))
    throw InputError("lemma3_reduce: gamma_2(H) Z(H) / Z(H) is not cyclic");

  if (rep.nilpotency_class < 3) {
    // Z2(H) = H: the quotient is trivial and there is nothing to reduce
    rep.degenerate = true;
    rep.quotient_rank = 0;
    rep.eq1_holds = true;
    rep.pairs_central = true;
    rep.pass = true;
    rep.num_generators = minimal_generators(h);
    return rep;
  }

  auto series = upper_central_series(h);
  const Subgroup& z2 = series.terms[1];

  std::vector<GroupElement> seq = minimal_generating_sequence(h);
  const std::uint32_t d = static_cast<std::uint32_t>(seq.size());
  rep.num_generators = d;

  // choose the first pair whose commutator generates gamma_2 Z / Z
  const std::uint64_t mod_order = der_mod_z.size();
  std::int32_t pi = -1, pj = -1;
  for (std::uint32_t i = 0; i < d && pi < 0; ++i)
    for (std::uint32_t j = i + 1; j < d; ++j) {
      GroupElement cm = modz.project(h.commutator(seq[i], seq[j]));
      if (modz.group().element_order(cm) == mod_order) {
        pi = static_cast<std::int32_t>(i);
        pj = static_cast<std::int32_t>(j);
        break;
      }
    }
  if (pi < 0) throw InternalError("lemma3_reduce: no generator pair spans gamma_2 Z / Z");

  rep.gens.push_back(seq[static_cast<std::uint32_t>(pi)]);
  rep.gens.push_back(seq[static_cast<std::uint32_t>(pj)]);
  for (std::uint32_t k = 0; k < d; ++k)
    if (static_cast<std::int32_t>(k) != pi && static_cast<std::int32_t>(k) != pj)
      rep.gens.push_back(seq[k]);

  const GroupElement& x1 = rep.gens[0];
  const GroupElement& x2 = rep.gens[1];
  GroupElement base = modz.project(h.commutator(x1, x2));
  auto discrete_log = [&](const GroupElement& target) -> std::uint32_t {
    GroupElement acc = modz.group().identity();
    for (std::uint64_t e = 0; e < mod_order; ++e) {
      if (acc == target) return static_cast<std::uint32_t>(e);
      acc = modz.group().multiply(acc, base);
    }
    throw InternalError("lemma3_reduce: discrete log not found in cyclic image");
  };

  for (std::uint32_t jj = 2; jj < d; ++jj) {
    const GroupElement& xj = rep.gens[jj];
    std::uint32_t aj = discrete_log(modz.project(h.commutator(x1, xj)));
    std::uint32_t bj = discrete_log(modz.project(h.commutator(x2, xj)));
    rep.alpha.push_back(aj);
    rep.beta.push_back(bj);
    GroupElement yj = h.multiply(h.power(x1, bj), h.multiply(xj, h.power(x2, -std::int64_t(aj))));
    rep.y.push_back(yj);
    rep.y_in_z2.push_back(z2.contains(yj));
  }

  rep.eq1_holds = true;
  rep.pairs_central = true;
  for (std::size_t a = 0; a < rep.y.size(); ++a)
    for (std::size_t b = 0; b < rep.y.size(); ++b) {
      GroupElement pair_comm = h.commutator(rep.y[a], rep.y[b]);
      if (!z.contains(pair_comm)) rep.pairs_central = false;
      for (const GroupElement& xi : {x1, x2})
        if (!h.commutator(pair_comm, xi).is_identity()) rep.eq1_holds = false;
    }

  rep.quotient_rank = z2.is_whole_group() ? 0 : minimal_generators(quotient(h, z2).group());
  bool all_in = true;
  for (bool b : rep.y_in_z2) all_in = all_in && b;
  rep.pass = all_in && rep.eq1_holds && rep.pairs_central && rep.quotient_rank == 2;
  return rep;
}

SweepReport cross_validate(std::uint32_t p, std::uint64_t max_order, std::uint32_t m_max,
                           bool deterministic) {
  SweepReport rep;
  rep.p = p;
  rep.max_order = max_order;
  rep.m_max = m_max;
  std::vector<CatalogEntry> catalog = enumerate_2gen_class2(p, max_order);
  for (const CatalogEntry& entry : catalog) {
    SweepRow row;
    row.fp_hash = entry.fp.hash();
    row.params = entry.params;
    row.order = entry.pres.order();
    row.classification = classify_capable(entry.pres);
    try {
      row.search = witness_search(entry.pres, m_max, deterministic);
    } catch (const ResourceError& e) {
      rep.incomplete = true;
      rep.incomplete_reason = e.what();
      row.search.status = CapStatus::Unknown;
      row.search.reason = CapReason::BudgetExhausted;
      row.search.detail = std::string("resource error: ") + e.what();
    }
    if (row.classification.status == CapStatus::NotCapable &&
        row.search.status == CapStatus::Capable)
      row.conflict = ConflictFlag::Hard;
    else if (row.classification.status == CapStatus::Capable &&
             row.search.status != CapStatus::Capable)
      row.conflict = ConflictFlag::Soft;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

} // namespace pcg
