#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pcg/families.hpp"
#include "pcg/isomorphism.hpp"
#include "pcg/presentation.hpp"
#include "pcg/structure.hpp"

namespace pcg {

enum class CapStatus { Capable, NotCapable, Unknown };

enum class CapReason {
  MatchedCapableFamily,
  MatchedNoncapableFamily,
  NoFamilyMatch,
  WitnessFound,
  BudgetExhausted,
  HypothesisViolation,
  NotTwoGenerated, // ruled out by the two-generation corollary
};

std::string status_name(CapStatus s);
std::string reason_name(CapReason r);

/// A central extension H together with the verified isomorphism
/// H/Z(H) -> G (as an element map on the central quotient).
struct WitnessExtension {
  PcPresentation h{2, {}, {}, {}};
  std::uint32_t new_gens = 0;
  std::uint64_t candidate_index = 0;
  IsoWitness quotient_iso; // quotient(H, Z(H)) -> G
};

struct CapabilityVerdict {
  CapStatus status = CapStatus::Unknown;
  CapReason reason = CapReason::HypothesisViolation;
  std::optional<FamilyParams> matched; // classification route
  std::optional<WitnessExtension> witness;
  std::string detail;
};

/// Classification-based decision for 2-generated class-2 p-groups:
/// builds every family instance of order |G| and isomorphism-tests.
/// Capable exactly when a condition-satisfying instance matches. Groups
/// violating the class-2 / 2-generated hypotheses get an Unknown
/// hypothesis-violation verdict.
CapabilityVerdict classify_capable(const PcPresentation& g);

inline constexpr std::uint64_t kWitnessCandidateGuard = 10'000'000;

/// Central-extension search: appends m = 1..m_max new central generators
/// of order p and enumerates the new-generator part of every power and
/// commutator tail of G. A candidate H is a witness when it is
/// consistent, Z(H) <= derived(H), and quotient(H, Z(H)) is isomorphic
/// to G. Exhaustion only ever yields Unknown: the search cannot prove
/// non-capability. In deterministic mode the lexicographically smallest
/// candidate wins regardless of thread scheduling.
CapabilityVerdict witness_search(const PcPresentation& g, std::uint32_t m_max,
                                 bool deterministic = true);

struct TheoremAReport {
  bool hypotheses_ok = false;
  std::string note;
  std::uint64_t central_quotient_order = 0; // |G/Z(G)|
  std::uint64_t derived_order = 0;          // |gamma_2(G)|
  std::uint32_t central_quotient_rank = 0;  // d(G/Z(G))
  std::uint64_t quotient_exponent = 0;
  std::uint64_t derived_exponent = 0;
  std::vector<std::uint64_t> quotient_invariants;
  bool pass = false;
};

/// For a Capable verdict: d(G/Z) = 2, |G/Z| = |gamma_2|^2, and G/Z has
/// exactly two invariant factors, both of exponent(gamma_2). The
/// arithmetic is reported even under hypothesis violations (the Q8
/// regression records |G/Z| = |gamma_2|^2 despite non-capability).
TheoremAReport theorem_a_check(const PcPresentation& g, const CapabilityVerdict& verdict);

/// Classification decision guarded by the hypotheses: class exactly 2,
/// cyclic commutator subgroup, Z(G) <= Phi(G). A group with d(G) != 2 is
/// NotCapable by the two-generation corollary; otherwise delegates to
/// classify_capable.
CapabilityVerdict theorem_b_decide(const PcPresentation& g);

struct Corollary2Report {
  bool hypotheses_ok = false; // class 2 and Z <= Phi
  std::string note;
  bool derived_cyclic = false;
  std::uint32_t min_generators = 0;
  CapStatus capability = CapStatus::Unknown;
  CapReason capability_reason = CapReason::HypothesisViolation;
  bool pass = false;
};

/// Checks the biconditional "gamma_2 cyclic iff 2-generated" in the
/// directions that are decidable: cyclic with d != 2 forces NotCapable;
/// d = 2 forces cyclic and defers capability to the classification.
Corollary2Report corollary2_check(const PcPresentation& g);

struct Lemma3Report {
  bool degenerate = false; // class < 3: Z2 = H and there is nothing to reduce
  std::uint32_t nilpotency_class = 0;
  std::uint32_t num_generators = 0;
  // reordered minimal generating sequence; x1, x2 first
  std::vector<GroupElement> gens;
  std::vector<std::uint32_t> alpha; // per j >= 3
  std::vector<std::uint32_t> beta;
  std::vector<GroupElement> y; // y_j = x1^{beta_j} x_j x2^{-alpha_j}
  std::vector<bool> y_in_z2;
  bool eq1_holds = false;       // [y_j, y_k, x_i] = 1 for i in {1, 2}
  bool pairs_central = false;   // [y_j, y_k] in Z for j, k >= 3
  std::uint32_t quotient_rank = 0; // d(H / Z2(H))
  bool pass = false;
};

/// Generator reduction for p-groups of class <= 3 whose image of the
/// commutator subgroup modulo the center is cyclic: transforms a minimal
/// generating sequence so that all but the leading two land in Z2(H),
/// and verifies the vanishing triple commutators along the way.
/// InputError when gamma_2(H) Z(H) / Z(H) is not cyclic or class > 3.
Lemma3Report lemma3_reduce(const PcPresentation& h);

enum class ConflictFlag { None, Soft, Hard };

struct SweepRow {
  std::uint64_t fp_hash = 0;
  CatalogParams params;
  std::uint64_t order = 0;
  CapabilityVerdict classification;
  CapabilityVerdict search;
  ConflictFlag conflict = ConflictFlag::None;
};

struct SweepReport {
  std::uint32_t p = 2;
  std::uint64_t max_order = 0;
  std::uint32_t m_max = 1;
  std::vector<SweepRow> rows;
  bool incomplete = false;
  std::string incomplete_reason;

  bool has_hard_conflict() const {
    for (const auto& r : rows)
      if (r.conflict == ConflictFlag::Hard) return true;
    return false;
  }
};

/// Runs classification and witness search over the whole catalog.
/// Hard conflict: classification NotCapable with a verified witness —
/// must never happen. Soft conflict: classification Capable but no
/// witness within budget (recorded with the budget, not an error).
SweepReport cross_validate(std::uint32_t p, std::uint64_t max_order, std::uint32_t m_max,
                           bool deterministic = true);

} // namespace pcg
