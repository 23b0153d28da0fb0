#pragma once

#include <cstdint>
#include <vector>

#include "pcg/presentation.hpp"

namespace pcg {

/// A subgroup of a presented group: a generating list plus the full
/// materialized membership set (sorted element indices and a mask).
/// Immutable after construction.
struct Subgroup {
  const PcPresentation* ambient = nullptr;
  std::vector<GroupElement> generators;
  std::vector<std::uint64_t> members; // sorted, ascending
  std::vector<bool> mask;             // indexed by element index

  std::uint64_t size() const { return members.size(); }
  bool is_trivial() const { return members.size() == 1; }
  bool is_whole_group() const { return ambient && members.size() == ambient->order(); }
  bool contains_index(std::uint64_t idx) const { return mask[idx]; }
  bool contains(const GroupElement& x) const { return mask[ambient->index_of(x)]; }
  bool contains_subgroup(const Subgroup& other) const;
};

enum class SeriesKind { UpperCentral, LowerCentral };

struct SeriesReport {
  SeriesKind kind;
  std::vector<Subgroup> terms;
};

/// Smallest subgroup containing gens; with normal_closure, smallest
/// normal subgroup containing them.
Subgroup subgroup_closure(const PcPresentation& pres, const std::vector<GroupElement>& gens,
                          bool normal_closure = false);

Subgroup trivial_subgroup(const PcPresentation& pres);
Subgroup whole_group(const PcPresentation& pres);

/// Subgroup from a known, multiplication-closed member set; generators
/// reduced greedily. Throws InternalError if the set is not closed.
Subgroup subgroup_from_indices(const PcPresentation& pres, std::vector<std::uint64_t> indices);

Subgroup center(const PcPresentation& pres);
Subgroup derived_subgroup(const PcPresentation& pres);
Subgroup frattini(const PcPresentation& pres);

bool is_normal(const Subgroup& sub);

SeriesReport upper_central_series(const PcPresentation& pres);
SeriesReport lower_central_series(const PcPresentation& pres);
std::uint32_t nilpotency_class(const PcPresentation& pres);

/// Quotient presentation G/N with projection and section maps. N must be
/// normal (checked; InputError otherwise).
class QuotientResult {
public:
  const PcPresentation& group() const { return quotient_; }
  const PcPresentation& ambient() const { return *ambient_; }

  GroupElement project(const GroupElement& x) const;
  /// Canonical coset representative of a quotient element.
  GroupElement section(const GroupElement& q) const;

  std::uint32_t num_kept() const { return static_cast<std::uint32_t>(kept_.size()); }
  std::uint32_t kept_ambient_index(std::uint32_t k) const { return kept_[k]; }

private:
  friend QuotientResult quotient(const PcPresentation&, const Subgroup&);
  PcPresentation quotient_{2, {}, {}, {}};
  const PcPresentation* ambient_ = nullptr;
  std::vector<std::uint32_t> kept_;            // ambient generator index per quotient gen
  std::vector<GroupElement> kept_elems_;       // the generators as ambient elements
  std::vector<GroupElement> kept_elem_invs_;
  std::vector<std::vector<bool>> layer_masks_; // layer_masks_[k] = pullback of <h_{k+1},...> N
};

QuotientResult quotient(const PcPresentation& pres, const Subgroup& n);

/// d(G) = log_p |G / Phi(G)|.
std::uint32_t minimal_generators(const PcPresentation& pres);

/// Burnside-minimal generating sequence: pc generators kept greedily
/// against the span of earlier picks together with Phi(G). Size is
/// exactly minimal_generators().
std::vector<GroupElement> minimal_generating_sequence(const PcPresentation& pres);

/// Plain greedy irredundant sequence (no Frattini augmentation); the
/// test suite cross-checks its length against minimal_generators().
std::vector<GroupElement> greedy_generating_sequence(const PcPresentation& pres);

bool is_cyclic(const Subgroup& sub);
std::uint64_t exponent(const PcPresentation& pres);
std::uint64_t exponent(const Subgroup& sub);

/// Invariant factors of an abelian presentation, largest first
/// (e.g. C4 x C2 -> {4, 2}). InputError if the presentation has a
/// nontrivial commutator tail.
std::vector<std::uint64_t> abelian_invariants(const PcPresentation& pres);

} // namespace pcg
