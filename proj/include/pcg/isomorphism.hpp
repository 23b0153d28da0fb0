#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "pcg/presentation.hpp"
#include "pcg/structure.hpp"

namespace pcg {

/// Isomorphism-invariant summary. Equal fingerprints are necessary, not
/// sufficient, for isomorphism.
struct Fingerprint {
  std::uint64_t order = 1;
  std::uint32_t nilpotency_class = 0;
  std::vector<std::uint64_t> abelianization; // invariant factors, largest first
  std::uint64_t exponent = 1;
  std::uint64_t center_size = 1;
  std::uint64_t derived_size = 1;
  std::uint32_t min_generators = 0;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> order_histogram; // (order, count)
  std::uint64_t frattini_size = 1;
  bool derived_cyclic = true;

  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
  std::uint64_t hash() const; // FNV-1a over all fields, stable across runs
};

Fingerprint fingerprint(const PcPresentation& pres);

/// Explicit isomorphism A -> B as an element-index map, verified on
/// every Cayley edge of A before being returned.
struct IsoWitness {
  std::vector<std::uint64_t> image; // image[index in A] = index in B
};

inline constexpr std::uint64_t kIsoOrderCap = 1u << 10;

/// Backtracking generator-image search behind a fingerprint filter.
/// Deterministic: candidate images are scanned in lexicographic element
/// order, so the first witness found is always the same.
/// ResourceError above order 2^10.
std::optional<IsoWitness> find_isomorphism(const PcPresentation& a, const PcPresentation& b);

bool are_isomorphic(const PcPresentation& a, const PcPresentation& b);

} // namespace pcg
