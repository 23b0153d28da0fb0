#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "pcg/presentation.hpp"

namespace pcg::kernels {

inline constexpr std::uint64_t knpos = ~std::uint64_t(0);

/// Group-axiom scan: associativity on all (or sampled) triples plus
/// identity/inverse laws on every element.
struct AxiomReport {
  std::uint64_t triples_checked = 0;
  bool associativity_ok = false;
  bool identity_ok = false;
  bool inverse_ok = false;
  std::optional<std::array<std::uint64_t, 3>> failing_triple;
  bool ok() const { return associativity_ok && identity_ok && inverse_ok; }
};

/// sample_triples == 0 means exhaustive over order^3 triples. Sampling is
/// a pure function of (seed, slot), so serial and parallel runs agree
/// bit for bit.
AxiomReport check_axioms(const PcPresentation& pres, std::uint64_t sample_triples,
                         std::uint64_t seed = 0x9e3779b97f4a7c15ULL);

/// Indices of all elements commuting with every generator, ascending.
std::vector<std::uint64_t> central_element_indices(const PcPresentation& pres);

/// order -> number of elements of that order.
std::map<std::uint64_t, std::uint64_t> element_order_histogram(const PcPresentation& pres);

/// Smallest index in [0, count) accepted by pred, or knpos. Workers
/// share nothing; the merge rule (minimum) makes the result independent
/// of scheduling. With first_found = true the scan may stop at any
/// accepted candidate instead (faster, not deterministic across runs).
std::uint64_t find_first(std::uint64_t count, const std::function<bool(std::uint64_t)>& pred,
                         bool first_found = false);

/// All indices accepted by pred, ascending.
std::vector<std::uint64_t> filter_indices(std::uint64_t count,
                                          const std::function<bool(std::uint64_t)>& pred);

/// Serial reference implementations with identical contracts; the test
/// suite checks the parallel kernels against these, and the bench tool
/// compares their throughput.
namespace serial {
AxiomReport check_axioms(const PcPresentation& pres, std::uint64_t sample_triples,
                         std::uint64_t seed = 0x9e3779b97f4a7c15ULL);
std::vector<std::uint64_t> central_element_indices(const PcPresentation& pres);
std::map<std::uint64_t, std::uint64_t> element_order_histogram(const PcPresentation& pres);
std::uint64_t find_first(std::uint64_t count, const std::function<bool(std::uint64_t)>& pred);
std::vector<std::uint64_t> filter_indices(std::uint64_t count,
                                          const std::function<bool(std::uint64_t)>& pred);
} // namespace serial

} // namespace pcg::kernels
