#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pcg/isomorphism.hpp"
#include "pcg/presentation.hpp"

namespace pcg {

/// The four presentation families:
///   T1i  (p = 2):  <a,b | a^{2^al} = b^{2^be} = [a,b]^{2^ga} = 1>, class 2
///   T1ii (p = 2):  as T1i but amalgamated, a^{2^{al+si-ga}} = [a,b]^{2^si}
///   T2i  (p odd):  <a,b | a^{p^al} = b^{p^be} = [a,b]^{p^ga} = 1>, class 2
///   T2ii (p odd):  <a,b | a^{p^al} = b^{p^be} = 1, [a,b] = a^{p^{al-ga}}>
enum class FamilyVariant { T1i, T1ii, T2i, T2ii };

std::string variant_name(FamilyVariant v);
std::optional<FamilyVariant> variant_from_name(std::string_view name);

struct FamilyParams {
  FamilyVariant variant = FamilyVariant::T1i;
  std::uint32_t p = 2;
  std::uint32_t alpha = 1, beta = 1, gamma = 1;
  std::uint32_t sigma = 0; // T1ii only

  friend bool operator==(const FamilyParams&, const FamilyParams&) = default;
};

std::string params_to_string(const FamilyParams& params);

/// Structural invariants: positive exponents, p parity matching the
/// variant, sigma < gamma and alpha+sigma-gamma >= 1 for T1ii,
/// alpha >= 2*gamma for T2ii. Throws InputError.
void validate_params(const FamilyParams& params);

/// Exponent-compatibility conditions forced by consistency of the
/// presentation (gamma <= min(alpha, beta) for T1i/T2i; gamma <= beta and
/// alpha+sigma >= 2*gamma for T1ii; gamma <= beta for T2ii). Structurally
/// valid tuples failing these are rejected by the consistency check in
/// build_family; the test suite verifies the equivalence by grid scan.
bool params_buildable(const FamilyParams& params);

/// Group order of the instance: p^{al+be+ga} (T1i/T2i), 2^{al+be+si}
/// (T1ii), p^{al+be} (T2ii).
std::uint64_t family_order(const FamilyParams& params);

/// Builds the presentation, checks consistency (ConsistencyError with the
/// failing word otherwise) and asserts class exactly 2, d = 2 and cyclic
/// commutator subgroup of order p^gamma.
PcPresentation build_family(const FamilyParams& params);

/// The capability clause of the matching classification theorem, as a
/// pure arithmetic predicate on the parameters.
bool capability_condition(const FamilyParams& params);

/// The clause text, for reports.
std::string capability_clause(FamilyVariant v);

/// All structurally valid, buildable parameter tuples whose instance has
/// exactly the given order; deterministic lexicographic order.
std::vector<FamilyParams> family_instances_of_order(std::uint32_t p, std::uint64_t order);

/// Extraspecial groups of order p^{1+2n}. For p = 2, kind is a string of
/// 'D'/'Q' factor letters of length n_pairs (central product of dihedral
/// and quaternion factors of order 8). For odd p, kind must be "exp-p".
PcPresentation build_extraspecial(std::uint32_t p, std::uint32_t n_pairs, std::string_view kind);

struct CatalogParams {
  std::uint32_t alpha = 1, beta = 1, gamma = 1;
  std::uint32_t rho1 = 0, rho2 = 0; // power tails a^{p^al} = c^{rho1}, b^{p^be} = c^{rho2}
  friend bool operator==(const CatalogParams&, const CatalogParams&) = default;
};

std::string catalog_params_to_string(const CatalogParams& params);

struct CatalogEntry {
  PcPresentation pres;
  CatalogParams params;
  Fingerprint fp;
};

/// Complete iso-deduped catalog of 2-generated class-2 p-groups of order
/// <= max_order. Every such group embeds in the generic 3-generator grid
/// gens (a, b, c), [b, a] = c^-1, c central, a^{p^al} = c^{rho1},
/// b^{p^be} = c^{rho2}. The grid is consistency- and class-filtered and
/// then deduped keeping the lexicographically first representative.
/// shuffle_seed permutes the dedup scan order (for stability testing);
/// the class list is the same either way.
std::vector<CatalogEntry> enumerate_2gen_class2(std::uint32_t p, std::uint64_t max_order,
                                                std::uint64_t shuffle_seed = 0);

} // namespace pcg
