#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pcg/errors.hpp"

namespace pcg {

/// Exponent vector; entry i is the exponent of generator i.
using ExpVec = std::vector<std::uint32_t>;

/// A group element in normal form g_1^{e_1} g_2^{e_2} ... g_n^{e_n},
/// with 0 <= e_i < rel_order(i). The identity is the all-zero vector.
struct GroupElement {
  ExpVec exps;

  bool is_identity() const {
    for (auto e : exps)
      if (e) return false;
    return true;
  }

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
};

struct ConsistencyReport {
  bool pass = false;
  std::string failing_word; // empty when pass
};

/// Outcome of the Hall-Witt identity evaluation on one triple.
struct HallWittReport {
  bool full_identity_holds = false;  // must hold in every group
  bool reduced_applicable = false;   // [x,y],[y,z],[z,x] all in Z2
  bool reduced_holds = false;        // cyclic unconjugated form, when applicable
};

/// Configured cap for element-enumerating operations. Defaults to 3^8 =
/// 6561; reads PGROUP_ORDER_CAP once at startup; clamped to the hard cap
/// 2^14 = 16384.
std::uint64_t order_cap();
void set_order_cap(std::uint64_t cap);
inline constexpr std::uint64_t kHardOrderCap = 1u << 14;

/// A finite p-group given by a power-commutator presentation.
///
/// Generator i (0-based) has relative order m_i = p^{e_i}. Relations:
///   g_i^{m_i} = power_tail(i)            (support strictly above i)
///   [g_j, g_i] = comm_tail(j, i), j > i  (support strictly above i)
/// with the commutator convention [x, y] = x^-1 y^-1 x y, so that
/// g_j g_i = g_i g_j [g_j, g_i].
///
/// The object is immutable after construction; all arithmetic is pure
/// and safe to call concurrently.
class PcPresentation {
public:
  /// Validates structure (prime p, tail supports, exponent ranges,
  /// order <= 2^63) and throws InputError on violation.
  PcPresentation(std::uint32_t p, std::vector<std::uint32_t> rel_order_exps,
                 std::vector<ExpVec> power_tails,
                 std::vector<ExpVec> comm_tails); // comm_tails indexed by pair_index(j,i)

  /// Convenience: trivial tails everywhere; set nontrivial ones afterwards
  /// via with_power_tail / with_comm_tail before first use.
  static PcPresentation free_abelian_like(std::uint32_t p,
                                          std::vector<std::uint32_t> rel_order_exps);

  std::uint32_t prime() const { return p_; }
  std::uint32_t num_gens() const { return static_cast<std::uint32_t>(rel_exps_.size()); }
  std::uint32_t rel_order_exp(std::uint32_t i) const { return rel_exps_[i]; }
  std::uint32_t rel_order(std::uint32_t i) const { return rel_orders_[i]; }
  std::uint64_t order() const { return order_; }

  static std::size_t pair_index(std::uint32_t j, std::uint32_t i); // j > i
  const ExpVec& power_tail(std::uint32_t i) const { return power_tails_[i]; }
  const ExpVec& comm_tail(std::uint32_t j, std::uint32_t i) const {
    return comm_tails_[pair_index(j, i)];
  }
  bool has_power_tail(std::uint32_t i) const { return nontrivial_pow_[i]; }
  bool has_comm_tail(std::uint32_t j, std::uint32_t i) const;

  GroupElement identity() const { return GroupElement{ExpVec(num_gens(), 0)}; }
  GroupElement generator(std::uint32_t i) const;

  // -- collection arithmetic ------------------------------------------------
  GroupElement multiply(const GroupElement& x, const GroupElement& y) const;
  GroupElement inverse(const GroupElement& x) const;
  GroupElement power(const GroupElement& x, std::int64_t k) const;
  GroupElement commutator(const GroupElement& x, const GroupElement& y) const;
  GroupElement conjugate(const GroupElement& x, const GroupElement& by) const;
  std::uint64_t element_order(const GroupElement& x) const;

  // -- element indexing (mixed radix; index order == lex order) -------------
  std::uint64_t index_of(const GroupElement& x) const;
  GroupElement element_at(std::uint64_t index) const;

  /// Calls fn for every element in lexicographic order. Throws
  /// ResourceError when the order exceeds the configured cap.
  void for_each_element(const std::function<void(const GroupElement&)>& fn) const;
  std::vector<GroupElement> all_elements() const;

  /// Standard consistency test words for the presentation, evaluated by
  /// stepwise collection of both groupings. Passing means the normal
  /// forms carry a genuine group structure. Sets consistency_checked()
  /// on success. Throws InputError only for structural violations.
  ConsistencyReport check_consistency() const;
  bool consistency_checked() const { return checked_.load(std::memory_order_relaxed); }
  void require_consistent(const char* who) const;

  /// Hall-Witt identity [x,y^-1,z]^y [y,z^-1,x]^z [z,x^-1,y]^x = 1, plus
  /// the reduced cyclic form when the pairwise commutators sit in Z2.
  /// Needs a Z2 membership test from the caller (structure module) to
  /// decide applicability; pass nullptr to skip the reduced form.
  HallWittReport hall_witt_check(const GroupElement& x, const GroupElement& y,
                                 const GroupElement& z,
                                 const std::function<bool(const GroupElement&)>* in_z2 = nullptr) const;

  void validate_element(const GroupElement& x, const char* who) const;

  PcPresentation(const PcPresentation& other);
  PcPresentation& operator=(const PcPresentation& other);
  PcPresentation(PcPresentation&&) noexcept = default;
  PcPresentation& operator=(PcPresentation&&) noexcept = default;

  // mutation helpers for builders (invalidate the consistency flag)
  void set_power_tail(std::uint32_t i, ExpVec tail);
  void set_comm_tail(std::uint32_t j, std::uint32_t i, ExpVec tail);

private:
  void revalidate();
  friend class Collector;

  std::uint32_t p_ = 0;
  std::vector<std::uint32_t> rel_exps_;
  std::vector<std::uint32_t> rel_orders_;
  std::vector<ExpVec> power_tails_;
  std::vector<ExpVec> comm_tails_;
  std::vector<bool> nontrivial_pow_;
  std::vector<std::uint32_t> noncentral_mask_; // bit h set: h > g and [g_h, g_g] nontrivial
  std::vector<std::uint64_t> strides_;
  std::uint64_t order_ = 1;
  mutable std::atomic<bool> checked_{false};
};

/// Direct product with A's generators first; consistent if both inputs are.
PcPresentation direct_product(const PcPresentation& a, const PcPresentation& b);

} // namespace pcg
