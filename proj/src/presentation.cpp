#include "pcg/presentation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace pcg {

namespace {

std::uint64_t env_order_cap() {
  if (const char* s = std::getenv("PGROUP_ORDER_CAP")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(s, &end, 10);
    if (end && *end == '\0' && v >= 1)
      return std::min<std::uint64_t>(v, kHardOrderCap);
  }
  return 6561; // 3^8
}

std::atomic<std::uint64_t> g_order_cap{env_order_cap()};

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

bool trivial(const ExpVec& v) {
  for (auto e : v)
    if (e) return false;
  return true;
}

} // namespace

std::uint64_t order_cap() { return g_order_cap.load(std::memory_order_relaxed); }

void set_order_cap(std::uint64_t cap) {
  if (cap < 1) throw InputError("order cap must be positive");
  g_order_cap.store(std::min(cap, kHardOrderCap), std::memory_order_relaxed);
}

std::size_t PcPresentation::pair_index(std::uint32_t j, std::uint32_t i) {
  // pairs ordered (1,0), (2,0), (2,1), (3,0), ... : lexicographic by (j, i)
  return static_cast<std::size_t>(j) * (j - 1) / 2 + i;
}

PcPresentation::PcPresentation(std::uint32_t p, std::vector<std::uint32_t> rel_order_exps,
                               std::vector<ExpVec> power_tails, std::vector<ExpVec> comm_tails)
    : p_(p),
      rel_exps_(std::move(rel_order_exps)),
      power_tails_(std::move(power_tails)),
      comm_tails_(std::move(comm_tails)) {
  revalidate();
}

PcPresentation PcPresentation::free_abelian_like(std::uint32_t p,
                                                 std::vector<std::uint32_t> rel_order_exps) {
  std::size_t n = rel_order_exps.size();
  std::vector<ExpVec> pows(n, ExpVec(n, 0));
  std::vector<ExpVec> comms(n * (n - 1) / 2, ExpVec(n, 0));
  return PcPresentation(p, std::move(rel_order_exps), std::move(pows), std::move(comms));
}

PcPresentation::PcPresentation(const PcPresentation& other)
    : p_(other.p_),
      rel_exps_(other.rel_exps_),
      rel_orders_(other.rel_orders_),
      power_tails_(other.power_tails_),
      comm_tails_(other.comm_tails_),
      nontrivial_pow_(other.nontrivial_pow_),
      noncentral_mask_(other.noncentral_mask_),
      strides_(other.strides_),
      order_(other.order_) {
  checked_.store(other.checked_.load(std::memory_order_relaxed), std::memory_order_relaxed);
}

PcPresentation& PcPresentation::operator=(const PcPresentation& other) {
  if (this == &other) return *this;
  p_ = other.p_;
  rel_exps_ = other.rel_exps_;
  rel_orders_ = other.rel_orders_;
  power_tails_ = other.power_tails_;
  comm_tails_ = other.comm_tails_;
  nontrivial_pow_ = other.nontrivial_pow_;
  noncentral_mask_ = other.noncentral_mask_;
  strides_ = other.strides_;
  order_ = other.order_;
  checked_.store(other.checked_.load(std::memory_order_relaxed), std::memory_order_relaxed);
  return *this;
}

void PcPresentation::revalidate() {
  const std::size_t n = rel_exps_.size();
  if (!is_prime(p_)) throw InputError("p must be prime, got " + std::to_string(p_));
  if (n > 30) throw InputError("too many generators (max 30)");
  if (power_tails_.size() != n) throw InputError("power_tails size mismatch");
  if (comm_tails_.size() != n * (n - 1) / 2) throw InputError("comm_tails size mismatch");

  rel_orders_.assign(n, 0);
  double log2_order = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (rel_exps_[i] < 1) throw InputError("relative order exponent must be >= 1");
    std::uint64_t m = 1;
    for (std::uint32_t k = 0; k < rel_exps_[i]; ++k) {
      m *= p_;
      if (m > (std::uint64_t(1) << 31)) throw InputError("relative order too large");
    }
    rel_orders_[i] = static_cast<std::uint32_t>(m);
    log2_order += rel_exps_[i] * std::log2(double(p_));
  }
  if (log2_order > 62.5) throw InputError("group order exceeds 2^62");

  auto check_tail = [&](const ExpVec& t, std::size_t low, const char* what) {
    if (t.size() != n) throw InputError(std::string(what) + ": tail length mismatch");
    for (std::size_t k = 0; k < n; ++k) {
      if (k <= low && t[k])
        throw InputError(std::string(what) + ": tail supported at index <= " +
                         std::to_string(low + 1));
      if (t[k] >= rel_orders_[k])
        throw InputError(std::string(what) + ": tail exponent out of range");
    }
  };
  for (std::size_t i = 0; i < n; ++i)
    check_tail(power_tails_[i], i, "power relation");
  for (std::uint32_t j = 1; j < n; ++j)
    for (std::uint32_t i = 0; i < j; ++i)
      check_tail(comm_tails_[pair_index(j, i)], i, "commutator relation");

  nontrivial_pow_.assign(n, false);
  for (std::size_t i = 0; i < n; ++i) nontrivial_pow_[i] = !trivial(power_tails_[i]);

  noncentral_mask_.assign(n, 0);
  for (std::uint32_t j = 1; j < n; ++j)
    for (std::uint32_t i = 0; i < j; ++i)
      if (!trivial(comm_tails_[pair_index(j, i)]))
        noncentral_mask_[i] |= (1u << j);

  // most significant digit first: index order equals lex order on exponent vectors
  strides_.assign(n, 1);
  order_ = 1;
  for (std::size_t i = n; i-- > 0;) {
    strides_[i] = order_;
    order_ *= rel_orders_[i];
  }
  checked_.store(false, std::memory_order_relaxed);
}

void PcPresentation::set_power_tail(std::uint32_t i, ExpVec tail) {
  power_tails_.at(i) = std::move(tail);
  revalidate();
}

void PcPresentation::set_comm_tail(std::uint32_t j, std::uint32_t i, ExpVec tail) {
  if (j <= i) throw InputError("comm tail requires j > i");
  comm_tails_.at(pair_index(j, i)) = std::move(tail);
  revalidate();
}

bool PcPresentation::has_comm_tail(std::uint32_t j, std::uint32_t i) const {
  return (noncentral_mask_[i] >> j) & 1u;
}

GroupElement PcPresentation::generator(std::uint32_t i) const {
  GroupElement g = identity();
  g.exps.at(i) = 1;
  return g;
}

void PcPresentation::validate_element(const GroupElement& x, const char* who) const {
  if (x.exps.size() != num_gens())
    throw InputError(std::string(who) + ": exponent vector has wrong length");
  for (std::size_t i = 0; i < x.exps.size(); ++i)
    if (x.exps[i] >= rel_orders_[i])
      throw InputError(std::string(who) + ": exponent out of range at generator " +
                       std::to_string(i + 1));
}

// ---------------------------------------------------------------------------
// Collection from the left.
//
// State: a partially collected normal form `a` plus a stack of pending
// subword powers. Invariant: the group element equals
//   a * stack[top] * stack[top-1] * ... * stack[0].
// One positive generator unit is absorbed at a time. When a unit g
// arrives and `a` carries letters above g that do not commute with it
// (or a power tail must be inserted below them), those letters are
// popped and re-pushed conjugated by g:
//   a_{<=g} T g R  =  a_{<=g} g T^g R,   (g_h^{x})^g = (g_h [g_h,g])^{x}.
// Tails point strictly rightward, so the process terminates for the
// nilpotent presentations in scope; a step guard catches pathological
// inputs.
// ---------------------------------------------------------------------------

namespace {

struct Letter {
  int gen;
  std::int64_t exp;
};

struct WorkItem {
  std::vector<Letter> word;
  std::int64_t repeat;
  std::size_t pos;
  std::int64_t cur = 0;  // remaining exponent of word[pos]
  bool loaded = false;   // cur initialized for the current pos
};

constexpr std::uint64_t kMaxCollectSteps = 400'000'000ULL;

} // namespace

class Collector {
public:
  Collector(const PcPresentation& pres, ExpVec start) : pres_(pres), a_(std::move(start)) {
    for (std::size_t i = 0; i < a_.size(); ++i)
      if (a_[i]) mask_ |= (1u << i);
  }

  void append(std::vector<Letter> word, std::int64_t repeat = 1) {
    if (repeat <= 0 || word.empty()) return;
    stack_.push_back(WorkItem{std::move(word), repeat, 0});
  }

  ExpVec run() {
    while (!stack_.empty()) {
      WorkItem& top = stack_.back();
      if (top.pos == top.word.size()) {
        if (--top.repeat > 0) {
          top.pos = 0;
          top.loaded = false;
          continue;
        }
        stack_.pop_back();
        continue;
      }
      if (!top.loaded) {
        top.cur = top.word[top.pos].exp;
        top.loaded = true;
      }
      if (top.cur == 0) {
        ++top.pos;
        top.loaded = false;
        continue;
      }
      const int g = top.word[top.pos].gen;
      if (++steps_ > kMaxCollectSteps)
        throw InternalError("collection did not terminate (step guard hit)");
      if (top.cur < 0) {
        ++top.cur;
        push_negative_unit_rewrite(g); // invalidates `top`
        continue;
      }
      --top.cur;
      absorb_unit(g); // may push; invalidates `top`
    }
    return std::move(a_);
  }

private:
  // g^{-1} = g^{m-1} * reverse(t_g)^{-1}
  void push_negative_unit_rewrite(int g) {
    std::vector<Letter> w;
    w.push_back({g, static_cast<std::int64_t>(pres_.rel_order(g)) - 1});
    const ExpVec& t = pres_.power_tail(g);
    for (int h = static_cast<int>(pres_.num_gens()) - 1; h > g; --h)
      if (t[h]) w.push_back({h, -static_cast<std::int64_t>(t[h])});
    stack_.push_back(WorkItem{std::move(w), 1, 0});
  }

  void push_tail_word(const ExpVec& t, int above) {
    std::vector<Letter> w;
    for (std::size_t k = above + 1; k < t.size(); ++k)
      if (t[k]) w.push_back({static_cast<int>(k), static_cast<std::int64_t>(t[k])});
    if (!w.empty()) stack_.push_back(WorkItem{std::move(w), 1, 0});
  }

  void set_mask(int i, bool on) {
    if (on)
      mask_ |= (1u << i);
    else
      mask_ &= ~(1u << i);
  }

  void absorb_unit(int g) {
    const std::uint32_t m = pres_.rel_order(g);
    const std::uint32_t above = mask_ & ~((2u << g) - 1);
    bool sweep = false;
    if (above) {
      if (above & pres_.noncentral_mask_[g]) sweep = true;
      else if (a_[g] + 1 == m && pres_.has_power_tail(g)) sweep = true;
    }
    if (!sweep) {
      if (++a_[g] == m) {
        a_[g] = 0;
        set_mask(g, false);
        if (pres_.has_power_tail(g)) push_tail_word(pres_.power_tail(g), g);
      } else {
        set_mask(g, true);
      }
      return;
    }

    // pop everything above g, then push back (in processing order):
    // power tail of g first if it overflowed, then the popped letters
    // conjugated by g, ascending. Stack is LIFO, so push ascending
    // letters in reverse and the tail last.
    const int n = static_cast<int>(pres_.num_gens());
    std::vector<std::pair<int, std::uint32_t>> tail;
    for (int h = g + 1; h < n; ++h)
      if (a_[h]) {
        tail.emplace_back(h, a_[h]);
        a_[h] = 0;
        set_mask(h, false);
      }
    bool overflow = false;
    if (++a_[g] == m) {
      a_[g] = 0;
      set_mask(g, false);
      overflow = true;
    } else {
      set_mask(g, true);
    }
    for (auto it = tail.rbegin(); it != tail.rend(); ++it) {
      const auto [h, x] = *it;
      if (!pres_.has_comm_tail(h, g)) {
        stack_.push_back(WorkItem{{Letter{h, static_cast<std::int64_t>(x)}}, 1, 0});
      } else {
        const ExpVec& c = pres_.comm_tail(h, g);
        std::vector<Letter> w;
        w.push_back({h, 1});
        for (int k = g + 1; k < n; ++k)
          if (c[k]) w.push_back({k, static_cast<std::int64_t>(c[k])});
        stack_.push_back(WorkItem{std::move(w), static_cast<std::int64_t>(x), 0});
      }
    }
    if (overflow && pres_.has_power_tail(g)) push_tail_word(pres_.power_tail(g), g);
  }

  const PcPresentation& pres_;
  ExpVec a_;
  std::uint32_t mask_ = 0;
  std::vector<WorkItem> stack_;
  std::uint64_t steps_ = 0;
};

GroupElement PcPresentation::multiply(const GroupElement& x, const GroupElement& y) const {
  validate_element(x, "multiply");
  validate_element(y, "multiply");
  Collector col(*this, x.exps);
  std::vector<Letter> w;
  for (std::size_t i = 0; i < y.exps.size(); ++i)
    if (y.exps[i]) w.push_back({static_cast<int>(i), static_cast<std::int64_t>(y.exps[i])});
  col.append(std::move(w));
  return GroupElement{col.run()};
}

GroupElement PcPresentation::inverse(const GroupElement& x) const {
  validate_element(x, "inverse");
  Collector col(*this, ExpVec(num_gens(), 0));
  std::vector<Letter> w;
  for (std::size_t i = x.exps.size(); i-- > 0;)
    if (x.exps[i]) w.push_back({static_cast<int>(i), -static_cast<std::int64_t>(x.exps[i])});
  col.append(std::move(w));
  return GroupElement{col.run()};
}

GroupElement PcPresentation::power(const GroupElement& x, std::int64_t k) const {
  validate_element(x, "power");
  if (k < 0) return inverse(power(x, -k));
  GroupElement result = identity();
  GroupElement base = x;
  std::uint64_t kk = static_cast<std::uint64_t>(k);
  while (kk) {
    if (kk & 1) result = multiply(result, base);
    kk >>= 1;
    if (kk) base = multiply(base, base);
  }
  return result;
}

GroupElement PcPresentation::commutator(const GroupElement& x, const GroupElement& y) const {
  return multiply(multiply(inverse(x), inverse(y)), multiply(x, y));
}

GroupElement PcPresentation::conjugate(const GroupElement& x, const GroupElement& by) const {
  return multiply(inverse(by), multiply(x, by));
}

std::uint64_t PcPresentation::element_order(const GroupElement& x) const {
  validate_element(x, "element_order");
  GroupElement y = x;
  std::uint64_t ord = 1;
  int guard = 0;
  while (!y.is_identity()) {
    y = power(y, p_);
    ord *= p_;
    if (++guard > 64) throw InternalError("element_order did not stabilize");
  }
  return ord;
}

std::uint64_t PcPresentation::index_of(const GroupElement& x) const {
  validate_element(x, "index_of");
  std::uint64_t idx = 0;
  for (std::size_t i = 0; i < x.exps.size(); ++i) idx += x.exps[i] * strides_[i];
  return idx;
}

GroupElement PcPresentation::element_at(std::uint64_t index) const {
  if (index >= order_) throw InputError("element index out of range");
  GroupElement g = identity();
  for (std::size_t i = 0; i < g.exps.size(); ++i) {
    g.exps[i] = static_cast<std::uint32_t>(index / strides_[i]);
    index %= strides_[i];
  }
  return g;
}

void PcPresentation::for_each_element(const std::function<void(const GroupElement&)>& fn) const {
  if (order_ > order_cap())
    throw ResourceError("group order " + std::to_string(order_) + " exceeds enumeration cap " +
                        std::to_string(order_cap()));
  GroupElement g = identity();
  const std::uint32_t n = num_gens();
  if (n == 0) {
    fn(g);
    return;
  }
  while (true) {
    fn(g);
    // lexicographic odometer, least significant digit last
    std::uint32_t i = n;
    while (i > 0) {
      --i;
      if (++g.exps[i] < rel_orders_[i]) break;
      g.exps[i] = 0;
      if (i == 0) return;
    }
  }
}

std::vector<GroupElement> PcPresentation::all_elements() const {
  std::vector<GroupElement> out;
  out.reserve(static_cast<std::size_t>(order_));
  for_each_element([&](const GroupElement& g) { out.push_back(g); });
  return out;
}

void PcPresentation::require_consistent(const char* who) const {
  if (!consistency_checked())
    throw InternalError(std::string(who) + ": presentation has not passed check_consistency");
}

namespace {

std::string word_desc(const char* pattern, std::uint32_t a, std::uint32_t b, std::uint32_t c) {
  std::ostringstream os;
  os << pattern << " at generators (" << a + 1;
  if (b != UINT32_MAX) os << ", " << b + 1;
  if (c != UINT32_MAX) os << ", " << c + 1;
  os << ")";
  return os.str();
}

} // namespace

ConsistencyReport PcPresentation::check_consistency() const {
  const std::uint32_t n = num_gens();
  auto gen_pow = [&](std::uint32_t i, std::uint32_t e) {
    GroupElement g = identity();
    g.exps[i] = e;
    return g;
  };

  // k(ji) = (kj)i for k > j > i
  for (std::uint32_t k = 2; k < n; ++k)
    for (std::uint32_t j = 1; j < k; ++j)
      for (std::uint32_t i = 0; i < j; ++i) {
        GroupElement lhs = multiply(generator(k), multiply(generator(j), generator(i)));
        GroupElement rhs = multiply(multiply(generator(k), generator(j)), generator(i));
        if (lhs != rhs)
          return {false, word_desc("g_k (g_j g_i) != (g_k g_j) g_i", k, j, i)};
      }
  // power overlaps
  for (std::uint32_t j = 0; j < n; ++j)
    for (std::uint32_t i = 0; i < j; ++i) {
      GroupElement jm1 = gen_pow(j, rel_order(j) - 1);
      GroupElement lhs = multiply(multiply(jm1, generator(j)), generator(i));
      GroupElement rhs = multiply(jm1, multiply(generator(j), generator(i)));
      if (lhs != rhs)
        return {false, word_desc("(g_j^{m-1} g_j) g_i != g_j^{m-1} (g_j g_i)", j, i, UINT32_MAX)};
      GroupElement im1 = gen_pow(i, rel_order(i) - 1);
      GroupElement lhs2 = multiply(generator(j), multiply(im1, generator(i)));
      GroupElement rhs2 = multiply(multiply(generator(j), im1), generator(i));
      if (lhs2 != rhs2)
        return {false, word_desc("g_j (g_i^{m-1} g_i) != (g_j g_i^{m-1}) g_i", j, i, UINT32_MAX)};
    }
  // overlap of the power relation with its own generator, associating
  // g_i^{m_i + 1} both ways: (g_i^{m_i}) g_i = g_i (g_i^{m_i}), i.e. the
  // collected tail must commute past g_i
  for (std::uint32_t i = 0; i < n; ++i) {
    GroupElement tail = multiply(gen_pow(i, rel_order(i) - 1), generator(i)); // = t_i
    GroupElement lhs = multiply(tail, generator(i));
    GroupElement rhs = multiply(generator(i), tail);
    if (lhs != rhs)
      return {false,
              word_desc("(g_i^{m-1} g_i) g_i != g_i (g_i^{m-1} g_i)", i, UINT32_MAX, UINT32_MAX)};
  }
  checked_.store(true, std::memory_order_relaxed);
  return {true, ""};
}

HallWittReport PcPresentation::hall_witt_check(
    const GroupElement& x, const GroupElement& y, const GroupElement& z,
    const std::function<bool(const GroupElement&)>* in_z2) const {
  auto comm3 = [&](const GroupElement& a, const GroupElement& b, const GroupElement& c) {
    return commutator(commutator(a, b), c);
  };
  GroupElement t1 = conjugate(comm3(x, inverse(y), z), y);
  GroupElement t2 = conjugate(comm3(y, inverse(z), x), z);
  GroupElement t3 = conjugate(comm3(z, inverse(x), y), x);
  HallWittReport rep;
  rep.full_identity_holds = multiply(multiply(t1, t2), t3).is_identity();
  if (in_z2) {
    bool applicable = (*in_z2)(commutator(x, y)) && (*in_z2)(commutator(y, z)) &&
                      (*in_z2)(commutator(z, x));
    rep.reduced_applicable = applicable;
    if (applicable) {
      GroupElement u = multiply(multiply(comm3(x, y, z), comm3(z, x, y)), comm3(y, z, x));
      rep.reduced_holds = u.is_identity();
    }
  }
  return rep;
}

PcPresentation direct_product(const PcPresentation& a, const PcPresentation& b) {
  if (a.prime() != b.prime()) throw InputError("direct_product: primes differ");
  const std::uint32_t na = a.num_gens(), nb = b.num_gens(), n = na + nb;
  std::vector<std::uint32_t> exps;
  exps.reserve(n);
  for (std::uint32_t i = 0; i < na; ++i) exps.push_back(a.rel_order_exp(i));
  for (std::uint32_t i = 0; i < nb; ++i) exps.push_back(b.rel_order_exp(i));

  auto widen_a = [&](const ExpVec& t) {
    ExpVec out(n, 0);
    std::copy(t.begin(), t.end(), out.begin());
    return out;
  };
  auto widen_b = [&](const ExpVec& t) {
    ExpVec out(n, 0);
    std::copy(t.begin(), t.end(), out.begin() + na);
    return out;
  };

  std::vector<ExpVec> pows;
  pows.reserve(n);
  for (std::uint32_t i = 0; i < na; ++i) pows.push_back(widen_a(a.power_tail(i)));
  for (std::uint32_t i = 0; i < nb; ++i) pows.push_back(widen_b(b.power_tail(i)));

  std::vector<ExpVec> comms(static_cast<std::size_t>(n) * (n - 1) / 2, ExpVec(n, 0));
  for (std::uint32_t j = 1; j < na; ++j)
    for (std::uint32_t i = 0; i < j; ++i)
      comms[PcPresentation::pair_index(j, i)] = widen_a(a.comm_tail(j, i));
  for (std::uint32_t j = 1; j < nb; ++j)
    for (std::uint32_t i = 0; i < j; ++i)
      comms[PcPresentation::pair_index(na + j, na + i)] = widen_b(b.comm_tail(j, i));

  PcPresentation prod(a.prime(), std::move(exps), std::move(pows), std::move(comms));
  ConsistencyReport rep = prod.check_consistency();
  if (!rep.pass) throw InternalError("direct product of consistent factors inconsistent");
  return prod;
}

} // namespace pcg
