#include "pcg/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pcg::kernels {

namespace {

/// Exceptions cannot unwind out of an OpenMP region; workers park the
/// first one here and the caller rethrows after the loop.
class ExceptionBox {
public:
  void capture() {
    std::lock_guard<std::mutex> lock(mu_);
    if (!ptr_) ptr_ = std::current_exception();
  }
  bool armed() const { return armed_.load(std::memory_order_relaxed); }
  void arm() { armed_.store(true, std::memory_order_relaxed); }
  void rethrow_if_set() {
    if (ptr_) std::rethrow_exception(ptr_);
  }

private:
  std::mutex mu_;
  std::exception_ptr ptr_;
  std::atomic<bool> armed_{false};
};

// splitmix64; sampling must be a pure function of (seed, slot)
std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct TripleSource {
  const PcPresentation& pres;
  std::uint64_t sample;
  std::uint64_t seed;
  std::uint64_t count() const {
    if (sample) return sample;
    std::uint64_t n = pres.order();
    return n * n * n;
  }
  std::array<std::uint64_t, 3> triple(std::uint64_t slot) const {
    const std::uint64_t n = pres.order();
    if (!sample) {
      std::uint64_t a = slot / (n * n);
      std::uint64_t b = (slot / n) % n;
      std::uint64_t c = slot % n;
      return {a, b, c};
    }
    return {mix(seed ^ (3 * slot)) % n, mix(seed ^ (3 * slot + 1)) % n,
            mix(seed ^ (3 * slot + 2)) % n};
  }
};

bool triple_associates(const PcPresentation& pres, const std::array<std::uint64_t, 3>& t) {
  GroupElement x = pres.element_at(t[0]);
  GroupElement y = pres.element_at(t[1]);
  GroupElement z = pres.element_at(t[2]);
  return pres.multiply(pres.multiply(x, y), z) == pres.multiply(x, pres.multiply(y, z));
}

bool element_laws_hold(const PcPresentation& pres, std::uint64_t idx) {
  GroupElement x = pres.element_at(idx);
  GroupElement id = pres.identity();
  if (pres.multiply(x, id) != x || pres.multiply(id, x) != x) return false;
  GroupElement xi = pres.inverse(x);
  return pres.multiply(x, xi).is_identity() && pres.multiply(xi, x).is_identity();
}

bool element_is_central(const PcPresentation& pres, std::uint64_t idx) {
  GroupElement x = pres.element_at(idx);
  for (std::uint32_t i = 0; i < pres.num_gens(); ++i)
    if (!pres.commutator(x, pres.generator(i)).is_identity()) return false;
  return true;
}

void check_enumeration_allowed(const PcPresentation& pres) {
  if (pres.order() > order_cap())
    throw ResourceError("group order " + std::to_string(pres.order()) +
                        " exceeds enumeration cap " + std::to_string(order_cap()));
}

} // namespace

// ---------------------------------------------------------------------------
// serial reference implementations
// ---------------------------------------------------------------------------

namespace serial {

AxiomReport check_axioms(const PcPresentation& pres, std::uint64_t sample_triples,
                         std::uint64_t seed) {
  check_enumeration_allowed(pres);
  TripleSource src{pres, sample_triples, seed};
  AxiomReport rep;
  rep.associativity_ok = true;
  const std::uint64_t count = src.count();
  for (std::uint64_t s = 0; s < count; ++s) {
    auto t = src.triple(s);
    if (!triple_associates(pres, t)) {
      rep.associativity_ok = false;
      rep.failing_triple = t;
      break;
    }
  }
  rep.triples_checked = count;
  rep.identity_ok = true;
  rep.inverse_ok = true;
  for (std::uint64_t i = 0; i < pres.order(); ++i)
    if (!element_laws_hold(pres, i)) {
      rep.identity_ok = rep.inverse_ok = false;
      break;
    }
  return rep;
}

std::vector<std::uint64_t> central_element_indices(const PcPresentation& pres) {
  check_enumeration_allowed(pres);
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 0; i < pres.order(); ++i)
    if (element_is_central(pres, i)) out.push_back(i);
  return out;
}

std::map<std::uint64_t, std::uint64_t> element_order_histogram(const PcPresentation& pres) {
  check_enumeration_allowed(pres);
  std::map<std::uint64_t, std::uint64_t> hist;
  for (std::uint64_t i = 0; i < pres.order(); ++i)
    ++hist[pres.element_order(pres.element_at(i))];
  return hist;
}

std::uint64_t find_first(std::uint64_t count, const std::function<bool(std::uint64_t)>& pred) {
  for (std::uint64_t i = 0; i < count; ++i)
    if (pred(i)) return i;
  return knpos;
}

std::vector<std::uint64_t> filter_indices(std::uint64_t count,
                                          const std::function<bool(std::uint64_t)>& pred) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 0; i < count; ++i)
    if (pred(i)) out.push_back(i);
  return out;
}

} // namespace serial

// ---------------------------------------------------------------------------
// OpenMP kernels; each produces exactly the serial result
// ---------------------------------------------------------------------------

AxiomReport check_axioms(const PcPresentation& pres, std::uint64_t sample_triples,
                         std::uint64_t seed) {
  check_enumeration_allowed(pres);
  TripleSource src{pres, sample_triples, seed};
  AxiomReport rep;
  const std::int64_t count = static_cast<std::int64_t>(src.count());
  std::atomic<std::uint64_t> first_bad{knpos};
  ExceptionBox box;

#pragma omp parallel for schedule(dynamic, 256)
  for (std::int64_t s = 0; s < count; ++s) {
    std::uint64_t us = static_cast<std::uint64_t>(s);
    if (box.armed() || us >= first_bad.load(std::memory_order_relaxed)) continue;
    try {
      if (!triple_associates(pres, src.triple(us))) {
        std::uint64_t prev = first_bad.load(std::memory_order_relaxed);
        while (us < prev && !first_bad.compare_exchange_weak(prev, us)) {
        }
      }
    } catch (...) {
      box.capture();
      box.arm();
    }
  }
  box.rethrow_if_set();
  rep.triples_checked = static_cast<std::uint64_t>(count);
  rep.associativity_ok = first_bad.load() == knpos;
  if (!rep.associativity_ok) rep.failing_triple = src.triple(first_bad.load());

  const std::int64_t n = static_cast<std::int64_t>(pres.order());
  std::atomic<bool> laws_ok{true};
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t i = 0; i < n; ++i) {
    if (box.armed() || !laws_ok.load(std::memory_order_relaxed)) continue;
    try {
      if (!element_laws_hold(pres, static_cast<std::uint64_t>(i))) laws_ok.store(false);
    } catch (...) {
      box.capture();
      box.arm();
    }
  }
  box.rethrow_if_set();
  rep.identity_ok = rep.inverse_ok = laws_ok.load();
  return rep;
}

std::vector<std::uint64_t> central_element_indices(const PcPresentation& pres) {
  check_enumeration_allowed(pres);
  const std::int64_t n = static_cast<std::int64_t>(pres.order());
  std::vector<char> flag(static_cast<std::size_t>(n), 0);
  ExceptionBox box;
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t i = 0; i < n; ++i) {
    if (box.armed()) continue;
    try {
      flag[static_cast<std::size_t>(i)] = element_is_central(pres, static_cast<std::uint64_t>(i));
    } catch (...) {
      box.capture();
      box.arm();
    }
  }
  box.rethrow_if_set();
  std::vector<std::uint64_t> out;
  for (std::int64_t i = 0; i < n; ++i)
    if (flag[static_cast<std::size_t>(i)]) out.push_back(static_cast<std::uint64_t>(i));
  return out;
}

std::map<std::uint64_t, std::uint64_t> element_order_histogram(const PcPresentation& pres) {
  check_enumeration_allowed(pres);
  const std::int64_t n = static_cast<std::int64_t>(pres.order());
  std::vector<std::uint64_t> orders(static_cast<std::size_t>(n), 0);
  ExceptionBox box;
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t i = 0; i < n; ++i) {
    if (box.armed()) continue;
    try {
      orders[static_cast<std::size_t>(i)] =
          pres.element_order(pres.element_at(static_cast<std::uint64_t>(i)));
    } catch (...) {
      box.capture();
      box.arm();
    }
  }
  box.rethrow_if_set();
  std::map<std::uint64_t, std::uint64_t> hist;
  for (auto o : orders) ++hist[o];
  return hist;
}

std::uint64_t find_first(std::uint64_t count, const std::function<bool(std::uint64_t)>& pred,
                         bool first_found) {
  std::atomic<std::uint64_t> best{knpos};
  std::atomic<bool> stop{false};
  const std::int64_t cnt = static_cast<std::int64_t>(count);
  ExceptionBox box;
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t i = 0; i < cnt; ++i) {
    std::uint64_t ui = static_cast<std::uint64_t>(i);
    if (box.armed()) continue;
    if (first_found && stop.load(std::memory_order_relaxed)) continue;
    if (ui >= best.load(std::memory_order_relaxed)) continue;
    try {
      if (pred(ui)) {
        std::uint64_t prev = best.load(std::memory_order_relaxed);
        while (ui < prev && !best.compare_exchange_weak(prev, ui)) {
        }
        stop.store(true, std::memory_order_relaxed);
      }
    } catch (...) {
      box.capture();
      box.arm();
    }
  }
  box.rethrow_if_set();
  return best.load();
}

std::vector<std::uint64_t> filter_indices(std::uint64_t count,
                                          const std::function<bool(std::uint64_t)>& pred) {
  std::vector<char> flag(static_cast<std::size_t>(count), 0);
  const std::int64_t cnt = static_cast<std::int64_t>(count);
  ExceptionBox box;
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t i = 0; i < cnt; ++i) {
    if (box.armed()) continue;
    try {
      flag[static_cast<std::size_t>(i)] = pred(static_cast<std::uint64_t>(i));
    } catch (...) {
      box.capture();
      box.arm();
    }
  }
  box.rethrow_if_set();
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 0; i < count; ++i)
    if (flag[static_cast<std::size_t>(i)]) out.push_back(i);
  return out;
}

} // namespace pcg::kernels
