#pragma once

// Shared fixtures for the test suites: hand-written presentations of the
// usual small groups, plus multiplication-table group machinery that is
// fully independent of the collection path (used as an oracle).

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "pcg/presentation.hpp"

namespace testsupport {

using pcg::ExpVec;
using pcg::GroupElement;
using pcg::PcPresentation;

inline PcPresentation checked(PcPresentation p) {
  auto rep = p.check_consistency();
  if (!rep.pass) throw std::logic_error("fixture inconsistent: " + rep.failing_word);
  return p;
}

/// Heisenberg group of order p^3: gens (a, b, c), all relative order p,
/// [b, a] = c^-1 (so [a, b] = c), c central.
inline PcPresentation heisenberg(std::uint32_t p) {
  PcPresentation g = PcPresentation::free_abelian_like(p, {1, 1, 1});
  g.set_comm_tail(1, 0, ExpVec{0, 0, p - 1});
  return checked(g);
}

/// Q8 as gens (b, a) with a of relative order 4: b^2 = a^2, [a, b] = a^2.
inline PcPresentation quaternion8() {
  PcPresentation g = PcPresentation::free_abelian_like(2, {1, 2});
  g.set_power_tail(0, ExpVec{0, 2});
  g.set_comm_tail(1, 0, ExpVec{0, 2});
  return checked(g);
}

/// Dihedral group of order 2^k, k >= 3: gens (s, r) with r of relative
/// order 2^{k-1}, [r, s] = r^{-2}.
inline PcPresentation dihedral(std::uint32_t k) {
  std::uint32_t m = 1u << (k - 1);
  PcPresentation g = PcPresentation::free_abelian_like(2, {1, k - 1});
  g.set_comm_tail(1, 0, ExpVec{0, m - 2});
  return checked(g);
}

/// Semidihedral group of order 16: gens (s, r), s^-1 r s = r^3.
inline PcPresentation semidihedral16() {
  PcPresentation g = PcPresentation::free_abelian_like(2, {1, 3});
  g.set_comm_tail(1, 0, ExpVec{0, 2});
  return checked(g);
}

/// Generalized quaternion group of order 2^k, k >= 3: gens (s, r),
/// s^2 = r^{2^{k-2}}, [r, s] = r^{-2}.
inline PcPresentation quaternion(std::uint32_t k) {
  std::uint32_t m = 1u << (k - 1);
  PcPresentation g = PcPresentation::free_abelian_like(2, {1, k - 1});
  g.set_power_tail(0, ExpVec{0, m / 2});
  g.set_comm_tail(1, 0, ExpVec{0, m - 2});
  return checked(g);
}

/// Abelian p-group with the given relative-order exponents.
inline PcPresentation abelian(std::uint32_t p, std::vector<std::uint32_t> exps) {
  return checked(PcPresentation::free_abelian_like(p, std::move(exps)));
}

// ---------------------------------------------------------------------------
// Table groups: independent of the pc machinery entirely.
// ---------------------------------------------------------------------------

struct TableGroup {
  std::vector<std::vector<int>> mul; // mul[x][y]
  int identity = 0;
  int size() const { return static_cast<int>(mul.size()); }

  int inv(int x) const {
    for (int y = 0; y < size(); ++y)
      if (mul[x][y] == identity) return y;
    throw std::logic_error("table group: no inverse");
  }
  int comm(int x, int y) const { return mul[mul[inv(x)][inv(y)]][mul[x][y]]; }
  int pow(int x, int k) const {
    int r = identity;
    for (int i = 0; i < k; ++i) r = mul[r][x];
    return r;
  }
  int element_order(int x) const {
    int r = x, n = 1;
    while (r != identity) {
      r = mul[r][x];
      ++n;
    }
    return n;
  }
  std::vector<int> closure(std::vector<int> gens) const {
    std::set<int> seen{identity};
    std::vector<int> queue{identity};
    for (std::size_t q = 0; q < queue.size(); ++q)
      for (int g : gens) {
        int y = mul[queue[q]][g];
        if (seen.insert(y).second) queue.push_back(y);
      }
    std::vector<int> out(seen.begin(), seen.end());
    return out;
  }
  std::vector<int> center() const {
    std::vector<int> out;
    for (int x = 0; x < size(); ++x) {
      bool ok = true;
      for (int y = 0; y < size() && ok; ++y) ok = mul[x][y] == mul[y][x];
      if (ok) out.push_back(x);
    }
    return out;
  }
  std::vector<int> derived() const {
    std::vector<int> gens;
    for (int x = 0; x < size(); ++x)
      for (int y = 0; y < size(); ++y) gens.push_back(comm(x, y));
    return closure(gens);
  }
  int nilpotency_class() const {
    // lower central series on the table
    std::vector<int> cur(size());
    std::iota(cur.begin(), cur.end(), 0);
    int cls = 0;
    while (cur.size() > 1) {
      std::vector<int> gens;
      for (int x : cur)
        for (int y = 0; y < size(); ++y) gens.push_back(comm(x, y));
      std::vector<int> next = closure(gens);
      if (next.size() == cur.size()) throw std::logic_error("not nilpotent");
      cur = std::move(next);
      ++cls;
    }
    return cls;
  }
  /// d(G) for a p-group: log_p |G / (derived * p-th powers closure)|.
  int min_generators(int p) const {
    std::vector<int> gens = derived();
    for (int x = 0; x < size(); ++x) gens.push_back(pow(x, p));
    std::vector<int> frat = closure(gens);
    int quotient = size() / static_cast<int>(frat.size());
    int d = 0;
    while (quotient > 1) {
      quotient /= p;
      ++d;
    }
    return d;
  }
  std::map<int, int> order_histogram() const {
    std::map<int, int> h;
    for (int x = 0; x < size(); ++x) ++h[element_order(x)];
    return h;
  }
};

/// Group generated by permutations, multiplication = composition
/// (x then y), realized as a full table.
inline TableGroup table_from_perms(int degree, std::vector<std::vector<int>> gens) {
  std::vector<int> id(degree);
  std::iota(id.begin(), id.end(), 0);
  auto compose = [&](const std::vector<int>& f, const std::vector<int>& g) {
    std::vector<int> h(degree);
    for (int i = 0; i < degree; ++i) h[i] = g[f[i]];
    return h;
  };
  std::vector<std::vector<int>> elems{id};
  std::map<std::vector<int>, int> index{{id, 0}};
  for (std::size_t q = 0; q < elems.size(); ++q)
    for (const auto& g : gens) {
      auto y = compose(elems[q], g);
      if (!index.count(y)) {
        index[y] = static_cast<int>(elems.size());
        elems.push_back(y);
      }
    }
  TableGroup t;
  int n = static_cast<int>(elems.size());
  t.mul.assign(n, std::vector<int>(n, 0));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) t.mul[x][y] = index.at(compose(elems[x], elems[y]));
  return t;
}

inline TableGroup table_d8() { return table_from_perms(4, {{1, 2, 3, 0}, {1, 0, 3, 2}}); }

/// Q8 on the quaternion units +-1, +-i, +-j, +-k.
inline TableGroup table_q8() {
  // element = (sign, axis), axis 0=1, 1=i, 2=j, 3=k; id = axis*2 + (sign<0)
  auto axis_mul = [](int a, int b, int& sign) -> int {
    if (a == 0) return b;
    if (b == 0) return a;
    if (a == b) {
      sign = -sign;
      return 0;
    }
    // i*j=k, j*k=i, k*i=j; reverse order flips sign
    static const int prod[4][4] = {{0, 0, 0, 0}, {0, 0, 3, 2}, {0, 3, 0, 1}, {0, 2, 1, 0}};
    static const int sgn[4][4] = {{1, 1, 1, 1}, {1, 1, 1, -1}, {1, -1, 1, 1}, {1, 1, -1, 1}};
    sign *= sgn[a][b];
    return prod[a][b];
  };
  TableGroup t;
  t.mul.assign(8, std::vector<int>(8, 0));
  for (int x = 0; x < 8; ++x)
    for (int y = 0; y < 8; ++y) {
      int sign = (x & 1 ? -1 : 1) * (y & 1 ? -1 : 1);
      int axis = axis_mul(x >> 1, y >> 1, sign);
      t.mul[x][y] = axis * 2 + (sign < 0 ? 1 : 0);
    }
  return t;
}

/// Abelian table group Z_{m1} x Z_{m2} x ...
inline TableGroup table_abelian(std::vector<int> ms) {
  int n = 1;
  for (int m : ms) n *= m;
  auto decode = [&](int x) {
    std::vector<int> v(ms.size());
    for (std::size_t i = ms.size(); i-- > 0;) {
      v[i] = x % ms[i];
      x /= ms[i];
    }
    return v;
  };
  auto encode = [&](const std::vector<int>& v) {
    int x = 0;
    for (std::size_t i = 0; i < ms.size(); ++i) x = x * ms[i] + v[i];
    return x;
  };
  TableGroup t;
  t.mul.assign(n, std::vector<int>(n, 0));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      auto a = decode(x), b = decode(y);
      for (std::size_t i = 0; i < ms.size(); ++i) a[i] = (a[i] + b[i]) % ms[i];
      t.mul[x][y] = encode(a);
    }
  return t;
}

/// Deterministic pseudo-random element index stream.
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t x = state;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }
  std::uint64_t below(std::uint64_t n) { return next() % n; }
};

} // namespace testsupport
