#include "pcg/isomorphism.hpp"

#include <algorithm>

#include "pcg/kernels.hpp"

namespace pcg {

namespace {

void fnv(std::uint64_t& h, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    h ^= (v >> (8 * i)) & 0xff;
    h *= 0x100000001b3ULL;
  }
}

} // namespace

std::uint64_t Fingerprint::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  fnv(h, order);
  fnv(h, nilpotency_class);
  fnv(h, abelianization.size());
  for (auto v : abelianization) fnv(h, v);
  fnv(h, exponent);
  fnv(h, center_size);
  fnv(h, derived_size);
  fnv(h, min_generators);
  fnv(h, order_histogram.size());
  for (auto [o, c] : order_histogram) {
    fnv(h, o);
    fnv(h, c);
  }
  fnv(h, frattini_size);
  fnv(h, derived_cyclic ? 1 : 0);
  return h;
}

Fingerprint fingerprint(const PcPresentation& pres) {
  pres.require_consistent("fingerprint");
  Fingerprint fp;
  fp.order = pres.order();
  fp.nilpotency_class = nilpotency_class(pres);
  Subgroup d = derived_subgroup(pres);
  fp.abelianization = abelian_invariants(quotient(pres, d).group());
  auto hist = kernels::element_order_histogram(pres);
  fp.order_histogram.assign(hist.begin(), hist.end());
  fp.exponent = hist.rbegin()->first;
  fp.center_size = center(pres).size();
  fp.derived_size = d.size();
  fp.min_generators = minimal_generators(pres);
  fp.frattini_size = frattini(pres).size();
  fp.derived_cyclic = is_cyclic(d);
  return fp;
}

namespace {

/// BFS spanning structure of the subgroup generated by the first k
/// elements of a generating sequence, with the tree edges used to
/// define candidate homomorphic images.
struct BfsLayer {
  std::vector<std::uint64_t> order;               // element indices in BFS order
  std::vector<std::pair<std::uint64_t, int>> via; // per BFS slot: (parent slot, generator)
};

BfsLayer bfs_span(const PcPresentation& g, const std::vector<GroupElement>& gens, std::size_t k) {
  BfsLayer layer;
  std::vector<bool> seen(static_cast<std::size_t>(g.order()), false);
  seen[0] = true;
  layer.order.push_back(0);
  layer.via.emplace_back(0, -1);
  for (std::size_t q = 0; q < layer.order.size(); ++q) {
    GroupElement x = g.element_at(layer.order[q]);
    for (std::size_t i = 0; i < k; ++i) {
      std::uint64_t y = g.index_of(g.multiply(x, gens[i]));
      if (!seen[y]) {
        seen[y] = true;
        layer.order.push_back(y);
        layer.via.emplace_back(q, static_cast<int>(i));
      }
    }
  }
  return layer;
}

/// Defines phi on the span by the BFS tree and verifies it on every
/// Cayley edge. Returns the image table (by slot) or nullopt.
std::optional<std::vector<std::uint64_t>> try_extend(const PcPresentation& a,
                                                     const PcPresentation& b,
                                                     const BfsLayer& span,
                                                     const std::vector<GroupElement>& agens,
                                                     const std::vector<GroupElement>& bimgs,
                                                     std::size_t k) {
  std::vector<std::uint64_t> img(span.order.size());
  img[0] = 0;
  for (std::size_t s = 1; s < span.order.size(); ++s) {
    auto [ps, gi] = span.via[s];
    img[s] = b.index_of(b.multiply(b.element_at(img[ps]), bimgs[gi]));
  }
  // full edge verification; slot lookup via a dense reverse map
  std::vector<std::uint64_t> slot_of(static_cast<std::size_t>(a.order()), ~std::uint64_t(0));
  for (std::size_t s = 0; s < span.order.size(); ++s) slot_of[span.order[s]] = s;
  for (std::size_t s = 0; s < span.order.size(); ++s) {
    GroupElement x = a.element_at(span.order[s]);
    GroupElement bx = b.element_at(img[s]);
    for (std::size_t i = 0; i < k; ++i) {
      std::uint64_t ya = a.index_of(a.multiply(x, agens[i]));
      std::uint64_t yb = b.index_of(b.multiply(bx, bimgs[i]));
      if (img[slot_of[ya]] != yb) return std::nullopt;
    }
  }
  return img;
}

struct IsoSearch {
  const PcPresentation& a;
  const PcPresentation& b;
  std::vector<GroupElement> agens;
  std::vector<BfsLayer> spans;          // per depth k: span of first k generators
  std::vector<std::uint64_t> aorders;   // element order of each chosen generator
  std::vector<std::vector<std::uint64_t>> candidates; // per depth: B indices of matching order
  std::vector<GroupElement> chosen;

  std::optional<IsoWitness> dfs(std::size_t k) {
    if (k == agens.size()) return finish();
    for (std::uint64_t cb : candidates[k]) {
      GroupElement img = b.element_at(cb);
      chosen.push_back(img);
      bool ok = true;
      // commutator order pre-prune
      for (std::size_t j = 0; j + 1 < chosen.size() && ok; ++j)
        ok = b.element_order(b.commutator(chosen[j], img)) ==
             a.element_order(a.commutator(agens[j], agens[k]));
      if (ok) {
        Subgroup reach = subgroup_closure(b, chosen);
        ok = reach.size() == spans[k + 1].order.size();
      }
      if (ok && try_extend(a, b, spans[k + 1], agens, chosen, k + 1)) {
        auto res = dfs(k + 1);
        if (res) return res;
      }
      chosen.pop_back();
    }
    return std::nullopt;
  }

  std::optional<IsoWitness> finish() {
    const BfsLayer& full = spans[agens.size()];
    if (full.order.size() != a.order()) return std::nullopt;
    auto img = try_extend(a, b, full, agens, chosen, agens.size());
    if (!img) return std::nullopt;
    // bijectivity
    std::vector<bool> hit(static_cast<std::size_t>(b.order()), false);
    for (auto v : *img) {
      if (hit[v]) return std::nullopt;
      hit[v] = true;
    }
    IsoWitness w;
    w.image.assign(static_cast<std::size_t>(a.order()), 0);
    for (std::size_t s = 0; s < full.order.size(); ++s) w.image[full.order[s]] = (*img)[s];
    return w;
  }
};

} // namespace

std::optional<IsoWitness> find_isomorphism(const PcPresentation& a, const PcPresentation& b) {
  if (a.order() > kIsoOrderCap || b.order() > kIsoOrderCap)
    throw ResourceError("isomorphism testing capped at order " + std::to_string(kIsoOrderCap));
  a.require_consistent("find_isomorphism");
  b.require_consistent("find_isomorphism");
  if (a.order() != b.order()) return std::nullopt;
  if (fingerprint(a) != fingerprint(b)) return std::nullopt;

  IsoSearch search{a, b, minimal_generating_sequence(a), {}, {}, {}, {}};
  const std::size_t d = search.agens.size();
  if (d == 0) return IsoWitness{{0}};

  search.spans.reserve(d + 1);
  for (std::size_t k = 0; k <= d; ++k) search.spans.push_back(bfs_span(a, search.agens, k));
  // element orders in B, computed once
  std::vector<std::uint64_t> border(static_cast<std::size_t>(b.order()));
  for (std::uint64_t i = 0; i < b.order(); ++i) border[i] = b.element_order(b.element_at(i));
  for (std::size_t k = 0; k < d; ++k) {
    search.aorders.push_back(a.element_order(search.agens[k]));
    std::vector<std::uint64_t> cand;
    for (std::uint64_t i = 0; i < b.order(); ++i)
      if (border[i] == search.aorders[k]) cand.push_back(i);
    search.candidates.push_back(std::move(cand));
  }
  return search.dfs(0);
}

bool are_isomorphic(const PcPresentation& a, const PcPresentation& b) {
  return find_isomorphism(a, b).has_value();
}

} // namespace pcg
