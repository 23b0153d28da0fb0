#include "pcg/families.hpp"

#include <algorithm>

#include "pcg/kernels.hpp"
#include "pcg/structure.hpp"

namespace pcg {

namespace {

std::uint64_t ipow(std::uint64_t b, std::uint32_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

bool odd_prime(std::uint32_t p) { return p % 2 == 1 && p > 2; }

} // namespace

std::string variant_name(FamilyVariant v) {
  switch (v) {
    case FamilyVariant::T1i: return "T1i";
    case FamilyVariant::T1ii: return "T1ii";
    case FamilyVariant::T2i: return "T2i";
    case FamilyVariant::T2ii: return "T2ii";
  }
  return "?";
}

std::optional<FamilyVariant> variant_from_name(std::string_view name) {
  if (name == "T1i") return FamilyVariant::T1i;
  if (name == "T1ii") return FamilyVariant::T1ii;
  if (name == "T2i") return FamilyVariant::T2i;
  if (name == "T2ii") return FamilyVariant::T2ii;
  return std::nullopt;
}

std::string params_to_string(const FamilyParams& pr) {
  std::string s = variant_name(pr.variant) + "(p=" + std::to_string(pr.p) +
                  ",alpha=" + std::to_string(pr.alpha) + ",beta=" + std::to_string(pr.beta) +
                  ",gamma=" + std::to_string(pr.gamma);
  if (pr.variant == FamilyVariant::T1ii) s += ",sigma=" + std::to_string(pr.sigma);
  return s + ")";
}

void validate_params(const FamilyParams& pr) {
  bool two = pr.variant == FamilyVariant::T1i || pr.variant == FamilyVariant::T1ii;
  if (two && pr.p != 2)
    throw InputError(variant_name(pr.variant) + " requires p = 2");
  if (!two && !odd_prime(pr.p))
    throw InputError(variant_name(pr.variant) + " requires an odd prime p");
  if (pr.alpha < 1 || pr.beta < 1 || pr.gamma < 1)
    throw InputError("family exponents must be positive");
  if (pr.variant == FamilyVariant::T1ii) {
    if (pr.sigma < 1) throw InputError("T1ii requires sigma >= 1");
    if (pr.sigma >= pr.gamma)
      throw InputError("T1ii requires sigma < gamma (the amalgamation is trivial otherwise)");
    if (pr.alpha + pr.sigma < pr.gamma + 1)
      throw InputError("T1ii requires alpha + sigma - gamma >= 1");
  } else if (pr.sigma != 0) {
    throw InputError("sigma is only meaningful for T1ii");
  }
  if (pr.variant == FamilyVariant::T2ii && pr.alpha < 2 * pr.gamma)
    throw InputError("T2ii requires alpha >= 2*gamma (class would exceed 2)");
}

bool params_buildable(const FamilyParams& pr) {
  switch (pr.variant) {
    case FamilyVariant::T1i:
    case FamilyVariant::T2i:
      return pr.gamma <= std::min(pr.alpha, pr.beta);
    case FamilyVariant::T1ii:
      return pr.gamma <= pr.beta && pr.alpha + pr.sigma >= 2 * pr.gamma;
    case FamilyVariant::T2ii:
      return pr.gamma <= pr.beta;
  }
  return false;
}

std::uint64_t family_order(const FamilyParams& pr) {
  switch (pr.variant) {
    case FamilyVariant::T1i:
    case FamilyVariant::T2i:
      return ipow(pr.p, pr.alpha + pr.beta + pr.gamma);
    case FamilyVariant::T1ii:
      return ipow(2, pr.alpha + pr.beta + pr.sigma);
    case FamilyVariant::T2ii:
      return ipow(pr.p, pr.alpha + pr.beta);
  }
  return 0;
}

PcPresentation build_family(const FamilyParams& pr) {
  validate_params(pr);
  const std::uint32_t p = pr.p;
  PcPresentation g(2, {}, {}, {});
  switch (pr.variant) {
    case FamilyVariant::T1i:
    case FamilyVariant::T2i: {
      // gens (a, b, c), [b, a] = c^-1, c central
      g = PcPresentation::free_abelian_like(p, {pr.alpha, pr.beta, pr.gamma});
      ExpVec t(3, 0);
      t[2] = static_cast<std::uint32_t>(ipow(p, pr.gamma) - 1);
      g.set_comm_tail(1, 0, t);
      break;
    }
    case FamilyVariant::T1ii: {
      // a's relative order drops to 2^{al+si-ga}; a^{2^{al+si-ga}} = c^{2^si}
      g = PcPresentation::free_abelian_like(
          2, {pr.alpha + pr.sigma - pr.gamma, pr.beta, pr.gamma});
      ExpVec pw(3, 0);
      pw[2] = static_cast<std::uint32_t>(ipow(2, pr.sigma));
      g.set_power_tail(0, pw);
      ExpVec t(3, 0);
      t[2] = static_cast<std::uint32_t>(ipow(2, pr.gamma) - 1);
      g.set_comm_tail(1, 0, t);
      break;
    }
    case FamilyVariant::T2ii: {
      // gens (b, a) so the tail [a, b] = a^{p^{al-ga}} points rightward
      g = PcPresentation::free_abelian_like(p, {pr.beta, pr.alpha});
      ExpVec t(2, 0);
      t[1] = static_cast<std::uint32_t>(ipow(p, pr.alpha - pr.gamma));
      g.set_comm_tail(1, 0, t);
      break;
    }
  }
  auto rep = g.check_consistency();
  if (!rep.pass)
    throw ConsistencyError("family instance " + params_to_string(pr) + " is inconsistent",
                           rep.failing_word);
  if (g.order() != family_order(pr))
    throw InternalError("family instance has wrong order: " + params_to_string(pr));
  if (nilpotency_class(g) != 2)
    throw InternalError("family instance not of class 2: " + params_to_string(pr));
  Subgroup d = derived_subgroup(g);
  if (!is_cyclic(d) || d.size() != ipow(p, pr.gamma))
    throw InternalError("family commutator subgroup wrong: " + params_to_string(pr));
  if (minimal_generators(g) != 2)
    throw InternalError("family instance not 2-generated: " + params_to_string(pr));
  return g;
}

bool capability_condition(const FamilyParams& pr) {
  const std::uint32_t a = pr.alpha, b = pr.beta, c = pr.gamma, s = pr.sigma;
  switch (pr.variant) {
    case FamilyVariant::T1i:
      return a == b || (a == b + 1 && a == c + 1);
    case FamilyVariant::T1ii:
      return (a == b && c + 1 < b) || (a == b + 1 && a == c + 1 && a == s + 2);
    case FamilyVariant::T2i:
      return a == b && a >= c;
    case FamilyVariant::T2ii:
      return a == b && a >= 2 * c;
  }
  return false;
}

std::string capability_clause(FamilyVariant v) {
  switch (v) {
    case FamilyVariant::T1i: return "α = β or α = β + 1 = γ + 1";
    case FamilyVariant::T1ii:
      return "α = β and γ < β - 1, or α = β + 1 = γ + 1 = "
             "σ + 2";
    case FamilyVariant::T2i: return "α = β ≥ γ";
    case FamilyVariant::T2ii: return "α = β ≥ 2γ";
  }
  return "?";
}

std::vector<FamilyParams> family_instances_of_order(std::uint32_t p, std::uint64_t order) {
  std::vector<FamilyParams> out;
  std::uint32_t n = 0;
  std::uint64_t q = order;
  while (q > 1 && q % p == 0) {
    q /= p;
    ++n;
  }
  if (q != 1 || n < 3) return out;

  if (p == 2) {
    for (std::uint32_t al = 1; al < n; ++al)
      for (std::uint32_t be = 1; al + be < n; ++be) {
        std::uint32_t ga = n - al - be;
        FamilyParams pr{FamilyVariant::T1i, 2, al, be, ga, 0};
        if (params_buildable(pr)) out.push_back(pr);
      }
    for (std::uint32_t al = 1; al < n; ++al)
      for (std::uint32_t be = 1; al + be < n; ++be) {
        std::uint32_t si = n - al - be;
        for (std::uint32_t ga = si + 1; ga <= al + si - 1 && ga <= n; ++ga) {
          FamilyParams pr{FamilyVariant::T1ii, 2, al, be, ga, si};
          if (al + si < ga + 1) continue;
          if (params_buildable(pr)) out.push_back(pr);
        }
      }
  } else {
    for (std::uint32_t al = 1; al < n; ++al)
      for (std::uint32_t be = 1; al + be < n; ++be) {
        std::uint32_t ga = n - al - be;
        FamilyParams pr{FamilyVariant::T2i, p, al, be, ga, 0};
        if (params_buildable(pr)) out.push_back(pr);
      }
    for (std::uint32_t al = 1; al < n; ++al) {
      std::uint32_t be = n - al;
      if (be < 1) continue;
      for (std::uint32_t ga = 1; 2 * ga <= al; ++ga) {
        FamilyParams pr{FamilyVariant::T2ii, p, al, be, ga, 0};
        if (params_buildable(pr)) out.push_back(pr);
      }
    }
  }
  return out;
}

PcPresentation build_extraspecial(std::uint32_t p, std::uint32_t n_pairs, std::string_view kind) {
  if (n_pairs < 1) throw InputError("extraspecial group needs at least one pair");
  const std::uint32_t n = 2 * n_pairs + 1;
  if (p == 2) {
    if (kind.size() != n_pairs)
      throw InputError("extraspecial kind must have one D/Q letter per pair");
    for (char c : kind)
      if (c != 'D' && c != 'Q') throw InputError("extraspecial kind letters must be D or Q");
    PcPresentation g = PcPresentation::free_abelian_like(2, std::vector<std::uint32_t>(n, 1));
    ExpVec z(n, 0);
    z[n - 1] = 1;
    for (std::uint32_t k = 0; k < n_pairs; ++k) {
      g.set_comm_tail(2 * k + 1, 2 * k, z);
      if (kind[k] == 'Q') {
        g.set_power_tail(2 * k, z);
        g.set_power_tail(2 * k + 1, z);
      }
    }
    auto rep = g.check_consistency();
    if (!rep.pass) throw InternalError("extraspecial presentation inconsistent");
    return g;
  }
  if (!odd_prime(p)) throw InputError("extraspecial: p must be prime");
  if (kind != "exp-p")
    throw InputError("extraspecial: for odd p the kind must be \"exp-p\"");
  PcPresentation g = PcPresentation::free_abelian_like(p, std::vector<std::uint32_t>(n, 1));
  ExpVec z(n, 0);
  z[n - 1] = p - 1; // [y_k, x_k] = z^-1, i.e. [x_k, y_k] = z
  for (std::uint32_t k = 0; k < n_pairs; ++k) g.set_comm_tail(2 * k + 1, 2 * k, z);
  auto rep = g.check_consistency();
  if (!rep.pass) throw InternalError("extraspecial presentation inconsistent");
  return g;
}

std::string catalog_params_to_string(const CatalogParams& c) {
  return "alpha=" + std::to_string(c.alpha) + ",beta=" + std::to_string(c.beta) +
         ",gamma=" + std::to_string(c.gamma) + ",rho1=" + std::to_string(c.rho1) +
         ",rho2=" + std::to_string(c.rho2);
}

std::vector<CatalogEntry> enumerate_2gen_class2(std::uint32_t p, std::uint64_t max_order,
                                                std::uint64_t shuffle_seed) {
  const std::uint64_t cap = p == 2 ? 1024 : 729;
  if (max_order > cap)
    throw ResourceError("enumerate_2gen_class2: max_order exceeds the cap " +
                        std::to_string(cap) + " for p = " + std::to_string(p));
  if (max_order < ipow(p, 3)) return {}; // no 2-generated class-2 group fits

  std::vector<CatalogParams> grid;
  for (std::uint32_t al = 1; ipow(p, al + 2) <= max_order; ++al)
    for (std::uint32_t be = 1; ipow(p, al + be + 1) <= max_order; ++be)
      for (std::uint32_t ga = 1; ipow(p, al + be + ga) <= max_order; ++ga) {
        std::uint32_t pg = static_cast<std::uint32_t>(ipow(p, ga));
        for (std::uint32_t r1 = 0; r1 < pg; ++r1)
          for (std::uint32_t r2 = 0; r2 < pg; ++r2)
            grid.push_back(CatalogParams{al, be, ga, r1, r2});
      }

  // build + filter, one slot per tuple (parallel-safe); one index per
  // grid point and a deterministic merge, so thread count never matters
  std::vector<std::optional<CatalogEntry>> slots(grid.size());
  const auto build_one = [&](std::size_t gi) {
    const CatalogParams& cp = grid[gi];
    PcPresentation g = PcPresentation::free_abelian_like(p, {cp.alpha, cp.beta, cp.gamma});
    ExpVec t(3, 0);
    t[2] = static_cast<std::uint32_t>(ipow(p, cp.gamma) - 1);
    g.set_comm_tail(1, 0, t);
    if (cp.rho1) {
      ExpVec pw(3, 0);
      pw[2] = cp.rho1;
      g.set_power_tail(0, pw);
    }
    if (cp.rho2) {
      ExpVec pw(3, 0);
      pw[2] = cp.rho2;
      g.set_power_tail(1, pw);
    }
    if (!g.check_consistency().pass) return;
    if (nilpotency_class(g) != 2) return;
    slots[gi] = CatalogEntry{g, cp, fingerprint(g)};
  };
  kernels::filter_indices(grid.size(), [&](std::uint64_t gi) {
    build_one(static_cast<std::size_t>(gi));
    return false;
  });

  std::vector<std::size_t> scan(grid.size());
  for (std::size_t i = 0; i < scan.size(); ++i) scan[i] = i;
  if (shuffle_seed) {
    std::uint64_t s = shuffle_seed;
    for (std::size_t i = scan.size(); i > 1; --i) {
      s = s * 6364136223846793005ULL + 1442695040888963407ULL;
      std::swap(scan[i - 1], scan[(s >> 24) % i]);
    }
  }

  std::vector<CatalogEntry> kept;
  for (std::size_t si : scan) {
    if (!slots[si]) continue;
    const CatalogEntry& cand = *slots[si];
    bool dup = false;
    for (const auto& k : kept) {
      if (k.fp != cand.fp) continue;
      if (are_isomorphic(k.pres, cand.pres)) {
        dup = true;
        break;
      }
    }
    if (!dup) kept.push_back(cand);
  }
  return kept;
}

} // namespace pcg
