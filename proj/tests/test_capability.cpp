#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pcg/capability.hpp"
#include "support.hpp"

using namespace pcg;
using namespace testsupport;

namespace {

PcPresentation extraspecial32() { return build_extraspecial(2, 2, "DD"); }

/// Independent re-verification of a witness: recompute the central
/// quotient and check the recorded iso map edge by edge.
void verify_witness_soundly(const PcPresentation& g, const WitnessExtension& w) {
  REQUIRE(w.h.consistency_checked());
  Subgroup z = center(w.h);
  Subgroup der = derived_subgroup(w.h);
  REQUIRE(der.contains_subgroup(z));
  auto q = quotient(w.h, z);
  REQUIRE(q.group().order() == g.order());
  const auto& img = w.quotient_iso.image;
  REQUIRE(img.size() == q.group().order());
  std::vector<bool> hit(img.size(), false);
  for (auto v : img) {
    REQUIRE_FALSE(hit[v]);
    hit[v] = true;
  }
  for (std::uint64_t x = 0; x < q.group().order(); ++x)
    for (std::uint64_t y = 0; y < q.group().order(); ++y) {
      std::uint64_t xy =
          q.group().index_of(q.group().multiply(q.group().element_at(x), q.group().element_at(y)));
      std::uint64_t gxy = g.index_of(g.multiply(g.element_at(img[x]), g.element_at(img[y])));
      REQUIRE(img[xy] == gxy);
    }
  // fresh isomorphism check as a second route
  REQUIRE(are_isomorphic(q.group(), g));
}

} // namespace

TEST_CASE("classify_capable: Heisenberg 27 is capable via T2i(1,1,1)") {
  CapabilityVerdict v = classify_capable(heisenberg(3));
  CHECK(v.status == CapStatus::Capable);
  CHECK(v.reason == CapReason::MatchedCapableFamily);
  REQUIRE(v.matched.has_value());
  CHECK(v.matched->variant == FamilyVariant::T2i);
  CHECK(v.matched->alpha == 1);
  CHECK(v.matched->beta == 1);
  CHECK(v.matched->gamma == 1);
}

TEST_CASE("classify_capable: Q8 is not capable") {
  CapabilityVerdict v = classify_capable(quaternion8());
  CHECK(v.status == CapStatus::NotCapable);
  CHECK(v.reason == CapReason::NoFamilyMatch);
}

TEST_CASE("classify_capable: hypothesis violations yield Unknown") {
  CapabilityVerdict v = classify_capable(extraspecial32()); // d = 4
  CHECK(v.status == CapStatus::Unknown);
  CHECK(v.reason == CapReason::HypothesisViolation);

  CapabilityVerdict v2 = classify_capable(dihedral(4)); // class 3
  CHECK(v2.status == CapStatus::Unknown);
  CHECK(v2.reason == CapReason::HypothesisViolation);
}

TEST_CASE("classification is invariant under presentations of the same group") {
  PcPresentation a = build_family({FamilyVariant::T1i, 2, 2, 1, 1, 0});
  PcPresentation b = build_family({FamilyVariant::T1i, 2, 1, 2, 1, 0});
  REQUIRE(are_isomorphic(a, b));
  CapabilityVerdict va = classify_capable(a);
  CapabilityVerdict vb = classify_capable(b);
  CHECK(va.status == CapStatus::Capable);
  CHECK(vb.status == CapStatus::Capable);
}

TEST_CASE("witness_search: D8 has an order-16 witness isomorphic to D16's quotient") {
  PcPresentation d8 = dihedral(3);
  CapabilityVerdict v = witness_search(d8, 1);
  REQUIRE(v.status == CapStatus::Capable);
  REQUIRE(v.witness.has_value());
  CHECK(v.witness->h.order() == 16);
  verify_witness_soundly(d8, *v.witness);

  // the dihedral group of order 16 is itself such a witness
  PcPresentation d16 = dihedral(4);
  auto q = quotient(d16, center(d16));
  CHECK(are_isomorphic(q.group(), d8));
}

TEST_CASE("witness_search: Q8 exhausts its budget") {
  CapabilityVerdict v = witness_search(quaternion8(), 2);
  CHECK(v.status == CapStatus::Unknown);
  CHECK(v.reason == CapReason::BudgetExhausted);
  CHECK_FALSE(v.witness.has_value());
}

TEST_CASE("witness_search: Heisenberg 27 finds a witness of order 81 or 243") {
  PcPresentation h = heisenberg(3);
  CapabilityVerdict v = witness_search(h, 2);
  REQUIRE(v.status == CapStatus::Capable);
  REQUIRE(v.witness.has_value());
  std::uint64_t ho = v.witness->h.order();
  CHECK((ho == 81 || ho == 243));
  verify_witness_soundly(h, *v.witness);
  CHECK(nilpotency_class(v.witness->h) == 3);
}

TEST_CASE("witness_search is deterministic") {
  PcPresentation d8 = dihedral(3);
  CapabilityVerdict v1 = witness_search(d8, 1, true);
  CapabilityVerdict v2 = witness_search(d8, 1, true);
  REQUIRE(v1.witness.has_value());
  REQUIRE(v2.witness.has_value());
  CHECK(v1.witness->candidate_index == v2.witness->candidate_index);

  // serial reference scan agrees with the parallel minimum
  CapabilityVerdict v3 = witness_search(d8, 1, false);
  CHECK(v3.status == CapStatus::Capable);
}

TEST_CASE("witness_search input validation") {
  CHECK_THROWS_AS(witness_search(heisenberg(3), 0), InputError);
  CHECK_THROWS_AS(witness_search(heisenberg(3), 4), InputError);
}

TEST_CASE("theorem A holds for capable spot checks") {
  PcPresentation h = heisenberg(3);
  TheoremAReport rep = theorem_a_check(h, classify_capable(h));
  CHECK(rep.hypotheses_ok);
  CHECK(rep.pass);
  CHECK(rep.central_quotient_order == 9);
  CHECK(rep.derived_order == 3);
  CHECK(rep.central_quotient_rank == 2);
  CHECK(rep.quotient_invariants == std::vector<std::uint64_t>{3, 3});

  PcPresentation t = build_family({FamilyVariant::T1i, 2, 2, 1, 1, 0});
  TheoremAReport rep2 = theorem_a_check(t, classify_capable(t));
  CHECK(rep2.pass);
  CHECK(rep2.central_quotient_order == 4); // |G/Z| = |gamma_2|^2 = 4
}

TEST_CASE("theorem A: Q8 is a converse counterexample, not a failure") {
  PcPresentation q8 = quaternion8();
  CapabilityVerdict v = classify_capable(q8);
  REQUIRE(v.status == CapStatus::NotCapable);
  TheoremAReport rep = theorem_a_check(q8, v);
  CHECK_FALSE(rep.hypotheses_ok);
  CHECK_FALSE(rep.pass);
  // the arithmetic of the conclusion still holds: |G/Z| = 4 = |gamma_2|^2,
  // so the equation alone can never certify capability
  CHECK(rep.central_quotient_order == 4);
  CHECK(rep.derived_order == 2);
  CHECK(rep.central_quotient_rank == 2);
}

TEST_CASE("theorem_b_decide across the spot checks") {
  CapabilityVerdict es = theorem_b_decide(extraspecial32());
  CHECK(es.status == CapStatus::NotCapable);
  CHECK(es.reason == CapReason::NotTwoGenerated);

  CapabilityVerdict q = theorem_b_decide(quaternion8());
  CHECK(q.status == CapStatus::NotCapable);
  CHECK(q.reason == CapReason::NoFamilyMatch);

  CapabilityVerdict h = theorem_b_decide(heisenberg(3));
  CHECK(h.status == CapStatus::Capable);

  CapabilityVerdict d16 = theorem_b_decide(dihedral(4)); // class 3
  CHECK(d16.status == CapStatus::Unknown);
  CHECK(d16.reason == CapReason::HypothesisViolation);
}

TEST_CASE("corollary 2 checker") {
  Corollary2Report h = corollary2_check(heisenberg(3));
  CHECK(h.hypotheses_ok);
  CHECK(h.pass);
  CHECK(h.derived_cyclic);
  CHECK(h.min_generators == 2);
  CHECK(h.capability == CapStatus::Capable);

  Corollary2Report es = corollary2_check(extraspecial32());
  CHECK(es.hypotheses_ok);
  CHECK(es.pass);
  CHECK(es.derived_cyclic);
  CHECK(es.min_generators == 4);
  CHECK(es.capability == CapStatus::NotCapable);
  CHECK(es.capability_reason == CapReason::NotTwoGenerated);

  Corollary2Report d = corollary2_check(dihedral(4));
  CHECK_FALSE(d.hypotheses_ok);
}

TEST_CASE("lemma3_reduce: 2-generated class-3 witness, nothing to transform") {
  Lemma3Report rep = lemma3_reduce(dihedral(4));
  CHECK_FALSE(rep.degenerate);
  CHECK(rep.nilpotency_class == 3);
  CHECK(rep.num_generators == 2);
  CHECK(rep.y.empty());
  CHECK(rep.quotient_rank == 2);
  CHECK(rep.pass);
}

TEST_CASE("lemma3_reduce: class-3 groups with d >= 3") {
  std::vector<PcPresentation> hs;
  hs.push_back(direct_product(dihedral(4), abelian(2, {1})));           // d = 3, order 32
  hs.push_back(direct_product(quaternion(4), abelian(2, {1})));         // d = 3
  hs.push_back(direct_product(semidihedral16(), abelian(2, {1})));      // d = 3
  hs.push_back(direct_product(dihedral(4), abelian(2, {2})));           // d = 3, order 64
  hs.push_back(direct_product(dihedral(4), abelian(2, {1, 1})));        // d = 4
  for (const auto& h : hs) {
    Lemma3Report rep = lemma3_reduce(h);
    CHECK_FALSE(rep.degenerate);
    CHECK(rep.num_generators >= 3);
    CHECK(rep.y.size() == rep.num_generators - 2);
    for (bool in : rep.y_in_z2) CHECK(in);
    CHECK(rep.eq1_holds);
    CHECK(rep.pairs_central);
    CHECK(rep.quotient_rank == 2);
    CHECK(rep.pass);
    // the report data recomputes: y_j = x1^{beta_j} x_j x2^{-alpha_j}
    for (std::size_t j = 0; j < rep.y.size(); ++j) {
      GroupElement expect = h.multiply(
          h.power(rep.gens[0], rep.beta[j]),
          h.multiply(rep.gens[j + 2], h.power(rep.gens[1], -std::int64_t(rep.alpha[j]))));
      CHECK(rep.y[j] == expect);
    }
  }
}

TEST_CASE("lemma3_reduce: degenerate and error paths") {
  Lemma3Report rep = lemma3_reduce(heisenberg(3)); // class 2
  CHECK(rep.degenerate);
  CHECK(rep.pass);

  Lemma3Report rep2 = lemma3_reduce(abelian(2, {2, 1}));
  CHECK(rep2.degenerate);
  CHECK(rep2.pass);

  CHECK_THROWS_AS(lemma3_reduce(dihedral(5)), InputError); // class 4

  PcPresentation dd = direct_product(dihedral(4), dihedral(4)); // gamma_2 Z / Z = C2 x C2
  CHECK_THROWS_AS(lemma3_reduce(dd), InputError);
}

TEST_CASE("cross_validate: p=2 up to order 16 with budget 2") {
  SweepReport rep = cross_validate(2, 16, 2);
  CHECK_FALSE(rep.has_hard_conflict());
  CHECK_FALSE(rep.incomplete);
  CHECK(rep.rows.size() >= 5); // D8, Q8 and the three order-16 groups
  int capable = 0, witnesses = 0;
  for (const auto& row : rep.rows) {
    if (row.classification.status == CapStatus::Capable) {
      ++capable;
      if (row.search.status == CapStatus::Capable) ++witnesses;
    }
    if (row.search.status == CapStatus::Capable) {
      REQUIRE(row.search.witness.has_value());
      CHECK(row.search.witness->h.order() > row.order);
    }
  }
  CHECK(capable >= 2);         // at least D8 and the T1i(2,1,1) group
  CHECK(witnesses == capable); // every capable group here yields a witness
}

TEST_CASE("cross_validate: p=3 up to order 27 with budget 1") {
  SweepReport rep = cross_validate(3, 27, 1);
  CHECK_FALSE(rep.has_hard_conflict());
  REQUIRE(rep.rows.size() == 2);
  for (const auto& row : rep.rows) {
    if (row.classification.status == CapStatus::Capable)
      CHECK(row.search.status == CapStatus::Capable);
  }
}

TEST_CASE("cross_validate: empty catalog below p^3") {
  SweepReport rep = cross_validate(2, 4, 1);
  CHECK(rep.rows.empty());
  CHECK_FALSE(rep.incomplete);
}
