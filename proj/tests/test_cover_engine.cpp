#include <gtest/gtest.h>

#include "possdiag/cover_engine.hpp"
#include "possdiag/crisp_engine.hpp"
#include "possdiag/error.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace possdiag;
using testsupport::Mask;
using testsupport::to_crisp;
using testsupport::to_disorders;

namespace {

CausalRelation relation_of(const std::vector<Mask>& possible, std::size_t manifestations) {
  std::vector<CrispSet> sets;
  for (auto p : possible) sets.push_back(to_crisp(p, manifestations));
  return CausalRelation(testsupport::names("d", possible.size()), testsupport::names("m", manifestations),
                        std::move(sets));
}

// d1 -> {m1,m2}, d2 -> {m2,m3}, d3 -> {m1}
const std::vector<Mask> kDemo{0b011, 0b110, 0b001};

CoverReport flags(const std::vector<CoverReport>& reports, const DisorderSet& d) {
  for (const auto& r : reports)
    if (r.subset == d) return r;
  ADD_FAILURE() << "subset not reported";
  return {};
}

}  // namespace

TEST(Covers, DemoCoverChecks) {
  const auto rel = relation_of(kDemo, 3);
  const auto present = to_crisp(0b101, 3);
  EXPECT_TRUE(is_cover(rel, {0, 1}, present));
  EXPECT_FALSE(is_cover(rel, {0}, present));
  EXPECT_TRUE(is_cover(rel, {}, to_crisp(0, 3)));
  EXPECT_THROW((void)is_cover(rel, {7}, present), DiagnosisError);
}

TEST(Covers, DemoClassification) {
  const auto rel = relation_of(kDemo, 3);
  const auto reports = classify_covers(rel, to_crisp(0b101, 3), 3);
  EXPECT_EQ(flags(reports, {0, 1}), (CoverReport{{0, 1}, true, true, true, true}));
  EXPECT_EQ(flags(reports, {1, 2}), (CoverReport{{1, 2}, true, true, true, true}));
  EXPECT_EQ(flags(reports, {0, 1, 2}), (CoverReport{{0, 1, 2}, true, true, false, false}));
  EXPECT_EQ(reports.size(), 3u);

  const auto minimum = classify_covers(rel, to_crisp(0b101, 3), 3, CoverClass::kMinimum);
  ASSERT_EQ(minimum.size(), 2u);
  EXPECT_EQ(minimum[0].subset, (DisorderSet{0, 1}));
  EXPECT_EQ(minimum[1].subset, (DisorderSet{1, 2}));
}

TEST(Covers, EmptyEvidenceIsCoveredByEverything) {
  const auto rel = relation_of(kDemo, 3);
  const auto reports = classify_covers(rel, to_crisp(0, 3), 3);
  EXPECT_EQ(reports.size(), 8u);
  for (const auto& r : reports) {
    EXPECT_EQ(r.irredundant, r.subset.empty());
    EXPECT_EQ(r.minimum, r.subset.empty());
  }
}

TEST(Covers, MatchBruteForceFlagForFlag) {
  testsupport::Rng rng(53);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t nd = testsupport::uniform(rng, 1, 8), nm = testsupport::uniform(rng, 1, 8);
    std::vector<Mask> possible;
    for (std::size_t d = 0; d < nd; ++d) possible.push_back(testsupport::random_mask(rng, nm, 0.35));
    const Mask present = testsupport::random_mask(rng, nm);
    const auto rel = relation_of(possible, nm);
    const auto expected = oracle::classify(possible, present);
    const std::size_t max_card = testsupport::uniform(rng, 0, nd);

    for (auto cls : {CoverClass::kAll, CoverClass::kRelevant, CoverClass::kIrredundant, CoverClass::kMinimum}) {
      std::vector<CoverReport> want;
      for (const auto& f : expected) {
        if (!f.cover || static_cast<std::size_t>(std::popcount(f.subset)) > max_card) continue;
        CoverReport r{to_disorders(f.subset, nd), f.cover, f.relevant, f.irredundant, f.minimum};
        if (in_class(r, cls)) want.push_back(r);
      }
      ASSERT_EQ(classify_covers(rel, to_crisp(present, nm), max_card, cls), want)
          << "trial " << trial << " class " << static_cast<int>(cls);
    }
  }
}

TEST(Covers, FlagsImplyEachOther) {
  testsupport::Rng rng(59);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t nd = testsupport::uniform(rng, 1, 7), nm = testsupport::uniform(rng, 1, 7);
    std::vector<Mask> possible;
    for (std::size_t d = 0; d < nd; ++d) possible.push_back(testsupport::random_mask(rng, nm, 0.4));
    for (const auto& r : classify_covers(relation_of(possible, nm), to_crisp(testsupport::random_mask(rng, nm), nm), nd)) {
      ASSERT_TRUE(!r.minimum || r.irredundant);
      ASSERT_TRUE(!r.irredundant || r.relevant);
      ASSERT_TRUE(!r.relevant || r.is_cover);
    }
  }
}

TEST(Covers, RelationComesFromTheExcludedParts) {
  testsupport::CrispModel c{2, 3, {0b001, 0b000}, {0b100, 0b011}};
  const auto rel = CausalRelation::from(c.kb());
  EXPECT_EQ(rel.possible(0), to_crisp(0b011, 3));
  EXPECT_EQ(rel.possible(1), to_crisp(0b100, 3));
  EXPECT_EQ(rel.disorder_id(1), "d2");
}

TEST(Covers, CoveringMatchesExplanationWithoutAbsentEvidence) {
  testsupport::Rng rng(61);
  for (int trial = 0; trial < 200; ++trial) {
    const auto c = testsupport::random_incomplete_model(rng, 6, 6);
    const auto kb = c.kb();
    const Mask present = testsupport::random_mask(rng, c.manifestations);
    std::vector<DisorderSet> covers;
    for (const auto& r : classify_covers(CausalRelation::from(kb), to_crisp(present, c.manifestations), c.disorders))
      if (!r.subset.empty()) covers.push_back(r.subset);
    std::vector<DisorderSet> explained;
    for (const auto& e :
         explainer_subsets_incomplete(kb, testsupport::crisp_observation(present, 0, c.manifestations), {c.disorders}))
      explained.push_back(e.disorders);
    ASSERT_EQ(covers, explained);
  }
}

TEST(ExtendedRelevant, WithoutAbsentEvidenceEqualsRelevantCovers) {
  testsupport::Rng rng(67);
  for (int trial = 0; trial < 100; ++trial) {
    const auto c = testsupport::random_incomplete_model(rng, 6, 6);
    const auto kb = c.kb();
    const Mask present = testsupport::random_mask(rng, c.manifestations);
    if (present == 0) continue;
    std::vector<DisorderSet> relevant;
    for (const auto& r : classify_covers(CausalRelation::from(kb), to_crisp(present, c.manifestations), c.disorders,
                                         CoverClass::kRelevant))
      relevant.push_back(r.subset);
    ASSERT_EQ(extended_relevant(kb, testsupport::crisp_observation(present, 0, c.manifestations), c.disorders),
              relevant);
  }
}

TEST(ExtendedRelevant, MemberThatCannotLeaveOutAnAbsentFindingIsDropped) {
  // d certainly causes m1 and m2; nothing it might not produce is observed absent.
  testsupport::CrispModel c{1, 3, {0b011}, {0b000}};
  const auto kb = c.kb();
  EXPECT_TRUE(extended_relevant(kb, testsupport::crisp_observation(0b001, 0b010, 3), 1).empty());
  EXPECT_EQ(extended_relevant(kb, testsupport::crisp_observation(0b001, 0b100, 3), 1),
            (std::vector<DisorderSet>{{0}}));
}

TEST(ExtendedRelevant, EmptyEvidenceAdmitsEverySubset) {
  testsupport::CrispModel c{3, 2, {0b01, 0b10, 0b00}, {0b10, 0b00, 0b01}};
  EXPECT_EQ(extended_relevant(c.kb(), testsupport::crisp_observation(0, 0, 2), 3).size(), 8u);
  EXPECT_EQ(extended_relevant(c.kb(), testsupport::crisp_observation(0, 0, 2), 1).size(), 4u);
}

TEST(ExtendedRelevant, AgreesWithDirectDefinition) {
  testsupport::Rng rng(71);
  for (int trial = 0; trial < 150; ++trial) {
    const auto c = testsupport::random_incomplete_model(rng, 6, 6);
    const auto [p, a] = testsupport::random_crisp_evidence(rng, c.manifestations);
    const Mask full = testsupport::full_mask(c.manifestations);
    std::vector<DisorderSet> expected;
    for (Mask s : oracle::subsets_by_size(c.disorders, c.disorders, true)) {
      bool ok = oracle::subset(p, full & ~oracle::joint_neg(c, s));
      for (std::size_t d = 0; d < c.disorders && ok; ++d) {
        if (!(s >> d & 1)) continue;
        const Mask possible = full & ~c.neg[d];
        const Mask possibly_absent = full & ~c.pos[d];
        if (p != 0 && (possible & p) == 0) ok = false;
        if (a != 0 && (possibly_absent & a) == 0) ok = false;
      }
      if (ok) expected.push_back(to_disorders(s, c.disorders));
    }
    ASSERT_EQ(extended_relevant(c.kb(), testsupport::crisp_observation(p, a, c.manifestations), c.disorders),
              expected);
  }
}
