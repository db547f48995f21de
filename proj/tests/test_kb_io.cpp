#include <gtest/gtest.h>

#include "possdiag/cover_engine.hpp"
#include "possdiag/fuzzy_engine.hpp"
#include "possdiag/kb_io.hpp"
#include "support/generators.hpp"

using namespace possdiag;
using nlohmann::json;

namespace {

Rational q(std::int64_t p, std::int64_t d = 1) { return Rational(p, d); }

const char* kDemoKb = R"({
  "format_version": 1,
  "manifestations": ["m1", "m2", "m3", "m4"],
  "disorders": [
    {"id": "d2", "certain": {"m3": "1/2"}, "excluded": {"m1": "0.75"}},
    {"id": "d1", "certain": {"m1": 1, "m2": "3/4"}, "excluded": {"m3": "1"}},
    {"id": "d3"}
  ]
})";

const char* kDemoObs = R"({"format_version": 1, "present": {"m1": "1", "m2": "0.5"}, "absent": {"m3": "0.75"}})";

KnowledgeBase demo() {
  auto parsed = io::parse_kb(kDemoKb);
  EXPECT_TRUE(parsed.ok());
  return std::move(*parsed.value);
}

bool has_issue(const std::vector<io::DocumentIssue>& issues, const std::string& path, io::Severity severity) {
  return std::any_of(issues.begin(), issues.end(),
                     [&](const io::DocumentIssue& i) { return i.path == path && i.severity == severity; });
}

}  // namespace

TEST(ParseKb, MinimalDocument) {
  auto parsed = io::parse_kb(R"({"format_version": 1, "scale": ["0", "1"], "manifestations": ["m"],
                                 "disorders": [{"id": "d", "certain": {"m": "1"}}]})");
  ASSERT_TRUE(parsed.ok());
  EXPECT_TRUE(parsed.issues.empty());
  EXPECT_EQ(parsed.value->scale(), CertaintyScale::boolean());
  EXPECT_EQ(parsed.value->disorder_count(), 1u);
}

TEST(ParseKb, DemoDocumentDefaultsToFiveLevels) {
  const auto kb = demo();
  EXPECT_EQ(kb.scale(), CertaintyScale::standard());
  EXPECT_EQ(kb.disorder(0).id, "d1");
  EXPECT_EQ(kb.scale().value(kb.disorder(0).effects.positive().grade("m2")), q(3, 4));
  EXPECT_TRUE(kb.disorder(2).effects.positive().empty());
  EXPECT_EQ(kb.composition(), Composition::kAdditive);
}

TEST(ParseKb, TwofoldViolationIsReportedPerManifestation) {
  auto parsed = io::parse_kb(R"({"format_version": 1, "manifestations": ["m1", "m2"],
    "disorders": [{"id": "d", "certain": {"m1": "0.5"}, "excluded": {"m1": "0.25"}}]})");
  EXPECT_FALSE(parsed.ok());
  EXPECT_TRUE(has_issue(parsed.issues, "disorders/d/m1", io::Severity::kError));
}

TEST(ParseKb, OffScaleGrade) {
  auto parsed = io::parse_kb(R"({"format_version": 1, "manifestations": ["m1"],
    "disorders": [{"id": "d", "certain": {"m1": "0.3"}}]})");
  EXPECT_FALSE(parsed.ok());
  ASSERT_TRUE(has_issue(parsed.issues, "disorders/d/certain/m1", io::Severity::kError));
  EXPECT_NE(parsed.issues.front().message.find("not on the scale"), std::string::npos);
}

TEST(ParseKb, StructuralErrors) {
  auto expect_error = [](const char* text, const char* path) {
    auto parsed = io::parse_kb(text);
    EXPECT_FALSE(parsed.ok()) << text;
    EXPECT_TRUE(has_issue(parsed.issues, path, io::Severity::kError)) << text;
  };
  expect_error("{not json", "");
  expect_error(R"([1, 2])", "");
  expect_error(R"({"format_version": 2, "manifestations": [], "disorders": []})", "format_version");
  expect_error(R"({"format_version": 1, "manifestations": ["m", "m"], "disorders": []})", "manifestations/m");
  expect_error(R"({"format_version": 1, "manifestations": ["bad id"], "disorders": []})", "manifestations");
  expect_error(R"({"format_version": 1, "manifestations": ["m"], "disorders": [{"id": "d"}, {"id": "d"}]})",
               "disorders/d");
  expect_error(R"({"format_version": 1, "manifestations": ["m"], "disorders": [{"id": "d", "certain": {"x": "1"}}]})",
               "disorders/d/certain/x");
  expect_error(R"({"format_version": 1, "scale": ["0", "0.3", "1"], "manifestations": ["m"], "disorders": []})",
               "scale");
  expect_error(R"({"format_version": 1, "manifestations": ["m"], "disorders": [{"id": "a"}],
                   "multi_profiles": [{"members": ["a", "zz"]}], "composition": "explicit"})",
               "multi_profiles/0/members");
  expect_error(R"({"format_version": 1, "manifestations": ["m"], "disorders": [], "composition": "mixed"})",
               "composition");
}

TEST(ParseKb, WarningsDoNotBlock) {
  auto parsed = io::parse_kb(R"({"manifestations": ["m"], "disorders": [{"id": "d", "note": "x"}], "extra": 1})");
  ASSERT_TRUE(parsed.ok());
  EXPECT_TRUE(has_issue(parsed.issues, "format_version", io::Severity::kWarning));
  EXPECT_TRUE(has_issue(parsed.issues, "extra", io::Severity::kWarning));
  EXPECT_TRUE(has_issue(parsed.issues, "disorders/d/note", io::Severity::kWarning));
}

TEST(ParseKb, ExplicitCompositionDocument) {
  auto parsed = io::parse_kb(R"({"format_version": 1, "scale": ["0", "1"], "manifestations": ["m1", "m2"],
    "disorders": [{"id": "a", "certain": {"m1": "1"}}, {"id": "b", "certain": {"m2": "1"}}, {"id": "c"}],
    "composition": "explicit",
    "multi_profiles": [{"members": ["b", "a"], "certain": {"m1": "1"}, "excluded": {"m2": "1"}}],
    "admissible": [["a", "b"], ["a", "c"]]})");
  ASSERT_TRUE(parsed.ok());
  EXPECT_TRUE(has_issue(parsed.issues, "admissible/1", io::Severity::kWarning));
  const auto& kb = *parsed.value;
  EXPECT_EQ(kb.composition(), Composition::kExplicit);
  EXPECT_EQ(kb.multi_profiles().size(), 1u);
  EXPECT_TRUE(kb.is_admissible({0, 2}));
  EXPECT_FALSE(kb.is_admissible({1, 2}));
}

TEST(ParseObservation, Examples) {
  const auto kb = demo();
  auto ok = io::parse_observation(R"({"format_version": 1, "present": {"m1": "1"}, "absent": {}})", kb);
  ASSERT_TRUE(ok.ok());
  EXPECT_EQ(ok.value->present().grade("m1"), kb.scale().top());

  auto clash = io::parse_observation(R"({"format_version": 1, "present": {"m1": "0.5"}, "absent": {"m1": "0.5"}})", kb);
  EXPECT_FALSE(clash.ok());
  EXPECT_TRUE(has_issue(clash.issues, "observation/m1", io::Severity::kError));

  auto unknown = io::parse_observation(R"({"format_version": 1, "present": {"m9": "1"}})", kb);
  EXPECT_FALSE(unknown.ok());
  EXPECT_TRUE(has_issue(unknown.issues, "present/m9", io::Severity::kError));

  auto off = io::parse_observation(R"({"format_version": 1, "absent": {"m2": "0.6"}})", kb);
  EXPECT_FALSE(off.ok());
  EXPECT_TRUE(has_issue(off.issues, "absent/m2", io::Severity::kError));
}

TEST(Serialization, KnowledgeBaseRoundTrip) {
  testsupport::Rng rng(73);
  for (int trial = 0; trial < 100; ++trial) {
    const auto kb = testsupport::random_fuzzy_kb(rng, trial % 2 ? CertaintyScale::standard()
                                                                : CertaintyScale({q(0), q(1, 3), q(2, 3), q(1)}),
                                                 5, 5);
    const json doc = io::kb_to_json(kb);
    auto back = io::parse_kb(io::dump(doc));
    ASSERT_TRUE(back.ok());
    EXPECT_TRUE(back.issues.empty());
    EXPECT_EQ(io::kb_to_json(*back.value), doc);
    ASSERT_EQ(back.value->disorder_count(), kb.disorder_count());
    for (std::size_t d = 0; d < kb.disorder_count(); ++d)
      EXPECT_EQ(back.value->disorder(d).effects, kb.disorder(d).effects);

    const auto obs = testsupport::random_observation(kb.frame_ptr(), rng);
    auto obs_back = io::parse_observation(io::dump(io::observation_to_json(obs)), *back.value);
    ASSERT_TRUE(obs_back.ok());
    EXPECT_EQ(obs_back.value->present().grades(), obs.present().grades());
    EXPECT_EQ(obs_back.value->absent().grades(), obs.absent().grades());
  }
}

TEST(Serialization, ExplicitKnowledgeBaseRoundTrip) {
  auto parsed = io::parse_kb(R"({"format_version": 1, "scale": ["0", "1"], "manifestations": ["m1", "m2"],
    "disorders": [{"id": "a"}, {"id": "b"}], "composition": "explicit",
    "multi_profiles": [{"members": ["a", "b"], "certain": {"m1": "1"}}], "admissible": [["a", "b"]]})");
  ASSERT_TRUE(parsed.ok());
  const json doc = io::kb_to_json(*parsed.value);
  auto back = io::parse_kb_json(doc);
  ASSERT_TRUE(back.ok());
  EXPECT_EQ(io::kb_to_json(*back.value), doc);
}

TEST(Reports, DemoRankingDocument) {
  const auto kb = demo();
  const auto obs = *io::parse_observation(kDemoObs, kb).value;
  const std::string text = io::write_report(io::to_report(kb, rank_disorders(kb, obs)));
  const json doc = json::parse(text);
  EXPECT_EQ(doc["kind"], "ranking");
  ASSERT_EQ(doc["entries"].size(), 3u);
  EXPECT_EQ(doc["entries"][0]["disorders"], json::array({"d1"}));
  EXPECT_EQ(doc["entries"][1]["disorders"], json::array({"d3"}));
  EXPECT_EQ(doc["entries"][2]["disorders"], json::array({"d2"}));
  EXPECT_EQ(doc["entries"][2]["level"], "0.25");
  EXPECT_EQ(text.back(), '\n');
}

TEST(Reports, EmptyRanking) {
  const json doc = json::parse(io::write_report(io::RankingReport{}));
  EXPECT_EQ(doc["entries"], json::array());
}

TEST(Reports, KeysAreSortedAndOutputIsStable) {
  const auto kb = demo();
  const auto obs = *io::parse_observation(kDemoObs, kb).value;
  const std::string a = io::write_report(io::to_report(kb, rank_disorders(kb, obs)));
  const std::string b = io::write_report(io::to_report(kb, rank_disorders(kb, obs)));
  EXPECT_EQ(a, b);
  EXPECT_LT(a.find("\"entries\""), a.find("\"format_version\""));
  EXPECT_LT(a.find("\"format_version\""), a.find("\"kind\""));
}

TEST(Reports, RoundTripEveryKind) {
  const auto kb = demo();
  const auto obs = *io::parse_observation(kDemoObs, kb).value;
  const auto rel = CausalRelation::from(kb);
  std::vector<io::Report> reports{
      io::to_report(kb, rank_disorders(kb, obs)),
      io::to_report(kb, search_multi(kb, obs, kb.scale().top(), 2)),
      io::to_report(rel, classify_covers(rel, core(obs.present()), 3)),
      io::ExplanationSetReport{"incomplete", {{"d1"}, {"d1", "d3"}}},
      io::ExplanationSetReport{"complete", {}},
      io::to_report(kb, audit_disorder(kb, obs, 1)),
      io::AuditReport{"x", q(1, 3), q(2, 3), q(0), {}, {"m1"}},
  };
  for (const auto& r : reports) {
    const auto text = io::write_report(r);
    auto back = io::parse_report(text);
    ASSERT_TRUE(back.ok()) << text;
    EXPECT_EQ(*back.value, r);
    EXPECT_EQ(io::write_report(*back.value), text);
  }
}

TEST(Reports, MalformedReportsAreRejected) {
  EXPECT_FALSE(io::parse_report("{}").ok());
  EXPECT_FALSE(io::parse_report(R"({"kind": "ranking", "entries": [{"disorders": ["a"]}]})").ok());
  EXPECT_FALSE(io::parse_report(R"({"kind": "mystery"})").ok());
}

TEST(Identifiers, Pattern) {
  EXPECT_TRUE(io::valid_identifier("d-1.a_B"));
  EXPECT_FALSE(io::valid_identifier(""));
  EXPECT_FALSE(io::valid_identifier("a b"));
  EXPECT_FALSE(io::valid_identifier("a/b"));
}
