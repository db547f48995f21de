#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "possdiag/cover_engine.hpp"
#include "possdiag/crisp_engine.hpp"
#include "possdiag/fuzzy_engine.hpp"
#include "possdiag/knowledge_base.hpp"

namespace possdiag::io {

inline constexpr int kFormatVersion = 1;

enum class Severity { kError, kWarning };

struct DocumentIssue {
  std::string path;
  Severity severity = Severity::kError;
  std::string message;

  friend bool operator==(const DocumentIssue&, const DocumentIssue&) = default;
};

nlohmann::json to_json(const DocumentIssue& issue);
nlohmann::json to_json(const std::vector<DocumentIssue>& issues);
std::string format_issue(const DocumentIssue& issue);

/// A value is present only when no error-severity issue was raised.
template <class T>
struct Parsed {
  std::optional<T> value;
  std::vector<DocumentIssue> issues;

  bool ok() const { return value.has_value(); }
};

bool has_errors(const std::vector<DocumentIssue>& issues);
bool valid_identifier(std::string_view id);

Parsed<KnowledgeBase> parse_kb(std::string_view text);
Parsed<KnowledgeBase> parse_kb_json(const nlohmann::json& doc);
/// Grades are checked against the knowledge base scale and universe.
Parsed<Observation> parse_observation(std::string_view text, const KnowledgeBase& kb);
Parsed<Observation> parse_observation_json(const nlohmann::json& doc, const KnowledgeBase& kb);

nlohmann::json kb_to_json(const KnowledgeBase& kb);
nlohmann::json observation_to_json(const Observation& obs);
/// Sparse map of the non-bottom grades.
nlohmann::json grades_to_json(const FuzzySet& f);

/// Canonical text: sorted keys, two-space indent, trailing newline.
std::string dump(const nlohmann::json& doc);

// Reports. Identifiers and exact level labels only, so a report can be read
// back without the knowledge base.

struct RankingReportEntry {
  std::vector<std::string> disorders;
  Rational level;
  Rational certain_vs_absent;
  Rational excluded_vs_present;

  friend bool operator==(const RankingReportEntry&, const RankingReportEntry&) = default;
};

struct RankingReport {
  std::vector<RankingReportEntry> entries;
  friend bool operator==(const RankingReport&, const RankingReport&) = default;
};

struct CoverReportEntry {
  std::vector<std::string> disorders;
  bool is_cover = false;
  bool relevant = false;
  bool irredundant = false;
  bool minimum = false;

  friend bool operator==(const CoverReportEntry&, const CoverReportEntry&) = default;
};

struct CoverSetReport {
  std::vector<CoverReportEntry> covers;
  friend bool operator==(const CoverSetReport&, const CoverSetReport&) = default;
};

struct ExplanationSetReport {
  std::string mode;  // "complete" | "incomplete"
  std::vector<std::vector<std::string>> explanations;
  friend bool operator==(const ExplanationSetReport&, const ExplanationSetReport&) = default;
};

struct AuditReport {
  std::string disorder;
  Rational level;
  Rational certain_vs_absent;
  Rational excluded_vs_present;
  std::vector<std::string> predicted_but_absent;
  std::vector<std::string> excluded_but_present;
  friend bool operator==(const AuditReport&, const AuditReport&) = default;
};

using Report = std::variant<RankingReport, CoverSetReport, ExplanationSetReport, AuditReport>;

RankingReport to_report(const KnowledgeBase& kb, const PlausibilityRanking& ranking);
CoverSetReport to_report(const CausalRelation& rel, const std::vector<CoverReport>& covers);
ExplanationSetReport to_report(const KnowledgeBase& kb, const std::vector<Explanation>& explanations,
                               InformationMode mode);
/// Single disorders, e.g. the output of diagnose_incomplete.
ExplanationSetReport to_report(const KnowledgeBase& kb, const DisorderSet& disorders, InformationMode mode);
AuditReport to_report(const KnowledgeBase& kb, const DisorderAudit& audit);

nlohmann::json report_to_json(const Report& report);
std::string write_report(const Report& report);
Parsed<Report> parse_report(std::string_view text);

}  // namespace possdiag::io
