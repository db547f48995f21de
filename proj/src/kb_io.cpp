#include "possdiag/kb_io.hpp"

#include <algorithm>
#include <set>

#include "possdiag/error.hpp"

namespace possdiag::io {

using nlohmann::json;

namespace {

void error(std::vector<DocumentIssue>& issues, std::string path, std::string message) {
  issues.push_back({std::move(path), Severity::kError, std::move(message)});
}

void warning(std::vector<DocumentIssue>& issues, std::string path, std::string message) {
  issues.push_back({std::move(path), Severity::kWarning, std::move(message)});
}

std::optional<json> parse_text(std::string_view text, std::vector<DocumentIssue>& issues) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    error(issues, "", std::string("malformed JSON: ") + e.what());
    return std::nullopt;
  }
}

void check_version(const json& doc, std::vector<DocumentIssue>& issues) {
  auto it = doc.find("format_version");
  if (it == doc.end()) {
    warning(issues, "format_version", "missing; assuming 1");
  } else if (!it->is_number_integer() || it->get<long long>() != kFormatVersion) {
    error(issues, "format_version", "unsupported format version " + it->dump());
  }
}

void check_keys(const json& doc, std::initializer_list<const char*> known, const std::string& prefix,
                std::vector<DocumentIssue>& issues) {
  for (const auto& [key, _] : doc.items()) {
    if (std::none_of(known.begin(), known.end(), [&](const char* k) { return key == k; }))
      warning(issues, prefix + key, "unknown key ignored");
  }
}

std::optional<Rational> read_rational(const json& v) {
  if (v.is_string()) return Rational::parse(v.get<std::string>());
  if (v.is_number_unsigned() || v.is_number_integer()) {
    const auto n = v.get<long long>();
    if (n < 0) return std::nullopt;
    return Rational(n, 1);
  }
  if (v.is_number_float()) return Rational::parse(v.dump());
  return std::nullopt;
}

std::string path_join(const std::string& a, const std::string& b) { return a.empty() ? b : a + "/" + b; }

/// Reads a {manifestation: level} object onto the frame.
FuzzySet read_grades(const json* doc, const FramePtr& frame, const std::string& path,
                     std::vector<DocumentIssue>& issues) {
  FuzzySet out(frame);
  if (doc == nullptr || doc->is_null()) return out;
  if (!doc->is_object()) {
    error(issues, path, "expected an object mapping manifestations to levels");
    return out;
  }
  for (const auto& [m, v] : doc->items()) {
    const std::string where = path_join(path, m);
    auto index = frame->universe.find(m);
    if (!index) {
      error(issues, where, "unknown manifestation '" + m + "'");
      continue;
    }
    auto value = read_rational(v);
    if (!value) {
      error(issues, where, "level " + v.dump() + " is not a rational in [0,1]");
      continue;
    }
    auto level = frame->scale.find(*value);
    if (!level) {
      error(issues, where, "level " + value->to_string() + " is not on the scale");
      continue;
    }
    out.set(*index, *level);
  }
  return out;
}

const json* member(const json& obj, const char* key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

/// Reports each manifestation where both parts are above bottom.
bool check_twofold(const FuzzySet& pos, const FuzzySet& neg, const std::string& path, const char* pos_name,
                   const char* neg_name, std::vector<DocumentIssue>& issues) {
  const auto violations = validate_twofold(pos, neg);
  for (const auto& v : violations) {
    const auto& scale = pos.scale();
    error(issues, path_join(path, pos.frame().universe.id(v.manifestation)),
          std::string("twofold violation: ") + pos_name + " " + scale.value(v.positive).to_string() +
              " and " + neg_name + " " + scale.value(v.negative).to_string() + " are both above 0");
  }
  return violations.empty();
}

std::optional<std::vector<std::string>> read_members(const json& v, const std::set<std::string>& known,
                                                     const std::string& path, std::vector<DocumentIssue>& issues) {
  if (!v.is_array()) {
    error(issues, path, "expected an array of disorder identifiers");
    return std::nullopt;
  }
  std::vector<std::string> out;
  bool ok = true;
  for (const auto& e : v) {
    if (!e.is_string() || !known.count(e.get<std::string>())) {
      error(issues, path, "unknown disorder " + e.dump());
      ok = false;
      continue;
    }
    out.push_back(e.get<std::string>());
  }
  std::vector<std::string> sorted = out;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    error(issues, path, "disorder listed twice");
    ok = false;
  }
  if (!ok) return std::nullopt;
  return out;
}

std::string level_text(const CertaintyScale& scale, Level l) { return scale.value(l).to_string(); }

json members_json(const std::vector<std::string>& ids) { return json(ids); }

}  // namespace

json to_json(const DocumentIssue& issue) {
  return json{{"path", issue.path},
              {"severity", issue.severity == Severity::kError ? "error" : "warning"},
              {"message", issue.message}};
}

json to_json(const std::vector<DocumentIssue>& issues) {
  json out = json::array();
  for (const auto& i : issues) out.push_back(to_json(i));
  return out;
}

std::string format_issue(const DocumentIssue& issue) {
  return std::string(issue.severity == Severity::kError ? "error" : "warning") + ": " +
         (issue.path.empty() ? "<document>" : issue.path) + ": " + issue.message;
}

bool has_errors(const std::vector<DocumentIssue>& issues) {
  return std::any_of(issues.begin(), issues.end(),
                     [](const DocumentIssue& i) { return i.severity == Severity::kError; });
}

bool valid_identifier(std::string_view id) {
  if (id.empty()) return false;
  return std::all_of(id.begin(), id.end(), [](char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' ||
           c == '.' || c == '-';
  });
}

Parsed<KnowledgeBase> parse_kb(std::string_view text) {
  std::vector<DocumentIssue> issues;
  auto doc = parse_text(text, issues);
  if (!doc) return {std::nullopt, std::move(issues)};
  return parse_kb_json(*doc);
}

Parsed<KnowledgeBase> parse_kb_json(const json& doc) {
  std::vector<DocumentIssue> issues;
  auto fail = [&]() { return Parsed<KnowledgeBase>{std::nullopt, std::move(issues)}; };
  if (!doc.is_object()) {
    error(issues, "", "knowledge base must be a JSON object");
    return fail();
  }
  check_version(doc, issues);
  check_keys(doc,
             {"format_version", "scale", "manifestations", "disorders", "multi_profiles", "admissible",
              "composition"},
             "", issues);

  // scale
  std::optional<CertaintyScale> scale;
  if (const json* s = member(doc, "scale")) {
    if (!s->is_array()) {
      error(issues, "scale", "expected an array of levels");
    } else {
      std::vector<Rational> levels;
      bool ok = true;
      for (std::size_t i = 0; i < s->size(); ++i) {
        auto r = read_rational((*s)[i]);
        if (!r) {
          error(issues, "scale/" + std::to_string(i), "level " + (*s)[i].dump() + " is not a rational");
          ok = false;
        } else {
          levels.push_back(*r);
        }
      }
      if (ok) {
        try {
          scale.emplace(std::move(levels));
        } catch (const DiagnosisError& e) {
          error(issues, "scale", e.what());
        }
      }
    }
  } else {
    scale = CertaintyScale::standard();
  }

  // manifestations
  std::vector<std::string> manifestations;
  const json* ms = member(doc, "manifestations");
  if (ms == nullptr || !ms->is_array()) {
    error(issues, "manifestations", "expected an array of manifestation identifiers");
  } else {
    std::set<std::string> seen;
    for (const auto& m : *ms) {
      if (!m.is_string() || !valid_identifier(m.get<std::string>())) {
        error(issues, "manifestations", "invalid identifier " + m.dump());
      } else if (!seen.insert(m.get<std::string>()).second) {
        error(issues, "manifestations/" + m.get<std::string>(), "duplicate manifestation");
      } else {
        manifestations.push_back(m.get<std::string>());
      }
    }
  }

  Composition composition = Composition::kAdditive;
  if (const json* c = member(doc, "composition")) {
    if (*c == "additive") {
      composition = Composition::kAdditive;
    } else if (*c == "explicit") {
      composition = Composition::kExplicit;
    } else {
      error(issues, "composition", "expected \"additive\" or \"explicit\"");
    }
  }

  if (!scale || has_errors(issues)) return fail();
  const FramePtr frame = make_frame(*scale, manifestations);

  // disorders
  std::vector<DisorderProfile> profiles;
  std::set<std::string> disorder_ids;
  const json* ds = member(doc, "disorders");
  if (ds == nullptr || !ds->is_array()) {
    error(issues, "disorders", "expected an array of disorder profiles");
    return fail();
  }
  for (std::size_t i = 0; i < ds->size(); ++i) {
    const json& d = (*ds)[i];
    std::string path = "disorders/" + std::to_string(i);
    if (!d.is_object() || !d.contains("id") || !d["id"].is_string()) {
      error(issues, path, "expected an object with a string 'id'");
      continue;
    }
    const std::string id = d["id"].get<std::string>();
    if (!valid_identifier(id)) {
      error(issues, path, "invalid identifier '" + id + "'");
      continue;
    }
    path = "disorders/" + id;
    if (!disorder_ids.insert(id).second) {
      error(issues, path, "duplicate disorder");
      continue;
    }
    check_keys(d, {"id", "certain", "excluded"}, path + "/", issues);
    FuzzySet pos = read_grades(member(d, "certain"), frame, path + "/certain", issues);
    FuzzySet neg = read_grades(member(d, "excluded"), frame, path + "/excluded", issues);
    if (check_twofold(pos, neg, path, "certain", "excluded", issues))
      profiles.push_back({id, TwofoldSet(std::move(pos), std::move(neg))});
  }

  std::vector<std::pair<std::vector<std::string>, TwofoldSet>> multi;
  std::set<std::set<std::string>> multi_keys;
  if (const json* mp = member(doc, "multi_profiles")) {
    if (!mp->is_array()) {
      error(issues, "multi_profiles", "expected an array");
    } else {
      for (std::size_t i = 0; i < mp->size(); ++i) {
        const json& e = (*mp)[i];
        const std::string path = "multi_profiles/" + std::to_string(i);
        if (!e.is_object() || !e.contains("members")) {
          error(issues, path, "expected an object with 'members'");
          continue;
        }
        check_keys(e, {"members", "certain", "excluded"}, path + "/", issues);
        auto members = read_members(e["members"], disorder_ids, path + "/members", issues);
        if (!members) continue;
        if (members->size() < 2) {
          error(issues, path + "/members", "a multi-disorder profile needs at least two disorders");
          continue;
        }
        if (!multi_keys.insert({members->begin(), members->end()}).second) {
          error(issues, path + "/members", "duplicate multi-disorder profile");
          continue;
        }
        FuzzySet pos = read_grades(member(e, "certain"), frame, path + "/certain", issues);
        FuzzySet neg = read_grades(member(e, "excluded"), frame, path + "/excluded", issues);
        if (check_twofold(pos, neg, path, "certain", "excluded", issues))
          multi.emplace_back(std::move(*members), TwofoldSet(std::move(pos), std::move(neg)));
      }
    }
  }

  std::optional<std::vector<std::vector<std::string>>> admissible;
  if (const json* ad = member(doc, "admissible")) {
    if (!ad->is_array()) {
      error(issues, "admissible", "expected an array of disorder arrays");
    } else {
      admissible.emplace();
      for (std::size_t i = 0; i < ad->size(); ++i) {
        const std::string path = "admissible/" + std::to_string(i);
        auto members = read_members((*ad)[i], disorder_ids, path, issues);
        if (!members) continue;
        if (composition == Composition::kExplicit && members->size() >= 2 &&
            !multi_keys.count({members->begin(), members->end()}))
          warning(issues, path, "admissible association has no declared profile");
        admissible->push_back(std::move(*members));
      }
    }
  }

  if (has_errors(issues)) return fail();
  try {
    return {KnowledgeBase(frame, std::move(profiles), composition, std::move(multi), std::move(admissible)),
            std::move(issues)};
  } catch (const DiagnosisError& e) {
    error(issues, "", e.what());
    return fail();
  }
}

Parsed<Observation> parse_observation(std::string_view text, const KnowledgeBase& kb) {
  std::vector<DocumentIssue> issues;
  auto doc = parse_text(text, issues);
  if (!doc) return {std::nullopt, std::move(issues)};
  return parse_observation_json(*doc, kb);
}

Parsed<Observation> parse_observation_json(const json& doc, const KnowledgeBase& kb) {
  std::vector<DocumentIssue> issues;
  if (!doc.is_object()) {
    error(issues, "", "observation must be a JSON object");
    return {std::nullopt, std::move(issues)};
  }
  check_version(doc, issues);
  check_keys(doc, {"format_version", "present", "absent"}, "", issues);
  FuzzySet present = read_grades(member(doc, "present"), kb.frame_ptr(), "present", issues);
  FuzzySet absent = read_grades(member(doc, "absent"), kb.frame_ptr(), "absent", issues);
  if (has_errors(issues)) return {std::nullopt, std::move(issues)};
  if (!check_twofold(present, absent, "observation", "present", "absent", issues))
    return {std::nullopt, std::move(issues)};
  return {Observation{TwofoldSet(std::move(present), std::move(absent))}, std::move(issues)};
}

json grades_to_json(const FuzzySet& f) {
  json out = json::object();
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f[i].index > 0) out[f.frame().universe.id(i)] = level_text(f.scale(), f[i]);
  return out;
}

json kb_to_json(const KnowledgeBase& kb) {
  json scale = json::array();
  for (const auto& r : kb.scale().levels()) scale.push_back(r.to_string());
  json disorders = json::array();
  for (const auto& p : kb.disorders())
    disorders.push_back({{"id", p.id},
                         {"certain", grades_to_json(p.effects.positive())},
                         {"excluded", grades_to_json(p.effects.negative())}});
  json doc{{"format_version", kFormatVersion},
           {"scale", scale},
           {"manifestations", kb.universe().ids()},
           {"disorders", disorders},
           {"composition", kb.composition() == Composition::kAdditive ? "additive" : "explicit"}};
  if (!kb.multi_profiles().empty()) {
    json multi = json::array();
    for (const auto& [members, t] : kb.multi_profiles())
      multi.push_back({{"members", kb.ids_of(members)},
                       {"certain", grades_to_json(t.positive())},
                       {"excluded", grades_to_json(t.negative())}});
    doc["multi_profiles"] = multi;
  }
  if (kb.admissible()) {
    json ad = json::array();
    for (const auto& s : *kb.admissible()) ad.push_back(kb.ids_of(s));
    doc["admissible"] = ad;
  }
  return doc;
}

json observation_to_json(const Observation& obs) {
  return {{"format_version", kFormatVersion},
          {"present", grades_to_json(obs.present())},
          {"absent", grades_to_json(obs.absent())}};
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

// Reports

RankingReport to_report(const KnowledgeBase& kb, const PlausibilityRanking& ranking) {
  RankingReport out;
  const auto& scale = kb.scale();
  for (const auto& e : ranking.entries)
    out.entries.push_back({kb.ids_of(e.disorders), scale.value(e.level), scale.value(e.certain_vs_absent),
                           scale.value(e.excluded_vs_present)});
  return out;
}

CoverSetReport to_report(const CausalRelation& rel, const std::vector<CoverReport>& covers) {
  CoverSetReport out;
  for (const auto& c : covers) {
    std::vector<std::string> ids;
    for (auto d : c.subset) ids.push_back(rel.disorder_id(d));
    out.covers.push_back({std::move(ids), c.is_cover, c.relevant, c.irredundant, c.minimum});
  }
  return out;
}

namespace {
const char* mode_name(InformationMode mode) {
  return mode == InformationMode::kComplete ? "complete" : "incomplete";
}
}  // namespace

ExplanationSetReport to_report(const KnowledgeBase& kb, const std::vector<Explanation>& explanations,
                               InformationMode mode) {
  ExplanationSetReport out{mode_name(mode), {}};
  for (const auto& e : explanations) out.explanations.push_back(kb.ids_of(e.disorders));
  return out;
}

ExplanationSetReport to_report(const KnowledgeBase& kb, const DisorderSet& disorders, InformationMode mode) {
  ExplanationSetReport out{mode_name(mode), {}};
  for (auto d : disorders) out.explanations.push_back({kb.disorder(d).id});
  return out;
}

AuditReport to_report(const KnowledgeBase& kb, const DisorderAudit& audit) {
  const auto& scale = kb.scale();
  AuditReport out{kb.disorder(audit.disorder).id,
                  scale.value(audit.terms.plausibility),
                  scale.value(audit.terms.certain_vs_absent),
                  scale.value(audit.terms.excluded_vs_present),
                  {},
                  {}};
  for (auto m : audit.predicted_but_absent) out.predicted_but_absent.push_back(kb.universe().id(m));
  for (auto m : audit.excluded_but_present) out.excluded_but_present.push_back(kb.universe().id(m));
  return out;
}

json report_to_json(const Report& report) {
  json doc{{"format_version", kFormatVersion}};
  std::visit(
      [&](const auto& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, RankingReport>) {
          doc["kind"] = "ranking";
          json entries = json::array();
          for (const auto& e : r.entries)
            entries.push_back({{"disorders", members_json(e.disorders)},
                               {"level", e.level.to_string()},
                               {"certain_vs_absent", e.certain_vs_absent.to_string()},
                               {"excluded_vs_present", e.excluded_vs_present.to_string()}});
          doc["entries"] = entries;
        } else if constexpr (std::is_same_v<T, CoverSetReport>) {
          doc["kind"] = "covers";
          json covers = json::array();
          for (const auto& c : r.covers)
            covers.push_back({{"disorders", members_json(c.disorders)},
                              {"cover", c.is_cover},
                              {"relevant", c.relevant},
                              {"irredundant", c.irredundant},
                              {"minimum", c.minimum}});
          doc["covers"] = covers;
        } else if constexpr (std::is_same_v<T, ExplanationSetReport>) {
          doc["kind"] = "explanations";
          doc["mode"] = r.mode;
          json sets = json::array();
          for (const auto& e : r.explanations) sets.push_back(members_json(e));
          doc["explanations"] = sets;
        } else {
          doc["kind"] = "audit";
          doc["disorder"] = r.disorder;
          doc["level"] = r.level.to_string();
          doc["certain_vs_absent"] = r.certain_vs_absent.to_string();
          doc["excluded_vs_present"] = r.excluded_vs_present.to_string();
          doc["predicted_but_absent"] = r.predicted_but_absent;
          doc["excluded_but_present"] = r.excluded_but_present;
        }
      },
      report);
  return doc;
}

std::string write_report(const Report& report) { return dump(report_to_json(report)); }

namespace {

Rational read_level_field(const json& obj, const char* key, const std::string& path,
                          std::vector<DocumentIssue>& issues) {
  const json* v = member(obj, key);
  std::optional<Rational> r = v ? read_rational(*v) : std::nullopt;
  if (!r) {
    error(issues, path_join(path, key), "expected a level");
    return {};
  }
  return *r;
}

std::vector<std::string> read_strings(const json& obj, const char* key, const std::string& path,
                                      std::vector<DocumentIssue>& issues) {
  const json* v = member(obj, key);
  std::vector<std::string> out;
  if (v == nullptr || !v->is_array()) {
    error(issues, path_join(path, key), "expected an array of identifiers");
    return out;
  }
  for (const auto& e : *v) {
    if (!e.is_string()) {
      error(issues, path_join(path, key), "expected an identifier");
      continue;
    }
    out.push_back(e.get<std::string>());
  }
  return out;
}

bool read_flag(const json& obj, const char* key, const std::string& path, std::vector<DocumentIssue>& issues) {
  const json* v = member(obj, key);
  if (v == nullptr || !v->is_boolean()) {
    error(issues, path_join(path, key), "expected a boolean");
    return false;
  }
  return v->get<bool>();
}

const json& read_array(const json& doc, const char* key, std::vector<DocumentIssue>& issues) {
  static const json kEmpty = json::array();
  const json* v = member(doc, key);
  if (v == nullptr || !v->is_array()) {
    error(issues, key, "expected an array");
    return kEmpty;
  }
  return *v;
}

}  // namespace

Parsed<Report> parse_report(std::string_view text) {
  std::vector<DocumentIssue> issues;
  auto parsed = parse_text(text, issues);
  if (!parsed) return {std::nullopt, std::move(issues)};
  const json& doc = *parsed;
  if (!doc.is_object() || !doc.contains("kind") || !doc["kind"].is_string()) {
    error(issues, "kind", "report must be an object with a 'kind'");
    return {std::nullopt, std::move(issues)};
  }
  check_version(doc, issues);
  const std::string kind = doc["kind"].get<std::string>();
  Report report;
  if (kind == "ranking") {
    RankingReport r;
    const json& entries = read_array(doc, "entries", issues);
    for (std::size_t i = 0; i < entries.size(); ++i) {
      const std::string path = "entries/" + std::to_string(i);
      r.entries.push_back({read_strings(entries[i], "disorders", path, issues),
                           read_level_field(entries[i], "level", path, issues),
                           read_level_field(entries[i], "certain_vs_absent", path, issues),
                           read_level_field(entries[i], "excluded_vs_present", path, issues)});
    }
    report = std::move(r);
  } else if (kind == "covers") {
    CoverSetReport r;
    const json& covers = read_array(doc, "covers", issues);
    for (std::size_t i = 0; i < covers.size(); ++i) {
      const std::string path = "covers/" + std::to_string(i);
      r.covers.push_back({read_strings(covers[i], "disorders", path, issues),
                          read_flag(covers[i], "cover", path, issues),
                          read_flag(covers[i], "relevant", path, issues),
                          read_flag(covers[i], "irredundant", path, issues),
                          read_flag(covers[i], "minimum", path, issues)});
    }
    report = std::move(r);
  } else if (kind == "explanations") {
    ExplanationSetReport r;
    const json* mode = member(doc, "mode");
    if (mode == nullptr || !(*mode == "complete" || *mode == "incomplete"))
      error(issues, "mode", "expected \"complete\" or \"incomplete\"");
    else
      r.mode = mode->get<std::string>();
    const json& sets = read_array(doc, "explanations", issues);
    for (std::size_t i = 0; i < sets.size(); ++i) {
      json wrapper{{"disorders", sets[i]}};
      r.explanations.push_back(read_strings(wrapper, "disorders", "explanations/" + std::to_string(i), issues));
    }
    report = std::move(r);
  } else if (kind == "audit") {
    AuditReport r;
    const json* d = member(doc, "disorder");
    if (d == nullptr || !d->is_string())
      error(issues, "disorder", "expected an identifier");
    else
      r.disorder = d->get<std::string>();
    r.level = read_level_field(doc, "level", "", issues);
    r.certain_vs_absent = read_level_field(doc, "certain_vs_absent", "", issues);
    r.excluded_vs_present = read_level_field(doc, "excluded_vs_present", "", issues);
    r.predicted_but_absent = read_strings(doc, "predicted_but_absent", "", issues);
    r.excluded_but_present = read_strings(doc, "excluded_but_present", "", issues);
    report = std::move(r);
  } else {
    error(issues, "kind", "unknown report kind '" + kind + "'");
  }
  if (has_errors(issues)) return {std::nullopt, std::move(issues)};
  return {std::move(report), std::move(issues)};
}

}  // namespace possdiag::io
