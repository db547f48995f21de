#include "possdiag/service.hpp"

#include <fstream>
#include <random>
#include <sstream>

#include <httplib.h>

#include "possdiag/cover_engine.hpp"
#include "possdiag/error.hpp"
#include "possdiag/fuzzy_engine.hpp"

namespace possdiag::service {

using nlohmann::json;

namespace {

const char* side_name(Side s) { return s == Side::kPresent ? "present" : "absent"; }

}  // namespace

json delta_to_json(const Delta& delta) {
  json changes = json::array();
  for (const auto& c : delta) {
    json j{{"op", c.op == ObservationChange::Op::kSet ? "set" : "clear"},
           {"manifestation", c.manifestation},
           {"side", side_name(c.side)}};
    if (c.op == ObservationChange::Op::kSet) j["level"] = c.level.to_string();
    changes.push_back(std::move(j));
  }
  return {{"changes", changes}};
}

io::Parsed<Delta> parse_delta(const json& doc) {
  std::vector<io::DocumentIssue> issues;
  const json* changes = &doc;
  if (doc.is_object()) {
    auto it = doc.find("changes");
    changes = it == doc.end() ? nullptr : &*it;
  }
  if (changes == nullptr || !changes->is_array()) {
    issues.push_back({"changes", io::Severity::kError, "expected an array of changes"});
    return {std::nullopt, std::move(issues)};
  }
  Delta delta;
  for (std::size_t i = 0; i < changes->size(); ++i) {
    const json& c = (*changes)[i];
    const std::string path = "changes/" + std::to_string(i);
    auto bad = [&](const std::string& msg) { issues.push_back({path, io::Severity::kError, msg}); };
    if (!c.is_object()) {
      bad("expected an object");
      continue;
    }
    ObservationChange change;
    const std::string op = c.value("op", "set");
    if (op == "set") {
      change.op = ObservationChange::Op::kSet;
    } else if (op == "clear") {
      change.op = ObservationChange::Op::kClear;
      change.level = Rational(0, 1);
    } else {
      bad("op must be \"set\" or \"clear\"");
      continue;
    }
    if (!c.contains("manifestation") || !c["manifestation"].is_string()) {
      bad("missing manifestation");
      continue;
    }
    change.manifestation = c["manifestation"].get<std::string>();
    const std::string side = c.value("side", "");
    if (side == "present") {
      change.side = Side::kPresent;
    } else if (side == "absent") {
      change.side = Side::kAbsent;
    } else {
      bad("side must be \"present\" or \"absent\"");
      continue;
    }
    if (change.op == ObservationChange::Op::kSet) {
      std::optional<Rational> level;
      if (auto it = c.find("level"); it == c.end()) {
        level = Rational(1, 1);
      } else if (it->is_string()) {
        level = Rational::parse(it->get<std::string>());
      } else if (it->is_number()) {
        level = Rational::parse(it->dump());
      }
      if (!level) {
        bad("level is not a rational");
        continue;
      }
      change.level = *level;
    }
    delta.push_back(std::move(change));
  }
  if (io::has_errors(issues)) return {std::nullopt, std::move(issues)};
  return {std::move(delta), std::move(issues)};
}

ServiceError::ServiceError(int status, std::vector<io::DocumentIssue> issues)
    : std::runtime_error(issues.empty() ? "service error" : issues.front().message),
      status_(status),
      issues_(std::move(issues)) {}

ServiceError::ServiceError(int status, const std::string& path, const std::string& message)
    : ServiceError(status, std::vector<io::DocumentIssue>{{path, io::Severity::kError, message}}) {}

json ServiceError::body() const { return {{"issues", io::to_json(issues_)}}; }

json KbSummary::to_json() const {
  return {{"disorders", disorders}, {"manifestations", manifestations}, {"scale_levels", scale_levels}};
}

KbSummary summarize(const KnowledgeBase& kb) {
  return {kb.disorder_count(), kb.universe().size(), kb.scale().size()};
}

Observation apply_delta(const KnowledgeBase& kb, const Observation& current, const Delta& delta) {
  FuzzySet present = current.present();
  FuzzySet absent = current.absent();
  std::vector<io::DocumentIssue> issues;
  for (std::size_t i = 0; i < delta.size(); ++i) {
    const auto& c = delta[i];
    const std::string path = "changes/" + std::to_string(i);
    auto m = kb.universe().find(c.manifestation);
    if (!m) {
      issues.push_back({path, io::Severity::kError, "unknown manifestation '" + c.manifestation + "'"});
      continue;
    }
    FuzzySet& target = c.side == Side::kPresent ? present : absent;
    if (c.op == ObservationChange::Op::kClear) {
      target.set(*m, kb.scale().bottom());
      continue;
    }
    auto level = kb.scale().find(c.level);
    if (!level) {
      issues.push_back({path, io::Severity::kError, "level " + c.level.to_string() + " is not on the scale"});
      continue;
    }
    target.set(*m, *level);
  }
  if (!issues.empty()) throw ServiceError(422, std::move(issues));
  for (const auto& v : validate_twofold(present, absent)) {
    issues.push_back({"observation/" + kb.universe().id(v.manifestation), io::Severity::kError,
                      "manifestation would be both present (" + kb.scale().value(v.positive).to_string() +
                          ") and absent (" + kb.scale().value(v.negative).to_string() + ")"});
  }
  if (!issues.empty()) throw ServiceError(422, std::move(issues));
  return {TwofoldSet(std::move(present), std::move(absent))};
}

SessionStore::SessionStore(std::optional<std::filesystem::path> log_dir) : log_dir_(std::move(log_dir)) {
  if (log_dir_) std::filesystem::create_directories(*log_dir_);
}

std::string SessionStore::fresh_id(const char* prefix) {
  static thread_local std::mt19937_64 rng{std::random_device{}()};
  for (;;) {
    std::ostringstream ss;
    ss << prefix << std::hex << rng() << "-" << ++counter_;
    std::string id = ss.str();
    if (!sessions_.count(id) && !kbs_.count(id)) return id;
  }
}

namespace {

std::shared_ptr<const KnowledgeBase> load_kb_doc(const json& doc) {
  auto parsed = io::parse_kb_json(doc);
  if (!parsed.ok()) throw ServiceError(422, std::move(parsed.issues));
  return std::make_shared<const KnowledgeBase>(std::move(*parsed.value));
}

}  // namespace

SessionStore::Created SessionStore::register_kb(const json& kb_doc) {
  auto kb = load_kb_doc(kb_doc);
  std::lock_guard lock(mutex_);
  std::string id = fresh_id("kb-");
  kbs_.emplace(id, std::make_pair(kb, kb_doc));
  return {id, summarize(*kb)};
}

SessionStore::Created SessionStore::create_session(const json& kb_doc) {
  return add_session(load_kb_doc(kb_doc), kb_doc);
}

SessionStore::Created SessionStore::create_session_for_kb(const std::string& kb_id) {
  std::shared_ptr<const KnowledgeBase> kb;
  json doc;
  {
    std::lock_guard lock(mutex_);
    auto it = kbs_.find(kb_id);
    if (it == kbs_.end()) throw ServiceError(404, "kb_id", "unknown knowledge base '" + kb_id + "'");
    kb = it->second.first;
    doc = it->second.second;
  }
  return add_session(std::move(kb), doc);
}

SessionStore::Created SessionStore::add_session(std::shared_ptr<const KnowledgeBase> kb, const json& kb_doc) {
  std::lock_guard lock(mutex_);
  auto session = std::make_shared<Session>(fresh_id("s-"), kb);
  append_log(session->id, {{"session", session->id}, {"kb", kb_doc}});
  sessions_.emplace(session->id, session);
  return {session->id, summarize(*kb)};
}

std::shared_ptr<SessionStore::Session> SessionStore::find(const std::string& id) const {
  std::lock_guard lock(mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw ServiceError(404, "session", "unknown session '" + id + "'");
  return it->second;
}

void SessionStore::append_log(const std::string& id, const json& record) const {
  if (!log_dir_) return;
  std::ofstream out(*log_dir_ / (id + ".log"), std::ios::app | std::ios::binary);
  out << record.dump() << "\n";
  out.flush();
  if (!out) throw ServiceError(500, "log", "cannot append to the session log");
}

std::uint64_t SessionStore::update_observation(const std::string& id, const Delta& delta) {
  auto session = find(id);
  std::unique_lock lock(session->mutex);
  Observation next = apply_delta(*session->kb, session->observation, delta);
  const std::uint64_t revision = session->revision + 1;
  append_log(id, {{"revision", revision}, {"delta", delta_to_json(delta)}});
  session->observation = std::move(next);
  session->revision = revision;
  session->history.push_back({revision, delta});
  return revision;
}

namespace {

std::size_t parse_card(const std::optional<std::size_t>& v, std::size_t fallback) {
  if (!v) return fallback;
  if (*v < 1) throw ServiceError(400, "max_card", "max_card must be at least 1");
  return *v;
}

}  // namespace

json SessionStore::get_diagnosis(const std::string& id, const DiagnosisQuery& query) const {
  auto session = find(id);
  std::shared_ptr<const KnowledgeBase> kb;
  std::optional<Observation> obs;
  std::uint64_t revision = 0;
  {
    std::shared_lock lock(session->mutex);
    kb = session->kb;
    obs = session->observation;
    revision = session->revision;
  }

  json report;
  try {
    if (query.mode == "single") {
      report = io::report_to_json(io::to_report(*kb, rank_disorders(*kb, *obs)));
      json audits = json::array();
      for (std::size_t d = 0; d < kb->disorder_count(); ++d)
        audits.push_back(io::report_to_json(io::to_report(*kb, audit_disorder(*kb, *obs, d))));
      report["audits"] = audits;
    } else if (query.mode == "multi") {
      Level threshold = kb->scale().top();
      if (query.threshold) {
        auto r = Rational::parse(*query.threshold);
        auto l = r ? kb->scale().find(*r) : std::nullopt;
        if (!l) throw ServiceError(400, "threshold", "threshold is not a level on the scale");
        threshold = *l;
      }
      report = io::report_to_json(
          io::to_report(*kb, search_multi(*kb, *obs, threshold, parse_card(query.max_card, kb->disorder_count()))));
    } else if (query.mode == "covers") {
      CoverClass only = CoverClass::kAll;
      if (query.cover_class == "relevant") only = CoverClass::kRelevant;
      else if (query.cover_class == "irredundant") only = CoverClass::kIrredundant;
      else if (query.cover_class == "minimum") only = CoverClass::kMinimum;
      else if (query.cover_class != "all") throw ServiceError(400, "class", "unknown cover class");
      const CausalRelation rel = CausalRelation::from(*kb);
      const std::size_t max_card = query.max_card ? *query.max_card : kb->disorder_count();
      report = io::report_to_json(io::to_report(rel, classify_covers(rel, core(obs->present()), max_card, only)));
    } else {
      throw ServiceError(400, "mode", "mode must be single, multi or covers");
    }
  } catch (const DiagnosisError& e) {
    throw ServiceError(422, "", e.what());
  }
  report["session"] = id;
  report["revision"] = revision;
  return report;
}

json SessionStore::get_observation(const std::string& id) const {
  auto session = find(id);
  std::shared_lock lock(session->mutex);
  json doc = io::observation_to_json(session->observation);
  doc["session"] = id;
  doc["revision"] = session->revision;
  return doc;
}

json SessionStore::history(const std::string& id) const {
  auto session = find(id);
  std::shared_lock lock(session->mutex);
  json records = json::array();
  for (const auto& h : session->history)
    records.push_back({{"revision", h.revision}, {"delta", delta_to_json(h.delta)}});
  return {{"session", id}, {"revision", session->revision}, {"history", records}};
}

std::size_t SessionStore::restore() {
  if (!log_dir_) return 0;
  std::size_t restored = 0;
  for (const auto& entry : std::filesystem::directory_iterator(*log_dir_)) {
    if (entry.path().extension() != ".log") continue;
    std::ifstream in(entry.path());
    std::string line;
    if (!std::getline(in, line)) continue;
    const json header = json::parse(line);
    auto session = std::make_shared<Session>(header.at("session").get<std::string>(), load_kb_doc(header.at("kb")));
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const json record = json::parse(line);
      auto delta = parse_delta(record.at("delta"));
      const auto revision = record.at("revision").get<std::uint64_t>();
      if (!delta.ok() || revision != session->revision + 1)
        throw ServiceError(500, entry.path().string(), "corrupt session log");
      session->observation = apply_delta(*session->kb, session->observation, *delta.value);
      session->revision = revision;
      session->history.push_back({revision, std::move(*delta.value)});
    }
    std::lock_guard lock(mutex_);
    sessions_[session->id] = session;
    ++restored;
  }
  return restored;
}

std::size_t SessionStore::session_count() const {
  std::lock_guard lock(mutex_);
  return sessions_.size();
}

// HTTP

namespace {

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(io::dump(body), "application/json");
}

template <class Handler>
void guarded(httplib::Response& res, Handler&& handler) {
  try {
    handler();
  } catch (const ServiceError& e) {
    send_json(res, e.status(), e.body());
  } catch (const json::exception& e) {
    send_json(res, 400, ServiceError(400, "", e.what()).body());
  } catch (const std::exception& e) {
    send_json(res, 500, ServiceError(500, "", e.what()).body());
  }
}

json parse_body(const httplib::Request& req) {
  try {
    return json::parse(req.body);
  } catch (const json::parse_error& e) {
    throw ServiceError(400, "", std::string("malformed JSON: ") + e.what());
  }
}

std::optional<std::size_t> size_param(const httplib::Request& req, const char* name) {
  if (!req.has_param(name)) return std::nullopt;
  const std::string v = req.get_param_value(name);
  auto r = Rational::parse(v);
  if (!r || r->den() != 1) throw ServiceError(400, name, std::string(name) + " must be a non-negative integer");
  return static_cast<std::size_t>(r->num());
}

}  // namespace

void install_routes(httplib::Server& server, SessionStore& store) {
  server.Post("/kb", [&store](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      auto created = store.register_kb(parse_body(req));
      send_json(res, 201, {{"kb_id", created.id}, {"summary", created.summary.to_json()}});
    });
  });

  server.Post("/sessions", [&store](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const json body = parse_body(req);
      SessionStore::Created created;
      if (body.is_object() && body.contains("kb_id"))
        created = store.create_session_for_kb(body["kb_id"].get<std::string>());
      else if (body.is_object() && body.contains("kb"))
        created = store.create_session(body["kb"]);
      else
        created = store.create_session(body);
      send_json(res, 201, {{"session", created.id}, {"revision", 0}, {"summary", created.summary.to_json()}});
    });
  });

  server.Get(R"(/sessions/([^/]+)/observation)", [&store](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { send_json(res, 200, store.get_observation(req.matches[1])); });
  });

  server.Patch(R"(/sessions/([^/]+)/observation)", [&store](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      auto delta = parse_delta(parse_body(req));
      if (!delta.ok()) throw ServiceError(422, std::move(delta.issues));
      const std::string id = req.matches[1];
      const auto revision = store.update_observation(id, *delta.value);
      send_json(res, 200, {{"session", id}, {"revision", revision}});
    });
  });

  server.Get(R"(/sessions/([^/]+)/diagnosis)", [&store](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      DiagnosisQuery q;
      if (req.has_param("mode")) q.mode = req.get_param_value("mode");
      q.max_card = size_param(req, "max_card");
      if (req.has_param("threshold")) q.threshold = req.get_param_value("threshold");
      if (req.has_param("class")) q.cover_class = req.get_param_value("class");
      send_json(res, 200, store.get_diagnosis(req.matches[1], q));
    });
  });

  server.Get(R"(/sessions/([^/]+)/history)", [&store](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { send_json(res, 200, store.history(req.matches[1])); });
  });
}

}  // namespace possdiag::service
