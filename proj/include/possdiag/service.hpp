#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "possdiag/kb_io.hpp"
#include "possdiag/knowledge_base.hpp"

namespace httplib {
class Server;
}

namespace possdiag::service {

enum class Side { kPresent, kAbsent };

/// One edit of the session observation. kClear resets the grade to bottom.
struct ObservationChange {
  enum class Op { kSet, kClear };
  Op op = Op::kSet;
  std::string manifestation;
  Side side = Side::kPresent;
  Rational level{1, 1};

  friend bool operator==(const ObservationChange&, const ObservationChange&) = default;
};

/// Applied all-or-nothing.
using Delta = std::vector<ObservationChange>;

nlohmann::json delta_to_json(const Delta& delta);
/// Accepts {"changes": [...]} or a bare array of changes.
io::Parsed<Delta> parse_delta(const nlohmann::json& doc);

/// Error carried back to HTTP clients: a status code and DocumentIssue list.
class ServiceError : public std::runtime_error {
 public:
  ServiceError(int status, std::vector<io::DocumentIssue> issues);
  ServiceError(int status, const std::string& path, const std::string& message);

  int status() const { return status_; }
  const std::vector<io::DocumentIssue>& issues() const { return issues_; }
  nlohmann::json body() const;

 private:
  int status_;
  std::vector<io::DocumentIssue> issues_;
};

struct KbSummary {
  std::size_t disorders = 0;
  std::size_t manifestations = 0;
  std::size_t scale_levels = 0;
  nlohmann::json to_json() const;
};

KbSummary summarize(const KnowledgeBase& kb);

struct DiagnosisQuery {
  std::string mode = "single";  // single | multi | covers
  std::optional<std::size_t> max_card;
  std::optional<std::string> threshold;
  std::string cover_class = "all";
};

struct HistoryRecord {
  std::uint64_t revision;
  Delta delta;
};

/// In-memory sessions, each pairing a knowledge base with an evolving
/// observation. Mutations of one session are serialized; reads share a lock
/// and see one consistent revision. With a log directory, every session keeps
/// an append-only replay log `<id>.log` (JSON lines).
class SessionStore {
 public:
  explicit SessionStore(std::optional<std::filesystem::path> log_dir = std::nullopt);

  struct Created {
    std::string id;
    KbSummary summary;
  };

  /// Stores a validated knowledge base that later sessions can reference.
  Created register_kb(const nlohmann::json& kb_doc);
  Created create_session(const nlohmann::json& kb_doc);
  Created create_session_for_kb(const std::string& kb_id);

  /// Returns the new revision. Throws ServiceError(404) for unknown sessions
  /// and ServiceError(422) when the change set is invalid; the session is then
  /// left untouched.
  std::uint64_t update_observation(const std::string& id, const Delta& delta);

  /// Engine report tagged with the revision it was computed from.
  nlohmann::json get_diagnosis(const std::string& id, const DiagnosisQuery& query) const;
  nlohmann::json get_observation(const std::string& id) const;
  nlohmann::json history(const std::string& id) const;

  /// Reloads every session log found in the log directory.
  std::size_t restore();

  std::size_t session_count() const;

 private:
  struct Session {
    Session(std::string id, std::shared_ptr<const KnowledgeBase> kb)
        : id(std::move(id)), kb(std::move(kb)), observation(Observation::empty(this->kb->frame_ptr())) {}

    std::string id;
    std::shared_ptr<const KnowledgeBase> kb;
    Observation observation;
    std::uint64_t revision = 0;
    std::vector<HistoryRecord> history;
    mutable std::shared_mutex mutex;
  };

  std::shared_ptr<Session> find(const std::string& id) const;
  std::string fresh_id(const char* prefix);
  Created add_session(std::shared_ptr<const KnowledgeBase> kb, const nlohmann::json& kb_doc);
  void append_log(const std::string& id, const nlohmann::json& record) const;

  std::optional<std::filesystem::path> log_dir_;
  mutable std::mutex mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::map<std::string, std::pair<std::shared_ptr<const KnowledgeBase>, nlohmann::json>> kbs_;
  std::uint64_t counter_ = 0;
};

/// Computes the observation after `delta`; throws ServiceError(422).
Observation apply_delta(const KnowledgeBase& kb, const Observation& current, const Delta& delta);

/// HTTP+JSON routes:
///   POST  /kb                          register a knowledge base
///   POST  /sessions                    {"kb_id": ...} or a knowledge base document
///   GET   /sessions/{id}/observation
///   PATCH /sessions/{id}/observation   change batch
///   GET   /sessions/{id}/diagnosis     ?mode=single|multi|covers&max_card=&threshold=&class=
///   GET   /sessions/{id}/history
void install_routes(httplib::Server& server, SessionStore& store);

}  // namespace possdiag::service
