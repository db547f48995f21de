#include "possdiag/knowledge_base.hpp"

#include <algorithm>

#include "possdiag/error.hpp"

namespace possdiag {

namespace {

void require_frame(const FramePtr& frame, const TwofoldSet& t, const std::string& owner) {
  if (t.positive().frame_ptr() != frame && !(t.frame() == *frame))
    throw DiagnosisError(ErrorKind::kUniverseMismatch,
                         "profile of '" + owner + "' does not use the knowledge base frame");
}

std::string join_ids(const std::vector<std::string>& ids) {
  std::string out;
  for (const auto& id : ids) out += (out.empty() ? "" : ",") + id;
  return "{" + out + "}";
}

}  // namespace

KnowledgeBase::KnowledgeBase(FramePtr frame, std::vector<DisorderProfile> disorders,
                             Composition composition,
                             std::vector<std::pair<std::vector<std::string>, TwofoldSet>> multi_profiles,
                             std::optional<std::vector<std::vector<std::string>>> admissible)
    : frame_(std::move(frame)), disorders_(std::move(disorders)), composition_(composition) {
  std::sort(disorders_.begin(), disorders_.end(),
            [](const DisorderProfile& a, const DisorderProfile& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < disorders_.size(); ++i) {
    if (i > 0 && disorders_[i - 1].id == disorders_[i].id)
      throw DiagnosisError(ErrorKind::kValidation, "duplicate disorder '" + disorders_[i].id + "'");
    require_frame(frame_, disorders_[i].effects, disorders_[i].id);
  }
  for (auto& [ids, effects] : multi_profiles) {
    DisorderSet members = to_set(ids);
    if (members.size() < 2)
      throw DiagnosisError(ErrorKind::kValidation,
                           "multi-disorder profile " + join_ids(ids) + " needs at least two disorders");
    require_frame(frame_, effects, join_ids(ids));
    if (!multi_.emplace(members, std::move(effects)).second)
      throw DiagnosisError(ErrorKind::kValidation, "duplicate multi-disorder profile " + join_ids(ids));
  }
  if (admissible) {
    std::set<DisorderSet> sets;
    for (const auto& ids : *admissible) sets.insert(to_set(ids));
    admissible_ = std::move(sets);
  }
}

std::optional<std::size_t> KnowledgeBase::find_disorder(std::string_view id) const {
  auto it = std::lower_bound(disorders_.begin(), disorders_.end(), id,
                             [](const DisorderProfile& p, std::string_view v) { return p.id < v; });
  if (it == disorders_.end() || it->id != id) return std::nullopt;
  return static_cast<std::size_t>(it - disorders_.begin());
}

std::size_t KnowledgeBase::disorder_index(std::string_view id) const {
  if (auto i = find_disorder(id)) return *i;
  throw DiagnosisError(ErrorKind::kLookup, "unknown disorder '" + std::string(id) + "'");
}

DisorderSet KnowledgeBase::to_set(const std::vector<std::string>& ids) const {
  DisorderSet out;
  out.reserve(ids.size());
  for (const auto& id : ids) out.push_back(disorder_index(id));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::string> KnowledgeBase::ids_of(const DisorderSet& d) const {
  std::vector<std::string> out;
  out.reserve(d.size());
  for (auto i : d) out.push_back(disorder(i).id);
  return out;
}

bool KnowledgeBase::is_admissible(const DisorderSet& d) const {
  if (d.size() <= 1) return true;
  if (admissible_) return admissible_->count(d) > 0;
  if (composition_ == Composition::kExplicit) return multi_.count(d) > 0;
  return true;
}

bool KnowledgeBase::is_crisp() const {
  for (const auto& p : disorders_)
    if (!p.effects.is_crisp()) return false;
  for (const auto& [_, t] : multi_)
    if (!t.is_crisp()) return false;
  return true;
}

bool KnowledgeBase::is_complete() const {
  for (const auto& p : disorders_)
    if (!p.effects.is_complete()) return false;
  for (const auto& [_, t] : multi_)
    if (!t.is_complete()) return false;
  return true;
}

TwofoldSet combine_profiles(const KnowledgeBase& kb, const DisorderSet& d) {
  if (d.empty()) throw DiagnosisError(ErrorKind::kValidation, "empty disorder set");
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] >= kb.disorder_count())
      throw DiagnosisError(ErrorKind::kLookup, "disorder index out of range");
    if (i > 0 && d[i - 1] >= d[i])
      throw DiagnosisError(ErrorKind::kValidation, "disorder set must be sorted and duplicate-free");
  }
  if (d.size() == 1) return kb.disorder(d.front()).effects;
  if (!kb.is_admissible(d))
    throw DiagnosisError(ErrorKind::kInadmissible,
                         "disorders " + join_ids(kb.ids_of(d)) + " are not an admissible association");
  if (kb.composition() == Composition::kExplicit) {
    auto it = kb.multi_profiles().find(d);
    if (it == kb.multi_profiles().end())
      throw DiagnosisError(ErrorKind::kMissingProfile,
                           "no profile declared for " + join_ids(kb.ids_of(d)));
    return it->second;
  }
  TwofoldSet acc = kb.disorder(d.front()).effects;
  for (std::size_t i = 1; i < d.size(); ++i) acc = twofold_union(acc, kb.disorder(d[i]).effects);
  return acc;
}

bool parsimony_less(const DisorderSet& a, const DisorderSet& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

namespace {

void extend(const KnowledgeBase& kb, std::size_t cardinality, DisorderSet& prefix, std::size_t next,
            const std::function<bool(const DisorderSet&)>& extendable,
            const std::function<void(const DisorderSet&)>& visit) {
  if (prefix.size() == cardinality) {
    if (kb.is_admissible(prefix)) visit(prefix);
    return;
  }
  const std::size_t n = kb.disorder_count();
  const std::size_t remaining = cardinality - prefix.size();
  for (std::size_t i = next; i + remaining <= n; ++i) {
    prefix.push_back(i);
    if (prefix.size() == cardinality || !extendable || extendable(prefix))
      extend(kb, cardinality, prefix, i + 1, extendable, visit);
    prefix.pop_back();
  }
}

}  // namespace

void for_each_admissible(const KnowledgeBase& kb, std::size_t cardinality,
                         const std::function<bool(const DisorderSet&)>& extendable,
                         const std::function<void(const DisorderSet&)>& visit) {
  if (cardinality == 0 || cardinality > kb.disorder_count()) return;
  DisorderSet prefix;
  prefix.reserve(cardinality);
  extend(kb, cardinality, prefix, 0, extendable, visit);
}

}  // namespace possdiag
