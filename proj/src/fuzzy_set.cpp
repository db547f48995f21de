#include "possdiag/fuzzy_set.hpp"

#include <algorithm>

#include "possdiag/error.hpp"

namespace possdiag {

Universe::Universe(std::vector<std::string> ids) : ids_(std::move(ids)) {
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    if (!index_.emplace(ids_[i], i).second)
      throw DiagnosisError(ErrorKind::kValidation, "duplicate manifestation '" + ids_[i] + "'");
  }
}

std::optional<std::size_t> Universe::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Universe::index_of(std::string_view id) const {
  if (auto i = find(id)) return *i;
  throw DiagnosisError(ErrorKind::kLookup, "unknown manifestation '" + std::string(id) + "'");
}

FramePtr make_frame(CertaintyScale scale, std::vector<std::string> manifestations) {
  return std::make_shared<const Frame>(Frame{std::move(scale), Universe(std::move(manifestations))});
}

// CrispSet

CrispSet CrispSet::of(std::size_t universe_size, std::initializer_list<std::size_t> members) {
  CrispSet s(universe_size);
  for (auto m : members) s.insert(m);
  return s;
}

CrispSet CrispSet::full(std::size_t universe_size) {
  CrispSet s(universe_size);
  s.bits_.assign(universe_size, true);
  return s;
}

bool CrispSet::empty() const { return std::none_of(bits_.begin(), bits_.end(), [](bool b) { return b; }); }

std::size_t CrispSet::count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), true));
}

std::vector<std::size_t> CrispSet::members() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i]) out.push_back(i);
  return out;
}

CrispSet CrispSet::complement() const {
  CrispSet out(bits_.size());
  for (std::size_t i = 0; i < bits_.size(); ++i) out.bits_[i] = !bits_[i];
  return out;
}

namespace {

void require_same_size(const CrispSet& a, const CrispSet& b) {
  if (a.universe_size() != b.universe_size())
    throw DiagnosisError(ErrorKind::kUniverseMismatch, "crisp sets over different universes");
}

}  // namespace

bool CrispSet::intersects(const CrispSet& other) const {
  require_same_size(*this, other);
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i] && other.bits_[i]) return true;
  return false;
}

bool CrispSet::subset_of(const CrispSet& other) const {
  require_same_size(*this, other);
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i] && !other.bits_[i]) return false;
  return true;
}

CrispSet& CrispSet::operator|=(const CrispSet& other) {
  require_same_size(*this, other);
  for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] = bits_[i] || other.bits_[i];
  return *this;
}

CrispSet& CrispSet::operator&=(const CrispSet& other) {
  require_same_size(*this, other);
  for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] = bits_[i] && other.bits_[i];
  return *this;
}

// FuzzySet

FuzzySet::FuzzySet(FramePtr frame) : frame_(std::move(frame)) {
  grades_.assign(frame_->universe.size(), frame_->scale.bottom());
}

FuzzySet::FuzzySet(FramePtr frame, std::vector<Level> grades)
    : frame_(std::move(frame)), grades_(std::move(grades)) {
  if (grades_.size() != frame_->universe.size())
    throw DiagnosisError(ErrorKind::kUniverseMismatch, "grade vector does not match universe");
  for (Level l : grades_)
    if (!frame_->scale.contains(l))
      throw DiagnosisError(ErrorKind::kLevelNotInScale, "grade outside scale");
}

FuzzySet FuzzySet::from_values(FramePtr frame,
                               const std::vector<std::pair<std::string, Rational>>& grades) {
  FuzzySet f(frame);
  for (const auto& [id, value] : grades) f.set(frame->universe.index_of(id), frame->scale.level_of(value));
  return f;
}

FuzzySet FuzzySet::from_crisp(FramePtr frame, const CrispSet& members) {
  FuzzySet f(frame);
  for (auto m : members.members()) f.set(m, f.scale().top());
  return f;
}

Level FuzzySet::grade(std::string_view manifestation) const {
  return grades_[frame_->universe.index_of(manifestation)];
}

void FuzzySet::set(std::size_t i, Level level) {
  if (!frame_->scale.contains(level))
    throw DiagnosisError(ErrorKind::kLevelNotInScale, "grade outside scale");
  grades_.at(i) = level;
}

bool FuzzySet::empty() const {
  return std::all_of(grades_.begin(), grades_.end(), [](Level l) { return l.index == 0; });
}

bool FuzzySet::is_crisp() const {
  const Level top = scale().top();
  return std::all_of(grades_.begin(), grades_.end(),
                     [top](Level l) { return l.index == 0 || l == top; });
}

bool operator==(const FuzzySet& a, const FuzzySet& b) {
  if (a.grades_ != b.grades_) return false;
  return a.frame_ == b.frame_ || *a.frame_ == *b.frame_;
}

void require_same_frame(const FuzzySet& f, const FuzzySet& g) {
  if (f.frame_ptr() == g.frame_ptr()) return;
  if (!(f.frame() == g.frame()))
    throw DiagnosisError(ErrorKind::kUniverseMismatch,
                         "fuzzy sets do not share a universe and scale");
}

FuzzySet complement(const FuzzySet& f) {
  std::vector<Level> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = f.scale().neg(f[i]);
  return FuzzySet(f.frame_ptr(), std::move(out));
}

FuzzySet intersection(const FuzzySet& f, const FuzzySet& g) {
  require_same_frame(f, g);
  std::vector<Level> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = min(f[i], g[i]);
  return FuzzySet(f.frame_ptr(), std::move(out));
}

FuzzySet union_of(const FuzzySet& f, const FuzzySet& g) {
  require_same_frame(f, g);
  std::vector<Level> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = max(f[i], g[i]);
  return FuzzySet(f.frame_ptr(), std::move(out));
}

Level cons(const FuzzySet& f, const FuzzySet& g) {
  require_same_frame(f, g);
  Level best = f.scale().bottom();
  for (std::size_t i = 0; i < f.size(); ++i) best = max(best, min(f[i], g[i]));
  return best;
}

Level inc(const FuzzySet& f, const FuzzySet& g) {
  require_same_frame(f, g);
  const CertaintyScale& scale = f.scale();
  Level worst = scale.top();
  for (std::size_t i = 0; i < f.size(); ++i) worst = min(worst, max(scale.neg(f[i]), g[i]));
  return worst;
}

CrispSet support(const FuzzySet& f) {
  CrispSet s(f.size());
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f[i].index > 0) s.insert(i);
  return s;
}

CrispSet core(const FuzzySet& f) {
  CrispSet s(f.size());
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f[i] == f.scale().top()) s.insert(i);
  return s;
}

bool pointwise_leq(const FuzzySet& f, const FuzzySet& g) {
  require_same_frame(f, g);
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f[i] > g[i]) return false;
  return true;
}

std::vector<TwofoldViolation> validate_twofold(const FuzzySet& positive, const FuzzySet& negative) {
  require_same_frame(positive, negative);
  std::vector<TwofoldViolation> out;
  for (std::size_t i = 0; i < positive.size(); ++i)
    if (min(positive[i], negative[i]).index > 0) out.push_back({i, positive[i], negative[i]});
  return out;
}

// TwofoldSet

TwofoldSet::TwofoldSet(FuzzySet positive, FuzzySet negative)
    : positive_(std::move(positive)), negative_(std::move(negative)) {
  auto violations = validate_twofold(positive_, negative_);
  if (!violations.empty()) {
    const auto& v = violations.front();
    const auto& scale = positive_.scale();
    throw DiagnosisError(ErrorKind::kValidation,
                         "manifestation '" + frame().universe.id(v.manifestation) +
                             "' is both somewhat present (" + scale.value(v.positive).to_string() +
                             ") and somewhat absent (" + scale.value(v.negative).to_string() + ")");
  }
}

TwofoldSet TwofoldSet::ignorance(FramePtr frame) { return TwofoldSet(FuzzySet(frame), FuzzySet(frame)); }

TwofoldSet TwofoldSet::union_identity(FramePtr frame) {
  FuzzySet empty(frame);
  return TwofoldSet(empty, complement(empty));
}

CrispSet TwofoldSet::unknown() const {
  CrispSet known = support(positive_);
  known |= support(negative_);
  return known.complement();
}

bool TwofoldSet::is_complete() const {
  return is_crisp() && negative_ == complement(positive_);
}

TwofoldSet twofold_union(const TwofoldSet& a, const TwofoldSet& b) {
  return TwofoldSet(union_of(a.positive(), b.positive()), intersection(a.negative(), b.negative()));
}

TwofoldSet exchanged(const TwofoldSet& t) { return TwofoldSet(t.negative(), t.positive()); }

}  // namespace possdiag
