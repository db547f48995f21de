#include "possdiag/cli.hpp"

#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "possdiag/cover_engine.hpp"
#include "possdiag/crisp_engine.hpp"
#include "possdiag/error.hpp"
#include "possdiag/fuzzy_engine.hpp"
#include "possdiag/kb_io.hpp"

namespace possdiag::cli {

namespace {

struct Failure {
  int code;
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kIoFailure, "cannot read '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Failure{kIoFailure, "error while reading '" + path + "'"};
  return ss.str();
}

std::string issues_text(const std::vector<io::DocumentIssue>& issues, const std::string& file) {
  std::string out;
  for (const auto& i : issues) out += file + ": " + io::format_issue(i) + "\n";
  return out;
}

KnowledgeBase load_kb(const std::string& path, std::string& err) {
  auto parsed = io::parse_kb(read_file(path));
  err += issues_text(parsed.issues, path);
  if (!parsed.ok()) throw Failure{kValidationFailure, ""};
  return std::move(*parsed.value);
}

Observation load_observation(const std::string& path, const KnowledgeBase& kb, std::string& err) {
  auto parsed = io::parse_observation(read_file(path), kb);
  err += issues_text(parsed.issues, path);
  if (!parsed.ok()) throw Failure{kValidationFailure, ""};
  return std::move(*parsed.value);
}

Level parse_level(const std::string& text, const CertaintyScale& scale) {
  auto r = Rational::parse(text);
  if (!r) throw Failure{kValidationFailure, "'" + text + "' is not a level"};
  auto l = scale.find(*r);
  if (!l) throw Failure{kValidationFailure, "level " + r->to_string() + " is not on the knowledge base scale"};
  return *l;
}

struct Options {
  std::string kb;
  std::string obs;
  std::string output;
  std::string mode = "fuzzy";
  std::size_t multi = 0;
  bool all_tiers = false;
  std::string threshold;
  std::size_t max_card = 0;
  bool max_card_given = false;
  std::string cover_class = "all";
  std::string disorder;
};

struct Result {
  std::string text;
  bool empty = false;
  int code = kSuccess;
};

Result do_validate(const Options& o, std::string& err) {
  auto kb = io::parse_kb(read_file(o.kb));
  err += issues_text(kb.issues, o.kb);
  std::vector<io::DocumentIssue> all = kb.issues;
  bool valid = kb.ok();
  if (valid && !o.obs.empty()) {
    auto obs = io::parse_observation(read_file(o.obs), *kb.value);
    err += issues_text(obs.issues, o.obs);
    all.insert(all.end(), obs.issues.begin(), obs.issues.end());
    valid = obs.ok();
  }
  nlohmann::json doc{{"format_version", io::kFormatVersion},
                     {"kind", "validation"},
                     {"valid", valid},
                     {"issues", io::to_json(all)}};
  return {io::dump(doc), false, valid ? kSuccess : kValidationFailure};
}

Result do_diagnose(const Options& o, std::string& err) {
  KnowledgeBase kb = load_kb(o.kb, err);
  Observation obs = load_observation(o.obs, kb, err);
  if (o.mode == "crisp") {
    if (!kb.is_crisp()) throw Failure{kValidationFailure, "crisp mode needs a knowledge base graded 0/1 only"};
    if (!o.threshold.empty()) throw Failure{kValidationFailure, "--threshold applies to fuzzy mode only"};
    const CrispObservation crisp = CrispObservation::from(obs);
    if (o.multi == 0) {
      const DisorderSet found = diagnose_incomplete(kb, crisp);
      return {io::write_report(io::to_report(kb, found, InformationMode::kIncomplete)), found.empty()};
    }
    const auto found = explainer_subsets_incomplete(
        kb, crisp, {o.multi, o.all_tiers ? TierPolicy::kAll : TierPolicy::kFirstNonEmpty});
    return {io::write_report(io::to_report(kb, found, InformationMode::kIncomplete)), found.empty()};
  }

  if (o.multi == 0) {
    if (!o.threshold.empty()) throw Failure{kValidationFailure, "--threshold needs --multi"};
    const auto ranking = rank_disorders(kb, obs);
    return {io::write_report(io::to_report(kb, ranking)), ranking.support().empty()};
  }
  const Level threshold = o.threshold.empty() ? kb.scale().top() : parse_level(o.threshold, kb.scale());
  const auto ranking = search_multi(kb, obs, threshold, o.multi);
  const bool reached = std::any_of(ranking.entries.begin(), ranking.entries.end(),
                                   [&](const RankedEntry& e) { return e.level >= threshold; });
  return {io::write_report(io::to_report(kb, ranking)), !reached};
}

CoverClass parse_class(const std::string& s) {
  if (s == "relevant") return CoverClass::kRelevant;
  if (s == "irredundant") return CoverClass::kIrredundant;
  if (s == "minimum") return CoverClass::kMinimum;
  return CoverClass::kAll;
}

Result do_covers(const Options& o, std::string& err) {
  KnowledgeBase kb = load_kb(o.kb, err);
  Observation obs = load_observation(o.obs, kb, err);
  const CausalRelation rel = CausalRelation::from(kb);
  const std::size_t max_card = o.max_card_given ? o.max_card : kb.disorder_count();
  const auto covers = classify_covers(rel, core(obs.present()), max_card, parse_class(o.cover_class));
  return {io::write_report(io::to_report(rel, covers)), covers.empty()};
}

Result do_explain(const Options& o, std::string& err) {
  KnowledgeBase kb = load_kb(o.kb, err);
  Observation obs = load_observation(o.obs, kb, err);
  auto d = kb.find_disorder(o.disorder);
  if (!d) throw Failure{kValidationFailure, "unknown disorder '" + o.disorder + "'"};
  return {io::write_report(io::to_report(kb, audit_disorder(kb, obs, *d))), false};
}

void emit(const Options& o, const std::string& text, CommandOutcome& outcome) {
  if (o.output.empty()) {
    outcome.out += text;
    return;
  }
  std::ofstream f(o.output, std::ios::binary | std::ios::trunc);
  f << text;
  if (!f) throw Failure{kIoFailure, "cannot write '" + o.output + "'"};
}

}  // namespace

CommandOutcome run(const std::vector<std::string>& args) {
  CommandOutcome outcome;
  Options o;

  CLI::App app{"Possibilistic diagnosis over twofold fuzzy knowledge bases", "possdiag"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub, bool needs_obs) {
    sub->add_option("--kb", o.kb, "knowledge base document")->required();
    auto obs = sub->add_option("--obs", o.obs, "observation document");
    if (needs_obs) obs->required();
    sub->add_option("--output", o.output, "write the report to this file instead of stdout");
  };

  auto* validate = app.add_subcommand("validate", "check a knowledge base and optionally an observation");
  add_common(validate, false);

  auto* diagnose = app.add_subcommand("diagnose", "rank disorders or disorder sets against an observation");
  add_common(diagnose, true);
  diagnose->add_option("--mode", o.mode, "fuzzy (default) or crisp")
      ->check(CLI::IsMember({"fuzzy", "crisp"}));
  diagnose->add_option("--multi", o.multi, "search disorder sets up to this cardinality")
      ->check(CLI::PositiveNumber);
  diagnose->add_option("--threshold", o.threshold, "level that stops the multi-disorder search (default 1)");
  diagnose->add_flag("--all-tiers", o.all_tiers, "crisp mode: keep searching after the first non-empty tier");

  auto* covers = app.add_subcommand("covers", "enumerate covers of the certainly present manifestations");
  add_common(covers, true);
  covers->add_option("--max-card", o.max_card, "largest cover size (default: number of disorders)");
  covers->add_option("--class", o.cover_class, "all, relevant, irredundant or minimum")
      ->check(CLI::IsMember({"all", "relevant", "irredundant", "minimum"}));

  auto* explain = app.add_subcommand("explain", "show why one disorder gets its level");
  add_common(explain, true);
  explain->add_option("--disorder", o.disorder, "disorder identifier")->required();

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  if (argv.empty()) argv.push_back("possdiag");

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    std::ostringstream out, err;
    const int code = app.exit(e, out, err);
    outcome.out = out.str();
    outcome.err = err.str();
    if (code != 0) {
      if (outcome.err.find("Usage") == std::string::npos) outcome.err += app.help();
      outcome.exit_code = kValidationFailure;
    }
    return outcome;
  }
  o.max_card_given = covers->count("--max-card") > 0;

  try {
    Result result;
    if (*validate) result = do_validate(o, outcome.err);
    else if (*diagnose) result = do_diagnose(o, outcome.err);
    else if (*covers) result = do_covers(o, outcome.err);
    else result = do_explain(o, outcome.err);
    emit(o, result.text, outcome);
    outcome.exit_code = result.code != kSuccess ? result.code : result.empty ? kEmptyResult : kSuccess;
  } catch (const Failure& f) {
    if (!f.message.empty()) outcome.err += "possdiag: " + f.message + "\n";
    outcome.exit_code = f.code;
  } catch (const DiagnosisError& e) {
    outcome.err += std::string("possdiag: ") + to_string(e.kind()) + " error: " + e.what() + "\n";
    outcome.exit_code = kValidationFailure;
  }
  return outcome;
}

}  // namespace possdiag::cli
