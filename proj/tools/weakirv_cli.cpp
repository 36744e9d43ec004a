// weakirv command-line front end.
//
// Exit status: 0 on a completed analysis (an axiom violation is a result),
// 1 when the input data is unusable, 2 on a usage error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "weakirv/weakirv.hpp"

using namespace weakirv;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Resolved settings, echoed as the first output line or a "config" object.
struct Config {
  std::vector<std::pair<std::string, std::string>> items;
  void set(std::string key, std::string value) { items.emplace_back(std::move(key), std::move(value)); }
  std::string line() const {
    std::string out = "# config:";
    for (auto& [k, v] : items) out += " " + k + "=" + v;
    return out;
  }
  Json json() const {
    Json j = Json::object();
    for (auto& [k, v] : items) j[k] = v;
    return j;
  }
};

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ProfileFormat format_of(const std::string& name, const std::string& path) {
  if (name == "native") return ProfileFormat::Native;
  if (name == "preflib") return ProfileFormat::PrefLib;
  if (name != "auto") throw UsageError("unknown format '" + name + "'");
  for (const char* ext : {".toi", ".soi", ".soc", ".toc"})
    if (path.size() >= 4 && path.compare(path.size() - 4, 4, ext) == 0) return ProfileFormat::PrefLib;
  return ProfileFormat::Native;
}

std::vector<std::string> split_names(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

CandidateId lookup(const Profile& p, const std::string& name) {
  auto c = p.find(name);
  if (!c) throw UsageError("unknown candidate '" + name + "'");
  return *c;
}

std::optional<TieBreak> parse_tiebreak(const std::string& text, const Profile& p) {
  if (text.empty()) return std::nullopt;
  if (text == "lexicographic") return TieBreak::lexicographic();
  if (text.rfind("priority:", 0) == 0) {
    std::vector<CandidateId> order;
    for (auto& n : split_names(text.substr(9))) order.push_back(lookup(p, n));
    return TieBreak::priority(order);
  }
  throw UsageError("tie-break must be 'lexicographic' or 'priority:a,b,...'");
}

ScoringSystem system_of(const std::string& rule) {
  if (rule == "approval-irv") return ScoringSystem::approval();
  if (rule == "split-irv") return ScoringSystem::split();
  if (rule == "baldwin-weak") return ScoringSystem::borda_style();
  throw UsageError("unknown elimination rule '" + rule + "'");
}

QuotaKind quota_of(const std::string& s) {
  if (s == "droop") return QuotaKind::Droop;
  if (s == "hare") return QuotaKind::Hare;
  throw UsageError("quota must be droop or hare");
}

struct StvFlags {
  unsigned seats = 1;
  std::string quota = "droop";
  std::string selection = "highest-support";
  std::string payment = "gregory";
  std::string elimination = "lowest-support";
  std::string tiebreak = "lexicographic";

  void add(CLI::App* app) {
    app->add_option("-k,--seats", seats, "committee size")->check(CLI::PositiveNumber);
    app->add_option("--quota", quota, "droop or hare")->check(CLI::IsMember({"droop", "hare"}));
    app->add_option("--selection", selection)->check(CLI::IsMember({"highest-support", "first-by-priority"}));
    app->add_option("--payment", payment)->check(CLI::IsMember({"gregory", "uniform-cap"}));
    app->add_option("--elimination", elimination)->check(CLI::IsMember({"lowest-support", "lowest-score"}));
    app->add_option("--tiebreak", tiebreak, "lexicographic or priority:a,b,...");
  }

  StvConfig resolve(const Profile& p) const {
    StvConfig c;
    c.quota = quota_of(quota);
    c.selection = selection == "highest-support" ? Selection::HighestSupport : Selection::FirstByPriority;
    c.payment = payment == "gregory" ? Payment::Gregory : Payment::UniformCap;
    c.elimination = elimination == "lowest-support" ? Elimination::LowestSupport : Elimination::LowestScore;
    c.tiebreak = *parse_tiebreak(tiebreak, p);
    return c;
  }

  void echo(Config& cfg, const Profile& p) const {
    cfg.set("seats", std::to_string(seats));
    cfg.set("stv", describe(p, resolve(p)));
  }
};

StvRule stv_rule_of(const std::string& rule) {
  if (rule == "approval-stv") return StvRule::Approval;
  if (rule == "split-stv") return StvRule::Split;
  throw UsageError("unknown STV rule '" + rule + "'");
}

bool is_stv(const std::string& rule) { return rule == "approval-stv" || rule == "split-stv"; }

RuleSpec spec_of(const std::string& rule, const StvFlags& stv, const Profile& p) {
  if (is_stv(rule)) return StvRuleSpec{stv_rule_of(rule), stv.seats, stv.resolve(p)};
  return system_of(rule);
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (path != "-" && !path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw ParseError("cannot write '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

// ---------------------------------------------------------------------------

struct Common {
  std::string input;
  std::string format = "auto";
  std::string output = "-";
  bool json = false;

  void add(CLI::App* app, bool needs_input = true) {
    auto opt = app->add_option("input", input, "ballot file ('-' for stdin)");
    if (needs_input) opt->required();
    app->add_option("--format", format, "auto, native or preflib")->check(CLI::IsMember({"auto", "native", "preflib"}));
    app->add_option("-o,--output", output, "output file");
    app->add_flag("--json", json, "machine-readable output");
  }

  Profile load(Config& cfg) const {
    auto fmt = format_of(format, input);
    cfg.set("input", input);
    cfg.set("format", fmt == ProfileFormat::Native ? "native" : "preflib");
    return parse_profile(read_file(input), fmt);
  }
};

int run_tally(Common& io, const std::string& rule, bool trace, const std::string& tiebreak, unsigned cap) {
  if (trace && tiebreak.empty()) throw UsageError("--trace needs an explicit --tiebreak policy");
  Config cfg;
  cfg.set("command", "tally");
  auto system = system_of(rule);
  auto profile = io.load(cfg);
  cfg.set("rule", rule);
  cfg.set("semantics", "parallel-universe");
  cfg.set("max_candidates", std::to_string(cap));
  auto tb = parse_tiebreak(tiebreak, profile);
  cfg.set("trace", trace ? tb->describe(profile) : "off");

  auto winners = put_winners(profile, system, {cap});
  auto scores = positional_scores(profile, system);
  Output out(io.output);
  auto& os = out.stream();
  if (io.json) {
    Json j = {{"config", cfg.json()},
              {"winners", names_json(profile, winners)},
              {"first_round_scores", Json::object()}};
    for (auto c : profile.candidates()) j["first_round_scores"][profile.name(c)] = to_string(scores[c]);
    if (trace) j["trace"] = elimination_json(profile, elimination_trace(profile, system, *tb));
    os << j.dump(2) << "\n";
  } else {
    os << cfg.line() << "\n";
    os << "winners: " << profile.names(winners) << "\n";
    os << "first-round scores: " << detail::score_line(profile, scores, profile.candidates()) << "\n";
    if (trace) os << elimination_audit(profile, elimination_trace(profile, system, *tb));
  }
  return 0;
}

int run_stv_cmd(Common& io, const std::string& rule, const StvFlags& flags) {
  Config cfg;
  cfg.set("command", "stv");
  auto which = stv_rule_of(rule);
  auto profile = io.load(cfg);
  cfg.set("rule", rule);
  flags.echo(cfg, profile);
  auto result = run_stv(profile, flags.seats, flags.resolve(profile), which);
  Output out(io.output);
  auto& os = out.stream();
  if (io.json) {
    Json j = {{"config", cfg.json()},
              {"committee", names_json(profile, result.committee)},
              {"money_conserved", money_conserved(profile, result.trace)},
              {"trace", stv_json(profile, result.trace)}};
    os << j.dump(2) << "\n";
  } else {
    os << cfg.line() << "\n";
    os << "committee: " << profile.names(result.committee) << "\n";
    os << stv_summary(profile, result.trace) << "\n";
    os << stv_audit(profile, result.trace);
  }
  return 0;
}

struct CheckFlags {
  std::string axiom;
  std::string rule = "approval-irv";
  std::string clones;
  std::string keep;
  std::string candidate;
  std::string hover;
  std::string committee;
  bool exhaustive = false;
  StvFlags stv;
};

int run_check(Common& io, CheckFlags& f) {
  Config cfg;
  cfg.set("command", "check");
  cfg.set("axiom", f.axiom);
  auto profile = io.load(cfg);
  const bool committee_given = !f.committee.empty();
  if (!committee_given || f.axiom != "gpsc") cfg.set("rule", f.rule);
  if (is_stv(f.rule) || f.axiom == "gpsc") f.stv.echo(cfg, profile);
  auto spec = spec_of(f.rule, f.stv, profile);
  auto rule = make_rule(spec);

  AxiomVerdict verdict{Axiom::CohesiveMajorities, {}};
  if (f.axiom == "clones") {
    if (f.clones.empty() || f.keep.empty()) throw UsageError("clones check needs --clones and --keep");
    CandidateSet set;
    for (auto& n : split_names(f.clones)) set.insert(lookup(profile, n));
    cfg.set("clones", f.clones);
    cfg.set("keep", f.keep);
    auto kept = lookup(profile, f.keep);
    if (!is_clone_set(profile, set)) throw PreconditionError("{" + f.clones + "} is not a clone set of this profile");
    verdict = check_independence_of_clones(rule, profile, set, kept);
  } else if (f.axiom == "cohesive-majorities" || f.axiom == "unanimous-majorities" ||
             f.axiom == "majority-alternative") {
    auto winners = rule(profile);
    if (f.axiom == "cohesive-majorities") {
      cfg.set("method", f.exhaustive ? "exhaustive" : "pairwise");
      verdict = f.exhaustive ? check_cohesive_majorities_exhaustive(profile, winners)
                             : check_cohesive_majorities(profile, winners);
    } else if (f.axiom == "unanimous-majorities") {
      verdict = check_unanimous_majorities(profile, winners);
    } else {
      verdict = check_select_majority_alternative(profile, winners);
    }
  } else if (f.axiom == "indiff-mono") {
    if (f.candidate.empty()) throw UsageError("indiff-mono needs --candidate");
    auto c = lookup(profile, f.candidate);
    HoverPattern pattern;
    if (f.hover.empty()) {
      for (std::size_t i = 0; i < profile.num_votes(); ++i)
        if (can_hover(profile.votes()[i].order, c)) pattern.hovers.emplace_back(i, c);
      cfg.set("hover", "all");
    } else {
      for (auto& idx : split_names(f.hover)) {
        std::size_t i = 0;
        try {
          i = std::stoul(idx.front() == 'v' ? idx.substr(1) : idx);
        } catch (const std::exception&) {
          throw UsageError("--hover takes vote numbers such as v1,v3");
        }
        if (i == 0 || i > profile.num_votes()) throw UsageError("no vote number " + idx);
        if (!can_hover(profile.votes()[i - 1].order, c))
          throw PreconditionError(f.candidate + " cannot hover in vote " + std::to_string(i));
        pattern.hovers.emplace_back(i - 1, c);
      }
      cfg.set("hover", f.hover);
    }
    cfg.set("candidate", f.candidate);
    if (pattern.hovers.empty()) throw PreconditionError(f.candidate + " cannot hover in any vote");
    verdict = check_indifference_monotonicity(rule, profile, c, pattern);
  } else if (f.axiom == "gpsc") {
    CandidateSet committee;
    if (committee_given) {
      for (auto& n : split_names(f.committee)) committee.insert(lookup(profile, n));
      cfg.set("committee", f.committee);
    } else {
      if (!is_stv(f.rule)) throw UsageError("gpsc needs --committee or an STV --rule");
      committee = rule(profile);
    }
    verdict = check_generalized_psc(profile, committee, f.stv.seats, quota_of(f.stv.quota));
  } else {
    throw UsageError("unknown axiom '" + f.axiom + "'");
  }

  Output out(io.output);
  auto& os = out.stream();
  if (io.json) {
    os << Json{{"config", cfg.json()}, {"result", verdict_json(profile, verdict)}}.dump(2) << "\n";
  } else {
    os << cfg.line() << "\n" << verdict_text(profile, verdict);
  }
  return 0;
}

Axiom axiom_of(const std::string& s) {
  if (s == "clones") return Axiom::IndependenceOfClones;
  if (s == "cohesive-majorities") return Axiom::CohesiveMajorities;
  if (s == "unanimous-majorities") return Axiom::UnanimousMajorities;
  if (s == "majority-alternative") return Axiom::SelectMajorityAlternative;
  if (s == "indiff-mono") return Axiom::IndifferenceMonotonicity;
  if (s == "gpsc") return Axiom::GeneralizedPsc;
  throw UsageError("unknown axiom '" + s + "'");
}

int run_search(const std::string& rule_name, const std::string& axiom_name, const SearchBounds& bounds,
               const StvFlags& stv, std::uint64_t seed, const std::string& output, bool json) {
  Config cfg;
  cfg.set("command", "search");
  cfg.set("rule", rule_name);
  cfg.set("axiom", axiom_name);
  auto axiom = axiom_of(axiom_name);
  RuleSpec spec = ScoringSystem::approval();
  if (is_stv(rule_name)) {
    // Tie-break names refer to the generated roster a, b, ...
    auto dummy = Profile({"a"}, {});
    StvConfig c;
    c.quota = quota_of(stv.quota);
    c.selection = stv.selection == "highest-support" ? Selection::HighestSupport : Selection::FirstByPriority;
    c.payment = stv.payment == "gregory" ? Payment::Gregory : Payment::UniformCap;
    c.elimination = stv.elimination == "lowest-support" ? Elimination::LowestSupport : Elimination::LowestScore;
    if (stv.tiebreak != "lexicographic") throw UsageError("search supports only the lexicographic tie-break");
    spec = StvRuleSpec{stv_rule_of(rule_name), stv.seats, c};
    cfg.set("seats", std::to_string(stv.seats));
    cfg.set("stv", describe(dummy, c));
    if (stv.seats > bounds.min_candidates) throw UsageError("--seats exceeds --min-candidates");
  } else {
    spec = system_of(rule_name);
  }
  if (axiom == Axiom::GeneralizedPsc && !is_stv(rule_name)) throw UsageError("gpsc search needs an STV rule");
  cfg.set("min_candidates", std::to_string(bounds.min_candidates));
  cfg.set("max_candidates", std::to_string(bounds.max_candidates));
  cfg.set("max_ballots", std::to_string(bounds.max_ballots));
  cfg.set("max_weight", std::to_string(bounds.max_weight));
  cfg.set("attempts", std::to_string(bounds.attempts));
  cfg.set("seed", std::to_string(seed));

  auto found = search_counterexample(spec, axiom, bounds, seed);
  Output out(output);
  auto& os = out.stream();
  if (json) {
    Json j = {{"config", cfg.json()}, {"found", found.has_value()}};
    if (found) {
      j["attempt"] = found->attempt;
      j["profile"] = profile_json(found->profile);
      j["result"] = verdict_json(found->profile, found->verdict);
    }
    os << j.dump(2) << "\n";
  } else {
    os << cfg.line() << "\n";
    if (!found) {
      os << "no violation found in " << bounds.attempts << " attempts\n";
    } else {
      os << "violation found at attempt " << found->attempt << "\n";
      os << serialize_profile(found->profile, ProfileFormat::Native);
      os << verdict_text(found->profile, found->verdict);
    }
  }
  return 0;
}

int run_convert(Common& io, const std::string& from, const std::string& to, const std::string& roster_text,
                std::optional<unsigned> max_rank, bool invalidate_gaps, bool no_bottom, bool reject_truncated) {
  Config cfg;
  cfg.set("command", "convert");
  cfg.set("input", io.input);
  cfg.set("from", from);
  cfg.set("to", to);
  Output out(io.output);
  auto& os = out.stream();
  if (from != "marks") {
    if (to == "classify") throw UsageError("classification needs --from marks");
    auto fmt = format_of(from == "auto" ? "auto" : from, io.input);
    ParseOptions opts;
    opts.truncation = reject_truncated ? Truncation::Reject : Truncation::CompleteWithBottomClass;
    cfg.set("truncated", reject_truncated ? "reject" : "complete");
    auto profile = parse_profile(read_file(io.input), fmt, opts);
    if (to == "json") {
      os << Json{{"config", cfg.json()}, {"profile", profile_json(profile)}}.dump(2) << "\n";
    } else {
      os << serialize_profile(profile, to == "preflib" ? ProfileFormat::PrefLib : ProfileFormat::Native);
    }
    return 0;
  }

  if (roster_text.empty()) throw UsageError("mark grids need --roster");
  auto roster = split_names(roster_text);
  MarkPolicy policy{!no_bottom, invalidate_gaps};
  cfg.set("roster", roster_text);
  cfg.set("max_rank", max_rank ? std::to_string(*max_rank) : "none");
  cfg.set("gaps", invalidate_gaps ? "invalidate" : "collapse");
  cfg.set("unranked", no_bottom ? "omitted" : "bottom-class");
  auto grids = parse_mark_grids(read_file(io.input), max_rank);
  std::vector<BallotClassification> results;
  for (auto& g : grids) results.push_back(interpret_mark_grid(g, roster, policy));

  if (to == "classify" || to == "json") {
    std::size_t counts[3] = {0, 0, 0};
    for (auto& r : results) ++counts[static_cast<int>(r.kind)];
    if (to == "json") {
      Json ballots = Json::array();
      for (std::size_t i = 0; i < grids.size(); ++i) ballots.push_back(classification_json(roster, grids[i], results[i]));
      os << Json{{"config", cfg.json()},
                 {"summary", {{"linear", counts[0]}, {"weak_order", counts[1]}, {"invalid", counts[2]}}},
                 {"ballots", ballots}}
                .dump(2)
         << "\n";
    } else {
      os << cfg.line() << "\n";
      for (std::size_t i = 0; i < grids.size(); ++i) {
        auto& r = results[i];
        os << grids[i].ballot_id << ": " << to_string(r.kind);
        if (r.order) {
          os << " ";
          bool first = true;
          for (auto cls : r.order->classes()) {
            os << (first ? "" : " > ");
            first = false;
            if (cls.size() > 1) os << "{";
            bool f2 = true;
            for (auto c : cls) {
              os << (f2 ? "" : ",") << roster[c];
              f2 = false;
            }
            if (cls.size() > 1) os << "}";
          }
          if (r.indifferences) os << " (" << r.indifferences << " indifference" << (r.indifferences > 1 ? "s" : "") << ")";
        } else {
          os << " " << to_string(*r.reason) << " (" << r.detail << ")";
        }
        os << "; partial count:";
        if (r.partial_count.empty()) os << " exhausted";
        for (auto c : r.partial_count) os << " " << roster[c];
        os << "\n";
      }
      os << "summary: linear=" << counts[0] << " weak-order=" << counts[1] << " invalid=" << counts[2] << "\n";
    }
    return 0;
  }

  if (no_bottom) throw UsageError("a profile needs every candidate ranked; drop --no-bottom");
  std::vector<Vote> votes;
  for (auto& r : results)
    if (r.order) votes.push_back({Rational(1), *r.order});
  auto profile = canonicalize(Profile(roster, std::move(votes)));
  os << serialize_profile(profile, to == "preflib" ? ProfileFormat::PrefLib : ProfileFormat::Native);
  return 0;
}

int run_simulate(ExperimentConfig cfg, const std::string& source, const std::string& source_format,
                 const std::string& output) {
  if (cfg.dataset == Dataset::Resample) {
    if (source.empty()) throw UsageError("resample needs --source");
    cfg.source = parse_profile(read_file(source), format_of(source_format, source));
    cfg.candidates = cfg.source->num_candidates();
  }
  auto rows = run_experiment(cfg);
  Output out(output);
  write_experiment_csv(out.stream(), cfg, rows);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Voting rules and axiom checks for weak-order ballots"};
  app.require_subcommand(1);

  Common tally_io;
  std::string tally_rule = "approval-irv", tally_tiebreak;
  bool tally_trace = false;
  unsigned tally_cap = 20;
  auto* tally = app.add_subcommand("tally", "winner set under parallel-universe tie-breaking");
  tally_io.add(tally);
  tally->add_option("--rule", tally_rule)->check(CLI::IsMember({"approval-irv", "split-irv", "baldwin-weak"}));
  tally->add_flag("--trace", tally_trace, "print one deterministic elimination sequence");
  tally->add_option("--tiebreak", tally_tiebreak, "lexicographic or priority:a,b,...");
  tally->add_option("--max-candidates", tally_cap, "refuse larger rosters")->check(CLI::Range(1u, 30u));

  Common stv_io;
  std::string stv_rule = "approval-stv";
  StvFlags stv_flags;
  auto* stv = app.add_subcommand("stv", "multi-winner count with audit log");
  stv_io.add(stv);
  stv->add_option("--rule", stv_rule)->check(CLI::IsMember({"approval-stv", "split-stv"}));
  stv_flags.add(stv);

  Common check_io;
  CheckFlags check_flags;
  auto* check = app.add_subcommand("check", "test one axiom on one profile");
  check_io.add(check);
  check->add_option("--axiom", check_flags.axiom)
      ->required()
      ->check(CLI::IsMember(
          {"clones", "cohesive-majorities", "unanimous-majorities", "majority-alternative", "indiff-mono", "gpsc"}));
  check->add_option("--rule", check_flags.rule)
      ->check(CLI::IsMember({"approval-irv", "split-irv", "baldwin-weak", "approval-stv", "split-stv"}));
  check->add_option("--clones", check_flags.clones, "comma-separated clone set");
  check->add_option("--keep", check_flags.keep, "clone kept after collapsing");
  check->add_option("--candidate", check_flags.candidate, "winner moved up by hovering");
  check->add_option("--hover", check_flags.hover, "votes to hover in, e.g. v1,v3 (default: all)");
  check->add_option("--committee", check_flags.committee, "committee to test for gpsc");
  check->add_flag("--exhaustive", check_flags.exhaustive, "enumerate voter groups for cohesive-majorities");
  check_flags.stv.add(check);

  std::string search_rule = "split-irv", search_axiom = "clones", search_out = "-";
  SearchBounds bounds;
  StvFlags search_stv;
  std::uint64_t search_seed = 1;
  bool search_json = false;
  auto* search = app.add_subcommand("search", "randomized counterexample search");
  search->add_option("--rule", search_rule)
      ->check(CLI::IsMember({"approval-irv", "split-irv", "baldwin-weak", "approval-stv", "split-stv"}));
  search->add_option("--axiom", search_axiom)
      ->check(CLI::IsMember(
          {"clones", "cohesive-majorities", "unanimous-majorities", "majority-alternative", "indiff-mono", "gpsc"}));
  search->add_option("--min-candidates", bounds.min_candidates)->check(CLI::Range(2u, 12u));
  search->add_option("--max-candidates", bounds.max_candidates)->check(CLI::Range(2u, 12u));
  search->add_option("--max-ballots", bounds.max_ballots)->check(CLI::Range(2u, 64u));
  search->add_option("--max-weight", bounds.max_weight)->check(CLI::PositiveNumber);
  search->add_option("--attempts", bounds.attempts);
  search->add_option("--workers", bounds.workers)->check(CLI::Range(1u, 256u));
  search->add_option("--seed", search_seed);
  search->add_option("-o,--output", search_out);
  search->add_flag("--json", search_json);
  search_stv.add(search);

  ExperimentConfig sim;
  std::string sim_dataset = "euclidean", sim_shape = "square", sim_weakener = "coin-flip", sim_source,
              sim_source_format = "auto", sim_out = "-";
  bool sim_all_rankings = false;
  auto* simulate = app.add_subcommand("simulate", "synthetic experiment to CSV");
  simulate->add_option("--dataset", sim_dataset)
      ->check(CLI::IsMember({"impartial-culture", "mallows", "euclidean", "resample"}));
  simulate->add_option("-n,--voters", sim.voters)->check(CLI::PositiveNumber);
  simulate->add_option("-m,--candidates", sim.candidates)->check(CLI::Range(1u, 20u));
  simulate->add_option("-k,--seats", sim.seats, "0 for single-winner rules");
  simulate->add_option("--dim", sim.dim)->check(CLI::IsMember({1u, 2u}));
  simulate->add_option("--shape", sim_shape)->check(CLI::IsMember({"square", "disc"}));
  simulate->add_option("--centers", sim.mallows_centers)->check(CLI::PositiveNumber);
  simulate->add_option("--phi", sim.mallows_phi)->check(CLI::Range(0.0, 1.0));
  simulate->add_option("--source", sim_source, "profile to resample");
  simulate->add_option("--source-format", sim_source_format)->check(CLI::IsMember({"auto", "native", "preflib"}));
  simulate->add_flag("--all-rankings", sim_all_rankings, "resample weak orders too");
  simulate->add_option("--weakener", sim_weakener)->check(CLI::IsMember({"none", "coin-flip", "radius"}));
  simulate->add_option("-p,--parameter", sim.parameter, "coin probability or radius");
  simulate->add_option("--samples", sim.samples);
  simulate->add_option("--seed", sim.seed);
  simulate->add_option("--workers", sim.workers)->check(CLI::Range(1u, 256u));
  simulate->add_option("-o,--output", sim_out);

  Common conv_io;
  std::string conv_from = "auto", conv_to = "native", conv_roster;
  std::optional<unsigned> conv_max_rank;
  bool conv_gaps = false, conv_no_bottom = false, conv_reject = false;
  auto* convert = app.add_subcommand("convert", "transcode ballots or classify mark grids");
  conv_io.add(convert);
  convert->add_option("--from", conv_from)->check(CLI::IsMember({"auto", "native", "preflib", "marks"}));
  convert->add_option("--to", conv_to)->check(CLI::IsMember({"native", "preflib", "json", "classify"}));
  convert->add_option("--roster", conv_roster, "candidate names for mark grids");
  convert->add_option("--max-rank", conv_max_rank, "ranks offered on the ballot");
  convert->add_flag("--invalidate-gaps", conv_gaps, "skipped ranks make a ballot invalid");
  convert->add_flag("--no-bottom", conv_no_bottom, "leave unranked candidates out of the order");
  convert->add_flag("--reject-truncated", conv_reject, "ballots must rank every candidate");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*tally) return run_tally(tally_io, tally_rule, tally_trace, tally_tiebreak, tally_cap);
    if (*stv) return run_stv_cmd(stv_io, stv_rule, stv_flags);
    if (*check) return run_check(check_io, check_flags);
    if (*search) return run_search(search_rule, search_axiom, bounds, search_stv, search_seed, search_out, search_json);
    if (*simulate) {
      sim.dataset = sim_dataset == "impartial-culture" ? Dataset::ImpartialCulture
                    : sim_dataset == "mallows"        ? Dataset::Mallows
                    : sim_dataset == "euclidean"      ? Dataset::Euclidean
                                                      : Dataset::Resample;
      sim.shape = sim_shape == "disc" ? Shape::Disc : Shape::Square;
      sim.weakener = sim_weakener == "none" ? Weakener::None
                     : sim_weakener == "radius" ? Weakener::Radius
                                                : Weakener::CoinFlip;
      sim.full_rankings_only = !sim_all_rankings;
      return run_simulate(sim, sim_source, sim_source_format, sim_out);
    }
    if (*convert)
      return run_convert(conv_io, conv_from, conv_to, conv_roster, conv_max_rank, conv_gaps, conv_no_bottom,
                         conv_reject);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "input error";
    if (e.line()) std::cerr << " (line " << e.line() << ")";
    std::cerr << ": " << e.what() << "\n";
    return 1;
  } catch (const PreconditionError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
