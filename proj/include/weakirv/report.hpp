#pragma once

#include <sstream>
#include <type_traits>
#include <variant>
#include <string>
#include <vector>

#include "json.hpp"
#include "weakirv/axioms.hpp"
#include "weakirv/marks.hpp"
#include "weakirv/rules.hpp"
#include "weakirv/stv.hpp"

namespace weakirv {

using Json = nlohmann::ordered_json;

// {a,b} for sets, bare name for singletons.
inline std::string braced(const Profile& p, CandidateSet s) {
  if (s.size() == 1) return p.name(s.front());
  return "{" + p.names(s) + "}";
}

inline std::string format_order(const Profile& p, const WeakOrder& order) {
  std::string out;
  for (auto cls : order.classes()) {
    if (!out.empty()) out += " > ";
    out += braced(p, cls);
  }
  return out;
}

inline Json names_json(const Profile& p, CandidateSet s) {
  Json a = Json::array();
  for (auto c : s) a.push_back(p.name(c));
  return a;
}

inline Json profile_json(const Profile& p) {
  Json votes = Json::array();
  for (auto& v : p.votes()) {
    Json classes = Json::array();
    for (auto cls : v.order.classes()) classes.push_back(names_json(p, cls));
    votes.push_back({{"weight", to_string(v.weight)}, {"order", classes}});
  }
  return {{"candidates", p.roster()}, {"total_weight", to_string(p.total_weight())}, {"votes", votes}};
}

namespace detail {

inline std::string score_line(const Profile& p, const std::vector<Rational>& values, CandidateSet over) {
  std::string out;
  for (auto c : over) out += (out.empty() ? "" : " ") + p.name(c) + "=" + to_string(values[c]);
  return out;
}

inline Json score_json(const Profile& p, const std::vector<Rational>& values, CandidateSet over) {
  Json o = Json::object();
  for (auto c : over) o[p.name(c)] = to_string(values[c]);
  return o;
}

inline Json per_vote_json(const std::vector<Rational>& values) {
  Json a = Json::array();
  for (auto& v : values) a.push_back(to_string(v));
  return a;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Elimination traces

inline std::string elimination_audit(const Profile& p, const EliminationTrace& t) {
  std::ostringstream os;
  os << "trace: " << t.system << " (one universe)\n";
  os << "tiebreak: " << t.tiebreak.describe(p) << "\n";
  for (std::size_t r = 0; r < t.rounds.size(); ++r) {
    auto& round = t.rounds[r];
    os << "round " << r + 1 << ": " << detail::score_line(p, round.scores, round.remaining) << "; lowest "
       << braced(p, round.lowest) << "; eliminate " << p.name(round.eliminated) << "\n";
  }
  os << "trace winner: " << p.name(t.winner) << "\n";
  return os.str();
}

inline Json elimination_json(const Profile& p, const EliminationTrace& t) {
  Json rounds = Json::array();
  for (auto& r : t.rounds)
    rounds.push_back({{"remaining", names_json(p, r.remaining)},
                      {"scores", detail::score_json(p, r.scores, r.remaining)},
                      {"lowest", names_json(p, r.lowest)},
                      {"eliminated", p.name(r.eliminated)}});
  return {{"system", t.system}, {"tiebreak", t.tiebreak.describe(p)}, {"rounds", rounds}, {"winner", p.name(t.winner)}};
}

// ---------------------------------------------------------------------------
// STV traces

inline std::string describe(const Profile& p, const StvConfig& c) {
  return "quota=" + to_string(c.quota) + ";selection=" + to_string(c.selection) + ";payment=" + to_string(c.payment) +
         ";elimination=" + to_string(c.elimination) + ";tiebreak=" + c.tiebreak.describe(p);
}

// e.g. "elected: b (round 1, no eliminations)"
inline std::string stv_summary(const Profile& p, const StvTrace& t) {
  std::vector<std::string> elected, eliminated;
  for (std::size_t r = 0; r < t.rounds.size(); ++r) {
    auto& round = t.rounds[r];
    auto item = p.name(round.candidate) + " (round " + std::to_string(r + 1);
    (round.action == StvRound::Action::Elect ? elected : eliminated).push_back(item);
  }
  std::string out = "elected: ";
  for (std::size_t i = 0; i < elected.size(); ++i) {
    out += (i ? ", " : "") + elected[i];
    out += (eliminated.empty() && i + 1 == elected.size()) ? ", no eliminations)" : ")";
  }
  if (!eliminated.empty()) {
    out += "\neliminated: ";
    for (std::size_t i = 0; i < eliminated.size(); ++i) out += (i ? ", " : "") + eliminated[i] + ")";
  }
  return out;
}

inline std::string stv_audit(const Profile& p, const StvTrace& t) {
  std::ostringstream os;
  os << "rule: " << to_string(t.rule) << "\n";
  os << "seats: " << t.seats << "\n";
  os << "config: " << describe(p, t.config) << "\n";
  os << "total weight: " << to_string(t.total_weight) << "\n";
  os << "quota: " << to_string(t.quota) << (t.config.quota == QuotaKind::Droop ? " (support must exceed)" : " (support must reach)")
     << "\n";
  for (std::size_t r = 0; r < t.rounds.size(); ++r) {
    auto& round = t.rounds[r];
    os << "round " << r + 1 << ": support " << detail::score_line(p, round.support, round.remaining) << "; eligible "
       << (round.eligible.empty() ? std::string("none") : braced(p, round.eligible)) << "; ";
    if (round.action == StvRound::Action::Elect) {
      os << "elect " << p.name(round.candidate) << " ("
         << (t.config.payment == Payment::Gregory ? "gregory factor " : "cap ") << to_string(round.payment_parameter)
         << ")\n";
      os << "  payments:";
      for (std::size_t i = 0; i < round.payments.size(); ++i)
        if (round.payments[i] != 0) os << " v" << i + 1 << "=" << to_string(round.payments[i]);
      os << "\n";
    } else {
      os << "eliminate " << p.name(round.candidate) << "\n";
    }
    os << "  budgets:";
    for (std::size_t i = 0; i < round.budgets.size(); ++i) os << " v" << i + 1 << "=" << to_string(round.budgets[i]);
    os << "\n";
  }
  os << stv_summary(p, t) << "\n";
  return os.str();
}

inline Json stv_json(const Profile& p, const StvTrace& t) {
  Json rounds = Json::array();
  for (auto& r : t.rounds) {
    Json j = {{"remaining", names_json(p, r.remaining)},
              {"elected_before", names_json(p, r.elected)},
              {"support", detail::score_json(p, r.support, r.remaining)},
              {"eligible", names_json(p, r.eligible)},
              {"action", r.action == StvRound::Action::Elect ? "elect" : "eliminate"},
              {"candidate", p.name(r.candidate)}};
    if (r.action == StvRound::Action::Elect) {
      j["payment_parameter"] = to_string(r.payment_parameter);
      j["payments"] = detail::per_vote_json(r.payments);
    }
    j["budgets"] = detail::per_vote_json(r.budgets);
    rounds.push_back(std::move(j));
  }
  Json order = Json::array();
  for (auto c : t.elected_order) order.push_back(p.name(c));
  return {{"rule", to_string(t.rule)},
          {"seats", t.seats},
          {"config",
           {{"quota", to_string(t.config.quota)},
            {"selection", to_string(t.config.selection)},
            {"payment", to_string(t.config.payment)},
            {"elimination", to_string(t.config.elimination)},
            {"tiebreak", t.config.tiebreak.describe(p)}}},
          {"total_weight", to_string(t.total_weight)},
          {"quota", to_string(t.quota)},
          {"initial_budgets", detail::per_vote_json(t.initial_budgets)},
          {"rounds", rounds},
          {"elected", order}};
}

// ---------------------------------------------------------------------------
// Verdicts

namespace detail {

inline std::string vote_list(const std::vector<std::size_t>& voters) {
  std::string out;
  for (auto i : voters) out += (out.empty() ? "v" : ",v") + std::to_string(i + 1);
  return out;
}

inline Json vote_json(const std::vector<std::size_t>& voters) {
  Json a = Json::array();
  for (auto i : voters) a.push_back(i + 1);
  return a;
}

}  // namespace detail

// Voters are numbered from 1 in profile order.
inline std::string verdict_text(const Profile& p, const AxiomVerdict& v) {
  std::ostringstream os;
  os << "axiom: " << to_string(v.axiom) << "\n";
  os << "verdict: " << (v.passed() ? "pass" : "violation") << "\n";
  std::visit(
      [&](auto& c) {
        using C = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<C, CloneCertificate>) {
          os << "clones: " << braced(p, c.clones) << "; kept: " << p.name(c.kept) << "\n";
          os << "winners with clones: " << braced(p, c.winners) << "\n";
          os << "winners after collapse: " << braced(p, c.collapsed_winners) << "\n";
        } else if constexpr (std::is_same_v<C, CohesiveCertificate>) {
          os << "group: " << detail::vote_list(c.voters) << " (weight " << to_string(c.weight) << " of "
             << to_string(p.total_weight()) << ")\n";
          os << "shared top candidate: " << p.name(c.common) << "\n";
          os << "winner outside every top set of the group: " << p.name(c.winner) << "\n";
        } else if constexpr (std::is_same_v<C, UnanimousCertificate>) {
          os << "group: " << detail::vote_list(c.voters) << " (weight " << to_string(c.weight) << " of "
             << to_string(p.total_weight()) << ")\n";
          os << "shared top set: " << braced(p, c.top) << "\n";
          os << "winner outside it: " << p.name(c.winner) << "\n";
        } else if constexpr (std::is_same_v<C, MajorityAlternativeCertificate>) {
          os << "majority alternatives: " << braced(p, c.majority_alternatives) << "\n";
          os << "winner: " << p.name(c.winner) << "\n";
        } else if constexpr (std::is_same_v<C, HoverCertificate>) {
          os << "candidate: " << p.name(c.candidate) << "\n";
          os << "hovered in:";
          for (auto& [i, _] : c.pattern.hovers) os << " v" << i + 1;
          os << "\n";
          os << "winners after hovering: " << braced(p, c.winners_after) << "\n";
        } else if constexpr (std::is_same_v<C, PscCertificate>) {
          os << "targets: " << braced(p, c.coalition_targets) << "; level: " << c.level << "\n";
          os << "group: " << detail::vote_list(c.voters) << " (weight " << to_string(c.weight) << ", quota "
             << c.level << " x " << to_string(quota(p.total_weight(), c.seats, c.quota)) << " "
             << to_string(c.quota) << ")\n";
          os << "committee: " << braced(p, c.committee) << "; members inside closure: "
             << (c.allowed.empty() ? std::string("none") : braced(p, c.allowed)) << "\n";
        }
      },
      v.certificate);
  return os.str();
}

inline Json verdict_json(const Profile& p, const AxiomVerdict& v) {
  Json j = {{"axiom", to_string(v.axiom)}, {"verdict", v.passed() ? "pass" : "violation"}};
  std::visit(
      [&](auto& c) {
        using C = std::decay_t<decltype(c)>;
        Json cert;
        if constexpr (std::is_same_v<C, CloneCertificate>) {
          cert = {{"clones", names_json(p, c.clones)},
                  {"kept", p.name(c.kept)},
                  {"winners", names_json(p, c.winners)},
                  {"collapsed_winners", names_json(p, c.collapsed_winners)}};
        } else if constexpr (std::is_same_v<C, CohesiveCertificate>) {
          cert = {{"voters", detail::vote_json(c.voters)},
                  {"weight", to_string(c.weight)},
                  {"common", p.name(c.common)},
                  {"winner", p.name(c.winner)}};
        } else if constexpr (std::is_same_v<C, UnanimousCertificate>) {
          cert = {{"voters", detail::vote_json(c.voters)},
                  {"weight", to_string(c.weight)},
                  {"top", names_json(p, c.top)},
                  {"winner", p.name(c.winner)}};
        } else if constexpr (std::is_same_v<C, MajorityAlternativeCertificate>) {
          cert = {{"majority_alternatives", names_json(p, c.majority_alternatives)}, {"winner", p.name(c.winner)}};
        } else if constexpr (std::is_same_v<C, HoverCertificate>) {
          Json h = Json::array();
          for (auto& [i, _] : c.pattern.hovers) h.push_back(i + 1);
          cert = {{"candidate", p.name(c.candidate)}, {"hovered_votes", h}, {"winners_after", names_json(p, c.winners_after)}};
        } else if constexpr (std::is_same_v<C, PscCertificate>) {
          cert = {{"targets", names_json(p, c.coalition_targets)},
                  {"level", c.level},
                  {"voters", detail::vote_json(c.voters)},
                  {"weight", to_string(c.weight)},
                  {"quota_kind", to_string(c.quota)},
                  {"committee", names_json(p, c.committee)},
                  {"members_in_closure", names_json(p, c.allowed)},
                  {"seats", c.seats}};
        }
        if (!cert.is_null()) j["certificate"] = std::move(cert);
      },
      v.certificate);
  return j;
}

// ---------------------------------------------------------------------------
// Mark grids

inline Json classification_json(const std::vector<std::string>& roster, const MarkGrid& grid,
                                const BallotClassification& b) {
  Json j = {{"ballot_id", grid.ballot_id}, {"classification", to_string(b.kind)}};
  auto name = [&](CandidateId c) { return roster.at(c); };
  if (b.order) {
    Json classes = Json::array();
    for (auto cls : b.order->classes()) {
      Json a = Json::array();
      for (auto c : cls) a.push_back(name(c));
      classes.push_back(a);
    }
    j["order"] = classes;
    j["indifferences"] = b.indifferences;
  }
  if (b.reason) {
    j["reason"] = to_string(*b.reason);
    j["detail"] = b.detail;
  }
  Json partial = Json::array();
  for (auto c : b.partial_count) partial.push_back(name(c));
  j["partial_count"] = partial;
  return j;
}

}  // namespace weakirv
