#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "weakirv/profile.hpp"
#include "weakirv/rules.hpp"
#include "weakirv/stv.hpp"

namespace weakirv {

// A single-winner voting rule as a function of the profile, or a committee
// rule with fixed seat count.
using Rule = std::function<CandidateSet(const Profile&)>;

struct StvRuleSpec {
  StvRule rule = StvRule::Approval;
  unsigned seats = 1;
  StvConfig config;
};

using RuleSpec = std::variant<ScoringSystem, StvRuleSpec>;

inline Rule make_rule(const RuleSpec& spec) {
  if (auto sys = std::get_if<ScoringSystem>(&spec))
    return [system = *sys](const Profile& p) { return put_winners(p, system); };
  auto stv = std::get<StvRuleSpec>(spec);
  return [stv](const Profile& p) { return run_stv(p, stv.seats, stv.config, stv.rule).committee; };
}

inline std::string describe(const RuleSpec& spec) {
  if (auto sys = std::get_if<ScoringSystem>(&spec)) {
    switch (sys->kind()) {
      case ScoringSystem::Kind::Approval: return "approval-irv";
      case ScoringSystem::Kind::Split: return "split-irv";
      case ScoringSystem::Kind::BordaStyle: return "baldwin-weak";
      case ScoringSystem::Kind::Table: return "elimination:" + sys->name();
    }
  }
  auto& stv = std::get<StvRuleSpec>(spec);
  return to_string(stv.rule) + "(k=" + std::to_string(stv.seats) + ")";
}

enum class Axiom {
  IndependenceOfClones,
  CohesiveMajorities,
  UnanimousMajorities,
  SelectMajorityAlternative,
  IndifferenceMonotonicity,
  GeneralizedPsc,
};

inline std::string to_string(Axiom a) {
  switch (a) {
    case Axiom::IndependenceOfClones: return "independence-of-clones";
    case Axiom::CohesiveMajorities: return "cohesive-majorities";
    case Axiom::UnanimousMajorities: return "unanimous-majorities";
    case Axiom::SelectMajorityAlternative: return "select-majority-alternative";
    case Axiom::IndifferenceMonotonicity: return "indifference-monotonicity";
    case Axiom::GeneralizedPsc: return "generalized-psc";
  }
  return {};
}

// Witnesses, all in ids of the profile that was checked.
struct CloneCertificate {
  CandidateSet clones;
  CandidateId kept = 0;
  CandidateSet winners;            // rule on the profile with clones
  CandidateSet collapsed_winners;  // rule after removing all clones but `kept`
};

struct CohesiveCertificate {
  CandidateId common = 0;  // ranked top by every voter in the group
  std::vector<std::size_t> voters;
  Rational weight;
  CandidateId winner = 0;  // top-ranked by nobody in the group
};

struct UnanimousCertificate {
  CandidateSet top;  // the shared top set
  std::vector<std::size_t> voters;
  Rational weight;
  CandidateId winner = 0;
};

struct MajorityAlternativeCertificate {
  CandidateSet majority_alternatives;
  CandidateId winner = 0;
};

struct HoverPattern {
  std::vector<std::pair<std::size_t, CandidateId>> hovers;  // (vote index, candidate)
};

struct HoverCertificate {
  CandidateId candidate = 0;
  HoverPattern pattern;
  CandidateSet winners_after;
};

struct PscCertificate {
  CandidateSet coalition_targets;  // T
  unsigned level = 0;              // the number of seats owed
  CandidateSet allowed;            // committee members the group may see inside its closure
  std::vector<std::size_t> voters;
  Rational weight;
  CandidateSet committee;
  unsigned seats = 0;
  QuotaKind quota = QuotaKind::Droop;
};

using Certificate = std::variant<std::monostate, CloneCertificate, CohesiveCertificate, UnanimousCertificate,
                                 MajorityAlternativeCertificate, HoverCertificate, PscCertificate>;

struct AxiomVerdict {
  Axiom axiom;
  Certificate certificate;  // monostate when the check passed

  bool passed() const { return std::holds_alternative<std::monostate>(certificate); }
};

// ---------------------------------------------------------------------------
// Clones

inline void require_within_roster(const Profile& profile, CandidateSet s) {
  if (!s.subset_of(profile.candidates())) throw PreconditionError("candidate set is not within the roster");
}

inline bool is_clone_set(const Profile& profile, CandidateSet clones) {
  require_within_roster(profile, clones);
  if (clones.empty()) throw PreconditionError("clone set must be nonempty");
  const auto outside = profile.candidates() - clones;
  for (auto& v : profile.votes()) {
    std::size_t lo = v.order.num_classes(), hi = 0;
    for (std::size_t j = 0; j < v.order.num_classes(); ++j) {
      if (v.order.classes()[j].intersects(clones)) {
        lo = std::min(lo, j);
        hi = std::max(hi, j);
      }
    }
    for (std::size_t j = lo; j <= hi; ++j) {
      if (!v.order.classes()[j].intersects(outside)) continue;
      // An outsider between the clones' extreme ranks is fine only if all
      // clones share its class.
      if (lo != hi) return false;
    }
  }
  return true;
}

inline Profile collapse_clones(const Profile& profile, CandidateSet clones, CandidateId kept) {
  if (!clones.contains(kept)) throw PreconditionError("kept candidate is not in the clone set");
  if (!is_clone_set(profile, clones)) throw PreconditionError("not a clone set");
  return restrict(profile, (profile.candidates() - clones) | CandidateSet::single(kept));
}

struct ClonedProfile {
  Profile profile;
  CandidateSet clones;  // includes the original candidate
};

// Adds `count - 1` clones of `c`, appended to the roster. In each vote where
// c shares a class the clones join that class; where c is alone the clone
// group takes c's slot as a random weak order of its own.
inline ClonedProfile expand_clone(const Profile& profile, CandidateId c, unsigned count, std::uint64_t seed) {
  if (count < 2) throw PreconditionError("expand_clone needs at least two clones");
  const unsigned m = profile.num_candidates();
  if (c >= m) throw PreconditionError("candidate is not in the roster");
  if (m + count - 1 > kMaxCandidates) throw PreconditionError("too many candidates after cloning");
  std::mt19937_64 rng(seed);

  auto roster = profile.roster();
  CandidateSet group = CandidateSet::single(c);
  for (unsigned j = 1; j < count; ++j) {
    std::string name = profile.name(c) + "'";
    while (std::find(roster.begin(), roster.end(), name) != roster.end()) name += "'";
    group.insert(static_cast<CandidateId>(roster.size()));
    roster.push_back(name);
  }
  auto members = group.to_vector();

  std::vector<Vote> votes;
  for (auto& v : profile.votes()) {
    std::vector<CandidateSet> classes;
    for (auto cls : v.order.classes()) {
      if (!cls.contains(c)) {
        classes.push_back(cls);
      } else if (cls.size() > 1 || std::bernoulli_distribution(0.25)(rng)) {
        classes.push_back(cls | group);
      } else {
        auto order = members;
        std::shuffle(order.begin(), order.end(), rng);
        CandidateSet run = CandidateSet::single(order[0]);
        for (std::size_t i = 1; i < order.size(); ++i) {
          if (std::bernoulli_distribution(0.3)(rng)) {
            run.insert(order[i]);
          } else {
            classes.push_back(run);
            run = CandidateSet::single(order[i]);
          }
        }
        classes.push_back(run);
      }
    }
    votes.push_back({v.weight, WeakOrder(std::move(classes))});
  }
  return {Profile(std::move(roster), std::move(votes)), group};
}

inline AxiomVerdict check_independence_of_clones(const Rule& rule, const Profile& profile, CandidateSet clones,
                                                 CandidateId kept) {
  auto collapsed = collapse_clones(profile, clones, kept);
  const auto keep = (profile.candidates() - clones) | CandidateSet::single(kept);
  CloneCertificate cert{clones, kept, rule(profile), lift(rule(collapsed), keep)};
  const auto outside = profile.candidates() - clones;
  bool ok = (cert.winners & outside) == (cert.collapsed_winners & outside) &&
            cert.collapsed_winners.contains(kept) == cert.winners.intersects(clones);
  if (ok) return {Axiom::IndependenceOfClones, {}};
  return {Axiom::IndependenceOfClones, cert};
}

// ---------------------------------------------------------------------------
// Majorities

// Winners must be top-ranked by someone in every cohesive majority. For a
// winner w and candidate c, the strongest group is every voter with c on top
// and w not on top.
inline AxiomVerdict check_cohesive_majorities(const Profile& profile, CandidateSet winners) {
  const Rational half = profile.total_weight() / 2;
  for (auto w : winners) {
    for (auto c : profile.candidates()) {
      CohesiveCertificate cert{c, {}, Rational(0), w};
      for (std::size_t i = 0; i < profile.num_votes(); ++i) {
        auto top = profile.votes()[i].order.top();
        if (top.contains(c) && !top.contains(w)) {
          cert.voters.push_back(i);
          cert.weight += profile.votes()[i].weight;
        }
      }
      if (cert.weight > half) return {Axiom::CohesiveMajorities, cert};
    }
  }
  return {Axiom::CohesiveMajorities, {}};
}

// Same axiom by enumerating every group of votes. Exponential in the number
// of votes; kept for cross-checking.
inline AxiomVerdict check_cohesive_majorities_exhaustive(const Profile& profile, CandidateSet winners) {
  const auto nv = profile.num_votes();
  if (nv > 20) throw PreconditionError("exhaustive cohesive-majority check is capped at 20 votes");
  const Rational half = profile.total_weight() / 2;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << nv); ++mask) {
    Rational weight = 0;
    CandidateSet common = profile.candidates(), covered;
    std::vector<std::size_t> voters;
    for (std::size_t i = 0; i < nv; ++i) {
      if (!((mask >> i) & 1u)) continue;
      voters.push_back(i);
      weight += profile.votes()[i].weight;
      common &= profile.votes()[i].order.top();
      covered |= profile.votes()[i].order.top();
    }
    if (weight <= half || common.empty()) continue;
    auto outside = winners - covered;
    if (!outside.empty()) return {Axiom::CohesiveMajorities, CohesiveCertificate{common.front(), voters, weight, outside.front()}};
  }
  return {Axiom::CohesiveMajorities, {}};
}

inline AxiomVerdict check_unanimous_majorities(const Profile& profile, CandidateSet winners) {
  const Rational half = profile.total_weight() / 2;
  std::vector<CandidateSet> seen;
  for (auto& v : profile.votes()) {
    auto top = v.order.top();
    if (std::find(seen.begin(), seen.end(), top) != seen.end()) continue;
    seen.push_back(top);
    UnanimousCertificate cert{top, {}, Rational(0), 0};
    for (std::size_t i = 0; i < profile.num_votes(); ++i) {
      if (profile.votes()[i].order.top() == top) {
        cert.voters.push_back(i);
        cert.weight += profile.votes()[i].weight;
      }
    }
    auto outside = winners - top;
    if (cert.weight > half && !outside.empty()) {
      cert.winner = outside.front();
      return {Axiom::UnanimousMajorities, cert};
    }
  }
  return {Axiom::UnanimousMajorities, {}};
}

// Candidates in the top class of more than half of the weight.
inline CandidateSet majority_alternatives(const Profile& profile) {
  const Rational half = profile.total_weight() / 2;
  std::vector<Rational> w(profile.num_candidates(), Rational(0));
  for (auto& v : profile.votes())
    for (auto c : v.order.top()) w[c] += v.weight;
  CandidateSet out;
  for (auto c : profile.candidates())
    if (w[c] > half) out.insert(c);
  return out;
}

inline AxiomVerdict check_select_majority_alternative(const Profile& profile, CandidateSet winners) {
  auto majority = majority_alternatives(profile);
  auto outside = winners - majority;
  if (majority.empty() || outside.empty()) return {Axiom::SelectMajorityAlternative, {}};
  return {Axiom::SelectMajorityAlternative, MajorityAlternativeCertificate{majority, outside.front()}};
}

// ---------------------------------------------------------------------------
// Indifference monotonicity

// Moves c from its singleton class into the class directly above it.
inline WeakOrder c_hover(const WeakOrder& order, CandidateId c) {
  auto rank = order.rank_of(c);
  if (!rank) throw PreconditionError("hover candidate is not ranked");
  if (order.classes()[*rank].size() != 1) throw PreconditionError("hover candidate is tied with others");
  if (*rank == 0) throw PreconditionError("hover candidate is already in the top class");
  auto classes = order.classes();
  classes[*rank - 1].insert(c);
  classes.erase(classes.begin() + static_cast<std::ptrdiff_t>(*rank));
  return WeakOrder(std::move(classes));
}

inline bool can_hover(const WeakOrder& order, CandidateId c) {
  auto rank = order.rank_of(c);
  return rank && *rank > 0 && order.classes()[*rank].size() == 1;
}

inline Profile apply_hovers(const Profile& profile, const HoverPattern& pattern) {
  auto votes = profile.votes();
  std::vector<bool> touched(votes.size(), false);
  for (auto [i, c] : pattern.hovers) {
    if (i >= votes.size()) throw PreconditionError("hover pattern names a missing vote");
    if (touched[i]) throw PreconditionError("hover pattern names a vote twice");
    touched[i] = true;
    votes[i].order = c_hover(votes[i].order, c);
  }
  return Profile(profile.roster(), std::move(votes));
}

inline AxiomVerdict check_indifference_monotonicity(const Rule& rule, const Profile& profile, CandidateId c,
                                                    const HoverPattern& pattern) {
  for (auto& [i, target] : pattern.hovers)
    if (target != c) throw PreconditionError("hover pattern moves a candidate other than the winner");
  if (!rule(profile).contains(c)) throw PreconditionError("candidate is not a winner of the original profile");
  auto after = rule(apply_hovers(profile, pattern));
  if (after.contains(c)) return {Axiom::IndifferenceMonotonicity, {}};
  return {Axiom::IndifferenceMonotonicity, HoverCertificate{c, pattern, after}};
}

// ---------------------------------------------------------------------------
// Generalized proportionality for solid coalitions

// Every member of T is weakly above every candidate outside T.
inline bool is_t_supporting(const WeakOrder& order, CandidateSet targets) {
  std::size_t seen = 0;
  for (auto cls : order.classes()) {
    if (seen == targets.size()) return true;
    if (!cls.intersects(targets)) return false;
    seen += (cls & targets).size();
    // A mixed class must hold the last members of T.
    if (!cls.subset_of(targets) && seen < targets.size()) return false;
  }
  return true;
}

inline std::vector<std::size_t> t_supporting_voters(const Profile& profile, CandidateSet targets) {
  if (targets.empty()) throw PreconditionError("T must be nonempty");
  require_within_roster(profile, targets);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < profile.num_votes(); ++i)
    if (is_t_supporting(profile.votes()[i].order, targets)) out.push_back(i);
  return out;
}

// Candidates weakly above some member of T in this order.
inline CandidateSet closure_of(const WeakOrder& order, CandidateSet targets) {
  CandidateSet out, left = targets;
  for (auto cls : order.classes()) {
    if (left.empty()) break;
    out |= cls;
    left -= cls;
  }
  return out;
}

inline CandidateSet closure(const Profile& profile, const std::vector<std::size_t>& voters, CandidateSet targets) {
  CandidateSet out = targets;
  for (auto i : voters) {
    if (i >= profile.num_votes()) throw PreconditionError("voter index out of range");
    if (!is_t_supporting(profile.votes()[i].order, targets))
      throw PreconditionError("closure: voter " + std::to_string(i) + " is not T-supporting");
    out |= closure_of(profile.votes()[i].order, targets);
  }
  return out;
}

struct PscLimits {
  unsigned max_candidates = 16;
  unsigned max_seats = 8;
};

inline bool exceeds_share(const Rational& weight, unsigned level, const Rational& q, QuotaKind kind) {
  return kind == QuotaKind::Droop ? weight > q * level : weight >= q * level;
}

// Exhaustive over T and over the committee members V the group could be
// held to. A group S with closure meeting W only inside V, |V| < l, and
// weight above l quotas is a violation; the largest such S for fixed (T, V)
// is every T-supporting vote whose own closure meets W inside V.
inline AxiomVerdict check_generalized_psc(const Profile& profile, CandidateSet committee, unsigned seats,
                                          QuotaKind kind = QuotaKind::Droop, PscLimits limits = {}) {
  if (committee.size() != seats) throw PreconditionError("committee size differs from the seat count");
  require_within_roster(profile, committee);
  const unsigned m = profile.num_candidates();
  if (m > limits.max_candidates) throw PreconditionError("generalized PSC check is capped by candidate count");
  if (seats > limits.max_seats) throw PreconditionError("generalized PSC check is capped by seat count");
  require_tallyable(profile);
  const Rational q = quota(profile.total_weight(), seats, kind);

  const auto nv = profile.num_votes();
  std::vector<std::uint64_t> hits(nv);
  std::vector<bool> supports(nv);
  for (std::uint64_t tb = 1; tb < (std::uint64_t{1} << m); ++tb) {
    const CandidateSet targets(tb);
    for (std::size_t i = 0; i < nv; ++i) {
      const auto& order = profile.votes()[i].order;
      supports[i] = profile.votes()[i].weight > 0 && is_t_supporting(order, targets);
      if (supports[i]) hits[i] = (closure_of(order, targets) & committee).bits();
    }
    const unsigned top_level = std::min(targets.size(), seats + 1);
    for (unsigned level = 1; level <= top_level; ++level) {
      // Enumerate V within the committee with |V| = level - 1.
      const std::uint64_t w = committee.bits();
      for (std::uint64_t sub = w;; sub = (sub - 1) & w) {
        if (static_cast<unsigned>(std::popcount(sub)) == level - 1) {
          PscCertificate cert;
          for (std::size_t i = 0; i < nv; ++i) {
            if (supports[i] && (hits[i] & ~sub) == 0) {
              cert.voters.push_back(i);
              cert.weight += profile.votes()[i].weight;
            }
          }
          if (exceeds_share(cert.weight, level, q, kind)) {
            cert.coalition_targets = targets;
            cert.level = level;
            cert.allowed = CandidateSet(sub);
            cert.committee = committee;
            cert.seats = seats;
            cert.quota = kind;
            return {Axiom::GeneralizedPsc, cert};
          }
        }
        if (sub == 0) break;
      }
    }
  }
  return {Axiom::GeneralizedPsc, {}};
}

// For a coalition (S, T, l), s + r >= l before every STV round and at the
// end, where s counts elected members of closure_S(T) and r counts
// still-remaining members of T. Returns the first round where it fails.
inline std::optional<std::size_t> psc_invariant_violation(const Profile& profile, const StvTrace& trace,
                                                          const std::vector<std::size_t>& voters,
                                                          CandidateSet targets, unsigned level) {
  const auto u = closure(profile, voters, targets);
  auto holds = [&](CandidateSet elected, CandidateSet remaining) {
    return (elected & u).size() + (remaining & targets).size() >= level;
  };
  for (std::size_t r = 0; r < trace.rounds.size(); ++r)
    if (!holds(trace.rounds[r].elected, trace.rounds[r].remaining)) return r;
  CandidateSet final_committee;
  for (auto c : trace.elected_order) final_committee.insert(c);
  if (!holds(final_committee, {})) return trace.rounds.size();
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Certificate revalidation. Recomputes the violation from the definitions,
// sharing nothing with the checkers beyond the profile primitives.

inline bool certificate_holds(const Profile& profile, const AxiomVerdict& verdict, const Rule* rule = nullptr) {
  const Rational n = profile.total_weight();
  auto weight_of = [&](const std::vector<std::size_t>& voters) {
    Rational w = 0;
    for (auto i : voters) w += profile.votes().at(i).weight;
    return w;
  };
  auto distinct = [](std::vector<std::size_t> v) {
    std::sort(v.begin(), v.end());
    return std::adjacent_find(v.begin(), v.end()) == v.end();
  };
  return std::visit(
      [&](const auto& cert) -> bool {
        using T = std::decay_t<decltype(cert)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return false;
        } else if constexpr (std::is_same_v<T, CloneCertificate>) {
          if (!rule || !is_clone_set(profile, cert.clones)) return false;
          const auto winners = (*rule)(profile);
          auto keep = (profile.candidates() - cert.clones) | CandidateSet::single(cert.kept);
          const auto collapsed = lift((*rule)(restrict(profile, keep)), keep);
          if (winners != cert.winners || collapsed != cert.collapsed_winners) return false;
          for (auto c : profile.candidates() - cert.clones)
            if (winners.contains(c) != collapsed.contains(c)) return true;
          bool any_clone_wins = false;
          for (auto x : cert.clones) any_clone_wins = any_clone_wins || winners.contains(x);
          return collapsed.contains(cert.kept) != any_clone_wins;
        } else if constexpr (std::is_same_v<T, CohesiveCertificate>) {
          if (!distinct(cert.voters) || weight_of(cert.voters) * 2 <= n) return false;
          for (auto i : cert.voters) {
            const auto& order = profile.votes().at(i).order;
            for (auto d : profile.candidates())
              if (!order.weakly_prefers(cert.common, d)) return false;  // common must be top
            bool winner_top = true;
            for (auto d : profile.candidates()) winner_top = winner_top && order.weakly_prefers(cert.winner, d);
            if (winner_top) return false;
          }
          return true;
        } else if constexpr (std::is_same_v<T, UnanimousCertificate>) {
          if (!distinct(cert.voters) || weight_of(cert.voters) * 2 <= n) return false;
          for (auto i : cert.voters)
            if (profile.votes().at(i).order.top() != cert.top) return false;
          return !cert.top.contains(cert.winner);
        } else if constexpr (std::is_same_v<T, MajorityAlternativeCertificate>) {
          Rational w = 0;
          for (auto& v : profile.votes())
            if (v.order.top().contains(cert.winner)) w += v.weight;
          return !cert.majority_alternatives.empty() && w * 2 <= n &&
                 majority_alternatives(profile) == cert.majority_alternatives;
        } else if constexpr (std::is_same_v<T, HoverCertificate>) {
          if (!rule || !(*rule)(profile).contains(cert.candidate)) return false;
          auto after = (*rule)(apply_hovers(profile, cert.pattern));
          return after == cert.winners_after && !after.contains(cert.candidate);
        } else if constexpr (std::is_same_v<T, PscCertificate>) {
          if (cert.level == 0 || cert.coalition_targets.size() < cert.level) return false;
          if (!distinct(cert.voters)) return false;
          for (auto i : cert.voters)
            if (!is_t_supporting(profile.votes().at(i).order, cert.coalition_targets)) return false;
          const Rational q = quota(n, cert.seats, cert.quota);
          if (!exceeds_share(weight_of(cert.voters), cert.level, q, cert.quota)) return false;
          // closure by its definition: c is weakly above some t for some voter.
          CandidateSet u;
          for (auto i : cert.voters)
            for (auto c : profile.candidates())
              for (auto t : cert.coalition_targets)
                if (profile.votes()[i].order.weakly_prefers(c, t)) u.insert(c);
          return (cert.committee & u).size() < cert.level;
        }
      },
      verdict.certificate);
}

}  // namespace weakirv
