#pragma once

#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "weakirv/profile.hpp"
#include "weakirv/scoring.hpp"

namespace weakirv {

struct EngineOptions {
  // The memo table has up to 2^m entries; larger rosters are refused.
  unsigned max_candidates = 20;
};

// How a single concrete run resolves ties. Lexicographic favours low roster
// indices: among tied lowest scorers it eliminates the lowest index, among
// tied highest it selects the lowest index. A priority list orders candidates
// from most to least favoured; the least favoured tied candidate is
// eliminated and the most favoured is selected.
class TieBreak {
 public:
  static TieBreak lexicographic() { return TieBreak(); }
  static TieBreak priority(std::vector<CandidateId> order) {
    TieBreak t;
    t.priority_ = std::move(order);
    return t;
  }

  bool is_lexicographic() const { return priority_.empty(); }
  const std::vector<CandidateId>& order() const { return priority_; }

  CandidateId eliminate(CandidateSet tied) const {
    if (tied.empty()) throw PreconditionError("tie-break over an empty set");
    if (priority_.empty()) return tied.front();
    // Unlisted candidates rank below every listed one.
    if (auto rest = tied - listed(); !rest.empty()) return rest.front();
    for (auto it = priority_.rbegin(); it != priority_.rend(); ++it)
      if (tied.contains(*it)) return *it;
    return tied.front();
  }

  CandidateId select(CandidateSet tied) const {
    if (tied.empty()) throw PreconditionError("tie-break over an empty set");
    if (priority_.empty()) return tied.front();
    for (auto c : priority_)
      if (tied.contains(c)) return c;
    return (tied - listed()).front();
  }

  std::string describe(const Profile& p) const {
    if (priority_.empty()) return "lexicographic";
    std::string out = "priority:";
    for (std::size_t i = 0; i < priority_.size(); ++i) out += (i ? "," : "") + p.name(priority_[i]);
    return out;
  }

 private:
  CandidateSet listed() const {
    CandidateSet s;
    for (auto c : priority_) s.insert(c);
    return s;
  }

  std::vector<CandidateId> priority_;
};

inline void require_tallyable(const Profile& profile) {
  if (profile.num_votes() == 0 || profile.total_weight() == 0)
    throw PreconditionError("profile has no voting weight");
}

inline CandidateSet lowest_scoring(const std::vector<Rational>& scores, CandidateSet remaining) {
  CandidateSet low;
  const Rational* best = nullptr;
  for (auto c : remaining) {
    if (!best || scores[c] < *best) {
      best = &scores[c];
      low = CandidateSet::single(c);
    } else if (scores[c] == *best) {
      low.insert(c);
    }
  }
  return low;
}

namespace detail {

class PutEngine {
 public:
  PutEngine(const Profile& profile, const ScoringSystem& system) : profile_(profile), system_(system) {}

  CandidateSet winners(CandidateSet remaining) {
    if (remaining.size() == 1) return remaining;
    auto it = memo_.find(remaining.bits());
    if (it != memo_.end()) return CandidateSet(it->second);
    auto scores = positional_scores_within(profile_, system_, remaining);
    CandidateSet out;
    for (auto c : lowest_scoring(scores, remaining)) out |= winners(remaining - CandidateSet::single(c));
    memo_.emplace(remaining.bits(), out.bits());
    return out;
  }

 private:
  const Profile& profile_;
  const ScoringSystem& system_;
  std::unordered_map<std::uint64_t, std::uint64_t> memo_;
};

inline CandidateSet naive_winners(const Profile& profile, const ScoringSystem& system, CandidateSet remaining) {
  if (remaining.size() == 1) return remaining;
  auto scores = positional_scores_within(profile, system, remaining);
  CandidateSet out;
  for (auto c : lowest_scoring(scores, remaining))
    out |= naive_winners(profile, system, remaining - CandidateSet::single(c));
  return out;
}

}  // namespace detail

// Winner set of the elimination scoring rule for `system` under
// parallel-universe tie-breaking: the union of the winners over every way of
// resolving elimination ties. Memoized on the remaining candidate subset.
inline CandidateSet put_winners(const Profile& profile, const ScoringSystem& system, EngineOptions options = {}) {
  require_tallyable(profile);
  if (profile.num_candidates() > options.max_candidates)
    throw PreconditionError("elimination engine is capped at " + std::to_string(options.max_candidates) +
                            " candidates");
  detail::PutEngine engine(profile, system);
  return engine.winners(profile.candidates());
}

// Literal unmemoized recursion; exponential, kept as a test oracle.
inline CandidateSet put_winners_naive(const Profile& profile, const ScoringSystem& system) {
  require_tallyable(profile);
  return detail::naive_winners(profile, system, profile.candidates());
}

struct EliminationRound {
  CandidateSet remaining;
  std::vector<Rational> scores;  // indexed by candidate id; meaningful on `remaining`
  CandidateSet lowest;
  CandidateId eliminated;
};

struct EliminationTrace {
  std::string system;
  TieBreak tiebreak;
  std::vector<EliminationRound> rounds;
  CandidateId winner = 0;

  std::vector<CandidateId> elimination_order() const {
    std::vector<CandidateId> out;
    for (auto& r : rounds) out.push_back(r.eliminated);
    return out;
  }
};

// One concrete elimination sequence; ties resolved by `tiebreak`.
inline EliminationTrace elimination_trace(const Profile& profile, const ScoringSystem& system,
                                          const TieBreak& tiebreak = TieBreak::lexicographic()) {
  require_tallyable(profile);
  EliminationTrace trace{system.name(), tiebreak, {}, 0};
  auto remaining = profile.candidates();
  while (remaining.size() > 1) {
    auto scores = positional_scores_within(profile, system, remaining);
    auto low = lowest_scoring(scores, remaining);
    auto out = tiebreak.eliminate(low);
    trace.rounds.push_back({remaining, std::move(scores), low, out});
    remaining.erase(out);
  }
  trace.winner = remaining.front();
  return trace;
}

inline CandidateSet approval_irv(const Profile& profile, EngineOptions options = {}) {
  return put_winners(profile, ScoringSystem::approval(), options);
}

inline CandidateSet split_irv(const Profile& profile, EngineOptions options = {}) {
  return put_winners(profile, ScoringSystem::split(), options);
}

inline CandidateSet baldwin_weak(const Profile& profile, EngineOptions options = {}) {
  return put_winners(profile, ScoringSystem::borda_style(), options);
}

// Classic plurality-elimination IRV; defined on linear profiles only.
inline CandidateSet linear_irv(const Profile& profile, EngineOptions options = {}) {
  if (!profile.is_linear()) throw PreconditionError("linear IRV needs a profile of linear orders");
  return put_winners(profile, ScoringSystem::approval(), options);
}

}  // namespace weakirv
