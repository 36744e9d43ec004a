#include <gtest/gtest.h>

#include <set>

#include "support.hpp"

using namespace weakirv;
using namespace testing_support;

namespace {

// Independent PUT oracle over plain ballots. Scores: approval gives every
// top member 1, split gives 1/t; a ballot indifferent over all remaining
// candidates gives nothing.
std::set<unsigned> oracle_put(const std::vector<std::pair<long, Classes>>& ballots, std::set<unsigned> remaining,
                              bool split) {
  if (remaining.size() == 1) return remaining;
  std::map<unsigned, Rational> score;
  for (auto c : remaining) score[c] = 0;
  for (auto& [w, classes] : ballots) {
    std::vector<unsigned> top;
    std::size_t covered = 0;
    for (auto& cls : classes) {
      std::vector<unsigned> here;
      for (auto c : cls)
        if (remaining.count(c)) here.push_back(c);
      if (here.empty()) continue;
      if (top.empty()) top = here;
      covered += here.size();
    }
    if (top.size() == remaining.size()) continue;
    Rational share = split ? Rational(w) / static_cast<long>(top.size()) : Rational(w);
    for (auto c : top) score[c] += share;
  }
  Rational low = score.begin()->second;
  for (auto& [c, s] : score) low = std::min(low, s);
  std::set<unsigned> winners;
  for (auto& [c, s] : score) {
    if (s != low) continue;
    auto next = remaining;
    next.erase(c);
    auto sub = oracle_put(ballots, next, split);
    winners.insert(sub.begin(), sub.end());
  }
  return winners;
}

std::set<unsigned> as_set(CandidateSet s) {
  auto v = s.to_vector();
  return {v.begin(), v.end()};
}

std::set<unsigned> all_of(unsigned m) {
  std::set<unsigned> s;
  for (unsigned c = 0; c < m; ++c) s.insert(c);
  return s;
}

// Textbook IRV on linear ballots: plurality counts, every tie branch.
std::set<unsigned> classic_irv(const std::vector<std::pair<long, std::vector<unsigned>>>& ballots,
                               std::set<unsigned> remaining) {
  if (remaining.size() == 1) return remaining;
  std::map<unsigned, long> tally;
  for (auto c : remaining) tally[c] = 0;
  for (auto& [w, ranking] : ballots)
    for (auto c : ranking)
      if (remaining.count(c)) {
        tally[c] += w;
        break;
      }
  long low = tally.begin()->second;
  for (auto& [c, t] : tally) low = std::min(low, t);
  std::set<unsigned> out;
  for (auto& [c, t] : tally)
    if (t == low) {
      auto next = remaining;
      next.erase(c);
      auto sub = classic_irv(ballots, next);
      out.insert(sub.begin(), sub.end());
    }
  return out;
}

}  // namespace

TEST(Put, Spoiler) {
  auto p = fixture("spoiler.wvp");
  EXPECT_EQ(approval_irv(p), set_of(p, {"a"}));
  EXPECT_EQ(split_irv(p), set_of(p, {"b"}));
}

TEST(Put, NaiveOnFixtures) {
  auto f8 = fixture("clones.wvp");
  EXPECT_EQ(put_winners_naive(f8, ScoringSystem::split()), set_of(f8, {"c", "c'"}));
  EXPECT_EQ(split_irv(f8), set_of(f8, {"c", "c'"}));
  auto f9 = fixture("condorcet.wvp");
  EXPECT_EQ(put_winners_naive(f9, ScoringSystem::approval()), set_of(f9, {"b"}));
}

TEST(Put, SingleCandidate) {
  auto p = native("candidates: x\n3: x\n");
  EXPECT_EQ(approval_irv(p), CandidateSet::single(0));
  EXPECT_EQ(put_winners_naive(p, ScoringSystem::split()), CandidateSet::single(0));
}

TEST(Put, TwoCandidatesMajority) {
  auto p = native("candidates: x,y\n3: x > y\n2: y > x\n4: {x,y}\n");
  EXPECT_EQ(approval_irv(p), CandidateSet::single(0));
  auto tie = native("candidates: x,y\n2: x > y\n2: y > x\n");
  EXPECT_EQ(split_irv(tie), CandidateSet::first_n(2));
}

TEST(Put, CohesiveApprovalDiffersFromLabel) {
  // d goes first (18), then a (29 against 32, 32); b and c then tie.
  auto p = fixture("cohesive.wvp");
  auto w = approval_irv(p);
  EXPECT_TRUE(w.subset_of(set_of(p, {"a", "b", "c"})));
  EXPECT_EQ(w, set_of(p, {"b", "c"}));
  EXPECT_EQ(as_set(w), oracle_put(plain(p), all_of(4), false));
}

TEST(Put, RejectsEmptyAndOversized) {
  Profile empty({"a", "b"}, {});
  EXPECT_THROW(approval_irv(empty), PreconditionError);
  std::vector<std::string> big;
  for (int i = 0; i < 21; ++i) big.push_back("c" + std::to_string(i));
  std::vector<CandidateId> ranking(21);
  std::iota(ranking.begin(), ranking.end(), 0);
  Profile wide(big, {{Rational(1), WeakOrder::linear(ranking)}});
  EXPECT_THROW(approval_irv(wide), PreconditionError);
  EXPECT_EQ(approval_irv(wide, {21}), CandidateSet::single(0));
}

TEST(Put, MatchesNaiveAndOracleOnRandomProfiles) {
  Rng rng(101);
  for (int trial = 0; trial < 400; ++trial) {
    const unsigned m = 2 + trial % 5;
    auto p = random_profile(m, 1 + trial % 12, 4, rng);
    for (bool split : {false, true}) {
      auto sys = split ? ScoringSystem::split() : ScoringSystem::approval();
      auto fast = put_winners(p, sys);
      EXPECT_EQ(fast, put_winners_naive(p, sys));
      EXPECT_EQ(as_set(fast), oracle_put(plain(p), all_of(m), split));
    }
  }
}

TEST(Put, AgreesWithClassicIrvOnLinearProfiles) {
  Rng rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const unsigned m = 2 + trial % 6;
    auto p = random_linear(m, 1 + trial % 9, 6, rng);
    std::vector<std::pair<long, std::vector<unsigned>>> ballots;
    for (auto& [w, cls] : plain(p)) {
      std::vector<unsigned> r;
      for (auto& c : cls) r.push_back(c.at(0));
      ballots.emplace_back(w, r);
    }
    auto want = classic_irv(ballots, all_of(m));
    EXPECT_EQ(as_set(approval_irv(p)), want);
    EXPECT_EQ(as_set(split_irv(p)), want);
    EXPECT_EQ(as_set(linear_irv(p)), want);
  }
}

TEST(Put, RespectsUnanimousMajorities) {
  Rng rng(13);
  for (int trial = 0; trial < 300; ++trial) {
    const unsigned m = 3 + trial % 4;
    auto base = random_profile(m, 2 + trial % 5, 3, rng);
    // Add a block sharing one top set with more than half the weight.
    auto top = random_order(m, rng).top();
    if (top.size() == m) continue;
    auto votes = base.votes();
    std::vector<CandidateSet> tail{top};
    for (auto c : CandidateSet::first_n(m) - top) tail.push_back(CandidateSet::single(c));
    votes.push_back({base.total_weight() + 1, WeakOrder(tail)});
    Profile p(base.roster(), votes);
    EXPECT_TRUE(approval_irv(p).subset_of(top));
    EXPECT_TRUE(split_irv(p).subset_of(top));
  }
}

TEST(Put, ScaleInvariance) {
  Rng rng(19);
  for (int trial = 0; trial < 150; ++trial) {
    auto p = random_profile(2 + trial % 5, 1 + trial % 7, 5, rng);
    auto scaled = scale_weights(p, Rational(7, 3));
    for (auto sys : {ScoringSystem::approval(), ScoringSystem::split(), ScoringSystem::borda_style()})
      EXPECT_EQ(put_winners(p, sys), put_winners(scaled, sys));
  }
}

TEST(Trace, SpoilerApproval) {
  auto p = fixture("spoiler.wvp");
  auto t = elimination_trace(p, ScoringSystem::approval(), TieBreak::lexicographic());
  EXPECT_EQ(t.elimination_order(), (std::vector<CandidateId>{2, 3, 1}));
  EXPECT_EQ(t.winner, 0u);
  EXPECT_EQ(t.rounds[0].scores[2], 1);
}

TEST(Trace, CondorcetSplit) {
  auto p = fixture("condorcet.wvp");
  auto t = elimination_trace(p, ScoringSystem::split());
  EXPECT_EQ(t.elimination_order(), (std::vector<CandidateId>{1, 3, 2}));
  EXPECT_EQ(t.winner, 0u);
  EXPECT_EQ(split_irv(p), set_of(p, {"a"}));
  EXPECT_EQ(approval_irv(p), set_of(p, {"b"}));
}

TEST(Trace, CohesiveSplit) {
  auto p = fixture("cohesive.wvp");
  auto t = elimination_trace(p, ScoringSystem::split());
  EXPECT_EQ(t.elimination_order(), (std::vector<CandidateId>{0, 1, 2}));
  EXPECT_EQ(t.winner, 3u);
  EXPECT_EQ(t.rounds[1].lowest, set_of(p, {"b", "c"}));
  EXPECT_EQ(split_irv(p), set_of(p, {"d"}));
}

TEST(Trace, PriorityTieBreak) {
  auto p = fixture("cohesive.wvp");
  // Least favoured goes first: b is last in the list, so b before c.
  auto t = elimination_trace(p, ScoringSystem::split(), TieBreak::priority({3, 2, 1, 0}));
  EXPECT_EQ(t.elimination_order(), (std::vector<CandidateId>{0, 1, 2}));
  auto u = elimination_trace(p, ScoringSystem::split(), TieBreak::priority({1}));
  EXPECT_EQ(u.rounds[1].eliminated, 2u);
}

TEST(Trace, WinnerAlwaysInPutSet) {
  Rng rng(23);
  for (int trial = 0; trial < 300; ++trial) {
    const unsigned m = 2 + trial % 5;
    auto p = random_profile(m, 1 + trial % 6, 3, rng);
    auto order = random_ranking(m, rng);
    for (auto sys : {ScoringSystem::approval(), ScoringSystem::split(), ScoringSystem::borda_style()}) {
      auto put = put_winners(p, sys);
      for (auto tb : {TieBreak::lexicographic(), TieBreak::priority(order)}) {
        auto t = elimination_trace(p, sys, tb);
        EXPECT_TRUE(put.contains(t.winner));
        for (auto& r : t.rounds) EXPECT_TRUE(r.lowest.contains(r.eliminated));
      }
    }
  }
}

TEST(Rules, BaldwinWeakUsesBordaVectors) {
  // Scores with the shifted vector: a 2+0, b 1+2, c 0+1, so c goes first.
  auto p = native("candidates: a,b,c\n1: a > b > c\n1: b > c > a\n");
  auto t = elimination_trace(p, ScoringSystem::borda_style());
  EXPECT_EQ(t.rounds[0].scores, (std::vector<Rational>{2, 3, 1}));
  EXPECT_EQ(t.rounds[0].eliminated, 2u);
  EXPECT_EQ(baldwin_weak(p), CandidateSet::first_n(2));
}

TEST(Rules, LinearIrvNeedsLinearProfile) {
  EXPECT_THROW(linear_irv(fixture("spoiler.wvp")), PreconditionError);
}
