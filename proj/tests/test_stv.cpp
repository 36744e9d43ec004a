#include <gtest/gtest.h>

#include "support.hpp"

using namespace weakirv;
using namespace testing_support;

namespace {

std::vector<StvConfig> all_configs() {
  std::vector<StvConfig> out;
  for (auto q : {QuotaKind::Droop, QuotaKind::Hare})
    for (auto s : {Selection::HighestSupport, Selection::FirstByPriority})
      for (auto pay : {Payment::Gregory, Payment::UniformCap})
        for (auto e : {Elimination::LowestSupport, Elimination::LowestScore}) out.push_back({q, s, pay, e, {}});
  return out;
}

// Direct simulation of the approval budget process for unit-weight voters
// with Droop quota and Gregory payment; used to cross-check the engine.
std::vector<unsigned> reference_approval_stv(const std::vector<Classes>& ballots, unsigned m, unsigned k) {
  const Rational n(static_cast<long>(ballots.size()));
  const Rational q = n / (k + 1);
  std::vector<Rational> b(ballots.size(), Rational(1));
  std::vector<bool> live(m, true);
  std::vector<unsigned> elected;
  auto top = [&](const Classes& cls) {
    for (auto& c : cls) {
      std::vector<unsigned> here;
      for (auto x : c)
        if (live[x]) here.push_back(x);
      if (!here.empty()) return here;
    }
    return std::vector<unsigned>{};
  };
  while (elected.size() < k) {
    std::vector<Rational> support(m, Rational(0));
    for (std::size_t i = 0; i < ballots.size(); ++i)
      for (auto c : top(ballots[i])) support[c] += b[i];
    int best = -1;
    for (unsigned c = 0; c < m; ++c)
      if (live[c] && support[c] > q && (best < 0 || support[c] > support[best])) best = static_cast<int>(c);
    if (best >= 0) {
      Rational factor = (support[best] - q) / support[best];
      for (std::size_t i = 0; i < ballots.size(); ++i) {
        auto t = top(ballots[i]);
        if (std::find(t.begin(), t.end(), static_cast<unsigned>(best)) != t.end()) b[i] *= factor;
      }
      elected.push_back(static_cast<unsigned>(best));
      live[best] = false;
    } else {
      int worst = -1;
      for (unsigned c = 0; c < m; ++c)
        if (live[c] && (worst < 0 || support[c] < support[worst])) worst = static_cast<int>(c);
      live[worst] = false;
    }
  }
  return elected;
}

}  // namespace

TEST(Quota, Examples) {
  EXPECT_EQ(quota(Rational(5), 1, QuotaKind::Droop), Rational(5, 2));
  EXPECT_EQ(quota(Rational(6), 2, QuotaKind::Droop), Rational(2));
  EXPECT_EQ(quota(Rational(6), 1, QuotaKind::Hare), Rational(6));
  EXPECT_THROW(quota(Rational(0), 1, QuotaKind::Droop), PreconditionError);
  EXPECT_THROW(quota(Rational(1), 0, QuotaKind::Hare), PreconditionError);
  EXPECT_FALSE(electable(Rational(2), Rational(2), QuotaKind::Droop));
  EXPECT_TRUE(electable(Rational(2), Rational(2), QuotaKind::Hare));
}

TEST(Gregory, ReduceExamples) {
  using V = std::vector<Rational>;
  EXPECT_EQ(gregory_reduce(V{1, 1, 1}, {0, 1, 2}, Rational(2)), (V{Rational(1, 3), Rational(1, 3), Rational(1, 3)}));
  EXPECT_EQ(gregory_reduce(V{1, 1}, {0, 1}, Rational(2)), (V{0, 0}));
  EXPECT_EQ(gregory_reduce(V{1}, {0}, Rational(1, 2)), (V{Rational(1, 2)}));
  EXPECT_THROW(gregory_reduce(V{1}, {0}, Rational(2)), std::logic_error);
}

TEST(UniformCap, PaysExactlyQuota) {
  using V = std::vector<Rational>;
  Rational cap;
  auto pay = uniform_cap_payments(V{Rational(1, 4), 1, 1}, V{1, 1, 1}, Rational(3, 2), &cap);
  EXPECT_EQ(cap, Rational(5, 8));
  EXPECT_EQ(pay, (V{Rational(1, 4), Rational(5, 8), Rational(5, 8)}));
  auto weighted = uniform_cap_payments(V{1, 1}, V{2, 1}, Rational(3));
  EXPECT_EQ(weighted, (V{1, 1}));
}

TEST(ApprovalStv, SpoilerDroopElectsMajorityCandidateAtOnce) {
  auto p = fixture("spoiler.wvp");
  auto r = approval_stv(p, 1);
  EXPECT_EQ(r.committee, set_of(p, {"b"}));
  ASSERT_EQ(r.trace.rounds.size(), 1u);
  EXPECT_EQ(r.trace.rounds[0].action, StvRound::Action::Elect);
  EXPECT_TRUE(money_conserved(p, r.trace));
}

TEST(ApprovalStv, TwoSeatHandExample) {
  auto p = native("candidates: a,b,c\n3: a > b > c\n2: b > c > a\n1: c > b > a\n");
  auto r = approval_stv(p, 2);
  EXPECT_EQ(r.trace.quota, 2);
  EXPECT_EQ(r.committee, set_of(p, {"a", "b"}));
  ASSERT_GE(r.trace.rounds.size(), 2u);
  auto& first = r.trace.rounds[0];
  EXPECT_EQ(first.action, StvRound::Action::Elect);
  EXPECT_EQ(first.candidate, 0u);
  EXPECT_EQ(first.budgets[0], Rational(1, 3));
  // After a, the three a-voters back b with 1/3 each: 1 + 2 = 3 > 2.
  auto& second = r.trace.rounds[1];
  EXPECT_EQ(second.support[1], 3);
  EXPECT_EQ(second.action, StvRound::Action::Elect);
  EXPECT_EQ(second.candidate, 1u);
  EXPECT_TRUE(money_conserved(p, r.trace));
}

TEST(ApprovalStv, UnanimousProfile) {
  auto p = native("candidates: a,b,c\n4: b > {a,c}\n");
  EXPECT_EQ(approval_stv(p, 1).committee, set_of(p, {"b"}));
}

TEST(ApprovalStv, RejectsBadSeatCounts) {
  auto p = fixture("spoiler.wvp");
  EXPECT_THROW(approval_stv(p, 0), PreconditionError);
  EXPECT_THROW(approval_stv(p, 5), PreconditionError);
}

TEST(SplitStv, CohesiveHareSingleSeat) {
  auto p = fixture("cohesive.wvp");
  StvConfig c;
  c.quota = QuotaKind::Hare;
  auto r = split_stv(p, 1, c);
  EXPECT_EQ(r.committee, set_of(p, {"d"}));
  std::vector<CandidateId> actions;
  for (auto& round : r.trace.rounds) actions.push_back(round.candidate);
  EXPECT_EQ(actions, (std::vector<CandidateId>{0, 1, 2, 3}));
  EXPECT_EQ(r.trace.rounds.back().action, StvRound::Action::Elect);
}

TEST(SplitStv, HalvesTiedTopBallots) {
  auto p = native("candidates: a,b,c\n2: {a,b} > c\n1: c > a > b\n");
  StvConfig c;
  c.quota = QuotaKind::Hare;
  auto r = split_stv(p, 1, c);
  auto& first = r.trace.rounds[0];
  EXPECT_EQ(first.support, (std::vector<Rational>{1, 1, 1}));
  EXPECT_EQ(first.action, StvRound::Action::Eliminate);
  EXPECT_EQ(first.candidate, 0u);
  EXPECT_EQ(r.trace.rounds[1].candidate, 2u);
  EXPECT_EQ(r.committee, set_of(p, {"b"}));
}

TEST(SplitStv, MatchesApprovalOnLinearProfiles) {
  Rng rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const unsigned m = 2 + trial % 5;
    auto p = random_linear(m, 2 + trial % 8, 5, rng);
    const unsigned k = 1 + trial % m;
    for (auto& c : all_configs()) EXPECT_EQ(approval_stv(p, k, c).committee, split_stv(p, k, c).committee);
  }
}

TEST(ApprovalStv, MatchesReferenceSimulation) {
  Rng rng(37);
  int compared = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const unsigned m = 3 + trial % 4;
    const unsigned k = 1 + trial % 3;
    auto p = random_profile(m, 3 + trial % 9, 1, rng);
    // Skip profiles whose run meets a tie; the reference breaks them
    // differently.
    auto r = approval_stv(p, k);
    bool tie = false;
    for (auto& round : r.trace.rounds) {
      std::vector<Rational> vals;
      for (auto c : round.remaining) vals.push_back(round.support[c]);
      std::sort(vals.begin(), vals.end());
      if (round.action == StvRound::Action::Elect) {
        if (vals.size() > 1 && vals[vals.size() - 1] == vals[vals.size() - 2]) tie = true;
      } else if (vals.size() > 1 && vals[0] == vals[1]) {
        tie = true;
      }
    }
    if (tie) continue;
    std::vector<Classes> ballots;
    for (auto& [w, cls] : plain(p)) ballots.push_back(cls);
    EXPECT_EQ(r.trace.elected_order, reference_approval_stv(ballots, m, k));
    ++compared;
  }
  EXPECT_GT(compared, 50);
}

TEST(Stv, InvariantsUnderEveryConfig) {
  Rng rng(41);
  for (int trial = 0; trial < 150; ++trial) {
    const unsigned m = 2 + trial % 6;
    const unsigned k = 1 + trial % std::min(m, 3u);
    auto p = random_profile(m, 2 + trial % 10, 6, rng);
    for (auto& c : all_configs())
      for (auto rule : {StvRule::Approval, StvRule::Split}) {
        auto r = run_stv(p, k, c, rule);
        EXPECT_EQ(r.committee.size(), k);
        EXPECT_TRUE(money_conserved(p, r.trace));
        for (auto& round : r.trace.rounds)
          for (auto& b : round.budgets) {
            EXPECT_GE(b, 0);
            EXPECT_LE(b, 1);
          }
      }
  }
}

TEST(Stv, PriorityTieBreakPicksFavourite) {
  auto p = native("candidates: a,b,c\n1: a > b > c\n1: b > a > c\n1: c > a > b\n");
  StvConfig c;
  c.quota = QuotaKind::Hare;
  c.tiebreak = TieBreak::priority({2, 1, 0});
  // Supports tie at 1 = q for k=3; the favourite c is chosen first.
  auto r = approval_stv(p, 3, c);
  EXPECT_EQ(r.trace.elected_order.front(), 2u);
}

TEST(Stv, PscInvariantHoldsOnTraces) {
  Rng rng(43);
  for (int trial = 0; trial < 100; ++trial) {
    const unsigned m = 3 + trial % 4;
    const unsigned k = 1 + trial % 3;
    auto p = random_profile(m, 3 + trial % 8, 4, rng);
    auto r = approval_stv(p, k);
    const Rational q = r.trace.quota;
    for (std::uint64_t tb = 1; tb < (1u << m); ++tb) {
      CandidateSet targets(tb);
      auto voters = t_supporting_voters(p, targets);
      Rational w = 0;
      for (auto i : voters) w += p.votes()[i].weight;
      for (unsigned level = 1; level <= std::min(targets.size(), k); ++level)
        if (w > q * level) EXPECT_FALSE(psc_invariant_violation(p, r.trace, voters, targets, level));
    }
  }
}
