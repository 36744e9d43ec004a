#include <gtest/gtest.h>

#include "support.hpp"

using namespace weakirv;
using namespace testing_support;

namespace {

ParseError::Kind error_kind(const std::string& text, ProfileFormat f = ProfileFormat::Native, ParseOptions o = {}) {
  try {
    parse_profile(text, f, o);
  } catch (const ParseError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error for: " << text;
  return ParseError::Kind::Syntax;
}

std::vector<std::string> roster4() { return {"a", "b", "c", "d"}; }

MarkGrid grid(std::initializer_list<std::pair<const char*, unsigned>> marks) {
  MarkGrid g;
  g.ballot_id = "x";
  for (auto& [n, r] : marks) g.marks.emplace(n, r);
  return g;
}

Profile random_weighted(unsigned m, unsigned ballots, Rng& rng) {
  std::uniform_int_distribution<int> num(1, 12), den(1, 4);
  std::vector<Vote> votes;
  for (unsigned i = 0; i < ballots; ++i) votes.push_back({Rational(num(rng), den(rng)), random_order(m, rng)});
  return Profile(letters(m), std::move(votes));
}

}  // namespace

TEST(Native, SpoilerFirstBallot) {
  auto p = native("candidates: a,b,c,d\n1: {a,b} > c > d\n");
  ASSERT_EQ(p.num_votes(), 1u);
  EXPECT_EQ(p.votes()[0].order, WeakOrder({set_of(p, {"a", "b"}), set_of(p, {"c"}), set_of(p, {"d"})}));
  EXPECT_EQ(p.votes()[0].weight, 1);
}

TEST(Native, CommentsBlankLinesAndDecimals) {
  auto p = native("# header\ncandidates: a, b\n\n0.5: a > b   # half\n1/2: b\n");
  EXPECT_EQ(p.total_weight(), 1);
  EXPECT_EQ(p.votes()[1].order.classes().back(), set_of(p, {"a"}));
}

TEST(Native, Errors) {
  using K = ParseError::Kind;
  EXPECT_EQ(error_kind("candidates: a,b\n1: a > a\n"), K::DuplicateCandidate);
  EXPECT_EQ(error_kind("candidates: a,b\n1: a > z\n"), K::UnknownCandidate);
  EXPECT_EQ(error_kind("candidates: a,b\n0: a > b\n"), K::BadWeight);
  EXPECT_EQ(error_kind("candidates: a,b\n-2: a > b\n"), K::BadWeight);
  EXPECT_EQ(error_kind("candidates: a,b\nx: a > b\n"), K::BadWeight);
  EXPECT_EQ(error_kind("1: a > b\n"), K::MissingRoster);
  EXPECT_EQ(error_kind(""), K::MissingRoster);
  EXPECT_EQ(error_kind("candidates: a,a\n"), K::DuplicateCandidate);
  EXPECT_EQ(error_kind("candidates: a,b\n1: {a,b > c\n"), K::Syntax);
  EXPECT_EQ(error_kind("candidates: a,b\n1 a > b\n"), K::Syntax);
  EXPECT_EQ(error_kind("candidates: a,b\n1: a\n", ProfileFormat::Native, {Truncation::Reject, true}), K::Truncated);
}

TEST(Native, TruncationCompletesWithBottomClass) {
  auto p = native("candidates: a,b,c,d\n2: b\n");
  EXPECT_EQ(p.votes()[0].order, WeakOrder({set_of(p, {"b"}), set_of(p, {"a", "c", "d"})}));
}

TEST(Native, DuplicatesMergedUnlessAsked) {
  const std::string text = "candidates: a,b\n1: a > b\n2: a > b\n1: b > a\n";
  EXPECT_EQ(native(text).num_votes(), 2u);
  EXPECT_EQ(parse_profile(text, ProfileFormat::Native, {Truncation::Reject, false}).num_votes(), 3u);
}

TEST(PrefLib, OrdersWithTies) {
  auto p = parse_profile("3: 1,{2,3},4\n", ProfileFormat::PrefLib);
  EXPECT_EQ(p.roster(), (std::vector<std::string>{"c1", "c2", "c3", "c4"}));
  EXPECT_EQ(p.votes()[0].weight, 3);
  EXPECT_EQ(p.votes()[0].order, WeakOrder({set_of(p, {"c1"}), set_of(p, {"c2", "c3"}), set_of(p, {"c4"})}));
}

TEST(PrefLib, HeaderNamesAndTruncation) {
  auto p = parse_profile(
      "# FILE NAME: x.toi\n# NUMBER ALTERNATIVES: 3\n# ALTERNATIVE NAME 1: ann\n# ALTERNATIVE NAME 2: bob\n"
      "# ALTERNATIVE NAME 3: cy\n4: 2\n1: {1,3},2\n",
      ProfileFormat::PrefLib);
  EXPECT_EQ(p.roster(), (std::vector<std::string>{"ann", "bob", "cy"}));
  ASSERT_EQ(p.num_votes(), 2u);
  EXPECT_EQ(p.total_weight(), 5);
  auto bob = std::find_if(p.votes().begin(), p.votes().end(), [](auto& v) { return v.weight == 4; });
  EXPECT_EQ(bob->order, WeakOrder({set_of(p, {"bob"}), set_of(p, {"ann", "cy"})}));
}

TEST(PrefLib, LegacyLayout) {
  auto p = parse_profile("3\n1,x\n2,y\n3,z\n6,6,3\n2,1,{2,3}\n3,3,2,1\n1,2,1,3\n", ProfileFormat::PrefLib);
  EXPECT_EQ(p.roster(), (std::vector<std::string>{"x", "y", "z"}));
  EXPECT_EQ(p.total_weight(), 6);
  EXPECT_EQ(p.num_votes(), 3u);
}

TEST(PrefLib, Errors) {
  using K = ParseError::Kind;
  EXPECT_EQ(error_kind("2: 1,1\n", ProfileFormat::PrefLib), K::DuplicateCandidate);
  EXPECT_EQ(error_kind("# NUMBER ALTERNATIVES: 2\n1: 1,3\n", ProfileFormat::PrefLib), K::UnknownCandidate);
  EXPECT_EQ(error_kind("1: 1,a\n", ProfileFormat::PrefLib), K::UnknownCandidate);
  EXPECT_EQ(error_kind("0: 1,2\n", ProfileFormat::PrefLib), K::BadWeight);
  EXPECT_EQ(error_kind("1: 1,{2\n", ProfileFormat::PrefLib), K::Syntax);
  EXPECT_EQ(error_kind("1: 1,\n", ProfileFormat::PrefLib), K::Syntax);
}

TEST(Serialize, ClonesCanonicalLines) {
  auto text = serialize_profile(canonicalize(fixture("clones.wvp")), ProfileFormat::Native);
  std::vector<std::string> weights;
  for (auto& l : detail::lines_of(text))
    if (!l.empty() && l.rfind("candidates:", 0) != 0) weights.push_back(l.substr(0, l.find(':')));
  std::sort(weights.begin(), weights.end());
  EXPECT_EQ(weights, (std::vector<std::string>{"2", "4", "9"}));
}

TEST(Serialize, EmptyProfileRefused) {
  Profile empty({"a", "b"}, {});
  EXPECT_THROW(serialize_profile(empty, ProfileFormat::Native), PreconditionError);
  EXPECT_THROW(serialize_profile(empty, ProfileFormat::PrefLib), PreconditionError);
}

TEST(Serialize, RationalWeights) {
  auto p = native("candidates: a,b\n0.5: a > b\n");
  auto text = serialize_profile(p, ProfileFormat::Native);
  EXPECT_NE(text.find("\n1/2: a > b\n"), std::string::npos);
  EXPECT_NE(serialize_profile(p, ProfileFormat::PrefLib).find("1/2: 1,2"), std::string::npos);
}

TEST(Serialize, FuzzedRoundTrips) {
  Rng rng(1234);
  for (int trial = 0; trial < 500; ++trial) {
    auto p = canonicalize(random_weighted(1 + trial % 8, 1 + trial % 11, rng));
    for (auto f : {ProfileFormat::Native, ProfileFormat::PrefLib}) {
      auto back = parse_profile(serialize_profile(p, f), f, {Truncation::Reject, true});
      EXPECT_EQ(back, p);
      EXPECT_EQ(serialize_profile(back, f), serialize_profile(p, f));
    }
  }
}

TEST(Marks, DocumentedExamples) {
  auto two_top = interpret_mark_grid(grid({{"a", 1}, {"b", 1}, {"c", 2}}), roster4());
  EXPECT_EQ(two_top.kind, BallotClassification::Kind::WeakOrder);
  EXPECT_EQ(two_top.indifferences, 1u);
  ASSERT_TRUE(two_top.order);
  EXPECT_EQ(*two_top.order, WeakOrder({CandidateSet::first_n(2), CandidateSet::single(2), CandidateSet::single(3)}));
  EXPECT_TRUE(two_top.partial_count.empty());

  auto twice = interpret_mark_grid(grid({{"a", 1}, {"a", 2}}), roster4());
  EXPECT_EQ(twice.kind, BallotClassification::Kind::Invalid);
  EXPECT_EQ(twice.reason, InvalidReason::DuplicateCandidateRanks);
  EXPECT_FALSE(twice.order);

  auto linear = interpret_mark_grid(grid({{"a", 1}, {"b", 2}, {"c", 3}}), roster4());
  EXPECT_EQ(linear.kind, BallotClassification::Kind::Linear);
  EXPECT_EQ(linear.indifferences, 0u);
  EXPECT_EQ(linear.partial_count, (std::vector<CandidateId>{0, 1, 2}));
}

TEST(Marks, GapsAndPolicies) {
  auto g = grid({{"b", 1}, {"d", 3}});
  auto lenient = interpret_mark_grid(g, roster4());
  EXPECT_EQ(lenient.kind, BallotClassification::Kind::Linear);
  EXPECT_EQ(*lenient.order, WeakOrder({CandidateSet::single(1), CandidateSet::single(3), CandidateSet::first_n(3) -
                                                                                          CandidateSet::single(1)}));
  auto strict = interpret_mark_grid(g, roster4(), {true, true});
  EXPECT_EQ(strict.kind, BallotClassification::Kind::Invalid);
  EXPECT_EQ(strict.reason, InvalidReason::OtherStructural);
  auto open = interpret_mark_grid(g, roster4(), {false, false});
  EXPECT_EQ(open.order->num_classes(), 2u);
}

TEST(Marks, StructuralProblems) {
  EXPECT_EQ(interpret_mark_grid(grid({}), roster4()).reason, InvalidReason::Empty);
  EXPECT_EQ(interpret_mark_grid(grid({{"z", 1}}), roster4()).reason, InvalidReason::OtherStructural);
  EXPECT_EQ(interpret_mark_grid(grid({{"a", 0}}), roster4()).reason, InvalidReason::OtherStructural);
  auto capped = grid({{"a", 1}, {"b", 4}});
  capped.max_rank = 3;
  EXPECT_EQ(interpret_mark_grid(capped, roster4()).reason, InvalidReason::OtherStructural);
}

TEST(Marks, PartialCountAgreesWithPrefix) {
  Rng rng(77);
  std::uniform_int_distribution<unsigned> rank(1, 5), cand(0, 5), count(0, 7);
  const auto roster = letters(6);
  for (int trial = 0; trial < 3000; ++trial) {
    MarkGrid g;
    for (unsigned i = count(rng); i > 0; --i) g.marks.emplace(roster[cand(rng)], rank(rng));
    auto r = interpret_mark_grid(g, roster);
    if (r.kind == BallotClassification::Kind::Invalid) {
      EXPECT_TRUE(r.reason.has_value());
      EXPECT_FALSE(r.order);
      continue;
    }
    ASSERT_TRUE(r.order);
    EXPECT_EQ(r.kind == BallotClassification::Kind::Linear, r.indifferences == 0);
    const auto& cls = r.order->classes();
    for (std::size_t i = 0; i < r.partial_count.size(); ++i) EXPECT_EQ(cls[i], CandidateSet::single(r.partial_count[i]));
    if (r.partial_count.size() < cls.size()) {
      auto next = cls[r.partial_count.size()];
      const bool bottom = r.partial_count.size() + 1 == cls.size() && r.indifferences == 0;
      EXPECT_TRUE(next.size() > 1 || bottom);
    }
  }
}

TEST(Marks, CsvRoundTrip) {
  const std::string csv = "ballot_id,candidate,rank\nb1,a,1\nb1,b,1\nb2,c,2\nb1,c,2\nb2,c,2\n";
  auto grids = parse_mark_grids(csv);
  ASSERT_EQ(grids.size(), 2u);
  EXPECT_EQ(grids[0].ballot_id, "b1");
  EXPECT_EQ(grids[0].marks.size(), 3u);
  EXPECT_EQ(grids[1].marks.size(), 1u);
  EXPECT_EQ(parse_mark_grids(write_mark_grids(grids)).size(), 2u);
  EXPECT_EQ(write_mark_grids(parse_mark_grids(write_mark_grids(grids))), write_mark_grids(grids));
  EXPECT_THROW(parse_mark_grids("id,cand,rank\n"), ParseError);
  EXPECT_THROW(parse_mark_grids("ballot_id,candidate,rank\nb1,a\n"), ParseError);
  EXPECT_THROW(parse_mark_grids("ballot_id,candidate,rank\nb1,a,x\n"), ParseError);
  EXPECT_THROW(parse_mark_grids(""), ParseError);
}
