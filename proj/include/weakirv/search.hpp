#pragma once

#include <atomic>
#include <exception>
#include <limits>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

#include "weakirv/axioms.hpp"
#include "weakirv/random.hpp"

namespace weakirv {

struct SearchBounds {
  unsigned min_candidates = 3;
  unsigned max_candidates = 5;
  unsigned max_ballots = 12;  // weighted ballots per profile
  unsigned max_weight = 10;
  std::size_t attempts = 10000;
  unsigned workers = 1;
};

struct Counterexample {
  Profile profile;
  AxiomVerdict verdict;
  std::size_t attempt = 0;
};

inline Profile random_weak_profile(unsigned m, unsigned ballots, unsigned max_weight, Rng& rng) {
  std::vector<std::string> roster;
  for (unsigned c = 0; c < m; ++c) roster.push_back(std::string(1, static_cast<char>('a' + c)));
  const double p = std::uniform_real_distribution<double>(0.0, 0.6)(rng);
  std::uniform_int_distribution<unsigned> weight(1, max_weight);
  std::vector<Vote> votes;
  for (unsigned b = 0; b < ballots; ++b)
    votes.push_back({Rational(weight(rng)), merge_adjacent(random_ranking(m, rng), p, rng)});
  return Profile(std::move(roster), std::move(votes));
}

// Two camps: with probability `share` a vote's top class becomes x plus
// others, otherwise y plus others. Other candidates join with probability
// `widen`; neither camp tops the other's leader. x-camp votes may rank y
// second and y-camp votes may rank x last.
inline Profile plant_camps(const Profile& profile, CandidateId x, CandidateId y, double share, double widen,
                           Rng& rng) {
  std::bernoulli_distribution pick(share), join(widen), coin(0.5);
  auto votes = profile.votes();
  for (auto& v : votes) {
    const bool with_x = pick(rng);
    const auto lead = with_x ? x : y, rival = with_x ? y : x;
    CandidateSet top = CandidateSet::single(lead);
    for (auto c : profile.candidates())
      if (c != lead && c != rival && join(rng)) top.insert(c);
    const bool move_rival = coin(rng);
    std::vector<CandidateSet> classes{top};
    if (move_rival && with_x) classes.push_back(CandidateSet::single(rival));
    for (auto cls : v.order.classes()) {
      cls -= top;
      if (move_rival) cls.erase(rival);
      if (!cls.empty()) classes.push_back(cls);
    }
    if (move_rival && !with_x) classes.push_back(CandidateSet::single(rival));
    v.order = WeakOrder(std::move(classes));
  }
  return Profile(profile.roster(), std::move(votes));
}

namespace detail {

inline std::optional<AxiomVerdict> search_attempt(const RuleSpec& spec, const Rule& rule, Axiom axiom,
                                                  const SearchBounds& b, Rng& rng, Profile& out) {
  std::uniform_int_distribution<unsigned> ballots(2, std::max(2u, b.max_ballots));
  if (axiom == Axiom::IndependenceOfClones) {
    const unsigned lo = std::max(2u, b.min_candidates - 1);
    const unsigned base_m = std::uniform_int_distribution<unsigned>(lo, std::max(lo, b.max_candidates - 1))(rng);
    auto base = random_weak_profile(base_m, ballots(rng), b.max_weight, rng);
    const auto c = std::uniform_int_distribution<unsigned>(0, base_m - 1)(rng);
    const unsigned count =
        std::uniform_int_distribution<unsigned>(2, std::max(2u, b.max_candidates - base_m + 1))(rng);
    auto cloned = expand_clone(base, c, count, rng());
    auto members = cloned.clones.to_vector();
    auto kept = members[std::uniform_int_distribution<std::size_t>(0, members.size() - 1)(rng)];
    out = cloned.profile;
    return check_independence_of_clones(rule, out, cloned.clones, kept);
  }
  const unsigned m = std::uniform_int_distribution<unsigned>(b.min_candidates, b.max_candidates)(rng);
  out = random_weak_profile(m, ballots(rng), b.max_weight, rng);
  // Majority axioms only bite when a majority shares a top candidate; plant
  // two camps in half of the attempts.
  const bool majority_axiom = axiom == Axiom::CohesiveMajorities || axiom == Axiom::UnanimousMajorities ||
                              axiom == Axiom::SelectMajorityAlternative;
  if (majority_axiom && std::bernoulli_distribution(0.5)(rng)) {
    const auto x = std::uniform_int_distribution<unsigned>(0, m - 1)(rng);
    const auto y = (x + 1 + std::uniform_int_distribution<unsigned>(0, m - 2)(rng)) % m;
    const double share = std::uniform_real_distribution<double>(0.4, 0.9)(rng);
    out = plant_camps(out, x, y, share, std::uniform_real_distribution<double>(0.0, 0.8)(rng), rng);
  }
  const auto winners = rule(out);
  switch (axiom) {
    case Axiom::CohesiveMajorities: return check_cohesive_majorities(out, winners);
    case Axiom::UnanimousMajorities: return check_unanimous_majorities(out, winners);
    case Axiom::SelectMajorityAlternative: return check_select_majority_alternative(out, winners);
    case Axiom::IndifferenceMonotonicity: {
      auto ws = winners.to_vector();
      const auto c = ws[std::uniform_int_distribution<std::size_t>(0, ws.size() - 1)(rng)];
      HoverPattern pattern;
      std::bernoulli_distribution pick(0.5);
      for (std::size_t i = 0; i < out.num_votes(); ++i)
        if (can_hover(out.votes()[i].order, c) && pick(rng)) pattern.hovers.emplace_back(i, c);
      if (pattern.hovers.empty()) return std::nullopt;
      return check_indifference_monotonicity(rule, out, c, pattern);
    }
    case Axiom::GeneralizedPsc: {
      auto kind = QuotaKind::Droop;
      if (auto stv = std::get_if<StvRuleSpec>(&spec)) kind = stv->config.quota;
      return check_generalized_psc(out, winners, winners.size(), kind);
    }
    case Axiom::IndependenceOfClones: break;
  }
  return std::nullopt;
}

}  // namespace detail

// Randomized search for a profile on which `spec` violates `axiom`. Attempt
// i draws from seed mix_seed(seed, i); the lowest violating attempt is
// returned whatever the worker count. Absence of a result proves nothing.
inline std::optional<Counterexample> search_counterexample(const RuleSpec& spec, Axiom axiom, const SearchBounds& bounds,
                                                           std::uint64_t seed) {
  if (bounds.min_candidates < 2 || bounds.max_candidates < bounds.min_candidates)
    throw PreconditionError("search bounds need 2 <= min_candidates <= max_candidates");
  if (bounds.max_weight < 1) throw PreconditionError("search bounds need max_weight >= 1");
  const auto rule = make_rule(spec);
  const unsigned workers = std::max(1u, bounds.workers);

  std::atomic<std::size_t> best{std::numeric_limits<std::size_t>::max()};
  std::optional<Counterexample> found;
  std::mutex lock;
  std::exception_ptr failure;

  auto work = [&](unsigned worker) {
    try {
      for (std::size_t attempt = worker; attempt < bounds.attempts; attempt += workers) {
        if (attempt > best.load()) return;
        Rng rng(mix_seed(seed, attempt));
        Profile profile;
        auto verdict = detail::search_attempt(spec, rule, axiom, bounds, rng, profile);
        if (verdict && !verdict->passed()) {
          std::lock_guard guard(lock);
          if (attempt < best.load()) {
            best = attempt;
            found = Counterexample{std::move(profile), std::move(*verdict), attempt};
          }
          return;
        }
      }
    } catch (...) {
      std::lock_guard guard(lock);
      if (!failure) failure = std::current_exception();
      best = 0;
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return found;
}

}  // namespace weakirv
