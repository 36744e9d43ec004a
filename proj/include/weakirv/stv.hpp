#pragma once

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "weakirv/profile.hpp"
#include "weakirv/rules.hpp"

namespace weakirv {

// Droop: q = n/(k+1), a candidate is electable when its support is strictly
// above q. Hare: q = n/k, electable when support reaches q.
enum class QuotaKind { Droop, Hare };

inline Rational quota(const Rational& n, unsigned k, QuotaKind kind) {
  if (n <= 0) throw PreconditionError("quota needs positive total weight");
  if (k == 0) throw PreconditionError("quota needs at least one seat");
  Rational q = kind == QuotaKind::Droop ? Rational(n / (k + 1)) : Rational(n / k);
  q.canonicalize();
  return q;
}

inline bool electable(const Rational& support, const Rational& q, QuotaKind kind) {
  return kind == QuotaKind::Droop ? support > q : support >= q;
}

enum class Selection { HighestSupport, FirstByPriority };
enum class Payment { Gregory, UniformCap };
enum class Elimination { LowestSupport, LowestScore };

struct StvConfig {
  QuotaKind quota = QuotaKind::Droop;
  Selection selection = Selection::HighestSupport;
  Payment payment = Payment::Gregory;
  Elimination elimination = Elimination::LowestSupport;
  TieBreak tiebreak = TieBreak::lexicographic();
};

inline std::string to_string(QuotaKind k) { return k == QuotaKind::Droop ? "droop" : "hare"; }
inline std::string to_string(Selection s) {
  return s == Selection::HighestSupport ? "highest-support" : "first-by-priority";
}
inline std::string to_string(Payment p) { return p == Payment::Gregory ? "gregory" : "uniform-cap"; }
inline std::string to_string(Elimination e) {
  return e == Elimination::LowestSupport ? "lowest-support" : "lowest-score";
}

// Per-unit payments when supporters offering `contributions` (per unit of
// weight) together pay exactly q: every contribution is scaled by q/B.
inline std::vector<Rational> gregory_payments(const std::vector<Rational>& contributions,
                                              const std::vector<Rational>& weights, const Rational& q) {
  Rational total = 0;
  for (std::size_t i = 0; i < contributions.size(); ++i) total += weights[i] * contributions[i];
  if (total < q) throw std::logic_error("gregory payment: supporters hold less than the quota");
  std::vector<Rational> pay(contributions.size(), Rational(0));
  if (total == 0) return pay;
  Rational factor = q / total;
  for (std::size_t i = 0; i < contributions.size(); ++i) pay[i] = contributions[i] * factor;
  return pay;
}

// Per-unit payments min(contribution, cap) with the cap chosen so the
// payments total exactly q.
inline std::vector<Rational> uniform_cap_payments(const std::vector<Rational>& contributions,
                                                  const std::vector<Rational>& weights, const Rational& q,
                                                  Rational* cap_out = nullptr) {
  std::vector<std::size_t> idx(contributions.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return contributions[a] < contributions[b]; });
  Rational left = q;
  Rational weight_left = 0;
  for (auto& w : weights) weight_left += w;
  Rational cap = contributions.empty() ? Rational(0) : contributions[idx.back()];
  bool capped = false;
  for (auto i : idx) {
    if (weights[i] == 0) continue;
    if (contributions[i] * weight_left <= left) {
      left -= weights[i] * contributions[i];
      weight_left -= weights[i];
    } else {
      cap = left / weight_left;
      capped = true;
      break;
    }
  }
  if (!capped && left != 0) throw std::logic_error("uniform-cap payment: supporters hold less than the quota");
  std::vector<Rational> pay(contributions.size());
  for (std::size_t i = 0; i < contributions.size(); ++i) pay[i] = std::min(contributions[i], cap);
  if (cap_out) *cap_out = cap;
  return pay;
}

// Budgets after the supporters (unit weight each) pay q by the Gregory method.
inline std::vector<Rational> gregory_reduce(std::vector<Rational> budgets, const std::vector<std::size_t>& supporters,
                                            const Rational& q) {
  std::vector<Rational> contrib, weights;
  for (auto i : supporters) {
    contrib.push_back(budgets.at(i));
    weights.emplace_back(1);
  }
  auto pay = gregory_payments(contrib, weights, q);
  for (std::size_t j = 0; j < supporters.size(); ++j) budgets[supporters[j]] -= pay[j];
  return budgets;
}

enum class StvRule { Approval, Split };

inline std::string to_string(StvRule r) { return r == StvRule::Approval ? "approval-stv" : "split-stv"; }

struct StvRound {
  enum class Action { Elect, Eliminate };

  CandidateSet remaining;             // before the action
  CandidateSet elected;               // before the action
  std::vector<Rational> support;      // per candidate, meaningful on `remaining`
  CandidateSet eligible;              // candidates whose support clears the quota
  Action action = Action::Eliminate;
  CandidateId candidate = 0;
  std::vector<Rational> payments;     // per vote, per unit of weight (Elect only)
  Rational payment_parameter;         // Gregory factor q/B, or the uniform cap
  std::vector<Rational> budgets;      // per vote, per unit of weight, after the action
};

struct StvTrace {
  StvRule rule = StvRule::Approval;
  StvConfig config;
  unsigned seats = 0;
  Rational total_weight;
  Rational quota;
  std::vector<Rational> initial_budgets;
  std::vector<StvRound> rounds;
  std::vector<CandidateId> elected_order;
};

struct StvResult {
  CandidateSet committee;
  StvTrace trace;
};

namespace detail {

inline StvResult run_stv(const Profile& profile, unsigned k, const StvConfig& config, StvRule rule) {
  require_tallyable(profile);
  if (k == 0) throw PreconditionError("stv needs at least one seat");
  if (k > profile.num_candidates()) throw PreconditionError("more seats than candidates");

  const auto& votes = profile.votes();
  const std::size_t nv = votes.size();
  StvTrace trace;
  trace.rule = rule;
  trace.config = config;
  trace.seats = k;
  trace.total_weight = profile.total_weight();
  trace.quota = quota(trace.total_weight, k, config.quota);
  const Rational& q = trace.quota;

  std::vector<Rational> budget(nv, Rational(1));
  trace.initial_budgets = budget;
  auto remaining = profile.candidates();
  CandidateSet elected;

  std::vector<CandidateSet> tops(nv);
  std::vector<Rational> contribution(nv);
  // Once k seats are filled at most q money is left, so nobody else can
  // become electable; the remaining candidates need no rounds.
  while (!remaining.empty() && elected.size() < k) {
    StvRound round;
    round.remaining = remaining;
    round.elected = elected;
    round.support.assign(profile.num_candidates(), Rational(0));
    std::vector<Rational> score(profile.num_candidates(), Rational(0));
    for (std::size_t i = 0; i < nv; ++i) {
      tops[i] = votes[i].order.top_within(remaining);
      const unsigned t = rule == StvRule::Split ? tops[i].size() : 1;
      contribution[i] = budget[i] / t;
      Rational money = votes[i].weight * contribution[i];
      Rational points = votes[i].weight / t;
      for (auto c : tops[i]) {
        round.support[c] += money;
        score[c] += points;
      }
    }
    for (auto c : remaining)
      if (electable(round.support[c], q, config.quota)) round.eligible.insert(c);

    if (!round.eligible.empty()) {
      CandidateId pick;
      if (config.selection == Selection::HighestSupport) {
        const Rational* best = nullptr;
        CandidateSet tied;
        for (auto c : round.eligible) {
          if (!best || round.support[c] > *best) {
            best = &round.support[c];
            tied = CandidateSet::single(c);
          } else if (round.support[c] == *best) {
            tied.insert(c);
          }
        }
        pick = config.tiebreak.select(tied);
      } else {
        pick = config.tiebreak.select(round.eligible);
      }
      std::vector<std::size_t> supp;
      std::vector<Rational> contrib, weights;
      for (std::size_t i = 0; i < nv; ++i) {
        if (!tops[i].contains(pick)) continue;
        supp.push_back(i);
        contrib.push_back(contribution[i]);
        weights.push_back(votes[i].weight);
      }
      std::vector<Rational> pay;
      if (config.payment == Payment::Gregory) {
        pay = gregory_payments(contrib, weights, q);
        Rational total = 0;
        for (std::size_t j = 0; j < contrib.size(); ++j) total += weights[j] * contrib[j];
        round.payment_parameter = q / total;
      } else {
        pay = uniform_cap_payments(contrib, weights, q, &round.payment_parameter);
      }
      round.payments.assign(nv, Rational(0));
      for (std::size_t j = 0; j < supp.size(); ++j) {
        round.payments[supp[j]] = pay[j];
        budget[supp[j]] -= pay[j];
      }
      round.action = StvRound::Action::Elect;
      round.candidate = pick;
      elected.insert(pick);
      trace.elected_order.push_back(pick);
      if (elected.size() > k) throw std::logic_error("stv elected more than k candidates");
    } else {
      const auto& key = config.elimination == Elimination::LowestSupport ? round.support : score;
      round.action = StvRound::Action::Eliminate;
      round.candidate = config.tiebreak.eliminate(lowest_scoring(key, remaining));
    }
    remaining.erase(round.candidate);
    round.budgets = budget;
    trace.rounds.push_back(std::move(round));
  }
  if (elected.size() != k) throw std::logic_error("stv committee has the wrong size");
  return {elected, std::move(trace)};
}

}  // namespace detail

// Approval-STV: every voter's remaining budget counts in full towards each
// candidate in their current top class.
inline StvResult approval_stv(const Profile& profile, unsigned k, const StvConfig& config = {}) {
  return detail::run_stv(profile, k, config, StvRule::Approval);
}

// Split-STV: a voter with t candidates in their current top class offers
// budget/t towards each of them.
inline StvResult split_stv(const Profile& profile, unsigned k, const StvConfig& config = {}) {
  return detail::run_stv(profile, k, config, StvRule::Split);
}

inline StvResult run_stv(const Profile& profile, unsigned k, const StvConfig& config, StvRule rule) {
  return detail::run_stv(profile, k, config, rule);
}

// Sum of weight*budget plus q per elected candidate equals the total weight,
// before the first round and after every round.
inline bool money_conserved(const Profile& profile, const StvTrace& trace) {
  auto money = [&](const std::vector<Rational>& budgets) {
    Rational m = 0;
    for (std::size_t i = 0; i < budgets.size(); ++i) {
      if (budgets[i] < 0 || budgets[i] > 1) return Rational(-1);
      m += profile.votes()[i].weight * budgets[i];
    }
    return m;
  };
  if (money(trace.initial_budgets) != trace.total_weight) return false;
  for (auto& r : trace.rounds) {
    auto elected = r.elected.size() + (r.action == StvRound::Action::Elect ? 1 : 0);
    Rational left = money(r.budgets);
    if (left < 0 || left + trace.quota * elected != trace.total_weight) return false;
    if (elected > trace.seats) return false;
  }
  return true;
}

}  // namespace weakirv
