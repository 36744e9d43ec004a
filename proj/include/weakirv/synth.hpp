#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "weakirv/profile.hpp"
#include "weakirv/random.hpp"

namespace weakirv {

inline std::vector<std::string> numbered_roster(unsigned m) {
  std::vector<std::string> r;
  for (unsigned c = 0; c < m; ++c) r.push_back("c" + std::to_string(c + 1));
  return r;
}

inline void require_sampler_args(unsigned n, unsigned m) {
  if (n == 0 || m == 0) throw PreconditionError("samplers need n >= 1 and m >= 1");
  if (m > kMaxCandidates) throw PreconditionError("too many candidates");
}

// n rankings drawn uniformly from all m! linear orders.
inline Profile sample_impartial_culture(unsigned n, unsigned m, std::uint64_t seed) {
  require_sampler_args(n, m);
  Rng rng(seed);
  std::vector<Vote> votes;
  votes.reserve(n);
  for (unsigned i = 0; i < n; ++i) votes.push_back({Rational(1), WeakOrder::linear(random_ranking(m, rng))});
  return Profile(numbered_roster(m), std::move(votes));
}

// One Mallows draw by repeated insertion: the i-th item of the center is
// inserted at position j (0-based, of i+1 slots) with probability
// proportional to phi^(i-j). This yields P(r) proportional to phi^KT(center, r).
inline std::vector<CandidateId> sample_mallows_ranking(const std::vector<CandidateId>& center, double phi, Rng& rng) {
  std::vector<CandidateId> out;
  out.reserve(center.size());
  std::vector<double> w;
  for (std::size_t i = 0; i < center.size(); ++i) {
    w.assign(i + 1, 0.0);
    for (std::size_t j = 0; j <= i; ++j) w[j] = std::pow(phi, static_cast<double>(i - j));
    std::discrete_distribution<std::size_t> slot(w.begin(), w.end());
    auto pos = slot(rng);
    out.insert(out.begin() + static_cast<std::ptrdiff_t>(pos), center[i]);
  }
  return out;
}

// Mixture of `centers` Mallows models with uniformly random central rankings;
// each voter picks a center uniformly.
inline Profile sample_mallows_mixture(unsigned n, unsigned m, unsigned centers, double phi, std::uint64_t seed) {
  require_sampler_args(n, m);
  if (centers == 0) throw PreconditionError("need at least one Mallows center");
  if (!(phi >= 0.0 && phi <= 1.0)) throw PreconditionError("Mallows dispersion must lie in [0, 1]");
  Rng rng(seed);
  std::vector<std::vector<CandidateId>> middles;
  for (unsigned k = 0; k < centers; ++k) middles.push_back(random_ranking(m, rng));
  std::uniform_int_distribution<unsigned> pick(0, centers - 1);
  std::vector<Vote> votes;
  votes.reserve(n);
  for (unsigned i = 0; i < n; ++i)
    votes.push_back({Rational(1), WeakOrder::linear(sample_mallows_ranking(middles[pick(rng)], phi, rng))});
  return Profile(numbered_roster(m), std::move(votes));
}

enum class Shape { Square, Disc };

inline std::string to_string(Shape s) { return s == Shape::Square ? "square" : "disc"; }

using Point = std::array<double, 2>;  // unused trailing coordinates stay 0

inline double distance(const Point& a, const Point& b) { return std::hypot(a[0] - b[0], a[1] - b[1]); }

struct EuclideanInstance {
  unsigned dim = 2;
  Shape shape = Shape::Square;
  std::vector<Point> voters;
  std::vector<Point> candidates;
  Profile profile;                       // induced linear profile, one unit vote per voter
  std::vector<std::size_t> tied_voters;  // voters with equal distances, broken by candidate index
};

// Ranks candidates by increasing distance from each voter; equal distances
// go to the lower candidate index.
inline Profile induced_profile(const std::vector<Point>& voters, const std::vector<Point>& candidates,
                               std::vector<std::size_t>* tied = nullptr) {
  const auto m = static_cast<unsigned>(candidates.size());
  std::vector<Vote> votes;
  votes.reserve(voters.size());
  std::vector<std::pair<double, CandidateId>> key(m);
  for (std::size_t v = 0; v < voters.size(); ++v) {
    for (CandidateId c = 0; c < m; ++c) key[c] = {distance(voters[v], candidates[c]), c};
    std::sort(key.begin(), key.end());
    std::vector<CandidateId> ranking;
    bool tie = false;
    for (unsigned i = 0; i < m; ++i) {
      ranking.push_back(key[i].second);
      if (i && key[i].first == key[i - 1].first) tie = true;
    }
    if (tie && tied) tied->push_back(v);
    votes.push_back({Rational(1), WeakOrder::linear(ranking)});
  }
  return Profile(numbered_roster(m), std::move(votes));
}

// Positions uniform in [0,1]^d for the square and in the radius-1 ball for
// the disc (1D: [-1,1]; 2D: polar method, radius sqrt(U)).
inline Point sample_point(unsigned dim, Shape shape, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  if (shape == Shape::Square) return {u(rng), dim == 2 ? u(rng) : 0.0};
  if (dim == 1) return {2.0 * u(rng) - 1.0, 0.0};
  const double radius = std::sqrt(u(rng));
  const double angle = 2.0 * M_PI * u(rng);
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

inline EuclideanInstance sample_euclidean(unsigned n, unsigned m, unsigned dim, Shape shape, std::uint64_t seed) {
  require_sampler_args(n, m);
  if (dim != 1 && dim != 2) throw PreconditionError("Euclidean dimension must be 1 or 2");
  Rng rng(seed);
  EuclideanInstance inst;
  inst.dim = dim;
  inst.shape = shape;
  for (unsigned v = 0; v < n; ++v) inst.voters.push_back(sample_point(dim, shape, rng));
  for (unsigned c = 0; c < m; ++c) inst.candidates.push_back(sample_point(dim, shape, rng));
  inst.profile = induced_profile(inst.voters, inst.candidates, &inst.tied_voters);
  return inst;
}

// Merges each adjacent pair of every linear vote with probability p, using
// m-1 independent coins per vote.
inline Profile coin_flip_weaken(const Profile& profile, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p < 1.0)) throw PreconditionError("coin-flip probability must lie in [0, 1)");
  if (!profile.is_linear()) throw PreconditionError("coin-flip weakening needs a linear profile");
  Rng rng(seed);
  std::vector<Vote> votes;
  votes.reserve(profile.num_votes());
  for (auto& v : profile.votes()) {
    std::vector<CandidateId> ranking;
    for (auto cls : v.order.classes()) ranking.push_back(cls.front());
    votes.push_back({v.weight, merge_adjacent(ranking, p, rng)});
  }
  return Profile(profile.roster(), std::move(votes));
}

// Voter v puts c in class floor(|p(c)-p(v)| / r); empty classes are dropped.
inline Profile radius_weaken(const EuclideanInstance& inst, double r) {
  if (!(r > 0.0)) throw PreconditionError("radius must be positive; use the linear profile for r = 0");
  const auto m = static_cast<unsigned>(inst.candidates.size());
  std::vector<Vote> votes;
  votes.reserve(inst.voters.size());
  for (auto& voter : inst.voters) {
    std::vector<std::pair<std::uint64_t, CandidateId>> bucket(m);
    for (CandidateId c = 0; c < m; ++c)
      bucket[c] = {static_cast<std::uint64_t>(std::floor(distance(voter, inst.candidates[c]) / r)), c};
    std::sort(bucket.begin(), bucket.end());
    std::vector<CandidateSet> classes;
    for (unsigned i = 0; i < m; ++i) {
      if (i == 0 || bucket[i].first != bucket[i - 1].first) classes.emplace_back();
      classes.back().insert(bucket[i].second);
    }
    votes.push_back({Rational(1), WeakOrder(std::move(classes))});
  }
  return Profile(inst.profile.roster(), std::move(votes));
}

// Draws n votes with replacement, proportionally to weight. With
// `full_rankings_only`, non-linear votes are discarded first.
inline Profile resample(const Profile& source, unsigned n, std::uint64_t seed, bool full_rankings_only = true) {
  std::vector<const Vote*> pool;
  std::vector<double> weights;
  for (auto& v : source.votes()) {
    if (full_rankings_only && !v.order.is_linear()) continue;
    if (v.weight == 0) continue;
    pool.push_back(&v);
    weights.push_back(v.weight.get_d());
  }
  if (pool.empty()) throw PreconditionError("no votes left to resample from");
  Rng rng(seed);
  std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
  std::vector<Vote> votes;
  votes.reserve(n);
  for (unsigned i = 0; i < n; ++i) votes.push_back({Rational(1), pool[pick(rng)]->order});
  return Profile(source.roster(), std::move(votes));
}

// ---------------------------------------------------------------------------
// Metrics

inline std::vector<Rational> borda_scores(const Profile& profile) {
  if (!profile.is_linear()) throw PreconditionError("Borda scores need a linear profile");
  const unsigned m = profile.num_candidates();
  std::vector<Rational> s(m, Rational(0));
  for (auto& v : profile.votes()) {
    unsigned pos = 0;
    for (auto cls : v.order.classes()) s[cls.front()] += v.weight * (m - 1 - pos++);
  }
  return s;
}

inline Rational borda_score(const Profile& profile, CandidateId c) { return borda_scores(profile).at(c); }

// margins[a][b] = weight(a strictly above b) - weight(b strictly above a).
inline std::vector<std::vector<Rational>> pairwise_margins(const Profile& profile) {
  const unsigned m = profile.num_candidates();
  std::vector<std::vector<Rational>> out(m, std::vector<Rational>(m, Rational(0)));
  std::vector<std::size_t> rank(m);
  for (auto& v : profile.votes()) {
    for (CandidateId c = 0; c < m; ++c) rank[c] = *v.order.rank_of(c);
    for (CandidateId a = 0; a < m; ++a)
      for (CandidateId b = 0; b < m; ++b)
        if (rank[a] < rank[b]) {
          out[a][b] += v.weight;
          out[b][a] -= v.weight;
        }
  }
  return out;
}

inline std::optional<CandidateId> condorcet_winner_from_margins(const std::vector<std::vector<Rational>>& margins) {
  for (CandidateId a = 0; a < margins.size(); ++a) {
    bool beats_all = true;
    for (CandidateId b = 0; b < margins.size() && beats_all; ++b)
      if (a != b && margins[a][b] <= 0) beats_all = false;
    if (beats_all) return a;
  }
  return std::nullopt;
}

inline std::optional<CandidateId> condorcet_winner(const Profile& profile) {
  if (!profile.is_linear()) throw PreconditionError("Condorcet winner helper needs a linear profile");
  return condorcet_winner_from_margins(pairwise_margins(profile));
}

inline std::vector<double> candidate_costs(const EuclideanInstance& inst) {
  std::vector<double> cost(inst.candidates.size(), 0.0);
  for (std::size_t c = 0; c < inst.candidates.size(); ++c)
    for (auto& v : inst.voters) cost[c] += distance(v, inst.candidates[c]);
  return cost;
}

// cost(winner) / min cost; at least 1.
inline double distortion_from_costs(const std::vector<double>& cost, CandidateId winner) {
  const double best = *std::min_element(cost.begin(), cost.end());
  if (best == 0.0) return cost.at(winner) == 0.0 ? 1.0 : INFINITY;
  return cost.at(winner) / best;
}

inline double distortion(const EuclideanInstance& inst, CandidateId winner) {
  if (winner >= inst.candidates.size()) throw PreconditionError("winner is not in the roster");
  return distortion_from_costs(candidate_costs(inst), winner);
}

}  // namespace weakirv
