#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "weakirv/candidate_set.hpp"
#include "weakirv/weak_order.hpp"

namespace weakirv {

// SplitMix64 finalizer; used to derive independent per-sample seeds.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

using Rng = std::mt19937_64;

inline std::vector<CandidateId> random_ranking(unsigned m, Rng& rng) {
  std::vector<CandidateId> r(m);
  for (unsigned i = 0; i < m; ++i) r[i] = i;
  std::shuffle(r.begin(), r.end(), rng);
  return r;
}

// Merges each adjacent pair of a ranking into one class with probability p.
inline WeakOrder merge_adjacent(const std::vector<CandidateId>& ranking, double p, Rng& rng) {
  std::vector<CandidateSet> classes;
  CandidateSet run = CandidateSet::single(ranking.at(0));
  std::bernoulli_distribution coin(p);
  for (std::size_t i = 1; i < ranking.size(); ++i) {
    if (coin(rng)) {
      run.insert(ranking[i]);
    } else {
      classes.push_back(run);
      run = CandidateSet::single(ranking[i]);
    }
  }
  classes.push_back(run);
  return WeakOrder(std::move(classes));
}

}  // namespace weakirv
