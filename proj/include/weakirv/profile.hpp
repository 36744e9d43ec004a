#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "weakirv/candidate_set.hpp"
#include "weakirv/rational.hpp"
#include "weakirv/weak_order.hpp"

namespace weakirv {

struct Vote {
  Rational weight;
  WeakOrder order;
};

// A candidate roster and a weighted multiset of weak orders over the whole
// roster. Immutable once built.
class Profile {
 public:
  Profile() = default;

  Profile(std::vector<std::string> roster, std::vector<Vote> votes)
      : roster_(std::move(roster)), votes_(std::move(votes)) {
    if (roster_.empty()) throw PreconditionError("profile needs at least one candidate");
    if (roster_.size() > kMaxCandidates)
      throw PreconditionError("profile supports at most " + std::to_string(kMaxCandidates) + " candidates");
    for (std::size_t i = 0; i < roster_.size(); ++i) {
      if (roster_[i].empty()) throw PreconditionError("empty candidate name");
      for (std::size_t j = 0; j < i; ++j)
        if (roster_[i] == roster_[j]) throw PreconditionError("duplicate candidate name '" + roster_[i] + "'");
    }
    auto all = candidates();
    for (auto& v : votes_) {
      if (v.weight < 0) throw PreconditionError("vote weight must be nonnegative");
      if (v.order.domain() != all) throw PreconditionError("every vote must rank the whole roster");
      v.weight.canonicalize();
    }
  }

  unsigned num_candidates() const { return static_cast<unsigned>(roster_.size()); }
  CandidateSet candidates() const { return CandidateSet::first_n(num_candidates()); }
  const std::vector<std::string>& roster() const { return roster_; }
  const std::string& name(CandidateId c) const { return roster_.at(c); }
  const std::vector<Vote>& votes() const { return votes_; }
  std::size_t num_votes() const { return votes_.size(); }

  std::optional<CandidateId> find(const std::string& name) const {
    for (std::size_t i = 0; i < roster_.size(); ++i)
      if (roster_[i] == name) return static_cast<CandidateId>(i);
    return std::nullopt;
  }
  CandidateId id(const std::string& name) const {
    auto c = find(name);
    if (!c) throw PreconditionError("unknown candidate '" + name + "'");
    return *c;
  }
  CandidateSet ids(const std::vector<std::string>& names) const {
    CandidateSet s;
    for (auto& n : names) s.insert(id(n));
    return s;
  }

  Rational total_weight() const {
    Rational n = 0;
    for (auto& v : votes_) n += v.weight;
    return n;
  }

  bool is_linear() const {
    return std::all_of(votes_.begin(), votes_.end(), [](const Vote& v) { return v.order.is_linear(); });
  }

  std::string names(CandidateSet s, const char* sep = ",") const {
    std::string out;
    for (auto c : s) {
      if (!out.empty()) out += sep;
      out += roster_[c];
    }
    return out;
  }

 private:
  std::vector<std::string> roster_;
  std::vector<Vote> votes_;
};

// Maps ids of a restricted profile back to the ids of the original.
// Restricted ids are the kept ids in increasing order.
inline std::vector<CandidateId> restriction_map(CandidateSet keep) { return keep.to_vector(); }

inline CandidateSet lift(CandidateSet restricted, CandidateSet keep) {
  auto map = restriction_map(keep);
  CandidateSet out;
  for (auto c : restricted) out.insert(map[c]);
  return out;
}

// Renumbers candidates of `s` (ids of the original profile) into the ids of
// the profile restricted to `keep`. Members outside `keep` are dropped.
inline CandidateSet lower(CandidateSet s, CandidateSet keep) {
  auto map = restriction_map(keep);
  CandidateSet out;
  for (CandidateId i = 0; i < map.size(); ++i)
    if (s.contains(map[i])) out.insert(i);
  return out;
}

// Restriction of every vote to `keep`, with the roster compacted.
inline Profile restrict(const Profile& profile, CandidateSet keep) {
  keep &= profile.candidates();
  if (keep.empty()) throw PreconditionError("restrict: keep set is empty");
  auto map = restriction_map(keep);
  std::vector<std::string> roster;
  for (auto c : map) roster.push_back(profile.name(c));
  std::vector<Vote> votes;
  votes.reserve(profile.num_votes());
  for (auto& v : profile.votes()) {
    std::vector<CandidateSet> classes;
    for (auto cls : v.order.classes()) {
      auto part = lower(cls, keep);
      if (!part.empty()) classes.push_back(part);
    }
    votes.push_back({v.weight, WeakOrder(std::move(classes))});
  }
  return Profile(std::move(roster), std::move(votes));
}

// Merges identical ballots (first appearance keeps its position) and drops
// zero-weight votes.
inline Profile canonicalize(const Profile& profile) {
  std::vector<Vote> merged;
  std::map<WeakOrder, std::size_t> index;
  for (auto& v : profile.votes()) {
    if (v.weight == 0) continue;
    auto [it, fresh] = index.try_emplace(v.order, merged.size());
    if (fresh)
      merged.push_back(v);
    else
      merged[it->second].weight += v.weight;
  }
  return Profile(profile.roster(), std::move(merged));
}

inline Profile scale_weights(const Profile& profile, const Rational& factor) {
  std::vector<Vote> votes = profile.votes();
  for (auto& v : votes) v.weight *= factor;
  return Profile(profile.roster(), std::move(votes));
}

inline bool operator==(const Vote& a, const Vote& b) { return a.weight == b.weight && a.order == b.order; }
inline bool operator==(const Profile& a, const Profile& b) {
  return a.roster() == b.roster() && a.votes() == b.votes();
}

}  // namespace weakirv
