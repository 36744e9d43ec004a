#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "weakirv/profile.hpp"
#include "weakirv/rational.hpp"
#include "weakirv/weak_order.hpp"

namespace weakirv {

using ScoreVector = std::vector<Rational>;

// Throws unless `v` has length |t|, ends in 0, and is nonincreasing and
// nonnegative.
inline void require_monotone(const OrderType& t, const ScoreVector& v) {
  if (v.size() != t.length())
    throw PreconditionError("score vector for " + to_string(t) + " has wrong length");
  if (v.back() != 0) throw PreconditionError("score vector for " + to_string(t) + " must end in 0");
  for (std::size_t i = 0; i + 1 < v.size(); ++i)
    if (v[i] < v[i + 1]) throw PreconditionError("score vector for " + to_string(t) + " is not monotone");
}

// All order types (compositions) of m.
inline std::vector<OrderType> order_types_of(unsigned m) {
  std::vector<OrderType> out;
  if (m == 0) return out;
  // Each of the m-1 gaps between consecutive positions is either a cut or not.
  for (std::uint64_t cuts = 0; cuts < (std::uint64_t{1} << (m - 1)); ++cuts) {
    OrderType t;
    unsigned run = 1;
    for (unsigned gap = 0; gap + 1 < m; ++gap) {
      if ((cuts >> gap) & 1u) {
        t.sizes.push_back(run);
        run = 1;
      } else {
        ++run;
      }
    }
    t.sizes.push_back(run);
    out.push_back(std::move(t));
  }
  return out;
}

// Maps each order type to a monotone score vector.
//
// A ballot that is indifferent between all remaining candidates (a single
// class) always scores (0), whatever the kind.
class ScoringSystem {
 public:
  enum class Kind { Approval, Split, BordaStyle, Table };
  // What a Table system does with an order type it does not list.
  enum class Fallback { Error, Approval };
  using Table = std::map<OrderType, ScoreVector>;

  static ScoringSystem approval() { return ScoringSystem(Kind::Approval); }
  static ScoringSystem split() { return ScoringSystem(Kind::Split); }
  static ScoringSystem borda_style() { return ScoringSystem(Kind::BordaStyle); }

  static ScoringSystem table(Table entries, Fallback fallback = Fallback::Error, std::string name = "table") {
    for (auto& [t, v] : entries) {
      if (t.length() == 1 && v.size() == 1 && v[0] != 0)
        throw PreconditionError("full-indifference order type must score (0)");
      require_monotone(t, v);
    }
    ScoringSystem s(Kind::Table);
    s.table_ = std::make_shared<const Table>(std::move(entries));
    s.fallback_ = fallback;
    s.name_ = std::move(name);
    return s;
  }

  // Builds a Table system listing every order type on up to `max_m`
  // candidates, with vectors produced by `fn`.
  static ScoringSystem tabulate(unsigned max_m, const std::function<ScoreVector(const OrderType&)>& fn,
                                Fallback fallback = Fallback::Error, std::string name = "table") {
    Table entries;
    for (unsigned m = 1; m <= max_m; ++m)
      for (auto& t : order_types_of(m)) entries.emplace(t, t.length() == 1 ? ScoreVector{0} : fn(t));
    return table(std::move(entries), fallback, std::move(name));
  }

  Kind kind() const { return kind_; }
  Fallback fallback() const { return fallback_; }

  // Approval and Split only award points to the top class.
  bool top_only() const { return kind_ == Kind::Approval || kind_ == Kind::Split; }

  std::string name() const {
    switch (kind_) {
      case Kind::Approval: return "approval";
      case Kind::Split: return "split";
      case Kind::BordaStyle: return "borda-style";
      case Kind::Table: return name_;
    }
    return {};
  }

  ScoreVector score_vector(const OrderType& t) const {
    const auto k = t.length();
    if (k == 0) throw PreconditionError("empty order type");
    ScoreVector v(k, Rational(0));
    if (k == 1) return v;
    switch (kind_) {
      case Kind::Approval:
        v[0] = 1;
        break;
      case Kind::Split:
        v[0] = Rational(1, t[0]);
        break;
      case Kind::BordaStyle: {
        // m-1-(t1+...+t_{j-1}), lowered by t_k-1 so the bottom class scores 0.
        // Equals t_j+...+t_{k-1}.
        unsigned below = 0;
        for (std::size_t j = k - 1; j-- > 0;) {
          below += t[j];
          v[j] = below;
        }
        break;
      }
      case Kind::Table: {
        auto it = table_->find(t);
        if (it != table_->end()) return it->second;
        if (fallback_ == Fallback::Error)
          throw PreconditionError("scoring table has no entry for order type " + to_string(t));
        v[0] = 1;
        break;
      }
    }
    return v;
  }

  // First entry of score_vector(t); enough for top-only systems.
  Rational top_score(const OrderType& t) const {
    if (t.length() <= 1) return 0;
    if (kind_ == Kind::Approval) return 1;
    if (kind_ == Kind::Split) return Rational(1, t[0]);
    return score_vector(t)[0];
  }

 private:
  explicit ScoringSystem(Kind kind) : kind_(kind) {}

  Kind kind_;
  Fallback fallback_ = Fallback::Error;
  std::shared_ptr<const Table> table_;
  std::string name_;
};

// Scores of the candidates in `remaining` when every vote is restricted to
// `remaining`. Entries for other candidates are left at 0.
inline std::vector<Rational> positional_scores_within(const Profile& profile, const ScoringSystem& system,
                                                      CandidateSet remaining) {
  std::vector<Rational> scores(profile.num_candidates(), Rational(0));
  Rational point;
  for (auto& v : profile.votes()) {
    if (v.weight == 0) continue;
    if (system.top_only()) {
      auto top = v.order.top_within(remaining);
      if (top == remaining) continue;  // indifferent between everything left
      if (system.kind() == ScoringSystem::Kind::Approval) {
        for (auto c : top) scores[c] += v.weight;
      } else {
        point = v.weight / top.size();
        for (auto c : top) scores[c] += point;
      }
      continue;
    }
    auto t = order_type_within(v.order, remaining);
    auto vec = system.score_vector(t);
    std::size_t j = 0;
    for (auto cls : v.order.classes()) {
      auto part = cls & remaining;
      if (part.empty()) continue;
      if (vec[j] != 0) {
        point = v.weight * vec[j];
        for (auto c : part) scores[c] += point;
      }
      ++j;
    }
  }
  return scores;
}

inline std::vector<Rational> positional_scores(const Profile& profile, const ScoringSystem& system) {
  return positional_scores_within(profile, system, profile.candidates());
}

}  // namespace weakirv
