#pragma once

#include <compare>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "weakirv/candidate_set.hpp"
#include "weakirv/rational.hpp"

namespace weakirv {

// Sizes of the indifference classes of a weak order, top class first.
struct OrderType {
  std::vector<unsigned> sizes;

  std::size_t length() const { return sizes.size(); }
  unsigned total() const {
    unsigned t = 0;
    for (auto s : sizes) t += s;
    return t;
  }
  unsigned operator[](std::size_t i) const { return sizes[i]; }
  bool is_linear() const {
    for (auto s : sizes)
      if (s != 1) return false;
    return true;
  }

  friend bool operator==(const OrderType&, const OrderType&) = default;
  friend auto operator<=>(const OrderType&, const OrderType&) = default;
};

inline std::string to_string(const OrderType& t) {
  std::string out = "(";
  for (std::size_t i = 0; i < t.sizes.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(t.sizes[i]);
  }
  return out + ")";
}

// A ballot: ordered, nonempty, pairwise-disjoint indifference classes.
// The domain is the union of the classes.
class WeakOrder {
 public:
  WeakOrder() = default;

  explicit WeakOrder(std::vector<CandidateSet> classes) : classes_(std::move(classes)) {
    if (classes_.empty()) throw PreconditionError("weak order needs at least one class");
    for (auto cls : classes_) {
      if (cls.empty()) throw PreconditionError("weak order has an empty class");
      if (domain_.intersects(cls)) throw PreconditionError("weak order lists a candidate twice");
      domain_ |= cls;
    }
  }

  // Linear order from a ranking, most preferred first.
  static WeakOrder linear(const std::vector<CandidateId>& ranking) {
    std::vector<CandidateSet> classes;
    classes.reserve(ranking.size());
    for (auto c : ranking) classes.push_back(CandidateSet::single(c));
    return WeakOrder(std::move(classes));
  }

  const std::vector<CandidateSet>& classes() const { return classes_; }
  std::size_t num_classes() const { return classes_.size(); }
  CandidateSet domain() const { return domain_; }
  CandidateSet top() const { return classes_.front(); }

  bool is_linear() const {
    for (auto cls : classes_)
      if (cls.size() != 1) return false;
    return true;
  }

  // Index of the class containing c, or nullopt if c is outside the domain.
  std::optional<std::size_t> rank_of(CandidateId c) const {
    for (std::size_t i = 0; i < classes_.size(); ++i)
      if (classes_[i].contains(c)) return i;
    return std::nullopt;
  }

  // a is weakly preferred to b. Both must lie in the domain.
  bool weakly_prefers(CandidateId a, CandidateId b) const { return *rank_of(a) <= *rank_of(b); }
  bool strictly_prefers(CandidateId a, CandidateId b) const { return *rank_of(a) < *rank_of(b); }

  // First class that meets `remaining`, intersected with it. Empty if none.
  CandidateSet top_within(CandidateSet remaining) const {
    for (auto cls : classes_) {
      auto hit = cls & remaining;
      if (!hit.empty()) return hit;
    }
    return {};
  }

  friend bool operator==(const WeakOrder& a, const WeakOrder& b) { return a.classes_ == b.classes_; }
  friend auto operator<=>(const WeakOrder& a, const WeakOrder& b) { return a.classes_ <=> b.classes_; }

 private:
  std::vector<CandidateSet> classes_;
  CandidateSet domain_;
};

inline OrderType order_type(const WeakOrder& order) {
  OrderType t;
  t.sizes.reserve(order.num_classes());
  for (auto cls : order.classes()) t.sizes.push_back(cls.size());
  return t;
}

// Order type of `order` restricted to `remaining`, without building the order.
inline OrderType order_type_within(const WeakOrder& order, CandidateSet remaining) {
  OrderType t;
  for (auto cls : order.classes()) {
    auto n = (cls & remaining).size();
    if (n) t.sizes.push_back(n);
  }
  return t;
}

inline CandidateSet top_set(const WeakOrder& order) { return order.top(); }

// Removes candidates outside `keep`; classes that become empty are dropped.
inline WeakOrder restrict(const WeakOrder& order, CandidateSet keep) {
  auto kept = keep & order.domain();
  if (kept.empty()) throw PreconditionError("restrict: keep set does not meet the order's domain");
  std::vector<CandidateSet> classes;
  for (auto cls : order.classes()) {
    auto part = cls & keep;
    if (!part.empty()) classes.push_back(part);
  }
  return WeakOrder(std::move(classes));
}

}  // namespace weakirv
