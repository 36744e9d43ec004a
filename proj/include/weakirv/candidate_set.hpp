#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <vector>

namespace weakirv {

// Dense index into a profile's roster.
using CandidateId = unsigned;

inline constexpr unsigned kMaxCandidates = 64;

// A set of candidates stored as a 64-bit mask. Iteration yields ids in
// increasing order.
class CandidateSet {
 public:
  constexpr CandidateSet() = default;
  constexpr explicit CandidateSet(std::uint64_t bits) : bits_(bits) {}
  CandidateSet(std::initializer_list<CandidateId> ids) {
    for (auto c : ids) insert(c);
  }

  static constexpr CandidateSet first_n(unsigned m) {
    return CandidateSet(m >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << m) - 1));
  }
  static constexpr CandidateSet single(CandidateId c) { return CandidateSet(std::uint64_t{1} << c); }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr unsigned size() const { return static_cast<unsigned>(std::popcount(bits_)); }
  constexpr bool contains(CandidateId c) const { return (bits_ >> c) & 1u; }
  constexpr void insert(CandidateId c) { bits_ |= std::uint64_t{1} << c; }
  constexpr void erase(CandidateId c) { bits_ &= ~(std::uint64_t{1} << c); }
  constexpr CandidateId front() const { return static_cast<CandidateId>(std::countr_zero(bits_)); }

  constexpr bool intersects(CandidateSet o) const { return (bits_ & o.bits_) != 0; }
  constexpr bool subset_of(CandidateSet o) const { return (bits_ & ~o.bits_) == 0; }

  constexpr CandidateSet operator|(CandidateSet o) const { return CandidateSet(bits_ | o.bits_); }
  constexpr CandidateSet operator&(CandidateSet o) const { return CandidateSet(bits_ & o.bits_); }
  constexpr CandidateSet operator-(CandidateSet o) const { return CandidateSet(bits_ & ~o.bits_); }
  constexpr CandidateSet& operator|=(CandidateSet o) { bits_ |= o.bits_; return *this; }
  constexpr CandidateSet& operator&=(CandidateSet o) { bits_ &= o.bits_; return *this; }
  constexpr CandidateSet& operator-=(CandidateSet o) { bits_ &= ~o.bits_; return *this; }

  friend constexpr bool operator==(CandidateSet, CandidateSet) = default;
  friend constexpr auto operator<=>(CandidateSet a, CandidateSet b) { return a.bits_ <=> b.bits_; }

  class iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = CandidateId;
    using difference_type = std::ptrdiff_t;
    using pointer = void;
    using reference = CandidateId;

    constexpr iterator() = default;
    constexpr explicit iterator(std::uint64_t rest) : rest_(rest) {}
    constexpr CandidateId operator*() const { return static_cast<CandidateId>(std::countr_zero(rest_)); }
    constexpr iterator& operator++() {
      rest_ &= rest_ - 1;
      return *this;
    }
    constexpr iterator operator++(int) {
      auto tmp = *this;
      ++*this;
      return tmp;
    }
    friend constexpr bool operator==(iterator, iterator) = default;

   private:
    std::uint64_t rest_ = 0;
  };

  constexpr iterator begin() const { return iterator(bits_); }
  constexpr iterator end() const { return iterator(0); }

  std::vector<CandidateId> to_vector() const { return {begin(), end()}; }

 private:
  std::uint64_t bits_ = 0;
};

}  // namespace weakirv
