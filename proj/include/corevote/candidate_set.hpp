#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <string>
#include <type_traits>
#include <vector>

namespace corevote {

using Candidate = int;

inline constexpr int kMaxCandidates = 63;

/// Set of candidates stored as a bitmask over 0-based indices.
class CandidateSet {
 public:
  using Mask = std::uint64_t;

  constexpr CandidateSet() = default;
  constexpr explicit CandidateSet(Mask mask) : mask_(mask) {}
  CandidateSet(std::initializer_list<Candidate> members) {
    for (Candidate c : members) insert(c);
  }

  /// {0, ..., n-1}
  static constexpr CandidateSet first(int n) {
    return CandidateSet(n >= 64 ? ~Mask{0} : ((Mask{1} << n) - 1));
  }
  /// {lo, ..., hi-1}
  static constexpr CandidateSet range(int lo, int hi) {
    return lo >= hi ? CandidateSet() : CandidateSet(first(hi).mask_ & ~first(lo).mask_);
  }

  constexpr Mask mask() const { return mask_; }
  constexpr int size() const { return std::popcount(mask_); }
  constexpr bool empty() const { return mask_ == 0; }
  constexpr bool contains(Candidate c) const { return (mask_ >> c) & 1U; }
  constexpr bool subset_of(CandidateSet o) const { return (mask_ & ~o.mask_) == 0; }
  constexpr bool intersects(CandidateSet o) const { return (mask_ & o.mask_) != 0; }
  /// Smallest member; undefined for the empty set.
  constexpr Candidate lowest() const { return std::countr_zero(mask_); }
  /// One past the largest member (0 for the empty set).
  constexpr int span() const { return 64 - std::countl_zero(mask_); }

  constexpr void insert(Candidate c) { mask_ |= Mask{1} << c; }
  constexpr void erase(Candidate c) { mask_ &= ~(Mask{1} << c); }

  /// W \ {x} ∪ {y}
  constexpr CandidateSet swapped(Candidate x, Candidate y) const {
    CandidateSet s = *this;
    s.erase(x);
    s.insert(y);
    return s;
  }

  friend constexpr CandidateSet operator&(CandidateSet a, CandidateSet b) { return CandidateSet(a.mask_ & b.mask_); }
  friend constexpr CandidateSet operator|(CandidateSet a, CandidateSet b) { return CandidateSet(a.mask_ | b.mask_); }
  friend constexpr CandidateSet operator-(CandidateSet a, CandidateSet b) { return CandidateSet(a.mask_ & ~b.mask_); }
  friend constexpr bool operator==(CandidateSet a, CandidateSet b) = default;
  friend constexpr auto operator<=>(CandidateSet a, CandidateSet b) { return a.mask_ <=> b.mask_; }

  class iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = Candidate;
    using difference_type = std::ptrdiff_t;
    using pointer = const Candidate*;
    using reference = Candidate;

    constexpr iterator() = default;
    constexpr explicit iterator(Mask rest) : rest_(rest) {}
    constexpr Candidate operator*() const { return std::countr_zero(rest_); }
    constexpr iterator& operator++() {
      rest_ &= rest_ - 1;
      return *this;
    }
    constexpr iterator operator++(int) {
      iterator t = *this;
      ++*this;
      return t;
    }
    friend constexpr bool operator==(iterator a, iterator b) = default;

   private:
    Mask rest_ = 0;
  };

  constexpr iterator begin() const { return iterator(mask_); }
  constexpr iterator end() const { return iterator(0); }

  std::vector<Candidate> members() const { return {begin(), end()}; }

  /// "{c1,c2,c5}" (1-based, as candidates are rendered in reports).
  std::string str() const;

 private:
  Mask mask_ = 0;
};

/// Next larger mask with the same popcount (Gosper's hack); 0 when exhausted
/// within `m` bits.
constexpr CandidateSet::Mask next_same_size(CandidateSet::Mask v, int m) {
  const CandidateSet::Mask t = v | (v - 1);
  const CandidateSet::Mask w = (t + 1) | (((~t & -~t) - 1) >> (std::countr_zero(v) + 1));
  return (m < 64 && (w >> m) != 0) ? 0 : w;
}

/// Calls `f(CandidateSet)` for every `size`-subset of {0..m-1} in ascending
/// mask order. Stops early if `f` returns false.
template <typename F>
void for_each_subset_of_size(int m, int size, F&& f) {
  if (size < 0 || size > m) return;
  if (size == 0) {
    f(CandidateSet());
    return;
  }
  for (CandidateSet::Mask v = CandidateSet::first(size).mask(); v != 0; v = next_same_size(v, m)) {
    if constexpr (std::is_same_v<decltype(f(CandidateSet(v))), bool>) {
      if (!f(CandidateSet(v))) return;
    } else {
      f(CandidateSet(v));
    }
  }
}

/// Binomial coefficient with saturation at UINT64_MAX.
std::uint64_t binomial(int n, int r);

}  // namespace corevote
