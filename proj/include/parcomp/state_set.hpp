#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <vector>

namespace parcomp {

using StateIndex = int;
using LetterIndex = int;

inline constexpr int kMaxStates = 64;

/// Set of automaton states over dense indices [0, 64), stored as a bit mask.
class StateSet {
 public:
  constexpr StateSet() = default;
  constexpr explicit StateSet(std::uint64_t bits) : bits_(bits) {}

  static constexpr StateSet single(StateIndex q) { return StateSet(std::uint64_t{1} << q); }
  static constexpr StateSet first_n(int n) {
    return StateSet(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool contains(StateIndex q) const { return ((bits_ >> q) & 1U) != 0; }
  constexpr bool subset_of(StateSet other) const { return (bits_ & ~other.bits_) == 0; }
  constexpr bool disjoint(StateSet other) const { return (bits_ & other.bits_) == 0; }

  constexpr void insert(StateIndex q) { bits_ |= std::uint64_t{1} << q; }
  constexpr void erase(StateIndex q) { bits_ &= ~(std::uint64_t{1} << q); }

  constexpr StateSet operator|(StateSet o) const { return StateSet(bits_ | o.bits_); }
  constexpr StateSet operator&(StateSet o) const { return StateSet(bits_ & o.bits_); }
  /// Set difference.
  constexpr StateSet operator-(StateSet o) const { return StateSet(bits_ & ~o.bits_); }
  constexpr StateSet& operator|=(StateSet o) { bits_ |= o.bits_; return *this; }
  constexpr StateSet& operator&=(StateSet o) { bits_ &= o.bits_; return *this; }
  constexpr StateSet& operator-=(StateSet o) { bits_ &= ~o.bits_; return *this; }

  constexpr auto operator<=>(const StateSet&) const = default;

  std::vector<StateIndex> elements() const {
    std::vector<StateIndex> out;
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
    return out;
  }

  template <typename F>
  void for_each(F&& f) const {
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) f(static_cast<StateIndex>(std::countr_zero(b)));
  }

  /// Calls f on every subset of *this, starting with the empty set, in
  /// increasing order of the underlying mask.
  template <typename F>
  void for_each_subset(F&& f) const {
    std::uint64_t sub = 0;
    while (true) {
      f(StateSet(sub));
      if (sub == bits_) break;
      sub = (sub - bits_) & bits_;
    }
  }

 private:
  std::uint64_t bits_ = 0;
};

}  // namespace parcomp

template <>
struct std::hash<parcomp::StateSet> {
  std::size_t operator()(parcomp::StateSet s) const noexcept { return std::hash<std::uint64_t>{}(s.bits()); }
};
