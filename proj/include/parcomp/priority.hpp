#pragma once

#include <span>

namespace parcomp {

/// The acceptance order on priorities: any even beats any odd, larger evens
/// beat smaller evens, smaller odds beat larger odds. Returns true iff i = j
/// or i is strictly better than j. Accepts negative arguments.
constexpr bool better_or_equal(int i, int j) {
  if (i == j) return true;
  const bool i_even = (i % 2) == 0;
  const bool j_even = (j % 2) == 0;
  if (i_even && !j_even) return true;
  if (i_even && i > j) return true;
  if (!j_even && i < j) return true;
  return false;
}

/// The best priority of a non-empty set; throws DomainError("empty priority set").
int opt_priority(std::span<const int> priorities);

}  // namespace parcomp
