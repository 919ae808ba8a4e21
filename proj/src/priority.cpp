#include "parcomp/priority.hpp"

#include "parcomp/errors.hpp"

namespace parcomp {

int opt_priority(std::span<const int> priorities) {
  if (priorities.empty()) throw DomainError("empty priority set");
  int best = priorities.front();
  for (int p : priorities.subspan(1)) {
    if (better_or_equal(p, best)) best = p;
  }
  return best;
}

}  // namespace parcomp
