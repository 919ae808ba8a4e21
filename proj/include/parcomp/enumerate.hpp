#pragma once

#include <cstddef>
#include <vector>

#include "parcomp/fnht.hpp"

namespace parcomp {

struct EnumerationOptions {
  /// Only FNHTs whose root holds the whole universe.
  bool full_only = false;
  /// Upper bound on the number of emitted items; exceeding it throws CapExceeded.
  std::size_t cap = 5'000'000;
};

/// Every valid FNHT over `universe` for maximal priority `max_priority`,
/// exactly once, in canonical order.
std::vector<Fnht> enumerate_fnhts(StateSet universe, int max_priority, const EnumerationOptions& options = {});

/// Every valid FNHT whose root label is exactly `root_states`, in canonical order.
std::vector<Fnht> enumerate_fnhts_with_root(StateSet root_states, int max_priority,
                                            const EnumerationOptions& options = {});

/// Every MFT built on `tree`: all marker candidates with all non-empty
/// marking subsets, ordered by round-robin slot then marking mask.
std::vector<Mft> mfts_of(const Fnht& tree);

/// Every valid MFT over `universe`; `full_only` restricts to full trees.
std::vector<Mft> enumerate_mfts(StateSet universe, int max_priority, const EnumerationOptions& options = {});

}  // namespace parcomp
