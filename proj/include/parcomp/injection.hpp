#pragma once

#include "parcomp/fnht.hpp"

namespace parcomp {

/// Maps a non-full FNHT to a full one by giving the root a fresh youngest
/// natural child holding the missing states. Throws DomainError("already full").
Fnht inject_nonfull_fnht(const Fnht& t, StateSet universe);

/// Maps an MFT with non-full marking to an MFT with full marking. The marked
/// states move to a fresh pure leaf: the youngest sibling of a natural marker
/// node, or the youngest child of a stepchild marker node. A root-leaf tree
/// instead gains a single child holding the unmarked states. Throws
/// DomainError when the marking is already full.
Mft inject_nonfull_mft(const Mft& m);

}  // namespace parcomp
