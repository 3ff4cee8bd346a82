#pragma once

#include <cstddef>
#include <vector>

#include "grades.hpp"

namespace mpc {

// GF(2) column: strictly ascending row indices of the non-zero entries.
// Empty vector is the zero column.
using SparseColumn = std::vector<index_t>;

// Largest row index in the support; -1 for the zero column.
inline index_t pivot(const SparseColumn& c) { return c.empty() ? index_t(-1) : c.back(); }

bool strictly_ascending(const SparseColumn& c);

// dst <- dst + src over GF(2) (symmetric difference by linear merge).
// scratch is reused across calls to avoid reallocation. Returns the merge
// cost, |dst| + |src| before the merge.
std::size_t add_into(SparseColumn& dst, const SparseColumn& src, SparseColumn& scratch);

// Toggle a single index in a sorted column.
void toggle(SparseColumn& c, index_t i);

}  // namespace mpc
