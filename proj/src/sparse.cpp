#include "sparse.hpp"

#include <algorithm>

namespace mpc {

bool strictly_ascending(const SparseColumn& c) {
    for (std::size_t i = 1; i < c.size(); ++i)
        if (c[i - 1] >= c[i]) return false;
    return true;
}

std::size_t add_into(SparseColumn& dst, const SparseColumn& src, SparseColumn& scratch) {
    const std::size_t cost = dst.size() + src.size();
    scratch.clear();
    scratch.reserve(cost);
    auto a = dst.begin(), ae = dst.end();
    auto b = src.begin(), be = src.end();
    while (a != ae && b != be) {
        if (*a < *b) {
            scratch.push_back(*a++);
        } else if (*b < *a) {
            scratch.push_back(*b++);
        } else {
            ++a;
            ++b;
        }
    }
    scratch.insert(scratch.end(), a, ae);
    scratch.insert(scratch.end(), b, be);
    dst.swap(scratch);
    return cost;
}

void toggle(SparseColumn& c, index_t i) {
    auto it = std::lower_bound(c.begin(), c.end(), i);
    if (it != c.end() && *it == i)
        c.erase(it);
    else
        c.insert(it, i);
}

}  // namespace mpc
