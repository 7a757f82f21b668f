#include "gme/types.hpp"

#include <algorithm>

namespace gme {

std::vector<Bipartition> canonical_bipartitions(int n) {
    if (n < 2)
        throw std::invalid_argument("canonical_bipartitions: need n >= 2");
    std::vector<Bipartition> out;
    const SubsetMask all = (SubsetMask{1} << n) - 1;
    for (SubsetMask m = 1; m < all; ++m) {
        int k = __builtin_popcount(m);
        if (2 * k > n) continue;
        // For even splits keep only the representative containing party 0.
        if (2 * k == n && !(m & 1)) continue;
        out.emplace_back(parties_of(m), parties_of(all & ~m), n);
    }
    std::sort(out.begin(), out.end(), [](const Bipartition& a, const Bipartition& b) {
        if (a.left.size() != b.left.size()) return a.left.size() < b.left.size();
        return a.left < b.left;
    });
    return out;
}

Bipartition canonicalize(std::vector<int> a, std::vector<int> b, int n) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    bool swap = a.size() > b.size() ||
                (a.size() == b.size() && !a.empty() && !b.empty() && b.front() < a.front());
    if (swap) std::swap(a, b);
    return Bipartition(std::move(a), std::move(b), n);
}

}  // namespace gme
