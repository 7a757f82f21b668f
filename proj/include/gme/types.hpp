// types.hpp
// Shared domain types: party systems, bipartitions, complex aliases.

#pragma once

#include <complex>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace gme {

using cx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// A finite collection of parties with local dimensions (d_1,...,d_n).
// Party indices are 0-based throughout the library; external formats
// (JSON reports, tensor dumps) use 1-based labels.
struct PartySystem {
    std::vector<int> dims;

    PartySystem() = default;
    explicit PartySystem(std::vector<int> local_dims) : dims(std::move(local_dims)) {
        if (dims.empty())
            throw std::invalid_argument("PartySystem: need at least one party");
        for (int d : dims)
            if (d < 2)
                throw std::invalid_argument("PartySystem: local dimensions must be >= 2");
    }

    int parties() const { return static_cast<int>(dims.size()); }

    // Total Hilbert-space dimension D = d_1 * ... * d_n.
    long total_dim() const {
        long D = 1;
        for (int d : dims) D *= d;
        return D;
    }

    bool operator==(const PartySystem& other) const { return dims == other.dims; }
};

// Subsets of parties are bitmasks over 0-based party indices.
using SubsetMask = std::uint32_t;

inline SubsetMask mask_of(const std::vector<int>& parties, int n) {
    SubsetMask m = 0;
    for (int p : parties) {
        if (p < 0 || p >= n)
            throw std::invalid_argument("party index out of range");
        if (m & (SubsetMask{1} << p))
            throw std::invalid_argument("duplicate party index");
        m |= SubsetMask{1} << p;
    }
    return m;
}

inline std::vector<int> parties_of(SubsetMask m) {
    std::vector<int> out;
    for (int p = 0; m != 0; ++p, m >>= 1)
        if (m & 1) out.push_back(p);
    return out;
}

// Ordered split (left | right) of {0..n-1}. Canonical form: both sides
// sorted ascending, |left| <= |right|, and for even splits party 0 on
// the left.
struct Bipartition {
    std::vector<int> left;
    std::vector<int> right;

    Bipartition() = default;
    Bipartition(std::vector<int> l, std::vector<int> r, int n_parties)
        : left(std::move(l)), right(std::move(r)) {
        SubsetMask ml = mask_of(left, n_parties);
        SubsetMask mr = mask_of(right, n_parties);
        if (left.empty() || right.empty())
            throw std::invalid_argument("Bipartition: both sides must be nonempty");
        if (ml & mr)
            throw std::invalid_argument("Bipartition: sides overlap");
        SubsetMask all = (n_parties >= 32) ? ~SubsetMask{0} : ((SubsetMask{1} << n_parties) - 1);
        if ((ml | mr) != all)
            throw std::invalid_argument("Bipartition: sides must cover all parties");
    }

    std::string to_string() const {
        std::string s;
        for (int p : left) s += std::to_string(p + 1);
        s += '|';
        for (int p : right) s += std::to_string(p + 1);
        return s;
    }

    bool operator==(const Bipartition& other) const {
        return left == other.left && right == other.right;
    }
};

// All canonical bipartitions of n parties with |left| <= floor(n/2):
// 3 for n=3, 7 for n=4, 15 for n=5, 31 for n=6.
std::vector<Bipartition> canonical_bipartitions(int n_parties);

// Canonicalize an arbitrary split: sort both sides, put the smaller
// (or, on ties, the side holding party 0) on the left.
Bipartition canonicalize(std::vector<int> a, std::vector<int> b, int n_parties);

}  // namespace gme
