// criteria.hpp
// Trace-norm separability criteria on matricized correlation tensors.
// Block matrices are assembled from subset tensors of the Bloch
// decomposition; their trace norms are compared against closed-form
// bounds that every biseparable state must satisfy. A state whose
// minimal block norm exceeds the largest bound is genuinely
// multipartite entangled.

#pragma once

#include <optional>
#include <string>

#include "gme/bloch.hpp"
#include "gme/types.hpp"

namespace gme {

enum class BlockPlacement { Disjoint, LeadingOverlap };

struct CriterionParams {
    double alpha = 1.0;
    double beta = 1.0;
    double gamma = 1.0;  // tripartite only
    BlockPlacement placement = BlockPlacement::Disjoint;
    // Override for the party supplying the alpha block's columns in the
    // multipartite assembly; defaults to the first right party.
    std::optional<int> alpha_col_party;

    CriterionParams() = default;
    CriterionParams(double a, double b, double g = 1.0,
                    BlockPlacement pl = BlockPlacement::Disjoint)
        : alpha(a), beta(b), gamma(g), placement(pl) {}
};

struct BoundValue {
    double value = 0;
    bool hypothesis_ok = true;
};

// ------------------------------------------------------------------
// closed-form norm bounds

// Pair bound m_{fg} = min{ d_f d_g - d_f/d_g, d_f d_g - d_g/d_f }.
double pair_norm_bound(int df, int dg);

// Group bound n_{l_1..l_k} on ||T^(group)||^2: d-1 for a single party,
// the pair bound for two, and the two-term expression for k >= 3 whose
// hypothesis is prod(dims) >= max(dims)^2.
BoundValue group_norm_bound(const std::vector<int>& dims);

// Equal-dimension shortcut: d^k - k/(k-2) d^{k-2} + 2/(k-2) for k >= 3.
double group_norm_bound_equal(int d, int k);

// ------------------------------------------------------------------
// block-matrix assembly

// Flatten the subset tensor of rows+cols into a matrix: row multi-index
// over `rows`, column multi-index over `cols`, each in listed order with
// the last-listed party fastest-varying.
Matrix matricize(const BlochTensor& t, const std::vector<int>& rows,
                 const std::vector<int>& cols);

// Tripartite N^{i|jk} = alpha [S^{i|j} O] + beta S^{i|k} (embedded per
// placement) + gamma S^{i|jk}, of shape (d_i^2-1) x (d_j^2-1)(d_k^2-1).
Matrix tripartite_block_matrix(const BlochTensor& t, const Bipartition& bip,
                               const CriterionParams& p);

// Multipartite N^{L|R} = alpha [S^{L|l_k} O] + beta S^{L|R} where l_k is
// the first right party (or the configured override).
Matrix multipartite_block_matrix(const BlochTensor& t, const Bipartition& bip,
                                 const CriterionParams& p);

// Dispatch on party count: tripartite assembly for n=3, multipartite
// otherwise.
Matrix block_matrix(const BlochTensor& t, const Bipartition& bip, const CriterionParams& p);

// Sum of singular values.
double trace_norm(const Matrix& m);

// ------------------------------------------------------------------
// separability thresholds

// Right-hand side of the tripartite test for the role assignment
// (i, j, k): sqrt(d_i-1) (|alpha| sqrt(d_j-1) + |beta| sqrt(d_k-1) +
// |gamma| sqrt(m_{jk})).
double tripartite_split_bound(int di, int dj, int dk, const CriterionParams& p);

// K_1: maximum of tripartite_split_bound over all 6 role permutations.
double tripartite_threshold(const std::vector<int>& dims, const CriterionParams& p);

// M_{L}: the multipartite bound for one bipartition. hypothesis_ok
// requires prod(side) >= max(side)^2 on every side with two or more
// parties; singleton sides are exempt.
BoundValue split_bound(const Bipartition& bip, const std::vector<int>& dims,
                       const CriterionParams& p);

// K_2: maximum of split_bound over all canonical bipartitions;
// hypothesis_ok only if every contributing bound is applicable.
BoundValue multipartite_threshold(const std::vector<int>& dims, const CriterionParams& p);

// J_2: equal-dimension shortcut threshold for n >= 4 parties.
double symmetric_threshold(int d, int n, const CriterionParams& p);
double symmetric_threshold(const std::vector<int>& dims, const CriterionParams& p);

// ------------------------------------------------------------------
// scores and verdicts

struct SplitNorm {
    Bipartition split;
    double trace_norm = 0;
};

struct ScoreResult {
    double score = 0;  // min over canonical bipartitions of ||N||_tr
    std::vector<SplitNorm> details;
};

// T(rho): minimum block-matrix trace norm over the canonical
// bipartitions (3 for n=3, 7 for n=4, 15 for n=5, 31 for n=6).
ScoreResult detection_score(const DensityMatrix& rho, const CriterionParams& p);
ScoreResult detection_score(const BlochTensor& t, const CriterionParams& p);

struct BipartitionRecord {
    Bipartition split;
    double trace_norm = 0;
    BoundValue bound;
};

struct CriterionReport {
    std::vector<BipartitionRecord> bipartitions;
    double score = 0;      // T
    double threshold = 0;  // K_1 (n=3) or K_2 (n>=4)
    bool all_bounds_applicable = true;
    bool detected = false;  // score > threshold and all bounds applicable
    std::vector<std::string> caveats;
};

CriterionReport gme_verdict(const DensityMatrix& rho, const CriterionParams& p);

// ------------------------------------------------------------------
// sampling check of the separability bounds

struct BiseparableCheck {
    long violations = 0;
    long checked = 0;
    bool applicable = true;  // false when the bound hypothesis fails
    double bound = 0;
    double max_norm = 0;  // largest sampled ||N||_tr
};

// Draw `samples` random biseparable states across `bip` and count those
// whose block norm exceeds the bound by more than 1e-8. The contract is
// zero violations whenever the bound applies.
BiseparableCheck biseparable_bound_check(const PartySystem& system, const Bipartition& bip,
                                         const CriterionParams& p, int samples,
                                         std::uint64_t seed);

// Concurrency cap from GME_DETECT_THREADS (defaults to the hardware
// count; minimum 1).
unsigned thread_cap();

}  // namespace gme
