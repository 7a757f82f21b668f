// states.hpp
// Density-matrix construction and transformation: named kets, white-noise
// mixtures, Kronecker products, partial traces, and seeded random sampling.

#pragma once

#include <cstdint>
#include <map>
#include <optional>

#include "gme/types.hpp"

namespace gme {

struct DensityMatrix {
    PartySystem system;
    Matrix entries;  // D x D, Hermitian, unit trace, PSD within tolerance

    long dim() const { return system.total_dim(); }
};

// Sparse ket: basis multi-index (one entry per party) -> amplitude.
struct KetExpression {
    PartySystem system;
    std::map<std::vector<int>, cx> amplitudes;

    KetExpression() = default;
    explicit KetExpression(PartySystem sys) : system(std::move(sys)) {}

    void set(const std::vector<int>& multi_index, cx amplitude);
    Vector to_vector() const;   // dense, normalized; throws if all-zero
};

enum class NamedState { GHZ, W, Paper332 };

struct NamedStateParams {
    int n = 0;  // party count (GHZ, W)
    int d = 2;  // local dimension (GHZ)
};

KetExpression named_state(NamedState name, NamedStateParams params = {});

// |psi><psi| from a (possibly unnormalized) ket.
DensityMatrix from_ket(const KetExpression& ket);

// rho(x) = x |psi><psi| + (1-x)/D * I.
DensityMatrix white_noise_mix(const KetExpression& psi, double x);
DensityMatrix white_noise_mix(const DensityMatrix& pure, double x);

// Kronecker product with concatenated dims.
DensityMatrix kron(const DensityMatrix& a, const DensityMatrix& b);

// Reduced state on the kept parties (0-based, ascending on output).
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep);

// Haar-random pure state: normalized i.i.d. standard complex Gaussian
// vector. Deterministic for a fixed seed.
DensityMatrix random_pure(const PartySystem& system, std::uint64_t seed);
Vector random_pure_vector(const PartySystem& system, std::uint64_t seed);

struct BiseparableSample {
    Bipartition bipartition;
    std::vector<double> weights;
    std::vector<std::pair<DensityMatrix, DensityMatrix>> factors;  // (left, right)
};

// Convex mixture of pure product states across the given bipartition of
// `system`; weights uniform on the simplex. Factors may be internally
// entangled within each side.
std::pair<DensityMatrix, BiseparableSample> random_biseparable(const PartySystem& system,
                                                               const Bipartition& bipartition,
                                                               int terms, std::uint64_t seed);

struct ValidationReport {
    double hermiticity_dev = 0;  // max |rho - rho^dag|
    double trace_dev = 0;        // |tr(rho) - 1|
    double min_eigenvalue = 0;
    bool hermitian_ok = false;   // <= 1e-10
    bool trace_ok = false;       // <= 1e-10
    bool psd_ok = false;         // min eigenvalue >= -1e-9
    bool pass() const { return hermitian_ok && trace_ok && psd_ok; }
    // Name of the first violated invariant, empty when pass().
    std::string first_violation() const;
};

ValidationReport validate(const DensityMatrix& rho);

double purity(const DensityMatrix& rho);

}  // namespace gme
