#include "gme/states.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

namespace gme {

namespace {

long flat_index(const PartySystem& sys, const std::vector<int>& multi) {
    if (static_cast<int>(multi.size()) != sys.parties())
        throw std::invalid_argument("ket: multi-index arity does not match party count");
    long idx = 0;
    for (int p = 0; p < sys.parties(); ++p) {
        if (multi[p] < 0 || multi[p] >= sys.dims[p])
            throw std::invalid_argument("ket: basis index out of range");
        idx = idx * sys.dims[p] + multi[p];
    }
    return idx;
}

}  // namespace

void KetExpression::set(const std::vector<int>& multi_index, cx amplitude) {
    flat_index(system, multi_index);  // range check
    amplitudes[multi_index] = amplitude;
}

Vector KetExpression::to_vector() const {
    Vector v = Vector::Zero(system.total_dim());
    for (const auto& [multi, amp] : amplitudes) v(flat_index(system, multi)) += amp;
    double norm = v.norm();
    if (!(norm > 0) || !std::isfinite(norm))
        throw std::invalid_argument("ket: degenerate (all-zero) amplitude map");
    return v / norm;
}

KetExpression named_state(NamedState name, NamedStateParams params) {
    switch (name) {
        case NamedState::GHZ: {
            if (params.n < 2 || params.d < 2)
                throw std::invalid_argument("named_state: GHZ requires n >= 2 and d >= 2");
            KetExpression ket(PartySystem(std::vector<int>(params.n, params.d)));
            double a = 1.0 / std::sqrt(static_cast<double>(params.d));
            for (int m = 0; m < params.d; ++m)
                ket.set(std::vector<int>(params.n, m), a);
            return ket;
        }
        case NamedState::W: {
            if (params.n < 3)
                throw std::invalid_argument("named_state: W requires n >= 3 qubits");
            KetExpression ket(PartySystem(std::vector<int>(params.n, 2)));
            double a = 1.0 / std::sqrt(static_cast<double>(params.n));
            for (int p = 0; p < params.n; ++p) {
                std::vector<int> multi(params.n, 0);
                multi[params.n - 1 - p] = 1;
                ket.set(multi, a);
            }
            return ket;
        }
        case NamedState::Paper332: {
            // (1/sqrt5)[(|10> + |21>)|0> + (|00> + |11> + |22>)|1>] on dims (3,3,2)
            KetExpression ket(PartySystem({3, 3, 2}));
            double a = 1.0 / std::sqrt(5.0);
            ket.set({1, 0, 0}, a);
            ket.set({2, 1, 0}, a);
            ket.set({0, 0, 1}, a);
            ket.set({1, 1, 1}, a);
            ket.set({2, 2, 1}, a);
            return ket;
        }
    }
    throw std::invalid_argument("named_state: unknown name");
}

DensityMatrix from_ket(const KetExpression& ket) {
    Vector v = ket.to_vector();
    return {ket.system, v * v.adjoint()};
}

DensityMatrix white_noise_mix(const KetExpression& psi, double x) {
    return white_noise_mix(from_ket(psi), x);
}

DensityMatrix white_noise_mix(const DensityMatrix& pure, double x) {
    if (!(x >= 0.0 && x <= 1.0))
        throw std::invalid_argument("white_noise_mix: x must lie in [0,1]");
    long D = pure.dim();
    Matrix m = x * pure.entries;
    m += Matrix::Identity(D, D) * ((1.0 - x) / static_cast<double>(D));
    return {pure.system, std::move(m)};
}

DensityMatrix kron(const DensityMatrix& a, const DensityMatrix& b) {
    std::vector<int> dims = a.system.dims;
    dims.insert(dims.end(), b.system.dims.begin(), b.system.dims.end());
    long ra = a.dim(), rb = b.dim();
    Matrix m(ra * rb, ra * rb);
    for (long i = 0; i < ra; ++i)
        for (long j = 0; j < ra; ++j)
            m.block(i * rb, j * rb, rb, rb) = a.entries(i, j) * b.entries;
    return {PartySystem(std::move(dims)), std::move(m)};
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep) {
    const PartySystem& sys = rho.system;
    const int n = sys.parties();
    if (keep.empty())
        throw std::invalid_argument("partial_trace: keep set must be nonempty");
    SubsetMask km = mask_of(keep, n);
    std::vector<int> kept = parties_of(km);

    std::vector<int> kept_dims, traced;
    for (int p : kept) kept_dims.push_back(sys.dims[p]);
    for (int p = 0; p < n; ++p)
        if (!(km & (SubsetMask{1} << p))) traced.push_back(p);

    // strides in the full space; party 0 is the slowest-varying index
    std::vector<long> stride(n, 1);
    for (int p = n - 2; p >= 0; --p) stride[p] = stride[p + 1] * sys.dims[p + 1];

    PartySystem out_sys{kept_dims};
    long Dk = out_sys.total_dim();
    long Dt = 1;
    for (int p : traced) Dt *= sys.dims[p];

    auto embed = [&](long reduced, const std::vector<int>& parties) {
        long full = 0;
        for (auto it = parties.rbegin(); it != parties.rend(); ++it) {
            int d = sys.dims[*it];
            full += (reduced % d) * stride[*it];
            reduced /= d;
        }
        return full;
    };

    Matrix m = Matrix::Zero(Dk, Dk);
    for (long t = 0; t < Dt; ++t) {
        long toff = embed(t, traced);
        for (long i = 0; i < Dk; ++i) {
            long ioff = embed(i, kept) + toff;
            for (long j = 0; j < Dk; ++j) m(i, j) += rho.entries(ioff, embed(j, kept) + toff);
        }
    }
    return {std::move(out_sys), std::move(m)};
}

Vector random_pure_vector(const PartySystem& system, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vector v(system.total_dim());
    for (long i = 0; i < v.size(); ++i) {
        double re = gauss(rng);
        double im = gauss(rng);
        v(i) = cx(re, im);
    }
    double norm = v.norm();
    if (!(norm > 0)) return random_pure_vector(system, seed + 0x9e3779b97f4a7c15ull);
    return v / norm;
}

DensityMatrix random_pure(const PartySystem& system, std::uint64_t seed) {
    Vector v = random_pure_vector(system, seed);
    return {system, v * v.adjoint()};
}

std::pair<DensityMatrix, BiseparableSample> random_biseparable(const PartySystem& system,
                                                               const Bipartition& bip,
                                                               int terms, std::uint64_t seed) {
    if (terms < 1)
        throw std::invalid_argument("random_biseparable: terms must be >= 1");
    std::vector<int> ldims, rdims;
    for (int p : bip.left) ldims.push_back(system.dims.at(p));
    for (int p : bip.right) rdims.push_back(system.dims.at(p));
    PartySystem lsys{ldims}, rsys{rdims};

    std::mt19937_64 rng(seed);
    std::exponential_distribution<double> expo(1.0);

    // uniform simplex weights via normalized exponentials
    std::vector<double> w(terms);
    double total = 0;
    for (double& wi : w) {
        wi = expo(rng);
        total += wi;
    }
    for (double& wi : w) wi /= total;

    BiseparableSample sample{bip, w, {}};
    long D = system.total_dim();
    Matrix acc = Matrix::Zero(D, D);

    // permutation taking (left parties, right parties) order back to 0..n-1
    std::vector<int> order = bip.left;
    order.insert(order.end(), bip.right.begin(), bip.right.end());
    const int n = system.parties();
    std::vector<long> stride(n, 1);
    for (int p = n - 2; p >= 0; --p) stride[p] = stride[p + 1] * system.dims[p + 1];

    auto to_full = [&](long mixed) {
        long full = 0;
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            int d = system.dims[*it];
            full += (mixed % d) * stride[*it];
            mixed /= d;
        }
        return full;
    };

    for (int s = 0; s < terms; ++s) {
        DensityMatrix l = random_pure(lsys, rng());
        DensityMatrix r = random_pure(rsys, rng());
        DensityMatrix prod = kron(l, r);  // dims in (left..., right...) order
        for (long i = 0; i < D; ++i)
            for (long j = 0; j < D; ++j)
                acc(to_full(i), to_full(j)) += w[s] * prod.entries(i, j);
        sample.factors.emplace_back(std::move(l), std::move(r));
    }
    return {DensityMatrix{system, std::move(acc)}, std::move(sample)};
}

ValidationReport validate(const DensityMatrix& rho) {
    ValidationReport rep;
    rep.hermiticity_dev = (rho.entries - rho.entries.adjoint().eval()).cwiseAbs().maxCoeff();
    rep.trace_dev = std::abs(rho.entries.trace() - cx(1.0, 0.0));
    Eigen::SelfAdjointEigenSolver<Matrix> es(
        0.5 * (rho.entries + rho.entries.adjoint().eval()), Eigen::EigenvaluesOnly);
    rep.min_eigenvalue = es.eigenvalues().minCoeff();
    rep.hermitian_ok = rep.hermiticity_dev <= 1e-10;
    rep.trace_ok = rep.trace_dev <= 1e-10;
    rep.psd_ok = rep.min_eigenvalue >= -1e-9;
    return rep;
}

std::string ValidationReport::first_violation() const {
    if (!hermitian_ok) return "hermiticity";
    if (!trace_ok) return "unit trace";
    if (!psd_ok) return "positive semidefiniteness";
    return {};
}

double purity(const DensityMatrix& rho) {
    return (rho.entries * rho.entries).trace().real();
}

}  // namespace gme
