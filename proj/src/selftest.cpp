#include "gme/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <set>

#include "gme/bloch.hpp"
#include "gme/criteria.hpp"
#include "gme/states.hpp"
#include "gme/weyl.hpp"

namespace gme {

namespace {

struct Reporter {
    std::ostream& os;
    int failures = 0;

    void check(const std::string& name, double residual, double tol) {
        bool ok = residual <= tol;
        if (!ok) ++failures;
        os << (ok ? "[ok]   " : "[FAIL] ") << name << ": residual " << std::scientific
           << std::setprecision(3) << residual << " (tol " << tol << ")\n";
    }
    void check_count(const std::string& name, long violations, long total) {
        bool ok = violations == 0;
        if (!ok) ++failures;
        os << (ok ? "[ok]   " : "[FAIL] ") << name << ": " << violations << "/" << total
           << " violations\n";
    }
};

// random mixed state: convex mixture of a few Haar-random pure states
DensityMatrix random_mixed(const PartySystem& sys, std::uint64_t seed, int terms) {
    Matrix acc = Matrix::Zero(sys.total_dim(), sys.total_dim());
    std::vector<double> w(terms);
    double tot = 0;
    for (int i = 0; i < terms; ++i) {
        w[i] = 0.25 + ((seed >> (i % 48)) & 0xff) / 256.0;  // deterministic, full support
        tot += w[i];
    }
    for (int i = 0; i < terms; ++i)
        acc += (w[i] / tot) * random_pure(sys, seed * 7919 + i).entries;
    return {sys, std::move(acc)};
}

}  // namespace

int run_selftest(const SelfTestOptions& opts, std::ostream& os) {
    Reporter rep{os};
    const int samples = std::max(1, opts.samples);
    const std::uint64_t seed = opts.seed;

    // --- Weyl algebra identities
    std::set<int> algebra_dims;
    if (opts.dims) {
        for (int d : *opts.dims) algebra_dims.insert(d);
    } else {
        for (int d = 2; d <= 7; ++d) algebra_dims.insert(d);
    }
    for (int d : algebra_dims) {
        AlgebraReport a = algebra_check(d);
        rep.check("weyl algebra d=" + std::to_string(d), a.max(), 1e-12);
    }

    // --- decomposition round trips on random mixed states
    std::vector<std::vector<int>> roundtrip_dims;
    if (opts.dims)
        roundtrip_dims = {*opts.dims};
    else
        roundtrip_dims = {{2, 2}, {2, 3}, {2, 2, 2}, {3, 3, 2}, {2, 2, 2, 2}};
    for (const auto& dims : roundtrip_dims) {
        PartySystem sys(dims);
        double worst = 0;
        int count = std::min(samples, 200);
        for (int s = 0; s < count; ++s) {
            DensityMatrix rho = random_mixed(sys, seed + 31 * s, 2 + s % 3);
            DensityMatrix back = reconstruct(decompose(rho));
            worst = std::max(worst, (back.entries - rho.entries).cwiseAbs().maxCoeff());
        }
        std::string label = "bloch round trip dims=";
        for (int d : dims) label += std::to_string(d);
        rep.check(label, worst, 1e-10);
    }

    // --- single-party norm cap ||T||^2 <= d-1, saturated only by pure states
    std::set<int> single_party_dims;
    if (opts.dims)
        for (int d : *opts.dims) single_party_dims.insert(d);
    else
        single_party_dims = {2, 3, 4};
    for (int d : single_party_dims) {
        PartySystem sys({d});
        double worst_excess = 0, worst_pure_gap = 0;
        long mixed_saturations = 0;
        for (int s = 0; s < samples; ++s) {
            DensityMatrix pure = random_pure(sys, seed + 17 * s);
            BlochTensor t = decompose(pure);
            double nsq = t.subset_norm_sq(1);
            worst_excess = std::max(worst_excess, nsq - (d - 1));
            worst_pure_gap = std::max(worst_pure_gap, std::abs(nsq - (d - 1)));

            DensityMatrix mixed = random_mixed(sys, seed + 17 * s, 2 + s % 2);
            double msq = decompose(mixed).subset_norm_sq(1);
            worst_excess = std::max(worst_excess, msq - (d - 1));
            if (purity(mixed) < 1.0 - 1e-6 && msq >= d - 1 - 1e-9) ++mixed_saturations;
        }
        rep.check("single-party norm cap d=" + std::to_string(d), worst_excess, 1e-9);
        rep.check("single-party saturation (pure) d=" + std::to_string(d), worst_pure_gap, 1e-9);
        rep.check_count("single-party saturation only when pure d=" + std::to_string(d),
                        mixed_saturations, samples);
    }

    // --- pair norm identity and cap on pure two-party states
    std::vector<std::vector<int>> pair_dims;
    if (opts.dims) {
        if (opts.dims->size() == 2) pair_dims = {*opts.dims};
    } else {
        pair_dims = {{2, 2}, {2, 3}, {3, 3}, {2, 4}};
    }
    for (const auto& dims : pair_dims) {
        PartySystem sys(dims);
        double m = pair_norm_bound(dims[0], dims[1]);
        double worst_eq = 0, worst_excess = 0;
        for (int s = 0; s < samples; ++s) {
            BlochTensor t = decompose(random_pure(sys, seed + 13 * s));
            double t1 = t.subset_norm_sq(1), t2 = t.subset_norm_sq(2);
            double t12 = t.subset_norm_sq(3);
            worst_eq = std::max(worst_eq, std::abs(t12 - (dims[0] * dims[1] - 1 - t1 - t2)));
            worst_excess = std::max(worst_excess, t12 - m);
        }
        std::string label = std::to_string(dims[0]) + "x" + std::to_string(dims[1]);
        rep.check("pair norm identity dims=" + label, worst_eq, 1e-8);
        rep.check("pair norm cap dims=" + label, worst_excess, 1e-9);
    }

    // --- full-correlation cap on pure n-party states (hypothesis D >= d_max^2)
    std::vector<std::vector<int>> group_dims;
    if (opts.dims) {
        if (opts.dims->size() >= 3) group_dims = {*opts.dims};
    } else {
        group_dims = {{2, 2, 2}, {2, 2, 2, 2}, {2, 2, 3}};
    }
    for (const auto& dims : group_dims) {
        BoundValue nb = group_norm_bound(dims);
        std::string label;
        for (int d : dims) label += std::to_string(d);
        if (!nb.hypothesis_ok) {
            os << "[skip] full-correlation cap dims=" << label << ": hypothesis fails\n";
            continue;
        }
        PartySystem sys(dims);
        SubsetMask full = (SubsetMask{1} << dims.size()) - 1;
        double worst = 0;
        for (int s = 0; s < samples; ++s) {
            BlochTensor t = decompose(random_pure(sys, seed + 11 * s));
            worst = std::max(worst, t.subset_norm_sq(full) - nb.value);
        }
        rep.check("full-correlation cap dims=" + label, worst, 1e-8);
    }

    // --- purity identity on everything we can cheaply sample
    {
        std::vector<std::vector<int>> purity_dims =
            opts.dims ? std::vector<std::vector<int>>{*opts.dims}
                      : std::vector<std::vector<int>>{{2, 2}, {2, 2, 2}, {3, 3, 2}, {2, 2, 2, 2}};
        double worst = 0;
        int count = std::min(samples, 200);
        for (const auto& dims : purity_dims) {
            PartySystem sys(dims);
            for (int s = 0; s < count; ++s) {
                worst = std::max(worst, purity_identity_residual(random_pure(sys, seed + s)));
                worst = std::max(worst,
                                 purity_identity_residual(random_mixed(sys, seed + s, 2 + s % 3)));
            }
        }
        rep.check("purity identity", worst, 1e-9);
    }

    // --- marginal purity identity on pure states
    {
        std::vector<std::vector<int>> marg_dims =
            opts.dims && opts.dims->size() >= 2
                ? std::vector<std::vector<int>>{*opts.dims}
                : std::vector<std::vector<int>>{{2, 2, 2}, {3, 3, 2}};
        double worst = 0;
        int count = std::min(samples, 200);
        for (const auto& dims : marg_dims) {
            PartySystem sys(dims);
            for (int s = 0; s < count; ++s) {
                DensityMatrix rho = random_pure(sys, seed + 3 * s);
                for (int p = 0; p < sys.parties(); ++p)
                    worst = std::max(worst, marginal_identity_residual(rho, p));
            }
        }
        rep.check("marginal purity identity", worst, 1e-8);
    }

    // --- biseparable samples never beat the separability bounds
    struct BisepCase {
        std::vector<int> dims;
        std::vector<int> left;
        CriterionParams params;
        std::string label;
    };
    std::vector<BisepCase> cases;
    if (opts.dims) {
        int n = static_cast<int>(opts.dims->size());
        if (n >= 3 && n <= 6)
            for (const Bipartition& bip : canonical_bipartitions(n))
                cases.push_back({*opts.dims, bip.left, CriterionParams{}, bip.to_string()});
    } else {
        cases.push_back({{2, 2, 2}, {0}, CriterionParams{1, 1, 1}, "222 split 1|23"});
        cases.push_back({{3, 3, 2}, {2}, CriterionParams{0, 0, 1}, "332 split 3|12"});
        cases.push_back({{2, 2, 2, 2}, {0, 1}, CriterionParams{1, 1, 0}, "2222 split 12|34"});
    }
    for (const BisepCase& c : cases) {
        PartySystem sys(c.dims);
        std::vector<int> right;
        for (int p = 0; p < sys.parties(); ++p)
            if (std::find(c.left.begin(), c.left.end(), p) == c.left.end()) right.push_back(p);
        Bipartition bip(c.left, right, sys.parties());
        BiseparableCheck chk = biseparable_bound_check(sys, bip, c.params, samples, seed);
        if (!chk.applicable) {
            os << "[skip] biseparable bound " << c.label << ": hypothesis fails\n";
            continue;
        }
        rep.check_count("biseparable bound " + c.label + " (max " + std::to_string(chk.max_norm) +
                            " vs bound " + std::to_string(chk.bound) + ")",
                        chk.violations, chk.checked);
    }

    os << (rep.failures == 0 ? "selftest: all checks passed\n"
                             : "selftest: " + std::to_string(rep.failures) + " check(s) FAILED\n");
    return rep.failures;
}

}  // namespace gme
