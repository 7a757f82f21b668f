#include "gme/scan.hpp"

#include <cmath>

namespace gme {

namespace {

struct FamilyEvaluator {
    const FamilySpec& family;
    const CriterionParams& params;
    const ScanOptions& opts;
    DensityMatrix pure;
    double K = 0;
    bool K_applicable = true;

    FamilyEvaluator(const FamilySpec& f, const CriterionParams& p, const ScanOptions& o)
        : family(f), params(p), opts(o), pure(from_ket(f.base)) {
        const std::vector<int>& dims = pure.system.dims;
        const int n = pure.system.parties();
        if (opts.restrict_split) {
            if (n == 3) {
                const Bipartition& bip = *opts.restrict_split;
                K = tripartite_split_bound(dims.at(bip.left.at(0)), dims.at(bip.right.at(0)),
                                           dims.at(bip.right.at(1)), params);
            } else {
                BoundValue b = split_bound(*opts.restrict_split, dims, params);
                K = b.value;
                K_applicable = b.hypothesis_ok;
            }
        } else if (n == 3) {
            K = tripartite_threshold(dims, params);
        } else {
            BoundValue b = multipartite_threshold(dims, params);
            K = b.value;
            K_applicable = b.hypothesis_ok;
        }
    }

    double T_at(double x) const {
        DensityMatrix rho = white_noise_mix(pure, x);
        if (opts.restrict_split)
            return trace_norm(block_matrix(decompose(rho), *opts.restrict_split, params));
        return detection_score(rho, params).score;
    }
};

}  // namespace

ScanResult threshold_scan(const FamilySpec& family, const CriterionParams& p,
                          const ScanOptions& opts) {
    if (!(family.x_lo >= 0.0 && family.x_lo < family.x_hi && family.x_hi <= 1.0))
        throw std::invalid_argument("threshold_scan: need 0 <= x_lo < x_hi <= 1");
    if (!(opts.tol > 0))
        throw std::invalid_argument("threshold_scan: tol must be positive");

    FamilyEvaluator ev(family, p, opts);
    ScanResult out;
    out.params = p;
    auto add_note = [&out](const std::string& s) {
        out.note = out.note.empty() ? s : out.note + "; " + s;
    };

    double T1 = ev.T_at(1.0);
    out.samples.push_back({1.0, T1, ev.K});
    if (!ev.K_applicable) add_note("bound hypothesis fails; threshold not certified");

    if (T1 <= 1e-14) {
        out.threshold = std::nullopt;
        add_note("degenerate family: T(1) = 0, nothing to detect");
        return out;
    }

    if (!opts.force_bisection) {
        // white-noise linearity: T(x) = x T(1), so the crossing is K/T(1)
        double xs = ev.K / T1;
        if (xs >= family.x_hi) {
            out.threshold = std::nullopt;
            add_note("no detection in range: T(x_hi) <= K");
            return out;
        }
        double lo = std::max(xs - opts.tol, 0.0);
        double hi = std::min(xs + opts.tol, 1.0);
        double Tlo = ev.T_at(lo), Thi = ev.T_at(hi);
        out.samples.push_back({lo, Tlo, ev.K});
        out.samples.push_back({hi, Thi, ev.K});
        if (Tlo <= ev.K + 1e-12 && Thi >= ev.K - 1e-12) {
            out.threshold = xs;
            out.method = ScanMethod::ClosedFormLinear;
            if (xs < family.x_lo) add_note("detected across the whole scan range");
            return out;
        }
        // linearity check failed: fall through to bisection
    }

    double lo = family.x_lo, hi = family.x_hi;
    double Flo = ev.T_at(lo) - ev.K;
    double Fhi = ev.T_at(hi) - ev.K;
    out.samples.push_back({lo, Flo + ev.K, ev.K});
    out.samples.push_back({hi, Fhi + ev.K, ev.K});
    if (Flo > 0) {
        out.threshold = lo;
        out.method = ScanMethod::Bisection;
        add_note("detected across the whole scan range");
        return out;
    }
    if (Fhi <= 0) {
        out.threshold = std::nullopt;
        add_note("no detection in range");
        out.method = ScanMethod::Bisection;
        return out;
    }
    while (hi - lo > opts.tol) {
        double mid = 0.5 * (lo + hi);
        double Fmid = ev.T_at(mid) - ev.K;
        out.samples.push_back({mid, Fmid + ev.K, ev.K});
        (Fmid > 0 ? hi : lo) = mid;
    }
    out.threshold = 0.5 * (lo + hi);
    out.method = ScanMethod::Bisection;
    return out;
}

std::vector<ScanResult> scan_table(const FamilySpec& family,
                                   const std::vector<CriterionParams>& rows,
                                   const ScanOptions& opts) {
    if (rows.empty())
        throw std::invalid_argument("scan_table: need at least one parameter row");
    std::vector<ScanResult> out;
    out.reserve(rows.size());
    for (const CriterionParams& p : rows) out.push_back(threshold_scan(family, p, opts));
    return out;
}

std::vector<CurvePoint> scan_curve(const FamilySpec& family, const CriterionParams& p,
                                   int grid, const ScanOptions& opts) {
    if (grid < 2)
        throw std::invalid_argument("scan_curve: need at least 2 grid points");
    FamilyEvaluator ev(family, p, opts);
    std::vector<CurvePoint> out;
    out.reserve(grid);
    for (int g = 0; g < grid; ++g) {
        double x = family.x_lo + (family.x_hi - family.x_lo) * g / (grid - 1);
        double T = ev.T_at(x);
        out.push_back({x, T, ev.K, T - ev.K, T > ev.K});
    }
    return out;
}

double reference_line_g1(double x) { return (4.0 + std::sqrt(2.0)) * x - (1.0 + std::sqrt(5.5)); }

double reference_line_g2(double x) { return 9.0 * x * x - 4.0; }

}  // namespace gme
