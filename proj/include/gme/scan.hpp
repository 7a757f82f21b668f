// scan.hpp
// Threshold scans over one-parameter white-noise families
// rho(x) = x |psi><psi| + (1-x)/D I. For these families every
// correlation coefficient scales linearly in x, so detection
// thresholds have the closed form x* = K / T(1); bisection is kept as
// an independent fallback and cross-check.

#pragma once

#include <functional>
#include <optional>

#include "gme/criteria.hpp"
#include "gme/states.hpp"

namespace gme {

struct FamilySpec {
    KetExpression base;
    double x_lo = 0.0;
    double x_hi = 1.0;
};

enum class ScanMethod { ClosedFormLinear, Bisection };

struct ScanPoint {
    double x = 0;
    double T = 0;
    double K = 0;
};

struct ScanResult {
    CriterionParams params;
    std::optional<double> threshold;  // none when no x in range detects
    ScanMethod method = ScanMethod::ClosedFormLinear;
    std::vector<ScanPoint> samples;
    std::string note;
};

struct ScanOptions {
    double tol = 1e-4;
    // Restrict to a single bipartition: T becomes that split's block
    // norm and K its bound (instead of the min/max over all splits).
    std::optional<Bipartition> restrict_split;
    bool force_bisection = false;
};

ScanResult threshold_scan(const FamilySpec& family, const CriterionParams& p,
                          const ScanOptions& opts = {});

std::vector<ScanResult> scan_table(const FamilySpec& family,
                                   const std::vector<CriterionParams>& rows,
                                   const ScanOptions& opts = {});

struct CurvePoint {
    double x = 0;
    double T = 0;
    double K = 0;
    double F = 0;  // T - K
    bool detected = false;
};

std::vector<CurvePoint> scan_curve(const FamilySpec& family, const CriterionParams& p,
                                   int grid, const ScanOptions& opts = {});

// Published comparison criteria for the four-qubit GHZ noise family,
// carried as fixed constants (never recomputed here).
double reference_line_g1(double x);  // (4+sqrt2) x - (1+sqrt(11/2))
double reference_line_g2(double x);  // 9 x^2 - 4

}  // namespace gme
