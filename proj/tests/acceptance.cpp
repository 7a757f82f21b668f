// Acceptance suite: end-to-end checks of the detection pipeline against
// its published targets and sampling contracts. One line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "gme/bloch.hpp"
#include "gme/criteria.hpp"
#include "gme/scan.hpp"
#include "gme/states.hpp"
#include "gme/weyl.hpp"
#include "oracles.hpp"

using namespace gme;

namespace {

int failures = 0;

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

void criterion(int number, const std::string& name, const std::function<bool(std::string&)>& fn) {
    auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
        ok = fn(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] %d. %s (%.2f s)%s%s\n", ok ? "PASS" : "FAIL", number, name.c_str(), secs,
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++failures;
}

DensityMatrix random_mixed(const PartySystem& sys, std::uint64_t seed, int terms) {
    Matrix acc = Matrix::Zero(sys.total_dim(), sys.total_dim());
    double total = 0;
    std::vector<double> w(terms);
    for (int i = 0; i < terms; ++i) {
        w[i] = 0.2 + ((seed * 2654435761u + i * 40503u) % 1000) / 1000.0;
        total += w[i];
    }
    for (int i = 0; i < terms; ++i)
        acc += (w[i] / total) * random_pure(sys, seed * 101 + i).entries;
    return {sys, std::move(acc)};
}

bool within(double value, double target, double tol, std::string& detail,
            const std::string& label) {
    if (std::abs(value - target) <= tol) return true;
    detail += label + " = " + std::to_string(value) + " vs " + std::to_string(target) + "; ";
    return false;
}

}  // namespace

int main() {
    // 1. Weyl algebra identities, exhaustive for d = 2..7
    criterion(1, "Weyl algebra identities (d = 2..7, max deviation <= 1e-12, < 5 s)",
              [](std::string& detail) {
                  auto start = std::chrono::steady_clock::now();
                  double worst = 0;
                  for (int d = 2; d <= 7; ++d) worst = std::max(worst, algebra_check(d).max());
                  double secs =
                      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                          .count();
                  detail = "max deviation " + sci(worst);
                  return worst <= 1e-12 && secs < 5.0;
              });

    // 2. Bloch round trip on 200 random mixed states
    criterion(2, "Bloch round trip (200 mixed states, deviation <= 1e-10, < 30 s)",
              [](std::string& detail) {
                  auto start = std::chrono::steady_clock::now();
                  std::vector<std::vector<int>> all_dims = {
                      {2, 2}, {2, 3}, {2, 2, 2}, {3, 3, 2}, {2, 2, 2, 2}};
                  double worst = 0;
                  for (const auto& dims : all_dims) {
                      PartySystem sys(dims);
                      for (int s = 0; s < 40; ++s) {
                          DensityMatrix rho = random_mixed(sys, 1000 + s, 2 + s % 3);
                          double dev =
                              (reconstruct(decompose(rho)).entries - rho.entries)
                                  .cwiseAbs()
                                  .maxCoeff();
                          worst = std::max(worst, dev);
                      }
                  }
                  double secs =
                      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                          .count();
                  detail = "max deviation " + sci(worst);
                  return worst <= 1e-10 && secs < 30.0;
              });

    // 3. norm-cap suites with the purity identity along the way
    criterion(3, "norm-cap suites (1000 samples per system, zero violations)",
              [](std::string& detail) {
                  long violations = 0;
                  double worst_purity_residual = 0;

                  // single-party cap, saturation iff pure
                  for (int d : {2, 3, 4}) {
                      PartySystem sys({d});
                      for (int s = 0; s < 500; ++s) {
                          DensityMatrix pure = random_pure(sys, 10000 + s);
                          double nsq = decompose(pure).subset_norm_sq(1);
                          if (nsq > d - 1 + 1e-9) ++violations;
                          if (std::abs(nsq - (d - 1)) > 1e-9) ++violations;
                          worst_purity_residual = std::max(worst_purity_residual,
                                                           purity_identity_residual(pure));

                          DensityMatrix mixed = random_mixed(sys, 20000 + s, 2 + s % 2);
                          double msq = decompose(mixed).subset_norm_sq(1);
                          if (msq > d - 1 + 1e-9) ++violations;
                          if (purity(mixed) < 1 - 1e-6 && msq >= d - 1 - 1e-9) ++violations;
                          worst_purity_residual = std::max(worst_purity_residual,
                                                           purity_identity_residual(mixed));
                      }
                  }

                  // pair cap and the exact pure-state identity
                  for (auto dims : std::vector<std::vector<int>>{{2, 2}, {2, 3}, {3, 3}, {2, 4}}) {
                      PartySystem sys(dims);
                      double cap = pair_norm_bound(dims[0], dims[1]);
                      for (int s = 0; s < 1000; ++s) {
                          BlochTensor t = decompose(random_pure(sys, 30000 + s));
                          double t12 = t.subset_norm_sq(3);
                          double identity = dims[0] * dims[1] - 1 - t.subset_norm_sq(1) -
                                            t.subset_norm_sq(2);
                          if (std::abs(t12 - identity) > 1e-8) ++violations;
                          if (t12 > cap + 1e-9) ++violations;
                      }
                      worst_purity_residual = std::max(
                          worst_purity_residual,
                          purity_identity_residual(random_pure(sys, 31777)));
                  }

                  // full-correlation cap where the hypothesis holds
                  for (auto dims :
                       std::vector<std::vector<int>>{{2, 2, 2}, {2, 2, 2, 2}, {2, 2, 3}}) {
                      PartySystem sys(dims);
                      BoundValue nb = group_norm_bound(dims);
                      if (!nb.hypothesis_ok) continue;
                      SubsetMask full = (SubsetMask{1} << dims.size()) - 1;
                      for (int s = 0; s < 1000; ++s) {
                          DensityMatrix pure = random_pure(sys, 40000 + s);
                          BlochTensor t = decompose(pure);
                          if (t.subset_norm_sq(full) > nb.value + 1e-8) ++violations;
                          if (s % 100 == 0)
                              worst_purity_residual = std::max(worst_purity_residual,
                                                               purity_identity_residual(pure));
                      }
                  }
                  if (worst_purity_residual > 1e-9) ++violations;

                  detail = std::to_string(violations) + " violations, purity residual " +
                           sci(worst_purity_residual);
                  return violations == 0;
              });

    // 4. biseparable sampling against the separability bounds
    criterion(4, "biseparable bound sampling (3 x 1000 samples, zero violations)",
              [](std::string& detail) {
                  BiseparableCheck a = biseparable_bound_check(PartySystem({2, 2, 2}),
                                                               Bipartition({0}, {1, 2}, 3),
                                                               CriterionParams{1, 1, 1}, 1000, 5);
                  BiseparableCheck b = biseparable_bound_check(PartySystem({3, 3, 2}),
                                                               Bipartition({2}, {0, 1}, 3),
                                                               CriterionParams{0, 0, 1}, 1000, 6);
                  BiseparableCheck c = biseparable_bound_check(PartySystem({2, 2, 2, 2}),
                                                               Bipartition({0, 1}, {2, 3}, 4),
                                                               CriterionParams{1, 1}, 1000, 7);
                  detail = "violations " + std::to_string(a.violations) + "/" +
                           std::to_string(b.violations) + "/" + std::to_string(c.violations) +
                           ", margins " + sci(a.bound - a.max_norm) + "/" +
                           sci(b.bound - b.max_norm) + "/" + sci(c.bound - c.max_norm);
                  return a.applicable && b.applicable && c.applicable && a.violations == 0 &&
                         b.violations == 0 && c.violations == 0 && a.checked == 1000 &&
                         b.checked == 1000 && c.checked == 1000;
              });

    // 5. (3,3,2) white-noise thresholds
    criterion(5, "(3,3,2) family thresholds 0.51 / 0.67 / 0.57 (+-0.01, < 10 s)",
              [](std::string& detail) {
                  auto start = std::chrono::steady_clock::now();
                  FamilySpec family{named_state(NamedState::Paper332), 0, 1};
                  bool ok = true;
                  struct Row {
                      CriterionParams p;
                      double expect;
                  };
                  std::vector<Row> rows = {{CriterionParams{0, 0, 1}, 0.51},
                                           {CriterionParams{0.5, 0, 1}, 0.67},
                                           {CriterionParams{1.0 / 3.0, 0, 2}, 0.57}};
                  for (const Row& row : rows) {
                      ScanResult res = threshold_scan(family, row.p);
                      if (!res.threshold) {
                          ok = false;
                          detail += "missing threshold; ";
                          continue;
                      }
                      char buf[32];
                      std::snprintf(buf, sizeof(buf), "%.4f ", *res.threshold);
                      detail += buf;
                      ok = within(*res.threshold, row.expect, 0.01, detail, "threshold") && ok;
                  }
                  double secs =
                      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                          .count();
                  return ok && secs < 10.0;
              });

    // 6. four-qubit GHZ family: bounds, norms, threshold
    criterion(6, "GHZ_4 family: M = 3, (4+sqrt2)x, J2, T = 5x, threshold 0.9464 (< 10 s)",
              [](std::string& detail) {
                  auto start = std::chrono::steady_clock::now();
                  const CriterionParams ones{1, 1};
                  bool ok = true;

                  BoundValue m1 = split_bound(Bipartition({0}, {1, 2, 3}, 4), {2, 2, 2, 2}, ones);
                  ok = within(m1.value, 3.0, 1e-12, detail, "M_1|234") && ok;

                  double j2 = symmetric_threshold(2, 4, ones);
                  ok = within(j2, std::sqrt(3.0) * (1 + std::sqrt(3.0)), 1e-12, detail, "J2") &&
                       ok;

                  KetExpression ghz4 = named_state(NamedState::GHZ, {4, 2});
                  const double slope1 = 4.0 + std::sqrt(2.0);
                  Bipartition first({0}, {1, 2, 3}, 4);
                  for (int g = 0; g <= 10; ++g) {
                      double x = g / 10.0;
                      DensityMatrix rho = white_noise_mix(ghz4, x);
                      BlochTensor t = decompose(rho);
                      double norm1 = trace_norm(multipartite_block_matrix(t, first, ones));
                      ok = within(norm1, slope1 * x, 1e-6, detail, "||N_1|234||") && ok;
                      double score = detection_score(t, ones).score;
                      ok = within(score, 5.0 * x, 1e-6, detail, "T") && ok;
                  }

                  ScanResult res = threshold_scan(FamilySpec{ghz4, 0, 1}, ones);
                  if (!res.threshold) {
                      detail += "missing threshold; ";
                      ok = false;
                  } else {
                      ok = within(*res.threshold, 0.9464, 1e-3, detail, "threshold") && ok;
                  }
                  double secs =
                      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                          .count();
                  return ok && secs < 10.0;
              });

    // 7. trace norm against the independent eigenvalue route
    criterion(7, "trace-norm oracle (100 random matrices up to 24x48, <= 1e-9)",
              [](std::string& detail) {
                  double worst = 0;
                  const long shapes[5][2] = {{3, 5}, {8, 8}, {12, 7}, {24, 24}, {24, 48}};
                  for (int s = 0; s < 100; ++s) {
                      long rows = shapes[s % 5][0], cols = shapes[s % 5][1];
                      Matrix m(rows, cols);
                      for (long c = 0; c < cols; ++c)
                          m.col(c) = random_pure_vector(PartySystem({static_cast<int>(rows)}),
                                                        9000 + 131 * s + c) *
                                     (1.0 + (s + c) % 7);
                      worst = std::max(worst,
                                       std::abs(trace_norm(m) - oracles::trace_norm(m)));
                  }
                  detail = "max deviation " + sci(worst);
                  return worst <= 1e-9;
              });

    // 8. linearity in the noise parameter and verdict monotonicity
    criterion(8, "white-noise linearity and verdict monotonicity on the named families",
              [](std::string& detail) {
                  struct Family {
                      KetExpression ket;
                      CriterionParams params;
                  };
                  std::vector<Family> families = {
                      {named_state(NamedState::GHZ, {3, 2}), CriterionParams{1, 1, 1}},
                      {named_state(NamedState::GHZ, {4, 2}), CriterionParams{1, 1}},
                      {named_state(NamedState::GHZ, {3, 3}), CriterionParams{1, 1, 1}},
                      {named_state(NamedState::W, {3, 2}), CriterionParams{1, 1, 1}},
                      {named_state(NamedState::W, {4, 2}), CriterionParams{1, 1}},
                      {named_state(NamedState::Paper332), CriterionParams{0, 0, 1}},
                      {named_state(NamedState::Paper332), CriterionParams{1, 1, 1}},
                  };
                  long violations = 0;
                  for (const Family& f : families) {
                      double t1 = detection_score(from_ket(f.ket), f.params).score;
                      bool was_detected = false;
                      for (int g = 1; g <= 10; ++g) {
                          double x = g / 10.0;
                          DensityMatrix rho = white_noise_mix(f.ket, x);
                          if (std::abs(detection_score(rho, f.params).score - x * t1) > 1e-9)
                              ++violations;
                          bool det = gme_verdict(rho, f.params).detected;
                          if (was_detected && !det) ++violations;
                          was_detected = det;
                      }
                  }
                  detail = std::to_string(violations) + " violations";
                  return violations == 0;
              });

    if (failures == 0)
        std::printf("acceptance: all %d criteria passed\n", 8);
    else
        std::printf("acceptance: %d criterion/criteria FAILED\n", failures);
    return failures == 0 ? 0 : 1;
}
