#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gme/bloch.hpp"
#include "gme/states.hpp"
#include "gme/weyl.hpp"
#include "oracles.hpp"

using namespace gme;

namespace {

double max_abs_diff(const Matrix& a, const Matrix& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

DensityMatrix random_mixture(const PartySystem& sys, std::uint64_t seed) {
    Matrix acc = 0.35 * random_pure(sys, seed).entries +
                 0.40 * random_pure(sys, seed + 1).entries +
                 0.25 * random_pure(sys, seed + 2).entries;
    return {sys, std::move(acc)};
}

}  // namespace

TEST_CASE("coefficients match the materialized Kronecker-word oracle") {
    PartySystem sys({2, 3});
    DensityMatrix rho = random_mixture(sys, 100);
    BlochTensor t = decompose(rho);

    // subset {0}: codes over party 0 with identity on party 1
    const auto& t0 = t.coefficients(0b01);
    for (int code = 1; code < 4; ++code) {
        cx expect = oracles::correlation_coefficient(rho, {{code / 2, code % 2}, {0, 0}});
        CHECK(std::abs(t0[code - 1] - expect) < 1e-12);
    }
    const auto& t1 = t.coefficients(0b10);
    for (int code = 1; code < 9; ++code) {
        cx expect = oracles::correlation_coefficient(rho, {{0, 0}, {code / 3, code % 3}});
        CHECK(std::abs(t1[code - 1] - expect) < 1e-12);
    }
    // subset {0,1}: party 1 fastest
    const auto& t01 = t.coefficients(0b11);
    for (int c0 = 1; c0 < 4; ++c0)
        for (int c1 = 1; c1 < 9; ++c1) {
            cx expect =
                oracles::correlation_coefficient(rho, {{c0 / 2, c0 % 2}, {c1 / 3, c1 % 3}});
            CHECK(std::abs(t01[(c0 - 1) * 8 + (c1 - 1)] - expect) < 1e-12);
        }
}

TEST_CASE("three-party coefficients match the oracle") {
    PartySystem sys({2, 2, 3});
    DensityMatrix rho = random_mixture(sys, 17);
    BlochTensor t = decompose(rho);
    // spot-check the full subset and a middle pair
    const auto& t12 = t.coefficients(0b110);  // parties {1,2}, party 2 fastest
    cx expect = oracles::correlation_coefficient(rho, {{0, 0}, {1, 1}, {2, 1}});
    CHECK(std::abs(t12[(3 - 1) * 8 + (2 * 3 + 1 - 1)] - expect) < 1e-12);

    const auto& t012 = t.coefficients(0b111);
    cx expect_full = oracles::correlation_coefficient(rho, {{0, 1}, {1, 0}, {1, 2}});
    // codes: party0 = 1, party1 = 2, party2 = 1*3+2 = 5; party 2 fastest
    CHECK(std::abs(t012[(1 - 1) * 3 * 8 + (2 - 1) * 8 + (5 - 1)] - expect_full) < 1e-12);
}

TEST_CASE("decompose of simple states") {
    DensityMatrix mixed{PartySystem({2, 3}), Matrix::Identity(6, 6) / 6.0};
    BlochTensor t = decompose(mixed);
    for (const auto& [mask, tensor] : t.coefficients())
        for (cx c : tensor) CHECK(std::abs(c) < 1e-14);

    // |0><0| on one qubit: T = (0, 1, 0) in ordering (01),(10),(11)
    Matrix zero = Matrix::Zero(2, 2);
    zero(0, 0) = 1;
    BlochTensor tz = decompose({PartySystem({2}), zero});
    const auto& v = tz.coefficients(1);
    CHECK(std::abs(v[0]) < 1e-14);
    CHECK(std::abs(v[1] - cx(1, 0)) < 1e-14);
    CHECK(std::abs(v[2]) < 1e-14);

    // GHZ_2: no local coefficients, pair norm 3
    BlochTensor tg = decompose(from_ket(named_state(NamedState::GHZ, {2, 2})));
    CHECK(tg.subset_norm_sq(0b01) < 1e-14);
    CHECK(tg.subset_norm_sq(0b10) < 1e-14);
    CHECK(std::abs(tg.subset_norm_sq(0b11) - 3.0) < 1e-12);
}

TEST_CASE("reconstruct inverts decompose") {
    for (auto dims : std::vector<std::vector<int>>{{2, 2}, {2, 3}, {2, 2, 2}, {3, 3, 2}}) {
        PartySystem sys(dims);
        DensityMatrix rho = random_mixture(sys, 7 * dims.size());
        CHECK(max_abs_diff(reconstruct(decompose(rho)).entries, rho.entries) < 1e-10);
    }

    // all-zero coefficients give the maximally mixed state
    PartySystem sys({2, 2});
    std::map<SubsetMask, std::vector<cx>> zeros;
    for (SubsetMask m = 1; m < 4; ++m)
        zeros[m] = std::vector<cx>(subset_tensor_size(sys, m), cx(0, 0));
    CHECK(max_abs_diff(reconstruct(BlochTensor(sys, zeros)).entries,
                       Matrix::Identity(4, 4) / 4.0) < 1e-14);

    // a single unit coefficient u_{01} gives (I + X)/2
    PartySystem q({2});
    std::map<SubsetMask, std::vector<cx>> coeffs;
    coeffs[1] = {cx(1, 0), cx(0, 0), cx(0, 0)};
    Matrix expect(2, 2);
    expect << 0.5, 0.5, 0.5, 0.5;
    DensityMatrix rec = reconstruct(BlochTensor(q, coeffs));
    CHECK(max_abs_diff(rec.entries, expect) < 1e-14);
    CHECK(validate(rec).pass());
}

TEST_CASE("round trip on a noisy GHZ_4 state") {
    DensityMatrix rho = white_noise_mix(named_state(NamedState::GHZ, {4, 2}), 0.7);
    CHECK(max_abs_diff(reconstruct(decompose(rho)).entries, rho.entries) < 1e-10);
}

TEST_CASE("coefficient shape validation") {
    PartySystem sys({2, 2});
    std::map<SubsetMask, std::vector<cx>> bad;
    bad[1] = {cx(0, 0), cx(0, 0)};  // should be 3 entries
    CHECK_THROWS_AS(BlochTensor(sys, bad), std::invalid_argument);
}

TEST_CASE("subset norms") {
    BlochTensor t = decompose({PartySystem({2, 2}), Matrix::Identity(4, 4) / 4.0});
    CHECK(subset_norm_sq(t, {0}) < 1e-20);
    CHECK(subset_norm_sq(t, {0, 1}) < 1e-20);
    CHECK_THROWS_AS(subset_norm_sq(t, {}), std::invalid_argument);
    CHECK_THROWS_AS(subset_norm_sq(t, {5}), std::invalid_argument);

    // any pure qubit saturates ||T||^2 = d - 1 = 1
    for (std::uint64_t seed : {3u, 4u, 5u}) {
        BlochTensor tp = decompose(random_pure(PartySystem({2}), seed));
        CHECK(std::abs(tp.subset_norm_sq(1) - 1.0) < 1e-10);
    }

    // Bell state saturates the pair cap
    BlochTensor tb = decompose(from_ket(named_state(NamedState::GHZ, {2, 2})));
    CHECK(std::abs(subset_norm_sq(tb, {0, 1}) - 3.0) < 1e-12);
}

TEST_CASE("sector norms and the purity identity") {
    BlochTensor mixed = decompose({PartySystem({3, 3, 2}), Matrix::Identity(18, 18) / 18.0});
    for (double a : sector_norms(mixed).values) CHECK(a < 1e-20);

    // pure GHZ_4: 1 + sum A_s = D tr rho^2 = 16
    DensityMatrix ghz4 = from_ket(named_state(NamedState::GHZ, {4, 2}));
    SectorNorms norms = sector_norms(decompose(ghz4));
    double total = 1;
    for (double a : norms.values) total += a;
    CHECK(std::abs(total - 16.0) < 1e-10);
    // sector pattern of GHZ_4: A_1 = 0, A_2 = 6, A_3 = 0, A_4 = 9
    CHECK(std::abs(norms.values[0]) < 1e-12);
    CHECK(std::abs(norms.values[1] - 6.0) < 1e-10);
    CHECK(std::abs(norms.values[2]) < 1e-12);
    CHECK(std::abs(norms.values[3] - 9.0) < 1e-10);

    CHECK(purity_identity_residual({PartySystem({3, 3, 2}), Matrix::Identity(18, 18) / 18.0}) <
          1e-12);
    for (std::uint64_t seed = 0; seed < 20; ++seed)
        CHECK(purity_identity_residual(random_pure(PartySystem({2, 2, 2}), seed)) <= 1e-9);
    CHECK(purity_identity_residual(white_noise_mix(named_state(NamedState::GHZ, {4, 2}), 0.37)) <=
          1e-9);
}

TEST_CASE("marginal purity identity for pure states") {
    DensityMatrix ghz3 = from_ket(named_state(NamedState::GHZ, {3, 2}));
    CHECK(marginal_identity_residual(ghz3, 0) <= 1e-10);

    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        DensityMatrix rho = random_pure(PartySystem({3, 3, 2}), seed);
        CHECK(marginal_identity_residual(rho, 2) <= 1e-8);
    }

    DensityMatrix prod = kron(random_pure(PartySystem({2}), 1), random_pure(PartySystem({3}), 2));
    CHECK(marginal_identity_residual(prod, 0) <= 1e-10);
    CHECK(marginal_identity_residual(prod, 1) <= 1e-10);

    DensityMatrix mixed = white_noise_mix(named_state(NamedState::GHZ, {3, 2}), 0.5);
    CHECK_THROWS_AS(marginal_identity_residual(mixed, 0), std::invalid_argument);
}

TEST_CASE("hermiticity constraint on single-party coefficients") {
    for (auto dims : std::vector<std::vector<int>>{{2, 2}, {3, 2}}) {
        PartySystem sys(dims);
        DensityMatrix rho = random_mixture(sys, 55);
        BlochTensor t = decompose(rho);
        for (int p = 0; p < sys.parties(); ++p) {
            int d = sys.dims[p];
            const auto& u = t.coefficients(SubsetMask{1} << p);
            for (int code = 1; code < d * d; ++code) {
                int i = code / d, j = code % d;
                int neg = ((d - i) % d) * d + (d - j) % d;
                if (neg == 0) continue;  // self-paired only through identity
                cx lhs = u[neg - 1];
                cx rhs = omega_power(d, static_cast<long>(i) * j) * std::conj(u[code - 1]);
                CHECK(std::abs(lhs - rhs) < 1e-10);
            }
        }
    }
}

TEST_CASE("single-party cap is saturated exactly by pure states") {
    for (int d : {2, 3, 4}) {
        PartySystem sys({d});
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            DensityMatrix pure = random_pure(sys, seed);
            double nsq = decompose(pure).subset_norm_sq(1);
            CHECK(nsq <= d - 1 + 1e-9);
            CHECK(std::abs(nsq - (d - 1)) <= 1e-9);
        }
        DensityMatrix mixed{
            sys, 0.5 * random_pure(sys, 1).entries + 0.5 * random_pure(sys, 2).entries};
        double nsq = decompose(mixed).subset_norm_sq(1);
        CHECK(nsq <= d - 1 - 1e-6);  // strictly inside for a genuine mixture
    }
}

TEST_CASE("pair identity on pure two-party states") {
    for (auto dims : std::vector<std::vector<int>>{{2, 2}, {2, 3}, {3, 3}, {2, 4}}) {
        PartySystem sys(dims);
        double cap = static_cast<double>(dims[0]) * dims[1] - 1;
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            BlochTensor t = decompose(random_pure(sys, seed));
            double t1 = t.subset_norm_sq(1), t2 = t.subset_norm_sq(2);
            double t12 = t.subset_norm_sq(3);
            CHECK(std::abs(t12 - (cap - t1 - t2)) < 1e-8);
        }
    }
}
