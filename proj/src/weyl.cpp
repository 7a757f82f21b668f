#include "gme/weyl.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace gme {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_dim(int d) {
    if (d < 2) throw std::invalid_argument("weyl: dimension must be >= 2");
}

}  // namespace

cx omega_power(int d, long e) {
    long r = e % d;
    if (r < 0) r += d;
    return std::polar(1.0, 2.0 * kPi * static_cast<double>(r) / d);
}

Matrix weyl_operator(int d, WeylIndex idx) {
    check_dim(d);
    if (idx.i < 0 || idx.i >= d || idx.j < 0 || idx.j >= d)
        throw std::invalid_argument("weyl: index out of range");
    Matrix A = Matrix::Zero(d, d);
    for (int m = 0; m < d; ++m)
        A(m, (m + idx.j) % d) = omega_power(d, static_cast<long>(idx.i) * m);
    return A;
}

WeylBasis::WeylBasis(int d) : d_(d), omega_(std::polar(1.0, 2.0 * kPi / d)) {
    check_dim(d);
    all_.reserve(static_cast<size_t>(d) * d);
    for (int code = 0; code < d * d; ++code)
        all_.push_back(weyl_operator(d, weyl_index(d, code)));
    ops_.assign(all_.begin() + 1, all_.end());
}

const Matrix& WeylBasis::op(WeylIndex idx) const { return op_by_code(weyl_code(d_, idx)); }

const Matrix& WeylBasis::op_by_code(int code) const {
    if (code < 0 || code >= d_ * d_)
        throw std::invalid_argument("weyl: operator code out of range");
    return all_[static_cast<size_t>(code)];
}

const WeylBasis& basis(int d) {
    check_dim(d);
    static std::mutex mu;
    static std::map<int, std::unique_ptr<const WeylBasis>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(d);
    if (it == cache.end())
        it = cache.emplace(d, std::make_unique<const WeylBasis>(d)).first;
    return *it->second;
}

AlgebraReport algebra_check(int d) {
    const WeylBasis& wb = basis(d);
    AlgebraReport rep;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            const Matrix& Aij = wb.op({i, j});

            // dagger rule
            Matrix dag = omega_power(d, static_cast<long>(i) * j) *
                         wb.op({(d - i) % d, (d - j) % d});
            rep.dagger_rule =
                std::max(rep.dagger_rule, (Aij.adjoint() - dag).cwiseAbs().maxCoeff());

            for (int k = 0; k < d; ++k)
                for (int l = 0; l < d; ++l) {
                    const Matrix& Akl = wb.op({k, l});

                    Matrix rhs = omega_power(d, static_cast<long>(j) * k) *
                                 wb.op({(i + k) % d, (j + l) % d});
                    rep.product_rule =
                        std::max(rep.product_rule, (Aij * Akl - rhs).cwiseAbs().maxCoeff());

                    cx tr = (Aij * Akl.adjoint()).trace();
                    cx expect = (i == k && j == l) ? cx(d, 0) : cx(0, 0);
                    rep.orthogonality = std::max(rep.orthogonality, std::abs(tr - expect));
                }
        }
    return rep;
}

}  // namespace gme
