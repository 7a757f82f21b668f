#include "gme/bloch.hpp"

#include <cmath>

#include "gme/weyl.hpp"

namespace gme {

namespace {

// Strides of the interleaved tensor, one axis of size d_p^2 per party,
// party 0 slowest.
std::vector<long> interleaved_strides(const PartySystem& sys) {
    const int n = sys.parties();
    std::vector<long> st(n, 1);
    for (int p = n - 2; p >= 0; --p) st[p] = st[p + 1] * sys.dims[p + 1] * sys.dims[p + 1];
    return st;
}

// Forward per-party step: axis entries (row m, col (m+b) mod d) with code
// m*d + (m+b)%d become Weyl coefficients c_{ab} = sum_m omega^{-am} v_m,b.
// Inverse undoes it with a 1/d factor. Both walk every block of the axis.
void party_transform(std::vector<cx>& data, int d, long inner, bool forward) {
    const long axis = static_cast<long>(d) * d;
    const long total = static_cast<long>(data.size());
    const long outer = total / (axis * inner);

    std::vector<cx> omega_pow(d);
    for (int k = 0; k < d; ++k) omega_pow[k] = omega_power(d, k);

    std::vector<cx> tmp(axis);
    for (long o = 0; o < outer; ++o)
        for (long i = 0; i < inner; ++i) {
            const long base = o * axis * inner + i;
            if (forward) {
                for (int b = 0; b < d; ++b)
                    for (int a = 0; a < d; ++a) {
                        cx acc = 0;
                        for (int m = 0; m < d; ++m)
                            acc += std::conj(omega_pow[(a * m) % d]) *
                                   data[base + (static_cast<long>(m) * d + (m + b) % d) * inner];
                        tmp[static_cast<long>(a) * d + b] = acc;
                    }
            } else {
                for (int b = 0; b < d; ++b)
                    for (int m = 0; m < d; ++m) {
                        cx acc = 0;
                        for (int a = 0; a < d; ++a)
                            acc += omega_pow[(a * m) % d] *
                                   data[base + (static_cast<long>(a) * d + b) * inner];
                        tmp[static_cast<long>(m) * d + (m + b) % d] = acc / static_cast<double>(d);
                    }
            }
            for (long k = 0; k < axis; ++k) data[base + k * inner] = tmp[k];
        }
}

std::vector<long> row_strides(const PartySystem& sys) {
    const int n = sys.parties();
    std::vector<long> st(n, 1);
    for (int p = n - 2; p >= 0; --p) st[p] = st[p + 1] * sys.dims[p + 1];
    return st;
}

}  // namespace

long subset_tensor_size(const PartySystem& sys, SubsetMask subset) {
    long size = 1;
    for (int p : parties_of(subset)) {
        if (p >= sys.parties())
            throw std::invalid_argument("subset: party index out of range");
        size *= static_cast<long>(sys.dims[p]) * sys.dims[p] - 1;
    }
    return size;
}

BlochTensor::BlochTensor(PartySystem system, std::map<SubsetMask, std::vector<cx>> coeffs)
    : system_(std::move(system)), coeffs_(std::move(coeffs)) {
    for (const auto& [mask, tensor] : coeffs_) {
        if (mask == 0)
            throw std::invalid_argument("BlochTensor: empty subset");
        if (static_cast<long>(tensor.size()) != subset_tensor_size(system_, mask))
            throw std::invalid_argument("BlochTensor: coefficient shape mismatch for subset");
    }
}

const std::vector<cx>& BlochTensor::coefficients(SubsetMask subset) const {
    auto it = coeffs_.find(subset);
    if (it == coeffs_.end())
        throw std::invalid_argument("BlochTensor: unknown subset");
    return it->second;
}

double BlochTensor::subset_norm_sq(SubsetMask subset) const {
    double s = 0;
    for (cx c : coefficients(subset)) s += std::norm(c);
    return s;
}

BlochTensor decompose(const DensityMatrix& rho) {
    const PartySystem& sys = rho.system;
    const int n = sys.parties();
    const long D = sys.total_dim();
    const auto ustride = interleaved_strides(sys);
    const auto rstride = row_strides(sys);

    // scatter rho(R,C) into interleaved layout with code r_p * d_p + c_p
    std::vector<cx> data(static_cast<size_t>(D) * D);
    for (long R = 0; R < D; ++R)
        for (long C = 0; C < D; ++C) {
            long idx = 0;
            for (int p = 0; p < n; ++p) {
                int rp = static_cast<int>((R / rstride[p]) % sys.dims[p]);
                int cp = static_cast<int>((C / rstride[p]) % sys.dims[p]);
                idx += (static_cast<long>(rp) * sys.dims[p] + cp) * ustride[p];
            }
            data[idx] = rho.entries(R, C);
        }

    for (int p = 0; p < n; ++p) party_transform(data, sys.dims[p], ustride[p], true);

    // slice out the 2^n - 1 subset tensors (nonidentity codes only)
    std::map<SubsetMask, std::vector<cx>> coeffs;
    const SubsetMask all = (SubsetMask{1} << n) - 1;
    for (SubsetMask mask = 1; mask <= all; ++mask) {
        std::vector<int> ps = parties_of(mask);
        long size = subset_tensor_size(sys, mask);
        std::vector<cx> tensor(size);
        for (long t = 0; t < size; ++t) {
            long rem = t, idx = 0;
            for (auto it = ps.rbegin(); it != ps.rend(); ++it) {
                long span = static_cast<long>(sys.dims[*it]) * sys.dims[*it] - 1;
                idx += (rem % span + 1) * ustride[*it];
                rem /= span;
            }
            tensor[t] = data[idx];
        }
        coeffs.emplace(mask, std::move(tensor));
    }
    return BlochTensor(sys, std::move(coeffs));
}

DensityMatrix reconstruct(const BlochTensor& t) {
    const PartySystem& sys = t.system();
    const int n = sys.parties();
    const long D = sys.total_dim();
    const auto ustride = interleaved_strides(sys);
    const auto rstride = row_strides(sys);

    std::vector<cx> data(static_cast<size_t>(D) * D, cx(0, 0));
    data[0] = cx(1, 0);  // identity coefficient
    for (const auto& [mask, tensor] : t.coefficients()) {
        std::vector<int> ps = parties_of(mask);
        for (long k = 0; k < static_cast<long>(tensor.size()); ++k) {
            long rem = k, idx = 0;
            for (auto it = ps.rbegin(); it != ps.rend(); ++it) {
                long span = static_cast<long>(sys.dims[*it]) * sys.dims[*it] - 1;
                idx += (rem % span + 1) * ustride[*it];
                rem /= span;
            }
            data[idx] = tensor[k];
        }
    }

    for (int p = 0; p < n; ++p) party_transform(data, sys.dims[p], ustride[p], false);

    // gather: the inverse transforms already divided by each d_p, so the
    // 1/D prefactor is absorbed
    Matrix m(D, D);
    for (long R = 0; R < D; ++R)
        for (long C = 0; C < D; ++C) {
            long idx = 0;
            for (int p = 0; p < n; ++p) {
                int rp = static_cast<int>((R / rstride[p]) % sys.dims[p]);
                int cp = static_cast<int>((C / rstride[p]) % sys.dims[p]);
                idx += (static_cast<long>(rp) * sys.dims[p] + cp) * ustride[p];
            }
            m(R, C) = data[idx];
        }
    return {sys, std::move(m)};
}

double subset_norm_sq(const BlochTensor& t, const std::vector<int>& subset) {
    if (subset.empty())
        throw std::invalid_argument("subset_norm_sq: subset must be nonempty");
    return t.subset_norm_sq(mask_of(subset, t.system().parties()));
}

SectorNorms sector_norms(const BlochTensor& t) {
    SectorNorms out;
    out.values.assign(t.system().parties(), 0.0);
    for (const auto& [mask, tensor] : t.coefficients()) {
        double s = 0;
        for (cx c : tensor) s += std::norm(c);
        out.values[__builtin_popcount(mask) - 1] += s;
    }
    return out;
}

double purity_identity_residual(const DensityMatrix& rho) {
    SectorNorms norms = sector_norms(decompose(rho));
    double total = 1.0;
    for (double a : norms.values) total += a;
    return std::abs(purity(rho) - total / static_cast<double>(rho.dim()));
}

double marginal_identity_residual(const DensityMatrix& rho, int party) {
    const PartySystem& sys = rho.system;
    const int n = sys.parties();
    if (party < 0 || party >= n)
        throw std::invalid_argument("marginal_identity_residual: party out of range");
    if (purity(rho) < 1.0 - 1e-8)
        throw std::invalid_argument("marginal_identity_residual: state must be pure");

    BlochTensor t = decompose(rho);
    const SubsetMask pm = SubsetMask{1} << party;
    const double dp = sys.dims[party];
    double lhs = (1.0 + t.subset_norm_sq(pm)) / dp;

    double comp_sum = 1.0;
    for (const auto& [mask, tensor] : t.coefficients()) {
        if (mask & pm) continue;
        for (cx c : tensor) comp_sum += std::norm(c);
    }
    double rhs = comp_sum * dp / static_cast<double>(sys.total_dim());
    return std::abs(lhs - rhs);
}

}  // namespace gme
