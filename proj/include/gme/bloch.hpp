// bloch.hpp
// Generalized Bloch decomposition in the Weyl basis: for a state rho on
// dims (d_1,...,d_n),
//
//   rho = (1/D) ( I + sum_S T^(S) . A_S ),
//
// one complex coefficient tensor T^(S) per nonempty party subset S, with
// T^(S)[idx] = tr(rho * (tensor of A_{ij} on S, identity elsewhere)^dag).
// Coefficients are computed by factored per-party contractions, never by
// materializing D x D Kronecker words.

#pragma once

#include <map>

#include "gme/states.hpp"
#include "gme/types.hpp"

namespace gme {

class BlochTensor {
  public:
    BlochTensor(PartySystem system, std::map<SubsetMask, std::vector<cx>> coeffs);

    const PartySystem& system() const { return system_; }

    // All 2^n - 1 nonempty subsets. Tensor entries are indexed over the
    // subset's parties in ascending order, last party fastest-varying,
    // with d_p^2 - 1 nonidentity Weyl codes per axis (code = i*d_p + j).
    const std::map<SubsetMask, std::vector<cx>>& coefficients() const { return coeffs_; }
    const std::vector<cx>& coefficients(SubsetMask subset) const;

    double subset_norm_sq(SubsetMask subset) const;

  private:
    PartySystem system_;
    std::map<SubsetMask, std::vector<cx>> coeffs_;
};

// Number of coefficients in subset S: prod_{p in S} (d_p^2 - 1).
long subset_tensor_size(const PartySystem& system, SubsetMask subset);

BlochTensor decompose(const DensityMatrix& rho);

// Inverse of decompose; the identity coefficient is implicitly 1.
DensityMatrix reconstruct(const BlochTensor& t);

double subset_norm_sq(const BlochTensor& t, const std::vector<int>& subset);

// SectorNorms.values[s-1] = A_s = sum over |S| = s of ||T^(S)||^2.
struct SectorNorms {
    std::vector<double> values;
};

SectorNorms sector_norms(const BlochTensor& t);

// | tr(rho^2) - (1 + sum_s A_s)/D |; basis orthogonality makes this
// vanish for every valid state.
double purity_identity_residual(const DensityMatrix& rho);

// For pure rho: deviation between the party-p marginal purity
// (1/d_p)(1 + ||T^(p)||^2) and the complementary-side expression
// (d_p/D)(1 + sum over nonempty subsets of the complement). Throws if
// rho is not pure (tr rho^2 < 1 - 1e-8).
double marginal_identity_residual(const DensityMatrix& rho, int party);

}  // namespace gme
