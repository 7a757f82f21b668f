// weyl.hpp
// Weyl (principal-basis) operators for arbitrary local dimension d:
// A_{ij} = sum_m omega^{i m} E_{m, m+j} with omega = exp(2 pi i / d) and
// column index reduced mod d. The d^2-1 nonidentity operators form an
// orthogonal, traceless, unitary basis of su(d) extended by phases.

#pragma once

#include <algorithm>

#include "gme/types.hpp"

namespace gme {

struct WeylIndex {
    int i = 0;
    int j = 0;
};

// Canonical ordering of nonidentity indices: lexicographic on (i,j)
// excluding (0,0), i.e. (0,1),(0,2),...,(1,0),...,(d-1,d-1).
// linear code = i*d + j, so nonidentity codes are 1..d^2-1 in order.
inline int weyl_code(int d, WeylIndex idx) { return idx.i * d + idx.j; }
inline WeylIndex weyl_index(int d, int code) { return {code / d, code % d}; }

// omega^e for omega = exp(2 pi i / d), exponent reduced mod d.
cx omega_power(int d, long e);

// A single Weyl operator as a dense d x d matrix.
Matrix weyl_operator(int d, WeylIndex idx);

class WeylBasis {
  public:
    explicit WeylBasis(int d);

    int dim() const { return d_; }
    cx omega() const { return omega_; }

    // The d^2-1 nonidentity operators in canonical order.
    const std::vector<Matrix>& ops() const { return ops_; }

    // Operator for any index, identity included (code 0).
    const Matrix& op(WeylIndex idx) const;
    const Matrix& op_by_code(int code) const;

  private:
    int d_;
    cx omega_;
    std::vector<Matrix> all_;   // indexed by code, code 0 = identity
    std::vector<Matrix> ops_;   // codes 1..d^2-1
};

// Shared per-dimension cache; the returned basis is immutable.
const WeylBasis& basis(int d);

// Max elementwise deviations of the defining algebraic identities,
// exhaustive over index pairs.
struct AlgebraReport {
    double product_rule = 0;    // A_{ij} A_{kl} = omega^{jk} A_{i+k, j+l}
    double dagger_rule = 0;     // A_{ij}^dag = omega^{ij} A_{-i,-j}
    double orthogonality = 0;   // tr(A_{ij} A_{kl}^dag) = delta delta d
    double max() const { return std::max(product_rule, std::max(dagger_rule, orthogonality)); }
};

AlgebraReport algebra_check(int d);

}  // namespace gme
