#ifndef BALLCOMP_GALERKIN_HPP
#define BALLCOMP_GALERKIN_HPP

#include <iosfwd>
#include <vector>

#include "ballcomp/lfm.hpp"

namespace ballcomp {

/// Monomial orthogonal basis of the space truncated at total degree D.
/// Multi-indices are ordered by (degree, lexicographic) so matrices are
/// reproducible bit-for-bit across runs; norms are the closed-form
/// monomial norms (validated against quadrature in the test suite, which
/// treats quadrature as the authority).
struct TruncationBasis {
    SpaceSpec space;
    int degree_cap = 0;
    std::vector<std::vector<int>> indices;
    std::vector<double> norms;  // ||z^alpha||

    // Recurrence wiring: index of alpha - e_j and the coordinate j used to
    // extend the parent monomial value (degree-0 root has parent -1).
    std::vector<int> parent;
    std::vector<int> step_coord;

    int size() const { return static_cast<int>(indices.size()); }
    int degree(int i) const;

    /// Normalized monomials evaluated at w: u_alpha = w^alpha / ||z^alpha||.
    CVector eval_basis(const CVector& w) const;

    /// Coefficient vector of the reproducing kernel K_z in this basis:
    /// <K_z, e_alpha> = conj(e_alpha(z)).
    CVector kernel_coeffs(const CVector& z) const;
};

TruncationBasis monomial_norms(const SpaceSpec& space, int D);

/// Nodes and weights integrating against the space's measure: the
/// normalized surface measure on the sphere for Hardy, w_s dnu on the ball
/// for Bergman (tensor angular trapezoid rules with a simplex rule in the
/// moduli, Gauss-Jacobi in the radius).  Exact for all monomials
/// z^alpha conj(z)^gamma with |alpha| + |gamma| <= target.
struct QuadratureRule {
    std::vector<CVector> nodes;
    std::vector<double> weights;
};

QuadratureRule ball_quadrature(const SpaceSpec& space, int target_degree);

/// Matrix of the truncated composition operator: entry (beta, alpha) =
/// <e_alpha o phi, e_beta>, representing P_{<=D} C_phi on polynomials of
/// degree <= D.
struct TruncationMatrix {
    const TruncationBasis* basis = nullptr;
    CMatrix entries;
};

/// Assemble by quadrature at increasing resolution until two successive
/// refinements agree to 1e-8 in Frobenius norm (e_alpha o phi is rational,
/// so no finite rule is exact; adaptive verification replaces exactness).
/// Raises QuadratureUnderResolved when the refinement stalls.
TruncationMatrix truncation_matrix(const LinearFractionalMap& phi,
                                   const TruncationBasis& basis,
                                   int projection_degree);

/// Standard singular values, descending.
std::vector<double> singular_values(const TruncationMatrix& T);

/// Largest singular value of the truncated difference with input columns
/// of degree < k zeroed: a finite-rank-deletion surrogate for the
/// essential norm of C_phi - C_psi, nonincreasing in k.
double tail_norm_probe(const LinearFractionalMap& phi,
                       const LinearFractionalMap& psi, const SpaceSpec& space,
                       int D, int k);

/// Same probe on precomputed truncations sharing one basis.
double tail_norm_probe(const TruncationMatrix& T_phi,
                       const TruncationMatrix& T_psi, int k);

/// Row-major decimal text dump, 17 significant digits per component.
void write_matrix_text(std::ostream& os, const CMatrix& m);

}  // namespace ballcomp

#endif
