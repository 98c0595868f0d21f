#ifndef BALLCOMP_LFM_HPP
#define BALLCOMP_LFM_HPP

#include <optional>

#include "ballcomp/types.hpp"

namespace ballcomp {

/// A linear fractional self-map of the unit ball of C^n,
///
///     phi(z) = (A z + B) / (<z, C> + d),
///
/// stored through its associated (n+1) x (n+1) matrix [[A, B], [C*, d]].
/// Construction normalizes the projective scale so that d is real and
/// positive, and rejects matrices whose denominator can vanish on the
/// closed ball (that requires |d| > ||C||).  Values are immutable after
/// construction; all operations are pure functions.
class LinearFractionalMap {
  public:
    LinearFractionalMap(const CMatrix& A, const CVector& B, const CVector& C,
                        Complex d);

    /// Rebuild from the full (n+1) x (n+1) associated matrix.
    static LinearFractionalMap from_matrix(const CMatrix& m);

    static LinearFractionalMap identity(int n);
    /// phi(z) = c z (|c| <= 1 for a self-map; not enforced here).
    static LinearFractionalMap dilation(int n, Complex c);
    /// The one-parameter automorphism psi_a of B_n moving 0 to a*e1 along
    /// the first coordinate axis (a in (-1, 1)).
    static LinearFractionalMap axis_automorphism(int n, double a);

    int dim() const { return n_; }
    const CMatrix& matrix() const { return m_; }

    Eigen::Block<const CMatrix> A() const { return m_.topLeftCorner(n_, n_); }
    CVector B() const { return m_.topRightCorner(n_, 1); }
    CVector C() const { return m_.bottomLeftCorner(1, n_).adjoint(); }
    double d() const { return m_(n_, n_).real(); }

    /// Evaluate at |z| <= 1.  The pole sits outside the closed ball, so no
    /// error path is needed under the precondition.
    CVector operator()(const CVector& z) const;

    /// Denominator <z, C> + d.
    Complex denominator(const CVector& z) const;

    /// Complex Jacobian matrix phi'(z) = (A - phi(z) C*) / (<z,C> + d).
    CMatrix jacobian(const CVector& z) const;

  private:
    int n_;
    CMatrix m_;  // (n+1) x (n+1), scale-normalized with m(n,n) real > 0
};

/// Normalized parameters of a self-map fixing e1 (the matrix T obtained by
/// dividing the associated matrix through by conj(c1) + d).  t equals the
/// boundary dilation coefficient at e1 and is real positive for genuine
/// self-maps.  beta/gamma have entries indexed 2..n of the written form,
/// stored 0-based; alpha is the lower-right (n-1) x (n-1) block.
struct TForm {
    int n = 0;
    double t = 0.0;
    Complex K{0.0, 0.0};
    CVector beta;
    CVector gamma;
    CMatrix alpha;

    /// Rebuild the associated matrix of the map this T-form encodes.
    CMatrix to_matrix() const;
    LinearFractionalMap to_map() const { return LinearFractionalMap::from_matrix(to_matrix()); }
};

LinearFractionalMap compose(const LinearFractionalMap& phi,
                            const LinearFractionalMap& psi);

/// The Cowen-MacCluer adjoint symbol sigma(z) = (A* z - C) / (<z, -B> + conj(d));
/// a self-map of the ball whenever phi is.
LinearFractionalMap adjoint_map(const LinearFractionalMap& phi);

/// V* phi U with U e1 = zeta and V e1 = eta (both unit vectors).  The result
/// fixes e1 whenever phi(zeta) = eta, and its boundary dilation at e1 equals
/// d_phi(zeta).
LinearFractionalMap unitary_conjugate(const LinearFractionalMap& phi,
                                      const CVector& zeta, const CVector& eta);

/// Projective equality: Frobenius distance of the scale-normalized
/// associated matrices.
bool projectively_equal(const LinearFractionalMap& phi,
                        const LinearFractionalMap& psi, double tol = 1e-9);

/// Extract the T-form of a map fixing e1.  Raises NotFixingE1 if phi(e1)
/// strays from e1 beyond tol.fixing_e1, and RelationViolation if the
/// fixed-point entry relations fail beyond tol.tform_relation (which flags
/// a non-self-map or corrupt matrix).
TForm normalize_t_form(const LinearFractionalMap& phi,
                       const Tolerances& tol = Tolerances());

/// A deterministic unitary with first column zeta (|zeta| = 1).
CMatrix unitary_completing(const CVector& zeta);

}  // namespace ballcomp

#endif
