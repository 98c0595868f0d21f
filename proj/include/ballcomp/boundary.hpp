#ifndef BALLCOMP_BOUNDARY_HPP
#define BALLCOMP_BOUNDARY_HPP

#include <optional>
#include <vector>

#include "ballcomp/lfm.hpp"

namespace ballcomp {

/// Julia-Caratheodory data of a symbol at a boundary point: the point, its
/// boundary image, and the dilation coefficient
///     d_phi(zeta) = lim_{r->1} (1 - |phi(r zeta)|) / (1 - r),
/// reported as +infinity when |phi(zeta)| < 1 (no finite angular
/// derivative exists there).
struct JCData {
    CVector zeta;
    CVector eta;
    double d_val = std::numeric_limits<double>::infinity();

    bool finite() const { return std::isfinite(d_val); }
};

struct ContactSet {
    std::vector<CVector> points;  // deterministic order, axis points first
    bool continuum = false;       // the contact set is not a finite point set
};

/// Maximum of |phi| over the closed ball (attained on the sphere).  Raises
/// NotSelfMap when the maximum exceeds 1 beyond the self-map band; the
/// value is reported in the exception rather than clamped.
double sup_norm(const LinearFractionalMap& phi);

/// All isolated maximizers with |phi(zeta)| >= 1 - tol found by the
/// multistart ascent, deduplicated by angular distance.  If the contact
/// set is a continuum (automorphisms and friends) a finite sample is
/// returned with the continuum flag set.  Raises NoContact when
/// sup_norm < 1 - tol.
ContactSet contact_points(const LinearFractionalMap& phi, double tol = 1e-9);

/// Boundary image and dilation coefficient at |zeta| = 1.  The dilation is
/// computed by one-stage Richardson extrapolation of the radial quotient
/// over r_k = 1 - 2^{-k}, k = 8..20, and cross-checked against the exact
/// directional derivative <phi'(zeta) zeta, eta>.
JCData angular_derivative(const LinearFractionalMap& phi, const CVector& zeta);

/// Shared-data test at a boundary point: equal images and equal finite
/// dilation coefficients within tol.  Raises NoAngularDerivative when
/// d_phi(zeta) is infinite (the hypothesis of the necessary condition
/// fails).
bool same_data(const LinearFractionalMap& phi, const LinearFractionalMap& psi,
               const CVector& zeta, double tol = 1e-7);

/// Non-throwing shared-data relation on precomputed JC data; used to build
/// data classes.  Infinite dilations never share data with anything.
bool same_data_relation(const JCData& a, const JCData& b, const Tolerances& tol);

/// C_phi is compact iff ||phi||_inf < 1 for linear fractional symbols.
/// Raises Indeterminate if the sup-norm sits in the band around 1 and no
/// contact point can be certified.
bool is_compact_single(const LinearFractionalMap& phi,
                       const Tolerances& tol = Tolerances());

/// Smooth extension of the dilation coefficient to the whole sphere,
/// Re<phi'(zeta) zeta, phi(zeta)>; equals d_phi(zeta) on the contact set.
double dilation_proxy(const LinearFractionalMap& phi, const CVector& zeta);

/// Minimize the dilation coefficient over the contact set (multistart
/// descent of the smooth proxy, accepted only if the minimizer stays in
/// contact).  Returns nothing when the search cannot certify a contact
/// minimizer.  This is the witness-refinement step behind the essential
/// norm bounds.
std::optional<CVector> min_dilation_contact(const LinearFractionalMap& phi,
                                            double contact_tol = 1e-9);

}  // namespace ballcomp

#endif
