#ifndef BALLCOMP_KERNEL_HPP
#define BALLCOMP_KERNEL_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ballcomp/boundary.hpp"
#include "ballcomp/lfm.hpp"

namespace ballcomp {

// ---------------------------------------------------------------------------
// Reproducing kernels
// ---------------------------------------------------------------------------

/// K_z(w) = (1 - <w, z>)^{-beta}, principal branch.  Under |z| < 1,
/// |w| <= 1 the base stays in the right half-plane, so the branch is
/// unambiguous and the kernel positive on the diagonal.
Complex kernel_eval(const CVector& z, const CVector& w, const SpaceSpec& space);

/// The closed three-term form of ||(C_phi - C_psi)* K_z||^2 / ||K_z||^2:
///
///   ((1-|z|^2)/(1-|phi|^2))^b + ((1-|z|^2)/(1-|psi|^2))^b
///     - 2 Re ((1-|z|^2)/(1-<psi,phi>))^b,   b = beta.
///
/// Nonnegative for |z| < 1.
double kernel_quotient(const LinearFractionalMap& phi,
                       const LinearFractionalMap& psi, const CVector& z,
                       const SpaceSpec& space);

/// Pseudohyperbolic distance: 1 - rho^2 = (1-|a|^2)(1-|b|^2)/|1-<a,b>|^2.
double pseudo_distance(const CVector& a, const CVector& b);

// ---------------------------------------------------------------------------
// Approach curves to e1
// ---------------------------------------------------------------------------

enum class CurveFamily { GammaM, Gamma, GammaK, GammaKR };

struct CurveSpec {
    CurveFamily family = CurveFamily::GammaM;
    int dim = 2;
    double M = 1.0;    // GammaM: |1-z1|/(1-|z1|^2) = M
    int k = 2;         // GammaK / GammaKR coordinate index (1-based, >= 2)
    double r = 0.25;   // GammaKR radius, 0 < r < 1/2
};

struct CurvePoint {
    CVector z;
    double param = 0.0;          // ladder parameter; the point tends to e1 as it -> 0
    double one_minus_abs2 = 0.0; // 1 - |z|^2 in closed form (no cancellation)
    std::string curve_id;
};

/// z = (1 - rho e^{i theta}, 0') with cos(theta) = (1/M + rho)/2, which puts
/// the point exactly on |1-z1|/(1-|z1|^2) = M.
CurvePoint curve_gamma_M(int dim, double M, double rho);

/// z = ((1 + e^{i theta})/2, 0'): the circle 1-|z1|^2 = |1-z1|^2, theta in (0, pi).
CurvePoint curve_gamma(int dim, double theta);

/// z = r e1 + sqrt(1-r) e_k.
CurvePoint curve_gamma_k(int dim, int k, double r);

/// z = z1 e1 + (z1 - 1) e_k with z1 = 1 - r + r e^{i theta}, 0 < r < 1/2.
CurvePoint curve_gamma_kr(int dim, int k, double r, double theta);

/// Point of the family at ladder parameter t (rho, theta, sqrt(1-r) or
/// theta depending on the family; each choice makes the curve data a power
/// series in t so Richardson extrapolation applies).
CurvePoint curve_point(const CurveSpec& spec, double t);

struct LimitResult {
    Complex value{0.0, 0.0};
    double error = 0.0;  // estimated
};

/// Richardson-extrapolated limit of f along the family as the parameter
/// halves from t0.  Raises NonConvergent when the extrapolation table does
/// not contract to the requested accuracy.
LimitResult limit_along_curve(const std::function<Complex(const CurvePoint&)>& f,
                              const CurveSpec& spec, double t0 = 1e-2,
                              int steps = 14, double accept = 1e-7);

// ---------------------------------------------------------------------------
// Mixed-kernel limits and essential-norm lower bounds
// ---------------------------------------------------------------------------

/// Limit of (1-|z|^2)/(1-<psi(z), phi(z)>) along Gamma_{e1,M} at fixed M.
LimitResult mixed_kernel_curve_limit(const LinearFractionalMap& phi,
                                     const LinearFractionalMap& psi, double M);

/// The iterated limit: per-M limits over M in {1, 2, 4, ..., 256}
/// extrapolated in 1/M.  Classifies the pair: 1/d_phi(e1) when phi and psi
/// share boundary data at e1 (finite), 0 otherwise.
LimitResult mixed_kernel_iterated_limit(const LinearFractionalMap& phi,
                                        const LinearFractionalMap& psi);

/// Right-hand side of the pseudohyperbolic lower bound for the kernel
/// quotient,
///   ((||K_phi|| - ||K_psi||)/||K_z||)^2
///     + 2 (1 - u) (||K_phi||/||K_z||)(||K_psi||/||K_z||),
/// with u = (1 - rho^2)^{beta/2}; never exceeds kernel_quotient.
double mw_quotient_lower_bound(const LinearFractionalMap& phi,
                               const LinearFractionalMap& psi, const CVector& z,
                               const SpaceSpec& space);

/// A certified lower bound for the squared essential norm of a difference.
struct BoundReport {
    double bound = 0.0;          // lower bound for ||.||_e^2; 0 = no obstruction found
    std::optional<CVector> witness;
    double d_at_witness = std::numeric_limits<double>::infinity();
    SpaceSpec space;
};

/// Scan the contact points of both symbols (plus the refined
/// dilation-minimizing witness on continuum contact sets); at every point
/// where the boundary data disagree the difference obeys
/// ||C_phi - C_psi||_e^2 >= d^{-beta}, using d of the first argument when
/// finite and of the second otherwise.  Returns the best such bound, or
/// bound 0 when no obstruction exists.
BoundReport essnorm_lower_bound_diff(const LinearFractionalMap& phi,
                                     const LinearFractionalMap& psi,
                                     const SpaceSpec& space,
                                     const Tolerances& tol = Tolerances());

/// Lower bound for || sum_l c_l C_{phi_l} ||_e^2 at a chosen boundary
/// point: sum over j with finite d_j of |sum_{l in class(j)} c_l|^2 /
/// d_j^beta, the class of j collecting all maps sharing its boundary data
/// at zeta.  Each j contributes its own term, so a class of size m appears
/// m times.
double essnorm_lower_bound_combo(const std::vector<LinearFractionalMap>& maps,
                                 const std::vector<Complex>& coeffs,
                                 const CVector& zeta, const SpaceSpec& space,
                                 const Tolerances& tol = Tolerances());

struct DataClassReport {
    CVector zeta;
    std::vector<std::vector<int>> classes;  // indices of maps with finite d, grouped
    std::vector<Complex> class_sums;
    std::vector<bool> satisfied;            // |sum| below gate
    bool all_satisfied = true;
};

/// Necessary condition for the combination to be compact: at every contact
/// point of any member with finite dilation, each data-class coefficient
/// sum must vanish.  One report row per detected contact point; an empty
/// list is vacuous satisfaction (all members compact).
std::vector<DataClassReport> combo_necessary_condition(
    const std::vector<LinearFractionalMap>& maps,
    const std::vector<Complex>& coeffs, const SpaceSpec& space,
    const Tolerances& tol = Tolerances());

}  // namespace ballcomp

#endif
