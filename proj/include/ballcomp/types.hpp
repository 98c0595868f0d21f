#ifndef BALLCOMP_TYPES_HPP
#define BALLCOMP_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace ballcomp {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

/// Error kinds surfaced by the library.  Each operation documents which
/// kinds it can raise.
enum class ErrorKind {
    DegenerateDenominator,
    ZeroScale,
    NotUnitVector,
    NotFixingE1,
    RelationViolation,
    NotSelfMap,
    NoContact,
    NoAngularDerivative,
    Indeterminate,
    InvalidParams,
    OutsideBall,
    IndexOutOfRange,
    NonConvergent,
    QuadratureUnderResolved,
    ParseError,
    PreconditionFailed,
    DimensionMismatch,
};

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
    throw Error(kind, what);
}

const char* error_kind_name(ErrorKind kind);

/// Which Hilbert space the analysis runs on.  The weight parameter s
/// follows the convention s = -1 for the Hardy space; any s > -1 selects
/// the weighted Bergman space with weight (1-|z|^2)^s.  The reproducing
/// kernel exponent is beta = n + s + 1 in both cases (so beta = n on
/// Hardy).
struct SpaceSpec {
    int n = 2;
    double s = -1.0;

    SpaceSpec() = default;
    SpaceSpec(int dim, double weight) : n(dim), s(weight) {
        if (dim < 1) fail(ErrorKind::InvalidParams, "SpaceSpec: dimension must be >= 1");
        if (weight < -1.0)
            fail(ErrorKind::InvalidParams, "SpaceSpec: weight parameter must be >= -1");
    }

    static SpaceSpec hardy(int dim) { return SpaceSpec(dim, -1.0); }
    static SpaceSpec bergman(int dim, double weight) { return SpaceSpec(dim, weight); }

    bool is_hardy() const { return s == -1.0; }
    double beta_exp() const { return static_cast<double>(n) + s + 1.0; }
};

/// Numerical gates shared across the toolkit.  Every tolerance is
/// overridable from the CLI; defaults reflect the accuracy the
/// extrapolation and sphere-search routines actually deliver.
struct Tolerances {
    double algebraic = 1e-9;      // projective map equality (Frobenius, normalized)
    double selfmap_band = 1e-9;   // sup-norm band around 1 treated as boundary contact
    double fixing_e1 = 1e-10;     // |phi(e1) - e1| gate for T-form extraction
    double tform_relation = 1e-10;// entry-level residual gate on the fixed-point relations
    double data_image = 1e-7;     // |phi(zeta) - psi(zeta)| gate for shared boundary data
    double data_dilation = 1e-7;  // |d_phi - d_psi| <= gate * max(1, d)
    double limit = 1e-7;          // accepted extrapolation error for curve limits
    double contact_dedup = 1e-6;  // angular distance merging contact candidates
};

}  // namespace ballcomp

#endif
