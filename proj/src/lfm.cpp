#include "ballcomp/lfm.hpp"

#include <cmath>

namespace ballcomp {

const char* error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::DegenerateDenominator: return "DegenerateDenominator";
        case ErrorKind::ZeroScale: return "ZeroScale";
        case ErrorKind::NotUnitVector: return "NotUnitVector";
        case ErrorKind::NotFixingE1: return "NotFixingE1";
        case ErrorKind::RelationViolation: return "RelationViolation";
        case ErrorKind::NotSelfMap: return "NotSelfMap";
        case ErrorKind::NoContact: return "NoContact";
        case ErrorKind::NoAngularDerivative: return "NoAngularDerivative";
        case ErrorKind::Indeterminate: return "Indeterminate";
        case ErrorKind::InvalidParams: return "InvalidParams";
        case ErrorKind::OutsideBall: return "OutsideBall";
        case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorKind::NonConvergent: return "NonConvergent";
        case ErrorKind::QuadratureUnderResolved: return "QuadratureUnderResolved";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::PreconditionFailed: return "PreconditionFailed";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    }
    return "Unknown";
}

namespace {

// Rescale so the corner entry d becomes real positive, then run the
// denominator check |d| > ||C||.  Every downstream formula (adjoint,
// T-form, boundary analysis) assumes this normalization.
CMatrix normalize_scale(CMatrix m) {
    const Eigen::Index n = m.rows() - 1;
    if (m.norm() == 0.0) fail(ErrorKind::ZeroScale, "map matrix is identically zero");
    const Complex d = m(n, n);
    if (std::abs(d) == 0.0)
        fail(ErrorKind::DegenerateDenominator, "corner entry d is zero");
    m *= std::conj(d) / std::abs(d);
    const double cnorm = m.row(n).head(n).norm();
    if (!(m(n, n).real() > cnorm))
        fail(ErrorKind::DegenerateDenominator,
             "|d| <= ||C||: denominator can vanish on the closed ball");
    m(n, n) = Complex(m(n, n).real(), 0.0);
    return m;
}

}  // namespace

LinearFractionalMap::LinearFractionalMap(const CMatrix& A, const CVector& B,
                                         const CVector& C, Complex d)
    : n_(static_cast<int>(A.rows())) {
    if (A.rows() != A.cols() || B.size() != n_ || C.size() != n_)
        fail(ErrorKind::DimensionMismatch, "A must be n x n with B, C of length n");
    CMatrix m(n_ + 1, n_ + 1);
    m.topLeftCorner(n_, n_) = A;
    m.topRightCorner(n_, 1) = B;
    m.bottomLeftCorner(1, n_) = C.adjoint();
    m(n_, n_) = d;
    m_ = normalize_scale(std::move(m));
}

LinearFractionalMap LinearFractionalMap::from_matrix(const CMatrix& m) {
    if (m.rows() != m.cols() || m.rows() < 2)
        fail(ErrorKind::DimensionMismatch, "associated matrix must be square of size >= 2");
    const Eigen::Index n = m.rows() - 1;
    return LinearFractionalMap(m.topLeftCorner(n, n), m.topRightCorner(n, 1),
                               m.bottomLeftCorner(1, n).adjoint(), m(n, n));
}

LinearFractionalMap LinearFractionalMap::identity(int n) {
    return LinearFractionalMap(CMatrix::Identity(n, n), CVector::Zero(n),
                               CVector::Zero(n), 1.0);
}

LinearFractionalMap LinearFractionalMap::dilation(int n, Complex c) {
    return LinearFractionalMap(c * CMatrix::Identity(n, n), CVector::Zero(n),
                               CVector::Zero(n), 1.0);
}

LinearFractionalMap LinearFractionalMap::axis_automorphism(int n, double a) {
    if (!(std::abs(a) < 1.0))
        fail(ErrorKind::InvalidParams, "axis automorphism needs |a| < 1");
    CMatrix A = std::sqrt(1.0 - a * a) * CMatrix::Identity(n, n);
    A(0, 0) = 1.0;
    CVector B = CVector::Zero(n);
    B(0) = a;
    CVector C = CVector::Zero(n);
    C(0) = a;
    return LinearFractionalMap(A, B, C, 1.0);
}

CVector LinearFractionalMap::operator()(const CVector& z) const {
    return (A() * z + B()) / denominator(z);
}

Complex LinearFractionalMap::denominator(const CVector& z) const {
    // <z, C> + d with the last matrix row holding C*.
    return (m_.row(n_).head(n_) * z).value() + m_(n_, n_);
}

CMatrix LinearFractionalMap::jacobian(const CVector& z) const {
    const Complex g = denominator(z);
    const CVector phi_z = (A() * z + B()) / g;
    return (A() - phi_z * m_.row(n_).head(n_)) / g;
}

LinearFractionalMap compose(const LinearFractionalMap& phi,
                            const LinearFractionalMap& psi) {
    if (phi.dim() != psi.dim())
        fail(ErrorKind::DimensionMismatch, "compose: dimension mismatch");
    return LinearFractionalMap::from_matrix(phi.matrix() * psi.matrix());
}

LinearFractionalMap adjoint_map(const LinearFractionalMap& phi) {
    const CVector b = phi.B();
    if (!(phi.d() > b.norm()))
        fail(ErrorKind::DegenerateDenominator,
             "adjoint map degenerate: |d| <= ||B|| flags a non-self-map input");
    return LinearFractionalMap(phi.A().adjoint(), -phi.C(), -b,
                               Complex(phi.d(), 0.0));
}

CMatrix unitary_completing(const CVector& zeta) {
    const Eigen::Index n = zeta.size();
    Eigen::HouseholderQR<CMatrix> qr(zeta);
    CMatrix Q = qr.householderQ();
    // First column of Q spans zeta up to a unit phase; rotate it back so
    // Q e1 = zeta exactly (|r| = 1 because |zeta| = 1).
    const Complex r = (Q.col(0).adjoint() * zeta).value();
    Q.col(0) *= r;
    return Q;
}

LinearFractionalMap unitary_conjugate(const LinearFractionalMap& phi,
                                      const CVector& zeta, const CVector& eta) {
    const int n = phi.dim();
    if (zeta.size() != n || eta.size() != n)
        fail(ErrorKind::DimensionMismatch, "unitary_conjugate: dimension mismatch");
    if (std::abs(zeta.norm() - 1.0) > 1e-12 || std::abs(eta.norm() - 1.0) > 1e-12)
        fail(ErrorKind::NotUnitVector, "unitary_conjugate needs unit zeta and eta");
    const CMatrix U = unitary_completing(zeta);
    const CMatrix V = unitary_completing(eta);
    CMatrix block_u = CMatrix::Identity(n + 1, n + 1);
    block_u.topLeftCorner(n, n) = U;
    CMatrix block_v = CMatrix::Identity(n + 1, n + 1);
    block_v.topLeftCorner(n, n) = V.adjoint();
    return LinearFractionalMap::from_matrix(block_v * phi.matrix() * block_u);
}

bool projectively_equal(const LinearFractionalMap& phi,
                        const LinearFractionalMap& psi, double tol) {
    if (phi.dim() != psi.dim()) return false;
    const CMatrix a = phi.matrix() / phi.matrix().norm();
    const CMatrix b = psi.matrix() / psi.matrix().norm();
    return (a - b).norm() <= tol;
}

TForm normalize_t_form(const LinearFractionalMap& phi, const Tolerances& tol) {
    const int n = phi.dim();
    CVector e1 = CVector::Zero(n);
    e1(0) = 1.0;
    if ((phi(e1) - e1).norm() > tol.fixing_e1)
        fail(ErrorKind::NotFixingE1, "normalize_t_form: phi(e1) != e1");

    const CMatrix& m = phi.matrix();
    const double scale = m.norm();
    // Entry-level fixed-point relations: a11 + b1 = conj(c1) + d,
    // a_j1 + b_j = 0, and a_1j = conj(c_j).  All are invariant under the
    // projective scale, so they certify the input rather than our
    // normalization.
    double residual = std::abs(m(0, 0) + m(0, n) - m(n, 0) - m(n, n));
    for (int j = 1; j < n; ++j) {
        residual = std::max(residual, std::abs(m(j, 0) + m(j, n)));
        residual = std::max(residual, std::abs(m(0, j) - m(n, j)));
    }
    if (residual > tol.tform_relation * std::max(1.0, scale))
        fail(ErrorKind::RelationViolation,
             "normalize_t_form: fixed-point relations fail; matrix is not a "
             "self-map fixing e1");

    const Complex denom = m(n, 0) + m(n, n);  // conj(c1) + d
    if (std::abs(denom) < 1e-14 * std::max(1.0, scale))
        fail(ErrorKind::RelationViolation, "normalize_t_form: conj(c1) + d = 0");

    const Complex t_c = (m(0, 0) - m(n, 0)) / denom;
    if (std::abs(t_c.imag()) > 1e-8 * std::max(1.0, std::abs(t_c)) ||
        !(t_c.real() > 0.0))
        fail(ErrorKind::RelationViolation,
             "normalize_t_form: dilation coefficient t is not real positive");

    TForm f;
    f.n = n;
    f.t = t_c.real();
    f.K = m(n, 0) / denom;
    f.beta = CVector::Zero(std::max(0, n - 1));
    f.gamma = CVector::Zero(std::max(0, n - 1));
    f.alpha = CMatrix::Zero(std::max(0, n - 1), std::max(0, n - 1));
    for (int j = 1; j < n; ++j) {
        f.beta(j - 1) = m(j, n) / denom;
        f.gamma(j - 1) = m(n, j) / denom;
        for (int k = 1; k < n; ++k) f.alpha(j - 1, k - 1) = m(j, k) / denom;
    }
    return f;
}

CMatrix TForm::to_matrix() const {
    CMatrix m = CMatrix::Zero(n + 1, n + 1);
    m(0, 0) = t + K;
    m(0, n) = 1.0 - t - K;
    m(n, 0) = K;
    m(n, n) = 1.0 - K;
    for (int j = 1; j < n; ++j) {
        m(0, j) = gamma(j - 1);
        m(n, j) = gamma(j - 1);
        m(j, 0) = -beta(j - 1);
        m(j, n) = beta(j - 1);
        for (int k = 1; k < n; ++k) m(j, k) = alpha(j - 1, k - 1);
    }
    return m;
}

}  // namespace ballcomp
