#include "ballcomp/boundary.hpp"

#include <cmath>

#include "ballcomp/sphere_opt.hpp"

namespace ballcomp {

namespace {

// |phi(z)|^2 and its Wirtinger gradient on the sphere.  With
// n(z) = ||Az+B||^2 and q(z) = |<z,C>+d|^2 the gradient of n/q in
// d/d(conj z) form is (q A^H(Az+B) - n w C)/q^2, w = <z,C>+d.
SphereObjective modulus_objective(const LinearFractionalMap& phi) {
    SphereObjective f;
    f.value = [phi](const CVector& z) {
        const CVector num = phi.A() * z + phi.B();
        const Complex w = phi.denominator(z);
        return num.squaredNorm() / std::norm(w);
    };
    f.wirtinger_gradient = [phi](const CVector& z) {
        const CVector num = phi.A() * z + phi.B();
        const Complex w = phi.denominator(z);
        const double nv = num.squaredNorm();
        const double qv = std::norm(w);
        const CVector gn = phi.A().adjoint() * num;
        const CVector gq = w * phi.C();
        return CVector((qv * gn - nv * gq) / (qv * qv));
    };
    return f;
}

SphereObjective proxy_objective(const LinearFractionalMap& phi) {
    SphereObjective f;
    f.value = [phi](const CVector& z) { return dilation_proxy(phi, z); };
    return f;  // finite differences; the proxy is cheap and smooth
}

}  // namespace

double dilation_proxy(const LinearFractionalMap& phi, const CVector& zeta) {
    const CVector eta = phi(zeta);
    const CVector dir = phi.jacobian(zeta) * zeta;
    return (eta.adjoint() * dir).value().real();  // <phi'(zeta) zeta, eta>
}

double sup_norm(const LinearFractionalMap& phi) {
    const auto report = sphere_maximize(phi.dim(), modulus_objective(phi));
    const double sup = std::sqrt(std::max(0.0, report.best.value));
    if (sup > 1.0 + 1e-9)
        fail(ErrorKind::NotSelfMap,
             "sup_norm exceeds 1: ||phi||_inf = " + std::to_string(sup));
    return sup;
}

ContactSet contact_points(const LinearFractionalMap& phi, double tol) {
    const auto report = sphere_maximize(phi.dim(), modulus_objective(phi));
    const double sup = std::sqrt(std::max(0.0, report.best.value));
    if (sup > 1.0 + 1e-9)
        fail(ErrorKind::NotSelfMap,
             "contact_points: ||phi||_inf = " + std::to_string(sup));
    if (sup < 1.0 - tol)
        fail(ErrorKind::NoContact, "contact_points: ||phi||_inf < 1");

    ContactSet set;
    for (const auto& opt : report.local_optima) {
        if (std::sqrt(std::max(0.0, opt.value)) < 1.0 - tol) break;
        set.points.push_back(opt.point);
    }
    // Dozens of distinct maximizers at the same height mean the maximizer
    // set has positive dimension; keep a finite sample and flag it.
    constexpr std::size_t kContinuumThreshold = 12;
    constexpr std::size_t kSampleSize = 8;
    if (set.points.size() > kContinuumThreshold) {
        set.continuum = true;
        set.points.resize(kSampleSize);
    }
    return set;
}

JCData angular_derivative(const LinearFractionalMap& phi, const CVector& zeta) {
    if (std::abs(zeta.norm() - 1.0) > 1e-12)
        fail(ErrorKind::NotUnitVector, "angular_derivative needs |zeta| = 1");
    JCData data;
    data.zeta = zeta;
    data.eta = phi(zeta);
    const double image_norm = data.eta.norm();
    if (image_norm < 1.0 - 1e-9) {
        // Interior image: the liminf defining d is infinite.
        data.d_val = std::numeric_limits<double>::infinity();
        return data;
    }

    // Radial quotient ladder with a single Richardson stage; the quotient
    // is analytic in 1 - r for linear fractional symbols, so first-order
    // elimination already leaves ~1e-10 truncation error.
    constexpr int k_lo = 8, k_hi = 20;
    double q[k_hi - k_lo + 1];
    for (int k = k_lo; k <= k_hi; ++k) {
        const double h = std::ldexp(1.0, -k);  // 1 - r
        const CVector w = phi((1.0 - h) * zeta);
        q[k - k_lo] = (1.0 - w.squaredNorm()) / ((1.0 + w.norm()) * h);
    }
    const int m = k_hi - k_lo;
    const double extrapolated = 2.0 * q[m] - q[m - 1];
    const double previous = 2.0 * q[m - 1] - q[m - 2];
    if (std::abs(extrapolated - previous) > 1e-6 * std::max(1.0, std::abs(extrapolated)))
        fail(ErrorKind::NonConvergent,
             "angular_derivative: radial quotient ladder did not settle");
    data.d_val = extrapolated;

    // Exact directional derivative <phi'(zeta) zeta, eta> as cross-check.
    const double direct = dilation_proxy(phi, zeta);
    if (std::abs(direct - data.d_val) > 1e-6 * std::max(1.0, std::abs(direct)))
        fail(ErrorKind::NonConvergent,
             "angular_derivative: radial limit and directional derivative disagree");
    return data;
}

bool same_data_relation(const JCData& a, const JCData& b, const Tolerances& tol) {
    if (!a.finite() || !b.finite()) return false;
    if ((a.eta - b.eta).norm() > tol.data_image) return false;
    return std::abs(a.d_val - b.d_val) <=
           tol.data_dilation * std::max(1.0, std::max(a.d_val, b.d_val));
}

bool same_data(const LinearFractionalMap& phi, const LinearFractionalMap& psi,
               const CVector& zeta, double tol) {
    const JCData a = angular_derivative(phi, zeta);
    if (!a.finite())
        fail(ErrorKind::NoAngularDerivative,
             "same_data: phi has no finite angular derivative at zeta");
    const JCData b = angular_derivative(psi, zeta);
    if ((a.eta - b.eta).norm() > tol) return false;
    if (!b.finite()) return false;
    return std::abs(a.d_val - b.d_val) <= tol * std::max(1.0, a.d_val);
}

bool is_compact_single(const LinearFractionalMap& phi, const Tolerances& tol) {
    const double sup = sup_norm(phi);
    if (sup < 1.0 - tol.selfmap_band) return true;
    // Boundary band: certify an actual contact point before declaring
    // non-compactness.
    try {
        const ContactSet contacts = contact_points(phi, tol.selfmap_band);
        if (!contacts.points.empty()) return false;
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::NoContact) throw;
        return true;
    }
    fail(ErrorKind::Indeterminate,
         "is_compact_single: sup-norm at the 1-boundary without a certified contact");
}

std::optional<CVector> min_dilation_contact(const LinearFractionalMap& phi,
                                            double contact_tol) {
    const auto report = sphere_minimize(phi.dim(), proxy_objective(phi));
    for (const auto& opt : report.local_optima) {
        const CVector z = opt.point / opt.point.norm();
        if (phi(z).norm() >= 1.0 - contact_tol) return z;
    }
    return std::nullopt;
}

}  // namespace ballcomp
