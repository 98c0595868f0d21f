#include "ballcomp/kernel.hpp"

#include <algorithm>
#include <cmath>

namespace ballcomp {

namespace {

Complex herm(const CVector& a, const CVector& b) {
    // <a, b> = sum a_j conj(b_j)
    return (b.adjoint() * a).value();
}

}  // namespace

Complex kernel_eval(const CVector& z, const CVector& w, const SpaceSpec& space) {
    const Complex base = 1.0 - herm(w, z);
    return std::pow(base, -space.beta_exp());
}

double kernel_quotient(const LinearFractionalMap& phi,
                       const LinearFractionalMap& psi, const CVector& z,
                       const SpaceSpec& space) {
    const double b = space.beta_exp();
    const double one_minus = 1.0 - z.squaredNorm();
    const CVector pz = phi(z), qz = psi(z);
    const double t1 = std::pow(one_minus / (1.0 - pz.squaredNorm()), b);
    const double t2 = std::pow(one_minus / (1.0 - qz.squaredNorm()), b);
    const Complex cross = std::pow(one_minus / (1.0 - herm(qz, pz)), b);
    return t1 + t2 - 2.0 * cross.real();
}

double pseudo_distance(const CVector& a, const CVector& b) {
    const double num = (1.0 - a.squaredNorm()) * (1.0 - b.squaredNorm());
    const double den = std::norm(1.0 - herm(a, b));
    return std::sqrt(std::clamp(1.0 - num / den, 0.0, 1.0));
}

CurvePoint curve_gamma_M(int dim, double M, double rho) {
    if (!(M > 0.0) || !(rho > 0.0))
        fail(ErrorKind::InvalidParams, "gammaM needs M > 0 and rho > 0");
    const double c = (1.0 / M + rho) / 2.0;
    if (c > 1.0)
        fail(ErrorKind::InvalidParams, "gammaM: cos(theta) = (1/M + rho)/2 > 1");
    const double theta = std::acos(c);
    CurvePoint p;
    p.z = CVector::Zero(dim);
    p.z(0) = 1.0 - rho * std::exp(Complex(0.0, theta));
    p.param = rho;
    p.one_minus_abs2 = rho / M;  // 2 rho cos(theta) - rho^2 exactly
    p.curve_id = "gammaM(M=" + std::to_string(M) + ")";
    return p;
}

CurvePoint curve_gamma(int dim, double theta) {
    if (!(theta > 0.0) || !(theta < std::acos(-1.0)))
        fail(ErrorKind::InvalidParams, "gamma needs theta in (0, pi)");
    const double s = std::sin(theta / 2.0);
    CurvePoint p;
    p.z = CVector::Zero(dim);
    p.z(0) = (1.0 + std::exp(Complex(0.0, theta))) / 2.0;
    p.param = theta;
    p.one_minus_abs2 = s * s;  // (1 - cos theta)/2 without cancellation
    p.curve_id = "gamma";
    return p;
}

CurvePoint curve_gamma_k(int dim, int k, double r) {
    if (k < 2 || k > dim)
        fail(ErrorKind::IndexOutOfRange, "gammak needs 2 <= k <= n");
    if (!(r > 0.0) || !(r < 1.0))
        fail(ErrorKind::InvalidParams, "gammak needs 0 < r < 1");
    CurvePoint p;
    p.z = CVector::Zero(dim);
    p.z(0) = r;
    p.z(k - 1) = std::sqrt(1.0 - r);
    p.param = 1.0 - r;
    p.one_minus_abs2 = r * (1.0 - r);
    p.curve_id = "gammak(k=" + std::to_string(k) + ")";
    return p;
}

CurvePoint curve_gamma_kr(int dim, int k, double r, double theta) {
    if (k < 2 || k > dim)
        fail(ErrorKind::IndexOutOfRange, "gammakr needs 2 <= k <= n");
    if (!(r > 0.0) || !(r < 0.5))
        fail(ErrorKind::InvalidParams, "gammakr needs 0 < r < 1/2");
    const Complex z1 = 1.0 - r + r * std::exp(Complex(0.0, theta));
    const double s = std::sin(theta / 2.0);
    CurvePoint p;
    p.z = CVector::Zero(dim);
    p.z(0) = z1;
    p.z(k - 1) = z1 - 1.0;
    p.param = theta;
    p.one_minus_abs2 = 4.0 * r * (1.0 - 2.0 * r) * s * s;
    if (!(p.one_minus_abs2 > 0.0) && theta != 0.0)
        fail(ErrorKind::OutsideBall, "gammakr point leaves the open ball");
    p.curve_id = "gammakr(k=" + std::to_string(k) + ",r=" + std::to_string(r) + ")";
    return p;
}

CurvePoint curve_point(const CurveSpec& spec, double t) {
    switch (spec.family) {
        case CurveFamily::GammaM: return curve_gamma_M(spec.dim, spec.M, t);
        case CurveFamily::Gamma: return curve_gamma(spec.dim, t);
        case CurveFamily::GammaK: return curve_gamma_k(spec.dim, spec.k, 1.0 - t * t);
        case CurveFamily::GammaKR: return curve_gamma_kr(spec.dim, spec.k, spec.r, t);
    }
    fail(ErrorKind::InvalidParams, "unknown curve family");
}

namespace {

// Neville table for f(t) = L + c1 t + c2 t^2 + ... sampled on a halving
// ladder.  Returns the entry with the smallest internal discrepancy, which
// guards against noise amplification deep in the table.
LimitResult richardson_limit(const std::vector<Complex>& samples, double accept) {
    const int m = static_cast<int>(samples.size());
    std::vector<std::vector<Complex>> table(m);
    for (int i = 0; i < m; ++i) {
        table[i].resize(i + 1);
        table[i][0] = samples[i];
        double pow2 = 1.0;
        for (int j = 1; j <= i; ++j) {
            pow2 *= 2.0;
            table[i][j] = table[i][j - 1] +
                          (table[i][j - 1] - table[i - 1][j - 1]) / (pow2 - 1.0);
        }
    }
    LimitResult best;
    best.error = std::numeric_limits<double>::infinity();
    const int max_col = std::min(m - 1, 6);
    for (int i = 1; i < m; ++i) {
        for (int j = 1; j <= std::min(i, max_col); ++j) {
            const double err = std::abs(table[i][j] - table[i][j - 1]) +
                               std::abs(table[i][j] - table[i - 1][j - 1]);
            if (err < best.error) {
                best.error = err;
                best.value = table[i][j];
            }
        }
    }
    if (!(best.error <= accept * std::max(1.0, std::abs(best.value))))
        fail(ErrorKind::NonConvergent,
             "limit extrapolation did not contract below the acceptance gate");
    return best;
}

}  // namespace

LimitResult limit_along_curve(const std::function<Complex(const CurvePoint&)>& f,
                              const CurveSpec& spec, double t0, int steps,
                              double accept) {
    std::vector<Complex> samples;
    samples.reserve(steps);
    double t = t0;
    for (int i = 0; i < steps; ++i, t *= 0.5) {
        const Complex v = f(curve_point(spec, t));
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            fail(ErrorKind::NonConvergent, "curve limit: non-finite sample");
        samples.push_back(v);
    }
    return richardson_limit(samples, accept);
}

LimitResult mixed_kernel_curve_limit(const LinearFractionalMap& phi,
                                     const LinearFractionalMap& psi, double M) {
    CurveSpec spec;
    spec.family = CurveFamily::GammaM;
    spec.dim = phi.dim();
    spec.M = M;
    auto ratio = [&](const CurvePoint& p) {
        const CVector pw = phi(p.z), qw = psi(p.z);
        return p.one_minus_abs2 / (1.0 - herm(qw, pw));
    };
    return limit_along_curve(ratio, spec, 1e-2, 16, 1e-6);
}

LimitResult mixed_kernel_iterated_limit(const LinearFractionalMap& phi,
                                        const LinearFractionalMap& psi) {
    std::vector<Complex> per_m;
    for (double M = 256.0; M >= 1.0; M /= 2.0)
        per_m.push_back(mixed_kernel_curve_limit(phi, psi, M).value);
    // Reversed so the ladder parameter 1/M halves along the sequence.
    std::reverse(per_m.begin(), per_m.end());
    return richardson_limit(per_m, 1e-4);
}

double mw_quotient_lower_bound(const LinearFractionalMap& phi,
                               const LinearFractionalMap& psi, const CVector& z,
                               const SpaceSpec& space) {
    const double b = space.beta_exp();
    const double one_minus = 1.0 - z.squaredNorm();
    const CVector pz = phi(z), qz = psi(z);
    const double na = std::pow(one_minus / (1.0 - pz.squaredNorm()), b / 2.0);
    const double nb = std::pow(one_minus / (1.0 - qz.squaredNorm()), b / 2.0);
    const double rho = pseudo_distance(pz, qz);
    const double u = std::pow(1.0 - rho * rho, b / 2.0);
    return (na - nb) * (na - nb) + 2.0 * (1.0 - u) * na * nb;
}

namespace {

// JC data that degrades to "no finite dilation" instead of throwing when a
// sampled candidate sits marginally off the contact set.
std::optional<JCData> safe_jc(const LinearFractionalMap& phi, const CVector& zeta) {
    try {
        return angular_derivative(phi, zeta);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::NonConvergent) return std::nullopt;
        throw;
    }
}

std::vector<CVector> bound_candidates(const LinearFractionalMap& phi,
                                      const LinearFractionalMap& psi,
                                      const Tolerances& tol) {
    std::vector<CVector> candidates;
    auto harvest = [&](const LinearFractionalMap& map) {
        try {
            const ContactSet contacts = contact_points(map, tol.selfmap_band);
            for (const auto& p : contacts.points) candidates.push_back(p);
            // On a continuum the sampled points rarely include the extremal
            // witness; refine by minimizing the dilation over the contact set.
            if (const auto refined = min_dilation_contact(map, tol.selfmap_band))
                candidates.push_back(*refined);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::NoContact) throw;
        }
    };
    harvest(phi);
    harvest(psi);
    return candidates;
}

}  // namespace

BoundReport essnorm_lower_bound_diff(const LinearFractionalMap& phi,
                                     const LinearFractionalMap& psi,
                                     const SpaceSpec& space,
                                     const Tolerances& tol) {
    BoundReport report;
    report.space = space;
    const double b = space.beta_exp();
    for (const CVector& zeta : bound_candidates(phi, psi, tol)) {
        const auto ja = safe_jc(phi, zeta);
        const auto jb = safe_jc(psi, zeta);
        if (!ja || !jb) continue;
        if (same_data_relation(*ja, *jb, tol)) continue;
        if (!ja->finite() && !jb->finite()) continue;
        const double d_use = ja->finite() ? ja->d_val : jb->d_val;
        const double bound = std::pow(d_use, -b);
        if (bound > report.bound) {
            report.bound = bound;
            report.witness = zeta;
            report.d_at_witness = d_use;
        }
    }
    return report;
}

double essnorm_lower_bound_combo(const std::vector<LinearFractionalMap>& maps,
                                 const std::vector<Complex>& coeffs,
                                 const CVector& zeta, const SpaceSpec& space,
                                 const Tolerances& tol) {
    if (maps.empty() || maps.size() != coeffs.size())
        fail(ErrorKind::InvalidParams,
             "combo bound needs equally many maps and coefficients");
    const double b = space.beta_exp();
    std::vector<JCData> jc;
    jc.reserve(maps.size());
    for (const auto& map : maps) jc.push_back(angular_derivative(map, zeta));
    // Each distinct data class contributes |sum of its coefficients|^2 /
    // d^beta exactly once.  Counting the term once per member would inflate
    // the bound past what the kernel expansion proves (duplicated symbols
    // make that reading exceed the operator norm itself).
    double total = 0.0;
    std::vector<bool> used(maps.size(), false);
    for (std::size_t j = 0; j < maps.size(); ++j) {
        if (!jc[j].finite() || used[j]) continue;
        Complex class_sum = 0.0;
        for (std::size_t l = 0; l < maps.size(); ++l) {
            if (same_data_relation(jc[l], jc[j], tol)) {
                class_sum += coeffs[l];
                used[l] = true;
            }
        }
        total += std::norm(class_sum) * std::pow(jc[j].d_val, -b);
    }
    return total;
}

std::vector<DataClassReport> combo_necessary_condition(
    const std::vector<LinearFractionalMap>& maps,
    const std::vector<Complex>& coeffs, const SpaceSpec& space,
    const Tolerances& tol) {
    (void)space;
    if (maps.empty() || maps.size() != coeffs.size())
        fail(ErrorKind::InvalidParams,
             "combo audit needs equally many maps and coefficients");

    std::vector<CVector> witnesses;
    for (const auto& map : maps) {
        try {
            const ContactSet contacts = contact_points(map, tol.selfmap_band);
            for (const auto& p : contacts.points) {
                bool fresh = true;
                for (const auto& kept : witnesses)
                    if ((kept - p).norm() <= tol.contact_dedup) fresh = false;
                if (fresh) witnesses.push_back(p);
            }
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::NoContact) throw;
        }
    }

    std::vector<DataClassReport> rows;
    for (const auto& zeta : witnesses) {
        std::vector<std::optional<JCData>> jc;
        for (const auto& map : maps) jc.push_back(safe_jc(map, zeta));
        std::vector<int> finite_idx;
        for (std::size_t j = 0; j < maps.size(); ++j)
            if (jc[j] && jc[j]->finite()) finite_idx.push_back(static_cast<int>(j));
        if (finite_idx.empty()) continue;

        DataClassReport row;
        row.zeta = zeta;
        std::vector<bool> used(maps.size(), false);
        for (const int j : finite_idx) {
            if (used[j]) continue;
            std::vector<int> members;
            Complex sum = 0.0;
            for (const int l : finite_idx) {
                if (same_data_relation(*jc[l], *jc[j], tol)) {
                    members.push_back(l);
                    used[l] = true;
                    sum += coeffs[l];
                }
            }
            const bool ok = std::abs(sum) <= 1e-9;
            row.classes.push_back(std::move(members));
            row.class_sums.push_back(sum);
            row.satisfied.push_back(ok);
            row.all_satisfied = row.all_satisfied && ok;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace ballcomp
