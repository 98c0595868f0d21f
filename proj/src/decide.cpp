#include "ballcomp/decide.hpp"

#include <cmath>

namespace ballcomp {

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::CompactBothCompact: return "CompactBothCompact";
        case Verdict::CompactEqualSymbols: return "CompactEqualSymbols";
        case Verdict::NotCompact: return "NotCompact";
    }
    return "Unknown";
}

TFormDelta tform_delta(const TForm& a, const TForm& b, double gate) {
    TFormDelta delta;
    delta.t = std::abs(a.t - b.t);
    delta.K = std::abs(a.K - b.K);
    delta.beta = a.n > 1 ? (a.beta - b.beta).cwiseAbs().maxCoeff() : 0.0;
    delta.gamma = a.n > 1 ? (a.gamma - b.gamma).cwiseAbs().maxCoeff() : 0.0;
    delta.alpha = a.n > 1 ? (a.alpha - b.alpha).cwiseAbs().maxCoeff() : 0.0;
    if (delta.t > gate) delta.differing.push_back("t");
    if (delta.K > gate) delta.differing.push_back("K");
    if (delta.beta > gate) delta.differing.push_back("beta");
    if (delta.gamma > gate) delta.differing.push_back("gamma");
    if (delta.alpha > gate) delta.differing.push_back("alpha");
    return delta;
}

namespace {

std::vector<CVector> merged_contacts(const LinearFractionalMap& phi,
                                     const LinearFractionalMap& psi,
                                     const Tolerances& tol) {
    std::vector<CVector> points;
    auto add = [&](const LinearFractionalMap& map) {
        try {
            for (const auto& p : contact_points(map, tol.selfmap_band).points) {
                bool fresh = true;
                for (const auto& kept : points)
                    if ((kept - p).norm() <= tol.contact_dedup) fresh = false;
                if (fresh) points.push_back(p);
            }
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::NoContact) throw;
        }
    };
    add(phi);
    add(psi);
    return points;
}

std::optional<JCData> soft_jc(const LinearFractionalMap& phi, const CVector& z) {
    try {
        return angular_derivative(phi, z);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::NonConvergent) return std::nullopt;
        throw;
    }
}

// T-form comparison after transporting a common boundary fixed point to e1.
std::optional<std::pair<CVector, TFormDelta>> transported_tform_delta(
    const LinearFractionalMap& phi, const LinearFractionalMap& psi,
    const Tolerances& tol) {
    for (const CVector& zeta : merged_contacts(phi, psi, tol)) {
        const CVector eta = phi(zeta);
        if (eta.norm() < 1.0 - tol.selfmap_band) continue;
        if ((psi(zeta) - eta).norm() > tol.data_image) continue;
        const CVector eta_unit = eta / eta.norm();
        try {
            const TForm a =
                normalize_t_form(unitary_conjugate(phi, zeta, eta_unit), tol);
            const TForm b =
                normalize_t_form(unitary_conjugate(psi, zeta, eta_unit), tol);
            return std::make_pair(zeta, tform_delta(a, b));
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::NotFixingE1 &&
                e.kind() != ErrorKind::RelationViolation)
                throw;
        }
    }
    return std::nullopt;
}

}  // namespace

Decision decide_difference(const LinearFractionalMap& phi,
                           const LinearFractionalMap& psi,
                           const SpaceSpec& space, const Tolerances& tol) {
    if (phi.dim() != psi.dim())
        fail(ErrorKind::DimensionMismatch, "decide_difference: dimension mismatch");
    Decision decision;
    decision.sup_phi = sup_norm(phi);
    decision.sup_psi = sup_norm(psi);
    const bool compact_phi = is_compact_single(phi, tol);
    const bool compact_psi = is_compact_single(psi, tol);

    if (compact_phi && compact_psi) {
        decision.verdict = Verdict::CompactBothCompact;
        return decision;
    }
    if (projectively_equal(phi, psi, tol.algebraic)) {
        decision.verdict = Verdict::CompactEqualSymbols;
        return decision;
    }

    decision.verdict = Verdict::NotCompact;
    BoundReport bound = essnorm_lower_bound_diff(phi, psi, space, tol);
    if (bound.bound > 0.0) {
        decision.bound = std::move(bound);
        return decision;
    }
    // Matched boundary data everywhere yet distinct symbols: the regime the
    // T-form machinery decides.  Record which normalized parameter differs.
    if (auto transported = transported_tform_delta(phi, psi, tol)) {
        decision.bound = std::move(bound);  // zero bound, kept for the record
        decision.tform_delta = std::move(transported->second);
        if (!decision.bound->witness) decision.bound->witness = transported->first;
        return decision;
    }
    fail(ErrorKind::Indeterminate,
         "decide_difference: distinct symbols with no separating certificate");
}

AdjointCommutationReport decide_adjoint_commutation(
    const LinearFractionalMap& phi, const SpaceSpec& space,
    const Tolerances& tol) {
    AdjointCommutationReport report;
    report.sup_phi = sup_norm(phi);
    report.hypothesis_met = report.sup_phi >= 1.0 - tol.selfmap_band;

    const LinearFractionalMap sigma = adjoint_map(phi);
    const LinearFractionalMap fs = compose(phi, sigma);
    const LinearFractionalMap sf = compose(sigma, phi);
    report.commutes = projectively_equal(fs, sf, tol.algebraic);
    report.decision = decide_difference(fs, sf, space, tol);

    if (report.hypothesis_met) {
        // With ||phi||_inf = 1 both compositions stay non-compact, so the
        // difference is compact exactly when the compositions coincide.
        const bool compact = report.decision.verdict != Verdict::NotCompact;
        if (compact != report.commutes)
            fail(ErrorKind::Indeterminate,
                 "adjoint commutation test disagrees with the difference verdict");
    }
    return report;
}

NecessaryAudit audit_necessary_conditions(const LinearFractionalMap& phi,
                                          const LinearFractionalMap& psi,
                                          const SpaceSpec& space,
                                          const Tolerances& tol) {
    (void)space;
    NecessaryAudit audit;
    for (const CVector& zeta : merged_contacts(phi, psi, tol)) {
        const auto ja = soft_jc(phi, zeta);
        const auto jb = soft_jc(psi, zeta);
        if (!ja || !jb) continue;
        ContactAuditRow row;
        row.zeta = zeta;
        row.phi_image = ja->eta;
        row.psi_image = jb->eta;
        row.d_phi = ja->d_val;
        row.d_psi = jb->d_val;
        row.same_data = same_data_relation(*ja, *jb, tol);
        audit.rows.push_back(std::move(row));
    }
    if (auto transported = transported_tform_delta(phi, psi, tol)) {
        audit.common_point = transported->first;
        audit.tform = transported->second;
    }
    return audit;
}

}  // namespace ballcomp
