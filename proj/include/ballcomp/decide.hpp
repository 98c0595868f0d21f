#ifndef BALLCOMP_DECIDE_HPP
#define BALLCOMP_DECIDE_HPP

#include <optional>
#include <string>
#include <vector>

#include "ballcomp/kernel.hpp"

namespace ballcomp {

enum class Verdict { CompactBothCompact, CompactEqualSymbols, NotCompact };

const char* verdict_name(Verdict v);

/// Parameter-wise distance between the T-forms of two maps fixing e1; the
/// quantities the compactness argument forces to coincide one by one.
struct TFormDelta {
    double t = 0.0;
    double K = 0.0;
    double beta = 0.0;   // max entry distance
    double gamma = 0.0;
    double alpha = 0.0;
    std::vector<std::string> differing;  // parameter names above the gate
};

struct Decision {
    Verdict verdict = Verdict::NotCompact;
    double sup_phi = 0.0;
    double sup_psi = 0.0;
    std::optional<BoundReport> bound;       // quantitative certificate
    std::optional<TFormDelta> tform_delta;  // matched-data fallback certificate
};

/// The compact-difference dichotomy for linear fractional symbols: the
/// difference is compact iff both operators are compact or the symbols
/// coincide.  NotCompact verdicts carry a certificate: a positive
/// essential-norm bound when some contact point separates the boundary
/// data, otherwise the T-form parameter that still distinguishes the maps.
Decision decide_difference(const LinearFractionalMap& phi,
                           const LinearFractionalMap& psi,
                           const SpaceSpec& space,
                           const Tolerances& tol = Tolerances());

struct AdjointCommutationReport {
    bool hypothesis_met = false;  // ||phi||_inf = 1 within the band
    bool commutes = false;        // phi o sigma = sigma o phi projectively
    double sup_phi = 0.0;
    Decision decision;            // for C_{phi o sigma} - C_{sigma o phi}
};

/// Commutation test for phi against its adjoint symbol sigma: the
/// difference C_{phi o sigma} - C_{sigma o phi} is compact iff the two
/// compositions coincide.  When ||phi||_inf < 1 the hypothesis of that
/// equivalence fails; the report flags it and the plain dichotomy above
/// still decides the difference.
AdjointCommutationReport decide_adjoint_commutation(
    const LinearFractionalMap& phi, const SpaceSpec& space,
    const Tolerances& tol = Tolerances());

struct ContactAuditRow {
    CVector zeta;
    CVector phi_image;
    CVector psi_image;
    double d_phi = std::numeric_limits<double>::infinity();
    double d_psi = std::numeric_limits<double>::infinity();
    bool same_data = false;
};

struct NecessaryAudit {
    std::vector<ContactAuditRow> rows;         // one per detected contact point
    std::optional<CVector> common_point;       // shared boundary fixed point used below
    std::optional<TFormDelta> tform;           // deltas after unitary transport
};

/// Necessary-condition audit: shared boundary data at every contact point
/// of either symbol, plus the T-form comparison at a common boundary fixed
/// point (after transporting it to e1) when one exists.
NecessaryAudit audit_necessary_conditions(const LinearFractionalMap& phi,
                                          const LinearFractionalMap& psi,
                                          const SpaceSpec& space,
                                          const Tolerances& tol = Tolerances());

/// Distance record between two T-forms of equal dimension.
TFormDelta tform_delta(const TForm& a, const TForm& b, double gate = 1e-7);

}  // namespace ballcomp

#endif
