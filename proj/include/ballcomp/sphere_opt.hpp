#ifndef BALLCOMP_SPHERE_OPT_HPP
#define BALLCOMP_SPHERE_OPT_HPP

#include <functional>
#include <vector>

#include "ballcomp/types.hpp"

namespace ballcomp {

/// A smooth real objective on the unit sphere of C^n, reported through the
/// real coordinates of z.  The gradient callback may be empty, in which
/// case central differences are used.
struct SphereObjective {
    std::function<double(const CVector&)> value;
    std::function<CVector(const CVector&)> wirtinger_gradient;  // dF/d(conj z), optional
};

struct SphereOptimum {
    CVector point;
    double value = 0.0;
};

struct SphereOptReport {
    SphereOptimum best;
    std::vector<SphereOptimum> local_optima;  // deduplicated, best first
};

/// Deterministic multistart maximization over the unit sphere: a Kronecker
/// low-discrepancy lattice (64 starts per real sphere dimension 2n-1, plus
/// the canonical points +-e_j and +-i e_j), each polished by projected
/// gradient ascent with Barzilai-Borwein steps.  No RNG is involved, so
/// results are reproducible bit-for-bit.  Starts run in parallel workers
/// capped by BALLCOMP_THREADS; collection order is fixed by start index.
SphereOptReport sphere_maximize(int n, const SphereObjective& objective,
                                double dedup_angle = 1e-6);

SphereOptReport sphere_minimize(int n, const SphereObjective& objective,
                                double dedup_angle = 1e-6);

namespace detail {

/// Fixed-chunk deterministic parallel loop: fn(i) for i in [0, count).
/// Thread count comes from BALLCOMP_THREADS (default: hardware), but the
/// work split does not depend on it.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

int thread_cap();

}  // namespace detail

}  // namespace ballcomp

#endif
