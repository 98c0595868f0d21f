#include "ballcomp/sphere_opt.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <thread>

namespace ballcomp {

namespace detail {

int thread_cap() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("BALLCOMP_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1 && static_cast<unsigned>(cap) < hw) hw = static_cast<unsigned>(cap);
    }
    return static_cast<int>(hw);
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
    const int workers = std::min<std::size_t>(thread_cap(), count ? count : 1);
    if (workers <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = static_cast<std::size_t>(w); i < count;
                 i += static_cast<std::size_t>(workers))
                fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace detail

namespace {

CVector reals_to_complex(const RVector& x) {
    CVector z(x.size() / 2);
    for (Eigen::Index j = 0; j < z.size(); ++j)
        z(j) = Complex(x(2 * j), x(2 * j + 1));
    return z;
}

RVector complex_to_reals(const CVector& z) {
    RVector x(2 * z.size());
    for (Eigen::Index j = 0; j < z.size(); ++j) {
        x(2 * j) = z(j).real();
        x(2 * j + 1) = z(j).imag();
    }
    return x;
}

// Real gradient from the Wirtinger gradient dF/d(conj z): the x-component
// is 2 Re g_j and the y-component 2 Im g_j.
RVector real_gradient(const SphereObjective& f, const RVector& x) {
    const CVector z = reals_to_complex(x);
    if (f.wirtinger_gradient) {
        const CVector g = f.wirtinger_gradient(z);
        RVector gx(x.size());
        for (Eigen::Index j = 0; j < z.size(); ++j) {
            gx(2 * j) = 2.0 * g(j).real();
            gx(2 * j + 1) = 2.0 * g(j).imag();
        }
        return gx;
    }
    RVector gx(x.size());
    const double h = 1e-6;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        RVector xp = x, xm = x;
        xp(i) += h;
        xm(i) -= h;
        xp /= xp.norm();
        xm /= xm.norm();
        gx(i) = (f.value(reals_to_complex(xp)) - f.value(reals_to_complex(xm))) / (2 * h);
    }
    return gx;
}

// Kronecker (R_d) low-discrepancy sequence in [0,1)^dim.
std::vector<RVector> kronecker_sequence(int dim, int count) {
    double x = 1.0;
    for (int it = 0; it < 64; ++it)
        x = std::pow(1.0 + x, 1.0 / (dim + 1));  // root of x^{d+1} = x + 1
    RVector alpha(dim);
    double p = 1.0;
    for (int j = 0; j < dim; ++j) {
        p /= x;
        alpha(j) = p;
    }
    std::vector<RVector> seq;
    seq.reserve(count);
    RVector u = RVector::Constant(dim, 0.5);
    for (int i = 0; i < count; ++i) {
        for (int j = 0; j < dim; ++j) u(j) = std::fmod(u(j) + alpha(j), 1.0);
        seq.push_back(u);
    }
    return seq;
}

std::vector<RVector> lattice_starts(int n) {
    const int dim = 2 * n;
    const int count = 64 * (dim - 1);
    std::vector<RVector> starts;
    starts.reserve(count + 2 * dim);
    // Canonical starts first: +-e_j and +-i e_j.  Automorphisms make the
    // objective constant, in which case the starts themselves are the
    // reported contact sample and should include the axis points.
    for (int j = 0; j < dim; ++j) {
        RVector e = RVector::Zero(dim);
        e(j) = 1.0;
        starts.push_back(e);
        starts.push_back(-e);
    }
    // Low-discrepancy bulk pushed to the sphere through Box-Muller pairs.
    const auto seq = kronecker_sequence(dim % 2 == 0 ? dim : dim + 1, count);
    for (const auto& u : seq) {
        RVector g(dim);
        for (int j = 0; j + 1 < dim; j += 2) {
            const double r = std::sqrt(-2.0 * std::log(std::max(u(j), 1e-16)));
            g(j) = r * std::cos(2.0 * std::numbers::pi * u(j + 1));
            g(j + 1) = r * std::sin(2.0 * std::numbers::pi * u(j + 1));
        }
        const double norm = g.norm();
        if (norm < 1e-12) continue;
        starts.push_back(g / norm);
    }
    return starts;
}

// Projected gradient ascent with Barzilai-Borwein steps and a backtracking
// guard.  Dimensions here are tiny (<= 8 reals), so iteration counts are
// generous rather than clever.
SphereOptimum ascend(const SphereObjective& f, RVector x, double sign) {
    double fx = sign * f.value(reals_to_complex(x));
    RVector g = sign * real_gradient(f, x);
    RVector gr = g - g.dot(x) * x;
    double step = 1.0 / std::max(1.0, gr.norm());
    RVector x_prev = x;
    RVector gr_prev = gr;
    for (int it = 0; it < 600; ++it) {
        if (gr.norm() <= 1e-11 * std::max(1.0, std::abs(fx))) break;
        RVector cand = x + step * gr;
        cand /= cand.norm();
        double fc = sign * f.value(reals_to_complex(cand));
        int bt = 0;
        while (fc < fx - 1e-14 && bt < 40) {
            step *= 0.5;
            cand = x + step * gr;
            cand /= cand.norm();
            fc = sign * f.value(reals_to_complex(cand));
            ++bt;
        }
        if (bt == 40) break;
        x_prev = x;
        gr_prev = gr;
        x = cand;
        fx = fc;
        g = sign * real_gradient(f, x);
        gr = g - g.dot(x) * x;
        const RVector dx = x - x_prev;
        const RVector dg = gr - gr_prev;
        const double denom = std::abs(dx.dot(dg));
        step = denom > 1e-300 ? std::abs(dx.dot(dx)) / denom : step * 2.0;
        step = std::clamp(step, 1e-12, 1e6);
    }
    return {reals_to_complex(x), sign * fx};
}

SphereOptReport multistart(int n, const SphereObjective& f, double sign,
                           double dedup_angle) {
    const auto starts = lattice_starts(n);
    std::vector<SphereOptimum> results(starts.size());
    detail::parallel_for(starts.size(), [&](std::size_t i) {
        results[i] = ascend(f, starts[i], sign);
    });
    // Deterministic dedup: best value first, merge by chordal distance.
    // Values are quantized so float noise between tied optima cannot
    // reorder them; ties keep start order (canonical axis points first).
    auto key = [&](const SphereOptimum& r) {
        return std::llround(sign * r.value * 1e12);
    };
    std::stable_sort(results.begin(), results.end(),
                     [&](const SphereOptimum& a, const SphereOptimum& b) {
                         return key(a) > key(b);
                     });
    SphereOptReport report;
    for (const auto& r : results) {
        bool fresh = true;
        for (const auto& kept : report.local_optima) {
            if ((kept.point - r.point).norm() <= dedup_angle) {
                fresh = false;
                break;
            }
        }
        if (fresh) report.local_optima.push_back(r);
    }
    report.best = report.local_optima.front();
    return report;
}

}  // namespace

SphereOptReport sphere_maximize(int n, const SphereObjective& objective,
                                double dedup_angle) {
    return multistart(n, objective, +1.0, dedup_angle);
}

SphereOptReport sphere_minimize(int n, const SphereObjective& objective,
                                double dedup_angle) {
    return multistart(n, objective, -1.0, dedup_angle);
}

}  // namespace ballcomp
