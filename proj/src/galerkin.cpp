#include "ballcomp/galerkin.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <ostream>

#include "ballcomp/sphere_opt.hpp"

namespace ballcomp {

namespace {

void enumerate_indices(int n, int deg, std::vector<int>& stack,
                       std::vector<std::vector<int>>& out) {
    if (static_cast<int>(stack.size()) == n - 1) {
        stack.push_back(deg);
        out.push_back(stack);
        stack.pop_back();
        return;
    }
    for (int a = 0; a <= deg; ++a) {
        stack.push_back(a);
        enumerate_indices(n, deg - a, stack, out);
        stack.pop_back();
    }
}

double log_norm_sq(const SpaceSpec& space, const std::vector<int>& alpha) {
    // ||z^alpha||^2 = alpha! Gamma(n+s+1) / Gamma(n+s+1+|alpha|); the Hardy
    // case s = -1 degenerates to alpha! (n-1)! / (n-1+|alpha|)!.
    const double nsp1 = space.n + space.s + 1.0;
    int total = 0;
    double lg = std::lgamma(nsp1);
    for (const int a : alpha) {
        lg += std::lgamma(a + 1.0);
        total += a;
    }
    return lg - std::lgamma(nsp1 + total);
}

// Nodes/weights of an n-point Gauss rule for the weight
// (1-x)^a (1+x)^b on [-1, 1], by Golub-Welsch on the Jacobi recurrence.
void gauss_jacobi(int n, double a, double b, std::vector<double>& x,
                  std::vector<double>& w) {
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int k = 0; k < n; ++k) {
        if (k == 0) {
            J(k, k) = (b - a) / (a + b + 2.0);
        } else {
            const double s2 = 2.0 * k + a + b;
            J(k, k) = (b * b - a * a) / (s2 * (s2 + 2.0));
            double beta_k;
            if (k == 1 && a + b == 0.0) {
                beta_k = 4.0 * (1.0 + a) * (1.0 + b) /
                         ((2.0 + a + b) * (2.0 + a + b) * (3.0 + a + b));
            } else {
                beta_k = 4.0 * k * (k + a) * (k + b) * (k + a + b) /
                         (s2 * s2 * (s2 + 1.0) * (s2 - 1.0));
            }
            J(k, k - 1) = J(k - 1, k) = std::sqrt(beta_k);
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(J);
    const double mu0 = std::exp((a + b + 1.0) * std::numbers::ln2 +
                                std::lgamma(a + 1.0) + std::lgamma(b + 1.0) -
                                std::lgamma(a + b + 2.0));
    x.resize(n);
    w.resize(n);
    for (int i = 0; i < n; ++i) {
        x[i] = eig.eigenvalues()(i);
        const double v0 = eig.eigenvectors()(0, i);
        w[i] = mu0 * v0 * v0;
    }
}

// Gauss-Legendre on [0, 1].
void gauss_legendre01(int n, std::vector<double>& x, std::vector<double>& w) {
    gauss_jacobi(n, 0.0, 0.0, x, w);
    for (int i = 0; i < n; ++i) {
        x[i] = 0.5 * (x[i] + 1.0);
        w[i] *= 0.5;
    }
}

struct Resolution {
    int angular = 0;  // trapezoid points per angle
    int simplex = 0;  // Gauss-Legendre points per simplex axis
    int radial = 0;   // Gauss-Jacobi points (Bergman only)

    Resolution grow() const {
        auto up = [](int v) { return v + std::max(6, v / 2); };
        return {up(angular), up(simplex), up(radial)};
    }
};

struct SimplexRule {
    std::vector<std::vector<double>> points;  // t_1..t_n >= 0, sum 1
    std::vector<double> weights;              // include the (n-1)! of dsigma
};

// Quadrature on the simplex {t_j >= 0, sum t_j = 1} through the nested
// Duffy substitution with Gauss-Legendre along each axis.
SimplexRule simplex_rule(int n, int gl_points) {
    SimplexRule rule;
    if (n == 1) {
        rule.points.push_back({1.0});
        rule.weights.push_back(1.0);
        return rule;
    }
    std::vector<double> gx, gw;
    gauss_legendre01(gl_points, gx, gw);

    std::vector<int> idx(n - 1, 0);
    while (true) {
        double weight = 1.0;
        double remaining = 1.0;
        std::vector<double> t(n);
        for (int axis = 0; axis < n - 1; ++axis) {
            const double v = gx[idx[axis]];
            weight *= gw[idx[axis]];
            // Duffy Jacobian factor (1-v)^{n-2-axis}
            for (int p = 0; p < n - 2 - axis; ++p) weight *= (1.0 - v);
            t[axis] = remaining * v;
            remaining *= (1.0 - v);
        }
        t[n - 1] = remaining;
        rule.points.push_back(std::move(t));
        rule.weights.push_back(weight * std::tgamma(static_cast<double>(n)));
        int axis = 0;
        while (axis < n - 1 && ++idx[axis] == gl_points) idx[axis++] = 0;
        if (axis == n - 1) break;
    }
    return rule;
}

// Sphere rule: zeta_j = sqrt(t_j) e^{i th_j} with the t-simplex rule above
// and equispaced trapezoid rules in each angle (exactly null for angular
// frequencies 0 < |k| < angular).
QuadratureRule sphere_rule(int n, const Resolution& res) {
    const SimplexRule simplex = simplex_rule(n, res.simplex);
    const int m = res.angular;
    QuadratureRule rule;
    std::vector<Complex> phases(m);
    for (int i = 0; i < m; ++i)
        phases[i] = std::exp(Complex(0.0, 2.0 * std::numbers::pi * i / m));
    const double angular_weight = 1.0 / std::pow(static_cast<double>(m), n);

    std::vector<double> root_t(n);
    for (std::size_t sp = 0; sp < simplex.points.size(); ++sp) {
        for (int j = 0; j < n; ++j) root_t[j] = std::sqrt(simplex.points[sp][j]);
        std::vector<int> idx(n, 0);
        while (true) {
            CVector z(n);
            for (int j = 0; j < n; ++j) z(j) = root_t[j] * phases[idx[j]];
            rule.nodes.push_back(std::move(z));
            rule.weights.push_back(simplex.weights[sp] * angular_weight);
            int axis = 0;
            while (axis < n && ++idx[axis] == m) idx[axis++] = 0;
            if (axis == n) break;
        }
    }
    return rule;
}

QuadratureRule ball_rule(const SpaceSpec& space, const Resolution& res) {
    const int n = space.n;
    const QuadratureRule sphere = sphere_rule(n, res);
    if (space.is_hardy()) return sphere;

    std::vector<double> gx, gw;
    gauss_jacobi(res.radial, space.s, n - 1.0, gx, gw);
    const double c_s = std::exp(std::lgamma(n + space.s + 1.0) -
                                std::lgamma(n + 1.0) - std::lgamma(space.s + 1.0));
    const double front = n * c_s * std::pow(2.0, -(n + space.s));

    QuadratureRule rule;
    rule.nodes.reserve(sphere.nodes.size() * gx.size());
    for (std::size_t ri = 0; ri < gx.size(); ++ri) {
        const double rho = 0.5 * (1.0 + gx[ri]);
        const double radial_w = front * gw[ri];
        const double r = std::sqrt(rho);
        for (std::size_t si = 0; si < sphere.nodes.size(); ++si) {
            rule.nodes.push_back(r * sphere.nodes[si]);
            rule.weights.push_back(radial_w * sphere.weights[si]);
        }
    }
    return rule;
}

Resolution exactness_resolution(const SpaceSpec& space, int target_degree) {
    // Trapezoid frequencies |alpha_j - gamma_j| <= target stay below the
    // grid size; simplex/radial polynomial degrees are <= target/2.
    return {target_degree + 1, target_degree / 2 + space.n + 2,
            target_degree / 4 + 2};
}

}  // namespace

int TruncationBasis::degree(int i) const {
    int total = 0;
    for (const int a : indices[i]) total += a;
    return total;
}

CVector TruncationBasis::eval_basis(const CVector& w) const {
    CVector powers(size());
    CVector values(size());
    for (int i = 0; i < size(); ++i) {
        powers(i) = parent[i] < 0 ? Complex(1.0, 0.0)
                                  : powers(parent[i]) * w(step_coord[i]);
        values(i) = powers(i) / norms[i];
    }
    return values;
}

CVector TruncationBasis::kernel_coeffs(const CVector& z) const {
    return eval_basis(z).conjugate();
}

TruncationBasis monomial_norms(const SpaceSpec& space, int D) {
    if (D < 0) fail(ErrorKind::InvalidParams, "degree cap must be >= 0");
    TruncationBasis basis;
    basis.space = space;
    basis.degree_cap = D;
    std::vector<int> stack;
    for (int deg = 0; deg <= D; ++deg)
        enumerate_indices(space.n, deg, stack, basis.indices);

    basis.norms.resize(basis.indices.size());
    basis.parent.assign(basis.indices.size(), -1);
    basis.step_coord.assign(basis.indices.size(), 0);
    std::map<std::vector<int>, int> seen;
    for (int i = 0; i < basis.size(); ++i) {
        basis.norms[i] = std::exp(0.5 * log_norm_sq(space, basis.indices[i]));
        seen.emplace(basis.indices[i], i);
        for (int j = 0; j < space.n; ++j) {
            if (basis.indices[i][j] > 0) {
                std::vector<int> par = basis.indices[i];
                par[j] -= 1;
                basis.parent[i] = seen.at(par);
                basis.step_coord[i] = j;
                break;
            }
        }
    }
    return basis;
}

QuadratureRule ball_quadrature(const SpaceSpec& space, int target_degree) {
    if (target_degree < 0)
        fail(ErrorKind::InvalidParams, "quadrature degree target must be >= 0");
    return ball_rule(space, exactness_resolution(space, target_degree));
}

namespace {

CMatrix assemble(const LinearFractionalMap& phi, const TruncationBasis& basis,
                 const QuadratureRule& rule) {
    const int B = basis.size();
    const std::size_t total = rule.nodes.size();
    // Fixed 16-way chunking keeps the summation order independent of the
    // worker count, so assembled matrices are bitwise reproducible.
    const std::size_t chunks = std::min<std::size_t>(16, total ? total : 1);
    std::vector<CMatrix> partial(chunks, CMatrix::Zero(B, B));
    detail::parallel_for(chunks, [&](std::size_t c) {
        const std::size_t lo = total * c / chunks;
        const std::size_t hi = total * (c + 1) / chunks;
        constexpr std::size_t kBatch = 64;
        CMatrix A(B, kBatch), Bc(B, kBatch);
        std::size_t i = lo;
        while (i < hi) {
            const std::size_t nb = std::min(kBatch, hi - i);
            for (std::size_t b = 0; b < nb; ++b) {
                const CVector& node = rule.nodes[i + b];
                A.col(b) = basis.eval_basis(phi(node));
                Bc.col(b) = rule.weights[i + b] * basis.eval_basis(node).conjugate();
            }
            partial[c].noalias() += Bc.leftCols(nb) * A.leftCols(nb).transpose();
            i += nb;
        }
    });
    CMatrix T = CMatrix::Zero(B, B);
    for (const auto& p : partial) T += p;
    return T;
}

}  // namespace

TruncationMatrix truncation_matrix(const LinearFractionalMap& phi,
                                   const TruncationBasis& basis,
                                   int projection_degree) {
    if (phi.dim() != basis.space.n)
        fail(ErrorKind::DimensionMismatch, "truncation_matrix: dimension mismatch");
    if (projection_degree < basis.degree_cap)
        fail(ErrorKind::InvalidParams,
             "projection degree must be >= the basis degree cap");

    // e_alpha o phi is rational, so no finite rule is exact; grow the
    // resolution geometrically until two successive assemblies agree.
    Resolution res = exactness_resolution(basis.space, 2 * projection_degree + 4);
    CMatrix prev = assemble(phi, basis, ball_rule(basis.space, res));
    for (int refinement = 0; refinement < 5; ++refinement) {
        res = res.grow();
        CMatrix cur = assemble(phi, basis, ball_rule(basis.space, res));
        if ((cur - prev).norm() <= 1e-8) {
            TruncationMatrix out;
            out.basis = &basis;
            out.entries = std::move(cur);
            return out;
        }
        prev = std::move(cur);
    }
    fail(ErrorKind::QuadratureUnderResolved,
         "truncation_matrix: successive quadrature refinements keep disagreeing");
}

std::vector<double> singular_values(const TruncationMatrix& T) {
    Eigen::BDCSVD<CMatrix> svd(T.entries);
    const auto& sv = svd.singularValues();
    return std::vector<double>(sv.data(), sv.data() + sv.size());
}

double tail_norm_probe(const TruncationMatrix& T_phi,
                       const TruncationMatrix& T_psi, int k) {
    const TruncationBasis& basis = *T_phi.basis;
    if (k < 0 || k > basis.degree_cap)
        fail(ErrorKind::InvalidParams, "tail_norm_probe needs 0 <= k <= D");
    CMatrix diff = T_phi.entries - T_psi.entries;
    for (int i = 0; i < basis.size(); ++i)
        if (basis.degree(i) < k) diff.col(i).setZero();
    Eigen::BDCSVD<CMatrix> svd(diff);
    return svd.singularValues()(0);
}

double tail_norm_probe(const LinearFractionalMap& phi,
                       const LinearFractionalMap& psi, const SpaceSpec& space,
                       int D, int k) {
    const TruncationBasis basis = monomial_norms(space, D);
    const TruncationMatrix T_phi = truncation_matrix(phi, basis, D);
    const TruncationMatrix T_psi = truncation_matrix(psi, basis, D);
    return tail_norm_probe(T_phi, T_psi, k);
}

void write_matrix_text(std::ostream& os, const CMatrix& m) {
    char buf[64];
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            std::snprintf(buf, sizeof(buf), "%.17g %.17g", m(i, j).real(),
                          m(i, j).imag());
            os << buf << (j + 1 < m.cols() ? "  " : "");
        }
        os << '\n';
    }
}

}  // namespace ballcomp
