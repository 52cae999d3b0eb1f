#include "ellcheck/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <Eigen/SparseLU>

namespace ellcheck {

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();

double sphere_measure(int n) { return 2.0 * std::pow(std::numbers::pi, n / 2.0) / std::tgamma(n / 2.0); }

// Applies K to the unknown part of u_full, boundary values included.
Eigen::VectorXd apply_with_boundary(const Discretization& disc, const Eigen::VectorXd& u_full) {
    const int N = disc.grid.unknown_count(), f0 = disc.grid.first_unknown();
    const auto& K = disc.K;
    Eigen::VectorXd y(N);
    for (int k = 0; k < N; ++k) {
        const int i = f0 + k;
        double s = K.diag(k) * u_full(i);
        if (i > 0) s += K.lower(k) * u_full(i - 1);
        s += K.upper(k) * u_full(i + 1);
        y(k) = s;
    }
    return y;
}

Eigen::VectorXd embed(const RadialGrid& grid, const Eigen::VectorXd& unknowns) {
    Eigen::VectorXd full = Eigen::VectorXd::Zero(grid.node_count());
    full.segment(grid.first_unknown(), grid.unknown_count()) = unknowns;
    return full;
}

Eigen::VectorXd sample_unknowns(const Profile& f, const RadialGrid& grid) {
    Eigen::VectorXd out(grid.unknown_count());
    for (int k = 0; k < grid.unknown_count(); ++k) out(k) = f(grid.node(grid.first_unknown() + k));
    return out;
}

}  // namespace

RadialGrid::RadialGrid(const OperatorSpec& spec, int m_)
    : n(spec.n), n_weight(spec.n), R(spec.R), m(m_), geom(spec.geom) {
    if (spec.n < 1) throw std::invalid_argument("dimension must be >= 1");
    if (m < 16) throw std::invalid_argument("grid needs at least 16 interior nodes");
    h = geom == Geometry::radial ? R / (m + 1) : 2 * R / (m + 1);
}

namespace {

template <typename Scalar>
struct Assembled {
    Tridiag<Scalar> K;
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> V;
};

template <typename Scalar>
Assembled<Scalar> assemble_as(const OperatorSpec& spec, const RadialGrid& grid) {
    using std::abs;
    using std::pow;
    if (spec.n < 1) throw std::invalid_argument("dimension must be >= 1");
    const int N = grid.unknown_count(), f0 = grid.first_unknown();
    const bool radial = grid.geom == Geometry::radial;
    const Scalar h = radial ? Scalar(grid.R) / (grid.m + 1) : Scalar(2 * grid.R) / (grid.m + 1);
    const Scalar nw = grid.n_weight;
    auto node = [&](int i) { return radial ? i * h : -Scalar(grid.R) + i * h; };
    Assembled<Scalar> out{Tridiag<Scalar>(N), Eigen::Matrix<Scalar, Eigen::Dynamic, 1>(N)};
    auto& K = out.K;

    // Faces between node i and i+1, i = 0..m.
    std::vector<Scalar> flux(grid.m + 1);
    for (int i = 0; i <= grid.m; ++i) {
        const Scalar rf = node(i) + h / 2;
        const double x = static_cast<double>(rf);
        const Scalar s = radial ? pow(abs(rf), nw - 1) : Scalar(1);
        const Scalar d = s * Scalar(spec.a(x)) / h;
        const Scalar e = s * Scalar(spec.b1(x)) / 2;
        const Scalar g = s * Scalar(spec.b2(x)) / 2;
        flux[i] = s * Scalar(spec.b1(x));
        const Scalar up = d + (e + g);
        const Scalar down = d - (e + g);
        const int left = i - f0, right = i + 1 - f0;  // unknown indices, may be out of range
        if (left >= 0) {
            K.diag(left) += d - (e - g);
            K.upper(left) = -up;
        }
        if (right < N) {
            K.diag(right) += d + (e - g);
            K.lower(right) = -down;
        }
    }
    for (int k = 0; k < N; ++k) {
        const int i = f0 + k;
        const Scalar r = node(i);
        Scalar vol;
        if (radial) {
            const Scalar lo = std::max(Scalar(0), r - h / 2), hi = r + h / 2;
            vol = (pow(hi, nw) - pow(lo, nw)) / nw;
        } else {
            vol = h;
        }
        out.V(k) = vol;
        const Scalar c = spec.c(static_cast<double>(r));
        K.diag(k) += -(vol * c);
        const Scalar left_flux = i > 0 ? flux[i - 1] : Scalar(0);
        K.excess(k) = left_flux - flux[i] - vol * c;
    }
    return out;
}

}  // namespace

Discretization assemble(const OperatorSpec& spec, const RadialGrid& grid) {
    Assembled<double> a = assemble_as<double>(spec, grid);
    return Discretization{grid, std::move(a.K), std::move(a.V)};
}

DiscreteSolution make_solution(const RadialGrid& grid, const Eigen::VectorXd& u_full) {
    const int T = grid.node_count();
    if (u_full.size() != T) throw std::invalid_argument("nodal vector has the wrong length");
    DiscreteSolution s;
    s.grid = grid;
    s.u = u_full;
    s.x.resize(T);
    s.d.resize(T);
    for (int i = 0; i < T; ++i) {
        s.x(i) = grid.node(i);
        s.d(i) = grid.dist(i);
    }
    const double h = grid.h;
    s.grad.resize(T);
    for (int i = 1; i + 1 < T; ++i) s.grad(i) = (u_full(i + 1) - u_full(i - 1)) / (2 * h);
    // fourth-order one-sided at the boundary nodes
    auto one_sided = [&](int b, int dir) {
        return dir * (25 * u_full(b) - 48 * u_full(b - dir) + 36 * u_full(b - 2 * dir) - 16 * u_full(b - 3 * dir) +
                      3 * u_full(b - 4 * dir)) /
               (12 * h);
    };
    s.grad(T - 1) = one_sided(T - 1, 1);
    s.grad(0) = grid.geom == Geometry::radial ? 0.0 : one_sided(0, -1);
    s.u_over_d.resize(T);
    for (int i = 0; i < T; ++i) {
        if (s.d(i) >= h * (1 - 1e-9))
            s.u_over_d(i) = u_full(i) / s.d(i);
        else
            s.u_over_d(i) = std::abs(s.grad(i));
    }
    return s;
}

DiscreteSolution sample(const Profile& u, const RadialGrid& grid) {
    Eigen::VectorXd full(grid.node_count());
    for (int i = 0; i < grid.node_count(); ++i) full(i) = u(grid.node(i));
    return make_solution(grid, full);
}

DiscreteSolution solve_dirichlet(const OperatorSpec& spec, const RadialGrid& grid, const Profile& f) {
    const Discretization disc = assemble(spec, grid);
    const Eigen::VectorXd rhs = disc.V.cwiseProduct(sample_unknowns(f, grid));
    return make_solution(grid, embed(grid, solve_excess(disc.K, rhs)));
}

DiscreteSolution solve_dirichlet_conjugated(const OperatorSpec& conjugated, const Profile& v, const RadialGrid& grid,
                                            const Profile& f) {
    const Discretization disc = assemble(conjugated, grid);
    const Eigen::VectorXd vv = sample_unknowns(v, grid);
    const Eigen::VectorXd rhs = disc.V.cwiseProduct(sample_unknowns(f, grid).cwiseQuotient(vv));
    const Eigen::VectorXd w = solve_excess(disc.K, rhs);
    return make_solution(grid, embed(grid, w.cwiseProduct(vv)));
}

DiscreteSolution solve_dirichlet_extrapolated(const OperatorSpec& spec, const RadialGrid& grid, const Profile& f,
                                              int levels, const Profile* ground_state) {
    using LD = long double;
    using VecL = Eigen::Matrix<LD, Eigen::Dynamic, 1>;
    if (levels < 1 || levels > 8) throw std::invalid_argument("extrapolation levels must lie in 1..8");
    const int T = grid.node_count();
    std::vector<VecL> table;  // level k values at the coarse nodes
    for (int k = 0; k < levels; ++k) {
        const int stride = 1 << k;
        RadialGrid fine = grid;
        fine.m = stride * (grid.m + 1) - 1;
        fine.h = grid.h / stride;
        const Assembled<LD> a = assemble_as<LD>(spec, fine);
        const int N = fine.unknown_count(), f0 = fine.first_unknown();
        VecL rhs(N);
        for (int j = 0; j < N; ++j) {
            const double r = fine.node(f0 + j);
            double val = f(r);
            if (ground_state) val /= (*ground_state)(r);
            rhs(j) = a.V(j) * LD(val);
        }
        const VecL w = solve_excess<LD>(a.K, rhs, LD(0), nullptr, LD(1e-16));
        VecL coarse = VecL::Zero(T);
        for (int i = grid.first_unknown(); i < grid.first_unknown() + grid.unknown_count(); ++i)
            coarse(i) = w(i * stride - f0);
        table.push_back(coarse);
    }
    // Romberg table in h^2
    for (int j = 1; j < levels; ++j) {
        const LD fac = std::pow(4.0L, j) - 1;
        for (int k = levels - 1; k >= j; --k) table[k] = table[k] + (table[k] - table[k - 1]) / fac;
    }
    Eigen::VectorXd u(T);
    for (int i = 0; i < T; ++i) {
        const LD v = ground_state ? LD((*ground_state)(grid.node(i))) : 1.0L;
        u(i) = static_cast<double>(table[levels - 1](i) * v);
    }
    return make_solution(grid, u);
}

DiscreteSolution solve_adjoint(const OperatorSpec& spec, const RadialGrid& grid, const Profile& g) {
    return solve_dirichlet(adjoint(spec), grid, g);
}

EigenResult principal_eigen(const Discretization& disc, double tol, int maxit) {
    const auto& K = disc.K;
    const Eigen::VectorXd& V = disc.V;
    const int N = static_cast<int>(K.size());
    double gersh = std::numeric_limits<double>::infinity(), opnorm = 0.0;
    for (int k = 0; k < N; ++k) {
        const double off = (k > 0 ? std::abs(K.lower(k)) : 0.0) + (k + 1 < N ? std::abs(K.upper(k)) : 0.0);
        gersh = std::min(gersh, (K.diag(k) - off) / V(k));
        opnorm = std::max(opnorm, (std::abs(K.diag(k)) + std::abs(K.lower(k)) + std::abs(K.upper(k))) / V(k));
    }
    double sigma = std::min(0.0, gersh);
    EigenResult res;
    Eigen::VectorXd x = Eigen::VectorXd::Ones(N);
    double mu = sigma, mu_prev = std::numeric_limits<double>::quiet_NaN();
    const int max_restarts = 8;
    for (int it = 1; it <= maxit; ++it) {
        Eigen::VectorXd y;
        try {
            y = solve_excess(K, Eigen::VectorXd(V.cwiseProduct(x)), sigma, &V);
        } catch (const ResonanceError&) {
            // shift landed on an eigenvalue: back off and retry
            sigma -= std::max(std::abs(mu - sigma), 1e-8 * std::max(1.0, std::abs(mu)));
            continue;
        }
        mu = sigma + x.dot(V.cwiseProduct(x)) / x.dot(V.cwiseProduct(y));
        const Eigen::Index imax = [&] {
            Eigen::Index i;
            y.cwiseAbs().maxCoeff(&i);
            return i;
        }();
        x = y / y(imax);
        res.iterations = it;
        if (x.minCoeff() < -1e-8) {
            if (it > 20) {
                if (++res.restarts > max_restarts) throw NonPrincipalMode("eigenvector changes sign");
                sigma -= std::abs(mu - sigma) + 1.0;
                x.setOnes();
                mu_prev = std::numeric_limits<double>::quiet_NaN();
            }
            continue;
        }
        const Eigen::VectorXd Kx = K.apply_differences(x);
        res.residual = (Kx.cwiseQuotient(V) - mu * x).cwiseAbs().maxCoeff() / x.cwiseAbs().maxCoeff();
        const double change = std::abs(mu - mu_prev);
        const bool settled = change <= tol * std::abs(mu) || change == 0.0;
        if (settled && res.residual <= 1e-9 * opnorm + tol * std::abs(mu)) break;
        if (change <= 1e-2 * std::abs(mu) && mu > sigma) sigma = mu - 0.1 * (mu - sigma);
        mu_prev = mu;
        if (it == maxit) throw std::runtime_error("principal_eigen: iteration limit reached");
    }
    if (x.minCoeff() < -1e-8) throw NonPrincipalMode("eigenvector changes sign");
    res.lambda1 = mu;
    res.phi1 = make_solution(disc.grid, embed(disc.grid, x));
    return res;
}

EigenResult principal_eigen(const OperatorSpec& spec, const RadialGrid& grid, double tol, int maxit) {
    return principal_eigen(assemble(spec, grid), tol, maxit);
}

EigenResult principal_eigen_conjugated(const OperatorSpec& conjugated, const Profile& v, const RadialGrid& grid,
                                       double tol, int maxit) {
    EigenResult res = principal_eigen(assemble(conjugated, grid), tol, maxit);
    Eigen::VectorXd full = res.phi1.u;
    for (int i = 0; i < grid.node_count(); ++i) full(i) *= v(grid.node(i));
    full /= full.maxCoeff();
    res.phi1 = make_solution(grid, full);
    return res;
}

GreenAudit green_identity_residual(const OperatorSpec& spec, const RadialGrid& grid, const DiscreteSolution& u,
                                   const DiscreteSolution& v) {
    const int T = grid.node_count();
    if (std::abs(v.u(T - 1)) > 0 || (grid.geom == Geometry::line && std::abs(v.u(0)) > 0))
        throw std::invalid_argument("green identity needs v = 0 on the boundary");
    const Discretization D = assemble(spec, grid);
    const Discretization Ds = assemble(adjoint(spec), grid);
    const Eigen::VectorXd Ku = apply_with_boundary(D, u.u);
    const Eigen::VectorXd Kv = apply_with_boundary(Ds, v.u);
    const int f0 = grid.first_unknown(), N = grid.unknown_count();
    const double omega = grid.geom == Geometry::radial ? sphere_measure(grid.n) : 1.0;
    double vol = 0.0;
    for (int k = 0; k < N; ++k) vol += -v.u(f0 + k) * Ku(k) + u.u(f0 + k) * Kv(k);
    const double R = grid.R, h = grid.h;
    // Boundary half cells, outside every control volume. There v = 0, so the
    // integrand is -u L*v = -u (a v'' + (a' + (n-1) a / r - b1 - b2) v').
    auto half_cell = [&](int b, int s, double r) {
        const double v2 = (2 * v.u(b) - 5 * v.u(b + s) + 4 * v.u(b + 2 * s) - v.u(b + 3 * s)) / (h * h);
        const double da = spec.a.is_constant ? 0.0
                          : spec.a.has_d1() ? spec.a.d1(r)
                                            : (spec.a(r + 1e-6 * s) - spec.a(r - 1e-6 * s)) / (2e-6 * s);
        double coef = da - spec.b1(r) - spec.b2(r);
        if (grid.geom == Geometry::radial) coef += (grid.n - 1) * spec.a(r) / r;
        return -u.u(b) * (spec.a(r) * v2 + coef * v.grad(b));
    };
    if (grid.geom == Geometry::radial) {
        const double Vb = (std::pow(R, grid.n) - std::pow(R - h / 2, grid.n)) / grid.n;
        vol += Vb * half_cell(T - 1, -1, R);
    } else {
        // line drifts are signed coordinates, so the same formula holds at both ends
        vol += h / 2 * (half_cell(T - 1, -1, R) + half_cell(0, 1, -R));
    }
    GreenAudit g;
    g.volume = omega * vol;
    if (grid.geom == Geometry::radial) {
        g.boundary = -omega * std::pow(R, grid.n - 1) * spec.a(R) * u.u(T - 1) * v.grad(T - 1);
    } else {
        g.boundary = -spec.a(R) * u.u(T - 1) * v.grad(T - 1) + spec.a(-R) * u.u(0) * v.grad(0);
    }
    g.residual = std::abs(g.volume - g.boundary);
    return g;
}

double normal_derivative(const DiscreteSolution& u) {
    const int T = static_cast<int>(u.u.size());
    double nd = std::abs(u.grad(T - 1));
    if (u.grid.geom == Geometry::line) nd = std::min(nd, std::abs(u.grad(0)));
    return nd;
}

ProfileStats profile_stats(const DiscreteSolution& u, double epsilon, double alpha) {
    if (!(epsilon > 0)) throw std::invalid_argument("weak Harnack exponent must be positive");
    if (!(alpha > 0 && alpha < 1)) throw std::invalid_argument("Holder exponent must lie in (0, 1)");
    const RadialGrid& g = u.grid;
    const int T = g.node_count();
    ProfileStats st;
    st.epsilon = epsilon;
    st.alpha = alpha;
    st.sup_u = u.u.cwiseAbs().maxCoeff();
    st.sup_grad = u.grad.cwiseAbs().maxCoeff();
    st.normal_derivative = normal_derivative(u);
    st.sup_u_over_d = u.u_over_d.maxCoeff();
    st.inf_u_over_d = u.u_over_d.minCoeff();
    double num = 0.0, den = 0.0;
    for (int i = 0; i < T; ++i) {
        if (u.d(i) < g.h * (1 - 1e-9)) continue;
        double w = g.h;
        if (g.geom == Geometry::radial) w = std::pow(std::max(g.node(i), g.h / 2), g.n - 1) * g.h;
        num += w * std::pow(std::max(u.u_over_d(i), 0.0), epsilon);
        den += w;
    }
    st.weak_harnack_quasinorm = std::pow(num / den, 1.0 / epsilon);
    const int stride = std::max(1, T / 1024);
    double hb = 0.0;
    for (int i = 0; i < T; i += stride) {
        for (int j = i + stride; j < T; j += stride) {
            const double dx = std::abs(u.x(i) - u.x(j));
            hb = std::max(hb, std::abs(u.grad(i) - u.grad(j)) / std::pow(dx, alpha));
            if (g.geom == Geometry::radial) {
                // opposite rays: gradients u'(r) x/|x| point in opposite directions
                hb = std::max(hb, std::abs(u.grad(i) + u.grad(j)) / std::pow(u.x(i) + u.x(j), alpha));
            }
        }
    }
    st.holder_grad = hb;
    return st;
}

Eigen::SparseMatrix<double> assemble2d(const OperatorSpec2d& spec, const Grid2d& grid) {
    if (grid.m < 4) throw std::invalid_argument("2d grid too small");
    const int m = grid.m;
    const double h = grid.h();
    const Eigen::Matrix2d A = 0.5 * (spec.A + spec.A.transpose());
    const Eigen::Vector2d b = spec.b1 + spec.b2;
    std::vector<Eigen::Triplet<double>> T;
    T.reserve(static_cast<std::size_t>(m) * m * 9);
    auto add = [&](int row, int i, int j, double v) {
        if (i < 0 || j < 0 || i >= m || j >= m || v == 0.0) return;
        T.emplace_back(row, grid.index(i, j), v);
    };
    for (int j = 0; j < m; ++j)
        for (int i = 0; i < m; ++i) {
            const int row = grid.index(i, j);
            // -L u
            add(row, i, j, 2 * A(0, 0) / (h * h) + 2 * A(1, 1) / (h * h) - spec.c);
            add(row, i + 1, j, -A(0, 0) / (h * h) - b(0) / (2 * h));
            add(row, i - 1, j, -A(0, 0) / (h * h) + b(0) / (2 * h));
            add(row, i, j + 1, -A(1, 1) / (h * h) - b(1) / (2 * h));
            add(row, i, j - 1, -A(1, 1) / (h * h) + b(1) / (2 * h));
            const double x = A(0, 1) / (2 * h * h);
            add(row, i + 1, j + 1, -x);
            add(row, i - 1, j - 1, -x);
            add(row, i + 1, j - 1, x);
            add(row, i - 1, j + 1, x);
        }
    Eigen::SparseMatrix<double> K(m * m, m * m);
    K.setFromTriplets(T.begin(), T.end());
    return K;
}

Eigen::VectorXd solve2d(const OperatorSpec2d& spec, const Grid2d& grid,
                        const std::function<double(double, double)>& f) {
    const Eigen::SparseMatrix<double> K = assemble2d(spec, grid);
    Eigen::VectorXd rhs(grid.m * grid.m);
    for (int j = 0; j < grid.m; ++j)
        for (int i = 0; i < grid.m; ++i) rhs(grid.index(i, j)) = f(grid.coord(i), grid.coord(j));
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(K);
    if (lu.info() != Eigen::Success) throw ResonanceError("2d factorization failed");
    return lu.solve(rhs);
}

Eigen2dResult eigen2d(const OperatorSpec2d& spec, const Grid2d& grid, double tol, int maxit) {
    const Eigen::SparseMatrix<double> K = assemble2d(spec, grid);
    const int N = static_cast<int>(K.rows());
    double gersh = std::numeric_limits<double>::infinity();
    for (int k = 0; k < K.outerSize(); ++k) {
        // column sums by Gershgorin on the transpose have the same spectrum
        double diag = 0.0, off = 0.0;
        for (Eigen::SparseMatrix<double>::InnerIterator itr(K, k); itr; ++itr) {
            if (itr.row() == itr.col())
                diag += itr.value();
            else
                off += std::abs(itr.value());
        }
        gersh = std::min(gersh, diag - off);
    }
    double sigma = std::min(0.0, gersh);
    Eigen::SparseMatrix<double> I(N, N);
    I.setIdentity();
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    auto factor = [&] {
        lu.compute(K - sigma * I);
        if (lu.info() != Eigen::Success) throw ResonanceError("2d factorization failed");
    };
    factor();
    Eigen2dResult res;
    Eigen::VectorXd x = Eigen::VectorXd::Ones(N);
    double mu = sigma, mu_prev = std::numeric_limits<double>::quiet_NaN();
    bool shifted = false;
    for (int it = 1; it <= maxit; ++it) {
        const Eigen::VectorXd y = lu.solve(x);
        mu = sigma + x.squaredNorm() / x.dot(y);
        Eigen::Index imax;
        y.cwiseAbs().maxCoeff(&imax);
        x = y / y(imax);
        res.iterations = it;
        res.residual = (K * x - mu * x).cwiseAbs().maxCoeff();
        const double change = std::abs(mu - mu_prev);
        if (change <= tol * std::abs(mu) && res.residual <= 1e-8 * std::max(1.0, std::abs(mu))) break;
        if (!shifted && change <= 1e-3 * std::abs(mu)) {
            sigma = mu - 0.1 * (mu - sigma);
            factor();
            shifted = true;
        }
        mu_prev = mu;
    }
    if (x.minCoeff() < -1e-8) throw NonPrincipalMode("2d eigenvector changes sign");
    res.lambda1 = mu;
    res.phi1 = x;
    return res;
}

}  // namespace ellcheck
