#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "ellcheck/profile.hpp"
#include "ellcheck/tridiag.hpp"

namespace ellcheck {

// Radial: nodes r_i = i h, h = R/(m+1), unknowns i = 0..m, node m+1 on the boundary.
// Line:   nodes x_i = -R + i h, h = 2R/(m+1), unknowns i = 1..m.
struct RadialGrid {
    int n = 2;
    double n_weight = 2.0;  // exponent source for the weight r^{n-1}; may be fractional
    double R = 1.0;
    int m = 1024;
    double h = 0.0;
    Geometry geom = Geometry::radial;

    RadialGrid() = default;
    RadialGrid(const OperatorSpec& spec, int m_);

    int node_count() const { return m + 2; }
    int first_unknown() const { return geom == Geometry::radial ? 0 : 1; }
    int unknown_count() const { return geom == Geometry::radial ? m + 1 : m; }
    double node(int i) const { return geom == Geometry::radial ? i * h : -R + i * h; }
    double dist(int i) const { return R - std::abs(node(i)); }
};

struct Discretization {
    RadialGrid grid;
    Tridiag<double> K;   // V * (-L u) on the unknowns
    Eigen::VectorXd V;   // control volumes
};

Discretization assemble(const OperatorSpec& spec, const RadialGrid& grid);

// Nodal values on every node of the grid, boundary included.
struct DiscreteSolution {
    RadialGrid grid;
    Eigen::VectorXd x;
    Eigen::VectorXd u;
    Eigen::VectorXd grad;
    Eigen::VectorXd d;
    Eigen::VectorXd u_over_d;
};

DiscreteSolution make_solution(const RadialGrid& grid, const Eigen::VectorXd& u_full);
DiscreteSolution sample(const Profile& u, const RadialGrid& grid);

DiscreteSolution solve_dirichlet(const OperatorSpec& spec, const RadialGrid& grid, const Profile& f);
// u = v w where w solves the conjugated problem  -L_v w = f / v,  L_v w = v^{-1} L(v w).
DiscreteSolution solve_dirichlet_conjugated(const OperatorSpec& conjugated, const Profile& v, const RadialGrid& grid,
                                            const Profile& f);
// Romberg extrapolation in h^2 over grids h, h/2, ..., h/2^{levels-1}, solved in
// extended precision; values reported on the nodes of grid.  With ground_state
// v, spec is the conjugated operator and u = v w.
DiscreteSolution solve_dirichlet_extrapolated(const OperatorSpec& spec, const RadialGrid& grid, const Profile& f,
                                              int levels, const Profile* ground_state = nullptr);
DiscreteSolution solve_adjoint(const OperatorSpec& spec, const RadialGrid& grid, const Profile& g);

struct EigenResult {
    double lambda1 = 0.0;
    DiscreteSolution phi1;
    int iterations = 0;
    double residual = 0.0;
    int restarts = 0;
};

struct NonPrincipalMode : std::runtime_error {
    using std::runtime_error::runtime_error;
};

EigenResult principal_eigen(const OperatorSpec& spec, const RadialGrid& grid, double tol = 1e-12, int maxit = 500);
EigenResult principal_eigen(const Discretization& disc, double tol = 1e-12, int maxit = 500);
EigenResult principal_eigen_conjugated(const OperatorSpec& conjugated, const Profile& v, const RadialGrid& grid,
                                       double tol = 1e-12, int maxit = 500);

struct GreenAudit {
    double volume = 0.0;    // sum V_i (v L_h u - u L*_h v)
    double boundary = 0.0;  // -(boundary integral of u nu.A grad v)
    double residual = 0.0;
};

// Requires v = 0 on the boundary; u is arbitrary.
GreenAudit green_identity_residual(const OperatorSpec& spec, const RadialGrid& grid, const DiscreteSolution& u,
                                   const DiscreteSolution& v);

struct ProfileStats {
    double sup_u = 0.0;
    double sup_u_over_d = 0.0;
    double inf_u_over_d = 0.0;
    double sup_grad = 0.0;
    double normal_derivative = 0.0;
    double weak_harnack_quasinorm = 0.0;
    double holder_grad = 0.0;
    double epsilon = 0.5;
    double alpha = 0.5;
};

ProfileStats profile_stats(const DiscreteSolution& u, double epsilon = 0.5, double alpha = 0.5);
double normal_derivative(const DiscreteSolution& u);

// Constant-coefficient backend on [-R, R]^2, m x m interior nodes, h = 2R/(m+1).
struct Grid2d {
    double R = 1.0;
    int m = 64;
    double h() const { return 2 * R / (m + 1); }
    double coord(int i) const { return -R + (i + 1) * h(); }
    int index(int i, int j) const { return i + m * j; }
};

Eigen::SparseMatrix<double> assemble2d(const OperatorSpec2d& spec, const Grid2d& grid);
Eigen::VectorXd solve2d(const OperatorSpec2d& spec, const Grid2d& grid,
                        const std::function<double(double, double)>& f);

struct Eigen2dResult {
    double lambda1 = 0.0;
    Eigen::VectorXd phi1;
    int iterations = 0;
    double residual = 0.0;
};

Eigen2dResult eigen2d(const OperatorSpec2d& spec, const Grid2d& grid, double tol = 1e-11, int maxit = 2000);

}  // namespace ellcheck
