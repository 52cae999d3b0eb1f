#include <doctest.h>

#include "ellcheck/fields.hpp"
#include "ellcheck/solver.hpp"
#include "oracles.hpp"

using namespace ellcheck;

namespace {

double max_error(const DiscreteSolution& s, const Profile& u) {
    double e = 0.0;
    for (int i = 0; i < s.u.size(); ++i) e = std::max(e, std::abs(s.u(i) - u(s.x(i))));
    return e;
}

double weighted_dot(const Eigen::VectorXd& V, const Eigen::VectorXd& a, const Eigen::VectorXd& b, int first) {
    double s = 0;
    for (int k = 0; k < V.size(); ++k) s += V(k) * a(first + k) * b(first + k);
    return s;
}

}  // namespace

TEST_SUITE("solver") {
    TEST_CASE("second order on a closed-form problem") {
        const auto cs = make_schrodinger_linfty(10, 2);
        double prev = 0;
        for (int m : {256, 512, 1024}) {
            const RadialGrid g(cs.spec, m);
            const double e = max_error(solve_dirichlet(cs.spec, g, cs.f), cs.u);
            if (prev > 0) CHECK(prev / e == doctest::Approx(4.0).epsilon(0.125));
            prev = e;
        }
    }

    TEST_CASE("line geometry and dimension 3") {
        // the even radial solution read on the whole line
        auto cs = make_schrodinger_linfty(4, 1);
        cs.spec.geom = Geometry::line;
        const RadialGrid g(cs.spec, 2048);
        CHECK(max_error(solve_dirichlet(cs.spec, g, cs.f), cs.u) <= 1e-5 * cs.u(0.0));
        const auto h = make_hopf_case(4, 3, Variant::schrodinger);
        CHECK(max_error(solve_dirichlet(h.spec, RadialGrid(h.spec, 2048), h.f), h.u) <= 1e-4);
    }

    TEST_CASE("extrapolated solve on an ill-conditioned family") {
        const auto cs = make_schrodinger_linfty(32, 2);
        const RadialGrid g(cs.spec, 1023);
        const auto s = solve_dirichlet_extrapolated(*cs.conjugated, g, cs.f, 4, &*cs.ground_state);
        CHECK(max_error(s, cs.u) <= 1e-5 * cs.u.f(0.0));
        CHECK_THROWS_AS(solve_dirichlet_extrapolated(cs.spec, g, cs.f, 0), std::invalid_argument);
    }

    TEST_CASE("eigenvalues") {
        OperatorSpec line;
        line.n = 1;
        line.geom = Geometry::line;
        CHECK(principal_eigen(line, RadialGrid(line, 2048)).lambda1 ==
              doctest::Approx(oracle::interval_lambda1(1.0)).epsilon(1e-6));
        OperatorSpec disk;
        const double j = oracle::j0_first_zero();
        const auto e0 = principal_eigen(disk, RadialGrid(disk, 2048));
        CHECK(e0.lambda1 == doctest::Approx(j * j).epsilon(1e-6));
        for (int i = 0; i < e0.phi1.u.size() - 1; ++i) CHECK(e0.phi1.u(i) > 0);
        disk.c = constant(-2.5);
        CHECK(principal_eigen(disk, RadialGrid(disk, 2048)).lambda1 - e0.lambda1 == doctest::Approx(2.5).epsilon(1e-10));
    }

    TEST_CASE("adjoint shares the principal eigenvalue") {
        for (std::uint64_t seed : {1u, 4u, 9u}) {
            const auto s = random_radial_spec(seed, 2);
            const RadialGrid g(s, 1024);
            const double a = principal_eigen(s, g).lambda1, b = principal_eigen(adjoint(s), g).lambda1;
            CHECK(std::abs(a - b) <= 1e-8 * std::max(1.0, std::abs(a)));
        }
    }

    TEST_CASE("discrete duality of the solve and its adjoint") {
        const auto s = random_radial_spec(6, 3);
        const RadialGrid g(s, 512);
        const Profile f = random_positive_profile(6);
        const Profile gsrc = random_positive_profile(16);
        const auto u = solve_dirichlet(s, g, f);
        const auto v = solve_adjoint(s, g, gsrc);
        const Discretization D = assemble(s, g);
        const int first = g.first_unknown(), N = g.unknown_count();
        Eigen::VectorXd fv(g.node_count()), gv(g.node_count());
        for (int i = 0; i < g.node_count(); ++i) {
            fv(i) = f(g.node(i));
            gv(i) = gsrc(g.node(i));
        }
        REQUIRE(D.V.size() == N);
        const double lhs = weighted_dot(D.V, gv, u.u, first), rhs = weighted_dot(D.V, fv, v.u, first);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-11));
    }

    TEST_CASE("green identity") {
        const auto s = random_radial_spec(2, 2);
        Profile u, v, w;
        u.f = [](double r) { return 1 - r * r; };
        v.f = [](double r) { return (1 - r * r) * std::exp(r); };
        w.f = [](double r) { return std::cos(r); };
        // both vanish on the boundary and the operator is symmetric
        OperatorSpec sym = s;
        sym.b1 = zero();
        sym.b2 = zero();
        const RadialGrid g(sym, 512);
        CHECK(green_identity_residual(sym, g, sample(u, g), sample(v, g)).residual <= 1e-10);
        // refinement
        double prev = 0;
        for (int m : {256, 512, 1024}) {
            const RadialGrid gm(s, m);
            const double r = green_identity_residual(s, gm, sample(w, gm), sample(v, gm)).residual;
            if (prev > 0) {
                CHECK(prev / r >= 1.5);
                CHECK(prev / r <= 4.5);
            }
            prev = r;
        }
        CHECK_THROWS_AS(green_identity_residual(s, g, sample(v, g), sample(w, g)), std::invalid_argument);
    }

    TEST_CASE("profile statistics of a known profile") {
        OperatorSpec s;
        Profile u;
        u.f = [](double r) { return 1 - r * r; };
        u.df = [](double r) { return -2 * r; };
        const RadialGrid g(s, 1024);
        const auto st = profile_stats(sample(u, g));
        CHECK(st.sup_u == doctest::Approx(1.0));
        // u/d = 1 + r
        CHECK(st.sup_u_over_d == doctest::Approx(2.0).epsilon(1e-3));
        CHECK(st.inf_u_over_d == doctest::Approx(1.0).epsilon(1e-3));
        CHECK(st.normal_derivative == doctest::Approx(2.0).epsilon(1e-8));
        CHECK_THROWS_AS(profile_stats(sample(u, g), 0.0), std::invalid_argument);
    }

    TEST_CASE("2D square backend") {
        OperatorSpec2d s;
        const Grid2d g{1.0, 63};
        CHECK(eigen2d(s, g).lambda1 == doctest::Approx(oracle::square_lambda1(1.0)).epsilon(2e-3));
        // constant drift b = -2 lambda e1 lifts the eigenvalue by lambda^2
        s.b2 = Eigen::Vector2d(-6.0, 0.0);
        const double lam = eigen2d(s, g).lambda1;
        CHECK(lam >= 9.0);
        CHECK(lam == doctest::Approx(oracle::square_lambda1(1.0) + 9.0).epsilon(5e-3));
        OperatorSpec2d p;
        const Eigen::VectorXd u = solve2d(p, g, [](double, double) { return 1.0; });
        CHECK(u.minCoeff() > 0);
    }
}
