#include <doctest.h>

#include "ellcheck/estimates.hpp"

using namespace ellcheck;

TEST_SUITE("estimates") {
    TEST_CASE("line fit is exact on a line") {
        const std::vector<double> x{1, 2, 3, 4}, y{1.5, 3.5, 5.5, 7.5};
        const auto f = fit_line(x, y);
        CHECK(f.slope == doctest::Approx(2.0));
        CHECK(f.intercept == doctest::Approx(-0.5));
        CHECK(f.rsq == doctest::Approx(1.0));
        CHECK(f.points == 4);
        CHECK_THROWS_AS(fit_line({1.0}, {1.0}), std::invalid_argument);
    }

    TEST_CASE("exponential fit skips degenerate rows and needs four") {
        std::vector<CheckRow> rows;
        for (int j = 1; j <= 5; ++j) {
            CheckRow r;
            r.param = j;
            r.log_implied = 0.5 * j;
            rows.push_back(r);
        }
        rows[2].degenerate = true;
        rows[2].log_implied = 100;
        const auto f = fit_exponential(rows, XVariable::j);
        CHECK(f.slope == doctest::Approx(0.5));
        CHECK(f.points == 4);
        rows[3].hypothesis_failed = true;
        CHECK_THROWS_AS(fit_exponential(rows, XVariable::j), std::invalid_argument);
    }

    TEST_CASE("fit variables round trip") {
        for (auto x : {XVariable::M, XVariable::MR, XVariable::j, XVariable::lambda, XVariable::R})
            CHECK(parse_xvariable(to_string(x)) == x);
        CHECK_THROWS_AS(parse_xvariable("k"), std::invalid_argument);
    }

    TEST_CASE("sup bound holds on a small example") {
        CheckOptions opt;
        opt.m = 1024;
        const auto row = check_linfty(make_hopf_case(4, 2, Variant::schrodinger), opt);
        CHECK(row.lhs > 0);
        CHECK(row.implied_const > 0);
        CHECK(std::isfinite(row.log_implied));
        CHECK(row.MR == doctest::Approx(row.M * 1.0));
    }

    TEST_CASE("hopf needs a nonnegative source") {
        CheckOptions opt;
        opt.m = 256;
        OperatorSpec s;
        s.n = 1;
        s.geom = Geometry::line;
        Profile f;
        f.f = [](double x) { return x; };
        const RadialGrid g(s, 256);
        const auto u = solve_dirichlet(s, g, f);
        CHECK_THROWS_AS(check_hopf(s, f, u, opt), std::domain_error);
    }

    TEST_CASE("harnack ratio grows like e^j") {
        SweepConfig c;
        c.family = "harnack-schrodinger";
        c.check = "harnack";
        c.params = {1, 2, 4, 8};
        c.n = 2;
        c.exact_samples = true;
        c.options.m = 1024;
        const auto rows = sweep(c);
        REQUIRE(rows.size() == 4);
        CHECK(fit_exponential(rows, XVariable::j).slope == doctest::Approx(1.0).epsilon(0.1));
    }

    TEST_CASE("eigenvalue bounds on the Laplacian") {
        OperatorSpec s;
        CheckOptions opt;
        opt.m = 1024;
        const auto e = check_eig_bounds(s, 1.0, opt);
        CHECK(e.lambda1_outer < e.lambda1_inner);
        CHECK(e.lower_core == doctest::Approx(1.0));
        CHECK(e.lower_implied == doctest::Approx(e.lambda1_inner));
        CHECK_FALSE(e.hypothesis_failed);
    }

    TEST_CASE("landis surface vanishes at the zeros") {
        const auto cs = make_landis_case(2);
        const auto zeros = profile_zeros(cs.u, 1.0, 12.0);
        REQUIRE(zeros.size() == 4);
        for (std::size_t k = 0; k < zeros.size(); ++k)
            CHECK(zeros[k] == doctest::Approx((k + 0.5) * 3.141592653589793).epsilon(1e-12));
        for (const auto& row : check_landis(cs, zeros)) {
            CHECK(row.surface <= 1e-12);
            CHECK(row.volume > 0);
        }
    }

    TEST_CASE("sweep argument checks") {
        SweepConfig c;
        c.family = "schrodinger-linfty";
        c.params = {8, 4};
        CHECK_THROWS_AS(sweep(c), std::invalid_argument);
        c.params = {4};
        c.check = "nope";
        CHECK_THROWS_AS(sweep(c), std::invalid_argument);
        CHECK(check_names().size() == 8);
    }
}
