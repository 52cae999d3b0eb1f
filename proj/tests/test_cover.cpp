#include <doctest.h>

#include "ellcheck/cover.hpp"
#include "oracles.hpp"

using namespace ellcheck;

TEST_SUITE("cover") {
    TEST_CASE("lens volumes against slicing") {
        for (int n : {2, 3})
            for (double d : {0.0, 0.3, 1.0, 11.0 / 6.0, 1.99}) {
                CAPTURE(n);
                CAPTURE(d);
                CHECK(lens_volume(d, 1.0, n) == doctest::Approx(oracle::lens_by_slices(d, 1.0, n)).epsilon(1e-6));
            }
        CHECK(lens_volume(2.5, 1.0, 2) == 0.0);
        CHECK(lens_volume(0.0, 1.0, 3) == doctest::Approx(4 * oracle::pi / 3));
        CHECK_THROWS_AS(lens_volume(0.5, 1.0, 4), std::invalid_argument);
    }

    TEST_CASE("monte carlo lens in any dimension") {
        CHECK(lens_volume_mc(0.7, 1.0, 2) == doctest::Approx(lens_volume(0.7, 1.0, 2)).epsilon(0.01));
        CHECK(lens_volume_mc(0.7, 1.0, 3) == doctest::Approx(lens_volume(0.7, 1.0, 3)).epsilon(0.01));
        CHECK(lens_volume_mc(0.5, 1.0, 4) > 0);
        CHECK(lens_volume_mc(0.5, 1.0, 4) == lens_volume_mc(0.5, 1.0, 4));
    }

    TEST_CASE("unequal radii") {
        CHECK(intersection_volume(0.0, 0.5, 1.0, 2) == doctest::Approx(oracle::pi * 0.25));
        CHECK(intersection_volume(1.0, 0.5, 1.0, 2) > 0);
        CHECK(intersection_volume(1.6, 0.5, 1.0, 3) == 0.0);
    }

    TEST_CASE("center invariants") {
        for (int n : {2, 3}) {
            const double R = 1.0, r = n == 2 ? 0.125 : 0.25;
            const Covering cov = build_cover(ball(n, R), r);
            REQUIRE(cov.size() > 0);
            for (int i = 0; i < cov.size(); ++i) {
                const double rho = cov.centers[i].norm();
                if (cov.kind[i] == CenterKind::boundary)
                    CHECK(rho == doctest::Approx(R));
                else
                    CHECK(R - rho >= 1.5 * r - 1e-12);
                for (int j = 0; j < i; ++j) CHECK((cov.centers[i] - cov.centers[j]).norm() >= cov.eps * r);
            }
            CHECK(cov.c0 > 0);
            const auto audit = audit_coverage(cov);
            CHECK(audit.uncovered == 0);
            CHECK(audit.worst_ratio <= 5.0 / 6.0);
            // count bound with the measured constant
            CHECK(cov.size() <= 20 * std::pow(1 + 2 * R / r, n));
        }
    }

    TEST_CASE("chains") {
        const Covering cov = build_cover(ball(2, 1.0), 0.25);
        CHECK(chain(cov, 3, 3) == std::vector<int>{3, 3});
        const auto path = chain(cov, 0, cov.size() - 1);
        CHECK(path.front() == 0);
        CHECK(path.back() == cov.size() - 1);
        for (std::size_t i = 1; i < path.size(); ++i)
            CHECK((cov.centers[path[i]] - cov.centers[path[i - 1]]).norm() <= 11.0 / 6.0 * cov.r);
        const auto a = audit_chains(cov);
        CHECK(a.connected);
        CHECK(a.N_observed >= a.lower_bound);
        CHECK(a.N_observed <= a.upper_bound);
        CHECK(a.c1 >= lens_volume(11.0 / 6.0, 1.0, 2) - 1e-12);
        CHECK_THROWS_AS(chain(cov, -1, 0), std::out_of_range);
    }

    TEST_CASE("norm comparison with the actual count") {
        // ||f||_q <= I^{1/q} sup_j ||f||_{L^q(B_r(x_j))} for f = 1
        const double r = 0.25, q = 4.0;
        const Covering cov = build_cover(ball(2, 1.0), r);
        const double whole = std::pow(oracle::pi, 1 / q);
        double local = 0;
        for (const auto& x : cov.centers)
            local = std::max(local, std::pow(intersection_volume(x.norm(), r, 1.0, 2), 1 / q));
        CHECK(whole <= std::pow(cov.size(), 1 / q) * local);
    }

    TEST_CASE("argument checks") {
        CHECK_THROWS_AS(build_cover(ball(2, 1.0), 0.6), std::invalid_argument);
        CHECK_THROWS_AS(build_cover(ball(2, 1.0), 0.0), std::invalid_argument);
        CHECK_THROWS_AS(build_cover(ball(4, 1.0), 0.25), std::invalid_argument);
        CHECK_THROWS_AS(build_cover(square(1.0), 0.25), std::invalid_argument);
    }
}
