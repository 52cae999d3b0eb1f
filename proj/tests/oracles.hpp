#pragma once

// Reference values computed without the library.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

namespace oracle {

inline constexpr double pi = std::numbers::pi;

// J_0 by its power series; fine for |x| < 10.
inline double bessel_j0(double x) {
    double term = 1.0, sum = 1.0;
    const double q = -x * x / 4.0;
    for (int k = 1; k < 80; ++k) {
        term *= q / (k * double(k));
        sum += term;
    }
    return sum;
}

inline double bisect(const std::function<double(double)>& f, double a, double b, double tol = 1e-15) {
    double fa = f(a);
    for (int it = 0; it < 200 && b - a > tol; ++it) {
        const double m = 0.5 * (a + b), fm = f(m);
        if ((fm < 0) == (fa < 0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

// First zero of J_0, in (2, 3).
inline double j0_first_zero() { return bisect(bessel_j0, 2.0, 3.0); }

// Composite Simpson, panels rounded up to even.
inline double simpson(const std::function<double(double)>& g, double a, double b, int panels = 20000) {
    panels += panels % 2;
    const double h = (b - a) / panels;
    double s = g(a) + g(b);
    for (int k = 1; k < panels; ++k) s += (k % 2 ? 4.0 : 2.0) * g(a + k * h);
    return s * h / 3.0;
}

// |B_r(0) cap B_r(d e1)| by slicing along e1.
inline double lens_by_slices(double d, double r, int n) {
    if (d >= 2 * r) return 0.0;
    auto slice = [&](double x) {
        const double s = std::min(r * r - x * x, r * r - (x - d) * (x - d));
        if (s <= 0) return 0.0;
        return n == 2 ? 2.0 * std::sqrt(s) : pi * s;
    };
    // the slice has a kink at x = d/2; integrate the halves separately
    return simpson(slice, d - r, d / 2, 40000) + simpson(slice, d / 2, r, 40000);
}

// Dirichlet eigenvalues of -u'' on (-R, R) and of -Laplacian on the unit square side 2R.
inline double interval_lambda1(double R) { return pi * pi / (4 * R * R); }
inline double square_lambda1(double R) { return 2 * pi * pi / (4 * R * R); }

// Asymptotic slopes from hand expansions of the model families.
inline constexpr double linfty_schrodinger_slope = 0.25;
inline constexpr double hopf_slope = -0.375;
inline constexpr double harnack_slope = 1.0;
inline constexpr double inhomogeneous_harnack_slope = 0.5;

}  // namespace oracle
