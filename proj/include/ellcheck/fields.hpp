#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ellcheck/profile.hpp"

namespace ellcheck {

// A named model problem with exact solution u of  -L u = f.
struct ClosedFormCase {
    std::string name;
    double param = 0.0;
    OperatorSpec spec;
    Profile u;
    Profile f;
    std::map<std::string, double> facts;
    std::map<std::string, std::vector<double>> lists;
    double sample_lo = 0.0;  // residual sample range
    double sample_hi = 1.0;
    bool positive = false;
    double residual_tol = 1e-9;
    // Positive v with known L v; the conjugated operator w -> v^{-1} L(v w)
    // has no zero-order cancellation and resolves tiny eigenvalues.
    std::optional<Profile> ground_state;
    std::optional<OperatorSpec> conjugated;

    // -c, the potential in the form -Delta u + V u.
    Profile potential() const { return scaled(spec.c, -1.0); }
};

enum class Variant { schrodinger, drift };

Variant parse_variant(const std::string& s);

ClosedFormCase make_schrodinger_linfty(double lambda, int n);
ClosedFormCase make_drift_linfty(double lambda, int n);
ClosedFormCase make_hopf_case(double lambda, int n, Variant variant);
ClosedFormCase make_harnack_case(int j, int n, Variant variant);
// Same family on a tabulated radial eigenfunction (nodes r_i, values phi_i with phi(0) = 1).
ClosedFormCase make_harnack_case(int j, int n, Variant variant, const std::vector<double>& r,
                                 const std::vector<double>& phi, double lambda0);
ClosedFormCase make_harnack_inhomogeneous_case(int j, int n);
ClosedFormCase make_landis_case(int n);
ClosedFormCase make_loggrad_case(double eps, double gamma, int n);
ClosedFormCase make_1d_negative_f_case();
ClosedFormCase make_eig_gradopt_case(double lambda, int n);

// u = e^{lambda x} on the line with L = d^2/dx^2 - lambda^2: positive first eigenvalue.
ClosedFormCase make_exponential_line_case(double lambda, double R);

// Families by name; param is lambda, j or eps as the family requires.
ClosedFormCase make_case(const std::string& family, double param, int n);
const std::vector<std::string>& family_names();

// Seeded smooth radial operator: a = a0 + a2 r^2, b_i = beta_i r, c = c0 + c2 r^2.
OperatorSpec random_radial_spec(std::uint64_t seed, int n, double R = 1.0);
// Seeded positive source: quadratic plus a Gaussian bump.
Profile random_positive_profile(std::uint64_t seed, double R = 1.0);

// Every family at a representative parameter, used by audits.
std::vector<ClosedFormCase> all_reference_cases();

// max |-L u - f| over equispaced samples of [sample_lo, sample_hi].
double residual(const ClosedFormCase& cs, int samples);
double residual(const OperatorSpec& spec, const Profile& u, const Profile& f, double lo, double hi,
                int samples);
// -L u at a point from analytic derivatives.
double apply_minus_L(const OperatorSpec& spec, const Profile& u, double r);

// Maps a problem on B_R to B_target:  A(kx), k b(kx), k^2 c(kx), k^2 f(kx), k = R/target.
std::pair<OperatorSpec, Profile> rescale(const OperatorSpec& spec, const Profile& f, double target_R);
std::pair<OperatorSpec, Profile> rescale_to_unit(const OperatorSpec& spec, const Profile& f);

// Quintic smoothstep: 1 below lo, 0 above hi, C^2.
Profile smooth_cutoff(double lo, double hi);

// First Dirichlet eigenpair of the unit ball for n in {1, 2, 3}, phi(0) = 1.
struct BallEigenfunction {
    Profile phi;
    double lambda0;
};
BallEigenfunction ball_eigenfunction(int n);
double bessel_j0_first_zero();

// Natural cubic spline through (x_i, y_i).
Profile cubic_spline(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace ellcheck
