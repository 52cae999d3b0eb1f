#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ellcheck/fields.hpp"
#include "ellcheck/solver.hpp"
#include "ellcheck/ulnorm.hpp"

namespace ellcheck {

// One evaluation of an estimate: lhs against the right-hand side with the
// unknown constant stripped.
struct CheckRow {
    double param = 0.0;
    double M = 0.0;
    double r0 = 0.0;
    double MR = 0.0;
    double lhs = 0.0;
    double rhs_core = 0.0;
    double implied_const = 0.0;
    double log_implied = 0.0;
    bool degenerate = false;
    bool hypothesis_failed = false;
    std::map<std::string, double> extra;
};

// R: the parameter is a radius (Landis sweeps)
enum class XVariable { M, MR, j, lambda, R };

std::string to_string(XVariable x);
XVariable parse_xvariable(const std::string& s);

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double rsq = 0.0;
    XVariable x_variable = XVariable::M;
    int points = 0;
};

// Least squares of y on x; needs at least two distinct x.
FitResult fit_line(const std::vector<double>& x, const std::vector<double>& y);
// log_implied against the chosen variable over the non-degenerate rows; at least four needed.
FitResult fit_exponential(const std::vector<CheckRow>& rows, XVariable x);

struct CheckOptions {
    int m = 2048;
    int levels = 1;              // Romberg levels for the Dirichlet solves
    double q = inf;
    double alpha = 0.5;
    double epsilon_wh = 0.5;
    double M_radius_factor = 1.0;  // M evaluated on B_{factor R}
    std::optional<double> kappa;   // when set, M on B_{R + kappa} instead
    Quadrature quad;
};

// Radius of the ball on which M is evaluated.
double M_radius(const OperatorSpec& spec, const CheckOptions& opt);
NormBreakdown working_M(const OperatorSpec& spec, const CheckOptions& opt);

// Dirichlet solve of a family, through its ground state when it has one.
DiscreteSolution solve_case(const ClosedFormCase& cs, const CheckOptions& opt);
double principal_eigenvalue(const ClosedFormCase& cs, const RadialGrid& grid);

// integral of |f| d over the domain
double weighted_l1(const Profile& f, const Domain& dom, const Quadrature& quad, Geometry geom = Geometry::radial);

// sup(u/d) against R^{1-n/q} ||f+||_q
CheckRow check_linfty(const OperatorSpec& spec, const Profile& f, const DiscreteSolution& u, const CheckOptions& opt);
CheckRow check_linfty(const OperatorSpec& spec, const Profile& f, const CheckOptions& opt);
CheckRow check_linfty(const ClosedFormCase& cs, const CheckOptions& opt);

// first: sup|grad u|,  second: [grad u]_alpha
std::pair<CheckRow, CheckRow> check_gradient(const OperatorSpec& spec, const Profile& f, const DiscreteSolution& u,
                                             const CheckOptions& opt);
std::pair<CheckRow, CheckRow> check_gradient(const ClosedFormCase& cs, const CheckOptions& opt);

// inf(u/d) against R^{-n} ||f||_{L^1_d}; f must be nonnegative.
CheckRow check_hopf(const OperatorSpec& spec, const Profile& f, const DiscreteSolution& u, const CheckOptions& opt);
CheckRow check_hopf(const ClosedFormCase& cs, const CheckOptions& opt);

// max d|grad u|/u; implied constant divides each node by max(1, M d).
CheckRow check_loggrad(const OperatorSpec& spec, const Profile& f, const DiscreteSolution& u,
                       const CheckOptions& opt);
CheckRow check_loggrad(const ClosedFormCase& cs, const CheckOptions& opt, bool exact_samples = false);

// sup(u/d) against inf(u/d) + R^{1-n/q} ||f||_q
CheckRow check_harnack(const OperatorSpec& spec, const Profile& f, const DiscreteSolution& u,
                       const CheckOptions& opt);
CheckRow check_harnack(const ClosedFormCase& cs, const CheckOptions& opt, bool exact_samples = false);

struct EigBounds {
    double lambda1_inner = 0.0;  // on B_R
    double lambda1_outer = 0.0;  // on B_{R + kappa}
    double M = 0.0;              // on B_{R + kappa}, pairs with the lower bound
    double r0 = 0.0;
    double M_inner = 0.0;        // on B_R, pairs with the upper bound
    double r0_inner = 0.0;
    double lower_core = 0.0;     // R^{-2}
    double upper_core = 0.0;     // (M + 1/R)^2
    double lower_implied = 0.0;  // lambda1 / lower_core
    double upper_implied = 0.0;  // lambda1 / upper_core
    bool hypothesis_failed = false;
};

EigBounds check_eig_bounds(const OperatorSpec& spec, double kappa, const CheckOptions& opt);
EigBounds check_eig_bounds(const ClosedFormCase& cs, double kappa, const CheckOptions& opt);

struct LandisRow {
    double R = 0.0;
    double surface = 0.0;  // integral of |u| over the sphere of radius R
    double volume = 0.0;   // integral of |u| over B_R
    double ratio = 0.0;
};

std::vector<LandisRow> check_landis(const ClosedFormCase& cs, const std::vector<double>& radii);
// Zeros of the radial profile in [lo, hi], located by bisection to tol.
std::vector<double> profile_zeros(const Profile& u, double lo, double hi, double tol = 1e-13);

struct SweepConfig {
    std::string family;
    std::string check = "linfty";  // linfty grad grad-holder hopf loggrad harnack eig-lower eig-upper
    std::vector<double> params;
    int n = 2;
    double kappa = 1.0;
    bool exact_samples = false;  // closed-form nodal values instead of a solve
    CheckOptions options;
};

const std::vector<std::string>& check_names();
std::vector<CheckRow> sweep(const SweepConfig& config);

}  // namespace ellcheck
