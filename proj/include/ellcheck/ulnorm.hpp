#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ellcheck/profile.hpp"

namespace ellcheck {

inline constexpr double inf = std::numeric_limits<double>::infinity();

struct Quadrature {
    int grid_points_per_R = 4096;    // sup norms and plain L^q norms
    int center_sample_count = 64;    // centers in [0, R]
    int window_points = 96;          // per window piece
    int pair_sample_budget = 200000; // Holder brackets
    std::uint64_t seed = 0x5eed5eedULL;
};

void validate(const Quadrature& quad);

enum class FieldKind { scalar, radial_vector };

double r_omega(const Domain& dom);

// sup over centers x of ||h||_{L^q(Omega cap B_r(x))}.  Radial profiles are
// evaluated at |x|; line profiles at signed x.
double ul_lebesgue_norm(const Profile& h, double q, double r, const Domain& dom, const Quadrature& quad,
                        Geometry geom = Geometry::radial);
double lq_norm(const Profile& h, double q, const Domain& dom, const Quadrature& quad,
               Geometry geom = Geometry::radial);
double sup_norm(const Profile& h, const Domain& dom, const Quadrature& quad, Geometry geom = Geometry::radial);

// sup over pairs y, z in Omega with |y - z| < 2r of |psi(y) - psi(z)| / |y - z|^alpha.
double ul_holder_bracket(const Profile& psi, double alpha, double r, const Domain& dom, const Quadrature& quad,
                         FieldKind kind = FieldKind::scalar, Geometry geom = Geometry::radial);

enum class MVariant { standard, star, hat };

std::string to_string(MVariant v);

struct NormBreakdown {
    MVariant variant = MVariant::standard;
    double q = inf;
    double p = inf;  // hat variant: integrability of c
    double alpha = 0.5;
    double beta_q = 1.0;
    double gamma_q = 0.5;
    double r0 = 0.0;
    double r_Omega = 0.0;  // base scale: r_Omega, or kappa for the hat variant
    double holder_A = 0.0;
    double b1_sup = 0.0;
    double holder_b1 = 0.0;
    double b1_ul = 0.0;   // hat variant
    double b2_ul = 0.0;
    double b12_ul = 0.0;  // star variant: ||b1 + b2||
    double c_ul = 0.0;
    double M = 0.0;
    int bisection_iterations = 0;
};

double beta_exponent(int n, double q);
double gamma_exponent(int n, double q);

NormBreakdown compute_M(const OperatorSpec& spec, const Domain& dom, double q, double alpha, const Quadrature& quad,
                        MVariant variant = MVariant::standard, std::optional<double> kappa = std::nullopt);
double compute_r0(const OperatorSpec& spec, const Domain& dom, double q, double alpha, const Quadrature& quad,
                  MVariant variant = MVariant::standard, std::optional<double> kappa = std::nullopt);
// Constant-coefficient operator on a square.
NormBreakdown compute_M(const OperatorSpec2d& spec, const Domain& dom, double q, double alpha);

// r * (1/r_base + sum of coefficient terms at radius r), the map whose level 1 defines r0.
double r0_defining_map(const OperatorSpec& spec, const Domain& dom, double q, double alpha, const Quadrature& quad,
                       double r, MVariant variant = MVariant::standard, std::optional<double> kappa = std::nullopt);

enum class Role { drift, potential };

// lambda -> ||lambda h||_{q, r_lambda} with r_lambda the r0 of Laplacian + lambda h in the given role.
std::vector<std::pair<double, double>> nonlinear_scaling_probe(const Profile& h, Role role,
                                                                const std::vector<double>& lambdas,
                                                                const Domain& dom, double q, const Quadrature& quad);

// |S^{n-1}|
double sphere_area(int n);
// Area of B_r(0) cap [-R, R]^2.
double disc_square_area(double r, double R);

}  // namespace ellcheck
