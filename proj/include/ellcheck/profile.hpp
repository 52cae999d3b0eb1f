#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace ellcheck {

enum class Smoothness { C0, C1, C2, Cinf };

// Scalar function of one variable with optional analytic derivatives.
// Radial profiles are evaluated on [0, R]; line profiles on [-R, R].
struct Profile {
    std::function<double(double)> f;
    std::function<double(double)> df;
    std::function<double(double)> d2f;
    Smoothness smooth = Smoothness::Cinf;
    bool is_constant = false;

    double operator()(double r) const { return f(r); }
    double d1(double r) const {
        if (!df) throw std::logic_error("profile has no first derivative");
        return df(r);
    }
    double d2(double r) const {
        if (!d2f) throw std::logic_error("profile has no second derivative");
        return d2f(r);
    }
    bool has_d1() const { return static_cast<bool>(df); }
    bool has_d2() const { return static_cast<bool>(d2f); }
};

inline Profile constant(double v) {
    Profile p;
    p.f = [v](double) { return v; };
    p.df = [](double) { return 0.0; };
    p.d2f = [](double) { return 0.0; };
    p.is_constant = true;
    return p;
}

inline Profile zero() { return constant(0.0); }

inline bool is_zero(const Profile& p) { return p.is_constant && p(0.0) == 0.0; }

// k * p
Profile scaled(const Profile& p, double k);
// p + q
Profile sum(const Profile& p, const Profile& q);
// x -> k * p(s * x), derivatives follow the chain rule
Profile dilated(const Profile& p, double s, double k);

enum class Geometry { radial, line };

// Coefficients of  L u = div(A grad u + b1 u) + b2 . grad u + c u.
// Radial: A = a(r) I, b_i = beta_i(r) x/|x|.  Line: n = 1 on (-R, R).
struct OperatorSpec {
    int n = 2;
    double R = 1.0;
    Geometry geom = Geometry::radial;
    Profile a = constant(1.0);
    Profile b1 = zero();
    Profile b2 = zero();
    Profile c = zero();
    double lambda_ell = 1.0;
    double Lambda_ell = 1.0;
    std::string label = "custom";
};

// Constant-coefficient operator on the square [-R, R]^2.
struct OperatorSpec2d {
    double R = 1.0;
    Eigen::Matrix2d A = Eigen::Matrix2d::Identity();
    Eigen::Vector2d b1 = Eigen::Vector2d::Zero();
    Eigen::Vector2d b2 = Eigen::Vector2d::Zero();
    double c = 0.0;
};

// Adjoint: b1 -> -b2, b2 -> -b1 (A is symmetric in the radial setting).
OperatorSpec adjoint(const OperatorSpec& spec);
OperatorSpec2d adjoint(const OperatorSpec2d& spec);

// Sampled check of lambda_ell <= a <= Lambda_ell and of b(0) = 0 for smooth radial drifts.
void validate(const OperatorSpec& spec, int samples = 1000);

enum class DomainKind { interval, ball, square };

struct Domain {
    DomainKind kind = DomainKind::ball;
    int n = 2;
    double R = 1.0;

    double diameter() const { return 2.0 * R; }
    double geodesic_diameter() const { return 2.0 * R; }
    double dist(double r) const {
        if (kind == DomainKind::square) throw std::logic_error("dist needs a point on the square");
        return R - std::abs(r);
    }
    double dist(const Eigen::Vector2d& x) const {
        if (kind == DomainKind::square) return R - x.cwiseAbs().maxCoeff();
        return R - x.norm();
    }
};

Domain domain_of(const OperatorSpec& spec);
Domain ball(int n, double R);
Domain interval(double R);
Domain square(double R);

std::string to_string(DomainKind k);

}  // namespace ellcheck
