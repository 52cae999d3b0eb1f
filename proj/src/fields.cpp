#include "ellcheck/fields.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace ellcheck {

namespace {

constexpr double pi = std::numbers::pi;

double d1_or_zero(const Profile& p, double r) { return p.is_constant ? 0.0 : p.d1(r); }

Profile make_profile(std::function<double(double)> f, std::function<double(double)> df,
                     std::function<double(double)> d2f, Smoothness s = Smoothness::Cinf) {
    Profile p;
    p.f = std::move(f);
    p.df = std::move(df);
    p.d2f = std::move(d2f);
    p.smooth = s;
    return p;
}

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument(what);
}

// Checks positivity claims at build time.
void assert_positive(const Profile& p, double lo, double hi, int samples, const std::string& what) {
    for (int k = 0; k < samples; ++k) {
        const double r = lo + (hi - lo) * (k + 0.5) / samples;
        if (!(p(r) > 0.0)) throw std::logic_error(what + " not positive at r = " + std::to_string(r));
    }
}

}  // namespace

Variant parse_variant(const std::string& s) {
    if (s == "schrodinger") return Variant::schrodinger;
    if (s == "drift") return Variant::drift;
    throw std::invalid_argument("unknown variant '" + s + "' (schrodinger|drift)");
}

namespace {

// accumulated in extended precision; the terms can be large and nearly cancel
long double minus_L_extended(const OperatorSpec& spec, const Profile& u, double r) {
    using LD = long double;
    const LD a = spec.a(r), ap = d1_or_zero(spec.a, r);
    const LD u0 = u(r), u1 = u.d1(r), u2 = u.d2(r);
    const LD b1 = spec.b1(r), b1p = is_zero(spec.b1) ? 0.0 : d1_or_zero(spec.b1, r);
    const LD b2 = spec.b2(r), c = spec.c(r);
    LD L = a * u2 + ap * u1 + b1p * u0 + b1 * u1 + b2 * u1 + c * u0;
    if (spec.geom == Geometry::radial && spec.n > 1) {
        const LD k = spec.n - 1.0;
        if (r > 0.0)
            L += k / r * (a * u1 + b1 * u0);
        else
            L += k * (a * u2 + b1p * u0);
    }
    return -L;
}

}  // namespace

double apply_minus_L(const OperatorSpec& spec, const Profile& u, double r) {
    return static_cast<double>(minus_L_extended(spec, u, r));
}

double residual(const OperatorSpec& spec, const Profile& u, const Profile& f, double lo, double hi,
                int samples) {
    if (!u.has_d2()) throw std::invalid_argument("residual needs the second derivative of u");
    require(samples >= 2, "need at least two samples");
    double worst = 0.0;
    for (int k = 0; k < samples; ++k) {
        const double r = lo + (hi - lo) * k / (samples - 1);
        worst = std::max(worst, static_cast<double>(std::abs(minus_L_extended(spec, u, r) - f(r))));
    }
    return worst;
}

double residual(const ClosedFormCase& cs, int samples) {
    return residual(cs.spec, cs.u, cs.f, cs.sample_lo, cs.sample_hi, samples);
}

std::pair<OperatorSpec, Profile> rescale(const OperatorSpec& spec, const Profile& f, double target_R) {
    const double k = spec.R / target_R;
    OperatorSpec out = spec;
    out.R = target_R;
    out.a = dilated(spec.a, k, 1.0);
    out.b1 = dilated(spec.b1, k, k);
    out.b2 = dilated(spec.b2, k, k);
    out.c = dilated(spec.c, k, k * k);
    return {out, dilated(f, k, k * k)};
}

std::pair<OperatorSpec, Profile> rescale_to_unit(const OperatorSpec& spec, const Profile& f) {
    return rescale(spec, f, 1.0);
}

Profile smooth_cutoff(double lo, double hi) {
    const double w = hi - lo;
    auto t_of = [lo, w](double r) { return std::clamp((r - lo) / w, 0.0, 1.0); };
    return make_profile(
        [t_of](double r) {
            const double t = t_of(r);
            return 1.0 - t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
        },
        [t_of, w](double r) {
            const double t = t_of(r);
            return -30.0 * t * t * (1.0 - t) * (1.0 - t) / w;
        },
        [t_of, w](double r) {
            const double t = t_of(r);
            return -60.0 * t * (1.0 - t) * (1.0 - 2.0 * t) / (w * w);
        },
        Smoothness::C2);
}

double bessel_j0_first_zero() {
    double x = 2.4;
    for (int it = 0; it < 50; ++it) {
        const double dx = std::cyl_bessel_j(0.0, x) / -std::cyl_bessel_j(1.0, x);
        x -= dx;
        if (std::abs(dx) < 1e-16 * x) break;
    }
    return x;
}

BallEigenfunction ball_eigenfunction(int n) {
    if (n == 1) {
        const double k = pi / 2;
        return {make_profile([k](double r) { return std::cos(k * r); },
                             [k](double r) { return -k * std::sin(k * r); },
                             [k](double r) { return -k * k * std::cos(k * r); }),
                k * k};
    }
    if (n == 2) {
        const double j = bessel_j0_first_zero();
        const double lam = j * j;
        auto d1 = [j](double r) { return -j * std::cyl_bessel_j(1.0, j * r); };
        return {make_profile([j](double r) { return std::cyl_bessel_j(0.0, j * r); }, d1,
                             [j, lam, d1](double r) {
                                 if (r < 1e-4) {
                                     const double x2 = j * j * r * r;
                                     return -lam / 2 * (1.0 - 3.0 * x2 / 8.0);
                                 }
                                 return -d1(r) / r - lam * std::cyl_bessel_j(0.0, j * r);
                             }),
                lam};
    }
    if (n == 3) {
        const double lam = pi * pi;
        auto phi = [](double r) {
            const double x = pi * r;
            if (x < 1e-2) {
                const double x2 = x * x;
                return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0));
            }
            return std::sin(x) / x;
        };
        auto d1 = [](double r) {
            const double x = pi * r;
            if (x < 1e-2) {
                const double x2 = x * x;
                return pi * (-x / 3.0 + x * x2 / 30.0 - x * x2 * x2 / 840.0);
            }
            return pi * (x * std::cos(x) - std::sin(x)) / (x * x);
        };
        auto d2 = [phi, d1, lam](double r) {
            const double x = pi * r;
            if (x < 1e-2) {
                const double x2 = x * x;
                return lam * (-1.0 / 3.0 + x2 / 10.0 - x2 * x2 / 168.0);
            }
            return -2.0 / r * d1(r) - lam * phi(r);
        };
        return {make_profile(phi, d1, d2), lam};
    }
    throw std::invalid_argument("closed-form ball eigenfunction available for n in {1,2,3} only");
}

Profile cubic_spline(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t N = x.size();
    require(N >= 3 && y.size() == N, "spline needs at least three matching nodes");
    // Second derivatives from the natural spline system.
    std::vector<double> M(N, 0.0), cp(N, 0.0), dp(N, 0.0);
    for (std::size_t i = 1; i + 1 < N; ++i) {
        const double h0 = x[i] - x[i - 1], h1 = x[i + 1] - x[i];
        const double a = h0 / 6.0, b = (h0 + h1) / 3.0, c = h1 / 6.0;
        const double d = (y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0;
        const double den = b - a * cp[i - 1];
        cp[i] = c / den;
        dp[i] = (d - a * dp[i - 1]) / den;
    }
    for (std::size_t i = N - 2; i >= 1; --i) M[i] = dp[i] - cp[i] * M[i + 1];
    auto locate = [x](double t) {
        auto it = std::upper_bound(x.begin(), x.end(), t);
        std::size_t i = it == x.begin() ? 0 : static_cast<std::size_t>(it - x.begin()) - 1;
        return std::min(i, x.size() - 2);
    };
    auto eval = [x, y, M, locate](double t, int der) {
        const std::size_t i = locate(t);
        const double h = x[i + 1] - x[i];
        const double A = (x[i + 1] - t) / h, B = (t - x[i]) / h;
        if (der == 0)
            return A * y[i] + B * y[i + 1] + ((A * A * A - A) * M[i] + (B * B * B - B) * M[i + 1]) * h * h / 6.0;
        if (der == 1)
            return (y[i + 1] - y[i]) / h - (3 * A * A - 1) / 6.0 * h * M[i] + (3 * B * B - 1) / 6.0 * h * M[i + 1];
        return A * M[i] + B * M[i + 1];
    };
    return make_profile([eval](double t) { return eval(t, 0); }, [eval](double t) { return eval(t, 1); },
                        [eval](double t) { return eval(t, 2); }, Smoothness::C2);
}

ClosedFormCase make_schrodinger_linfty(double lambda, int n) {
    require(n >= 1, "dimension must be >= 1");
    require(lambda >= 2.0 * n, "schrodinger family needs lambda >= 2n");
    const double L = lambda, nn = n;
    ClosedFormCase cs;
    cs.name = "schrodinger-linfty";
    cs.param = lambda;
    cs.spec.n = n;
    cs.spec.label = cs.name;
    cs.spec.c = make_profile([L, nn](double r) { return L * nn - L * L * r * r; },
                             [L](double r) { return -2.0 * L * L * r; }, [L](double) { return -2.0 * L * L; });
    cs.u = make_profile([L](double r) { return std::expm1(L * (1.0 - r * r) / 2.0); },
                        [L](double r) { return -L * r * std::exp(L * (1.0 - r * r) / 2.0); },
                        [L](double r) { return (L * L * r * r - L) * std::exp(L * (1.0 - r * r) / 2.0); });
    cs.f = cs.spec.c;
    cs.facts["u_at_0"] = std::expm1(L / 2.0);
    cs.facts["f_sup"] = L * nn;
    cs.positive = true;
    cs.ground_state = make_profile([L](double r) { return std::exp(L * (1.0 - r * r) / 2.0); },
                                   [L](double r) { return -L * r * std::exp(L * (1.0 - r * r) / 2.0); },
                                   [L](double r) { return (L * L * r * r - L) * std::exp(L * (1.0 - r * r) / 2.0); });
    OperatorSpec conj = cs.spec;
    conj.label = cs.name + "-conjugated";
    conj.c = zero();
    conj.b2 = make_profile([L](double r) { return -2.0 * L * r; }, [L](double) { return -2.0 * L; },
                           [](double) { return 0.0; });
    cs.conjugated = conj;
    return cs;
}

ClosedFormCase make_drift_linfty(double lambda, int n) {
    require(n >= 1, "dimension must be >= 1");
    require(lambda >= 1.0, "drift family needs lambda >= 1");
    const double L = lambda, nn = n;
    const Profile psi = smooth_cutoff(3.0 / 8.0, 3.0 / 4.0);
    ClosedFormCase cs;
    cs.name = "drift-linfty";
    cs.param = lambda;
    cs.spec.n = n;
    cs.spec.label = cs.name;
    // b2 = -beta with beta = (L r/phi + n/r - r/phi^2)(1 - psi).  Values reach
    // e^{L sqrt 2}; evaluated in extended precision and rounded once.
    using LD = long double;
    auto phi_of = [](double r) { return std::sqrt(1.0L + LD(r) * r); };
    Profile b2;
    b2.f = [L, nn, psi, phi_of](double r) {
        const double w = 1.0 - psi(r);
        if (w == 0.0) return 0.0;
        const LD phi = phi_of(r);
        return static_cast<double>(-(L * r / phi + nn / r - r / (phi * phi)) * w);
    };
    b2.smooth = Smoothness::C2;
    cs.spec.b2 = b2;
    const LD top = std::exp(L * std::sqrt(2.0L));
    cs.u = make_profile([L, top, phi_of](double r) { return static_cast<double>(top - std::exp(L * phi_of(r))); },
                        [L, phi_of](double r) {
                            const LD phi = phi_of(r);
                            return static_cast<double>(-L * r / phi * std::exp(L * phi));
                        },
                        [L, phi_of](double r) {
                            const LD phi = phi_of(r);
                            return static_cast<double>(-L * std::exp(L * phi) *
                                                       (1.0L / (phi * phi * phi) + L * r * r / (phi * phi)));
                        });
    cs.f.f = [L, nn, psi, phi_of](double r) {
        const double p = psi(r);
        if (p == 0.0) return 0.0;
        const LD phi = phi_of(r);
        return static_cast<double>(L * std::exp(L * phi) *
                                   (L * r * r / (phi * phi) + nn / phi - r * r / (phi * phi * phi)) * p);
    };
    cs.f.smooth = Smoothness::C2;
    cs.facts["u_at_0"] = static_cast<double>(top - std::exp(LD(L)));
    cs.positive = true;
    return cs;
}

ClosedFormCase make_hopf_case(double lambda, int n, Variant variant) {
    require(n >= 1, "dimension must be >= 1");
    require(lambda > 0.0, "hopf family needs lambda > 0");
    const double L = lambda, nn = n;
    ClosedFormCase cs;
    cs.param = lambda;
    cs.spec.n = n;
    const double K = variant == Variant::schrodinger ? L * L / nn : 0.0;
    if (variant == Variant::schrodinger) {
        cs.name = "hopf-schrodinger";
        cs.spec.c = make_profile([L](double r) { return -L * L * r * r; }, [L](double r) { return -2 * L * L * r; },
                                 [L](double) { return -2 * L * L; });
        cs.f = make_profile(
            [L, nn, K](double r) {
                const double phi = (1.0 - r * r) / 2.0;
                return L * nn * std::exp(L * phi) + 2.0 * L * L * phi + K * L * L * r * r * phi;
            },
            nullptr, nullptr);
        cs.facts["normal_derivative"] = L + L * L / nn;
    } else {
        cs.name = "hopf-drift";
        cs.spec.b2 = make_profile([L](double r) { return L * r; }, [L](double) { return L; },
                                  [](double) { return 0.0; });
        cs.f = make_profile([L, nn](double r) { return L * nn * std::exp(L * (1.0 - r * r) / 2.0); }, nullptr, nullptr);
        cs.facts["normal_derivative"] = L;
    }
    cs.spec.label = cs.name;
    cs.u = make_profile(
        [L, K](double r) {
            const double phi = (1.0 - r * r) / 2.0;
            return std::expm1(L * phi) + K * phi;
        },
        [L, K](double r) { return -L * r * std::exp(L * (1.0 - r * r) / 2.0) - K * r; },
        [L, K](double r) { return (L * L * r * r - L) * std::exp(L * (1.0 - r * r) / 2.0) - K; });
    cs.facts["K"] = K;
    cs.positive = true;
    assert_positive(cs.f, 0.0, 1.0, 4096, cs.name + " right-hand side");
    return cs;
}

namespace {

// u = phi e^{j h} with c = -Delta u / u (schrodinger, h = phi^2) or the drift
// b_j solving Delta u + lambda0 u + b_j . grad u = 0 (drift, h a cutoff).
ClosedFormCase harnack_from(int j, int n, Variant variant, const Profile& phi, double lambda0, bool numeric) {
    require(j >= 1, "harnack family needs j >= 1");
    const double J = j, k = n - 1.0;
    Profile h;
    if (variant == Variant::schrodinger) {
        h = make_profile([phi](double r) { return phi(r) * phi(r); },
                         [phi](double r) { return 2 * phi(r) * phi.d1(r); },
                         [phi](double r) { return 2 * phi.d1(r) * phi.d1(r) + 2 * phi(r) * phi.d2(r); });
    } else {
        h = smooth_cutoff(1.0 / 3.0, 2.0 / 3.0);
    }
    auto lap = [k](const Profile& p, double r) {
        return r > 0 ? p.d2(r) + k / r * p.d1(r) : (k + 1) * p.d2(r);
    };
    ClosedFormCase cs;
    cs.param = j;
    cs.spec.n = n;
    cs.u = make_profile([phi, h, J](double r) { return phi(r) * std::exp(J * h(r)); },
                        [phi, h, J](double r) { return (phi.d1(r) + J * phi(r) * h.d1(r)) * std::exp(J * h(r)); },
                        [phi, h, J](double r) {
                            const double p = phi(r), p1 = phi.d1(r), p2 = phi.d2(r);
                            const double h1 = h.d1(r), h2 = h.d2(r);
                            return (p2 + 2 * J * p1 * h1 + J * p * h2 + J * J * p * h1 * h1) * std::exp(J * h(r));
                        });
    cs.f = zero();
    if (variant == Variant::schrodinger) {
        cs.name = "harnack-schrodinger";
        cs.spec.c.f = [phi, h, J, lambda0, lap](double r) {
            const double p1 = phi.d1(r), h1 = h.d1(r);
            return lambda0 - 4 * J * p1 * p1 - J * lap(h, r) - J * J * h1 * h1;
        };
        cs.spec.c.is_constant = false;
    } else {
        cs.name = "harnack-drift";
        cs.spec.c = constant(lambda0);
        Profile b;
        b.f = [phi, h, J, lap](double r) {
            const double h1 = h.d1(r);
            const double num = 2 * J * phi.d1(r) * h1 + phi(r) * (J * lap(h, r) + J * J * h1 * h1);
            if (num == 0.0) return 0.0;
            return -num / (phi.d1(r) + J * phi(r) * h1);
        };
        b.smooth = Smoothness::C1;
        cs.spec.b2 = b;
    }
    cs.spec.label = cs.name;
    const Profile p = phi;
    const double dphi1 = std::abs(p.d1(1.0));
    cs.facts["phi_prime_at_1"] = -dphi1;
    cs.facts["lambda0"] = lambda0;
    cs.facts["sup_over_inf_ud_lower"] = std::exp(J) / dphi1;
    // |grad u|/u = |j h' + phi'/phi| >= j |h'| at r = 1/2
    cs.facts["loggrad_at_half"] = std::abs(J * h.d1(0.5) + p.d1(0.5) / p(0.5));
    cs.facts["loggrad_at_half_lower"] = J * std::abs(h.d1(0.5));
    cs.positive = true;
    cs.residual_tol = numeric ? 1e-6 : 1e-9;
    return cs;
}

}  // namespace

ClosedFormCase make_harnack_case(int j, int n, Variant variant) {
    const BallEigenfunction e = ball_eigenfunction(n);
    return harnack_from(j, n, variant, e.phi, e.lambda0, false);
}

ClosedFormCase make_harnack_case(int j, int n, Variant variant, const std::vector<double>& r,
                                 const std::vector<double>& phi, double lambda0) {
    Profile s = cubic_spline(r, phi);
    // Second derivative from the eigen-equation keeps -Delta phi = lambda0 phi exact.
    const double k = n - 1.0;
    Profile p;
    p.f = s.f;
    p.df = s.df;
    p.d2f = [s, k, lambda0](double t) {
        if (t <= 0.0) return -lambda0 * s(0.0) / (k + 1);
        return -k / t * s.d1(t) - lambda0 * s(t);
    };
    p.smooth = Smoothness::C2;
    ClosedFormCase cs = harnack_from(j, n, variant, p, lambda0, true);
    cs.name += "-numeric";
    return cs;
}

ClosedFormCase make_harnack_inhomogeneous_case(int j, int n) {
    require(j >= 1, "harnack family needs j >= 1");
    const BallEigenfunction e = ball_eigenfunction(n);
    const Profile phi = e.phi;
    const double J = j, k = n - 1.0;
    auto h = [phi](double r) { return phi(r) * phi(r); };
    auto h1 = [phi](double r) { return 2 * phi(r) * phi.d1(r); };
    auto h2 = [phi](double r) { return 2 * phi.d1(r) * phi.d1(r) + 2 * phi(r) * phi.d2(r); };
    auto lap_h = [h1, h2, k](double r) { return r > 0 ? h2(r) + k / r * h1(r) : (k + 1) * h2(r); };
    ClosedFormCase cs;
    cs.name = "harnack-inhomogeneous";
    cs.param = j;
    cs.spec.n = n;
    cs.spec.label = cs.name;
    cs.spec.c.f = [J, h1, lap_h](double r) { return -J * lap_h(r) - J * J * h1(r) * h1(r); };
    cs.f = cs.spec.c;
    cs.u = make_profile([J, h](double r) { return std::expm1(J * h(r)); },
                        [J, h, h1](double r) { return J * h1(r) * std::exp(J * h(r)); },
                        [J, h, h1, h2](double r) { return (J * h2(r) + J * J * h1(r) * h1(r)) * std::exp(J * h(r)); });
    cs.facts["u_at_0"] = std::expm1(J);
    cs.facts["inf_u_over_d"] = 0.0;
    cs.positive = true;
    // v = e^{j h} > 0 solves L v = 0, and u = v - 1
    cs.ground_state = make_profile([J, h](double r) { return std::exp(J * h(r)); },
                                   [J, h, h1](double r) { return J * h1(r) * std::exp(J * h(r)); },
                                   [J, h, h1, h2](double r) {
                                       return (J * h2(r) + J * J * h1(r) * h1(r)) * std::exp(J * h(r));
                                   });
    OperatorSpec conj = cs.spec;
    conj.label = cs.name + "-conjugated";
    conj.c = zero();
    conj.b2 = make_profile([J, h1](double r) { return 2.0 * J * h1(r); },
                           [J, h2](double r) { return 2.0 * J * h2(r); }, nullptr);
    cs.conjugated = conj;
    return cs;
}

ClosedFormCase make_landis_case(int n) {
    require(n >= 1, "dimension must be >= 1");
    const double k = n - 1.0;
    // Values at r = 1 of w = e^{-r} cos r and of beta = 2 - (n-1)/r.
    const double e1 = std::exp(-1.0), c1 = std::cos(1.0), s1 = std::sin(1.0);
    const double w0 = e1 * c1, w1 = -e1 * (c1 + s1), w2 = 2 * e1 * s1;
    // even quartic A + B r^2 + C r^4 matching w, w', w'' at r = 1
    const double C = (w2 - w1) / 8.0, B = (w1 - 4 * C) / 2.0, A = w0 - B - C;
    // odd quintic a1 r + a3 r^3 + a5 r^5 matching beta, beta', beta'' at r = 1
    const double bb0 = 2.0 - k, bb1 = k, bb2 = -2.0 * k;
    const double a5 = (bb2 - 6.0 * (bb1 - bb0) / 2.0) / 8.0;
    const double a3 = (bb1 - bb0) / 2.0 - 2.0 * a5;
    const double a1 = bb0 - a3 - a5;

    Profile w = make_profile(
        [A, B, C](double r) { return r >= 1.0 ? std::exp(-r) * std::cos(r) : A + r * r * (B + C * r * r); },
        [B, C](double r) {
            return r >= 1.0 ? -std::exp(-r) * (std::cos(r) + std::sin(r)) : r * (2 * B + 4 * C * r * r);
        },
        [B, C](double r) { return r >= 1.0 ? 2 * std::exp(-r) * std::sin(r) : 2 * B + 12 * C * r * r; },
        Smoothness::C2);
    Profile beta = make_profile(
        [k, a1, a3, a5](double r) { return r >= 1.0 ? 2.0 - k / r : r * (a1 + r * r * (a3 + a5 * r * r)); },
        [k, a1, a3, a5](double r) { return r >= 1.0 ? k / (r * r) : a1 + r * r * (3 * a3 + 5 * a5 * r * r); },
        [k, a3, a5](double r) { return r >= 1.0 ? -2 * k / (r * r * r) : r * (6 * a3 + 20 * a5 * r * r); },
        Smoothness::C2);
    ClosedFormCase cs;
    cs.name = "landis";
    cs.param = n;
    cs.spec.n = n;
    cs.spec.R = 20.0;
    cs.spec.b2 = beta;
    cs.spec.c.f = [w, beta, k](double r) {
        if (r >= 1.0) return 2.0;
        const double lap = r > 0 ? w.d2(r) + k / r * w.d1(r) : (k + 1) * w.d2(r);
        return -(lap + beta(r) * w.d1(r)) / w(r);
    };
    cs.spec.c.smooth = Smoothness::C0;
    cs.spec.label = cs.name;
    cs.u = w;
    cs.f = zero();
    cs.sample_lo = 1.0;
    cs.sample_hi = 20.0;
    assert_positive(w, 0.0, 1.0, 1000, "landis interior extension");
    std::vector<double> zeros;
    for (int m = 1; m <= 5; ++m) zeros.push_back((m + 0.5) * pi);
    cs.lists["zero_radii"] = zeros;
    // u'' + 2u' + 2u = e^{-x}(w'' + w) for u = e^{-x} w: Dirichlet eigenvalues
    // pi^2/(4R^2) - 1 on (-R, R), so the whole-line value is -1.
    cs.facts["lambda1_R"] = -1.0;
    return cs;
}

ClosedFormCase make_loggrad_case(double eps, double gamma, int n) {
    require(eps > 0.0 && eps < 0.25, "loggrad family needs eps in (0, 1/4)");
    require(gamma > 0.0 && gamma < 1.0, "loggrad family needs gamma in (0, 1)");
    require(n >= 2, "loggrad family needs n >= 2");
    const double E = eps, G = gamma, nn = n;
    ClosedFormCase cs;
    cs.name = "loggrad";
    cs.param = eps;
    cs.spec.n = n;
    cs.spec.label = cs.name;
    const double top = std::pow(1.0 + E, G);
    cs.u = make_profile([E, G, top](double r) { return top - std::pow(r * r + E, G); },
                        [E, G](double r) { return -2 * G * r * std::pow(r * r + E, G - 1); },
                        [E, G](double r) {
                            const double s = r * r + E;
                            return -(2 * G * std::pow(s, G - 1) + 4 * G * (G - 1) * r * r * std::pow(s, G - 2));
                        });
    cs.f = make_profile(
        [E, G, nn](double r) {
            const double s = r * r + E;
            return 2 * G * std::pow(s, G - 2) * ((nn - 2 + 2 * G) * r * r + nn * E);
        },
        nullptr, nullptr);
    cs.facts["grad_at_sqrt_eps"] = 2 * G * std::sqrt(E) * std::pow(2 * E, G - 1);
    cs.facts["gamma"] = gamma;
    cs.positive = true;
    assert_positive(cs.f, 0.0, 1.0, 1000, "loggrad right-hand side");
    return cs;
}

ClosedFormCase make_1d_negative_f_case() {
    ClosedFormCase cs;
    cs.name = "negative-f-1d";
    cs.spec.n = 1;
    cs.spec.geom = Geometry::line;
    cs.spec.label = cs.name;
    auto guard = [](double x) {
        if (!(x > 0.0)) throw std::domain_error("negative-f case is defined for x > 0 only");
    };
    cs.u = make_profile([guard](double x) { guard(x); return std::exp(-1.0 / x); },
                        [guard](double x) { guard(x); return std::exp(-1.0 / x) / (x * x); },
                        [guard](double x) { guard(x); return std::exp(-1.0 / x) * (1.0 - 2.0 * x) / (x * x * x * x); });
    cs.f = make_profile(
        [guard](double x) {
            guard(x);
            return (2.0 * x - 1.0) / (x * x * x * x) * std::exp(-1.0 / x);
        },
        nullptr, nullptr);
    cs.sample_lo = 0.05;
    cs.sample_hi = 1.0;
    cs.facts["u_at_1"] = std::exp(-1.0);
    cs.positive = true;
    return cs;
}

ClosedFormCase make_eig_gradopt_case(double lambda, int n) {
    require(lambda > 0.0, "gradopt family needs lambda > 0");
    const double L = lambda, nn = n;
    ClosedFormCase cs;
    cs.name = "gradopt";
    cs.param = lambda;
    cs.spec.n = n;
    cs.spec.label = cs.name;
    cs.spec.c = make_profile([L](double r) { return L * L * r * r; }, [L](double r) { return 2 * L * L * r; },
                             [L](double) { return 2 * L * L; });
    cs.u = make_profile([L](double r) { return std::sin(L * (1.0 - r * r) / 2.0); },
                        [L](double r) { return -L * r * std::cos(L * (1.0 - r * r) / 2.0); },
                        [L](double r) {
                            const double t = L * (1.0 - r * r) / 2.0;
                            return -L * std::cos(t) - L * L * r * r * std::sin(t);
                        });
    cs.f = make_profile([L, nn](double r) { return nn * L * std::cos(L * (1.0 - r * r) / 2.0); }, nullptr, nullptr);
    double sup_u = 0.0, sup_g = 0.0;
    for (int k = 0; k <= 10000; ++k) {
        const double r = k / 10000.0;
        sup_u = std::max(sup_u, std::abs(cs.u(r)));
        sup_g = std::max(sup_g, std::abs(cs.u.d1(r)));
    }
    cs.facts["sup_u"] = sup_u;
    cs.facts["sup_grad"] = sup_g;
    return cs;
}

ClosedFormCase make_exponential_line_case(double lambda, double R) {
    require(lambda > 0.0, "exponential case needs lambda > 0");
    require(R > 0.0, "radius must be positive");
    const double L = lambda;
    ClosedFormCase cs;
    cs.name = "exponential-line";
    cs.param = lambda;
    cs.spec.n = 1;
    cs.spec.R = R;
    cs.spec.geom = Geometry::line;
    cs.spec.c = constant(-L * L);
    cs.spec.label = cs.name;
    cs.u = make_profile([L](double x) { return std::exp(L * x); }, [L](double x) { return L * std::exp(L * x); },
                        [L](double x) { return L * L * std::exp(L * x); });
    cs.f = zero();
    cs.sample_lo = -R;
    cs.sample_hi = R;
    cs.positive = true;
    return cs;
}

const std::vector<std::string>& family_names() {
    static const std::vector<std::string> names = {
        "schrodinger-linfty", "drift-linfty",          "hopf-schrodinger", "hopf-drift",
        "harnack-schrodinger", "harnack-drift",        "harnack-inhomogeneous", "landis",
        "loggrad",            "negative-f-1d",         "gradopt",          "exponential-line"};
    return names;
}

ClosedFormCase make_case(const std::string& family, double param, int n) {
    auto as_int = [&] {
        const double j = std::round(param);
        require(j == param, family + " needs an integer parameter");
        return static_cast<int>(j);
    };
    if (family == "schrodinger-linfty") return make_schrodinger_linfty(param, n);
    if (family == "drift-linfty") return make_drift_linfty(param, n);
    if (family == "hopf-schrodinger") return make_hopf_case(param, n, Variant::schrodinger);
    if (family == "hopf-drift") return make_hopf_case(param, n, Variant::drift);
    if (family == "harnack-schrodinger") return make_harnack_case(as_int(), n, Variant::schrodinger);
    if (family == "harnack-drift") return make_harnack_case(as_int(), n, Variant::drift);
    if (family == "harnack-inhomogeneous") return make_harnack_inhomogeneous_case(as_int(), n);
    if (family == "landis") return make_landis_case(n);
    if (family == "loggrad") return make_loggrad_case(param, 0.5, n);
    if (family == "negative-f-1d") return make_1d_negative_f_case();
    if (family == "gradopt") return make_eig_gradopt_case(param, n);
    if (family == "exponential-line") return make_exponential_line_case(param, 20.0);
    std::string list;
    for (const auto& f : family_names()) list += (list.empty() ? "" : ", ") + f;
    throw std::invalid_argument("unknown family '" + family + "'; valid: " + list);
}

namespace {

// c0 + c2 r^2
Profile quadratic(double c0, double c2) {
    if (c2 == 0.0) return constant(c0);
    return make_profile([=](double r) { return c0 + c2 * r * r; }, [=](double r) { return 2 * c2 * r; },
                        [=](double) { return 2 * c2; });
}

}  // namespace

OperatorSpec random_radial_spec(std::uint64_t seed, int n, double R) {
    require(n >= 1, "dimension must be >= 1");
    require(R > 0.0, "radius must be positive");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    auto draw = [&](double lo, double hi) { return lo + (hi - lo) * U(rng); };
    OperatorSpec s;
    s.n = n;
    s.R = R;
    const double a0 = draw(0.5, 2.0), a2 = draw(0.0, 1.0) / (R * R);
    s.a = quadratic(a0, a2);
    s.lambda_ell = a0;
    s.Lambda_ell = a0 + a2 * R * R;
    // b_i = beta_i r: smooth at the origin
    const double be1 = draw(-1.0, 1.0) / R, be2 = draw(-1.0, 1.0) / R;
    s.b1 = make_profile([=](double r) { return be1 * r; }, [=](double) { return be1; }, [](double) { return 0.0; });
    s.b2 = make_profile([=](double r) { return be2 * r; }, [=](double) { return be2; }, [](double) { return 0.0; });
    s.c = quadratic(draw(-2.0, 1.0) / (R * R), draw(-1.0, 1.0) / (R * R * R * R));
    s.label = "random-" + std::to_string(seed);
    return s;
}

Profile random_positive_profile(std::uint64_t seed, double R) {
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    const double f0 = 0.1 + U(rng), f2 = U(rng) / (R * R);
    const double amp = 5 * U(rng), s0 = R * U(rng), w = R * (0.05 + 0.2 * U(rng));
    return make_profile(
        [=](double r) { return f0 + f2 * r * r + amp * std::exp(-(r - s0) * (r - s0) / (w * w)); },
        [=](double r) {
            const double g = std::exp(-(r - s0) * (r - s0) / (w * w));
            return 2 * f2 * r - 2 * amp * (r - s0) / (w * w) * g;
        },
        [=](double r) {
            const double z = (r - s0) / w, g = std::exp(-z * z);
            return 2 * f2 + amp * g * (4 * z * z - 2) / (w * w);
        });
}

std::vector<ClosedFormCase> all_reference_cases() {
    std::vector<ClosedFormCase> out;
    out.push_back(make_schrodinger_linfty(10, 2));
    out.push_back(make_drift_linfty(8, 2));
    out.push_back(make_hopf_case(4, 2, Variant::schrodinger));
    out.push_back(make_hopf_case(8, 2, Variant::drift));
    for (int n : {1, 2, 3}) {
        out.push_back(make_harnack_case(5, n, Variant::schrodinger));
        out.push_back(make_harnack_case(5, n, Variant::drift));
    }
    out.push_back(make_harnack_inhomogeneous_case(5, 3));
    out.push_back(make_landis_case(2));
    out.push_back(make_landis_case(3));
    out.push_back(make_loggrad_case(0.01, 0.1, 2));
    out.push_back(make_1d_negative_f_case());
    out.push_back(make_eig_gradopt_case(20, 2));
    out.push_back(make_exponential_line_case(2, 5));
    return out;
}

}  // namespace ellcheck
