#include "ellcheck/ulnorm.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace ellcheck {

namespace {

constexpr double pi = std::numbers::pi;

// integral_0^theta sin^k, by the usual reduction formula
double sin_power_integral(int k, double theta) {
    if (k == 0) return theta;
    if (k == 1) return 1.0 - std::cos(theta);
    const double s = std::sin(theta), c = std::cos(theta);
    return -std::pow(s, k - 1) * c / k + (k - 1.0) / k * sin_power_integral(k - 2, theta);
}

// Fraction of the sphere |y| = rho lying within distance r of a point at distance s.
double cap_fraction(int n, double rho, double s, double r) {
    if (rho + s <= r) return 1.0;
    if (std::abs(rho - s) >= r) return 0.0;
    const double ct = std::clamp((rho * rho + s * s - r * r) / (2.0 * rho * s), -1.0, 1.0);
    const double theta = std::acos(ct);
    if (n == 2) return theta / pi;
    if (n == 3) return (1.0 - ct) / 2.0;
    return sin_power_integral(n - 2, theta) / sin_power_integral(n - 2, pi);
}

double powq(double v, double q) { return std::pow(std::abs(v), q); }

double eval_at(const Profile& h, double x, Geometry geom) { return geom == Geometry::line ? h(x) : h(std::abs(x)); }

// integral of |h|^q over Omega cap B_r(x) with |x| = s
double window_integral(const Profile& h, double q, double r, double s, const Domain& dom, const Quadrature& quad,
                       Geometry geom) {
    const int Q = quad.window_points;
    const double R = dom.R;
    double total = 0.0;
    if (dom.n == 1) {
        const double a = std::max(-R, s - r), b = std::min(R, s + r);
        if (b <= a) return 0.0;
        const double w = (b - a) / Q;
        for (int i = 0; i < Q; ++i) total += powq(eval_at(h, a + (i + 0.5) * w, geom), q);
        return total * w;
    }
    const int n = dom.n;
    const double omega = sphere_area(n);
    if (r > s) {
        const double top = std::min(r - s, R);
        const double w = top / Q;
        for (int i = 0; i < Q; ++i) {
            const double rho = (i + 0.5) * w;
            total += powq(h(rho), q) * omega * std::pow(rho, n - 1);
        }
        total *= w;
    }
    const double lo = std::abs(s - r), hi = std::min(s + r, R);
    if (hi > lo) {
        // rho = mid - half cos t removes the square-root endpoint behaviour
        const double mid = (lo + hi) / 2, half = (hi - lo) / 2, dt = pi / Q;
        double part = 0.0;
        for (int i = 0; i < Q; ++i) {
            const double t = (i + 0.5) * dt;
            const double rho = mid - half * std::cos(t);
            const double sigma = omega * std::pow(rho, n - 1) * cap_fraction(n, rho, s, r);
            part += powq(h(rho), q) * sigma * half * std::sin(t);
        }
        total += part * dt;
    }
    return total;
}

std::vector<double> centers(const Domain& dom, const Quadrature& quad, Geometry geom) {
    const int K = quad.center_sample_count;
    std::vector<double> out;
    if (dom.n == 1 && geom == Geometry::line) {
        for (int k = 0; k <= 2 * K; ++k) out.push_back(-dom.R + dom.R * k / K);
    } else {
        for (int k = 0; k <= K; ++k) out.push_back(dom.R * k / K);
    }
    return out;
}

double max_constant(const Profile& h) { return std::abs(h(0.0)); }

}  // namespace

void validate(const Quadrature& quad) {
    if (quad.grid_points_per_R < 8 || quad.center_sample_count < 8 || quad.window_points < 8 ||
        quad.pair_sample_budget < 8)
        throw std::invalid_argument("quadrature counts must be >= 8");
}

double sphere_area(int n) { return 2.0 * std::pow(pi, n / 2.0) / std::tgamma(n / 2.0); }

double disc_square_area(double r, double R) {
    if (r <= R) return pi * r * r;
    if (r >= std::sqrt(2.0) * R) return 4 * R * R;
    const double seg = r * r * std::acos(R / r) - R * std::sqrt(r * r - R * R);
    return pi * r * r - 4 * seg;
}

double r_omega(const Domain& dom) {
    switch (dom.kind) {
        case DomainKind::interval: return dom.R;
        case DomainKind::ball: return dom.R / 200.0;
        case DomainKind::square: return dom.R / 200.0;
    }
    return dom.R;
}

double sup_norm(const Profile& h, const Domain& dom, const Quadrature& quad, Geometry geom) {
    if (dom.kind == DomainKind::square) {
        if (!h.is_constant) throw std::invalid_argument("square domain supports constant fields only");
        return max_constant(h);
    }
    const int G = quad.grid_points_per_R;
    double best = 0.0;
    const bool two_sided = dom.n == 1 && geom == Geometry::line;
    for (int i = two_sided ? -G : 0; i <= G; ++i) best = std::max(best, std::abs(h(dom.R * i / G)));
    return best;
}

double lq_norm(const Profile& h, double q, const Domain& dom, const Quadrature& quad, Geometry geom) {
    if (std::isinf(q)) return sup_norm(h, dom, quad, geom);
    if (dom.kind == DomainKind::square) {
        if (!h.is_constant) throw std::invalid_argument("square domain supports constant fields only");
        return max_constant(h) * std::pow(4 * dom.R * dom.R, 1.0 / q);
    }
    const int G = quad.grid_points_per_R;
    const double w = dom.R / G;
    double total = 0.0;
    if (dom.n == 1) {
        for (int i = 0; i < G; ++i) {
            const double x = (i + 0.5) * w;
            total += powq(eval_at(h, x, geom), q) + powq(eval_at(h, -x, geom), q);
        }
    } else {
        const double omega = sphere_area(dom.n);
        for (int i = 0; i < G; ++i) {
            const double rho = (i + 0.5) * w;
            total += powq(h(rho), q) * omega * std::pow(rho, dom.n - 1);
        }
    }
    return std::pow(total * w, 1.0 / q);
}

double ul_lebesgue_norm(const Profile& h, double q, double r, const Domain& dom, const Quadrature& quad,
                        Geometry geom) {
    if (!(r > 0)) throw std::invalid_argument("radius must be positive");
    if (!(q > dom.n)) throw std::invalid_argument("integrability exponent must exceed the dimension");
    if (std::isinf(q)) return sup_norm(h, dom, quad, geom);
    if (dom.kind == DomainKind::square) {
        if (!h.is_constant) throw std::invalid_argument("square domain supports constant fields only");
        return max_constant(h) * std::pow(disc_square_area(r, dom.R), 1.0 / q);
    }
    if (is_zero(h)) return 0.0;
    double best = 0.0;
    for (double s : centers(dom, quad, geom)) best = std::max(best, window_integral(h, q, r, s, dom, quad, geom));
    return std::pow(best, 1.0 / q);
}

double ul_holder_bracket(const Profile& psi, double alpha, double r, const Domain& dom, const Quadrature& quad,
                         FieldKind kind, Geometry geom) {
    if (!(alpha > 0 && alpha < 1)) throw std::invalid_argument("Holder exponent must lie in (0, 1)");
    if (!(r > 0)) throw std::invalid_argument("radius must be positive");
    if (dom.kind == DomainKind::square) {
        if (!psi.is_constant) throw std::invalid_argument("square domain supports constant fields only");
        return 0.0;
    }
    if (is_zero(psi) || (psi.is_constant && (kind == FieldKind::scalar || geom == Geometry::line))) return 0.0;

    const std::vector<double> xs = centers(dom, quad, geom);
    const int per_center = std::max(16, quad.pair_sample_budget / static_cast<int>(xs.size()));
    std::mt19937_64 rng(quad.seed);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    const double R = dom.R;
    double best = 0.0;

    if (dom.n == 1) {
        std::vector<std::pair<double, double>> fr;
        for (int a = 0; a <= 8; ++a)
            for (int b = 0; b <= 8; ++b) fr.emplace_back(-1.0 + a / 4.0, -1.0 + b / 4.0);
        while (static_cast<int>(fr.size()) < per_center) fr.emplace_back(2 * U(rng) - 1, 2 * U(rng) - 1);
        auto value = [&](double x) {
            if (geom == Geometry::line) return psi(x);
            if (kind == FieldKind::radial_vector) return x == 0.0 ? 0.0 : std::copysign(psi(std::abs(x)), x);
            return psi(std::abs(x));
        };
        for (double x : xs) {
            for (auto [t1, t2] : fr) {
                const double y = std::clamp(x + r * t1, -R, R), z = std::clamp(x + r * t2, -R, R);
                const double d = std::abs(y - z);
                if (d == 0.0) continue;
                best = std::max(best, std::abs(value(y) - value(z)) / std::pow(d, alpha));
            }
        }
        return best;
    }

    // Radial fields: every pair lies in a plane through the origin.
    std::vector<std::array<double, 4>> fr;
    for (int a = 0; a <= 8; ++a)
        for (int b = 0; b <= 8; ++b) {
            const double ta = -1.0 + a / 4.0, tb = -1.0 + b / 4.0;
            fr.push_back({ta, 0.0, tb, 0.0});
            fr.push_back({0.0, ta, 0.0, tb});
            fr.push_back({ta, 0.0, 0.0, tb});
        }
    while (static_cast<int>(fr.size()) < per_center) {
        const double r1 = std::sqrt(U(rng)), t1 = 2 * pi * U(rng);
        const double r2 = std::sqrt(U(rng)), t2 = 2 * pi * U(rng);
        fr.push_back({r1 * std::cos(t1), r1 * std::sin(t1), r2 * std::cos(t2), r2 * std::sin(t2)});
    }
    auto project = [R](double& x, double& y) {
        const double m = std::hypot(x, y);
        if (m > R) {
            x *= R / m;
            y *= R / m;
        }
    };
    for (double s : xs) {
        for (const auto& f : fr) {
            double y1 = s + r * f[0], y2 = r * f[1], z1 = s + r * f[2], z2 = r * f[3];
            project(y1, y2);
            project(z1, z2);
            const double d = std::hypot(y1 - z1, y2 - z2);
            if (d == 0.0) continue;
            const double ry = std::hypot(y1, y2), rz = std::hypot(z1, z2);
            double diff;
            if (kind == FieldKind::scalar) {
                diff = std::abs(psi(ry) - psi(rz));
            } else {
                const double py = ry > 0 ? psi(ry) / ry : 0.0, pz = rz > 0 ? psi(rz) / rz : 0.0;
                diff = std::hypot(py * y1 - pz * z1, py * y2 - pz * z2);
            }
            best = std::max(best, diff / std::pow(d, alpha));
        }
    }
    return best;
}

std::string to_string(MVariant v) {
    switch (v) {
        case MVariant::standard: return "M";
        case MVariant::star: return "M_star";
        case MVariant::hat: return "M_hat";
    }
    return "?";
}

double beta_exponent(int n, double q) { return std::isinf(q) ? 1.0 : 1.0 / (1.0 - n / q); }
double gamma_exponent(int n, double q) { return std::isinf(q) ? 0.5 : 1.0 / (2.0 - n / q); }

namespace {

struct Evaluator {
    const OperatorSpec& spec;
    const Domain& dom;
    double q, alpha;
    const Quadrature& quad;
    MVariant variant;
    double base;  // r_Omega or kappa
    Profile b12;
    double b1_sup = 0.0;

    Evaluator(const OperatorSpec& s, const Domain& d, double q_, double a, const Quadrature& qd, MVariant v,
              std::optional<double> kappa)
        : spec(s), dom(d), q(q_), alpha(a), quad(qd), variant(v) {
        validate(quad);
        if (!(q > dom.n)) throw std::invalid_argument("integrability exponent must exceed the dimension");
        if (variant == MVariant::hat) {
            if (!kappa || !(*kappa > 0)) throw std::invalid_argument("hat variant needs kappa > 0");
            if (!(q / 2 > dom.n / 2.0)) throw std::invalid_argument("hat variant needs q/2 > n/2");
            base = *kappa;
        } else {
            if (!(alpha > 0 && alpha < 1 && (std::isinf(q) || alpha < 1.0 - dom.n / q)))
                throw std::invalid_argument("Holder exponent must satisfy 0 < alpha < 1 - n/q");
            base = r_omega(dom);
        }
        if (variant == MVariant::star) b12 = sum(spec.b1, spec.b2);
        if (variant == MVariant::standard) b1_sup = sup_norm(spec.b1, dom, quad, spec.geom);
    }

    NormBreakdown terms(double r) const {
        NormBreakdown nb;
        nb.variant = variant;
        nb.q = q;
        nb.alpha = alpha;
        nb.beta_q = beta_exponent(dom.n, q);
        nb.gamma_q = gamma_exponent(dom.n, q);
        nb.r_Omega = base;
        const Geometry g = spec.geom;
        const FieldKind vec = FieldKind::radial_vector;
        double M = 0.0;
        if (variant != MVariant::hat && !spec.a.is_constant) {
            nb.holder_A = ul_holder_bracket(spec.a, alpha, r, dom, quad, FieldKind::scalar, g);
            M += std::pow(nb.holder_A, 1.0 / alpha);
        }
        switch (variant) {
            case MVariant::standard:
                nb.b1_sup = b1_sup;
                if (!is_zero(spec.b1)) nb.holder_b1 = ul_holder_bracket(spec.b1, alpha, r, dom, quad, vec, g);
                nb.b2_ul = ul_lebesgue_norm(spec.b2, q, r, dom, quad, g);
                nb.c_ul = ul_lebesgue_norm(spec.c, q, r, dom, quad, g);
                M += nb.b1_sup + std::pow(nb.holder_b1, 1.0 / (1.0 + alpha)) + std::pow(nb.b2_ul, nb.beta_q) +
                     std::pow(nb.c_ul, nb.gamma_q);
                break;
            case MVariant::star:
                nb.b12_ul = ul_lebesgue_norm(b12, q, r, dom, quad, g);
                M += std::pow(nb.b12_ul, nb.beta_q);
                break;
            case MVariant::hat: {
                nb.p = q / 2;
                const double gp = gamma_exponent(dom.n, nb.p);
                nb.b1_ul = ul_lebesgue_norm(spec.b1, q, r, dom, quad, g);
                nb.b2_ul = ul_lebesgue_norm(spec.b2, q, r, dom, quad, g);
                nb.c_ul = ul_lebesgue_norm(spec.c, nb.p, r, dom, quad, g);
                M += std::pow(nb.b1_ul, nb.beta_q) + std::pow(nb.b2_ul, nb.beta_q) + std::pow(nb.c_ul, gp);
                break;
            }
        }
        if (!std::isfinite(M)) throw std::runtime_error("non-finite coefficient norm");
        nb.M = M;
        return nb;
    }

    double h(double r) const { return r * (1.0 / base + terms(r).M); }
};

NormBreakdown solve_r0(const Evaluator& ev) {
    const double top = ev.base;
    NormBreakdown at_top = ev.terms(top);
    if (top * (1.0 / top + at_top.M) <= 1.0) {
        at_top.r0 = top;
        return at_top;
    }
    double hi = top, lo = top / 2;
    int it = 0;
    while (ev.h(lo) > 1.0) {
        hi = lo;
        lo /= 2;
        if (++it > 200) throw std::runtime_error("r0 bracket search failed");
    }
    // Illinois regula falsi on h - 1; the map is continuous and increasing.
    double g_lo = ev.h(lo) - 1.0, g_hi = ev.h(hi) - 1.0;
    int side = 0;
    for (it = 0; it < 200 && (hi - lo) > 1e-10 * lo; ++it) {
        double mid = (lo * g_hi - hi * g_lo) / (g_hi - g_lo);
        if (!(mid > lo && mid < hi)) mid = 0.5 * (lo + hi);
        const double gm = ev.h(mid) - 1.0;
        if (gm <= 0.0) {
            lo = mid;
            g_lo = gm;
            if (side == -1) g_hi *= 0.5;
            side = -1;
        } else {
            hi = mid;
            g_hi = gm;
            if (side == 1) g_lo *= 0.5;
            side = 1;
        }
        if (std::abs(gm) <= 1e-13) break;
    }
    const double r0 = std::abs(g_lo) <= std::abs(g_hi) ? lo : hi;
    NormBreakdown nb = ev.terms(r0);
    nb.r0 = r0;
    nb.bisection_iterations = it;
    return nb;
}

}  // namespace

NormBreakdown compute_M(const OperatorSpec& spec, const Domain& dom, double q, double alpha, const Quadrature& quad,
                        MVariant variant, std::optional<double> kappa) {
    return solve_r0(Evaluator(spec, dom, q, alpha, quad, variant, kappa));
}

double compute_r0(const OperatorSpec& spec, const Domain& dom, double q, double alpha, const Quadrature& quad,
                  MVariant variant, std::optional<double> kappa) {
    return compute_M(spec, dom, q, alpha, quad, variant, kappa).r0;
}

double r0_defining_map(const OperatorSpec& spec, const Domain& dom, double q, double alpha, const Quadrature& quad,
                       double r, MVariant variant, std::optional<double> kappa) {
    return Evaluator(spec, dom, q, alpha, quad, variant, kappa).h(r);
}

NormBreakdown compute_M(const OperatorSpec2d& spec, const Domain& dom, double q, double alpha) {
    if (dom.kind != DomainKind::square) throw std::invalid_argument("constant-coefficient form needs a square");
    NormBreakdown nb;
    nb.q = q;
    nb.alpha = alpha;
    nb.beta_q = beta_exponent(2, q);
    nb.gamma_q = gamma_exponent(2, q);
    nb.r_Omega = r_omega(dom);
    nb.b1_sup = spec.b1.norm();
    const double b2 = spec.b2.norm(), c = std::abs(spec.c);
    auto terms = [&](double r) {
        const double area = std::isinf(q) ? 1.0 : std::pow(disc_square_area(r, dom.R), 1.0 / q);
        return nb.b1_sup + std::pow(b2 * area, nb.beta_q) + std::pow(c * area, nb.gamma_q);
    };
    double lo = 0.0, hi = nb.r_Omega;
    if (hi * (1.0 / hi + terms(hi)) <= 1.0) {
        lo = hi;
    } else {
        for (int it = 0; it < 200 && (hi - lo) > 1e-12 * hi; ++it) {
            const double mid = 0.5 * (lo + hi);
            (mid * (1.0 / nb.r_Omega + terms(mid)) <= 1.0 ? lo : hi) = mid;
        }
    }
    nb.r0 = lo;
    const double area = std::isinf(q) ? 1.0 : std::pow(disc_square_area(lo, dom.R), 1.0 / q);
    nb.b2_ul = b2 * area;
    nb.c_ul = c * area;
    nb.M = terms(lo);
    return nb;
}

std::vector<std::pair<double, double>> nonlinear_scaling_probe(const Profile& h, Role role,
                                                                const std::vector<double>& lambdas,
                                                                const Domain& dom, double q, const Quadrature& quad) {
    if (std::isinf(q)) throw std::invalid_argument("scaling probe needs finite q");
    std::vector<std::pair<double, double>> out;
    OperatorSpec spec;
    spec.n = dom.n;
    spec.R = dom.R;
    for (double lam : lambdas) {
        const Profile scaled_h = scaled(h, lam);
        if (role == Role::drift)
            spec.b2 = scaled_h;
        else
            spec.c = scaled_h;
        const double r = compute_r0(spec, dom, q, 0.5 * (1.0 - dom.n / q), quad);
        out.emplace_back(lam, ul_lebesgue_norm(scaled_h, q, r, dom, quad));
    }
    return out;
}

}  // namespace ellcheck
