#include "ellcheck/profile.hpp"

#include <algorithm>

namespace ellcheck {

Profile scaled(const Profile& p, double k) {
    Profile out;
    out.f = [p, k](double r) { return k * p(r); };
    if (p.df) out.df = [p, k](double r) { return k * p.d1(r); };
    if (p.d2f) out.d2f = [p, k](double r) { return k * p.d2(r); };
    out.smooth = p.smooth;
    out.is_constant = p.is_constant;
    return out;
}

Profile sum(const Profile& p, const Profile& q) {
    Profile out;
    out.f = [p, q](double r) { return p(r) + q(r); };
    if (p.df && q.df) out.df = [p, q](double r) { return p.d1(r) + q.d1(r); };
    if (p.d2f && q.d2f) out.d2f = [p, q](double r) { return p.d2(r) + q.d2(r); };
    out.smooth = std::min(p.smooth, q.smooth);
    out.is_constant = p.is_constant && q.is_constant;
    return out;
}

Profile dilated(const Profile& p, double s, double k) {
    Profile out;
    out.f = [p, s, k](double x) { return k * p(s * x); };
    if (p.df) out.df = [p, s, k](double x) { return k * s * p.d1(s * x); };
    if (p.d2f) out.d2f = [p, s, k](double x) { return k * s * s * p.d2(s * x); };
    out.smooth = p.smooth;
    out.is_constant = p.is_constant;
    return out;
}

OperatorSpec adjoint(const OperatorSpec& spec) {
    OperatorSpec out = spec;
    out.b1 = scaled(spec.b2, -1.0);
    out.b2 = scaled(spec.b1, -1.0);
    out.label = spec.label + "*";
    return out;
}

OperatorSpec2d adjoint(const OperatorSpec2d& spec) {
    OperatorSpec2d out = spec;
    out.A = spec.A.transpose();
    out.b1 = -spec.b2;
    out.b2 = -spec.b1;
    return out;
}

void validate(const OperatorSpec& spec, int samples) {
    if (spec.n < 1) throw std::invalid_argument("dimension must be >= 1");
    if (!(spec.R > 0)) throw std::invalid_argument("radius must be positive");
    if (spec.geom == Geometry::line && spec.n != 1)
        throw std::invalid_argument("line geometry requires n = 1");
    const double lo = spec.geom == Geometry::line ? -spec.R : 0.0;
    for (int k = 0; k <= samples; ++k) {
        const double r = lo + (spec.R - lo) * k / samples;
        const double a = spec.a(r);
        if (a < spec.lambda_ell * (1 - 1e-12) || a > spec.Lambda_ell * (1 + 1e-12))
            throw std::invalid_argument("diffusion outside ellipticity bounds at r = " + std::to_string(r));
    }
    if (spec.geom == Geometry::radial && spec.n >= 2) {
        for (const Profile* b : {&spec.b1, &spec.b2}) {
            if (b->smooth >= Smoothness::C1 && std::abs((*b)(0.0)) > 1e-12)
                throw std::invalid_argument("smooth radial drift must vanish at the origin");
        }
    }
}

Domain ball(int n, double R) { return Domain{n == 1 ? DomainKind::interval : DomainKind::ball, n, R}; }
Domain interval(double R) { return Domain{DomainKind::interval, 1, R}; }
Domain square(double R) { return Domain{DomainKind::square, 2, R}; }

Domain domain_of(const OperatorSpec& spec) {
    if (spec.geom == Geometry::line || spec.n == 1) return interval(spec.R);
    return ball(spec.n, spec.R);
}

std::string to_string(DomainKind k) {
    switch (k) {
        case DomainKind::interval: return "interval";
        case DomainKind::ball: return "ball";
        case DomainKind::square: return "square";
    }
    return "?";
}

}  // namespace ellcheck
