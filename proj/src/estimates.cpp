#include "ellcheck/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ellcheck {

namespace {

CheckRow make_row(double param, const NormBreakdown& nb, double R, double lhs, double rhs_core) {
    CheckRow row;
    row.param = param;
    row.M = nb.M;
    row.r0 = nb.r0;
    row.MR = nb.M * R;
    row.lhs = lhs;
    row.rhs_core = rhs_core;
    row.implied_const = lhs / rhs_core;
    row.log_implied = std::log(row.implied_const);
    row.degenerate = !(lhs > 0) || !(rhs_core > 0) || !std::isfinite(row.log_implied);
    return row;
}

CheckRow failed_row(double param, double lambda1) {
    CheckRow row;
    row.param = param;
    row.degenerate = true;
    row.hypothesis_failed = true;
    row.extra["lambda1"] = lambda1;
    return row;
}

Profile positive_part(const Profile& f) {
    Profile p;
    p.f = [f](double r) { return std::max(f(r), 0.0); };
    p.is_constant = f.is_constant;
    p.smooth = Smoothness::C0;
    return p;
}

Profile absolute(const Profile& f) {
    Profile p;
    p.f = [f](double r) { return std::abs(f(r)); };
    p.is_constant = f.is_constant;
    p.smooth = Smoothness::C0;
    return p;
}

double radius_power(double R, int n, double q) { return std::isinf(q) ? R : std::pow(R, 1.0 - n / q); }

OperatorSpec with_radius(OperatorSpec spec, double R) {
    spec.R = R;
    return spec;
}

// Node nearest to signed position x.
int nearest_node(const RadialGrid& g, double x) {
    const int i = static_cast<int>(std::lround((x - g.node(0)) / g.h));
    return std::clamp(i, 0, g.node_count() - 1);
}

DiscreteSolution solution_for(const ClosedFormCase& cs, const CheckOptions& opt, bool exact_samples) {
    if (exact_samples) return sample(cs.u, RadialGrid(cs.spec, opt.m));
    return solve_case(cs, opt);
}

}  // namespace

std::string to_string(XVariable x) {
    switch (x) {
        case XVariable::M: return "M";
        case XVariable::MR: return "MR";
        case XVariable::j: return "j";
        case XVariable::lambda: return "lambda";
        case XVariable::R: return "R";
    }
    return "?";
}

XVariable parse_xvariable(const std::string& s) {
    if (s == "M") return XVariable::M;
    if (s == "MR") return XVariable::MR;
    if (s == "j") return XVariable::j;
    if (s == "lambda") return XVariable::lambda;
    if (s == "R") return XVariable::R;
    throw std::invalid_argument("unknown fit variable '" + s + "'; valid: M, MR, j, lambda, R");
}

FitResult fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("fit needs matching samples");
    const double N = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= N;
    my /= N;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (!(sxx > 0)) throw std::invalid_argument("fit needs at least two distinct abscissae");
    FitResult fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.rsq = syy > 0 ? sxy * sxy / (sxx * syy) : 1.0;
    fit.points = static_cast<int>(x.size());
    return fit;
}

FitResult fit_exponential(const std::vector<CheckRow>& rows, XVariable xv) {
    std::vector<double> x, y;
    for (const auto& r : rows) {
        if (r.degenerate || r.hypothesis_failed) continue;
        switch (xv) {
            case XVariable::M: x.push_back(r.M); break;
            case XVariable::MR: x.push_back(r.MR); break;
            case XVariable::j:
            case XVariable::lambda:
            case XVariable::R: x.push_back(r.param); break;
        }
        y.push_back(r.log_implied);
    }
    if (x.size() < 4) throw std::invalid_argument("fit needs at least 4 non-degenerate rows");
    FitResult fit = fit_line(x, y);
    fit.x_variable = xv;
    return fit;
}

double M_radius(const OperatorSpec& spec, const CheckOptions& opt) {
    if (opt.kappa) return spec.R + *opt.kappa;
    return spec.R * opt.M_radius_factor;
}

NormBreakdown working_M(const OperatorSpec& spec, const CheckOptions& opt) {
    const double R = M_radius(spec, opt);
    const Domain dom = spec.geom == Geometry::line ? interval(R) : ball(spec.n, R);
    return compute_M(with_radius(spec, R), dom, opt.q, opt.alpha, opt.quad);
}

DiscreteSolution solve_case(const ClosedFormCase& cs, const CheckOptions& opt) {
    const RadialGrid grid(cs.spec, opt.m);
    if (cs.ground_state && cs.conjugated)
        return solve_dirichlet_extrapolated(*cs.conjugated, grid, cs.f, opt.levels, &*cs.ground_state);
    if (opt.levels > 1) return solve_dirichlet_extrapolated(cs.spec, grid, cs.f, opt.levels);
    return solve_dirichlet(cs.spec, grid, cs.f);
}

double principal_eigenvalue(const ClosedFormCase& cs, const RadialGrid& grid) {
    if (cs.ground_state && cs.conjugated)
        return principal_eigen_conjugated(*cs.conjugated, *cs.ground_state, grid).lambda1;
    return principal_eigen(cs.spec, grid).lambda1;
}

double weighted_l1(const Profile& f, const Domain& dom, const Quadrature& quad, Geometry geom) {
    Profile g;
    g.f = [f, dom](double r) { return std::abs(f(r)) * dom.dist(r); };
    return lq_norm(g, 1.0, dom, quad, geom);
}

CheckRow check_linfty(const OperatorSpec& spec, const Profile& f, const DiscreteSolution& u,
                      const CheckOptions& opt) {
    const Domain dom = domain_of(spec);
    const NormBreakdown nb = working_M(spec, opt);
    const ProfileStats st = profile_stats(u, opt.epsilon_wh, opt.alpha);
    const double rhs = radius_power(spec.R, spec.n, opt.q) * lq_norm(positive_part(f), opt.q, dom, opt.quad, spec.geom);
    CheckRow row = make_row(0.0, nb, spec.R, st.sup_u_over_d, rhs);
    row.extra["M_radius"] = M_radius(spec, opt);
    row.extra["sup_u"] = st.sup_u;
    return row;
}

CheckRow check_linfty(const OperatorSpec& spec, const Profile& f, const CheckOptions& opt) {
    const RadialGrid grid(spec, opt.m);
    double lambda1 = -std::numeric_limits<double>::infinity();
    try {
        lambda1 = principal_eigen(spec, grid).lambda1;
    } catch (const NonPrincipalMode&) {
    }
    if (!(lambda1 > 0)) return failed_row(0.0, lambda1);
    const DiscreteSolution u =
        opt.levels > 1 ? solve_dirichlet_extrapolated(spec, grid, f, opt.levels) : solve_dirichlet(spec, grid, f);
    CheckRow row = check_linfty(spec, f, u, opt);
    row.extra["lambda1"] = lambda1;
    return row;
}

CheckRow check_linfty(const ClosedFormCase& cs, const CheckOptions& opt) {
    const double lambda1 = principal_eigenvalue(cs, RadialGrid(cs.spec, opt.m));
    if (!(lambda1 > 0)) return failed_row(cs.param, lambda1);
    CheckRow row = check_linfty(cs.spec, cs.f, solve_case(cs, opt), opt);
    row.param = cs.param;
    row.extra["lambda1"] = lambda1;
    return row;
}

std::pair<CheckRow, CheckRow> check_gradient(const OperatorSpec& spec, const Profile& f, const DiscreteSolution& u,
                                             const CheckOptions& opt) {
    const Domain dom = domain_of(spec);
    const NormBreakdown nb = working_M(spec, opt);
    const ProfileStats st = profile_stats(u, opt.epsilon_wh, opt.alpha);
    const double P = nb.M + 1.0 / spec.R;
    const double nq = std::isinf(opt.q) ? 0.0 : spec.n / opt.q;
    const double fq = lq_norm(absolute(f), opt.q, dom, opt.quad, spec.geom);
    CheckRow c1 = make_row(0.0, nb, spec.R, st.sup_grad, P * st.sup_u + std::pow(P, nq - 1.0) * fq);
    CheckRow c1a = make_row(0.0, nb, spec.R, st.holder_grad,
                            std::pow(P, 1.0 + opt.alpha) * st.sup_u + std::pow(P, nq - 1.0 + opt.alpha) * fq);
    for (CheckRow* r : {&c1, &c1a}) {
        r->extra["sup_u"] = st.sup_u;
        r->extra["sup_grad"] = st.sup_grad;
        if (nb.M > 0 && st.sup_u > 0) r->extra["grad_over_M_sup"] = st.sup_grad / (nb.M * st.sup_u);
    }
    return {c1, c1a};
}

std::pair<CheckRow, CheckRow> check_gradient(const ClosedFormCase& cs, const CheckOptions& opt) {
    auto rows = check_gradient(cs.spec, cs.f, solve_case(cs, opt), opt);
    rows.first.param = rows.second.param = cs.param;
    return rows;
}

CheckRow check_hopf(const OperatorSpec& spec, const Profile& f, const DiscreteSolution& u, const CheckOptions& opt) {
    const RadialGrid& g = u.grid;
    for (int i = 0; i < g.node_count(); ++i)
        if (f(g.node(i)) < 0) throw std::domain_error("hopf check needs f >= 0; negative at " + std::to_string(g.node(i)));
    const Domain dom = domain_of(spec);
    const NormBreakdown nb = working_M(spec, opt);
    const ProfileStats st = profile_stats(u, opt.epsilon_wh, opt.alpha);
    const double l1d = weighted_l1(f, dom, opt.quad, spec.geom);
    CheckRow row = make_row(0.0, nb, spec.R, st.inf_u_over_d, std::pow(spec.R, -spec.n) * l1d);
    row.extra["l1_d"] = l1d;
    row.extra["normal_derivative"] = st.normal_derivative;
    return row;
}

CheckRow check_hopf(const ClosedFormCase& cs, const CheckOptions& opt) {
    CheckRow row = check_hopf(cs.spec, cs.f, solve_case(cs, opt), opt);
    row.param = cs.param;
    return row;
}

CheckRow check_loggrad(const OperatorSpec& spec, const Profile& f, const DiscreteSolution& u,
                       const CheckOptions& opt) {
    (void)f;
    const RadialGrid& g = u.grid;
    const NormBreakdown nb = working_M(spec, opt);
    double lhs = 0.0, implied = 0.0;
    for (int i = 0; i < g.node_count(); ++i) {
        if (u.d(i) < g.h * (1 - 1e-9)) continue;
        if (!(u.u(i) > 0)) throw std::domain_error("log-gradient check needs u > 0 at interior nodes");
        const double v = u.d(i) * std::abs(u.grad(i)) / u.u(i);
        lhs = std::max(lhs, v);
        implied = std::max(implied, v / std::max(1.0, nb.M * u.d(i)));
    }
    CheckRow row = make_row(0.0, nb, spec.R, lhs, implied > 0 ? lhs / implied : 0.0);
    const int half = nearest_node(g, spec.R / 2);
    row.extra["grad_over_u_at_half"] = std::abs(u.grad(half)) / u.u(half);
    const int b = g.node_count() - 1;
    row.extra["value_at_4h"] = u.d(b - 4) * std::abs(u.grad(b - 4)) / u.u(b - 4);
    return row;
}

CheckRow check_loggrad(const ClosedFormCase& cs, const CheckOptions& opt, bool exact_samples) {
    CheckRow row = check_loggrad(cs.spec, cs.f, solution_for(cs, opt, exact_samples), opt);
    row.param = cs.param;
    return row;
}

CheckRow check_harnack(const OperatorSpec& spec, const Profile& f, const DiscreteSolution& u,
                       const CheckOptions& opt) {
    for (int i = 0; i < u.u.size(); ++i)
        if (u.u(i) < -1e-12 * u.u.cwiseAbs().maxCoeff()) throw std::domain_error("harnack check needs u >= 0");
    const Domain dom = domain_of(spec);
    const NormBreakdown nb = working_M(spec, opt);
    const ProfileStats st = profile_stats(u, opt.epsilon_wh, opt.alpha);
    const double fnorm = radius_power(spec.R, spec.n, opt.q) * lq_norm(absolute(f), opt.q, dom, opt.quad, spec.geom);
    CheckRow row = make_row(0.0, nb, spec.R, st.sup_u_over_d, st.inf_u_over_d + fnorm);
    row.extra["inf_u_over_d"] = st.inf_u_over_d;
    row.extra["f_norm"] = fnorm;
    row.extra["weak_harnack_quasinorm"] = st.weak_harnack_quasinorm;
    if (st.inf_u_over_d > 0) row.extra["sup_over_inf"] = st.sup_u_over_d / st.inf_u_over_d;
    return row;
}

CheckRow check_harnack(const ClosedFormCase& cs, const CheckOptions& opt, bool exact_samples) {
    CheckRow row = check_harnack(cs.spec, cs.f, solution_for(cs, opt, exact_samples), opt);
    row.param = cs.param;
    return row;
}

namespace {

EigBounds finish_bounds(const OperatorSpec& spec, double kappa, const CheckOptions& opt, double inner, double outer) {
    EigBounds e;
    e.lambda1_inner = inner;
    e.lambda1_outer = outer;
    CheckOptions o = opt;
    o.kappa = kappa;
    const NormBreakdown outer_nb = working_M(spec, o);
    e.M = outer_nb.M;
    e.r0 = outer_nb.r0;
    o.kappa.reset();
    o.M_radius_factor = 1.0;
    const NormBreakdown inner_nb = working_M(spec, o);
    e.M_inner = inner_nb.M;
    e.r0_inner = inner_nb.r0;
    e.lower_core = 1.0 / (spec.R * spec.R);
    e.upper_core = std::pow(e.M_inner + 1.0 / spec.R, 2);
    e.lower_implied = inner / e.lower_core;
    e.upper_implied = inner / e.upper_core;
    e.hypothesis_failed = !(outer >= 0);
    return e;
}

}  // namespace

EigBounds check_eig_bounds(const OperatorSpec& spec, double kappa, const CheckOptions& opt) {
    if (!(kappa > 0)) throw std::invalid_argument("kappa must be positive");
    const double inner = principal_eigen(spec, RadialGrid(spec, opt.m)).lambda1;
    const OperatorSpec wide = with_radius(spec, spec.R + kappa);
    const double outer = principal_eigen(wide, RadialGrid(wide, opt.m)).lambda1;
    return finish_bounds(spec, kappa, opt, inner, outer);
}

EigBounds check_eig_bounds(const ClosedFormCase& cs, double kappa, const CheckOptions& opt) {
    if (!(kappa > 0)) throw std::invalid_argument("kappa must be positive");
    if (!(cs.ground_state && cs.conjugated)) return check_eig_bounds(cs.spec, kappa, opt);
    const double inner = principal_eigen_conjugated(*cs.conjugated, *cs.ground_state, RadialGrid(cs.spec, opt.m)).lambda1;
    const OperatorSpec wide = with_radius(*cs.conjugated, cs.spec.R + kappa);
    const double outer = principal_eigen_conjugated(wide, *cs.ground_state, RadialGrid(wide, opt.m)).lambda1;
    return finish_bounds(cs.spec, kappa, opt, inner, outer);
}

std::vector<double> profile_zeros(const Profile& u, double lo, double hi, double tol) {
    std::vector<double> out;
    const int steps = std::max(64, static_cast<int>((hi - lo) * 256));
    double a = lo, fa = u(lo);
    for (int k = 1; k <= steps; ++k) {
        const double b = lo + (hi - lo) * k / steps, fb = u(b);
        if (fa == 0.0) {
            out.push_back(a);
        } else if (fa * fb < 0) {
            double x0 = a, x1 = b, f0 = fa;
            while (x1 - x0 > tol) {
                const double mid = 0.5 * (x0 + x1), fm = u(mid);
                if (fm == 0.0) {
                    x0 = x1 = mid;
                    break;
                }
                if ((fm < 0) == (f0 < 0)) {
                    x0 = mid;
                    f0 = fm;
                } else {
                    x1 = mid;
                }
            }
            out.push_back(0.5 * (x0 + x1));
        }
        a = b;
        fa = fb;
    }
    return out;
}

namespace {

// Simpson on [a, b] with an even number of panels.
double simpson(const std::function<double(double)>& g, double a, double b, int panels) {
    if (b <= a) return 0.0;
    panels += panels % 2;
    const double h = (b - a) / panels;
    double s = g(a) + g(b);
    for (int k = 1; k < panels; ++k) s += (k % 2 ? 4.0 : 2.0) * g(a + k * h);
    return s * h / 3.0;
}

// Integral of g over [a, b], split at the zeros of u so |u| is smooth on each piece.
double piecewise(const std::function<double(double)>& g, const Profile& u, double a, double b) {
    std::vector<double> cuts{a};
    for (double z : profile_zeros(u, a, b, 1e-14))
        if (z > cuts.back()) cuts.push_back(z);
    if (b > cuts.back()) cuts.push_back(b);
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double len = cuts[i + 1] - cuts[i];
        total += simpson(g, cuts[i], cuts[i + 1], std::max(64, static_cast<int>(len * 512)));
    }
    return total;
}

}  // namespace

std::vector<LandisRow> check_landis(const ClosedFormCase& cs, const std::vector<double>& radii) {
    const int n = cs.spec.n;
    const Profile& u = cs.u;
    std::vector<LandisRow> out;
    for (double R : radii) {
        if (!(R > 0)) throw std::invalid_argument("radii must be positive");
        LandisRow row;
        row.R = R;
        if (cs.spec.geom == Geometry::line) {
            row.surface = std::abs(u(R)) + std::abs(u(-R));
            row.volume = piecewise([&](double x) { return std::abs(u(x)); }, u, -R, R);
        } else {
            const double omega = sphere_area(n);
            row.surface = omega * std::pow(R, n - 1) * std::abs(u(R));
            row.volume = omega * piecewise([&](double r) { return std::abs(u(r)) * std::pow(r, n - 1); }, u, 0.0, R);
        }
        row.ratio = row.surface / row.volume;
        out.push_back(row);
    }
    return out;
}

const std::vector<std::string>& check_names() {
    static const std::vector<std::string> names = {"linfty",  "grad",      "grad-holder", "hopf",
                                                   "loggrad", "harnack",   "eig-lower",   "eig-upper"};
    return names;
}

std::vector<CheckRow> sweep(const SweepConfig& config) {
    if (config.params.empty()) throw std::invalid_argument("sweep needs parameters");
    for (std::size_t i = 1; i < config.params.size(); ++i)
        if (!(config.params[i] > config.params[i - 1])) throw std::invalid_argument("sweep parameters must increase");
    const auto& names = check_names();
    if (std::find(names.begin(), names.end(), config.check) == names.end()) {
        std::string list;
        for (const auto& s : names) list += (list.empty() ? "" : ", ") + s;
        throw std::invalid_argument("unknown check '" + config.check + "'; valid: " + list);
    }
    const CheckOptions& opt = config.options;
    std::vector<CheckRow> rows;
    for (double p : config.params) {
        const ClosedFormCase cs = make_case(config.family, p, config.n);
        CheckRow row;
        if (config.check == "linfty") {
            row = check_linfty(cs, opt);
        } else if (config.check == "grad" || config.check == "grad-holder") {
            const DiscreteSolution u = solution_for(cs, opt, config.exact_samples);
            const auto pair = check_gradient(cs.spec, cs.f, u, opt);
            row = config.check == "grad" ? pair.first : pair.second;
        } else if (config.check == "hopf") {
            row = check_hopf(cs.spec, cs.f, solution_for(cs, opt, config.exact_samples), opt);
        } else if (config.check == "loggrad") {
            row = check_loggrad(cs, opt, config.exact_samples);
        } else if (config.check == "harnack") {
            row = check_harnack(cs, opt, config.exact_samples);
        } else {
            const EigBounds e = check_eig_bounds(cs, config.kappa, opt);
            NormBreakdown nb;
            const bool lower = config.check == "eig-lower";
            nb.M = lower ? e.M : e.M_inner;
            nb.r0 = lower ? e.r0 : e.r0_inner;
            row = make_row(p, nb, cs.spec.R, e.lambda1_inner, lower ? e.lower_core : e.upper_core);
            row.hypothesis_failed = lower && e.hypothesis_failed;
            row.extra["lambda1_outer"] = e.lambda1_outer;
        }
        row.param = p;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace ellcheck
