#include "ellcheck/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "ellcheck/cover.hpp"

namespace ellcheck {

using nlohmann::ordered_json;

namespace {

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

std::string join(const std::vector<std::string>& v) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : ", ") + x;
    return s;
}

ordered_json number_json(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (x == std::floor(x) && std::abs(x) < 9.0e15) return static_cast<long long>(x);
    return x;
}

ordered_json value_json(const Value& v) {
    if (const double* d = std::get_if<double>(&v)) return number_json(*d);
    return std::get<std::string>(v);
}

ordered_json record_json(const Record& r) {
    ordered_json j = ordered_json::object();
    for (const auto& [key, v] : r) {
        ordered_json* node = &j;
        std::string rest = key;
        for (auto dot = rest.find('.'); dot != std::string::npos; dot = rest.find('.')) {
            node = &(*node)[rest.substr(0, dot)];
            rest = rest.substr(dot + 1);
        }
        (*node)[rest] = value_json(v);
    }
    return j;
}

std::string value_csv(const Value& v) {
    if (const double* d = std::get_if<double>(&v)) return format_number(*d);
    return std::get<std::string>(v);
}

}  // namespace

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string to_csv(const RunReport& rep) {
    std::ostringstream os;
    if (!rep.rows.empty() || rep.records.empty()) {
        os << csv_header << '\n';
        for (const auto& r : rep.rows)
            os << format_number(r.param) << ',' << format_number(r.M) << ',' << format_number(r.r0) << ','
               << format_number(r.MR) << ',' << format_number(r.lhs) << ',' << format_number(r.rhs_core) << ','
               << format_number(r.implied_const) << ',' << format_number(r.log_implied) << '\n';
    } else {
        const Record& first = rep.records.front();
        for (std::size_t i = 0; i < first.size(); ++i) os << (i ? "," : "") << first[i].first;
        os << '\n';
        for (const auto& rec : rep.records) {
            for (std::size_t i = 0; i < rec.size(); ++i) os << (i ? "," : "") << value_csv(rec[i].second);
            os << '\n';
        }
    }
    for (const auto& f : rep.fits)
        os << "# fit " << f.y << " vs " << f.x << ": slope=" << format_number(f.fit.slope)
           << " intercept=" << format_number(f.fit.intercept) << " rsq=" << format_number(f.fit.rsq)
           << " points=" << f.fit.points << '\n';
    return os.str();
}

std::string to_json(const RunReport& rep) {
    ordered_json j;
    j["command"] = rep.command;
    j["config"] = record_json(rep.config);
    ordered_json rows = ordered_json::array();
    for (const auto& r : rep.rows) {
        ordered_json o;
        o["param"] = number_json(r.param);
        o["M"] = number_json(r.M);
        o["r0"] = number_json(r.r0);
        o["MR"] = number_json(r.MR);
        o["lhs"] = number_json(r.lhs);
        o["rhs_core"] = number_json(r.rhs_core);
        o["implied_const"] = number_json(r.implied_const);
        o["log_implied"] = number_json(r.log_implied);
        o["degenerate"] = r.degenerate;
        o["hypothesis_failed"] = r.hypothesis_failed;
        ordered_json extra = ordered_json::object();
        for (const auto& [k, v] : r.extra) extra[k] = number_json(v);
        o["extra"] = extra;
        rows.push_back(o);
    }
    for (const auto& rec : rep.records) rows.push_back(record_json(rec));
    j["rows"] = rows;
    ordered_json fits = ordered_json::array();
    for (const auto& f : rep.fits)
        fits.push_back({{"x", f.x},
                        {"y", f.y},
                        {"slope", number_json(f.fit.slope)},
                        {"intercept", number_json(f.fit.intercept)},
                        {"rsq", number_json(f.fit.rsq)},
                        {"points", f.fit.points}});
    j["fits"] = fits;
    j["provenance"] = record_json(rep.provenance);
    return j.dump(2) + "\n";
}

namespace {

// Flags shared by the subcommands that build an operator.
struct OperatorFlags {
    std::string family;
    double param = 1.0;
    std::string op = "laplace";
    std::string domain = "ball";
    int n = 2;
    double R = 1.0;
    double potential = 0.0;
    std::uint64_t seed = 1;
    std::vector<double> drift{0.0, 0.0};
};

void add_operator_flags(CLI::App* sub, OperatorFlags& f) {
    sub->add_option("--family", f.family, "closed-form family (overrides --op)");
    sub->add_option("--param", f.param, "family parameter: lambda, j or eps")->capture_default_str();
    sub->add_option("--op", f.op, "laplace | potential | random")
        ->check(CLI::IsMember({"laplace", "potential", "random"}))
        ->capture_default_str();
    sub->add_option("--domain", f.domain, "ball | interval | square")
        ->check(CLI::IsMember({"ball", "interval", "square"}))
        ->capture_default_str();
    sub->add_option("--n", f.n, "dimension")->check(CLI::Range(1, 10))->capture_default_str();
    sub->add_option("--R", f.R, "radius")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--potential", f.potential, "constant V in -Delta + V")->capture_default_str();
    sub->add_option("--seed", f.seed, "seed for --op random")->capture_default_str();
    sub->add_option("--drift", f.drift, "constant drift b2 on the square")->expected(2)->capture_default_str();
}

void require_family(const std::string& family) {
    const auto& names = family_names();
    if (std::find(names.begin(), names.end(), family) == names.end())
        throw UsageError("unknown family '" + family + "'; valid: " + join(names));
}

OperatorSpec build_spec(const OperatorFlags& f) {
    if (f.op == "random") {
        if (f.domain != "ball") throw UsageError("--op random needs --domain ball");
        return random_radial_spec(f.seed, f.n, f.R);
    }
    OperatorSpec s;
    s.R = f.R;
    s.n = f.n;
    if (f.domain == "interval") {
        s.n = 1;
        s.geom = Geometry::line;
    }
    s.c = constant(-f.potential);
    s.label = f.op;
    return s;
}

// Case from --family, or an operator with a unit source.
ClosedFormCase build_case(const OperatorFlags& f) {
    if (!f.family.empty()) {
        require_family(f.family);
        return make_case(f.family, f.param, f.n);
    }
    ClosedFormCase cs;
    cs.name = f.op;
    cs.spec = build_spec(f);
    cs.f = f.op == "random" ? random_positive_profile(f.seed, f.R) : constant(1.0);
    return cs;
}

Domain domain_for(const OperatorSpec& s) { return s.geom == Geometry::line ? interval(s.R) : ball(s.n, s.R); }

void collect_config(const CLI::App* sub, Record& config) {
    for (const CLI::Option* opt : sub->get_options()) {
        if (opt->get_name() == "--help" || opt->get_name().empty()) continue;
        std::string key = opt->get_name();
        while (!key.empty() && key.front() == '-') key.erase(key.begin());
        std::string value;
        if (opt->count() > 0) {
            for (const auto& r : opt->results()) value += (value.empty() ? "" : ",") + r;
        } else {
            value = opt->get_default_str();
        }
        config.emplace_back(key, value);
    }
}

void common_provenance(Record& p, const CheckOptions& opt) {
    p.emplace_back("quadrature.grid_points_per_R", static_cast<double>(opt.quad.grid_points_per_R));
    p.emplace_back("quadrature.center_sample_count", static_cast<double>(opt.quad.center_sample_count));
    p.emplace_back("quadrature.window_points", static_cast<double>(opt.quad.window_points));
    p.emplace_back("quadrature.pair_sample_budget", static_cast<double>(opt.quad.pair_sample_budget));
    p.emplace_back("seed", std::to_string(opt.quad.seed));
    p.emplace_back("conventions.r_Omega", "R for intervals, R/200 for balls and squares");
    p.emplace_back("conventions.operator", "L u = div(A grad u + b1 u) + b2 . grad u + c u, solving -L u = f");
}

const char* check_tag(const std::string& check) {
    if (check == "linfty") return "boundary-weighted-sup-bound";
    if (check == "grad") return "gradient-sup-bound";
    if (check == "grad-holder") return "gradient-holder-bound";
    if (check == "hopf") return "quantitative-hopf-lower-bound";
    if (check == "loggrad") return "log-gradient-upper-bound";
    if (check == "harnack") return "boundary-harnack-ratio";
    if (check == "eig-lower") return "principal-eigenvalue-lower-bound";
    if (check == "eig-upper") return "principal-eigenvalue-upper-bound";
    if (check == "landis") return "surface-to-volume-decay-floor";
    return "unknown";
}

XVariable default_x(const std::string& check, const std::string& family) {
    if (check == "landis") return XVariable::R;
    if (check == "harnack" || check == "loggrad") return XVariable::j;
    if (family == "gradopt") return XVariable::lambda;
    return XVariable::M;
}

void add_fit(RunReport& rep, XVariable x) {
    try {
        rep.fits.push_back({to_string(x), "log_implied", fit_exponential(rep.rows, x)});
    } catch (const std::invalid_argument&) {
        // fewer than four usable rows: no fit
    }
}

int finish(RunReport& rep, const std::string& format, std::ostream& out) {
    for (auto& [key, v] : rep.config)
        if (key == "format") v = format;
    out << (format == "csv" ? to_csv(rep) : to_json(rep));
    return rep.hypothesis_failed ? exit_code::hypothesis_failed : exit_code::ok;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run_cli(args, out, err);
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Numerical checks of elliptic estimates on balls and intervals", "ellcheck"};
    app.require_subcommand(1, 1);

    std::string format;
    CheckOptions opt;
    OperatorFlags of;
    double q = inf, alpha = 0.5;

    // norms
    std::string variant = "standard";
    std::optional<double> kappa_M;
    double M_factor = 1.0;
    auto* norms = app.add_subcommand("norms", "M and r0 of an operator");
    add_operator_flags(norms, of);
    norms->add_option("--q", q, "integrability exponent")->capture_default_str();
    norms->add_option("--alpha", alpha, "Holder exponent")->capture_default_str();
    norms->add_option("--variant", variant, "standard | star | hat")
        ->check(CLI::IsMember({"standard", "star", "hat"}))
        ->capture_default_str();
    norms->add_option("--kappa", kappa_M, "base scale for the hat variant");
    norms->add_option("--M-radius-factor", M_factor, "M on B_{factor R}")->capture_default_str();

    // solve
    int m = 2048, levels = 1;
    auto* solve = app.add_subcommand("solve", "Dirichlet solve with profile statistics");
    add_operator_flags(solve, of);
    solve->add_option("--m", m, "interior grid points")->check(CLI::Range(4, 1 << 22))->capture_default_str();
    solve->add_option("--levels", levels, "Richardson levels")->check(CLI::Range(1, 8))->capture_default_str();

    // eig
    auto* eig = app.add_subcommand("eig", "principal eigenvalue");
    add_operator_flags(eig, of);
    eig->add_option("--m", m, "interior grid points per axis")->check(CLI::Range(4, 1 << 22))->capture_default_str();

    // check
    std::string check;
    std::vector<double> params;
    std::vector<double> radii;
    std::string xvar;
    double kappa = 1.0;
    bool exact = false;
    auto* chk = app.add_subcommand("check", "one estimate over a parameter sweep");
    chk->add_option("theorem", check, "linfty | grad | grad-holder | hopf | loggrad | harnack | eig-lower | eig-upper | landis")
        ->required();
    chk->add_option("--family", of.family, "closed-form family")->required();
    chk->add_option("--params,--j,--lambda,--eps", params, "sweep parameters, increasing")->delimiter(',');
    chk->add_option("--radii", radii, "radii for landis")->delimiter(',');
    chk->add_option("--n", of.n, "dimension")->check(CLI::Range(1, 10))->capture_default_str();
    chk->add_option("--q", q, "integrability exponent")->capture_default_str();
    chk->add_option("--alpha", alpha, "Holder exponent")->capture_default_str();
    chk->add_option("--m", m, "interior grid points")->check(CLI::Range(4, 1 << 22))->capture_default_str();
    chk->add_option("--levels", levels, "Richardson levels")->check(CLI::Range(1, 8))->capture_default_str();
    chk->add_option("--kappa", kappa, "outer margin for eigenvalue bounds")->capture_default_str();
    chk->add_option("--M-radius-factor", M_factor, "M on B_{factor R}")->capture_default_str();
    chk->add_flag("--exact", exact, "closed-form nodal values instead of a solve");
    chk->add_option("--x", xvar, "fit variable: M | MR | j | lambda | R");

    // cover
    double r = 0.25;
    int samples = 10000;
    auto* cover = app.add_subcommand("cover", "covering of a ball with chain audit");
    cover->add_option("--n", of.n, "dimension")->check(CLI::Range(2, 3))->capture_default_str();
    cover->add_option("--R", of.R, "ball radius")->check(CLI::PositiveNumber)->capture_default_str();
    cover->add_option("--r", r, "covering radius")->check(CLI::PositiveNumber)->capture_default_str();
    cover->add_option("--samples", samples, "coverage audit samples")->check(CLI::Range(10, 10000000))
        ->capture_default_str();

    // green
    std::vector<int> ms{256, 512, 1024};
    auto* green = app.add_subcommand("green", "Green identity residual under refinement");
    add_operator_flags(green, of);
    green->add_option("--m", ms, "grid sizes, increasing")->delimiter(',')->capture_default_str();

    // residuals
    auto* resid = app.add_subcommand("residuals", "closed-form residual audit of every family");
    resid->add_option("--samples", samples, "samples per family")->check(CLI::Range(10, 10000000))
        ->capture_default_str();

    for (auto* sub : {norms, solve, eig, chk, cover, green, resid})
        sub->add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_code::ok : exit_code::usage;
    }

    CLI::App* sub = app.get_subcommands().front();
    RunReport rep;
    rep.command = sub->get_name();
    collect_config(sub, rep.config);
    opt.m = m;
    opt.levels = levels;
    opt.q = q;
    opt.alpha = alpha;
    opt.M_radius_factor = M_factor;

    try {
        if (sub == norms) {
            if (format.empty()) format = "json";
            const ClosedFormCase cs = build_case(of);
            const Domain dom = domain_for(cs.spec);
            MVariant v = variant == "star" ? MVariant::star : variant == "hat" ? MVariant::hat : MVariant::standard;
            CheckOptions o = opt;
            const double RM = cs.spec.R * M_factor;
            const Domain domM = cs.spec.geom == Geometry::line ? interval(RM) : ball(cs.spec.n, RM);
            OperatorSpec sM = cs.spec;
            sM.R = RM;
            const NormBreakdown nb = compute_M(sM, domM, q, alpha, o.quad, v, kappa_M);
            rep.records.push_back({{"M", nb.M},
                                   {"r0", nb.r0},
                                   {"r_Omega", nb.r_Omega},
                                   {"beta_q", nb.beta_q},
                                   {"gamma_q", nb.gamma_q},
                                   {"holder_A", nb.holder_A},
                                   {"b1_sup", nb.b1_sup},
                                   {"holder_b1", nb.holder_b1},
                                   {"b2_ul", nb.b2_ul},
                                   {"b12_ul", nb.b12_ul},
                                   {"c_ul", nb.c_ul},
                                   {"bisection_iterations", static_cast<double>(nb.bisection_iterations)},
                                   {"domain_radius", dom.R}});
            common_provenance(rep.provenance, opt);
            rep.provenance.emplace_back("checks", "coefficient-scale");
            rep.provenance.emplace_back("conventions.M_domain", "B_{" + format_number(M_factor) + " R}");
            rep.provenance.emplace_back("variant", to_string(v));
        } else if (sub == solve) {
            if (format.empty()) format = "json";
            const ClosedFormCase cs = build_case(of);
            const DiscreteSolution u = of.family.empty()
                                           ? (levels > 1 ? solve_dirichlet_extrapolated(cs.spec, RadialGrid(cs.spec, m),
                                                                                        cs.f, levels)
                                                         : solve_dirichlet(cs.spec, RadialGrid(cs.spec, m), cs.f))
                                           : solve_case(cs, opt);
            const ProfileStats st = profile_stats(u);
            Record rec{{"m", static_cast<double>(u.grid.m)},
                       {"h", u.grid.h},
                       {"sup_u", st.sup_u},
                       {"sup_u_over_d", st.sup_u_over_d},
                       {"inf_u_over_d", st.inf_u_over_d},
                       {"sup_grad", st.sup_grad},
                       {"normal_derivative", st.normal_derivative},
                       {"weak_harnack_quasinorm", st.weak_harnack_quasinorm},
                       {"holder_grad", st.holder_grad}};
            if (!of.family.empty()) {
                double e = 0.0;
                for (int i = 0; i < u.x.size(); ++i) e = std::max(e, std::abs(u.u(i) - cs.u(u.x(i))));
                rec.emplace_back("max_error", e);
            }
            rep.records.push_back(rec);
            common_provenance(rep.provenance, opt);
            rep.provenance.emplace_back("checks", "dirichlet-solve");
            rep.provenance.emplace_back("levels", static_cast<double>(levels));
        } else if (sub == eig) {
            if (format.empty()) format = "json";
            if (of.family.empty() && of.domain == "square") {
                OperatorSpec2d s2;
                s2.R = of.R;
                s2.c = -of.potential;
                s2.b2 = Eigen::Vector2d(of.drift[0], of.drift[1]);
                Grid2d g{of.R, m};
                const Eigen2dResult res = eigen2d(s2, g);
                rep.records.push_back({{"lambda1", res.lambda1},
                                       {"iterations", static_cast<double>(res.iterations)},
                                       {"residual", res.residual},
                                       {"m", static_cast<double>(m)}});
            } else {
                const ClosedFormCase cs = build_case(of);
                const RadialGrid grid(cs.spec, m);
                const EigenResult res = principal_eigen(cs.spec, grid);
                rep.records.push_back({{"lambda1", res.lambda1},
                                       {"iterations", static_cast<double>(res.iterations)},
                                       {"restarts", static_cast<double>(res.restarts)},
                                       {"residual", res.residual},
                                       {"m", static_cast<double>(m)}});
                if (cs.ground_state) rep.records.back().emplace_back("lambda1_conjugated",
                                                                    principal_eigenvalue(cs, grid));
            }
            rep.provenance.emplace_back("checks", "principal-eigenvalue");
            rep.provenance.emplace_back("tolerance", 1e-12);
        } else if (sub == chk) {
            if (format.empty()) format = "csv";
            require_family(of.family);
            const XVariable x = xvar.empty() ? default_x(check, of.family) : parse_xvariable(xvar);
            if (check == "landis") {
                const ClosedFormCase cs = make_case(of.family, params.empty() ? 1.0 : params.front(), of.n);
                if (radii.empty()) throw UsageError("landis needs --radii");
                for (const LandisRow& L : check_landis(cs, radii)) {
                    CheckRow row;
                    row.param = L.R;
                    row.M = row.r0 = row.MR = std::nan("");
                    row.lhs = L.surface;
                    row.rhs_core = L.volume;
                    row.implied_const = L.ratio;
                    row.log_implied = std::log(L.ratio);
                    row.degenerate = !(L.ratio > 0);
                    rep.rows.push_back(row);
                }
            } else {
                const auto& names = check_names();
                if (std::find(names.begin(), names.end(), check) == names.end())
                    throw UsageError("unknown check '" + check + "'; valid: " + join(names) + ", landis");
                if (params.empty()) throw UsageError("check needs --params");
                SweepConfig cfg;
                cfg.family = of.family;
                cfg.check = check;
                cfg.params = params;
                cfg.n = of.n;
                cfg.kappa = kappa;
                cfg.exact_samples = exact;
                cfg.options = opt;
                rep.rows = sweep(cfg);
            }
            for (const auto& row : rep.rows) rep.hypothesis_failed = rep.hypothesis_failed || row.hypothesis_failed;
            add_fit(rep, x);
            common_provenance(rep.provenance, opt);
            rep.provenance.emplace_back("checks", check_tag(check));
            rep.provenance.emplace_back("m", static_cast<double>(m));
            rep.provenance.emplace_back("levels", static_cast<double>(levels));
            rep.provenance.emplace_back("conventions.M_domain", check == "eig-lower"
                                                                    ? "B_{R + kappa}"
                                                                    : "B_{" + format_number(M_factor) + " R}");
        } else if (sub == cover) {
            if (format.empty()) format = "json";
            const Covering cov = build_cover(ball(of.n, of.R), r);
            const CoverageAudit ca = audit_coverage(cov, samples);
            const ChainAudit ch = audit_chains(cov);
            rep.records.push_back({{"I", static_cast<double>(cov.size())},
                                   {"N_observed", static_cast<double>(ch.N_observed)},
                                   {"bounds.lower", ch.lower_bound},
                                   {"bounds.upper", ch.upper_bound},
                                   {"c0", cov.c0},
                                   {"c1", ch.c1},
                                   {"eps", cov.eps},
                                   {"connected", ch.connected ? 1.0 : 0.0},
                                   {"coverage.samples", static_cast<double>(ca.samples)},
                                   {"coverage.uncovered", static_cast<double>(ca.uncovered)},
                                   {"coverage.worst_ratio", ca.worst_ratio}});
            rep.hypothesis_failed = ca.uncovered > 0 || !ch.connected;
            rep.provenance.emplace_back("checks", "harnack-chain-covering");
            rep.provenance.emplace_back("coverage_radius", "5r/6");
            rep.provenance.emplace_back("chain_step", "11r/6");
        } else if (sub == green) {
            if (format.empty()) format = "json";
            for (std::size_t i = 1; i < ms.size(); ++i)
                if (ms[i] <= ms[i - 1]) throw UsageError("--m must increase");
            const ClosedFormCase cs = build_case(of);
            const OperatorSpec& spec = cs.spec;
            const double R = spec.R;
            // u arbitrary, v vanishing on the boundary
            Profile u, v;
            u.f = [](double x) { return std::cos(x) + 0.3 * x * x; };
            u.df = [](double x) { return -std::sin(x) + 0.6 * x; };
            u.d2f = [](double x) { return -std::cos(x) + 0.6; };
            v.f = [R](double x) { return (R * R - x * x) * std::exp(x / R); };
            v.df = [R](double x) { return (-2 * x + (R * R - x * x) / R) * std::exp(x / R); };
            v.d2f = [R](double x) { return (-2 - 4 * x / R + (R * R - x * x) / (R * R)) * std::exp(x / R); };
            std::vector<double> lh, lr;
            for (int mm : ms) {
                const RadialGrid g(spec, mm);
                const GreenAudit ga = green_identity_residual(spec, g, sample(u, g), sample(v, g));
                rep.records.push_back({{"m", static_cast<double>(mm)},
                                       {"h", g.h},
                                       {"volume", ga.volume},
                                       {"boundary", ga.boundary},
                                       {"residual", ga.residual}});
                lh.push_back(-std::log(g.h));
                lr.push_back(-std::log(ga.residual));
            }
            if (ms.size() >= 2) rep.fits.push_back({"-log h", "-log residual", fit_line(lh, lr)});
            rep.provenance.emplace_back("checks", "green-identity");
            rep.provenance.emplace_back("seed", std::to_string(of.seed));
        } else if (sub == resid) {
            if (format.empty()) format = "json";
            bool all = true;
            for (const ClosedFormCase& cs : all_reference_cases()) {
                const double res = residual(cs, samples);
                const bool ok = res <= cs.residual_tol;
                all = all && ok;
                rep.records.push_back({{"family", cs.name},
                                       {"param", cs.param},
                                       {"n", static_cast<double>(cs.spec.n)},
                                       {"residual", res},
                                       {"tolerance", cs.residual_tol},
                                       {"pass", ok ? 1.0 : 0.0}});
            }
            rep.hypothesis_failed = !all;
            rep.provenance.emplace_back("checks", "closed-form-residuals");
            rep.provenance.emplace_back("samples", static_cast<double>(samples));
        }
        return finish(rep, format, out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return exit_code::usage;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << '\n';
        return exit_code::usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::internal;
    }
}

}  // namespace ellcheck
