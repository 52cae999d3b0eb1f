#include "ellcheck/cover.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <random>
#include <stdexcept>

namespace ellcheck {

namespace {

constexpr double pi = std::numbers::pi;

// Uniform points on the sphere of radius R in R^n, spacing about s.
std::vector<Eigen::VectorXd> sphere_net(int n, double R, double s) {
    std::vector<Eigen::VectorXd> out;
    if (n == 2) {
        const int K = std::max(3, static_cast<int>(std::ceil(2 * pi * R / s)));
        for (int k = 0; k < K; ++k) {
            const double t = 2 * pi * k / K;
            out.push_back(Eigen::Vector2d(R * std::cos(t), R * std::sin(t)));
        }
    } else {
        // Fibonacci sphere, one point per s^2 of area
        const int K = std::max(4, static_cast<int>(std::ceil(4 * pi * R * R / (s * s))));
        const double golden = pi * (3.0 - std::sqrt(5.0));
        for (int k = 0; k < K; ++k) {
            const double z = 1.0 - (2.0 * k + 1.0) / K;
            const double rho = std::sqrt(1.0 - z * z), t = golden * k;
            out.push_back(Eigen::Vector3d(R * rho * std::cos(t), R * rho * std::sin(t), R * z));
        }
    }
    return out;
}

// Cubic lattice points of spacing s inside the closed ball of radius R.
std::vector<Eigen::VectorXd> lattice(int n, double R, double s) {
    std::vector<Eigen::VectorXd> out;
    const int K = static_cast<int>(std::floor(R / s));
    Eigen::VectorXi idx = Eigen::VectorXi::Constant(n, -K);
    while (true) {
        const Eigen::VectorXd x = idx.cast<double>() * s;
        if (x.norm() <= R) out.push_back(x);
        int d = 0;
        while (d < n && ++idx(d) > K) idx(d++) = -K;
        if (d == n) break;
    }
    return out;
}

}  // namespace

double unit_ball_volume(int n) { return std::pow(pi, n / 2.0) / std::tgamma(n / 2.0 + 1.0); }

double intersection_volume(double d, double r1, double r2, int n) {
    if (n != 2 && n != 3) throw std::invalid_argument("closed-form intersection only for n = 2, 3");
    if (d < 0 || r1 <= 0 || r2 <= 0) throw std::invalid_argument("distances and radii must be positive");
    if (d >= r1 + r2) return 0.0;
    const double rmin = std::min(r1, r2);
    if (d <= std::abs(r1 - r2)) return unit_ball_volume(n) * std::pow(rmin, n);
    if (n == 2) {
        const double a1 = std::acos(std::clamp((d * d + r1 * r1 - r2 * r2) / (2 * d * r1), -1.0, 1.0));
        const double a2 = std::acos(std::clamp((d * d + r2 * r2 - r1 * r1) / (2 * d * r2), -1.0, 1.0));
        const double k = (-d + r1 + r2) * (d + r1 - r2) * (d - r1 + r2) * (d + r1 + r2);
        return r1 * r1 * a1 + r2 * r2 * a2 - 0.5 * std::sqrt(std::max(0.0, k));
    }
    const double s = r1 + r2 - d;
    return pi * s * s * (d * d + 2 * d * (r1 + r2) - 3 * (r1 - r2) * (r1 - r2)) / (12 * d);
}

double lens_volume(double d, double r, int n) {
    if (n != 2 && n != 3) throw std::invalid_argument("lens volume in closed form only for n = 2, 3");
    return intersection_volume(d, r, r, n);
}

double lens_volume_mc(double d, double r, int n, int samples, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("dimension must be >= 1");
    if (d >= 2 * r) return 0.0;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int hits = 0;
    Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
    e(0) = d;
    for (int k = 0; k < samples; ++k) {
        Eigen::VectorXd x(n);
        for (int i = 0; i < n; ++i) x(i) = g(rng);
        x *= r * std::pow(u(rng), 1.0 / n) / x.norm();
        if ((x - e).norm() <= r) ++hits;
    }
    return unit_ball_volume(n) * std::pow(r, n) * hits / samples;
}

Covering build_cover(const Domain& dom, double r) {
    if (dom.kind != DomainKind::ball) throw std::invalid_argument("coverings are built on balls only");
    const int n = dom.n;
    if (n != 2 && n != 3) throw std::invalid_argument("coverings support n = 2, 3");
    const double R = dom.R;
    if (!(r > 0)) throw std::invalid_argument("covering radius must be positive");
    if (r > R / 2) throw std::invalid_argument("covering radius too large: need r <= R/2");

    Covering cov;
    cov.r = r;
    cov.domain = dom;
    const double s = r / 2;
    const double depth = 1.5 * r;

    std::vector<Eigen::VectorXd> cand;
    std::vector<CenterKind> kinds;
    for (auto& x : sphere_net(n, R, s)) {
        cand.push_back(x);
        kinds.push_back(CenterKind::boundary);
    }
    for (auto& z : lattice(n, R, s)) {
        const double rho = z.norm(), d = R - rho;
        if (d >= depth) {
            cand.push_back(z);
            kinds.push_back(CenterKind::interior);
        } else if (d >= depth / 2 && R - depth > 0) {
            // shell point pushed inward to depth 3r/2
            cand.push_back(rho > 0 ? Eigen::VectorXd(z * ((R - depth) / rho)) : z);
            kinds.push_back(CenterKind::interior);
        }
        // shallower shell points are served by the boundary net
    }
    // greedy thinning at separation eps r
    const double sep = cov.eps * r;
    for (std::size_t i = 0; i < cand.size(); ++i) {
        bool keep = true;
        for (const auto& y : cov.centers)
            if ((cand[i] - y).norm() < sep) {
                keep = false;
                break;
            }
        if (keep) {
            cov.centers.push_back(cand[i]);
            cov.kind.push_back(kinds[i]);
        }
    }
    cov.c0 = std::numeric_limits<double>::infinity();
    for (const auto& x : cov.centers)
        cov.c0 = std::min(cov.c0, intersection_volume(x.norm(), r, R, n) / std::pow(r, n));
    return cov;
}

namespace {

std::vector<std::vector<int>> overlap_graph(const Covering& cov) {
    const int I = cov.size();
    const double reach = 11.0 * cov.r / 6.0;
    std::vector<std::vector<int>> adj(I);
    for (int i = 0; i < I; ++i)
        for (int j = i + 1; j < I; ++j)
            if ((cov.centers[i] - cov.centers[j]).norm() <= reach) {
                adj[i].push_back(j);
                adj[j].push_back(i);
            }
    return adj;
}

std::vector<int> bfs(const std::vector<std::vector<int>>& adj, int src, std::vector<int>* parent) {
    std::vector<int> dist(adj.size(), -1);
    if (parent) parent->assign(adj.size(), -1);
    std::deque<int> queue{src};
    dist[src] = 0;
    while (!queue.empty()) {
        const int v = queue.front();
        queue.pop_front();
        for (int w : adj[v])
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                if (parent) (*parent)[w] = v;
                queue.push_back(w);
            }
    }
    return dist;
}

}  // namespace

std::vector<int> chain(const Covering& cov, int k, int l) {
    const int I = cov.size();
    if (k < 0 || l < 0 || k >= I || l >= I) throw std::out_of_range("chain index out of range");
    if (k == l) return {k, k};
    std::vector<int> parent;
    const auto dist = bfs(overlap_graph(cov), k, &parent);
    if (dist[l] < 0) throw std::logic_error("overlap graph is disconnected; covering is invalid");
    std::vector<int> path{l};
    while (path.back() != k) path.push_back(parent[path.back()]);
    std::reverse(path.begin(), path.end());
    return path;
}

CoverageAudit audit_coverage(const Covering& cov, int target_samples) {
    const int n = cov.domain.n;
    const double R = cov.domain.R;
    // lattice spacing giving about target_samples points in the ball
    const double vol = unit_ball_volume(n) * std::pow(R, n);
    const double s = std::pow(vol / target_samples, 1.0 / n);
    CoverageAudit audit;
    const double reach = 5.0 * cov.r / 6.0;
    auto check = [&](const Eigen::VectorXd& x) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& c : cov.centers) best = std::min(best, (x - c).norm());
        ++audit.samples;
        if (best > reach) ++audit.uncovered;
        audit.worst_ratio = std::max(audit.worst_ratio, best / cov.r);
    };
    for (auto& x : lattice(n, R, s)) check(x);
    // the boundary itself
    for (auto& x : sphere_net(n, R, s)) check(x);
    return audit;
}

ChainAudit audit_chains(const Covering& cov) {
    ChainAudit a;
    const double D = cov.domain.geodesic_diameter();
    a.lower_bound = D / (2 * cov.r);
    a.upper_bound = 2 + 6 * D / cov.r;
    const auto adj = overlap_graph(cov);
    const int n = cov.domain.n;
    a.c1 = std::numeric_limits<double>::infinity();
    for (int i = 0; i < cov.size(); ++i)
        for (int j : adj[i])
            a.c1 = std::min(a.c1, lens_volume((cov.centers[i] - cov.centers[j]).norm(), cov.r, n) / std::pow(cov.r, n));
    for (int i = 0; i < cov.size(); ++i) {
        const auto dist = bfs(adj, i, nullptr);
        for (int d : dist) {
            if (d < 0) a.connected = false;
            a.N_observed = std::max(a.N_observed, d + 1);  // balls in the chain
        }
    }
    return a;
}

}  // namespace ellcheck
