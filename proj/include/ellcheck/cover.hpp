#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "ellcheck/profile.hpp"

namespace ellcheck {

enum class CenterKind { interior, boundary };

// Centers x_j with either dist(x_j, boundary) >= 3r/2 or x_j on the boundary,
// pairwise at least eps r apart, whose balls B_{5r/6}(x_j) cover the ball.
struct Covering {
    double r = 0.0;
    double eps = 1.0 / 30.0;
    Domain domain;
    std::vector<Eigen::VectorXd> centers;
    std::vector<CenterKind> kind;
    double c0 = 0.0;  // min_j |Omega cap B_r(x_j)| / r^n

    int size() const { return static_cast<int>(centers.size()); }
};

Covering build_cover(const Domain& dom, double r);

// Shortest overlap chain from k to l; edges join centers at distance <= 11r/6.
std::vector<int> chain(const Covering& cov, int k, int l);

struct CoverageAudit {
    int samples = 0;
    int uncovered = 0;
    double worst_ratio = 0.0;  // max over samples of dist to nearest center, over r
};

// Lattice samples of the ball tested against the union of B_{5r/6}(x_j).
CoverageAudit audit_coverage(const Covering& cov, int target_samples = 10000);

struct ChainAudit {
    int N_observed = 0;       // longest shortest chain over all pairs
    double lower_bound = 0.0; // D / (2r)
    double upper_bound = 0.0; // 2 + 6 D / r
    double c1 = 0.0;          // min lens volume / r^n over consecutive pairs
    bool connected = true;
};

ChainAudit audit_chains(const Covering& cov);

// |B_r(x) cap B_r(y)| with |x - y| = d, for n in {2, 3}.
double lens_volume(double d, double r, int n);
// |B_r1 cap B_r2| with centers d apart, for n in {2, 3}.
double intersection_volume(double d, double r1, double r2, int n);
// Monte Carlo estimate for any n, fixed seed.
double lens_volume_mc(double d, double r, int n, int samples = 200000, std::uint64_t seed = 12345);

// Volume of the unit ball in R^n.
double unit_ball_volume(int n);

}  // namespace ellcheck
