#pragma once

#include <cmath>
#include <stdexcept>

#include <Eigen/Core>

namespace ellcheck {

// Tridiagonal matrix K with entries lower(i) = K(i,i-1), upper(i) = K(i,i+1).
// lower(0) and upper(N-1) hold couplings to eliminated Dirichlet nodes: they
// do not multiply an unknown but are part of the row.  excess(i) is the full
// row sum, so that diag(i) = excess(i) - lower(i) - upper(i).
template <typename Scalar>
struct Tridiag {
    using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
    Vec lower, diag, upper, excess;

    explicit Tridiag(Eigen::Index n = 0)
        : lower(Vec::Zero(n)), diag(Vec::Zero(n)), upper(Vec::Zero(n)), excess(Vec::Zero(n)) {}

    Eigen::Index size() const { return diag.size(); }

    Vec apply(const Vec& x) const {
        const Eigen::Index n = size();
        Vec y(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            Scalar s = diag(i) * x(i);
            if (i > 0) s += lower(i) * x(i - 1);
            if (i + 1 < n) s += upper(i) * x(i + 1);
            y(i) = s;
        }
        return y;
    }

    // Same product written as excess*x plus differences; loses less when
    // K x is small compared with the entries.
    Vec apply_differences(const Vec& x) const {
        const Eigen::Index n = size();
        Vec y(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            Scalar s = excess(i) * x(i);
            s += lower(i) * ((i > 0 ? x(i - 1) : Scalar(0)) - x(i));
            s += upper(i) * ((i + 1 < n ? x(i + 1) : Scalar(0)) - x(i));
            y(i) = s;
        }
        return y;
    }

    Tridiag transpose() const {
        const Eigen::Index n = size();
        Tridiag t(n);
        t.diag = diag;
        for (Eigen::Index i = 0; i + 1 < n; ++i) {
            t.upper(i) = lower(i + 1);
            t.lower(i + 1) = upper(i);
        }
        t.lower(0) = lower(0);
        t.upper(n - 1) = upper(n - 1);
        for (Eigen::Index i = 0; i < n; ++i) t.excess(i) = t.diag(i) + t.lower(i) + t.upper(i);
        return t;
    }
};

struct ResonanceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Solves (K - shift * W) x = rhs by elimination on the excess form.  When K
// is an M-matrix with nonnegative excess the pivots are built from sums of
// nonnegative terms only, which keeps tiny eigenvalues resolvable.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> solve_excess(
    const Tridiag<Scalar>& K, const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& rhs,
    Scalar shift = Scalar(0),
    const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>* weights = nullptr,
    Scalar pivot_tol = Scalar(1e-13)) {
    using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
    using std::abs;
    const Eigen::Index n = K.size();
    Vec ex(n), piv(n), y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        Scalar e = K.excess(i);
        if (weights && shift != Scalar(0)) e -= shift * (*weights)(i);
        const Scalar scale = abs(K.diag(i)) + abs(K.lower(i)) + abs(K.upper(i));
        if (i == 0) {
            e -= K.lower(0);
            y(0) = rhs(0);
        } else {
            const Scalar m = K.lower(i) / piv(i - 1);
            e -= m * ex(i - 1);
            y(i) = rhs(i) - m * y(i - 1);
        }
        ex(i) = e;
        piv(i) = e - K.upper(i);
        if (!(abs(piv(i)) > pivot_tol * scale))
            throw ResonanceError("near-singular pivot at row " + std::to_string(i));
    }
    Vec x(n);
    x(n - 1) = y(n - 1) / piv(n - 1);
    for (Eigen::Index i = n - 2; i >= 0; --i) x(i) = (y(i) - K.upper(i) * x(i + 1)) / piv(i);
    return x;
}

// Plain Thomas algorithm on (lower, diag, upper).
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> solve_thomas(
    const Tridiag<Scalar>& K, const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& rhs) {
    using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
    const Eigen::Index n = K.size();
    Vec cp(n), dp(n);
    Scalar beta = K.diag(0);
    if (beta == Scalar(0)) throw ResonanceError("zero pivot");
    cp(0) = K.upper(0) / beta;
    dp(0) = rhs(0) / beta;
    for (Eigen::Index i = 1; i < n; ++i) {
        beta = K.diag(i) - K.lower(i) * cp(i - 1);
        if (beta == Scalar(0)) throw ResonanceError("zero pivot");
        cp(i) = K.upper(i) / beta;
        dp(i) = (rhs(i) - K.lower(i) * dp(i - 1)) / beta;
    }
    Vec x(n);
    x(n - 1) = dp(n - 1);
    for (Eigen::Index i = n - 2; i >= 0; --i) x(i) = dp(i) - cp(i) * x(i + 1);
    return x;
}

}  // namespace ellcheck
