// Numerical kernels: Gauss-Legendre quadrature, dense linear solve, fixed-step RK4.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace towsim::numerics {

class SingularMatrixError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// n-point Gauss-Legendre rule on [-1, 1], optionally applied over `panels`
/// equal subintervals of the integration range.
struct Quadrature {
    std::vector<double> nodes;
    std::vector<double> weights;
    int panels = 1;

    std::size_t points() const { return nodes.size(); }
};

namespace detail {

// P_n(x) and P_n'(x) by the three-term recurrence.
inline void legendre(int n, double x, double &p, double &dp) {
    double p0 = 1.0;
    double p1 = x;
    if (n == 0) {
        p = 1.0;
        dp = 0.0;
        return;
    }
    for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
    }
    p = p1;
    dp = n * (x * p1 - p0) / (x * x - 1.0);
}

} // namespace detail

/// Roots of P_n by Newton iteration from the Chebyshev-like initial guess;
/// weights w_i = 2 / ((1 - x_i^2) P_n'(x_i)^2).
inline Quadrature gauss_legendre(int n, int panels = 1) {
    if (n < 1)
        throw std::invalid_argument("gauss_legendre: point count must be >= 1");
    if (panels < 1)
        throw std::invalid_argument("gauss_legendre: panel count must be >= 1");

    Quadrature q;
    q.panels = panels;
    q.nodes.assign(static_cast<std::size_t>(n), 0.0);
    q.weights.assign(static_cast<std::size_t>(n), 0.0);

    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double p = 0.0;
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            detail::legendre(n, x, p, dp);
            const double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16)
                break;
        }
        detail::legendre(n, x, p, dp);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        // ascending order, exact mirror symmetry
        q.nodes[static_cast<std::size_t>(i)] = -x;
        q.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
        q.weights[static_cast<std::size_t>(i)] = w;
        q.weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    if (n % 2 == 1)
        q.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
    return q;
}

/// Composite rule over [a, b]. `f` may return a double or any type closed
/// under `+` and scalar `*` (e.g. a small vector struct).
template <typename F>
auto integrate(const Quadrature &q, F &&f, double a, double b) {
    using Result = decltype(f(a));
    Result sum{};
    const double width = (b - a) / q.panels;
    const double half = 0.5 * width;
    for (int p = 0; p < q.panels; ++p) {
        const double mid = a + (p + 0.5) * width;
        Result panel{};
        for (std::size_t i = 0; i < q.nodes.size(); ++i)
            panel = panel + q.weights[i] * f(mid + half * q.nodes[i]);
        sum = sum + half * panel;
    }
    return sum;
}

/// Row-major dense square matrix.
class Matrix {
  public:
    Matrix() = default;
    explicit Matrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

    std::size_t size() const { return n_; }
    double &operator()(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * n_ + c]; }

    double norm_inf() const {
        double best = 0.0;
        for (std::size_t r = 0; r < n_; ++r) {
            double row = 0.0;
            for (std::size_t c = 0; c < n_; ++c)
                row += std::abs((*this)(r, c));
            best = std::max(best, row);
        }
        return best;
    }

    std::vector<double> apply(std::span<const double> x) const {
        std::vector<double> y(n_, 0.0);
        for (std::size_t r = 0; r < n_; ++r)
            for (std::size_t c = 0; c < n_; ++c)
                y[r] += (*this)(r, c) * x[c];
        return y;
    }

  private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

/// Gaussian elimination with partial pivoting. Throws SingularMatrixError when
/// a pivot falls below 1e-14 * ||M||_inf.
inline std::vector<double> solve_dense(Matrix m, std::vector<double> b) {
    const std::size_t n = m.size();
    if (n == 0 || b.size() != n)
        throw std::invalid_argument("solve_dense: dimension mismatch");
    const double tiny = 1e-14 * m.norm_inf();

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t r = k + 1; r < n; ++r)
            if (std::abs(m(r, k)) > std::abs(m(piv, k)))
                piv = r;
        if (!(std::abs(m(piv, k)) > tiny))
            throw SingularMatrixError("solve_dense: singular matrix (pivot " +
                                      std::to_string(m(piv, k)) + " in column " +
                                      std::to_string(k) + ")");
        if (piv != k) {
            for (std::size_t c = 0; c < n; ++c)
                std::swap(m(k, c), m(piv, c));
            std::swap(b[k], b[piv]);
        }
        for (std::size_t r = k + 1; r < n; ++r) {
            const double f = m(r, k) / m(k, k);
            if (f == 0.0)
                continue;
            for (std::size_t c = k; c < n; ++c)
                m(r, c) -= f * m(k, c);
            b[r] -= f * b[k];
        }
    }
    std::vector<double> x(n, 0.0);
    for (std::size_t k = n; k-- > 0;) {
        double s = b[k];
        for (std::size_t c = k + 1; c < n; ++c)
            s -= m(k, c) * x[c];
        x[k] = s / m(k, k);
    }
    return x;
}

/// Classical four-stage RK4 on a flat state vector.
/// `f(t, y)` returns dy/dt with the same length as y.
template <typename F>
std::vector<double> rk4_step(F &&f, double t, const std::vector<double> &y, double dt) {
    if (!(dt > 0.0))
        throw std::invalid_argument("rk4_step: dt must be positive");
    const std::size_t n = y.size();
    std::vector<double> tmp(n);

    const std::vector<double> k1 = f(t, y);
    for (std::size_t i = 0; i < n; ++i)
        tmp[i] = y[i] + 0.5 * dt * k1[i];
    const std::vector<double> k2 = f(t + 0.5 * dt, tmp);
    for (std::size_t i = 0; i < n; ++i)
        tmp[i] = y[i] + 0.5 * dt * k2[i];
    const std::vector<double> k3 = f(t + 0.5 * dt, tmp);
    for (std::size_t i = 0; i < n; ++i)
        tmp[i] = y[i] + dt * k3[i];
    const std::vector<double> k4 = f(t + dt, tmp);

    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = y[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    return out;
}

} // namespace towsim::numerics
