#include <towsim/numerics.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

namespace towsim::numerics {
namespace {

TEST(GaussLegendre, OnePointIsMidpoint) {
    const Quadrature q = gauss_legendre(1);
    ASSERT_EQ(q.points(), 1u);
    EXPECT_DOUBLE_EQ(q.nodes[0], 0.0);
    EXPECT_DOUBLE_EQ(q.weights[0], 2.0);
}

TEST(GaussLegendre, FivePointTable) {
    // numpy.polynomial.legendre.leggauss(5)
    const double nodes[] = {-0.906179845938664, -0.5384693101056831, 0.0, 0.5384693101056831,
                            0.906179845938664};
    const double weights[] = {0.23692688505618942, 0.4786286704993662, 0.568888888888889,
                              0.4786286704993662, 0.23692688505618942};
    const Quadrature q = gauss_legendre(5);
    ASSERT_EQ(q.points(), 5u);
    for (int i = 0; i < 5; ++i) {
        EXPECT_NEAR(q.nodes[i], nodes[i], 1e-15);
        EXPECT_NEAR(q.weights[i], weights[i], 1e-15);
    }
}

TEST(GaussLegendre, WeightsSumToTwoAndNodesSymmetric) {
    for (int n = 1; n <= 20; ++n) {
        const Quadrature q = gauss_legendre(n);
        double sum = 0.0;
        for (double w : q.weights)
            sum += w;
        EXPECT_NEAR(sum, 2.0, 1e-12) << n;
        for (int i = 0; i < n; ++i)
            EXPECT_EQ(q.nodes[i], -q.nodes[n - 1 - i]) << n;
    }
}

TEST(GaussLegendre, RejectsZeroPoints) {
    EXPECT_THROW(gauss_legendre(0), std::invalid_argument);
    EXPECT_THROW(gauss_legendre(3, 0), std::invalid_argument);
}

TEST(GaussLegendre, ExactForDegreeUpTo2nMinus1) {
    for (int n = 1; n <= 8; ++n) {
        const Quadrature q = gauss_legendre(n);
        for (int deg = 0; deg <= 2 * n - 1; ++deg) {
            const double got = integrate(q, [deg](double x) { return std::pow(x, deg); }, 0.0, 1.0);
            const double want = 1.0 / (deg + 1.0);
            EXPECT_NEAR(got, want, 1e-12 * want) << "n=" << n << " deg=" << deg;
        }
    }
}

TEST(Integrate, NinthPowerOnUnitInterval) {
    EXPECT_NEAR(integrate(gauss_legendre(5), [](double x) { return std::pow(x, 9); }, 0.0, 1.0), 0.1, 1e-15);
}

TEST(Integrate, CubicOnZeroToTen) {
    EXPECT_NEAR(integrate(gauss_legendre(5), [](double r) { return r * r * r; }, 0.0, 10.0), 2500.0, 1e-10);
}

TEST(Integrate, Constant) {
    EXPECT_NEAR(integrate(gauss_legendre(5, 3), [](double) { return 4.5; }, 0.0, 7.0), 31.5, 1e-12);
}

TEST(Integrate, SineWithFourPanels) {
    const double got = integrate(gauss_legendre(5, 4), [](double x) { return std::sin(x); }, 0.0, std::numbers::pi);
    EXPECT_NEAR(got, 2.0, 1e-9);
}

Matrix from(std::initializer_list<std::initializer_list<double>> rows) {
    Matrix m(rows.size());
    std::size_t r = 0;
    for (const auto &row : rows) {
        std::size_t c = 0;
        for (double v : row)
            m(r, c++) = v;
        ++r;
    }
    return m;
}

TEST(SolveDense, Identity) {
    const auto x = solve_dense(from({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}), {1, 2, 3});
    EXPECT_EQ(x, (std::vector<double>{1, 2, 3}));
}

TEST(SolveDense, NeedsPivoting) {
    const auto x = solve_dense(from({{0, 1}, {1, 0}}), {1, 2});
    EXPECT_DOUBLE_EQ(x[0], 2.0);
    EXPECT_DOUBLE_EQ(x[1], 1.0);
}

TEST(SolveDense, SingularThrows) {
    EXPECT_THROW(solve_dense(from({{1, 2}, {2, 4}}), {1, 1}), SingularMatrixError);
    EXPECT_THROW(solve_dense(from({{0, 0}, {0, 0}}), {0, 0}), SingularMatrixError);
}

double det2(const Matrix &m) { return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0); }
double det3(const Matrix &m) {
    return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
           m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

TEST(SolveDense, MatchesCramerOnRandomSystems) {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + trial % 2;
        Matrix m(n);
        std::vector<double> b(n);
        for (std::size_t r = 0; r < n; ++r) {
            b[r] = u(rng);
            for (std::size_t c = 0; c < n; ++c)
                m(r, c) = u(rng) + (r == c ? 2.0 : 0.0);
        }
        const auto x = solve_dense(m, b);
        const double d = n == 2 ? det2(m) : det3(m);
        for (std::size_t k = 0; k < n; ++k) {
            Matrix mk = m;
            for (std::size_t r = 0; r < n; ++r)
                mk(r, k) = b[r];
            const double cramer = (n == 2 ? det2(mk) : det3(mk)) / d;
            EXPECT_NEAR(x[k], cramer, 1e-10);
        }
    }
}

TEST(SolveDense, RoundTripResidual) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (int trial = 0; trial < 100; ++trial) {
        Matrix m(3);
        std::vector<double> x(3);
        for (std::size_t r = 0; r < 3; ++r) {
            x[r] = u(rng);
            for (std::size_t c = 0; c < 3; ++c)
                m(r, c) = u(rng);
        }
        const auto b = m.apply(x);
        const auto got = solve_dense(m, b);
        const auto back = m.apply(got);
        double bnorm = 0.0;
        for (double v : b)
            bnorm = std::max(bnorm, std::abs(v));
        for (std::size_t r = 0; r < 3; ++r)
            EXPECT_LE(std::abs(back[r] - b[r]), 1e-10 * (1.0 + bnorm));
    }
}

TEST(Rk4, ZeroDerivativeLeavesStateUnchanged) {
    const std::vector<double> y{1.5, -2.0};
    const auto next = rk4_step([](double, const std::vector<double> &v) { return std::vector<double>(v.size(), 0.0); },
                               0.0, y, 0.3);
    EXPECT_EQ(next, y);
}

TEST(Rk4, ExponentialMatchesTaylorPolynomial) {
    const double h = 0.1;
    const auto next = rk4_step([](double, const std::vector<double> &v) { return v; }, 0.0, {1.0}, h);
    const double taylor = 1.0 + h + h * h / 2.0 + h * h * h / 6.0 + h * h * h * h / 24.0;
    EXPECT_NEAR(next[0], taylor, 1e-15);
    EXPECT_NEAR(next[0], 1.1051708333333334, 1e-15);
}

TEST(Rk4, DecayIsMonotoneForStableSteps) {
    for (double dt : {0.01, 0.1, 0.5, 1.0}) {
        std::vector<double> y{1.0};
        for (int k = 0; k < 200; ++k) {
            const auto next =
                rk4_step([](double, const std::vector<double> &v) { return std::vector<double>{-v[0]}; }, 0.0, y, dt);
            EXPECT_LE(std::abs(next[0]), std::abs(y[0]));
            y = next;
        }
    }
}

TEST(Rk4, FourthOrderOnTimeDependentProblem) {
    // y' = cos t, y(0) = 0  ->  y(2) = sin 2
    auto run = [](double dt) {
        std::vector<double> y{0.0};
        const int n = static_cast<int>(std::lround(2.0 / dt));
        for (int k = 0; k < n; ++k)
            y = rk4_step([](double t, const std::vector<double> &) { return std::vector<double>{std::cos(t)}; },
                         k * dt, y, dt);
        return std::abs(y[0] - std::sin(2.0));
    };
    const double order = std::log2(run(0.1) / run(0.05));
    EXPECT_NEAR(order, 4.0, 0.1);
}

TEST(Rk4, RejectsNonPositiveStep) {
    auto f = [](double, const std::vector<double> &v) { return v; };
    EXPECT_THROW(rk4_step(f, 0.0, {1.0}, 0.0), std::invalid_argument);
}

} // namespace
} // namespace towsim::numerics
