// Hand transcription of the moment balances for two cable segments plus an
// array (links 1, 2, 3 with lead nodes A, C, E), with the reaction terms
// written out explicitly:
//
//   link 1 about A:  Md1 + P_x l1 sin1 - P_y l1 cos1 = I1 a1 + m1 l1/2 (yA'' cos1 - xA'' sin1)
//                    P = m2 aG2 - D2 + F3
//   link 2 about C:  Md2 + F3_x l2 sin2 - F3_y l2 cos2 = I2 a2 + m2 l2/2 (yC'' cos2 - xC'' sin2)
//                    F3 = m3 aG3 - D3
//   link 3 about E:  Md3 = m3 l3^2/3 a3 + m3 l3/2 (yE'' cos3 - xE'' sin3)
//
// Solved two ways: Cramer's rule on the 3x3 system extracted from the
// residuals, and Gauss-Seidel iteration on the residuals themselves.
#pragma once

#include <towsim/hydro.hpp>
#include <towsim/model.hpp>
#include <towsim/numerics.hpp>
#include <towsim/shiptrack.hpp>

#include <array>
#include <cmath>
#include <stdexcept>

namespace oracle {

using Vec3 = std::array<double, 3>;

struct ThreeBody {
    std::array<towsim::BodyParams, 3> body;
    std::array<double, 3> m{};
    std::array<double, 3> inertia{};
    towsim::FluidEnv fluid;
    towsim::numerics::Quadrature quad = towsim::numerics::gauss_legendre(5);

    explicit ThreeBody(const towsim::ChainConfig &cfg) : fluid(cfg.fluid) {
        if (cfg.links.size() != 3)
            throw std::invalid_argument("three-body oracle needs exactly 3 links");
        for (int i = 0; i < 3; ++i) {
            body[i] = cfg.links[i];
            m[i] = body[i].mass_per_length * body[i].length;
            inertia[i] = m[i] * body[i].length * body[i].length / 3.0;
        }
        quad = towsim::numerics::gauss_legendre(cfg.quadrature_points, cfg.quadrature_panels);
    }

    struct Drags {
        std::array<towsim::hydro::DragResult, 3> d;
    };

    Drags drags(const Vec3 &th, const Vec3 &w, const towsim::TowPointKinematics &tow, double v_eps) const {
        const double l1 = body[0].length, l2 = body[1].length;
        const double xdA = tow.velocity.x, ydA = tow.velocity.y;
        const double xdC = xdA - l1 * w[0] * std::sin(th[0]);
        const double ydC = ydA + l1 * w[0] * std::cos(th[0]);
        const double xdE = xdC - l2 * w[1] * std::sin(th[1]);
        const double ydE = ydC + l2 * w[1] * std::cos(th[1]);
        Drags out;
        out.d[0] = towsim::hydro::drag_forces({th[0], w[0], {xdA, ydA}}, body[0], fluid, quad, v_eps);
        out.d[1] = towsim::hydro::drag_forces({th[1], w[1], {xdC, ydC}}, body[1], fluid, quad, v_eps);
        out.d[2] = towsim::hydro::drag_forces({th[2], w[2], {xdE, ydE}}, body[2], fluid, quad, v_eps);
        return out;
    }

    // Left side minus right side of the three balances.
    Vec3 residual(const Vec3 &th, const Vec3 &w, const towsim::TowPointKinematics &tow, const Drags &dr,
                  const Vec3 &a) const {
        const double l1 = body[0].length, l2 = body[1].length, l3 = body[2].length;
        const double s1 = std::sin(th[0]), c1 = std::cos(th[0]);
        const double s2 = std::sin(th[1]), c2 = std::cos(th[1]);
        const double s3 = std::sin(th[2]), c3 = std::cos(th[2]);
        const double xA = tow.acceleration.x, yA = tow.acceleration.y;

        const double xC = xA - l1 * a[0] * s1 - l1 * w[0] * w[0] * c1;
        const double yC = yA + l1 * a[0] * c1 - l1 * w[0] * w[0] * s1;
        const double xG2 = xC - 0.5 * l2 * a[1] * s2 - 0.5 * l2 * w[1] * w[1] * c2;
        const double yG2 = yC + 0.5 * l2 * a[1] * c2 - 0.5 * l2 * w[1] * w[1] * s2;
        const double xE = xC - l2 * a[1] * s2 - l2 * w[1] * w[1] * c2;
        const double yE = yC + l2 * a[1] * c2 - l2 * w[1] * w[1] * s2;
        const double xG3 = xE - 0.5 * l3 * a[2] * s3 - 0.5 * l3 * w[2] * w[2] * c3;
        const double yG3 = yE + 0.5 * l3 * a[2] * c3 - 0.5 * l3 * w[2] * w[2] * s3;

        const auto &D2 = dr.d[1];
        const auto &D3 = dr.d[2];
        const double F3x = m[2] * xG3 - D3.normal.x - D3.tangential.x;
        const double F3y = m[2] * yG3 - D3.normal.y - D3.tangential.y;
        const double Px = m[1] * xG2 - D2.normal.x - D2.tangential.x + F3x;
        const double Py = m[1] * yG2 - D2.normal.y - D2.tangential.y + F3y;

        Vec3 r{};
        r[0] = dr.d[0].moment + Px * l1 * s1 - Py * l1 * c1 - inertia[0] * a[0] -
               0.5 * m[0] * l1 * (yA * c1 - xA * s1);
        r[1] = dr.d[1].moment + F3x * l2 * s2 - F3y * l2 * c2 - inertia[1] * a[1] -
               0.5 * m[1] * l2 * (yC * c2 - xC * s2);
        r[2] = dr.d[2].moment - m[2] * l3 * l3 / 3.0 * a[2] - 0.5 * m[2] * l3 * (yE * c3 - xE * s3);
        return r;
    }

    // residual(a) = b0 - K a  (affine); returns K and b0.
    void linear_system(const Vec3 &th, const Vec3 &w, const towsim::TowPointKinematics &tow, const Drags &dr,
                       std::array<Vec3, 3> &K, Vec3 &b0) const {
        b0 = residual(th, w, tow, dr, {0, 0, 0});
        for (int k = 0; k < 3; ++k) {
            Vec3 e{0, 0, 0};
            e[k] = 1.0;
            const Vec3 rk = residual(th, w, tow, dr, e);
            for (int i = 0; i < 3; ++i)
                K[i][k] = b0[i] - rk[i];
        }
    }

    static double det3(const std::array<Vec3, 3> &M) {
        return M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1]) -
               M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0]) +
               M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]);
    }

    Vec3 solve_cramer(const Vec3 &th, const Vec3 &w, const towsim::TowPointKinematics &tow,
                      double v_eps = 1e-9) const {
        const Drags dr = drags(th, w, tow, v_eps);
        std::array<Vec3, 3> K{};
        Vec3 b{};
        linear_system(th, w, tow, dr, K, b);
        const double d = det3(K);
        Vec3 x{};
        for (int k = 0; k < 3; ++k) {
            auto Kk = K;
            for (int i = 0; i < 3; ++i)
                Kk[i][k] = b[i];
            x[k] = det3(Kk) / d;
        }
        return x;
    }

    Vec3 solve_fixed_point(const Vec3 &th, const Vec3 &w, const towsim::TowPointKinematics &tow,
                           int max_iter = 20000, double tol = 1e-14, double v_eps = 1e-9) const {
        const Drags dr = drags(th, w, tow, v_eps);
        Vec3 a{0, 0, 0};
        Vec3 diag{};
        {
            const Vec3 r0 = residual(th, w, tow, dr, a);
            for (int k = 0; k < 3; ++k) {
                Vec3 e{0, 0, 0};
                e[k] = 1.0;
                diag[k] = r0[k] - residual(th, w, tow, dr, e)[k];
            }
        }
        for (int it = 0; it < max_iter; ++it) {
            double change = 0.0, scale = 0.0;
            for (int i = 0; i < 3; ++i) {
                const double step = residual(th, w, tow, dr, a)[i] / diag[i];
                a[i] += step;
                change = std::max(change, std::abs(step));
                scale = std::max(scale, std::abs(a[i]));
            }
            if (change <= tol * (1.0 + scale))
                return a;
        }
        throw std::runtime_error("fixed-point oracle did not converge");
    }
};

} // namespace oracle
