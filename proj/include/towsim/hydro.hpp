// Hydrodynamic drag on one rigid link.
//
// A point at distance r from the leading node P moves with
//   V(r) = V_P + thetadot k x r (cos theta, sin theta).
// Normal (pressure) drag per unit length is
//   dF_n = -1/2 rho Cdn D V(r) S(r)^2 / |V(r)|,  S = V_P.(sin, -cos) - thetadot r,
// and tangential (skin) drag per unit length is
//   dF_t = -1/2 rho Cdt pi D V(r) T^2 / |V(r)|,  T = V_P.(cos, sin).
// Both act along the local velocity. Only the normal part produces a moment
// about P: M = int r (cos, sin) x dF_n dr = -1/2 rho Cdn D int r X^3/|V| dr
// with X = V_P.(-sin, cos) + thetadot r the normal velocity at r.
#pragma once

#include "model.hpp"
#include "numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace towsim::hydro {

inline constexpr double default_v_epsilon = 1e-9;

struct LinkMotion {
    double theta = 0.0;     // rad
    double theta_dot = 0.0; // rad/s
    Vec2 lead_velocity;     // m/s
};

struct ElementVelocity {
    Vec2 velocity;
    double speed = 0.0;
};

struct DragResult {
    Vec2 normal;       // N
    Vec2 tangential;   // N
    double moment = 0; // N m about the leading node

    Vec2 total() const { return normal + tangential; }

    friend DragResult operator+(const DragResult &a, const DragResult &b) {
        return {a.normal + b.normal, a.tangential + b.tangential, a.moment + b.moment};
    }
    friend DragResult operator*(double s, const DragResult &a) {
        return {s * a.normal, s * a.tangential, s * a.moment};
    }
};

inline ElementVelocity element_velocity(const LinkMotion &m, double r) {
    const double s = std::sin(m.theta);
    const double c = std::cos(m.theta);
    const Vec2 v{m.lead_velocity.x - m.theta_dot * r * s, m.lead_velocity.y + m.theta_dot * r * c};
    return {v, std::hypot(v.x, v.y)};
}

namespace detail {

struct Projections {
    ElementVelocity ev;
    double normal_sq;     // S^2
    double normal_signed; // X = -S
    double tangential_sq; // T^2
};

inline Projections project(const LinkMotion &m, double r) {
    const double s = std::sin(m.theta);
    const double c = std::cos(m.theta);
    const Vec2 vp = m.lead_velocity;
    const double x_n = vp.y * c - vp.x * s + m.theta_dot * r;
    const double t = vp.x * c + vp.y * s;
    return {element_velocity(m, r), x_n * x_n, x_n, t * t};
}

inline double normal_coeff(const BodyParams &b, const FluidEnv &f) {
    return 0.5 * f.density * b.cd_normal * b.diameter;
}
inline double tangential_coeff(const BodyParams &b, const FluidEnv &f) {
    return 0.5 * f.density * b.cd_tangential * std::numbers::pi * b.diameter;
}

inline DragResult density_at(const LinkMotion &m, double r, const BodyParams &b,
                             const FluidEnv &f, double v_eps) {
    const Projections p = project(m, r);
    const double inv = 1.0 / std::max(p.ev.speed, v_eps);
    const double kn = normal_coeff(b, f);
    const double kt = tangential_coeff(b, f);
    DragResult d;
    d.normal = (-kn * p.normal_sq * inv) * p.ev.velocity;
    d.tangential = (-kt * p.tangential_sq * inv) * p.ev.velocity;
    d.moment = -kn * r * p.normal_signed * p.normal_sq * inv;
    return d;
}

} // namespace detail

inline Vec2 normal_drag_density(const LinkMotion &m, double r, const BodyParams &body,
                                const FluidEnv &fluid, double v_eps = default_v_epsilon) {
    return detail::density_at(m, r, body, fluid, v_eps).normal;
}

inline Vec2 tangential_drag_density(const LinkMotion &m, double r, const BodyParams &body,
                                    const FluidEnv &fluid, double v_eps = default_v_epsilon) {
    return detail::density_at(m, r, body, fluid, v_eps).tangential;
}

inline double drag_moment_about_lead(const LinkMotion &m, const BodyParams &body,
                                     const FluidEnv &fluid, const numerics::Quadrature &q,
                                     double v_eps = default_v_epsilon) {
    const double kn = detail::normal_coeff(body, fluid);
    return numerics::integrate(
        q,
        [&](double r) {
            const auto p = detail::project(m, r);
            return -kn * r * p.normal_signed * p.normal_sq / std::max(p.ev.speed, v_eps);
        },
        0.0, body.length);
}

/// Normal and tangential drag resultants plus the moment about the leading node.
inline DragResult drag_forces(const LinkMotion &m, const BodyParams &body, const FluidEnv &fluid,
                              const numerics::Quadrature &q, double v_eps = default_v_epsilon) {
    return numerics::integrate(
        q, [&](double r) { return detail::density_at(m, r, body, fluid, v_eps); }, 0.0,
        body.length);
}

} // namespace towsim::hydro
