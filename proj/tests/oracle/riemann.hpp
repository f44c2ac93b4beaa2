// Dense midpoint-rule transcription of the drag densities. Shares no code
// with towsim::hydro beyond the plain data types.
#pragma once

#include <towsim/model.hpp>

#include <cmath>
#include <numbers>

namespace oracle {

struct DragSums {
    double nx = 0, ny = 0, tx = 0, ty = 0, moment = 0;
};

inline DragSums riemann_drag(double theta, double theta_dot, double xdot, double ydot,
                             const towsim::BodyParams &b, const towsim::FluidEnv &f, long panels = 100000) {
    const double kn = 0.5 * f.density * b.cd_normal * b.diameter;
    const double kt = 0.5 * f.density * b.cd_tangential * std::numbers::pi * b.diameter;
    const double s = std::sin(theta), c = std::cos(theta);
    const double h = b.length / static_cast<double>(panels);
    DragSums out;
    for (long i = 0; i < panels; ++i) {
        const double r = (static_cast<double>(i) + 0.5) * h;
        const double vx = xdot - theta_dot * r * s;
        const double vy = ydot + theta_dot * r * c;
        const double speed = std::sqrt(vx * vx + vy * vy);
        if (speed < 1e-300)
            continue;
        const double sn = xdot * s - ydot * c - theta_dot * r;
        const double tn = xdot * c + ydot * s;
        const double fnx = -kn * vx * sn * sn / speed;
        const double fny = -kn * vy * sn * sn / speed;
        out.nx += fnx * h;
        out.ny += fny * h;
        out.tx += -kt * vx * tn * tn / speed * h;
        out.ty += -kt * vy * tn * tn / speed * h;
        // r (cos, sin) x dF_n, crossed numerically
        out.moment += (r * c * fny - r * s * fnx) * h;
    }
    return out;
}

} // namespace oracle
