// Fixed-step RK4 time stepping of the chain behind a ship trajectory, with
// sampled output records.
#pragma once

#include "dynamics.hpp"
#include "model.hpp"
#include "numerics.hpp"
#include "shiptrack.hpp"

#include <cmath>
#include <functional>
#include <string>
#include <vector>

namespace towsim {

struct LinkRecord {
    double theta = 0.0;     // rad
    double theta_dot = 0.0; // rad/s
    Vec2 tail;              // m
    Vec2 cg;                // m
};

struct TrajectoryRecord {
    double t = 0.0;
    Vec2 ship;
    double ship_course_deg = 0.0;
    std::vector<LinkRecord> links;
};

/// Tow-point kinematics valid over one step [t, t + dt].
using StepTow = std::function<TowPointKinematics(double)>;

/// Advance the packed state by one RK4 step with the tow point given by `tow`.
inline std::vector<double> step_chain(const dynamics::ChainDynamics &dyn, const std::vector<double> &y,
                                      double t, double dt, const StepTow &tow) {
    auto f = [&](double tt, const std::vector<double> &yy) { return dyn.derivative(tt, yy, tow(tt)); };
    std::vector<double> next = numerics::rk4_step(f, t, y, dt);
    for (double v : next)
        if (!std::isfinite(v))
            throw NumericalError("non-finite state after step ending at t=" + std::to_string(t + dt) + " s");
    return next;
}

/// Number of whole steps of size dt that fit in duration.
inline long step_count(double duration, double dt) {
    return static_cast<long>(std::floor(duration / dt + 1e-9));
}

/// The leg owning a step is the one containing the step midpoint; its motion
/// law is used for all four stages, so steps that end on a leg boundary see
/// the one-sided forcing of that leg.
inline StepTow tow_for_step(const ShipTrajectory &traj, double t, double dt) {
    const double mid = std::min(t + 0.5 * dt, traj.total_duration());
    const std::size_t leg = traj.leg_index_at(mid);
    return [&traj, leg](double tt) { return traj.on_leg(leg, tt); };
}

inline TrajectoryRecord make_record(const ShipTrajectory &traj, const dynamics::ChainDynamics &dyn,
                                    const ChainState &s) {
    const TowPointKinematics tow = traj.at(std::min(s.t, traj.total_duration()));
    const auto lengths = dynamics::link_lengths(dyn.props().bodies);
    const auto kin = dynamics::chain_kinematics(s, lengths, tow);
    TrajectoryRecord rec;
    rec.t = s.t;
    rec.ship = tow.position;
    double course = std::fmod(traj.course_deg_at(std::min(s.t, traj.total_duration())), 360.0);
    if (course < 0.0)
        course += 360.0;
    rec.ship_course_deg = course;
    for (std::size_t i = 0; i < s.size(); ++i)
        rec.links.push_back({s.theta[i], s.theta_dot[i], kin.links[i].tail.position, kin.links[i].cg.position});
    return rec;
}

/// Integrates from `initial` and calls `observe` with the state after every
/// step (and once with the initial state). Stops early if observe returns false.
template <typename Observer>
void simulate(const ChainConfig &cfg, const ShipTrajectory &traj, const ChainState &initial,
              Observer &&observe) {
    const dynamics::ChainDynamics dyn(cfg);
    const long steps = step_count(cfg.duration, cfg.dt);
    std::vector<double> y = dynamics::pack(initial);
    const double t0 = initial.t;
    if (!observe(0L, initial))
        return;
    for (long k = 0; k < steps; ++k) {
        const double t = t0 + static_cast<double>(k) * cfg.dt;
        try {
            y = step_chain(dyn, y, t, cfg.dt, tow_for_step(traj, t, cfg.dt));
        } catch (const NumericalError &e) {
            throw NumericalError(std::string(e.what()) + " (step starting t=" + std::to_string(t) + " s)");
        }
        if (!observe(k + 1, dynamics::unpack(t0 + static_cast<double>(k + 1) * cfg.dt, y)))
            return;
    }
}

/// Chain initially trailing straight behind the ship at rest relative to it.
inline ChainState initial_state(const ChainConfig &cfg, const ShipTrajectory &traj) {
    return dynamics::trailing_state(cfg.links.size(), traj.initial_course_deg(), 0.0);
}

inline std::vector<TrajectoryRecord> run_scenario(const ChainConfig &cfg, const ShipTrajectory &traj) {
    const ChainConfig valid = validate_config(cfg);
    if (valid.duration > traj.total_duration() * (1.0 + 1e-12))
        throw ConfigError("sim duration " + std::to_string(valid.duration) +
                          " s exceeds trajectory length " + std::to_string(traj.total_duration()) + " s");
    const dynamics::ChainDynamics dyn(valid);
    std::vector<TrajectoryRecord> out;
    simulate(valid, traj, initial_state(valid, traj), [&](long k, const ChainState &s) {
        if (k % valid.output_stride == 0)
            out.push_back(make_record(traj, dyn, s));
        return true;
    });
    return out;
}

} // namespace towsim
