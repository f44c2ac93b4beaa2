// Piecewise ship track (straight legs and constant-rate turns) evaluated in
// closed form. Courses are compass style: degrees clockwise from +y, so a
// ship on course c moves with velocity V (sin c, cos c).
#pragma once

#include "model.hpp"

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace towsim {

inline constexpr double knots_to_mps = 0.514444;

inline double deg_to_rad(double d) { return d * std::numbers::pi / 180.0; }
inline double rad_to_deg(double r) { return r * 180.0 / std::numbers::pi; }

/// Compass course (deg, clockwise from +y) to math angle (rad, ccw from +x).
inline double course_to_math_angle(double course_deg) { return deg_to_rad(90.0 - course_deg); }

struct StraightLeg {
    double course_deg = 0.0;
    double duration = 0.0; // s
};

struct TurnLeg {
    double rate_deg_per_min = 0.0; // signed; negative decreases the course
    double duration = 0.0;         // s
};

using TrajectoryLeg = std::variant<StraightLeg, TurnLeg>;

struct TowPointKinematics {
    Vec2 position;
    Vec2 velocity;
    Vec2 acceleration;
};

class TrajectoryError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

class ShipTrajectory {
  public:
    struct LegStart {
        double time = 0.0;
        Vec2 position;
        double course_deg = 0.0;
        double rate_rad_s = 0.0; // 0 on straight legs
        double duration = 0.0;
    };

    double speed() const { return speed_; }
    double total_duration() const { return total_; }
    const std::vector<TrajectoryLeg> &legs() const { return legs_; }
    const std::vector<LegStart> &leg_starts() const { return starts_; }
    double initial_course_deg() const { return starts_.front().course_deg; }
    double final_course_deg() const { return end_course_; }

    /// Index of the leg in force at t: legs are half-open [start, end) except
    /// the last, which also owns t = total duration.
    std::size_t leg_index_at(double t) const {
        check_time(t);
        std::size_t k = 0;
        while (k + 1 < starts_.size() && t >= starts_[k + 1].time)
            ++k;
        return k;
    }

    /// Closed-form kinematics of leg k evaluated at t. t may lie outside the
    /// leg; the leg's motion law is then extended, which gives one-sided
    /// limits at the leg boundaries.
    TowPointKinematics on_leg(std::size_t k, double t) const {
        const LegStart &s = starts_.at(k);
        const double tau = t - s.time;
        const double a0 = deg_to_rad(s.course_deg);
        TowPointKinematics out;
        if (s.rate_rad_s == 0.0) {
            const Vec2 v{speed_ * std::sin(a0), speed_ * std::cos(a0)};
            out.position = s.position + tau * v;
            out.velocity = v;
            out.acceleration = {0.0, 0.0};
        } else {
            const double w = s.rate_rad_s;
            const double a = a0 + w * tau;
            const double r = speed_ / w;
            out.position = {s.position.x + r * (std::cos(a0) - std::cos(a)),
                            s.position.y + r * (std::sin(a) - std::sin(a0))};
            out.velocity = {speed_ * std::sin(a), speed_ * std::cos(a)};
            out.acceleration = {speed_ * w * std::cos(a), -speed_ * w * std::sin(a)};
        }
        return out;
    }

    TowPointKinematics at(double t) const { return on_leg(leg_index_at(t), t); }

    double course_deg_at(double t) const {
        const std::size_t k = leg_index_at(t);
        const LegStart &s = starts_[k];
        return s.course_deg + rad_to_deg(s.rate_rad_s) * (t - s.time);
    }

  private:
    friend ShipTrajectory build_trajectory(double, double, double, std::vector<TrajectoryLeg>,
                                           std::optional<double>);

    void check_time(double t) const {
        const double slack = 1e-9 * std::max(1.0, total_);
        if (!(t >= -slack && t <= total_ + slack))
            throw TrajectoryError("time " + std::to_string(t) + " s outside trajectory span [0, " +
                                  std::to_string(total_) + "]");
    }

    double speed_ = 0.0;
    double total_ = 0.0;
    double end_course_ = 0.0;
    std::vector<TrajectoryLeg> legs_;
    std::vector<LegStart> starts_;
};

namespace detail {

inline double course_gap_deg(double a, double b) {
    double d = std::fmod(a - b, 360.0);
    if (d > 180.0)
        d -= 360.0;
    if (d < -180.0)
        d += 360.0;
    return std::abs(d);
}

} // namespace detail

/// Precomputes each leg's start time, position and course. A straight leg
/// must declare the course the previous leg ends on (within 1e-6 deg).
/// `initial_course_deg` is required when the first leg is a turn.
inline ShipTrajectory build_trajectory(double x0, double y0, double speed,
                                       std::vector<TrajectoryLeg> legs,
                                       std::optional<double> initial_course_deg = std::nullopt) {
    if (legs.empty())
        throw ConfigError("trajectory needs at least one leg");
    if (!(speed > 0.0) || !std::isfinite(speed))
        throw ConfigError("ship speed must be positive");

    ShipTrajectory traj;
    traj.speed_ = speed;
    traj.legs_ = legs;

    double course = 0.0;
    if (const auto *first = std::get_if<StraightLeg>(&legs.front()))
        course = first->course_deg;
    else if (initial_course_deg)
        course = *initial_course_deg;
    else
        throw ConfigError("initial course required when the first leg is a turn");
    if (initial_course_deg && detail::course_gap_deg(*initial_course_deg, course) > 1e-6)
        throw ConfigError("initial course disagrees with first leg course");

    double t = 0.0;
    Vec2 pos{x0, y0};
    for (std::size_t k = 0; k < legs.size(); ++k) {
        ShipTrajectory::LegStart s;
        s.time = t;
        s.position = pos;
        const std::string who = "leg " + std::to_string(k + 1);
        if (const auto *st = std::get_if<StraightLeg>(&legs[k])) {
            if (!(st->duration > 0.0))
                throw ConfigError(who + ": duration must be positive");
            if (detail::course_gap_deg(st->course_deg, course) > 1e-6)
                throw ConfigError(who + ": course " + std::to_string(st->course_deg) +
                                  " deg does not continue previous course " +
                                  std::to_string(course) + " deg");
            s.course_deg = st->course_deg;
            s.duration = st->duration;
        } else {
            const auto &turn = std::get<TurnLeg>(legs[k]);
            if (!(turn.duration > 0.0))
                throw ConfigError(who + ": duration must be positive");
            if (turn.rate_deg_per_min == 0.0 || !std::isfinite(turn.rate_deg_per_min))
                throw ConfigError(who + ": turn rate must be non-zero");
            s.course_deg = course;
            s.rate_rad_s = deg_to_rad(turn.rate_deg_per_min / 60.0);
            s.duration = turn.duration;
        }
        traj.starts_.push_back(s);
        const TowPointKinematics end = traj.on_leg(k, t + s.duration);
        pos = end.position;
        course = s.course_deg + rad_to_deg(s.rate_rad_s) * s.duration;
        t += s.duration;
    }
    traj.total_ = t;
    traj.end_course_ = course;
    return traj;
}

inline TowPointKinematics tow_kinematics_at(const ShipTrajectory &traj, double t) {
    return traj.at(t);
}

/// Straight 140 deg for 12 min, -30 deg/min turn for 4 min, straight 20 deg
/// for 14 min at 5 kn from the origin.
inline ShipTrajectory reference_trajectory() {
    return build_trajectory(0.0, 0.0, 5.0 * knots_to_mps,
                            {StraightLeg{140.0, 720.0}, TurnLeg{-30.0, 240.0},
                             StraightLeg{20.0, 840.0}});
}

} // namespace towsim
