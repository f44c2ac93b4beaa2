// Domain types for the towed cable / sensor-array chain.
//
// The chain is an ordered list of rigid links hinged end to end. Links
// 1..n-1 are cable segments and link n is the sensor array. Each link is
// a uniform slender cylinder; its yaw angle is measured counterclockwise
// from the inertial +x axis. The leading node of link 1 is the tow point
// on the ship.
//
// Model assumptions:
//   - the array is hinged at the end of the cable,
//   - ship motion is prescribed (no feedback from the tow),
//   - still water: no waves or currents,
//   - links are inextensible and do not deform,
//   - drag coefficients do not depend on angle of attack.
#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace towsim {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
    friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
    friend Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
    friend bool operator==(Vec2, Vec2) = default;

    double norm() const { return std::hypot(x, y); }
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
/// z-component of the planar cross product a x b.
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

/// Invalid configuration; carries every violated constraint.
class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(std::vector<std::string> problems)
        : std::runtime_error(join(problems)), problems_(std::move(problems)) {}
    explicit ConfigError(std::string problem)
        : ConfigError(std::vector<std::string>{std::move(problem)}) {}

    const std::vector<std::string> &problems() const { return problems_; }

  private:
    static std::string join(const std::vector<std::string> &items) {
        std::string out;
        for (const auto &s : items) {
            if (!out.empty())
                out += "; ";
            out += s;
        }
        return out;
    }
    std::vector<std::string> problems_;
};

/// Failure inside the time integration or the linear solve.
class NumericalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct FluidEnv {
    double density = 1000.0; // kg/m^3
    double gravity = 9.81;   // m/s^2
};

struct BodyParams {
    double length = 0.0;          // m
    double diameter = 0.0;        // m
    double mass_per_length = 0.0; // kg/m
    double cd_normal = 0.0;
    double cd_tangential = 0.0;
};

struct DerivedBodyProps {
    double mass = 0.0;         // kg
    double inertia_lead = 0.0; // kg m^2, about the leading node
    double buoyancy = 0.0;     // N
};

enum class SteadyDragModel { tangential, normal };

struct SteadyOptions {
    SteadyDragModel drag_model = SteadyDragModel::tangential;
    bool buoyancy_opposes_weight = false;
};

struct ChainConfig {
    FluidEnv fluid;
    std::vector<BodyParams> links;
    double dt = 0.1;         // s
    double duration = 1800.0; // s
    int output_stride = 10;
    double v_epsilon = 1e-9; // m/s
    int quadrature_points = 5;
    int quadrature_panels = 1;
    SteadyOptions steady;

    std::size_t link_count() const { return links.size(); }
};

/// Time plus per-link yaw (rad) and yaw rate (rad/s).
struct ChainState {
    double t = 0.0;
    std::vector<double> theta;
    std::vector<double> theta_dot;

    std::size_t size() const { return theta.size(); }
};

namespace detail {

inline void require_positive(std::vector<std::string> &errs, double v, const std::string &name) {
    if (!(v > 0.0) || !std::isfinite(v))
        errs.push_back(name + " must be positive");
}

inline void check_body(std::vector<std::string> &errs, const BodyParams &b, const std::string &who) {
    require_positive(errs, b.length, who + ".length");
    require_positive(errs, b.diameter, who + ".diameter");
    require_positive(errs, b.mass_per_length, who + ".mass_per_length");
    require_positive(errs, b.cd_normal, who + ".cd_normal");
    require_positive(errs, b.cd_tangential, who + ".cd_tangential");
}

} // namespace detail

inline DerivedBodyProps derive_body_props(const BodyParams &body, const FluidEnv &fluid) {
    std::vector<std::string> errs;
    detail::check_body(errs, body, "body");
    detail::require_positive(errs, fluid.density, "fluid.density");
    detail::require_positive(errs, fluid.gravity, "fluid.gravity");
    if (!errs.empty())
        throw ConfigError(std::move(errs));

    DerivedBodyProps d;
    d.mass = body.mass_per_length * body.length;
    d.inertia_lead = d.mass * body.length * body.length / 3.0;
    d.buoyancy = fluid.density * fluid.gravity * std::numbers::pi * body.diameter *
                 body.diameter / 4.0 * body.length;
    return d;
}

/// Every violated invariant, in a stable order. Empty means valid.
inline std::vector<std::string> config_errors(const ChainConfig &cfg) {
    std::vector<std::string> errs;
    detail::require_positive(errs, cfg.fluid.density, "density");
    detail::require_positive(errs, cfg.fluid.gravity, "gravity");
    if (cfg.links.empty())
        errs.emplace_back("at least one link required");
    for (std::size_t i = 0; i < cfg.links.size(); ++i)
        detail::check_body(errs, cfg.links[i], "link " + std::to_string(i + 1));
    detail::require_positive(errs, cfg.dt, "dt");
    if (!(cfg.duration >= 0.0) || !std::isfinite(cfg.duration))
        errs.emplace_back("duration must be non-negative");
    if (cfg.output_stride < 1)
        errs.emplace_back("output_stride must be at least 1");
    detail::require_positive(errs, cfg.v_epsilon, "v_epsilon");
    if (cfg.quadrature_points < 2)
        errs.emplace_back("quadrature_points must be at least 2");
    if (cfg.quadrature_panels < 1)
        errs.emplace_back("quadrature_panels must be at least 1");
    return errs;
}

inline ChainConfig validate_config(ChainConfig cfg) {
    auto errs = config_errors(cfg);
    if (!errs.empty())
        throw ConfigError(std::move(errs));
    return cfg;
}

/// Split one cable into `segments` equal links; diameter and drag
/// coefficients are shared.
inline std::vector<BodyParams> split_cable(const BodyParams &cable, int segments) {
    if (segments < 1)
        throw ConfigError("segments must be at least 1");
    BodyParams seg = cable;
    seg.length = cable.length / segments;
    return std::vector<BodyParams>(static_cast<std::size_t>(segments), seg);
}

inline BodyParams reference_cable() { return {723.0, 0.041, 2.33, 2.0, 0.015}; }
inline BodyParams reference_array() { return {273.9, 0.079, 5.07, 1.8, 0.009}; }

/// Reference tow: 723 m cable in `segments` links plus a 273.9 m array,
/// fresh-water density 1000 kg/m^3.
inline ChainConfig reference_chain_config(int segments = 2) {
    ChainConfig cfg;
    cfg.links = split_cable(reference_cable(), segments);
    cfg.links.push_back(reference_array());
    return cfg;
}

} // namespace towsim
