// Steady tow at constant speed: the cable (one straight body) and the array
// each hang at a fixed pitch angle from the vertical, set by the balance of
// drag against weight and buoyancy. Force balance on the array:
//   vertical load  = T2 cos psi2,   F_d2 = T2 sin psi2
// and on the cable:
//   vertical load1 + T2 cos psi2 = T1 cos psi1,   F_d1 + T2 sin psi2 = T1 sin psi1.
// The vertical load defaults to m g + F_buoy (buoyancy added to weight).
// Setting buoyancy_opposes_weight uses m g - F_buoy instead.
#pragma once

#include "model.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace towsim::statics {

struct BodyLoads {
    double drag = 0.0;     // N, horizontal
    double weight = 0.0;   // N, m g
    double buoyancy = 0.0; // N
    double vertical_load = 0.0;
};

struct SteadyState {
    double psi_cable = 0.0; // rad from vertical
    double psi_array = 0.0; // rad from vertical
    double tension_cable = 0.0; // N at the tow point
    double tension_array = 0.0; // N at the hinge
    BodyLoads cable;
    BodyLoads array;
    double cable_length = 0.0;
    double array_length = 0.0;
    double depth_estimate = 0.0; // m
    SteadyOptions options;
};

inline const char *drag_model_name(SteadyDragModel m) {
    return m == SteadyDragModel::tangential ? "tangential" : "normal";
}

inline double steady_drag(const BodyParams &body, const FluidEnv &fluid, double speed,
                          SteadyDragModel model = SteadyDragModel::tangential) {
    if (!(speed >= 0.0))
        throw ConfigError("steady speed must be non-negative");
    const double v2 = speed * speed;
    if (model == SteadyDragModel::tangential)
        return 0.5 * fluid.density * body.cd_tangential * std::numbers::pi * body.diameter *
               body.length * v2;
    return 0.5 * fluid.density * body.cd_normal * body.diameter * body.length * v2;
}

/// All links but the last merged into one cable body.
inline BodyParams aggregate_cable(const ChainConfig &cfg) {
    if (cfg.links.size() < 2)
        throw ConfigError("steady state needs a cable and an array (at least 2 links)");
    BodyParams cable = cfg.links.front();
    double length = 0.0;
    double mass = 0.0;
    for (std::size_t i = 0; i + 1 < cfg.links.size(); ++i) {
        length += cfg.links[i].length;
        mass += cfg.links[i].mass_per_length * cfg.links[i].length;
    }
    cable.length = length;
    cable.mass_per_length = mass / length;
    return cable;
}

inline SteadyState steady_state(const ChainConfig &cfg, double speed) {
    const BodyParams cable = aggregate_cable(cfg);
    const BodyParams &array = cfg.links.back();
    const SteadyOptions opt = cfg.steady;

    auto loads = [&](const BodyParams &b) {
        const DerivedBodyProps d = derive_body_props(b, cfg.fluid);
        BodyLoads l;
        l.drag = steady_drag(b, cfg.fluid, speed, opt.drag_model);
        l.weight = d.mass * cfg.fluid.gravity;
        l.buoyancy = d.buoyancy;
        l.vertical_load = opt.buoyancy_opposes_weight ? l.weight - l.buoyancy : l.weight + l.buoyancy;
        return l;
    };

    SteadyState s;
    s.options = opt;
    s.cable = loads(cable);
    s.array = loads(array);
    s.cable_length = cable.length;
    s.array_length = array.length;
    if (!(s.array.vertical_load > 0.0) || !(s.cable.vertical_load + s.array.vertical_load > 0.0))
        throw ConfigError("net vertical load must be positive for a hanging steady state");

    s.psi_array = std::atan(s.array.drag / s.array.vertical_load);
    s.tension_array = std::hypot(s.array.vertical_load, s.array.drag);
    const double vertical = s.cable.vertical_load + s.array.vertical_load;
    const double horizontal = s.cable.drag + s.array.drag;
    s.psi_cable = std::atan(horizontal / vertical);
    s.tension_cable = std::hypot(vertical, horizontal);
    s.depth_estimate = s.cable_length * std::cos(s.psi_cable) + s.array_length * std::cos(s.psi_array);
    return s;
}

} // namespace towsim::statics
