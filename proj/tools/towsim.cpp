// towsim: run, steady and validate subcommands over a scenario file.
#include <towsim/towsim.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

namespace {

constexpr int exit_ok = 0;
constexpr int exit_config = 1;
constexpr int exit_numerical = 2;

// Steady pitch quoted for the reference tow; its drag law is not given, so
// the value is printed for comparison only.
constexpr double reference_pitch_deg = 5.64;

struct Overrides {
    std::optional<double> dt;
    std::optional<double> duration;
    std::optional<int> stride;
};

towsim::Scenario load(const std::string &path, const Overrides &o) {
    towsim::Scenario sc = towsim::load_scenario(path);
    if (o.dt)
        sc.config.dt = *o.dt;
    if (o.duration)
        sc.config.duration = *o.duration;
    if (o.stride)
        sc.config.output_stride = *o.stride;
    sc.config = towsim::validate_config(sc.config);
    if (sc.config.duration > sc.trajectory.total_duration() * (1.0 + 1e-12))
        throw towsim::ConfigError("duration exceeds the ship track length");
    return sc;
}

void print_steady(const towsim::statics::SteadyState &s, double speed) {
    using towsim::rad_to_deg;
    std::printf("speed                 %.6g m/s (%.6g kn)\n", speed, speed / towsim::knots_to_mps);
    std::printf("drag model            %s\n", towsim::statics::drag_model_name(s.options.drag_model));
    std::printf("buoyancy              %s\n",
                s.options.buoyancy_opposes_weight ? "opposes weight" : "added to weight");
    std::printf("cable pitch           %.6f deg from vertical, %.6f deg from horizontal\n",
                rad_to_deg(s.psi_cable), 90.0 - rad_to_deg(s.psi_cable));
    std::printf("array pitch           %.6f deg from vertical, %.6f deg from horizontal\n",
                rad_to_deg(s.psi_array), 90.0 - rad_to_deg(s.psi_array));
    std::printf("tension at tow point  %.6f N\n", s.tension_cable);
    std::printf("tension at array      %.6f N\n", s.tension_array);
    std::printf("cable  drag %.6f N  weight %.6f N  buoyancy %.6f N\n", s.cable.drag, s.cable.weight,
                s.cable.buoyancy);
    std::printf("array  drag %.6f N  weight %.6f N  buoyancy %.6f N\n", s.array.drag, s.array.weight,
                s.array.buoyancy);
    std::printf("depth estimate        %.6f m\n", s.depth_estimate);
    std::printf("reference pitch       %.2f deg (published value, not independently reproduced)\n",
                reference_pitch_deg);
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Towed cable and sensor-array yaw dynamics simulator"};
    app.require_subcommand(1);

    std::string config;
    std::string out;
    std::optional<double> speed_knots;
    Overrides over;

    auto add_common = [&](CLI::App *sub) {
        sub->add_option("--config", config, "Scenario file")->required();
        sub->add_option("--dt", over.dt, "Override time step (s)");
        sub->add_option("--duration", over.duration, "Override duration (s)");
        sub->add_option("--stride", over.stride, "Override output stride (steps)");
    };

    CLI::App *run = app.add_subcommand("run", "Simulate the scenario and write a CSV time series");
    add_common(run);
    run->add_option("--out", out, "CSV output file")->required();

    CLI::App *steady = app.add_subcommand("steady", "Report the steady-state pitch and tensions");
    add_common(steady);
    steady->add_option("--speed-knots", speed_knots, "Tow speed (kn); defaults to the ship speed");

    CLI::App *validate = app.add_subcommand("validate", "Check a scenario file");
    add_common(validate);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_config;
    }

    try {
        const towsim::Scenario sc = load(config, over);
        if (run->parsed()) {
            const auto records = towsim::run_scenario(sc.config, sc.trajectory);
            towsim::write_csv(records, out, sc.config.links.size());
            std::printf("wrote %zu records to %s\n", records.size(), out.c_str());
        } else if (steady->parsed()) {
            const double v = speed_knots ? *speed_knots * towsim::knots_to_mps : sc.trajectory.speed();
            print_steady(towsim::statics::steady_state(sc.config, v), v);
        } else {
            std::printf("ok: %zu links, %.6g s, dt %.6g s, %zu legs\n", sc.config.links.size(),
                        sc.config.duration, sc.config.dt, sc.trajectory.legs().size());
        }
    } catch (const towsim::ConfigError &e) {
        for (const auto &p : e.problems())
            std::cerr << "config error: " << p << '\n';
        return exit_config;
    } catch (const towsim::NumericalError &e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return exit_numerical;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_config;
    }
    return exit_ok;
}
