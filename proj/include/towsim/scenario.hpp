// Scenario file reader. INI-style: `[section]` headers, `key = value` lines,
// `#` starts a comment. Sections:
//
//   [fluid]   density gravity                          (optional, 1000 / 9.81)
//   [cable]   length diameter mass_per_length cdn cdt  (required)
//             segments                                 (optional, 2)
//   [array]   length diameter mass_per_length cdn cdt  (required)
//   [sim]     dt duration_s output_stride v_epsilon quadrature_points
//             quadrature_panels                        (optional; duration
//                                                       defaults to the track)
//   [ship]    speed_knots (required) x0 y0 course_deg  (optional)
//   [steady]  drag_model=tangential|normal buoyancy_opposes_weight=true|false
//   [leg.K]   type=straight course_deg duration_s
//             type=turn rate_deg_per_min duration_s
//
// Legs run in increasing K. Unknown sections and keys are errors.
#pragma once

#include "model.hpp"
#include "shiptrack.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace towsim {

struct Scenario {
    ChainConfig config;
    ShipTrajectory trajectory;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

struct Entry {
    std::string value;
    int line = 0;
    bool used = false;
};

struct Section {
    int line = 0;
    std::map<std::string, Entry> keys;
};

class IniReader {
  public:
    explicit IniReader(std::string_view text) { parse(text); }

    std::vector<std::string> errors;

    bool has(const std::string &sec) const { return sections_.count(sec) != 0; }

    std::vector<std::string> section_names() const {
        std::vector<std::string> out;
        for (const auto &[k, v] : sections_)
            out.push_back(k);
        return out;
    }

    int section_line(const std::string &sec) const { return sections_.at(sec).line; }

    std::optional<double> number(const std::string &sec, const std::string &key, bool required) {
        Entry *e = find(sec, key, required);
        if (!e)
            return std::nullopt;
        double v = 0.0;
        const char *first = e->value.data();
        const char *last = first + e->value.size();
        const auto res = std::from_chars(first, last, v);
        if (res.ec != std::errc{} || res.ptr != last) {
            errors.push_back(where(*e) + "[" + sec + "] " + key + ": expected a number, got '" + e->value + "'");
            return std::nullopt;
        }
        return v;
    }

    std::optional<int> integer(const std::string &sec, const std::string &key, bool required) {
        Entry *e = find(sec, key, required);
        if (!e)
            return std::nullopt;
        int v = 0;
        const char *first = e->value.data();
        const char *last = first + e->value.size();
        const auto res = std::from_chars(first, last, v);
        if (res.ec != std::errc{} || res.ptr != last) {
            errors.push_back(where(*e) + "[" + sec + "] " + key + ": expected an integer, got '" + e->value + "'");
            return std::nullopt;
        }
        return v;
    }

    std::optional<std::string> text(const std::string &sec, const std::string &key, bool required) {
        Entry *e = find(sec, key, required);
        if (!e)
            return std::nullopt;
        return e->value;
    }

    std::optional<bool> boolean(const std::string &sec, const std::string &key, bool required) {
        Entry *e = find(sec, key, required);
        if (!e)
            return std::nullopt;
        if (e->value == "true")
            return true;
        if (e->value == "false")
            return false;
        errors.push_back(where(*e) + "[" + sec + "] " + key + ": expected true or false, got '" + e->value + "'");
        return std::nullopt;
    }

    /// Reports keys never consumed by the schema.
    void flag_unused() {
        for (auto &[name, sec] : sections_)
            for (auto &[key, e] : sec.keys)
                if (!e.used)
                    errors.push_back(where(e) + "unknown key '" + key + "' in [" + name + "]");
    }

    static std::string where(const Entry &e) { return "line " + std::to_string(e.line) + ": "; }

  private:
    Entry *find(const std::string &sec, const std::string &key, bool required) {
        auto s = sections_.find(sec);
        if (s != sections_.end()) {
            auto k = s->second.keys.find(key);
            if (k != s->second.keys.end()) {
                k->second.used = true;
                return &k->second;
            }
        }
        if (required) {
            if (s == sections_.end())
                errors.push_back("missing key '" + key + "' in [" + sec + "]");
            else
                errors.push_back("line " + std::to_string(s->second.line) + ": missing key '" + key + "' in [" +
                                 sec + "]");
        }
        return nullptr;
    }

    void parse(std::string_view text) {
        std::string current;
        int lineno = 0;
        std::size_t pos = 0;
        while (pos <= text.size()) {
            const auto nl = text.find('\n', pos);
            std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
            pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
            ++lineno;
            if (const auto hash = raw.find('#'); hash != std::string_view::npos)
                raw = raw.substr(0, hash);
            const std::string_view line = trim(raw);
            if (line.empty())
                continue;
            const std::string here = "line " + std::to_string(lineno) + ": ";
            if (line.front() == '[') {
                if (line.back() != ']') {
                    errors.push_back(here + "malformed section header");
                    continue;
                }
                current = std::string(trim(line.substr(1, line.size() - 2)));
                if (sections_.count(current))
                    errors.push_back(here + "duplicate section [" + current + "]");
                else
                    sections_[current].line = lineno;
                continue;
            }
            const auto eq = line.find('=');
            if (eq == std::string_view::npos) {
                errors.push_back(here + "expected key=value");
                continue;
            }
            if (current.empty()) {
                errors.push_back(here + "key outside of any section");
                continue;
            }
            const std::string key(trim(line.substr(0, eq)));
            const std::string value(trim(line.substr(eq + 1)));
            auto &keys = sections_[current].keys;
            if (keys.count(key)) {
                errors.push_back(here + "duplicate key '" + key + "' in [" + current + "]");
                continue;
            }
            keys[key] = Entry{value, lineno, false};
        }
    }

    std::map<std::string, Section> sections_;
};

inline BodyParams read_body(IniReader &ini, const std::string &sec) {
    BodyParams b;
    b.length = ini.number(sec, "length", true).value_or(0.0);
    b.diameter = ini.number(sec, "diameter", true).value_or(0.0);
    b.mass_per_length = ini.number(sec, "mass_per_length", true).value_or(0.0);
    b.cd_normal = ini.number(sec, "cdn", true).value_or(0.0);
    b.cd_tangential = ini.number(sec, "cdt", true).value_or(0.0);
    return b;
}

} // namespace detail

/// Parses and validates a scenario. All problems found are reported together
/// in one ConfigError.
inline Scenario parse_scenario(std::string_view text) {
    detail::IniReader ini(text);
    auto &errs = ini.errors;

    static const std::vector<std::string> known = {"fluid", "cable", "array", "sim", "ship", "steady"};
    std::vector<std::pair<int, std::string>> legs;
    for (const auto &name : ini.section_names()) {
        if (std::find(known.begin(), known.end(), name) != known.end())
            continue;
        if (name.rfind("leg.", 0) == 0) {
            int k = 0;
            const std::string idx = name.substr(4);
            const auto res = std::from_chars(idx.data(), idx.data() + idx.size(), k);
            if (res.ec == std::errc{} && res.ptr == idx.data() + idx.size() && k >= 1) {
                legs.emplace_back(k, name);
                continue;
            }
        }
        errs.push_back("line " + std::to_string(ini.section_line(name)) + ": unknown section [" + name + "]");
    }
    std::sort(legs.begin(), legs.end());
    for (const char *req : {"cable", "array", "ship"})
        if (!ini.has(req))
            errs.push_back(std::string("missing section [") + req + "]");
    if (legs.empty())
        errs.emplace_back("missing section [leg.1]: at least one leg required");

    ChainConfig cfg;
    cfg.fluid.density = ini.number("fluid", "density", false).value_or(1000.0);
    cfg.fluid.gravity = ini.number("fluid", "gravity", false).value_or(9.81);

    const int segments = ini.integer("cable", "segments", false).value_or(2);
    if (ini.has("cable")) {
        const BodyParams cable = detail::read_body(ini, "cable");
        if (segments < 1)
            errs.emplace_back("[cable] segments must be at least 1");
        else
            cfg.links = split_cable(cable, segments);
    }
    if (ini.has("array"))
        cfg.links.push_back(detail::read_body(ini, "array"));

    cfg.dt = ini.number("sim", "dt", false).value_or(0.1);
    const std::optional<double> duration = ini.number("sim", "duration_s", false);
    cfg.output_stride = ini.integer("sim", "output_stride", false).value_or(10);
    cfg.v_epsilon = ini.number("sim", "v_epsilon", false).value_or(1e-9);
    cfg.quadrature_points = ini.integer("sim", "quadrature_points", false).value_or(5);
    cfg.quadrature_panels = ini.integer("sim", "quadrature_panels", false).value_or(1);

    if (auto model = ini.text("steady", "drag_model", false)) {
        if (*model == "tangential")
            cfg.steady.drag_model = SteadyDragModel::tangential;
        else if (*model == "normal")
            cfg.steady.drag_model = SteadyDragModel::normal;
        else
            errs.push_back("[steady] drag_model must be 'tangential' or 'normal', got '" + *model + "'");
    }
    cfg.steady.buoyancy_opposes_weight = ini.boolean("steady", "buoyancy_opposes_weight", false).value_or(false);

    const double x0 = ini.number("ship", "x0", false).value_or(0.0);
    const double y0 = ini.number("ship", "y0", false).value_or(0.0);
    const std::optional<double> knots = ini.number("ship", "speed_knots", ini.has("ship"));
    const std::optional<double> course0 = ini.number("ship", "course_deg", false);

    std::vector<TrajectoryLeg> track;
    for (const auto &[k, name] : legs) {
        const auto type = ini.text(name, "type", true);
        const double dur = ini.number(name, "duration_s", true).value_or(0.0);
        if (!type)
            continue;
        if (*type == "straight") {
            track.push_back(StraightLeg{ini.number(name, "course_deg", true).value_or(0.0), dur});
        } else if (*type == "turn") {
            track.push_back(TurnLeg{ini.number(name, "rate_deg_per_min", true).value_or(0.0), dur});
        } else {
            errs.push_back("line " + std::to_string(ini.section_line(name)) + ": [" + name +
                           "] type must be 'straight' or 'turn', got '" + *type + "'");
        }
    }

    ini.flag_unused();
    if (!errs.empty())
        throw ConfigError(errs);

    std::optional<ShipTrajectory> traj;
    try {
        traj = build_trajectory(x0, y0, *knots * knots_to_mps, track, course0);
    } catch (const ConfigError &e) {
        for (const auto &p : e.problems())
            errs.push_back("track: " + p);
    }
    cfg.duration = duration.value_or(traj ? traj->total_duration() : 0.0);
    for (auto &p : config_errors(cfg))
        errs.push_back(p);
    if (traj && cfg.duration > traj->total_duration() * (1.0 + 1e-12))
        errs.push_back("[sim] duration_s exceeds the ship track length");
    if (!errs.empty())
        throw ConfigError(errs);
    return Scenario{cfg, *traj};
}

inline Scenario load_scenario(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError("cannot open scenario file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str());
}

} // namespace towsim
