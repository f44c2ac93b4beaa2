// CSV output of trajectory records. Numbers are written in shortest
// round-trip form so a reader recovers the doubles bit-exactly.
#pragma once

#include "simulation.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

namespace towsim {

inline std::string format_double(double v) {
    std::array<char, 32> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (res.ec != std::errc{})
        throw std::runtime_error("format_double: conversion failed");
    return std::string(buf.data(), res.ptr);
}

inline std::vector<std::string> csv_header(std::size_t links) {
    std::vector<std::string> cols{"t_s", "ship_x_m", "ship_y_m", "ship_course_deg"};
    for (std::size_t i = 1; i <= links; ++i) {
        const std::string k = std::to_string(i);
        for (const char *pattern : {"theta%_rad", "thetadot%_rad_s", "tail%_x_m", "tail%_y_m", "cg%_x_m", "cg%_y_m"}) {
            std::string c = pattern;
            c.replace(c.find('%'), 1, k);
            cols.push_back(c);
        }
    }
    return cols;
}

/// Header then one row per record. `links` sets the column count when
/// records is empty.
inline void write_csv(const std::vector<TrajectoryRecord> &records, std::ostream &os, std::size_t links = 0) {
    if (!records.empty())
        links = records.front().links.size();
    const auto header = csv_header(links);
    for (std::size_t i = 0; i < header.size(); ++i)
        os << (i ? "," : "") << header[i];
    os << '\n';
    for (const auto &r : records) {
        os << format_double(r.t) << ',' << format_double(r.ship.x) << ',' << format_double(r.ship.y) << ','
           << format_double(r.ship_course_deg);
        for (const auto &l : r.links)
            os << ',' << format_double(l.theta) << ',' << format_double(l.theta_dot) << ','
               << format_double(l.tail.x) << ',' << format_double(l.tail.y) << ',' << format_double(l.cg.x)
               << ',' << format_double(l.cg.y);
        os << '\n';
    }
}

inline void write_csv(const std::vector<TrajectoryRecord> &records, const std::string &path, std::size_t links = 0) {
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    write_csv(records, os, links);
    os.flush();
    if (!os)
        throw std::runtime_error("write to '" + path + "' failed");
}

} // namespace towsim
