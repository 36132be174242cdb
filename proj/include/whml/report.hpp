#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include "json.hpp"

namespace whml {

struct VerificationReport {
    std::string name;
    std::string grid;
    // signed margin (must be > tolerance) or residual (must be <= tolerance)
    double min_margin = 0.0;
    std::string argmin;
    double tolerance = 0.0;
    bool is_residual = false;
    bool pass = false;
    std::string notes;

    void judge() { pass = is_residual ? (min_margin <= tolerance) : (min_margin > tolerance); }

    nlohmann::ordered_json to_json() const
    {
        nlohmann::ordered_json j;
        j["region"] = name;
        j["grid"] = grid;
        j[is_residual ? "max_residual" : "min_margin"] = min_margin;
        j["argmin"] = argmin;
        j["pass"] = pass;
        j["tolerance"] = tolerance;
        if (!notes.empty())
            j["notes"] = notes;
        return j;
    }

    std::string to_text() const
    {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.6e", min_margin);
        std::string s = "region: " + name + "\n";
        s += "grid: " + grid + "\n";
        s += std::string(is_residual ? "max_residual: " : "min_margin: ") + buf + "\n";
        s += "argmin: " + argmin + "\n";
        std::snprintf(buf, sizeof buf, "%.3e", tolerance);
        s += std::string("tolerance: ") + buf + "\n";
        s += std::string("pass: ") + (pass ? "true" : "false") + "\n";
        if (!notes.empty())
            s += "notes: " + notes + "\n";
        return s;
    }
};

} // namespace whml
