#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "gmeb/bounds.hpp"
#include "gmeb/states.hpp"

namespace gmeb {

/// A state file could not be read or did not match the expected layout.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string format_17g(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace detail

/// Writes the state as JSON with keys "dims", "re", "im"; "re" and "im" are
/// D x D arrays of row-major rows. Numbers carry 17 significant digits, so
/// a save/load round trip reproduces every entry exactly.
inline void save_state(const MultipartiteState& state, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("save_state: cannot open " + path + " for writing");
    const std::size_t d = state.dim();
    os << "{\n  \"dims\": [";
    for (std::size_t p = 0; p < state.dims.size(); ++p)
        os << (p ? ", " : "") << state.dims[p];
    os << "],\n";
    for (int part = 0; part < 2; ++part) {
        os << "  \"" << (part == 0 ? "re" : "im") << "\": [\n";
        for (std::size_t i = 0; i < d; ++i) {
            os << "    [";
            for (std::size_t j = 0; j < d; ++j) {
                const cplx z = state.rho(i, j);
                os << (j ? ", " : "") << detail::format_17g(part == 0 ? z.real() : z.imag());
            }
            os << (i + 1 < d ? "],\n" : "]\n");
        }
        os << (part == 0 ? "  ],\n" : "  ]\n");
    }
    os << "}\n";
    if (!os) throw std::runtime_error("save_state: write to " + path + " failed");
}

inline MultipartiteState load_state(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ParseError("load_state: cannot open " + path);
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(is);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("load_state: " + path + ": " + e.what());
    }
    if (!doc.is_object()) throw ParseError("load_state: top-level value must be an object");
    for (const char* key : {"dims", "re", "im"})
        if (!doc.contains(key))
            throw ParseError(std::string("load_state: missing field '") + key + "'");

    if (!doc["dims"].is_array() || doc["dims"].empty())
        throw ParseError("load_state: field 'dims' must be a nonempty array of integers");
    std::vector<int> dims;
    for (const auto& v : doc["dims"]) {
        if (!v.is_number_integer())
            throw ParseError("load_state: field 'dims' must contain integers");
        dims.push_back(v.get<int>());
        if (dims.back() < 2) throw ParseError("load_state: field 'dims': every entry must be >= 2");
    }
    const std::size_t d = total_dimension(dims);

    ComplexMatrix rho(d, d);
    for (int part = 0; part < 2; ++part) {
        const char* key = part == 0 ? "re" : "im";
        const auto& rows = doc[key];
        if (!rows.is_array() || rows.size() != d)
            throw ParseError(std::string("load_state: field '") + key + "': expected " +
                             std::to_string(d) + " rows, found " +
                             std::to_string(rows.is_array() ? rows.size() : 0));
        for (std::size_t i = 0; i < d; ++i) {
            const auto& row = rows[i];
            if (!row.is_array() || row.size() != d)
                throw ParseError(std::string("load_state: field '") + key + "' row " +
                                 std::to_string(i) + ": expected " + std::to_string(d) +
                                 " entries");
            for (std::size_t j = 0; j < d; ++j) {
                if (!row[j].is_number())
                    throw ParseError(std::string("load_state: field '") + key + "' entry (" +
                                     std::to_string(i) + "," + std::to_string(j) +
                                     "): not a number");
                const double v = row[j].get<double>();
                rho(i, j) += part == 0 ? cplx(v, 0.0) : cplx(0.0, v);
            }
        }
    }
    return MultipartiteState::make(std::move(dims), std::move(rho));  // may throw PhysicalityError
}

inline nlohmann::ordered_json report_to_json(const BoundReport& report) {
    nlohmann::ordered_json j;
    j["dims"] = report.dims;
    j["purity"] = report.state_purity;
    j["pure_input"] = report.pure_input;
    j["estimator"] = report.estimator;
    j["a"] = report.a;
    j["b"] = report.b;
    j["mode"] = to_string(report.requested_mode);
    j["cuts"] = nlohmann::ordered_json::array();
    for (const auto& c : report.cuts) {
        nlohmann::ordered_json cj;
        cj["cut"] = c.label;
        cj["pt_norm"] = c.pt_norm;
        cj["realign_norm"] = c.realign_norm;
        cj["concurrence_estimate"] = c.concurrence_estimate;
        cj["negativity_estimate"] = c.negativity_estimate;
        j["cuts"].push_back(std::move(cj));
    }
    j["bounds"] = nlohmann::ordered_json::array();
    for (const auto& e : report.entries) {
        nlohmann::ordered_json ej;
        ej["name"] = e.name;
        ej["available"] = e.available;
        if (e.available) {
            ej["raw"] = e.raw;
            ej["clamped"] = e.clamped;
            ej["certifying"] = e.certifying;
            if (!e.estimator.empty()) ej["estimator"] = e.estimator;
            if (!e.mode.empty()) ej["mode"] = e.mode;
            ej["components"] = e.components;
        }
        if (!e.note.empty()) ej["note"] = e.note;
        j["bounds"].push_back(std::move(ej));
    }
    return j;
}

}  // namespace gmeb
