#pragma once

#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gmeb/bounds.hpp"
#include "gmeb/io.hpp"
#include "gmeb/states.hpp"

namespace gmeb {

enum class SweepFamily { ghz_noise, w_noise, ghz_w_noise, file };

/// Parameter sweep over a one- or two-parameter state family; one CSV row
/// per grid point, in row-major grid order.
///   ghz_noise   : (1-p)/D I + p |GHZ><GHZ|           (parameter p)
///   w_noise     : (1-s)/D I + s |W><W|               (parameter s)
///   ghz_w_noise : (1-a-b)/D I + a |GHZ><GHZ| + b |W><W| over the simplex
///   file        : (1-t)/D I + t rho_file             (parameter t)
struct SweepSpec {
    SweepFamily family = SweepFamily::ghz_noise;
    int steps = 101;        // curve families
    int alpha_steps = 51;   // ghz_w_noise grid
    int beta_steps = 51;
    double a = 1.0;
    double b = 1.0;
    BoundMode mode = BoundMode::paper_literal;
    std::string state_path;  // family == file
    std::string out_path;
};

namespace detail {

inline std::string format_12g(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

struct RowWriter {
    std::ostream& os;
    bool first = true;
    void field(const std::string& s) {
        if (!first) os << ',';
        os << s;
        first = false;
    }
    void number(double x) { field(format_12g(x)); }
    void end() {
        os << '\n';
        first = true;
    }
};

inline void write_report_header(RowWriter& w, const BoundReport& first_report) {
    w.field("purity");
    w.field("estimator");
    const char* bound_cols[] = {"bs3", "bsn", "c3", "nsum", "l1", "l2"};
    const char* bound_names[] = {"bipartite_sum_3", "bipartite_sum_n", "concurrence_3",
                                 "negativity_sum", "l1", "l2"};
    for (int k = 0; k < 6; ++k) {
        if (std::string(bound_names[k]) == "concurrence_3") w.field("c3_available");
        w.field(std::string(bound_cols[k]) + "_raw");
        w.field(std::string(bound_cols[k]) + "_clamped");
    }
    for (const auto& c : first_report.cuts) w.field("C[" + c.label + "]");
    for (const auto& c : first_report.cuts) w.field("neg[" + c.label + "]");
    for (const auto& c : first_report.cuts) w.field("pt_norm[" + c.label + "]");
    for (const auto& c : first_report.cuts) w.field("realign_norm[" + c.label + "]");
    if (const auto* l1 = first_report.find("l1")) {
        (void)l1;
        w.field("mean_pt_norm");
        w.field("mean_realign_norm");
    }
    if (const auto* l2 = first_report.find("l2")) {
        for (const auto& [key, value] : l2->components) {
            (void)value;
            if (key.rfind("corr_norm[", 0) == 0) w.field(key);
        }
        w.field("mean_corr_norm");
    }
}

inline void write_report_row(RowWriter& w, const BoundReport& r) {
    w.number(r.state_purity);
    w.field(r.estimator);
    const char* bound_names[] = {"bipartite_sum_3", "bipartite_sum_n", "concurrence_3",
                                 "negativity_sum", "l1", "l2"};
    for (const char* name : bound_names) {
        const BoundEntry* e = r.find(name);
        if (std::string(name) == "concurrence_3") w.field(e && e->available ? "1" : "0");
        if (e && e->available) {
            w.number(e->raw);
            w.number(e->clamped);
        } else {
            w.field("NA");
            w.field("NA");
        }
    }
    for (const auto& c : r.cuts) w.number(c.concurrence_estimate);
    for (const auto& c : r.cuts) w.number(c.negativity_estimate);
    for (const auto& c : r.cuts) w.number(c.pt_norm);
    for (const auto& c : r.cuts) w.number(c.realign_norm);
    if (const auto* l1 = r.find("l1")) {
        w.number(l1->components.at("mean_pt_norm"));
        w.number(l1->components.at("mean_realign_norm"));
    }
    if (const auto* l2 = r.find("l2")) {
        for (const auto& [key, value] : l2->components)
            if (key.rfind("corr_norm[", 0) == 0) w.number(value);
        w.number(l2->components.at("mean_corr_norm"));
    }
}

}  // namespace detail

inline void run_sweep(const SweepSpec& spec, std::ostream& os) {
    if (spec.steps < 2 || spec.alpha_steps < 2 || spec.beta_steps < 2)
        throw std::invalid_argument("run_sweep: step counts must be >= 2");

    ReportOptions opts;
    opts.a = spec.a;
    opts.b = spec.b;
    opts.mode = spec.mode;

    std::vector<std::string> param_names;
    std::vector<std::pair<std::vector<double>, MultipartiteState>> grid;

    if (spec.family == SweepFamily::ghz_w_noise) {
        param_names = {"alpha", "beta"};
        const auto ghz_state = density_of(ghz(3, 2));
        const auto w = density_of(w_state(3));
        const auto noise = maximally_mixed({2, 2, 2});
        for (int i = 0; i < spec.alpha_steps; ++i) {
            const double alpha = static_cast<double>(i) / (spec.alpha_steps - 1);
            for (int j = 0; j < spec.beta_steps; ++j) {
                const double beta = static_cast<double>(j) / (spec.beta_steps - 1);
                if (alpha + beta > 1.0 + 1e-12) continue;
                const double rest = std::max(0.0, 1.0 - alpha - beta);
                grid.emplace_back(std::vector<double>{alpha, beta},
                                  mix({noise, ghz_state, w}, {rest, alpha, beta}));
            }
        }
    } else {
        MultipartiteState target = maximally_mixed({2, 2, 2});
        switch (spec.family) {
            case SweepFamily::ghz_noise:
                param_names = {"p"};
                target = density_of(ghz(3, 2));
                break;
            case SweepFamily::w_noise:
                param_names = {"s"};
                target = density_of(w_state(3));
                break;
            case SweepFamily::file:
                param_names = {"t"};
                if (spec.state_path.empty())
                    throw std::invalid_argument("run_sweep: family 'file' needs a state path");
                target = load_state(spec.state_path);
                break;
            default:
                throw std::invalid_argument("run_sweep: unknown family");
        }
        const auto noise = maximally_mixed(target.dims);
        for (int i = 0; i < spec.steps; ++i) {
            const double t = static_cast<double>(i) / (spec.steps - 1);
            grid.emplace_back(std::vector<double>{t}, mix({noise, target}, {1.0 - t, t}));
        }
    }

    detail::RowWriter w{os};
    bool wrote_header = false;
    for (const auto& [params, state] : grid) {
        const BoundReport report = full_report(state, opts);
        if (!wrote_header) {
            for (const auto& name : param_names) w.field(name);
            detail::write_report_header(w, report);
            w.end();
            wrote_header = true;
        }
        for (double p : params) w.number(p);
        detail::write_report_row(w, report);
        w.end();
    }
}

inline void run_sweep_to_file(const SweepSpec& spec) {
    if (spec.out_path.empty()) throw std::invalid_argument("run_sweep_to_file: missing output path");
    std::ofstream os(spec.out_path, std::ios::binary);
    if (!os) throw std::runtime_error("run_sweep_to_file: cannot open " + spec.out_path);
    run_sweep(spec, os);
    if (!os) throw std::runtime_error("run_sweep_to_file: write to " + spec.out_path + " failed");
}

}  // namespace gmeb
