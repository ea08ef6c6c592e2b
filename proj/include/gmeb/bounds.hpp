#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gmeb/measures.hpp"
#include "gmeb/states.hpp"
#include "gmeb/tensor_ops.hpp"

namespace gmeb {

/// The constant terms of the multipartite bounds come from bounding the
/// purity deficit 1 - tr rho_x^2 of every cut by a fixed floor. The
/// published formulas use 1 - 1/d for every cut, which is attainable only
/// when one side of the cut is a single party; `corrected` uses the
/// partition-dependent floor 1 - d^{-min(|x|,|xbar|)} instead and is valid
/// for every N. The two coincide for N <= 3.
enum class BoundMode { paper_literal, corrected };

inline std::string to_string(BoundMode m) {
    return m == BoundMode::paper_literal ? "paper-literal" : "corrected";
}

using CutEstimates = std::map<Bipartition, double>;

namespace detail {

inline void require_homogeneous(const MultipartiteState& state, int min_parties, const char* who) {
    if (state.n_parties() < min_parties)
        throw std::invalid_argument(std::string(who) + ": needs at least " +
                                    std::to_string(min_parties) + " parties");
    if (!state.homogeneous())
        throw std::invalid_argument(std::string(who) +
                                    ": heterogeneous local dimensions are not supported");
}

inline double estimate_for(const CutEstimates& est, const Bipartition& bp, const char* who) {
    auto it = est.find(bp);
    if (it == est.end())
        throw std::invalid_argument(std::string(who) + ": missing estimate for cut " + bp.label());
    return it->second;
}

// sqrt(1 - d^{-min(|x|,|xbar|)}), the attainable ceiling of
// sqrt(1 - tr rho_x^2) on the cut x|xbar.
inline double purity_deficit_ceiling(int d, const Bipartition& bp) {
    const int m = std::min(bp.x_size(), bp.xbar_size());
    return std::sqrt(1.0 - std::pow(static_cast<double>(d), -static_cast<double>(m)));
}

// Constant subtracted in the concurrence/negativity sum bounds: the largest
// possible sum of deficit ceilings over all cuts but one (the excluded cut
// is the one with the smallest ceiling).
inline double sum_bound_constant(const MultipartiteState& state, BoundMode mode) {
    const int n = state.n_parties();
    const int d = state.local_dim();
    if (mode == BoundMode::paper_literal)
        return (std::exp2(n - 1) - 2.0) * std::sqrt((d - 1.0) / d);
    double sum = 0.0, min_ceiling = 1.0;
    for (const auto& bp : enumerate_bipartitions(n)) {
        const double c = purity_deficit_ceiling(d, bp);
        sum += c;
        min_ceiling = std::min(min_ceiling, c);
    }
    return sum - min_ceiling;
}

// Same constant before the square root / without it, used by the
// N-concurrence and tangle bounds.
inline double deficit_sum_constant(const MultipartiteState& state, BoundMode mode) {
    const int n = state.n_parties();
    const int d = state.local_dim();
    if (mode == BoundMode::paper_literal) return (std::exp2(n - 1) - 2.0) * (d - 1.0) / d;
    double sum = 0.0, min_floor = 1.0;
    for (const auto& bp : enumerate_bipartitions(n)) {
        const int m = std::min(bp.x_size(), bp.xbar_size());
        const double c = 1.0 - std::pow(static_cast<double>(d), -static_cast<double>(m));
        sum += c;
        min_floor = std::min(min_floor, c);
    }
    return sum - min_floor;
}

}  // namespace detail

/// Tripartite GME concurrence bound from the three bipartite concurrences:
///   (C_{1|23} + C_{2|13} + C_{3|12}) / sqrt(2) - 2 sqrt((d-1)/d).
inline double bipartite_sum_bound3(const MultipartiteState& state, const CutEstimates& estimates) {
    detail::require_homogeneous(state, 3, "bipartite_sum_bound3");
    if (state.n_parties() != 3)
        throw std::invalid_argument("bipartite_sum_bound3: defined for exactly 3 parties");
    const int d = state.local_dim();
    double sum = 0.0;
    for (const auto& bp : enumerate_bipartitions(3))
        sum += detail::estimate_for(estimates, bp, "bipartite_sum_bound3");
    return sum / std::sqrt(2.0) - 2.0 * std::sqrt((d - 1.0) / d);
}

/// N-partite generalization: (1/sqrt(2)) sum_x C_{x|xbar} minus the
/// deficit-ceiling constant (see BoundMode). Reduces to the tripartite
/// form when N = 3.
inline double bipartite_sum_bound(const MultipartiteState& state, const CutEstimates& estimates,
                                  BoundMode mode = BoundMode::paper_literal) {
    detail::require_homogeneous(state, 2, "bipartite_sum_bound");
    double sum = 0.0;
    for (const auto& bp : enumerate_bipartitions(state.n_parties()))
        sum += detail::estimate_for(estimates, bp, "bipartite_sum_bound");
    return sum / std::sqrt(2.0) - detail::sum_bound_constant(state, mode);
}

/// Tripartite GME concurrence bound from the tripartite concurrence:
///   C_3 - sqrt(2(d-1)/d).
inline double concurrence_bound3(const MultipartiteState& state, double c3_estimate) {
    detail::require_homogeneous(state, 3, "concurrence_bound3");
    if (state.n_parties() != 3)
        throw std::invalid_argument("concurrence_bound3: defined for exactly 3 parties");
    const int d = state.local_dim();
    return c3_estimate - std::sqrt(2.0 * (d - 1.0) / d);
}

/// N-partite version: 2^{(N-3)/2} C_N minus the square root of the deficit
/// constant. Reduces to concurrence_bound3 when N = 3.
inline double concurrence_bound(const MultipartiteState& state, double cn_estimate,
                                 BoundMode mode = BoundMode::paper_literal) {
    detail::require_homogeneous(state, 3, "concurrence_bound");
    const int n = state.n_parties();
    return std::exp2(0.5 * (n - 3)) * cn_estimate -
           std::sqrt(detail::deficit_sum_constant(state, mode));
}

/// GME concurrence bound from the tangle: 2^{N-3} tau_N minus the deficit
/// constant (not square-rooted).
inline double tangle_bound(const MultipartiteState& state, double tangle_estimate,
                           BoundMode mode = BoundMode::paper_literal) {
    detail::require_homogeneous(state, 3, "tangle_bound");
    const int n = state.n_parties();
    return std::exp2(n - 3) * tangle_estimate - detail::deficit_sum_constant(state, mode);
}

/// GME concurrence bound from global negativities,
///   (1/sqrt(2)) sum_x N^x - (2^{N-1}-2) sqrt((d-1)/d);
/// identical in form to bipartite_sum_bound because N^x equals C_{x|xbar}
/// on pure states.
inline double negativity_sum_bound(const MultipartiteState& state, const CutEstimates& estimates) {
    detail::require_homogeneous(state, 2, "negativity_sum_bound");
    double sum = 0.0;
    for (const auto& bp : enumerate_bipartitions(state.n_parties()))
        sum += detail::estimate_for(estimates, bp, "negativity_sum_bound");
    return sum / std::sqrt(2.0) - detail::sum_bound_constant(state, BoundMode::paper_literal);
}

struct L1Parts {
    double value = 0.0;
    double mean_pt_norm = 0.0;       // average of the three single-party PT trace norms
    double mean_realign_norm = 0.0;  // average of the three single|pair realignment trace norms
    std::vector<double> pt_norms;
    std::vector<double> realign_norms;
};

/// Reference tripartite bound built from averaged PPT and CCNR violations:
///   (1/sqrt(d(d-1))) (max{M, N} - (1+2d)/3),
/// M the mean partial-transpose trace norm, N the mean realignment trace
/// norm over the cuts 1|23, 2|13, 3|12.
inline L1Parts l1_bound_parts(const MultipartiteState& state) {
    detail::require_homogeneous(state, 3, "l1_bound");
    if (state.n_parties() != 3)
        throw std::invalid_argument("l1_bound: defined for exactly 3 parties");
    const int d = state.local_dim();
    L1Parts parts;
    for (int party = 1; party <= 3; ++party) {
        const std::uint32_t x = std::uint32_t{1} << (party - 1);
        parts.pt_norms.push_back(trace_norm(partial_transpose(state, x)));
        parts.realign_norms.push_back(trace_norm(realign(state, x)));
        parts.mean_pt_norm += parts.pt_norms.back() / 3.0;
        parts.mean_realign_norm += parts.realign_norms.back() / 3.0;
    }
    parts.value = (std::max(parts.mean_pt_norm, parts.mean_realign_norm) - (1.0 + 2.0 * d) / 3.0) /
                  std::sqrt(d * (d - 1.0));
    return parts;
}

inline double l1_bound(const MultipartiteState& state) { return l1_bound_parts(state).value; }

struct L2Parts {
    double value = 0.0;
    double mean_corr_norm = 0.0;
    std::vector<double> corr_norms;   // cuts 1|23, 2|13, 3|12 (single party on the row side)
    std::vector<std::string> labels;
};

/// Reference tripartite bound from the bordered realignment matrices:
///   (1/sqrt(d(d-1))) (mean ||M_{a,b}^{i|jk}|| - sqrt((1+a^2)(1+b^2)) - 2(d-1)/3).
/// The single party sits on the row side of each block matrix; with a != b
/// the two orientations of a cut give different norms, so the orientation
/// is part of the definition.
inline L2Parts l2_bound_parts(const MultipartiteState& state, double a, double b) {
    detail::require_homogeneous(state, 3, "l2_bound");
    if (state.n_parties() != 3)
        throw std::invalid_argument("l2_bound: defined for exactly 3 parties");
    if (!std::isfinite(a) || !std::isfinite(b))
        throw std::invalid_argument("l2_bound: a and b must be finite");
    const int d = state.local_dim();
    L2Parts parts;
    for (int party = 1; party <= 3; ++party) {
        const std::uint32_t x = std::uint32_t{1} << (party - 1);
        parts.corr_norms.push_back(trace_norm(correlation_matrix_ab(state, x, a, b)));
        parts.labels.push_back(subset_label(3, x));
        parts.mean_corr_norm += parts.corr_norms.back() / 3.0;
    }
    parts.value = (parts.mean_corr_norm - std::sqrt((1.0 + a * a) * (1.0 + b * b)) -
                   2.0 * (d - 1.0) / 3.0) /
                  std::sqrt(d * (d - 1.0));
    return parts;
}

inline double l2_bound(const MultipartiteState& state, double a, double b) {
    return l2_bound_parts(state, a, b).value;
}

// ---------------------------------------------------------------------------
// Combined report
// ---------------------------------------------------------------------------

struct BoundEntry {
    std::string name;
    bool available = true;
    bool certifying = true;  // false where the published constant is not proven sound (N >= 4)
    double raw = 0.0;
    double clamped = 0.0;
    std::map<std::string, double> components;
    std::string estimator;  // exact-pure | pt-ccnr-plugin | user-supplied
    std::string mode;       // empty where no mode applies
    std::string note;
};

struct CutSummary {
    std::string label;
    double pt_norm = 0.0;
    double realign_norm = 0.0;
    double concurrence_estimate = 0.0;
    double negativity_estimate = 0.0;
};

struct BoundReport {
    std::vector<int> dims;
    double state_purity = 0.0;
    bool pure_input = false;
    double a = 1.0, b = 1.0;
    BoundMode requested_mode = BoundMode::paper_literal;
    std::string estimator;
    std::vector<CutSummary> cuts;
    std::vector<BoundEntry> entries;

    const BoundEntry* find(std::string_view name) const {
        for (const auto& e : entries)
            if (e.name == name) return &e;
        return nullptr;
    }
    const BoundEntry* find(std::string_view name, BoundMode mode) const {
        for (const auto& e : entries)
            if (e.name == name && e.mode == to_string(mode)) return &e;
        return nullptr;
    }
};

struct ReportOptions {
    double a = 1.0;
    double b = 1.0;
    BoundMode mode = BoundMode::paper_literal;
    // Mixed-state inputs have no computable N-concurrence / tangle; the
    // corresponding bounds stay unavailable unless estimates are supplied.
    std::optional<double> cn_estimate;
    std::optional<double> tangle_estimate;
};

namespace detail {

constexpr double pure_purity_threshold = 1.0 - 1e-10;

inline BoundEntry make_entry(std::string name, double raw, std::string estimator,
                             std::string mode = {}, bool certifying = true) {
    BoundEntry e;
    e.name = std::move(name);
    e.raw = raw;
    e.clamped = std::max(0.0, raw);
    e.estimator = std::move(estimator);
    e.mode = std::move(mode);
    e.certifying = certifying;
    return e;
}

inline BoundEntry unavailable_entry(std::string name, std::string note) {
    BoundEntry e;
    e.name = std::move(name);
    e.available = false;
    e.certifying = false;
    e.note = std::move(note);
    return e;
}

}  // namespace detail

/// Evaluates every applicable bound on one state. Pure inputs (purity
/// within 1e-10 of 1) use the exact pure-state measures as estimates;
/// mixed inputs fall back to the PT/CCNR concurrence plug-in and the
/// computable negativity, and leave the N-concurrence / tangle bounds
/// unavailable unless the caller supplies estimates.
inline BoundReport full_report(const MultipartiteState& state, const ReportOptions& opts = {}) {
    detail::require_homogeneous(state, 2, "full_report");
    const int n = state.n_parties();
    const auto cuts = enumerate_bipartitions(n);

    BoundReport report;
    report.dims = state.dims;
    report.a = opts.a;
    report.b = opts.b;
    report.requested_mode = opts.mode;
    report.state_purity = purity(state.rho);
    report.pure_input = report.state_purity >= detail::pure_purity_threshold;
    report.estimator = report.pure_input ? "exact-pure" : "pt-ccnr-plugin";

    CutEstimates conc_est, neg_est;
    int max_min_factor_dim = 0;
    for (const auto& bp : cuts) {
        CutSummary cs;
        cs.label = bp.label();
        const auto parts = pt_ccnr_bipartite_bound_parts(state, bp);
        cs.pt_norm = parts.pt_norm;
        cs.realign_norm = parts.realign_norm;
        max_min_factor_dim = std::max(max_min_factor_dim, parts.min_factor_dim);
        if (report.pure_input) {
            const double p = purity(partial_trace(state, bp.mask));
            cs.concurrence_estimate = std::sqrt(std::max(0.0, 2.0 * (1.0 - p)));
            cs.negativity_estimate = cs.concurrence_estimate;
        } else {
            cs.concurrence_estimate = parts.value;
            cs.negativity_estimate = parts.pt_norm - 1.0;
        }
        conc_est[bp] = cs.concurrence_estimate;
        neg_est[bp] = cs.negativity_estimate;
        report.cuts.push_back(std::move(cs));
    }

    // N-concurrence and tangle estimates
    std::optional<double> cn_est = opts.cn_estimate;
    std::optional<double> tangle_est = opts.tangle_estimate;
    std::string cn_provenance = "user-supplied";
    if (report.pure_input) {
        double purity_sum = 0.0;
        int reduction_count = 0;
        for (std::uint32_t mask : enumerate_reductions(n)) {
            purity_sum += purity(partial_trace(state, mask));
            ++reduction_count;
        }
        const double deficit = reduction_count - purity_sum;
        cn_est = std::exp2(1.0 - 0.5 * n) * std::sqrt(std::max(0.0, deficit));
        tangle_est = std::exp2(2.0 - n) * deficit;
        cn_provenance = "exact-pure";
    }

    const auto cut_components = [&](const CutEstimates& est, const char* prefix) {
        std::map<std::string, double> comps;
        for (std::size_t i = 0; i < cuts.size(); ++i) {
            const std::string lbl = cuts[i].label();
            comps[std::string(prefix) + "[" + lbl + "]"] = est.at(cuts[i]);
            comps["pt_norm[" + lbl + "]"] = report.cuts[i].pt_norm;
            comps["realign_norm[" + lbl + "]"] = report.cuts[i].realign_norm;
        }
        return comps;
    };

    const bool published_sound = n <= 3;  // deficit ceilings are proven only for N <= 3
    const std::vector<BoundMode> modes =
        n >= 4 ? std::vector<BoundMode>{opts.mode, opts.mode == BoundMode::paper_literal
                                                       ? BoundMode::corrected
                                                       : BoundMode::paper_literal}
               : std::vector<BoundMode>{opts.mode};
    const auto mode_certifies = [&](BoundMode m) {
        return n <= 3 || m == BoundMode::corrected;
    };

    if (n == 3) {
        auto e = detail::make_entry("bipartite_sum_3", bipartite_sum_bound3(state, conc_est),
                                    report.estimator);
        e.components = cut_components(conc_est, "C");
        report.entries.push_back(std::move(e));
    }

    for (BoundMode m : modes) {
        auto e = detail::make_entry("bipartite_sum_n", bipartite_sum_bound(state, conc_est, m),
                                    report.estimator, to_string(m), mode_certifies(m));
        e.components = cut_components(conc_est, "C");
        e.components["constant"] = detail::sum_bound_constant(state, m);
        report.entries.push_back(std::move(e));
    }

    if (n == 3) {
        if (cn_est) {
            auto e = detail::make_entry("concurrence_3", concurrence_bound3(state, *cn_est),
                                        cn_provenance);
            e.components["c3_estimate"] = *cn_est;
            report.entries.push_back(std::move(e));
        } else {
            report.entries.push_back(detail::unavailable_entry(
                "concurrence_3", "no tripartite-concurrence estimate for a mixed state"));
        }
    }

    for (BoundMode m : modes) {
        if (cn_est) {
            auto e = detail::make_entry("concurrence_n", concurrence_bound(state, *cn_est, m),
                                        cn_provenance, to_string(m), mode_certifies(m));
            e.components["cn_estimate"] = *cn_est;
            e.components["constant"] = detail::deficit_sum_constant(state, m);
            report.entries.push_back(std::move(e));
        } else {
            report.entries.push_back(detail::unavailable_entry(
                "concurrence_n", "no N-concurrence estimate for a mixed state"));
            break;
        }
    }

    for (BoundMode m : modes) {
        if (tangle_est) {
            auto e = detail::make_entry("tangle", tangle_bound(state, *tangle_est, m),
                                        cn_provenance, to_string(m), mode_certifies(m));
            e.components["tangle_estimate"] = *tangle_est;
            e.components["constant"] = detail::deficit_sum_constant(state, m);
            report.entries.push_back(std::move(e));
        } else {
            report.entries.push_back(detail::unavailable_entry(
                "tangle", "no tangle estimate for a mixed state"));
            break;
        }
    }

    {
        // ||rho^T_x|| - 1 matches the pure-state negativity only on cuts of
        // Schmidt rank <= 2, so for mixed states with a larger factor the
        // plug-in can overshoot the convex roof and the entry is
        // informational, not a certificate.
        const bool plugin_sound = report.pure_input || max_min_factor_dim <= 2;
        auto e = detail::make_entry("negativity_sum", negativity_sum_bound(state, neg_est),
                                    report.estimator, {}, published_sound && plugin_sound);
        e.components = cut_components(neg_est, "neg");
        if (!report.pure_input)
            e.note = plugin_sound
                         ? "plug-in estimate: ||rho^T_x|| - 1 lower-bounds the convex-roof "
                           "negativity on qubit-factor cuts"
                         : "plug-in estimate ||rho^T_x|| - 1 can exceed the convex-roof "
                           "negativity on cuts with factor dimension > 2";
        report.entries.push_back(std::move(e));
    }

    if (n == 3) {
        const auto l1 = l1_bound_parts(state);
        auto e = detail::make_entry("l1", l1.value, {});
        for (std::size_t i = 0; i < cuts.size(); ++i) {
            const std::string lbl = cuts[i].label();
            e.components["pt_norm[" + lbl + "]"] = report.cuts[i].pt_norm;
            e.components["realign_norm[" + lbl + "]"] = report.cuts[i].realign_norm;
        }
        e.components["mean_pt_norm"] = l1.mean_pt_norm;
        e.components["mean_realign_norm"] = l1.mean_realign_norm;
        report.entries.push_back(std::move(e));

        const auto l2 = l2_bound_parts(state, opts.a, opts.b);
        auto e2 = detail::make_entry("l2", l2.value, {});
        for (std::size_t i = 0; i < l2.corr_norms.size(); ++i)
            e2.components["corr_norm[" + l2.labels[i] + "]"] = l2.corr_norms[i];
        e2.components["mean_corr_norm"] = l2.mean_corr_norm;
        report.entries.push_back(std::move(e2));
    }

    return report;
}

inline BoundReport full_report(const MultipartiteState& state, double a, double b) {
    ReportOptions opts;
    opts.a = a;
    opts.b = b;
    return full_report(state, opts);
}

}  // namespace gmeb
