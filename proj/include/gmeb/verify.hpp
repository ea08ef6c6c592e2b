#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gmeb/bounds.hpp"
#include "gmeb/io.hpp"
#include "gmeb/measures.hpp"
#include "gmeb/oracle.hpp"
#include "gmeb/states.hpp"

namespace gmeb {

struct PropertyResult {
    std::string name;
    bool pass = true;
    double worst_margin = std::numeric_limits<double>::infinity();
    std::string detail;
};

struct VerifyOptions {
    std::uint64_t seed = 42;
    int oracle_samples = 500;
    int mixed_count = 50;
    double injected_bias = 0.0;  // test hook: offsets one bound before the sandwich
};

struct VerifyReport {
    std::vector<PropertyResult> properties;
    bool all_pass = true;
};

namespace detail {

// Collects the smallest slack seen by a property; negative slack is a fail.
struct MarginTracker {
    double worst = std::numeric_limits<double>::infinity();
    std::string at;
    void observe(double margin, const std::string& where) {
        if (margin < worst) {
            worst = margin;
            at = where;
        }
    }
    PropertyResult result(std::string name) const {
        PropertyResult r;
        r.name = std::move(name);
        r.pass = worst >= 0.0;
        r.worst_margin = worst;
        r.detail = at;
        return r;
    }
};

inline std::string format_g(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", x);
    return buf;
}

inline CutEstimates exact_pure_estimates(const PureState& psi) {
    CutEstimates est;
    for (const auto& bp : enumerate_bipartitions(psi.n_parties()))
        est[bp] = pure_bipartite_concurrence(psi, bp).value;
    return est;
}

inline CutEstimates plugin_estimates(const MultipartiteState& state) {
    CutEstimates est;
    for (const auto& bp : enumerate_bipartitions(state.n_parties()))
        est[bp] = pt_ccnr_bipartite_bound(state, bp);
    return est;
}

}  // namespace detail

/// Fixed trace-norm ground truths of the elementary states (tolerance 1e-8).
inline PropertyResult check_primitive_ground_truths() {
    detail::MarginTracker t;
    const double tol = 1e-8;
    const auto bell = density_of(ghz(2, 2));
    t.observe(tol - std::abs(trace_norm(partial_transpose(bell, 1u)) - 2.0), "bell pt norm");
    t.observe(tol - std::abs(trace_norm(realign(bell, 1u)) - 2.0), "bell realignment norm");
    const auto mixed2 = maximally_mixed({2, 2});
    t.observe(tol - std::abs(trace_norm(realign(mixed2, 1u)) - 0.5), "I4/4 realignment norm");
    const auto ghz3 = density_of(ghz(3, 2));
    t.observe(tol - std::abs(trace_norm(partial_transpose(ghz3, 1u)) - 2.0), "ghz pt norm");
    t.observe(tol - std::abs(l1_bound(ghz3) - 1.0 / (3.0 * std::sqrt(2.0))), "l1(ghz)");
    return t.result("primitive-ground-truths");
}

/// The bipartite-sum bound with exact estimates saturates the GME
/// concurrence on GHZ (value 1/sqrt(2)) and stays below it on W.
inline PropertyResult check_pure_saturation() {
    detail::MarginTracker t;
    const double tol = 1e-9;
    {
        const auto psi = ghz(3, 2);
        const auto state = density_of(psi);
        const double bound = bipartite_sum_bound3(state, detail::exact_pure_estimates(psi));
        const double exact = pure_gme_concurrence(psi).value;
        t.observe(tol - std::abs(bound - 1.0 / std::sqrt(2.0)), "ghz value");
        t.observe(tol - std::abs(bound - exact), "ghz saturation");
    }
    {
        const auto psi = w_state(3);
        const auto state = density_of(psi);
        const double bound = bipartite_sum_bound3(state, detail::exact_pure_estimates(psi));
        t.observe(tol - std::abs(bound - (2.0 - std::sqrt(2.0))), "w value");
        t.observe(2.0 / 3.0 - bound + tol, "w below exact");
    }
    return t.result("pure-saturation");
}

/// Schmidt-rank floor: every reduction of a pure state has purity at least
/// one over the smaller factor dimension (200 random states, N in {3,4},
/// d in {2,3}).
inline PropertyResult check_purity_floor(std::uint64_t seed) {
    detail::MarginTracker t;
    std::mt19937_64 eng(seed);
    const std::pair<int, int> combos[] = {{3, 2}, {3, 3}, {4, 2}, {4, 3}};
    for (int i = 0; i < 200; ++i) {
        const auto [n, d] = combos[i % 4];
        const auto psi = random_pure(std::vector<int>(static_cast<std::size_t>(n), d), eng);
        for (const auto& bp : enumerate_bipartitions(n)) {
            const double dx = std::pow(d, bp.x_size());
            const double dxb = std::pow(d, bp.xbar_size());
            const double floor = 1.0 / std::min(dx, dxb);
            t.observe(reduction_purity(psi, bp.mask) - floor + 1e-9,
                      "state " + std::to_string(i) + " cut " + bp.label());
        }
    }
    return t.result("purity-floor");
}

/// Identities among the pure-state measures: tangle = concurrence^2,
/// global negativity = single-party concurrence, and the N=2 concurrence
/// reduces to the bipartite one. 100 random states each.
inline PropertyResult check_measure_identities(std::uint64_t seed) {
    detail::MarginTracker t;
    std::mt19937_64 eng(seed);
    const std::pair<int, int> combos[] = {{3, 2}, {3, 3}, {4, 2}, {4, 3}};
    for (int i = 0; i < 100; ++i) {
        const auto [n, d] = combos[i % 4];
        const auto psi = random_pure(std::vector<int>(static_cast<std::size_t>(n), d), eng);
        const double c = pure_multipartite_concurrence(psi).value;
        const double tau = pure_tangle(psi).value;
        t.observe(1e-10 - std::abs(tau - c * c), "tangle state " + std::to_string(i));
    }
    for (int i = 0; i < 100; ++i) {
        const int d = i % 2 ? 3 : 2;
        const auto psi = random_pure({d, d, d}, eng);
        for (int party = 1; party <= 3; ++party) {
            const auto bp = Bipartition::make(3, std::uint32_t{1} << (party - 1));
            const double neg = pure_global_negativity(psi, party).value;
            const double conc = pure_bipartite_concurrence(psi, bp).value;
            t.observe(1e-12 - std::abs(neg - conc),
                      "negativity state " + std::to_string(i) + " party " + std::to_string(party));
        }
    }
    for (int i = 0; i < 100; ++i) {
        const int d = i % 2 ? 3 : 2;
        const auto psi = random_pure({d, d}, eng);
        const double c2 = pure_multipartite_concurrence(psi).value;
        const double cb = pure_bipartite_concurrence(psi, Bipartition::make(2, 1u)).value;
        t.observe(1e-10 - std::abs(c2 - cb), "n2 state " + std::to_string(i));
    }
    return t.result("measure-identities");
}

/// The N-partite evaluators collapse to the tripartite ones at N = 3,
/// exactly (tolerance 1e-12 over 100 random tripartite states).
inline PropertyResult check_remark_consistency(std::uint64_t seed) {
    detail::MarginTracker t;
    std::mt19937_64 eng(seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const int d = i % 2 ? 3 : 2;
        const int rank = 1 + i % 4;
        const auto state = random_mixed({d, d, d}, rank, eng);
        const auto est = detail::plugin_estimates(state);
        const double diff_sum = std::abs(bipartite_sum_bound(state, est, BoundMode::paper_literal) -
                                         bipartite_sum_bound3(state, est));
        t.observe(1e-12 - diff_sum, "bipartite-sum state " + std::to_string(i));
        const double c3 = 1.5 * u01(eng);
        const double diff_c = std::abs(concurrence_bound(state, c3, BoundMode::paper_literal) -
                                       concurrence_bound3(state, c3));
        t.observe(1e-12 - diff_c, "concurrence state " + std::to_string(i));
    }
    return t.result("remark-consistency");
}

/// Over the GHZ/W/noise simplex (step 0.02, 1326 states), the clamped
/// bipartite-sum bound with PT/CCNR plug-ins dominates the clamped l1
/// reference bound.
inline PropertyResult check_dominance_simplex() {
    detail::MarginTracker t;
    const auto ghz_state = density_of(ghz(3, 2));
    const auto w = density_of(w_state(3));
    const auto noise = maximally_mixed({2, 2, 2});
    for (int i = 0; i <= 50; ++i)
        for (int j = 0; i + j <= 50; ++j) {
            const double alpha = i / 50.0;
            const double beta = j / 50.0;
            const auto state =
                mix({noise, ghz_state, w}, {std::max(0.0, 1.0 - alpha - beta), alpha, beta});
            const auto report = full_report(state);
            const double l = report.find("bipartite_sum_3")->clamped;
            const double l1 = report.find("l1")->clamped;
            t.observe(l - l1 + 1e-9,
                      "alpha=" + detail::format_g(alpha) + " beta=" + detail::format_g(beta));
        }
    return t.result("dominance-simplex");
}

/// On the two noise curves (101 points each) the clamped bipartite-sum
/// bound dominates both reference bounds: the GHZ curve with (a,b)=(1,1),
/// the W curve with (a,b)=(0,1).
inline PropertyResult check_dominance_curves() {
    detail::MarginTracker t;
    struct Family {
        const char* tag;
        PureState target;
        double a, b;
    };
    const Family families[] = {
        {"ghz", ghz(3, 2), 1.0, 1.0},
        {"w", w_state(3), 0.0, 1.0},
    };
    const auto noise = maximally_mixed({2, 2, 2});
    for (const auto& fam : families) {
        const auto target = density_of(fam.target);
        ReportOptions opts;
        opts.a = fam.a;
        opts.b = fam.b;
        for (int i = 0; i <= 100; ++i) {
            const double p = i / 100.0;
            const auto state = mix({noise, target}, {1.0 - p, p});
            const auto report = full_report(state, opts);
            const double l = report.find("bipartite_sum_3")->clamped;
            const double l1 = report.find("l1")->clamped;
            const double l2 = report.find("l2")->clamped;
            const std::string where = std::string(fam.tag) + " p=" + detail::format_g(p);
            t.observe(l - l1 + 1e-9, where + " vs l1");
            t.observe(l - l2 + 1e-9, where + " vs l2");
        }
    }
    return t.result("dominance-curves");
}

/// With exact pure-state estimates, every certifying bound stays below the
/// exact GME concurrence (200 random pure states; at N = 4 only the
/// corrected-mode constants are certifying).
inline PropertyResult check_pure_soundness(std::uint64_t seed) {
    detail::MarginTracker t;
    std::mt19937_64 eng(seed);
    const std::pair<int, int> combos[] = {{3, 2}, {3, 3}, {4, 2}};
    for (int i = 0; i < 200; ++i) {
        const auto [n, d] = combos[i % 3];
        const auto psi = random_pure(std::vector<int>(static_cast<std::size_t>(n), d), eng);
        const auto state = density_of(psi);
        const double cgme = pure_gme_concurrence(psi).value;
        const auto est = detail::exact_pure_estimates(psi);
        const double cn = pure_multipartite_concurrence(psi).value;
        const double tau = pure_tangle(psi).value;
        const std::string where = "state " + std::to_string(i);
        const double allowance = cgme + 1e-8;
        if (n == 3) {
            t.observe(allowance - bipartite_sum_bound3(state, est), where + " bipartite_sum_3");
            t.observe(allowance - bipartite_sum_bound(state, est), where + " bipartite_sum_n");
            t.observe(allowance - concurrence_bound3(state, cn), where + " concurrence_3");
            t.observe(allowance - concurrence_bound(state, cn), where + " concurrence_n");
            t.observe(allowance - tangle_bound(state, tau), where + " tangle");
            t.observe(allowance - negativity_sum_bound(state, est), where + " negativity_sum");
        } else {
            t.observe(allowance - bipartite_sum_bound(state, est, BoundMode::corrected),
                      where + " bipartite_sum_n corrected");
            t.observe(allowance - concurrence_bound(state, cn, BoundMode::corrected),
                      where + " concurrence_n corrected");
            t.observe(allowance - tangle_bound(state, tau, BoundMode::corrected),
                      where + " tangle corrected");
        }
    }
    return t.result("pure-soundness");
}

/// Sandwich test: on random rank <= 2 three-qubit states, every certifying
/// clamped bound of the full report stays below the decomposition-oracle
/// upper bound within 1e-6.
inline PropertyResult check_oracle_sandwich(std::uint64_t seed, int oracle_samples, int count,
                                            double injected_bias = 0.0) {
    detail::MarginTracker t;
    std::mt19937_64 eng(seed);
    for (int i = 0; i < count; ++i) {
        const int rank = i % 5 == 0 ? 1 : 2;
        const auto state = random_mixed({2, 2, 2}, rank, eng);
        auto report = full_report(state);
        if (injected_bias != 0.0) {
            for (auto& e : report.entries)
                if (e.available && e.certifying) {
                    e.clamped += injected_bias;
                    break;
                }
        }
        const auto oracle = decomposition_upper_bound(
            state, oracle_samples, 0, seed + 7919ull * static_cast<std::uint64_t>(i + 1));
        const auto verdict = sandwich_check(state, report, oracle, 1e-6);
        double max_clamped = 0.0;
        std::string max_name = "none";
        for (const auto& e : report.entries)
            if (e.available && e.certifying && e.clamped > max_clamped) {
                max_clamped = e.clamped;
                max_name = e.name;
            }
        t.observe(oracle.upper_bound + 1e-6 - max_clamped,
                  "state " + std::to_string(i) + " bound " + max_name);
        if (!verdict.pass && t.worst >= 0.0)
            t.observe(-1.0, "state " + std::to_string(i) + " bound " +
                                verdict.violations.front().bound);
    }
    return t.result("oracle-sandwich");
}

inline VerifyReport run_verification(const VerifyOptions& opts = {}) {
    VerifyReport report;
    report.properties.push_back(check_primitive_ground_truths());
    report.properties.push_back(check_pure_saturation());
    report.properties.push_back(check_purity_floor(opts.seed));
    report.properties.push_back(check_measure_identities(opts.seed + 1));
    report.properties.push_back(check_remark_consistency(opts.seed + 2));
    report.properties.push_back(check_dominance_simplex());
    report.properties.push_back(check_dominance_curves());
    report.properties.push_back(check_pure_soundness(opts.seed + 3));
    report.properties.push_back(
        check_oracle_sandwich(opts.seed + 4, opts.oracle_samples, opts.mixed_count,
                              opts.injected_bias));
    for (const auto& p : report.properties) report.all_pass = report.all_pass && p.pass;
    return report;
}

inline std::string format_verification_report(const VerifyReport& report,
                                              const VerifyOptions& opts) {
    std::ostringstream os;
    os << "gmeb verification report\n";
    os << "seed=" << opts.seed << " oracle_samples=" << opts.oracle_samples
       << " mixed_count=" << opts.mixed_count << "\n\n";
    int passed = 0;
    for (const auto& p : report.properties) {
        char margin[40];
        std::snprintf(margin, sizeof margin, "%+.6e", p.worst_margin);
        os << (p.pass ? "[PASS] " : "[FAIL] ");
        os << p.name;
        for (std::size_t pad = p.name.size(); pad < 26; ++pad) os << ' ';
        os << " worst_margin=" << margin;
        if (!p.detail.empty()) os << "  (" << p.detail << ")";
        os << "\n";
        passed += p.pass ? 1 : 0;
    }
    os << "\nresult: " << (report.all_pass ? "PASS" : "FAIL") << " (" << passed << "/"
       << report.properties.size() << " properties)\n";
    return os.str();
}

}  // namespace gmeb
