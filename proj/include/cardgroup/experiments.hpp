#pragma once

// Monte-Carlo drivers shared by the CLI verify modes and the acceptance
// suite. Trials fan out across threads over disjoint per-trial seeds
// (derive_seed), so results do not depend on the thread count. Report text
// is a deterministic key-value stanza per test.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "cardgroup/grouping.hpp"
#include "cardgroup/oracle.hpp"
#include "cardgroup/rng.hpp"
#include "cardgroup/stats.hpp"
#include "cardgroup/table.hpp"

namespace cardgroup {

using SourceFactory = std::function<std::unique_ptr<ShuffleSource>(std::uint64_t seed)>;

inline SourceFactory seeded_source_factory() {
    return [](std::uint64_t seed) { return std::make_unique<SeededShuffleSource>(seed); };
}

namespace detail {

inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
    unsigned workers = std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
    if (count < 2 * workers) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    std::size_t chunk = (count + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        std::size_t begin = w * chunk;
        std::size_t end = std::min(count, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([begin, end, &body] {
            for (std::size_t i = begin; i < end; ++i) body(i);
        });
    }
    for (auto& t : pool) t.join();
}

inline std::string fmt(double v) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(4) << v;
    return os.str();
}

}  // namespace detail

inline std::vector<GroupingRun> run_trials(const Constraint& c, std::size_t trials,
                                           std::uint64_t seed,
                                           const SourceFactory& factory = seeded_source_factory()) {
    std::vector<GroupingRun> runs(trials);
    detail::parallel_for(trials, [&](std::size_t i) {
        runs[i] = run_secure_grouping(c, factory(derive_seed(seed, i)));
    });
    return runs;
}

// Stable bucket for "which transcript did the observer see"; coarse on
// purpose so contingency cells stay populated. FNV-1a plus an avalanche
// finalizer — the raw FNV low bits are too regular for small moduli.
inline std::uint64_t transcript_bucket(const Transcript& t, std::uint64_t buckets) {
    const std::string text = t.to_text();
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    h = (h ^ (h >> 30)) * 0xbf58476d1ce4e5b9ULL;
    h = (h ^ (h >> 27)) * 0x94d049bb133111ebULL;
    h ^= h >> 31;
    return h % buckets;
}

struct UniformityVerdict {
    ChiSquareResult chi;
    std::size_t trials = 0;
    std::string report;
    bool pass = false;
};

// Output-distribution check: sampled groupings uniform over the oracle set.
inline UniformityVerdict verify_uniformity(const Constraint& c, std::size_t trials,
                                           std::uint64_t seed, double significance,
                                           const SourceFactory& factory = seeded_source_factory()) {
    std::vector<GroupingRun> runs = run_trials(c, trials, seed, factory);
    std::vector<Grouping> samples;
    samples.reserve(runs.size());
    for (auto& r : runs) samples.push_back(*r.grouping);
    ChiSquareResult chi = uniformity_test(samples, c, significance);

    UniformityVerdict v;
    v.chi = chi;
    v.trials = trials;
    v.pass = chi.pass;
    std::ostringstream os;
    os << "[uniformity]\n"
       << "n = " << c.n << "\n"
       << "m = " << c.m_tuple_string() << "\n"
       << "trials = " << trials << "\n"
       << "cells = " << chi.cells << "\n"
       << "statistic = " << detail::fmt(chi.statistic) << "\n"
       << "df = " << chi.degrees_of_freedom << "\n"
       << "significance = " << chi.significance << "\n"
       << "critical = " << detail::fmt(chi.critical_value) << "\n"
       << "pass = " << (chi.pass ? "true" : "false") << "\n";
    v.report = os.str();
    return v;
}

inline constexpr std::uint64_t kTranscriptBuckets = 16;

struct IndependenceVerdict {
    ChiSquareResult conditional_uniformity;   // pooled over observer-view classes
    ChiSquareResult transcript_independence;  // pooled contingency per class
    std::size_t trials = 0;
    std::size_t classes = 0;
    std::string report;
    bool pass = false;
};

// Security-level check for one observer. Conditioned on the observer's own
// group: (a) the grouping of the remaining players must be uniform over its
// oracle-enumerated possibilities, and (b) it must be independent of the
// transcript bucket. Both statistics pool across observer-view classes
// (chi-square statistics of independent classes add, as do their degrees of
// freedom).
inline IndependenceVerdict verify_independence(
    const Constraint& c, int observer, std::size_t trials, std::uint64_t seed,
    double significance, const SourceFactory& factory = seeded_source_factory()) {
    if (observer < 1 || observer > c.n)
        throw std::invalid_argument("observer index out of range");
    std::vector<GroupingRun> runs = run_trials(c, trials, seed, factory);

    // Remaining-grouping cells per possible observer group, from the oracle.
    std::vector<Grouping> all = enumerate_valid_groupings(c);
    auto strip = [&](const Grouping& g) {
        std::vector<std::vector<int>> rest;
        for (const auto& grp : g.groups)
            if (!std::binary_search(grp.begin(), grp.end(), observer)) rest.push_back(grp);
        return Grouping{rest}.key();
    };
    auto own_key = [&](const Grouping& g) {
        std::ostringstream os;
        const auto& grp = g.group_of(observer);
        for (std::size_t i = 0; i < grp.size(); ++i) {
            if (i) os << ',';
            os << grp[i];
        }
        return os.str();
    };
    std::map<std::string, std::map<std::string, std::size_t>> cells;  // view -> rest-key -> 0
    for (const auto& g : all) cells[own_key(g)][strip(g)] = 0;

    // Observed counts: per view class, rest-key x transcript bucket.
    std::map<std::string, std::map<std::string, std::size_t>> rest_counts;
    std::map<std::string, std::map<std::uint64_t, std::map<std::string, std::size_t>>> bucketed;
    for (const auto& r : runs) {
        const Grouping& g = *r.grouping;
        std::string view = own_key(g);
        std::string rest = strip(g);
        ++rest_counts[view][rest];
        ++bucketed[view][transcript_bucket(r.transcript, kTranscriptBuckets)][rest];
    }

    double gof_stat = 0.0;
    std::size_t gof_df = 0;
    double ind_stat = 0.0;
    std::size_t ind_df = 0;
    std::size_t n_classes = 0;
    for (const auto& [view, expected_cells] : cells) {
        ++n_classes;
        // A class whose complement is forced (one possible remaining
        // grouping) is vacuously uniform and independent; it contributes
        // nothing to either statistic.
        if (expected_cells.size() < 2) continue;

        auto obs_it = rest_counts.find(view);
        std::vector<std::size_t> counts;
        for (const auto& [rest, zero] : expected_cells) {
            std::size_t n = 0;
            if (obs_it != rest_counts.end()) {
                auto it = obs_it->second.find(rest);
                if (it != obs_it->second.end()) n = it->second;
            }
            counts.push_back(n);
        }
        ChiSquareResult gof = chi_square_goodness_of_fit(counts, significance);
        gof_stat += gof.statistic;
        gof_df += gof.degrees_of_freedom;

        // bucket x rest contingency for this class
        std::vector<std::vector<std::size_t>> table;
        const auto& by_bucket = bucketed[view];
        for (std::uint64_t b = 0; b < kTranscriptBuckets; ++b) {
            auto bit = by_bucket.find(b);
            std::vector<std::size_t> row;
            for (const auto& [rest, zero] : expected_cells) {
                std::size_t n = 0;
                if (bit != by_bucket.end()) {
                    auto it = bit->second.find(rest);
                    if (it != bit->second.end()) n = it->second;
                }
                row.push_back(n);
            }
            table.push_back(std::move(row));
        }
        ChiSquareResult ind = chi_square_independence(table, significance);
        ind_stat += ind.statistic;
        ind_df += ind.degrees_of_freedom;
    }

    IndependenceVerdict v;
    v.trials = trials;
    v.classes = n_classes;
    v.conditional_uniformity.statistic = gof_stat;
    v.conditional_uniformity.degrees_of_freedom = gof_df;
    v.conditional_uniformity.significance = significance;
    v.conditional_uniformity.critical_value =
        gof_df == 0 ? 0.0 : chi_square_critical(gof_df, significance);
    v.conditional_uniformity.pass = gof_df == 0 || gof_stat < v.conditional_uniformity.critical_value;
    v.conditional_uniformity.cells = gof_df + n_classes;
    v.transcript_independence.statistic = ind_stat;
    v.transcript_independence.degrees_of_freedom = ind_df;
    v.transcript_independence.significance = significance;
    v.transcript_independence.critical_value =
        ind_df == 0 ? 0.0 : chi_square_critical(ind_df, significance);
    v.transcript_independence.pass =
        ind_df == 0 || ind_stat < v.transcript_independence.critical_value;
    v.pass = v.conditional_uniformity.pass && v.transcript_independence.pass;

    std::ostringstream os;
    os << "[independence.conditional-uniformity]\n"
       << "n = " << c.n << "\n"
       << "m = " << c.m_tuple_string() << "\n"
       << "observer = " << observer << "\n"
       << "trials = " << trials << "\n"
       << "classes = " << n_classes << "\n"
       << "statistic = " << detail::fmt(gof_stat) << "\n"
       << "df = " << gof_df << "\n"
       << "significance = " << significance << "\n"
       << "critical = " << detail::fmt(v.conditional_uniformity.critical_value) << "\n"
       << "pass = " << (v.conditional_uniformity.pass ? "true" : "false") << "\n"
       << "[independence.transcript]\n"
       << "buckets = " << kTranscriptBuckets << "\n"
       << "statistic = " << detail::fmt(ind_stat) << "\n"
       << "df = " << ind_df << "\n"
       << "significance = " << significance << "\n"
       << "critical = " << detail::fmt(v.transcript_independence.critical_value) << "\n"
       << "pass = " << (v.transcript_independence.pass ? "true" : "false") << "\n";
    v.report = os.str();
    return v;
}

}  // namespace cardgroup
