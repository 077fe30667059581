#pragma once

// Brute-force oracles: exhaustive enumeration of constraint-satisfying
// permutations and groupings, fiber counting, and the uniformity test fed
// by protocol runs. Everything here is deliberately independent of how the
// protocol itself produces its outputs.

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "cardgroup/errors.hpp"
#include "cardgroup/grouping.hpp"
#include "cardgroup/permutation.hpp"
#include "cardgroup/stats.hpp"

namespace cardgroup {

// Filters all of S_n through the satisfaction predicate. Guarded at n <= 8
// (8! = 40320); larger degrees are a caller bug, not a slow path.
inline std::vector<Permutation> enumerate_valid_permutations(const Constraint& c) {
    require_valid(c);
    if (c.n > 8)
        throw TooLargeForOracle("permutation enumeration guarded at n <= 8, got n = " +
                                std::to_string(c.n));
    std::vector<int> im(static_cast<std::size_t>(c.n));
    std::iota(im.begin(), im.end(), 1);
    std::vector<Permutation> out;
    do {
        Permutation p(im);
        if (permutation_satisfies_constraint(p, c)) out.push_back(std::move(p));
    } while (std::next_permutation(im.begin(), im.end()));
    return out;
}

namespace detail {

// Recursively assigns the smallest unplaced index to a group of each still-
// available size together with every choice of companions.
inline void enumerate_partitions(std::vector<int>& unplaced, std::map<int, int>& quota,
                                 std::vector<std::vector<int>>& acc,
                                 std::vector<Grouping>& out) {
    if (unplaced.empty()) {
        out.push_back(Grouping::of_groups(acc));
        return;
    }
    int head = unplaced.front();
    std::vector<int> rest(unplaced.begin() + 1, unplaced.end());
    for (auto& [size, remaining] : quota) {
        if (remaining == 0 || size - 1 > static_cast<int>(rest.size())) continue;
        --remaining;
        // choose size-1 companions from the remaining indices; the all-ones-
        // first mask is the greatest arrangement, so prev_permutation walks
        // every combination exactly once
        std::vector<int> mask(rest.size(), 0);
        std::fill(mask.begin(), mask.begin() + (size - 1), 1);
        do {
            std::vector<int> group{head};
            std::vector<int> next_unplaced;
            for (std::size_t i = 0; i < rest.size(); ++i)
                (mask[i] ? group : next_unplaced).push_back(rest[i]);
            acc.push_back(group);
            enumerate_partitions(next_unplaced, quota, acc, out);
            acc.pop_back();
        } while (std::prev_permutation(mask.begin(), mask.end()));
        ++remaining;
    }
}

}  // namespace detail

// All partitions of {1..n} meeting the size counts and the must-be-together
// conditions. Guarded at n <= 10.
inline std::vector<Grouping> enumerate_valid_groupings(const Constraint& c) {
    require_valid(c);
    if (c.n > 10)
        throw TooLargeForOracle("grouping enumeration guarded at n <= 10, got n = " +
                                std::to_string(c.n));
    std::vector<int> unplaced(static_cast<std::size_t>(c.n));
    std::iota(unplaced.begin(), unplaced.end(), 1);
    std::map<int, int> quota;
    for (const auto& [size, count] : c.group_counts)
        if (count > 0) quota[size] = count;
    std::vector<std::vector<int>> acc;
    std::vector<Grouping> all;
    detail::enumerate_partitions(unplaced, quota, acc, all);

    std::vector<Grouping> valid;
    for (auto& g : all)
        if (grouping_satisfies_constraint(g, c)) valid.push_back(std::move(g));
    std::sort(valid.begin(), valid.end(),
              [](const Grouping& a, const Grouping& b) { return a.key() < b.key(); });
    return valid;
}

namespace detail {

// Constraint-satisfying cycles over exactly the index set of one group:
// fix the smallest element first and spin the rest, keeping only cycles
// where each pinned set forms the required consecutive run.
inline std::size_t count_cycles_on_group(const std::vector<int>& group, const Constraint& c) {
    const int k = static_cast<int>(group.size());
    std::vector<const std::vector<int>*> pinned;
    auto it = c.together.find(k);
    if (it != c.together.end()) {
        for (const auto& s : it->second)
            if (std::binary_search(group.begin(), group.end(), s.front()))
                pinned.push_back(&s);
    }
    if (k == 1) return 1;

    std::vector<int> rest(group.begin() + 1, group.end());
    std::sort(rest.begin(), rest.end());
    std::size_t count = 0;
    do {
        std::vector<int> cyc;
        cyc.reserve(group.size());
        cyc.push_back(group.front());
        cyc.insert(cyc.end(), rest.begin(), rest.end());
        Permutation p = Permutation::from_cycles(c.n, {cyc});
        bool ok = true;
        for (const auto* s : pinned)
            for (std::size_t j = 0; ok && j + 1 < s->size(); ++j)
                if (p((*s)[j]) != (*s)[j + 1]) ok = false;
        if (ok) ++count;
    } while (std::next_permutation(rest.begin(), rest.end()));
    return count;
}

}  // namespace detail

struct EnumerationReport {
    std::size_t valid_permutations = 0;
    std::size_t valid_groupings = 0;
    std::vector<std::pair<std::string, std::size_t>> fiber_sizes;  // grouping key -> count
    bool fibers_equal = false;
};

// Counts, for every valid grouping, the constraint-satisfying permutations
// that map to it. Up to n <= 8 the fibers come from the direct filter of
// S_n; for n = 9, 10 they are enumerated group by group (each group's
// admissible cycles are generated exhaustively and the counts multiplied,
// which is exact because disjoint cycles choose independently). The two
// routes agree wherever both run, and the unit suite pins that down.
inline EnumerationReport fiber_report(const Constraint& c) {
    require_valid(c);
    EnumerationReport report;
    std::vector<Grouping> groupings = enumerate_valid_groupings(c);
    report.valid_groupings = groupings.size();

    std::map<std::string, std::size_t> fibers;
    if (c.n <= 8) {
        std::vector<Permutation> perms = enumerate_valid_permutations(c);
        report.valid_permutations = perms.size();
        for (const auto& g : groupings) fibers[g.key()] = 0;
        for (const auto& p : perms) {
            std::string key = grouping_of_permutation(p).key();
            auto it = fibers.find(key);
            if (it == fibers.end())
                throw std::logic_error("permutation maps outside the grouping oracle: " + key);
            ++it->second;
        }
    } else {
        for (const auto& g : groupings) {
            std::size_t fiber = 1;
            for (const auto& group : g.groups) fiber *= detail::count_cycles_on_group(group, c);
            fibers[g.key()] = fiber;
            report.valid_permutations += fiber;
        }
    }

    report.fiber_sizes.assign(fibers.begin(), fibers.end());
    report.fibers_equal = true;
    for (const auto& [key, size] : report.fiber_sizes)
        if (size != report.fiber_sizes.front().second) report.fibers_equal = false;
    return report;
}

// Goodness-of-fit of sampled groupings against the uniform distribution on
// the oracle-enumerated cells. A sample outside the oracle set cannot come
// from a correct run and fails the test outright.
inline ChiSquareResult uniformity_test(const std::vector<Grouping>& samples, const Constraint& c,
                                       double significance) {
    std::vector<Grouping> cells = enumerate_valid_groupings(c);
    std::map<std::string, std::size_t> counts;
    for (const auto& g : cells) counts[g.key()] = 0;
    std::size_t foreign = 0;
    for (const auto& s : samples) {
        auto it = counts.find(s.key());
        if (it == counts.end())
            ++foreign;
        else
            ++it->second;
    }
    std::vector<std::size_t> flat;
    flat.reserve(counts.size());
    for (const auto& [key, n] : counts) flat.push_back(n);

    ChiSquareResult r;
    if (flat.size() == 1) {
        // fully forced constraint: one valid grouping, nothing to test
        r.cells = 1;
        r.significance = significance;
        r.pass = true;
    } else {
        r = chi_square_goodness_of_fit(flat, significance);
    }
    if (foreign > 0) {
        r.pass = false;
        r.statistic = std::numeric_limits<double>::infinity();
    }
    return r;
}

// Exact number cards the protocol lays on the table: the randomizing step
// over d-1 inputs deals 2(d-1) rows that each end up n cards wide. The
// rough 3dn estimate is kept as an asserted upper bound for d >= 2.
inline std::size_t card_count(const Constraint& c) {
    require_valid(c);
    const int d = c.max_group_size();
    if (d <= 1) return 0;
    return 2 * static_cast<std::size_t>(d - 1) * static_cast<std::size_t>(c.n);
}

}  // namespace cardgroup
