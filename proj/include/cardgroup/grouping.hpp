#pragma once

// The grouping constraint model (group-size counts M and must-be-together
// sets C), the public seed permutation tau, the secure grouping protocol
// itself, and the predicates connecting permutations to groupings.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cardgroup/errors.hpp"
#include "cardgroup/permutation.hpp"
#include "cardgroup/protocols.hpp"
#include "cardgroup/table.hpp"

namespace cardgroup {

// (M, C) over indices {1..n}. group_counts[k] is the number of groups of
// size k; together[k] lists the sets of indices pinned to share one size-k
// group, each set strictly increasing. Dummy indices are presentation-level
// labels only; the engine treats them as ordinary indices.
struct Constraint {
    int n = 0;
    std::map<int, int> group_counts;
    std::map<int, std::vector<std::vector<int>>> together;
    std::vector<int> dummies;

    int max_group_size() const {
        int k = 0;
        for (const auto& [size, count] : group_counts)
            if (count > 0) k = std::max(k, size);
        return k;
    }

    // "(3,2,0,1)" — position k holds the count of size-k groups.
    std::string m_tuple_string() const {
        int k = max_group_size();
        std::ostringstream os;
        os << '(';
        for (int i = 1; i <= k; ++i) {
            if (i > 1) os << ',';
            auto it = group_counts.find(i);
            os << (it == group_counts.end() ? 0 : it->second);
        }
        os << ')';
        return os.str();
    }
};

// Every validity condition, reported rather than thrown so a caller can
// show all of them at once.
inline std::vector<std::string> validate_constraint(const Constraint& c) {
    std::vector<std::string> bad;
    if (c.n < 1) bad.push_back("n must be at least 1");

    long long weighted = 0;
    for (const auto& [size, count] : c.group_counts) {
        if (size < 1) bad.push_back("group size " + std::to_string(size) + " is not positive");
        if (count < 0)
            bad.push_back("count for size " + std::to_string(size) + " is negative");
        weighted += static_cast<long long>(size) * count;
    }
    if (weighted != c.n)
        bad.push_back("group sizes sum to " + std::to_string(weighted) + ", expected n = " +
                      std::to_string(c.n));

    std::set<int> all_pinned;
    for (const auto& [k, sets] : c.together) {
        auto mc = c.group_counts.find(k);
        int quota = (mc == c.group_counts.end()) ? 0 : mc->second;
        if (static_cast<int>(sets.size()) > quota)
            bad.push_back("C[" + std::to_string(k) + "] has " + std::to_string(sets.size()) +
                          " sets but only " + std::to_string(quota) + " groups of that size");
        for (const auto& s : sets) {
            if (s.empty()) {
                bad.push_back("C[" + std::to_string(k) + "] contains an empty set");
                continue;
            }
            if (static_cast<int>(s.size()) > k)
                bad.push_back("C[" + std::to_string(k) + "] set larger than the group size");
            if (!std::is_sorted(s.begin(), s.end()) ||
                std::adjacent_find(s.begin(), s.end()) != s.end())
                bad.push_back("C[" + std::to_string(k) + "] set not strictly increasing");
            for (int a : s) {
                if (a < 1 || a > c.n)
                    bad.push_back("constrained index " + std::to_string(a) + " out of range");
                else if (!all_pinned.insert(a).second)
                    bad.push_back("index " + std::to_string(a) +
                                  " appears in more than one constraint set");
            }
        }
    }
    for (int d : c.dummies)
        if (d < 1 || d > c.n)
            bad.push_back("dummy index " + std::to_string(d) + " out of range");
    return bad;
}

inline void require_valid(const Constraint& c) {
    auto bad = validate_constraint(c);
    if (!bad.empty()) {
        std::string msg;
        for (const auto& b : bad) {
            if (!msg.empty()) msg += "; ";
            msg += b;
        }
        throw BadConstraint(msg);
    }
}

// Union of all constraint sets, ascending. These are the indices the hidden
// relabeling must fix.
inline std::vector<int> fixing_set(const Constraint& c) {
    std::set<int> s;
    for (const auto& [k, sets] : c.together)
        for (const auto& one : sets) s.insert(one.begin(), one.end());
    return {s.begin(), s.end()};
}

// Seed permutation for the unconstrained case: consecutive blocks, sizes
// ascending; a_i = a_{i-1} + i * count(i) delimits the blocks.
inline Permutation precompute_tau_simple(int n, const std::map<int, int>& group_counts) {
    Constraint c;
    c.n = n;
    c.group_counts = group_counts;
    require_valid(c);
    std::vector<std::vector<int>> cycles;
    int next = 1;
    for (const auto& [size, count] : group_counts) {
        for (int j = 0; j < count; ++j) {
            std::vector<int> cyc(static_cast<std::size_t>(size));
            std::iota(cyc.begin(), cyc.end(), next);
            next += size;
            cycles.push_back(std::move(cyc));
        }
    }
    return Permutation::from_cycles(n, cycles);
}

// One step of the general tau pre-computation: the cycle appended while
// handling group (lambda, mu), in construction order (pinned indices first),
// plus the unassigned pool and the not-yet-consumed pinned sets afterwards.
struct TauStep {
    int lambda = 0;
    int mu = 0;
    std::vector<int> cycle;
    std::vector<int> pool_after;
    std::map<int, std::vector<std::vector<int>>> sets_after;
    Permutation tau_after = Permutation::identity(1);
};

struct TauTrace {
    std::vector<int> initial_pool;
    std::vector<TauStep> steps;
};

// General pre-computation: walk group sizes lambda ascending; each group
// consumes one pinned set of C[lambda] if any remain (smallest-leading set
// first), padded with the smallest unassigned indices, else it is built from
// the pool alone. The pinned indices keep their given (increasing) order
// inside the cycle.
inline Permutation precompute_tau_general(const Constraint& c, TauTrace* trace = nullptr) {
    require_valid(c);
    std::set<int> pool;
    {
        std::vector<int> pinned = fixing_set(c);
        std::set<int> pinned_set(pinned.begin(), pinned.end());
        for (int v = 1; v <= c.n; ++v)
            if (!pinned_set.count(v)) pool.insert(v);
    }
    if (trace) {
        trace->initial_pool.assign(pool.begin(), pool.end());
        trace->steps.clear();
    }

    std::map<int, std::vector<std::vector<int>>> remaining = c.together;
    for (auto& [k, sets] : remaining)
        std::sort(sets.begin(), sets.end());  // consume by smallest leading element

    std::vector<std::vector<int>> cycles;
    const int kmax = c.max_group_size();
    for (int lambda = 1; lambda <= kmax; ++lambda) {
        auto mc = c.group_counts.find(lambda);
        int count = (mc == c.group_counts.end()) ? 0 : mc->second;
        for (int mu = 1; mu <= count; ++mu) {
            std::vector<int> cyc;
            auto rem = remaining.find(lambda);
            if (rem != remaining.end() && !rem->second.empty()) {
                cyc = rem->second.front();
                rem->second.erase(rem->second.begin());
            }
            while (static_cast<int>(cyc.size()) < lambda) {
                cyc.push_back(*pool.begin());
                pool.erase(pool.begin());
            }
            cycles.push_back(cyc);
            if (trace) {
                TauStep step;
                step.lambda = lambda;
                step.mu = mu;
                step.cycle = cyc;
                step.pool_after.assign(pool.begin(), pool.end());
                for (const auto& [size, sets] : remaining)
                    if (!sets.empty()) step.sets_after[size] = sets;
                step.tau_after = Permutation::from_cycles(c.n, cycles);
                trace->steps.push_back(std::move(step));
            }
        }
    }
    return Permutation::from_cycles(c.n, cycles);
}

// A partition of {1..n}; groups ascending internally and ordered by their
// smallest element.
struct Grouping {
    std::vector<std::vector<int>> groups;

    static Grouping of_groups(std::vector<std::vector<int>> groups) {
        Grouping g;
        g.groups = std::move(groups);
        for (auto& grp : g.groups) {
            if (grp.empty()) throw std::invalid_argument("empty group");
            std::sort(grp.begin(), grp.end());
        }
        std::sort(g.groups.begin(), g.groups.end(),
                  [](const auto& a, const auto& b) { return a.front() < b.front(); });
        std::set<int> seen;
        int max_index = 0;
        for (const auto& grp : g.groups)
            for (int v : grp) {
                if (!seen.insert(v).second)
                    throw std::invalid_argument("index " + std::to_string(v) + " in two groups");
                max_index = std::max(max_index, v);
            }
        if (static_cast<int>(seen.size()) != max_index)
            throw std::invalid_argument("groups do not cover {1..n}");
        return g;
    }

    int degree() const {
        int n = 0;
        for (const auto& g : groups) n += static_cast<int>(g.size());
        return n;
    }

    const std::vector<int>& group_of(int index) const {
        for (const auto& g : groups)
            if (std::binary_search(g.begin(), g.end(), index)) return g;
        throw std::out_of_range("no group contains " + std::to_string(index));
    }

    // Canonical key, e.g. "1,5|2,3,6|4".
    std::string key() const {
        std::ostringstream os;
        for (std::size_t i = 0; i < groups.size(); ++i) {
            if (i) os << '|';
            for (std::size_t j = 0; j < groups[i].size(); ++j) {
                if (j) os << ',';
                os << groups[i][j];
            }
        }
        return os.str();
    }

    friend bool operator==(const Grouping&, const Grouping&) = default;
};

// The partition carved out by a permutation's cycles, singletons included.
inline Grouping grouping_of_permutation(const Permutation& pi) {
    std::vector<std::vector<int>> groups;
    for (const auto& c : decompose(pi).cycles) groups.push_back(c.elements);
    return Grouping::of_groups(std::move(groups));
}

inline bool grouping_satisfies_constraint(const Grouping& g, const Constraint& c) {
    if (g.degree() != c.n) return false;
    std::map<int, int> sizes;
    for (const auto& grp : g.groups) ++sizes[static_cast<int>(grp.size())];
    for (const auto& [size, count] : c.group_counts) {
        auto it = sizes.find(size);
        int have = (it == sizes.end()) ? 0 : it->second;
        if (have != count) return false;
    }
    for (const auto& [size, count] : sizes) {
        auto it = c.group_counts.find(size);
        if (count > 0 && (it == c.group_counts.end() || it->second != count)) return false;
    }
    for (const auto& [k, sets] : c.together) {
        std::set<const std::vector<int>*> used;
        for (const auto& s : sets) {
            const std::vector<int>& host = g.group_of(s.front());
            if (static_cast<int>(host.size()) != k) return false;
            for (int a : s)
                if (!std::binary_search(host.begin(), host.end(), a)) return false;
            if (!used.insert(&host).second) return false;  // two pinned sets in one group
        }
    }
    return true;
}

// Permutation-level constraint satisfaction: the cycle type matches M
// exactly, each pinned set {a_1 < ... < a_h} sits inside a single cycle of
// length exactly k with pi(a_j) = a_{j+1}, and distinct pinned sets sit in
// distinct cycles.
inline bool permutation_satisfies_constraint(const Permutation& pi, const Constraint& c) {
    if (pi.degree() != c.n) return false;
    CycleType want;
    want.degree = c.n;
    for (const auto& [size, count] : c.group_counts)
        if (count > 0) want.multiplicities[size] = count;
    if (cycle_type(pi) != want) return false;

    CycleDecomposition dec = decompose(pi);
    std::set<const Cycle*> used;
    for (const auto& [k, sets] : c.together) {
        for (const auto& s : sets) {
            const Cycle& host = dec.cycle_containing(s.front());
            if (host.length() != k) return false;
            for (int a : s)
                if (!host.contains(a)) return false;
            for (std::size_t j = 0; j + 1 < s.size(); ++j)
                if (pi(s[j]) != s[j + 1]) return false;
            if (!used.insert(&host).second) return false;
        }
    }
    return true;
}

// What one player walks away with: the k-1 values picked from the output
// rows at the player's own position.
struct PlayerView {
    int player = 0;
    std::vector<int> picked_values;

    std::vector<int> group() const {
        std::set<int> g(picked_values.begin(), picked_values.end());
        g.insert(player);
        return {g.begin(), g.end()};
    }
};

struct GroupingRun {
    std::vector<PlayerView> views;
    std::optional<Permutation> rho;      // from the secret log; absent in strict mode
    std::optional<Grouping> grouping;    // grouping_of_permutation(rho)
    Transcript transcript;
    SecretLog secrets;
};

// The full protocol: pre-compute tau, randomize it (and its powers) with
// the constraint's fixing set, and read each player's cards. With strict
// mode the run reports player views only, as at a real table.
inline GroupingRun run_secure_grouping(const Constraint& c, std::unique_ptr<ShuffleSource> source,
                                       bool strict = false) {
    require_valid(c);
    GroupingRun out;
    const int k = c.max_group_size();

    if (k <= 1) {  // all groups are singletons; nothing is dealt
        for (int i = 1; i <= c.n; ++i) out.views.push_back(PlayerView{i, {}});
        if (!strict) {
            out.rho = Permutation::identity(c.n);
            out.grouping = grouping_of_permutation(*out.rho);
        }
        return out;
    }

    const Permutation tau = precompute_tau_general(c);
    RandomizingSpec spec;
    spec.degree = c.n;
    for (int j = 1; j <= k - 1; ++j) spec.inputs.push_back(power(tau, static_cast<unsigned>(j)));
    spec.fixing_set = fixing_set(c);

    Table table(std::move(source));
    std::vector<std::size_t> output_rows = permutation_randomizing(table, spec);

    for (int i = 1; i <= c.n; ++i) {
        PlayerView view;
        view.player = i;
        for (std::size_t row : output_rows)
            view.picked_values.push_back(table.row(row).card_at(static_cast<std::size_t>(i)).value);
        out.views.push_back(std::move(view));
    }

    out.transcript = table.transcript();
    if (!strict) {
        for (const auto& entry : table.secret_log().entries) {
            if (entry.kind == SecretEntry::Kind::note && entry.label == "randomizing sigma") {
                out.rho = conjugate_by_relabeling(tau, entry.perm);
                out.grouping = grouping_of_permutation(*out.rho);
            }
        }
        out.secrets = table.secret_log();
    }
    return out;
}

inline GroupingRun run_secure_grouping(const Constraint& c, std::uint64_t seed,
                                       bool strict = false) {
    return run_secure_grouping(c, std::make_unique<SeededShuffleSource>(seed), strict);
}

}  // namespace cardgroup
