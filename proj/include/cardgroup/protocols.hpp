#pragma once

// The permutation division protocol and the permutation randomizing
// protocol with fixing set, built from table actions.
//
// Division: given committed rows for v and w, output the committed row for
// v^-1 w. Both rows are scrambled by one hidden r, the first row is opened
// (revealing the row for r v), and both rows are publicly rearranged by
// (r v)^-1 — whose one-line images are exactly the opened fronts — leaving
// the second row committed to v^-1 r^-1 r w = v^-1 w.
//
// Randomizing: given public tau_1..tau_k and a fixing set I, produce
// committed rows for sigma^-1 tau_i sigma with one shared hidden sigma,
// uniform over the permutations fixing every element of I.

#include <algorithm>
#include <set>
#include <vector>

#include "cardgroup/errors.hpp"
#include "cardgroup/permutation.hpp"
#include "cardgroup/table.hpp"

namespace cardgroup {

struct RandomizingSpec {
    int degree = 0;
    std::vector<Permutation> inputs;  // tau_1..tau_k, publicly known
    std::vector<int> fixing_set;      // subset of {1..degree}, may be empty

    void validate() const {
        if (degree < 1) throw BadFixingSet("degree must be at least 1");
        if (inputs.empty()) throw BadFixingSet("at least one input permutation required");
        for (const auto& t : inputs)
            if (t.degree() != degree)
                throw DegreeMismatch("input permutation of degree " + std::to_string(t.degree()) +
                                     " in a degree-" + std::to_string(degree) + " spec");
        std::set<int> seen;
        for (int a : fixing_set) {
            if (a < 1 || a > degree)
                throw BadFixingSet("fixing-set element " + std::to_string(a) + " out of range");
            if (!seen.insert(a).second)
                throw BadFixingSet("fixing-set element " + std::to_string(a) + " repeated");
        }
    }
};

// Consumes row_v (opened and retired) and returns the index of the row now
// committed to v^-1 w (which is row_w). Adds exactly one shuffle, one open
// and one rearrangement to the transcript.
inline std::size_t permutation_division(Table& table, std::size_t row_v, std::size_t row_w) {
    const CardSequence& v = table.row(row_v);
    const CardSequence& w = table.row(row_w);
    if (v.size() != w.size())
        throw DegreeMismatch("division rows of width " + std::to_string(v.size()) + " and " +
                             std::to_string(w.size()));
    if (!v.all_facing(Facing::down) || !w.all_facing(Facing::down))
        throw WouldLeak("division requires fully committed input rows");

    table.pile_scramble({row_v, row_w});
    std::vector<int> fronts = table.open_row(row_v);  // the row for r v
    // (r v)^-1 has one-line images equal to the opened fronts.
    Permutation straighten{fronts};
    table.rearrange_publicly({row_v, row_w}, straighten);
    table.retire_row(row_v);
    return row_w;
}

// Runs the randomizing protocol on a fresh table. Returns the k output row
// indices, committed to sigma^-1 tau_i sigma. The generated sigma is noted
// in the secret log for analysis.
inline std::vector<std::size_t> permutation_randomizing(Table& table,
                                                        const RandomizingSpec& spec) {
    spec.validate();
    if (table.row_count() != 0)
        throw std::logic_error("randomizing protocol needs a fresh table");

    const int n = spec.degree;
    const std::size_t k = spec.inputs.size();
    std::vector<bool> fixed(static_cast<std::size_t>(n) + 1, false);
    for (int a : spec.fixing_set) fixed[static_cast<std::size_t>(a)] = true;

    std::vector<int> free_values;
    for (int v = 1; v <= n; ++v)
        if (!fixed[static_cast<std::size_t>(v)]) free_values.push_back(v);

    // Step 1: 2k rows of the non-fixed values in increasing order, faced down.
    // A full fixing set degenerates to empty initial rows built up entirely
    // by the insertion step.
    std::vector<std::size_t> rows = table.add_public_rows(2 * k, free_values, Facing::down);

    // Step 2: one hidden shuffle across all 2k rows.
    if (!free_values.empty()) table.pile_scramble(rows);

    // Step 3: splice the card for each fixed value a at column a, by
    // ascending a so absolute column positions come out right.
    std::vector<int> fixed_sorted = spec.fixing_set;
    std::sort(fixed_sorted.begin(), fixed_sorted.end());
    for (int a : fixed_sorted) table.insert_card(rows, static_cast<std::size_t>(a), a);

    // All rows now carry the same sigma, uniform over the fixing subgroup.
    table.note_secret("randomizing sigma", table.committed_permutation(rows.front()));

    // Step 4: turn the second half into rows for tau_i sigma.
    for (std::size_t i = 0; i < k; ++i)
        table.rearrange_publicly({rows[k + i]}, spec.inputs[i]);

    // Step 5: divide, pairing each tau_i sigma with its own sigma copy.
    std::vector<std::size_t> outputs;
    outputs.reserve(k);
    for (std::size_t i = 0; i < k; ++i)
        outputs.push_back(permutation_division(table, rows[i], rows[k + i]));
    return outputs;
}

// The permutations whose rows were opened during a run — everything the
// protocol ever shows an observer beyond public structure.
inline std::vector<Permutation> adversary_view(const Transcript& transcript) {
    std::vector<Permutation> opened;
    for (const auto& ev : transcript.events)
        if (const auto* e = std::get_if<event::Opened>(&ev))
            opened.push_back(inverse(Permutation(e->values)));
    return opened;
}

}  // namespace cardgroup
