// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// fail. Each criterion carries its own time budget; exceeding it is a
// failure even when the checks themselves hold.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "cardgroup/cardgroup.hpp"

using namespace cardgroup;

namespace {

struct Criterion {
    std::string name;
    double budget_seconds;
    std::function<void(std::vector<std::string>&)> body;  // appends failure notes
};

std::vector<Permutation> all_of_sn(int n) {
    std::vector<int> im(static_cast<std::size_t>(n));
    std::iota(im.begin(), im.end(), 1);
    std::vector<Permutation> out;
    do {
        out.emplace_back(im);
    } while (std::next_permutation(im.begin(), im.end()));
    return out;
}

Constraint make_constraint(int n, std::map<int, int> counts,
                           std::map<int, std::vector<std::vector<int>>> together = {},
                           std::vector<int> dummies = {}) {
    Constraint c;
    c.n = n;
    c.group_counts = std::move(counts);
    c.together = std::move(together);
    c.dummies = std::move(dummies);
    return c;
}

// Desk-scale corpus shared by the fiber, card-count and leak criteria.
std::vector<Constraint> corpus() {
    return {
        make_constraint(2, {{2, 1}}),
        make_constraint(3, {{3, 1}}),
        make_constraint(3, {{1, 1}, {2, 1}}, {{2, {{1, 3}}}}),
        make_constraint(4, {{2, 2}}),
        make_constraint(4, {{1, 2}, {2, 1}}),
        make_constraint(5, {{1, 3}, {2, 1}}),
        make_constraint(5, {{1, 1}, {2, 2}}, {{2, {{2, 5}}}}),
        make_constraint(6, {{2, 3}}),
        make_constraint(6, {{3, 2}}),
        make_constraint(6, {{2, 3}}, {{2, {{1}, {2}}}}),
        make_constraint(6, {{1, 1}, {2, 1}, {3, 1}}, {{2, {{6}}}, {3, {{5}}}}, {5, 6}),
    };
}

template <typename T>
void expect_eq(std::vector<std::string>& fails, const T& got, const T& want,
               const std::string& what) {
    if (!(got == want)) {
        std::ostringstream os;
        os << what << " mismatch";
        fails.push_back(os.str());
    }
}

void expect(std::vector<std::string>& fails, bool ok, const std::string& what) {
    if (!ok) fails.push_back(what);
}

std::string temp_path(const std::string& suffix) {
    static int counter = 0;
    return (std::filesystem::temp_directory_path() /
            ("cardgroup_acc_" + std::to_string(getpid()) + "_" + std::to_string(++counter) +
             suffix))
        .string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::pair<int, std::string> run_cli(const std::string& args) {
    const std::string out_path = temp_path(".acc");
    const std::string cmd =
        std::string(CARDGROUP_CLI_PATH) + " " + args + " > " + out_path + " 2>&1";
    int status = std::system(cmd.c_str());
    std::string out = slurp(out_path);
    std::remove(out_path.c_str());
    return {WEXITSTATUS(status), out};
}

// ---------------------------------------------------------------------- 1
void golden_degree_eleven(std::vector<std::string>& fails) {
    Constraint c = make_constraint(11, {{1, 3}, {2, 2}, {4, 1}});
    const Permutation tau = precompute_tau_general(c);
    expect(fails, tau == parse_permutation("(4 5)(6 7)(8 9 10 11)", 11), "tau");

    const Permutation sigma = parse_permutation("(1 8)(2 6 3 7 10)(4 11)", 11);
    RandomizingSpec spec;
    spec.degree = 11;
    spec.inputs = {tau, power(tau, 2), power(tau, 3)};
    Table table(std::make_unique<ScriptedShuffleSource>(std::vector<Permutation>{sigma}, 1));
    auto rows = permutation_randomizing(table, spec);

    expect_eq(fails, table.row(rows[0]).values(),
              std::vector<int>{4, 3, 2, 7, 11, 6, 9, 8, 1, 10, 5}, "row rho");
    expect_eq(fails, table.row(rows[1]).values(),
              std::vector<int>{7, 2, 3, 9, 5, 6, 1, 8, 4, 10, 11}, "row rho^2");
    expect_eq(fails, table.row(rows[2]).values(),
              std::vector<int>{9, 3, 2, 1, 11, 6, 4, 8, 7, 10, 5}, "row rho^3");
    for (auto r : rows)
        expect(fails, table.row(r).all_facing(Facing::down), "output rows committed");

    GroupingRun run = run_secure_grouping(
        c, std::make_unique<ScriptedShuffleSource>(std::vector<Permutation>{sigma}, 1));
    expect_eq(fails, run.views[2].group(), std::vector<int>{2, 3}, "player 3 view");
    expect_eq(fails, run.views[3].group(), std::vector<int>{1, 4, 7, 9}, "player 4 view");
}

// ---------------------------------------------------------------------- 2
void golden_tau_trace(std::vector<std::string>& fails) {
    Constraint c =
        make_constraint(9, {{1, 2}, {2, 2}, {3, 1}}, {{2, {{8}}}, {3, {{9}}}}, {8, 9});
    TauTrace trace;
    Permutation tau = precompute_tau_general(c, &trace);
    expect(fails, tau == parse_permutation("(8 3)(4 5)(9 6 7)", 9), "final tau");

    expect_eq(fails, trace.initial_pool, std::vector<int>{1, 2, 3, 4, 5, 6, 7}, "initial pool");
    if (trace.steps.size() != 5) {
        fails.push_back("trace should have five steps");
        return;
    }
    using Sets = std::map<int, std::vector<std::vector<int>>>;
    const Sets both = {{2, {{8}}}, {3, {{9}}}};
    const Sets nine_only = {{3, {{9}}}};
    struct Want {
        int lambda, mu;
        std::vector<int> cycle, pool;
        Sets sets;
        const char* tau;
    };
    const std::vector<Want> want = {
        {1, 1, {1}, {2, 3, 4, 5, 6, 7}, both, "id"},
        {1, 2, {2}, {3, 4, 5, 6, 7}, both, "id"},
        {2, 1, {8, 3}, {4, 5, 6, 7}, nine_only, "(8 3)"},
        {2, 2, {4, 5}, {6, 7}, nine_only, "(8 3)(4 5)"},
        {3, 1, {9, 6, 7}, {}, {}, "(8 3)(4 5)(9 6 7)"},
    };
    for (std::size_t i = 0; i < want.size(); ++i) {
        const TauStep& s = trace.steps[i];
        expect(fails, s.lambda == want[i].lambda && s.mu == want[i].mu,
               "step " + std::to_string(i + 1) + " indices");
        expect_eq(fails, s.cycle, want[i].cycle, "step " + std::to_string(i + 1) + " cycle");
        expect_eq(fails, s.pool_after, want[i].pool, "step " + std::to_string(i + 1) + " pool");
        expect_eq(fails, s.sets_after, want[i].sets,
                  "step " + std::to_string(i + 1) + " pinned sets");
        expect(fails, s.tau_after == parse_permutation(want[i].tau, 9),
               "step " + std::to_string(i + 1) + " tau");
    }
}

// ---------------------------------------------------------------------- 3
void relabeling_is_conjugation(std::vector<std::string>& fails) {
    auto s5 = all_of_sn(5);
    std::size_t checked = 0;
    for (const auto& pi : s5) {
        for (const auto& nu : s5) {
            if (conjugate_by_relabeling(pi, nu) != compose(inverse(nu), compose(pi, nu))) {
                fails.push_back("pair " + one_line_string(pi) + ", " + one_line_string(nu));
                return;
            }
            ++checked;
        }
    }
    expect(fails, checked == 14400, "14,400 pairs checked");
}

// ---------------------------------------------------------------------- 4
void division_exhaustive(std::vector<std::string>& fails) {
    auto s3 = all_of_sn(3);
    std::size_t cases = 0;
    for (const auto& v : s3) {
        for (const auto& w : s3) {
            std::set<std::string> opened;
            for (const auto& r : s3) {
                Table table(
                    std::make_unique<ScriptedShuffleSource>(std::vector<Permutation>{r}));
                std::size_t rv = table.add_committed_row(v);
                std::size_t rw = table.add_committed_row(w);
                std::size_t out = permutation_division(table, rv, rw);
                if (table.committed_permutation(out) != compose(inverse(v), w)) {
                    fails.push_back("division wrong at v=" + one_line_string(v) +
                                    " w=" + one_line_string(w) + " r=" + one_line_string(r));
                    return;
                }
                opened.insert(one_line_string(adversary_view(table.transcript()).front()));
                ++cases;
            }
            if (opened.size() != 6) {
                fails.push_back("opened row not exactly uniform on S_3 for v=" +
                                one_line_string(v) + " w=" + one_line_string(w));
                return;
            }
        }
    }
    expect(fails, cases == 216, "216 cases checked");
}

// ---------------------------------------------------------------------- 5
void output_uniformity(std::vector<std::string>& fails) {
    UniformityVerdict five =
        verify_uniformity(make_constraint(5, {{1, 3}, {2, 1}}), 10000, 1111, 0.001);
    expect(fails, five.chi.cells == 10, "ten cells at n=5");
    expect(fails, five.pass,
           "n=5 M=(3,1) chi-square: statistic " + std::to_string(five.chi.statistic));

    UniformityVerdict six = verify_uniformity(make_constraint(6, {{2, 3}}), 15000, 2222, 0.001);
    expect(fails, six.chi.cells == 15, "fifteen cells at n=6");
    expect(fails, six.pass,
           "n=6 M=(0,3) chi-square: statistic " + std::to_string(six.chi.statistic));
}

// ---------------------------------------------------------------------- 6
void observer_independence(std::vector<std::string>& fails) {
    IndependenceVerdict v =
        verify_independence(make_constraint(6, {{2, 3}}), 1, 15000, 3333, 0.001);
    expect(fails, v.classes == 5, "five partner classes");
    expect(fails, v.conditional_uniformity.pass,
           "conditional uniformity: statistic " +
               std::to_string(v.conditional_uniformity.statistic));
    expect(fails, v.transcript_independence.pass,
           "transcript independence: statistic " +
               std::to_string(v.transcript_independence.statistic));

    // structural leak scan across the corpus
    for (const auto& c : corpus()) {
        const int k = c.max_group_size();
        std::vector<Permutation> declared;
        if (k >= 2) {
            Permutation tau = precompute_tau_general(c);
            for (int j = 1; j <= k - 1; ++j) declared.push_back(power(tau, static_cast<unsigned>(j)));
        }
        for (std::uint64_t seed = 0; seed < 25; ++seed) {
            GroupingRun run = run_secure_grouping(c, derive_seed(4444, seed));
            auto violations = scan_for_leaks(run.transcript, declared);
            if (!violations.empty()) {
                fails.push_back("leak scan: " + violations.front());
                return;
            }
            std::string text = run.transcript.to_text();
            if (text.find("SECRET") != std::string::npos) {
                fails.push_back("secret material in transcript text");
                return;
            }
            // hidden creations must say so
            for (const auto& ev : run.transcript.events)
                if (const auto* e = std::get_if<event::RowsCreated>(&ev))
                    if (!e->public_fronts &&
                        text.find("fronts=hidden") == std::string::npos) {
                        fails.push_back("hidden row creation rendered with values");
                        return;
                    }
        }
    }
}

// ---------------------------------------------------------------------- 7
void equal_fibers(std::vector<std::string>& fails) {
    for (const auto& c : corpus()) {
        if (c.n > 6) continue;
        EnumerationReport report = fiber_report(c);
        if (!report.fibers_equal) {
            fails.push_back("unequal fibers for n=" + std::to_string(c.n) +
                            " M=" + c.m_tuple_string());
            return;
        }
        std::set<std::string> from_perms;
        for (const auto& p : enumerate_valid_permutations(c))
            from_perms.insert(grouping_of_permutation(p).key());
        if (from_perms.size() != report.valid_groupings) {
            fails.push_back("oracle/engine grouping sets differ for n=" + std::to_string(c.n));
            return;
        }
    }
    EnumerationReport triple = fiber_report(make_constraint(3, {{3, 1}}));
    expect(fails, triple.fiber_sizes.size() == 1 && triple.fiber_sizes.front().second == 2,
           "n=3 single-triple fiber is exactly 2");
}

// ---------------------------------------------------------------------- 8
void card_accounting(std::vector<std::string>& fails) {
    for (const auto& c : corpus()) {
        const int d = c.max_group_size();
        if (d < 2) continue;
        const std::size_t cards = card_count(c);
        const std::size_t expected =
            2 * static_cast<std::size_t>(d - 1) * static_cast<std::size_t>(c.n);
        expect(fails, cards == expected,
               "card count for n=" + std::to_string(c.n) + " should be " +
                   std::to_string(expected));
        expect(fails,
               cards <= 3 * static_cast<std::size_t>(d) * static_cast<std::size_t>(c.n),
               "3dn bound for n=" + std::to_string(c.n));
        // the protocol really deals that many cards
        GroupingRun run = run_secure_grouping(c, 5555);
        std::size_t dealt = 0;
        for (const auto& ev : run.transcript.events) {
            if (const auto* e = std::get_if<event::RowsCreated>(&ev))
                dealt += e->rows.size() * e->width;
            if (const auto* e = std::get_if<event::Inserted>(&ev)) dealt += e->rows.size();
        }
        expect(fails, dealt == cards,
               "dealt cards (" + std::to_string(dealt) + ") equal the accounting (" +
                   std::to_string(cards) + ") for n=" + std::to_string(c.n));
    }
}

// ---------------------------------------------------------------------- 9
void cli_determinism(std::vector<std::string>& fails) {
    const std::string dir = temp_path(".d");
    std::filesystem::create_directories(dir);
    const std::string file = dir + "/roles.constraint";
    {
        std::ofstream out(file);
        out << "n = 9\nM = 2,2,1\nC[2] = {8}\nC[3] = {9}\ndummy = 8,9\n";
    }
    auto a = run_cli("run --constraint " + file + " --seed 21 --transcript " + dir + "/t1");
    auto b = run_cli("run --constraint " + file + " --seed 21 --transcript " + dir + "/t2");
    expect(fails, a.first == 0 && b.first == 0, "run exits 0");
    expect(fails, a.second == b.second, "stdout byte-identical");
    expect(fails, slurp(dir + "/t1") == slurp(dir + "/t2"), "transcript byte-identical");
    expect(fails, !slurp(dir + "/t1").empty(), "transcript written");

    auto u1 = run_cli("verify-uniformity --constraint " + file +
                      " --trials 2000 --seed 4 --significance 0.01");
    auto u2 = run_cli("verify-uniformity --constraint " + file +
                      " --trials 2000 --seed 4 --significance 0.01");
    expect(fails, u1.second == u2.second, "verify report byte-identical");

    std::filesystem::remove_all(dir);
}

}  // namespace

int main() {
    std::vector<Criterion> criteria = {
        {"golden run at degree 11 (committed rows and player views)", 1.0, golden_degree_eleven},
        {"golden tau pre-computation trace at degree 9", 1.0, golden_tau_trace},
        {"relabeling equals algebraic conjugation over all of S_5 x S_5", 5.0,
         relabeling_is_conjugation},
        {"division correct and opened row exactly uniform over all of S_3", 1.0,
         division_exhaustive},
        {"output groupings uniform at n=5 (10k runs) and n=6 (15k runs)", 30.0,
         output_uniformity},
        {"observer view independent of the rest (15k runs) and leak-free corpus", 30.0,
         observer_independence},
        {"equal fibers across the corpus; the single-triple fiber is 2", 5.0, equal_fibers},
        {"exact card count 2(d-1)n within the 3dn bound", 5.0, card_accounting},
        {"CLI runs are byte-identical under a repeated seed", 10.0, cli_determinism},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto& cr = criteria[i];
        std::vector<std::string> notes;
        auto start = std::chrono::steady_clock::now();
        try {
            cr.body(notes);
        } catch (const std::exception& e) {
            notes.push_back(std::string("exception: ") + e.what());
        }
        double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (elapsed > cr.budget_seconds)
            notes.push_back("took " + std::to_string(elapsed) + " s, budget " +
                            std::to_string(cr.budget_seconds) + " s");
        const bool ok = notes.empty();
        failures += !ok;
        std::printf("%s  %zu. %s (%.2f s)\n", ok ? "PASS" : "FAIL", i + 1, cr.name.c_str(),
                    elapsed);
        for (const auto& n : notes) std::printf("      - %s\n", n.c_str());
    }
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
