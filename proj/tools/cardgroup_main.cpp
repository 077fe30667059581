// Command-line front end: run grouping sessions from constraint files,
// print per-player views, dump transcripts, and drive the verification
// suites.
//
// Exit codes: 0 success / statistical pass, 1 statistical failure,
// 2 input error.

#include <fstream>
#include <iostream>
#include <set>
#include <string>

#include <CLI11.hpp>

#include "cardgroup/cardgroup.hpp"

namespace {

using namespace cardgroup;

constexpr int kExitOk = 0;
constexpr int kExitStatFail = 1;
constexpr int kExitInputError = 2;

struct SessionConfig {
    std::string constraint_path;
    std::uint64_t seed = 1;
    std::size_t trials = 1;
    double significance = 0.001;
    std::string transcript_path;
    int player = 0;  // 0 = all
    int observer = 1;
    bool unsafe_secrets = false;
};

std::string group_text(const std::vector<int>& group) {
    std::string out = "{";
    for (std::size_t i = 0; i < group.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(group[i]);
    }
    out += '}';
    return out;
}

int cmd_run(const SessionConfig& cfg) {
    Constraint c = load_constraint_file(cfg.constraint_path);
    if (cfg.player < 0 || cfg.player > c.n) {
        std::cerr << "error: player " << cfg.player << " out of range for n = " << c.n << "\n";
        return kExitInputError;
    }
    GroupingRun run = run_secure_grouping(c, cfg.seed);

    std::set<int> dummies(c.dummies.begin(), c.dummies.end());
    std::cout << "constraint: n=" << c.n << " M=" << c.m_tuple_string();
    for (const auto& [k, sets] : c.together)
        for (const auto& s : sets) {
            std::cout << " C[" << k << "]={";
            for (std::size_t i = 0; i < s.size(); ++i)
                std::cout << (i ? "," : "") << s[i];
            std::cout << "}";
        }
    if (!c.dummies.empty()) {
        std::cout << " dummies=";
        for (std::size_t i = 0; i < c.dummies.size(); ++i)
            std::cout << (i ? "," : "") << c.dummies[i];
    }
    std::cout << "\nseed: " << cfg.seed << "\n";

    for (const auto& view : run.views) {
        if (dummies.count(view.player)) continue;  // dummies are not players
        if (cfg.player != 0 && view.player != cfg.player) continue;
        std::cout << "Player " << view.player << ": group " << group_text(view.group());
        std::string roles;
        for (int g : view.group())
            if (dummies.count(g)) roles += (roles.empty() ? "" : ",") + std::to_string(g);
        if (!roles.empty()) std::cout << " (dummy " << roles << ")";
        std::cout << "\n";
    }

    if (!cfg.transcript_path.empty()) {
        std::ofstream out(cfg.transcript_path, std::ios::binary);
        if (!out) {
            std::cerr << "cannot write transcript file: " << cfg.transcript_path << "\n";
            return kExitInputError;
        }
        out << run.transcript.to_text();
        if (cfg.unsafe_secrets) out << run.secrets.to_text();
    }
    if (cfg.unsafe_secrets) std::cout << run.secrets.to_text();
    return kExitOk;
}

int cmd_verify_uniformity(const SessionConfig& cfg) {
    Constraint c = load_constraint_file(cfg.constraint_path);
    UniformityVerdict v = verify_uniformity(c, cfg.trials, cfg.seed, cfg.significance);
    std::cout << v.report;
    return v.pass ? kExitOk : kExitStatFail;
}

int cmd_verify_independence(const SessionConfig& cfg) {
    Constraint c = load_constraint_file(cfg.constraint_path);
    IndependenceVerdict v =
        verify_independence(c, cfg.observer, cfg.trials, cfg.seed, cfg.significance);
    std::cout << v.report;
    return v.pass ? kExitOk : kExitStatFail;
}

int cmd_enumerate(const SessionConfig& cfg) {
    Constraint c = load_constraint_file(cfg.constraint_path);
    EnumerationReport report = fiber_report(c);
    std::cout << "[enumerate]\n"
              << "n = " << c.n << "\n"
              << "m = " << c.m_tuple_string() << "\n"
              << "valid_groupings = " << report.valid_groupings << "\n"
              << "valid_permutations = " << report.valid_permutations << "\n"
              << "fibers_equal = " << (report.fibers_equal ? "true" : "false") << "\n";
    for (const auto& [key, size] : report.fiber_sizes)
        std::cout << "fiber " << key << " = " << size << "\n";
    return report.fibers_equal ? kExitOk : kExitStatFail;
}

int cmd_card_count(const SessionConfig& cfg) {
    Constraint c = load_constraint_file(cfg.constraint_path);
    const int d = c.max_group_size();
    const std::size_t cards = card_count(c);
    std::cout << "[card-count]\n"
              << "n = " << c.n << "\n"
              << "max_group_size = " << d << "\n"
              << "cards = " << cards << "\n";
    if (d >= 2) {
        const std::size_t bound = 3 * static_cast<std::size_t>(d) * static_cast<std::size_t>(c.n);
        std::cout << "bound_3dn = " << bound << "\n"
                  << "within_bound = " << (cards <= bound ? "true" : "false") << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"card-based secure grouping engine"};
    app.require_subcommand(1);

    SessionConfig cfg;

    auto add_common = [&cfg](CLI::App* sub, bool seed_required) {
        sub->add_option("--constraint", cfg.constraint_path, "constraint file path")
            ->required();
        auto* seed = sub->add_option("--seed", cfg.seed, "seed for all randomness (u64)");
        if (seed_required) seed->required();
        return sub;
    };

    CLI::App* run = add_common(app.add_subcommand("run", "run one grouping session"), true);
    run->add_option("--transcript", cfg.transcript_path, "write the public transcript here");
    run->add_option("--player", cfg.player, "print a single player's view");
    run->add_flag("--unsafe-secrets", cfg.unsafe_secrets,
                  "also emit the hidden permutations (breaks the security demo)");

    CLI::App* vu = add_common(
        app.add_subcommand("verify-uniformity", "chi-square the output distribution"), false);
    vu->add_option("--trials", cfg.trials, "number of seeded runs")
        ->required()
        ->check(CLI::PositiveNumber);
    vu->add_option("--significance", cfg.significance, "0.05, 0.01 or 0.001")
        ->check(CLI::IsMember({0.05, 0.01, 0.001}));

    CLI::App* vi = add_common(
        app.add_subcommand("verify-independence", "observer view vs rest-of-grouping"), false);
    vi->add_option("--trials", cfg.trials, "number of seeded runs")
        ->required()
        ->check(CLI::PositiveNumber);
    vi->add_option("--player", cfg.observer, "observer player index");
    vi->add_option("--significance", cfg.significance, "0.05, 0.01 or 0.001")
        ->check(CLI::IsMember({0.05, 0.01, 0.001}));

    add_common(app.add_subcommand("enumerate", "oracle: groupings, permutations, fibers"), false);
    add_common(app.add_subcommand("card-count", "exact number cards the protocol needs"), false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInputError;
    }

    try {
        if (app.got_subcommand("run")) return cmd_run(cfg);
        if (app.got_subcommand("verify-uniformity")) return cmd_verify_uniformity(cfg);
        if (app.got_subcommand("verify-independence")) return cmd_verify_independence(cfg);
        if (app.got_subcommand("enumerate")) return cmd_enumerate(cfg);
        if (app.got_subcommand("card-count")) return cmd_card_count(cfg);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const BadConstraint& e) {
        std::cerr << "error: invalid constraint: " << e.what() << "\n";
        return kExitInputError;
    } catch (const TooLargeForOracle& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const InsufficientSamples& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
