#pragma once

// The protocol table: rows of cards mutated by shuffle / open / rearrange /
// insert actions. Every mutation appends one event to the public Transcript
// (the adversary's view); hidden shuffle permutations go to the SecretLog,
// which only test and analysis code may read. Row and column indices are
// 1-based, and rows keep their indices for the whole session (consumed rows
// are retired, never deleted).

#include <algorithm>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "cardgroup/cards.hpp"
#include "cardgroup/errors.hpp"
#include "cardgroup/permutation.hpp"
#include "cardgroup/rng.hpp"

namespace cardgroup {

namespace event {

// Rows dealt onto the table. Rows created from public material carry their
// fronts; committed inputs carry nothing.
struct RowsCreated {
    std::vector<std::size_t> rows;
    std::size_t width = 0;
    std::optional<std::vector<int>> public_fronts;  // absent = hidden
    Facing facing = Facing::down;
};

// Pile-scramble of the given columns, identical across the given rows.
// The drawn permutation itself lives in the SecretLog only.
struct ShuffleApplied {
    std::vector<std::size_t> rows;
    std::vector<std::size_t> columns;
};

struct Opened {
    std::size_t row = 0;
    std::vector<int> values;
};

struct Rearranged {
    std::vector<std::size_t> rows;
    Permutation perm;
};

// A public card spliced into each row at a column, then faced down.
struct Inserted {
    std::vector<std::size_t> rows;
    std::size_t column = 0;
    int value = 0;
};

}  // namespace event

using TranscriptEvent = std::variant<event::RowsCreated, event::ShuffleApplied, event::Opened,
                                     event::Rearranged, event::Inserted>;

namespace detail {

inline std::string join_sizes(const std::vector<std::size_t>& xs) {
    std::ostringstream os;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) os << ',';
        os << xs[i];
    }
    return os.str();
}

inline std::string join_ints(const std::vector<int>& xs) {
    std::ostringstream os;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) os << ',';
        os << xs[i];
    }
    return os.str();
}

}  // namespace detail

struct Transcript {
    std::vector<TranscriptEvent> events;

    // Line-oriented rendering; this text is exactly what an observer of the
    // table learns.
    std::string to_text() const {
        std::ostringstream os;
        for (const auto& ev : events) {
            std::visit(
                [&os](const auto& e) {
                    using T = std::decay_t<decltype(e)>;
                    if constexpr (std::is_same_v<T, event::RowsCreated>) {
                        os << "ROWS rows=" << detail::join_sizes(e.rows) << " width=" << e.width
                           << " fronts="
                           << (e.public_fronts ? detail::join_ints(*e.public_fronts)
                                               : std::string("hidden"))
                           << " facing=" << (e.facing == Facing::up ? "up" : "down");
                    } else if constexpr (std::is_same_v<T, event::ShuffleApplied>) {
                        os << "SHUFFLE rows=" << detail::join_sizes(e.rows)
                           << " cols=" << detail::join_sizes(e.columns);
                    } else if constexpr (std::is_same_v<T, event::Opened>) {
                        os << "OPEN row=" << e.row << " values=" << detail::join_ints(e.values);
                    } else if constexpr (std::is_same_v<T, event::Rearranged>) {
                        os << "REARRANGE rows=" << detail::join_sizes(e.rows)
                           << " perm=" << one_line_string(e.perm);
                    } else if constexpr (std::is_same_v<T, event::Inserted>) {
                        os << "INSERT rows=" << detail::join_sizes(e.rows) << " col=" << e.column
                           << " value=" << e.value;
                    }
                },
                ev);
            os << '\n';
        }
        return os.str();
    }
};

struct SecretEntry {
    enum class Kind { shuffle_draw, note };
    Kind kind = Kind::shuffle_draw;
    std::string label;
    Permutation perm = Permutation::identity(1);
};

struct SecretLog {
    std::vector<SecretEntry> entries;

    // Only ever rendered behind an explicit unsafe flag.
    std::string to_text() const {
        std::ostringstream os;
        for (const auto& e : entries) {
            os << "SECRET "
               << (e.kind == SecretEntry::Kind::shuffle_draw ? "shuffle" : "note") << ' '
               << e.label << " perm=" << one_line_string(e.perm) << '\n';
        }
        return os.str();
    }
};

class Table {
public:
    explicit Table(std::unique_ptr<ShuffleSource> source) : source_(std::move(source)) {}
    explicit Table(std::uint64_t seed) : source_(std::make_unique<SeededShuffleSource>(seed)) {}

    std::size_t row_count() const { return rows_.size(); }
    bool row_alive(std::size_t row) const { return alive_.at(row - 1); }

    // Engine/test access: sees face-down values.
    const CardSequence& row(std::size_t row) const { return rows_.at(row - 1); }

    Permutation committed_permutation(std::size_t row) const {
        return permutation_of_sequence(rows_.at(row - 1), SecretAccess::allow);
    }

    std::vector<CardSequence> rows_snapshot() const { return rows_; }

    // Committed input: the transcript records only that a hidden row of this
    // width appeared.
    std::size_t add_committed_row(const Permutation& v) {
        rows_.push_back(sequence_of_permutation(v, Facing::down));
        alive_.push_back(true);
        std::size_t idx = rows_.size();
        transcript_.events.push_back(event::RowsCreated{
            {idx}, static_cast<std::size_t>(v.degree()), std::nullopt, Facing::down});
        return idx;
    }

    // Public rows: dealt face-up with the given fronts, then set to the
    // requested facing. The fronts are public knowledge.
    std::vector<std::size_t> add_public_rows(std::size_t count, const std::vector<int>& fronts,
                                             Facing facing_after) {
        std::vector<std::size_t> idxs;
        for (std::size_t i = 0; i < count; ++i) {
            rows_.push_back(CardSequence::from_values(fronts, facing_after));
            alive_.push_back(true);
            idxs.push_back(rows_.size());
        }
        transcript_.events.push_back(
            event::RowsCreated{idxs, fronts.size(), fronts, facing_after});
        return idxs;
    }

    void pile_scramble(const std::vector<std::size_t>& rows) {
        pile_scramble_columns(rows, all_columns_of(rows));
    }

    // One hidden permutation of the selected columns, applied identically to
    // every referenced row; other columns untouched. Shuffling a face-up card
    // would reveal the permutation, so that is refused.
    void pile_scramble_columns(const std::vector<std::size_t>& rows,
                               const std::vector<std::size_t>& columns) {
        require_alive(rows);
        if (rows.empty()) throw std::logic_error("pile scramble of no rows");
        const std::size_t width = rows_.at(rows.front() - 1).size();
        for (std::size_t r : rows)
            if (rows_.at(r - 1).size() != width)
                throw RowLengthMismatch("pile scramble across rows of width " +
                                        std::to_string(width) + " and " +
                                        std::to_string(rows_.at(r - 1).size()));
        if (columns.empty()) throw std::logic_error("pile scramble of no columns");
        std::vector<std::size_t> cols = columns;
        std::sort(cols.begin(), cols.end());
        if (std::adjacent_find(cols.begin(), cols.end()) != cols.end())
            throw std::logic_error("duplicate column in pile scramble");
        if (cols.front() < 1 || cols.back() > width)
            throw std::out_of_range("pile scramble column out of range");
        for (std::size_t r : rows)
            for (std::size_t c : cols)
                if (rows_.at(r - 1).card_at(c).facing == Facing::up)
                    throw WouldLeak("face-up card in shuffled region (row " + std::to_string(r) +
                                    ", col " + std::to_string(c) + ")");

        Permutation r = source_->draw(static_cast<int>(cols.size()));
        for (std::size_t ri : rows) {
            CardSequence& row = rows_.at(ri - 1);
            std::vector<Card> picked;
            picked.reserve(cols.size());
            for (std::size_t c : cols) picked.push_back(row.card_at(c));
            CardSequence shuffled = apply_permutation(r, CardSequence(std::move(picked)));
            for (std::size_t j = 0; j < cols.size(); ++j)
                row.card_at(cols[j]) = shuffled.card_at(j + 1);
        }
        secret_log_.entries.push_back(
            SecretEntry{SecretEntry::Kind::shuffle_draw, "pile-scramble", r});
        transcript_.events.push_back(event::ShuffleApplied{rows, cols});
    }

    // Turns the whole row face-up and publishes its values. Idempotent but
    // re-recorded.
    std::vector<int> open_row(std::size_t row) {
        require_alive({row});
        CardSequence& r = rows_.at(row - 1);
        r = flip_all(std::move(r), Facing::up);
        std::vector<int> values = r.values();
        transcript_.events.push_back(event::Opened{row, values});
        return values;
    }

    // Applies a publicly-known permutation to each referenced row. The caller
    // is responsible for pi's public provenance (an opened row or a declared
    // protocol input); scan_for_leaks audits this after the fact.
    void rearrange_publicly(const std::vector<std::size_t>& rows, const Permutation& pi) {
        require_alive(rows);
        for (std::size_t r : rows) rows_.at(r - 1) = apply_permutation(pi, rows_.at(r - 1));
        transcript_.events.push_back(event::Rearranged{rows, pi});
    }

    // Splices a public card into each referenced row at the given column and
    // faces it down. The value is public by construction.
    void insert_card(const std::vector<std::size_t>& rows, std::size_t column, int value) {
        require_alive(rows);
        for (std::size_t r : rows) rows_.at(r - 1).insert_at(column, Card{value, Facing::down});
        transcript_.events.push_back(event::Inserted{rows, column, value});
    }

    // Marks a consumed row; indices of later rows are unaffected.
    void retire_row(std::size_t row) { alive_.at(row - 1) = false; }

    void note_secret(std::string label, Permutation p) {
        secret_log_.entries.push_back(
            SecretEntry{SecretEntry::Kind::note, std::move(label), std::move(p)});
    }

    const Transcript& transcript() const { return transcript_; }
    const SecretLog& secret_log() const { return secret_log_; }

private:
    std::vector<std::size_t> all_columns_of(const std::vector<std::size_t>& rows) const {
        if (rows.empty()) throw std::logic_error("pile scramble of no rows");
        std::vector<std::size_t> cols(rows_.at(rows.front() - 1).size());
        std::iota(cols.begin(), cols.end(), 1);
        return cols;
    }

    void require_alive(const std::vector<std::size_t>& rows) const {
        for (std::size_t r : rows) {
            if (r < 1 || r > rows_.size())
                throw std::out_of_range("row " + std::to_string(r) + " does not exist");
            if (!alive_.at(r - 1))
                throw std::logic_error("row " + std::to_string(r) + " was already consumed");
        }
        std::vector<std::size_t> sorted = rows;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw std::logic_error("row referenced twice in one action");
    }

    std::unique_ptr<ShuffleSource> source_;
    std::vector<CardSequence> rows_;
    std::vector<bool> alive_;
    Transcript transcript_;
    SecretLog secret_log_;
};

// Hidden material replay needs besides the logs: the committed input rows,
// in creation order.
struct ReplayInputs {
    std::vector<Permutation> hidden_rows;
};

// Re-executes a transcript against the secret log and returns the rebuilt
// table. Any mismatch between the two logs (or with the recorded opened
// values) raises ReplayDiverged.
inline Table replay(const Transcript& transcript, const SecretLog& secrets,
                    const ReplayInputs& inputs = {}) {
    std::vector<Permutation> draws;
    for (const auto& e : secrets.entries)
        if (e.kind == SecretEntry::Kind::shuffle_draw) draws.push_back(e.perm);

    Table table(std::make_unique<ScriptedShuffleSource>(draws));
    std::size_t next_hidden = 0;
    std::size_t draws_needed = 0;

    for (const auto& ev : transcript.events) {
        std::visit(
            [&](const auto& e) {
                using T = std::decay_t<decltype(e)>;
                if constexpr (std::is_same_v<T, event::RowsCreated>) {
                    if (e.public_fronts) {
                        table.add_public_rows(e.rows.size(), *e.public_fronts, e.facing);
                    } else {
                        for (std::size_t i = 0; i < e.rows.size(); ++i) {
                            if (next_hidden >= inputs.hidden_rows.size())
                                throw ReplayDiverged("missing hidden row input");
                            const Permutation& v = inputs.hidden_rows[next_hidden++];
                            if (static_cast<std::size_t>(v.degree()) != e.width)
                                throw ReplayDiverged("hidden row width mismatch");
                            table.add_committed_row(v);
                        }
                    }
                } else if constexpr (std::is_same_v<T, event::ShuffleApplied>) {
                    if (draws_needed >= draws.size())
                        throw ReplayDiverged("secret log has fewer draws than transcript shuffles");
                    if (draws[draws_needed].degree() != static_cast<int>(e.columns.size()))
                        throw ReplayDiverged("secret draw degree mismatch");
                    ++draws_needed;
                    table.pile_scramble_columns(e.rows, e.columns);
                } else if constexpr (std::is_same_v<T, event::Opened>) {
                    std::vector<int> values = table.open_row(e.row);
                    if (values != e.values)
                        throw ReplayDiverged("opened values differ from transcript");
                } else if constexpr (std::is_same_v<T, event::Rearranged>) {
                    table.rearrange_publicly(e.rows, e.perm);
                } else if constexpr (std::is_same_v<T, event::Inserted>) {
                    table.insert_card(e.rows, e.column, e.value);
                }
            },
            ev);
    }
    if (draws_needed != draws.size())
        throw ReplayDiverged("secret log has more draws than transcript shuffles");
    return table;
}

// Structural no-leak audit of a transcript:
//   * committed row creations carry no values,
//   * shuffle events carry only row/column indices,
//   * every public rearrangement is either a declared protocol input or the
//     inverse of a permutation opened earlier (whose one-line form is the
//     opened fronts).
// Returns human-readable violations; empty means clean.
inline std::vector<std::string> scan_for_leaks(const Transcript& transcript,
                                               const std::vector<Permutation>& declared_public) {
    std::vector<std::string> violations;
    std::vector<std::vector<int>> opened_fronts;
    std::size_t index = 0;
    for (const auto& ev : transcript.events) {
        ++index;
        std::visit(
            [&](const auto& e) {
                using T = std::decay_t<decltype(e)>;
                if constexpr (std::is_same_v<T, event::Opened>) {
                    opened_fronts.push_back(e.values);
                } else if constexpr (std::is_same_v<T, event::Rearranged>) {
                    bool ok = false;
                    for (const auto& pub : declared_public)
                        if (pub == e.perm) ok = true;
                    for (const auto& fronts : opened_fronts)
                        if (fronts == e.perm.images()) ok = true;
                    if (!ok)
                        violations.push_back("event " + std::to_string(index) +
                                             ": rearrangement with no public provenance: " +
                                             one_line_string(e.perm));
                }
            },
            ev);
    }
    std::string text = transcript.to_text();
    if (text.find("SECRET") != std::string::npos)
        violations.push_back("transcript text contains secret-log material");
    return violations;
}

}  // namespace cardgroup
