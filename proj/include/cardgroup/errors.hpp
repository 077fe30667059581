#pragma once

#include <stdexcept>
#include <string>

namespace cardgroup {

// Permutations or card rows of different degrees were combined.
struct DegreeMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A card sequence does not carry each value of {1..n} exactly once.
struct NotAPermutation : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A face-down card was read without secret access.
struct HiddenCard : std::logic_error {
    using std::logic_error::logic_error;
};

// Rows of unequal width were shuffled together.
struct RowLengthMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// An action would reveal a hidden value (e.g. shuffling a face-up card).
struct WouldLeak : std::logic_error {
    using std::logic_error::logic_error;
};

// A transcript and secret log do not describe the same session.
struct ReplayDiverged : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A fixing set contains an index outside {1..n} or a duplicate.
struct BadFixingSet : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A grouping constraint violates its own validity conditions.
struct BadConstraint : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Exhaustive enumeration was requested beyond the factorial guard.
struct TooLargeForOracle : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A statistical test was given too few samples for its cell count.
struct InsufficientSamples : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Malformed text input (permutation or constraint file); message carries
// the line number where applicable.
struct ParseError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace cardgroup
