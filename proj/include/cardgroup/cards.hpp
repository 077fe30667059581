#pragma once

// Number cards and card sequences.
//
// The sequence encoding a permutation sigma shows sigma^-1(i) at position i;
// equivalently, card k sits at position sigma(k). Applying a permutation tau
// to a sequence moves the card at position i to position tau(i), so a row
// encoding sigma encodes compose(tau, sigma) afterwards.
//
// Positions are 1-based in the public interface.

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "cardgroup/errors.hpp"
#include "cardgroup/permutation.hpp"

namespace cardgroup {

enum class Facing { up, down };

// A face-down card is a commitment: its value exists but is hidden.
struct Card {
    int value = 0;
    Facing facing = Facing::down;

    friend bool operator==(const Card&, const Card&) = default;
};

enum class SecretAccess { deny, allow };

class CardSequence {
public:
    CardSequence() = default;

    explicit CardSequence(std::vector<Card> cards) : cards_(std::move(cards)) {}

    static CardSequence from_values(const std::vector<int>& values, Facing facing) {
        std::vector<Card> cards;
        cards.reserve(values.size());
        for (int v : values) cards.push_back(Card{v, facing});
        return CardSequence(std::move(cards));
    }

    std::size_t size() const { return cards_.size(); }

    const Card& card_at(std::size_t pos) const { return cards_.at(pos - 1); }
    Card& card_at(std::size_t pos) { return cards_.at(pos - 1); }

    const std::vector<Card>& cards() const { return cards_; }

    // Front values in position order; reads through face-down cards, so
    // callers outside tests and the engine itself should prefer
    // permutation_of_sequence with SecretAccess::deny.
    std::vector<int> values() const {
        std::vector<int> out;
        out.reserve(cards_.size());
        for (const auto& c : cards_) out.push_back(c.value);
        return out;
    }

    bool all_facing(Facing f) const {
        return std::all_of(cards_.begin(), cards_.end(),
                           [f](const Card& c) { return c.facing == f; });
    }

    void insert_at(std::size_t pos, Card card) {
        if (pos < 1 || pos > cards_.size() + 1)
            throw std::out_of_range("insert position " + std::to_string(pos));
        cards_.insert(cards_.begin() + static_cast<std::ptrdiff_t>(pos - 1), card);
    }

    friend bool operator==(const CardSequence&, const CardSequence&) = default;

private:
    std::vector<Card> cards_;
};

// Row encoding sigma: position i shows sigma^-1(i).
inline CardSequence sequence_of_permutation(const Permutation& sigma, Facing facing) {
    return CardSequence::from_values(inverse(sigma).images(), facing);
}

// Inverse of sequence_of_permutation. Face-down cards require
// SecretAccess::allow; the value multiset must be exactly {1..n}.
inline Permutation permutation_of_sequence(const CardSequence& x,
                                           SecretAccess access = SecretAccess::deny) {
    if (x.size() == 0) throw NotAPermutation("empty card sequence");
    for (const auto& c : x.cards())
        if (c.facing == Facing::down && access == SecretAccess::deny)
            throw HiddenCard("face-down card at value read");
    try {
        return inverse(Permutation(x.values()));
    } catch (const NotAPermutation&) {
        throw NotAPermutation("card values are not a permutation of {1..n}");
    }
}

// Moves the card at position i to position sigma(i); values and facings ride
// along untouched.
inline CardSequence apply_permutation(const Permutation& sigma, const CardSequence& x) {
    if (static_cast<std::size_t>(sigma.degree()) != x.size())
        throw DegreeMismatch("apply: permutation degree " + std::to_string(sigma.degree()) +
                             " vs row width " + std::to_string(x.size()));
    std::vector<Card> out(x.size());
    for (std::size_t i = 1; i <= x.size(); ++i)
        out[static_cast<std::size_t>(sigma(static_cast<int>(i))) - 1] = x.card_at(i);
    return CardSequence(std::move(out));
}

inline CardSequence flip_all(CardSequence x, Facing facing) {
    for (std::size_t i = 1; i <= x.size(); ++i) x.card_at(i).facing = facing;
    return x;
}

// "? ? 3 ? 5" — face-up cards by value, face-down as '?'.
inline std::string render(const CardSequence& x) {
    std::ostringstream os;
    for (std::size_t i = 1; i <= x.size(); ++i) {
        if (i > 1) os << ' ';
        const Card& c = x.card_at(i);
        if (c.facing == Facing::up)
            os << c.value;
        else
            os << '?';
    }
    return os.str();
}

}  // namespace cardgroup
