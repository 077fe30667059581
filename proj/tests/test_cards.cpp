#include <catch2/catch_amalgamated.hpp>

#include "cardgroup/cards.hpp"

using namespace cardgroup;

namespace {

std::vector<Permutation> all_of_sn(int n) {
    std::vector<int> im(static_cast<std::size_t>(n));
    std::iota(im.begin(), im.end(), 1);
    std::vector<Permutation> out;
    do {
        out.emplace_back(im);
    } while (std::next_permutation(im.begin(), im.end()));
    return out;
}

}  // namespace

TEST_CASE("sequence encoding a permutation shows the inverse images") {
    Permutation tau = parse_permutation("(1 2)(3 4)(5 6 7)", 7);
    CardSequence x = sequence_of_permutation(tau, Facing::up);
    CHECK(x.values() == std::vector<int>{2, 1, 4, 3, 7, 5, 6});

    CHECK(sequence_of_permutation(Permutation::identity(5), Facing::up).values() ==
          std::vector<int>{1, 2, 3, 4, 5});

    Permutation rho = parse_permutation("(1 9 7 4)(2 3)(5 11)", 11);
    CHECK(sequence_of_permutation(rho, Facing::down).values() ==
          std::vector<int>{4, 3, 2, 7, 11, 6, 9, 8, 1, 10, 5});
}

TEST_CASE("reading a sequence back") {
    CardSequence x = CardSequence::from_values({2, 1, 4, 3, 7, 5, 6}, Facing::up);
    CHECK(permutation_of_sequence(x) == parse_permutation("(1 2)(3 4)(5 6 7)", 7));

    CHECK(permutation_of_sequence(CardSequence::from_values({1, 2, 3}, Facing::up)) ==
          Permutation::identity(3));

    // shifting every card one step right
    Permutation s = permutation_of_sequence(
        CardSequence::from_values({7, 1, 2, 3, 4, 5, 6}, Facing::up));
    for (int k = 1; k <= 6; ++k) CHECK(s(k) == k + 1);
    CHECK(s(7) == 1);

    CHECK_THROWS_AS(
        permutation_of_sequence(CardSequence::from_values({1, 1, 3}, Facing::up)),
        NotAPermutation);
    CHECK_THROWS_AS(
        permutation_of_sequence(CardSequence::from_values({1, 2, 3}, Facing::down)),
        HiddenCard);
    CHECK(permutation_of_sequence(CardSequence::from_values({1, 2, 3}, Facing::down),
                                  SecretAccess::allow) == Permutation::identity(3));
}

TEST_CASE("round trip over all of S_5") {
    for (const auto& sigma : all_of_sn(5)) {
        CHECK(permutation_of_sequence(sequence_of_permutation(sigma, Facing::up)) == sigma);
    }
}

TEST_CASE("applying a permutation moves card i to position sigma(i)") {
    Permutation sigma = parse_permutation("(1 3)(2 6 5)(4)(7)", 7);
    CardSequence x = CardSequence::from_values({11, 12, 13, 14, 15, 16, 17}, Facing::up);
    CardSequence moved = apply_permutation(sigma, x);
    // (x3, x5, x1, x4, x6, x2, x7)
    CHECK(moved.values() == std::vector<int>{13, 15, 11, 14, 16, 12, 17});

    CHECK(apply_permutation(Permutation::identity(7), x) == x);
    CHECK_THROWS_AS(apply_permutation(Permutation::identity(6), x), DegreeMismatch);
}

TEST_CASE("action compatibility with composition, exhaustively in S_4") {
    auto s4 = all_of_sn(4);
    CardSequence x = CardSequence::from_values({21, 22, 23, 24}, Facing::down);
    for (const auto& tau : s4) {
        for (const auto& sigma : s4) {
            CHECK(apply_permutation(tau, apply_permutation(sigma, x)) ==
                  apply_permutation(compose(tau, sigma), x));
            CHECK(apply_permutation(tau, sequence_of_permutation(sigma, Facing::down)) ==
                  sequence_of_permutation(compose(tau, sigma), Facing::down));
        }
    }
}

TEST_CASE("apply preserves the value multiset and facings") {
    Permutation sigma = parse_permutation("(1 4 2)", 4);
    CardSequence x(std::vector<Card>{
        {3, Facing::up}, {1, Facing::down}, {4, Facing::down}, {2, Facing::up}});
    CardSequence y = apply_permutation(sigma, x);
    auto xs = x.values();
    auto ys = y.values();
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());
    CHECK(xs == ys);
    int down_before = 0, down_after = 0;
    for (const auto& c : x.cards()) down_before += c.facing == Facing::down;
    for (const auto& c : y.cards()) down_after += c.facing == Facing::down;
    CHECK(down_before == down_after);
}

TEST_CASE("flip all") {
    Permutation tau = parse_permutation("(1 2 3)", 3);
    CardSequence up = sequence_of_permutation(tau, Facing::up);
    CardSequence down = flip_all(up, Facing::down);
    CHECK(down.all_facing(Facing::down));
    CHECK(down.values() == up.values());
    CHECK(flip_all(flip_all(up, Facing::down), Facing::up) == up);
}

TEST_CASE("rendering hides face-down values") {
    CardSequence x(std::vector<Card>{
        {1, Facing::down}, {2, Facing::down}, {3, Facing::up}, {4, Facing::down}, {5, Facing::up}});
    CHECK(render(x) == "? ? 3 ? 5");
    CHECK(render(flip_all(x, Facing::up)) == "1 2 3 4 5");
}
