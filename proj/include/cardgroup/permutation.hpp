#pragma once

// Exact arithmetic in the symmetric group S_n.
//
// A Permutation stores its one-line form: image(i) is where i is sent,
// with 1-based values and positions everywhere in the public interface.
//
// Composition convention (fixed for the whole library): compose(f, g)
// applies g FIRST and then f, i.e. compose(f, g)(i) == f(g(i)). All
// protocol algebra below relies on this order; when a card row encoding
// sigma is rearranged by tau, the row afterwards encodes compose(tau, sigma).

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "cardgroup/errors.hpp"

namespace cardgroup {

class Permutation {
public:
    // One-line form: images[k] is the image of k+1. Must be a bijection
    // on {1..n}, n >= 1.
    explicit Permutation(std::vector<int> images) : images_(std::move(images)) {
        if (images_.empty()) throw NotAPermutation("degree must be at least 1");
        std::vector<bool> seen(images_.size(), false);
        for (int v : images_) {
            if (v < 1 || v > static_cast<int>(images_.size()))
                throw NotAPermutation("image " + std::to_string(v) + " out of range");
            if (seen[static_cast<std::size_t>(v) - 1])
                throw NotAPermutation("image " + std::to_string(v) + " repeated");
            seen[static_cast<std::size_t>(v) - 1] = true;
        }
    }

    static Permutation identity(int degree) {
        if (degree < 1) throw NotAPermutation("degree must be at least 1");
        std::vector<int> im(static_cast<std::size_t>(degree));
        std::iota(im.begin(), im.end(), 1);
        return Permutation(std::move(im));
    }

    // Product of pairwise disjoint cycles, missing elements fixed.
    static Permutation from_cycles(int degree, const std::vector<std::vector<int>>& cycles) {
        if (degree < 1) throw NotAPermutation("degree must be at least 1");
        std::vector<int> im(static_cast<std::size_t>(degree));
        std::iota(im.begin(), im.end(), 1);
        std::vector<bool> used(static_cast<std::size_t>(degree), false);
        for (const auto& cyc : cycles) {
            for (int e : cyc) {
                if (e < 1 || e > degree)
                    throw NotAPermutation("cycle element " + std::to_string(e) + " out of range");
                if (used[static_cast<std::size_t>(e) - 1])
                    throw NotAPermutation("cycles are not disjoint at " + std::to_string(e));
                used[static_cast<std::size_t>(e) - 1] = true;
            }
            for (std::size_t j = 0; j + 1 < cyc.size(); ++j)
                im[static_cast<std::size_t>(cyc[j]) - 1] = cyc[j + 1];
            if (!cyc.empty()) im[static_cast<std::size_t>(cyc.back()) - 1] = cyc.front();
        }
        return Permutation(std::move(im));
    }

    int degree() const { return static_cast<int>(images_.size()); }

    // Image of i (1-based).
    int operator()(int i) const { return images_[static_cast<std::size_t>(i) - 1]; }

    const std::vector<int>& images() const { return images_; }

    bool is_identity() const {
        for (int i = 1; i <= degree(); ++i)
            if ((*this)(i) != i) return false;
        return true;
    }

    friend bool operator==(const Permutation&, const Permutation&) = default;

private:
    std::vector<int> images_;
};

// f after g: result(i) = f(g(i)).
inline Permutation compose(const Permutation& f, const Permutation& g) {
    if (f.degree() != g.degree())
        throw DegreeMismatch("compose: degrees " + std::to_string(f.degree()) + " vs " +
                             std::to_string(g.degree()));
    std::vector<int> im(static_cast<std::size_t>(f.degree()));
    for (int i = 1; i <= f.degree(); ++i)
        im[static_cast<std::size_t>(i) - 1] = f(g(i));
    return Permutation(std::move(im));
}

inline Permutation inverse(const Permutation& f) {
    std::vector<int> im(static_cast<std::size_t>(f.degree()));
    for (int i = 1; i <= f.degree(); ++i)
        im[static_cast<std::size_t>(f(i)) - 1] = i;
    return Permutation(std::move(im));
}

inline Permutation power(const Permutation& f, unsigned e) {
    Permutation acc = Permutation::identity(f.degree());
    Permutation base = f;
    while (e > 0) {
        if (e & 1u) acc = compose(acc, base);
        base = compose(base, base);
        e >>= 1u;
    }
    return acc;
}

// One cycle of a decomposition; rotated so the smallest element leads.
struct Cycle {
    std::vector<int> elements;

    int length() const { return static_cast<int>(elements.size()); }
    bool contains(int v) const {
        return std::find(elements.begin(), elements.end(), v) != elements.end();
    }
    friend bool operator==(const Cycle&, const Cycle&) = default;
};

// Disjoint cycles covering {1..n}, fixed points included, sorted by the
// smallest element of each cycle.
struct CycleDecomposition {
    std::vector<Cycle> cycles;
    int degree = 0;

    Permutation to_permutation() const {
        std::vector<std::vector<int>> raw;
        raw.reserve(cycles.size());
        for (const auto& c : cycles) raw.push_back(c.elements);
        return Permutation::from_cycles(degree, raw);
    }

    const Cycle& cycle_containing(int v) const {
        for (const auto& c : cycles)
            if (c.contains(v)) return c;
        throw std::out_of_range("no cycle contains " + std::to_string(v));
    }

    friend bool operator==(const CycleDecomposition&, const CycleDecomposition&) = default;
};

inline CycleDecomposition decompose(const Permutation& f) {
    CycleDecomposition out;
    out.degree = f.degree();
    std::vector<bool> visited(static_cast<std::size_t>(f.degree()), false);
    for (int start = 1; start <= f.degree(); ++start) {
        if (visited[static_cast<std::size_t>(start) - 1]) continue;
        Cycle c;
        int cur = start;
        do {
            visited[static_cast<std::size_t>(cur) - 1] = true;
            c.elements.push_back(cur);
            cur = f(cur);
        } while (cur != start);
        out.cycles.push_back(std::move(c));
    }
    return out;
}

// Multiset of cycle lengths <1^m1, 2^m2, ...>; invariant under conjugation.
struct CycleType {
    std::map<int, int> multiplicities;  // length -> count, zero counts absent
    int degree = 0;

    friend bool operator==(const CycleType&, const CycleType&) = default;

    std::string to_string() const {
        std::ostringstream os;
        os << '<';
        bool first = true;
        for (const auto& [len, count] : multiplicities) {
            if (!first) os << ',';
            os << len << '^' << count;
            first = false;
        }
        os << '>';
        return os.str();
    }
};

inline CycleType cycle_type(const Permutation& f) {
    CycleType t;
    t.degree = f.degree();
    for (const auto& c : decompose(f).cycles) ++t.multiplicities[c.length()];
    return t;
}

// nu^-1 * pi * nu, computed by rewriting each value j in pi's functional
// graph to nu^-1(j) rather than by multiplying out the product.
inline Permutation conjugate_by_relabeling(const Permutation& pi, const Permutation& nu) {
    if (pi.degree() != nu.degree())
        throw DegreeMismatch("conjugate: degrees " + std::to_string(pi.degree()) + " vs " +
                             std::to_string(nu.degree()));
    const Permutation nu_inv = inverse(nu);
    std::vector<int> im(static_cast<std::size_t>(pi.degree()));
    for (int j = 1; j <= pi.degree(); ++j)
        im[static_cast<std::size_t>(nu_inv(j)) - 1] = nu_inv(pi(j));
    return Permutation(std::move(im));
}

// ---------------------------------------------------------------------------
// Text forms. One-line: "[2,1,4,3,7,5,6]". Cycles: "(1 2)(3 4)(5 6 7)",
// fixed points omitted unless requested; the identity renders as "id".

inline std::string one_line_string(const Permutation& f) {
    std::ostringstream os;
    os << '[';
    for (int i = 1; i <= f.degree(); ++i) {
        if (i > 1) os << ',';
        os << f(i);
    }
    os << ']';
    return os.str();
}

inline std::string cycle_string(const Permutation& f, bool include_fixed_points = false) {
    std::ostringstream os;
    bool any = false;
    for (const auto& c : decompose(f).cycles) {
        if (c.length() == 1 && !include_fixed_points) continue;
        os << '(';
        for (std::size_t j = 0; j < c.elements.size(); ++j) {
            if (j > 0) os << ' ';
            os << c.elements[j];
        }
        os << ')';
        any = true;
    }
    return any ? os.str() : std::string("id");
}

namespace detail {

// Cycle-body token: a value <= degree stands for itself; otherwise a
// run of digits is split per digit (covers the compact "(123)" form).
inline void append_cycle_token(const std::string& tok, int degree, std::vector<int>& out) {
    try {
        std::size_t pos = 0;
        long v = std::stol(tok, &pos);
        if (pos == tok.size() && v >= 1 && v <= degree) {
            out.push_back(static_cast<int>(v));
            return;
        }
    } catch (const std::exception&) {
        throw ParseError("bad cycle element '" + tok + "'");
    }
    for (char ch : tok) {
        if (!std::isdigit(static_cast<unsigned char>(ch)) || ch == '0')
            throw ParseError("bad cycle element '" + tok + "'");
        int v = ch - '0';
        if (v > degree) throw ParseError("cycle element " + std::to_string(v) + " exceeds degree");
        out.push_back(v);
    }
}

}  // namespace detail

// Accepts one-line form "[2,1,4,3]" and cycle form "(1 2)(3 4)", the
// latter with space- or comma-separated elements (compact digit runs such
// as "(123)" are read digit by digit when the run is not itself a value
// in range). "id" names the identity.
inline Permutation parse_permutation(const std::string& text, int degree) {
    std::size_t b = text.find_first_not_of(" \t\r\n");
    std::size_t e = text.find_last_not_of(" \t\r\n");
    if (b == std::string::npos) throw ParseError("empty permutation text");
    std::string s = text.substr(b, e - b + 1);

    if (s == "id" || s == "()") return Permutation::identity(degree);

    if (s.front() == '[') {
        if (s.back() != ']') throw ParseError("unterminated one-line form");
        std::vector<int> im;
        std::string tok;
        for (std::size_t i = 1; i < s.size() && s[i] != ']'; ++i) {
            char ch = s[i];
            if (ch == ',' || std::isspace(static_cast<unsigned char>(ch))) {
                if (!tok.empty()) {
                    im.push_back(std::stoi(tok));
                    tok.clear();
                }
            } else if (std::isdigit(static_cast<unsigned char>(ch))) {
                tok.push_back(ch);
            } else {
                throw ParseError(std::string("unexpected character '") + ch + "' in one-line form");
            }
        }
        if (!tok.empty()) im.push_back(std::stoi(tok));
        if (static_cast<int>(im.size()) != degree)
            throw ParseError("one-line form lists " + std::to_string(im.size()) +
                             " images for degree " + std::to_string(degree));
        return Permutation(std::move(im));
    }

    if (s.front() == '(') {
        std::vector<std::vector<int>> cycles;
        std::size_t i = 0;
        while (i < s.size()) {
            if (std::isspace(static_cast<unsigned char>(s[i]))) {
                ++i;
                continue;
            }
            if (s[i] != '(') throw ParseError("expected '(' in cycle form");
            std::size_t close = s.find(')', i);
            if (close == std::string::npos) throw ParseError("unterminated cycle");
            std::string body = s.substr(i + 1, close - i - 1);
            std::vector<int> cyc;
            std::string tok;
            for (char ch : body) {
                if (ch == ',' || std::isspace(static_cast<unsigned char>(ch))) {
                    if (!tok.empty()) {
                        detail::append_cycle_token(tok, degree, cyc);
                        tok.clear();
                    }
                } else {
                    tok.push_back(ch);
                }
            }
            if (!tok.empty()) detail::append_cycle_token(tok, degree, cyc);
            if (cyc.empty()) throw ParseError("empty cycle");
            cycles.push_back(std::move(cyc));
            i = close + 1;
        }
        try {
            return Permutation::from_cycles(degree, cycles);
        } catch (const NotAPermutation& err) {
            throw ParseError(err.what());
        }
    }

    throw ParseError("unrecognized permutation text: " + s);
}

}  // namespace cardgroup
