#pragma once

#include <compare>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wcert {

// Raised when a bounded enumeration runs out of budget without reaching a
// verdict. Callers surface this as an explicit Inconclusive outcome; it is
// never swallowed into a default answer.
class Inconclusive : public std::runtime_error {
public:
    explicit Inconclusive(const std::string& what) : std::runtime_error(what) {}
};

// Free product of cyclic groups: factor_orders[i] == 0 encodes Z, m >= 2
// encodes Z/m. Order 1 factors are rejected (they would be trivial).
struct GroupPresentation {
    std::vector<long long> factor_orders;

    explicit GroupPresentation(std::vector<long long> orders)
        : factor_orders(std::move(orders)) {
        if (factor_orders.empty())
            throw std::invalid_argument("GroupPresentation: need at least one factor");
        for (long long m : factor_orders)
            if (m < 0 || m == 1)
                throw std::invalid_argument("GroupPresentation: factor order must be 0 or >= 2");
    }

    std::size_t factors() const { return factor_orders.size(); }
    long long order_of(int f) const {
        if (f < 0 || static_cast<std::size_t>(f) >= factor_orders.size())
            throw std::invalid_argument("GroupPresentation: factor index out of range");
        return factor_orders[f];
    }
    friend bool operator==(const GroupPresentation&, const GroupPresentation&) = default;
};

struct Syllable {
    int factor = 0;
    long long exp = 0;
    friend bool operator==(const Syllable&, const Syllable&) = default;
    friend auto operator<=>(const Syllable&, const Syllable&) = default;
};

// Normal-form word: adjacent syllables use distinct factors, exponents are
// nonzero, and finite-factor exponents live in [1, order-1]. The empty word
// is the identity. Construction goes through Word::make or multiply, both of
// which normalize.
struct Word {
    std::vector<Syllable> syl;

    bool is_identity() const { return syl.empty(); }
    std::size_t length() const { return syl.size(); }

    friend bool operator==(const Word&, const Word&) = default;
    // Shortlex: syllable count first, then component-wise. Gives the canonical
    // "smallest representative" choice for orbits and witnesses.
    friend std::strong_ordering operator<=>(const Word& x, const Word& y) {
        if (auto c = x.syl.size() <=> y.syl.size(); c != 0) return c;
        return std::lexicographical_compare_three_way(x.syl.begin(), x.syl.end(),
                                                      y.syl.begin(), y.syl.end());
    }

    std::string str() const {
        if (syl.empty()) return "1";
        std::string s;
        for (const auto& t : syl) {
            s += "g" + std::to_string(t.factor);
            if (t.exp != 1) s += "^" + std::to_string(t.exp);
            s += ".";
        }
        s.pop_back();
        return s;
    }
};

namespace detail {
// Reduce one exponent into the normal range for its factor; 0 means the
// syllable vanishes.
inline long long normalize_exp(const GroupPresentation& G, int factor, long long e) {
    long long m = G.order_of(factor);
    if (m == 0) return e;
    long long r = e % m;
    if (r < 0) r += m;
    return r;
}

// Push a syllable onto the back of a normalized prefix, merging and
// cancelling as needed.
inline void push_syllable(const GroupPresentation& G, std::vector<Syllable>& out, int factor,
                          long long e) {
    long long exp = normalize_exp(G, factor, e);
    if (exp == 0) return;
    if (!out.empty() && out.back().factor == factor) {
        long long merged = normalize_exp(G, factor, out.back().exp + exp);
        out.pop_back();
        if (merged != 0) out.push_back({factor, merged});
        return;
    }
    out.push_back({factor, exp});
}
}  // namespace detail

inline Word make_word(const GroupPresentation& G,
                      const std::vector<std::pair<int, long long>>& sylls) {
    std::vector<Syllable> out;
    for (const auto& [f, e] : sylls) {
        G.order_of(f);  // range check
        detail::push_syllable(G, out, f, e);
    }
    return Word{std::move(out)};
}

inline Word generator(const GroupPresentation& G, int factor, long long e = 1) {
    return make_word(G, {{factor, e}});
}

inline Word multiply(const GroupPresentation& G, const Word& x, const Word& y) {
    std::vector<Syllable> out = x.syl;
    for (const auto& t : y.syl) detail::push_syllable(G, out, t.factor, t.exp);
    return Word{std::move(out)};
}

inline Word inverse(const GroupPresentation& G, const Word& x) {
    std::vector<Syllable> out;
    for (auto it = x.syl.rbegin(); it != x.syl.rend(); ++it)
        detail::push_syllable(G, out, it->factor, -it->exp);
    return Word{std::move(out)};
}

inline Word conjugate(const GroupPresentation& G, const Word& g, const Word& x) {
    return multiply(G, multiply(G, g, x), inverse(G, g));
}

inline Word power(const GroupPresentation& G, const Word& x, long long n) {
    Word acc;
    Word base = n < 0 ? inverse(G, x) : x;
    for (long long i = 0, k = std::llabs(n); i < k; ++i) acc = multiply(G, acc, base);
    return acc;
}

// Cyclically reduced core plus a conjugator u with x = u * core * u^-1.
inline std::pair<Word, Word> cyclic_reduce(const GroupPresentation& G, const Word& x) {
    Word core = x;
    Word conj;  // identity
    while (core.length() >= 2 && core.syl.front().factor == core.syl.back().factor) {
        Word head{{core.syl.front()}};
        // Rotate the head syllable to the back, where it merges with the tail.
        Word rest{std::vector<Syllable>(core.syl.begin() + 1, core.syl.end())};
        conj = multiply(G, conj, head);
        core = multiply(G, rest, head);
    }
    return {core, conj};
}

inline bool is_two_torsion(const GroupPresentation& G, const Word& x) {
    return multiply(G, x, x).is_identity();
}

// Letter length: infinite-factor syllables weigh their |exponent|, torsion
// syllables weigh 1. Unlike the syllable count this measure grows under
// conjugation along infinite orbits, which is what the closure rules need.
inline std::size_t letter_length(const GroupPresentation& G, const Word& w) {
    std::size_t n = 0;
    for (const auto& s : w.syl)
        n += G.order_of(s.factor) == 0 ? static_cast<std::size_t>(std::llabs(s.exp)) : 1;
    return n;
}

// Finite order iff identity, or the cyclically reduced core is one syllable
// of a finite factor; everything longer embeds a free pattern.
inline bool has_finite_order(const GroupPresentation& G, const Word& x) {
    if (x.is_identity()) return true;
    Word core = cyclic_reduce(G, x).first;
    return core.length() == 1 && G.order_of(core.syl[0].factor) != 0;
}

// Order of x, or 0 for infinite order. Finite orders are bounded by the core
// syllable's factor order, so direct iteration terminates.
inline long long element_order(const GroupPresentation& G, const Word& x) {
    if (x.is_identity()) return 1;
    if (!has_finite_order(G, x)) return 0;
    Word core = cyclic_reduce(G, x).first;
    long long cap = G.order_of(core.syl[0].factor) + 1;
    Word p = x;
    for (long long d = 1; d <= cap; ++d) {
        if (p.is_identity()) return d;
        p = multiply(G, p, x);
    }
    throw std::logic_error("element_order: finite-order element did not cycle");
}

enum class OrbitKind { Finite, Infinite };

struct OrbitResult {
    OrbitKind kind = OrbitKind::Finite;
    // Finite: the full cycle x, gxg^-1, ... back to x (x first).
    // Infinite: the enumerated prefix up to the closure point.
    std::vector<Word> words;
    bool certified = false;  // always true on return; kept in reports
};

// Closure bound for conjugation iterates. Write g = u h u^-1 with h
// cyclically reduced; then g^k x g^-k = u h^k (u^-1 x u) h^-k u^-1, and once
// h^k has pushed past the middle word the letter length gains at least 2 per
// step, strictly. The mixing zone is over after letter_length(x) +
// 2 letter_length(g) steps, so past that point a length above any fixed bar
// stays above it forever.
inline std::size_t mixing_steps(const GroupPresentation& G, const Word& g, const Word& x) {
    return letter_length(G, x) + 2 * letter_length(G, g) + 6;
}

// Iterate x -> gxg^-1 and decide the orbit exactly. Finite when the
// iteration returns to x, which always happens for g of finite order.
// Infinite once the mixing zone is past and the letter length clears both
// length_bound and x itself: nothing later can come back down, so the orbit
// cannot close and no word of letter length <= length_bound lies beyond the
// enumerated prefix. Both verdicts are exact.
inline OrbitResult conjugation_orbit(const GroupPresentation& G, const Word& g, const Word& x,
                                     std::size_t length_bound) {
    if (x.is_identity()) throw std::invalid_argument("conjugation_orbit: x must not be identity");
    const std::size_t bar = std::max(length_bound, letter_length(G, x));
    const std::size_t mix = mixing_steps(G, g, x);
    long long ord = element_order(G, g);
    const std::size_t step_cap =
        ord > 0 ? static_cast<std::size_t>(ord) + 1 : mix + 2 * bar + 32;

    OrbitResult res;
    res.words.push_back(x);
    Word cur = x;
    for (std::size_t step = 1; step <= step_cap; ++step) {
        Word next = conjugate(G, g, cur);
        if (next == x) {
            res.kind = OrbitKind::Finite;
            res.certified = true;
            return res;
        }
        cur = std::move(next);
        res.words.push_back(cur);
        // Finite-order g always cycles, so only infinite order may diverge.
        if (ord == 0 && step >= mix && letter_length(G, cur) > bar) {
            res.kind = OrbitKind::Infinite;
            res.certified = true;
            return res;
        }
    }
    throw Inconclusive("conjugation_orbit: step budget exhausted at length bound " +
                       std::to_string(length_bound));
}

}  // namespace wcert
