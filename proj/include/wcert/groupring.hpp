#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "wcert/groupword.hpp"

namespace wcert {

// Integer combination of non-identity group words. Identity terms produced by
// collection are dropped silently; coefficients that cancel disappear.
class RingElement {
public:
    using Terms = std::map<Word, long long>;

    void add_term(const Word& w, long long c) {
        if (c == 0 || w.is_identity()) return;
        auto [it, fresh] = terms_.try_emplace(w, 0);
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t support_size() const { return terms_.size(); }
    long long coeff(const Word& w) const {
        auto it = terms_.find(w);
        return it == terms_.end() ? 0 : it->second;
    }
    RingElement& operator+=(const RingElement& y) {
        for (const auto& [w, c] : y.terms_) add_term(w, c);
        return *this;
    }
    RingElement& operator-=(const RingElement& y) {
        for (const auto& [w, c] : y.terms_) add_term(w, -c);
        return *this;
    }
    friend RingElement operator+(RingElement x, const RingElement& y) { return x += y; }
    friend RingElement operator-(RingElement x, const RingElement& y) { return x -= y; }
    friend bool operator==(const RingElement&, const RingElement&) = default;

private:
    Terms terms_;
};

// Basis-wise conjugation w -> gwg^-1. A bijection on non-identity words, so
// the coefficient multiset is preserved.
inline RingElement conj_action(const GroupPresentation& G, const Word& g, const RingElement& x) {
    RingElement r;
    for (const auto& [w, c] : x.terms()) r.add_term(conjugate(G, g, w), c);
    return r;
}

// The symmetric power combination sum_k c_k (g^k + g^-k), defined for g of
// infinite order so the 2n words stay distinct and non-identity.
inline RingElement dax_composite(const GroupPresentation& G, const std::vector<long long>& c,
                                 const Word& g) {
    if (g.is_identity()) throw std::invalid_argument("dax_composite: g must not be identity");
    if (has_finite_order(G, g))
        throw std::invalid_argument("dax_composite: g must have infinite order");
    if (c.empty()) throw std::invalid_argument("dax_composite: need at least one coefficient");
    RingElement r;
    for (std::size_t k = 1; k <= c.size(); ++k) {
        if (c[k - 1] == 0) continue;
        r.add_term(power(G, g, static_cast<long long>(k)), c[k - 1]);
        r.add_term(power(G, g, -static_cast<long long>(k)), c[k - 1]);
    }
    return r;
}

// One conjugation orbit met by the support, with its coefficient sum.
struct OrbitRecord {
    Word representative;  // shortlex-smallest member
    long long sum = 0;
    std::vector<std::pair<Word, long long>> members;  // support words with coefficients
    bool finite = false;  // full cycle enumerated
    bool exact = false;   // membership certified; both closure modes set this
};

struct SolveResult {
    bool solvable = false;
    RingElement witness;               // valid only when solvable
    std::vector<OrbitRecord> orbits;   // every orbit met by the support
    std::vector<OrbitRecord> violations;  // orbits with nonzero sum
};

namespace detail {

// One orbit segment around w0 under conjugation by g: indexed words with w0
// at index 0, negative indices from the inverse direction. Either a full
// finite cycle (forward indices 0..period-1) or a window certified wide
// enough that no word of letter length <= len_bar lies beyond the enumerated
// ends. The certification is the mixing_steps closure: for infinite-order g
// the letter length grows strictly once the mixing zone is past, and for
// finite-order g the cycle must close within the order, so both exits are
// exact, not heuristic.
struct OrbitSegment {
    std::map<long long, Word> words;
    bool finite = false;
    long long period = 0;
};

inline OrbitSegment collect_orbit_segment(const GroupPresentation& G, const Word& g,
                                          const Word& w0, std::size_t len_bar) {
    const long long ord = element_order(G, g);

    OrbitSegment seg;
    seg.words[0] = w0;

    const Word gi = inverse(G, g);
    for (int dir = 0; dir < 2; ++dir) {
        const Word& conj_by = dir == 0 ? g : gi;
        const std::size_t mix = mixing_steps(G, conj_by, w0);
        const std::size_t bar = std::max(len_bar, letter_length(G, w0));
        const std::size_t step_cap =
            ord > 0 ? static_cast<std::size_t>(ord) + 1 : mix + 2 * bar + 32;
        Word cur = w0;
        for (std::size_t step = 1;; ++step) {
            if (step > step_cap)
                throw Inconclusive("orbit segment: step budget exhausted for " + w0.str());
            Word next = conjugate(G, conj_by, cur);
            if (next == w0) {
                if (dir == 0) {
                    seg.finite = true;
                    seg.period = static_cast<long long>(step);
                }
                break;  // cycle closed; the other direction revisits it
            }
            cur = std::move(next);
            long long idx = dir == 0 ? static_cast<long long>(step)
                                     : -static_cast<long long>(step);
            seg.words[idx] = cur;
            if (ord == 0 && step >= mix && letter_length(G, cur) > bar) break;
        }
        if (seg.finite) break;
    }
    return seg;
}

}  // namespace detail

// Decide whether beta - C_g(beta) = y has a finitely supported solution.
// The support of y splits into conjugation orbits; on each orbit the image of
// (id - C_g) is exactly the sum-zero part (cyclic partial sums on finite
// orbits, one-sided telescoping on infinite ones), so y is reachable iff
// every orbit's coefficient sum vanishes. Solvable witnesses are rebuilt into
// y by substitution before returning; failure of that check is a logic error,
// not a verdict.
inline SolveResult minus_conj_solvable(const GroupPresentation& G, const Word& g,
                                       const RingElement& y) {
    SolveResult res;
    if (y.is_zero()) {
        res.solvable = true;
        return res;
    }
    std::size_t len_bar = 0;
    for (const auto& [w, c] : y.terms()) len_bar = std::max(len_bar, letter_length(G, w));

    std::map<Word, long long> remaining(y.terms().begin(), y.terms().end());
    RingElement witness;

    while (!remaining.empty()) {
        const Word w0 = remaining.begin()->first;
        detail::OrbitSegment seg = detail::collect_orbit_segment(G, g, w0, len_bar);

        OrbitRecord rec;
        rec.finite = seg.finite;
        rec.exact = true;

        // Index -> coefficient for support words found in this segment.
        std::map<long long, long long> y_at;
        for (const auto& [idx, w] : seg.words) {
            auto it = remaining.find(w);
            if (it == remaining.end()) continue;
            y_at[idx] = it->second;
            rec.members.emplace_back(w, it->second);
            rec.sum += it->second;
            remaining.erase(it);
        }
        rec.representative = rec.members.front().first;
        for (const auto& [w, c] : rec.members)
            rec.representative = std::min(rec.representative, w);

        if (rec.sum != 0) {
            res.violations.push_back(rec);
        } else if (seg.finite) {
            // Partial sums around the cycle: beta_i = y_1 + ... + y_i.
            long long acc = 0;
            for (long long i = 1; i < seg.period; ++i) {
                auto it = y_at.find(i);
                if (it != y_at.end()) acc += it->second;
                if (acc != 0) witness.add_term(seg.words.at(i), acc);
            }
        } else {
            // Telescope down from the largest support index.
            long long lo = y_at.begin()->first, hi = y_at.rbegin()->first;
            long long tail = 0;  // sum of y_j for j > k, built downward
            for (long long k = hi - 1; k >= lo; --k) {
                auto it = y_at.find(k + 1);
                if (it != y_at.end()) tail += it->second;
                if (tail != 0) witness.add_term(seg.words.at(k), -tail);
            }
        }
        res.orbits.push_back(rec);
    }

    std::sort(res.orbits.begin(), res.orbits.end(),
              [](const OrbitRecord& a, const OrbitRecord& b) {
                  return a.representative < b.representative;
              });
    std::sort(res.violations.begin(), res.violations.end(),
              [](const OrbitRecord& a, const OrbitRecord& b) {
                  return a.representative < b.representative;
              });

    if (!res.violations.empty()) {
        res.solvable = false;
        return res;
    }
    RingElement check = witness - conj_action(G, g, witness);
    if (!(check == y))
        throw Inconclusive(
            "minus_conj_solvable: witness failed the substitution check; "
            "orbit partition was not consistent at the enumeration bounds");
    res.solvable = true;
    res.witness = std::move(witness);
    return res;
}

// Basis of the simultaneous fixed space of the conjugation actions of gens on
// the span of a finite, conjugation-closed support set: indicator sums of the
// joint orbits. Closure under each generator is checked up front (generators
// permute the finite set, so the generated group stays inside it).
inline std::vector<RingElement> fixed_vectors(const GroupPresentation& G,
                                              const std::vector<Word>& gens,
                                              const std::vector<Word>& support) {
    std::map<Word, std::size_t> index;
    for (std::size_t i = 0; i < support.size(); ++i) {
        if (support[i].is_identity())
            throw std::invalid_argument("fixed_vectors: identity in support");
        if (!index.emplace(support[i], i).second)
            throw std::invalid_argument("fixed_vectors: duplicate support word " +
                                        support[i].str());
    }

    std::vector<std::size_t> parent(support.size());
    for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
    auto find = [&](std::size_t a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };

    for (const auto& g : gens)
        for (std::size_t i = 0; i < support.size(); ++i) {
            Word im = conjugate(G, g, support[i]);
            auto it = index.find(im);
            if (it == index.end())
                throw std::invalid_argument("fixed_vectors: support not closed: conjugating " +
                                            support[i].str() + " by " + g.str() + " gives " +
                                            im.str());
            std::size_t a = find(i), b = find(it->second);
            if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }

    std::map<std::size_t, RingElement> classes;
    for (std::size_t i = 0; i < support.size(); ++i)
        classes[find(i)].add_term(support[i], 1);

    std::vector<std::pair<Word, RingElement>> sorted;
    for (auto& [root, vec] : classes)
        sorted.emplace_back(vec.terms().begin()->first, std::move(vec));
    std::sort(sorted.begin(), sorted.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    std::vector<RingElement> out;
    out.reserve(sorted.size());
    for (auto& [w, vec] : sorted) out.push_back(std::move(vec));
    return out;
}

}  // namespace wcert
