#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "wcert/echelon.hpp"
#include "wcert/lattice.hpp"
#include "wcert/parallel.hpp"
#include "wcert/rational.hpp"

namespace wcert {

// Finite formal rational combination of admissible basis symbols. Terms with
// zero coefficient are never stored; all keys share one arity.
class WVector {
public:
    using Terms = std::map<ThetaPair, Rational>;

    WVector() = default;

    void add_term(const ThetaPair& p, const Rational& c) {
        if (c.is_zero()) return;
        if (!is_admissible(p))
            throw std::invalid_argument("WVector: inadmissible pair " + p.str());
        if (!terms_.empty() && terms_.begin()->first.a.arity() != p.a.arity())
            throw std::invalid_argument("WVector: mixed arities");
        auto [it, fresh] = terms_.try_emplace(p, Rational(0));
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t support_size() const { return terms_.size(); }

    long long support_max_norm() const {
        long long m = 0;
        for (const auto& [p, c] : terms_) {
            m = std::max(m, p.a.max_norm());
            m = std::max(m, p.b.max_norm());
        }
        return m;
    }
    bool supported_in(const Window& w) const {
        for (const auto& [p, c] : terms_)
            if (!w.contains(p)) return false;
        return true;
    }

    WVector& operator+=(const WVector& y) {
        for (const auto& [p, c] : y.terms_) add_term(p, c);
        return *this;
    }
    WVector& operator-=(const WVector& y) {
        for (const auto& [p, c] : y.terms_) add_term(p, -c);
        return *this;
    }
    friend WVector operator+(WVector x, const WVector& y) { return x += y; }
    friend WVector operator-(WVector x, const WVector& y) { return x -= y; }
    friend WVector operator*(const Rational& f, const WVector& x) {
        WVector r;
        for (const auto& [p, c] : x.terms_) r.add_term(p, f * c);
        return r;
    }
    friend bool operator==(const WVector&, const WVector&) = default;

    static WVector from_terms(Terms t) {
        WVector v;
        for (auto& [p, c] : t) v.add_term(p, c);
        return v;
    }

private:
    Terms terms_;
};

// The defining four-term relation attached to an admissible pair.
inline WVector relation(const LatticeVector& a, const LatticeVector& b) {
    if (!is_admissible(a, b))
        throw std::invalid_argument("relation: pair (" + a.str() + "," + b.str() +
                                    ") is not admissible");
    WVector r;
    r.add_term(ThetaPair{a - b, -b}, Rational(1));
    r.add_term(ThetaPair{b - a, -a}, Rational(-1));
    r.add_term(ThetaPair{a, a - b}, Rational(-1));
    r.add_term(ThetaPair{b, b - a}, Rational(1));
    return r;
}

// Reduced echelon basis of the window-internal relation span. A relation is
// admitted only when all four of its terms lie inside the window, which for a
// window pair (a,b) comes down to ||a-b||_inf <= bound.
class RelationBasis {
public:
    RelationBasis() = default;
    explicit RelationBasis(const Window& w) : window_(w) {
        std::vector<ThetaPair> pairs = enumerate_pairs(w);
        // Row construction is independent per pair; build in parallel slots,
        // then eliminate serially in the fixed pair order so the echelon form
        // never depends on the thread count.
        std::vector<WVector> rows(pairs.size());
        std::vector<char> keep(pairs.size(), 0);
        parallel_for(pairs.size(), [&](std::size_t i) {
            const auto& p = pairs[i];
            if ((p.a - p.b).max_norm() > w.bound) return;
            rows[i] = relation(p.a, p.b);
            keep[i] = 1;
        });
        for (std::size_t i = 0; i < pairs.size(); ++i)
            if (keep[i]) ech_.insert(rows[i].terms());
    }

    const Window& window() const { return window_; }
    std::size_t rank() const { return ech_.rank(); }
    std::vector<ThetaPair> pivot_pairs() const { return ech_.pivots(); }
    std::vector<WVector> rows() const {
        std::vector<WVector> out;
        for (auto& r : ech_.rows()) out.push_back(WVector::from_terms(std::move(r)));
        return out;
    }
    const SparseEchelon<ThetaPair>& echelon() const { return ech_; }

private:
    Window window_;
    SparseEchelon<ThetaPair> ech_;
};

// Canonical coset representative of v modulo the relation span.
inline WVector reduce(const WVector& v, const RelationBasis& rb) {
    if (!v.supported_in(rb.window()))
        throw std::invalid_argument(
            "reduce: support leaves the window (max norm " +
            std::to_string(v.support_max_norm()) + " > " + std::to_string(rb.window().bound) + ")");
    return WVector::from_terms(rb.echelon().reduce(v.terms()));
}

// Dimension of the windowed quotient: free symbols minus independent relations.
inline std::size_t quotient_rank(const Window& w) {
    return enumerate_pairs(w).size() - RelationBasis(w).rank();
}

// Basis pairs whose symbols survive reduce unchanged (non-pivot columns).
inline std::vector<ThetaPair> quotient_basis(const RelationBasis& rb) {
    std::vector<ThetaPair> out;
    for (const auto& p : enumerate_pairs(rb.window()))
        if (!rb.echelon().has_pivot(p)) out.push_back(p);
    return out;
}

// Functorial pushforward along an injective lattice map: symbol-wise on
// indices. Injectivity keeps every image pair admissible.
inline WVector pushforward(const LatticeMap& inj, const WVector& v) {
    if (!inj.is_injective())
        throw std::invalid_argument("pushforward: lattice map is not injective");
    WVector r;
    for (const auto& [p, c] : v.terms())
        r.add_term(ThetaPair{inj.apply(p.a), inj.apply(p.b)}, c);
    return r;
}

// One-sided inverse of pushforward: a symbol survives only when both indices
// have integral preimages; everything else maps to zero.
inline WVector retract(const LatticeMap& inj, const WVector& v) {
    if (!inj.is_injective())
        throw std::invalid_argument("retract: lattice map is not injective");
    WVector r;
    for (const auto& [p, c] : v.terms()) {
        LatticeVector a, b;
        if (!inj.solve_integral(p.a, a)) continue;
        if (!inj.solve_integral(p.b, b)) continue;
        r.add_term(ThetaPair{a, b}, c);
    }
    return r;
}

// Involution induced by negating the lattice: theta_{a,b} -> theta_{-a,-b}.
inline WVector iota_star(const WVector& v) {
    WVector r;
    for (const auto& [p, c] : v.terms()) r.add_term(ThetaPair{-p.a, -p.b}, c);
    return r;
}

}  // namespace wcert
