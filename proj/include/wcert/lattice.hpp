#pragma once

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

#include "wcert/rational.hpp"

namespace wcert {

// Element of the free abelian group Z^b, b = arity. Compared lexicographically
// coordinate by coordinate; that order is the global tie-breaker everywhere a
// deterministic choice is needed (pair enumeration, pivot order, witnesses).
struct LatticeVector {
    std::vector<long long> c;

    LatticeVector() = default;
    explicit LatticeVector(std::vector<long long> coords) : c(std::move(coords)) {}

    std::size_t arity() const { return c.size(); }
    bool is_zero() const {
        return std::all_of(c.begin(), c.end(), [](long long v) { return v == 0; });
    }
    long long max_norm() const {
        long long m = 0;
        for (long long v : c) m = std::max(m, std::llabs(v));
        return m;
    }

    friend LatticeVector operator+(const LatticeVector& x, const LatticeVector& y) {
        check_arity(x, y);
        LatticeVector r = x;
        for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] += y.c[i];
        return r;
    }
    friend LatticeVector operator-(const LatticeVector& x, const LatticeVector& y) {
        check_arity(x, y);
        LatticeVector r = x;
        for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] -= y.c[i];
        return r;
    }
    LatticeVector operator-() const {
        LatticeVector r = *this;
        for (auto& v : r.c) v = -v;
        return r;
    }
    friend bool operator==(const LatticeVector&, const LatticeVector&) = default;
    friend auto operator<=>(const LatticeVector& x, const LatticeVector& y) {
        return std::lexicographical_compare_three_way(x.c.begin(), x.c.end(),
                                                      y.c.begin(), y.c.end());
    }

    std::string str() const {
        std::string s = "(";
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(c[i]);
        }
        return s + ")";
    }

    static void check_arity(const LatticeVector& x, const LatticeVector& y) {
        if (x.arity() != y.arity())
            throw std::invalid_argument("LatticeVector: arity mismatch " +
                                        std::to_string(x.arity()) + " vs " +
                                        std::to_string(y.arity()));
    }
};

// Index pair (a, b) of a basis symbol. Admissible when a, b and a-b are all
// nonzero; only admissible pairs ever key a coefficient map.
struct ThetaPair {
    LatticeVector a, b;

    friend bool operator==(const ThetaPair&, const ThetaPair&) = default;
    friend auto operator<=>(const ThetaPair& x, const ThetaPair& y) {
        if (auto c = x.a <=> y.a; c != 0) return c;
        return x.b <=> y.b;
    }
    std::string str() const { return "[" + a.str() + "," + b.str() + "]"; }
};

inline bool is_admissible(const LatticeVector& a, const LatticeVector& b) {
    LatticeVector::check_arity(a, b);
    return !a.is_zero() && !b.is_zero() && !(a - b).is_zero();
}
inline bool is_admissible(const ThetaPair& p) { return is_admissible(p.a, p.b); }

// Max-norm box: all vectors with every coordinate in [-bound, bound].
struct Window {
    std::size_t rank = 1;
    long long bound = 1;

    Window() = default;
    Window(std::size_t r, long long n) : rank(r), bound(n) {
        if (r == 0) throw std::invalid_argument("Window: rank must be positive");
        if (n < 1) throw std::invalid_argument("Window: bound must be >= 1");
    }

    bool contains(const LatticeVector& v) const {
        return v.arity() == rank && v.max_norm() <= bound;
    }
    bool contains(const ThetaPair& p) const { return contains(p.a) && contains(p.b); }

    friend bool operator==(const Window&, const Window&) = default;
};

// All nonzero window vectors in increasing lexicographic order.
inline std::vector<LatticeVector> enumerate_vectors(const Window& w) {
    std::vector<LatticeVector> out;
    std::vector<long long> cur(w.rank, -w.bound);
    for (;;) {
        LatticeVector v(cur);
        if (!v.is_zero()) out.push_back(std::move(v));
        std::size_t i = w.rank;
        while (i > 0) {
            --i;
            if (cur[i] < w.bound) {
                ++cur[i];
                std::fill(cur.begin() + i + 1, cur.end(), -w.bound);
                break;
            }
            if (i == 0) return out;
        }
    }
}

// All admissible pairs with both entries in the window, ordered
// lexicographically by (a, b). Pure, so trivially idempotent.
inline std::vector<ThetaPair> enumerate_pairs(const Window& w) {
    std::vector<LatticeVector> vs = enumerate_vectors(w);
    std::vector<ThetaPair> out;
    out.reserve(vs.size() * (vs.size() - 1));
    for (const auto& a : vs)
        for (const auto& b : vs) {
            if (a == b) continue;  // a-b = 0 happens only here
            out.push_back(ThetaPair{a, b});
        }
    return out;
}

// Integer matrix representing a homomorphism Z^cols -> Z^rows, stored row-major.
struct LatticeMap {
    std::size_t rows = 0, cols = 0;
    std::vector<long long> e;

    LatticeMap() = default;
    LatticeMap(std::size_t r, std::size_t c, std::vector<long long> entries)
        : rows(r), cols(c), e(std::move(entries)) {
        if (e.size() != r * c) throw std::invalid_argument("LatticeMap: entry count mismatch");
    }

    long long at(std::size_t i, std::size_t j) const { return e[i * cols + j]; }

    LatticeVector apply(const LatticeVector& v) const {
        if (v.arity() != cols)
            throw std::invalid_argument("LatticeMap: vector arity " + std::to_string(v.arity()) +
                                        " does not match domain " + std::to_string(cols));
        std::vector<long long> r(rows, 0);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) r[i] += at(i, j) * v.c[j];
        return LatticeVector(std::move(r));
    }

    LatticeMap negated() const {
        LatticeMap m = *this;
        for (auto& v : m.e) v = -v;
        return m;
    }

    // Rank over the rationals, by elimination on a scratch copy.
    std::size_t rank() const {
        std::vector<std::vector<Rational>> m(rows, std::vector<Rational>(cols));
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) m[i][j] = Rational(at(i, j));
        std::size_t rk = 0;
        for (std::size_t col = 0; col < cols && rk < rows; ++col) {
            std::size_t piv = rk;
            while (piv < rows && m[piv][col].is_zero()) ++piv;
            if (piv == rows) continue;
            std::swap(m[rk], m[piv]);
            for (std::size_t i = rk + 1; i < rows; ++i) {
                if (m[i][col].is_zero()) continue;
                Rational f = m[i][col] / m[rk][col];
                for (std::size_t j = col; j < cols; ++j) m[i][j] -= f * m[rk][j];
            }
            ++rk;
        }
        return rk;
    }

    bool is_injective() const { return rank() == cols; }

    // Unique integral preimage of v, if one exists (the map must be injective,
    // so uniqueness is automatic; returns false when v is outside the image
    // lattice, including rational-but-not-integral cases).
    bool solve_integral(const LatticeVector& v, LatticeVector& out) const {
        if (v.arity() != rows)
            throw std::invalid_argument("LatticeMap: vector arity does not match codomain");
        // Eliminate on the augmented system [M | v].
        std::vector<std::vector<Rational>> m(rows, std::vector<Rational>(cols + 1));
        for (std::size_t i = 0; i < rows; ++i) {
            for (std::size_t j = 0; j < cols; ++j) m[i][j] = Rational(at(i, j));
            m[i][cols] = Rational(v.c[i]);
        }
        std::vector<std::size_t> pivot_col;
        std::size_t rk = 0;
        for (std::size_t col = 0; col < cols && rk < rows; ++col) {
            std::size_t piv = rk;
            while (piv < rows && m[piv][col].is_zero()) ++piv;
            if (piv == rows) continue;
            std::swap(m[rk], m[piv]);
            Rational lead = m[rk][col];
            for (std::size_t j = col; j <= cols; ++j) m[rk][j] /= lead;
            for (std::size_t i = 0; i < rows; ++i) {
                if (i == rk || m[i][col].is_zero()) continue;
                Rational f = m[i][col];
                for (std::size_t j = col; j <= cols; ++j) m[i][j] -= f * m[rk][j];
            }
            pivot_col.push_back(col);
            ++rk;
        }
        for (std::size_t i = rk; i < rows; ++i)
            if (!m[i][cols].is_zero()) return false;  // inconsistent
        if (rk < cols) return false;                  // not injective; caller guards
        std::vector<long long> x(cols, 0);
        for (std::size_t i = 0; i < rk; ++i) {
            if (!m[i][cols].is_integer()) return false;
            x[pivot_col[i]] = m[i][cols].num();
        }
        out = LatticeVector(std::move(x));
        return true;
    }
};

}  // namespace wcert
