#pragma once

#include <map>
#include <vector>

#include "wcert/rational.hpp"

namespace wcert {

// Reduced row echelon form over sparse rows keyed by an ordered column type.
// The reduced form is canonical (independent of insertion order), pivots are
// the smallest keys under Key's ordering, and pivot coefficients are 1.
template <class Key>
class SparseEchelon {
public:
    using Row = std::map<Key, Rational>;

    // Reduce r against the current rows, then absorb what is left (if
    // anything) as a new pivot row and re-reduce the older rows against it.
    void insert(Row r) {
        reduce_in_place(r);
        if (r.empty()) return;
        const Key pivot = r.begin()->first;
        Rational lead = r.begin()->second;
        for (auto& [k, c] : r) c /= lead;
        for (auto& row : rows_) {
            auto it = row.second.find(pivot);
            if (it == row.second.end()) continue;
            Rational f = it->second;
            axpy(row.second, -f, r);
        }
        rows_.emplace(pivot, std::move(r));
    }

    // v minus its projection onto the row space; the canonical coset
    // representative. Linear and idempotent by construction.
    Row reduce(Row v) const {
        reduce_in_place(v);
        return v;
    }

    void reduce_in_place(Row& v) const {
        // Pivot keys are strictly increasing and pivot columns are absent from
        // every other row, so one ordered sweep is enough.
        for (const auto& [pivot, row] : rows_) {
            auto it = v.find(pivot);
            if (it == v.end()) continue;
            Rational f = it->second;
            axpy(v, -f, row);
        }
    }

    std::size_t rank() const { return rows_.size(); }

    std::vector<Key> pivots() const {
        std::vector<Key> p;
        p.reserve(rows_.size());
        for (const auto& [k, _] : rows_) p.push_back(k);
        return p;
    }

    std::vector<Row> rows() const {
        std::vector<Row> out;
        out.reserve(rows_.size());
        for (const auto& [_, r] : rows_) out.push_back(r);
        return out;
    }

    bool has_pivot(const Key& k) const { return rows_.count(k) != 0; }

    // u += f * w, dropping entries that cancel to zero.
    static void axpy(Row& u, const Rational& f, const Row& w) {
        if (f.is_zero()) return;
        for (const auto& [k, c] : w) {
            auto [it, fresh] = u.try_emplace(k, Rational(0));
            it->second += f * c;
            if (it->second.is_zero()) u.erase(it);
        }
    }

private:
    std::map<Key, Row> rows_;  // pivot key -> normalized row
};

}  // namespace wcert
