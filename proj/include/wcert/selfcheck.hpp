#pragma once

// Verification-only module: independent oracles and the embedded selftest.
// Production code never calls into this header; the CLI selftest and the test
// suite do. The oracles deliberately avoid the library's sparse elimination
// and orbit partitioning, answering the same questions by dense textbook
// linear algebra so that agreement actually means something.

#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "wcert/confpair.hpp"
#include "wcert/groupring.hpp"
#include "wcert/groupword.hpp"
#include "wcert/lattice.hpp"
#include "wcert/scenario_io.hpp"
#include "wcert/wspace.hpp"

namespace wcert::selfcheck {

// Plain Gaussian elimination; mutates m. Returns the rank.
inline std::size_t dense_rank(std::vector<std::vector<Rational>>& m) {
    if (m.empty()) return 0;
    std::size_t rows = m.size(), cols = m[0].size(), rk = 0;
    for (std::size_t col = 0; col < cols && rk < rows; ++col) {
        std::size_t piv = rk;
        while (piv < rows && m[piv][col].is_zero()) ++piv;
        if (piv == rows) continue;
        std::swap(m[rk], m[piv]);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == rk || m[i][col].is_zero()) continue;
            Rational f = m[i][col] / m[rk][col];
            for (std::size_t j = col; j < cols; ++j) {
                if (m[rk][j].is_zero()) continue;
                m[i][j] -= f * m[rk][j];
            }
        }
        ++rk;
    }
    return rk;
}

// Independent quotient rank: dense relation matrix over the full pair basis,
// with the four-term rows written out directly.
inline std::size_t oracle_quotient_rank(const Window& w) {
    std::vector<ThetaPair> pairs = enumerate_pairs(w);
    std::map<ThetaPair, std::size_t> col;
    for (std::size_t i = 0; i < pairs.size(); ++i) col[pairs[i]] = i;

    std::vector<std::vector<Rational>> m;
    for (const auto& p : pairs) {
        const LatticeVector &a = p.a, &b = p.b;
        if ((a - b).max_norm() > w.bound) continue;
        std::vector<Rational> row(pairs.size(), Rational(0));
        row[col.at(ThetaPair{a - b, -b})] += Rational(1);
        row[col.at(ThetaPair{b - a, -a})] += Rational(-1);
        row[col.at(ThetaPair{a, a - b})] += Rational(-1);
        row[col.at(ThetaPair{b, b - a})] += Rational(1);
        m.push_back(std::move(row));
    }
    return pairs.size() - dense_rank(m);
}

// Bounded linear-solve oracle for beta - C_g(beta) = y: candidate support is
// every conjugate of a support word up to a fixed depth in either direction,
// and the question becomes consistency of a dense linear system. The
// coefficient matrix is an incidence matrix of disjoint paths and cycles
// (totally unimodular), so rational consistency coincides with integral
// solvability. The depth default covers every witness the instance families
// below can need: witness words sit between support words of the same orbit,
// and two support words of letter length <= 8 cannot sit farther apart.
inline bool oracle_minus_conj_solvable(const GroupPresentation& G, const Word& g,
                                       const RingElement& y, int depth = 16) {
    if (y.is_zero()) return true;
    std::set<Word> support_set;
    for (const auto& [w, c] : y.terms()) support_set.insert(w);

    std::set<Word> candidates;
    for (const Word& w : support_set) {
        Word fwd = w, bwd = w;
        candidates.insert(w);
        const Word gi = inverse(G, g);
        for (int d = 0; d < depth; ++d) {
            fwd = conjugate(G, g, fwd);
            bwd = conjugate(G, gi, bwd);
            candidates.insert(fwd);
            candidates.insert(bwd);
        }
    }

    std::vector<Word> vars(candidates.begin(), candidates.end());
    std::map<Word, std::size_t> var_index;
    for (std::size_t i = 0; i < vars.size(); ++i) var_index[vars[i]] = i;

    std::set<Word> touched = candidates;
    for (const Word& s : vars) touched.insert(conjugate(G, g, s));
    for (const Word& w : support_set) touched.insert(w);

    std::vector<std::vector<Rational>> m;       // coefficient rows
    std::vector<std::vector<Rational>> aug;     // augmented rows
    for (const Word& u : touched) {
        std::vector<Rational> row(vars.size() + 1, Rational(0));
        if (auto it = var_index.find(u); it != var_index.end()) row[it->second] += Rational(1);
        Word pre = conjugate(G, inverse(G, g), u);
        if (auto it = var_index.find(pre); it != var_index.end()) row[it->second] -= Rational(1);
        row[vars.size()] = Rational(y.coeff(u));
        aug.push_back(row);
        row.pop_back();
        m.push_back(std::move(row));
    }
    return dense_rank(m) == dense_rank(aug);
}

// ---------------------------------------------------------------------------
// Randomized instance generator for the conjugation solver, shared by the
// selftest and the acceptance run. All words in the produced y have length
// <= 4 and the support stays <= 8, so the depth-4 oracle span always covers
// the solver's telescoping witnesses.

struct ConjInstance {
    Word g;
    RingElement y;
};

inline Word random_word(const GroupPresentation& G, std::mt19937_64& rng, int max_syllables) {
    std::uniform_int_distribution<int> len_d(1, max_syllables);
    std::uniform_int_distribution<int> factor_d(0, static_cast<int>(G.factors()) - 1);
    int len = len_d(rng);
    std::vector<std::pair<int, long long>> sylls;
    int prev = -1;
    for (int i = 0; i < len; ++i) {
        int f = factor_d(rng);
        if (f == prev) f = (f + 1) % static_cast<int>(G.factors());
        long long m = G.order_of(f);
        long long e;
        if (m == 0) {
            std::uniform_int_distribution<long long> e_d(1, 2);
            e = e_d(rng) * (rng() % 2 ? 1 : -1);
        } else {
            std::uniform_int_distribution<long long> e_d(1, m - 1);
            e = e_d(rng);
        }
        sylls.emplace_back(f, e);
        prev = f;
    }
    return make_word(G, sylls);
}

inline ConjInstance make_conj_instance(const GroupPresentation& G, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> flavor_d(0, 2);
    std::uniform_int_distribution<long long> coeff_d(-3, 3);
    int flavor = flavor_d(rng);
    ConjInstance inst;
    if (flavor == 0 || flavor == 2) {
        // Constructed image element: y = beta - C_g(beta), short g.
        inst.g = random_word(G, rng, 1);
        RingElement beta;
        std::uniform_int_distribution<int> n_d(1, 4);
        int n = n_d(rng);
        for (int i = 0; i < n; ++i) {
            long long c = coeff_d(rng);
            if (c == 0) c = 1;
            beta.add_term(random_word(G, rng, 2), c);
        }
        inst.y = beta - conj_action(G, inst.g, beta);
        if (flavor == 2) {
            // Spike one extra term; usually breaks an orbit sum.
            long long c = coeff_d(rng);
            inst.y.add_term(random_word(G, rng, 4), c == 0 ? 2 : c);
        }
    } else {
        // Free-form right side.
        inst.g = random_word(G, rng, 2);
        std::uniform_int_distribution<int> n_d(1, 6);
        int n = n_d(rng);
        for (int i = 0; i < n; ++i) {
            long long c = coeff_d(rng);
            if (c == 0) c = -1;
            inst.y.add_term(random_word(G, rng, 4), c);
        }
    }
    return inst;
}

struct ConjAgreement {
    std::size_t instances = 0;
    std::size_t agreed = 0;
    std::size_t solver_solvable = 0;
    std::size_t mismatches = 0;
    std::size_t inconclusive = 0;
};

inline ConjAgreement run_conj_agreement(std::size_t count, std::uint64_t seed) {
    std::vector<GroupPresentation> presentations{GroupPresentation({0, 0}),
                                                 GroupPresentation({3, 0})};
    std::mt19937_64 rng(seed);
    ConjAgreement res;
    for (std::size_t i = 0; i < count; ++i) {
        const GroupPresentation& G = presentations[i % presentations.size()];
        ConjInstance inst = make_conj_instance(G, rng);
        ++res.instances;
        bool oracle = oracle_minus_conj_solvable(G, inst.g, inst.y);
        try {
            SolveResult s = minus_conj_solvable(G, inst.g, inst.y);
            if (s.solvable) {
                ++res.solver_solvable;
                // The solver already substituted the witness; the oracle must
                // see the same answer.
            }
            if (s.solvable == oracle)
                ++res.agreed;
            else
                ++res.mismatches;
        } catch (const Inconclusive&) {
            ++res.inconclusive;
        }
    }
    return res;
}

// ---------------------------------------------------------------------------
// Embedded selftest. Deterministic: fixed seeds, serial RNG consumption, and
// no timing or environment data in the report, so the bytes depend only on
// the window argument and the code.

struct SelftestOutcome {
    bool pass = false;
    Json report;
};

inline SelftestOutcome run_selftest(long long window_bound,
                                    PairingTable table = PairingTable::Standard) {
    SelftestOutcome out;
    Json checks = Json::array();
    bool all_pass = true;

    auto push_check = [&](const std::string& name, bool ok, Json detail) {
        Json c;
        c["name"] = name;
        c["status"] = ok ? "pass" : "fail";
        c["detail"] = std::move(detail);
        checks.push_back(std::move(c));
        all_pass = all_pass && ok;
    };

    // Coface images against the closed-form generators, direction by
    // direction. The corrupt table flips mixed-row signs, so this check must
    // fail under corruption (negative control).
    {
        std::size_t compared = 0, mismatched = 0;
        auto sweep = [&](const Window& w) {
            for (const auto& p : enumerate_pairs(w)) {
                BracketClass gen = BracketClass::single(GeneratorSymbol(1, 2, p.a),
                                                       GeneratorSymbol(1, 2, p.b));
                for (int k = 0; k < 4; ++k) {
                    PairingVector lhs = theta_map(coface(k, gen), table);
                    PairingVector rhs = closed_form_generator(k, p.a, p.b);
                    ++compared;
                    if (!(lhs == rhs)) ++mismatched;
                }
            }
        };
        sweep(Window(1, window_bound));
        sweep(Window(2, std::min<long long>(window_bound, 2)));
        Json d;
        d["compared"] = compared;
        d["mismatched"] = mismatched;
        push_check("coface_vs_closed_form", mismatched == 0, std::move(d));
    }

    // Pairing-side quotient against the relation-quotient, with the basis map.
    {
        Json rows = Json::array();
        bool ok = true;
        auto probe = [&](std::size_t rank, long long bound) {
            BkReport rep = bk_quotient_check(Window(rank, bound));
            Json r;
            r["rank"] = rank;
            r["bound"] = bound;
            r["rank_bk"] = rep.rank_bk;
            r["rank_w"] = rep.rank_w;
            r["basis_bijection"] = rep.basis_bijection;
            rows.push_back(std::move(r));
            ok = ok && rep.rank_bk == rep.rank_w && rep.basis_bijection;
        };
        for (long long n = 1; n <= std::min<long long>(window_bound, 3); ++n) probe(1, n);
        probe(2, 1);
        push_check("bk_quotient_vs_relation_quotient", ok, std::move(rows));
    }

    // Retraction is a left inverse of pushforward.
    {
        std::mt19937_64 rng(0x5eed0001);
        std::size_t trials = 120, failures = 0;
        for (std::size_t t = 0; t < trials; ++t) {
            std::uniform_int_distribution<std::size_t> bp_d(1, 2);
            std::size_t bp = bp_d(rng);
            std::uniform_int_distribution<std::size_t> b_d(bp, 3);
            std::size_t b = b_d(rng);
            LatticeMap inj;
            do {
                std::vector<long long> e(b * bp);
                std::uniform_int_distribution<long long> e_d(-3, 3);
                for (auto& x : e) x = e_d(rng);
                inj = LatticeMap(b, bp, std::move(e));
            } while (!inj.is_injective());
            Window w(bp, 3);
            std::vector<ThetaPair> pairs = enumerate_pairs(w);
            std::uniform_int_distribution<std::size_t> pair_d(0, pairs.size() - 1);
            std::uniform_int_distribution<long long> num_d(-4, 4);
            WVector v;
            std::uniform_int_distribution<int> terms_d(1, 5);
            int terms = terms_d(rng);
            for (int i = 0; i < terms; ++i) {
                long long num = num_d(rng);
                if (num == 0) num = 1;
                v.add_term(pairs[pair_d(rng)], Rational(num, 1 + (t % 3)));
            }
            if (!(retract(inj, pushforward(inj, v)) == v)) ++failures;
        }
        Json d;
        d["trials"] = trials;
        d["failures"] = failures;
        push_check("retract_after_pushforward", failures == 0, std::move(d));
    }

    // Conjugation solver against the bounded linear oracle.
    {
        ConjAgreement agg = run_conj_agreement(80, 0x5eed0002);
        Json d;
        d["instances"] = agg.instances;
        d["agreed"] = agg.agreed;
        d["solver_solvable"] = agg.solver_solvable;
        d["inconclusive"] = agg.inconclusive;
        bool ok = agg.mismatches == 0 && agg.inconclusive == 0;
        push_check("solver_vs_linear_oracle", ok, std::move(d));
    }

    // Quotient rank growth at lattice rank 1, against the dense oracle.
    {
        Json rows = Json::array();
        bool ok = true;
        std::size_t prev = 0;
        for (long long n = 2; n <= 6; ++n) {
            Window w(1, n);
            std::size_t fast = quotient_rank(w);
            std::size_t oracle = oracle_quotient_rank(w);
            Json r;
            r["bound"] = n;
            r["pairs"] = enumerate_pairs(w).size();
            r["rank"] = fast;
            r["oracle_rank"] = oracle;
            rows.push_back(std::move(r));
            ok = ok && fast == oracle && (n == 2 || fast > prev);
            prev = fast;
        }
        push_check("rank_growth_vs_dense_oracle", ok, std::move(rows));
    }

    // Involution compatibility of the relation family, plus projector sanity.
    {
        bool ok = true;
        for (std::size_t rank : {std::size_t(1), std::size_t(2)}) {
            Window w(rank, rank == 1 ? std::min<long long>(window_bound, 4) : 2);
            RelationBasis rb(w);
            for (const auto& p : enumerate_pairs(w)) {
                if ((p.a - p.b).max_norm() > w.bound) continue;
                WVector rel = relation(p.a, p.b);
                ok = ok && iota_star(rel) == relation(-p.a, -p.b);
                ok = ok && reduce(rel, rb).is_zero();
            }
            std::mt19937_64 rng(0x5eed0003 + rank);
            std::vector<ThetaPair> pairs = enumerate_pairs(w);
            std::uniform_int_distribution<std::size_t> pair_d(0, pairs.size() - 1);
            std::uniform_int_distribution<long long> c_d(-3, 3);
            for (int t = 0; t < 20; ++t) {
                WVector v;
                for (int i = 0; i < 4; ++i) v.add_term(pairs[pair_d(rng)], Rational(c_d(rng)));
                WVector once = reduce(v, rb);
                ok = ok && reduce(once, rb) == once;
            }
        }
        push_check("relation_involution_and_projector", ok, Json::object());
    }

    Json rep;
    rep["schema"] = kSelftestSchema;
    rep["window"] = window_bound;
    rep["pass"] = all_pass;
    rep["checks"] = std::move(checks);
    out.pass = all_pass;
    out.report = std::move(rep);
    return out;
}

}  // namespace wcert::selfcheck
