#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wcert/embpi1.hpp"
#include "wcert/groupring.hpp"
#include "wcert/groupword.hpp"
#include "wcert/lattice.hpp"
#include "wcert/wspace.hpp"

namespace wcert {

enum class ScenarioKind { Independence, Irreducible, Reducible };
enum class RelationToBase { Equal, Negated, Independent };
enum class Verdict { Certified, NotCertified, Inconclusive };

// One curve of an irreducible-manifold scenario: its class in the ambient
// lattice, its signed intersection count with the dual sphere, and how it
// sits relative to the base curve (recomputed from the class, never trusted).
struct CurveDatum {
    LatticeVector image_class;
    long long intersection = 0;
    RelationToBase relation_to_base = RelationToBase::Equal;
};

struct Scenario {
    std::string id;
    ScenarioKind kind = ScenarioKind::Independence;
    Window window{1, 1};
    bool antisymmetry_mode = false;  // Independence scenarios only
    std::vector<WVector> classes;    // rank-1 invariant vectors, supplied not derived
    std::vector<CurveDatum> curves;  // Irreducible
    std::optional<GroupPresentation> presentation;  // Reducible
    std::vector<long long> coefficients;            // Reducible
    Word alpha1, alpha2;                            // Reducible
};

struct Certificate {
    ScenarioKind kind = ScenarioKind::Independence;
    Verdict verdict = Verdict::Inconclusive;
    std::string detail;

    // Independence / antisymmetry evidence.
    std::size_t class_count = 0;
    std::size_t rank = 0;
    std::vector<WVector> reduced_classes;
    std::vector<WVector> echelon_rows;
    std::vector<std::size_t> failing_indices;

    // Irreducible evidence.
    WVector base_class;
    WVector psi;
    WVector retracted;
    WVector retracted_reduced;
    long long translate_tally = 0;
    long long base_intersection = 0;
    bool closed_form_checked = false;

    // Reducible evidence.
    RingElement twisted_ring;
    std::vector<OrbitRecord> obstruction_orbits;
    RingElement conjugator_ring;

    long long required_window = 0;  // set alongside window-too-small Inconclusives
};

// ---------------------------------------------------------------------------
// Independence and antisymmetry, over the windowed quotient.

inline Certificate independence_certificate(const std::vector<WVector>& classes, const Window& w) {
    Certificate cert;
    cert.kind = ScenarioKind::Independence;
    cert.class_count = classes.size();
    for (const auto& v : classes)
        if (!v.supported_in(w)) {
            cert.verdict = Verdict::Inconclusive;
            cert.required_window = v.support_max_norm();
            cert.detail = "class support leaves the window; retry with bound >= " +
                          std::to_string(cert.required_window);
            return cert;
        }
    RelationBasis rb(w);
    SparseEchelon<ThetaPair> ech;
    for (const auto& v : classes) {
        WVector r = reduce(v, rb);
        cert.reduced_classes.push_back(r);
        ech.insert(r.terms());
    }
    cert.rank = ech.rank();
    for (auto& row : ech.rows()) cert.echelon_rows.push_back(WVector::from_terms(std::move(row)));
    cert.verdict = cert.rank == classes.size() ? Verdict::Certified : Verdict::NotCertified;
    cert.detail = cert.verdict == Verdict::Certified
                      ? "classes stay independent in the windowed quotient"
                      : "rank dropped to " + std::to_string(cert.rank) + " of " +
                            std::to_string(classes.size());
    return cert;
}

inline Certificate antisymmetry_check(const std::vector<WVector>& classes, const Window& w) {
    Certificate cert;
    cert.kind = ScenarioKind::Independence;
    cert.class_count = classes.size();
    for (const auto& v : classes)
        if (!v.supported_in(w)) {
            cert.verdict = Verdict::Inconclusive;
            cert.required_window = v.support_max_norm();
            cert.detail = "class support leaves the window; retry with bound >= " +
                          std::to_string(cert.required_window);
            return cert;
        }
    RelationBasis rb(w);
    for (std::size_t i = 0; i < classes.size(); ++i) {
        WVector residue = reduce(iota_star(classes[i]) + classes[i], rb);
        cert.reduced_classes.push_back(residue);
        if (!residue.is_zero()) cert.failing_indices.push_back(i);
    }
    cert.verdict = cert.failing_indices.empty() ? Verdict::Certified : Verdict::NotCertified;
    cert.detail = cert.verdict == Verdict::Certified
                      ? "every class negates under the involution, modulo relations"
                      : std::to_string(cert.failing_indices.size()) + " classes fail antisymmetry";
    return cert;
}

// ---------------------------------------------------------------------------
// Irreducible-manifold pipeline: sum the translate contributions, retract to
// the base curve's sublattice, certify survival in the quotient.

namespace detail {
// cols-1 lattice map n -> n*c.
inline LatticeMap column_map(const LatticeVector& c) {
    return LatticeMap(c.arity(), 1, c.c);
}

inline bool parallel_vectors(const LatticeVector& x, const LatticeVector& y) {
    // x,y nonzero; parallel iff all 2x2 minors vanish.
    for (std::size_t i = 0; i < x.arity(); ++i)
        for (std::size_t j = i + 1; j < x.arity(); ++j)
            if (static_cast<__int128>(x.c[i]) * y.c[j] !=
                static_cast<__int128>(x.c[j]) * y.c[i])
                return false;
    return true;
}
}  // namespace detail

inline Certificate irreducible_certificate(const Scenario& s) {
    if (s.curves.empty()) throw std::invalid_argument("irreducible: no curves supplied");
    if (s.classes.size() != 1)
        throw std::invalid_argument("irreducible: exactly one invariant class is required; "
                                    "translated copies share it");
    if (s.window.rank != 1)
        throw std::invalid_argument("irreducible: the reduction window must have rank 1");

    const WVector& v = s.classes[0];
    const CurveDatum& base = s.curves[0];
    if (base.image_class.is_zero())
        throw std::invalid_argument("irreducible: base curve class is zero");
    if (base.relation_to_base != RelationToBase::Equal)
        throw std::invalid_argument("irreducible: first curve is the base and must be Equal");
    if (base.intersection == 0)
        throw std::invalid_argument("irreducible: base curve must meet the dual sphere");

    Certificate cert;
    cert.kind = ScenarioKind::Irreducible;
    cert.base_class = v;
    cert.base_intersection = base.intersection;

    // Recompute every curve's relation to the base from the lattice data and
    // insist the declaration matches; the tally is never taken on faith.
    long long tally = 0;
    bool uniform_intersection = true;
    for (const auto& cur : s.curves) {
        if (cur.image_class.arity() != base.image_class.arity())
            throw std::invalid_argument("irreducible: curve class arities differ");
        RelationToBase actual;
        if (cur.image_class == base.image_class) {
            actual = RelationToBase::Equal;
        } else if (cur.image_class == -base.image_class) {
            actual = RelationToBase::Negated;
        } else if (cur.image_class.is_zero() ||
                   detail::parallel_vectors(cur.image_class, base.image_class)) {
            throw std::invalid_argument(
                "irreducible: curve class " + cur.image_class.str() +
                " is parallel to the base without being equal or negated; the"
                " case split does not apply");
        } else {
            actual = RelationToBase::Independent;
        }
        if (actual != cur.relation_to_base)
            throw std::invalid_argument("irreducible: declared relation for curve class " +
                                        cur.image_class.str() +
                                        " contradicts the lattice data");
        if (actual != RelationToBase::Independent) {
            ++tally;
            long long expected = actual == RelationToBase::Equal ? base.intersection
                                                                 : -base.intersection;
            if (cur.intersection != expected) uniform_intersection = false;
        }
    }
    cert.translate_tally = tally;

    // Negated translates enter through the orientation-reversed curve: the
    // lattice map and the signed intersection flip together while the carried
    // class is unchanged (its invariant value is conjugation-stable). This is
    // what makes translate contributions add instead of cancel.
    for (const auto& cur : s.curves) {
        bool negated = cur.relation_to_base == RelationToBase::Negated;
        LatticeVector map_class = negated ? -cur.image_class : cur.image_class;
        long long weight = negated ? -cur.intersection : cur.intersection;
        WVector pushed = pushforward(detail::column_map(map_class), v);
        cert.psi += Rational(weight) * pushed;
    }

    cert.retracted = retract(detail::column_map(base.image_class), cert.psi);

    // With matching |intersection| on every translate the retracted sum has a
    // closed form: tally * base_intersection * v. That identity is exact, so
    // a mismatch is an internal failure rather than a verdict.
    if (uniform_intersection) {
        WVector expected = Rational(tally * base.intersection) * v;
        if (!(cert.retracted == expected))
            throw std::logic_error("irreducible: retracted sum missed the closed form");
        cert.closed_form_checked = true;
    }

    if (!cert.retracted.supported_in(s.window)) {
        cert.verdict = Verdict::Inconclusive;
        cert.required_window = cert.retracted.support_max_norm();
        cert.detail = "retracted sum leaves the window; retry with bound >= " +
                      std::to_string(cert.required_window);
        return cert;
    }
    RelationBasis rb(s.window);
    cert.retracted_reduced = reduce(cert.retracted, rb);
    cert.verdict = cert.retracted_reduced.is_zero() ? Verdict::NotCertified : Verdict::Certified;
    cert.detail = cert.verdict == Verdict::Certified
                      ? "retracted translate sum survives the quotient"
                      : "retracted translate sum dies in the quotient";
    return cert;
}

// ---------------------------------------------------------------------------
// Reducible-manifold pipeline: build the twisted loop class and test it
// against the untwisted one for conjugacy.

inline Certificate reducible_certificate(const Scenario& s) {
    if (!s.presentation) throw std::invalid_argument("reducible: presentation is required");
    const GroupPresentation& G = *s.presentation;
    if (s.alpha1.is_identity() || s.alpha2.is_identity())
        throw std::invalid_argument("reducible: alpha1 and alpha2 must not be identity");
    if (is_two_torsion(G, s.alpha2))
        throw std::invalid_argument("reducible: alpha2 must not be 2-torsion");
    bool any_nonzero = false;
    for (long long c : s.coefficients) any_nonzero |= (c != 0);
    if (!any_nonzero)
        throw std::invalid_argument("reducible: coefficient vector must be nonzero");

    Word alpha = multiply(G, s.alpha1, s.alpha2);
    RingElement beta0 = dax_composite(G, s.coefficients, alpha);

    Certificate cert;
    cert.kind = ScenarioKind::Reducible;
    SemidirectElement twisted = loop_class_twisted(G, s.alpha1, s.alpha2, beta0);
    cert.twisted_ring = twisted.ring;

    // Direct question: is (v, alpha) conjugate to (0, alpha)?
    ConjResult direct = are_conjugate_same_group_part(G, twisted.ring, alpha);

    // Same question after normalizing by conjugation with (0, alpha1^-1):
    // solve (id - C_{a2 a1}) beta1 = beta0 - C_{a2}(beta0). The two answers
    // are related by an exact change of variable, so they must agree; the
    // normalized run is kept because its obstruction orbits sit at the
    // canonical words (a2 a1)^k with sums -c_k.
    RingElement y_norm = conj_action(G, inverse(G, s.alpha1), twisted.ring);
    Word a2a1 = multiply(G, s.alpha2, s.alpha1);
    SolveResult normalized = minus_conj_solvable(G, a2a1, y_norm);

    if (direct.verdict == ConjVerdict::Conjugate && !normalized.solvable) {
        cert.verdict = Verdict::Inconclusive;
        cert.detail = "direct and normalized conjugacy decisions disagree";
        return cert;
    }
    if (direct.verdict == ConjVerdict::NotConjugate && normalized.solvable) {
        cert.verdict = Verdict::Inconclusive;
        cert.detail = "direct and normalized conjugacy decisions disagree";
        return cert;
    }

    if (!normalized.solvable) {
        cert.verdict = Verdict::Certified;
        cert.obstruction_orbits = normalized.violations;
        cert.detail = "twisted composite is not conjugate to the untwisted one (" +
                      std::to_string(cert.obstruction_orbits.size()) +
                      " obstruction orbits)";
    } else {
        cert.verdict = Verdict::NotCertified;
        cert.conjugator_ring = direct.conjugator.ring;
        cert.detail = "a conjugator exists; the twist is invisible to this invariant";
    }
    return cert;
}

// ---------------------------------------------------------------------------

inline Certificate evaluate(const Scenario& s) {
    switch (s.kind) {
        case ScenarioKind::Independence:
            return s.antisymmetry_mode ? antisymmetry_check(s.classes, s.window)
                                       : independence_certificate(s.classes, s.window);
        case ScenarioKind::Irreducible:
            return irreducible_certificate(s);
        case ScenarioKind::Reducible:
            return reducible_certificate(s);
    }
    throw std::logic_error("evaluate: unreachable scenario kind");
}

// Light re-verification from stored evidence alone; no pipeline reruns.
inline bool reverify(const Certificate& cert) {
    if (cert.verdict != Verdict::Certified) return true;  // only Certified carries a claim
    switch (cert.kind) {
        case ScenarioKind::Independence: {
            if (!cert.failing_indices.empty()) return false;
            if (cert.echelon_rows.empty() && cert.class_count == 0) return true;
            if (!cert.echelon_rows.empty()) {
                // Independence mode: echelon rows must be nonzero with strictly
                // increasing pivots and match both counts.
                if (cert.rank != cert.class_count) return false;
                if (cert.echelon_rows.size() != cert.rank) return false;
                const ThetaPair* last = nullptr;
                for (const auto& row : cert.echelon_rows) {
                    if (row.is_zero()) return false;
                    const ThetaPair& piv = row.terms().begin()->first;
                    if (last && !(*last < piv)) return false;
                    last = &row.terms().begin()->first;
                }
                return true;
            }
            // Antisymmetry mode: all stored residues must be zero.
            for (const auto& r : cert.reduced_classes)
                if (!r.is_zero()) return false;
            return cert.reduced_classes.size() == cert.class_count;
        }
        case ScenarioKind::Irreducible: {
            if (cert.retracted_reduced.is_zero()) return false;
            if (cert.closed_form_checked) {
                WVector expected =
                    Rational(cert.translate_tally * cert.base_intersection) * cert.base_class;
                if (!(cert.retracted == expected)) return false;
            }
            return true;
        }
        case ScenarioKind::Reducible: {
            if (cert.obstruction_orbits.empty()) return false;
            for (const auto& orb : cert.obstruction_orbits) {
                long long s = 0;
                for (const auto& [w, c] : orb.members) s += c;
                if (s != orb.sum || s == 0) return false;
            }
            return true;
        }
    }
    return false;
}

}  // namespace wcert
