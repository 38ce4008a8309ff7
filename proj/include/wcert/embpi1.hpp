#pragma once

#include <stdexcept>
#include <utility>

#include "wcert/groupring.hpp"
#include "wcert/groupword.hpp"

namespace wcert {

// Element (x, y) of the semidirect product of the group ring (additive) by
// the group, with the conjugation action on the ring part:
//   (x1, y1) * (x2, y2) = (x1 + C_{y1}(x2), y1 y2).
struct SemidirectElement {
    RingElement ring;
    Word grp;

    friend bool operator==(const SemidirectElement&, const SemidirectElement&) = default;
};

inline SemidirectElement sd_multiply(const GroupPresentation& G, const SemidirectElement& a,
                                     const SemidirectElement& b) {
    SemidirectElement r;
    r.ring = a.ring + conj_action(G, a.grp, b.ring);
    r.grp = multiply(G, a.grp, b.grp);
    return r;
}

inline SemidirectElement sd_inverse(const GroupPresentation& G, const SemidirectElement& a) {
    SemidirectElement r;
    r.grp = inverse(G, a.grp);
    RingElement neg;
    neg -= a.ring;
    r.ring = conj_action(G, r.grp, neg);
    return r;
}

inline SemidirectElement sd_conjugate(const GroupPresentation& G, const SemidirectElement& c,
                                      const SemidirectElement& a) {
    return sd_multiply(G, sd_multiply(G, c, a), sd_inverse(G, c));
}

// Loop class of the untwisted composite: no ring contribution.
inline SemidirectElement loop_class_standard(const GroupPresentation& G, const Word& a1,
                                             const Word& a2) {
    if (a1.is_identity() || a2.is_identity())
        throw std::invalid_argument("loop_class_standard: factors must not be identity");
    return SemidirectElement{RingElement{}, multiply(G, a1, a2)};
}

// Loop class of the composite twisted through beta0: the product
// I(a1) * (beta0, 1) * I(a2) * (beta0, 1)^-1, which collapses to
//   ( C_{a1}(beta0) - C_{a1 a2}(beta0),  a1 a2 ).
// Both the four-factor product and the collapsed form are computed and must
// agree; a mismatch would mean the product law itself is broken.
inline SemidirectElement loop_class_twisted(const GroupPresentation& G, const Word& a1,
                                            const Word& a2, const RingElement& beta0) {
    if (a1.is_identity() || a2.is_identity())
        throw std::invalid_argument("loop_class_twisted: factors must not be identity");
    SemidirectElement ia1{RingElement{}, a1};
    SemidirectElement ia2{RingElement{}, a2};
    SemidirectElement beta{beta0, Word{}};
    SemidirectElement product =
        sd_multiply(G, sd_multiply(G, sd_multiply(G, ia1, beta), ia2), sd_inverse(G, beta));

    SemidirectElement closed;
    closed.grp = multiply(G, a1, a2);
    closed.ring = conj_action(G, a1, beta0) - conj_action(G, closed.grp, beta0);
    if (!(product == closed))
        throw std::logic_error("loop_class_twisted: product and closed form disagree");
    return closed;
}

enum class ConjVerdict { Conjugate, NotConjugate };

struct ConjResult {
    ConjVerdict verdict = ConjVerdict::NotConjugate;
    SemidirectElement conjugator;          // valid when Conjugate; verified
    std::vector<OrbitRecord> violations;   // obstruction orbits when NotConjugate
    std::vector<OrbitRecord> orbits;
};

// Decide (v, alpha) ~ (0, alpha). Writing a candidate conjugator (x, y), the
// conjugate of (0, alpha) is ((id - C_{y alpha y^-1})(x), y alpha y^-1), so a
// conjugator exists iff v lies in the image of (id - C_alpha); y may stay 1.
// Delegates to the ring solver; Conjugate answers carry a conjugator that is
// re-verified by multiplication before being returned.
inline ConjResult are_conjugate_same_group_part(const GroupPresentation& G, const RingElement& v,
                                                const Word& alpha) {
    SolveResult s = minus_conj_solvable(G, alpha, v);
    ConjResult r;
    r.orbits = std::move(s.orbits);
    if (!s.solvable) {
        r.verdict = ConjVerdict::NotConjugate;
        r.violations = std::move(s.violations);
        return r;
    }
    r.verdict = ConjVerdict::Conjugate;
    r.conjugator = SemidirectElement{s.witness, Word{}};
    SemidirectElement target{v, alpha};
    SemidirectElement base{RingElement{}, alpha};
    if (!(sd_conjugate(G, r.conjugator, base) == target))
        throw std::logic_error("are_conjugate_same_group_part: conjugator failed verification");
    return r;
}

}  // namespace wcert
