#include <catch2/catch_amalgamated.hpp>

#include "wcert/certify.hpp"

using namespace wcert;

namespace {
LatticeVector lv(std::initializer_list<long long> c) { return LatticeVector{{c}}; }
ThetaPair tp(std::initializer_list<long long> a, std::initializer_list<long long> b) {
    return ThetaPair{lv(a), lv(b)};
}
WVector unit(std::initializer_list<long long> a, std::initializer_list<long long> b) {
    WVector v;
    v.add_term(tp(a, b), Rational(1));
    return v;
}
}  // namespace

TEST_CASE("independence pipeline certifies free families and rejects collapses") {
    Window w(1, 3);
    std::vector<WVector> classes{unit({1}, {2}), unit({1}, {3}), unit({2}, {3})};
    Certificate ok = independence_certificate(classes, w);
    CHECK(ok.verdict == Verdict::Certified);
    CHECK(ok.rank == 3);
    CHECK(ok.class_count == 3);
    CHECK(reverify(ok));

    // Add an exact linear combination: rank stalls.
    WVector dep = Rational(2) * classes[0];
    dep -= classes[1];
    classes.push_back(dep);
    Certificate bad = independence_certificate(classes, w);
    CHECK(bad.verdict == Verdict::NotCertified);
    CHECK(bad.rank == 3);
    CHECK(bad.class_count == 4);

    // A class modulo relations can collapse even when symbols differ: the
    // four-term relation itself reduces to zero.
    std::vector<WVector> rel{relation(lv({2}), lv({1}))};
    Certificate zero = independence_certificate(rel, w);
    CHECK(zero.verdict == Verdict::NotCertified);

    // Out-of-window support is inconclusive, with the needed bound reported.
    std::vector<WVector> wide{unit({4}, {1})};
    Certificate inc = independence_certificate(wide, Window(1, 3));
    CHECK(inc.verdict == Verdict::Inconclusive);
    CHECK(inc.required_window == 4);
}

TEST_CASE("antisymmetry mode accepts involution negated classes only") {
    Window w(1, 2);
    WVector good = unit({1}, {2});
    good.add_term(tp({-1}, {-2}), Rational(-1));
    Certificate ok = antisymmetry_check({good}, w);
    CHECK(ok.verdict == Verdict::Certified);
    CHECK(reverify(ok));

    Certificate bad = antisymmetry_check({unit({1}, {2})}, w);
    CHECK(bad.verdict == Verdict::NotCertified);
    REQUIRE(bad.failing_indices.size() == 1);
    CHECK(bad.failing_indices[0] == 0);
}

TEST_CASE("irreducible pipeline: translate sums, relation audit, closed form") {
    Scenario s;
    s.kind = ScenarioKind::Irreducible;
    s.window = Window(1, 3);
    WVector v = unit({1}, {2});
    v.add_term(tp({1}, {-1}), Rational(1, 3));
    s.classes = {v};
    s.curves = {
        {lv({2, 1}), 1, RelationToBase::Equal},
        {lv({2, 1}), 1, RelationToBase::Equal},
        {lv({-2, -1}), -1, RelationToBase::Negated},
        {lv({1, 1}), 1, RelationToBase::Independent},
    };
    Certificate cert = irreducible_certificate(s);
    CHECK(cert.verdict == Verdict::Certified);
    CHECK(cert.translate_tally == 3);
    CHECK(cert.closed_form_checked);
    CHECK(cert.retracted == Rational(3) * v);
    CHECK(reverify(cert));

    // Declared relation contradicting the lattice data is refused.
    Scenario lying = s;
    lying.curves[1].relation_to_base = RelationToBase::Independent;
    CHECK_THROWS_AS(irreducible_certificate(lying), std::invalid_argument);

    // Parallel-but-not-equal columns fall outside the case split.
    Scenario par = s;
    par.curves[3] = {lv({4, 2}), 1, RelationToBase::Independent};
    CHECK_THROWS_AS(irreducible_certificate(par), std::invalid_argument);

    // The base curve must be declared first and Equal.
    Scenario nobase = s;
    nobase.curves[0].relation_to_base = RelationToBase::Negated;
    CHECK_THROWS_AS(irreducible_certificate(nobase), std::invalid_argument);

    Scenario twoclasses = s;
    twoclasses.classes.push_back(v);
    CHECK_THROWS_AS(irreducible_certificate(twoclasses), std::invalid_argument);
}

TEST_CASE("irreducible pipeline with nonuniform weights skips the closed form") {
    Scenario s;
    s.kind = ScenarioKind::Irreducible;
    s.window = Window(1, 2);
    s.classes = {unit({1}, {2})};
    s.curves = {
        {lv({3, 1}), 2, RelationToBase::Equal},
        {lv({3, 1}), 5, RelationToBase::Equal},  // different weight
    };
    Certificate cert = irreducible_certificate(s);
    CHECK_FALSE(cert.closed_form_checked);
    CHECK(cert.verdict == Verdict::Certified);
    // Retraction is still the weighted sum: (2 + 5) * v.
    CHECK(cert.retracted == Rational(7) * unit({1}, {2}));
}

TEST_CASE("reducible pipeline certifies the twist and reports obstruction orbits") {
    Scenario s;
    s.kind = ScenarioKind::Reducible;
    s.presentation = GroupPresentation({3, 0});
    s.coefficients = {1};
    s.alpha1 = make_word(*s.presentation, {{1, 1}});
    s.alpha2 = make_word(*s.presentation, {{0, 1}});

    Certificate cert = reducible_certificate(s);
    REQUIRE(cert.verdict == Verdict::Certified);
    CHECK(reverify(cert));

    // The fixed singleton at a2*a1 carries sum -c_1 = -1.
    const GroupPresentation& G = *s.presentation;
    Word a2a1 = multiply(G, s.alpha2, s.alpha1);
    bool found = false;
    for (const auto& orb : cert.obstruction_orbits)
        if (orb.representative == a2a1) {
            found = true;
            CHECK(orb.sum == -1);
            CHECK(orb.finite);
        }
    CHECK(found);

    // Commuting factors make the twist invisible: not certified.
    Scenario inv;
    inv.kind = ScenarioKind::Reducible;
    inv.presentation = GroupPresentation({0, 0});
    inv.coefficients = {1, 1};
    inv.alpha1 = make_word(*inv.presentation, {{1, 1}});
    inv.alpha2 = inv.alpha1;
    Certificate flat = reducible_certificate(inv);
    CHECK(flat.verdict == Verdict::NotCertified);
    CHECK(flat.twisted_ring.is_zero());

    // Validation: 2-torsion alpha2, zero coefficients, identity factors.
    Scenario bad = s;
    bad.presentation = GroupPresentation({2, 0});
    bad.alpha2 = make_word(*bad.presentation, {{0, 1}});
    bad.alpha1 = make_word(*bad.presentation, {{1, 1}});
    CHECK_THROWS_AS(reducible_certificate(bad), std::invalid_argument);

    Scenario zero = s;
    zero.coefficients = {0, 0};
    CHECK_THROWS_AS(reducible_certificate(zero), std::invalid_argument);

    Scenario ident = s;
    ident.alpha1 = Word{};
    CHECK_THROWS_AS(reducible_certificate(ident), std::invalid_argument);
}

TEST_CASE("reverify rejects tampered evidence") {
    Window w(1, 3);
    Certificate ok = independence_certificate({unit({1}, {2}), unit({1}, {3})}, w);
    REQUIRE(ok.verdict == Verdict::Certified);
    Certificate tampered = ok;
    tampered.echelon_rows[1] = tampered.echelon_rows[0];  // duplicate pivot
    CHECK_FALSE(reverify(tampered));
    Certificate counted = ok;
    counted.rank = 1;
    CHECK_FALSE(reverify(counted));

    Scenario s;
    s.kind = ScenarioKind::Reducible;
    s.presentation = GroupPresentation({3, 0});
    s.coefficients = {1};
    s.alpha1 = make_word(*s.presentation, {{1, 1}});
    s.alpha2 = make_word(*s.presentation, {{0, 1}});
    Certificate red = reducible_certificate(s);
    REQUIRE(red.verdict == Verdict::Certified);
    Certificate redtamper = red;
    redtamper.obstruction_orbits[0].sum += 1;  // no longer matches members
    CHECK_FALSE(reverify(redtamper));
}

TEST_CASE("evaluate dispatches on kind and mode") {
    Scenario s;
    s.kind = ScenarioKind::Independence;
    s.window = Window(1, 2);
    s.classes = {unit({1}, {2})};
    CHECK(evaluate(s).verdict == Verdict::Certified);
    s.antisymmetry_mode = true;
    CHECK(evaluate(s).verdict == Verdict::NotCertified);
}
