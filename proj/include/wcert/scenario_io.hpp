#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "wcert/certify.hpp"

namespace wcert {

// ordered_json keeps insertion order, which is what makes report bytes a
// deterministic function of their content.
using Json = nlohmann::ordered_json;

inline constexpr const char* kScenarioSchema = "wcert/scenario/v1";
inline constexpr const char* kReportSchema = "wcert/report/v1";
inline constexpr const char* kSelftestSchema = "wcert/selftest/v1";

// ---------------------------------------------------------------------------
// Primitive readers. Integers may arrive as JSON numbers or decimal strings;
// rationals always travel as "p" / "p/q" strings. Floating point is rejected.

inline long long read_int(const Json& j, const std::string& what) {
    if (j.is_number_integer()) return j.get<long long>();
    if (j.is_string()) {
        try {
            std::size_t pos = 0;
            long long v = std::stoll(j.get<std::string>(), &pos);
            if (pos == j.get<std::string>().size()) return v;
        } catch (...) {
        }
    }
    throw std::invalid_argument("scenario: " + what + " must be an integer");
}

inline Rational read_rational(const Json& j, const std::string& what) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    throw std::invalid_argument("scenario: " + what + " must be an exact \"p/q\" string");
}

inline LatticeVector read_lattice_vector(const Json& j, const std::string& what) {
    if (!j.is_array()) throw std::invalid_argument("scenario: " + what + " must be an array");
    std::vector<long long> c;
    for (const auto& e : j) c.push_back(read_int(e, what + " entry"));
    return LatticeVector(std::move(c));
}

inline Json write_lattice_vector(const LatticeVector& v) {
    Json a = Json::array();
    for (long long x : v.c) a.push_back(x);
    return a;
}

inline WVector read_wvector(const Json& j, const std::string& what) {
    if (!j.is_array()) throw std::invalid_argument("scenario: " + what + " must be a term array");
    WVector v;
    for (const auto& t : j) {
        if (!t.contains("a") || !t.contains("b") || !t.contains("coeff"))
            throw std::invalid_argument("scenario: " + what + " terms need a, b, coeff");
        v.add_term(ThetaPair{read_lattice_vector(t["a"], what + ".a"),
                             read_lattice_vector(t["b"], what + ".b")},
                   read_rational(t["coeff"], what + ".coeff"));
    }
    return v;
}

inline Json write_wvector(const WVector& v) {
    Json a = Json::array();
    for (const auto& [p, c] : v.terms()) {
        Json t;
        t["a"] = write_lattice_vector(p.a);
        t["b"] = write_lattice_vector(p.b);
        t["coeff"] = c.str();
        a.push_back(std::move(t));
    }
    return a;
}

inline Word read_word(const Json& j, const GroupPresentation& G, const std::string& what) {
    if (!j.is_array()) throw std::invalid_argument("scenario: " + what + " must be a syllable array");
    std::vector<std::pair<int, long long>> sylls;
    for (const auto& s : j) {
        if (!s.is_array() || s.size() != 2)
            throw std::invalid_argument("scenario: " + what + " syllables are [factor, exponent]");
        sylls.emplace_back(static_cast<int>(read_int(s[0], what + " factor")),
                           read_int(s[1], what + " exponent"));
    }
    return make_word(G, sylls);
}

inline Json write_word(const Word& w) {
    Json a = Json::array();
    for (const auto& s : w.syl) a.push_back(Json::array({s.factor, s.exp}));
    return a;
}

inline Json write_ring_element(const RingElement& r) {
    Json a = Json::array();
    for (const auto& [w, c] : r.terms()) {
        Json t;
        t["word"] = write_word(w);
        t["coeff"] = std::to_string(c);
        a.push_back(std::move(t));
    }
    return a;
}

inline Json write_orbit_record(const OrbitRecord& o) {
    Json j;
    j["representative"] = write_word(o.representative);
    j["sum"] = std::to_string(o.sum);
    j["finite"] = o.finite;
    j["exact"] = o.exact;
    Json m = Json::array();
    for (const auto& [w, c] : o.members) {
        Json t;
        t["word"] = write_word(w);
        t["coeff"] = std::to_string(c);
        m.push_back(std::move(t));
    }
    j["members"] = std::move(m);
    return j;
}

// ---------------------------------------------------------------------------
// Scenario files.

struct LoadedScenario {
    Scenario scenario;
    bool synthetic_inputs = false;
};

inline LoadedScenario parse_scenario(const Json& j, const std::string& fallback_id) {
    if (!j.is_object()) throw std::invalid_argument("scenario: top level must be an object");
    if (!j.contains("schema") || j["schema"] != kScenarioSchema)
        throw std::invalid_argument(std::string("scenario: schema must be \"") + kScenarioSchema +
                                    "\"");
    LoadedScenario out;
    Scenario& s = out.scenario;
    s.id = j.value("id", fallback_id);

    std::string kind = j.value("kind", "");
    if (kind == "independence")
        s.kind = ScenarioKind::Independence;
    else if (kind == "irreducible")
        s.kind = ScenarioKind::Irreducible;
    else if (kind == "reducible")
        s.kind = ScenarioKind::Reducible;
    else
        throw std::invalid_argument("scenario: kind must be independence|irreducible|reducible");

    if (j.contains("window")) {
        const Json& w = j["window"];
        s.window = Window(static_cast<std::size_t>(read_int(w.at("rank"), "window.rank")),
                          read_int(w.at("bound"), "window.bound"));
    } else if (s.kind != ScenarioKind::Reducible) {
        throw std::invalid_argument("scenario: window is required for this kind");
    }

    if (j.contains("mode")) {
        if (s.kind != ScenarioKind::Independence)
            throw std::invalid_argument("scenario: mode is only valid on independence scenarios");
        std::string m = j["mode"];
        if (m == "antisymmetry")
            s.antisymmetry_mode = true;
        else if (m != "independence")
            throw std::invalid_argument("scenario: mode must be independence or antisymmetry");
    }

    if (j.contains("classes")) {
        for (const auto& c : j["classes"]) {
            const Json& terms = c.contains("terms") ? c["terms"] : c;
            s.classes.push_back(read_wvector(terms, "class"));
            if (c.is_object() && c.value("synthetic", false)) out.synthetic_inputs = true;
        }
    }

    if (j.contains("curves")) {
        for (const auto& c : j["curves"]) {
            CurveDatum d;
            d.image_class = read_lattice_vector(c.at("image_class"), "curve.image_class");
            d.intersection = read_int(c.at("intersection"), "curve.intersection");
            std::string rel = c.at("relation_to_base");
            if (rel == "equal")
                d.relation_to_base = RelationToBase::Equal;
            else if (rel == "negated")
                d.relation_to_base = RelationToBase::Negated;
            else if (rel == "independent")
                d.relation_to_base = RelationToBase::Independent;
            else
                throw std::invalid_argument(
                    "scenario: relation_to_base must be equal|negated|independent");
            s.curves.push_back(std::move(d));
        }
    }

    if (j.contains("presentation")) {
        std::vector<long long> orders;
        for (const auto& o : j["presentation"].at("factor_orders"))
            orders.push_back(read_int(o, "factor order"));
        s.presentation.emplace(std::move(orders));
    }

    if (j.contains("coefficients"))
        for (const auto& c : j["coefficients"])
            s.coefficients.push_back(read_int(c, "coefficient"));

    if (s.kind == ScenarioKind::Reducible) {
        if (!s.presentation)
            throw std::invalid_argument("scenario: reducible needs a presentation");
        s.alpha1 = read_word(j.at("alpha1"), *s.presentation, "alpha1");
        s.alpha2 = read_word(j.at("alpha2"), *s.presentation, "alpha2");
    }
    return out;
}

inline LoadedScenario load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("scenario: cannot open " + path);
    Json j;
    try {
        j = Json::parse(in);
    } catch (const std::exception& e) {
        throw std::invalid_argument("scenario: JSON parse failure in " + path + ": " + e.what());
    }
    std::string stem = path;
    if (auto slash = stem.find_last_of('/'); slash != std::string::npos)
        stem = stem.substr(slash + 1);
    if (auto dot = stem.find_last_of('.'); dot != std::string::npos) stem = stem.substr(0, dot);
    return parse_scenario(j, stem);
}

// ---------------------------------------------------------------------------
// Reports.

inline int exit_code(Verdict v) {
    switch (v) {
        case Verdict::Certified: return 0;
        case Verdict::NotCertified: return 1;
        case Verdict::Inconclusive: return 2;
    }
    return 3;
}

inline const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Certified: return "certified";
        case Verdict::NotCertified: return "not_certified";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "invalid";
}

inline Json certificate_evidence(const Certificate& cert) {
    Json e;
    switch (cert.kind) {
        case ScenarioKind::Independence: {
            e["class_count"] = cert.class_count;
            e["rank"] = cert.rank;
            Json rc = Json::array();
            for (const auto& v : cert.reduced_classes) rc.push_back(write_wvector(v));
            e["reduced_classes"] = std::move(rc);
            Json er = Json::array();
            for (const auto& v : cert.echelon_rows) er.push_back(write_wvector(v));
            e["echelon_rows"] = std::move(er);
            Json fi = Json::array();
            for (auto i : cert.failing_indices) fi.push_back(i);
            e["failing_indices"] = std::move(fi);
            break;
        }
        case ScenarioKind::Irreducible: {
            e["translate_tally"] = cert.translate_tally;
            e["base_intersection"] = cert.base_intersection;
            e["closed_form_checked"] = cert.closed_form_checked;
            e["base_class"] = write_wvector(cert.base_class);
            e["psi"] = write_wvector(cert.psi);
            e["retracted"] = write_wvector(cert.retracted);
            e["retracted_reduced"] = write_wvector(cert.retracted_reduced);
            break;
        }
        case ScenarioKind::Reducible: {
            e["twisted_ring"] = write_ring_element(cert.twisted_ring);
            Json orbits = Json::array();
            for (const auto& o : cert.obstruction_orbits) orbits.push_back(write_orbit_record(o));
            e["obstruction_orbits"] = std::move(orbits);
            if (cert.verdict == Verdict::NotCertified)
                e["conjugator_ring"] = write_ring_element(cert.conjugator_ring);
            break;
        }
    }
    if (cert.required_window != 0) e["required_window"] = cert.required_window;
    return e;
}

inline Json make_report(const Certificate& cert, const std::string& scenario_id,
                        const Window& window_used, bool synthetic_inputs) {
    Json r;
    r["schema"] = kReportSchema;
    r["scenario_id"] = scenario_id;
    switch (cert.kind) {
        case ScenarioKind::Independence: r["kind"] = "independence"; break;
        case ScenarioKind::Irreducible: r["kind"] = "irreducible"; break;
        case ScenarioKind::Reducible: r["kind"] = "reducible"; break;
    }
    r["verdict"] = verdict_name(cert.verdict);
    r["exit_code"] = exit_code(cert.verdict);
    Json w;
    w["rank"] = window_used.rank;
    w["bound"] = window_used.bound;
    r["window"] = std::move(w);
    r["synthetic_inputs"] = synthetic_inputs;
    r["detail"] = cert.detail;
    r["evidence"] = certificate_evidence(cert);
    r["evidence_reverified"] = reverify(cert);
    return r;
}

inline std::string dump_report(const Json& r) { return r.dump(2) + "\n"; }

}  // namespace wcert
