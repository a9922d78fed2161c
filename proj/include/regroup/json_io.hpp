#pragma once

#include <json.hpp>

#include <limits>
#include <string>

#include "regroup/dynamics.hpp"
#include "regroup/involution.hpp"

namespace regroup {

using json = nlohmann::json;

// ---- scalars --------------------------------------------------------------

inline json to_json(const Rational& r) { return r.str(); }

inline Rational rational_from_json(const json& j, const char* what = "rational") {
    if (j.is_number_integer()) return Rational(Int(j.get<long long>()));
    if (j.is_string()) return parse_rational(j.get<std::string>());
    throw ParseError(std::string(what) + " must be a string like \"p/q\" or an integer");
}

inline json int_to_json(const Int& n) {
    if (n >= std::numeric_limits<long long>::min() &&
        n <= std::numeric_limits<long long>::max())
        return static_cast<long long>(n);
    return n.str();
}

inline Int int_from_json(const json& j, const char* what = "integer") {
    if (j.is_number_integer()) return Int(j.get<long long>());
    if (j.is_string()) return detail::parse_int(j.get<std::string>(), what);
    throw ParseError(std::string(what) + " must be an integer");
}

// ---- groups / windows -----------------------------------------------------

inline json to_json(const GroupDescriptor& g) {
    switch (g.kind()) {
    case GroupKind::Cyclic: return json{{"kind", "cyclic"}, {"step", g.step().str()}};
    case GroupKind::MAdic: return json{{"kind", "madic"}, {"base", int_to_json(g.base())}};
    case GroupKind::Rationals: return json{{"kind", "rationals"}};
    }
    throw Error("unreachable");
}

inline GroupDescriptor group_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind"))
        throw ParseError("group needs an object with a \"kind\"");
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "cyclic") return GroupDescriptor::cyclic(rational_from_json(j.at("step"), "step"));
    if (kind == "madic") return GroupDescriptor::madic(int_from_json(j.at("base"), "base"));
    if (kind == "rationals") return GroupDescriptor::rationals();
    throw ParseError("unknown group kind '" + kind + "'");
}

inline json to_json(const Window& w) {
    json j{{"lo", w.lo.str()}, {"hi", w.hi.str()}};
    if (w.denom_bound) j["denom_exp"] = *w.denom_bound;
    return j;
}

inline Window window_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("window must be an object");
    std::optional<std::int64_t> bound;
    if (j.contains("denom_exp")) bound = j.at("denom_exp").get<std::int64_t>();
    return Window(rational_from_json(j.at("lo"), "window lo"),
                  rational_from_json(j.at("hi"), "window hi"), bound);
}

// ---- maps -------------------------------------------------------------------

inline json to_json(const Homeo& f) {
    if (const auto* pl = std::get_if<PLMap>(&f)) {
        json pieces = json::array();
        for (const auto& p : pl->pieces()) {
            pieces.push_back(json{{"lo", p.lo ? json(p.lo->str()) : json("-inf")},
                                  {"hi", p.hi ? json(p.hi->str()) : json("inf")},
                                  {"slope", p.slope.str()},
                                  {"intercept", p.intercept.str()}});
        }
        return json{{"pl", json{{"group", to_json(pl->group())}, {"pieces", pieces}}}};
    }
    if (const auto* tab = std::get_if<TableMap>(&f)) {
        json exc = json::object();
        for (const auto& [k, v] : tab->exceptions()) exc[k.str()] = v.str();
        auto tail = [](const TableTail& t) {
            return json{{"dir", t.dir}, {"c", t.c.str()}};
        };
        return json{{"table", json{{"group", to_json(tab->group())},
                                   {"exceptions", exc},
                                   {"upper", tail(tab->upper())},
                                   {"lower", tail(tab->lower())}}}};
    }
    const auto& succ = std::get<SchemeSuccessorMap>(f);
    json s;
    if (succ.scheme().kind() == PartitionScheme::Kind::ParityBlocks) {
        s = json{{"scheme", "parity"}};
    } else {
        s = json{{"scheme", "madic"}, {"base", int_to_json(succ.scheme().base())}};
        if (succ.scheme().levels()) s["levels"] = *succ.scheme().levels();
    }
    if (succ.is_inverted()) s["inverted"] = true;
    return json{{"successor", s}};
}

inline Homeo homeo_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("map must be an object");
    if (j.contains("pl")) {
        const json& body = j.at("pl");
        GroupDescriptor g = group_from_json(body.at("group"));
        std::vector<PLPiece> pieces;
        for (const json& pj : body.at("pieces")) {
            auto bound = [&](const char* key) -> std::optional<Rational> {
                const json& b = pj.at(key);
                if (b.is_string()) {
                    std::string s = b.get<std::string>();
                    if (s == "-inf" || s == "inf" || s == "+inf") return std::nullopt;
                }
                return rational_from_json(b, key);
            };
            pieces.push_back(PLPiece{bound("lo"), bound("hi"),
                                     rational_from_json(pj.at("slope"), "slope"),
                                     rational_from_json(pj.at("intercept"), "intercept")});
        }
        return PLMap(std::move(g), std::move(pieces));
    }
    if (j.contains("table")) {
        const json& body = j.at("table");
        GroupDescriptor g = group_from_json(body.at("group"));
        std::map<Rational, Rational> exc;
        if (body.contains("exceptions")) {
            for (auto it = body.at("exceptions").begin(); it != body.at("exceptions").end();
                 ++it)
                exc.emplace(parse_rational(it.key()), rational_from_json(it.value(), "value"));
        }
        auto tail = [&](const char* key) {
            const json& t = body.at(key);
            int dir = t.at("dir").get<int>();
            return TableTail{dir, rational_from_json(t.at("c"), "tail offset")};
        };
        return TableMap(std::move(g), std::move(exc), tail("upper"), tail("lower"));
    }
    if (j.contains("successor")) {
        const json& body = j.at("successor");
        std::string scheme = body.at("scheme").get<std::string>();
        bool inverted = body.value("inverted", false);
        if (scheme == "parity")
            return SchemeSuccessorMap(PartitionScheme::parity(), inverted);
        if (scheme == "madic") {
            std::optional<std::int64_t> levels;
            if (body.contains("levels") && !body.at("levels").is_null())
                levels = body.at("levels").get<std::int64_t>();
            return SchemeSuccessorMap(
                PartitionScheme::madic_valuation(int_from_json(body.at("base"), "base"),
                                                 levels),
                inverted);
        }
        throw ParseError("unknown successor scheme '" + scheme + "'");
    }
    throw ParseError("map must contain \"pl\", \"table\", or \"successor\"");
}

// ---- reports ----------------------------------------------------------------

inline json to_json(const Counterexample& ce) {
    json j{{"law", ce.law}, {"x", ce.x.str()}, {"lhs", ce.lhs.str()}, {"rhs", ce.rhs.str()}};
    if (ce.y) j["y"] = ce.y->str();
    if (ce.z) j["z"] = ce.z->str();
    return j;
}

inline json to_json(const CheckReport& r) {
    json j{{"check", r.check},
           {"status", r.pass ? "pass" : "fail"},
           {"checked", r.checked}};
    if (r.counterexample) j["counterexample"] = to_json(*r.counterexample);
    return j;
}

inline json to_json(const OrbitReport& r) {
    json reps = json::array();
    for (const auto& x : r.representatives) reps.push_back(x.str());
    return json{{"window", to_json(r.window)},
                {"orbit_count_lower_bound", r.orbit_count_lower_bound},
                {"representatives", reps},
                {"classes_touching_boundary", r.classes_touching_boundary}};
}

inline json to_json(const ObstructionReport& r) {
    json growth = json::array();
    for (const auto& [w, n] : r.growth) growth.push_back(json::array({w, n}));
    json j{{"verdict", to_string(r.verdict)}, {"growth", growth}};
    if (r.stabilized_at) j["stabilized_at"] = *r.stabilized_at;
    return j;
}

inline json to_json(const EquivalenceReport& r) {
    json checks = json::array();
    for (const auto& c : r.checks) checks.push_back(to_json(c));
    json j{{"role", to_string(r.role)},
           {"direction", to_string(r.direction)},
           {"status", r.pass ? "pass" : "fail"},
           {"checks", checks}};
    if (r.transported_constant) j["transported_constant"] = r.transported_constant->str();
    return j;
}

inline json to_json(const NormalizeReport& r, const Window& w, std::size_t sample_limit = 8) {
    json sample = json::array();
    for (const auto& x : enumerate_values(homeo_group(r.form.f), w)) {
        if (sample.size() >= sample_limit) break;
        if (r.form.in_A(x)) sample.push_back(x.str());
    }
    return json{{"fixed_point", r.form.fixed_point.str()},
                {"A_sample", sample},
                {"h_form", r.form.h.form_name()},
                {"h_tilde", to_json(r.form.h_tilde)},
                {"transported_neutral", r.form.T.neutral_value().str()},
                {"claim6", r.claim6.pass ? "pass" : "fail"},
                {"checks", json{{"partition", to_json(r.partition)},
                                {"gluing", to_json(r.gluing)},
                                {"claim6", to_json(r.claim6)},
                                {"conjugacy", to_json(r.conjugacy)}}},
                {"status", r.pass() ? "pass" : "fail"}};
}

inline json to_json(const ShiftConjugacyReport& r) {
    json j{{"outcome", to_string(r.outcome)}, {"conjugacy", to_json(r.conjugacy)}};
    if (r.witness) j["witness"] = to_json(*r.witness);
    if (r.shift_c) j["shift_c"] = r.shift_c->str();
    if (r.orbit_count) j["orbit_count"] = *r.orbit_count;
    if (!r.detail.empty()) j["detail"] = r.detail;
    j["status"] = r.pass() ? "pass" : "fail";
    return j;
}

} // namespace regroup
