#include <catch2/catch_amalgamated.hpp>

#include "regroup/json_io.hpp"

using namespace regroup;

namespace {
const GroupDescriptor Z = GroupDescriptor::integers();
const GroupDescriptor M2 = GroupDescriptor::madic(2);
} // namespace

TEST_CASE("group descriptors round-trip through json") {
    for (const GroupDescriptor& g :
         {GroupDescriptor::cyclic(Rational(1, 2)), GroupDescriptor::madic(10),
          GroupDescriptor::rationals()}) {
        CHECK(group_from_json(to_json(g)) == g);
    }
    CHECK(to_json(Z).dump() == R"({"kind":"cyclic","step":"1"})");
    CHECK_THROWS_AS(group_from_json(json{{"kind", "lie"}}), ParseError);
    CHECK_THROWS_AS(group_from_json(json::array()), ParseError);
    CHECK_THROWS_AS(group_from_json(json{{"kind", "cyclic"}, {"step", "0"}}),
                    InvariantError);
}

TEST_CASE("windows round-trip and keep the resolution key") {
    Window w(Rational(-4), Rational(4), 3);
    json j = to_json(w);
    CHECK(j.dump() == R"({"denom_exp":3,"hi":"4","lo":"-4"})");
    Window back = window_from_json(j);
    CHECK(back.lo == w.lo);
    CHECK(back.hi == w.hi);
    CHECK(back.denom_bound == w.denom_bound);
    CHECK_FALSE(window_from_json(json{{"lo", "0"}, {"hi", "1"}}).denom_bound);
}

TEST_CASE("maps round-trip through json") {
    std::map<Rational, Rational> exc;
    exc.emplace(Rational(-1), Rational(4));
    exc.emplace(Rational(0), Rational(5));
    exc.emplace(Rational(1), Rational(1));
    exc.emplace(Rational(2), Rational(3));
    exc.emplace(Rational(3), Rational(2));
    exc.emplace(Rational(4), Rational(-1));
    exc.emplace(Rational(5), Rational(0));
    std::vector<Homeo> maps{
        PLMap(M2, {PLPiece{std::nullopt, Rational(0), Rational(-2), Rational(0)},
                   PLPiece{Rational(0), std::nullopt, Rational(-1, 2), Rational(0)}}),
        TableMap(Z, exc, TableTail{-1, Rational(4)}, TableTail{-1, Rational(4)}),
        SchemeSuccessorMap(PartitionScheme::madic_valuation(2)),
        SchemeSuccessorMap(PartitionScheme::madic_valuation(3, 4), true),
        SchemeSuccessorMap(PartitionScheme::parity())};
    for (const Homeo& f : maps) CHECK(homeo_from_json(to_json(f)) == f);
}

TEST_CASE("map parsing accepts the documented unbounded markers") {
    json j = json::parse(R"({"pl":{"group":{"kind":"rationals"},"pieces":[
        {"lo":"-inf","hi":"0","slope":"1","intercept":"0"},
        {"lo":"0","hi":"+inf","slope":"2","intercept":"0"}]}})");
    const PLMap& m = std::get<PLMap>(homeo_from_json(j));
    CHECK(m.pieces().size() == 2);
    CHECK_FALSE(m.pieces().front().lo);
    CHECK_FALSE(m.pieces().back().hi);
}

TEST_CASE("map parsing rejects bad payloads") {
    CHECK_THROWS_AS(homeo_from_json(json{{"neither", 1}}), ParseError);
    CHECK_THROWS_AS(homeo_from_json(json::parse(
                        R"({"pl":{"group":{"kind":"madic","base":2},
                             "pieces":[{"lo":"-inf","hi":"inf","slope":"3","intercept":"0"}]}})")),
                    InvariantError);
    CHECK_THROWS_AS(homeo_from_json(json::parse(
                        R"({"table":{"group":{"kind":"cyclic","step":"1"},
                             "exceptions":{"0":"5"},
                             "upper":{"dir":1,"c":"0"},"lower":{"dir":1,"c":"0"}}})")),
                    InvariantError);
    CHECK_THROWS_AS(homeo_from_json(json::parse(
                        R"({"successor":{"scheme":"fibonacci"}})")),
                    ParseError);
    CHECK_THROWS_AS(rational_from_json(json("1/0")), ParseError);
    CHECK_THROWS_AS(rational_from_json(json(1.5)), ParseError);
}

TEST_CASE("report serialization is stable and carries counterexamples") {
    CheckReport rep{"demo"};
    rep.checked = 3;
    rep.fail({"law", Rational(1), Rational(2), std::nullopt, Rational(3), Rational(4)});
    json j = to_json(rep);
    CHECK(j["status"] == "fail");
    CHECK(j["counterexample"]["x"] == "1");
    CHECK(j["counterexample"]["y"] == "2");
    CHECK_FALSE(j["counterexample"].contains("z"));
    CHECK(j.dump() == j.dump()); // deterministic serialization
}

TEST_CASE("big integers survive json") {
    Rational big(Int("123456789012345678901234567890"), Int(7));
    CHECK(rational_from_json(to_json(big)) == big);
    CHECK(int_from_json(int_to_json(Int("99999999999999999999999"))) ==
          Int("99999999999999999999999"));
}
