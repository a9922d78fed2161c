#include <catch2/catch_amalgamated.hpp>

#include <map>

#include "regroup/transport.hpp"

using namespace regroup;

namespace {
const GroupDescriptor Z = GroupDescriptor::integers();
const GroupDescriptor M2 = GroupDescriptor::madic(2);
} // namespace

TEST_CASE("transport through the identity is the native operation") {
    auto T = transported_group(Homeo(PLMap::identity(Z)));
    CHECK(T.add_values(3, 4) == Rational(7));
    CHECK(T.neg_value(5) == Rational(-5));
    CHECK(T.neutral_value() == Rational(0));
}

TEST_CASE("transport through a translation, with a brute-force oracle") {
    Homeo h = PLMap::affine(Z, 1, -1);
    auto T = transported_group(h);
    CHECK(T.add_values(3, 4) == Rational(6));
    CHECK(T.neutral_value() == Rational(1));
    CHECK(T.neg_value(5) == Rational(-3));
    CHECK(T.add_values(5, T.neg_value(5)) == T.neutral_value());

    // Oracle: solve h(z) = h(x) + h(y) by scanning a padded window, never
    // using the inverse map.
    std::map<Rational, Rational> h_values; // h(z) -> z
    for (const auto& z : enumerate_values(Z, Window(Rational(-45), Rational(45))))
        h_values.emplace(eval_value(h, z), z);
    for (const auto& x : enumerate_values(Z, Window(Rational(-10), Rational(10))))
        for (const auto& y : enumerate_values(Z, Window(Rational(-10), Rational(10)))) {
            auto it = h_values.find(eval_value(h, x) + eval_value(h, y));
            REQUIRE(it != h_values.end());
            CHECK(T.add_values(x, y) == it->second);
        }
}

TEST_CASE("transport through negation is again addition") {
    auto T = transported_group(Homeo(PLMap::negation(Z)));
    for (const auto& x : enumerate_values(Z, Window(Rational(-10), Rational(10))))
        for (const auto& y : enumerate_values(Z, Window(Rational(-10), Rational(10))))
            CHECK(T.add_values(x, y) == x + y);
}

TEST_CASE("transported negation through scaling commutes") {
    auto T = transported_group(Homeo(PLMap::affine(M2, 2, 0)));
    for (const auto& x : enumerate_values(M2, Window(Rational(-2), Rational(2), 3)))
        CHECK(T.neg_value(x) == -x);
}

TEST_CASE("transported elements respect the base group") {
    auto T = transported_group(Homeo(PLMap::affine(Z, 1, -1)));
    GroupElement a(Rational(3), Z);
    GroupElement b(Rational(4), Z);
    CHECK(T.add(a, b).value() == Rational(6));
    GroupElement off(Rational(1, 2), M2);
    CHECK_THROWS_AS(T.add(a, off), DescriptorMismatchError);
}

TEST_CASE("transported shifts as explicit maps") {
    auto TZ = transported_group(Homeo(PLMap::identity(Z)));
    CHECK(transported_shift(TZ, Rational(1)) == Homeo(PLMap::shift(Z, 1)));

    auto Tt = transported_group(Homeo(PLMap::affine(Z, 1, -1)));
    CHECK(transported_shift(Tt, Rational(1)) == Homeo(PLMap::shift(Z, 1)));

    auto Tn = transported_group(Homeo(PLMap::negation(Z)));
    CHECK(transported_shift(Tn, Rational(1)) == Homeo(PLMap::affine(Z, 1, -1)));

    auto Ttab = transported_group(Homeo(TableMap::negation(Z)));
    CHECK(transported_shift(Ttab, Rational(2)) == Homeo(TableMap::shift(Z, -2)));

    CHECK_THROWS_AS(transported_shift(TZ, Rational(1, 2)), MembershipError);
}

TEST_CASE("group axioms hold on windows for the acceptance transports") {
    Window wz(Rational(-12), Rational(12));
    for (Homeo h : {Homeo(PLMap::identity(Z)), Homeo(PLMap::affine(Z, 1, -1)),
                    Homeo(PLMap::negation(Z))}) {
        auto T = transported_group(h);
        for (const auto& rep : check_axioms(T, wz)) {
            INFO(rep.check);
            CHECK(rep.pass);
        }
    }
    auto Tm = transported_group(Homeo(PLMap::affine(M2, 2, 0)));
    for (const auto& rep : check_axioms(Tm, Window(Rational(-1), Rational(1), 3)))
        CHECK(rep.pass);
}

TEST_CASE("the transporting map is an isomorphism onto the native group") {
    auto T = transported_group(Homeo(PLMap::affine(Z, 1, -1)));
    Window w(Rational(-20), Rational(20));
    CheckReport rep = verify_isomorphism(T, w);
    CHECK(rep.pass);
    CHECK(rep.checked == 41ull * 41 + 41);
}

TEST_CASE("inversion-conjugacy law: h(neg(x)) = -h(x) pointwise") {
    for (Homeo h : {Homeo(PLMap::affine(Z, 1, -1)), Homeo(PLMap::negation(Z))}) {
        auto T = transported_group(h);
        for (const auto& x : enumerate_values(Z, Window(Rational(-15), Rational(15))))
            CHECK(eval_value(h, T.neg_value(x)) == -eval_value(h, x));
    }
}

TEST_CASE("shift law: h(s(x)) = h(x) + c pointwise") {
    Homeo h = PLMap::affine(Z, 1, -1);
    auto T = transported_group(h);
    Rational c(3);
    Homeo s = transported_shift(T, c);
    for (const auto& x : enumerate_values(Z, Window(Rational(-15), Rational(15))))
        CHECK(eval_value(h, eval_value(s, x)) == eval_value(h, x) + c);
}

TEST_CASE("pointwise conjugacy checks") {
    Window w(Rational(0), Rational(20));
    Homeo id = PLMap::identity(Z);
    Homeo s1 = PLMap::shift(Z, 1);
    Homeo s2 = PLMap::shift(Z, 2);
    CHECK(check_conjugacy(id, s1, s1, w).pass);
    CheckReport bad = check_conjugacy(id, s1, s2, w);
    CHECK_FALSE(bad.pass);
    REQUIRE(bad.counterexample);
    CHECK(bad.counterexample->x == Rational(0));
    CHECK(bad.counterexample->lhs == Rational(1));
    CHECK(bad.counterexample->rhs == Rational(2));
}

TEST_CASE("equivalence suite, inversion role") {
    Window w(Rational(-20), Rational(20));
    Homeo h = PLMap::affine(Z, 1, -1);
    Homeo f = derive_role_map(h, TransportRole::Inversion);
    CHECK(f == Homeo(PLMap::affine(Z, -1, 2)));
    auto fwd = equivalence_suite(Z, f, h, TransportRole::Inversion, std::nullopt,
                                 EquivalenceDirection::RegroupToConjugacy, w);
    auto bwd = equivalence_suite(Z, f, h, TransportRole::Inversion, std::nullopt,
                                 EquivalenceDirection::ConjugacyToRegroup, w);
    CHECK(fwd.pass);
    CHECK(bwd.pass);
    CHECK(equivalence_round_trip(Z, h, TransportRole::Inversion, std::nullopt, w).pass);
}

TEST_CASE("equivalence suite, shift role") {
    Window w(Rational(-20), Rational(20));
    Homeo h = PLMap::identity(Z);
    Homeo f = derive_role_map(h, TransportRole::Shift, Rational(1));
    CHECK(f == Homeo(PLMap::shift(Z, 1)));
    auto bwd = equivalence_suite(Z, f, h, TransportRole::Shift, Rational(1),
                                 EquivalenceDirection::ConjugacyToRegroup, w);
    CHECK(bwd.pass);
    REQUIRE(bwd.transported_constant);
    CHECK(*bwd.transported_constant == Rational(1));
}

TEST_CASE("equivalence suite rejects bad inputs") {
    Window w(Rational(-5), Rational(5));
    Homeo h = PLMap::identity(Z);
    SECTION("neutral shift") {
        CHECK_THROWS_AS(derive_role_map(h, TransportRole::Shift, Rational(0)),
                        NeutralShiftError);
        CHECK_THROWS_AS(derive_role_map(h, TransportRole::Shift, std::nullopt),
                        PreconditionError);
    }
    SECTION("f does not play the claimed role") {
        Homeo not_inversion = PLMap::shift(Z, 1);
        CHECK_THROWS_AS(
            equivalence_suite(Z, not_inversion, h, TransportRole::Inversion, std::nullopt,
                              EquivalenceDirection::RegroupToConjugacy, w),
            PreconditionError);
    }
}

TEST_CASE("a corrupted transporting map never reaches verification") {
    std::map<Rational, Rational> exc{{Rational(0), Rational(7)}};
    CHECK_THROWS_AS(TableMap(Z, exc, TableTail{1, Rational(0)}, TableTail{1, Rational(0)}),
                    InvariantError);
}
