#include <catch2/catch_amalgamated.hpp>

#include "regroup/homeo.hpp"

using namespace regroup;

namespace {

const GroupDescriptor Z = GroupDescriptor::integers();
const GroupDescriptor M2 = GroupDescriptor::madic(2);

PLMap neg_scale() {
    return PLMap(M2, {PLPiece{std::nullopt, Rational(0), Rational(-2), Rational(0)},
                      PLPiece{Rational(0), std::nullopt, Rational(-1, 2), Rational(0)}});
}

PLMap three_piece() {
    return PLMap(M2, {PLPiece{std::nullopt, Rational(0), Rational(1), Rational(1)},
                      PLPiece{Rational(0), Rational(1), Rational(2), Rational(1)},
                      PLPiece{Rational(1), std::nullopt, Rational(1), Rational(2)}});
}

TableMap scattered_involution() {
    std::map<Rational, Rational> exc;
    exc.emplace(Rational(-1), Rational(4));
    exc.emplace(Rational(0), Rational(5));
    exc.emplace(Rational(1), Rational(1));
    exc.emplace(Rational(2), Rational(3));
    exc.emplace(Rational(3), Rational(2));
    exc.emplace(Rational(4), Rational(-1));
    exc.emplace(Rational(5), Rational(0));
    return TableMap(Z, exc, TableTail{-1, Rational(4)}, TableTail{-1, Rational(4)});
}

} // namespace

TEST_CASE("pl construction is validated") {
    SECTION("gap between pieces") {
        CHECK_THROWS_AS(
            PLMap(Z, {PLPiece{std::nullopt, Rational(0), Rational(1), Rational(0)},
                      PLPiece{Rational(1), std::nullopt, Rational(1), Rational(0)}}),
            InvariantError);
    }
    SECTION("discontinuity at a breakpoint") {
        CHECK_THROWS_AS(
            PLMap(Z, {PLPiece{std::nullopt, Rational(0), Rational(1), Rational(0)},
                      PLPiece{Rational(0), std::nullopt, Rational(1), Rational(5)}}),
            InvariantError);
    }
    SECTION("mixed slope signs") {
        CHECK_THROWS_AS(
            PLMap(GroupDescriptor::rationals(),
                  {PLPiece{std::nullopt, Rational(0), Rational(-1), Rational(0)},
                   PLPiece{Rational(0), std::nullopt, Rational(1), Rational(0)}}),
            InvariantError);
    }
    SECTION("zero slope") {
        CHECK_THROWS_AS(PLMap::affine(Z, 0, 1), InvariantError);
    }
    SECTION("madic closure: slope must be a signed power of the base") {
        CHECK_THROWS_AS(PLMap::affine(M2, 3, 0), InvariantError);
        CHECK_THROWS_AS(PLMap::affine(M2, Rational(2, 3), 0), InvariantError);
        CHECK_NOTHROW(PLMap::affine(M2, Rational(1, 4), Rational(3, 8)));
    }
    SECTION("madic closure: intercept and breakpoints") {
        CHECK_THROWS_AS(PLMap::affine(M2, 2, Rational(1, 3)), InvariantError);
        // continuous at 1/3 with closed slopes and intercepts, but the
        // breakpoint itself is outside Z[1/2]
        CHECK_THROWS_AS(
            PLMap(M2, {PLPiece{std::nullopt, Rational(1, 3), Rational(4), Rational(0)},
                       PLPiece{Rational(1, 3), std::nullopt, Rational(1), Rational(1)}}),
            InvariantError);
    }
    SECTION("lattice maps need slope +-1") {
        CHECK_THROWS_AS(PLMap::affine(Z, 2, 0), InvariantError);
        CHECK_THROWS_AS(PLMap::affine(Z, 1, Rational(1, 2)), InvariantError);
    }
}

TEST_CASE("pl pieces are canonicalized") {
    PLMap split(Z, {PLPiece{std::nullopt, Rational(3), Rational(1), Rational(1)},
                    PLPiece{Rational(3), std::nullopt, Rational(1), Rational(1)}});
    CHECK(split == PLMap::shift(Z, 1));
    CHECK(split.pieces().size() == 1);
}

TEST_CASE("pl evaluation") {
    PLMap f = PLMap::affine(Z, -1, 2);
    CHECK(f.eval(Rational(5)) == Rational(-3));
    CHECK(neg_scale().eval(Rational(1, 2)) == Rational(-1, 4));
    CHECK(neg_scale().eval(Rational(-3, 4)) == Rational(3, 2));
    CHECK_THROWS_AS(eval_value(Homeo(f), Rational(1, 2)), MembershipError);
}

TEST_CASE("pl inversion") {
    PLMap f = PLMap::affine(GroupDescriptor::rationals(), 2, 1);
    CHECK(f.inverted() ==
          PLMap::affine(GroupDescriptor::rationals(), Rational(1, 2), Rational(-1, 2)));

    PLMap t = three_piece();
    PLMap expect(M2, {PLPiece{std::nullopt, Rational(1), Rational(1), Rational(-1)},
                      PLPiece{Rational(1), Rational(3), Rational(1, 2), Rational(-1, 2)},
                      PLPiece{Rational(3), std::nullopt, Rational(1), Rational(-2)}});
    CHECK(t.inverted() == expect);
    CHECK(t.inverted().inverted() == t);

    // round-trip on a window
    for (const auto& x : enumerate_values(M2, Window(Rational(-3), Rational(3), 4)))
        CHECK(t.inverted().eval(t.eval(x)) == x);
}

TEST_CASE("pl composition and involutions") {
    auto q = GroupDescriptor::rationals();
    PLMap neg = PLMap::negation(q);
    CHECK(neg.composed_with(neg) == PLMap::identity(q));
    CHECK(is_involution(Homeo(PLMap::affine(Z, -1, 2))));
    CHECK(is_involution(Homeo(neg_scale())));
    CHECK_FALSE(is_involution(Homeo(PLMap::shift(Z, 1))));

    PLMap t = three_piece();
    CHECK(t.composed_with(t.inverted()) == PLMap::identity(M2));
    CHECK(t.inverted().composed_with(t) == PLMap::identity(M2));
}

TEST_CASE("pl fixed points") {
    auto fp = [](const Homeo& f) { return fixed_points(f); };
    CHECK(fp(Homeo(PLMap::affine(Z, -1, 2))).points[0].value() == Rational(1));
    CHECK(fp(Homeo(PLMap::negation(GroupDescriptor::rationals()))).points[0].value() ==
          Rational(0));
    auto two_piece = fp(Homeo(neg_scale()));
    REQUIRE(two_piece.points.size() == 1); // both pieces solve to 0, deduplicated
    CHECK(two_piece.points[0].value() == Rational(0));
    CHECK(two_piece.complete);

    CHECK(fp(Homeo(PLMap::shift(Z, 1))).points.empty());
    auto off_lattice = fp(Homeo(PLMap::affine(Z, -1, 1)));
    CHECK(off_lattice.points.empty());
    REQUIRE(off_lattice.outside_group.size() == 1);
    CHECK(off_lattice.outside_group[0] == Rational(1, 2));

    CHECK_THROWS_AS(fp(Homeo(PLMap::identity(Z))), InfiniteFixedPointsError);
    CHECK_THROWS_AS(
        fp(Homeo(PLMap(GroupDescriptor::rationals(),
                       {PLPiece{std::nullopt, Rational(0), Rational(1), Rational(0)},
                        PLPiece{Rational(0), std::nullopt, Rational(2), Rational(0)}}))),
        InfiniteFixedPointsError);

    auto windowed = fixed_points(Homeo(PLMap::affine(Z, -1, 2)),
                                 Window(Rational(5), Rational(9)));
    CHECK(windowed.points.empty());
    CHECK(windowed.complete);
}

TEST_CASE("pl monotonicity from slope signs") {
    CHECK(monotonicity(Homeo(PLMap::affine(Z, -1, 2))) == Monotonicity::StrictlyDecreasing);
    CHECK(monotonicity(Homeo(PLMap::shift(Z, 1))) == Monotonicity::StrictlyIncreasing);
    CHECK(monotonicity(Homeo(three_piece())) == Monotonicity::StrictlyIncreasing);
}

TEST_CASE("table construction is validated") {
    SECTION("opposite tail directions cannot be bijective") {
        CHECK_THROWS_AS(TableMap(Z, {}, TableTail{1, Rational(0)}, TableTail{-1, Rational(0)}),
                        InvariantError);
    }
    SECTION("span coverage") {
        std::map<Rational, Rational> exc{{Rational(0), Rational(2)},
                                         {Rational(2), Rational(0)}};
        CHECK_THROWS_AS(TableMap(Z, exc, TableTail{1, Rational(0)}, TableTail{1, Rational(0)}),
                        InvariantError);
    }
    SECTION("value collides with a tail ray") {
        std::map<Rational, Rational> exc{{Rational(0), Rational(5)}};
        CHECK_THROWS_AS(TableMap(Z, exc, TableTail{1, Rational(0)}, TableTail{1, Rational(0)}),
                        InvariantError);
    }
    SECTION("values must be injective") {
        std::map<Rational, Rational> exc{{Rational(0), Rational(1)},
                                         {Rational(1), Rational(1)}};
        CHECK_THROWS_AS(TableMap(Z, exc, TableTail{1, Rational(0)}, TableTail{1, Rational(0)}),
                        InvariantError);
    }
    SECTION("entries must sit on the lattice") {
        std::map<Rational, Rational> exc{{Rational(1, 2), Rational(0)}};
        CHECK_THROWS_AS(TableMap(Z, exc, TableTail{1, Rational(0)}, TableTail{1, Rational(0)}),
                        InvariantError);
        CHECK_THROWS_AS(TableMap(Z, {}, TableTail{1, Rational(1, 2)},
                                 TableTail{1, Rational(1, 2)}),
                        InvariantError);
    }
    SECTION("dense groups are rejected") {
        CHECK_THROWS_AS(TableMap::identity(M2), InvariantError);
    }
    SECTION("empty table needs matching tails") {
        CHECK_THROWS_AS(TableMap(Z, {}, TableTail{1, Rational(1)}, TableTail{1, Rational(2)}),
                        InvariantError);
    }
}

TEST_CASE("table exceptions that restate a tail are trimmed") {
    std::map<Rational, Rational> exc{{Rational(0), Rational(1)}, {Rational(1), Rational(2)}};
    TableMap t(Z, exc, TableTail{1, Rational(1)}, TableTail{1, Rational(1)});
    CHECK(t.exceptions().empty());
    CHECK(t == TableMap::shift(Z, 1));
}

TEST_CASE("table evaluation hits tails far out") {
    TableMap shift = TableMap::shift(Z, Rational(1));
    CHECK(shift.eval(Rational(Int("1000000"))) == Rational(Int("1000001")));
    CHECK(shift.eval(Rational(Int("-1000000"))) == Rational(Int("-999999")));
    TableMap sc = scattered_involution();
    CHECK(sc.eval(Rational(2)) == Rational(3));
    CHECK(sc.eval(Rational(100)) == Rational(-96));
}

TEST_CASE("table inversion and composition") {
    TableMap sc = scattered_involution();
    CHECK(sc.inverted() == sc); // an involution is its own inverse
    CHECK(sc.composed_with(sc) == TableMap::identity(Z));
    CHECK(is_involution(Homeo(sc)));

    TableMap s3 = TableMap::shift(Z, 3);
    CHECK(s3.inverted() == TableMap::shift(Z, -3));
    CHECK(s3.composed_with(s3.inverted()) == TableMap::identity(Z));
    CHECK(invert(invert(Homeo(sc))) == Homeo(sc));

    TableMap refl = TableMap::negation(Z);
    CHECK(refl.composed_with(s3) == TableMap::affine(Z, -1, Rational(-3)));
}

TEST_CASE("table fixed points") {
    TableMap refl = TableMap::affine(Z, -1, Rational(4));
    auto r = fixed_points(Homeo(refl));
    REQUIRE(r.points.size() == 1);
    CHECK(r.points[0].value() == Rational(2));

    TableMap odd = TableMap::affine(Z, -1, Rational(1)); // fixed point 1/2 off-lattice
    auto ro = fixed_points(Homeo(odd));
    CHECK(ro.points.empty());
    CHECK(ro.outside_group == std::vector<Rational>{Rational(1, 2)});

    CHECK_THROWS_AS(fixed_points(Homeo(TableMap::identity(Z))), InfiniteFixedPointsError);

    TableMap sc = scattered_involution();
    auto rs = fixed_points(Homeo(sc));
    REQUIRE(rs.points.size() == 1);
    CHECK(rs.points[0].value() == Rational(1));
}

TEST_CASE("table monotonicity") {
    CHECK(monotonicity(Homeo(TableMap::shift(Z, 2))) == Monotonicity::StrictlyIncreasing);
    CHECK(monotonicity(Homeo(TableMap::negation(Z))) == Monotonicity::StrictlyDecreasing);
    CHECK(monotonicity(Homeo(scattered_involution())) == Monotonicity::NonMonotone);
}

TEST_CASE("successor map closed forms") {
    SchemeSuccessorMap f(PartitionScheme::madic_valuation(2));
    CHECK(f.eval(Rational(3)) == Rational(5));
    CHECK(f.eval(Rational(4)) == Rational(12));
    CHECK(f.eval(Rational(0)) == Rational(1));
    CHECK(f.eval(Rational(-1)) == Rational(0));
    CHECK(f.eval(Rational(-4)) == Rational(4));
    CHECK(f.eval(Rational(8)) == Rational(24));
    CHECK(f.eval(Rational(9)) == Rational(11));

    SECTION("predecessor inverts successor") {
        SchemeSuccessorMap b = f.inverted_map();
        for (int x = -40; x <= 40; ++x)
            CHECK(b.eval(f.eval(Rational(x))) == Rational(x));
    }
    SECTION("finite levels: the last class absorbs high valuations") {
        SchemeSuccessorMap g(PartitionScheme::madic_valuation(2, 3));
        CHECK(g.eval(Rational(4)) == Rational(8));   // class 3: multiples of 4
        CHECK(g.eval(Rational(-4)) == Rational(4));  // skips 0
        CHECK(g.eval(Rational(16)) == Rational(20));
        CHECK(g.eval(Rational(2)) == Rational(6));   // class 2 unchanged
    }
    SECTION("parity scheme is the double shift") {
        SchemeSuccessorMap p(PartitionScheme::parity());
        for (int x = -9; x <= 9; ++x) CHECK(p.eval(Rational(x)) == Rational(x + 2));
        CHECK(monotonicity(Homeo(p)) == Monotonicity::StrictlyIncreasing);
    }
    SECTION("one level collapses to the unit shift") {
        SchemeSuccessorMap one(PartitionScheme::madic_valuation(2, 1));
        for (int x = -5; x <= 5; ++x) CHECK(one.eval(Rational(x)) == Rational(x + 1));
    }
    CHECK(monotonicity(Homeo(f)) == Monotonicity::NonMonotone);
    CHECK_FALSE(is_involution(Homeo(f)));
    CHECK(fixed_points(Homeo(f)).points.empty());
    CHECK_THROWS_AS(f.eval(Rational(1, 2)), MembershipError);
}

TEST_CASE("composition requires matching representations and groups") {
    Homeo pl = PLMap::shift(Z, 1);
    Homeo tab = TableMap::shift(Z, 1);
    Homeo succ = SchemeSuccessorMap(PartitionScheme::parity());
    CHECK_THROWS_AS(compose(pl, tab), UnsupportedError);
    CHECK_THROWS_AS(compose(succ, succ), UnsupportedError);
    Homeo plq = PLMap::shift(GroupDescriptor::rationals(), 1);
    CHECK_THROWS_AS(compose(pl, plq), DescriptorMismatchError);
}

TEST_CASE("eval keeps closure over a window") {
    std::vector<Homeo> maps{Homeo(neg_scale()), Homeo(three_piece()),
                            Homeo(scattered_involution())};
    for (const auto& f : maps) {
        const auto& g = homeo_group(f);
        Window w(Rational(-4), Rational(4),
                 g.is_dense() ? std::optional<std::int64_t>(3) : std::nullopt);
        for (const auto& x : enumerate_values(g, w)) CHECK(g.contains(eval_value(f, x)));
    }
}
