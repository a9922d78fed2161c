#pragma once

#include <set>
#include <string>
#include <variant>
#include <vector>

#include "regroup/pl_map.hpp"
#include "regroup/successor_map.hpp"
#include "regroup/table_map.hpp"

namespace regroup {

/// A homeomorphism G -> G in one of the exact representations:
/// piecewise-linear (dense or lattice), exception-table-plus-tails
/// (lattice), or partition-scheme successor (lattice, non-monotone).
using Homeo = std::variant<PLMap, TableMap, SchemeSuccessorMap>;

inline const GroupDescriptor& homeo_group(const Homeo& f) {
    return std::visit([](const auto& m) -> const GroupDescriptor& { return m.group(); }, f);
}

/// Exact image of a group member; rejects values outside the group.
inline Rational eval_value(const Homeo& f, const Rational& x) {
    const GroupDescriptor& g = homeo_group(f);
    if (!g.contains(x))
        throw MembershipError(x.str() + " is not a member of " + g.str());
    return std::visit([&](const auto& m) { return m.eval(x); }, f);
}

inline GroupElement eval(const Homeo& f, const GroupElement& x) {
    detail::require_same_group(homeo_group(f), x.group(), "eval");
    return GroupElement::trusted(eval_value(f, x.value()), x.group());
}

inline Homeo invert(const Homeo& f) {
    return std::visit(
        [](const auto& m) -> Homeo {
            if constexpr (std::is_same_v<std::decay_t<decltype(m)>, SchemeSuccessorMap>)
                return m.inverted_map();
            else
                return m.inverted();
        },
        f);
}

/// compose(f, g)(x) = f(g(x)). Both maps must have the same representation
/// kind and the same group.
inline Homeo compose(const Homeo& f, const Homeo& g) {
    if (std::holds_alternative<PLMap>(f) && std::holds_alternative<PLMap>(g))
        return std::get<PLMap>(f).composed_with(std::get<PLMap>(g));
    if (std::holds_alternative<TableMap>(f) && std::holds_alternative<TableMap>(g))
        return std::get<TableMap>(f).composed_with(std::get<TableMap>(g));
    throw UnsupportedError("composition requires two pl maps or two table maps");
}

/// Exact involution test by symbolic self-composition, never sampling.
inline bool is_involution(const Homeo& f) {
    return std::visit(
        [&](const auto& m) -> bool {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, PLMap>) {
                return m.composed_with(m).is_identity();
            } else if constexpr (std::is_same_v<T, TableMap>) {
                return m.composed_with(m).is_identity();
            } else {
                // successor maps strictly increase within every class, so
                // f(f(x)) > f(x) > x for all x
                return false;
            }
        },
        f);
}

enum class Monotonicity { StrictlyIncreasing, StrictlyDecreasing, NonMonotone };

inline std::string to_string(Monotonicity m) {
    switch (m) {
    case Monotonicity::StrictlyIncreasing: return "strictly_increasing";
    case Monotonicity::StrictlyDecreasing: return "strictly_decreasing";
    case Monotonicity::NonMonotone: return "non_monotone";
    }
    return "?";
}

inline Monotonicity monotonicity(const Homeo& f) {
    return std::visit(
        [](const auto& m) -> Monotonicity {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, PLMap>) {
                return m.slope_sign() > 0 ? Monotonicity::StrictlyIncreasing
                                          : Monotonicity::StrictlyDecreasing;
            } else if constexpr (std::is_same_v<T, TableMap>) {
                switch (m.monotonicity_sign()) {
                case 1: return Monotonicity::StrictlyIncreasing;
                case -1: return Monotonicity::StrictlyDecreasing;
                default: return Monotonicity::NonMonotone;
                }
            } else {
                return m.find_order_violation() ? Monotonicity::NonMonotone
                                                : Monotonicity::StrictlyIncreasing;
            }
        },
        f);
}

/// Result of the complete fixed-point solve. `outside_group` lists real
/// solutions of x = f(x) that fail group membership (shown in rejection
/// diagnostics).
struct FixedPointResult {
    std::vector<GroupElement> points;
    std::vector<Rational> outside_group;
    bool complete = true;
};

inline FixedPointResult fixed_points(const Homeo& f) {
    const GroupDescriptor& g = homeo_group(f);
    FixedPointResult out;
    std::set<Rational> seen;
    auto offer = [&](const Rational& x) {
        if (!seen.insert(x).second) return;
        if (g.contains(x))
            out.points.push_back(GroupElement::trusted(x, g));
        else
            out.outside_group.push_back(x);
    };
    std::visit(
        [&](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, PLMap>) {
                for (const auto& p : m.pieces()) {
                    if (p.slope == Rational(1)) {
                        if (p.intercept == Rational(0))
                            throw InfiniteFixedPointsError(
                                "map is the identity on a whole piece: continuum of fixed "
                                "points");
                        continue; // x + b with b != 0 has no fixed point
                    }
                    Rational x = p.intercept / (Rational(1) - p.slope);
                    if ((!p.lo || *p.lo <= x) && (!p.hi || x <= *p.hi)) offer(x);
                }
            } else if constexpr (std::is_same_v<T, TableMap>) {
                for (const auto& [k, v] : m.exceptions())
                    if (k == v) offer(k);
                auto tail_fixed = [&](const TableTail& t, bool is_upper) {
                    if (t.dir > 0) {
                        if (t.c == Rational(0))
                            throw InfiniteFixedPointsError(
                                "map is the identity on a whole tail: infinite fixed-point "
                                "set");
                        return; // x + c, c != 0
                    }
                    Rational x = t.c / Rational(2); // x = c - x
                    auto lo = m.span_lo();
                    auto hi = m.span_hi();
                    bool in_region = !lo || (is_upper ? x > *hi : x < *lo);
                    if (in_region) offer(x);
                };
                tail_fixed(m.upper(), true);
                if (!m.exceptions().empty()) tail_fixed(m.lower(), false);
            } else {
                // within-class successor: f(x) > x for every integer
                (void)m;
            }
        },
        f);
    return out;
}

/// Window-filtered view of the complete solve; the flag stays complete.
inline FixedPointResult fixed_points(const Homeo& f, const Window& w) {
    FixedPointResult all = fixed_points(f);
    FixedPointResult out;
    out.complete = all.complete;
    out.outside_group = all.outside_group;
    for (auto& e : all.points)
        if (w.lo <= e.value() && e.value() <= w.hi) out.points.push_back(e);
    return out;
}

/// The unique fixed point required of a single-fixed-point involution.
inline GroupElement unique_fixed_point(const Homeo& f) {
    FixedPointResult r = fixed_points(f);
    if (r.points.size() == 1) return r.points.front();
    std::string detail;
    for (const auto& e : r.points) detail += (detail.empty() ? "" : ", ") + e.value().str();
    if (r.points.empty()) {
        std::string outside;
        for (const auto& x : r.outside_group)
            outside += (outside.empty() ? "" : ", ") + x.str();
        throw PreconditionError(
            "map has no fixed point in " + homeo_group(f).str() +
            (outside.empty() ? "" : " (real solutions outside the group: " + outside + ")"));
    }
    throw PreconditionError("map has multiple fixed points: {" + detail + "}");
}

inline Homeo make_identity(const GroupDescriptor& g) {
    if (g.is_discrete()) return TableMap::identity(g);
    return PLMap::identity(g);
}

inline Homeo make_shift(const GroupDescriptor& g, const Rational& c) {
    if (!g.contains(c))
        throw MembershipError("shift constant " + c.str() + " outside " + g.str());
    if (g.is_discrete()) return TableMap::shift(g, c);
    return PLMap::shift(g, c);
}

inline Homeo make_negation(const GroupDescriptor& g) {
    if (g.is_discrete()) return TableMap::negation(g);
    return PLMap::negation(g);
}

/// Same-representation identity, used for exact composition comparisons.
inline Homeo identity_like(const Homeo& f) {
    return std::visit(
        [](const auto& m) -> Homeo {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, PLMap>)
                return PLMap::identity(m.group());
            else if constexpr (std::is_same_v<T, TableMap>)
                return TableMap::identity(m.group());
            else
                throw UnsupportedError("no identity in successor-map form");
        },
        f);
}

/// Negation / shift in the same representation as f, so the result can be
/// composed with f exactly.
inline Homeo negation_like(const Homeo& f) {
    if (std::holds_alternative<PLMap>(f))
        return PLMap::negation(homeo_group(f));
    if (std::holds_alternative<TableMap>(f))
        return TableMap::negation(homeo_group(f));
    throw UnsupportedError("no negation in successor-map form");
}

inline Homeo shift_like(const Homeo& f, const Rational& c) {
    const GroupDescriptor& g = homeo_group(f);
    if (!g.contains(c))
        throw MembershipError("shift constant " + c.str() + " outside " + g.str());
    if (std::holds_alternative<PLMap>(f)) return PLMap::shift(g, c);
    if (std::holds_alternative<TableMap>(f)) return TableMap::shift(g, c);
    throw UnsupportedError("no shift in successor-map form");
}

inline std::string homeo_str(const Homeo& f) {
    return std::visit([](const auto& m) { return m.str(); }, f);
}

} // namespace regroup
