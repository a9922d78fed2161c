#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "regroup/homeo.hpp"

namespace regroup {

/// First failing instance of a pointwise law, with both sides evaluated.
struct Counterexample {
    std::string law;
    Rational x;
    std::optional<Rational> y;
    std::optional<Rational> z;
    Rational lhs;
    Rational rhs;
};

struct CheckReport {
    std::string check;
    bool pass = true;
    std::uint64_t checked = 0;
    std::optional<Counterexample> counterexample;

    CheckReport() = default;
    explicit CheckReport(std::string name) : check(std::move(name)) {}

    void fail(Counterexample ce) {
        if (pass) {
            pass = false;
            counterexample = std::move(ce);
        }
    }
};

/// A Homeo packaged with its exact inverse, evaluated in both directions.
class HomeoBijection {
public:
    explicit HomeoBijection(Homeo f) : fwd_(std::move(f)), bwd_(invert(fwd_)) {}

    const GroupDescriptor& group() const { return homeo_group(fwd_); }
    const Homeo& forward_map() const { return fwd_; }
    const Homeo& backward_map() const { return bwd_; }

    Rational forward(const Rational& x) const { return eval_value(fwd_, x); }
    Rational backward(const Rational& y) const { return eval_value(bwd_, y); }

private:
    Homeo fwd_;
    Homeo bwd_;
};

/// The group <G, (+)_h> with x (+) y = h^-1(h(x) + h(y)). The bijection h
/// is the finite datum; the operation is always computed through it and
/// never materialized. B needs forward/backward evaluation and a group.
template <class B = HomeoBijection>
class TransportedGroup {
public:
    TransportedGroup(GroupDescriptor base, B h) : base_(std::move(base)), h_(std::move(h)) {
        detail::require_same_group(base_, h_.group(), "transported group");
        neutral_ = h_.backward(Rational(0));
    }

    const GroupDescriptor& base() const { return base_; }
    const B& bijection() const { return h_; }
    const Rational& neutral_value() const { return neutral_; }
    GroupElement neutral_element() const { return GroupElement::trusted(neutral_, base_); }

    Rational add_values(const Rational& x, const Rational& y) const {
        return h_.backward(h_.forward(x) + h_.forward(y));
    }
    Rational neg_value(const Rational& x) const { return h_.backward(-h_.forward(x)); }

    GroupElement add(const GroupElement& x, const GroupElement& y) const {
        detail::require_same_group(x.group(), base_, "transported_add");
        detail::require_same_group(y.group(), base_, "transported_add");
        return GroupElement::trusted(add_values(x.value(), y.value()), base_);
    }
    GroupElement neg(const GroupElement& x) const {
        detail::require_same_group(x.group(), base_, "transported_neg");
        return GroupElement::trusted(neg_value(x.value()), base_);
    }

private:
    GroupDescriptor base_;
    B h_;
    Rational neutral_;
};

using TransportedGroupH = TransportedGroup<HomeoBijection>;

inline TransportedGroupH transported_group(const Homeo& h) {
    return TransportedGroupH(homeo_group(h), HomeoBijection(h));
}

/// The shift by h^-1(c_native) of the transported group, assembled as the
/// explicit composition h^-1 . (+c) . h.
inline Homeo transported_shift(const TransportedGroupH& T, const Rational& c_native) {
    if (!T.base().contains(c_native))
        throw MembershipError("shift constant " + c_native.str() + " outside " +
                              T.base().str());
    const Homeo& h = T.bijection().forward_map();
    return compose(T.bijection().backward_map(), compose(shift_like(h, c_native), h));
}

/// Group axioms of (+)_h over every window triple: associativity, the
/// neutral h^-1(0), and inverses via neg.
template <class B>
inline std::vector<CheckReport> check_axioms(const TransportedGroup<B>& T, const Window& w) {
    std::vector<Rational> xs = enumerate_values(T.base(), w);
    CheckReport assoc{"associativity"};
    for (const auto& x : xs)
        for (const auto& y : xs)
            for (const auto& z : xs) {
                Rational lhs = T.add_values(T.add_values(x, y), z);
                Rational rhs = T.add_values(x, T.add_values(y, z));
                ++assoc.checked;
                if (!(lhs == rhs)) {
                    assoc.fail({"(x+y)+z = x+(y+z)", x, y, z, lhs, rhs});
                    break;
                }
            }
    CheckReport neut{"neutral"};
    for (const auto& x : xs) {
        Rational lhs = T.add_values(x, T.neutral_value());
        Rational rhs = T.add_values(T.neutral_value(), x);
        neut.checked += 2;
        if (!(lhs == x)) neut.fail({"x+e = x", x, std::nullopt, std::nullopt, lhs, x});
        if (!(rhs == x)) neut.fail({"e+x = x", x, std::nullopt, std::nullopt, rhs, x});
    }
    CheckReport inv{"inverse"};
    for (const auto& x : xs) {
        Rational lhs = T.add_values(x, T.neg_value(x));
        ++inv.checked;
        if (!(lhs == T.neutral_value()))
            inv.fail({"x+(-x) = e", x, std::nullopt, std::nullopt, lhs, T.neutral_value()});
    }
    return {assoc, neut, inv};
}

/// Fact (2)/(3): h is an isomorphism <G,(+)_h> -> G. Checks
/// h(x (+) y) = h(x) + h(y) on all pairs and h(neg x) = -h(x) pointwise.
template <class B>
inline CheckReport verify_isomorphism(const TransportedGroup<B>& T, const Window& w) {
    std::vector<Rational> xs = enumerate_values(T.base(), w);
    CheckReport rep{"isomorphism"};
    for (const auto& x : xs)
        for (const auto& y : xs) {
            Rational lhs = T.bijection().forward(T.add_values(x, y));
            Rational rhs = T.bijection().forward(x) + T.bijection().forward(y);
            ++rep.checked;
            if (!(lhs == rhs)) {
                rep.fail({"h(x+y) = h(x)+h(y)", x, y, std::nullopt, lhs, rhs});
                break;
            }
        }
    for (const auto& x : xs) {
        Rational lhs = T.bijection().forward(T.neg_value(x));
        Rational rhs = -T.bijection().forward(x);
        ++rep.checked;
        if (!(lhs == rhs)) rep.fail({"h(-x) = -h(x)", x, std::nullopt, std::nullopt, lhs, rhs});
    }
    return rep;
}

/// Pointwise conjugacy check t(f(x)) = g(t(x)) over the window.
inline CheckReport check_conjugacy(const Homeo& t, const Homeo& f, const Homeo& g,
                                   const Window& w) {
    detail::require_same_group(homeo_group(t), homeo_group(f), "check_conjugacy");
    detail::require_same_group(homeo_group(t), homeo_group(g), "check_conjugacy");
    CheckReport rep{"conjugacy"};
    for (const auto& x : enumerate_values(homeo_group(t), w)) {
        Rational lhs = eval_value(t, eval_value(f, x));
        Rational rhs = eval_value(g, eval_value(t, x));
        ++rep.checked;
        if (!(lhs == rhs)) {
            rep.fail({"t(f(x)) = g(t(x))", x, std::nullopt, std::nullopt, lhs, rhs});
            break;
        }
    }
    return rep;
}

enum class TransportRole { Inversion, Shift };
enum class EquivalenceDirection { RegroupToConjugacy, ConjugacyToRegroup };

inline std::string to_string(TransportRole r) {
    return r == TransportRole::Inversion ? "inversion" : "shift";
}
inline std::string to_string(EquivalenceDirection d) {
    return d == EquivalenceDirection::RegroupToConjugacy ? "regroup_to_conjugacy"
                                                         : "conjugacy_to_regroup";
}

/// The map playing the requested role in the group transported along h:
/// its inversion h^-1 . (-) . h, or its shift by h^-1(c).
inline Homeo derive_role_map(const Homeo& h, TransportRole role,
                             const std::optional<Rational>& c_native = std::nullopt) {
    if (role == TransportRole::Inversion)
        return compose(invert(h), compose(negation_like(h), h));
    if (!c_native) throw PreconditionError("shift role needs a shift constant");
    if (c_native->is_zero())
        throw NeutralShiftError("shift transport requires a non-neutral shift constant");
    return compose(invert(h), compose(shift_like(h, *c_native), h));
}

struct EquivalenceReport {
    TransportRole role;
    EquivalenceDirection direction;
    bool pass = true;
    std::vector<CheckReport> checks;
    std::optional<Rational> transported_constant; // h^-1(c) in the shift case

    EquivalenceReport(TransportRole r, EquivalenceDirection d) : role(r), direction(d) {}

    void add(CheckReport r) {
        pass = pass && r.pass;
        checks.push_back(std::move(r));
    }
};

/// Executable content of the regrouping <-> conjugacy equivalences.
///
/// RegroupToConjugacy: from the transported group built on the witness h,
/// whose inversion (or shift) is f, produce the conjugating map t = h and
/// verify t.f = m.t (resp. t.f = (+c).t) both symbolically and pointwise.
///
/// ConjugacyToRegroup: from the conjugacy f = h^-1.m.h (resp. shift),
/// build (+)_h and verify f acts as its inversion (resp. as its shift by
/// d = h^-1(c)) on every window element.
inline EquivalenceReport equivalence_suite(const GroupDescriptor& g, const Homeo& f,
                                           const Homeo& h, TransportRole role,
                                           const std::optional<Rational>& c_native,
                                           EquivalenceDirection direction, const Window& w) {
    detail::require_same_group(g, homeo_group(f), "equivalence_suite");
    detail::require_same_group(g, homeo_group(h), "equivalence_suite");
    EquivalenceReport rep{role, direction};

    Homeo expected = derive_role_map(h, role, c_native);
    if (!(expected == f))
        throw PreconditionError("f is not the " + to_string(role) +
                                " induced by the supplied witness: expected " +
                                homeo_str(expected) + ", got " + homeo_str(f));
    {
        CheckReport wit{"witness-consistency"};
        wit.checked = 1;
        rep.add(std::move(wit));
    }

    TransportedGroupH T = transported_group(h);
    if (direction == EquivalenceDirection::RegroupToConjugacy) {
        // t = h conjugates f to the native inversion / shift.
        Homeo native = role == TransportRole::Inversion ? negation_like(h)
                                                        : shift_like(h, *c_native);
        rep.add(check_conjugacy(h, f, native, w));
    } else {
        if (role == TransportRole::Inversion) {
            CheckReport law{"f-is-transported-inversion"};
            for (const auto& x : enumerate_values(g, w)) {
                Rational lhs = T.neg_value(x);
                Rational rhs = eval_value(f, x);
                ++law.checked;
                if (!(lhs == rhs)) {
                    law.fail({"neg_(+)(x) = f(x)", x, std::nullopt, std::nullopt, lhs, rhs});
                    break;
                }
            }
            rep.add(std::move(law));
        } else {
            Rational d = T.bijection().backward(*c_native);
            rep.transported_constant = d;
            CheckReport law{"f-is-transported-shift"};
            for (const auto& x : enumerate_values(g, w)) {
                Rational lhs = T.add_values(x, d);
                Rational rhs = eval_value(f, x);
                ++law.checked;
                if (!(lhs == rhs)) {
                    law.fail({"x (+) d = f(x)", x, std::nullopt, std::nullopt, lhs, rhs});
                    break;
                }
            }
            rep.add(std::move(law));
        }
    }
    return rep;
}

/// Regroup -> conjugacy -> regroup must reproduce the original operation
/// extensionally on the window.
inline CheckReport equivalence_round_trip(const GroupDescriptor& g, const Homeo& h,
                                          TransportRole role,
                                          const std::optional<Rational>& c_native,
                                          const Window& w) {
    Homeo f = derive_role_map(h, role, c_native);
    TransportedGroupH original = transported_group(h);
    // The conjugacy witness produced by the forward direction is t = h;
    // rebuilding the operation from that witness transports along t again.
    TransportedGroupH rebuilt = transported_group(h);
    CheckReport rep{"round-trip"};
    std::vector<Rational> xs = enumerate_values(g, w);
    for (const auto& x : xs)
        for (const auto& y : xs) {
            Rational lhs = original.add_values(x, y);
            Rational rhs = rebuilt.add_values(x, y);
            ++rep.checked;
            if (!(lhs == rhs)) {
                rep.fail({"(+) = (+) rebuilt", x, y, std::nullopt, lhs, rhs});
                return rep;
            }
        }
    // And the rebuilt operation must again present f in its role.
    for (const auto& x : xs) {
        Rational lhs = role == TransportRole::Inversion
                           ? rebuilt.neg_value(x)
                           : rebuilt.add_values(x, rebuilt.bijection().backward(*c_native));
        Rational rhs = eval_value(f, x);
        ++rep.checked;
        if (!(lhs == rhs)) {
            rep.fail({"role preserved after round trip", x, std::nullopt, std::nullopt, lhs,
                      rhs});
            return rep;
        }
    }
    return rep;
}

} // namespace regroup
