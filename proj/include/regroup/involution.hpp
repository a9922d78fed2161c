#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "regroup/transport.hpp"

namespace regroup {

/// The set A = { a in G : a > f(a) } restricted to a window, together
/// with the pointwise partition evidence: every window element is exactly
/// one of (in A), (in f(A)), (the fixed point), and f swaps the two sides.
struct PositivePart {
    Rational fixed_point;
    std::vector<GroupElement> members;
    CheckReport partition;
};

inline PositivePart positive_part(const Homeo& f, const Window& w) {
    const GroupDescriptor& g = homeo_group(f);
    Rational e = unique_fixed_point(f).value();
    PositivePart out{e, {}, CheckReport{"partition"}};
    for (const auto& x : enumerate_values(g, w)) {
        Rational fx = eval_value(f, x);
        Rational ffx = eval_value(f, fx);
        ++out.partition.checked;
        if (!(ffx == x)) {
            out.partition.fail({"f(f(x)) = x", x, std::nullopt, std::nullopt, ffx, x});
            continue;
        }
        if (x == fx) {
            if (!(x == e))
                out.partition.fail({"only e is fixed", x, std::nullopt, std::nullopt, fx, x});
            continue;
        }
        if (x > fx) {
            // x in A; its partner f(x) must sit on the other side.
            out.members.push_back(GroupElement::trusted(x, g));
            if (!(fx < ffx))
                out.partition.fail({"f(A) and A are disjoint", x, std::nullopt, std::nullopt,
                                    fx, ffx});
        }
    }
    if (!out.partition.pass)
        throw PreconditionError(
            "partition failure: f is not a single-fixed-point involution on the window "
            "(first offense at x = " + out.partition.counterexample->x.str() + ")");
    return out;
}

// --------------------------------------------------------------------------
// Back-and-forth order isomorphism A u {e} -> G n [0, oo), dense case.
// --------------------------------------------------------------------------

/// Finite order-isomorphic matching grown one pair at a time from the seed
/// (e, 0). Extension is functional: with_image / with_preimage return the
/// grown state, so there is no hidden mutation and runs are reproducible.
///
/// Tie-breaking at each insertion: among the group members of the
/// admissible open interval, take the one with the smallest canonical
/// denominator, then the smallest |numerator|, preferring the positive
/// sign on ties.
class BackAndForthState {
public:
    static BackAndForthState seeded(GroupDescriptor g, Rational e) {
        if (!g.is_dense())
            throw PreconditionError("back-and-forth applies to dense groups only");
        if (!g.contains(e)) throw MembershipError("fixed point outside group");
        BackAndForthState s(std::move(g), std::move(e));
        s.fwd_.emplace(s.e_, Rational(0));
        s.bwd_.emplace(Rational(0), s.e_);
        return s;
    }

    const GroupDescriptor& group() const { return g_; }
    const Rational& source_min() const { return e_; }
    const std::map<Rational, Rational>& pairs() const { return fwd_; }

    std::optional<Rational> image_if_matched(const Rational& x) const {
        auto it = fwd_.find(x);
        if (it == fwd_.end()) return std::nullopt;
        return it->second;
    }

    std::optional<Rational> source_if_matched(const Rational& y) const {
        auto it = bwd_.find(y);
        if (it == bwd_.end()) return std::nullopt;
        return it->second;
    }

    /// Value at a source point of A u {e}, extending the matching if x is
    /// new. Returns the value and the (possibly grown) state.
    std::pair<Rational, BackAndForthState> with_image(const Rational& x) const {
        if (!g_.contains(x) || x < e_)
            throw PreconditionError("source " + x.str() + " is not in A u {e}");
        if (auto v = image_if_matched(x)) return {*v, *this};
        auto hi = fwd_.upper_bound(x);
        auto lo = std::prev(hi); // exists: (e, 0) is the minimum pair
        std::optional<Rational> hi_val;
        if (hi != fwd_.end()) hi_val = hi->second;
        Rational y = pick_canonical(g_, lo->second, hi_val);
        BackAndForthState next = *this;
        next.fwd_.emplace(x, y);
        next.bwd_.emplace(y, x);
        return {y, next};
    }

    /// Source point matched to a target of G n [0, oo), extending if new.
    std::pair<Rational, BackAndForthState> with_preimage(const Rational& y) const {
        if (!g_.contains(y) || y < Rational(0))
            throw PreconditionError("target " + y.str() + " is not in G n [0,oo)");
        if (auto it = bwd_.find(y); it != bwd_.end()) return {it->second, *this};
        auto hi = bwd_.upper_bound(y);
        auto lo = std::prev(hi);
        std::optional<Rational> hi_val;
        if (hi != bwd_.end()) hi_val = hi->second;
        Rational x = pick_canonical(g_, lo->second, hi_val);
        BackAndForthState next = *this;
        next.fwd_.emplace(x, y);
        next.bwd_.emplace(y, x);
        return {x, next};
    }

    /// Deterministic choice of a group member of the open interval
    /// (lo, hi), hi absent meaning unbounded above.
    static Rational pick_canonical(const GroupDescriptor& g, const Rational& lo,
                                   const std::optional<Rational>& hi) {
        if (hi && !(lo < *hi)) throw Error("empty interval in back-and-forth pick");
        for (Int d = 1;; ++d) {
            if (d > Int(1) << 62)
                throw Error("back-and-forth pick exhausted denominators");
            if (g.kind() == GroupKind::MAdic && !divides_some_power(d, g.base())) continue;
            Int n_min = (lo * Rational(d)).floor() + 1;
            std::optional<Int> n_max;
            if (hi) {
                n_max = (*hi * Rational(d)).ceil() - 1;
                if (*n_max < n_min) continue;
            }
            auto coprime = [&](const Int& n) {
                return boost::multiprecision::gcd(n < 0 ? Int(-n) : n, d) == 1 ||
                       (n == 0 && d == 1);
            };
            Int span = n_max ? *n_max - n_min : Int(0);
            Int best_abs = n_min > 0 ? n_min : (n_max && *n_max < 0 ? -*n_max : Int(0));
            for (Int k = best_abs;; ++k) {
                bool any_in_range = false;
                for (const Int& n : {k, Int(-k)}) {
                    if (n < n_min || (n_max && n > *n_max)) continue;
                    any_in_range = true;
                    if (coprime(n)) return Rational(n, d);
                    if (n == 0) break; // 0 == -0
                }
                if (!any_in_range && k > best_abs + span + 1) break; // range exhausted
                if (!n_max && k > best_abs + d + 2) break;           // coprime must appear
            }
        }
    }

private:
    BackAndForthState(GroupDescriptor g, Rational e) : g_(std::move(g)), e_(std::move(e)) {}

    GroupDescriptor g_;
    Rational e_;
    std::map<Rational, Rational> fwd_;
    std::map<Rational, Rational> bwd_;
};

// --------------------------------------------------------------------------
// The partial map h : A u {e} -> G n [0, oo) with an extension policy.
// --------------------------------------------------------------------------

/// Pure closed forms for h. The discrete scattered case enumerates
/// A u {e} in order onto {0, a, 2a, ...}; wherever A is the full ray above
/// e the enumeration collapses to the translation x - e.
class PartialOrderIso {
public:
    enum class Form { Closed, RankTable };

    /// h(x) = x - e, for maps whose positive part is exactly (e, oo) n G.
    static PartialOrderIso closed(GroupDescriptor g, Rational e) {
        PartialOrderIso h;
        h.form_ = Form::Closed;
        h.group_ = std::move(g);
        h.e_ = std::move(e);
        return h;
    }

    /// Order-preserving enumeration of A u {e} for a lattice involution
    /// given by a table map. Total: ranks are affine above u0.
    static PartialOrderIso rank_table(const TableMap& f, Rational e) {
        PartialOrderIso h;
        h.form_ = Form::RankTable;
        h.group_ = f.group();
        h.e_ = std::move(e);
        const Rational a = f.group().step();
        auto lattice_above = [&](const Rational& q) {
            // smallest lattice point strictly greater than q
            return Rational((q / a).floor() + 1) * a;
        };
        if (f.upper().dir > 0 || f.lower().dir > 0) {
            // x + c tails belong to shifts, not single-fixed-point
            // involutions; the positive part would not be a well-ordered
            // set matched to {0, a, 2a, ...}.
            throw UnsupportedError("order enumeration needs order-reversing tails");
        }
        Rational a_low = std::min(h.e_, lattice_above(f.lower().c / Rational(2)));
        Rational u0 = lattice_above(f.upper().c / Rational(2));
        if (auto lo = f.span_lo()) a_low = std::min(a_low, *lo);
        if (auto hi = f.span_hi()) u0 = std::max(u0, *hi + a);
        for (Rational x = a_low; x < u0; x += a) {
            if (x == h.e_ || x > f.eval(x)) h.members_.push_back(x);
        }
        h.u0_ = u0;
        h.step_ = a;
        return h;
    }

    Form form() const { return form_; }
    std::string form_name() const { return form_ == Form::Closed ? "closed" : "table"; }
    const GroupDescriptor& group() const { return group_; }
    const Rational& fixed_point() const { return e_; }

    /// h at a member of A u {e}.
    Rational image(const Rational& x) const {
        if (form_ == Form::Closed) {
            if (x < e_) throw PreconditionError(x.str() + " is below the fixed point");
            return x - e_;
        }
        if (x >= u0_)
            return (Rational(Int(members_.size())) + (x - u0_) / step_) * step_;
        auto it = std::lower_bound(members_.begin(), members_.end(), x);
        if (it == members_.end() || !(*it == x))
            throw PreconditionError(x.str() + " is not a member of A u {e}");
        return Rational(Int(it - members_.begin())) * step_;
    }

    /// h^-1 at a member of G n [0, oo).
    Rational preimage(const Rational& y) const {
        if (y < Rational(0)) throw PreconditionError("h^-1 on a negative value");
        if (form_ == Form::Closed) return y + e_;
        Rational k = y / step_;
        if (!k.is_integer()) throw PreconditionError(y.str() + " is not in the target ray");
        Int idx = k.num();
        if (idx < Int(members_.size())) return members_[static_cast<std::size_t>(idx)];
        return u0_ + Rational(idx - Int(members_.size())) * step_;
    }

private:
    PartialOrderIso() : group_(GroupDescriptor::rationals()) {}

    Form form_ = Form::Closed;
    GroupDescriptor group_;
    Rational e_;
    // RankTable data: sorted members of A u {e} below u0; affine above.
    std::vector<Rational> members_;
    Rational u0_;
    Rational step_;
};

/// Chooses and builds h for an involution with fixed point e.
inline PartialOrderIso build_h(const Homeo& f, const GroupDescriptor& g) {
    detail::require_same_group(homeo_group(f), g, "build_h");
    Rational e = unique_fixed_point(f).value();
    if (std::holds_alternative<PLMap>(f)) {
        const PLMap& pl = std::get<PLMap>(f);
        if (pl.slope_sign() > 0)
            throw UnsupportedError(
                "increasing involutions other than the identity do not exist; the positive "
                "part of this map is not a ray above the fixed point");
        return PartialOrderIso::closed(g, e);
    }
    if (std::holds_alternative<TableMap>(f))
        return PartialOrderIso::rank_table(std::get<TableMap>(f), e);
    throw UnsupportedError("no involution normal form for successor maps");
}

/// Seeds the general dense-case construction: the same h grown as an
/// explicit back-and-forth state instead of a closed form.
inline BackAndForthState build_h_state(const Homeo& f, const GroupDescriptor& g) {
    detail::require_same_group(homeo_group(f), g, "build_h_state");
    Rational e = unique_fixed_point(f).value();
    if (monotonicity(f) != Monotonicity::StrictlyDecreasing)
        throw UnsupportedError("dense back-and-forth needs an order-reversing involution, "
                               "so that A u {e} is the ray above the fixed point");
    return BackAndForthState::seeded(g, e);
}

/// The glued map
///     h~(x) = h(x)       for x in A u {e},
///     h~(x) = -h(f(x))   for x in f(A),
/// assembled as an exact total Homeo. Verifies the gluing h~(e) = 0.
inline Homeo build_h_tilde(const Homeo& f, const PartialOrderIso& h) {
    const GroupDescriptor& g = homeo_group(f);
    const Rational& e = h.fixed_point();
    Homeo out = [&]() -> Homeo {
        if (h.form() == PartialOrderIso::Form::Closed) {
            const PLMap& pl = std::get<PLMap>(f);
            std::vector<PLPiece> pieces;
            for (const auto& p : pl.pieces()) {
                if (p.lo && !(*p.lo < e)) continue; // entirely above the fixed point
                std::optional<Rational> hi = p.hi && *p.hi < e ? p.hi : std::optional(e);
                // -h(f(x)) = e - f(x) on the lower side
                pieces.push_back(PLPiece{p.lo, hi, -p.slope, e - p.intercept});
            }
            pieces.push_back(PLPiece{e, std::nullopt, Rational(1), -e});
            return PLMap(g, std::move(pieces));
        }
        const TableMap& tab = std::get<TableMap>(f);
        const Rational a = g.step();
        // Above U the enumeration is affine, so h~ has slope-1 tails:
        // h~(x) = h(x) = x + o_u there, with o_u = image(U) - U.
        Rational span_pad = tab.span_hi() ? *tab.span_hi() + a : e + a;
        Rational cu_bound = Rational((tab.upper().c / (a * Rational(2))).floor() + 1) * a;
        Rational U = std::max(span_pad, cu_bound);
        Rational o_u = h.image(U) - U;
        // Lower tail: h~(x) = -h(f(x)) with f(x) = c_l - x >= U, affine.
        Rational L = std::min(tab.span_lo() ? *tab.span_lo() - a : e - a,
                              tab.lower().c - U);
        Rational o_l = -(tab.lower().c) - o_u;
        std::map<Rational, Rational> table;
        for (Rational x = L + a; x < U; x += a) {
            Rational v = (x == e || x > tab.eval(x)) ? h.image(x) : -h.image(tab.eval(x));
            table.emplace(x, v);
        }
        return TableMap(g, std::move(table), TableTail{1, o_u}, TableTail{1, o_l});
    }();
    Rational at_e = eval_value(out, e);
    if (!(at_e == Rational(0)))
        throw InvariantError("gluing failure: h~(e) = " + at_e.str() + ", expected 0");
    return out;
}

/// Everything Theorem-3.1-shaped about a normalized involution: the input
/// map, its fixed point, the half-domain order isomorphism h, the glued
/// homeomorphism h~, and the group transported along h~ (whose inversion
/// the input map is).
struct InvolutionNormalForm {
    Homeo f;
    Rational fixed_point;
    PartialOrderIso h;
    Homeo h_tilde;
    TransportedGroupH T;

    bool in_A(const Rational& x) const { return x > eval_value(f, x); }
};

struct NormalizeReport {
    InvolutionNormalForm form;
    CheckReport partition;
    CheckReport gluing;
    CheckReport claim6;
    CheckReport conjugacy;

    bool pass() const {
        return partition.pass && gluing.pass && claim6.pass && conjugacy.pass;
    }
};

/// Full normalization: f becomes the inversion of the group transported
/// along h~, verified pointwise on the window (covering the three cases
/// x in A, x in f(A), x = e).
inline NormalizeReport normalize(const Homeo& f, const GroupDescriptor& g, const Window& w) {
    detail::require_same_group(homeo_group(f), g, "normalize");
    if (!is_involution(f))
        throw PreconditionError("normalize requires an involution (f . f = id exactly)");
    PositivePart pos = positive_part(f, w);
    PartialOrderIso h = build_h(f, g);
    Homeo h_tilde = build_h_tilde(f, h);

    // Claim-5 content: h~(e) = 0 (asserted at construction), h~ agrees
    // with its two branches, is injective with A u {e} sent into [0, oo)
    // and f(A) into (-oo, 0), and order-embeds A u {e}. Dense groups also
    // need global monotonicity, or h~ would not be a homeomorphism of the
    // order topology; a discrete h~ is free to scramble.
    CheckReport gluing{"gluing"};
    {
        ++gluing.checked;
        std::set<Rational> values;
        std::optional<Rational> prev_positive;
        std::optional<Rational> prev_any;
        for (const auto& x : enumerate_values(g, w)) {
            Rational v = eval_value(h_tilde, x);
            bool in_a_or_e = x == pos.fixed_point || x > eval_value(f, x);
            Rational expected =
                in_a_or_e ? h.image(x) : -h.image(eval_value(f, x));
            ++gluing.checked;
            if (!(v == expected))
                gluing.fail({"h~ agrees with the glued branches", x, std::nullopt,
                             std::nullopt, v, expected});
            if (in_a_or_e ? v < Rational(0) : v >= Rational(0))
                gluing.fail({"h~ separates A u {e} from f(A) by sign", x, std::nullopt,
                             std::nullopt, v, expected});
            if (!values.insert(v).second)
                gluing.fail({"h~ injective on window", x, std::nullopt, std::nullopt, v, v});
            if (in_a_or_e) {
                if (prev_positive && !(v > *prev_positive))
                    gluing.fail({"h~ order-embeds A u {e}", x, std::nullopt, std::nullopt, v,
                                 *prev_positive});
                prev_positive = v;
            }
            if (g.is_dense()) {
                if (prev_any && !(v > *prev_any))
                    gluing.fail({"h~ strictly increasing on a dense group", x, std::nullopt,
                                 std::nullopt, v, *prev_any});
                prev_any = v;
            }
        }
    }

    TransportedGroupH T = transported_group(h_tilde);
    CheckReport claim6{"claim6"};
    for (const auto& x : enumerate_values(g, w)) {
        Rational lhs = T.neg_value(x);
        Rational rhs = eval_value(f, x);
        ++claim6.checked;
        if (!(lhs == rhs))
            claim6.fail({"neg_(+)(x) = f(x)", x, std::nullopt, std::nullopt, lhs, rhs});
    }
    CheckReport conj = check_conjugacy(h_tilde, f, negation_like(h_tilde), w);

    return NormalizeReport{
        InvolutionNormalForm{f, pos.fixed_point, std::move(h), h_tilde, std::move(T)},
        std::move(pos.partition), std::move(gluing), std::move(claim6), std::move(conj)};
}

// --------------------------------------------------------------------------
// Dense-case normalization through an explicit back-and-forth state.
// --------------------------------------------------------------------------

/// h~ glued over a frozen matching. Queries outside the resolved window
/// raise WindowResolutionError rather than guessing.
class GluedBackAndForth {
public:
    GluedBackAndForth(Homeo f, BackAndForthState state)
        : f_(std::move(f)), state_(std::move(state)) {}

    const GroupDescriptor& group() const { return state_.group(); }
    const BackAndForthState& state() const { return state_; }

    Rational forward(const Rational& x) const {
        const Rational& e = state_.source_min();
        if (x >= e) return lookup(x);
        return -lookup(eval_value(f_, x));
    }

    Rational backward(const Rational& y) const {
        if (y >= Rational(0)) return lookup_target(y);
        return eval_value(f_, lookup_target(-y));
    }

private:
    Rational lookup(const Rational& x) const {
        if (auto v = state_.image_if_matched(x)) return *v;
        throw WindowResolutionError("h is not resolved at " + x.str() +
                                    "; extend the window");
    }
    Rational lookup_target(const Rational& y) const {
        if (auto x = state_.source_if_matched(y)) return *x;
        throw WindowResolutionError("h^-1 is not resolved at " + y.str() +
                                    "; extend the window");
    }

    Homeo f_;
    BackAndForthState state_;
};

struct DenseNormalizeReport {
    Rational fixed_point;
    BackAndForthState state;
    TransportedGroup<GluedBackAndForth> T;
    CheckReport partition;
    CheckReport claim6;

    bool pass() const { return partition.pass && claim6.pass; }
};

/// Window-resolved normalization with h grown by back-and-forth: sources
/// are requested in ascending order over (window u f(window)) n [e, oo),
/// so reruns are byte-reproducible. Claim 6 then needs no further
/// extension, because -h~(x) is always the glued image of f(x).
inline DenseNormalizeReport normalize_back_and_forth(const Homeo& f, const GroupDescriptor& g,
                                                     const Window& w) {
    detail::require_same_group(homeo_group(f), g, "normalize_back_and_forth");
    if (!is_involution(f))
        throw PreconditionError("normalize requires an involution (f . f = id exactly)");
    PositivePart pos = positive_part(f, w);
    BackAndForthState state = build_h_state(f, g);
    std::set<Rational> sources;
    for (const auto& x : enumerate_values(g, w)) {
        if (x >= pos.fixed_point) sources.insert(x);
        Rational fx = eval_value(f, x);
        if (fx >= pos.fixed_point) sources.insert(fx);
    }
    for (const auto& x : sources) state = state.with_image(x).second;

    TransportedGroup<GluedBackAndForth> T(g, GluedBackAndForth(f, state));
    CheckReport claim6{"claim6"};
    for (const auto& x : enumerate_values(g, w)) {
        Rational lhs = T.neg_value(x);
        Rational rhs = eval_value(f, x);
        ++claim6.checked;
        if (!(lhs == rhs))
            claim6.fail({"neg_(+)(x) = f(x)", x, std::nullopt, std::nullopt, lhs, rhs});
    }
    return DenseNormalizeReport{pos.fixed_point, state, std::move(T),
                                std::move(pos.partition), std::move(claim6)};
}

} // namespace regroup
