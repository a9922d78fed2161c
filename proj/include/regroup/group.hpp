#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "regroup/errors.hpp"
#include "regroup/rational.hpp"

namespace regroup {

enum class GroupKind { Cyclic, MAdic, Rationals };

/// A computable subgroup of the reals:
///   Cyclic(a)  = a*Z, a > 0 rational (discrete lattice),
///   MAdic(m)   = Z[1/m], m >= 2 (dense),
///   Rationals  = Q (dense).
class GroupDescriptor {
public:
    static GroupDescriptor cyclic(Rational step) {
        if (step.sign() <= 0) throw InvariantError("cyclic step must be > 0, got " + step.str());
        GroupDescriptor g;
        g.kind_ = GroupKind::Cyclic;
        g.step_ = std::move(step);
        return g;
    }

    static GroupDescriptor madic(Int base) {
        if (base < 2) throw InvariantError("m-adic base must be >= 2, got " + base.str());
        GroupDescriptor g;
        g.kind_ = GroupKind::MAdic;
        g.base_ = std::move(base);
        return g;
    }

    static GroupDescriptor rationals() {
        GroupDescriptor g;
        g.kind_ = GroupKind::Rationals;
        return g;
    }

    static GroupDescriptor integers() { return cyclic(Rational(1)); }

    GroupKind kind() const { return kind_; }
    bool is_dense() const { return kind_ != GroupKind::Cyclic; }
    bool is_discrete() const { return kind_ == GroupKind::Cyclic; }

    const Rational& step() const {
        if (kind_ != GroupKind::Cyclic) throw Error("step() on non-cyclic group");
        return step_;
    }
    const Int& base() const {
        if (kind_ != GroupKind::MAdic) throw Error("base() on non-m-adic group");
        return base_;
    }

    /// Exact membership test.
    bool contains(const Rational& q) const {
        switch (kind_) {
        case GroupKind::Cyclic:
            return (q / step_).is_integer();
        case GroupKind::MAdic:
            return divides_some_power(q.den(), base_);
        case GroupKind::Rationals:
            return true;
        }
        return false;
    }

    friend bool operator==(const GroupDescriptor& a, const GroupDescriptor& b) {
        if (a.kind_ != b.kind_) return false;
        switch (a.kind_) {
        case GroupKind::Cyclic: return a.step_ == b.step_;
        case GroupKind::MAdic: return a.base_ == b.base_;
        case GroupKind::Rationals: return true;
        }
        return false;
    }

    std::string str() const {
        switch (kind_) {
        case GroupKind::Cyclic: return "cyclic(" + step_.str() + ")";
        case GroupKind::MAdic: return "madic(" + base_.str() + ")";
        case GroupKind::Rationals: return "rationals";
        }
        return "?";
    }

private:
    GroupDescriptor() : kind_(GroupKind::Rationals), step_(1), base_(0) {}

    GroupKind kind_;
    Rational step_;
    Int base_;
};

/// A rational certified at construction to belong to its group.
class GroupElement {
public:
    GroupElement(Rational value, GroupDescriptor group)
        : value_(std::move(value)), group_(std::move(group)) {
        if (!group_.contains(value_))
            throw MembershipError(value_.str() + " is not a member of " + group_.str());
    }

    /// For results whose membership is guaranteed by a closure invariant.
    static GroupElement trusted(Rational value, GroupDescriptor group) {
        GroupElement e;
        e.value_ = std::move(value);
        e.group_ = std::move(group);
        return e;
    }

    const Rational& value() const { return value_; }
    const GroupDescriptor& group() const { return group_; }

    friend bool operator==(const GroupElement& a, const GroupElement& b) {
        return a.group_ == b.group_ && a.value_ == b.value_;
    }

private:
    GroupElement() : group_(GroupDescriptor::rationals()) {}
    Rational value_;
    GroupDescriptor group_;
};

/// Finite slice of a group: [lo, hi], plus a resolution bound for dense
/// groups. For MAdic(m) the bound k admits denominators dividing m^k;
/// for the rationals it is a plain maximum denominator.
struct Window {
    Rational lo;
    Rational hi;
    std::optional<std::int64_t> denom_bound;

    Window(Rational l, Rational h, std::optional<std::int64_t> bound = std::nullopt)
        : lo(std::move(l)), hi(std::move(h)), denom_bound(bound) {
        if (lo > hi) throw InvariantError("window lo > hi");
        if (denom_bound && *denom_bound < 1)
            throw InvariantError("window denominator bound must be >= 1");
    }
};

namespace detail {
inline void require_same_group(const GroupDescriptor& a, const GroupDescriptor& b,
                               const char* what) {
    if (!(a == b))
        throw DescriptorMismatchError(std::string(what) + ": " + a.str() + " vs " + b.str());
}

inline Int int_pow(const Int& base, std::int64_t k) {
    Int r = 1;
    for (std::int64_t i = 0; i < k; ++i) r *= base;
    return r;
}
} // namespace detail

/// All members of g in [w.lo, w.hi] respecting the resolution bound,
/// strictly increasing. Deterministic: rerunning yields the same list.
inline std::vector<GroupElement> enumerate_window(const GroupDescriptor& g, const Window& w) {
    std::vector<GroupElement> out;
    switch (g.kind()) {
    case GroupKind::Cyclic: {
        const Rational& a = g.step();
        Int k = (w.lo / a).ceil();
        Int k_hi = (w.hi / a).floor();
        for (; k <= k_hi; ++k) out.push_back(GroupElement::trusted(Rational(k) * a, g));
        break;
    }
    case GroupKind::MAdic: {
        if (!w.denom_bound)
            throw PreconditionError("window on a dense group requires a denominator bound");
        Int scale = detail::int_pow(g.base(), *w.denom_bound);
        Int j = (w.lo * Rational(scale)).ceil();
        Int j_hi = (w.hi * Rational(scale)).floor();
        for (; j <= j_hi; ++j) out.push_back(GroupElement::trusted(Rational(j, scale), g));
        break;
    }
    case GroupKind::Rationals: {
        if (!w.denom_bound)
            throw PreconditionError("window on a dense group requires a denominator bound");
        std::set<Rational> seen;
        for (std::int64_t q = 1; q <= *w.denom_bound; ++q) {
            Int p = (w.lo * Rational(q)).ceil();
            Int p_hi = (w.hi * Rational(q)).floor();
            for (; p <= p_hi; ++p) seen.insert(Rational(p, Int(q)));
        }
        for (const auto& r : seen) out.push_back(GroupElement::trusted(r, g));
        break;
    }
    }
    return out;
}

/// Convenience: the plain rational values of enumerate_window.
inline std::vector<Rational> enumerate_values(const GroupDescriptor& g, const Window& w) {
    std::vector<Rational> out;
    for (auto& e : enumerate_window(g, w)) out.push_back(e.value());
    return out;
}

inline GroupElement native_add(const GroupElement& x, const GroupElement& y) {
    detail::require_same_group(x.group(), y.group(), "native_add");
    return GroupElement::trusted(x.value() + y.value(), x.group());
}

inline GroupElement native_neg(const GroupElement& x) {
    return GroupElement::trusted(-x.value(), x.group());
}

inline GroupElement neutral(const GroupDescriptor& g) {
    return GroupElement::trusted(Rational(0), g);
}

} // namespace regroup
