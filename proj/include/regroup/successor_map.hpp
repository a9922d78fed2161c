#pragma once

#include <optional>
#include <string>
#include <utility>

#include "regroup/group.hpp"

namespace regroup {

/// Partition of the integers into classes that are unbounded in both
/// directions.
///
/// MAdicValuation(m, K): class n < K holds the nonzero integers of exact
/// m-adic valuation n-1, with 0 assigned to class 1 (its valuation is the
/// infinity token and the partition has to place it somewhere); the K-th
/// class absorbs all valuations >= K-1. K absent means one class per
/// valuation, unbounded.
///
/// ParityBlocks: evens (with 0) and odds.
class PartitionScheme {
public:
    enum class Kind { MAdicValuation, ParityBlocks };

    static PartitionScheme madic_valuation(Int base,
                                           std::optional<std::int64_t> levels = std::nullopt) {
        if (base < 2) throw InvariantError("partition base must be >= 2");
        if (levels && *levels < 1) throw InvariantError("partition needs at least one level");
        PartitionScheme p;
        p.kind_ = Kind::MAdicValuation;
        p.base_ = std::move(base);
        p.levels_ = levels;
        return p;
    }

    static PartitionScheme parity() {
        PartitionScheme p;
        p.kind_ = Kind::ParityBlocks;
        return p;
    }

    Kind kind() const { return kind_; }
    const Int& base() const { return base_; }
    const std::optional<std::int64_t>& levels() const { return levels_; }

    /// 1-based class index of an integer.
    std::int64_t class_of(const Int& x) const {
        if (kind_ == Kind::ParityBlocks) return x % 2 == 0 ? 1 : 2;
        if (x == 0) return 1;
        Valuation v = ::regroup::madic_valuation(Rational(x), base_);
        std::int64_t n = v.finite_value() + 1;
        if (levels_ && n > *levels_) n = *levels_;
        return n;
    }

    friend bool operator==(const PartitionScheme&, const PartitionScheme&) = default;

    std::string str() const {
        if (kind_ == Kind::ParityBlocks) return "parity";
        return "madic:" + base_.str() +
               (levels_ ? ",levels=" + std::to_string(*levels_) : "");
    }

private:
    PartitionScheme() : kind_(Kind::ParityBlocks), base_(2) {}
    Kind kind_;
    Int base_;
    std::optional<std::int64_t> levels_;
};

/// The union of the within-class successor maps of a partition scheme:
/// f(x) = min { y in class(x) : y > x }. A bijection of Z with no
/// periodic points (it strictly increases inside every class) that is not
/// monotone as soon as the scheme has more than one interleaved class.
/// Closed-form per class, so evaluation is exact for any integer.
class SchemeSuccessorMap {
public:
    explicit SchemeSuccessorMap(PartitionScheme scheme, bool inverted = false)
        : scheme_(std::move(scheme)), inverted_(inverted),
          group_(GroupDescriptor::integers()) {}

    const PartitionScheme& scheme() const { return scheme_; }
    const GroupDescriptor& group() const { return group_; }
    bool is_inverted() const { return inverted_; }

    SchemeSuccessorMap inverted_map() const {
        return SchemeSuccessorMap(scheme_, !inverted_);
    }

    Rational eval(const Rational& x) const {
        if (!x.is_integer())
            throw MembershipError(x.str() + " is not a member of " + group_.str());
        Int n = x.num();
        return Rational(inverted_ ? predecessor(n) : successor(n));
    }

    /// Scans a symmetric range for an adjacent order violation; the scheme
    /// interleaves classes near powers of the base, so for any scheme with
    /// two or more classes a witness appears well inside the default range.
    std::optional<std::pair<Int, Int>> find_order_violation() const {
        Int radius = scheme_.kind() == PartitionScheme::Kind::MAdicValuation
                         ? Int(4 * scheme_.base() * scheme_.base() * scheme_.base() + 4)
                         : Int(16);
        if (radius > 4096) radius = 4096;
        for (Int x = -radius; x < radius; ++x) {
            if (eval(Rational(x)) >= eval(Rational(x + 1))) return std::make_pair(x, x + 1);
        }
        return std::nullopt;
    }

    friend bool operator==(const SchemeSuccessorMap& a, const SchemeSuccessorMap& b) {
        return a.scheme_ == b.scheme_ && a.inverted_ == b.inverted_;
    }

    std::string str() const {
        return std::string(inverted_ ? "predecessor(" : "successor(") + scheme_.str() + ")";
    }

private:
    Int successor(const Int& x) const {
        if (scheme_.kind() == PartitionScheme::Kind::ParityBlocks) return x + 2;
        const Int& m = scheme_.base();
        const auto& levels = scheme_.levels();
        if (levels && *levels == 1) return x + 1; // single class: plain successor
        std::int64_t n = scheme_.class_of(x);
        if (n == 1) {
            // odds-like class plus 0: step until valuation-0 or zero.
            Int y = x + 1;
            while (y != 0 && y % m == 0) ++y;
            return y;
        }
        if (levels && n == *levels) {
            // absorbing class: all nonzero multiples of m^(K-1)
            Int M = detail::int_pow(m, *levels - 1);
            Int y = x + M;
            return y == 0 ? M : y;
        }
        // exact-valuation class {m^v * u : m does not divide u, u != 0}
        Int M = detail::int_pow(m, n - 1);
        Int u = x / M + 1;
        while (u == 0 || u % m == 0) ++u;
        return M * u;
    }

    Int predecessor(const Int& x) const {
        if (scheme_.kind() == PartitionScheme::Kind::ParityBlocks) return x - 2;
        const Int& m = scheme_.base();
        const auto& levels = scheme_.levels();
        if (levels && *levels == 1) return x - 1;
        std::int64_t n = scheme_.class_of(x);
        if (n == 1) {
            Int y = x - 1;
            while (y != 0 && y % m == 0) --y;
            return y;
        }
        if (levels && n == *levels) {
            Int M = detail::int_pow(m, *levels - 1);
            Int y = x - M;
            return y == 0 ? -M : y;
        }
        Int M = detail::int_pow(m, n - 1);
        Int u = x / M - 1;
        while (u == 0 || u % m == 0) --u;
        return M * u;
    }

    PartitionScheme scheme_;
    bool inverted_;
    GroupDescriptor group_;
};

} // namespace regroup
