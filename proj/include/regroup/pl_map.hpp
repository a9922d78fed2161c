#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "regroup/group.hpp"

namespace regroup {

/// One affine piece of a piecewise-linear map. A missing bound means the
/// piece is unbounded on that side.
struct PLPiece {
    std::optional<Rational> lo;
    std::optional<Rational> hi;
    Rational slope;
    Rational intercept;

    Rational at(const Rational& x) const { return slope * x + intercept; }

    friend bool operator==(const PLPiece&, const PLPiece&) = default;
};

namespace detail {
inline bool is_power_of(Int n, const Int& m) {
    if (n < 1) return false;
    while (n % m == 0) n /= m;
    return n == 1;
}
} // namespace detail

/// Strictly monotone piecewise-linear bijection of the real line whose
/// piece data is closed under the attached group, so that it restricts to
/// a homeomorphism G -> G:
///   - pieces cover R, abut without gaps, agree at shared breakpoints;
///   - all slopes share one sign;
///   - Cyclic(a): slopes +-1, intercepts and breakpoints in a*Z;
///   - MAdic(m): slopes +-m^j, intercepts and breakpoints in Z[1/m];
///   - Rationals: any nonzero rational slope.
/// Piece lists are canonical (adjacent collinear pieces merged), so
/// equality of PLMaps is structural.
class PLMap {
public:
    PLMap(GroupDescriptor group, std::vector<PLPiece> pieces)
        : group_(std::move(group)), pieces_(std::move(pieces)) {
        canonicalize();
        validate();
    }

    static PLMap affine(const GroupDescriptor& g, Rational slope, Rational intercept) {
        return PLMap(g, {PLPiece{std::nullopt, std::nullopt, std::move(slope),
                                 std::move(intercept)}});
    }
    static PLMap identity(const GroupDescriptor& g) { return affine(g, 1, 0); }
    static PLMap shift(const GroupDescriptor& g, Rational c) {
        return affine(g, 1, std::move(c));
    }
    static PLMap negation(const GroupDescriptor& g) { return affine(g, -1, 0); }

    const GroupDescriptor& group() const { return group_; }
    const std::vector<PLPiece>& pieces() const { return pieces_; }

    /// +1 for strictly increasing, -1 for strictly decreasing.
    int slope_sign() const { return pieces_.front().slope.sign(); }

    bool is_identity() const {
        return pieces_.size() == 1 && pieces_[0].slope == Rational(1) &&
               pieces_[0].intercept == Rational(0);
    }

    /// Evaluation as a total map on the reals.
    Rational eval(const Rational& x) const { return piece_at(x).at(x); }

    const PLPiece& piece_at(const Rational& x) const {
        for (const auto& p : pieces_) {
            if (!p.hi || x <= *p.hi) return p;
        }
        return pieces_.back();
    }

    PLMap inverted() const {
        std::vector<PLPiece> inv;
        inv.reserve(pieces_.size());
        const bool increasing = slope_sign() > 0;
        for (const auto& p : pieces_) {
            Rational s = Rational(1) / p.slope;
            Rational b = -p.intercept / p.slope;
            std::optional<Rational> lo_img = p.lo ? std::optional(p.at(*p.lo)) : std::nullopt;
            std::optional<Rational> hi_img = p.hi ? std::optional(p.at(*p.hi)) : std::nullopt;
            if (increasing) {
                inv.push_back(PLPiece{lo_img, hi_img, s, b});
            } else {
                inv.push_back(PLPiece{hi_img, lo_img, s, b});
            }
        }
        if (!increasing) std::reverse(inv.begin(), inv.end());
        return PLMap(group_, std::move(inv));
    }

    /// f.composed_with(g) is x -> f(g(x)).
    PLMap composed_with(const PLMap& g) const {
        detail::require_same_group(group_, g.group_, "compose");
        const PLMap g_inv = g.inverted();
        std::set<Rational> bounds;
        for (const auto& p : g.pieces_) {
            if (p.hi) bounds.insert(*p.hi);
        }
        for (const auto& p : pieces_) {
            if (p.hi) bounds.insert(g_inv.eval(*p.hi));
        }
        std::vector<Rational> cuts(bounds.begin(), bounds.end());
        std::vector<PLPiece> out;
        for (std::size_t i = 0; i <= cuts.size(); ++i) {
            std::optional<Rational> lo =
                i == 0 ? std::nullopt : std::optional(cuts[i - 1]);
            std::optional<Rational> hi =
                i == cuts.size() ? std::nullopt : std::optional(cuts[i]);
            Rational sample;
            if (lo && hi)
                sample = (*lo + *hi) / Rational(2);
            else if (lo)
                sample = *lo + Rational(1);
            else if (hi)
                sample = *hi - Rational(1);
            else
                sample = Rational(0);
            const PLPiece& pg = g.piece_at(sample);
            const PLPiece& pf = piece_at(g.eval(sample));
            out.push_back(PLPiece{lo, hi, pf.slope * pg.slope,
                                  pf.slope * pg.intercept + pf.intercept});
        }
        return PLMap(group_, std::move(out));
    }

    friend bool operator==(const PLMap& a, const PLMap& b) {
        return a.group_ == b.group_ && a.pieces_ == b.pieces_;
    }

    std::string str() const {
        std::string s = "pl[";
        for (std::size_t i = 0; i < pieces_.size(); ++i) {
            if (i) s += "; ";
            s += pieces_[i].slope.str() + "*x";
            if (!(pieces_[i].intercept == Rational(0)))
                s += (pieces_[i].intercept.sign() > 0 ? "+" : "") + pieces_[i].intercept.str();
            if (pieces_[i].hi) s += " for x<=" + pieces_[i].hi->str();
        }
        return s + "]";
    }

private:
    void canonicalize() {
        std::vector<PLPiece> merged;
        for (auto& p : pieces_) {
            bool collinear = !merged.empty() && merged.back().slope == p.slope &&
                             merged.back().intercept == p.intercept;
            bool abuts = collinear && merged.back().hi && p.lo &&
                         *merged.back().hi == *p.lo;
            if (abuts) {
                merged.back().hi = p.hi;
            } else {
                merged.push_back(p);
            }
        }
        pieces_ = std::move(merged);
    }

    void validate() const {
        if (pieces_.empty()) throw InvariantError("pl map needs at least one piece");
        if (pieces_.front().lo) throw InvariantError("first piece must be unbounded below");
        if (pieces_.back().hi) throw InvariantError("last piece must be unbounded above");
        const int sign = pieces_.front().slope.sign();
        for (std::size_t i = 0; i < pieces_.size(); ++i) {
            const auto& p = pieces_[i];
            if (p.slope.sign() == 0) throw InvariantError("pl piece with zero slope");
            if (p.slope.sign() != sign)
                throw InvariantError("pl pieces with mixed slope signs are not monotone");
            if (p.lo && p.hi && !(*p.lo < *p.hi))
                throw InvariantError("pl piece with empty interior");
            if (i + 1 < pieces_.size()) {
                const auto& q = pieces_[i + 1];
                if (!p.hi || !q.lo || !(*p.hi == *q.lo))
                    throw InvariantError("pl pieces must abut without gaps");
                if (!(p.at(*p.hi) == q.at(*q.lo)))
                    throw InvariantError("pl pieces disagree at breakpoint " + p.hi->str());
            }
            check_closure(p);
        }
    }

    void check_closure(const PLPiece& p) const {
        switch (group_.kind()) {
        case GroupKind::Cyclic: {
            if (!(p.slope == Rational(1) || p.slope == Rational(-1)))
                throw InvariantError("lattice pl map needs slope +-1, got " + p.slope.str());
            if (!group_.contains(p.intercept))
                throw InvariantError("pl intercept " + p.intercept.str() + " outside " +
                                     group_.str());
            break;
        }
        case GroupKind::MAdic: {
            const Rational a = p.slope.abs();
            const bool ok = (a.den() == 1 && detail::is_power_of(a.num(), group_.base())) ||
                            (a.num() == 1 && detail::is_power_of(a.den(), group_.base()));
            if (!ok)
                throw InvariantError("m-adic pl map needs slope +-" + group_.base().str() +
                                     "^j, got " + p.slope.str());
            if (!group_.contains(p.intercept))
                throw InvariantError("pl intercept " + p.intercept.str() + " outside " +
                                     group_.str());
            break;
        }
        case GroupKind::Rationals:
            break;
        }
        if (p.lo && !group_.contains(*p.lo))
            throw InvariantError("pl breakpoint " + p.lo->str() + " outside " + group_.str());
        if (p.hi && !group_.contains(*p.hi))
            throw InvariantError("pl breakpoint " + p.hi->str() + " outside " + group_.str());
    }

    GroupDescriptor group_;
    std::vector<PLPiece> pieces_;
};

} // namespace regroup
