#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>

#include "regroup/group.hpp"

namespace regroup {

/// Affine tail rule x -> dir*x + c with dir in {+1, -1}.
struct TableTail {
    int dir = 1;
    Rational c;

    Rational at(const Rational& x) const {
        return dir > 0 ? x + c : c - x;
    }
    friend bool operator==(const TableTail&, const TableTail&) = default;
};

/// Bijection of a lattice a*Z given by a finite exception table plus two
/// affine tails: the upper tail applies for x above the table span, the
/// lower tail below it. Tails are the only affine bijection germs of a
/// lattice, which keeps bijectivity decidable: the lattice points missed
/// by the two tail rays must be exactly the exception values.
///
/// Canonical form: exceptions that agree with the adjacent tail rule are
/// trimmed from both ends of the span, so equality is structural.
class TableMap {
public:
    TableMap(GroupDescriptor group, std::map<Rational, Rational> exceptions, TableTail upper,
             TableTail lower)
        : group_(std::move(group)), exceptions_(std::move(exceptions)), upper_(upper),
          lower_(lower) {
        validate_basics();
        trim();
        validate_bijection();
    }

    static TableMap affine(const GroupDescriptor& g, int dir, Rational c) {
        TableTail t{dir, std::move(c)};
        return TableMap(g, {}, t, t);
    }
    static TableMap identity(const GroupDescriptor& g) { return affine(g, 1, Rational(0)); }
    static TableMap shift(const GroupDescriptor& g, Rational c) {
        return affine(g, 1, std::move(c));
    }
    static TableMap negation(const GroupDescriptor& g) { return affine(g, -1, Rational(0)); }

    const GroupDescriptor& group() const { return group_; }
    const std::map<Rational, Rational>& exceptions() const { return exceptions_; }
    const TableTail& upper() const { return upper_; }
    const TableTail& lower() const { return lower_; }

    bool is_identity() const {
        return exceptions_.empty() && upper_ == TableTail{1, Rational(0)};
    }

    std::optional<Rational> span_lo() const {
        if (exceptions_.empty()) return std::nullopt;
        return exceptions_.begin()->first;
    }
    std::optional<Rational> span_hi() const {
        if (exceptions_.empty()) return std::nullopt;
        return exceptions_.rbegin()->first;
    }

    /// Total evaluation on the lattice.
    Rational eval(const Rational& x) const {
        if (auto it = exceptions_.find(x); it != exceptions_.end()) return it->second;
        if (exceptions_.empty()) return upper_.at(x);
        if (x > exceptions_.rbegin()->first) return upper_.at(x);
        if (x < exceptions_.begin()->first) return lower_.at(x);
        throw Error("table map span gap at " + x.str());
    }

    TableMap inverted() const {
        std::map<Rational, Rational> inv;
        for (const auto& [k, v] : exceptions_) inv.emplace(v, k);
        if (upper_.dir > 0) {
            // y = x + c inverts to y - c on the matching side.
            return TableMap(group_, std::move(inv), TableTail{1, -upper_.c},
                            TableTail{1, -lower_.c});
        }
        // y = c - x inverts to c - y; the image of the upper tail is the
        // lower end of the line and vice versa, so the tails swap.
        return TableMap(group_, std::move(inv), TableTail{-1, lower_.c},
                        TableTail{-1, upper_.c});
    }

    /// f.composed_with(g) is x -> f(g(x)).
    TableMap composed_with(const TableMap& g) const {
        detail::require_same_group(group_, g.group_, "compose");
        const Rational a = group_.step();
        const int dir_up = g.upper_.dir;   // side of f reached by g's upper tail
        TableTail comp_upper = compose_tails(dir_up > 0 ? upper_ : lower_, g.upper_);
        TableTail comp_lower = compose_tails(g.lower_.dir > 0 ? lower_ : upper_, g.lower_);
        if (exceptions_.empty() && g.exceptions_.empty()) {
            return TableMap(group_, {}, comp_upper, comp_lower);
        }
        const TableMap g_inv = g.inverted();
        std::set<Rational> marks;
        auto note_span = [&marks](const TableMap& m) {
            if (auto lo = m.span_lo()) marks.insert(*lo);
            if (auto hi = m.span_hi()) marks.insert(*hi);
        };
        note_span(g);
        if (!exceptions_.empty()) {
            marks.insert(g_inv.eval(*span_lo()));
            marks.insert(g_inv.eval(*span_hi()));
        }
        const Rational pad = a * Rational(2);
        Rational lo = *marks.begin() - pad;
        Rational hi = *marks.rbegin() + pad;
        std::map<Rational, Rational> table;
        for (Rational x = lo; x <= hi; x += a) table.emplace(x, eval(g.eval(x)));
        return TableMap(group_, std::move(table), comp_upper, comp_lower);
    }

    /// Exact monotonicity: +1 strictly increasing, -1 strictly decreasing,
    /// 0 otherwise. The finite check is decisive because the tails are
    /// affine with slope matching dir.
    int monotonicity_sign() const {
        const int d = upper_.dir;
        if (exceptions_.empty()) return d;
        const Rational a = group_.step();
        Rational x = *span_lo() - a * Rational(2);
        const Rational stop = *span_hi() + a * Rational(2);
        Rational prev = eval(x);
        for (x += a; x <= stop; x += a) {
            Rational cur = eval(x);
            if (d > 0 ? !(cur > prev) : !(cur < prev)) return 0;
            prev = cur;
        }
        return d;
    }

    friend bool operator==(const TableMap& a, const TableMap& b) {
        return a.group_ == b.group_ && a.exceptions_ == b.exceptions_ &&
               a.upper_ == b.upper_ && a.lower_ == b.lower_;
    }

    std::string str() const {
        auto tail = [](const TableTail& t) {
            std::string rule = t.dir > 0 ? "x" : "-x";
            if (t.c.sign() > 0) rule += "+" + t.c.str();
            if (t.c.sign() < 0) rule += t.c.str();
            return rule;
        };
        return "table[" + std::to_string(exceptions_.size()) + " exceptions, upper " +
               tail(upper_) + ", lower " + tail(lower_) + "]";
    }

private:
    static TableTail compose_tails(const TableTail& f, const TableTail& g) {
        // f(g(x)) with f, g affine of slope +-1.
        return TableTail{f.dir * g.dir, f.dir > 0 ? g.c + f.c : f.c - g.c};
    }

    void validate_basics() const {
        if (!group_.is_discrete())
            throw InvariantError("table maps are defined on discrete groups only");
        for (const TableTail* t : {&upper_, &lower_}) {
            if (t->dir != 1 && t->dir != -1) throw InvariantError("tail dir must be +-1");
            if (!group_.contains(t->c))
                throw InvariantError("tail offset " + t->c.str() + " outside " + group_.str());
        }
        if (upper_.dir != lower_.dir)
            throw InvariantError("tails of opposite direction cannot form a bijection "
                                 "with finitely many exceptions");
        const Rational a = group_.step();
        std::optional<Rational> expected;
        for (const auto& [k, v] : exceptions_) {
            if (!group_.contains(k) || !group_.contains(v))
                throw InvariantError("table entry " + k.str() + "->" + v.str() + " outside " +
                                     group_.str());
            if (expected && !(k == *expected))
                throw InvariantError("table keys must cover every lattice point of the span; "
                                     "missing " + expected->str());
            expected = k + a;
        }
    }

    void trim() {
        while (!exceptions_.empty()) {
            auto last = std::prev(exceptions_.end());
            if (!(last->second == upper_.at(last->first))) break;
            exceptions_.erase(last);
        }
        while (!exceptions_.empty()) {
            auto first = exceptions_.begin();
            if (!(first->second == lower_.at(first->first))) break;
            exceptions_.erase(first);
        }
    }

    void validate_bijection() const {
        if (exceptions_.empty()) {
            if (!(upper_ == lower_))
                throw InvariantError("tail rules disagree but no exceptions separate them");
            return;
        }
        const Rational a = group_.step();
        const Rational x_lo = exceptions_.begin()->first;
        const Rational x_hi = exceptions_.rbegin()->first;
        // Image rays of the two tails; ray_top covers everything above
        // gap_hi, ray_bottom everything below gap_lo.
        Rational gap_hi, gap_lo;
        if (upper_.dir > 0) {
            gap_hi = upper_.at(x_hi + a);  // first value of the ascending ray
            gap_lo = lower_.at(x_lo - a);  // last value of the descending ray
        } else {
            gap_hi = lower_.at(x_lo - a);
            gap_lo = upper_.at(x_hi + a);
        }
        const Rational n_keys((Int(exceptions_.size())));
        if (!(gap_hi - gap_lo == (n_keys + Rational(1)) * a))
            throw InvariantError("table is not a bijection: tail images leave a gap of the "
                                 "wrong size");
        std::set<Rational> values;
        for (const auto& [k, v] : exceptions_) {
            if (!(v > gap_lo && v < gap_hi))
                throw InvariantError("table value " + v.str() +
                                     " collides with a tail image ray");
            if (!values.insert(v).second)
                throw InvariantError("table values are not injective at " + v.str());
        }
    }

    GroupDescriptor group_;
    std::map<Rational, Rational> exceptions_;
    TableTail upper_;
    TableTail lower_;
};

} // namespace regroup
