#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "regroup/transport.hpp"

namespace regroup {

namespace detail {

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }
    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
    }

private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> size_;
};

} // namespace detail

/// The counterexample construction: the union of within-class successor
/// maps of a partition of Z into classes unbounded both ways.
inline Homeo example_map(const PartitionScheme& p) { return SchemeSuccessorMap(p); }

/// Orbit evidence from a finite window: union-find linking x with f(x)
/// whenever both endpoints are inside. Distinct classes are certified
/// distinct within the window only (no f-path inside the window joins
/// them); the count is evidence about the global orbit count, not proof.
struct OrbitReport {
    Window window;
    std::uint64_t orbit_count_lower_bound = 0;
    std::vector<Rational> representatives;
    std::uint64_t classes_touching_boundary = 0;

    explicit OrbitReport(Window w) : window(std::move(w)) {}
};

inline OrbitReport orbit_decomposition(const Homeo& f, const Window& w) {
    const GroupDescriptor& g = homeo_group(f);
    if (!g.is_discrete())
        throw PreconditionError("orbit decomposition runs on discrete groups");
    std::vector<Rational> xs = enumerate_values(g, w);
    auto index_of = [&xs](const Rational& v) -> std::optional<std::size_t> {
        auto it = std::lower_bound(xs.begin(), xs.end(), v);
        if (it == xs.end() || !(*it == v)) return std::nullopt;
        return static_cast<std::size_t>(it - xs.begin());
    };
    detail::UnionFind uf(xs.size());
    Homeo f_inv = invert(f);
    std::vector<bool> leaves_window(xs.size(), false);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        Rational y = eval_value(f, xs[i]);
        if (auto j = index_of(y))
            uf.unite(i, *j);
        else
            leaves_window[i] = true;
        if (!index_of(eval_value(f_inv, xs[i]))) leaves_window[i] = true;
    }
    OrbitReport rep{w};
    std::vector<std::optional<std::size_t>> root_seen(xs.size());
    std::vector<bool> root_boundary(xs.size(), false);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        std::size_t r = uf.find(i);
        if (!root_seen[r]) {
            root_seen[r] = i; // xs ascending, so first member is minimal
            rep.representatives.push_back(xs[i]);
            ++rep.orbit_count_lower_bound;
        }
        if (leaves_window[i]) root_boundary[r] = true;
    }
    for (std::size_t r = 0; r < xs.size(); ++r)
        if (root_seen[r] && root_boundary[r]) ++rep.classes_touching_boundary;
    return rep;
}

/// Searches for a periodic point: some window x with f^k(x) = x,
/// 1 <= k <= max_iter. Exact iteration, no window clipping of iterates.
inline std::optional<std::pair<Rational, std::uint64_t>>
find_periodic_point(const Homeo& f, const Window& w, std::uint64_t max_iter) {
    for (const auto& x : enumerate_values(homeo_group(f), w)) {
        Rational y = x;
        for (std::uint64_t k = 1; k <= max_iter; ++k) {
            y = eval_value(f, y);
            if (y == x) return std::make_pair(x, k);
        }
    }
    return std::nullopt;
}

enum class ObstructionVerdict { UnboundedEvidence, Bounded, Inconclusive };

inline std::string to_string(ObstructionVerdict v) {
    switch (v) {
    case ObstructionVerdict::UnboundedEvidence: return "UNBOUNDED_EVIDENCE";
    case ObstructionVerdict::Bounded: return "BOUNDED";
    case ObstructionVerdict::Inconclusive: return "INCONCLUSIVE";
    }
    return "?";
}

/// Orbit lower bounds across a growing family of windows. Window size W
/// means the lattice slice [-(W-1)*a, (W-1)*a]. Strict growth across
/// every tested window is labeled evidence of unboundedly many orbits --
/// evidence, not proof. A bound that repeats at the tail is reported as
/// the stabilized class count.
struct ObstructionReport {
    ObstructionVerdict verdict = ObstructionVerdict::Inconclusive;
    std::optional<std::uint64_t> stabilized_at;
    std::vector<std::pair<std::int64_t, std::uint64_t>> growth; // (W, lower bound)
};

inline ObstructionReport shift_obstruction(const Homeo& f,
                                           const std::vector<std::int64_t>& window_sizes) {
    const GroupDescriptor& g = homeo_group(f);
    if (!g.is_discrete())
        throw PreconditionError("shift obstruction runs on discrete groups");
    if (window_sizes.size() < 2)
        throw PreconditionError("shift obstruction needs at least two window sizes");
    for (std::size_t i = 1; i < window_sizes.size(); ++i)
        if (window_sizes[i] <= window_sizes[i - 1])
            throw PreconditionError("window sizes must be strictly increasing");
    ObstructionReport rep;
    for (auto W : window_sizes) {
        if (W < 2) throw PreconditionError("window size must be >= 2");
        Rational r = g.step() * Rational(W - 1);
        OrbitReport orb = orbit_decomposition(f, Window(-r, r));
        rep.growth.emplace_back(W, orb.orbit_count_lower_bound);
    }
    bool strictly_increasing = true;
    for (std::size_t i = 1; i < rep.growth.size(); ++i)
        strictly_increasing &= rep.growth[i].second > rep.growth[i - 1].second;
    if (strictly_increasing) {
        rep.verdict = ObstructionVerdict::UnboundedEvidence;
    } else if (rep.growth.back().second == rep.growth[rep.growth.size() - 2].second) {
        rep.verdict = ObstructionVerdict::Bounded;
        rep.stabilized_at = rep.growth.back().second;
    }
    return rep;
}

enum class ShiftConjugacyOutcome { Witness, AlreadyShift, FailedAttempt };

inline std::string to_string(ShiftConjugacyOutcome o) {
    switch (o) {
    case ShiftConjugacyOutcome::Witness: return "WITNESS";
    case ShiftConjugacyOutcome::AlreadyShift: return "ALREADY_SHIFT";
    case ShiftConjugacyOutcome::FailedAttempt: return "FAILED_ATTEMPT";
    }
    return "?";
}

struct ShiftConjugacyReport {
    ShiftConjugacyOutcome outcome = ShiftConjugacyOutcome::FailedAttempt;
    std::optional<Homeo> witness;
    std::optional<Rational> shift_c;
    CheckReport conjugacy{"conjugacy"};
    std::optional<std::uint64_t> orbit_count; // lattice case: |c/a| classes expected
    std::string detail;

    bool pass() const { return outcome != ShiftConjugacyOutcome::FailedAttempt &&
                               conjugacy.pass; }
};

namespace detail {

/// Clips the pieces of t_n to [seg_lo, seg_hi] and appends them.
inline void append_clipped(std::vector<PLPiece>& out, const PLMap& tn, const Rational& seg_lo,
                           const Rational& seg_hi) {
    for (const auto& p : tn.pieces()) {
        Rational lo = p.lo ? std::max(*p.lo, seg_lo) : seg_lo;
        Rational hi = p.hi ? std::min(*p.hi, seg_hi) : seg_hi;
        if (lo < hi) out.push_back(PLPiece{lo, hi, p.slope, p.intercept});
    }
}

} // namespace detail

/// Question-1.1 experiment. Lattice case: an increasing fixed-point-free
/// lattice bijection can only be x -> x + c, so the witness is the
/// identity. Dense PL case: fundamental-domain construction from
/// D = [x0, f(x0)): t is the identity on D and t(f^n(x)) = t(x) + n*c
/// elsewhere, assembled exactly as a PLMap over the window and verified.
inline ShiftConjugacyReport monotone_to_shift(const Homeo& f, const GroupDescriptor& g,
                                              const Window& w) {
    detail::require_same_group(homeo_group(f), g, "monotone_to_shift");
    if (monotonicity(f) != Monotonicity::StrictlyIncreasing)
        throw PreconditionError("shift conjugacy attempt requires a strictly increasing map");
    FixedPointResult fps = fixed_points(f);
    if (!fps.points.empty())
        throw PreconditionError("map has a fixed point at " + fps.points[0].value().str() +
                                "; a shift is fixed-point free");
    if (!fps.outside_group.empty())
        throw PreconditionError(
            "map changes direction around the real fixed point " +
            fps.outside_group[0].str() +
            "; f(x) - x must keep one sign for the fundamental domain to tile");

    ShiftConjugacyReport rep;
    std::vector<Rational> xs = enumerate_values(g, w);
    if (xs.empty()) throw PreconditionError("window contains no group elements");
    Rational x0 = (w.lo <= Rational(0) && Rational(0) <= w.hi) ? Rational(0) : xs.front();
    Rational c = eval_value(f, x0) - x0;

    if (g.is_discrete()) {
        // f must literally be the shift by c: +1-slope continuity (pl) or
        // the bijectivity gap count (table) leaves no other increasing
        // fixed-point-free lattice bijection.
        Homeo expected = std::holds_alternative<PLMap>(f) ? Homeo(PLMap::shift(g, c))
                                                          : Homeo(TableMap::shift(g, c));
        bool literal = true;
        if (std::holds_alternative<SchemeSuccessorMap>(f)) {
            for (const auto& x : xs) literal = literal && eval_value(f, x) == x + c;
        } else {
            literal = f == expected;
        }
        if (!literal) {
            rep.outcome = ShiftConjugacyOutcome::FailedAttempt;
            rep.detail = "increasing lattice bijection is not a uniform shift";
            return rep;
        }
        rep.outcome = ShiftConjugacyOutcome::AlreadyShift;
        rep.shift_c = c;
        rep.witness = make_identity(g);
        rep.conjugacy = check_conjugacy(*rep.witness, f, expected, w);
        OrbitReport orb = orbit_decomposition(f, w);
        rep.orbit_count = orb.orbit_count_lower_bound;
        return rep;
    }

    // Dense PL case.
    const bool flipped = c.sign() < 0;
    Homeo fu_h = flipped ? invert(f) : f;
    const PLMap& fu = std::get<PLMap>(fu_h);
    const PLMap fu_inv = fu.inverted();
    const PLMap& f_pl = std::get<PLMap>(f);
    Rational step = fu.eval(x0) - x0; // > 0
    // t must be exact wherever the check evaluates it: on the window and
    // on its image under f.
    Rational ext_lo = std::min(w.lo, f_pl.eval(w.lo)) - step - Rational(1);
    Rational ext_hi = std::max(w.hi, f_pl.eval(w.hi)) + step + Rational(1);

    constexpr int kMaxOrbitSteps = 100000;
    std::vector<Rational> cuts; // fu^n(x0) over the needed range
    Rational y = x0;
    int guard = 0;
    while (y > ext_lo) {
        y = fu_inv.eval(y);
        if (++guard > kMaxOrbitSteps) {
            rep.detail = "orbit of the base point does not reach the window bound";
            return rep;
        }
    }
    // y = fu^{n_min}(x0); walk forward collecting all iterates up to ext_hi.
    std::int64_t n_min = -guard;
    cuts.push_back(y);
    guard = 0;
    while (cuts.back() < ext_hi) {
        cuts.push_back(fu.eval(cuts.back()));
        if (++guard > kMaxOrbitSteps) {
            rep.detail = "orbit of the base point does not reach the window bound";
            return rep;
        }
    }

    std::vector<PLPiece> pieces;
    PLMap fu_inv_pow = PLMap::identity(g); // fu^{-n} for the current segment
    // Advance to n = n_min: fu^{-n_min} = fu composed |n_min| times.
    for (std::int64_t i = 0; i < -n_min; ++i) fu_inv_pow = fu_inv_pow.composed_with(fu);
    for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
        std::int64_t n = n_min + static_cast<std::int64_t>(s);
        PLMap tn = PLMap::shift(g, Rational(n) * step).composed_with(fu_inv_pow);
        detail::append_clipped(pieces, tn, cuts[s], cuts[s + 1]);
        fu_inv_pow = fu_inv_pow.composed_with(fu_inv);
    }
    if (pieces.empty()) {
        rep.detail = "empty fundamental-domain cover";
        return rep;
    }
    pieces.front().lo = std::nullopt;
    pieces.back().hi = std::nullopt;
    try {
        PLMap t(g, std::move(pieces));
        Rational c_final = flipped ? -step : step;
        rep.outcome = ShiftConjugacyOutcome::Witness;
        rep.witness = t;
        rep.shift_c = c_final;
        rep.conjugacy = check_conjugacy(t, f, PLMap::shift(g, c_final), w);
    } catch (const InvariantError& e) {
        rep.outcome = ShiftConjugacyOutcome::FailedAttempt;
        rep.detail = std::string("constructed witness left the map class: ") + e.what();
    }
    return rep;
}

} // namespace regroup
