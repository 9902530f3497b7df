// Switched systems of piecewise-affine maps and word-indexed evaluation.
#pragma once

#include "swmix/interval.hpp"
#include "swmix/language.hpp"
#include "swmix/word.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace swmix {

// x -> slope * x + offset on the closed domain [lo, hi].
template <Scalar T>
struct AffinePiece {
    T lo;
    T hi;
    T slope;
    T offset;

    T operator()(const T& x) const { return slope * x + offset; }
};

// Affine formula valid on the whole line.
template <Scalar T>
struct AffineFormula {
    T slope;
    T offset;

    T operator()(const T& x) const { return slope * x + offset; }
};

// A finite family of affine pieces on closed domains with disjoint interiors,
// plus an optional formula applied everywhere outside the pieces. Point
// evaluation at a shared endpoint uses the first piece in list order. Set
// images are computed on piece interiors, so they are exact up to the
// finitely many breakpoints (harmless for open-set questions).
template <Scalar T>
class PiecewiseAffineMap {
public:
    PiecewiseAffineMap(std::vector<AffinePiece<T>> pieces, std::optional<AffineFormula<T>> fallback = std::nullopt,
                       bool declared_continuous = false);

    static PiecewiseAffineMap affine(T slope, T offset)
    {
        return PiecewiseAffineMap({}, AffineFormula<T>{std::move(slope), std::move(offset)});
    }

    const std::vector<AffinePiece<T>>& pieces() const noexcept { return pieces_; }
    const std::optional<AffineFormula<T>>& fallback() const noexcept { return fallback_; }
    bool declared_continuous() const noexcept { return declared_continuous_; }

    // A single affine formula on all of R.
    bool globally_affine() const noexcept { return pieces_.empty() && fallback_.has_value(); }

    // Adjacent pieces (and the fallback at piece boundaries) agree.
    bool is_continuous() const;

    // Largest |slope|; a Lipschitz constant when the map is continuous.
    T max_abs_slope() const;
    T min_abs_slope() const;

    std::optional<T> try_apply(const T& x) const;
    T apply(const T& x) const;

    // Image of an open set. Float mode returns an outer enclosure.
    // Throws UndefinedOnSet if part of the set lies outside every piece.
    IntervalSet<T> image(const IntervalSet<T>& set) const;

    // Image of the part of the set where the map is defined.
    IntervalSet<T> defined_image(const IntervalSet<T>& set) const;

    // Points of the open set `target` pulled back through the map,
    // restricted to piece interiors. Float mode returns an outer enclosure.
    IntervalSet<T> preimage(const IntervalSet<T>& target) const;

    // Part of the open interval not covered by any piece domain.
    IntervalSet<T> uncovered(const Interval<T>& iv) const;

private:
    IntervalSet<T> image_impl(const IntervalSet<T>& set, bool strict) const;

    std::vector<AffinePiece<T>> pieces_;
    std::optional<AffineFormula<T>> fallback_;
    bool declared_continuous_;
};

template <Scalar T>
class SwitchedSystem {
public:
    SwitchedSystem(std::vector<PiecewiseAffineMap<T>> maps, LanguageSpec language, T bounds_lo, T bounds_hi);

    // Unconstrained switching among the given maps.
    SwitchedSystem(std::vector<PiecewiseAffineMap<T>> maps, T bounds_lo, T bounds_hi);

    int alphabet() const noexcept { return static_cast<int>(maps_.size()); }
    const PiecewiseAffineMap<T>& map(Symbol s) const { return maps_.at(s); }
    const std::vector<PiecewiseAffineMap<T>>& maps() const noexcept { return maps_; }
    const LanguageSpec& language() const noexcept { return language_; }
    const PrunedAutomaton& automaton() const noexcept { return *automaton_; }
    const T& bounds_lo() const noexcept { return bounds_lo_; }
    const T& bounds_hi() const noexcept { return bounds_hi_; }

    bool all_globally_affine() const;
    bool all_continuous() const;

private:
    std::vector<PiecewiseAffineMap<T>> maps_;
    LanguageSpec language_;
    std::shared_ptr<const PrunedAutomaton> automaton_;
    T bounds_lo_;
    T bounds_hi_;
};

// f_{w}(x) with w[0] applied first. Throws UndefinedAtPoint.
template <Scalar T>
T eval_point(const SwitchedSystem<T>& sys, const Word& w, const T& x);

// Image of an open set under f_w. Throws UndefinedOnSet.
template <Scalar T>
IntervalSet<T> eval_interval(const SwitchedSystem<T>& sys, const Word& w, const IntervalSet<T>& set);

template <Scalar T>
IntervalSet<T> preimage(const PiecewiseAffineMap<T>& map, const IntervalSet<T>& target);

// f_w^{-1}(target): per-symbol preimages in reverse application order.
template <Scalar T>
IntervalSet<T> word_preimage(const SwitchedSystem<T>& sys, const Word& w, const IntervalSet<T>& target);

// One cell of a symbolic partition; each end may be open or closed.
template <Scalar T>
struct PartitionCell {
    T lo;
    T hi;
    bool lo_closed = true;
    bool hi_closed = true;
    Symbol symbol = 0;

    bool contains(const T& x) const
    {
        bool above = lo_closed ? !(x < lo) : lo < x;
        bool below = hi_closed ? !(hi < x) : x < hi;
        return above && below;
    }
};

// Symbols of the cells visited by x, T(x), ..., for `length` steps, where
// the next iterate is produced by the map of the current symbol. The first
// matching cell wins. Throws OutsidePartition.
template <Scalar T>
Word itinerary_word(const SwitchedSystem<T>& sys, const std::vector<PartitionCell<T>>& partition, const T& x,
                    std::size_t length);

// The running example: maps 2x and 2-2x on the line, full shift on {0,1}.
template <Scalar T>
SwitchedSystem<T> tent_system(LanguageSpec language = FullShift{2});

// The tent map itself as one piecewise map on [0,1].
template <Scalar T>
PiecewiseAffineMap<T> tent_map();

// {[0,1/2] -> 0, (1/2,1] -> 1}.
template <Scalar T>
std::vector<PartitionCell<T>> tent_partition();

} // namespace swmix
