#include "swmix/geometry.hpp"

#include "swmix/errors.hpp"

#include <algorithm>

namespace swmix {

template <Scalar T>
CompactRep<T>::CompactRep(std::vector<ClosedInterval<T>> parts)
{
    if (parts.empty()) {
        throw InvalidArgument("a compact set must be nonempty");
    }
    for (const auto& p : parts) {
        if (p.hi < p.lo) {
            throw InvalidArgument("closed interval needs lo <= hi");
        }
    }
    std::sort(parts.begin(), parts.end(), [](const auto& a, const auto& b) { return a.lo < b.lo; });
    for (auto& p : parts) {
        if (!parts_.empty() && !(parts_.back().hi < p.lo)) {
            parts_.back().hi = std::max(parts_.back().hi, p.hi);
        } else {
            parts_.push_back(std::move(p));
        }
    }
}

template <Scalar T>
CompactRep<T> CompactRep<T>::points(std::vector<T> pts)
{
    std::vector<ClosedInterval<T>> parts;
    for (auto& x : pts) {
        parts.push_back({x, x});
    }
    return CompactRep(std::move(parts));
}

template <Scalar T>
CompactRep<T> CompactRep<T>::intervals(std::vector<ClosedInterval<T>> parts)
{
    return CompactRep(std::move(parts));
}

template <Scalar T>
CompactRep<T> CompactRep<T>::closure(const IntervalSet<T>& set)
{
    std::vector<ClosedInterval<T>> parts;
    for (const auto& iv : set) {
        parts.push_back({iv.lo, iv.hi});
    }
    return CompactRep(std::move(parts));
}

template <Scalar T>
bool CompactRep<T>::contains(const T& x) const
{
    return distance_to(x) == T(0);
}

template <Scalar T>
T CompactRep<T>::distance_to(const T& x) const
{
    // First part whose right end is not left of x.
    auto it = std::lower_bound(parts_.begin(), parts_.end(), x,
                               [](const ClosedInterval<T>& p, const T& v) { return p.hi < v; });
    std::optional<T> best;
    if (it != parts_.end()) {
        best = x < it->lo ? T(it->lo - x) : T(0);
    }
    if (it != parts_.begin()) {
        T left = x - std::prev(it)->hi;
        if (!best || left < *best) {
            best = left;
        }
    }
    return *best;
}

template <Scalar T>
T directed_distance(const CompactRep<T>& a, const CompactRep<T>& b)
{
    // d(., B) is piecewise linear on each part of A; its maxima sit at the
    // part ends or at midpoints of B's gaps.
    T best(0);
    auto offer = [&](const T& x) {
        T d = b.distance_to(x);
        if (best < d) {
            best = d;
        }
    };
    const auto& bp = b.parts();
    for (const auto& p : a.parts()) {
        offer(p.lo);
        offer(p.hi);
        for (std::size_t k = 0; k + 1 < bp.size(); ++k) {
            T mid = (bp[k].hi + bp[k + 1].lo) / 2;
            if (p.lo < mid && mid < p.hi) {
                offer(mid);
            }
        }
    }
    return best;
}

template <Scalar T>
T hausdorff_distance(const CompactRep<T>& a, const CompactRep<T>& b)
{
    return std::max(directed_distance(a, b), directed_distance(b, a));
}

namespace {

template <Scalar T>
IntervalSet<T> union_of(const std::vector<IntervalSet<T>>& opens)
{
    IntervalSet<T> all;
    for (const auto& o : opens) {
        all = all.unite(o);
    }
    return all;
}

// How far A reaches into the open set: the largest min-distance to the
// boundary over points of A inside it, or nullopt if A misses it.
template <Scalar T>
std::optional<T> depth_inside(const CompactRep<T>& a, const IntervalSet<T>& open)
{
    std::optional<T> best;
    for (const auto& c : open) {
        for (const auto& p : a.parts()) {
            if (!(p.lo < c.hi) || !(c.lo < p.hi || c.contains(p.lo))) {
                continue;
            }
            T l = std::max(p.lo, c.lo);
            T h = std::min(p.hi, c.hi);
            T x = std::clamp(c.mid(), l, h);
            T d = std::min(T(x - c.lo), T(c.hi - x));
            if (!best || *best < d) {
                best = d;
            }
        }
    }
    return best;
}

} // namespace

template <Scalar T>
std::optional<T> vietoris_margin(const CompactRep<T>& a, const std::vector<IntervalSet<T>>& opens)
{
    if (opens.empty()) {
        throw InvalidArgument("a Vietoris basis element needs at least one open set");
    }
    IntervalSet<T> all = union_of(opens);
    std::optional<T> margin;
    auto lower = [&](const T& v) {
        if (!margin || v < *margin) {
            margin = v;
        }
    };
    for (const auto& p : a.parts()) {
        auto it = std::find_if(all.begin(), all.end(), [&](const Interval<T>& c) { return c.lo < p.lo && p.hi < c.hi; });
        if (it == all.end()) {
            return std::nullopt;
        }
        lower(std::min(T(p.lo - it->lo), T(it->hi - p.hi)));
    }
    for (const auto& o : opens) {
        auto d = depth_inside(a, o);
        if (!d) {
            return std::nullopt;
        }
        lower(*d);
    }
    return margin;
}

template <Scalar T>
bool vietoris_member(const CompactRep<T>& a, const std::vector<IntervalSet<T>>& opens)
{
    return vietoris_margin(a, opens).has_value();
}

#define SWMIX_INSTANTIATE(T)                                                                                         \
    template class CompactRep<T>;                                                                                    \
    template T directed_distance(const CompactRep<T>&, const CompactRep<T>&);                                        \
    template T hausdorff_distance(const CompactRep<T>&, const CompactRep<T>&);                                       \
    template bool vietoris_member(const CompactRep<T>&, const std::vector<IntervalSet<T>>&);                         \
    template std::optional<T> vietoris_margin(const CompactRep<T>&, const std::vector<IntervalSet<T>>&);

SWMIX_INSTANTIATE(Rational)
SWMIX_INSTANTIATE(double)

#undef SWMIX_INSTANTIATE

} // namespace swmix
