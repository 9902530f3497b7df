// Open intervals and finite unions of open intervals.
#pragma once

#include "swmix/errors.hpp"
#include "swmix/numeric.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace swmix {

// Open interval (lo, hi) with lo < hi.
template <Scalar T>
struct Interval {
    T lo;
    T hi;

    Interval() = default;
    Interval(T l, T h) : lo(std::move(l)), hi(std::move(h))
    {
        if (!(lo < hi)) {
            throw InvalidArgument("interval needs lo < hi, got (" + NumTraits<T>::str(lo) + ", " +
                                  NumTraits<T>::str(hi) + ")");
        }
    }

    T width() const { return hi - lo; }
    T mid() const { return (lo + hi) / 2; }
    bool contains(const T& x) const { return lo < x && x < hi; }
    bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }

    friend bool operator==(const Interval&, const Interval&) = default;
};

// Open ball B(center, radius). In float mode the endpoints are rounded
// inward, so "enclosure inside ball" checks stay sound.
template <Scalar T>
Interval<T> ball(const T& center, const T& radius)
{
    return Interval<T>(NumTraits<T>::up(center - radius), NumTraits<T>::down(center + radius));
}

// Finite union of open intervals, kept sorted with pairwise disjoint
// components. Components that merely touch, like (0,1) and (1,2), stay
// separate: their shared endpoint is not in the union.
template <Scalar T>
class IntervalSet {
public:
    IntervalSet() = default;
    IntervalSet(const Interval<T>& iv) : parts_{iv} {}
    IntervalSet(T lo, T hi) : parts_{Interval<T>(std::move(lo), std::move(hi))} {}

    static IntervalSet from_parts(std::vector<Interval<T>> parts)
    {
        IntervalSet s;
        s.parts_ = std::move(parts);
        s.normalize();
        return s;
    }

    bool empty() const noexcept { return parts_.empty(); }
    std::size_t size() const noexcept { return parts_.size(); }
    const std::vector<Interval<T>>& parts() const noexcept { return parts_; }
    const Interval<T>& operator[](std::size_t i) const { return parts_[i]; }
    auto begin() const noexcept { return parts_.begin(); }
    auto end() const noexcept { return parts_.end(); }

    const T& lo() const { return parts_.front().lo; }
    const T& hi() const { return parts_.back().hi; }

    // Smallest open interval containing the set; empty stays empty.
    IntervalSet hull() const
    {
        if (empty()) {
            return {};
        }
        return IntervalSet(lo(), hi());
    }

    T measure() const
    {
        T m = 0;
        for (const auto& p : parts_) {
            m += p.width();
        }
        return m;
    }

    bool contains(const T& x) const
    {
        auto it = std::upper_bound(parts_.begin(), parts_.end(), x,
                                   [](const T& v, const Interval<T>& iv) { return v < iv.hi; });
        return it != parts_.end() && it->lo < x;
    }

    // Membership in the closure.
    bool closure_contains(const T& x) const
    {
        return std::any_of(parts_.begin(), parts_.end(),
                           [&](const Interval<T>& iv) { return iv.lo <= x && x <= iv.hi; });
    }

    // Every component lies inside a single component of `outer`.
    bool subset_of(const IntervalSet& outer) const
    {
        std::size_t j = 0;
        for (const auto& p : parts_) {
            while (j < outer.parts_.size() && outer.parts_[j].hi < p.hi) {
                ++j;
            }
            if (j == outer.parts_.size() || !outer.parts_[j].contains(p)) {
                return false;
            }
        }
        return true;
    }

    // Interior overlap wider than min_width.
    bool meets(const IntervalSet& other, const T& min_width = T(0)) const
    {
        std::size_t i = 0;
        std::size_t j = 0;
        while (i < parts_.size() && j < other.parts_.size()) {
            const auto& a = parts_[i];
            const auto& b = other.parts_[j];
            const T& l = a.lo < b.lo ? b.lo : a.lo;
            const T& h = a.hi < b.hi ? a.hi : b.hi;
            if (l < h && h - l > min_width) {
                return true;
            }
            if (a.hi < b.hi) {
                ++i;
            } else {
                ++j;
            }
        }
        return false;
    }

    IntervalSet intersect(const IntervalSet& other) const
    {
        IntervalSet out;
        std::size_t i = 0;
        std::size_t j = 0;
        while (i < parts_.size() && j < other.parts_.size()) {
            const auto& a = parts_[i];
            const auto& b = other.parts_[j];
            const T& l = a.lo < b.lo ? b.lo : a.lo;
            const T& h = a.hi < b.hi ? a.hi : b.hi;
            if (l < h) {
                out.parts_.emplace_back(l, h);
            }
            if (a.hi < b.hi) {
                ++i;
            } else {
                ++j;
            }
        }
        return out;
    }

    IntervalSet unite(const IntervalSet& other) const
    {
        std::vector<Interval<T>> all = parts_;
        all.insert(all.end(), other.parts_.begin(), other.parts_.end());
        return from_parts(std::move(all));
    }

    // Widest component; ties go to the leftmost.
    const Interval<T>& widest() const
    {
        if (empty()) {
            throw InvalidArgument("widest() of an empty interval set");
        }
        const Interval<T>* best = &parts_.front();
        for (const auto& p : parts_) {
            if (best->width() < p.width()) {
                best = &p;
            }
        }
        return *best;
    }

    std::string str() const
    {
        if (empty()) {
            return "{}";
        }
        std::string out;
        for (const auto& p : parts_) {
            if (!out.empty()) {
                out += " u ";
            }
            out += "(" + NumTraits<T>::str(p.lo) + ", " + NumTraits<T>::str(p.hi) + ")";
        }
        return out;
    }

    friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

private:
    void normalize()
    {
        std::sort(parts_.begin(), parts_.end(),
                  [](const Interval<T>& a, const Interval<T>& b) { return a.lo < b.lo; });
        std::vector<Interval<T>> merged;
        for (auto& p : parts_) {
            if (!merged.empty() && p.lo < merged.back().hi) {
                if (merged.back().hi < p.hi) {
                    merged.back().hi = p.hi;
                }
            } else {
                merged.push_back(std::move(p));
            }
        }
        parts_ = std::move(merged);
    }

    std::vector<Interval<T>> parts_;
};

} // namespace swmix
