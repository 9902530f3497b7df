// Finite compact subsets of the line, the Hausdorff metric and Vietoris
// basis membership.
#pragma once

#include "swmix/interval.hpp"

#include <optional>
#include <vector>

namespace swmix {

template <Scalar T>
struct ClosedInterval {
    T lo;
    T hi;   // lo <= hi; lo == hi is a point

    friend bool operator==(const ClosedInterval&, const ClosedInterval&) = default;
};

// Nonempty finite union of closed intervals and points, kept sorted with
// overlapping or touching parts merged.
template <Scalar T>
class CompactRep {
public:
    static CompactRep points(std::vector<T> pts);
    static CompactRep intervals(std::vector<ClosedInterval<T>> parts);
    static CompactRep closure(const IntervalSet<T>& set);

    const std::vector<ClosedInterval<T>>& parts() const noexcept { return parts_; }
    bool contains(const T& x) const;

    // inf over the set of |x - a|.
    T distance_to(const T& x) const;

    friend bool operator==(const CompactRep&, const CompactRep&) = default;

private:
    explicit CompactRep(std::vector<ClosedInterval<T>> parts);

    std::vector<ClosedInterval<T>> parts_;
};

// sup over a in A of d(a, B).
template <Scalar T>
T directed_distance(const CompactRep<T>& a, const CompactRep<T>& b);

template <Scalar T>
T hausdorff_distance(const CompactRep<T>& a, const CompactRep<T>& b);

// A lies in the union of the opens and meets each of them.
template <Scalar T>
bool vietoris_member(const CompactRep<T>& a, const std::vector<IntervalSet<T>>& opens);

// A radius r > 0 such that every B with d_H(A, B) < r is also a member;
// nullopt when A is not a member.
template <Scalar T>
std::optional<T> vietoris_margin(const CompactRep<T>& a, const std::vector<IntervalSet<T>>& opens);

} // namespace swmix
