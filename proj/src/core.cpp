#include "swmix/core.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace swmix {

namespace {

template <Scalar T>
bool same_value(const T& a, const T& b)
{
    if constexpr (NumTraits<T>::exact) {
        return a == b;
    } else {
        return std::fabs(a - b) <= 1e-12 * std::max({1.0, std::fabs(a), std::fabs(b)});
    }
}

// Image of the open interval (l, h) under x -> a x + b, widened outward.
template <Scalar T>
Interval<T> affine_image(const T& a, const T& b, const T& l, const T& h)
{
    T y1 = a * l + b;
    T y2 = a * h + b;
    if (y2 < y1) {
        std::swap(y1, y2);
    }
    return Interval<T>(NumTraits<T>::down(y1), NumTraits<T>::up(y2));
}

// Points x with a x + b in (c, d), widened outward.
template <Scalar T>
Interval<T> affine_preimage(const T& a, const T& b, const T& c, const T& d)
{
    T x1 = (c - b) / a;
    T x2 = (d - b) / a;
    if (x2 < x1) {
        std::swap(x1, x2);
    }
    return Interval<T>(NumTraits<T>::down(x1), NumTraits<T>::up(x2));
}

} // namespace

template <Scalar T>
PiecewiseAffineMap<T>::PiecewiseAffineMap(std::vector<AffinePiece<T>> pieces, std::optional<AffineFormula<T>> fallback,
                                          bool declared_continuous)
    : pieces_(std::move(pieces)), fallback_(std::move(fallback)), declared_continuous_(declared_continuous)
{
    if (pieces_.empty() && !fallback_) {
        throw InvalidArgument("a map needs at least one piece or a global formula");
    }
    for (const auto& p : pieces_) {
        if (!(p.lo < p.hi)) {
            throw InvalidArgument("piece domain needs lo < hi");
        }
        if (p.slope == 0) {
            throw InvalidArgument("constant pieces are not supported (slope 0)");
        }
    }
    if (fallback_ && fallback_->slope == 0) {
        throw InvalidArgument("constant pieces are not supported (slope 0)");
    }
    std::vector<const AffinePiece<T>*> sorted;
    for (const auto& p : pieces_) {
        sorted.push_back(&p);
    }
    std::sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) { return a->lo < b->lo; });
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        if (sorted[i]->lo < sorted[i - 1]->hi) {
            throw InvalidArgument("piece domains overlap");
        }
    }
    if (declared_continuous_ && !is_continuous()) {
        throw InvalidArgument("map declared continuous but pieces disagree at a shared boundary");
    }
}

template <Scalar T>
bool PiecewiseAffineMap<T>::is_continuous() const
{
    std::vector<const AffinePiece<T>*> sorted;
    for (const auto& p : pieces_) {
        sorted.push_back(&p);
    }
    std::sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) { return a->lo < b->lo; });
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const auto& p = *sorted[i];
        bool left_touch = i > 0 && sorted[i - 1]->hi == p.lo;
        bool right_touch = i + 1 < sorted.size() && sorted[i + 1]->lo == p.hi;
        if (right_touch && !same_value<T>(p(p.hi), (*sorted[i + 1])(p.hi))) {
            return false;
        }
        if (fallback_) {
            if (!left_touch && !same_value<T>(p(p.lo), (*fallback_)(p.lo))) {
                return false;
            }
            if (!right_touch && !same_value<T>(p(p.hi), (*fallback_)(p.hi))) {
                return false;
            }
        }
    }
    return true;
}

template <Scalar T>
T PiecewiseAffineMap<T>::max_abs_slope() const
{
    T best = fallback_ ? NumTraits<T>::abs(fallback_->slope) : NumTraits<T>::abs(pieces_.front().slope);
    for (const auto& p : pieces_) {
        T s = NumTraits<T>::abs(p.slope);
        if (best < s) {
            best = s;
        }
    }
    return best;
}

template <Scalar T>
T PiecewiseAffineMap<T>::min_abs_slope() const
{
    T best = fallback_ ? NumTraits<T>::abs(fallback_->slope) : NumTraits<T>::abs(pieces_.front().slope);
    for (const auto& p : pieces_) {
        T s = NumTraits<T>::abs(p.slope);
        if (s < best) {
            best = s;
        }
    }
    return best;
}

template <Scalar T>
std::optional<T> PiecewiseAffineMap<T>::try_apply(const T& x) const
{
    for (const auto& p : pieces_) {
        if (!(x < p.lo) && !(p.hi < x)) {
            return p(x);
        }
    }
    if (fallback_) {
        return (*fallback_)(x);
    }
    return std::nullopt;
}

template <Scalar T>
T PiecewiseAffineMap<T>::apply(const T& x) const
{
    auto y = try_apply(x);
    if (!y) {
        throw UndefinedAtPoint("map undefined at " + NumTraits<T>::str(x));
    }
    return *y;
}

template <Scalar T>
IntervalSet<T> PiecewiseAffineMap<T>::uncovered(const Interval<T>& iv) const
{
    std::vector<const AffinePiece<T>*> sorted;
    for (const auto& p : pieces_) {
        if (p.lo < iv.hi && iv.lo < p.hi) {
            sorted.push_back(&p);
        }
    }
    std::sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) { return a->lo < b->lo; });
    std::vector<Interval<T>> gaps;
    T cursor = iv.lo;
    for (const auto* p : sorted) {
        if (cursor < p->lo) {
            gaps.emplace_back(cursor, p->lo);
        }
        if (cursor < p->hi) {
            cursor = p->hi;
        }
    }
    if (cursor < iv.hi) {
        gaps.emplace_back(cursor, iv.hi);
    }
    return IntervalSet<T>::from_parts(std::move(gaps));
}

template <Scalar T>
IntervalSet<T> PiecewiseAffineMap<T>::image(const IntervalSet<T>& set) const
{
    return image_impl(set, true);
}

template <Scalar T>
IntervalSet<T> PiecewiseAffineMap<T>::defined_image(const IntervalSet<T>& set) const
{
    return image_impl(set, false);
}

template <Scalar T>
IntervalSet<T> PiecewiseAffineMap<T>::image_impl(const IntervalSet<T>& set, bool strict) const
{
    std::vector<Interval<T>> out;
    for (const auto& iv : set) {
        for (const auto& p : pieces_) {
            const T& l = iv.lo < p.lo ? p.lo : iv.lo;
            const T& h = p.hi < iv.hi ? p.hi : iv.hi;
            if (l < h) {
                out.push_back(affine_image(p.slope, p.offset, l, h));
            }
        }
        IntervalSet<T> rest = uncovered(iv);
        if (rest.empty()) {
            continue;
        }
        if (!fallback_) {
            if (!strict) {
                continue;
            }
            throw UndefinedOnSet("set " + rest.str() + " lies outside every piece domain");
        }
        for (const auto& g : rest) {
            out.push_back(affine_image(fallback_->slope, fallback_->offset, g.lo, g.hi));
        }
    }
    return IntervalSet<T>::from_parts(std::move(out));
}

template <Scalar T>
IntervalSet<T> PiecewiseAffineMap<T>::preimage(const IntervalSet<T>& target) const
{
    std::vector<Interval<T>> out;
    for (const auto& iv : target) {
        for (const auto& p : pieces_) {
            Interval<T> pre = affine_preimage(p.slope, p.offset, iv.lo, iv.hi);
            const T& l = pre.lo < p.lo ? p.lo : pre.lo;
            const T& h = p.hi < pre.hi ? p.hi : pre.hi;
            if (l < h) {
                out.emplace_back(l, h);
            }
        }
        if (fallback_) {
            Interval<T> pre = affine_preimage(fallback_->slope, fallback_->offset, iv.lo, iv.hi);
            for (const auto& g : uncovered(pre)) {
                out.push_back(g);
            }
        }
    }
    return IntervalSet<T>::from_parts(std::move(out));
}

template <Scalar T>
SwitchedSystem<T>::SwitchedSystem(std::vector<PiecewiseAffineMap<T>> maps, LanguageSpec language, T bounds_lo,
                                  T bounds_hi)
    : maps_(std::move(maps)),
      language_(std::move(language)),
      bounds_lo_(std::move(bounds_lo)),
      bounds_hi_(std::move(bounds_hi))
{
    if (maps_.empty() || maps_.size() > static_cast<std::size_t>(max_alphabet)) {
        throw InvalidArgument("a switched system needs between 1 and 64 maps");
    }
    if (alphabet_of(language_) != alphabet()) {
        throw InvalidArgument("language alphabet (" + std::to_string(alphabet_of(language_)) +
                              ") differs from the number of maps (" + std::to_string(alphabet()) + ")");
    }
    if (!(bounds_lo_ < bounds_hi_)) {
        throw InvalidArgument("state-space bounds need lo < hi");
    }
    Interval<T> box(bounds_lo_, bounds_hi_);
    for (std::size_t i = 0; i < maps_.size(); ++i) {
        if (!maps_[i].fallback() && !maps_[i].uncovered(box).empty()) {
            throw InvalidArgument("map " + std::to_string(i) + " is not defined on the whole bounding box");
        }
    }
    automaton_ = std::make_shared<const PrunedAutomaton>(compile(language_));
}

template <Scalar T>
SwitchedSystem<T>::SwitchedSystem(std::vector<PiecewiseAffineMap<T>> maps, T bounds_lo, T bounds_hi)
    : SwitchedSystem(maps, FullShift{static_cast<int>(maps.size())}, std::move(bounds_lo), std::move(bounds_hi))
{
}

template <Scalar T>
bool SwitchedSystem<T>::all_globally_affine() const
{
    return std::all_of(maps_.begin(), maps_.end(), [](const auto& m) { return m.globally_affine(); });
}

template <Scalar T>
bool SwitchedSystem<T>::all_continuous() const
{
    return std::all_of(maps_.begin(), maps_.end(), [](const auto& m) { return m.is_continuous(); });
}

namespace {

template <Scalar T>
void check_word(const SwitchedSystem<T>& sys, const Word& w)
{
    if (w.empty()) {
        throw InvalidArgument("words must be nonempty");
    }
    for (Symbol s : w) {
        if (s >= sys.alphabet()) {
            throw InvalidArgument("word " + w.str() + " uses a symbol outside the alphabet");
        }
    }
}

} // namespace

template <Scalar T>
T eval_point(const SwitchedSystem<T>& sys, const Word& w, const T& x)
{
    check_word(sys, w);
    T y = x;
    for (std::size_t i = 0; i < w.size(); ++i) {
        auto next = sys.map(w[i]).try_apply(y);
        if (!next) {
            throw UndefinedAtPoint("iterate " + NumTraits<T>::str(y) + " at step " + std::to_string(i) + " of word " +
                                   w.str() + " lies outside every piece");
        }
        y = std::move(*next);
    }
    return y;
}

template <Scalar T>
IntervalSet<T> eval_interval(const SwitchedSystem<T>& sys, const Word& w, const IntervalSet<T>& set)
{
    check_word(sys, w);
    IntervalSet<T> cur = set;
    for (Symbol s : w) {
        if (cur.empty()) {
            break;
        }
        cur = sys.map(s).image(cur);
    }
    return cur;
}

template <Scalar T>
IntervalSet<T> preimage(const PiecewiseAffineMap<T>& map, const IntervalSet<T>& target)
{
    return map.preimage(target);
}

template <Scalar T>
IntervalSet<T> word_preimage(const SwitchedSystem<T>& sys, const Word& w, const IntervalSet<T>& target)
{
    check_word(sys, w);
    IntervalSet<T> cur = target;
    for (std::size_t i = w.size(); i-- > 0 && !cur.empty();) {
        cur = sys.map(w[i]).preimage(cur);
    }
    return cur;
}

template <Scalar T>
Word itinerary_word(const SwitchedSystem<T>& sys, const std::vector<PartitionCell<T>>& partition, const T& x,
                    std::size_t length)
{
    Word w;
    T y = x;
    for (std::size_t step = 0; step < length; ++step) {
        auto cell = std::find_if(partition.begin(), partition.end(), [&](const auto& c) { return c.contains(y); });
        if (cell == partition.end()) {
            throw OutsidePartition("iterate " + NumTraits<T>::str(y) + " at step " + std::to_string(step) +
                                   " lies in no partition cell");
        }
        if (cell->symbol >= sys.alphabet()) {
            throw InvalidArgument("partition symbol outside the alphabet");
        }
        w.push_back(cell->symbol);
        y = sys.map(cell->symbol).apply(y);
    }
    return w;
}

template <Scalar T>
SwitchedSystem<T> tent_system(LanguageSpec language)
{
    std::vector<PiecewiseAffineMap<T>> maps{PiecewiseAffineMap<T>::affine(T(2), T(0)),
                                            PiecewiseAffineMap<T>::affine(T(-2), T(2))};
    return SwitchedSystem<T>(std::move(maps), std::move(language), T(0), T(1));
}

template <Scalar T>
PiecewiseAffineMap<T> tent_map()
{
    T half = NumTraits<T>::ratio(1, 2);
    return PiecewiseAffineMap<T>({{T(0), half, T(2), T(0)}, {half, T(1), T(-2), T(2)}}, std::nullopt, true);
}

template <Scalar T>
std::vector<PartitionCell<T>> tent_partition()
{
    T half = NumTraits<T>::ratio(1, 2);
    return {{T(0), half, true, true, 0}, {half, T(1), false, true, 1}};
}

#define SWMIX_INSTANTIATE(T)                                                                                         \
    template class PiecewiseAffineMap<T>;                                                                            \
    template class SwitchedSystem<T>;                                                                                \
    template T eval_point(const SwitchedSystem<T>&, const Word&, const T&);                                          \
    template IntervalSet<T> eval_interval(const SwitchedSystem<T>&, const Word&, const IntervalSet<T>&);             \
    template IntervalSet<T> preimage(const PiecewiseAffineMap<T>&, const IntervalSet<T>&);                           \
    template IntervalSet<T> word_preimage(const SwitchedSystem<T>&, const Word&, const IntervalSet<T>&);             \
    template Word itinerary_word(const SwitchedSystem<T>&, const std::vector<PartitionCell<T>>&, const T&,           \
                                 std::size_t);                                                                       \
    template SwitchedSystem<T> tent_system(LanguageSpec);                                                            \
    template PiecewiseAffineMap<T> tent_map();                                                                       \
    template std::vector<PartitionCell<T>> tent_partition();

SWMIX_INSTANTIATE(Rational)
SWMIX_INSTANTIATE(double)

#undef SWMIX_INSTANTIATE

} // namespace swmix
