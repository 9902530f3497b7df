#include "swmix/chaos.hpp"

#include "swmix/errors.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace swmix {

namespace {

template <Scalar T>
T distance(const T& a, const T& b)
{
    return NumTraits<T>::abs(a - b);
}

// A Lipschitz bound is only valid across the whole line when nothing is
// left undefined between pieces.
template <Scalar T>
bool lipschitz_on_line(const PiecewiseAffineMap<T>& f)
{
    if (!f.is_continuous()) {
        return false;
    }
    if (f.fallback()) {
        return true;
    }
    auto pieces = f.pieces();
    std::sort(pieces.begin(), pieces.end(), [](const auto& a, const auto& b) { return a.lo < b.lo; });
    for (std::size_t i = 1; i < pieces.size(); ++i) {
        if (pieces[i].lo != pieces[i - 1].hi) {
            return false;
        }
    }
    return true;
}

template <Scalar T>
T power(T base, std::size_t e)
{
    T out(1);
    for (std::size_t i = 0; i < e; ++i) {
        out *= base;
    }
    return out;
}

template <Scalar T>
struct EnvelopeWalker {
    const SwitchedSystem<T>& sys;
    std::size_t horizon;
    SearchMeter& meter;
    bool prune;
    bool affine;        // distances scale by |slope| exactly
    bool lipschitz;     // distances grow by at most max |slope|
    T slope_lo{};
    T slope_hi{};
    std::vector<std::optional<EnvelopeRow<T>>> rows;
    Word word;

    bool skippable(const T& d) const
    {
        const std::size_t depth = word.size();
        for (std::size_t j = depth + 1; j <= horizon; ++j) {
            const auto& row = rows[j];
            if (!row) {
                return false;
            }
            T lower = affine ? d * power(slope_lo, j - depth) : T(0);
            if (lower < row->d_min) {
                return false;
            }
            if (!affine && !lipschitz) {
                return false;
            }
            if (row->d_max < d * power(slope_hi, j - depth)) {
                return false;
            }
        }
        return true;
    }

    void record(const T& d)
    {
        auto& row = rows[word.size()];
        if (!row) {
            row = EnvelopeRow<T>{word.size(), d, d, word, word, word, word};
            return;
        }
        if (d < row->d_min) {
            row->d_min = d;
            row->min_x = row->min_y = word;
        }
        if (row->d_max < d) {
            row->d_max = d;
            row->max_x = row->max_y = word;
        }
    }

    void visit(int state, const T& fx, const T& fy)
    {
        if (!meter.tick()) {
            return;
        }
        T d = distance(fx, fy);
        if (!word.empty()) {
            record(d);
        }
        if (word.size() == horizon || (prune && !word.empty() && skippable(d))) {
            return;
        }
        const auto& aut = sys.automaton();
        for (int s = 0; s < aut.alphabet() && !meter.exhausted(); ++s) {
            int r = aut.next(state, static_cast<Symbol>(s));
            if (r == PrunedAutomaton::none) {
                continue;
            }
            auto gx = sys.map(static_cast<Symbol>(s)).try_apply(fx);
            auto gy = sys.map(static_cast<Symbol>(s)).try_apply(fy);
            if (!gx || !gy) {
                continue;
            }
            word.push_back(static_cast<Symbol>(s));
            visit(r, *gx, *gy);
            word.pop_back();
        }
    }
};

template <Scalar T>
struct LevelNode {
    T value;
    int state;
    Word word;
};

// Images of x under every admissible word of the next length, one per
// (state, value), keeping the lexicographically smallest word.
template <Scalar T>
std::vector<LevelNode<T>> next_level(const SwitchedSystem<T>& sys, const std::vector<LevelNode<T>>& level,
                                     SearchMeter& meter)
{
    std::map<std::pair<int, T>, Word> seen;
    const auto& aut = sys.automaton();
    for (const auto& node : level) {
        for (int s = 0; s < aut.alphabet(); ++s) {
            int r = aut.next(node.state, static_cast<Symbol>(s));
            if (r == PrunedAutomaton::none) {
                continue;
            }
            auto v = sys.map(static_cast<Symbol>(s)).try_apply(node.value);
            if (!v) {
                continue;
            }
            if (!meter.tick()) {
                return {};
            }
            Word w = node.word;
            w.push_back(static_cast<Symbol>(s));
            auto [it, fresh] = seen.try_emplace({r, *v}, w);
            if (!fresh && w < it->second) {
                it->second = std::move(w);
            }
        }
    }
    std::vector<LevelNode<T>> out;
    out.reserve(seen.size());
    for (auto& [key, w] : seen) {
        out.push_back({key.second, key.first, std::move(w)});
    }
    return out;
}

template <Scalar T>
bool pair_less(const Word& a1, const Word& b1, const Word& a2, const Word& b2)
{
    return a1 < a2 || (a1 == a2 && b1 < b2);
}

template <Scalar T>
EnvelopeRow<T> cross_row(std::size_t length, std::vector<LevelNode<T>> xs, std::vector<LevelNode<T>> ys)
{
    auto by_value = [](const LevelNode<T>& a, const LevelNode<T>& b) {
        return a.value < b.value || (a.value == b.value && a.word < b.word);
    };
    std::sort(xs.begin(), xs.end(), by_value);
    std::sort(ys.begin(), ys.end(), by_value);

    EnvelopeRow<T> row;
    row.length = length;
    bool have = false;
    auto offer = [&](const LevelNode<T>& a, const LevelNode<T>& b) {
        T d = distance(a.value, b.value);
        if (!have || d < row.d_min || (d == row.d_min && pair_less<T>(a.word, b.word, row.min_x, row.min_y))) {
            row.d_min = d;
            row.min_x = a.word;
            row.min_y = b.word;
            have = true;
        }
    };
    // Nearest y on each side of every x; equal values sit first by word.
    for (const auto& a : xs) {
        auto it = std::lower_bound(ys.begin(), ys.end(), a.value,
                                   [](const LevelNode<T>& n, const T& v) { return n.value < v; });
        if (it != ys.end()) {
            offer(a, *it);
        }
        if (it != ys.begin()) {
            auto prev = std::prev(it);
            auto first = std::lower_bound(ys.begin(), ys.end(), prev->value,
                                          [](const LevelNode<T>& n, const T& v) { return n.value < v; });
            offer(a, *first);
        }
    }

    // Farthest pair uses the extremes; ties resolved by word order.
    auto lowest = [](const std::vector<LevelNode<T>>& v) { return v.front(); };
    auto highest = [](const std::vector<LevelNode<T>>& v) {
        auto it = std::lower_bound(v.begin(), v.end(), v.back().value,
                                   [](const LevelNode<T>& n, const T& val) { return n.value < val; });
        return *it;
    };
    LevelNode<T> a1 = highest(xs), b1 = lowest(ys), a2 = lowest(xs), b2 = highest(ys);
    T d1 = distance(a1.value, b1.value);
    T d2 = distance(a2.value, b2.value);
    if (d2 < d1 || (d1 == d2 && pair_less<T>(a1.word, b1.word, a2.word, b2.word))) {
        row.d_max = d1;
        row.max_x = a1.word;
        row.max_y = b1.word;
    } else {
        row.d_max = d2;
        row.max_x = a2.word;
        row.max_y = b2.word;
    }
    return row;
}

} // namespace

template <Scalar T>
DistanceEnvelope<T> distance_envelope(const SwitchedSystem<T>& sys, const T& x, const T& y, MixingKind kind,
                                      std::size_t horizon, const SearchBudget& budget, bool prune)
{
    if (x == y) {
        throw InvalidArgument("distance_envelope needs x != y");
    }
    if (horizon < 1) {
        throw InvalidArgument("horizon must be at least 1");
    }
    DistanceEnvelope<T> env;
    env.kind = kind;
    env.x = x;
    env.y = y;
    SearchMeter meter(budget);

    if (kind == MixingKind::type2) {
        EnvelopeWalker<T> walker{sys, horizon, meter, prune, sys.all_globally_affine(), false, T(0), T(0), {}, {}};
        walker.lipschitz = std::all_of(sys.maps().begin(), sys.maps().end(),
                                       [](const auto& f) { return lipschitz_on_line(f); });
        walker.slope_lo = sys.map(0).min_abs_slope();
        walker.slope_hi = sys.map(0).max_abs_slope();
        for (const auto& f : sys.maps()) {
            walker.slope_lo = std::min(walker.slope_lo, f.min_abs_slope());
            walker.slope_hi = std::max(walker.slope_hi, f.max_abs_slope());
        }
        walker.rows.resize(horizon + 1);
        walker.visit(sys.automaton().start(), x, y);
        for (std::size_t i = 1; i <= horizon; ++i) {
            if (!walker.rows[i]) {
                break;
            }
            env.rows.push_back(*walker.rows[i]);
        }
    } else {
        int start = sys.automaton().start();
        std::vector<LevelNode<T>> xs{{x, start, {}}};
        std::vector<LevelNode<T>> ys{{y, start, {}}};
        for (std::size_t i = 1; i <= horizon; ++i) {
            xs = next_level(sys, xs, meter);
            ys = next_level(sys, ys, meter);
            if (meter.exhausted() || xs.empty() || ys.empty()) {
                break;
            }
            env.rows.push_back(cross_row<T>(i, xs, ys));
        }
    }
    env.nodes = meter.nodes();
    env.exhausted = !meter.exhausted() && env.rows.size() == horizon;
    return env;
}

template <Scalar T>
std::string envelope_csv(const DistanceEnvelope<T>& env)
{
    std::ostringstream out;
    out << "length,d_min,d_max,word_min,word_max\n";
    auto pair_str = [&](const Word& a, const Word& b) {
        return env.kind == MixingKind::type2 ? a.str() : a.str() + "|" + b.str();
    };
    for (const auto& r : env.rows) {
        out << r.length << ',' << NumTraits<T>::str(r.d_min) << ',' << NumTraits<T>::str(r.d_max) << ','
            << pair_str(r.min_x, r.min_y) << ',' << pair_str(r.max_x, r.max_y) << '\n';
    }
    return out.str();
}

const char* verdict_name(Verdict v)
{
    switch (v) {
    case Verdict::supported:
        return "supported";
    case Verdict::refuted_at_horizon:
        return "refuted-at-horizon";
    default:
        return "inconclusive";
    }
}

template <Scalar T>
ScrambledVerdict<T> scrambled_verdict(const DistanceEnvelope<T>& env, const T& eps_prox, const T& eps_div,
                                      std::size_t k)
{
    if (env.rows.empty()) {
        throw InvalidArgument("scrambled_verdict needs a nonempty envelope");
    }
    ScrambledVerdict<T> v;
    v.eps_prox = eps_prox;
    v.eps_div = eps_div;
    v.k = k;
    v.proximality = env.rows.front().d_min;
    v.divergence = env.rows.front().d_max;
    for (const auto& r : env.rows) {
        v.proximality = std::min(v.proximality, r.d_min);
        v.divergence = std::max(v.divergence, r.d_max);
        v.proximal_lengths += r.d_min < eps_prox ? 1 : 0;
        v.divergent_lengths += eps_div < r.d_max ? 1 : 0;
    }
    if (v.proximal_lengths >= k && v.divergent_lengths >= k) {
        v.verdict = Verdict::supported;
    } else if (v.proximal_lengths == 0 || v.divergent_lengths == 0) {
        v.verdict = Verdict::refuted_at_horizon;
    } else {
        v.verdict = Verdict::inconclusive;
    }
    return v;
}

namespace {

template <Scalar T>
struct PointWalker {
    const SwitchedSystem<T>& sys;
    const std::vector<IntervalSet<T>>& goals;
    const std::vector<BackwardHulls<T>>& hulls;
    const SearchOptions<T>& options;
    std::size_t length;
    SearchMeter& meter;
    Word word;

    bool visit(int state, const std::vector<T>& pts)
    {
        if (!meter.tick()) {
            return false;
        }
        std::size_t rem = length - word.size();
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (rem == 0) {
                if (!goals[i].contains(pts[i])) {
                    return false;
                }
            } else if (options.prune && !hulls[i].at(rem, state).closure_contains(pts[i])) {
                return false;
            }
        }
        if (rem == 0) {
            return true;
        }
        const auto& aut = sys.automaton();
        std::vector<T> next(pts.size());
        for (int s = 0; s < aut.alphabet(); ++s) {
            int r = aut.next(state, static_cast<Symbol>(s));
            if (r == PrunedAutomaton::none) {
                continue;
            }
            bool alive = true;
            for (std::size_t i = 0; i < pts.size() && alive; ++i) {
                auto v = sys.map(static_cast<Symbol>(s)).try_apply(pts[i]);
                alive = v.has_value() && (!options.kill_box || options.kill_box->contains(*v));
                if (alive) {
                    next[i] = *v;
                }
            }
            if (!alive) {
                continue;
            }
            word.push_back(static_cast<Symbol>(s));
            if (visit(r, next)) {
                return true;
            }
            word.pop_back();
            if (meter.exhausted()) {
                return false;
            }
        }
        return false;
    }
};

template <Scalar T>
std::optional<Word> word_for_points(const SwitchedSystem<T>& sys, const std::vector<T>& pts,
                                    const std::vector<IntervalSet<T>>& goals, const std::vector<BackwardHulls<T>>& hulls,
                                    std::size_t length, SearchMeter& meter, const SearchOptions<T>& options)
{
    PointWalker<T> walker{sys, goals, hulls, options, length, meter, {}};
    if (walker.visit(sys.automaton().start(), pts)) {
        return walker.word;
    }
    return std::nullopt;
}

} // namespace

template <Scalar T>
XiongWitness<T> xiong_witness(const SwitchedSystem<T>& sys, const std::vector<T>& points, const std::vector<T>& targets,
                              MixingKind kind, const std::vector<T>& tolerances, const SearchBudget& budget,
                              const IntervalSet<T>& q, const SearchOptions<T>& options)
{
    if (points.empty() || points.size() != targets.size()) {
        throw InvalidArgument("xiong_witness needs one target per point");
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            if (points[i] == points[j]) {
                throw InvalidArgument("xiong_witness needs distinct points");
            }
        }
    }
    for (std::size_t i = 0; i < tolerances.size(); ++i) {
        if (!(T(0) < tolerances[i]) || (i > 0 && !(tolerances[i] < tolerances[i - 1]))) {
            throw InvalidArgument("tolerance schedule must be positive and strictly decreasing");
        }
    }

    XiongWitness<T> wit;
    wit.kind = kind;
    wit.points = points;
    wit.targets = targets;
    wit.tolerances = tolerances;
    SearchMeter meter(budget);
    std::size_t last = 0;
    for (const T& eps : tolerances) {
        std::vector<IntervalSet<T>> goals;
        std::vector<BackwardHulls<T>> hulls;
        for (const T& g : targets) {
            IntervalSet<T> ball_set(Interval<T>(g - eps, g + eps));
            goals.push_back(q.empty() ? ball_set : ball_set.intersect(q));
            hulls.emplace_back(sys, goals.back(), budget.horizon);
        }
        std::optional<std::vector<Word>> found;
        for (std::size_t len = last + 1; len <= budget.horizon && !found && !meter.exhausted(); ++len) {
            if (kind == MixingKind::type2) {
                if (auto w = word_for_points(sys, points, goals, hulls, len, meter, options)) {
                    found = std::vector<Word>(points.size(), *w);
                }
            } else {
                std::vector<Word> per;
                for (std::size_t i = 0; i < points.size(); ++i) {
                    auto w = word_for_points(sys, {points[i]}, {goals[i]}, {hulls[i]}, len, meter, options);
                    if (!w) {
                        break;
                    }
                    per.push_back(*w);
                }
                if (per.size() == points.size()) {
                    found = std::move(per);
                }
            }
            if (found) {
                last = len;
            }
        }
        if (!found) {
            break;
        }
        T err(0);
        for (std::size_t i = 0; i < points.size(); ++i) {
            err = std::max(err, distance(eval_point(sys, (*found)[i], points[i]), targets[i]));
        }
        wit.lengths.push_back(last);
        wit.words.push_back(std::move(*found));
        wit.errors.push_back(err);
    }
    wit.complete = wit.lengths.size() == tolerances.size();
    wit.nodes = meter.nodes();
    return wit;
}

template <Scalar T>
bool verify_xiong(const SwitchedSystem<T>& sys, const XiongWitness<T>& wit)
{
    if (wit.words.size() != wit.lengths.size() || wit.errors.size() != wit.lengths.size() ||
        wit.lengths.size() > wit.tolerances.size()) {
        return false;
    }
    for (std::size_t s = 0; s < wit.lengths.size(); ++s) {
        if (s > 0 && wit.lengths[s] <= wit.lengths[s - 1]) {
            return false;
        }
        if (wit.words[s].size() != wit.points.size()) {
            return false;
        }
        T err(0);
        for (std::size_t i = 0; i < wit.points.size(); ++i) {
            const Word& w = wit.words[s][i];
            if (w.size() != wit.lengths[s] || !accepts_prefix(sys.automaton(), w)) {
                return false;
            }
            if (wit.kind == MixingKind::type2 && w != wit.words[s][0]) {
                return false;
            }
            try {
                err = std::max(err, distance(eval_point(sys, w, wit.points[i]), wit.targets[i]));
            } catch (const UndefinedAtPoint&) {
                return false;
            }
        }
        if (err != wit.errors[s] || !(err < wit.tolerances[s])) {
            return false;
        }
    }
    return true;
}

#define SWMIX_INSTANTIATE(T)                                                                                         \
    template DistanceEnvelope<T> distance_envelope(const SwitchedSystem<T>&, const T&, const T&, MixingKind,         \
                                                   std::size_t, const SearchBudget&, bool);                          \
    template std::string envelope_csv(const DistanceEnvelope<T>&);                                                   \
    template ScrambledVerdict<T> scrambled_verdict(const DistanceEnvelope<T>&, const T&, const T&, std::size_t);     \
    template XiongWitness<T> xiong_witness(const SwitchedSystem<T>&, const std::vector<T>&, const std::vector<T>&,   \
                                           MixingKind, const std::vector<T>&, const SearchBudget&,                   \
                                           const IntervalSet<T>&, const SearchOptions<T>&);                          \
    template bool verify_xiong(const SwitchedSystem<T>&, const XiongWitness<T>&);

SWMIX_INSTANTIATE(Rational)
SWMIX_INSTANTIATE(double)

#undef SWMIX_INSTANTIATE

} // namespace swmix
