#include "swmix/spread.hpp"

#include "swmix/errors.hpp"

#include <algorithm>
#include <future>
#include <string>

namespace swmix {

template <Scalar T>
QNet<T> build_qnet(const CompactRep<T>& q, const T& r)
{
    if (!(T(0) < r)) {
        throw InvalidArgument("net radius must be positive");
    }
    QNet<T> net;
    net.radius = r;
    for (const auto& p : q.parts()) {
        T width = p.hi - p.lo;
        if (width == T(0)) {
            net.centers.push_back(p.lo);
            continue;
        }
        // k centers at the midpoints of k equal cells: covering radius width/2k < r.
        long k = 1;
        while (!(width < 2 * r * T(k))) {
            ++k;
        }
        for (long j = 0; j < k; ++j) {
            net.centers.push_back(p.lo + width * NumTraits<T>::ratio(2 * j + 1, 2 * k));
        }
    }
    return net;
}

template <Scalar T>
bool net_covers(const QNet<T>& net, const CompactRep<T>& q)
{
    std::vector<Interval<T>> balls;
    for (const auto& c : net.centers) {
        balls.emplace_back(c - net.radius, c + net.radius);
    }
    auto all = IntervalSet<T>::from_parts(std::move(balls));
    for (const auto& p : q.parts()) {
        bool inside = std::any_of(all.begin(), all.end(),
                                  [&](const Interval<T>& c) { return c.lo < p.lo && p.hi < c.hi; });
        if (!inside) {
            return false;
        }
    }
    return true;
}

template <Scalar T>
std::size_t SpreadCertificate<T>::max_length() const
{
    std::size_t best = 0;
    for (const auto& r : rows) {
        for (const auto& w : r.words) {
            best = std::max(best, w.size());
        }
    }
    return best;
}

namespace {

// Smallest k with 1/k < eps.
template <Scalar T>
std::size_t first_length(const T& eps)
{
    std::size_t k = 1;
    while (!(T(1) < eps * T(static_cast<long>(k)))) {
        ++k;
    }
    return k;
}

// Largest 2^-j not above `limit` and strictly below eps.
template <Scalar T>
T dyadic_below(const T& limit, const T& eps)
{
    T d(1);
    while (limit < d || !(d < eps)) {
        d /= 2;
    }
    return d;
}

std::string alpha_str(const std::vector<std::size_t>& alpha)
{
    std::string s = "(";
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        s += (i ? "," : "") + std::to_string(alpha[i]);
    }
    return s + ")";
}

// Advances an odometer over {0..m-1}^n; false after the last one.
bool next_alpha(std::vector<std::size_t>& alpha, std::size_t m)
{
    for (std::size_t i = alpha.size(); i-- > 0;) {
        if (++alpha[i] < m) {
            return true;
        }
        alpha[i] = 0;
    }
    return false;
}

std::size_t table_size(std::size_t m, std::size_t n, std::size_t cap)
{
    std::size_t rows = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (rows > cap / m) {
            return cap + 1;
        }
        rows *= m;
    }
    return rows;
}

} // namespace

template <Scalar T>
SpreadCertificate<T> certify_spread(const SwitchedSystem<T>& sys, const std::vector<IntervalSet<T>>& seeds,
                                    const IntervalSet<T>& k, const T& eps, const QNet<T>& net, MixingKind kind,
                                    const SearchBudget& budget, const SpreadOptions<T>& options)
{
    if (seeds.empty() || net.centers.empty()) {
        throw InvalidArgument("certify_spread needs seeds and a nonempty net");
    }
    if (!(T(0) < eps)) {
        throw InvalidArgument("eps must be positive");
    }
    const std::size_t n = seeds.size();
    const std::size_t m = net.centers.size();
    if (table_size(m, n, options.max_rows) > options.max_rows) {
        throw TableTooLarge("table of " + std::to_string(m) + "^" + std::to_string(n) + " rows exceeds the cap of " +
                            std::to_string(options.max_rows));
    }

    std::vector<Interval<T>> w;
    for (std::size_t i = 0; i < n; ++i) {
        IntervalSet<T> start = seeds[i].intersect(k);
        if (start.empty()) {
            throw InadmissibleSeeds("seed " + std::to_string(i) + " misses K");
        }
        w.push_back(start.widest());
    }

    std::vector<IntervalSet<T>> targets;
    for (const auto& y : net.centers) {
        targets.emplace_back(ball(y, T(eps / 2)));
    }

    SpreadCertificate<T> cert;
    cert.kind = kind;
    cert.eps = eps;
    cert.net = net;
    SearchMeter meter(budget);
    const std::size_t lmin = std::max(first_length(eps), options.min_length);
    std::vector<std::size_t> alpha(n, 0);
    do {
        std::vector<IntervalSet<T>> sources;
        std::vector<IntervalSet<T>> goals;
        for (std::size_t i = 0; i < n; ++i) {
            sources.emplace_back(w[i]);
            goals.push_back(targets[alpha[i]]);
        }
        std::optional<std::vector<Word>> words;
        for (std::size_t len = lmin; len <= budget.horizon && !words && !meter.exhausted(); ++len) {
            if (kind == MixingKind::type2) {
                if (auto word = first_common_word(sys, sources, goals, len, meter, options.search)) {
                    words = std::vector<Word>(n, *word);
                }
                continue;
            }
            std::vector<Word> per;
            for (std::size_t i = 0; i < n; ++i) {
                auto word = first_common_word(sys, {sources[i]}, {goals[i]}, len, meter, options.search);
                if (!word) {
                    break;
                }
                per.push_back(*word);
            }
            if (per.size() == n) {
                words = std::move(per);
            }
        }
        if (!words) {
            throw BudgetExceeded("no word found for assignment " + alpha_str(alpha) + " after " +
                                 std::to_string(cert.rows.size()) + " rows");
        }
        // Shrink each W_i to a part that lands inside its target ball.
        for (std::size_t i = 0; i < n; ++i) {
            auto wit = set_witness(sys, (*words)[i], sources[i], goals[i]);
            w[i] = wit->source;
        }
        if (options.trail) {
            options.trail->push_back(w);
        }
        cert.rows.push_back({alpha, std::move(*words)});
    } while (next_alpha(alpha, m));

    std::optional<T> delta;
    for (const auto& wi : w) {
        cert.centers.push_back(wi.mid());
        T d = dyadic_below(T(wi.width() / 2), eps);
        if (!delta || d < *delta) {
            delta = d;
        }
    }
    cert.delta = *delta;
    return cert;
}

namespace {

template <Scalar T>
bool row_ok(const SwitchedSystem<T>& sys, const SpreadCertificate<T>& cert, const SpreadRow<T>& row)
{
    const std::size_t n = cert.centers.size();
    if (row.alpha.size() != n || row.words.size() != n) {
        return false;
    }
    for (std::size_t i = 0; i < n; ++i) {
        const Word& w = row.words[i];
        if (row.alpha[i] >= cert.net.centers.size() || w.empty() || !accepts_prefix(sys.automaton(), w)) {
            return false;
        }
        if (w.size() != row.words[0].size()) {
            return false;
        }
        if (cert.kind == MixingKind::type2 && w != row.words[0]) {
            return false;
        }
        // 1/k < eps
        if (!(T(1) < cert.eps * T(static_cast<long>(w.size())))) {
            return false;
        }
        try {
            auto img = eval_interval(sys, w, IntervalSet<T>(ball(cert.centers[i], cert.delta)));
            if (!img.subset_of(IntervalSet<T>(ball(cert.net.centers[row.alpha[i]], cert.eps)))) {
                return false;
            }
        } catch (const Error&) {
            return false;
        }
    }
    return true;
}

} // namespace

template <Scalar T>
bool verify_spread(const SwitchedSystem<T>& sys, const SpreadCertificate<T>& cert, unsigned threads)
{
    const std::size_t n = cert.centers.size();
    const std::size_t m = cert.net.centers.size();
    if (n == 0 || m == 0 || !(T(0) < cert.delta) || !(cert.delta < cert.eps)) {
        return false;
    }
    constexpr std::size_t cap = std::size_t(1) << 24;
    if (table_size(m, n, cap) != cert.rows.size()) {
        return false;
    }
    // Rows must list every assignment once, in odometer order.
    std::vector<std::size_t> alpha(n, 0);
    for (const auto& row : cert.rows) {
        if (row.alpha != alpha) {
            return false;
        }
        next_alpha(alpha, m);
    }
    threads = std::max(1U, threads);
    if (threads == 1) {
        return std::all_of(cert.rows.begin(), cert.rows.end(), [&](const auto& r) { return row_ok(sys, cert, r); });
    }
    std::vector<std::future<bool>> jobs;
    std::size_t chunk = (cert.rows.size() + threads - 1) / threads;
    for (std::size_t start = 0; start < cert.rows.size(); start += chunk) {
        std::size_t stop = std::min(cert.rows.size(), start + chunk);
        jobs.push_back(std::async(std::launch::async, [&, start, stop] {
            for (std::size_t r = start; r < stop; ++r) {
                if (!row_ok(sys, cert, cert.rows[r])) {
                    return false;
                }
            }
            return true;
        }));
    }
    bool ok = true;
    for (auto& j : jobs) {
        ok = j.get() && ok;
    }
    return ok;
}

template <Scalar T>
SpreadCertificate<T> restrict_centers(const SpreadCertificate<T>& cert, const std::vector<std::size_t>& keep)
{
    if (keep.empty()) {
        throw InvalidArgument("keep at least one center");
    }
    for (std::size_t i = 0; i < keep.size(); ++i) {
        if (keep[i] >= cert.centers.size() || (i > 0 && keep[i] <= keep[i - 1])) {
            throw InvalidArgument("kept centers must be increasing indices");
        }
    }
    SpreadCertificate<T> out;
    out.kind = cert.kind;
    out.eps = cert.eps;
    out.delta = cert.delta;
    out.net = cert.net;
    for (std::size_t i : keep) {
        out.centers.push_back(cert.centers[i]);
    }
    std::vector<std::size_t> alpha(keep.size(), 0);
    do {
        for (const auto& row : cert.rows) {
            bool match = true;
            for (std::size_t j = 0; j < keep.size() && match; ++j) {
                match = row.alpha[keep[j]] == alpha[j];
            }
            if (match) {
                SpreadRow<T> r{alpha, {}};
                for (std::size_t i : keep) {
                    r.words.push_back(row.words[i]);
                }
                out.rows.push_back(std::move(r));
                break;
            }
        }
    } while (next_alpha(alpha, cert.net.centers.size()));
    return out;
}

template <Scalar T>
SpreadChain<T> build_chain(const SwitchedSystem<T>& sys, const std::vector<IntervalSet<T>>& seeds,
                           const IntervalSet<T>& k, const CompactRep<T>& q, const std::vector<T>& eps, MixingKind kind,
                           const SearchBudget& budget, const SearchOptions<T>& search)
{
    SpreadChain<T> chain;
    std::vector<IntervalSet<T>> current = seeds;
    std::size_t min_length = 0;
    for (const T& e : eps) {
        auto net = build_qnet(q, T(e / 2));
        SpreadOptions<T> opts;
        opts.min_length = min_length;
        opts.search = search;
        auto cert = certify_spread(sys, current, k, e, net, kind, budget, opts);
        min_length = cert.max_length() + 1;
        current.clear();
        for (const auto& z : cert.centers) {
            current.emplace_back(ball(z, cert.delta));
        }
        chain.stages.push_back(std::move(cert));
    }
    return chain;
}

template <Scalar T>
XiongWitness<T> xiong_from_chain(const SwitchedSystem<T>& sys, const SpreadChain<T>& chain, const std::vector<T>& points,
                                 const std::vector<T>& h)
{
    if (points.empty() || points.size() != h.size()) {
        throw InvalidArgument("xiong_from_chain needs one target per point");
    }
    if (chain.stages.empty()) {
        throw InvalidArgument("empty chain");
    }
    // Center covering each point at each stage, if any.
    auto cover = [&](const SpreadCertificate<T>& cert, const T& a) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < cert.centers.size(); ++i) {
            if (NumTraits<T>::abs(a - cert.centers[i]) < cert.delta) {
                return i;
            }
        }
        return std::nullopt;
    };
    std::size_t first = 0;
    for (const T& a : points) {
        std::size_t s = chain.stages.size();
        while (s > 0 && cover(chain.stages[s - 1], a)) {
            --s;
        }
        if (s == chain.stages.size()) {
            throw NotCovered("point " + NumTraits<T>::str(a) + " is not strictly inside any ball of the last stage");
        }
        first = std::max(first, s);
    }

    XiongWitness<T> wit;
    wit.kind = chain.stages.front().kind;
    wit.points = points;
    wit.targets = h;
    for (std::size_t s = first; s < chain.stages.size(); ++s) {
        const auto& cert = chain.stages[s];
        const auto& net = cert.net.centers;
        std::vector<std::size_t> center(points.size());
        std::vector<std::size_t> alpha(cert.centers.size(), 0);
        std::vector<bool> fixed(cert.centers.size(), false);
        for (std::size_t p = 0; p < points.size(); ++p) {
            center[p] = *cover(cert, points[p]);
            if (fixed[center[p]]) {
                continue;
            }
            // Net center nearest to h(a) for the first point in this ball.
            std::size_t best = 0;
            for (std::size_t j = 1; j < net.size(); ++j) {
                if (NumTraits<T>::abs(net[j] - h[p]) < NumTraits<T>::abs(net[best] - h[p])) {
                    best = j;
                }
            }
            alpha[center[p]] = best;
            fixed[center[p]] = true;
        }
        auto row = std::find_if(cert.rows.begin(), cert.rows.end(), [&](const auto& r) { return r.alpha == alpha; });
        if (row == cert.rows.end()) {
            throw InvalidArgument("certificate table lacks assignment " + alpha_str(alpha));
        }
        T bound(0);
        T err(0);
        std::vector<Word> words;
        for (std::size_t p = 0; p < points.size(); ++p) {
            const Word& w = row->words[center[p]];
            words.push_back(w);
            bound = std::max(bound, T(NumTraits<T>::abs(net[alpha[center[p]]] - h[p])));
            err = std::max(err, T(NumTraits<T>::abs(eval_point(sys, w, points[p]) - h[p])));
        }
        wit.tolerances.push_back(cert.eps + bound);
        wit.lengths.push_back(words.front().size());
        wit.words.push_back(std::move(words));
        wit.errors.push_back(err);
    }
    wit.complete = true;
    return wit;
}

#define SWMIX_INSTANTIATE(T)                                                                                         \
    template QNet<T> build_qnet(const CompactRep<T>&, const T&);                                                     \
    template bool net_covers(const QNet<T>&, const CompactRep<T>&);                                                  \
    template struct SpreadCertificate<T>;                                                                            \
    template SpreadCertificate<T> certify_spread(const SwitchedSystem<T>&, const std::vector<IntervalSet<T>>&,       \
                                                 const IntervalSet<T>&, const T&, const QNet<T>&, MixingKind,        \
                                                 const SearchBudget&, const SpreadOptions<T>&);                      \
    template bool verify_spread(const SwitchedSystem<T>&, const SpreadCertificate<T>&, unsigned);                    \
    template SpreadCertificate<T> restrict_centers(const SpreadCertificate<T>&, const std::vector<std::size_t>&);    \
    template SpreadChain<T> build_chain(const SwitchedSystem<T>&, const std::vector<IntervalSet<T>>&,                \
                                        const IntervalSet<T>&, const CompactRep<T>&, const std::vector<T>&,          \
                                        MixingKind, const SearchBudget&, const SearchOptions<T>&);                   \
    template XiongWitness<T> xiong_from_chain(const SwitchedSystem<T>&, const SpreadChain<T>&,                      \
                                              const std::vector<T>&, const std::vector<T>&);

SWMIX_INSTANTIATE(Rational)
SWMIX_INSTANTIATE(double)

#undef SWMIX_INSTANTIATE

} // namespace swmix
