#include "swmix/hitting.hpp"

#include "swmix/errors.hpp"

#include <algorithm>
#include <future>
#include <limits>

namespace swmix {

SearchMeter::SearchMeter(const SearchBudget& budget) : max_nodes_(budget.max_nodes)
{
    auto span = std::chrono::duration<double>(budget.seconds);
    deadline_ = std::chrono::steady_clock::now() + std::chrono::duration_cast<std::chrono::steady_clock::duration>(span);
}

bool SearchMeter::tick()
{
    if (spent_) {
        return false;
    }
    ++nodes_;
    if (nodes_ > max_nodes_ || ((nodes_ & 1023U) == 0 && std::chrono::steady_clock::now() > deadline_)) {
        spent_ = true;
    }
    return !spent_;
}

double van_der_corput(std::size_t i)
{
    double v = 0.0;
    double f = 0.5;
    for (; i > 0; i >>= 1U, f *= 0.5) {
        if (i & 1U) {
            v += f;
        }
    }
    return v;
}

template <Scalar T>
BackwardHulls<T>::BackwardHulls(const SwitchedSystem<T>& sys, const IntervalSet<T>& target, std::size_t horizon)
{
    const auto& aut = sys.automaton();
    const auto states = static_cast<std::size_t>(aut.states());
    table_.assign(horizon + 1, std::vector<IntervalSet<T>>(states));
    for (auto& cell : table_[0]) {
        cell = target;
    }
    for (std::size_t k = 1; k <= horizon; ++k) {
        for (std::size_t q = 0; q < states; ++q) {
            IntervalSet<T> acc;
            for (int s = 0; s < aut.alphabet(); ++s) {
                int r = aut.next(static_cast<int>(q), static_cast<Symbol>(s));
                if (r == PrunedAutomaton::none) {
                    continue;
                }
                const auto& later = table_[k - 1][static_cast<std::size_t>(r)];
                if (!later.empty()) {
                    acc = acc.unite(sys.map(static_cast<Symbol>(s)).preimage(later));
                }
            }
            table_[k][q] = acc.hull();
        }
    }
}

namespace {

template <Scalar T>
std::optional<IntervalSet<T>> safe_image(const SwitchedSystem<T>& sys, const Word& w, const IntervalSet<T>& set)
{
    try {
        return eval_interval(sys, w, set);
    } catch (const UndefinedOnSet&) {
        return std::nullopt;
    }
}

template <Scalar T>
bool inside_kill_box(const IntervalSet<T>& img, const SearchOptions<T>& options)
{
    if (!options.kill_box || img.empty()) {
        return true;
    }
    return IntervalSet<T>(*options.kill_box).meets(img) && !(img.lo() < options.kill_box->lo) &&
           !(options.kill_box->hi < img.hi());
}

// Can some continuation of 1..max_rem more symbols from `state` still hit?
template <Scalar T>
bool may_reach(const BackwardHulls<T>& hulls, const IntervalSet<T>& img, int state, std::size_t min_rem,
               std::size_t max_rem)
{
    for (std::size_t r = min_rem; r <= max_rem; ++r) {
        if (img.meets(hulls.at(r, state))) {
            return true;
        }
    }
    return false;
}

} // namespace

template <Scalar T>
std::optional<HitWitness<T>> set_witness(const SwitchedSystem<T>& sys, const Word& w, const IntervalSet<T>& from,
                                         const IntervalSet<T>& to, const T& min_overlap)
{
    if (w.empty() || !accepts_prefix(sys.automaton(), w)) {
        return std::nullopt;
    }
    IntervalSet<T> pre = word_preimage(sys, w, to).intersect(from);
    if (pre.empty()) {
        return std::nullopt;
    }
    Interval<T> src = pre.widest();
    for (int attempt = 0; attempt < 40; ++attempt) {
        auto img = safe_image(sys, w, IntervalSet<T>(src));
        if (img && !img->empty() && img->subset_of(to) && min_overlap < img->measure()) {
            return HitWitness<T>{w, WitnessKind::set, src, src.mid()};
        }
        if constexpr (NumTraits<T>::exact) {
            return std::nullopt;
        } else {
            T cut = src.width() / 8;
            if (!(src.lo + cut < src.hi - cut)) {
                return std::nullopt;
            }
            src = Interval<T>(src.lo + cut, src.hi - cut);
        }
    }
    return std::nullopt;
}

template <Scalar T>
bool verify_witness(const SwitchedSystem<T>& sys, const HitWitness<T>& wit, const IntervalSet<T>& from,
                    const IntervalSet<T>& to)
{
    if (wit.word.empty() || !accepts_prefix(sys.automaton(), wit.word)) {
        return false;
    }
    if (wit.kind == WitnessKind::point) {
        if (!from.contains(wit.point)) {
            return false;
        }
        try {
            return to.contains(eval_point(sys, wit.word, wit.point));
        } catch (const UndefinedAtPoint&) {
            return false;
        }
    }
    if (!IntervalSet<T>(wit.source).subset_of(from)) {
        return false;
    }
    auto img = safe_image(sys, wit.word, IntervalSet<T>(wit.source));
    return img && !img->empty() && img->subset_of(to);
}

template <Scalar T>
std::optional<HitWitness<T>> point_witness(const SwitchedSystem<T>& sys, const Word& w, const IntervalSet<T>& from,
                                           const IntervalSet<T>& to, std::size_t samples)
{
    if (from.empty() || w.empty() || !accepts_prefix(sys.automaton(), w)) {
        return std::nullopt;
    }
    for (std::size_t i = 1; i <= samples; ++i) {
        const auto& part = from[i % from.size()];
        T x = part.lo + part.width() * NumTraits<T>::from_double(van_der_corput(i));
        if (!part.contains(x)) {
            continue;
        }
        try {
            if (to.contains(eval_point(sys, w, x))) {
                return HitWitness<T>{w, WitnessKind::point, Interval<T>(part), x};
            }
        } catch (const UndefinedAtPoint&) {
        }
    }
    return std::nullopt;
}

template <Scalar T>
bool hits(const SwitchedSystem<T>& sys, const Word& w, const IntervalSet<T>& from, const IntervalSet<T>& to)
{
    return set_witness(sys, w, from, to).has_value();
}

namespace {

// Walks every admissible word up to the horizon below one subtree root.
template <Scalar T>
struct HitWalker {
    const SwitchedSystem<T>& sys;
    const IntervalSet<T>& from;
    const IntervalSet<T>& to;
    const BackwardHulls<T>* hulls;
    const SearchOptions<T>& options;
    std::size_t horizon;
    SearchMeter meter;
    std::vector<HitWitness<T>> found;
    Word word;

    void visit(int state, const IntervalSet<T>& img)
    {
        if (!meter.tick()) {
            return;
        }
        if (img.meets(to, options.min_overlap)) {
            if (auto wit = set_witness(sys, word, from, to, options.min_overlap)) {
                found.push_back(std::move(*wit));
            }
        }
        if (word.size() == horizon) {
            return;
        }
        if (hulls && !may_reach(*hulls, img, state, 1, horizon - word.size())) {
            return;
        }
        descend(state, img);
    }

    void descend(int state, const IntervalSet<T>& img)
    {
        const auto& aut = sys.automaton();
        for (int s = 0; s < aut.alphabet() && !meter.exhausted(); ++s) {
            int r = aut.next(state, static_cast<Symbol>(s));
            if (r == PrunedAutomaton::none) {
                continue;
            }
            IntervalSet<T> next = sys.map(static_cast<Symbol>(s)).defined_image(img);
            if (next.empty() || !inside_kill_box(next, options)) {
                continue;
            }
            word.push_back(static_cast<Symbol>(s));
            visit(r, next);
            word.pop_back();
        }
    }
};

} // namespace

template <Scalar T>
HittingReport<T> hitting_sets(const SwitchedSystem<T>& sys, const IntervalSet<T>& from, const IntervalSet<T>& to,
                              const SearchBudget& budget, const SearchOptions<T>& options)
{
    if (from.empty() || to.empty()) {
        throw InvalidArgument("hitting_sets needs nonempty U and V");
    }
    if (budget.horizon < 1) {
        throw InvalidArgument("horizon must be at least 1");
    }
    std::optional<BackwardHulls<T>> hulls;
    if (options.prune) {
        hulls.emplace(sys, to, budget.horizon);
    }
    const auto& aut = sys.automaton();
    const BackwardHulls<T>* hp = hulls ? &*hulls : nullptr;

    // One walker per first symbol; run them concurrently if asked.
    std::vector<int> roots;
    for (int s = 0; s < aut.alphabet(); ++s) {
        if (aut.next(aut.start(), static_cast<Symbol>(s)) != PrunedAutomaton::none) {
            roots.push_back(s);
        }
    }
    SearchBudget share = budget;
    unsigned threads = std::max(1U, options.threads);
    auto run_root = [&](int s) {
        HitWalker<T> walker{sys, from, to, hp, options, budget.horizon, SearchMeter(share), {}, {}};
        IntervalSet<T> img = sys.map(static_cast<Symbol>(s)).defined_image(from);
        if (!img.empty() && inside_kill_box(img, options)) {
            walker.word.push_back(static_cast<Symbol>(s));
            walker.visit(aut.next(aut.start(), static_cast<Symbol>(s)), img);
        }
        return walker;
    };

    HittingReport<T> report;
    report.horizon = budget.horizon;
    report.exhausted = true;
    std::vector<HitWalker<T>> done;
    if (threads == 1 || roots.size() < 2) {
        // Serial: the node budget is shared across roots.
        SearchMeter meter(budget);
        for (int s : roots) {
            HitWalker<T> walker{sys, from, to, hp, options, budget.horizon, meter, {}, {}};
            IntervalSet<T> img = sys.map(static_cast<Symbol>(s)).defined_image(from);
            if (!img.empty() && inside_kill_box(img, options)) {
                walker.word.push_back(static_cast<Symbol>(s));
                walker.visit(aut.next(aut.start(), static_cast<Symbol>(s)), img);
            }
            meter = walker.meter;
            done.push_back(std::move(walker));
            if (meter.exhausted()) {
                break;
            }
        }
        report.nodes = meter.nodes();
        report.exhausted = !meter.exhausted() && done.size() == roots.size();
    } else {
        share.max_nodes = std::max<std::size_t>(1, budget.max_nodes / roots.size());
        std::vector<std::future<HitWalker<T>>> jobs;
        for (std::size_t i = 0; i < roots.size(); ++i) {
            jobs.push_back(std::async(std::launch::async, run_root, roots[i]));
            if (jobs.size() >= threads) {
                done.push_back(jobs.front().get());
                jobs.erase(jobs.begin());
            }
        }
        for (auto& j : jobs) {
            done.push_back(j.get());
        }
        for (const auto& w : done) {
            report.nodes += w.meter.nodes();
            report.exhausted = report.exhausted && !w.meter.exhausted();
        }
    }
    for (auto& w : done) {
        for (auto& wit : w.found) {
            report.type2.push_back(std::move(wit));
        }
    }
    std::sort(report.type2.begin(), report.type2.end(),
              [](const HitWitness<T>& a, const HitWitness<T>& b) { return shortlex_less(a.word, b.word); });
    for (const auto& wit : report.type2) {
        if (report.type1.empty() || report.type1.back() != wit.word.size()) {
            report.type1.push_back(wit.word.size());
        }
    }
    return report;
}

namespace {

template <Scalar T>
struct CommonWalker {
    const SwitchedSystem<T>& sys;
    const std::vector<IntervalSet<T>>& sources;
    const std::vector<IntervalSet<T>>& targets;
    const std::vector<BackwardHulls<T>>& hulls;
    const SearchOptions<T>& options;
    std::size_t length;
    SearchMeter& meter;
    Word word;

    bool leaf()
    {
        for (std::size_t i = 0; i < sources.size(); ++i) {
            if (!set_witness(sys, word, sources[i], targets[i], options.min_overlap)) {
                return false;
            }
        }
        return true;
    }

    bool visit(int state, const std::vector<IntervalSet<T>>& imgs)
    {
        if (!meter.tick()) {
            return false;
        }
        std::size_t rem = length - word.size();
        for (std::size_t i = 0; i < imgs.size(); ++i) {
            const IntervalSet<T>& goal = options.prune ? hulls[i].at(rem, state) : targets[i];
            // Widths shrink under pullback, so min_overlap only applies at the leaf.
            if ((options.prune || rem == 0) && !imgs[i].meets(goal, rem == 0 ? options.min_overlap : T(0))) {
                return false;
            }
        }
        if (rem == 0) {
            return leaf();
        }
        const auto& aut = sys.automaton();
        for (int s = 0; s < aut.alphabet(); ++s) {
            int r = aut.next(state, static_cast<Symbol>(s));
            if (r == PrunedAutomaton::none) {
                continue;
            }
            std::vector<IntervalSet<T>> next;
            next.reserve(imgs.size());
            bool alive = true;
            for (const auto& img : imgs) {
                next.push_back(sys.map(static_cast<Symbol>(s)).defined_image(img));
                alive = alive && !next.back().empty() && inside_kill_box(next.back(), options);
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

} // namespace

template <Scalar T>
std::optional<Word> first_common_word(const SwitchedSystem<T>& sys, const std::vector<IntervalSet<T>>& sources,
                                      const std::vector<IntervalSet<T>>& targets, std::size_t length,
                                      SearchMeter& meter, const SearchOptions<T>& options)
{
    if (sources.size() != targets.size() || sources.empty()) {
        throw InvalidArgument("first_common_word needs matching nonempty source and target lists");
    }
    if (length < 1) {
        throw InvalidArgument("word length must be at least 1");
    }
    std::vector<BackwardHulls<T>> hulls;
    if (options.prune) {
        for (const auto& t : targets) {
            hulls.emplace_back(sys, t, length);
        }
    }
    CommonWalker<T> walker{sys, sources, targets, hulls, options, length, meter, {}};
    if (walker.visit(sys.automaton().start(), sources)) {
        return walker.word;
    }
    return std::nullopt;
}

template <Scalar T>
WMCertificate<T> wm_certificate(const SwitchedSystem<T>& sys, const IntervalSet<T>& k, const IntervalSet<T>& q,
                                const std::vector<OpenPair<T>>& pairs, MixingKind kind, const SearchBudget& budget,
                                const SearchOptions<T>& options)
{
    if (pairs.empty()) {
        throw InvalidArgument("a certificate needs at least one pair");
    }
    std::vector<IntervalSet<T>> sources;
    std::vector<IntervalSet<T>> targets;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        IntervalSet<T> ku = k.intersect(pairs[i].u);
        if (ku.empty()) {
            throw InadmissiblePair("pair " + std::to_string(i) + ": U misses K");
        }
        if (q.intersect(pairs[i].v).empty()) {
            throw InadmissiblePair("pair " + std::to_string(i) + ": V misses Q");
        }
        sources.push_back(std::move(ku));
        targets.push_back(pairs[i].v);
    }

    WMCertificate<T> cert;
    cert.kind = kind;
    cert.k = k;
    cert.q = q;
    cert.pairs = pairs;
    SearchMeter meter(budget);
    for (std::size_t n = 1; n <= budget.horizon && cert.found() < budget.required && !meter.exhausted(); ++n) {
        if (kind == MixingKind::type2) {
            auto w = first_common_word(sys, sources, targets, n, meter, options);
            if (!w) {
                continue;
            }
            cert.words.push_back(*w);
            for (std::size_t i = 0; i < pairs.size(); ++i) {
                auto wit = set_witness(sys, *w, sources[i], targets[i], options.min_overlap);
                cert.witnesses.push_back({i, *w, wit->source});
            }
        } else {
            std::vector<PairWitness<T>> row;
            for (std::size_t i = 0; i < pairs.size(); ++i) {
                auto w = first_common_word(sys, {sources[i]}, {targets[i]}, n, meter, options);
                if (!w) {
                    break;
                }
                auto wit = set_witness(sys, *w, sources[i], targets[i], options.min_overlap);
                row.push_back({i, *w, wit->source});
            }
            if (row.size() == pairs.size()) {
                cert.lengths.push_back(n);
                cert.witnesses.insert(cert.witnesses.end(), row.begin(), row.end());
            }
        }
    }
    cert.exhausted = cert.found() >= budget.required;
    cert.nodes = meter.nodes();
    return cert;
}

template <Scalar T>
bool verify_certificate(const SwitchedSystem<T>& sys, const WMCertificate<T>& cert)
{
    const std::size_t n = cert.pairs.size();
    if (n == 0) {
        return false;
    }
    std::vector<IntervalSet<T>> sources;
    for (const auto& p : cert.pairs) {
        IntervalSet<T> ku = cert.k.intersect(p.u);
        if (ku.empty() || cert.q.intersect(p.v).empty()) {
            return false;
        }
        sources.push_back(std::move(ku));
    }
    auto check = [&](const PairWitness<T>& pw) {
        if (pw.pair >= n) {
            return false;
        }
        HitWitness<T> hw{pw.word, WitnessKind::set, pw.source, pw.source.mid()};
        return verify_witness(sys, hw, sources[pw.pair], cert.pairs[pw.pair].v);
    };
    if (!std::all_of(cert.witnesses.begin(), cert.witnesses.end(), check)) {
        return false;
    }
    // Every element of S must be covered for every pair.
    auto covered = [&](auto match) {
        std::vector<bool> seen(n, false);
        for (const auto& pw : cert.witnesses) {
            if (match(pw)) {
                seen[pw.pair] = true;
            }
        }
        return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
    };
    if (cert.kind == MixingKind::type1) {
        for (std::size_t i = 0; i < cert.lengths.size(); ++i) {
            if (i > 0 && cert.lengths[i] <= cert.lengths[i - 1]) {
                return false;
            }
            std::size_t len = cert.lengths[i];
            if (!covered([&](const PairWitness<T>& pw) { return pw.word.size() == len; })) {
                return false;
            }
        }
        return true;
    }
    for (std::size_t i = 0; i < cert.words.size(); ++i) {
        if (i > 0 && cert.words[i].size() <= cert.words[i - 1].size()) {
            return false;
        }
        const Word& w = cert.words[i];
        if (!covered([&](const PairWitness<T>& pw) { return pw.word == w; })) {
            return false;
        }
    }
    return true;
}

template <Scalar T>
WMCertificate<T> as_type1(const WMCertificate<T>& cert)
{
    WMCertificate<T> out = cert;
    if (cert.kind == MixingKind::type1) {
        return out;
    }
    out.kind = MixingKind::type1;
    out.lengths.clear();
    for (const auto& w : cert.words) {
        out.lengths.push_back(w.size());
    }
    out.words.clear();
    return out;
}

template <Scalar T>
bool commutes_on_samples(const SwitchedSystem<T>& sys, std::size_t samples)
{
    const T& lo = sys.bounds_lo();
    const T width = sys.bounds_hi() - lo;
    for (std::size_t k = 0; k <= samples; ++k) {
        T x = lo + width * NumTraits<T>::from_double(k == 0 ? 0.0 : van_der_corput(k));
        for (int i = 0; i < sys.alphabet(); ++i) {
            for (int j = i + 1; j < sys.alphabet(); ++j) {
                auto a = static_cast<Symbol>(i);
                auto b = static_cast<Symbol>(j);
                std::optional<T> ab;
                std::optional<T> ba;
                if (auto y = sys.map(a).try_apply(x)) {
                    ab = sys.map(b).try_apply(*y);
                }
                if (auto y = sys.map(b).try_apply(x)) {
                    ba = sys.map(a).try_apply(*y);
                }
                if (ab.has_value() != ba.has_value()) {
                    return false;
                }
                if (!ab) {
                    continue;
                }
                T diff = NumTraits<T>::abs(*ab - *ba);
                if constexpr (NumTraits<T>::exact) {
                    if (diff != 0) {
                        return false;
                    }
                } else if (diff > 1e-9 * std::max(1.0, std::fabs(*ab))) {
                    return false;
                }
            }
        }
    }
    return true;
}

template <Scalar T>
RefinedPair<T> order_reduction(const SwitchedSystem<T>& sys, const IntervalSet<T>& u1, const IntervalSet<T>& u2,
                               const IntervalSet<T>& v1, const IntervalSet<T>& v2, const Word& s,
                               bool caller_asserts_commuting)
{
    if (!caller_asserts_commuting && !commutes_on_samples(sys)) {
        throw PreconditionFailed("the map family does not commute on the sample points");
    }
    if (!hits(sys, s, u1, u2) || !hits(sys, s, v1, v2)) {
        throw PreconditionFailed("word " + s.str() + " is not a common hitting word");
    }
    RefinedPair<T> out{u1.intersect(word_preimage(sys, s, u2)), v1.intersect(word_preimage(sys, s, v2))};
    if (out.u.empty() || out.v.empty()) {
        throw EmptyRefinement("refined pair is empty");
    }
    return out;
}

template <Scalar T>
Word extend_witness(const SwitchedSystem<T>& sys, const IntervalSet<T>& u, const IntervalSet<T>& v, const Word& s,
                    const SearchBudget& budget, const SearchOptions<T>& options)
{
    if (!hits(sys, s, u, v)) {
        throw PreconditionFailed("word " + s.str() + " does not hit (U, V)");
    }
    IntervalSet<T> goal = word_preimage(sys, s, v).intersect(u);
    const auto& aut = sys.automaton();
    SearchMeter meter(budget);
    for (std::size_t n = 1; n <= budget.horizon && !meter.exhausted(); ++n) {
        auto w = first_common_word(sys, {u}, {goal}, n, meter, options);
        if (!w) {
            continue;
        }
        if (Word ws = *w + s; hits(sys, ws, u, v)) {
            return ws;
        }
        // w + s left the language; fall back to a plain scan of this length.
        for (auto stream = enumerate_words(aut, n); auto cand = stream.next();) {
            if (!meter.tick()) {
                break;
            }
            Word cs = *cand + s;
            if (hits(sys, *cand, u, goal) && hits(sys, cs, u, v)) {
                return cs;
            }
        }
    }
    throw BudgetExceeded("no extension of " + s.str() + " found within the budget");
}

#define SWMIX_INSTANTIATE(T)                                                                                         \
    template class BackwardHulls<T>;                                                                                 \
    template std::optional<HitWitness<T>> set_witness(const SwitchedSystem<T>&, const Word&, const IntervalSet<T>&,  \
                                                      const IntervalSet<T>&, const T&);                              \
    template bool verify_witness(const SwitchedSystem<T>&, const HitWitness<T>&, const IntervalSet<T>&,             \
                                 const IntervalSet<T>&);                                                             \
    template std::optional<HitWitness<T>> point_witness(const SwitchedSystem<T>&, const Word&,                      \
                                                        const IntervalSet<T>&, const IntervalSet<T>&, std::size_t);  \
    template HittingReport<T> hitting_sets(const SwitchedSystem<T>&, const IntervalSet<T>&, const IntervalSet<T>&,  \
                                           const SearchBudget&, const SearchOptions<T>&);                            \
    template std::optional<Word> first_common_word(const SwitchedSystem<T>&, const std::vector<IntervalSet<T>>&,    \
                                                   const std::vector<IntervalSet<T>>&, std::size_t, SearchMeter&,    \
                                                   const SearchOptions<T>&);                                         \
    template WMCertificate<T> wm_certificate(const SwitchedSystem<T>&, const IntervalSet<T>&, const IntervalSet<T>&, \
                                             const std::vector<OpenPair<T>>&, MixingKind, const SearchBudget&,       \
                                             const SearchOptions<T>&);                                               \
    template bool verify_certificate(const SwitchedSystem<T>&, const WMCertificate<T>&);                             \
    template WMCertificate<T> as_type1(const WMCertificate<T>&);                                                     \
    template bool commutes_on_samples(const SwitchedSystem<T>&, std::size_t);                                        \
    template RefinedPair<T> order_reduction(const SwitchedSystem<T>&, const IntervalSet<T>&, const IntervalSet<T>&,  \
                                            const IntervalSet<T>&, const IntervalSet<T>&, const Word&, bool);        \
    template Word extend_witness(const SwitchedSystem<T>&, const IntervalSet<T>&, const IntervalSet<T>&,             \
                                 const Word&, const SearchBudget&, const SearchOptions<T>&);                         \
    template bool hits(const SwitchedSystem<T>&, const Word&, const IntervalSet<T>&, const IntervalSet<T>&);

SWMIX_INSTANTIATE(Rational)
SWMIX_INSTANTIATE(double)

#undef SWMIX_INSTANTIATE

} // namespace swmix
