#include "swmix/demo.hpp"

#include <random>

namespace swmix {

namespace {

Rational random_unit(std::mt19937_64& rng, long den)
{
    std::uniform_int_distribution<long> d(0, den);
    Rational r(d(rng), den);
    r.canonicalize();
    return r;
}

IntervalSet<Rational> random_open(std::mt19937_64& rng)
{
    constexpr long den = 1 << 12;
    const Rational min_width(1, 20);
    Rational width = min_width + (1 - min_width) * random_unit(rng, den);
    Rational lo = (1 - width) * random_unit(rng, den);
    return IntervalSet<Rational>(lo, lo + width);
}

Rational tent(const Rational& x) { return x <= Rational(1, 2) ? Rational(2 * x) : Rational(2 - 2 * x); }

} // namespace

ItineraryCheck itinerary_check(std::size_t samples, std::size_t max_m, std::uint64_t seed)
{
    auto sys = tent_system<Rational>();
    auto partition = tent_partition<Rational>();
    std::mt19937_64 rng(seed);
    ItineraryCheck out{samples, max_m, 0, 0};
    for (std::size_t i = 0; i < samples; ++i) {
        Rational x = random_unit(rng, 1'000'003);
        Rational direct = x;
        for (std::size_t m = 1; m <= max_m; ++m) {
            direct = tent(direct);
            ++out.checks;
            if (eval_point(sys, itinerary_word(sys, partition, x, m), x) != direct) {
                ++out.mismatches;
            }
        }
    }
    return out;
}

WMBatch wm_batch(std::size_t count, std::size_t horizon, std::uint64_t seed, unsigned threads)
{
    auto sys = tent_system<Rational>();
    IntervalSet<Rational> unit(Rational(0), Rational(1));
    std::mt19937_64 rng(seed);
    SearchBudget budget;
    budget.horizon = horizon;
    SearchOptions<Rational> opts;
    opts.threads = threads;
    WMBatch out;
    out.horizon = horizon;
    for (std::size_t i = 0; i < count; ++i) {
        WMBatchEntry e;
        for (int p = 0; p < 2; ++p) {
            auto u = random_open(rng);
            auto v = random_open(rng);
            e.pairs.push_back({u, v});
        }
        e.cert = wm_certificate(sys, unit, unit, e.pairs, MixingKind::type1, budget, opts);
        e.verified = e.cert.exhausted && verify_certificate(sys, e.cert);
        out.found += e.cert.exhausted ? 1 : 0;
        out.verified += e.verified ? 1 : 0;
        out.entries.push_back(std::move(e));
    }
    return out;
}

SlopeLawCheck slope_law_check(std::size_t pairs, std::size_t horizon, std::uint64_t seed)
{
    auto sys = tent_system<Rational>();
    std::mt19937_64 rng(seed);
    SlopeLawCheck out{pairs, horizon, 0, 0};
    SearchBudget budget;
    budget.horizon = horizon;
    for (std::size_t i = 0; i < pairs; ++i) {
        Rational x = random_unit(rng, 1 << 20);
        Rational y = random_unit(rng, 1 << 20);
        if (x == y) {
            y += Rational(1, 1 << 21);
        }
        auto env = distance_envelope(sys, x, y, MixingKind::type2, horizon, budget);
        const Rational gap = abs(x - y);
        Rational d = gap;
        if (!env.exhausted || env.rows.size() != horizon) {
            ++out.violations;
        }
        for (const auto& r : env.rows) {
            d *= 2;
            if (r.d_min != d || r.d_max != d) {
                ++out.violations;
            }
        }
        if (scrambled_verdict(env, gap, Rational(1, 5)).verdict != Verdict::refuted_at_horizon) {
            ++out.scrambled;
        }
    }
    return out;
}

TentDemoReport tent_demo(const TentDemoOptions& options)
{
    TentDemoReport r;
    r.itinerary = itinerary_check(options.samples, options.max_m, options.seed);
    r.wm = wm_batch(options.batch, options.horizon, options.seed + 1, options.threads);
    r.slope = slope_law_check(options.slope_pairs, options.slope_horizon, options.seed + 2);
    return r;
}

} // namespace swmix
