#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "support.hpp"
#include "swmix/chaos.hpp"

using namespace swmix;
using swmix::test::iv;
using swmix::test::q;

namespace {

// d_min / d_max over single words of each length, by enumeration.
std::vector<std::pair<Rational, Rational>> brute_type2(const SwitchedSystem<Rational>& sys, const Rational& x,
                                                       const Rational& y, std::size_t horizon)
{
    std::vector<std::pair<Rational, Rational>> out;
    for (std::size_t n = 1; n <= horizon; ++n) {
        std::optional<Rational> lo, hi;
        auto stream = enumerate_words(sys.automaton(), n);
        while (auto w = stream.next()) {
            auto fx = test::try_eval(sys, *w, x);
            auto fy = test::try_eval(sys, *w, y);
            if (!fx || !fy) {
                continue;
            }
            Rational d = abs(*fx - *fy);
            if (!lo || d < *lo) {
                lo = d;
            }
            if (!hi || *hi < d) {
                hi = d;
            }
        }
        out.emplace_back(*lo, *hi);
    }
    return out;
}

} // namespace

TEST_CASE("type-2 envelope follows the slope law on the tent pair")
{
    auto sys = tent_system<Rational>();
    SearchBudget budget;
    auto env = distance_envelope(sys, q("0.2"), q("0.25"), MixingKind::type2, 20, budget);
    CHECK(env.exhausted);
    REQUIRE(env.rows.size() == 20);
    for (const auto& r : env.rows) {
        Rational expect = q("0.05") * Rational(BigInt(1) << static_cast<unsigned>(r.length));
        CHECK(r.d_min == expect);
        CHECK(r.d_max == expect);
    }
    // The bound collapses the tree to one path per length.
    CHECK(env.nodes < 100);
}

TEST_CASE("type-1 envelope at length one")
{
    auto sys = tent_system<Rational>();
    auto env = distance_envelope(sys, q("0.2"), q("0.25"), MixingKind::type1, 3, SearchBudget{});
    REQUIRE(env.rows.size() == 3);
    CHECK(env.rows[0].d_min == q("0.1"));
    CHECK(env.rows[0].d_max == q("1.1"));
    CHECK(env.rows[0].min_x == Word{0});
    CHECK(env.rows[0].min_y == Word{0});
    for (const auto& r : env.rows) {
        CHECK(abs(eval_point(sys, r.min_x, q("0.2")) - eval_point(sys, r.min_y, q("0.25"))) == r.d_min);
        CHECK(abs(eval_point(sys, r.max_x, q("0.2")) - eval_point(sys, r.max_y, q("0.25"))) == r.d_max);
    }
    auto csv = envelope_csv(env);
    CHECK(csv.rfind("length,d_min,d_max,word_min,word_max\n1,1/10,11/10,0|0,", 0) == 0);
}

TEST_CASE("envelope preconditions and fixed points")
{
    auto sys = tent_system<Rational>();
    CHECK_THROWS_AS(distance_envelope(sys, q(1), q(1), MixingKind::type2, 3, SearchBudget{}), InvalidArgument);
    // Two points fixed by the only map keep their distance.
    SwitchedSystem<Rational> ident({PiecewiseAffineMap<Rational>::affine(q(1), q(0))}, q(0), q(1));
    auto env = distance_envelope(ident, q("0.1"), q("0.6"), MixingKind::type2, 5, SearchBudget{});
    for (const auto& r : env.rows) {
        CHECK(r.d_min == q("0.5"));
        CHECK(r.d_max == q("0.5"));
    }
}

TEST_CASE("scrambled verdict rule")
{
    DistanceEnvelope<Rational> env;
    for (std::size_t i = 1; i <= 7; ++i) {
        bool odd = i % 2 == 1 && i >= 3;
        bool even = i % 2 == 0;
        env.rows.push_back({i, odd ? q(0) : q("0.3"), even ? q("0.5") : q("0.3"), {}, {}, {}, {}});
    }
    CHECK(scrambled_verdict(env, q("0.01"), q("0.2"), 3).verdict == Verdict::supported);
    CHECK(scrambled_verdict(env, q("0.01"), q("0.2"), 4).verdict == Verdict::inconclusive);

    auto sys = tent_system<Rational>();
    auto slope = distance_envelope(sys, q("0.2"), q("0.25"), MixingKind::type2, 10, SearchBudget{});
    auto v = scrambled_verdict(slope, q("0.01"), q("0.2"));
    CHECK(v.verdict == Verdict::refuted_at_horizon);
    CHECK(v.proximal_lengths == 0);
    CHECK(v.proximality == q("0.1"));
    CHECK_THROWS_AS(scrambled_verdict(DistanceEnvelope<Rational>{}, q(1), q(1)), InvalidArgument);
}

TEST_CASE("xiong witness for one tent point")
{
    auto sys = tent_system<Rational>();
    SearchBudget budget;
    budget.horizon = 10;
    SearchOptions<Rational> opts;
    opts.kill_box = Interval<Rational>(q(-1, 100), q(101, 100));

    // The orbit of 0.3 only visits 0.4, 0.6, 0.8 and their mirror images,
    // so no word of any length comes within 0.05 of 0.5.
    auto none = xiong_witness(sys, {q("0.3")}, {q("0.5")}, MixingKind::type2, {q("0.05")}, budget, iv("0", "1"), opts);
    CHECK(!none.complete);
    for (std::size_t n = 1; n <= 10; ++n) {
        auto stream = enumerate_words(sys.automaton(), n);
        while (auto w = stream.next()) {
            CHECK(!(abs(eval_point(sys, *w, q("0.3")) - q("0.5")) < q("0.05")));
        }
    }

    auto wit = xiong_witness(sys, {q("0.31")}, {q("0.5")}, MixingKind::type2, {q("0.05")}, budget, iv("0", "1"), opts);
    REQUIRE(wit.complete);
    CHECK(wit.lengths.front() <= 10);
    CHECK(abs(eval_point(sys, wit.words[0][0], q("0.31")) - q("0.5")) < q("0.05"));
    CHECK(verify_xiong(sys, wit));
    // Exhaustive oracle: no shorter word works.
    for (std::size_t n = 1; n < wit.lengths.front(); ++n) {
        auto stream = enumerate_words(sys.automaton(), n);
        while (auto w = stream.next()) {
            CHECK(!(abs(eval_point(sys, *w, q("0.31")) - q("0.5")) < q("0.05")));
        }
    }
    CHECK_THROWS_AS(xiong_witness(sys, {q("0.3"), q("0.3")}, {q("0.5"), q("0.5")}, MixingKind::type2, {q("0.1")},
                                  budget),
                    InvalidArgument);
}

TEST_CASE("xiong stages lengthen and tighten")
{
    auto sys = tent_system<Rational>();
    SearchBudget budget;
    budget.horizon = 40;
    std::vector<Rational> tol{q(1, 4), q(1, 8), q(1, 16)};
    // A common word rescales every gap by 2^n, so type 2 gets a single point.
    for (auto kind : {MixingKind::type1, MixingKind::type2}) {
        std::vector<Rational> pts{q(313, 1009), q(716, 1009)};
        std::vector<Rational> tgt{q("0.5"), q("0.2")};
        if (kind == MixingKind::type2) {
            pts.pop_back();
            tgt.pop_back();
        }
        auto wit = xiong_witness(sys, pts, tgt, kind, tol, budget, iv("0", "1"));
        REQUIRE(wit.complete);
        CHECK(verify_xiong(sys, wit));
        for (std::size_t s = 1; s < wit.lengths.size(); ++s) {
            CHECK(wit.lengths[s] > wit.lengths[s - 1]);
        }
        auto broken = wit;
        broken.words[1][0].pop_back();
        CHECK(!verify_xiong(sys, broken));
    }
}

TEST_CASE("property: xiong stage words are common hitting witnesses")
{
    auto sys = tent_system<Rational>();
    std::mt19937_64 rng(31);
    int complete = 0;
    for (int trial = 0; trial < 20; ++trial) {
        // The second point sits so that a length-3 word can fit both targets.
        Rational x = test::uniform_q(rng, q(1, 4), q(5, 16), 1021);
        Rational t = test::uniform_q(rng, q(1, 4), q(3, 8), 64);
        std::vector<Rational> pts{x, x + q(1, 16)};
        std::vector<Rational> tgt{t, t + q(1, 2)};
        SearchBudget budget;
        budget.horizon = 14;
        Rational eps = q(1, 10);
        auto wit = xiong_witness(sys, pts, tgt, MixingKind::type2, {eps}, budget, iv("0", "1"));
        if (!wit.complete) {
            continue;
        }
        ++complete;
        const Word& w = wit.words[0][0];
        // Small enough balls around the points land inside the target balls.
        Rational rho = (eps - wit.errors[0]) / (4 * Rational(BigInt(1) << static_cast<unsigned>(w.size())));
        for (std::size_t i = 0; i < 2; ++i) {
            IntervalSet<Rational> u(pts[i] - rho, pts[i] + rho);
            IntervalSet<Rational> v(tgt[i] - eps, tgt[i] + eps);
            CHECK(hits(sys, w, u, v));
        }
    }
    CHECK(complete > 5);
}

TEST_CASE("property: pruned envelopes equal enumeration")
{
    std::mt19937_64 rng(32);
    for (int trial = 0; trial < 40; ++trial) {
        bool affine = trial % 2 == 0;
        auto sys = affine ? test::random_affine_system(rng, 2)
                          : test::random_piecewise_system(rng, 2, FullShift{2});
        Rational x = test::uniform_q(rng, q(-1), q(2), 256);
        Rational y = x + q(1 + static_cast<long>(rng() % 50), 256);
        std::size_t h = affine ? 10 : 8;
        auto env = distance_envelope(sys, x, y, MixingKind::type2, h, SearchBudget{});
        auto plain = distance_envelope(sys, x, y, MixingKind::type2, h, SearchBudget{}, false);
        auto oracle = brute_type2(sys, x, y, h);
        REQUIRE(env.rows.size() == oracle.size());
        for (std::size_t i = 0; i < oracle.size(); ++i) {
            CHECK(env.rows[i].d_min == oracle[i].first);
            CHECK(env.rows[i].d_max == oracle[i].second);
            CHECK(env.rows[i].min_x == plain.rows[i].min_x);
            CHECK(env.rows[i].max_x == plain.rows[i].max_x);
            CHECK(abs(eval_point(sys, env.rows[i].min_x, x) - eval_point(sys, env.rows[i].min_x, y)) ==
                  env.rows[i].d_min);
        }
    }
}

TEST_CASE("property: type-1 envelope equals pairwise enumeration")
{
    std::mt19937_64 rng(33);
    for (int trial = 0; trial < 20; ++trial) {
        auto sys = test::random_piecewise_system(rng, 2, ForbiddenWords{2, {Word{1, 1}}});
        Rational x = test::uniform_q(rng, q(-1), q(2), 256);
        Rational y = x + q(1 + static_cast<long>(rng() % 50), 256);
        auto env = distance_envelope(sys, x, y, MixingKind::type1, 6, SearchBudget{});
        for (const auto& r : env.rows) {
            std::vector<std::pair<Rational, Word>> xs, ys;
            auto stream = enumerate_words(sys.automaton(), r.length);
            while (auto w = stream.next()) {
                xs.emplace_back(eval_point(sys, *w, x), *w);
                ys.emplace_back(eval_point(sys, *w, y), *w);
            }
            std::optional<Rational> lo, hi;
            for (const auto& a : xs) {
                for (const auto& b : ys) {
                    Rational d = abs(a.first - b.first);
                    lo = !lo || d < *lo ? d : *lo;
                    hi = !hi || *hi < d ? d : *hi;
                }
            }
            CHECK(r.d_min == *lo);
            CHECK(r.d_max == *hi);
            CHECK(abs(eval_point(sys, r.min_x, x) - eval_point(sys, r.min_y, y)) == r.d_min);
            CHECK(abs(eval_point(sys, r.max_x, x) - eval_point(sys, r.max_y, y)) == r.d_max);
        }
    }
}
