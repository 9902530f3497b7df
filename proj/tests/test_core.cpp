#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "support.hpp"

using namespace swmix;
using swmix::test::iv;
using swmix::test::q;

TEST_CASE("eval_point composes in application order")
{
    auto sys = tent_system<Rational>();
    CHECK(eval_point(sys, Word{0}, q("0.3")) == q("0.6"));
    CHECK(eval_point(sys, Word{0, 1}, q("0.3")) == q("0.8"));
    // 0 is fixed by f_0, 2/3 is fixed by f_1.
    CHECK(eval_point(sys, Word{0, 0, 0}, q(0)) == q(0));
    CHECK(eval_point(sys, Word{1, 1}, q(2, 3)) == q(2, 3));
    CHECK_THROWS_AS(eval_point(sys, Word{}, q(0)), InvalidArgument);
    CHECK_THROWS_AS(eval_point(sys, Word{2}, q(0)), InvalidArgument);
}

TEST_CASE("eval_point reports points that leave every piece")
{
    SwitchedSystem<Rational> sys({tent_map<Rational>()}, q(0), q(1));
    CHECK(eval_point(sys, Word{0, 0}, q(1, 4)) == q(1));
    PiecewiseAffineMap<Rational> half({{q(0), q(1), q(2), q(0)}});
    SwitchedSystem<Rational> escaping({half}, q(0), q(1));
    CHECK_THROWS_AS(eval_point(escaping, Word{0, 0}, q(3, 4)), UndefinedAtPoint);
}

TEST_CASE("eval_interval gives exact images")
{
    auto sys = tent_system<Rational>();
    CHECK(eval_interval(sys, Word{0, 0, 0, 0}, iv("0", "0.1")) == iv("0", "1.6"));
    CHECK(eval_interval(sys, Word{1}, iv("0.9", "0.95")) == iv("0.1", "0.2"));
    CHECK(eval_interval(sys, Word{0}, IntervalSet<Rational>{}).empty());
}

TEST_CASE("eval_interval across a breakpoint")
{
    SwitchedSystem<Rational> sys({tent_map<Rational>()}, q(0), q(1));
    // Both halves land on (0.8, 1); the breakpoint image 1 is not open-relevant.
    CHECK(eval_interval(sys, Word{0}, iv("0.4", "0.6")) == iv("0.8", "1"));
    PiecewiseAffineMap<Rational> partial({{q(0), q(1, 2), q(2), q(0)}});
    SwitchedSystem<Rational> bad({partial}, q(0), q(1, 2));
    CHECK_THROWS_AS(eval_interval(bad, Word{0}, iv("0.4", "0.6")), UndefinedOnSet);
}

TEST_CASE("preimage of one map")
{
    auto sys = tent_system<Rational>();
    CHECK(preimage(sys.map(1), iv("0.1", "0.2")) == iv("0.9", "0.95"));
    CHECK(preimage(sys.map(0), iv("0", "0.2")) == iv("0", "0.1"));
    auto t = tent_map<Rational>();
    CHECK(preimage(t, iv("2", "3")).empty());
    // Tent preimage of (0.2, 0.4) has one component per lap.
    auto both = IntervalSet<Rational>::from_parts({{q("0.1"), q("0.2")}, {q("0.8"), q("0.9")}});
    CHECK(preimage(t, iv("0.2", "0.4")) == both);
}

TEST_CASE("word_preimage pulls back in reverse order")
{
    SwitchedSystem<Rational> doubling({PiecewiseAffineMap<Rational>::affine(q(2), q(0))}, q(0), q(1));
    CHECK(word_preimage(doubling, Word{0, 0}, iv("0", "0.2")) == iv("0", "0.05"));
    auto sys = tent_system<Rational>();
    auto v = iv("0.3", "0.5");
    CHECK(word_preimage(sys, Word{0, 1}, v) == preimage(sys.map(0), preimage(sys.map(1), v)));
    CHECK(word_preimage(sys, Word{0, 1}, IntervalSet<Rational>{}).empty());
}

TEST_CASE("itinerary words follow the tent partition")
{
    auto sys = tent_system<Rational>();
    auto cells = tent_partition<Rational>();
    CHECK(itinerary_word(sys, cells, q("0.3"), 2) == Word{0, 1});
    CHECK(eval_point(sys, Word{0, 1}, q("0.3")) == test::tent_iterate(q("0.3"), 2));
    CHECK(itinerary_word(sys, cells, q(0), 5) == Word{0, 0, 0, 0, 0});
    CHECK(itinerary_word(sys, cells, q(1, 2), 1) == Word{0});
    CHECK_THROWS_AS(itinerary_word(sys, cells, q(3, 2), 1), OutsidePartition);
}

TEST_CASE("map validation")
{
    CHECK_THROWS_AS(PiecewiseAffineMap<Rational>({{q(0), q(1), q(0), q(1)}}), InvalidArgument);
    CHECK_THROWS_AS(PiecewiseAffineMap<Rational>({{q(0), q(1), q(1), q(0)}, {q(1, 2), q(2), q(1), q(0)}}),
                    InvalidArgument);
    // Jump at 1/2 but declared continuous.
    CHECK_THROWS_AS(
        PiecewiseAffineMap<Rational>({{q(0), q(1, 2), q(2), q(0)}, {q(1, 2), q(1), q(2), q(1)}}, std::nullopt,
                                     true),
        InvalidArgument);
    CHECK(tent_map<Rational>().is_continuous());
    CHECK_THROWS_AS(SwitchedSystem<Rational>({tent_map<Rational>()}, q(0), q(2)), InvalidArgument);
    CHECK_THROWS_AS(SwitchedSystem<Rational>({tent_map<Rational>()}, FullShift{2}, q(0), q(1)), InvalidArgument);
}

TEST_CASE("property: composition law")
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        auto sys = test::random_piecewise_system(rng, 3, FullShift{3});
        Word u = test::random_word(rng, 3, 1 + rng() % 4);
        Word v = test::random_word(rng, 3, 1 + rng() % 4);
        Rational x = test::uniform_q(rng, q(-1), q(2));
        CHECK(eval_point(sys, u + v, x) == eval_point(sys, v, eval_point(sys, u, x)));
    }
}

TEST_CASE("property: enclosure soundness and exactness")
{
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 200; ++trial) {
        auto sys = test::random_piecewise_system(rng, 2, FullShift{2});
        auto set = test::random_interval(rng, q(-1), q(2), q(1, 64));
        Word w = test::random_word(rng, 2, 1 + rng() % 5);
        auto img = eval_interval(sys, w, set);
        for (int s = 0; s < 20; ++s) {
            Rational x = test::uniform_q(rng, set.lo(), set.hi());
            if (!set.contains(x)) {
                continue;
            }
            // Breakpoints may map onto a component endpoint, hence closure.
            CHECK(img.closure_contains(eval_point(sys, w, x)));
        }
    }
    for (int trial = 0; trial < 200; ++trial) {
        auto sys = test::random_affine_system(rng, 3);
        auto set = test::random_interval(rng, q(-1), q(2), q(1, 64));
        Word w = test::random_word(rng, 3, 1 + rng() % 6);
        Rational a = eval_point(sys, w, set.lo());
        Rational b = eval_point(sys, w, set.hi());
        if (b < a) {
            std::swap(a, b);
        }
        CHECK(eval_interval(sys, w, set) == IntervalSet<Rational>(a, b));
    }
}

TEST_CASE("property: Galois connection between image and preimage")
{
    std::mt19937_64 rng(13);
    int positives = 0;
    for (int trial = 0; trial < 400; ++trial) {
        auto sys = test::random_affine_system(rng, 2);
        Word w = test::random_word(rng, 2, 1 + rng() % 3);
        auto target = test::random_interval(rng, q(-4), q(4), q(1, 2));
        auto pre = word_preimage(sys, w, target);
        // Half the trials pick I inside the preimage, half pick it anywhere.
        auto set = (trial % 2 == 0 && !pre.empty())
                       ? test::random_interval(rng, pre.lo(), pre.hi(), (pre.hi() - pre.lo()) / 8)
                       : test::random_interval(rng, q(-1), q(2), q(1, 64));
        bool inside = set.subset_of(pre);
        positives += inside ? 1 : 0;
        CHECK(inside == eval_interval(sys, w, set).subset_of(target));
    }
    CHECK(positives > 50);
}

TEST_CASE("property: itinerary identity for the tent partition")
{
    auto sys = tent_system<Rational>();
    auto cells = tent_partition<Rational>();
    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 300; ++trial) {
        Rational x = test::uniform_q(rng, q(0), q(1), 1L << 30);
        std::size_t m = 1 + rng() % 20;
        CHECK(eval_point(sys, itinerary_word(sys, cells, x, m), x) == test::tent_iterate(x, m));
    }
}

TEST_CASE("float mode encloses the exact image")
{
    auto exact = tent_system<Rational>();
    auto approx = tent_system<double>();
    std::mt19937_64 rng(15);
    for (int trial = 0; trial < 100; ++trial) {
        auto set = test::random_interval(rng, q(0), q(1), q(1, 100));
        Word w = test::random_word(rng, 2, 1 + rng() % 25);
        auto img = eval_interval(exact, w, set);
        auto fimg = eval_interval(approx, w, IntervalSet<double>(set.lo().get_d(), set.hi().get_d()));
        REQUIRE(fimg.size() == 1);
        CHECK(fimg.lo() <= img.lo().get_d());
        CHECK(fimg.hi() >= img.hi().get_d());
    }
}
