#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "swmix/errors.hpp"
#include "swmix/language.hpp"

#include <random>
#include <set>

using namespace swmix;

namespace {

const LanguageSpec golden_mean = ForbiddenWords{2, {Word{1, 1}}};

// Independent oracle: a finite word is admissible iff it extends, within
// the forbidden-word language, to arbitrary length. For an SFT whose longest
// forbidden word has length L it is enough to extend by (#words of length L-1)
// + L symbols, so brute force up to that depth.
bool has_factor(const Word& w, const Word& f)
{
    if (f.size() > w.size()) {
        return false;
    }
    for (std::size_t i = 0; i + f.size() <= w.size(); ++i) {
        if (std::equal(f.begin(), f.end(), w.begin() + static_cast<long>(i))) {
            return true;
        }
    }
    return false;
}

bool avoids(const Word& w, const std::vector<Word>& forbidden)
{
    return std::none_of(forbidden.begin(), forbidden.end(), [&](const Word& f) { return has_factor(w, f); });
}

bool extends(const Word& w, int m, const std::vector<Word>& forbidden, std::size_t depth)
{
    if (!avoids(w, forbidden)) {
        return false;
    }
    if (depth == 0) {
        return true;
    }
    for (int s = 0; s < m; ++s) {
        Word next = w;
        next.push_back(static_cast<Symbol>(s));
        if (extends(next, m, forbidden, depth - 1)) {
            return true;
        }
    }
    return false;
}

std::vector<Word> brute_force(int m, const std::vector<Word>& forbidden, std::size_t n, std::size_t depth)
{
    std::vector<Word> out;
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) {
        total *= static_cast<std::size_t>(m);
    }
    for (std::size_t code = 0; code < total; ++code) {
        Word w;
        std::size_t c = code;
        std::vector<Symbol> digits(n);
        for (std::size_t i = n; i-- > 0;) {
            digits[i] = static_cast<Symbol>(c % static_cast<std::size_t>(m));
            c /= static_cast<std::size_t>(m);
        }
        w = Word(digits);
        if (extends(w, m, forbidden, depth)) {
            out.push_back(w);
        }
    }
    return out;
}

std::vector<Word> drain(WordStream s)
{
    std::vector<Word> out;
    while (auto w = s.next()) {
        out.push_back(*w);
    }
    return out;
}

} // namespace

TEST_CASE("compile: full shift and golden mean")
{
    auto full = compile(FullShift{2});
    CHECK(full.states() == 1);
    CHECK(full.next(0, 0) == 0);
    CHECK(full.next(0, 1) == 0);

    auto gm = compile(golden_mean);
    CHECK(gm.states() == 2);
    for (std::size_t n = 1; n <= 6; ++n) {
        auto expected = brute_force(2, {Word{1, 1}}, n, 4);
        CHECK(drain(enumerate_words(gm, n)) == expected);
    }
    CHECK_THROWS_AS(compile(ForbiddenWords{1, {Word{0}}}), EmptyLanguage);
}

TEST_CASE("compile prunes dead ends")
{
    // State 1 is a sink without exits: words through it are not prefixes of
    // infinite sequences.
    DfaSpec d{2, 3, 0, {{0, 0, 0}, {0, 1, 1}, {1, 0, 2}}};
    auto aut = compile(d);
    CHECK(aut.states() == 1);
    CHECK(accepts_prefix(aut, Word{0, 0, 0}));
    CHECK_FALSE(accepts_prefix(aut, Word{1}));
    CHECK_THROWS_AS(compile(DfaSpec{2, 2, 0, {{0, 1, 1}}}), EmptyLanguage);
    CHECK_THROWS_AS(compile(DfaSpec{2, 2, 0, {{0, 1, 1}, {0, 1, 0}}}), InvalidArgument);
    CHECK_THROWS_AS(compile(FullShift{65}), InvalidArgument);
    // {0,1} with "01" and "11" forbidden: after a 1 nothing can follow... and
    // "1" itself can only be followed by 0 which would need "10" then more.
    auto aut2 = compile(ForbiddenWords{2, {Word{1, 1}, Word{1, 0}}});
    CHECK_FALSE(accepts_prefix(aut2, Word{1}));
    CHECK(accepts_prefix(aut2, Word{0, 0}));
}

TEST_CASE("accepts_prefix")
{
    auto gm = compile(golden_mean);
    CHECK(accepts_prefix(gm, Word{0, 1, 0, 1}));
    CHECK_FALSE(accepts_prefix(gm, Word{0, 1, 1}));
    auto full = compile(FullShift{2});
    CHECK(accepts_prefix(full, Word{1, 1, 1, 0, 1}));
    CHECK_FALSE(accepts_prefix(full, Word{2}));
}

TEST_CASE("enumerate_words is lexicographic and filterable")
{
    auto full = compile(FullShift{2});
    auto all = drain(enumerate_words(full, 3));
    REQUIRE(all.size() == 8);
    CHECK(all.front() == Word{0, 0, 0});
    CHECK(all.back() == Word{1, 1, 1});
    CHECK(std::is_sorted(all.begin(), all.end()));

    auto gm = compile(golden_mean);
    CHECK(drain(enumerate_words(gm, 3)) ==
          std::vector<Word>{Word{0, 0, 0}, Word{0, 0, 1}, Word{0, 1, 0}, Word{1, 0, 0}, Word{1, 0, 1}});
    CHECK(drain(enumerate_words(gm, 1)) == std::vector<Word>{Word{0}, Word{1}});

    // Rejecting the prefix "1" abandons every word that starts with it.
    auto no_one = drain(enumerate_words(full, 3, [](const Word& p) { return p[0] == 0; }));
    CHECK(no_one.size() == 4);
    CHECK_THROWS_AS(enumerate_words(full, 0), InvalidArgument);
}

TEST_CASE("count_words")
{
    auto full = compile(FullShift{2});
    CHECK(count_words(full, 20) == 1048576);
    auto gm = compile(golden_mean);
    long fib[] = {2, 3, 5, 8, 13};
    for (std::size_t n = 1; n <= 5; ++n) {
        CHECK(count_words(gm, n) == fib[n - 1]);
    }
    auto loop = compile(DfaSpec{2, 1, 0, {{0, 1, 0}}});
    CHECK(count_words(loop, 37) == 1);
    CHECK(count_words(compile(FullShift{3}), 64) == BigInt("3433683820292512484657849089281"));
}

TEST_CASE("property: random SFTs agree with brute force and counting")
{
    std::mt19937_64 rng(21);
    int checked = 0;
    for (int trial = 0; trial < 60; ++trial) {
        int m = 2 + static_cast<int>(rng() % 2);
        std::vector<Word> forbidden;
        int k = 1 + static_cast<int>(rng() % 3);
        for (int i = 0; i < k; ++i) {
            Word w;
            std::size_t len = 1 + rng() % 3;
            for (std::size_t j = 0; j < len; ++j) {
                w.push_back(static_cast<Symbol>(rng() % static_cast<unsigned>(m)));
            }
            forbidden.push_back(w);
        }
        std::optional<PrunedAutomaton> aut;
        try {
            aut.emplace(compile(ForbiddenWords{m, forbidden}));
        } catch (const EmptyLanguage&) {
            // The oracle must agree that nothing extends far.
            CHECK(brute_force(m, forbidden, 1, 12).empty());
            continue;
        }
        for (std::size_t n = 1; n <= 12; ++n) {
            auto words = drain(enumerate_words(*aut, n));
            CHECK(BigInt(static_cast<unsigned long>(words.size())) == count_words(*aut, n));
            if (n <= 5) {
                CHECK(words == brute_force(m, forbidden, n, 12));
            }
            for (const Word& w : words) {
                if (n > 8) {
                    break;
                }
                for (std::size_t p = 1; p <= w.size(); ++p) {
                    CHECK(accepts_prefix(*aut, w.prefix(p)));
                }
                bool extendable = false;
                for (int s = 0; s < m && !extendable; ++s) {
                    Word longer = w;
                    longer.push_back(static_cast<Symbol>(s));
                    extendable = accepts_prefix(*aut, longer);
                }
                CHECK(extendable);
            }
        }
        ++checked;
    }
    CHECK(checked > 20);
}
