// Shared helpers for the test suites: exact literals and seeded generators.
#pragma once

#include "swmix/core.hpp"

#include <random>

namespace swmix::test {

inline Rational q(long p, long d = 1)
{
    Rational r(p, d);
    r.canonicalize();
    return r;
}

inline Rational q(const std::string& s) { return NumTraits<Rational>::parse(s); }

inline IntervalSet<Rational> iv(const char* lo, const char* hi) { return IntervalSet<Rational>(q(lo), q(hi)); }

// Random rational in [lo, hi] with denominator `den`.
inline Rational uniform_q(std::mt19937_64& rng, const Rational& lo, const Rational& hi, long den = 1 << 16)
{
    std::uniform_int_distribution<long> d(0, den);
    return lo + (hi - lo) * q(d(rng), den);
}

// Random open subinterval of [lo, hi] with width at least min_width.
inline IntervalSet<Rational> random_interval(std::mt19937_64& rng, const Rational& lo, const Rational& hi,
                                             const Rational& min_width, long den = 1 << 12)
{
    Rational width = uniform_q(rng, min_width, hi - lo, den);
    Rational start = uniform_q(rng, lo, hi - width, den);
    return IntervalSet<Rational>(start, start + width);
}

inline Word random_word(std::mt19937_64& rng, int alphabet, std::size_t length)
{
    std::uniform_int_distribution<int> d(0, alphabet - 1);
    Word w;
    for (std::size_t i = 0; i < length; ++i) {
        w.push_back(static_cast<Symbol>(d(rng)));
    }
    return w;
}

// Globally affine maps with slopes in {+-2, +-3} and small integer offsets.
inline SwitchedSystem<Rational> random_affine_system(std::mt19937_64& rng, int alphabet)
{
    static const int slopes[] = {2, -2, 3, -3};
    std::uniform_int_distribution<int> pick(0, 3);
    std::uniform_int_distribution<int> off(-2, 2);
    std::vector<PiecewiseAffineMap<Rational>> maps;
    for (int i = 0; i < alphabet; ++i) {
        maps.push_back(PiecewiseAffineMap<Rational>::affine(q(slopes[pick(rng)]), q(off(rng), 2)));
    }
    return SwitchedSystem<Rational>(std::move(maps), q(-1), q(2));
}

// Piecewise maps: one to three pieces on [-1, 2] plus a global formula.
inline SwitchedSystem<Rational> random_piecewise_system(std::mt19937_64& rng, int alphabet, LanguageSpec language)
{
    static const int slopes[] = {2, -2, 3, -3};
    std::uniform_int_distribution<int> pick(0, 3);
    std::uniform_int_distribution<int> off(-4, 4);
    std::uniform_int_distribution<int> npieces(0, 3);
    std::vector<PiecewiseAffineMap<Rational>> maps;
    for (int i = 0; i < alphabet; ++i) {
        int k = npieces(rng);
        std::vector<AffinePiece<Rational>> pieces;
        Rational step = q(3, k == 0 ? 1 : k);
        for (int j = 0; j < k; ++j) {
            Rational lo = q(-1) + step * j;
            pieces.push_back({lo, lo + step, q(slopes[pick(rng)]), q(off(rng), 4)});
        }
        maps.emplace_back(std::move(pieces), AffineFormula<Rational>{q(slopes[pick(rng)]), q(off(rng), 4)});
    }
    return SwitchedSystem<Rational>(std::move(maps), std::move(language), q(-1), q(2));
}

inline std::optional<Rational> try_eval(const SwitchedSystem<Rational>& sys, const Word& w, const Rational& x)
{
    try {
        return eval_point(sys, w, x);
    } catch (const UndefinedAtPoint&) {
        return std::nullopt;
    }
}

// Direct iteration of the tent map, written independently of the library.
inline Rational tent_iterate(Rational x, std::size_t n)
{
    for (std::size_t i = 0; i < n; ++i) {
        x = x <= q(1, 2) ? Rational(2 * x) : Rational(2 - 2 * x);
    }
    return x;
}

} // namespace swmix::test
