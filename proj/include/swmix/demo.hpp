// The built-in tent-map scenario: itinerary identity, a batch of order-2
// type-1 weak-mixing searches, and the affine slope law.
#pragma once

#include "swmix/chaos.hpp"

#include <cstdint>

namespace swmix {

struct TentDemoOptions {
    std::size_t samples = 1000;
    std::size_t max_m = 20;
    std::size_t batch = 50;
    std::size_t horizon = 25;
    std::size_t slope_pairs = 100;
    std::size_t slope_horizon = 20;
    std::uint64_t seed = 1;
    unsigned threads = 1;
};

struct ItineraryCheck {
    std::size_t samples = 0;
    std::size_t max_m = 0;
    std::size_t checks = 0;
    std::size_t mismatches = 0;
};

struct WMBatchEntry {
    std::vector<OpenPair<Rational>> pairs;
    WMCertificate<Rational> cert;
    bool verified = false;
};

struct WMBatch {
    std::size_t horizon = 0;
    std::vector<WMBatchEntry> entries;
    std::size_t found = 0;
    std::size_t verified = 0;
};

struct SlopeLawCheck {
    std::size_t pairs = 0;
    std::size_t horizon = 0;
    std::size_t violations = 0;     // rows where d_min or d_max differs from 2^i d
    std::size_t scrambled = 0;      // pairs that ever come closer than they started
};

struct TentDemoReport {
    ItineraryCheck itinerary;
    WMBatch wm;
    SlopeLawCheck slope;

    bool passed() const
    {
        return itinerary.mismatches == 0 && wm.found == wm.entries.size() && wm.verified == wm.entries.size() &&
               slope.violations == 0 && slope.scrambled == 0;
    }
};

// Seeded random rational x in [0,1], checked against direct tent iteration
// for every m in 1..max_m.
ItineraryCheck itinerary_check(std::size_t samples, std::size_t max_m, std::uint64_t seed);

// Random pairs of open subintervals of (0,1) of width >= 1/20, K = Q = (0,1).
WMBatch wm_batch(std::size_t count, std::size_t horizon, std::uint64_t seed, unsigned threads = 1);

// Type-2 envelopes on {2x, 2-2x} for random pairs in [0,1].
SlopeLawCheck slope_law_check(std::size_t pairs, std::size_t horizon, std::uint64_t seed);

TentDemoReport tent_demo(const TentDemoOptions& options = {});

} // namespace swmix
