// Distance envelopes for scrambled pairs and Xiong-chaos witnesses.
#pragma once

#include "swmix/hitting.hpp"

#include <string>
#include <vector>

namespace swmix {

// Extremes of |f_a(x) - f_b(y)| over words of one length. For type 2 the
// two words coincide.
template <Scalar T>
struct EnvelopeRow {
    std::size_t length = 0;
    T d_min{};
    T d_max{};
    Word min_x, min_y;
    Word max_x, max_y;
};

template <Scalar T>
struct DistanceEnvelope {
    MixingKind kind = MixingKind::type2;
    T x{};
    T y{};
    std::vector<EnvelopeRow<T>> rows;   // one per length 1..horizon reached
    bool exhausted = false;             // every length up to the horizon decided
    std::size_t nodes = 0;
};

// Branch-and-bound over words when the maps allow it, plain enumeration
// otherwise. Type 1 uses deduplicated image levels and a sorted sweep.
// Throws InvalidArgument if x == y.
template <Scalar T>
DistanceEnvelope<T> distance_envelope(const SwitchedSystem<T>& sys, const T& x, const T& y, MixingKind kind,
                                      std::size_t horizon, const SearchBudget& budget, bool prune = true);

// length,d_min,d_max,word_min,word_max. Type-1 words are written "a|b".
template <Scalar T>
std::string envelope_csv(const DistanceEnvelope<T>& env);

enum class Verdict { supported, refuted_at_horizon, inconclusive };

const char* verdict_name(Verdict v);

template <Scalar T>
struct ScrambledVerdict {
    T proximality{};    // smallest d_min
    T divergence{};     // largest d_max
    T eps_prox{};
    T eps_div{};
    std::size_t k = 3;
    std::size_t proximal_lengths = 0;
    std::size_t divergent_lengths = 0;
    Verdict verdict = Verdict::inconclusive;
};

// Finite-horizon evidence only: "supported" means at least k lengths with
// d_min < eps_prox and at least k with d_max > eps_div.
template <Scalar T>
ScrambledVerdict<T> scrambled_verdict(const DistanceEnvelope<T>& env, const T& eps_prox, const T& eps_div,
                                      std::size_t k = 3);

template <Scalar T>
struct XiongWitness {
    MixingKind kind = MixingKind::type2;
    std::vector<T> points;
    std::vector<T> targets;
    std::vector<T> tolerances;
    std::vector<std::size_t> lengths;           // strictly increasing
    std::vector<std::vector<Word>> words;       // words[stage][point]
    std::vector<T> errors;                      // max over points per stage
    bool complete = false;
    std::size_t nodes = 0;
};

// Stage i looks for the shortest length above the previous stage where some
// word (type 2) or one word per point (type 1) brings every x within eps_i
// of g(x). Targets are balls clipped to q when q is nonempty.
template <Scalar T>
XiongWitness<T> xiong_witness(const SwitchedSystem<T>& sys, const std::vector<T>& points, const std::vector<T>& targets,
                              MixingKind kind, const std::vector<T>& tolerances, const SearchBudget& budget,
                              const IntervalSet<T>& q = {}, const SearchOptions<T>& options = {});

// Recomputes every stage error and checks it against the tolerance.
template <Scalar T>
bool verify_xiong(const SwitchedSystem<T>& sys, const XiongWitness<T>& wit);

} // namespace swmix
