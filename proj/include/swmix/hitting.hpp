// Hitting-time sets and weak-mixing certificates.
//
// For open sets U, V the words w with f_w(U) meeting V are found by a
// depth-first walk over the pruned automaton. A branch is cut as soon as its
// current enclosure misses the hull of the backward-reachable set of V for
// every remaining length, which never discards a word that would hit.
#pragma once

#include "swmix/core.hpp"

#include <chrono>
#include <cstddef>
#include <optional>
#include <vector>

namespace swmix {

struct SearchBudget {
    std::size_t horizon = 8;
    std::size_t max_nodes = 50'000'000;
    double seconds = 60.0;
    std::size_t required = 1;
};

template <Scalar T>
struct SearchOptions {
    bool prune = true;
    // Search-pruning device only: abandon branches whose enclosure leaves it.
    std::optional<Interval<T>> kill_box;
    // Overlaps must be wider than this to count as meeting.
    T min_overlap = T(0);
    unsigned threads = 1;
};

// Counts visited nodes and watches the clock for one search call.
class SearchMeter {
public:
    explicit SearchMeter(const SearchBudget& budget);

    // False once the node or time budget is spent.
    bool tick();
    bool exhausted() const noexcept { return spent_; }
    std::size_t nodes() const noexcept { return nodes_; }

private:
    std::size_t max_nodes_;
    std::chrono::steady_clock::time_point deadline_;
    std::size_t nodes_ = 0;
    bool spent_ = false;
};

// Hulls of the sets that reach `target` in exactly k steps from each
// automaton state. Over-approximations, so they are safe for pruning.
template <Scalar T>
class BackwardHulls {
public:
    BackwardHulls(const SwitchedSystem<T>& sys, const IntervalSet<T>& target, std::size_t horizon);

    const IntervalSet<T>& at(std::size_t remaining, int state) const
    {
        return table_[remaining][static_cast<std::size_t>(state)];
    }
    std::size_t horizon() const noexcept { return table_.size() - 1; }

private:
    std::vector<std::vector<IntervalSet<T>>> table_;
};

enum class WitnessKind { set, point };

// Evidence that f_word(U) meets V. A set witness is an open source interval
// inside U whose whole image lies in V; a point witness is one point of U
// mapped into V.
template <Scalar T>
struct HitWitness {
    Word word;
    WitnessKind kind = WitnessKind::set;
    Interval<T> source;
    T point{};
};

template <Scalar T>
struct HittingReport {
    std::size_t horizon = 0;
    std::vector<std::size_t> type1;             // lengths with a witness
    std::vector<HitWitness<T>> type2;           // shortlex order
    bool exhausted = false;                     // every word up to horizon decided
    std::size_t nodes = 0;
};

// Set witness for w, if f_w(U) meets V. The source is the widest component
// of U ∩ f_w^{-1}(V); in float mode it is shrunk until its enclosure fits.
template <Scalar T>
std::optional<HitWitness<T>> set_witness(const SwitchedSystem<T>& sys, const Word& w, const IntervalSet<T>& from,
                                         const IntervalSet<T>& to, const T& min_overlap = T(0));

// Re-checks a witness through the core evaluator.
template <Scalar T>
bool verify_witness(const SwitchedSystem<T>& sys, const HitWitness<T>& wit, const IntervalSet<T>& from,
                    const IntervalSet<T>& to);

// Fast pre-screen: tries `samples` van der Corput points of U. Only sound
// as a proof in rational mode.
template <Scalar T>
std::optional<HitWitness<T>> point_witness(const SwitchedSystem<T>& sys, const Word& w, const IntervalSet<T>& from,
                                           const IntervalSet<T>& to, std::size_t samples = 32);

// N1 and N2 of (U, V) up to budget.horizon.
template <Scalar T>
HittingReport<T> hitting_sets(const SwitchedSystem<T>& sys, const IntervalSet<T>& from, const IntervalSet<T>& to,
                              const SearchBudget& budget, const SearchOptions<T>& options = {});

// Lexicographically first admissible word of exactly `length` symbols that
// is a common witness for every (sources[i], targets[i]).
template <Scalar T>
std::optional<Word> first_common_word(const SwitchedSystem<T>& sys, const std::vector<IntervalSet<T>>& sources,
                                      const std::vector<IntervalSet<T>>& targets, std::size_t length,
                                      SearchMeter& meter, const SearchOptions<T>& options = {});

enum class MixingKind { type1, type2 };

template <Scalar T>
struct OpenPair {
    IntervalSet<T> u;
    IntervalSet<T> v;
};

template <Scalar T>
struct PairWitness {
    std::size_t pair = 0;
    Word word;
    Interval<T> source;
};

template <Scalar T>
struct WMCertificate {
    MixingKind kind = MixingKind::type1;
    IntervalSet<T> k;
    IntervalSet<T> q;
    std::vector<OpenPair<T>> pairs;
    std::vector<std::size_t> lengths;   // S for type 1
    std::vector<Word> words;            // S for type 2
    std::vector<PairWitness<T>> witnesses;
    bool exhausted = false;             // the requested |S| was reached
    std::size_t nodes = 0;

    std::size_t order() const noexcept { return pairs.size(); }
    std::size_t found() const noexcept { return kind == MixingKind::type1 ? lengths.size() : words.size(); }
};

// Searches S for the pairs (K ∩ U_i, V_i). Throws InadmissiblePair when some
// U_i misses K or V_i misses Q. A certificate with fewer than
// budget.required elements has exhausted == false.
template <Scalar T>
WMCertificate<T> wm_certificate(const SwitchedSystem<T>& sys, const IntervalSet<T>& k, const IntervalSet<T>& q,
                                const std::vector<OpenPair<T>>& pairs, MixingKind kind, const SearchBudget& budget,
                                const SearchOptions<T>& options = {});

// Independent re-check of every witness and of the S ⊆ ∩ N(K ∩ U_i, V_i)
// condition.
template <Scalar T>
bool verify_certificate(const SwitchedSystem<T>& sys, const WMCertificate<T>& cert);

// Every type-2 S is a type-1 S with lengths l(s_i).
template <Scalar T>
WMCertificate<T> as_type1(const WMCertificate<T>& cert);

// f_i ∘ f_j == f_j ∘ f_i at `samples` van der Corput points of the bounds.
template <Scalar T>
bool commutes_on_samples(const SwitchedSystem<T>& sys, std::size_t samples = 64);

template <Scalar T>
struct RefinedPair {
    IntervalSet<T> u;
    IntervalSet<T> v;
};

// U = U1 ∩ f_s^{-1}(U2), V = V1 ∩ f_s^{-1}(V2). Requires s to hit both
// (U1,U2) and (V1,V2). Unless the caller vouches for commutation, the
// family is checked on samples first.
template <Scalar T>
RefinedPair<T> order_reduction(const SwitchedSystem<T>& sys, const IntervalSet<T>& u1, const IntervalSet<T>& u2,
                               const IntervalSet<T>& v1, const IntervalSet<T>& v2, const Word& s,
                               bool caller_asserts_commuting = false);

// Given s hitting (U,V), finds w hitting (U, f_s^{-1}(V) ∩ U) and returns
// w + s, a strictly longer word that also hits (U,V).
template <Scalar T>
Word extend_witness(const SwitchedSystem<T>& sys, const IntervalSet<T>& u, const IntervalSet<T>& v, const Word& s,
                    const SearchBudget& budget, const SearchOptions<T>& options = {});

// f_w(U) meets V, decided by set witness.
template <Scalar T>
bool hits(const SwitchedSystem<T>& sys, const Word& w, const IntervalSet<T>& from, const IntervalSet<T>& to);

// van der Corput radical inverse in base 2.
double van_der_corput(std::size_t i);

} // namespace swmix
