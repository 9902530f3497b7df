// ε-spread certificates, the row-by-row refinement that builds them, and
// chains of certificates turned into Xiong witnesses.
#pragma once

#include "swmix/chaos.hpp"
#include "swmix/geometry.hpp"

#include <vector>

namespace swmix {

template <Scalar T>
struct QNet {
    T radius{};
    std::vector<T> centers;

    friend bool operator==(const QNet&, const QNet&) = default;
};

// Evenly spaced centers, floor(width / 2r) + 1 per part; a point part gets
// one center. Throws InvalidArgument for r <= 0.
template <Scalar T>
QNet<T> build_qnet(const CompactRep<T>& q, const T& r);

// Every part of q lies inside the union of the open balls.
template <Scalar T>
bool net_covers(const QNet<T>& net, const CompactRep<T>& q);

// One assignment alpha: centers -> net indices, and its words (one per
// center; all equal for type 2).
template <Scalar T>
struct SpreadRow {
    std::vector<std::size_t> alpha;
    std::vector<Word> words;

    friend bool operator==(const SpreadRow&, const SpreadRow&) = default;
};

template <Scalar T>
struct SpreadCertificate {
    MixingKind kind = MixingKind::type2;
    T eps{};
    T delta{};
    std::vector<T> centers;
    QNet<T> net;
    std::vector<SpreadRow<T>> rows;   // alpha in lexicographic order

    std::size_t max_length() const;
    friend bool operator==(const SpreadCertificate&, const SpreadCertificate&) = default;
};

template <Scalar T>
struct SpreadOptions {
    // Lower bound on every row's word length (chains use it to keep the
    // lengths increasing between stages).
    std::size_t min_length = 0;
    std::size_t max_rows = 4096;
    SearchOptions<T> search;
    // When set, receives W_i after every row.
    std::vector<std::vector<Interval<T>>>* trail = nullptr;
};

// Runs the refinement loop over all m^n assignments. Throws
// InadmissibleSeeds, TableTooLarge, or BudgetExceeded naming the failing row.
template <Scalar T>
SpreadCertificate<T> certify_spread(const SwitchedSystem<T>& sys, const std::vector<IntervalSet<T>>& seeds,
                                    const IntervalSet<T>& k, const T& eps, const QNet<T>& net, MixingKind kind,
                                    const SearchBudget& budget, const SpreadOptions<T>& options = {});

// Re-checks the table: completeness, delta < eps, 1/len < eps and every
// f_w(B(z_i, delta)) inside B(y_alpha(i), eps). Rows are split across
// threads when threads > 1.
template <Scalar T>
bool verify_spread(const SwitchedSystem<T>& sys, const SpreadCertificate<T>& cert, unsigned threads = 1);

// Keeps the listed centers and, for each reduced assignment, the first row
// that restricts to it.
template <Scalar T>
SpreadCertificate<T> restrict_centers(const SpreadCertificate<T>& cert, const std::vector<std::size_t>& keep);

template <Scalar T>
struct SpreadChain {
    std::vector<SpreadCertificate<T>> stages;
};

// Stage i uses eps[i], a net of radius eps[i]/2 on q, and the previous
// stage's balls B(z, delta) as seeds.
template <Scalar T>
SpreadChain<T> build_chain(const SwitchedSystem<T>& sys, const std::vector<IntervalSet<T>>& seeds,
                           const IntervalSet<T>& k, const CompactRep<T>& q, const std::vector<T>& eps, MixingKind kind,
                           const SearchBudget& budget, const SearchOptions<T>& search = {});

// Stage bounds eps_i + max |y - h(a)| over the chosen net centers, as
// tolerances of the returned witness; errors are the achieved distances.
// Throws NotCovered if a point is not strictly inside some ball B(z, delta)
// of every stage from its first covered stage on, or of the last stage.
template <Scalar T>
XiongWitness<T> xiong_from_chain(const SwitchedSystem<T>& sys, const SpreadChain<T>& chain, const std::vector<T>& points,
                                 const std::vector<T>& h);

} // namespace swmix
