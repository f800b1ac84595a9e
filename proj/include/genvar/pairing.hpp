#pragma once

// Sorted-pairing kernel shared by every weighted variation functional, plus
// the enumeration of interval collections.
//
// A collection here is a set of intervals with grid-index endpoints whose
// CLOSURES are pairwise disjoint (no shared endpoints). Intervals may be
// listed in any order; the weighted sum pairs the i-th magnitude in listing
// order with weight 1/lambda_i, and the supremum over orderings is attained
// by pairing larger magnitudes with smaller weights (exchange argument on
// the nondecreasing normalized weight tail).

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "genvar/lambda.hpp"

namespace genvar {

struct Interval {
    int a = 0;
    int b = 0;  // grid indices, a < b

    friend bool operator==(const Interval&, const Interval&) = default;
    friend bool operator<(const Interval& x, const Interval& y) {
        return x.a != y.a ? x.a < y.a : x.b < y.b;
    }
};

/// Weight accessor over the normalized (monotone) tail of a sequence;
/// tail_start > 1 evaluates the shifted tail used by continuity probes.
/// Values are divided by weights directly (never multiplied by a rounded
/// reciprocal), so certificates re-sum bit-identically.
struct WeightView {
    const LambdaSeq* seq = nullptr;
    std::uint64_t tail_start = 1;

    double weight_at(std::size_t rank) const {  // rank is 1-based
        return seq->tail_weight(tail_start, rank);
    }
};

/// Sum of magnitudes sorted descending against the weight tail. The input is
/// taken by value and sorted here; callers needing the sorted order back can
/// use pairing_order.
inline double pairing_value(std::vector<double> magnitudes, const WeightView& w) {
    std::sort(magnitudes.begin(), magnitudes.end(), std::greater<double>());
    double sum = 0.0;
    for (std::size_t i = 0; i < magnitudes.size(); ++i)
        sum += magnitudes[i] / w.weight_at(i + 1);
    return sum;
}

/// Indices of `magnitudes` in descending magnitude order; ties keep the
/// original (lexicographic) order, which fixes certificates deterministically.
inline std::vector<std::size_t> pairing_order(const std::vector<double>& magnitudes) {
    std::vector<std::size_t> idx(magnitudes.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t x, std::size_t y) { return magnitudes[x] > magnitudes[y]; });
    return idx;
}

/// The exact sup over orderings of sum m_i / lambda_i for one multiset of
/// magnitudes: i-th largest magnitude against the i-th normalized weight.
inline double optimal_pairing_value(std::span<const double> magnitudes, const LambdaSeq& seq) {
    for (double m : magnitudes)
        if (m < 0.0) throw std::invalid_argument("magnitudes must be nonnegative");
    if (magnitudes.size() > seq.weight_capacity())
        throw std::invalid_argument("lambda sequence too short for this many magnitudes");
    std::vector<double> mags(magnitudes.begin(), magnitudes.end());
    return pairing_value(std::move(mags), WeightView{&seq, 1});
}

/// Enumerate every collection of pairwise-disjoint closed intervals on
/// {0..g-1}, the empty collection included, each exactly once in
/// lexicographic order. cb receives the current collection.
template <class Cb>
void for_each_disjoint_selection(int g, Cb&& cb) {
    std::vector<Interval> cur;
    auto rec = [&](auto&& self, int start) -> void {
        cb(static_cast<const std::vector<Interval>&>(cur));
        for (int a = start; a + 1 < g; ++a) {
            for (int b = a + 1; b < g; ++b) {
                cur.push_back({a, b});
                self(self, b + 1);  // closures disjoint: next left endpoint > b
                cur.pop_back();
            }
        }
    };
    rec(rec, 0);
}

/// Largest number of pairwise-disjoint closed intervals on a g-point axis.
inline int max_disjoint_intervals(int g) { return g / 2; }

} // namespace genvar
