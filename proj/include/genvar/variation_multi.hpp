#pragma once

// Multi-axis variation functionals: mixed variation over per-axis interval
// collections, index-set and total/partial composites, and rectangle (star)
// variation on the plane.
//
// The mixed objective sums |mixed difference| / (lambda^1_i * ... ) over the
// product of per-axis collections, where the weight index of an interval is
// its position in the collection's chosen ordering. No sorting shortcut is
// assumed across axes: the exhaustive search enumerates the orderings of
// every axis beyond the first outright; for each such assignment the first
// axis decouples (its per-interval aggregates do not depend on its own
// ordering), so its optimal order is the descending-aggregate one.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "genvar/variation.hpp"

namespace genvar {

namespace detail {

inline int interval_index(int g, const Interval& iv) {
    return iv.a * (2 * g - iv.a - 1) / 2 + (iv.b - iv.a - 1);
}

struct MixedTensor {
    std::vector<int> axes;
    std::vector<int> sizes;                  // grid size per involved axis
    std::vector<std::vector<Interval>> ivs;  // all intervals per involved axis
    std::vector<double> mag;                 // |mixed difference| over interval tuples
    std::vector<std::size_t> strides;

    double at(std::span<const int> idx) const {
        std::size_t f = 0;
        for (std::size_t k = 0; k < idx.size(); ++k) f += idx[k] * strides[k];
        return mag[f];
    }
};

inline MixedTensor build_mixed_tensor(const GridFunction& f, std::span<const int> axes,
                                      std::span<const int> fixed_idx) {
    MixedTensor t;
    t.axes.assign(axes.begin(), axes.end());
    int p = static_cast<int>(axes.size());
    std::size_t total = 1;
    for (int k = 0; k < p; ++k) {
        int g = f.axis_size(axes[k]);
        t.sizes.push_back(g);
        t.ivs.push_back(all_intervals(g));
        total *= t.ivs.back().size();
    }
    t.strides.assign(p, 1);
    for (int k = p - 2; k >= 0; --k) t.strides[k] = t.strides[k + 1] * t.ivs[k + 1].size();

    std::size_t base = 0;
    {
        std::size_t fi = 0;
        for (int k = 0, a = 0; k < f.dim(); ++k) {
            if (a < p && axes[a] == k) {
                ++a;
            } else {
                base += static_cast<std::size_t>(fixed_idx[fi++]) * f.stride(k);
            }
        }
    }

    const auto& samples = f.samples();
    t.mag.resize(total);
    std::vector<int> pos(p, 0);
    for (std::size_t flat = 0; flat < total; ++flat) {
        std::size_t rem = flat;
        for (int k = 0; k < p; ++k) {
            pos[k] = static_cast<int>(rem / t.strides[k]);
            rem %= t.strides[k];
        }
        double sum = 0.0;
        for (unsigned mask = 0; mask < (1u << p); ++mask) {
            std::size_t off = base;
            int lower = 0;
            for (int k = 0; k < p; ++k) {
                const Interval& iv = t.ivs[k][pos[k]];
                bool upper = mask & (1u << k);
                off += static_cast<std::size_t>(upper ? iv.b : iv.a) * f.stride(axes[k]);
                if (!upper) ++lower;
            }
            sum += (lower % 2 == 0 ? 1.0 : -1.0) * samples[off];
        }
        t.mag[flat] = std::fabs(sum);
    }
    return t;
}

// Value of a fully-ordered assignment: lists[k] holds interval indices (into
// tensor.ivs[k]) in weight order for axis k.
inline double mixed_value(const MixedTensor& t, const std::vector<std::vector<int>>& lists,
                          std::span<const WeightView> w) {
    int p = static_cast<int>(lists.size());
    for (const auto& l : lists)
        if (l.empty()) return 0.0;
    std::vector<int> pos(p, 0);
    std::vector<int> idx(p, 0);
    double sum = 0.0;
    while (true) {
        double wprod = 1.0;
        for (int k = 0; k < p; ++k) {
            idx[k] = lists[k][pos[k]];
            wprod *= w[k].weight_at(pos[k] + 1);
        }
        sum += t.at(idx) / wprod;
        int k = p - 1;
        while (k >= 0) {
            if (++pos[k] < static_cast<int>(lists[k].size())) break;
            pos[k] = 0;
            --k;
        }
        if (k < 0) break;
    }
    return sum;
}

// Aggregates of axis-0 intervals against fixed ordered lists on other axes.
inline std::vector<double> axis0_aggregates(const MixedTensor& t,
                                            const std::vector<int>& axis0_candidates,
                                            const std::vector<std::vector<int>>& other_lists,
                                            std::span<const WeightView> w) {
    int p = static_cast<int>(t.ivs.size());
    std::vector<double> agg(axis0_candidates.size(), 0.0);
    for (std::size_t c = 0; c < axis0_candidates.size(); ++c) {
        std::vector<int> pos(p - 1, 0);
        std::vector<int> idx(p, 0);
        idx[0] = axis0_candidates[c];
        if (p == 1) {
            agg[c] = t.at(idx);
            continue;
        }
        bool empty = false;
        for (const auto& l : other_lists) empty = empty || l.empty();
        if (empty) {
            agg[c] = 0.0;
            continue;
        }
        double sum = 0.0;
        while (true) {
            double wprod = 1.0;
            for (int k = 1; k < p; ++k) {
                idx[k] = other_lists[k - 1][pos[k - 1]];
                wprod *= w[k].weight_at(pos[k - 1] + 1);
            }
            sum += t.at(idx) / wprod;
            int k = p - 2;
            while (k >= 0) {
                if (++pos[k] < static_cast<int>(other_lists[k].size())) break;
                pos[k] = 0;
                --k;
            }
            if (k < 0) break;
        }
        agg[c] = sum;
    }
    return agg;
}

} // namespace detail

/// Mixed variation over a subset of axes with the remaining coordinates fixed
/// at grid indices. seqs holds one validated sequence per involved axis.
inline VariationResult mixed_variation_slice(const GridFunction& f, std::span<const int> axes,
                                             std::span<const int> fixed_idx,
                                             std::span<const LambdaSeq* const> seqs,
                                             Method method, const VariationConfig& cfg = {}) {
    int p = static_cast<int>(axes.size());
    if (p == 0 || p > f.dim()) throw std::invalid_argument("bad axis subset");
    if (static_cast<int>(seqs.size()) != p)
        throw std::invalid_argument("one lambda sequence required per involved axis");
    // A single-axis slice is a plain 1-d search; it goes by the axis cap.
    int cap = p == 1 ? cfg.axis_cap : cfg.multi_cap;
    for (int k = 0; k < p; ++k) {
        if (method == Method::Exhaustive && f.axis_size(axes[k]) > cap)
            throw CapExceeded("mixed variation axis exceeds cap (" + std::to_string(cap) +
                              "); choose the greedy method");
    }

    auto tensor = detail::build_mixed_tensor(f, axes, fixed_idx);
    std::vector<WeightView> w;
    for (int k = 0; k < p; ++k) w.push_back({seqs[k], 1});

    VariationResult res;
    res.id = FunctionalId::Mixed;
    res.method = method;
    res.bound = method == Method::Exhaustive ? BoundKind::Exact : BoundKind::LowerBound;
    res.cert.kind = "mixed";
    res.cert.axes.assign(axes.begin(), axes.end());
    res.cert.intervals.resize(p);
    {
        std::size_t fi = 0;
        for (int k = 0, a = 0; k < f.dim(); ++k) {
            if (a < p && axes[a] == k) {
                ++a;
            } else {
                res.cert.fixed_coords.push_back(f.axis(k)[fixed_idx[fi++]]);
            }
        }
    }

    double best = 0.0;
    std::vector<std::vector<int>> best_lists(p);

    if (method == Method::Exhaustive) {
        // Selections per axis as index lists into tensor.ivs (lex order).
        std::vector<std::vector<int>> sel(p);
        auto evaluate = [&]() {
            for (int k = 0; k < p; ++k)
                if (sel[k].empty()) return;
            // Enumerate orderings of axes 1..p-1; optimize axis 0 by sorting.
            std::vector<std::vector<int>> perm(p - 1);
            for (int k = 1; k < p; ++k) {
                perm[k - 1] = sel[k];
                std::sort(perm[k - 1].begin(), perm[k - 1].end());
            }
            auto run = [&](auto&& self, int k) -> void {
                if (k == p - 1) {
                    auto agg = detail::axis0_aggregates(tensor, sel[0], perm, w);
                    auto order = pairing_order(agg);
                    double v = 0.0;
                    for (std::size_t i = 0; i < order.size(); ++i)
                        v += agg[order[i]] / w[0].weight_at(i + 1);
                    if (v > best) {
                        best = v;
                        best_lists[0].clear();
                        for (auto i : order) best_lists[0].push_back(sel[0][i]);
                        for (int kk = 1; kk < p; ++kk) best_lists[kk] = perm[kk - 1];
                    }
                    return;
                }
                std::sort(perm[k].begin(), perm[k].end());
                do {
                    self(self, k + 1);
                } while (std::next_permutation(perm[k].begin(), perm[k].end()));
            };
            run(run, 0);
        };
        auto enumerate = [&](auto&& self, int k) -> void {
            if (k == p) {
                evaluate();
                return;
            }
            for_each_disjoint_selection(tensor.sizes[k], [&](const std::vector<Interval>& s) {
                sel[k].clear();
                for (const auto& iv : s)
                    sel[k].push_back(detail::interval_index(tensor.sizes[k], iv));
                self(self, k + 1);
            });
        };
        enumerate(enumerate, 0);
    } else {
        // Alternating greedy: seed each axis with its best single interval,
        // then re-optimize one axis at a time against the others.
        std::vector<std::vector<int>> lists(p);
        for (int k = 0; k < p; ++k) {
            double bm = -1.0;
            int bi = 0;
            for (std::size_t i = 0; i < tensor.ivs[k].size(); ++i) {
                double mx = 0.0;
                // max magnitude over single opposite intervals
                std::vector<int> idx(p, 0);
                std::vector<int> lim;
                for (int kk = 0; kk < p; ++kk) lim.push_back(static_cast<int>(tensor.ivs[kk].size()));
                idx[k] = static_cast<int>(i);
                auto sweep = [&](auto&& self, int kk) -> void {
                    if (kk == p) {
                        mx = std::max(mx, tensor.at(idx));
                        return;
                    }
                    if (kk == k) {
                        self(self, kk + 1);
                        return;
                    }
                    for (int j = 0; j < lim[kk]; ++j) {
                        idx[kk] = j;
                        self(self, kk + 1);
                    }
                };
                sweep(sweep, 0);
                if (mx > bm) {
                    bm = mx;
                    bi = static_cast<int>(i);
                }
            }
            lists[k] = {bi};
        }
        double cur = detail::mixed_value(tensor, lists, w);
        for (int round = 0; round < 4 * p; ++round) {
            bool improved = false;
            for (int k = 0; k < p; ++k) {
                // Rotate axis k to the front of the aggregate computation.
                std::vector<std::vector<int>> others;
                std::vector<WeightView> wo;
                for (int kk = 0; kk < p; ++kk)
                    if (kk != k) {
                        others.push_back(lists[kk]);
                        wo.push_back(w[kk]);
                    }
                // Tensor with axis k first: reuse by permuting index access.
                std::vector<int> cand(tensor.ivs[k].size());
                std::iota(cand.begin(), cand.end(), 0);
                std::vector<double> agg(cand.size(), 0.0);
                for (std::size_t c = 0; c < cand.size(); ++c) {
                    std::vector<int> idx(p, 0);
                    idx[k] = static_cast<int>(c);
                    double sum = 0.0;
                    std::vector<int> pos(p - 1, 0);
                    bool empty = false;
                    for (const auto& l : others) empty = empty || l.empty();
                    if (!empty && p > 1) {
                        while (true) {
                            double wprod = 1.0;
                            int oi = 0;
                            for (int kk = 0; kk < p; ++kk) {
                                if (kk == k) continue;
                                idx[kk] = others[oi][pos[oi]];
                                wprod *= wo[oi].weight_at(pos[oi] + 1);
                                ++oi;
                            }
                            sum += tensor.at(idx) / wprod;
                            int t = p - 2;
                            while (t >= 0) {
                                if (++pos[t] < static_cast<int>(others[t].size())) break;
                                pos[t] = 0;
                                --t;
                            }
                            if (t < 0) break;
                        }
                    } else if (p == 1) {
                        sum = tensor.at(idx);
                    }
                    agg[c] = sum;
                }
                auto out = detail::greedy_select(tensor.ivs[k], agg, &w[k], nullptr,
                                                 cfg.greedy_eps);
                // Order the chosen intervals by aggregate, descending.
                std::vector<int> chosen;
                for (const auto& iv : out.chosen)
                    chosen.push_back(detail::interval_index(tensor.sizes[k], iv));
                std::stable_sort(chosen.begin(), chosen.end(),
                                 [&](int x, int y) { return agg[x] > agg[y]; });
                auto trial = lists;
                trial[k] = chosen;
                double v = detail::mixed_value(tensor, trial, w);
                if (v > cur + cfg.greedy_eps) {
                    lists = trial;
                    cur = v;
                    improved = true;
                }
            }
            if (!improved) break;
        }
        best = cur;
        best_lists = lists;
    }

    res.value = best;
    for (int k = 0; k < p; ++k)
        for (int i : best_lists[k]) res.cert.intervals[k].push_back(tensor.ivs[k][i]);
    return res;
}

/// Mixed variation over all axes of f.
inline VariationResult mixed_lambda_variation(const GridFunction& f,
                                              std::span<const LambdaSeq* const> seqs,
                                              Method method, const VariationConfig& cfg = {}) {
    std::vector<int> axes(f.dim());
    std::iota(axes.begin(), axes.end(), 0);
    return mixed_variation_slice(f, axes, {}, seqs, method, cfg);
}

enum class CompositeKind { Partial, Total, IndexSet };

/// Index-set variation: sup over the off-set grid coordinates of the mixed
/// variation in the chosen axes. Partial and total variations sum index-set
/// constituents; the result is exact only when every constituent is.
inline VariationResult composite_variation(const GridFunction& f,
                                           std::span<const LambdaSeq* const> seqs,
                                           CompositeKind which, std::span<const int> alpha,
                                           Method method, const VariationConfig& cfg = {}) {
    int d = f.dim();
    if (static_cast<int>(seqs.size()) != d)
        throw std::invalid_argument("composite_variation needs one sequence per axis");

    auto index_set = [&](std::span<const int> ax) -> VariationResult {
        std::vector<const LambdaSeq*> sub;
        for (int a : ax) sub.push_back(seqs[a]);
        std::vector<int> others;
        for (int k = 0; k < d; ++k)
            if (std::find(ax.begin(), ax.end(), k) == ax.end()) others.push_back(k);
        VariationResult best;
        best.id = FunctionalId::IndexSet;
        bool first = true;
        std::vector<int> idx(others.size(), 0);
        while (true) {
            auto r = mixed_variation_slice(f, ax, std::span<const int>(idx.data(), idx.size()),
                                           std::span<const LambdaSeq* const>(sub.data(), sub.size()),
                                           method, cfg);
            if (first || r.value > best.value) {
                double keep = r.value;
                best = std::move(r);
                best.value = keep;
                best.id = FunctionalId::IndexSet;
                first = false;
            }
            int t = static_cast<int>(others.size()) - 1;
            while (t >= 0) {
                if (++idx[t] < f.axis_size(others[t])) break;
                idx[t] = 0;
                --t;
            }
            if (t < 0) break;
        }
        return best;
    };

    if (which == CompositeKind::IndexSet) {
        if (alpha.empty()) throw std::invalid_argument("index set must be nonempty");
        return index_set(alpha);
    }

    VariationResult res;
    res.id = which == CompositeKind::Partial ? FunctionalId::Partial : FunctionalId::Total;
    res.method = method;
    res.bound = method == Method::Exhaustive ? BoundKind::Exact : BoundKind::LowerBound;
    res.cert.kind = "composite";
    res.value = 0.0;

    std::vector<std::vector<int>> subsets;
    if (which == CompositeKind::Partial) {
        for (int s = 0; s < d; ++s) subsets.push_back({s});
    } else {
        for (unsigned mask = 1; mask < (1u << d); ++mask) {
            std::vector<int> ax;
            for (int k = 0; k < d; ++k)
                if (mask & (1u << k)) ax.push_back(k);
            subsets.push_back(std::move(ax));
        }
    }
    for (const auto& ax : subsets) {
        auto child = index_set(std::span<const int>(ax.data(), ax.size()));
        res.value += child.value;
        if (child.bound == BoundKind::LowerBound) res.bound = BoundKind::LowerBound;
        std::string label = "alpha{";
        for (std::size_t i = 0; i < ax.size(); ++i) label += (i ? "," : "") + std::to_string(ax[i]);
        label += "}";
        res.cert.child_labels.push_back(label);
        res.cert.children.push_back(std::move(child.cert));
    }
    return res;
}

// ---------------------------------------------------------------------------
// Rectangle (star) variation on the plane.

namespace detail {

inline bool rects_conflict(const Rect& r, const Rect& s) {
    bool sep_x = r.x.b < s.x.a || s.x.b < r.x.a;
    bool sep_y = r.y.b < s.y.a || s.y.b < r.y.a;
    return !(sep_x || sep_y);
}

} // namespace detail

/// Star variation: sup over collections of pairwise-disjoint grid rectangles
/// of the sorted pairing of |mixed difference| weights. Exhaustive search is
/// a branch-and-bound over positive-magnitude rectangles.
inline VariationResult star_variation(const GridFunction& f, const LambdaSeq& seq, Method method,
                                      const VariationConfig& cfg = {}) {
    if (f.dim() != 2) throw std::invalid_argument("star variation is defined on the plane");
    int g1 = f.axis_size(0), g2 = f.axis_size(1);
    if (method == Method::Exhaustive && (g1 > cfg.star_cap || g2 > cfg.star_cap))
        throw CapExceeded("star variation grid exceeds cap (" + std::to_string(cfg.star_cap) +
                          "); choose the greedy method");

    const auto& samples = f.samples();
    auto val = [&](int i, int j) { return samples[i * f.stride(0) + j * f.stride(1)]; };

    std::vector<Rect> rects;
    std::vector<double> mags;
    for (int a1 = 0; a1 + 1 < g1; ++a1)
        for (int b1 = a1 + 1; b1 < g1; ++b1)
            for (int a2 = 0; a2 + 1 < g2; ++a2)
                for (int b2 = a2 + 1; b2 < g2; ++b2) {
                    double m = std::fabs(val(b1, b2) - val(b1, a2) - val(a1, b2) + val(a1, a2));
                    if (m > 0.0) {
                        rects.push_back({{a1, b1}, {a2, b2}});
                        mags.push_back(m);
                    }
                }

    WeightView w{&seq, 1};
    VariationResult res;
    res.id = FunctionalId::Star;
    res.method = method;
    res.bound = method == Method::Exhaustive ? BoundKind::Exact : BoundKind::LowerBound;
    res.cert.kind = "star";

    double best = 0.0;
    std::vector<std::size_t> best_sel;

    if (method == Method::Exhaustive) {
        std::vector<std::size_t> cur;
        auto dfs = [&](auto&& self, std::size_t start) -> void {
            std::vector<double> m;
            for (auto i : cur) m.push_back(mags[i]);
            double v = pairing_value(m, w);
            if (v > best) {
                best = v;
                best_sel = cur;
            }
            // Optimistic completion: every remaining rectangle compatible
            // with the current choice, conflicts among them ignored.
            std::vector<double> opt = m;
            std::vector<std::size_t> compat;
            for (std::size_t i = start; i < rects.size(); ++i) {
                bool ok = true;
                for (auto j : cur) ok = ok && !detail::rects_conflict(rects[i], rects[j]);
                if (ok) {
                    compat.push_back(i);
                    opt.push_back(mags[i]);
                }
            }
            if (compat.empty()) return;
            if (pairing_value(std::move(opt), w) <= best) return;
            for (auto i : compat) {
                bool ok = true;
                for (auto j : cur) ok = ok && !detail::rects_conflict(rects[i], rects[j]);
                if (!ok) continue;
                cur.push_back(i);
                self(self, i + 1);
                cur.pop_back();
            }
        };
        dfs(dfs, 0);
    } else {
        std::vector<std::size_t> sel;
        auto value_of = [&](const std::vector<std::size_t>& s) {
            std::vector<double> m;
            for (auto i : s) m.push_back(mags[i]);
            return pairing_value(std::move(m), w);
        };
        double cur = 0.0;
        while (true) {
            double best_gain = cfg.greedy_eps;
            int best_idx = -1, best_remove = -1;
            for (std::size_t i = 0; i < rects.size(); ++i) {
                if (std::find(sel.begin(), sel.end(), i) != sel.end()) continue;
                int conflict = -1, nconf = 0;
                for (std::size_t j = 0; j < sel.size(); ++j)
                    if (detail::rects_conflict(rects[i], rects[sel[j]])) {
                        conflict = static_cast<int>(j);
                        ++nconf;
                    }
                if (nconf > 1) continue;
                auto trial = sel;
                if (nconf == 1) trial.erase(trial.begin() + conflict);
                trial.push_back(i);
                double gain = value_of(trial) - cur;
                if (gain > best_gain) {
                    best_gain = gain;
                    best_idx = static_cast<int>(i);
                    best_remove = nconf == 1 ? conflict : -1;
                }
            }
            if (best_idx < 0) break;
            if (best_remove >= 0) sel.erase(sel.begin() + best_remove);
            sel.push_back(static_cast<std::size_t>(best_idx));
            cur = value_of(sel);
        }
        best = cur;
        best_sel = sel;
    }

    std::vector<double> selmags;
    for (auto i : best_sel) selmags.push_back(mags[i]);
    auto order = pairing_order(selmags);
    for (auto i : order) res.cert.rects.push_back(rects[best_sel[i]]);
    res.value = best;
    return res;
}

} // namespace genvar
