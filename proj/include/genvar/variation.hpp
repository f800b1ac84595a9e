#pragma once

// Axis variation functionals on grid restrictions.
//
// Search space: interval collections with grid-index endpoints and pairwise
// disjoint closures. FIXED mode takes the supremum over a shared off-axis
// grid point; SHARP mode lets every interval pick its own off-axis point
// from the grid enriched with cell midpoints (exact evaluators only --
// sample tables are restricted to the grid). EXHAUSTIVE enumerates every
// collection below the configured cap and is exact; GREEDY returns a
// certified lower bound.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "genvar/gridfn.hpp"
#include "genvar/lambda.hpp"
#include "genvar/pairing.hpp"

namespace genvar {

enum class Method { Exhaustive, Greedy };
enum class BoundKind { Exact, LowerBound };
enum class Mode { Fixed, Sharp };

inline const char* to_string(Method m) { return m == Method::Exhaustive ? "EXHAUSTIVE" : "GREEDY"; }
inline const char* to_string(BoundKind b) { return b == BoundKind::Exact ? "EXACT" : "LOWER_BOUND"; }

enum class FunctionalId {
    AxisFixed,
    AxisSharp,
    PhiFixed,
    PhiSharp,
    Mixed,
    IndexSet,
    Partial,
    Total,
    Star,
    TailSharp,
};

inline const char* to_string(FunctionalId f) {
    switch (f) {
        case FunctionalId::AxisFixed: return "axis_fixed";
        case FunctionalId::AxisSharp: return "axis_sharp";
        case FunctionalId::PhiFixed: return "phi_fixed";
        case FunctionalId::PhiSharp: return "phi_sharp";
        case FunctionalId::Mixed: return "mixed";
        case FunctionalId::IndexSet: return "index_set";
        case FunctionalId::Partial: return "partial";
        case FunctionalId::Total: return "total";
        case FunctionalId::Star: return "star";
        case FunctionalId::TailSharp: return "tail_sharp";
    }
    return "?";
}

struct VariationConfig {
    int axis_cap = 14;   // exhaustive axis enumeration cap (grid points)
    int multi_cap = 6;   // exhaustive cap per axis for mixed variation
    int star_cap = 6;    // exhaustive cap per axis for rectangle variation
    double greedy_eps = 1e-12;
};

struct Rect {
    Interval x;
    Interval y;
};

/// Witness for a variation value; re-summing it reproduces the value.
struct Certificate {
    std::string kind;  // axis | phi | mixed | star | composite | modulus
    int axis = -1;
    bool sharp = false;
    std::uint64_t tail_start = 1;
    std::vector<int> axes;                              // mixed / index-set
    std::vector<std::vector<Interval>> intervals;       // per involved axis, chosen order
    std::vector<std::vector<double>> interval_points;   // sharp: off-axis coords per interval
    std::vector<double> fixed_coords;                   // fixed / index-set off coords
    std::vector<Rect> rects;                            // star, weight order
    std::vector<Certificate> children;                  // composite
    std::vector<std::string> child_labels;
};

struct VariationResult {
    double value = 0.0;
    FunctionalId id = FunctionalId::AxisFixed;
    Method method = Method::Exhaustive;
    BoundKind bound = BoundKind::Exact;
    Certificate cert;
};

namespace detail {

// Iterate grid-index tuples over the axes other than `axis`, lexicographic.
// cb(flat_base_offset, off_coords).
template <class Cb>
void for_each_off_tuple(const GridFunction& f, int axis, Cb&& cb) {
    int d = f.dim();
    std::vector<int> others;
    for (int k = 0; k < d; ++k)
        if (k != axis) others.push_back(k);
    std::vector<int> idx(others.size(), 0);
    std::vector<double> coords(others.size(), 0.0);
    while (true) {
        std::size_t base = 0;
        for (std::size_t t = 0; t < others.size(); ++t) {
            base += static_cast<std::size_t>(idx[t]) * f.stride(others[t]);
            coords[t] = f.axis(others[t])[idx[t]];
        }
        cb(base, coords);
        int t = static_cast<int>(others.size()) - 1;
        while (t >= 0) {
            if (++idx[t] < f.axis_size(others[t])) break;
            idx[t] = 0;
            --t;
        }
        if (t < 0) break;
    }
}

// Off-axis candidate coordinates for SHARP points: the grid, enriched with
// cell midpoints (wrap midpoint included) when the evaluator is exact.
inline std::vector<double> sharp_candidates(const GridFunction& f, int k) {
    const auto& ax = f.axis(k);
    std::vector<double> c;
    if (!f.exact_evaluator()) {
        c = ax;
        return c;
    }
    for (std::size_t j = 0; j < ax.size(); ++j) {
        c.push_back(ax[j]);
        double next = j + 1 < ax.size() ? ax[j + 1] : kTwoPi;
        c.push_back(0.5 * (ax[j] + next));
    }
    return c;
}

// |f(x_b, y) - f(x_a, y)| at real off-axis coords y (in off-axis order).
inline double axis_diff_at(const GridFunction& f, int axis, int ia, int ib,
                           std::span<const double> off) {
    std::array<double, 3> p{0, 0, 0};
    std::size_t t = 0;
    for (int k = 0; k < f.dim(); ++k)
        if (k != axis) p[k] = off[t++];
    p[axis] = f.axis(axis)[ib];
    double vb = f.eval(std::span<const double>(p.data(), f.dim()));
    p[axis] = f.axis(axis)[ia];
    double va = f.eval(std::span<const double>(p.data(), f.dim()));
    return std::fabs(vb - va);
}

struct SharpWeights {
    std::vector<std::vector<double>> mag;     // [a][b]
    std::vector<std::vector<std::vector<double>>> point;  // argmax off coords
};

inline SharpWeights sharp_weights(const GridFunction& f, int axis) {
    int g = f.axis_size(axis);
    int d = f.dim();
    std::vector<int> others;
    for (int k = 0; k < d; ++k)
        if (k != axis) others.push_back(k);
    std::vector<std::vector<double>> cands;
    for (int k : others) cands.push_back(sharp_candidates(f, k));

    SharpWeights w;
    w.mag.assign(g, std::vector<double>(g, 0.0));
    w.point.assign(g, std::vector<std::vector<double>>(g));

    std::vector<std::size_t> ci(others.size(), 0);
    std::vector<double> coords(others.size(), 0.0);
    for (int a = 0; a < g; ++a) {
        for (int b = a + 1; b < g; ++b) {
            double best = -1.0;
            std::vector<double> bestpt;
            std::fill(ci.begin(), ci.end(), 0);
            while (true) {
                for (std::size_t t = 0; t < others.size(); ++t) coords[t] = cands[t][ci[t]];
                double m = axis_diff_at(f, axis, a, b, coords);
                if (m > best) {
                    best = m;
                    bestpt = coords;
                }
                int t = static_cast<int>(others.size()) - 1;
                while (t >= 0) {
                    if (++ci[t] < cands[t].size()) break;
                    ci[t] = 0;
                    --t;
                }
                if (t < 0) break;
                if (others.empty()) break;
            }
            if (others.empty()) {  // 1-d function: no off axis, plain difference
                best = std::fabs(f.at({b}) - f.at({a}));
                bestpt.clear();
            }
            w.mag[a][b] = best;
            w.point[a][b] = std::move(bestpt);
        }
    }
    return w;
}

struct GreedyOutcome {
    double value = 0.0;
    std::vector<Interval> chosen;  // lexicographic order
};

inline bool intervals_conflict(const Interval& x, const Interval& y) {
    return !(x.b < y.a || y.b < x.a);  // closed intervals intersect
}

// Insert the best-gain interval, with a one-interval swap repair when the
// candidate conflicts with exactly one chosen interval. Objective is either
// the sorted pairing (weights != nullptr) or a plain transform sum (phi).
inline GreedyOutcome greedy_select(const std::vector<Interval>& all,
                                   const std::vector<double>& mags, const WeightView* weights,
                                   const std::function<double(double)>* phi, double eps) {
    auto value_of = [&](const std::vector<std::size_t>& sel) {
        std::vector<double> m;
        m.reserve(sel.size());
        for (auto i : sel) m.push_back(mags[i]);
        if (weights) return pairing_value(std::move(m), *weights);
        double s = 0.0;
        for (double x : m) s += (*phi)(x);
        return s;
    };

    std::vector<std::size_t> sel;
    double cur = 0.0;
    while (true) {
        double best_gain = eps;
        int best_idx = -1;
        int best_remove = -1;
        for (std::size_t i = 0; i < all.size(); ++i) {
            if (std::find(sel.begin(), sel.end(), i) != sel.end()) continue;
            int conflict = -1;
            int nconf = 0;
            for (std::size_t j = 0; j < sel.size(); ++j) {
                if (intervals_conflict(all[i], all[sel[j]])) {
                    conflict = static_cast<int>(j);
                    ++nconf;
                }
            }
            if (nconf > 1) continue;
            std::vector<std::size_t> trial = sel;
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

    GreedyOutcome out;
    out.value = cur;
    for (auto i : sel) out.chosen.push_back(all[i]);
    std::sort(out.chosen.begin(), out.chosen.end());
    return out;
}

inline std::vector<Interval> all_intervals(int g) {
    std::vector<Interval> v;
    for (int a = 0; a + 1 < g; ++a)
        for (int b = a + 1; b < g; ++b) v.push_back({a, b});
    return v;
}

} // namespace detail

/// Lambda variation along one axis. FIXED: shared off-axis grid point;
/// SHARP: per-interval off-axis points. tail_start > 1 evaluates against the
/// shifted weight tail (continuity-in-variation probes).
inline VariationResult axis_lambda_variation(const GridFunction& f, int axis,
                                             const LambdaSeq& seq, Mode mode, Method method,
                                             const VariationConfig& cfg = {},
                                             std::uint64_t tail_start = 1) {
    if (axis < 0 || axis >= f.dim()) throw std::invalid_argument("axis out of range");
    int g = f.axis_size(axis);
    if (method == Method::Exhaustive && g > cfg.axis_cap)
        throw CapExceeded("axis grid exceeds enumeration cap (" + std::to_string(cfg.axis_cap) +
                          "); choose the greedy method");
    std::uint64_t need = static_cast<std::uint64_t>(max_disjoint_intervals(g)) + tail_start - 1;
    if (need > seq.weight_capacity())
        throw std::invalid_argument("lambda sequence too short for this grid");

    WeightView w{&seq, tail_start};
    VariationResult res;
    res.id = mode == Mode::Fixed ? FunctionalId::AxisFixed : FunctionalId::AxisSharp;
    res.method = method;
    res.bound = method == Method::Exhaustive ? BoundKind::Exact : BoundKind::LowerBound;
    res.cert.kind = "axis";
    res.cert.axis = axis;
    res.cert.sharp = mode == Mode::Sharp;
    res.cert.tail_start = tail_start;
    res.cert.intervals.resize(1);

    if (mode == Mode::Sharp) {
        auto sw = detail::sharp_weights(f, axis);
        auto ivs = detail::all_intervals(g);
        std::vector<double> mags(ivs.size());
        for (std::size_t i = 0; i < ivs.size(); ++i) mags[i] = sw.mag[ivs[i].a][ivs[i].b];

        std::vector<Interval> best_sel;
        double best = 0.0;
        if (method == Method::Exhaustive) {
            for_each_disjoint_selection(g, [&](const std::vector<Interval>& sel) {
                std::vector<double> m;
                m.reserve(sel.size());
                for (const auto& iv : sel) m.push_back(sw.mag[iv.a][iv.b]);
                double v = pairing_value(std::move(m), w);
                if (v > best) {
                    best = v;
                    best_sel = sel;
                }
            });
        } else {
            auto out = detail::greedy_select(ivs, mags, &w, nullptr, cfg.greedy_eps);
            best = out.value;
            best_sel = out.chosen;
        }
        // Weight order: descending magnitude, stable on lexicographic ties.
        std::vector<double> selmags;
        for (const auto& iv : best_sel) selmags.push_back(sw.mag[iv.a][iv.b]);
        auto order = pairing_order(selmags);
        for (auto i : order) {
            res.cert.intervals[0].push_back(best_sel[i]);
            res.cert.interval_points.push_back(sw.point[best_sel[i].a][best_sel[i].b]);
        }
        res.value = best;
        return res;
    }

    // FIXED: supremum over shared off-axis grid tuples.
    double best = 0.0;
    std::vector<Interval> best_sel;
    std::vector<double> best_coords;
    const auto& samples = f.samples();
    std::size_t stride = f.stride(axis);
    detail::for_each_off_tuple(f, axis, [&](std::size_t base, const std::vector<double>& coords) {
        std::vector<std::vector<double>> m(g, std::vector<double>(g, 0.0));
        for (int a = 0; a < g; ++a)
            for (int b = a + 1; b < g; ++b)
                m[a][b] = std::fabs(samples[base + b * stride] - samples[base + a * stride]);
        if (method == Method::Exhaustive) {
            for_each_disjoint_selection(g, [&](const std::vector<Interval>& sel) {
                std::vector<double> mm;
                mm.reserve(sel.size());
                for (const auto& iv : sel) mm.push_back(m[iv.a][iv.b]);
                double v = pairing_value(std::move(mm), w);
                if (v > best) {
                    best = v;
                    best_sel = sel;
                    best_coords = coords;
                }
            });
        } else {
            auto ivs = detail::all_intervals(g);
            std::vector<double> mags(ivs.size());
            for (std::size_t i = 0; i < ivs.size(); ++i) mags[i] = m[ivs[i].a][ivs[i].b];
            auto out = detail::greedy_select(ivs, mags, &w, nullptr, cfg.greedy_eps);
            if (out.value > best) {
                best = out.value;
                best_sel = out.chosen;
                best_coords = coords;
            }
        }
    });

    std::vector<double> selmags;
    for (const auto& iv : best_sel) {
        double m = detail::axis_diff_at(f, axis, iv.a, iv.b, best_coords);
        selmags.push_back(m);
    }
    auto order = pairing_order(selmags);
    for (auto i : order) res.cert.intervals[0].push_back(best_sel[i]);
    res.cert.fixed_coords = best_coords;
    res.value = best;
    return res;
}

/// Phi-variation along one axis: maximize sum Phi(|difference|) over interval
/// collections; permutation-invariant, so no weight ordering is involved.
inline VariationResult phi_variation(const GridFunction& f, const PhiFunction& phi, int axis,
                                     Mode mode, Method method, const VariationConfig& cfg = {}) {
    if (axis < 0 || axis >= f.dim()) throw std::invalid_argument("axis out of range");
    int g = f.axis_size(axis);
    if (method == Method::Exhaustive && g > cfg.axis_cap)
        throw CapExceeded("axis grid exceeds enumeration cap; choose the greedy method");

    VariationResult res;
    res.id = mode == Mode::Fixed ? FunctionalId::PhiFixed : FunctionalId::PhiSharp;
    res.method = method;
    res.bound = method == Method::Exhaustive ? BoundKind::Exact : BoundKind::LowerBound;
    res.cert.kind = "phi";
    res.cert.axis = axis;
    res.cert.sharp = mode == Mode::Sharp;
    res.cert.intervals.resize(1);

    auto phisum = [&phi](const std::vector<double>& m) {
        double s = 0.0;
        for (double x : m) s += phi.fn(x);
        return s;
    };

    if (mode == Mode::Sharp) {
        auto sw = detail::sharp_weights(f, axis);
        auto ivs = detail::all_intervals(g);
        std::vector<double> mags(ivs.size());
        for (std::size_t i = 0; i < ivs.size(); ++i) mags[i] = sw.mag[ivs[i].a][ivs[i].b];
        double best = 0.0;
        std::vector<Interval> best_sel;
        if (method == Method::Exhaustive) {
            for_each_disjoint_selection(g, [&](const std::vector<Interval>& sel) {
                std::vector<double> m;
                for (const auto& iv : sel) m.push_back(sw.mag[iv.a][iv.b]);
                double v = phisum(m);
                if (v > best) {
                    best = v;
                    best_sel = sel;
                }
            });
        } else {
            auto out = detail::greedy_select(ivs, mags, nullptr, &phi.fn, cfg.greedy_eps);
            best = out.value;
            best_sel = out.chosen;
        }
        for (const auto& iv : best_sel) {
            res.cert.intervals[0].push_back(iv);
            res.cert.interval_points.push_back(sw.point[iv.a][iv.b]);
        }
        res.value = best;
        return res;
    }

    double best = 0.0;
    std::vector<Interval> best_sel;
    std::vector<double> best_coords;
    const auto& samples = f.samples();
    std::size_t stride = f.stride(axis);
    detail::for_each_off_tuple(f, axis, [&](std::size_t base, const std::vector<double>& coords) {
        std::vector<std::vector<double>> m(g, std::vector<double>(g, 0.0));
        for (int a = 0; a < g; ++a)
            for (int b = a + 1; b < g; ++b)
                m[a][b] = std::fabs(samples[base + b * stride] - samples[base + a * stride]);
        if (method == Method::Exhaustive) {
            for_each_disjoint_selection(g, [&](const std::vector<Interval>& sel) {
                std::vector<double> mm;
                for (const auto& iv : sel) mm.push_back(m[iv.a][iv.b]);
                double v = phisum(mm);
                if (v > best) {
                    best = v;
                    best_sel = sel;
                    best_coords = coords;
                }
            });
        } else {
            auto ivs = detail::all_intervals(g);
            std::vector<double> mags(ivs.size());
            for (std::size_t i = 0; i < ivs.size(); ++i) mags[i] = m[ivs[i].a][ivs[i].b];
            auto out = detail::greedy_select(ivs, mags, nullptr, &phi.fn, cfg.greedy_eps);
            if (out.value > best) {
                best = out.value;
                best_sel = out.chosen;
                best_coords = coords;
            }
        }
    });
    res.cert.intervals[0] = best_sel;
    res.cert.fixed_coords = best_coords;
    res.value = best;
    return res;
}

// ---------------------------------------------------------------------------
// Modulus of variation.

struct ModulusTable {
    int axis = 0;
    bool sharp = false;
    Method method = Method::Exhaustive;
    std::vector<double> values;  // values[i] = v(i + 1)

    double v(int n) const { return values.at(n - 1); }
};

namespace detail {

// Exact best-(<= n)-interval sums by dynamic programming; the objective is
// rank-free, so no enumeration is needed. dp over (count, prefix).
inline std::vector<double> modulus_dp(const std::vector<std::vector<double>>& m, int g, int n_max) {
    std::vector<std::vector<double>> dp(n_max + 1, std::vector<double>(g, 0.0));
    for (int c = 1; c <= n_max; ++c) {
        for (int p = 0; p < g; ++p) {
            double best = p > 0 ? dp[c][p - 1] : 0.0;
            for (int a = 0; a < p; ++a) {
                double prev = a >= 1 ? dp[c - 1][a - 1] : 0.0;
                best = std::max(best, prev + m[a][p]);
            }
            dp[c][p] = std::max(best, dp[c - 1][p]);
        }
    }
    std::vector<double> v(n_max);
    for (int c = 1; c <= n_max; ++c) v[c - 1] = dp[c][g - 1];
    return v;
}

inline std::vector<double> modulus_greedy(const std::vector<std::vector<double>>& m, int g,
                                          int n_max) {
    std::vector<Interval> chosen;
    std::vector<double> v(n_max, 0.0);
    double sum = 0.0;
    for (int step = 0; step < n_max; ++step) {
        double best = 0.0;
        Interval pick{-1, -1};
        for (int a = 0; a + 1 < g; ++a) {
            for (int b = a + 1; b < g; ++b) {
                Interval iv{a, b};
                bool ok = true;
                for (const auto& c : chosen) ok = ok && !intervals_conflict(iv, c);
                if (ok && m[a][b] > best) {
                    best = m[a][b];
                    pick = iv;
                }
            }
        }
        if (pick.a >= 0) {
            chosen.push_back(pick);
            sum += best;
        }
        v[step] = sum;
    }
    return v;
}

} // namespace detail

/// Table of v(n) for n = 1..n_max; "n intervals" is read as "up to n", so the
/// table is nondecreasing by construction. The exhaustive method is an exact
/// dynamic program (the objective carries no rank weights); greedy gives
/// lower bounds.
inline ModulusTable modulus_of_variation(const GridFunction& f, int axis, int n_max, bool sharp,
                                         Method method = Method::Exhaustive) {
    if (axis < 0 || axis >= f.dim()) throw std::invalid_argument("axis out of range");
    int g = f.axis_size(axis);
    if (n_max < 1 || n_max > g / 2)
        throw CapExceeded("modulus n_max exceeds floor(grid/2) cap");

    ModulusTable table;
    table.axis = axis;
    table.sharp = sharp;
    table.method = method;

    if (sharp) {
        auto sw = detail::sharp_weights(f, axis);
        table.values = method == Method::Exhaustive ? detail::modulus_dp(sw.mag, g, n_max)
                                                    : detail::modulus_greedy(sw.mag, g, n_max);
        return table;
    }

    table.values.assign(n_max, 0.0);
    const auto& samples = f.samples();
    std::size_t stride = f.stride(axis);
    detail::for_each_off_tuple(f, axis, [&](std::size_t base, const std::vector<double>&) {
        std::vector<std::vector<double>> m(g, std::vector<double>(g, 0.0));
        for (int a = 0; a < g; ++a)
            for (int b = a + 1; b < g; ++b)
                m[a][b] = std::fabs(samples[base + b * stride] - samples[base + a * stride]);
        auto v = method == Method::Exhaustive ? detail::modulus_dp(m, g, n_max)
                                              : detail::modulus_greedy(m, g, n_max);
        for (int i = 0; i < n_max; ++i) table.values[i] = std::max(table.values[i], v[i]);
    });
    return table;
}

// ---------------------------------------------------------------------------
// Continuity in sharp variation: tail probes.

struct TailProbe {
    int axis = 0;
    std::vector<std::pair<std::uint64_t, VariationResult>> values;  // (n, tail value)
    double doubling_ratio = 0.0;  // min over probed n of lambda_{2n}/lambda_n
};

/// Sharp axis variation against the shifted weight tails lambda_n, ... for
/// each n in n_list, plus the empirical doubling ratio of the sequence.
inline TailProbe tail_continuity_probe(const GridFunction& f, const LambdaSeq& seq, int axis,
                                       std::span<const std::uint64_t> n_list, Method method,
                                       const VariationConfig& cfg = {}) {
    for (std::size_t i = 1; i < n_list.size(); ++i)
        if (!(n_list[i] > n_list[i - 1]))
            throw std::invalid_argument("n_list must be increasing");
    TailProbe probe;
    probe.axis = axis;
    for (auto n : n_list) {
        auto r = axis_lambda_variation(f, axis, seq, Mode::Sharp, method, cfg, n);
        r.id = FunctionalId::TailSharp;
        probe.values.emplace_back(n, std::move(r));
    }
    double q = std::numeric_limits<double>::infinity();
    std::uint64_t limit = 1024;
    if (seq.weight_capacity() != std::numeric_limits<std::uint64_t>::max())
        limit = std::min<std::uint64_t>(limit, seq.weight_capacity() / 2);
    for (std::uint64_t n = 1; n <= limit; ++n)
        q = std::min(q, seq.weight(2 * n) / seq.weight(n));
    probe.doubling_ratio = q;
    return probe;
}

// ---------------------------------------------------------------------------
// Certificate re-evaluation (soundness checks).

/// Recompute the value a certificate witnesses, straight from the function
/// and the weight sequences. Axis order in `seqs` matches cert.axes for the
/// multi-axis kinds; single-axis kinds use seqs[0].
inline double reevaluate_certificate(const GridFunction& f, const Certificate& cert,
                                     std::span<const LambdaSeq* const> seqs,
                                     const PhiFunction* phi = nullptr) {
    if (cert.kind == "axis" || cert.kind == "phi") {
        const auto& ivs = cert.intervals.at(0);
        double sum = 0.0;
        for (std::size_t i = 0; i < ivs.size(); ++i) {
            std::span<const double> off =
                cert.sharp ? std::span<const double>(cert.interval_points[i])
                           : std::span<const double>(cert.fixed_coords);
            double m = f.dim() == 1
                           ? std::fabs(f.at({ivs[i].b}) - f.at({ivs[i].a}))
                           : detail::axis_diff_at(f, cert.axis, ivs[i].a, ivs[i].b, off);
            if (cert.kind == "phi") {
                sum += phi->fn(m);
            } else {
                sum += m / seqs[0]->tail_weight(cert.tail_start, i + 1);
            }
        }
        return sum;
    }
    if (cert.kind == "star") {
        double sum = 0.0;
        const auto& ax0 = f.axis(0);
        const auto& ax1 = f.axis(1);
        for (std::size_t k = 0; k < cert.rects.size(); ++k) {
            const Rect& r = cert.rects[k];
            Box box = Box::make({{ax0[r.x.a], ax0[r.x.b]}, {ax1[r.y.a], ax1[r.y.b]}});
            sum += std::fabs(mixed_difference(f, box)) / seqs[0]->weight(k + 1);
        }
        return sum;
    }
    if (cert.kind == "mixed") {
        int p = static_cast<int>(cert.axes.size());
        std::vector<std::size_t> pos(p, 0);
        double sum = 0.0;
        bool any = true;
        for (int k = 0; k < p; ++k) any = any && !cert.intervals[k].empty();
        if (!any) return 0.0;
        while (true) {
            std::vector<std::pair<double, double>> ivs(p);
            double wprod = 1.0;
            for (int k = 0; k < p; ++k) {
                const Interval& iv = cert.intervals[k][pos[k]];
                const auto& ax = f.axis(cert.axes[k]);
                ivs[k] = {ax[iv.a], ax[iv.b]};
                wprod *= seqs[k]->weight(pos[k] + 1);
            }
            double m = std::fabs(mixed_difference_slice(
                f, std::span<const int>(cert.axes.data(), cert.axes.size()),
                std::span<const std::pair<double, double>>(ivs.data(), ivs.size()),
                std::span<const double>(cert.fixed_coords)));
            sum += m / wprod;
            int k = p - 1;
            while (k >= 0) {
                if (++pos[k] < cert.intervals[k].size()) break;
                pos[k] = 0;
                --k;
            }
            if (k < 0) break;
        }
        return sum;
    }
    if (cert.kind == "composite") {
        double sum = 0.0;
        for (const auto& child : cert.children) sum += reevaluate_certificate(f, child, seqs, phi);
        return sum;
    }
    return 0.0;
}

} // namespace genvar
