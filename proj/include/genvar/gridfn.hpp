#pragma once

// Periodic functions of 1-3 variables restricted to grids.
//
// A GridFunction couples an evaluator with per-axis grids on [0, 2*pi).
// Catalog entries carry exact evaluators plus metadata: closed-form Fourier
// coefficients where they exist and exact quadrant limits where the catalog
// knows them. Sample-table functions carry only their grid values; off-grid
// evaluation falls back to nearest-neighbor and quadrant verdicts for them
// are heuristic (the report records which path produced a limit).

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "genvar/common.hpp"

namespace genvar {

// ---------------------------------------------------------------------------
// Analytic coefficient metadata, kept in a neutral form so the summability
// layer can assemble tables from it.

struct AnalyticCoeffs {
    bool separable = false;
    // Per-axis closed forms c_k(n); the product over axes gives the
    // d-dimensional coefficient.
    std::vector<std::function<std::complex<double>(int)>> axis;
    // Dense form for trigonometric polynomials: frequency -> coefficient.
    std::map<std::array<int, 3>, std::complex<double>> dense;
};

struct QuadrantLimit {
    bool exists = false;
    double value = 0.0;
    bool exact = false;  // produced by catalog metadata rather than sampling
};

struct CatalogMeta {
    std::string name;
    std::map<std::string, double> params;
    bool continuous = false;
    bool has_jumps = false;  // quadrature coefficients alias badly
    std::optional<AnalyticCoeffs> analytic;
    // Exact quadrant limit; delta_mask bit k set means delta_k = +1.
    std::function<QuadrantLimit(std::span<const double>, unsigned)> limit;
};

namespace detail {

struct GridFnImpl {
    int dim = 1;
    std::vector<std::vector<double>> axes;
    std::function<double(const std::array<double, 3>&)> eval;  // reduced coords
    bool exact = false;  // true: formula evaluator; false: sample table only
    std::vector<double> samples;  // row-major over the grid
    std::array<std::size_t, 3> strides{1, 1, 1};
    std::optional<CatalogMeta> meta;
};

inline void validate_axes(const std::vector<std::vector<double>>& axes) {
    if (axes.empty() || axes.size() > 3)
        throw std::invalid_argument("grid dimension must be 1, 2 or 3");
    for (const auto& ax : axes) {
        if (ax.size() < 2) throw std::invalid_argument("each axis needs at least 2 points");
        for (std::size_t j = 0; j < ax.size(); ++j) {
            if (ax[j] < 0.0 || ax[j] >= kTwoPi)
                throw std::invalid_argument("grid points must lie in [0, 2*pi)");
            if (j > 0 && !(ax[j] > ax[j - 1]))
                throw std::invalid_argument("grid points must be strictly increasing");
        }
    }
}

} // namespace detail

class GridFunction {
public:
    GridFunction() = default;

    int dim() const { return impl_->dim; }
    const std::vector<double>& axis(int k) const { return impl_->axes.at(k); }
    int axis_size(int k) const { return static_cast<int>(impl_->axes.at(k).size()); }
    bool exact_evaluator() const { return impl_->exact; }
    const CatalogMeta* meta() const { return impl_->meta ? &*impl_->meta : nullptr; }

    /// Point evaluation. Coordinates are reduced to [0, 2*pi) first; sample
    /// tables evaluate at the nearest grid point (periodic distance).
    double eval(std::span<const double> x) const {
        if (static_cast<int>(x.size()) != impl_->dim)
            throw std::invalid_argument("eval: wrong point dimension");
        std::array<double, 3> r{0, 0, 0};
        for (int k = 0; k < impl_->dim; ++k) r[k] = reduce_period(x[k]);
        if (impl_->exact) return impl_->eval(r);
        std::array<int, 3> idx{0, 0, 0};
        for (int k = 0; k < impl_->dim; ++k) idx[k] = nearest_index(k, r[k]);
        return at(std::span<const int>(idx.data(), impl_->dim));
    }

    double eval(std::initializer_list<double> x) const {
        return eval(std::span<const double>(x.begin(), x.size()));
    }

    /// Cached sample at grid indices.
    double at(std::span<const int> idx) const {
        return impl_->samples[flat_index(idx)];
    }

    double at(std::initializer_list<int> idx) const {
        return at(std::span<const int>(idx.begin(), idx.size()));
    }

    std::size_t flat_index(std::span<const int> idx) const {
        std::size_t f = 0;
        for (int k = 0; k < impl_->dim; ++k) {
            int i = idx[k];
            if (i < 0 || i >= axis_size(k)) throw std::out_of_range("grid index out of range");
            f += static_cast<std::size_t>(i) * impl_->strides[k];
        }
        return f;
    }

    const std::vector<double>& samples() const { return impl_->samples; }
    std::size_t stride(int k) const { return impl_->strides[k]; }

    GridFunction scaled(double c) const {
        auto base = impl_;
        GridFunction g;
        auto impl = std::make_shared<detail::GridFnImpl>(*base);
        impl->eval = [base, c](const std::array<double, 3>& r) { return c * base->eval(r); };
        for (auto& v : impl->samples) v *= c;
        if (impl->meta) {
            auto meta = *impl->meta;
            transform_meta(meta, c, 0.0);
            impl->meta = std::move(meta);
        }
        g.impl_ = std::move(impl);
        return g;
    }

    GridFunction plus_const(double c) const {
        auto base = impl_;
        GridFunction g;
        auto impl = std::make_shared<detail::GridFnImpl>(*base);
        impl->eval = [base, c](const std::array<double, 3>& r) { return base->eval(r) + c; };
        for (auto& v : impl->samples) v += c;
        if (impl->meta) {
            auto meta = *impl->meta;
            transform_meta(meta, 1.0, c);
            impl->meta = std::move(meta);
        }
        g.impl_ = std::move(impl);
        return g;
    }

    static GridFunction from_evaluator(std::vector<std::vector<double>> axes,
                                       std::function<double(const std::array<double, 3>&)> eval,
                                       std::optional<CatalogMeta> meta = std::nullopt) {
        detail::validate_axes(axes);
        auto impl = std::make_shared<detail::GridFnImpl>();
        impl->dim = static_cast<int>(axes.size());
        impl->axes = std::move(axes);
        impl->eval = std::move(eval);
        impl->exact = true;
        impl->meta = std::move(meta);
        fill_samples(*impl);
        GridFunction g;
        g.impl_ = std::move(impl);
        return g;
    }

    static GridFunction from_samples(std::vector<std::vector<double>> axes,
                                     std::vector<double> values) {
        detail::validate_axes(axes);
        std::size_t total = 1;
        for (const auto& ax : axes) total *= ax.size();
        if (values.size() != total)
            throw std::invalid_argument("sample count does not match grid size");
        auto impl = std::make_shared<detail::GridFnImpl>();
        impl->dim = static_cast<int>(axes.size());
        impl->axes = std::move(axes);
        impl->exact = false;
        impl->samples = std::move(values);
        set_strides(*impl);
        GridFunction g;
        g.impl_ = std::move(impl);
        return g;
    }

private:
    static void set_strides(detail::GridFnImpl& impl) {
        impl.strides = {1, 1, 1};
        for (int k = impl.dim - 2; k >= 0; --k)
            impl.strides[k] = impl.strides[k + 1] * impl.axes[k + 1].size();
    }

    static void fill_samples(detail::GridFnImpl& impl) {
        set_strides(impl);
        std::size_t total = 1;
        for (const auto& ax : impl.axes) total *= ax.size();
        impl.samples.resize(total);
        std::array<int, 3> idx{0, 0, 0};
        for (std::size_t f = 0; f < total; ++f) {
            std::size_t rem = f;
            std::array<double, 3> x{0, 0, 0};
            for (int k = 0; k < impl.dim; ++k) {
                idx[k] = static_cast<int>(rem / impl.strides[k]);
                rem %= impl.strides[k];
                x[k] = impl.axes[k][idx[k]];
            }
            impl.samples[f] = impl.eval(x);
        }
    }

    static void transform_meta(CatalogMeta& meta, double scale, double offset) {
        meta.name = (scale != 1.0 ? "scaled " : "") + std::string(offset != 0.0 ? "shifted " : "") +
                    meta.name;
        if (meta.limit) {
            auto base = meta.limit;
            meta.limit = [base, scale, offset](std::span<const double> x,
                                               unsigned mask) -> QuadrantLimit {
                QuadrantLimit l = base(x, mask);
                if (l.exists) l.value = scale * l.value + offset;
                return l;
            };
        }
        if (meta.analytic) {
            auto& a = *meta.analytic;
            if (a.separable && !a.axis.empty()) {
                if (offset != 0.0) {
                    // A separable table cannot absorb a constant offset.
                    meta.analytic.reset();
                } else {
                    auto first = a.axis[0];
                    a.axis[0] = [first, scale](int n) { return scale * first(n); };
                }
            } else {
                for (auto& [freq, c] : a.dense) c *= scale;
                if (offset != 0.0) a.dense[{0, 0, 0}] += offset;
            }
        }
    }

    int nearest_index(int k, double x) const {
        const auto& ax = impl_->axes[k];
        auto it = std::lower_bound(ax.begin(), ax.end(), x);
        auto dist = [&](double g) {
            double d = std::fabs(x - g);
            return std::min(d, kTwoPi - d);
        };
        int best = 0;
        double bestd = dist(ax[0]);
        auto consider = [&](int i) {
            if (i < 0 || i >= static_cast<int>(ax.size())) return;
            double d = dist(ax[i]);
            if (d < bestd) {
                bestd = d;
                best = i;
            }
        };
        int i = static_cast<int>(it - ax.begin());
        consider(i - 1);
        consider(i);
        consider(i % static_cast<int>(ax.size()));
        consider(static_cast<int>(ax.size()) - 1);
        return best;
    }

    std::shared_ptr<const detail::GridFnImpl> impl_;
};

// ---------------------------------------------------------------------------
// Boxes and mixed differences.

struct Box {
    int dim = 0;
    std::array<std::pair<double, double>, 3> iv{};

    static Box make(std::initializer_list<std::pair<double, double>> ivs) {
        Box b;
        b.dim = static_cast<int>(ivs.size());
        int k = 0;
        for (auto& p : ivs) b.iv[k++] = p;
        return b;
    }
};

/// Alternating-sign corner sum over the box: sum over corners of
/// (-1)^{number of lower endpoints} f(corner). Exact for catalog evaluators.
inline double mixed_difference(const GridFunction& f, const Box& box) {
    if (box.dim != f.dim()) throw std::invalid_argument("box dimension mismatch");
    for (int k = 0; k < box.dim; ++k)
        if (!(box.iv[k].first < box.iv[k].second))
            throw std::invalid_argument("degenerate box rejected");
    double sum = 0.0;
    for (unsigned mask = 0; mask < (1u << box.dim); ++mask) {
        std::array<double, 3> x{0, 0, 0};
        int lower = 0;
        for (int k = 0; k < box.dim; ++k) {
            bool upper = mask & (1u << k);
            x[k] = upper ? box.iv[k].second : box.iv[k].first;
            if (!upper) ++lower;
        }
        double sgn = (lower % 2 == 0) ? 1.0 : -1.0;
        sum += sgn * f.eval(std::span<const double>(x.data(), box.dim));
    }
    return sum;
}

/// Mixed difference in a subset of axes with the remaining coordinates fixed.
/// `axes` lists the differenced axes (ascending); `ivs[k]` is the interval on
/// axes[k]; `fixed` holds values for every axis not in `axes`, in axis order.
inline double mixed_difference_slice(const GridFunction& f, std::span<const int> axes,
                                     std::span<const std::pair<double, double>> ivs,
                                     std::span<const double> fixed) {
    int p = static_cast<int>(axes.size());
    int d = f.dim();
    if (d > 3) throw std::invalid_argument("dimension exceeds 3");
    if (p == 0 || p > d) throw std::invalid_argument("bad axis subset");
    if (ivs.size() != axes.size()) throw std::invalid_argument("interval count mismatch");
    if (static_cast<int>(fixed.size()) != d - p)
        throw std::invalid_argument("fixed coordinate count mismatch");
    for (const auto& iv : ivs)
        if (!(iv.first < iv.second)) throw std::invalid_argument("degenerate box rejected");
    double sum = 0.0;
    for (unsigned mask = 0; mask < (1u << p); ++mask) {
        std::array<double, 3> x{0, 0, 0};
        std::size_t fi = 0;
        for (int k = 0, a = 0; k < d; ++k) {
            if (a < p && axes[a] == k) {
                bool upper = mask & (1u << a);
                x[k] = upper ? ivs[a].second : ivs[a].first;
                ++a;
            } else {
                x[k] = fixed[fi++];
            }
        }
        int lower = p - __builtin_popcount(mask);
        double sgn = (lower % 2 == 0) ? 1.0 : -1.0;
        sum += sgn * f.eval(std::span<const double>(x.data(), d));
    }
    return sum;
}

// ---------------------------------------------------------------------------
// Quadrant limits and regular points.

struct QuadrantConfig {
    std::vector<double> ladder;  // strictly decreasing, >= 4 entries, max < pi/2
    int subgrid = 5;             // sample points per axis inside a quadrant box
    double tol_exact = 1e-6;     // stabilization tolerance, formula evaluators
    double tol_samples = 1e-3;   // stabilization tolerance, sample tables

    static QuadrantConfig defaults() {
        QuadrantConfig c;
        for (int k = 3; k <= 10; ++k) c.ladder.push_back(std::pow(2.0, -k));
        return c;
    }
};

struct QuadrantReport {
    std::vector<double> point;
    std::vector<QuadrantLimit> limits;  // indexed by delta bitmask, bit k set = +1
    bool regular = false;
    double f_star = 0.0;
    bool catalog_exact = false;
    QuadrantConfig config;
};

/// Per-quadrant limits f_delta(x) for all 2^d sign vectors, their mean f*
/// and the regular-point flag. Catalog functions with known limits answer
/// exactly; otherwise quadrant means over a shrinking ladder of boxes decide.
inline QuadrantReport quadrant_limits(const GridFunction& f, std::span<const double> x,
                                      QuadrantConfig cfg = QuadrantConfig::defaults()) {
    if (static_cast<int>(x.size()) != f.dim())
        throw std::invalid_argument("quadrant_limits: wrong point dimension");
    if (cfg.ladder.size() < 4) throw std::invalid_argument("ladder needs >= 4 entries");
    for (std::size_t i = 0; i < cfg.ladder.size(); ++i) {
        if (cfg.ladder[i] >= kPi / 2) throw std::invalid_argument("ladder entries must be < pi/2");
        if (i > 0 && !(cfg.ladder[i] < cfg.ladder[i - 1]))
            throw std::invalid_argument("ladder must be strictly decreasing");
    }

    QuadrantReport rep;
    rep.point.assign(x.begin(), x.end());
    rep.config = cfg;
    int d = f.dim();
    unsigned nq = 1u << d;
    rep.limits.resize(nq);

    const CatalogMeta* meta = f.meta();
    if (meta && meta->limit) {
        rep.catalog_exact = true;
        for (unsigned mask = 0; mask < nq; ++mask) rep.limits[mask] = meta->limit(x, mask);
    } else {
        double tol = f.exact_evaluator() ? cfg.tol_exact : cfg.tol_samples;
        std::size_t L = cfg.ladder.size();
        for (unsigned mask = 0; mask < nq; ++mask) {
            std::vector<double> means(L), oscs(L);
            for (std::size_t e = 0; e < L; ++e) {
                double eps = cfg.ladder[e];
                double sum = 0.0, mn = 0.0, mx = 0.0;
                bool first = true;
                int count = 0;
                std::array<int, 3> j{0, 0, 0};
                int total = 1;
                for (int k = 0; k < d; ++k) total *= cfg.subgrid;
                for (int t = 0; t < total; ++t) {
                    int rem = t;
                    std::array<double, 3> p{0, 0, 0};
                    for (int k = 0; k < d; ++k) {
                        j[k] = rem % cfg.subgrid;
                        rem /= cfg.subgrid;
                        double frac = (j[k] + 0.5) / cfg.subgrid;
                        double dir = (mask & (1u << k)) ? 1.0 : -1.0;
                        p[k] = x[k] + dir * eps * frac;
                    }
                    double v = f.eval(std::span<const double>(p.data(), d));
                    sum += v;
                    if (first) {
                        mn = mx = v;
                        first = false;
                    } else {
                        mn = std::min(mn, v);
                        mx = std::max(mx, v);
                    }
                    ++count;
                }
                means[e] = sum / count;
                oscs[e] = mx - mn;
            }
            bool stabilized = std::fabs(means[L - 1] - means[L - 2]) < tol &&
                              std::fabs(means[L - 2] - means[L - 3]) < tol &&
                              std::fabs(means[L - 3] - means[L - 4]) < tol;
            bool shrinking = oscs[L - 1] <= tol || oscs[L - 1] <= 0.5 * oscs[L - 4];
            rep.limits[mask].exists = stabilized && shrinking;
            rep.limits[mask].value = means[L - 1];
            rep.limits[mask].exact = false;
        }
    }

    rep.regular = true;
    for (const auto& l : rep.limits) rep.regular = rep.regular && l.exists;
    if (rep.regular) {
        double s = 0.0;
        for (const auto& l : rep.limits) s += l.value;
        rep.f_star = s / static_cast<double>(nq);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Catalog.

namespace detail {

struct Factor1D {
    std::string name;
    std::function<double(double)> f;                  // on [0, 2*pi)
    std::function<double(double, int)> one_sided;     // (x, dir) -> limit
    std::function<std::complex<double>(int)> coeff;   // closed form or empty
    bool continuous = false;
    bool has_jumps = false;
};

inline Factor1D factor_square_wave() {
    Factor1D g;
    g.name = "square_wave_1d";
    g.f = [](double t) { return (t == 0.0 || t == kPi) ? 0.0 : (t < kPi ? 1.0 : -1.0); };
    g.one_sided = [](double x, int dir) {
        double t = reduce_period(x);
        if (dir > 0) return t < kPi ? 1.0 : -1.0;
        if (t == 0.0) return -1.0;  // wraps to just below 2*pi
        return t <= kPi ? 1.0 : -1.0;
    };
    g.coeff = [](int m) -> std::complex<double> {
        if (m == 0 || m % 2 == 0) return {0.0, 0.0};
        return {0.0, -2.0 / (kPi * m)};
    };
    g.has_jumps = true;
    return g;
}

inline Factor1D factor_step(double h) {
    Factor1D g;
    g.name = "step_1d";
    g.f = [h](double t) { return t < kPi ? h : 0.0; };
    g.one_sided = [h](double x, int dir) {
        double t = reduce_period(x);
        if (dir > 0) return t < kPi ? h : 0.0;
        if (t == 0.0) return 0.0;
        return t <= kPi ? h : 0.0;
    };
    g.coeff = [h](int m) -> std::complex<double> {
        if (m == 0) return {h / 2.0, 0.0};
        if (m % 2 == 0) return {0.0, 0.0};
        return {0.0, -h / (kPi * m)};
    };
    g.has_jumps = true;
    return g;
}

inline Factor1D factor_ramp() {
    Factor1D g;
    g.name = "ramp_1d";
    g.f = [](double t) { return t < kPi ? t / kPi : 1.0; };
    g.one_sided = [g_f = g.f](double x, int dir) {
        double t = reduce_period(x);
        if (dir < 0 && t == 0.0) return 1.0;  // wrap: approaches the plateau
        return t < kPi ? t / kPi : 1.0;
    };
    g.continuous = false;  // jump at the wrap point
    g.has_jumps = true;
    return g;
}

inline Factor1D factor_modulus_family(double gamma, int teeth) {
    if (!(gamma > 0.0) || !(gamma < 1.0))
        throw std::invalid_argument("modulus_family requires gamma in (0, 1)");
    if (teeth < 2) throw std::invalid_argument("modulus_family requires >= 2 teeth");
    Factor1D g;
    g.name = "modulus_family";
    double K = teeth;
    // Tooth i (1-based) is a tent of height i^gamma - (i-1)^gamma on the
    // i-th of K equal subintervals; the best-n-interval oscillation sum of
    // the result is exactly n^gamma for n <= K.
    g.f = [gamma, K](double t) {
        double u = reduce_period(t) / kTwoPi * K;
        double i = std::floor(u);
        if (i >= K) i = K - 1;
        double frac = u - i;
        double h = std::pow(i + 1.0, gamma) - std::pow(i, gamma);
        return h * (frac <= 0.5 ? 2.0 * frac : 2.0 * (1.0 - frac));
    };
    g.one_sided = [f = g.f](double x, int dir) { return f(reduce_period(x)); };
    g.continuous = true;
    return g;
}

inline Factor1D parse_factor(const std::string& name, double h, double gamma, int teeth) {
    if (name == "square_wave_1d") return factor_square_wave();
    if (name == "step_1d") return factor_step(h);
    if (name == "ramp_1d") return factor_ramp();
    if (name == "modulus_family") return factor_modulus_family(gamma, teeth);
    throw std::invalid_argument("unknown 1-d factor: " + name);
}

inline CatalogMeta meta_from_factors(const std::string& name,
                                     std::vector<Factor1D> factors) {
    CatalogMeta meta;
    meta.name = name;
    meta.continuous = true;
    bool all_coeffs = true;
    for (const auto& fac : factors) {
        meta.continuous = meta.continuous && fac.continuous;
        meta.has_jumps = meta.has_jumps || fac.has_jumps;
        all_coeffs = all_coeffs && static_cast<bool>(fac.coeff);
    }
    if (all_coeffs) {
        AnalyticCoeffs a;
        a.separable = true;
        for (const auto& fac : factors) a.axis.push_back(fac.coeff);
        meta.analytic = std::move(a);
    }
    meta.limit = [factors](std::span<const double> x, unsigned mask) -> QuadrantLimit {
        QuadrantLimit l;
        l.exists = true;
        l.exact = true;
        l.value = 1.0;
        for (std::size_t k = 0; k < factors.size(); ++k) {
            int dir = (mask & (1u << k)) ? +1 : -1;
            l.value *= factors[k].one_sided(x[k], dir);
        }
        return l;
    };
    return meta;
}

} // namespace detail

inline std::vector<std::vector<double>> uniform_axes(std::span<const int> sizes) {
    std::vector<std::vector<double>> axes;
    for (int m : sizes) {
        if (m < 2) throw std::invalid_argument("uniform axis needs >= 2 points");
        std::vector<double> ax(m);
        for (int j = 0; j < m; ++j) ax[j] = kTwoPi * j / m;
        axes.push_back(std::move(ax));
    }
    return axes;
}

inline std::vector<std::vector<double>> uniform_axes(std::initializer_list<int> sizes) {
    return uniform_axes(std::span<const int>(sizes.begin(), sizes.size()));
}

/// Build a trigonometric polynomial from a coefficient map (2-d frequencies).
inline GridFunction make_trig_poly(std::map<std::array<int, 3>, std::complex<double>> coeffs,
                                   int dim, std::vector<std::vector<double>> axes) {
    CatalogMeta meta;
    meta.name = "trig_poly";
    meta.continuous = true;
    AnalyticCoeffs a;
    a.dense = coeffs;
    meta.analytic = std::move(a);
    auto eval = [coeffs, dim](const std::array<double, 3>& x) {
        std::complex<double> s{0.0, 0.0};
        for (const auto& [n, c] : coeffs) {
            double phase = 0.0;
            for (int k = 0; k < dim; ++k) phase += n[k] * x[k];
            s += c * std::polar(1.0, phase);
        }
        return s.real();
    };
    auto eval_copy = eval;
    meta.limit = [eval_copy, dim](std::span<const double> x, unsigned) -> QuadrantLimit {
        std::array<double, 3> r{0, 0, 0};
        for (int k = 0; k < dim; ++k) r[k] = reduce_period(x[k]);
        return {true, eval_copy(r), true};
    };
    return GridFunction::from_evaluator(std::move(axes), eval, std::move(meta));
}

/// Separable product of 1-d catalog factors.
inline GridFunction make_separable(std::vector<std::string> factor_names,
                                   std::vector<std::vector<double>> axes,
                                   double h = 1.0, double gamma = 0.5, int teeth = 128) {
    std::vector<detail::Factor1D> factors;
    for (const auto& n : factor_names) factors.push_back(detail::parse_factor(n, h, gamma, teeth));
    if (factors.size() != axes.size())
        throw std::invalid_argument("separable: factor count must match dimension");
    std::string name = "separable(";
    for (std::size_t i = 0; i < factors.size(); ++i)
        name += (i ? "," : "") + factors[i].name;
    name += ")";
    CatalogMeta meta = detail::meta_from_factors(name, factors);
    auto eval = [factors](const std::array<double, 3>& x) {
        double v = 1.0;
        for (std::size_t k = 0; k < factors.size(); ++k) v *= factors[k].f(x[k]);
        return v;
    };
    return GridFunction::from_evaluator(std::move(axes), eval, std::move(meta));
}

/// Catalog entry point. spec: "name" or "name:key=val,key=val".
/// Names: sign_diag, step_product, square_wave_1d, step_1d, ramp_1d,
/// trig_poly (cos x * cos y), separable, modulus_family.
inline GridFunction make_catalog(const std::string& spec,
                                 std::vector<std::vector<double>> axes) {
    auto colon = spec.find(':');
    std::string name = spec.substr(0, colon);
    std::string args = colon == std::string::npos ? "" : spec.substr(colon + 1);
    auto get = [&args](const std::string& key, double dflt) {
        std::string probe = key + "=";
        auto pos = args.find(probe);
        if (pos == std::string::npos) return dflt;
        return std::strtod(args.c_str() + pos + probe.size(), nullptr);
    };
    auto get_str = [&args](const std::string& key, const std::string& dflt) {
        std::string probe = key + "=";
        auto pos = args.find(probe);
        if (pos == std::string::npos) return dflt;
        auto end = args.find(',', pos);
        return args.substr(pos + probe.size(),
                           end == std::string::npos ? std::string::npos : end - pos - probe.size());
    };

    int dim = static_cast<int>(axes.size());

    if (name == "sign_diag") {
        if (dim != 2) throw std::invalid_argument("sign_diag is 2-dimensional");
        CatalogMeta meta;
        meta.name = "sign_diag";
        meta.has_jumps = true;
        meta.limit = [](std::span<const double> x, unsigned mask) -> QuadrantLimit {
            double u = reduce_period(x[0]);
            double v = reduce_period(x[1]);
            int d1 = (mask & 1u) ? +1 : -1;
            int d2 = (mask & 2u) ? +1 : -1;
            // Approach representative: leaving 0 downward lands just below 2*pi.
            if (u == 0.0 && d1 < 0) u = kTwoPi;
            if (v == 0.0 && d2 < 0) v = kTwoPi;
            if (u != v) return {true, u > v ? 1.0 : -1.0, true};
            // Quadrant straddles the diagonal.
            if (d1 > 0 && d2 < 0) return {true, 1.0, true};
            if (d1 < 0 && d2 > 0) return {true, -1.0, true};
            return {false, 0.0, true};
        };
        auto eval = [](const std::array<double, 3>& x) {
            double d = x[0] - x[1];
            return d > 0.0 ? 1.0 : (d < 0.0 ? -1.0 : 0.0);
        };
        return GridFunction::from_evaluator(std::move(axes), eval, std::move(meta));
    }

    if (name == "step_product") {
        double scale = get("scale", 1.0);
        std::vector<detail::Factor1D> factors;
        for (int k = 0; k < dim; ++k) factors.push_back(detail::factor_step(1.0));
        CatalogMeta meta = detail::meta_from_factors("step_product", factors);
        if (scale != 1.0) {
            // Fold the scale into the limit and first-axis coefficients.
            auto base_limit = meta.limit;
            meta.limit = [base_limit, scale](std::span<const double> x,
                                             unsigned mask) -> QuadrantLimit {
                QuadrantLimit l = base_limit(x, mask);
                if (l.exists) l.value *= scale;
                return l;
            };
            if (meta.analytic && meta.analytic->separable) {
                auto first = meta.analytic->axis[0];
                meta.analytic->axis[0] = [first, scale](int n) { return scale * first(n); };
            }
        }
        auto eval = [dim, scale](const std::array<double, 3>& x) {
            double v = scale;
            for (int k = 0; k < dim; ++k) v *= (x[k] < kPi ? 1.0 : 0.0);
            return v;
        };
        return GridFunction::from_evaluator(std::move(axes), eval, std::move(meta));
    }

    if (name == "square_wave_1d" || name == "step_1d" || name == "ramp_1d" ||
        name == "modulus_family") {
        if (dim != 1) throw std::invalid_argument(name + " is 1-dimensional");
        auto fac = detail::parse_factor(name, get("h", 1.0), get("gamma", 0.5),
                                        static_cast<int>(get("teeth", 128)));
        CatalogMeta meta = detail::meta_from_factors(name, {fac});
        if (name == "modulus_family") meta.params["gamma"] = get("gamma", 0.5);
        auto eval = [f = fac.f](const std::array<double, 3>& x) { return f(x[0]); };
        return GridFunction::from_evaluator(std::move(axes), eval, std::move(meta));
    }

    if (name == "trig_poly") {
        if (dim != 2) throw std::invalid_argument("trig_poly default is 2-dimensional");
        // Default table: cos x * cos y.
        std::map<std::array<int, 3>, std::complex<double>> c;
        c[{1, 1, 0}] = 0.25;
        c[{1, -1, 0}] = 0.25;
        c[{-1, 1, 0}] = 0.25;
        c[{-1, -1, 0}] = 0.25;
        return make_trig_poly(std::move(c), 2, std::move(axes));
    }

    if (name == "separable") {
        std::vector<std::string> names;
        const char* keys[3] = {"fx", "fy", "fz"};
        for (int k = 0; k < dim; ++k) names.push_back(get_str(keys[k], "square_wave_1d"));
        return make_separable(std::move(names), std::move(axes), get("h", 1.0),
                              get("gamma", 0.5), static_cast<int>(get("teeth", 128)));
    }

    throw std::invalid_argument("unknown catalog function: " + name);
}

inline GridFunction make_catalog(const std::string& spec, std::initializer_list<int> sizes) {
    return make_catalog(spec, uniform_axes(sizes));
}

// ---------------------------------------------------------------------------
// CSV sample tables: header row = axis sizes, then row-major values.

inline void save_csv(const GridFunction& f, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    for (int k = 0; k < f.dim(); ++k) out << (k ? "," : "") << f.axis_size(k);
    out << "\n";
    for (double v : f.samples()) out << format_value(v) << "\n";
}

inline GridFunction load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::string header;
    std::getline(in, header);
    std::vector<int> sizes;
    std::stringstream hs(header);
    std::string tok;
    while (std::getline(hs, tok, ',')) sizes.push_back(std::stoi(tok));
    std::vector<double> values;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        values.push_back(std::strtod(line.c_str(), nullptr));
    }
    return GridFunction::from_samples(uniform_axes(std::span<const int>(sizes.data(), sizes.size())),
                                      std::move(values));
}

} // namespace genvar
