#pragma once

// Fourier coefficients, rectangular partial sums, Cesaro means of any order
// above -1, and convergence diagnostics against the quadrant-limit mean f*.
//
// Cesaro means reduce to a separable per-axis transform of the coefficient
// data: exchanging the order of summation in the defining double sum gives
//   sigma_m(x) = sum_n c_n * prod_k A^{a_k}_{m_k-|n_k|} / A^{a_k}_{m_k} * e^{i n.x},
// using the telescoping identity sum_{j<=K} A^{a-1}_j = A^a_K. The kernel
// mass identity is asserted per degree as a cross-check; negative orders
// stay stable because only ratios of the positive A^a_k enter.

#include <array>
#include <cmath>
#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "genvar/gridfn.hpp"

namespace genvar {

enum class CoeffSource { Analytic, Quadrature };

struct CoefficientTable {
    int dim = 1;
    std::array<int, 3> degree{0, 0, 0};
    CoeffSource source = CoeffSource::Analytic;
    bool separable = false;
    // Separable storage: per-axis vectors of length 2N_k+1, index n + N_k.
    std::vector<std::vector<std::complex<double>>> axis_coeffs;
    // Dense storage, row-major over (2N_1+1) x ... lattices.
    std::vector<std::complex<double>> dense;
    std::array<int, 3> quad_grid{0, 0, 0};
    bool warn_discontinuous = false;

    std::size_t dense_index(std::span<const int> n) const {
        std::size_t f = 0;
        for (int k = 0; k < dim; ++k) {
            f = f * (2 * degree[k] + 1) + static_cast<std::size_t>(n[k] + degree[k]);
        }
        return f;
    }

    std::complex<double> at(std::span<const int> n) const {
        for (int k = 0; k < dim; ++k)
            if (n[k] < -degree[k] || n[k] > degree[k]) return {0.0, 0.0};
        if (separable) {
            std::complex<double> c{1.0, 0.0};
            for (int k = 0; k < dim; ++k) c *= axis_coeffs[k][n[k] + degree[k]];
            return c;
        }
        return dense[dense_index(n)];
    }
};

enum class SourcePreference { PreferAnalytic, RequireAnalytic, RequireQuadrature };

namespace detail {

inline bool axis_is_uniform(const std::vector<double>& ax) {
    std::size_t m = ax.size();
    for (std::size_t j = 0; j < m; ++j)
        if (std::fabs(ax[j] - kTwoPi * j / m) > 1e-9) return false;
    return true;
}

inline CoefficientTable quadrature_table(const GridFunction& f, std::span<const int> degrees) {
    CoefficientTable t;
    t.dim = f.dim();
    t.source = CoeffSource::Quadrature;
    for (int k = 0; k < t.dim; ++k) {
        int g = f.axis_size(k);
        if (!axis_is_uniform(f.axis(k)))
            throw std::invalid_argument("quadrature coefficients require a uniform grid");
        if (g < 2 * degrees[k] + 2)
            throw std::invalid_argument(
                "degree " + std::to_string(degrees[k]) + " exceeds the alias bound; axis " +
                std::to_string(k) + " needs a grid of at least " +
                std::to_string(2 * degrees[k] + 2) + " points");
        t.degree[k] = degrees[k];
        t.quad_grid[k] = g;
    }
    if (f.meta() && f.meta()->has_jumps) t.warn_discontinuous = true;

    // Row-column transform: periodic-rectangle rule per axis.
    std::vector<std::complex<double>> data(f.samples().begin(), f.samples().end());
    std::array<std::size_t, 3> shape{1, 1, 1};
    for (int k = 0; k < t.dim; ++k) shape[k] = f.axis_size(k);
    for (int k = t.dim - 1; k >= 0; --k) {
        std::size_t g = shape[k];
        std::size_t nfreq = 2 * t.degree[k] + 1;
        std::size_t outer = 1, inner = 1;
        for (int kk = 0; kk < k; ++kk) outer *= shape[kk];
        for (int kk = k + 1; kk < t.dim; ++kk) inner *= (kk > k ? (2 * t.degree[kk] + 1) : 1);
        // After transforming axes k+1..d-1, the layout is
        // [shape_0..shape_k, nfreq_{k+1}..nfreq_{d-1}].
        std::vector<std::complex<double>> next(outer * nfreq * inner);
        for (std::size_t o = 0; o < outer; ++o) {
            for (std::size_t i = 0; i < inner; ++i) {
                for (std::size_t q = 0; q < nfreq; ++q) {
                    int n = static_cast<int>(q) - t.degree[k];
                    std::complex<double> sum{0.0, 0.0};
                    for (std::size_t j = 0; j < g; ++j) {
                        double angle = -n * (kTwoPi * j / g);
                        sum += data[(o * g + j) * inner + i] * std::polar(1.0, angle);
                    }
                    next[(o * nfreq + q) * inner + i] = sum / static_cast<double>(g);
                }
            }
        }
        data.swap(next);
    }
    t.dense = std::move(data);
    return t;
}

} // namespace detail

/// Coefficient table for f up to the given per-axis degrees. Catalog closed
/// forms are used when available (and required by RequireAnalytic); the
/// quadrature path applies the periodic-rectangle rule on the function's own
/// uniform grid and is exact for trigonometric polynomials below the alias
/// bound. Quadrature on jump catalogs carries a warning flag.
inline CoefficientTable fourier_coefficients(const GridFunction& f, std::span<const int> degrees,
                                             SourcePreference pref = SourcePreference::PreferAnalytic) {
    if (static_cast<int>(degrees.size()) != f.dim())
        throw std::invalid_argument("one degree per axis required");
    const CatalogMeta* meta = f.meta();
    bool have_analytic = meta && meta->analytic;
    if (pref == SourcePreference::RequireAnalytic && !have_analytic)
        throw std::invalid_argument("no closed-form coefficients for this function");
    if (have_analytic && pref != SourcePreference::RequireQuadrature) {
        CoefficientTable t;
        t.dim = f.dim();
        t.source = CoeffSource::Analytic;
        const auto& a = *meta->analytic;
        for (int k = 0; k < t.dim; ++k) t.degree[k] = degrees[k];
        if (a.separable) {
            t.separable = true;
            for (int k = 0; k < t.dim; ++k) {
                std::vector<std::complex<double>> row(2 * degrees[k] + 1);
                for (int n = -degrees[k]; n <= degrees[k]; ++n)
                    row[n + degrees[k]] = a.axis[k](n);
                t.axis_coeffs.push_back(std::move(row));
            }
        } else {
            std::size_t total = 1;
            for (int k = 0; k < t.dim; ++k) total *= 2 * degrees[k] + 1;
            t.dense.assign(total, {0.0, 0.0});
            for (const auto& [freq, c] : a.dense) {
                bool in_range = true;
                for (int k = 0; k < t.dim; ++k)
                    in_range = in_range && std::abs(freq[k]) <= degrees[k];
                if (!in_range) continue;
                std::array<int, 3> n{0, 0, 0};
                for (int k = 0; k < t.dim; ++k) n[k] = freq[k];
                t.dense[t.dense_index(std::span<const int>(n.data(), t.dim))] = c;
            }
        }
        return t;
    }
    return detail::quadrature_table(f, degrees);
}

namespace detail {

inline void check_imag(std::complex<double> v) {
    if (std::fabs(v.imag()) > 1e-10 * std::max(1.0, std::fabs(v.real())))
        throw std::logic_error("imaginary residue exceeds tolerance; non-real table?");
}

// Per-axis exponential tables e^{i n x}, n = -M..M.
inline std::vector<std::complex<double>> phase_row(int M, double x) {
    std::vector<std::complex<double>> row(2 * M + 1);
    for (int n = -M; n <= M; ++n) row[n + M] = std::polar(1.0, n * x);
    return row;
}

// Shared evaluation: sum over the degree box of c(n) * prod weights * phases.
// `mult[k]` may be empty (all-ones multiplier).
inline double weighted_sum(const CoefficientTable& t, std::span<const int> M,
                           std::span<const double> x,
                           const std::array<std::vector<double>, 3>& mult) {
    for (int k = 0; k < t.dim; ++k)
        if (M[k] > t.degree[k])
            throw std::invalid_argument("requested degree exceeds the coefficient table");
    if (t.separable) {
        std::complex<double> prod{1.0, 0.0};
        for (int k = 0; k < t.dim; ++k) {
            auto ph = phase_row(M[k], x[k]);
            std::complex<double> s{0.0, 0.0};
            for (int n = -M[k]; n <= M[k]; ++n) {
                double w = mult[k].empty() ? 1.0 : mult[k][std::abs(n)];
                s += t.axis_coeffs[k][n + t.degree[k]] * w * ph[n + M[k]];
            }
            prod *= s;
        }
        check_imag(prod);
        return prod.real();
    }
    std::array<std::vector<std::complex<double>>, 3> ph;
    for (int k = 0; k < t.dim; ++k) ph[k] = phase_row(M[k], x[k]);
    std::complex<double> sum{0.0, 0.0};
    std::array<int, 3> n{0, 0, 0};
    auto rec = [&](auto&& self, int k, std::complex<double> acc) -> void {
        if (k == t.dim) {
            sum += acc * t.at(std::span<const int>(n.data(), t.dim));
            return;
        }
        for (n[k] = -M[k]; n[k] <= M[k]; ++n[k]) {
            double w = mult[k].empty() ? 1.0 : mult[k][std::abs(n[k])];
            self(self, k + 1, acc * ph[k][n[k] + M[k]] * w);
        }
    };
    rec(rec, 0, std::complex<double>{1.0, 0.0});
    check_imag(sum);
    return sum.real();
}

} // namespace detail

/// Rectangular partial sum S_{M}[f](x); the imaginary residue of the complex
/// evaluation must stay below 1e-10 (real-valued tables).
inline double rectangular_partial_sum(const CoefficientTable& t, std::span<const int> M,
                                      std::span<const double> x) {
    std::array<std::vector<double>, 3> none;
    return detail::weighted_sum(t, M, x, none);
}

inline double rectangular_partial_sum(const CoefficientTable& t, std::initializer_list<int> M,
                                      std::initializer_list<double> x) {
    return rectangular_partial_sum(t, std::span<const int>(M.begin(), M.size()),
                                   std::span<const double>(x.begin(), x.size()));
}

/// A_0^a, ..., A_nmax^a via the stable multiplicative recurrence
/// A_k = A_{k-1} (a + k) / k; strictly positive for a > -1.
inline std::vector<double> cesaro_coefficients(double alpha, int n_max) {
    if (!(alpha > -1.0)) throw std::invalid_argument("Cesaro order must exceed -1");
    if (n_max < 0) throw std::invalid_argument("n_max must be nonnegative");
    std::vector<double> a(n_max + 1);
    a[0] = 1.0;
    for (int k = 1; k <= n_max; ++k) a[k] = a[k - 1] * (alpha + k) / k;
    return a;
}

/// |sum_{j=0}^m A_j^{alpha-1} - A_m^alpha|, accumulated in extended
/// precision; the telescoping identity makes this zero in exact arithmetic.
inline double cesaro_kernel_mass_error(double alpha, int m) {
    long double term = 1.0L;  // A_0^{alpha-1}
    long double sum = term;
    for (int k = 1; k <= m; ++k) {
        term *= (static_cast<long double>(alpha) - 1.0L + k) / k;
        sum += term;
    }
    long double am = 1.0L;
    for (int k = 1; k <= m; ++k) am *= (static_cast<long double>(alpha) + k) / k;
    return static_cast<double>(std::fabs(sum - am));
}

struct CesaroParams {
    std::vector<double> orders;  // one per axis, each > -1
    std::vector<int> degrees;    // one per axis, >= 0
};

/// Cesaro (C; a_1,...,a_d) mean at x, computed through the per-axis
/// coefficient multipliers A^{a}_{m-|n|} / A^{a}_{m}.
inline double cesaro_mean(const CoefficientTable& t, const CesaroParams& p,
                          std::span<const double> x) {
    if (static_cast<int>(p.orders.size()) != t.dim ||
        static_cast<int>(p.degrees.size()) != t.dim)
        throw std::invalid_argument("one order and one degree per axis required");
    std::array<std::vector<double>, 3> mult;
    for (int k = 0; k < t.dim; ++k) {
        if (!(p.orders[k] > -1.0)) throw std::invalid_argument("Cesaro order must exceed -1");
        if (p.degrees[k] < 0) throw std::invalid_argument("degrees must be nonnegative");
        int m = p.degrees[k];
        auto A = cesaro_coefficients(p.orders[k], m);
        if (cesaro_kernel_mass_error(p.orders[k], m) > 1e-9 * std::max(1.0, A[m]))
            throw std::logic_error("Cesaro kernel mass check failed");
        mult[k].resize(m + 1);
        for (int n = 0; n <= m; ++n) mult[k][n] = A[m - n] / A[m];
    }
    return detail::weighted_sum(t, std::span<const int>(p.degrees.data(), p.degrees.size()), x,
                                mult);
}

inline double cesaro_mean(const CoefficientTable& t, const CesaroParams& p,
                          std::initializer_list<double> x) {
    return cesaro_mean(t, p, std::span<const double>(x.begin(), x.size()));
}

// ---------------------------------------------------------------------------
// Convergence diagnostics.

enum class TraceMethod { PartialSum, Cesaro };
enum class TraceVerdict { Converging, Stalling, Growing };

inline const char* to_string(TraceVerdict v) {
    switch (v) {
        case TraceVerdict::Converging: return "CONVERGING";
        case TraceVerdict::Stalling: return "STALLING";
        case TraceVerdict::Growing: return "GROWING";
    }
    return "?";
}

struct TraceConfig {
    double error_floor = 1e-12;  // errors at or below this count as converged
    int decrease_steps = 3;      // strict decreases required at the tail
    double growth_factor = 2.0;  // cumulative growth flagging GROWING
    bool pringsheim_lattice = false;  // sup of errors over degree pairs >= N
};

struct ConvergenceTrace {
    std::vector<double> point;
    double target = 0.0;
    bool target_exact = false;
    TraceMethod method = TraceMethod::PartialSum;
    std::vector<double> orders;
    std::vector<int> degrees;
    std::vector<double> values;
    std::vector<double> abs_errors;
    TraceVerdict verdict = TraceVerdict::Stalling;
    TraceConfig config;
};

namespace detail {

inline TraceVerdict classify_trace(const std::vector<double>& e, const TraceConfig& cfg) {
    std::size_t K = e.size();
    if (K == 0) return TraceVerdict::Stalling;
    if (e.back() <= cfg.error_floor) return TraceVerdict::Converging;
    if (K > static_cast<std::size_t>(cfg.decrease_steps)) {
        bool dec = true;
        for (int s = 0; s < cfg.decrease_steps; ++s)
            dec = dec && e[K - 1 - s] < e[K - 2 - s];
        if (dec) return TraceVerdict::Converging;
    }
    double mn = e[0];
    for (double x : e) mn = std::min(mn, x);
    if (e.back() >= cfg.growth_factor * std::max(mn, cfg.error_floor) && K >= 2 &&
        e.back() >= e[K - 2])
        return TraceVerdict::Growing;
    return TraceVerdict::Stalling;
}

} // namespace detail

/// Evaluate partial sums or Cesaro means at equal per-axis degrees along the
/// dyadic schedule and compare against f*(x). Refused at non-regular points.
inline ConvergenceTrace pringsheim_diagnostic(const GridFunction& f, std::span<const double> x,
                                              TraceMethod method, std::span<const double> orders,
                                              std::span<const int> dyadic_degrees,
                                              TraceConfig cfg = {}) {
    for (std::size_t i = 1; i < dyadic_degrees.size(); ++i)
        if (!(dyadic_degrees[i] > dyadic_degrees[i - 1]))
            throw std::invalid_argument("degree schedule must be increasing");
    if (dyadic_degrees.empty()) throw std::invalid_argument("empty degree schedule");

    auto quad = quadrant_limits(f, x);
    if (!quad.regular)
        throw std::invalid_argument("diagnostic refused: target f* undefined at a non-regular point");

    ConvergenceTrace tr;
    tr.point.assign(x.begin(), x.end());
    tr.target = quad.f_star;
    tr.target_exact = quad.catalog_exact;
    tr.method = method;
    tr.orders.assign(orders.begin(), orders.end());
    tr.degrees.assign(dyadic_degrees.begin(), dyadic_degrees.end());
    tr.config = cfg;

    int n_max = dyadic_degrees.back();
    std::vector<int> deg(f.dim(), n_max);
    auto table = fourier_coefficients(f, std::span<const int>(deg.data(), deg.size()));

    for (int N : dyadic_degrees) {
        std::vector<int> M(f.dim(), N);
        double v;
        if (method == TraceMethod::PartialSum) {
            v = rectangular_partial_sum(table, std::span<const int>(M.data(), M.size()), x);
        } else {
            CesaroParams p;
            p.orders.assign(orders.begin(), orders.end());
            p.degrees = M;
            v = cesaro_mean(table, p, x);
        }
        tr.values.push_back(v);
        double err = std::fabs(v - tr.target);
        if (cfg.pringsheim_lattice && f.dim() == 2 && method == TraceMethod::PartialSum) {
            // Sup of errors over the dyadic degree-pair lattice above N.
            for (int M1 : dyadic_degrees) {
                if (M1 < N) continue;
                for (int M2 : dyadic_degrees) {
                    if (M2 < N) continue;
                    std::array<int, 2> mm{M1, M2};
                    double vv = rectangular_partial_sum(
                        table, std::span<const int>(mm.data(), 2), x);
                    err = std::max(err, std::fabs(vv - tr.target));
                }
            }
        }
        tr.abs_errors.push_back(err);
    }
    tr.verdict = detail::classify_trace(tr.abs_errors, cfg);
    return tr;
}

} // namespace genvar
