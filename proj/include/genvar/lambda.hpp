#pragma once

// Weight sequences for generalized-variation functionals.
//
// A weight sequence is a positive sequence lambda_1, lambda_2, ... that is
// eventually nondecreasing and tends to infinity. Catalog kinds cover the
// sequences the variation classes are usually built on (n, n^p, n/log^q n,
// n^p/log^q n); explicit lists and custom generators are supported for
// experiments. Sequences whose head is not monotone (n/log n dips at n = 3)
// are normalized by shifting the start of the weight indexing to the point
// from which the values are nondecreasing; every variation functional in
// this library draws its weights from that normalized tail.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "genvar/common.hpp"

namespace genvar {

enum class LambdaKind {
    Harmonic,     // lambda_n = n
    Power,        // lambda_n = n^p, p in (0, 1]
    NOverLogPow,  // lambda_n = n / log^q n (n >= 2), q > 0
    PowerOverLog, // lambda_n = n^p / log^q n (n >= 2), p in (0, 1], q > 0
    ExplicitList,
    Custom,
};

class LambdaSeq {
public:
    /// lambda_n for n >= 1. Explicit lists throw past their last entry.
    double value(std::uint64_t n) const {
        if (n == 0) throw std::out_of_range("lambda index starts at 1");
        if (kind_ == LambdaKind::ExplicitList) {
            if (n > values_.size()) throw std::out_of_range("explicit lambda list exhausted");
            return values_[n - 1];
        }
        return gen_(n);
    }

    /// Normalized weight i (i >= 1): the i-th element of the nondecreasing
    /// tail, lambda_{monotone_from + i - 1}.
    double weight(std::uint64_t i) const { return value(monotone_from_ + i - 1); }

    /// Weight i of the tail sequence starting at tail_start (1-based in the
    /// normalized indexing); tail_start = 1 reproduces weight().
    double tail_weight(std::uint64_t tail_start, std::uint64_t i) const {
        return value(monotone_from_ + tail_start - 1 + i - 1);
    }

    LambdaKind kind() const { return kind_; }
    const std::string& name() const { return name_; }
    std::uint64_t start_index() const { return start_index_; }
    std::uint64_t monotone_from() const { return monotone_from_; }
    bool growth_certified() const { return growth_certified_; }

    /// Largest addressable index (finite only for explicit lists).
    std::uint64_t max_index() const {
        return kind_ == LambdaKind::ExplicitList ? values_.size()
                                                 : std::numeric_limits<std::uint64_t>::max();
    }

    /// Largest number of normalized weights that can be drawn.
    std::uint64_t weight_capacity() const {
        if (kind_ != LambdaKind::ExplicitList) return std::numeric_limits<std::uint64_t>::max();
        if (values_.size() < monotone_from_) return 0;
        return values_.size() - monotone_from_ + 1;
    }

    static LambdaSeq from_generator(LambdaKind kind, std::string name,
                                    std::function<double(std::uint64_t)> gen,
                                    std::uint64_t start_index, std::uint64_t scan_horizon,
                                    bool growth_certified) {
        LambdaSeq s;
        s.kind_ = kind;
        s.name_ = std::move(name);
        s.gen_ = std::move(gen);
        s.start_index_ = start_index;
        s.growth_certified_ = growth_certified;
        s.monotone_from_ = scan_monotone(
            [&s](std::uint64_t n) { return s.gen_(n); }, start_index, scan_horizon);
        return s;
    }

    static LambdaSeq from_list(std::vector<double> values) {
        for (double v : values) {
            if (!(v > 0.0)) throw std::invalid_argument("explicit lambda list entries must be positive");
        }
        if (values.empty()) throw std::invalid_argument("explicit lambda list is empty");
        LambdaSeq s;
        s.kind_ = LambdaKind::ExplicitList;
        s.name_ = "explicit[" + std::to_string(values.size()) + "]";
        s.values_ = std::move(values);
        s.start_index_ = 1;
        s.monotone_from_ = scan_monotone(
            [&s](std::uint64_t n) { return s.values_[n - 1]; }, 1, s.values_.size());
        return s;
    }

private:
    // First index m such that every step lambda_{k} -> lambda_{k+1} with
    // k >= m - 1, k >= start is nondecreasing. A dip at (k, k+1) poisons
    // index k+1, so m lands strictly past the last element of any decrease.
    template <class F>
    static std::uint64_t scan_monotone(F&& value_at, std::uint64_t start, std::uint64_t horizon) {
        std::uint64_t last_bad = 0;
        for (std::uint64_t n = start; n + 1 <= horizon; ++n) {
            if (value_at(n) > value_at(n + 1)) last_bad = n + 1;
        }
        return last_bad == 0 ? start : last_bad + 1;
    }

    LambdaKind kind_ = LambdaKind::Custom;
    std::string name_;
    std::function<double(std::uint64_t)> gen_;
    std::vector<double> values_;
    std::uint64_t start_index_ = 1;
    std::uint64_t monotone_from_ = 1;
    bool growth_certified_ = false;
};

struct LambdaParams {
    double p = 1.0;
    double q = 1.0;
};

inline LambdaSeq make_lambda(LambdaKind kind, LambdaParams params = {}) {
    switch (kind) {
        case LambdaKind::Harmonic:
            return LambdaSeq::from_generator(
                kind, "harmonic", [](std::uint64_t n) { return static_cast<double>(n); }, 1, 8,
                true);
        case LambdaKind::Power: {
            double p = params.p;
            if (!(p > 0.0) || p > 1.0)
                throw std::invalid_argument("power lambda requires exponent p in (0, 1]");
            return LambdaSeq::from_generator(
                kind, "power:p=" + format_value(p),
                [p](std::uint64_t n) { return std::pow(static_cast<double>(n), p); }, 1, 8, true);
        }
        case LambdaKind::NOverLogPow: {
            double q = params.q;
            if (!(q > 0.0)) throw std::invalid_argument("n_over_log_pow requires q > 0");
            // Head below n = 2 is undefined (log 1 = 0); clamp to the first
            // valid value so value(1) stays positive. start_index marks 2.
            auto gen = [q](std::uint64_t n) {
                std::uint64_t m = n < 2 ? 2 : n;
                return static_cast<double>(m) / std::pow(std::log(static_cast<double>(m)), q);
            };
            // n/log^q n decreases until n = e^q; scan a little past it.
            std::uint64_t horizon = static_cast<std::uint64_t>(std::ceil(std::exp(q))) + 8;
            return LambdaSeq::from_generator(kind, "n_over_log_pow:q=" + format_value(q), gen, 2,
                                             horizon, true);
        }
        case LambdaKind::PowerOverLog: {
            double p = params.p, q = params.q;
            if (!(p > 0.0) || p > 1.0 || !(q > 0.0))
                throw std::invalid_argument("power_over_log requires p in (0, 1] and q > 0");
            auto gen = [p, q](std::uint64_t n) {
                std::uint64_t m = n < 2 ? 2 : n;
                return std::pow(static_cast<double>(m), p) /
                       std::pow(std::log(static_cast<double>(m)), q);
            };
            std::uint64_t horizon = static_cast<std::uint64_t>(std::ceil(std::exp(q / p))) + 8;
            return LambdaSeq::from_generator(
                kind, "power_over_log:p=" + format_value(p) + ",q=" + format_value(q), gen, 2,
                horizon, true);
        }
        default:
            throw std::invalid_argument("make_lambda: use from_list / from_generator for this kind");
    }
}

inline LambdaSeq make_lambda_custom(std::string name, std::function<double(std::uint64_t)> gen,
                                    bool growth_certified, std::uint64_t start_index = 1,
                                    std::uint64_t scan_horizon = 4096) {
    return LambdaSeq::from_generator(LambdaKind::Custom, std::move(name), std::move(gen),
                                     start_index, scan_horizon, growth_certified);
}

struct LambdaReport {
    bool valid = false;
    bool positive = false;
    bool bounded = false;  // no growth detected: violates lambda_n -> infinity
    bool head_shifted = false;
    bool head_le_one = false;  // lambda at start <= 1; accepted with a warning
    std::uint64_t start_index = 1;
    std::uint64_t monotone_from = 1;
    std::string message;
};

/// Check positivity, eventual monotonicity and growth. Bounded sequences
/// (lambda_n -> infinity fails over the probe window) are reported invalid.
inline LambdaReport validate_lambda(const LambdaSeq& seq) {
    LambdaReport r;
    r.start_index = seq.start_index();
    r.monotone_from = seq.monotone_from();
    r.head_shifted = seq.monotone_from() > seq.start_index();

    std::uint64_t probe_end = std::min<std::uint64_t>(seq.max_index(), seq.monotone_from() + 64);
    r.positive = true;
    for (std::uint64_t n = seq.start_index(); n <= probe_end; ++n) {
        if (!(seq.value(n) > 0.0)) {
            r.positive = false;
            break;
        }
    }

    double base = seq.value(seq.monotone_from());
    r.head_le_one = seq.value(seq.start_index()) <= 1.0;

    bool grows = seq.growth_certified();
    if (!grows) {
        // Probe dyadic indices for a factor-10 climb over the normalized head.
        std::uint64_t n = seq.monotone_from();
        while (true) {
            if (seq.value(n) > 10.0 * base) {
                grows = true;
                break;
            }
            if (n >= seq.max_index() || n > (1ull << 40)) break;
            n = std::min(seq.max_index(), n * 2);
            if (n == seq.monotone_from()) break;
        }
    }
    r.bounded = !grows;

    r.valid = r.positive && !r.bounded;
    if (!r.positive)
        r.message = "sequence has nonpositive entries";
    else if (r.bounded)
        r.message = "no growth detected across probe window; lambda_n -> infinity violated";
    else if (r.head_shifted)
        r.message = "head not monotone; weights start at index " + std::to_string(r.monotone_from);
    else
        r.message = "valid from index " + std::to_string(r.start_index);
    if (r.valid && r.head_le_one)
        r.message += "; warning: lambda at start <= 1";
    return r;
}

/// Load an explicit list from a one-value-per-line text file.
inline LambdaSeq load_lambda_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read lambda file: " + path);
    std::vector<double> values;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        values.push_back(std::strtod(line.c_str(), nullptr));
    }
    return LambdaSeq::from_list(std::move(values));
}

/// Parse a CLI lambda spec: "harmonic", "power:p=0.5", "n_over_log_pow:q=1",
/// "power_over_log:p=0.4,q=1.5", "const:c=1", "file:<path>".
inline LambdaSeq parse_lambda(const std::string& spec) {
    auto colon = spec.find(':');
    std::string head = spec.substr(0, colon);
    std::string args = colon == std::string::npos ? "" : spec.substr(colon + 1);
    auto get = [&args](const std::string& key, double dflt, bool* found = nullptr) {
        std::string probe = key + "=";
        auto pos = args.find(probe);
        if (pos == std::string::npos) {
            if (found) *found = false;
            return dflt;
        }
        if (found) *found = true;
        return std::strtod(args.c_str() + pos + probe.size(), nullptr);
    };
    if (head == "harmonic") return make_lambda(LambdaKind::Harmonic);
    if (head == "power") return make_lambda(LambdaKind::Power, {get("p", 0.5), 1.0});
    if (head == "n_over_log_pow") return make_lambda(LambdaKind::NOverLogPow, {1.0, get("q", 1.0)});
    if (head == "power_over_log")
        return make_lambda(LambdaKind::PowerOverLog, {get("p", 0.5), get("q", 1.0)});
    if (head == "const") {
        double c = get("c", 1.0);
        if (!(c > 0.0)) throw std::invalid_argument("const lambda requires c > 0");
        return make_lambda_custom("const:c=" + format_value(c),
                                  [c](std::uint64_t) { return c; }, false);
    }
    if (head == "file") return load_lambda_file(args);
    throw std::invalid_argument("unknown lambda spec: " + spec);
}

// ---------------------------------------------------------------------------
// Young pairs and Phi catalog.
//
// Pairs (Phi, Psi) with a*b <= Phi(a) + Psi(b) are supplied explicitly; the
// library never derives a conjugate symbolically.

struct YoungPair {
    std::string name;
    std::function<double(double)> phi;
    std::function<double(double)> psi;
};

/// Phi(u) = u^p with the power conjugate u^{p/(p-1)}, p > 1.
inline YoungPair young_power_pair(double p) {
    if (!(p > 1.0)) throw std::invalid_argument("young_power_pair requires p > 1");
    double q = p / (p - 1.0);
    return {"power:p=" + format_value(p),
            [p](double u) { return std::pow(u, p); },
            [q](double v) { return std::pow(v, q); }};
}

/// Phi(u) = (1+u)log(1+u) - u paired with Psi(v) = e^v - v - 1.
inline YoungPair young_llog_pair() {
    return {"llog",
            [](double u) { return (1.0 + u) * std::log1p(u) - u; },
            [](double v) { return std::expm1(v) - v; }};
}

/// A Phi for Phi-variation: strictly increasing, continuous, Phi(0) = 0.
struct PhiFunction {
    std::string name;
    std::function<double(double)> fn;
};

inline PhiFunction parse_phi(const std::string& spec) {
    auto colon = spec.find(':');
    std::string head = spec.substr(0, colon);
    if (head == "power") {
        double p = 1.0;
        if (colon != std::string::npos) {
            auto pos = spec.find("p=", colon);
            if (pos != std::string::npos) p = std::strtod(spec.c_str() + pos + 2, nullptr);
        }
        if (!(p >= 1.0)) throw std::invalid_argument("phi power requires p >= 1");
        return {"power:p=" + format_value(p), [p](double u) { return std::pow(u, p); }};
    }
    if (head == "llog") {
        return {"llog", [](double u) { return (1.0 + u) * std::log1p(u) - u; }};
    }
    throw std::invalid_argument("unknown phi spec: " + spec);
}

} // namespace genvar
