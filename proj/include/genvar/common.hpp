#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace genvar {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;
inline constexpr double kPi = 3.1415926535897932384626433832795;

/// Reduce a coordinate to the fundamental period [0, 2*pi).
inline double reduce_period(double x) {
    if (x >= 0.0 && x < kTwoPi) return x;
    double r = std::fmod(x, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    if (r >= kTwoPi) r = 0.0;
    return r;
}

/// Thrown when an exhaustive search is requested beyond the configured cap.
class CapExceeded : public std::runtime_error {
public:
    explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// Fixed 12-significant-digit formatting used by every emitted file.
inline std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

/// Round a double through the 12-significant-digit text form, so JSON and
/// CSV renderings agree on the value they carry.
inline double round_12sig(double v) {
    return std::strtod(format_value(v).c_str(), nullptr);
}

/// FNV-1a over a byte string; used for config hashes in report provenance.
inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string fnv1a_hex(const std::string& s) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(fnv1a(s)));
    return buf;
}

} // namespace genvar
