#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace stick {

inline constexpr const char* kVersion = "0.1.0";

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EnumerationTooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EmptySupport : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// 64-bit FNV-1a, used for config/data fingerprints.
inline uint64_t fnv1a64(const void* data, size_t len, uint64_t h = 0xcbf29ce484222325ull) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

inline uint64_t fnv1a64(const std::string& s) { return fnv1a64(s.data(), s.size()); }

inline std::string hex64(uint64_t v) {
    char buf[17];
    static const char* digits = "0123456789abcdef";
    for (int i = 15; i >= 0; --i) {
        buf[i] = digits[v & 0xf];
        v >>= 4;
    }
    buf[16] = '\0';
    return std::string(buf);
}

// splitmix64 step; used to derive independent stream seeds from (seed, index).
inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline uint64_t stream_seed(uint64_t seed, uint64_t index) {
    return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x51ed2701c9e44d1bull));
}

// Deterministic RNG: mt19937_64 has a standardized bit stream, and the
// uniform/normal transforms below avoid libstdc++'s unspecified distributions.
class RandomStream {
public:
    explicit RandomStream(uint64_t seed) : eng_(seed) {}

    double uniform01() {  // [0, 1), 53-bit
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Marsaglia polar method (no trig, cached spare).
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform01() - 1.0;
            v = 2.0 * uniform01() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        has_spare_ = true;
        return u * m;
    }

    uint64_t raw() { return eng_(); }

private:
    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

inline double logsumexp(const std::vector<double>& v) {
    double mx = kNegInf;
    for (double x : v)
        if (x > mx) mx = x;
    if (!std::isfinite(mx)) return mx;
    double s = 0.0;
    for (double x : v) s += std::exp(x - mx);
    return mx + std::log(s);
}

// Shortest round-trip decimal representation; stable across runs, no locale.
inline std::string fmt_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

inline double parse_double(const std::string& s, const char* what) {
    double v = 0.0;
    const char* b = s.data();
    const char* e = s.data() + s.size();
    while (b < e && (*b == ' ' || *b == '\t')) ++b;
    auto [ptr, ec] = std::from_chars(b, e, v);
    while (ptr < e && (*ptr == ' ' || *ptr == '\t')) ++ptr;
    if (ec != std::errc() || ptr != e)
        throw ValidationError(std::string("bad numeric value for ") + what + ": '" + s + "'");
    return v;
}

// Exact integer key on a 1e-9 lattice; grids/sums in this artifact are decimals
// with far fewer places, so comparisons (ties, CDF thresholds) become exact.
inline int64_t lattice_key(double v) { return std::llround(v * 1e9); }

}  // namespace stick
