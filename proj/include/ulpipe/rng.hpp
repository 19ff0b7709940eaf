#pragma once
// Deterministic RNG used everywhere randomness is needed, so outputs are
// reproducible for a fixed seed regardless of platform or standard library.

#include <cmath>
#include <cstdint>
#include <string_view>
#include <vector>

#include "ulpipe/text.hpp"

namespace ulpipe {

// splitmix64 stream.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ull;
        return mix64(state_);
    }

    // Unbiased integer in [0, n); n must be > 0.
    uint64_t below(uint64_t n) {
        // Lemire's multiply-shift with rejection.
        uint64_t x = next();
        __uint128_t m = __uint128_t(x) * n;
        uint64_t lo = uint64_t(m);
        if (lo < n) {
            uint64_t threshold = uint64_t(-n) % n;
            while (lo < threshold) {
                x = next();
                m = __uint128_t(x) * n;
                lo = uint64_t(m);
            }
        }
        return uint64_t(m >> 64);
    }

    // Uniform in [0, 1) with 53-bit resolution.
    double unit() { return double(next() >> 11) * 0x1.0p-53; }

    // Normal via Box-Muller; second value of each pair is cached.
    double normal(double mean, double stddev) {
        if (have_spare_) {
            have_spare_ = false;
            return mean + stddev * spare_;
        }
        double u1 = unit();
        while (u1 <= 0.0) u1 = unit();
        double u2 = unit();
        double radius = std::sqrt(-2.0 * std::log(u1));
        double angle = 6.283185307179586476925286766559 * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return mean + stddev * radius * std::cos(angle);
    }

    // Fisher-Yates using below(); stable across platforms.
    template <class T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
    }

private:
    uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

// Independent sub-seed for a named purpose or a per-document stream.
inline uint64_t derive_seed(uint64_t root, std::string_view tag) { return hash64(tag, root); }

}  // namespace ulpipe
