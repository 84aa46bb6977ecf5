#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace kdeplan {

// Deterministic random stream used everywhere randomness is needed.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the C++
// standard, so the same seed yields the same u64 sequence on every platform.
// All derived draws (uniform doubles, bounded indices, normals) are produced
// by our own transforms on that sequence rather than by std::*_distribution,
// which the standard leaves implementation-defined.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1) with 53 random mantissa bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Unbiased integer in [0, n). n must be positive.
    std::size_t uniform_index(std::size_t n) {
        const std::uint64_t un = static_cast<std::uint64_t>(n);
        const std::uint64_t threshold = (0 - un) % un;  // 2^64 mod n
        for (;;) {
            const std::uint64_t x = next_u64();
            if (x >= threshold) return static_cast<std::size_t>(x % un);
        }
    }

    // Standard normal via Box-Muller; consumes two uniforms per pair.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * 3.14159265358979323846 * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

    // Derives an independent child seed from a base seed and up to two tags
    // (splitmix64 finalizer, applied per word).
    static std::uint64_t derive(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0) {
        std::uint64_t h = mix(base + 0x9e3779b97f4a7c15ull);
        h = mix(h ^ mix(a + 0xbf58476d1ce4e5b9ull));
        h = mix(h ^ mix(b + 0x94d049bb133111ebull));
        return h;
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xbf58476d1ce4e5b9ull;
        z ^= z >> 27;
        z *= 0x94d049bb133111ebull;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t seed_;
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace kdeplan
