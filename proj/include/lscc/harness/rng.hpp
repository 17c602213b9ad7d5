#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace lscc {

/// Counter-based 64-bit generator (splitmix64 finalizer over an additive
/// counter). Avoids std:: distributions on purpose: outputs are identical
/// across platforms, which the determinism guarantees depend on.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next_u64() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform angle in [0, 2*pi).
    double next_angle() { return next_double() * 2.0 * std::numbers::pi; }

    /// Standard normal via Box-Muller (hand-rolled for determinism).
    double next_gaussian() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        double u1 = next_double();
        while (u1 == 0.0) u1 = next_double();
        const double u2 = next_double();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 2.0 * std::numbers::pi * u2;
        cached_ = r * std::sin(t);
        have_cached_ = true;
        return r * std::cos(t);
    }

    std::complex<double> next_complex_gaussian() {
        const double re = next_gaussian();
        const double im = next_gaussian();
        return {re, im};
    }

    /// Uniform integer in [0, bound) by rejection.
    uint64_t next_below(uint64_t bound) {
        const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        uint64_t v = next_u64();
        while (v >= limit) v = next_u64();
        return v % bound;
    }

    /// Stream derivation: per-run seed from a master seed and a run index.
    /// seed_i = finalize(master ^ finalize(index + 1)), so neighbouring
    /// indices land in unrelated streams.
    static uint64_t derive_seed(uint64_t master, uint64_t index) {
        return mix(master ^ mix(index + 1));
    }

private:
    static uint64_t mix(uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    uint64_t state_;
    double cached_ = 0.0;
    bool have_cached_ = false;
};

} // namespace lscc
