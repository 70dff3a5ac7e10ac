#pragma once

#include <cmath>
#include <cstdint>

namespace smi {

/// Counter-based generator: output i of stream (seed, stream) is a SplitMix64
/// finalizer applied to a per-stream key plus i times the 64-bit golden ratio.
/// Streams with distinct ids are independent for practical purposes, and any
/// draw is reproducible from (seed, stream, counter) alone, across platforms.
class CounterRng {
public:
    // Fixed stream ids so every language binding draws identical sequences.
    enum Stream : std::uint64_t {
        kDisturbance = 0,
        kInput = 1,
        kMeasurementNoise = 2,
        kVolumeMc = 3,
        kHitAndRun = 4,
        kProbeDirections = 5,
        kTest = 100,
    };

    CounterRng(std::uint64_t seed, std::uint64_t stream)
        : key_(mix(seed ^ mix(stream ^ 0x9E3779B97F4A7C15ULL))) {}

    std::uint64_t next_u64() {
        const std::uint64_t v = key_ + counter_ * 0x9E3779B97F4A7C15ULL;
        ++counter_;
        return mix(v);
    }

    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform on (0, 1].
    double uniform_pos() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Box-Muller (deterministic, unlike std::normal_distribution).
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform_pos();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ULL;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBULL;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace smi
