#pragma once

#include <cstdint>
#include <random>

namespace nnpres {

/// splitmix64 step; used to derive independent per-sample seeds so that
/// sampling loops stay deterministic no matter how callers partition them.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Seeded generator with platform-independent uniform draws.
/// std::uniform_real_distribution is implementation-defined, so reports
/// would not be byte-identical across standard libraries; we map the
/// raw 64-bit output ourselves.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Derive the generator for sample #index under a run-level seed.
    static Rng for_sample(std::uint64_t seed, std::uint64_t index) {
        std::uint64_t s = seed + 0x632be59bd9b4e019ULL * (index + 1);
        return Rng(splitmix64(s));
    }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform in [0, 1).
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform01();
    }

    /// Uniform integer in [0, n).
    std::uint64_t uniform_index(std::uint64_t n) {
        return n == 0 ? 0 : engine_() % n;
    }

    bool coin(double p = 0.5) { return uniform01() < p; }

private:
    std::mt19937_64 engine_;
};

} // namespace nnpres
