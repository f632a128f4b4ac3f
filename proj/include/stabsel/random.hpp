#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace stabsel {

/**
 * Seeded random stream with platform-independent output.
 *
 * The engine is std::mt19937_64, whose output sequence is fixed by the
 * standard. Uniform, integer and Gaussian draws are derived here rather than
 * through the <random> distributions, whose algorithms are implementation
 * defined, so identical seeds give identical draws with every standard library.
 */
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    /// Independent stream number `index` of a master seed. Streams depend only
    /// on (master, index), so work split across threads stays reproducible.
    static Rng stream(std::uint64_t master, std::uint64_t index);

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform();

    /// Uniform integer on [0, n). Requires n > 0.
    std::size_t uniform_index(std::size_t n);

    /// Standard normal draw (Marsaglia polar method).
    double normal();

    double normal(double mean, double sd) { return mean + sd * normal(); }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// SplitMix64 finalizer; used for seed derivation.
std::uint64_t mix_seed(std::uint64_t x);

}  // namespace stabsel
