#ifndef ELLIPTICA_RNG_HPP
#define ELLIPTICA_RNG_HPP

#include <cstdint>

namespace elliptica
{

/// SplitMix64 (Steele, Lea, Flood). Sample i of a sweep draws from its own
/// stream seeded with mix(seed + golden * (i + 1)), so the values seen by a
/// sample do not depend on how samples are distributed over threads.
class SplitMix64
{
public:
    static constexpr std::uint64_t golden = 0x9E3779B97F4A7C15ULL;

    explicit SplitMix64(std::uint64_t state) : state_(state) {}

    static SplitMix64 stream(std::uint64_t seed, std::uint64_t index)
    {
        return SplitMix64(mix(seed + golden * (index + 1)));
    }

    static std::uint64_t mix(std::uint64_t z)
    {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t next()
    {
        state_ += golden;
        return mix(state_);
    }

    /// Uniform double in [a, b), 53 random bits.
    double uniform(double a, double b)
    {
        const double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
        return a + (b - a) * u;
    }

private:
    std::uint64_t state_;
};

} // namespace elliptica

#endif
