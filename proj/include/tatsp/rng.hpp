#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace tatsp {

// SplitMix64 finalizer; used to derive independent seeds from (base, ordinal).
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t mix_seed(std::uint64_t base, std::uint64_t ordinal) noexcept
{
    return splitmix64(splitmix64(base) ^ (ordinal + 0x632be59bd9b4e019ULL));
}

/// Portable random source. The engine is std::mt19937_64, whose output sequence
/// is fixed by the standard; the distributions below are written out by hand
/// because the std:: distributions differ between standard libraries.
class Rng
{
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Uniform on [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Uniform integer on [0, n); n > 0. Rejection removes modulo bias.
    std::uint64_t below(std::uint64_t n)
    {
        const std::uint64_t limit = (~std::uint64_t{0}) - ((~std::uint64_t{0}) % n);
        std::uint64_t x = engine_();
        while (x >= limit)
            x = engine_();
        return x % n;
    }

    template <typename T>
    void shuffle(std::span<T> items)
    {
        for (std::size_t i = items.size(); i > 1; --i)
            std::swap(items[i - 1], items[below(i)]);
    }

private:
    std::mt19937_64 engine_;
};

} // namespace tatsp
