#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace ddehopf {

// SplitMix64 mixing step. Used to turn (master seed, index) pairs into
// well-separated engine seeds so parallel trials get independent streams.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Seed of the independent stream for (master, index).
constexpr std::uint64_t derive_stream(std::uint64_t master, std::uint64_t index) noexcept {
    return splitmix64(master ^ splitmix64(index ^ 0x8c2f9d4b1a6e3c57ULL));
}

constexpr std::uint64_t derive_stream(std::uint64_t master, std::uint64_t a,
                                      std::uint64_t b) noexcept {
    return derive_stream(derive_stream(master, a), b);
}

// Standard-normal generator with a pinned algorithm: Box-Muller on explicit
// 53-bit uniforms from mt19937_64. std::normal_distribution is
// implementation-defined, which would break bit-reproducibility contracts.
class GaussianRng {
public:
    explicit GaussianRng(std::uint64_t seed) : engine_(seed) {}

    // Uniform on (0, 1]; never 0, so log() below is always finite.
    double uniform() { return static_cast<double>((engine_() >> 11) + 1) * 0x1p-53; }

    double gauss() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double r = std::sqrt(-2.0 * std::log(uniform()));
        const double t = 2.0 * std::numbers::pi * uniform();
        spare_ = r * std::sin(t);
        have_spare_ = true;
        return r * std::cos(t);
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace ddehopf
