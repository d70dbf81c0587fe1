#pragma once

#include <cstdint>
#include <optional>
#include <random>

namespace amm::sim {

/// Seedable generator with a fully pinned output sequence.
///
/// Raw bits come from std::mt19937_64, whose sequence the C++ standard fixes.
/// Uniforms take the top 53 bits: u = (bits >> 11) * 2^-53, in [0, 1).
/// Normals use the Box-Muller cosine/sine pair on (1 - u1, u2), cosine first,
/// the sine variate cached for the next call. std::normal_distribution is
/// not used because its algorithm varies between standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t bits() { return engine_(); }
    double uniform();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    double normal();
    bool coin() { return (bits() >> 63) != 0; }

private:
    std::mt19937_64 engine_;
    std::optional<double> spare_;
};

}  // namespace amm::sim
