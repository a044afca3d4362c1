#ifndef GSEM_SEM_RNG_HPP
#define GSEM_SEM_RNG_HPP

#include <array>
#include <cstdint>
#include <initializer_list>
#include <string_view>

namespace gsem::sem {

/// Portable pseudo-random stream.
///
/// Algorithm "xoshiro256**-sm64-v1": state seeded by four SplitMix64 outputs;
/// uniforms take the top 53 bits; bounded integers use rejection on the top
/// bits; normals use the Marsaglia polar method with one cached spare. The
/// whole pipeline is defined here rather than through <random>
/// distributions, whose output is implementation-defined, so a seed yields
/// the same stream on every platform and in any other language that follows
/// this description.
class Rng {
public:
    static constexpr std::string_view kAlgorithm = "xoshiro256**-sm64-v1";

    explicit Rng(std::uint64_t seed);

    /// Independent stream for (seed, path...), e.g. (base seed, replication).
    static Rng derive(std::uint64_t seed, std::initializer_list<std::uint64_t> path);
    static std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> path);

    std::uint64_t next_u64();
    /// Uniform on [0, 1).
    double uniform01();
    /// Uniform on [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
    /// Uniform on {0, ..., n - 1}; n must be positive.
    std::uint64_t uniform_index(std::uint64_t n);
    double standard_normal();

private:
    std::array<std::uint64_t, 4> state_{};
    double spare_ = 0.0;
    bool has_spare_ = false;
};

std::uint64_t splitmix64(std::uint64_t& state);

}  // namespace gsem::sem

#endif  // GSEM_SEM_RNG_HPP
