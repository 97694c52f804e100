#ifndef WPCE_RNG_HPP
#define WPCE_RNG_HPP

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace wpce {

/// SplitMix64 finalizer; bijective on 64-bit words.
std::uint64_t splitmix64(std::uint64_t x);

/// Order-sensitive hash of a list of words, used to derive independent
/// substream seeds (seed lattice) from a master seed and a record key.
std::uint64_t derive_seed(std::initializer_list<std::uint64_t> parts);

/// FNV-1a of a short tag so string labels can participate in derive_seed.
std::uint64_t tag(std::string_view label);

/// Deterministic random source. The engine is std::mt19937_64, whose output
/// sequence is fixed by the standard; the distributions are implemented here
/// because the standard library ones are implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform();

    /// Standard normal via Box-Muller (the cached second variate is reused).
    double normal();

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace wpce

#endif // WPCE_RNG_HPP
