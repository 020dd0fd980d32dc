#pragma once

#include <array>
#include <cstdint>

#include "ecd/types.hpp"

namespace ecd {

/// Deterministic random stream: xoshiro256++ seeded through splitmix64.
///
/// Identical (seed, stream) always yields the bit-identical sequence of draws,
/// independent of platform C library details; normal variates are produced by
/// the Marsaglia polar method rather than std::normal_distribution, whose
/// output is implementation-defined. The two-argument constructor derives
/// decorrelated substreams so parallel workers can be keyed (seed, worker).
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : RngStream(seed, 0) {}
    RngStream(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t next_u64();

    /// Uniform in [0, 1), 53-bit resolution.
    double uniform01();
    double uniform(double lo, double hi);

    /// Standard normal draw; a spare from the polar method is cached in the
    /// stream state, so the sequence does not depend on call chunking.
    double normal();
    ParamVector normal_vector(Index n);

    /// Full stream state for checkpointing (4 engine words, spare, spare flag).
    struct State {
        std::array<std::uint64_t, 4> s;
        double spare;
        bool has_spare;
    };
    State state() const { return {s_, spare_, has_spare_}; }
    void set_state(const State& st);

private:
    std::array<std::uint64_t, 4> s_{};
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace ecd
