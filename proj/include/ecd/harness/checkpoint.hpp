#pragma once

#include <string>

#include "ecd/ecdsep.hpp"
#include "ecd/rng.hpp"

namespace ecd::harness {

// Everything needed to continue a run bit-exactly: the flat optimizer state
// plus the random stream position.
struct Checkpoint {
    EcdState state;
    RngStream::State rng;
};

// JSON on disk. Engine words are written as decimal strings (they exceed the
// integer range JSON numbers can carry exactly); floats round-trip exactly.
void save_checkpoint(const std::string& path, const EcdState& state,
                     const RngStream::State& rng);
Checkpoint load_checkpoint(const std::string& path);

}  // namespace ecd::harness
