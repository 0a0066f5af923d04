#pragma once

#include <string>
#include <vector>

#include "rps/synth.hpp"

namespace rps::testing {

/// `n_blocks` noisy loops around `center`, block k seeded with seed + k.
inline std::vector<Trajectory<double>> loop_blocks(Point2<double> center, double radius, double turns, double noise,
                                                   int n_blocks, std::uint64_t seed = 1, int points_per_turn = 36) {
    std::vector<Trajectory<double>> blocks;
    for (int b = 0; b < n_blocks; ++b) {
        GeneratorSpec<double> spec;
        spec.kind = noise > 0 ? GeneratorKind::kNoisyLoop : GeneratorKind::kCircle;
        spec.center = center;
        spec.radius = radius;
        spec.turns = turns;
        spec.noise = noise;
        spec.points_per_turn = points_per_turn;
        spec.seed = seed + static_cast<std::uint64_t>(b);
        blocks.push_back(generate(spec, "synthetic", "B" + std::to_string(b + 1)));
    }
    return blocks;
}

/// Closed path: a loop around `a`, a jump to a loop around `b`, and the same
/// jump back. The two jumps cancel at every tripwire.
inline Trajectory<double> two_lobe(const Trajectory<double>& a, const Trajectory<double>& b) {
    Trajectory<double> out;
    out.block_id = a.block_id;
    out.treatment_id = a.treatment_id;
    out.points.resize(2, a.size() + b.size() + 1);
    out.points << a.points, b.points, a.points.col(0);
    return out;
}

}  // namespace rps::testing
