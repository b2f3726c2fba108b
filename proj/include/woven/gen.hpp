#pragma once

#include <cstdint>

#include "woven/frame.hpp"

namespace woven {

// Entries i.i.d. uniform[-1, 1) from SplitMix64(seed), drawn vector by vector
// (all dim entries of f_0, then f_1, ...). Retries on rank deficiency, up to
// 100 attempts, then throws GenerationFailure.
Frame random_frame(Eigen::Index dim, Eigen::Index count, std::uint64_t seed,
                   const RankTolerance& tol = {});

// Harmonic-type tight frame with bounds A = B = count/dim. count = dim gives
// the standard basis.
Frame tight_frame(Eigen::Index dim, Eigen::Index count);

// g = f + E with E random and rescaled so ||T_F - T_G|| = target * A_F^{1/2}.
Frame perturb_frame(const Frame& base, double target, std::uint64_t seed,
                    const RankTolerance& tol = {});

}  // namespace woven
