#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "woven/frame.hpp"

namespace woven {

// Subset sigma of the index set {0..n-1}, encoded as a bitmask. The weaving
// W_sigma takes g_i for i in sigma and f_i otherwise.
struct PartitionSet {
  int n;
  std::uint64_t sigma;

  PartitionSet(int n, std::uint64_t sigma);

  bool contains(int i) const { return (sigma >> i) & 1u; }
  std::uint64_t complement() const;
};

struct SigmaBounds {
  double lower = 0.0;  // exactly 0 when the weaving is not a frame
  double upper = 0.0;
  bool is_frame = false;
};

// Exhaustive data over all 2^n partitions.
struct WeavingReport {
  int n = 0;
  std::vector<SigmaBounds> per_sigma;  // 2^n entries when stored, else empty
  double uniform_lower = 0.0;          // C = min over sigma of lower
  double uniform_upper = 0.0;          // D = max over sigma of upper
  bool woven = false;                  // every weaving a frame <=> C > 0
  std::uint64_t worst_sigma = 0;       // smallest bitmask attaining C
};

struct WeavingOptions {
  int cap = 20;                         // enumeration cap on n
  std::optional<bool> store_per_sigma;  // default: store iff n <= 16
  int threads = 0;                      // 0 = hardware concurrency
};

// n x n diagonal 0/1 matrix with ones at positions in sigma.
Mat projection_matrix(const PartitionSet& p);

// Column i equals g_i if i in sigma, else f_i; equals
// T_F + (T_G - T_F) P_sigma.
Mat weaving_synthesis(const Frame& f, const Frame& g, const PartitionSet& p);

SigmaBounds weaving_bounds(const Frame& f, const Frame& g,
                           const PartitionSet& p,
                           const RankTolerance& tol = {});

// Evaluates weaving_bounds over every subset of {0..n-1}. Subsets may be
// sharded across threads; the min/max reduction is exact, so the result is
// identical regardless of scheduling.
WeavingReport woven_constants(const Frame& f, const Frame& g,
                              const RankTolerance& tol = {},
                              const WeavingOptions& opts = {});

}  // namespace woven
