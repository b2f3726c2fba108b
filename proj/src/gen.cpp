#include "woven/gen.hpp"

#include <cmath>
#include <numbers>

#include "woven/rng.hpp"

namespace woven {

Frame random_frame(Eigen::Index dim, Eigen::Index count, std::uint64_t seed,
                   const RankTolerance& tol) {
  if (dim < 1 || count < dim) {
    throw InvalidArgument("random_frame: need count >= dim >= 1");
  }
  SplitMix64 rng(seed);
  for (int attempt = 0; attempt < 100; ++attempt) {
    Mat cols(dim, count);
    for (Eigen::Index i = 0; i < count; ++i) {
      for (Eigen::Index k = 0; k < dim; ++k) {
        cols(k, i) = rng.symmetric();
      }
    }
    Frame candidate(std::move(cols));
    if (is_frame(candidate, tol)) return candidate;
  }
  throw GenerationFailure("random_frame: no frame after 100 attempts");
}

Frame tight_frame(Eigen::Index dim, Eigen::Index count) {
  if (dim < 1 || count < dim) {
    throw InvalidArgument("tight_frame: need count >= dim >= 1");
  }
  if (count == dim) return Frame::standard_basis(dim);

  // Rows are sampled trigonometric characters; frequencies stay below count,
  // which keeps the rows orthogonal with norm sqrt(count/2) each, so
  // T T^T = (count/dim) I exactly.
  const double scale = std::sqrt(2.0 / static_cast<double>(dim));
  Mat cols(dim, count);
  for (Eigen::Index j = 0; j < count; ++j) {
    const double theta =
        2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(count);
    Eigen::Index row = 0;
    if (dim % 2 == 1) {
      cols(row++, j) = scale / std::numbers::sqrt2;
    }
    for (Eigen::Index l = 1; row < dim; ++l) {
      cols(row++, j) = scale * std::cos(static_cast<double>(l) * theta);
      cols(row++, j) = scale * std::sin(static_cast<double>(l) * theta);
    }
  }
  return Frame(std::move(cols));
}

Frame perturb_frame(const Frame& base, double target, std::uint64_t seed,
                    const RankTolerance& tol) {
  if (!(target >= 0.0) || !std::isfinite(target)) {
    throw InvalidArgument("perturb_frame: target must be a nonnegative real");
  }
  const FrameBounds bounds = optimal_bounds(base, tol);

  SplitMix64 rng(seed);
  Mat direction(base.dim(), base.count());
  for (Eigen::Index i = 0; i < base.count(); ++i) {
    for (Eigen::Index k = 0; k < base.dim(); ++k) {
      direction(k, i) = rng.symmetric();
    }
  }
  const double norm = spectral_norm(direction);
  if (norm == 0.0 || target == 0.0) {
    return Frame(base.columns());
  }
  direction *= target * std::sqrt(bounds.lower) / norm;
  return Frame(base.columns() + direction);
}

}  // namespace woven
