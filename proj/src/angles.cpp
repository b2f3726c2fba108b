#include "woven/angles.hpp"

#include <bit>
#include <cmath>
#include <limits>

#include "woven/detail/mask_reduce.hpp"

namespace woven {

namespace {

struct AngleLocal {
  double best = -1.0;
  std::uint64_t argmax = 0;
};

AngleLocal merge_angle(AngleLocal a, const AngleLocal& b) {
  if (b.best > a.best || (b.best == a.best && b.argmax < a.argmax)) {
    return b;
  }
  return a;
}

template <typename CosineOfMask>
AngleSup sup_over_masks(int n, int cap, int threads, CosineOfMask cosine_of) {
  if (n > cap || n > 62) {
    throw TooManyPartitions("angle supremum: frame count exceeds enumeration cap");
  }
  const std::uint64_t total = std::uint64_t{1} << n;
  auto per_mask = [&cosine_of](std::uint64_t mask, AngleLocal& local) {
    const double c = cosine_of(mask);
    if (c > local.best || (c == local.best && mask < local.argmax)) {
      local.best = c;
      local.argmax = mask;
    }
  };
  const AngleLocal folded =
      detail::mask_reduce(total, threads, AngleLocal{}, per_mask, merge_angle);
  return {folded.best, PartitionSet(n, folded.argmax)};
}

}  // namespace

StackedOperator stacked_synthesis(const Frame& f, const Frame& g) {
  if (f.dim() != g.dim() || f.count() != g.count()) {
    throw ShapeMismatch("stacked_synthesis: frames have different shapes");
  }
  Mat m(f.dim(), 2 * f.count());
  m.leftCols(f.count()) = f.columns();
  m.rightCols(f.count()) = g.columns() - f.columns();
  return {std::move(m)};
}

ObliqueProjection oblique_q(const PartitionSet& p) {
  Mat q = Mat::Zero(2 * p.n, 2 * p.n);
  q.topLeftCorner(p.n, p.n) = Mat::Identity(p.n, p.n);
  q.topRightCorner(p.n, p.n) = projection_matrix(p);
  if (((q * q) - q).cwiseAbs().maxCoeff() > 1e-10) {
    throw Error("oblique_q: projection failed idempotency check");
  }
  return {std::move(q)};
}

AngleSup woven_angle_sup(const Frame& f, const Frame& g,
                         const RankTolerance& tol, int cap) {
  if (!is_frame(f, tol) || !is_frame(g, tol)) {
    throw NotAFrame("woven_angle_sup: both families must be frames");
  }
  const int n = static_cast<int>(f.count());
  const Subspace kernel = null_basis(stacked_synthesis(f, g).mat, tol);

  auto cosine_of = [&](std::uint64_t mask) {
    const ObliqueProjection q = oblique_q(PartitionSet(n, mask));
    // R(Q_sigma^*) taken as the column space of the transposed matrix.
    const Subspace range_q = range_basis(q.mat.transpose(), tol);
    return friedrichs_cosine(kernel, range_q, tol);
  };
  return sup_over_masks(n, cap, 0, cosine_of);
}

AngleSup riesz_compatibility(const Frame& f, const RankTolerance& tol,
                             int cap) {
  if (!is_frame(f, tol)) {
    throw NotAFrame("riesz_compatibility: not a frame");
  }
  const int n = static_cast<int>(f.count());
  const Subspace kernel = null_basis(f.columns(), tol);

  auto cosine_of = [&](std::uint64_t mask) {
    const int k = std::popcount(mask);
    if (k == 0) return 0.0;
    Mat basis = Mat::Zero(n, k);  // columns e_i, i in sigma: exact orthonormal
    int col = 0;
    for (int i = 0; i < n; ++i) {
      if ((mask >> i) & 1u) basis(i, col++) = 1.0;
    }
    return friedrichs_cosine(kernel, Subspace(n, std::move(basis)), tol);
  };
  return sup_over_masks(n, cap, 0, cosine_of);
}

GammaProductBounds gamma_product_bounds(const Mat& a, const Mat& b,
                                        const RankTolerance& tol) {
  if (a.cols() != b.rows()) {
    throw ShapeMismatch("gamma_product_bounds: shapes are not composable");
  }
  const Subspace null_a = null_basis(a, tol);
  const Subspace range_b = range_basis(b, tol);

  double c = 0.0;
  if (null_a.dim() > 0 && range_b.dim() > 0) {
    const Vec s = singular_values(null_a.basis().transpose() * range_b.basis());
    if (range_b.dim() <= null_a.dim() &&
        s(s.size() - 1) >= 1.0 - kIntersectionThreshold) {
      c = 1.0;  // R(b) contained in N(a): the product collapses
    } else {
      for (Eigen::Index i = 0; i < s.size(); ++i) {
        if (s(i) < 1.0 - kIntersectionThreshold) {
          c = std::min(std::max(s(i), 0.0), 1.0);
          break;
        }
      }
    }
  }

  const double sine = std::sqrt(std::max(0.0, 1.0 - c * c));
  GammaProductBounds out;
  out.cosine = c;
  out.lower = gamma(a, tol) * gamma(b, tol) * sine;
  out.upper = spectral_norm(a) * spectral_norm(b) * sine;
  return out;
}

}  // namespace woven
