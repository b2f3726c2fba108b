#pragma once

#include <Eigen/Dense>
#include <limits>

#include "woven/error.hpp"

namespace woven {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

// Principal cosines at least 1 - this threshold are treated as directions of
// M ∩ N and do not contribute to the angle between M and N.
inline constexpr double kIntersectionThreshold = 1e-8;

// Numerical rank policy. The effective cutoff for a matrix is
// max(absolute, relative * s_max * max(rows, cols)); singular values at or
// below it are treated as zero.
struct RankTolerance {
  double absolute = 0.0;
  double relative = std::numeric_limits<double>::epsilon();

  double cutoff(double largest_singular_value, Eigen::Index rows,
                Eigen::Index cols) const;
};

// Thin SVD: m = u * diag(singular) * v^T, singular values nonincreasing.
struct Svd {
  Mat u;
  Vec singular;
  Mat v;
};

// Closed subspace of R^ambient_dim, represented by an orthonormal column
// basis. Zero columns encode the trivial subspace {0}.
class Subspace {
 public:
  Subspace(Eigen::Index ambient_dim, Mat basis);

  static Subspace trivial(Eigen::Index ambient_dim);
  static Subspace full(Eigen::Index ambient_dim);

  Eigen::Index ambient_dim() const { return ambient_; }
  Eigen::Index dim() const { return basis_.cols(); }
  const Mat& basis() const { return basis_; }

 private:
  Eigen::Index ambient_;
  Mat basis_;
};

Svd svd(const Mat& m);

// Singular values only (no U/V), nonincreasing.
Vec singular_values(const Mat& m);

Eigen::Index rank_from_singular_values(const Vec& s, const RankTolerance& tol,
                                       Eigen::Index rows, Eigen::Index cols);
Eigen::Index numerical_rank(const Mat& m, const RankTolerance& tol = {});

Mat pinv(const Mat& m, const RankTolerance& tol = {});

// Reduced minimum modulus: smallest singular value above the rank cutoff.
// Returns 0 when no singular value survives (in particular for the zero
// matrix); callers needing surjectivity check the rank explicitly.
double gamma(const Mat& m, const RankTolerance& tol = {});

double spectral_norm(const Mat& m);

Subspace null_basis(const Mat& m, const RankTolerance& tol = {});
Subspace range_basis(const Mat& m, const RankTolerance& tol = {});

// basis * basis^T; symmetric idempotent.
Mat ortho_proj(const Subspace& s);

// Cosine of the angle between M and N: principal cosines of the two bases,
// with cosines >= 1 - kIntersectionThreshold discarded as M ∩ N. Returns the
// largest remaining cosine, or 0 when none remain or either difference
// M ⊖ N, N ⊖ M is trivial.
double friedrichs_cosine(const Subspace& m, const Subspace& n,
                         const RankTolerance& tol = {});

// Gap delta(M, N) = ||(I - P_N) P_M||.
double gap(const Subspace& m, const Subspace& n);

}  // namespace woven
