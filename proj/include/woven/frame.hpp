#pragma once

#include "woven/linalg.hpp"

namespace woven {

// Optimal frame bounds: 0 < lower <= upper.
struct FrameBounds {
  double lower = 0.0;
  double upper = 0.0;
};

// Ordered finite vector family {f_i} in R^d, stored as the d x n matrix whose
// i-th column is f_i. Any finite family is representable (Bessel is automatic
// in finite dimension); the frame property is checked on demand, not at
// construction.
class Frame {
 public:
  explicit Frame(Mat columns);

  static Frame standard_basis(Eigen::Index dim);

  Eigen::Index dim() const { return cols_.rows(); }
  Eigen::Index count() const { return cols_.cols(); }
  Vec vector(Eigen::Index i) const { return cols_.col(i); }
  const Mat& columns() const { return cols_; }

 private:
  Mat cols_;
};

// d x n matrix with T e_i = f_i over the standard basis {e_i}.
Mat synthesis(const Frame& f);

// S = T T^T; symmetric positive semidefinite.
Mat frame_operator(const Frame& f);

bool is_frame(const Frame& f, const RankTolerance& tol = {});

// lower = gamma(T)^2, upper = ||T||^2. Throws NotAFrame when the synthesis
// operator is not surjective at the given tolerance.
FrameBounds optimal_bounds(const Frame& f, const RankTolerance& tol = {});

// {S^{-1} f_i}.
Frame canonical_dual(const Frame& f, const RankTolerance& tol = {});

// {alpha f_i}; bounds scale by alpha^2.
Frame scale(const Frame& f, double alpha);

// {t f_i}; synthesis(result) = t * synthesis(f).
Frame apply_operator(const Mat& t, const Frame& f);

}  // namespace woven
