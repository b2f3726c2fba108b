#include "woven/frame.hpp"

#include <Eigen/Cholesky>

namespace woven {

Frame::Frame(Mat columns) : cols_(std::move(columns)) {
  if (cols_.rows() < 1) {
    throw InvalidMatrix("frame: dimension must be positive");
  }
  if (cols_.size() > 0 && !cols_.allFinite()) {
    throw InvalidMatrix("frame: non-finite entries");
  }
}

Frame Frame::standard_basis(Eigen::Index dim) {
  return Frame(Mat::Identity(dim, dim));
}

Mat synthesis(const Frame& f) { return f.columns(); }

Mat frame_operator(const Frame& f) {
  return f.columns() * f.columns().transpose();
}

bool is_frame(const Frame& f, const RankTolerance& tol) {
  return numerical_rank(f.columns(), tol) == f.dim();
}

FrameBounds optimal_bounds(const Frame& f, const RankTolerance& tol) {
  const Vec s = singular_values(f.columns());
  const Eigen::Index r =
      rank_from_singular_values(s, tol, f.dim(), f.count());
  if (r < f.dim()) {
    throw NotAFrame("optimal_bounds: synthesis operator is not surjective");
  }
  return {s(r - 1) * s(r - 1), s(0) * s(0)};
}

Frame canonical_dual(const Frame& f, const RankTolerance& tol) {
  if (!is_frame(f, tol)) {
    throw NotAFrame("canonical_dual: not a frame");
  }
  const Mat s = frame_operator(f);
  return Frame(s.ldlt().solve(f.columns()));
}

Frame scale(const Frame& f, double alpha) {
  if (!(alpha > 0.0)) {
    throw InvalidScale("scale: alpha must be positive");
  }
  return Frame(alpha * f.columns());
}

Frame apply_operator(const Mat& t, const Frame& f) {
  if (t.rows() != f.dim() || t.cols() != f.dim()) {
    throw ShapeMismatch("apply_operator: operator must be dim x dim");
  }
  if (t.size() > 0 && !t.allFinite()) {
    throw InvalidMatrix("apply_operator: non-finite operator entries");
  }
  return Frame(t * f.columns());
}

}  // namespace woven
