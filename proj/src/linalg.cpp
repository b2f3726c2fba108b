#include "woven/linalg.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

namespace woven {

namespace {

void require_finite(const Mat& m, const char* what) {
  if (m.size() > 0 && !m.allFinite()) {
    throw InvalidMatrix(std::string(what) + ": non-finite entries");
  }
}

struct FullSvd {
  Mat u;
  Vec s;
  Mat v;
};

FullSvd full_svd(const Mat& m) {
  require_finite(m, "svd input");
  if (m.size() == 0) {
    return {Mat::Identity(m.rows(), m.rows()), Vec(0),
            Mat::Identity(m.cols(), m.cols())};
  }
  Eigen::JacobiSVD<Mat> dec(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return {dec.matrixU(), dec.singularValues(), dec.matrixV()};
}

double clamp01(double v) { return std::min(std::max(v, 0.0), 1.0); }

}  // namespace

double RankTolerance::cutoff(double largest_singular_value, Eigen::Index rows,
                             Eigen::Index cols) const {
  const double n = static_cast<double>(std::max(rows, cols));
  return std::max(absolute, relative * largest_singular_value * n);
}

Subspace::Subspace(Eigen::Index ambient_dim, Mat basis)
    : ambient_(ambient_dim), basis_(std::move(basis)) {
  if (ambient_ <= 0) {
    throw InvalidMatrix("subspace: ambient dimension must be positive");
  }
  if (basis_.rows() != ambient_) {
    throw InvalidMatrix("subspace: basis rows must equal ambient dimension");
  }
  if (basis_.cols() > ambient_) {
    throw InvalidMatrix("subspace: more basis columns than ambient dimension");
  }
  require_finite(basis_, "subspace basis");
  if (basis_.cols() > 0) {
    const Mat gram = basis_.transpose() * basis_;
    const Mat id = Mat::Identity(basis_.cols(), basis_.cols());
    if ((gram - id).cwiseAbs().maxCoeff() > 1e-10) {
      throw InvalidMatrix("subspace: basis columns are not orthonormal");
    }
  }
}

Subspace Subspace::trivial(Eigen::Index ambient_dim) {
  return Subspace(ambient_dim, Mat(ambient_dim, 0));
}

Subspace Subspace::full(Eigen::Index ambient_dim) {
  return Subspace(ambient_dim, Mat::Identity(ambient_dim, ambient_dim));
}

Svd svd(const Mat& m) {
  require_finite(m, "svd input");
  if (m.size() == 0) {
    return {Mat(m.rows(), 0), Vec(0), Mat(m.cols(), 0)};
  }
  Eigen::JacobiSVD<Mat> dec(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return {dec.matrixU(), dec.singularValues(), dec.matrixV()};
}

Vec singular_values(const Mat& m) {
  require_finite(m, "svd input");
  if (m.size() == 0) return Vec(0);
  Eigen::JacobiSVD<Mat> dec(m);
  return dec.singularValues();
}

Eigen::Index rank_from_singular_values(const Vec& s, const RankTolerance& tol,
                                       Eigen::Index rows, Eigen::Index cols) {
  if (s.size() == 0) return 0;
  const double cut = tol.cutoff(s(0), rows, cols);
  Eigen::Index r = 0;
  while (r < s.size() && s(r) > cut) ++r;
  return r;
}

Eigen::Index numerical_rank(const Mat& m, const RankTolerance& tol) {
  return rank_from_singular_values(singular_values(m), tol, m.rows(), m.cols());
}

Mat pinv(const Mat& m, const RankTolerance& tol) {
  const FullSvd dec = full_svd(m);
  const Eigen::Index r =
      rank_from_singular_values(dec.s, tol, m.rows(), m.cols());
  if (r == 0) return Mat::Zero(m.cols(), m.rows());
  return dec.v.leftCols(r) *
         dec.s.head(r).cwiseInverse().asDiagonal() *
         dec.u.leftCols(r).transpose();
}

double gamma(const Mat& m, const RankTolerance& tol) {
  const Vec s = singular_values(m);
  const Eigen::Index r = rank_from_singular_values(s, tol, m.rows(), m.cols());
  return r > 0 ? s(r - 1) : 0.0;
}

double spectral_norm(const Mat& m) {
  const Vec s = singular_values(m);
  return s.size() > 0 ? s(0) : 0.0;
}

Subspace null_basis(const Mat& m, const RankTolerance& tol) {
  const FullSvd dec = full_svd(m);
  const Eigen::Index r =
      rank_from_singular_values(dec.s, tol, m.rows(), m.cols());
  return Subspace(m.cols(), dec.v.rightCols(m.cols() - r));
}

Subspace range_basis(const Mat& m, const RankTolerance& tol) {
  const FullSvd dec = full_svd(m);
  const Eigen::Index r =
      rank_from_singular_values(dec.s, tol, m.rows(), m.cols());
  return Subspace(m.rows(), dec.u.leftCols(r));
}

Mat ortho_proj(const Subspace& s) {
  if (s.dim() == 0) return Mat::Zero(s.ambient_dim(), s.ambient_dim());
  return s.basis() * s.basis().transpose();
}

double friedrichs_cosine(const Subspace& m, const Subspace& n,
                         const RankTolerance&) {
  if (m.ambient_dim() != n.ambient_dim()) {
    throw AmbientMismatch("friedrichs_cosine: ambient dimensions differ");
  }
  if (m.dim() == 0 || n.dim() == 0) return 0.0;
  const Vec s = singular_values(m.basis().transpose() * n.basis());
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) < 1.0 - kIntersectionThreshold) return clamp01(s(i));
  }
  return 0.0;
}

double gap(const Subspace& m, const Subspace& n) {
  if (m.ambient_dim() != n.ambient_dim()) {
    throw AmbientMismatch("gap: ambient dimensions differ");
  }
  const Eigen::Index d = m.ambient_dim();
  const Mat residual = (Mat::Identity(d, d) - ortho_proj(n)) * ortho_proj(m);
  return clamp01(spectral_norm(residual));
}

}  // namespace woven
