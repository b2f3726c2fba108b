#include "woven/weaving.hpp"

#include <Eigen/SVD>
#include <limits>

#include "woven/detail/mask_reduce.hpp"

namespace woven {

namespace {

void require_same_shape(const Frame& f, const Frame& g, const char* what) {
  if (f.dim() != g.dim() || f.count() != g.count()) {
    throw ShapeMismatch(std::string(what) + ": frames have different shapes");
  }
}

void fill_weaving_columns(const Mat& f, const Mat& g, std::uint64_t mask,
                          Mat& out) {
  for (Eigen::Index i = 0; i < f.cols(); ++i) {
    out.col(i) = ((mask >> i) & 1u) ? g.col(i) : f.col(i);
  }
}

SigmaBounds bounds_of_synthesis(const Mat& w, Eigen::Index dim,
                                const RankTolerance& tol) {
  const Vec s = singular_values(w);
  const Eigen::Index r = rank_from_singular_values(s, tol, w.rows(), w.cols());
  SigmaBounds b;
  b.is_frame = (r == dim);
  b.upper = s.size() > 0 ? s(0) * s(0) : 0.0;
  b.lower = b.is_frame ? s(r - 1) * s(r - 1) : 0.0;
  return b;
}

}  // namespace

PartitionSet::PartitionSet(int n_, std::uint64_t sigma_) : n(n_), sigma(sigma_) {
  if (n < 1 || n > 62) {
    throw InvalidArgument("partition: n must be in [1, 62]");
  }
  if (sigma >> n != 0) {
    throw InvalidArgument("partition: bits above n-1 must be zero");
  }
}

std::uint64_t PartitionSet::complement() const {
  return ~sigma & ((std::uint64_t{1} << n) - 1);
}

Mat projection_matrix(const PartitionSet& p) {
  Mat out = Mat::Zero(p.n, p.n);
  for (int i = 0; i < p.n; ++i) {
    if (p.contains(i)) out(i, i) = 1.0;
  }
  return out;
}

Mat weaving_synthesis(const Frame& f, const Frame& g, const PartitionSet& p) {
  require_same_shape(f, g, "weaving_synthesis");
  if (p.n != f.count()) {
    throw ShapeMismatch("weaving_synthesis: partition size differs from frame count");
  }
  Mat out(f.dim(), f.count());
  fill_weaving_columns(f.columns(), g.columns(), p.sigma, out);
  return out;
}

SigmaBounds weaving_bounds(const Frame& f, const Frame& g,
                           const PartitionSet& p, const RankTolerance& tol) {
  return bounds_of_synthesis(weaving_synthesis(f, g, p), f.dim(), tol);
}

namespace {

// Per-thread fold state; the scratch synthesis buffer rides along so the hot
// loop never allocates.
struct WeaveLocal {
  double min_lower = std::numeric_limits<double>::infinity();
  std::uint64_t argmin = 0;
  double max_upper = 0.0;
  bool all_frames = true;
  Mat scratch;
};

WeaveLocal merge_weave(WeaveLocal a, const WeaveLocal& b) {
  if (b.min_lower < a.min_lower ||
      (b.min_lower == a.min_lower && b.argmin < a.argmin)) {
    a.min_lower = b.min_lower;
    a.argmin = b.argmin;
  }
  if (b.max_upper > a.max_upper) a.max_upper = b.max_upper;
  a.all_frames = a.all_frames && b.all_frames;
  return a;
}

}  // namespace

WeavingReport woven_constants(const Frame& f, const Frame& g,
                              const RankTolerance& tol,
                              const WeavingOptions& opts) {
  require_same_shape(f, g, "woven_constants");
  const int n = static_cast<int>(f.count());
  if (n > opts.cap || n > 62) {  // 62: bitmask headroom regardless of cap
    throw TooManyPartitions("woven_constants: frame count exceeds enumeration cap");
  }
  const std::uint64_t total = std::uint64_t{1} << n;
  const bool store = opts.store_per_sigma.value_or(n <= 16);

  WeavingReport report;
  report.n = n;
  if (store) report.per_sigma.resize(total);

  const Mat& fc = f.columns();
  const Mat& gc = g.columns();
  const Eigen::Index dim = f.dim();

  WeaveLocal init;
  init.scratch = fc;

  // Writes to per_sigma hit disjoint slots, so sharding is race-free.
  auto per_mask = [&](std::uint64_t mask, WeaveLocal& local) {
    fill_weaving_columns(fc, gc, mask, local.scratch);
    const SigmaBounds b = bounds_of_synthesis(local.scratch, dim, tol);
    if (store) report.per_sigma[mask] = b;
    if (b.lower < local.min_lower ||
        (b.lower == local.min_lower && mask < local.argmin)) {
      local.min_lower = b.lower;
      local.argmin = mask;
    }
    if (b.upper > local.max_upper) local.max_upper = b.upper;
    local.all_frames = local.all_frames && b.is_frame;
  };

  const WeaveLocal folded =
      detail::mask_reduce(total, opts.threads, init, per_mask, merge_weave);

  report.uniform_lower = folded.min_lower;
  report.uniform_upper = folded.max_upper;
  report.worst_sigma = folded.argmin;
  report.woven = folded.all_frames;
  return report;
}

}  // namespace woven
