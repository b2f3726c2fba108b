#pragma once

#include "woven/weaving.hpp"

namespace woven {

// d x 2n block matrix [T_F | T_G - T_F]; applied to x ⊕ y it gives
// T_F x + (T_G - T_F) y.
struct StackedOperator {
  Mat mat;
};

// 2n x 2n block matrix [[I, P_sigma], [0, 0]]; idempotent but not symmetric.
struct ObliqueProjection {
  Mat mat;
};

StackedOperator stacked_synthesis(const Frame& f, const Frame& g);
ObliqueProjection oblique_q(const PartitionSet& p);

struct AngleSup {
  double sup_cosine = 0.0;
  PartitionSet argmax_sigma;  // smallest bitmask attaining the supremum
};

// sup over sigma of the angle cosine between N(T_{F,G}) and R(Q_sigma^T).
// A woven pair always satisfies sup < 1; the converse is not asserted
// anywhere (the condition is necessary, not sufficient).
AngleSup woven_angle_sup(const Frame& f, const Frame& g,
                         const RankTolerance& tol = {}, int cap = 20);

// sup over sigma of the angle cosine between N(T_F) and the coordinate
// subspace span{e_i : i in sigma} of R^n.
AngleSup riesz_compatibility(const Frame& f, const RankTolerance& tol = {},
                             int cap = 20);

struct GammaProductBounds {
  double lower = 0.0;   // gamma(a) gamma(b) sqrt(1 - c^2)
  double upper = 0.0;   // ||a|| ||b|| sqrt(1 - c^2)
  double cosine = 0.0;  // c
};

// Bracket for gamma(a * b). c is the angle cosine between N(a) and R(b),
// except that c = 1 is reported when R(b) is numerically contained in N(a)
// (the product collapses to zero and the bracket degenerates to (0, 0)).
GammaProductBounds gamma_product_bounds(const Mat& a, const Mat& b,
                                        const RankTolerance& tol = {});

}  // namespace woven
