#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "woven/weaving.hpp"

namespace woven {

enum class TheoremId {
  Epa,                       // ||T_F - T_G||^2 < A_F
  OperatorPerturbation,      // ||(I - T) T_F|| < A_F^{1/2}
  PairOperatorPerturbation,  // ||U^{-1}V - I||^2 < C/B_G or symmetric
  DualPerturbation,          // ||S_F^{-1} - S_G^{-1}||^2 < C max{...}
  ScaledDualLLHL,            // B_F/A_F < 2
  ScaledDualInterval,        // B_F - sqrt(A_F B_F) < alpha < 2 A_F
};

const char* theorem_name(TheoremId id);

// Verdict for one sufficient condition. holds = false never implies the pair
// is not woven; these are one-sided tests.
struct Certificate {
  TheoremId theorem_id;
  bool holds = false;
  std::vector<std::pair<std::string, double>> measured;
  std::optional<double> predicted_lower;
  std::optional<double> predicted_upper;

  double measure(const std::string& name) const;
};

struct AlphaInterval {
  double lo = 0.0;  // B - sqrt(A B)
  double hi = 0.0;  // 2 A
  bool nonempty = false;
};

// Sufficient condition for (f, g) woven where g is any same-shape family:
// holds iff ||T_F - T_G||^2 < A_F. When it holds the pair is woven with
// bounds (A_F^{1/2} - ||T_F - T_G||)^2 and B_F + B_G.
Certificate check_perturbation(const Frame& f, const Frame& g,
                               const RankTolerance& tol = {});

// Sufficient condition for (f, t(f)) woven: ||(I - t) T_F|| < A_F^{1/2}.
Certificate check_operator_perturbation(const Frame& f, const Mat& t,
                                        const RankTolerance& tol = {});

// (f, g) a woven pair with uniform lower constant c > 0, u and v invertible:
// (u(f), v(g)) is woven when ||u^{-1}v - I||^2 < c/B_G or
// ||v^{-1}u - I||^2 < c/B_F. c is supplied by the caller (e.g. from
// woven_constants or an analytic bound), never recomputed here.
Certificate check_pair_operator_perturbation(const Frame& f, const Frame& g,
                                             const Mat& u, const Mat& v,
                                             double c,
                                             const RankTolerance& tol = {});

// (f, g) woven with constant c > 0: the canonical duals are woven when
// ||S_F^{-1} - S_G^{-1}||^2 < c max{1/(B_G B_F^2), 1/(B_F B_G^2)}.
Certificate check_dual_perturbation(const Frame& f, const Frame& g, double c,
                                    const RankTolerance& tol = {});

// 2AB/(A+B).
double scaled_alpha_llhl(const FrameBounds& bounds);

// Holds iff B_F/A_F < 2; then f weaves with
// scale(canonical_dual(f), scaled_alpha_llhl(bounds)).
Certificate check_scaled_dual_llhl(const Frame& f,
                                   const RankTolerance& tol = {});

// Open interval (B - sqrt(A B), 2A); nonempty iff B/A < 4.
AlphaInterval alpha_interval(const FrameBounds& bounds);

// Holds iff alpha lies strictly inside alpha_interval and the perturbation
// max{(B-alpha)^2/B, (A-alpha)^2/A} is below A; both that closed form and the
// direct norm ||T_F - alpha S^{-1} T_F||^2 are reported.
Certificate check_scaled_dual(const Frame& f, double alpha,
                              const RankTolerance& tol = {});

// Unique real root of r^3 - 3r^2 - r - 1, by bisection on [3, 4] to 1e-12.
double ratio_threshold_r0();

}  // namespace woven
