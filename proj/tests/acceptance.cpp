// Acceptance suite: one criterion per entry, one pass/fail line each.
// Every tolerance is pinned here; a red line means the artifact does not meet
// its contract.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "test_support.hpp"
#include "woven/angles.hpp"
#include "woven/certificates.hpp"
#include "woven/gen.hpp"
#include "woven/io.hpp"

using namespace woven;

namespace {

struct CheckFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool cond, const std::string& what) {
  if (!cond) throw CheckFailed(what);
}

Frame f_m(double m) {
  Mat cols(2, 2);
  cols << std::sqrt(m), 0, 0, 1;
  return Frame(cols);
}

// ---- 1. worked-example reproduction ---------------------------------------

void criterion_worked_example() {
  const Frame f = f_m(4.0);
  const Mat t = Eigen::Vector2d(1.0, 0.5).asDiagonal();

  const Certificate cert = check_operator_perturbation(f, t);
  const double op_norm = cert.measure("operator_perturbation_norm");
  require(std::abs(op_norm - 0.5) < 1e-12,
          "operator perturbation norm is 0.5 within 1e-12");
  require(cert.holds, "operator certificate holds");

  const WeavingReport oracle = woven_constants(f, apply_operator(t, f));
  require(oracle.per_sigma.size() == 4, "four weavings enumerated");
  for (const auto& row : oracle.per_sigma) {
    require(row.is_frame, "every weaving is a frame");
  }
  require(oracle.woven, "oracle confirms the pair is woven");
}

// ---- 2. perturbation soundness sweep --------------------------------------

void criterion_perturbation_sweep() {
  SplitMix64 rng(0xC2);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index d = 2 + trial % 3;
    const Eigen::Index n = d + static_cast<Eigen::Index>(rng.next() % (9 - d));
    const Frame f = random_frame(d, n, rng.next());
    const Frame g = perturb_frame(f, 0.9 * rng.unit(), rng.next());

    const Certificate cert = check_perturbation(f, g);
    require(cert.holds, "certificate holds for a sub-critical perturbation");

    const WeavingReport oracle = woven_constants(f, g, {}, {20, false, 0});
    require(oracle.woven, "oracle confirms woven");

    const double delta = cert.measure("perturbation_norm");
    const double a = cert.measure("lower_bound_A");
    const double predicted = std::pow(std::sqrt(a) - delta, 2);
    require(oracle.uniform_lower >= predicted - 1e-8,
            "uniform lower constant dominates the predicted bound");
  }
}

// ---- 3. exponent witness ---------------------------------------------------

void criterion_exponent_witness() {
  const Frame f = f_m(4.0);
  const Frame g = apply_operator(Eigen::Vector2d(1.0, 0.5).asDiagonal(), f);

  const Certificate cert = check_perturbation(f, g);
  require(cert.holds, "witness instance certificate holds");
  const double delta = cert.measure("perturbation_norm");
  const double a = cert.measure("lower_bound_A");
  const double plus_two = std::pow(std::sqrt(a) - delta, 2);
  const double inverse_square = std::pow(std::sqrt(a) - delta, -2);

  const WeavingReport oracle = woven_constants(f, g);
  require(oracle.uniform_lower < inverse_square,
          "oracle constant falls below the inverse-square form");
  require(oracle.uniform_lower >= plus_two - 1e-8,
          "oracle constant dominates the positive-exponent form");
  std::printf("      witness: C=%.6g, (A^1/2-d)^2=%.6g, (A^1/2-d)^-2=%.6g\n",
              oracle.uniform_lower, plus_two, inverse_square);
}

// ---- 4. scaled-dual interval sweep -----------------------------------------

void criterion_scaled_dual_sweep() {
  SplitMix64 rng(0xC4);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index d = 2 + trial % 3;
    const Eigen::Index n = d + static_cast<Eigen::Index>(rng.next() % (9 - d));
    const double smax = std::sqrt(1.0 + 2.8 * rng.unit());  // ratio below 3.8
    const Frame f = testsupport::spectrum_frame(rng, d, n, 1.0, smax);
    const FrameBounds b = optimal_bounds(f);
    require(b.upper / b.lower < 4.0, "constructed ratio stays below 4");
    const AlphaInterval iv = alpha_interval(b);
    require(iv.nonempty, "admissible interval is nonempty");

    for (int j = 1; j <= 5; ++j) {
      const double alpha = iv.lo + (iv.hi - iv.lo) * j / 6.0;
      const Certificate cert = check_scaled_dual(f, alpha);
      require(cert.holds, "certificate holds strictly inside the interval");
      require(std::abs(cert.measure("formula_perturbation_sq") -
                       cert.measure("direct_perturbation_sq")) <= 1e-8,
              "closed form agrees with the direct operator norm");
      const WeavingReport oracle =
          woven_constants(f, scale(canonical_dual(f), alpha), {}, {20, false, 0});
      require(oracle.woven, "oracle confirms the scaled-dual pair is woven");
    }
  }
}

// ---- 5. cubic threshold constant -------------------------------------------

void criterion_cubic_root() {
  const double r0 = ratio_threshold_r0();
  require(r0 >= 3.382 && r0 <= 3.384, "root lies in [3.382, 3.384]");
  const double residual = r0 * r0 * r0 - 3.0 * r0 * r0 - r0 - 1.0;
  require(std::abs(residual) < 1e-9, "cubic residual below 1e-9");
}

// ---- 6. harmonic-mean scale comparison -------------------------------------

void criterion_scale_comparison() {
  SplitMix64 rng(0xC6);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index d = 2 + trial % 3;
    const Eigen::Index n = d + static_cast<Eigen::Index>(rng.next() % (9 - d));
    const double smax = std::sqrt(1.0 + 2.37 * rng.unit());  // ratio below 3.37
    const Frame f = testsupport::spectrum_frame(rng, d, n, 1.0, smax);
    const FrameBounds b = optimal_bounds(f);
    require(b.upper / b.lower < 3.38, "constructed ratio stays below 3.38");

    const double alpha = scaled_alpha_llhl(b);
    const AlphaInterval iv = alpha_interval(b);
    require(iv.lo < alpha && alpha < iv.hi,
            "harmonic-mean scale lies inside the admissible interval");
  }

  // above the cubic threshold the harmonic-mean scale exits the interval
  Mat cols(2, 2);
  cols << std::sqrt(3.5), 0, 0, 1;
  const FrameBounds b = optimal_bounds(Frame(cols));
  const double ratio = b.upper / b.lower;
  require(ratio > 3.39 && ratio < 4.0, "constructed ratio in (3.39, 4)");
  const AlphaInterval iv = alpha_interval(b);
  require(iv.nonempty, "interval is still nonempty");
  const double alpha = scaled_alpha_llhl(b);
  require(alpha <= iv.lo, "harmonic-mean scale falls outside the interval");
}

// ---- 7. angle necessity sweep ----------------------------------------------

void criterion_angle_necessity() {
  const AngleSup same = woven_angle_sup(Frame::standard_basis(2), Frame::standard_basis(2));
  require(std::abs(same.sup_cosine - 1.0 / std::sqrt(2.0)) < 1e-8,
          "identical orthonormal pair attains cosine 2^{-1/2}");

  SplitMix64 rng(0xC7);
  int woven_pairs = 0;
  while (woven_pairs < 100) {
    const Eigen::Index d = 2 + static_cast<Eigen::Index>(rng.next() % 2);
    const Eigen::Index n = d + static_cast<Eigen::Index>(rng.next() % (7 - d));
    const Frame f = random_frame(d, n, rng.next());
    const Frame g = perturb_frame(f, 0.9 * rng.unit(), rng.next());
    if (!woven_constants(f, g, {}, {20, false, 0}).woven) continue;
    ++woven_pairs;
    const AngleSup sup = woven_angle_sup(f, g);
    require(sup.sup_cosine < 1.0 - 1e-10, "woven pair keeps the angle sup below one");
  }
}

// ---- 8. gamma product bracket ----------------------------------------------

void criterion_gamma_bracket() {
  SplitMix64 rng(0xC8);
  for (int trial = 0; trial < 500; ++trial) {
    const Eigen::Index m = 1 + static_cast<Eigen::Index>(rng.next() % 5);
    const Eigen::Index k = 1 + static_cast<Eigen::Index>(rng.next() % 5);
    const Eigen::Index n = 1 + static_cast<Eigen::Index>(rng.next() % 5);
    const Mat a = testsupport::random_matrix(rng, m, k);
    const Mat b = testsupport::random_matrix(rng, k, n);
    const GammaProductBounds bracket = gamma_product_bounds(a, b);
    const double g = gamma(a * b);
    require(bracket.lower - 1e-8 <= g, "lower bracket holds");
    require(g <= bracket.upper + 1e-8, "upper bracket holds");
  }
}

// ---- 9. frame definition sandwich -------------------------------------------

void criterion_frame_sandwich() {
  SplitMix64 rng(0xC9);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index d = 2 + trial % 3;
    const Eigen::Index n = d + static_cast<Eigen::Index>(rng.next() % (9 - d));
    const Frame f = random_frame(d, n, rng.next());
    const FrameBounds b = optimal_bounds(f);
    for (int k = 0; k < 200; ++k) {
      const Vec x = testsupport::random_unit(rng, d);
      const double sum = (f.columns().transpose() * x).squaredNorm();
      require(sum >= b.lower - 1e-8, "lower frame inequality");
      require(sum <= b.upper + 1e-8, "upper frame inequality");
    }
  }
}

// ---- 10. CLI determinism -----------------------------------------------------

void criterion_cli_determinism() {
  namespace fs = std::filesystem;
  const fs::path corpus = testsupport::fresh_dir("acceptance_corpus");
  const fs::path run1 = testsupport::fresh_dir("acceptance_run1");
  const fs::path run2 = testsupport::fresh_dir("acceptance_run2");

  const auto cp = [&](const std::string& name) { return (corpus / name).string(); };

  // fixed fixtures
  write_frame_file(cp("e2.json"), Frame::standard_basis(2));
  {
    Mat crossed(2, 2);
    crossed << 0, 1, 1, 0;
    write_frame_file(cp("crossed.json"), Frame(crossed));
  }
  write_frame_file(cp("fm4.json"), f_m(4.0));
  write_frame_file(cp("tight23_fix.json"), tight_frame(2, 3));
  write_frame_file(cp("t_half.json"),
                   Frame(Eigen::Vector2d(1.0, 0.5).asDiagonal().toDenseMatrix()));
  write_frame_file(cp("id3.json"), Frame::standard_basis(3));
  {
    Mat v(3, 3);
    v.setIdentity();
    v(1, 1) = 1.05;
    v(2, 2) = 0.97;
    write_frame_file(cp("v3.json"), Frame(v));
  }

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"gen --kind tight --dim 2 --count 3 --out " + cp("tight23.json"), "gen_tight"},
      {"gen --kind random --dim 3 --count 5 --seed 42 --out " + cp("r35.json"), "gen_r35"},
      {"gen --kind random --dim 2 --count 4 --seed 7 --out " + cp("r24.json"), "gen_r24"},
      {"gen --kind perturb --base " + cp("r35.json") + " --target 0.5 --seed 9 --out " + cp("p35.json"), "gen_p35"},
      {"gen --kind perturb --base " + cp("r24.json") + " --target 0.8 --seed 11 --out " + cp("p24.json"), "gen_p24"},
      {"bounds " + cp("tight23.json"), "bounds_tight"},
      {"bounds " + cp("r35.json"), "bounds_r35"},
      {"woven " + cp("r35.json") + " " + cp("p35.json"), "woven_r35"},
      {"woven " + cp("e2.json") + " " + cp("crossed.json"), "woven_crossed"},
      {"woven " + cp("r24.json") + " " + cp("p24.json") + " --per-sigma", "woven_r24_table"},
      {"certify epa " + cp("r35.json") + " " + cp("p35.json") + " --verify", "certify_epa"},
      {"certify invertible " + cp("fm4.json") + " " + cp("t_half.json") + " --verify", "certify_inv"},
      {"certify pair " + cp("r35.json") + " " + cp("p35.json") + " " + cp("id3.json") + " " + cp("v3.json") + " --verify", "certify_pair"},
      {"certify dual " + cp("r35.json") + " " + cp("p35.json") + " --verify", "certify_dual"},
      {"certify llhl " + cp("tight23.json") + " --verify", "certify_llhl"},
      {"certify scaled " + cp("tight23.json") + " --alpha 1.2 --verify", "certify_scaled"},
      {"angles woven-sup " + cp("e2.json") + " " + cp("e2.json"), "angles_wsup"},
      {"angles riesz " + cp("r35.json"), "angles_riesz"},
  };

  const std::vector<std::string> generated = {
      "tight23.json", "r35.json", "r24.json", "p35.json", "p24.json"};

  std::vector<int> codes1, codes2;
  std::vector<std::string> gen_bytes1;

  for (const auto& [cmd, name] : commands) {
    codes1.push_back(testsupport::run_cli(cmd, (run1 / (name + ".json")).string()));
  }
  for (const auto& name : generated) gen_bytes1.push_back(testsupport::slurp(cp(name)));

  for (const auto& [cmd, name] : commands) {
    codes2.push_back(testsupport::run_cli(cmd, (run2 / (name + ".json")).string()));
  }

  require(codes1 == codes2, "exit codes repeat across runs");
  for (std::size_t i = 0; i < commands.size(); ++i) {
    const std::string a = testsupport::slurp(run1 / (commands[i].second + ".json"));
    const std::string b = testsupport::slurp(run2 / (commands[i].second + ".json"));
    require(a == b, "report bytes repeat for " + commands[i].second);
    require(!a.empty(), "report is nonempty for " + commands[i].second);
  }
  for (std::size_t i = 0; i < generated.size(); ++i) {
    require(gen_bytes1[i] == testsupport::slurp(cp(generated[i])),
            "generated frame bytes repeat for " + generated[i]);
  }

  // soundness end to end: no --verify run may report an inconsistency
  for (const auto& [cmd, name] : commands) {
    if (cmd.find("--verify") == std::string::npos) continue;
    const auto report = nlohmann::json::parse(testsupport::slurp(run1 / (name + ".json")));
    if (report["results"].contains("verification")) {
      require(report["results"]["verification"]["consistent"].get<bool>(),
              "verified certificate is consistent with the oracle for " + name);
    }
  }
  require(codes1[10] == 0, "epa certificate on the constructed perturbation holds");
  require(codes1[8] == 3, "crossed pair reports not woven");
}

struct Criterion {
  std::string name;
  double limit_seconds;
  std::function<void()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"worked-example-reproduction", 1.0, criterion_worked_example},
      {"perturbation-soundness-sweep", 30.0, criterion_perturbation_sweep},
      {"exponent-witness", 5.0, criterion_exponent_witness},
      {"scaled-dual-interval-sweep", 60.0, criterion_scaled_dual_sweep},
      {"cubic-threshold-constant", 0.001, criterion_cubic_root},
      {"harmonic-mean-scale-comparison", 10.0, criterion_scale_comparison},
      {"angle-necessity-sweep", 60.0, criterion_angle_necessity},
      {"gamma-product-bracket", 10.0, criterion_gamma_bracket},
      {"frame-definition-sandwich", 30.0, criterion_frame_sandwich},
      {"cli-determinism", 120.0, criterion_cli_determinism},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& c = criteria[i];
    const auto start = std::chrono::steady_clock::now();
    std::string failure;
    try {
      c.run();
    } catch (const std::exception& e) {
      failure = e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (failure.empty() && elapsed > c.limit_seconds) {
      failure = "exceeded time limit of " + std::to_string(c.limit_seconds) + " s";
    }
    if (failure.empty()) {
      std::printf("[PASS] %2zu. %-32s (%.3f s)\n", i + 1, c.name.c_str(), elapsed);
    } else {
      ++failures;
      std::printf("[FAIL] %2zu. %-32s (%.3f s): %s\n", i + 1, c.name.c_str(), elapsed,
                  failure.c_str());
    }
  }
  if (failures > 0) {
    std::printf("%d criterion(s) failed\n", failures);
  } else {
    std::printf("all %zu criteria passed\n", criteria.size());
  }
  return failures;
}
