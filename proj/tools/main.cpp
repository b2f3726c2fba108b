#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

#include "woven/angles.hpp"
#include "woven/certificates.hpp"
#include "woven/gen.hpp"
#include "woven/io.hpp"
#include "woven/weaving.hpp"

namespace {

using nlohmann::json;

constexpr int kOk = 0;
constexpr int kParseError = 1;
constexpr int kNotAFrame = 2;
constexpr int kNegative = 3;
constexpr int kTooManyPartitions = 4;
constexpr int kSoundnessViolation = 5;
constexpr int kGenerationFailure = 6;

struct CommonOpts {
  double tol_rel = std::numeric_limits<double>::epsilon();
  int cap = 20;
  bool verify = false;
  bool per_sigma = false;
  std::string out_path;

  woven::RankTolerance tol() const { return {0.0, tol_rel}; }
};

void emit(const woven::Report& report, const std::string& out_path) {
  const std::string text = report.to_json() + "\n";
  std::cout << text;
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw woven::Error("cannot write '" + out_path + "'");
    out << text;
  }
}

json file_input(const std::string& path) {
  return json{{"path", path}, {"fnv1a64", woven::digest_file(path)}};
}

std::string sigma_bits(std::uint64_t sigma, int n) {
  std::string s = "0b";
  for (int i = n - 1; i >= 0; --i) s += ((sigma >> i) & 1u) ? '1' : '0';
  return s;
}

json certificate_json(const woven::Certificate& cert) {
  json j;
  j["theorem"] = woven::theorem_name(cert.theorem_id);
  j["holds"] = cert.holds;
  json measured;
  for (const auto& [name, value] : cert.measured) measured[name] = value;
  j["measured"] = std::move(measured);
  if (cert.predicted_lower) j["predicted_lower"] = *cert.predicted_lower;
  if (cert.predicted_upper) j["predicted_upper"] = *cert.predicted_upper;
  return j;
}

json weaving_json(const woven::WeavingReport& report, bool include_table) {
  json j;
  j["n"] = report.n;
  j["woven"] = report.woven;
  j["uniform_lower"] = report.uniform_lower;
  j["uniform_upper"] = report.uniform_upper;
  j["worst_sigma"] = report.worst_sigma;
  j["worst_sigma_bits"] = sigma_bits(report.worst_sigma, report.n);
  if (include_table && !report.per_sigma.empty()) {
    json table = json::array();
    for (std::size_t mask = 0; mask < report.per_sigma.size(); ++mask) {
      const auto& row = report.per_sigma[mask];
      table.push_back(json{{"sigma", mask},
                           {"lower", row.lower},
                           {"upper", row.upper},
                           {"is_frame", row.is_frame}});
    }
    j["per_sigma"] = std::move(table);
  }
  return j;
}

// Runs the oracle on the pair a certificate concludes to be woven. Returns
// the exit code; a certificate that holds while the oracle disagrees is a
// soundness violation and must never happen.
int attach_verification(json& results, const woven::Certificate& cert,
                        const woven::Frame& f, const woven::Frame& g,
                        const CommonOpts& opts) {
  const woven::WeavingReport oracle = woven::woven_constants(
      f, g, opts.tol(), {opts.cap, false, 0});
  json v = weaving_json(oracle, false);
  v["consistent"] = !cert.holds || oracle.woven;
  results["verification"] = std::move(v);
  if (cert.holds && !oracle.woven) {
    std::cerr << "soundness violation: certificate holds but the pair is not woven\n";
    return kSoundnessViolation;
  }
  return cert.holds ? kOk : kNegative;
}

int finish_certificate(const std::string& command, json inputs,
                       const woven::Certificate& cert,
                       const std::optional<std::pair<woven::Frame, woven::Frame>>& conclusion,
                       const CommonOpts& opts) {
  json results = certificate_json(cert);
  int code = cert.holds ? kOk : kNegative;
  if (opts.verify && conclusion) {
    code = attach_verification(results, cert, conclusion->first,
                               conclusion->second, opts);
  }
  emit({command, std::move(inputs), std::move(results)}, opts.out_path);
  return code;
}

int run_bounds(const std::string& path, const CommonOpts& opts) {
  const woven::Frame frame = woven::read_frame_file(path).frame;
  const auto rank = woven::numerical_rank(frame.columns(), opts.tol());
  json results;
  results["dim"] = static_cast<long long>(frame.dim());
  results["count"] = static_cast<long long>(frame.count());
  results["rank"] = static_cast<long long>(rank);
  const bool frame_ok = rank == frame.dim();
  results["is_frame"] = frame_ok;
  if (frame_ok) {
    const woven::FrameBounds b = woven::optimal_bounds(frame, opts.tol());
    results["lower"] = b.lower;
    results["upper"] = b.upper;
  } else {
    results["verdict"] = "not a frame";
  }
  emit({"bounds", json{{"frame", file_input(path)}}, std::move(results)},
       opts.out_path);
  if (!frame_ok) {
    std::cerr << "not a frame: synthesis rank " << rank << " < dim "
              << frame.dim() << "\n";
    return kNotAFrame;
  }
  return kOk;
}

int run_woven(const std::string& f_path, const std::string& g_path,
              const CommonOpts& opts) {
  const woven::Frame f = woven::read_frame_file(f_path).frame;
  const woven::Frame g = woven::read_frame_file(g_path).frame;
  woven::WeavingOptions wopts;
  wopts.cap = opts.cap;
  wopts.store_per_sigma = opts.per_sigma;
  const woven::WeavingReport report =
      woven::woven_constants(f, g, opts.tol(), wopts);
  emit({"woven",
        json{{"f", file_input(f_path)}, {"g", file_input(g_path)}},
        weaving_json(report, opts.per_sigma)},
       opts.out_path);
  return report.woven ? kOk : kNegative;
}

// Resolves the woven lower constant for the (U,V) and dual certificates:
// an explicit --c wins, otherwise the enumeration oracle supplies it.
std::optional<double> resolve_c(const woven::Frame& f, const woven::Frame& g,
                                std::optional<double> c_flag,
                                const CommonOpts& opts, json& results) {
  if (c_flag) {
    results["c_source"] = "flag";
    return c_flag;
  }
  const woven::WeavingReport oracle =
      woven::woven_constants(f, g, opts.tol(), {opts.cap, false, 0});
  results["c_source"] = "oracle";
  if (!(oracle.uniform_lower > 0.0)) {
    results["holds"] = false;
    results["hypothesis_failed"] = "pair is not woven (uniform lower constant is 0)";
    return std::nullopt;
  }
  return oracle.uniform_lower;
}

int run_angles(const std::string& sub, const std::string& f_path,
               const std::string& g_path, const CommonOpts& opts) {
  json inputs{{"f", file_input(f_path)}};
  const woven::Frame f = woven::read_frame_file(f_path).frame;
  woven::AngleSup sup{0.0, woven::PartitionSet(1, 0)};
  if (sub == "woven-sup") {
    inputs["g"] = file_input(g_path);
    const woven::Frame g = woven::read_frame_file(g_path).frame;
    sup = woven::woven_angle_sup(f, g, opts.tol(), opts.cap);
  } else {
    sup = woven::riesz_compatibility(f, opts.tol(), opts.cap);
  }
  json results;
  results["sup_cosine"] = sup.sup_cosine;
  results["argmax_sigma"] = sup.argmax_sigma.sigma;
  results["argmax_sigma_bits"] = sigma_bits(sup.argmax_sigma.sigma, sup.argmax_sigma.n);
  results["n"] = sup.argmax_sigma.n;
  results["less_than_one"] = sup.sup_cosine < 1.0;
  emit({"angles " + sub, std::move(inputs), std::move(results)}, opts.out_path);
  return kOk;
}

struct GenArgs {
  std::string kind;
  Eigen::Index dim = 2;
  Eigen::Index count = 2;
  std::uint64_t seed = 0;
  std::string base_path;
  double target = 0.5;
  std::string out_path;  // frame file destination (required)
};

int run_gen(const GenArgs& args, const CommonOpts& opts) {
  json inputs;
  inputs["kind"] = args.kind;
  std::optional<woven::Frame> frame;
  if (args.kind == "random") {
    inputs["dim"] = static_cast<long long>(args.dim);
    inputs["count"] = static_cast<long long>(args.count);
    inputs["seed"] = args.seed;
    frame = woven::random_frame(args.dim, args.count, args.seed, opts.tol());
  } else if (args.kind == "tight") {
    inputs["dim"] = static_cast<long long>(args.dim);
    inputs["count"] = static_cast<long long>(args.count);
    frame = woven::tight_frame(args.dim, args.count);
  } else if (args.kind == "perturb") {
    if (args.base_path.empty()) {
      throw woven::InvalidArgument("gen --kind perturb needs --base");
    }
    inputs["base"] = file_input(args.base_path);
    inputs["target"] = args.target;
    inputs["seed"] = args.seed;
    const woven::Frame base = woven::read_frame_file(args.base_path).frame;
    frame = woven::perturb_frame(base, args.target, args.seed, opts.tol());
  } else {
    throw woven::InvalidArgument("gen --kind must be random, tight, or perturb");
  }

  woven::write_frame_file(args.out_path, *frame);
  json results;
  results["out"] = args.out_path;
  results["digest"] = woven::digest_file(args.out_path);
  results["dim"] = static_cast<long long>(frame->dim());
  results["count"] = static_cast<long long>(frame->count());
  emit({"gen", std::move(inputs), std::move(results)}, "");
  return kOk;
}

int guarded(const std::function<int()>& fn) {
  try {
    return fn();
  } catch (const woven::NotAFrame& e) {
    std::cerr << "not a frame: " << e.what() << "\n";
    return kNotAFrame;
  } catch (const woven::TooManyPartitions& e) {
    std::cerr << "too many partitions: " << e.what() << "\n";
    return kTooManyPartitions;
  } catch (const woven::GenerationFailure& e) {
    std::cerr << "generation failure: " << e.what() << "\n";
    return kGenerationFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParseError;
  }
}

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_cap = true,
                bool with_verify = false, bool with_per_sigma = false) {
  cmd->add_option("--tol-rel", opts.tol_rel, "relative rank tolerance");
  cmd->add_option("--out", opts.out_path, "also write the report to this path");
  if (with_cap) cmd->add_option("--cap", opts.cap, "partition enumeration cap");
  if (with_verify) cmd->add_flag("--verify", opts.verify, "cross-check against the weaving oracle");
  if (with_per_sigma) cmd->add_flag("--per-sigma", opts.per_sigma, "include the full per-partition table");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"woven: frame bounds, weaving enumeration, and woven-pair certificates"};
  app.require_subcommand(1);
  int exit_code = kOk;

  // bounds
  CommonOpts bounds_opts;
  std::string bounds_path;
  auto* bounds = app.add_subcommand("bounds", "optimal frame bounds of a frame file");
  bounds->add_option("frame", bounds_path, "frame file")->required();
  add_common(bounds, bounds_opts, false);
  bounds->callback([&] {
    exit_code = guarded([&] { return run_bounds(bounds_path, bounds_opts); });
  });

  // woven
  CommonOpts woven_opts;
  std::string woven_f, woven_g;
  auto* wov = app.add_subcommand("woven", "exhaustive weaving enumeration for a pair");
  wov->add_option("f", woven_f, "first frame file")->required();
  wov->add_option("g", woven_g, "second frame file")->required();
  add_common(wov, woven_opts, true, false, true);
  wov->callback([&] {
    exit_code = guarded([&] { return run_woven(woven_f, woven_g, woven_opts); });
  });

  // certify
  auto* certify = app.add_subcommand("certify", "sufficient-condition certificates");
  certify->require_subcommand(1);

  CommonOpts epa_opts;
  std::string epa_f, epa_g;
  auto* epa = certify->add_subcommand("epa", "perturbation certificate ||T_F - T_G||^2 < A_F");
  epa->add_option("f", epa_f)->required();
  epa->add_option("g", epa_g)->required();
  add_common(epa, epa_opts, true, true);
  epa->callback([&] {
    exit_code = guarded([&] {
      const woven::Frame f = woven::read_frame_file(epa_f).frame;
      const woven::Frame g = woven::read_frame_file(epa_g).frame;
      const auto cert = woven::check_perturbation(f, g, epa_opts.tol());
      return finish_certificate("certify epa",
                                json{{"f", file_input(epa_f)}, {"g", file_input(epa_g)}},
                                cert, std::make_pair(f, g), epa_opts);
    });
  });

  CommonOpts inv_opts;
  std::string inv_f, inv_t;
  auto* inv = certify->add_subcommand("invertible", "operator certificate ||(I-T) T_F|| < A_F^{1/2}");
  inv->add_option("f", inv_f)->required();
  inv->add_option("op", inv_t, "matrix file for T")->required();
  add_common(inv, inv_opts, true, true);
  inv->callback([&] {
    exit_code = guarded([&] {
      const woven::Frame f = woven::read_frame_file(inv_f).frame;
      const woven::Mat t = woven::read_matrix_file(inv_t);
      const auto cert = woven::check_operator_perturbation(f, t, inv_opts.tol());
      return finish_certificate(
          "certify invertible",
          json{{"f", file_input(inv_f)}, {"op", file_input(inv_t)}}, cert,
          std::make_pair(f, woven::apply_operator(t, f)), inv_opts);
    });
  });

  CommonOpts pair_opts;
  std::string pair_f, pair_g, pair_u, pair_v;
  double pair_c = 0.0;
  auto* pair = certify->add_subcommand("pair", "invertible-pair certificate for (U(F), V(G))");
  pair->add_option("f", pair_f)->required();
  pair->add_option("g", pair_g)->required();
  pair->add_option("u", pair_u, "matrix file for U")->required();
  pair->add_option("v", pair_v, "matrix file for V")->required();
  auto* pair_c_opt = pair->add_option("--c", pair_c, "woven lower constant for (f, g)");
  add_common(pair, pair_opts, true, true);
  pair->callback([&] {
    exit_code = guarded([&] {
      const woven::Frame f = woven::read_frame_file(pair_f).frame;
      const woven::Frame g = woven::read_frame_file(pair_g).frame;
      const woven::Mat u = woven::read_matrix_file(pair_u);
      const woven::Mat v = woven::read_matrix_file(pair_v);
      json inputs{{"f", file_input(pair_f)},
                  {"g", file_input(pair_g)},
                  {"u", file_input(pair_u)},
                  {"v", file_input(pair_v)}};
      json pre;
      const auto c = resolve_c(f, g, pair_c_opt->count() ? std::optional(pair_c) : std::nullopt,
                               pair_opts, pre);
      if (!c) {
        emit({"certify pair", std::move(inputs), std::move(pre)}, pair_opts.out_path);
        return kNegative;
      }
      auto cert = woven::check_pair_operator_perturbation(f, g, u, v, *c, pair_opts.tol());
      json results = certificate_json(cert);
      results["c_source"] = pre["c_source"];
      int code = cert.holds ? kOk : kNegative;
      if (pair_opts.verify) {
        code = attach_verification(results, cert, woven::apply_operator(u, f),
                                   woven::apply_operator(v, g), pair_opts);
      }
      emit({"certify pair", std::move(inputs), std::move(results)}, pair_opts.out_path);
      return code;
    });
  });

  CommonOpts dual_opts;
  std::string dual_f, dual_g;
  double dual_c = 0.0;
  auto* dual = certify->add_subcommand("dual", "canonical-dual certificate");
  dual->add_option("f", dual_f)->required();
  dual->add_option("g", dual_g)->required();
  auto* dual_c_opt = dual->add_option("--c", dual_c, "woven lower constant for (f, g)");
  add_common(dual, dual_opts, true, true);
  dual->callback([&] {
    exit_code = guarded([&] {
      const woven::Frame f = woven::read_frame_file(dual_f).frame;
      const woven::Frame g = woven::read_frame_file(dual_g).frame;
      json inputs{{"f", file_input(dual_f)}, {"g", file_input(dual_g)}};
      json pre;
      const auto c = resolve_c(f, g, dual_c_opt->count() ? std::optional(dual_c) : std::nullopt,
                               dual_opts, pre);
      if (!c) {
        emit({"certify dual", std::move(inputs), std::move(pre)}, dual_opts.out_path);
        return kNegative;
      }
      auto cert = woven::check_dual_perturbation(f, g, *c, dual_opts.tol());
      json results = certificate_json(cert);
      results["c_source"] = pre["c_source"];
      int code = cert.holds ? kOk : kNegative;
      if (dual_opts.verify) {
        code = attach_verification(results, cert, woven::canonical_dual(f, dual_opts.tol()),
                                   woven::canonical_dual(g, dual_opts.tol()), dual_opts);
      }
      emit({"certify dual", std::move(inputs), std::move(results)}, dual_opts.out_path);
      return code;
    });
  });

  CommonOpts llhl_opts;
  std::string llhl_f;
  auto* llhl = certify->add_subcommand("llhl", "scaled-dual certificate, ratio below 2");
  llhl->add_option("f", llhl_f)->required();
  add_common(llhl, llhl_opts, true, true);
  llhl->callback([&] {
    exit_code = guarded([&] {
      const woven::Frame f = woven::read_frame_file(llhl_f).frame;
      const auto cert = woven::check_scaled_dual_llhl(f, llhl_opts.tol());
      const double alpha = cert.measure("alpha_llhl");
      const woven::Frame partner =
          woven::scale(woven::canonical_dual(f, llhl_opts.tol()), alpha);
      return finish_certificate("certify llhl", json{{"f", file_input(llhl_f)}},
                                cert, std::make_pair(f, partner), llhl_opts);
    });
  });

  CommonOpts scaled_opts;
  std::string scaled_f;
  double scaled_alpha = 1.0;
  auto* scaled = certify->add_subcommand("scaled", "scaled-dual certificate for a chosen alpha");
  scaled->add_option("f", scaled_f)->required();
  scaled->add_option("--alpha", scaled_alpha, "scale for the canonical dual")->required();
  add_common(scaled, scaled_opts, true, true);
  scaled->callback([&] {
    exit_code = guarded([&] {
      const woven::Frame f = woven::read_frame_file(scaled_f).frame;
      const auto cert = woven::check_scaled_dual(f, scaled_alpha, scaled_opts.tol());
      const woven::Frame partner =
          woven::scale(woven::canonical_dual(f, scaled_opts.tol()), scaled_alpha);
      return finish_certificate("certify scaled", json{{"f", file_input(scaled_f)}},
                                cert, std::make_pair(f, partner), scaled_opts);
    });
  });

  // angles
  auto* angles = app.add_subcommand("angles", "angle suprema over partitions");
  angles->require_subcommand(1);

  CommonOpts wsup_opts;
  std::string wsup_f, wsup_g;
  auto* wsup = angles->add_subcommand("woven-sup", "sup over sigma of [N(T_{F,G}), R(Q_sigma^T)]");
  wsup->add_option("f", wsup_f)->required();
  wsup->add_option("g", wsup_g)->required();
  add_common(wsup, wsup_opts);
  wsup->callback([&] {
    exit_code = guarded([&] { return run_angles("woven-sup", wsup_f, wsup_g, wsup_opts); });
  });

  CommonOpts riesz_opts;
  std::string riesz_f;
  auto* riesz = angles->add_subcommand("riesz", "sup over sigma of [N(T_F), R(P_sigma)]");
  riesz->add_option("f", riesz_f)->required();
  add_common(riesz, riesz_opts);
  riesz->callback([&] {
    exit_code = guarded([&] { return run_angles("riesz", riesz_f, "", riesz_opts); });
  });

  // gen
  CommonOpts gen_opts;
  GenArgs gen_args;
  auto* gen = app.add_subcommand("gen", "deterministic frame generation");
  gen->add_option("--kind", gen_args.kind, "random | tight | perturb")->required();
  gen->add_option("--dim", gen_args.dim, "ambient dimension");
  gen->add_option("--count", gen_args.count, "number of vectors");
  gen->add_option("--seed", gen_args.seed, "64-bit seed");
  gen->add_option("--base", gen_args.base_path, "base frame file (perturb)");
  gen->add_option("--target", gen_args.target, "perturbation target as a fraction of A_F^{1/2}");
  gen->add_option("--out", gen_args.out_path, "frame file destination")->required();
  gen->add_option("--tol-rel", gen_opts.tol_rel, "relative rank tolerance");
  gen->callback([&] {
    exit_code = guarded([&] { return run_gen(gen_args, gen_opts); });
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParseError;
  }
  return exit_code;
}
