#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "arrowroot/errors.hpp"
#include "arrowroot/solver.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

using nlohmann::json;

std::string hex_of(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%a", v);
  return buf;
}

std::string dec_of(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// JSON has no inf/nan literals; carry them as strings.
json num(double v) {
  if (std::isfinite(v)) return v;
  return dec_of(v);
}

std::vector<double> read_values(const std::string& path) {
  if (path == "-") return arrowroot::read_coefficients(std::cin);
  std::ifstream in(path);
  if (!in) throw arrowroot::InputError("cannot open file: " + path);
  return arrowroot::read_coefficients(in);
}

void print_text(const arrowroot::SolveReport& rep) {
  std::printf("degree: %d\n", rep.degree);
  std::printf("strategy: %s\n", rep.strategy_used.c_str());
  std::printf("roots (descending):\n");
  std::printf("  %3s  %-25s %-10s %-12s %-10s %s\n", "k", "root", "K_b",
              "kappa_bound", "residual", "escalated");
  int k = 1;
  for (const auto& r : rep.roots) {
    std::printf("  %3d  %-25.17g %-10.4g %-12.4g %-10.4g %s\n", k++, r.lambda,
                r.k_b, r.kappa_bound, r.residual,
                r.b_escalated ? "yes" : "no");
  }
  if (!rep.d_points.empty()) {
    std::printf("interpolation points:\n");
    std::printf("  %3s  %-25s %s\n", "j", "d_j", "cond(u,d_j)");
    int j = 1;
    for (const auto& dp : rep.d_points)
      std::printf("  %3d  %-25.17g %.4g\n", j++, dp.value, dp.cond);
  }
  std::printf("k_alpha: %.4g   max cond: %.4g   max K_b: %.4g   escalations: %d\n",
              rep.k_alpha, rep.max_cond, rep.max_k_b, rep.escalation_count);
  if (rep.cond_flagged)
    std::printf("warning: cond(u,d_j) exceeds 1/eps at some point; bounds may be loose\n");
  if (rep.k_alpha_flagged)
    std::printf("warning: k_alpha exceeds 1/eps; the arrow tip lost digits\n");
  int limited = 0;
  for (const auto& r : rep.roots) limited += r.b_accuracy_limited ? 1 : 0;
  if (limited > 0)
    std::printf(
        "warning: kappa_matrix * K_b > 1/eps for %d root(s); last digits "
        "uncertain\n",
        limited);
  std::printf("timings: points %.6fs  build %.6fs  roots %.6fs\n",
              rep.timings.points_seconds, rep.timings.build_seconds,
              rep.timings.roots_seconds);
  if (rep.verify)
    std::printf("verify (%u-bit oracle): max relative deviation %.4g\n",
                rep.verify->bits, rep.verify->max_rel_deviation);
}

void print_json(const arrowroot::SolveReport& rep) {
  json roots = json::array();
  for (const auto& r : rep.roots) {
    roots.push_back({{"value_hex", hex_of(r.lambda)},
                     {"value_dec", num(r.lambda)},
                     {"k_b", num(r.k_b)},
                     {"kappa_bound", num(r.kappa_bound)},
                     {"residual", num(r.residual)},
                     {"escalated", r.b_escalated}});
  }
  json dpts = json::array();
  for (const auto& dp : rep.d_points) {
    dpts.push_back({{"value_hex", hex_of(dp.value)},
                    {"value_dec", num(dp.value)},
                    {"cond", num(dp.cond)}});
  }
  json diagnostics = {{"k_alpha", num(rep.k_alpha)},
                      {"max_cond", num(rep.max_cond)},
                      {"strategy", rep.strategy_used},
                      {"d_points", dpts}};
  if (rep.verify)
    diagnostics["verify"] = {{"bits", rep.verify->bits},
                             {"max_rel_deviation", num(rep.verify->max_rel_deviation)}};
  json out = {{"roots", roots},
              {"diagnostics", diagnostics},
              {"meta", {{"degree", rep.degree}, {"version", kVersion}}}};
  std::cout << out.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"arrowroot: forward-stable roots of real monic polynomials "
               "with distinct real roots"};
  app.require_subcommand(1);

  // solve
  auto* cmd_solve = app.add_subcommand(
      "solve", "read a coefficient file and compute all roots");
  std::string coeffs_path = "-";
  std::string points_path;
  std::string format = "text";
  std::string strategy = "auto";
  arrowroot::SolveOptions opts;
  cmd_solve->add_option("--coeffs", coeffs_path,
                        "coefficient file, one per line, descending powers; "
                        "'-' reads stdin");
  cmd_solve
      ->add_option("--strategy", strategy, "interpolation point strategy")
      ->check(CLI::IsMember({"derivative", "reciprocal", "auto"}));
  cmd_solve->add_option("--points", points_path,
                        "file of interpolation points (bypasses strategy)");
  cmd_solve->add_option("--tau-b", opts.tau_b,
                        "K_b threshold for recomputing b in doubled precision");
  cmd_solve->add_option("--format", format, "output format")
      ->check(CLI::IsMember({"text", "json"}));
  cmd_solve->add_flag("--verify", opts.verify,
                      "cross-check roots against the exact bisection oracle");
  cmd_solve->add_option("--threads", opts.threads, "worker threads for the per-root phase");

  // gen
  auto* cmd_gen = app.add_subcommand("gen", "generate test polynomials");
  cmd_gen->require_subcommand(1);
  auto* cmd_wilk =
      cmd_gen->add_subcommand("wilkinson", "prod (x - i), i = 1..N");
  int wilk_n = 18;
  cmd_wilk->add_option("N", wilk_n, "order")->required();

  // bench
  auto* cmd_bench =
      app.add_subcommand("bench", "time the build and per-root phases");
  std::vector<int> sizes{128, 256, 512};
  int reps = 3;
  cmd_bench->add_option("--sizes", sizes, "degrees to time")->delimiter(',');
  cmd_bench->add_option("--reps", reps, "repetitions (best time wins)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }

  try {
    if (*cmd_solve) {
      auto coeffs = read_values(coeffs_path);
      arrowroot::Polynomial u{std::span<const double>(coeffs)};
      if (strategy == "derivative")
        opts.strategy = arrowroot::Strategy::derivative;
      else if (strategy == "reciprocal")
        opts.strategy = arrowroot::Strategy::reciprocal;
      if (!points_path.empty()) opts.points = read_values(points_path);
      arrowroot::SolveReport rep = arrowroot::solve(u, opts);
      if (format == "json")
        print_json(rep);
      else
        print_text(rep);
      return 0;
    }
    if (*cmd_wilk) {
      arrowroot::Polynomial w = arrowroot::generate_wilkinson(wilk_n);
      std::ostringstream os;
      os << "# wilkinson order " << wilk_n << "\n";
      arrowroot::write_coefficients(
          os, std::span<const double>(w.coeffs().data(),
                                      static_cast<std::size_t>(w.coeffs().size())));
      std::cout << os.str();
      return 0;
    }
    if (*cmd_bench) {
      auto rows = arrowroot::bench(sizes, reps);
      std::printf("%8s %14s %14s %14s %10s\n", "n", "build (s)", "roots (s)",
                  "total (s)", "ratio");
      double prev = 0.0;
      for (const auto& row : rows) {
        double total = row.total();
        if (prev > 0.0)
          std::printf("%8d %14.6f %14.6f %14.6f %10.2f\n", row.n,
                      row.build_seconds, row.roots_seconds, total, total / prev);
        else
          std::printf("%8d %14.6f %14.6f %14.6f %10s\n", row.n,
                      row.build_seconds, row.roots_seconds, total, "-");
        prev = total;
      }
      return 0;
    }
  } catch (const arrowroot::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const arrowroot::StrategyError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const arrowroot::NotInterlacingError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const arrowroot::RootHitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const arrowroot::BracketError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
