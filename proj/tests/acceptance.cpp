// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails. Pass criterion numbers as arguments
// to run a subset, e.g. `acceptance 1 2 6`.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "wsnloc/align.hpp"
#include "wsnloc/apsp.hpp"
#include "wsnloc/experiment.hpp"
#include "wsnloc/mds.hpp"

using namespace wsnloc;

namespace {

// Tolerances and budgets.
constexpr double kExactRecoveryErrorPercent = 0.1;
constexpr double kExactRecoverySeconds = 10.0;
constexpr double kHandValueTolerance = 1e-12;
constexpr std::size_t kRefineTriples = 100000;
constexpr std::size_t kImdsWinsRequired = 4;
constexpr double kRadioRangeSweepSeconds = 300.0;
constexpr double kMidRangeR = 2.2;
constexpr std::size_t kApspGraphs = 200;
constexpr std::size_t kEigenMatrices = 100;
constexpr std::size_t kEigenSize = 100;
constexpr double kEigenTolerance = 1e-8;
constexpr std::size_t kProcrustesInstances = 1000;
constexpr double kProcrustesTolerance = 1e-9;
constexpr double kSuiteSeconds = 1800.0;
constexpr std::size_t kTrials = 30;
constexpr Seed kBaseSeed = 2013;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

SuiteResult run_subset(std::vector<TopologyKind> topologies, std::vector<std::size_t> anchors,
                       std::vector<double> ranges, std::vector<double> errors) {
  Sweep sweep = default_sweep();
  sweep.topologies = std::move(topologies);
  sweep.anchor_counts = std::move(anchors);
  sweep.radio_ranges = std::move(ranges);
  sweep.range_errors = std::move(errors);
  SuiteOptions options;
  options.trials = kTrials;
  options.base_seed = kBaseSeed;
  return run_suite(sweep, options);
}

const CellResult& find_cell(const SuiteResult& r, TopologyKind t, std::size_t anchors, double range,
                            double error) {
  for (const CellResult& c : r.cells) {
    if (c.key == CellKey{t, anchors, range, error}) {
      return c;
    }
  }
  throw std::logic_error("cell missing from suite result");
}

Outcome exact_recovery() {
  const auto start = Clock::now();
  const SuiteResult r = run_subset({TopologyKind::random}, {10}, {15.0}, {0.0});
  const double elapsed = seconds_since(start);
  const CellResult& c = r.cells.at(0);
  const bool pass = !c.failure && c.error_mdsmap.mean < kExactRecoveryErrorPercent &&
                    c.error_imds.mean < kExactRecoveryErrorPercent &&
                    elapsed < kExactRecoverySeconds;
  return {pass, fmt("R=15, 100 random nodes, 10 anchors, %zu trials: MDS-MAP %.3g%%, IMDS %.3g%% "
                    "(limit %.1f%%), %.2f s (limit %.0f s)",
                    c.trials, c.error_mdsmap.mean, c.error_imds.mean, kExactRecoveryErrorPercent,
                    elapsed, kExactRecoverySeconds)};
}

Outcome refinement_bound() {
  std::mt19937_64 rng(20130);
  std::uniform_real_distribution<double> range(0.01, 10.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::size_t violations = 0;
  for (std::size_t k = 0; k < kRefineTriples; ++k) {
    const double r = range(rng);
    // (0, 4R]: 1 - U[0,1) lies in (0, 1].
    const double d1 = 4.0 * r * (1.0 - unit(rng));
    const double d2 = 4.0 * r * (1.0 - unit(rng));
    const double a = refine_compose(d1, d2, r);
    const double lo = std::sqrt(d1 * d1 + d2 * d2);
    const double hi = d1 + d2;
    // One ulp of slack for the rounding of the bounds themselves.
    if (!(a >= std::nextafter(lo, 0.0) && a <= std::nextafter(hi, INFINITY))) {
      ++violations;
    }
  }
  double worst_hand = 0.0;
  for (const double r : {1.0, 0.5, 2.0, 2.2, 7.25}) {
    worst_hand = std::max(worst_hand,
                          std::abs(refine_compose(r, r, r) - std::numbers::sqrt3 * r) / r);
    worst_hand = std::max(worst_hand,
                          std::abs(refine_compose(3 * r, r, r) - std::sqrt(10.0) * r) / r);
  }
  const bool pass = violations == 0 && worst_hand <= kHandValueTolerance;
  return {pass, fmt("%zu triples, %zu bound violations; worst hand-value deviation %.2e R "
                    "(limit %.0e R)",
                    kRefineTriples, violations, worst_hand, kHandValueTolerance)};
}

Outcome imds_beats_mdsmap() {
  const std::vector<double> ranges = default_sweep().radio_ranges;
  const auto start = Clock::now();
  const SuiteResult r = run_subset({TopologyKind::random}, {10}, ranges, {0.0});
  const double elapsed = seconds_since(start);
  std::size_t wins = 0;
  std::string levels;
  for (const double range : ranges) {
    const CellResult& c = find_cell(r, TopologyKind::random, 10, range, 0.0);
    const bool win = !c.failure && c.error_imds.mean < c.error_mdsmap.mean;
    wins += win ? 1 : 0;
    levels += fmt(" [R=%.2f conn=%.1f MDS-MAP %.2f%% IMDS %.2f%%]", range, c.connectivity.mean,
                  c.error_mdsmap.mean, c.error_imds.mean);
  }
  const bool pass = wins >= kImdsWinsRequired && elapsed < kRadioRangeSweepSeconds;
  return {pass, fmt("IMDS below MDS-MAP in %zu/%zu levels (need %zu), %.1f s (limit %.0f s);",
                    wins, ranges.size(), kImdsWinsRequired, elapsed, kRadioRangeSweepSeconds) +
                    levels};
}

Outcome anchor_trend() {
  const std::vector<TopologyKind> kinds{TopologyKind::random, TopologyKind::grid,
                                        TopologyKind::hex_grid};
  const SuiteResult r = run_subset(kinds, {3, 10}, {kMidRangeR}, {0.0});
  bool pass = true;
  std::string detail = fmt("R=%.1f, e=0:", kMidRangeR);
  for (const TopologyKind kind : kinds) {
    const CellResult& three = find_cell(r, kind, 3, kMidRangeR, 0.0);
    const CellResult& ten = find_cell(r, kind, 10, kMidRangeR, 0.0);
    const bool ok = !three.failure && !ten.failure &&
                    ten.error_mdsmap.mean <= three.error_mdsmap.mean &&
                    ten.error_imds.mean <= three.error_imds.mean;
    pass = pass && ok;
    detail += fmt(" [%s MDS-MAP %.2f%%->%.2f%% IMDS %.2f%%->%.2f%% (3->10 anchors)]",
                  std::string(to_string(kind)).c_str(), three.error_mdsmap.mean,
                  ten.error_mdsmap.mean, three.error_imds.mean, ten.error_imds.mean);
  }
  return {pass, detail};
}

Outcome noise_trend() {
  const std::vector<double> levels{0.0, 0.05, 0.10};
  const SuiteResult r = run_subset({TopologyKind::random}, {6, 10}, {kMidRangeR}, levels);
  bool pass = true;
  std::string detail = fmt("random, R=%.1f, IMDS:", kMidRangeR);
  double sum6 = 0.0, sum10 = 0.0;
  for (const std::size_t anchors : {std::size_t{6}, std::size_t{10}}) {
    std::vector<double> errors;
    for (const double e : levels) {
      const CellResult& c = find_cell(r, TopologyKind::random, anchors, kMidRangeR, e);
      pass = pass && !c.failure;
      errors.push_back(c.error_imds.mean);
      (anchors == 6 ? sum6 : sum10) += c.error_imds.mean;
    }
    const double rho = oracle::spearman(levels, errors);
    pass = pass && rho > 0.0;
    detail += fmt(" [%zu anchors: %.2f%%, %.2f%%, %.2f%% rho=%.2f]", anchors, errors[0], errors[1],
                  errors[2], rho);
  }
  const double mean6 = sum6 / static_cast<double>(levels.size());
  const double mean10 = sum10 / static_cast<double>(levels.size());
  pass = pass && mean10 <= mean6;
  detail += fmt(" average 10 anchors %.2f%% vs 6 anchors %.2f%%", mean10, mean6);
  return {pass, detail};
}

Outcome apsp_matches_floyd() {
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<std::size_t> size(2, 12);
  std::uniform_real_distribution<double> density(0.0, 0.6);
  // Multiples of 1/8 make every path sum exact, so equality is bitwise.
  std::uniform_int_distribution<int> eighths(1, 64);
  const auto weight = [&](std::mt19937_64& g) { return eighths(g) / 8.0; };
  std::size_t mismatched = 0;
  for (std::size_t k = 0; k < kApspGraphs; ++k) {
    const NetworkGraph g = oracle::random_connected_graph(size(rng), density(rng), rng, weight);
    const Matrix expected = oracle::floyd_warshall(g);
    if (!(apsp_classic(g, Execution::serial) == expected) ||
        !(apsp_classic(g, Execution::parallel) == expected)) {
      ++mismatched;
    }
  }
  return {mismatched == 0,
          fmt("%zu random connected graphs of 2..12 nodes, %zu differ from Floyd-Warshall",
              kApspGraphs, mismatched)};
}

Outcome eigensolver_accuracy() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst_pair = 0.0;
  double worst_recon = 0.0;
  std::size_t failures = 0;
  for (std::size_t m = 0; m < kEigenMatrices; ++m) {
    Matrix b(kEigenSize, kEigenSize);
    for (std::size_t i = 0; i < kEigenSize; ++i) {
      for (std::size_t j = i; j < kEigenSize; ++j) {
        b(i, j) = b(j, i) = u(rng);
      }
    }
    const double norm = frobenius_norm(b);
    EigenPairs e;
    try {
      e = symmetric_eigen(b);
    } catch (const ConvergenceError&) {
      ++failures;
      continue;
    }
    Matrix recon(kEigenSize, kEigenSize);
    for (std::size_t k = 0; k < kEigenSize; ++k) {
      double res2 = 0.0;
      for (std::size_t i = 0; i < kEigenSize; ++i) {
        double bv = 0.0;
        for (std::size_t j = 0; j < kEigenSize; ++j) {
          bv += b(i, j) * e.vectors(j, k);
        }
        const double r = bv - e.values[k] * e.vectors(i, k);
        res2 += r * r;
      }
      worst_pair = std::max(worst_pair, std::sqrt(res2) / norm);
    }
    for (std::size_t i = 0; i < kEigenSize; ++i) {
      for (std::size_t j = 0; j < kEigenSize; ++j) {
        double s = 0.0;
        for (std::size_t k = 0; k < kEigenSize; ++k) {
          s += e.vectors(i, k) * e.values[k] * e.vectors(j, k);
        }
        recon(i, j) = s - b(i, j);
      }
    }
    worst_recon = std::max(worst_recon, frobenius_norm(recon) / norm);
  }
  const bool pass = failures == 0 && worst_pair <= kEigenTolerance && worst_recon <= kEigenTolerance;
  return {pass, fmt("%zu random symmetric %zux%zu: worst |Bv - lv|/|B| %.2e, worst "
                    "|B - VLV'|/|B| %.2e (limit %.0e), %zu non-converged",
                    kEigenMatrices, kEigenSize, kEigenSize, worst_pair, worst_recon,
                    kEigenTolerance, failures)};
}

Outcome procrustes_recovery() {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<std::size_t> count(3, 20);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  std::uniform_real_distribution<double> log_scale(std::log(0.05), std::log(20.0));
  std::uniform_real_distribution<double> shift(-50.0, 50.0);
  std::bernoulli_distribution reflect(0.5);
  double worst_param = 0.0;
  double worst_residual = 0.0;
  std::size_t degenerate = 0;
  for (std::size_t k = 0; k < kProcrustesInstances; ++k) {
    const auto from = oracle::random_points(count(rng), 10.0, rng);
    Transform2D truth;
    truth.scale = std::exp(log_scale(rng));
    const double theta = angle(rng);
    const double ct = std::cos(theta), st = std::sin(theta);
    truth.rotation = reflect(rng) ? std::array<double, 4>{ct, st, st, -ct}
                                  : std::array<double, 4>{ct, -st, st, ct};
    truth.translation = {shift(rng), shift(rng)};
    std::vector<Point2> to;
    for (const Point2& p : from) {
      to.push_back(truth(p));
    }
    Transform2D fit;
    try {
      fit = fit_transform(from, to);
    } catch (const DegenerateAnchorsError&) {
      ++degenerate;
      continue;
    }
    double param = std::abs(fit.scale - truth.scale) / truth.scale;
    for (std::size_t i = 0; i < 4; ++i) {
      param = std::max(param, std::abs(fit.rotation[i] - truth.rotation[i]));
    }
    param = std::max(param, distance(fit.translation, truth.translation) / (1.0 + truth.scale));
    worst_param = std::max(worst_param, param);
    // Root-mean-square point residual relative to the target spread.
    double spread = 0.0;
    for (const Point2& p : to) {
      spread = std::max(spread, distance(p, to.front()));
    }
    const double rms = std::sqrt(transform_residual(fit, from, to) / static_cast<double>(to.size()));
    worst_residual = std::max(worst_residual, rms / spread);
  }
  const bool pass = degenerate == 0 && worst_param < kProcrustesTolerance &&
                    worst_residual < kProcrustesTolerance;
  return {pass, fmt("%zu instances (3..20 anchors, scale 0.05..20, half reflected): worst "
                    "parameter error %.2e, worst relative RMS residual %.2e (limit %.0e), "
                    "%zu degenerate",
                    kProcrustesInstances, worst_param, worst_residual, kProcrustesTolerance,
                    degenerate)};
}

Outcome suite_determinism() {
  SuiteOptions options;
  options.trials = kTrials;
  options.base_seed = kBaseSeed;
  const Sweep sweep = default_sweep();
  double times[2];
  std::string csv[2];
  std::size_t failed = 0;
  for (int run = 0; run < 2; ++run) {
    const auto start = Clock::now();
    const SuiteResult r = run_suite(sweep, options);
    times[run] = seconds_since(start);
    csv[run] = results_csv(r);
    failed += r.failed_cells();
  }
  const std::size_t cells = sweep.cells().size();
  const bool identical = csv[0] == csv[1];
  const bool pass = cells == 360 && identical && failed == 0 && times[0] < kSuiteSeconds &&
                    times[1] < kSuiteSeconds;
  return {pass, fmt("%zu cells x %zu trials: run 1 %.0f s, run 2 %.0f s (limit %.0f s), "
                    "CSV %s (%zu bytes), %zu failed cells",
                    cells, kTrials, times[0], times[1], kSuiteSeconds,
                    identical ? "byte-identical" : "DIFFERS", csv[0].size(), failed)};
}

} // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"exact recovery on a fully connected network", exact_recovery},
      {"refinement bound and hand values", refinement_bound},
      {"IMDS error below MDS-MAP across radio ranges", imds_beats_mdsmap},
      {"more anchors lower the error", anchor_trend},
      {"error grows with range error; 10 anchors beat 6", noise_trend},
      {"classic APSP equals Floyd-Warshall", apsp_matches_floyd},
      {"eigensolver residual and reconstruction", eigensolver_accuracy},
      {"Procrustes recovers known transforms", procrustes_recovery},
      {"full sweep is fast and byte-reproducible", suite_determinism},
  };
  std::set<std::size_t> selected;
  for (int i = 1; i < argc; ++i) {
    selected.insert(static_cast<std::size_t>(std::atoi(argv[i])));
  }
  std::size_t failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const std::size_t id = i + 1;
    if (!selected.empty() && !selected.contains(id)) {
      continue;
    }
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::printf("%s criterion %zu: %s: %s\n", o.pass ? "PASS" : "FAIL", id, criteria[i].first,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu criteria failed\n", failures);
  return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
