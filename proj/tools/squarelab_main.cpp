// squarelab: experiment runner around the library modules.  Every
// subcommand computes one experiment, prints a machine-readable report
// (JSON by default, CSV via --format csv) and exits 0 on success, 1 on a
// computation error (the message names the module), 2 on usage errors.

#include <chrono>
#include <cstdint>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "squarelab/abc_lemma.hpp"
#include "squarelab/ap_squares.hpp"
#include "squarelab/congruence_roots.hpp"
#include "squarelab/core_arith.hpp"
#include "squarelab/gap_elliptic.hpp"
#include "squarelab/int_types.hpp"
#include "squarelab/lattice_circle.hpp"
#include "squarelab/parallel.hpp"
#include "squarelab/report.hpp"
#include "squarelab/sidon_squares.hpp"
#include "squarelab/sumset_energy.hpp"
#include "squarelab/trig_norms.hpp"

namespace {

using namespace squarelab;

struct OutputOptions {
  std::string format = "json";
  std::string output_path;  // empty: stdout
  bool stable = false;
  unsigned threads = 0;     // 0: resolve from environment / hardware
};

void add_output_flags(CLI::App* cmd, OutputOptions& opts) {
  cmd->add_option("--format", opts.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  cmd->add_option("--output", opts.output_path,
                  "Write the report to this file instead of stdout");
  cmd->add_flag("--stable-output", opts.stable,
                "Omit the wall-clock field so reruns compare byte-identical");
}

void add_thread_flag(CLI::App* cmd, OutputOptions& opts) {
  cmd->add_option("--threads", opts.threads,
                  "Worker cap (0 = SQUARELAB_THREADS or hardware)");
}

void write_report(const ExperimentReport& report, const OutputOptions& opts) {
  std::string text = (opts.format == "csv") ? render_csv(report)
                                            : render_json(report, opts.stable);
  if (opts.output_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(opts.output_path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open output file: " + opts.output_path);
  }
  out << text;
}

Int parse_int(const std::string& text) {
  try {
    return int_from_string(text);
  } catch (const std::exception&) {
    throw std::invalid_argument("not an integer: '" + text + "'");
  }
}

Rat parse_rat(const std::string& text) {
  try {
    Rat q(text);
    if (q.get_den() == 0) {
      throw std::invalid_argument("zero denominator");
    }
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("not a rational: '" + text + "'");
  }
}

std::vector<Int> parse_int_list(const std::string& text) {
  std::vector<Int> out;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    const auto last = item.find_last_not_of(" \t");
    if (first == std::string::npos) continue;
    out.push_back(parse_int(item.substr(first, last - first + 1)));
  }
  if (out.empty()) {
    throw std::invalid_argument("empty integer list: '" + text + "'");
  }
  return out;
}

std::string join_ints(const std::vector<Int>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ' ';
    out += to_string(values[i]);
  }
  return out;
}

// Decimal rendering with a cap: huge integers appear as digit counts only.
Json int_cell(const Int& value, std::size_t max_digits = 120) {
  std::string text = to_string(value);
  if (text.size() <= max_digits) return text;
  return "(" + std::to_string(text.size() -
                              (value < 0 ? 1 : 0)) +
         " digits)";
}

std::size_t digit_count(const Int& value) {
  std::string text = to_string(Int(abs(value)));
  return text.size();
}

ExperimentReport base_report(const std::string& experiment,
                             const std::string& bounds) {
  ExperimentReport report;
  report.experiment = experiment;
  report.provenance.bounds = bounds;
  return report;
}

// ---------------------------------------------------------------- ap-squares

ExperimentReport run_ap_count(const Int& a, const Int& b, std::uint64_t k) {
  ApSquareReport hits = squares_in_ap(a, b, k);
  ExperimentReport report =
      base_report("ap-count", "indices 1..k of the progression a+ib");
  report.add_param("a", to_string(a));
  report.add_param("b", to_string(b));
  report.add_param("k", std::to_string(k));
  report.add_param("count", std::to_string(hits.count));
  report.columns = {{"index", "position"}, {"value", "integer"},
                    {"root", "integer"}};
  for (std::uint64_t i : hits.hit_indices) {
    Int value = a + Int(static_cast<long>(i)) * b;
    report.add_row({i, int_cell(value), int_cell(*is_square(value))});
  }
  return report;
}

ExperimentReport run_sigma_search(std::uint64_t k, std::uint64_t a_max,
                                  std::uint64_t b_max, unsigned threads) {
  ApSquareReport best = sigma_lower_search(k, a_max, b_max, threads);
  ExperimentReport report =
      base_report("sigma-search", "a <= a_max, b <= b_max, k terms");
  report.add_param("k", std::to_string(k));
  report.add_param("a_max", std::to_string(a_max));
  report.add_param("b_max", std::to_string(b_max));
  report.add_param("best_a", to_string(best.a));
  report.add_param("best_b", to_string(best.b));
  report.add_param("count", std::to_string(best.count));
  report.columns = {{"index", "position"}, {"value", "integer"},
                    {"root", "integer"}};
  for (std::uint64_t i : best.hit_indices) {
    Int value = best.a + Int(static_cast<long>(i)) * best.b;
    report.add_row({i, int_cell(value), int_cell(*is_square(value))});
  }
  return report;
}

ExperimentReport run_fermat_check(std::uint64_t limit, bool& witness_found) {
  std::vector<std::array<Int, 4>> witnesses = fermat_four_term_check(limit);
  witness_found = !witnesses.empty();
  ExperimentReport report =
      base_report("fermat-check", "squares <= limit");
  report.add_param("limit", std::to_string(limit));
  report.add_param("witnesses", std::to_string(witnesses.size()));
  report.columns = {{"s1", "integer"}, {"s2", "integer"},
                    {"s3", "integer"}, {"s4", "integer"}};
  for (const auto& w : witnesses) {
    report.add_row({int_cell(w[0]), int_cell(w[1]), int_cell(w[2]),
                    int_cell(w[3])});
  }
  return report;
}

// -------------------------------------------------------------- sumset-energy

std::vector<Int> square_ground_set(std::uint64_t n) {
  std::vector<Int> out;
  for (std::uint64_t k = 1; k <= n; ++k) {
    out.push_back(Int(static_cast<unsigned long>(k)) *
                  Int(static_cast<unsigned long>(k)));
  }
  return out;
}

ExperimentReport run_energy(const std::vector<Int>& ground,
                            const std::string& ground_label) {
  ExperimentReport report =
      base_report("energy", "ordered pairs over the ground set");
  report.add_param("set", ground_label);
  report.add_param("size", std::to_string(ground.size()));
  report.columns = {{"sign", ""},
                    {"support", "values"},
                    {"second_moment", "pairs^2"},
                    {"max_count", "pairs"}};
  for (RepSign sign : {RepSign::sum, RepSign::difference}) {
    RepProfile profile = rep_profile(ground, sign);
    Int max_count(0);
    for (const auto& [value, count] : profile.counts) {
      if (count > max_count) max_count = count;
    }
    report.add_row({sign == RepSign::sum ? "sum" : "difference",
                    profile.counts.size(),
                    int_cell(energy_moment(profile, 2)),
                    int_cell(max_count)});
  }
  return report;
}

ExperimentReport run_cubes(std::uint64_t limit, unsigned dim) {
  std::vector<Int> squares;
  for (std::uint64_t k = 1; k * k <= limit; ++k) {
    squares.push_back(Int(static_cast<unsigned long>(k * k)));
  }
  std::vector<AffineCube> cubes =
      find_affine_cubes(squares, dim, Int(static_cast<unsigned long>(limit)));
  ExperimentReport report =
      base_report("cubes", "affine cubes inside the squares <= limit");
  report.add_param("limit", std::to_string(limit));
  report.add_param("dim", std::to_string(dim));
  report.add_param("count", std::to_string(cubes.size()));
  report.columns = {{"b0", "integer"}, {"generators", "list"}};
  for (const AffineCube& cube : cubes) {
    report.add_row({int_cell(cube.b0), join_ints(cube.generators)});
  }
  return report;
}

// ---------------------------------------------------------------- trig-norms

ExperimentReport run_norms(const std::vector<std::uint64_t>& xs) {
  ExperimentReport report =
      base_report("norms", "unit coefficients on the squares k^2, k <= x");
  report.add_param("x_list", [&] {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (i) out += ' ';
      out += std::to_string(xs[i]);
    }
    return out;
  }());
  report.columns = {{"x", "frequencies"},
                    {"l2_squared", "1"},
                    {"l4_fourth", "1"},
                    {"x2_ln_x", "1"},
                    {"ratio", "1"}};
  for (std::uint64_t x : xs) {
    std::vector<std::uint64_t> freqs;
    for (std::uint64_t k = 1; k <= x; ++k) freqs.push_back(k * k);
    TrigPolySpec spec = make_unit_spec(freqs);
    Rat l4 = l4_fourth_exact(spec);
    double l4d = to_double(l4);
    double model = static_cast<double>(x) * static_cast<double>(x) *
                   std::log(static_cast<double>(x));
    report.add_row({x, int_cell(Int(l2_squared(spec).get_num())),
                    int_cell(Int(l4.get_num())), model, l4d / model});
  }
  return report;
}

ExperimentReport run_fejer(std::uint64_t order, std::uint64_t grid) {
  double integral = 0.0;
  double min_value = 0.0;
  bool first = true;
  for (std::uint64_t i = 0; i < grid; ++i) {
    double theta = (static_cast<double>(i) + 0.5) / static_cast<double>(grid);
    double value = fejer_eval(order, theta);
    integral += value;
    if (first || value < min_value) {
      min_value = value;
      first = false;
    }
  }
  integral /= static_cast<double>(grid);
  ExperimentReport report =
      base_report("norms", "midpoint rule on [0,1)");
  report.add_param("fejer_order", std::to_string(order));
  report.add_param("grid", std::to_string(grid));
  report.columns = {{"order", "1"}, {"integral", "1"}, {"min_value", "1"}};
  report.add_row({order, integral, min_value});
  return report;
}

ExperimentReport run_window_energy(const std::vector<std::uint64_t>& ns,
                                   const std::vector<std::uint64_t>& deltas) {
  ExperimentReport report = base_report(
      "window-energy", "squares k^2 for N <= k <= N+Delta");
  report.columns = {{"N", "start"},
                    {"Delta", "width"},
                    {"l4_fourth", "1"},
                    {"model", "1"},
                    {"ratio", "1"},
                    {"logn_over_n", "1"},
                    {"n_over_logn", "1"}};
  for (std::uint64_t n : ns) {
    for (std::uint64_t delta : deltas) {
      WindowEnergyReport window = window_energy(n, delta);
      report.add_row({window.N, window.Delta, int_cell(window.l4_fourth),
                      window.model, window.ratio, window.logn_over_n,
                      window.n_over_logn});
    }
  }
  return report;
}

// ---------------------------------------------------------- congruence-roots

ExperimentReport run_roots(const std::string& kind, const Int& a,
                           const Int& modulus) {
  OmegaSpec spec;
  spec.kind = (kind == "xx1") ? OmegaKind::x_times_x_minus_1
                              : OmegaKind::x_squared_minus_a;
  spec.a = a;
  spec.modulus = modulus;
  ResidueSet roots = root_set(spec);
  ExperimentReport report = base_report(
      "roots", kind == "xx1" ? "roots of x(x-1) mod n" : "roots of x^2-a mod n");
  report.add_param("kind", kind);
  if (kind != "xx1") report.add_param("a", to_string(a));
  report.add_param("modulus", to_string(modulus));
  report.add_param("count", std::to_string(roots.residues.size()));
  report.columns = {{"root", "residue"}};
  for (const Int& r : roots.residues) report.add_row({int_cell(r)});
  return report;
}

ExperimentReport run_cluster_construct(unsigned k, const Int& prime_floor,
                                       const std::string& variant,
                                       double epsilon) {
  ClusteredModulus made = construct_clustered_modulus(
      k, prime_floor,
      variant == "origin" ? ClusterVariant::origin : ClusterVariant::edge,
      epsilon);
  ExperimentReport report = base_report(
      "cluster-construct", "k primes above the floor, CRT-assembled");
  report.add_param("k", std::to_string(k));
  report.add_param("prime_floor", to_string(prime_floor));
  report.add_param("variant", variant);
  report.add_param("n", to_string(made.n));
  Int sum_x(0);
  for (const Int& xi : made.x) sum_x += xi;
  report.add_param("sum_x", to_string(sum_x));
  report.add_param("sum_x_mod_n", to_string(mod_positive(sum_x, made.n)));
  report.add_param("omega_size", std::to_string(made.omega.residues.size()));
  report.columns = {{"i", "index"}, {"prime", "integer"},
                    {"coeff", "integer"}, {"x", "integer"}};
  for (std::size_t i = 0; i < made.primes.size(); ++i) {
    report.add_row({i + 1, int_cell(made.primes[i]), int_cell(made.coeffs[i]),
                    int_cell(made.x[i])});
  }
  return report;
}

ExperimentReport run_shortint_scan(std::uint64_t b_max, unsigned k,
                                   unsigned threads, bool& violation_found) {
  ShortIntervalScan scan = short_interval_scan(b_max, k, threads);
  violation_found =
      scan.bound_violations > 0 || scan.certificate_violations > 0;
  ExperimentReport report =
      base_report("shortint-scan", "all moduli b <= b_max, all residues a");
  report.add_param("b_max", std::to_string(b_max));
  report.add_param("k", std::to_string(k));
  report.add_param("bound_exponent", to_string(scan.bound_exponent));
  report.add_param("clusters_checked", std::to_string(scan.clusters_checked));
  report.add_param("bound_violations", std::to_string(scan.bound_violations));
  report.add_param("certificate_violations",
                   std::to_string(scan.certificate_violations));
  report.columns = {{"n", "modulus"},
                    {"span", "integer"},
                    {"exponent", "1"},
                    {"roots", "list"}};
  report.add_row({int_cell(scan.worst.n), int_cell(scan.worst.span),
                  scan.worst.exponent, join_ints(scan.worst.roots)});
  return report;
}

// ------------------------------------------------------------ lattice-circle

ExperimentReport run_circle(const Int& m) {
  std::vector<CirclePoint> points = two_square_reps(m);
  ExperimentReport report =
      base_report("circle", "all integer points on x^2+y^2=M");
  report.add_param("M", to_string(m));
  report.add_param("count", std::to_string(points.size()));
  report.columns = {{"x", "integer"}, {"y", "integer"}};
  for (const CirclePoint& p : points) {
    report.add_row({int_cell(p.x), int_cell(p.y)});
  }
  return report;
}

ExperimentReport run_arc_verify(std::uint64_t m_max, unsigned k,
                                unsigned threads, bool& violation_found) {
  ArcBoundReport bound = arc_bound_verify(m_max, k, threads);
  violation_found = !bound.ok;
  ExperimentReport report =
      base_report("arc-verify", "every circle M <= m_max");
  report.add_param("m_max", std::to_string(m_max));
  report.add_param("k", std::to_string(k));
  report.add_param("ok", bound.ok ? "true" : "false");
  report.add_param("threshold_exponent", to_string(bound.threshold_exponent));
  report.add_param("clusters_checked", std::to_string(bound.clusters_checked));
  report.add_param("violations", std::to_string(bound.violations));
  report.add_param("ambiguous", std::to_string(bound.ambiguous));
  report.columns = {{"worst_m", "integer"},
                    {"worst_exponent", "1"},
                    {"arc_length", "1"},
                    {"points", "count"}};
  report.add_row({int_cell(bound.worst.M), bound.worst_exponent,
                  bound.worst.arc_length, bound.worst.points.size()});
  return report;
}

ExperimentReport run_families(const std::string& family, std::uint64_t n) {
  FamilyKind kind = FamilyKind::pair;
  if (family == "triple") kind = FamilyKind::triple;
  if (family == "quad-fibonacci") kind = FamilyKind::quad_fibonacci;
  FamilyReport made = family_points(kind, n);
  ExperimentReport report =
      base_report("families", "explicit tight clusters on one circle");
  report.add_param("family", family);
  report.add_param("n", std::to_string(n));
  report.add_param("M", to_string(made.M));
  report.add_param("separation", std::to_string(made.extreme_separation));
  report.add_param("model_length", std::to_string(made.model_length));
  report.columns = {{"x", "integer"}, {"y", "integer"}};
  for (const CirclePoint& p : made.points) {
    report.add_row({int_cell(p.x), int_cell(p.y)});
  }
  return report;
}

// ------------------------------------------------------------- sidon-squares

ExperimentReport run_sidon_greedy(std::uint64_t limit) {
  std::vector<Int> chosen = greedy_sidon_squares(limit);
  B2Check check = is_b2g(chosen, 1);
  ExperimentReport report =
      base_report("sidon-greedy", "squares <= limit, greedy pair-sum filter");
  report.add_param("limit", std::to_string(limit));
  report.add_param("size", std::to_string(chosen.size()));
  report.add_param("is_b2_1", check.ok ? "true" : "false");
  report.columns = {{"value", "integer"}};
  for (const Int& v : chosen) report.add_row({int_cell(v)});
  return report;
}

ExperimentReport run_sidon_random(unsigned g, double beta, std::uint64_t x_max,
                                  std::uint64_t seed) {
  B2Config cfg;
  cfg.g = g;
  cfg.beta = (beta > 0) ? beta : default_beta(g);
  cfg.x_max = x_max;
  cfg.seed = seed;
  B2Outcome outcome = random_b2g_squares(cfg);
  ExperimentReport report = base_report(
      "sidon-random", "independent draws over x <= x_max, collision repair");
  report.provenance.seed = seed;
  report.add_param("g", std::to_string(g));
  report.add_param("beta", std::to_string(cfg.beta));
  report.add_param("x_max", std::to_string(x_max));
  report.add_param("seed", std::to_string(seed));
  report.add_param("sampled", std::to_string(outcome.sampled.size()));
  report.add_param("removed", std::to_string(outcome.removed.size()));
  report.add_param("kept", std::to_string(outcome.kept_squares.size()));
  if (!outcome.kept_squares.empty()) {
    B2Check check = is_b2g(outcome.kept_squares, g);
    report.add_param("is_b2g", check.ok ? "true" : "false");
  }
  std::string fit = "";
  if (outcome.kept_squares.size() >= 16) {
    try {
      fit = std::to_string(growth_exponent_fit(outcome.kept_squares));
    } catch (const std::exception&) {
      fit = "";
    }
  }
  report.add_param("growth_exponent", fit);
  report.columns = {{"x", "integer"}, {"square", "integer"},
                    {"removed", ""}};
  std::size_t removed_at = 0;
  for (std::uint64_t x : outcome.sampled) {
    bool was_removed = false;
    while (removed_at < outcome.removed.size() &&
           outcome.removed[removed_at] < x) {
      ++removed_at;
    }
    if (removed_at < outcome.removed.size() &&
        outcome.removed[removed_at] == x) {
      was_removed = true;
    }
    Int square = Int(static_cast<unsigned long>(x));
    square *= square;
    report.add_row({x, int_cell(square), was_removed});
  }
  return report;
}

// -------------------------------------------------------------- gap-elliptic

ExperimentReport run_gap3(const Rat& r, const Rat& t) {
  Ap3Params made = ap3_squares(r, t);
  ExperimentReport report =
      base_report("gap3", "three rational squares in arithmetic progression");
  report.add_param("r", to_string(r));
  report.add_param("t", to_string(t));
  report.add_param("delta", to_string(made.delta));
  report.add_param("degenerate", made.degenerate ? "true" : "false");
  report.columns = {{"position", "index"}, {"value", "rational"},
                    {"root", "rational"}};
  const Rat roots[3] = {made.x, made.y, made.z};
  for (int i = 0; i < 3; ++i) {
    report.add_row({i, to_string(Rat(roots[i] * roots[i])),
                    to_string(roots[i])});
  }
  return report;
}

ExperimentReport run_gap2x3(const Rat& r, const Rat& t) {
  GapGrid grid = gap_2x3(r, t);
  Ap3Params seed = ap3_squares(r, t);
  auto [t2, r2] = doubled_parameters(seed);
  ExperimentReport report =
      base_report("gap2x3", "2x3 grid of rational squares");
  report.add_param("r", to_string(r));
  report.add_param("t", to_string(t));
  report.add_param("t_doubled", to_string(t2));
  report.add_param("r_doubled", to_string(r2));
  report.add_param("x0", to_string(grid.x0));
  report.add_param("v", to_string(grid.v));
  report.add_param("delta", to_string(grid.delta));
  report.columns = {{"j1", "index"}, {"j2", "index"}, {"value", "rational"},
                    {"root", "rational"}};
  for (std::size_t j1 = 0; j1 < grid.rows; ++j1) {
    for (std::size_t j2 = 0; j2 < grid.cols; ++j2) {
      const Rat& value = grid.entries[j1][j2];
      report.add_row({j1, j2, to_string(value),
                      to_string(*rational_square_root(value))});
    }
  }
  return report;
}

ExperimentReport run_magic(const Rat& x0, const Rat& v, const Rat& delta) {
  GapGrid grid = make_gap_grid(x0, v, delta, 3);
  auto view = magic_square_view(grid);
  ExperimentReport report =
      base_report("magic", "3x3 grid rearranged to constant line sums");
  report.add_param("x0", to_string(x0));
  report.add_param("v", to_string(v));
  report.add_param("delta", to_string(delta));
  Rat center = grid.entries[1][1];
  report.add_param("line_sum", to_string(Rat(center * 3)));
  report.columns = {{"row", "index"}, {"col", "index"}, {"value", "rational"}};
  for (int row = 0; row < 3; ++row) {
    for (int col = 0; col < 3; ++col) {
      report.add_row({row, col, to_string(view[row][col])});
    }
  }
  return report;
}

ExperimentReport run_gap3x3_search(std::uint64_t height) {
  std::vector<GapGrid> found = search_3x3_gap_squares(height);
  ExperimentReport report =
      base_report("gap3x3-search", "square roots bounded by the height");
  report.add_param("height_bound", std::to_string(height));
  report.add_param("found", std::to_string(found.size()));
  report.columns = {{"x0", "rational"}, {"v", "rational"},
                    {"delta", "rational"}};
  for (const GapGrid& grid : found) {
    report.add_row({to_string(grid.x0), to_string(grid.v),
                    to_string(grid.delta)});
  }
  return report;
}

// ----------------------------------------------------------------- abc-lemma

ExperimentReport run_abc_build(const Int& A, const Int& B,
                               const std::vector<Int>& t,
                               const std::string& variant_name, long budget) {
  AbcVariant variant = (variant_name == "reciprocal") ? AbcVariant::reciprocal
                                                      : AbcVariant::direct;
  AbcConstruction made = abc_from_square_ap(A, B, t, variant, budget);
  PartialFractionSystem sys = partial_fraction_weights(t, 0);
  ExperimentReport report =
      base_report("abc-build", "five squares A + t_j B");
  report.add_param("A", to_string(A));
  report.add_param("B", to_string(B));
  report.add_param("t", join_ints(t));
  report.add_param("variant", variant_name);
  report.add_param("L", to_string(sys.L));
  report.add_param("E", join_ints(sys.E));
  report.add_param("D", to_string(sys.D));
  report.add_param("exponents_used", join_ints(made.exponents));
  // Both phrasings of the size regime reduce to the same exact comparison.
  bool regime = pow_int(B, 6) >= pow_int(Int(abs(A)), 5);
  report.add_param("regime_B6_ge_A5", regime ? "true" : "false");
  if (made.triple.rad) {
    report.add_param("rad", to_string(*made.triple.rad));
    report.add_param("quality", std::to_string(*made.triple.quality));
  } else {
    report.add_param("rad", "");
    report.add_param("quality", "");
  }
  report.columns = {{"part", ""}, {"digits", "count"}, {"value", "integer"}};
  report.add_row({"a", digit_count(made.triple.a), int_cell(made.triple.a)});
  report.add_row({"b", digit_count(made.triple.b), int_cell(made.triple.b)});
  report.add_row({"c", digit_count(made.triple.c), int_cell(made.triple.c)});
  report.add_row({"first_product", digit_count(made.first_product),
                  int_cell(made.first_product)});
  report.add_row({"second_product", digit_count(made.second_product),
                  int_cell(made.second_product)});
  report.add_row({"common_divisor", digit_count(made.common_divisor),
                  int_cell(made.common_divisor)});
  report.add_row({"sqrt_product", digit_count(made.sqrt_product),
                  int_cell(made.sqrt_product)});
  return report;
}

ExperimentReport run_abc_quality(const Int& a, const Int& b) {
  AbcTriple triple = abc_quality(a, b);
  ExperimentReport report = base_report("abc-quality", "coprime a + b = c");
  report.add_param("a", to_string(a));
  report.add_param("b", to_string(b));
  double log_c = std::log(to_double(triple.c));
  report.columns = {{"a", "integer"},       {"b", "integer"},
                    {"c", "integer"},       {"rad", "integer"},
                    {"quality", "1"},       {"ln_c", "1"},
                    {"lnln_c_over_ln_c", "1"}};
  report.add_row({int_cell(triple.a), int_cell(triple.b), int_cell(triple.c),
                  int_cell(*triple.rad), *triple.quality, log_c,
                  std::log(log_c) / log_c});
  return report;
}

std::string module_name(const std::string& subcommand) {
  static const std::map<std::string, std::string> table = {
      {"ap-count", "ap-squares"},       {"sigma-search", "ap-squares"},
      {"fermat-check", "ap-squares"},   {"energy", "sumset-energy"},
      {"cubes", "sumset-energy"},       {"norms", "trig-norms"},
      {"window-energy", "trig-norms"},  {"roots", "congruence-roots"},
      {"cluster-construct", "congruence-roots"},
      {"shortint-scan", "congruence-roots"},
      {"circle", "lattice-circle"},     {"arc-verify", "lattice-circle"},
      {"families", "lattice-circle"},   {"sidon-greedy", "sidon-squares"},
      {"sidon-random", "sidon-squares"},{"gap3", "gap-elliptic"},
      {"gap2x3", "gap-elliptic"},       {"magic", "gap-elliptic"},
      {"gap3x3-search", "gap-elliptic"},{"abc-build", "abc-lemma"},
      {"abc-quality", "abc-lemma"}};
  auto it = table.find(subcommand);
  return it == table.end() ? std::string("cli") : it->second;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "squarelab: exact experiments on squares in progressions, sumset "
      "energy, congruence roots, circle lattice points, Sidon sets, square "
      "grids and additive triples"};
  app.require_subcommand(1);

  // Shared state filled by whichever subcommand runs.
  OutputOptions opts;
  std::function<ExperimentReport()> action;
  bool hard_failure = false;
  std::string failure_message;

  // ap-count
  {
    auto* cmd = app.add_subcommand("ap-count",
                                   "Square hits of the progression a + ib");
    auto a = std::make_shared<std::string>("49");
    auto b = std::make_shared<std::string>("24");
    auto k = std::make_shared<std::uint64_t>(100);
    cmd->add_option("--a", *a, "First coefficient")->capture_default_str();
    cmd->add_option("--b", *b, "Step")->capture_default_str();
    cmd->add_option("--k", *k, "Number of terms")->capture_default_str();
    add_output_flags(cmd, opts);
    cmd->callback([&, a, b, k] {
      action = [=] { return run_ap_count(parse_int(*a), parse_int(*b), *k); };
    });
  }

  // sigma-search
  {
    auto* cmd = app.add_subcommand(
        "sigma-search", "Progression with the most square hits in a box");
    auto k = std::make_shared<std::uint64_t>(50);
    auto a_max = std::make_shared<std::uint64_t>(50);
    auto b_max = std::make_shared<std::uint64_t>(50);
    cmd->add_option("--k", *k, "Number of terms")->capture_default_str();
    cmd->add_option("--amax", *a_max, "Bound on a")->capture_default_str();
    cmd->add_option("--bmax", *b_max, "Bound on b")->capture_default_str();
    add_output_flags(cmd, opts);
    add_thread_flag(cmd, opts);
    cmd->callback([&, k, a_max, b_max] {
      action = [=, &opts] {
        return run_sigma_search(*k, *a_max, *b_max, opts.threads);
      };
    });
  }

  // fermat-check
  {
    auto* cmd = app.add_subcommand(
        "fermat-check", "Four squares in arithmetic progression (none exist)");
    auto limit = std::make_shared<std::uint64_t>(100000);
    cmd->add_option("--limit", *limit, "Largest square considered")
        ->capture_default_str();
    add_output_flags(cmd, opts);
    cmd->callback([&, limit] {
      action = [=, &hard_failure, &failure_message] {
        bool found = false;
        ExperimentReport report = run_fermat_check(*limit, found);
        if (found) {
          hard_failure = true;
          failure_message =
              "ap-squares: four-term square progression witness found";
        }
        return report;
      };
    });
  }

  // energy
  {
    auto* cmd = app.add_subcommand(
        "energy", "Additive energy of a square set under + and -");
    auto n = std::make_shared<std::uint64_t>(50);
    auto set_text = std::make_shared<std::string>();
    cmd->add_option("--squares", *n, "Use the first n squares")
        ->capture_default_str();
    cmd->add_option("--set", *set_text,
                    "Explicit comma-separated ground set (overrides --squares)");
    add_output_flags(cmd, opts);
    cmd->callback([&, n, set_text] {
      action = [=] {
        if (!set_text->empty()) {
          return run_energy(parse_int_list(*set_text), *set_text);
        }
        return run_energy(square_ground_set(*n),
                          "squares 1.." + std::to_string(*n));
      };
    });
  }

  // cubes
  {
    auto* cmd = app.add_subcommand(
        "cubes", "Affine cubes whose subset sums are all squares");
    auto limit = std::make_shared<std::uint64_t>(1000);
    auto dim = std::make_shared<unsigned>(2);
    cmd->add_option("--limit", *limit, "Largest square considered")
        ->capture_default_str();
    cmd->add_option("--dim", *dim, "Cube dimension")->capture_default_str();
    add_output_flags(cmd, opts);
    cmd->callback([&, limit, dim] {
      action = [=] { return run_cubes(*limit, *dim); };
    });
  }

  // norms
  {
    auto* cmd = app.add_subcommand(
        "norms", "Exact fourth-power norms of square-frequency polynomials");
    auto xs = std::make_shared<std::vector<std::uint64_t>>(
        std::vector<std::uint64_t>{250, 500, 1000, 2000});
    auto fejer_order = std::make_shared<std::uint64_t>(0);
    auto grid = std::make_shared<std::uint64_t>(100000);
    cmd->add_option("--x", *xs, "Frequency cutoffs (repeatable)")
        ->capture_default_str();
    cmd->add_option("--fejer", *fejer_order,
                    "Instead: integrate the nonnegative kernel of this order");
    cmd->add_option("--grid", *grid, "Grid points for --fejer")
        ->capture_default_str();
    add_output_flags(cmd, opts);
    cmd->callback([&, xs, fejer_order, grid] {
      action = [=] {
        if (*fejer_order > 0) return run_fejer(*fejer_order, *grid);
        return run_norms(*xs);
      };
    });
  }

  // window-energy
  {
    auto* cmd = app.add_subcommand(
        "window-energy", "Energy of square windows N <= k <= N+Delta");
    auto ns = std::make_shared<std::vector<std::uint64_t>>(
        std::vector<std::uint64_t>{1000, 10000});
    auto deltas = std::make_shared<std::vector<std::uint64_t>>(
        std::vector<std::uint64_t>{32, 100, 316});
    cmd->add_option("--n", *ns, "Window starts (repeatable)")
        ->capture_default_str();
    cmd->add_option("--delta", *deltas, "Window widths (repeatable)")
        ->capture_default_str();
    add_output_flags(cmd, opts);
    cmd->callback([&, ns, deltas] {
      action = [=] { return run_window_energy(*ns, *deltas); };
    });
  }

  // roots
  {
    auto* cmd = app.add_subcommand(
        "roots", "Solution set of a quadratic congruence");
    auto kind = std::make_shared<std::string>("x2a");
    auto a = std::make_shared<std::string>("1");
    auto modulus = std::make_shared<std::string>("105");
    cmd->add_option("--kind", *kind, "x2a for x^2=a, xx1 for x(x-1)=0")
        ->check(CLI::IsMember({"x2a", "xx1"}))
        ->capture_default_str();
    cmd->add_option("--a", *a, "Right-hand side for x2a")
        ->capture_default_str();
    cmd->add_option("--mod", *modulus, "Modulus")->capture_default_str();
    add_output_flags(cmd, opts);
    cmd->callback([&, kind, a, modulus] {
      action = [=] {
        return run_roots(*kind, parse_int(*a), parse_int(*modulus));
      };
    });
  }

  // cluster-construct
  {
    auto* cmd = app.add_subcommand(
        "cluster-construct",
        "Squarefree modulus whose congruence roots cluster");
    auto k = std::make_shared<unsigned>(3);
    auto floor_text = std::make_shared<std::string>("2");
    auto variant = std::make_shared<std::string>("edge");
    auto epsilon = std::make_shared<double>(0.5);
    cmd->add_option("--k", *k, "Number of primes")->capture_default_str();
    cmd->add_option("--prime-floor", *floor_text, "Primes stay above this")
        ->capture_default_str();
    cmd->add_option("--variant", *variant, "edge or origin")
        ->check(CLI::IsMember({"edge", "origin"}))
        ->capture_default_str();
    cmd->add_option("--epsilon", *epsilon, "Origin-variant margin")
        ->capture_default_str();
    add_output_flags(cmd, opts);
    cmd->callback([&, k, floor_text, variant, epsilon] {
      action = [=] {
        return run_cluster_construct(*k, parse_int(*floor_text), *variant,
                                     *epsilon);
      };
    });
  }

  // shortint-scan
  {
    auto* cmd = app.add_subcommand(
        "shortint-scan",
        "Exhaustive span bounds for root clusters of x^2 = a");
    auto b_max = std::make_shared<std::uint64_t>(2000);
    auto k = std::make_shared<unsigned>(3);
    cmd->add_option("--bmax", *b_max, "Largest modulus")->capture_default_str();
    cmd->add_option("--k", *k, "Cluster size")->capture_default_str();
    add_output_flags(cmd, opts);
    add_thread_flag(cmd, opts);
    cmd->callback([&, b_max, k] {
      action = [=, &opts, &hard_failure, &failure_message] {
        bool violated = false;
        ExperimentReport report =
            run_shortint_scan(*b_max, *k, opts.threads, violated);
        if (violated) {
          hard_failure = true;
          failure_message =
              "congruence-roots: span or certificate violation found";
        }
        return report;
      };
    });
  }

  // circle
  {
    auto* cmd = app.add_subcommand(
        "circle", "All integer points on x^2 + y^2 = M");
    auto m = std::make_shared<std::string>("1105");
    cmd->add_option("--m", *m, "Circle parameter M")->capture_default_str();
    add_output_flags(cmd, opts);
    cmd->callback([&, m] {
      action = [=] { return run_circle(parse_int(*m)); };
    });
  }

  // arc-verify
  {
    auto* cmd = app.add_subcommand(
        "arc-verify", "Short arcs hold at most k lattice points");
    auto m_max = std::make_shared<std::uint64_t>(10000);
    auto k = std::make_shared<unsigned>(2);
    cmd->add_option("--mmax", *m_max, "Largest circle checked")
        ->capture_default_str();
    cmd->add_option("--k", *k, "Arc capacity (2..5)")->capture_default_str();
    add_output_flags(cmd, opts);
    add_thread_flag(cmd, opts);
    cmd->callback([&, m_max, k] {
      action = [=, &opts, &hard_failure, &failure_message] {
        bool violated = false;
        ExperimentReport report =
            run_arc_verify(*m_max, *k, opts.threads, violated);
        if (violated) {
          hard_failure = true;
          failure_message = "lattice-circle: arc capacity violation found";
        }
        return report;
      };
    });
  }

  // families
  {
    auto* cmd = app.add_subcommand(
        "families", "Explicit tight point families on circles");
    auto family = std::make_shared<std::string>("pair");
    auto n = std::make_shared<std::uint64_t>(5);
    cmd->add_option("--family", *family, "pair, triple or quad-fibonacci")
        ->check(CLI::IsMember({"pair", "triple", "quad-fibonacci"}))
        ->capture_default_str();
    cmd->add_option("--n", *n, "Family index")->capture_default_str();
    add_output_flags(cmd, opts);
    cmd->callback([&, family, n] {
      action = [=] { return run_families(*family, *n); };
    });
  }

  // sidon-greedy
  {
    auto* cmd = app.add_subcommand(
        "sidon-greedy", "Greedy pair-sum-free subset of the squares");
    auto limit = std::make_shared<std::uint64_t>(50);
    cmd->add_option("--limit", *limit, "Largest square considered")
        ->capture_default_str();
    add_output_flags(cmd, opts);
    cmd->callback([&, limit] {
      action = [=] { return run_sidon_greedy(*limit); };
    });
  }

  // sidon-random
  {
    auto* cmd = app.add_subcommand(
        "sidon-random", "Random sparse square set with collision repair");
    auto g = std::make_shared<unsigned>(1);
    auto beta = std::make_shared<double>(0.0);
    auto x_max = std::make_shared<std::uint64_t>(1000000);
    auto seed = std::make_shared<std::uint64_t>(1);
    cmd->add_option("--g", *g, "Collision budget per value")
        ->capture_default_str();
    cmd->add_option("--beta", *beta, "Log exponent (0 = recommended value)")
        ->capture_default_str();
    cmd->add_option("--xmax", *x_max, "Largest root sampled")
        ->capture_default_str();
    cmd->add_option("--seed", *seed, "Draw seed")->capture_default_str();
    add_output_flags(cmd, opts);
    add_thread_flag(cmd, opts);
    cmd->callback([&, g, beta, x_max, seed] {
      action = [=] { return run_sidon_random(*g, *beta, *x_max, *seed); };
    });
  }

  // gap3
  {
    auto* cmd = app.add_subcommand(
        "gap3", "Three rational squares in arithmetic progression");
    auto r = std::make_shared<std::string>("1");
    auto t = std::make_shared<std::string>("2");
    cmd->add_option("--r", *r, "Scale parameter (rational)")
        ->capture_default_str();
    cmd->add_option("--t", *t, "Shape parameter (rational)")
        ->capture_default_str();
    add_output_flags(cmd, opts);
    cmd->callback([&, r, t] {
      action = [=] { return run_gap3(parse_rat(*r), parse_rat(*t)); };
    });
  }

  // gap2x3
  {
    auto* cmd = app.add_subcommand(
        "gap2x3", "2x3 grid of rational squares from a parameter doubling");
    auto r = std::make_shared<std::string>("1");
    auto t = std::make_shared<std::string>("2");
    cmd->add_option("--r", *r, "Scale parameter (rational)")
        ->capture_default_str();
    cmd->add_option("--t", *t, "Shape parameter (rational)")
        ->capture_default_str();
    add_output_flags(cmd, opts);
    cmd->callback([&, r, t] {
      action = [=] { return run_gap2x3(parse_rat(*r), parse_rat(*t)); };
    });
  }

  // magic
  {
    auto* cmd = app.add_subcommand(
        "magic", "Rearrange a 3x3 grid into constant line sums");
    auto x0 = std::make_shared<std::string>("0");
    auto v = std::make_shared<std::string>("1");
    auto delta = std::make_shared<std::string>("3");
    cmd->add_option("--x0", *x0, "Grid corner")->capture_default_str();
    cmd->add_option("--v", *v, "Row step")->capture_default_str();
    cmd->add_option("--delta", *delta, "Column step")->capture_default_str();
    add_output_flags(cmd, opts);
    cmd->callback([&, x0, v, delta] {
      action = [=] {
        return run_magic(parse_rat(*x0), parse_rat(*v), parse_rat(*delta));
      };
    });
  }

  // gap3x3-search
  {
    auto* cmd = app.add_subcommand(
        "gap3x3-search", "Search for a 3x3 grid of integer squares");
    auto height = std::make_shared<std::uint64_t>(1000);
    cmd->add_option("--height", *height, "Bound on the square roots")
        ->capture_default_str();
    add_output_flags(cmd, opts);
    cmd->callback([&, height] {
      action = [=] { return run_gap3x3_search(*height); };
    });
  }

  // abc-build
  {
    auto* cmd = app.add_subcommand(
        "abc-build", "Additive triple from five squares in a progression");
    auto a_text = std::make_shared<std::string>("1");
    auto b_text = std::make_shared<std::string>("24");
    auto t_text = std::make_shared<std::string>("0,1,2,5,7");
    auto variant = std::make_shared<std::string>("direct");
    auto budget = std::make_shared<long>(4'000'000);
    cmd->add_option("--A", *a_text, "Progression base")->capture_default_str();
    cmd->add_option("--B", *b_text, "Progression step")->capture_default_str();
    cmd->add_option("--t", *t_text, "Five comma-separated node offsets")
        ->capture_default_str();
    cmd->add_option("--variant", *variant, "direct or reciprocal")
        ->check(CLI::IsMember({"direct", "reciprocal"}))
        ->capture_default_str();
    cmd->add_option("--budget", *budget, "Size budget in bits")
        ->capture_default_str();
    add_output_flags(cmd, opts);
    cmd->callback([&, a_text, b_text, t_text, variant, budget] {
      action = [=] {
        return run_abc_build(parse_int(*a_text), parse_int(*b_text),
                             parse_int_list(*t_text), *variant, *budget);
      };
    });
  }

  // abc-quality
  {
    auto* cmd = app.add_subcommand(
        "abc-quality", "Quality of a coprime additive pair");
    auto a_text = std::make_shared<std::string>("1");
    auto b_text = std::make_shared<std::string>("8");
    cmd->add_option("--a", *a_text, "First part")->capture_default_str();
    cmd->add_option("--b", *b_text, "Second part")->capture_default_str();
    add_output_flags(cmd, opts);
    cmd->callback([&, a_text, b_text] {
      action = [=] {
        return run_abc_quality(parse_int(*a_text), parse_int(*b_text));
      };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& help) {
    return app.exit(help);  // prints help, exit 0
  } catch (const CLI::ParseError& error) {
    app.exit(error);  // prints the message
    return 2;
  }

  const std::string subcommand = app.get_subcommands().front()->get_name();
  try {
    auto started = std::chrono::steady_clock::now();
    ExperimentReport report = action();
    report.provenance.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                      started)
            .count();
    write_report(report, opts);
    if (hard_failure) {
      std::cerr << "error in " << failure_message << "\n";
      return 1;
    }
  } catch (const std::exception& error) {
    std::cerr << "error in " << module_name(subcommand) << ": "
              << error.what() << "\n";
    return 1;
  }
  return 0;
}
