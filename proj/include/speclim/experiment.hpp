#pragma once

// Convergence sweeps over hbar: build the system, compute its joint
// spectrum two ways, compare hulls with the classical region, and write
// CSV/SVG artifacts plus a summary.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

#include <boost/algorithm/string.hpp>
#include <boost/lexical_cast.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "speclim/btsphere.hpp"
#include "speclim/convexgeom.hpp"
#include "speclim/error.hpp"
#include "speclim/fit.hpp"
#include "speclim/io.hpp"
#include "speclim/jointspec.hpp"
#include "speclim/numrange.hpp"
#include "speclim/parallel.hpp"
#include "speclim/pdoradial.hpp"
#include "speclim/polynomial.hpp"

namespace speclim {

struct ExperimentConfig {
  std::string system;            // coupled | toric | rotational | numrange | axioms
  std::vector<double> hbar;      // strictly decreasing
  std::size_t n_dirs = 720;
  std::uint64_t seed = 1;
  double route_tol = 1e-7;       // relative to the family scale
  std::size_t threads = 1;
  std::string out_dir = "out";

  double a1 = 1.0;
  double a2 = 2.0;
  std::vector<std::vector<int>> weights{{1, 0}, {0, 1}};
  std::string potential = "r";
  double e_max = 2.0;
  double grid_R = 12.0;
  std::size_t grid_N = 2400;
  std::size_t samples = 2000;
  std::string f = "z";
  std::string g = "x";
  std::string f_pos = "1+z";

  bool is_toeplitz() const { return system != "rotational"; }

  /// Level m = 1/hbar for Berezin-Toeplitz systems.
  std::vector<int> levels() const {
    std::vector<int> out;
    for (double h : hbar) out.push_back(static_cast<int>(std::lround(1.0 / h)));
    return out;
  }

  void validate() const {
    static const std::vector<std::string> known{"coupled", "toric", "rotational", "numrange", "axioms"};
    if (std::find(known.begin(), known.end(), system) == known.end())
      throw DomainError("config: unknown system '" + system + "'");
    if (hbar.empty()) throw DomainError("config: empty hbar list");
    for (std::size_t i = 0; i < hbar.size(); ++i) {
      if (!(hbar[i] > 0.0)) throw DomainError("config: hbar values must be positive");
      if (i > 0 && !(hbar[i] < hbar[i - 1])) throw DomainError("config: hbar list must be strictly decreasing");
      if (is_toeplitz()) {
        const double m = 1.0 / hbar[i];
        if (std::abs(m - std::round(m)) > 1e-9 * m)
          throw DomainError("config: 1/hbar must be a positive integer for " + system + " (hbar = " +
                            fmt_num(hbar[i]) + ")");
      }
    }
    if (n_dirs < 3) throw DomainError("config: dirs must be at least 3");
    if (!(route_tol > 0.0)) throw DomainError("config: route_tol must be positive");
  }
};

namespace detail {

template <class T>
std::vector<T> parse_list(const std::string& text) {
  std::vector<std::string> parts;
  boost::split(parts, text, boost::is_any_of(", "), boost::token_compress_on);
  std::vector<T> out;
  for (auto& p : parts) {
    boost::trim(p);
    if (p.empty()) continue;
    try {
      out.push_back(boost::lexical_cast<T>(p));
    } catch (const boost::bad_lexical_cast&) {
      throw Error("config: malformed number '" + p + "'");
    }
  }
  return out;
}

// "1 0; 0 1" -> {{1, 0}, {0, 1}}
inline std::vector<std::vector<int>> parse_weights(const std::string& text) {
  std::vector<std::string> rows;
  boost::split(rows, text, boost::is_any_of(";"));
  std::vector<std::vector<int>> out;
  for (const auto& r : rows) {
    auto row = parse_list<int>(r);
    if (!row.empty()) out.push_back(std::move(row));
  }
  return out;
}

// Strict typed lookup: a present but malformed value is an error, not the default.
template <class T>
T get_value(const boost::property_tree::ptree& pt, const std::string& key, const T& fallback) {
  const auto raw = pt.get_optional<std::string>(key);
  if (!raw) return fallback;
  std::string text = *raw;
  boost::trim(text);
  try {
    if constexpr (std::is_unsigned_v<T>) {
      if (!text.empty() && text[0] == '-') throw boost::bad_lexical_cast();
    }
    return boost::lexical_cast<T>(text);
  } catch (const boost::bad_lexical_cast&) {
    throw Error("config: bad value '" + *raw + "' for " + key);
  }
}

}  // namespace detail

/// Reads an INI file: a [run] section with system, m or hbar, dirs, seed,
/// route_tol and threads, plus one section per system for its parameters.
inline ExperimentConfig load_config(const std::string& path) {
  boost::property_tree::ptree pt;
  try {
    boost::property_tree::ini_parser::read_ini(path, pt);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw Error("config: " + std::string(e.what()));
  }
  ExperimentConfig c;
  try {
    c.system = pt.get<std::string>("run.system", "");
    if (auto m = pt.get_optional<std::string>("run.m")) {
      for (int v : detail::parse_list<int>(*m)) {
        if (v < 1) throw DomainError("config: m values must be positive");
        c.hbar.push_back(1.0 / v);
      }
    }
    if (auto h = pt.get_optional<std::string>("run.hbar")) c.hbar = detail::parse_list<double>(*h);
    c.n_dirs = detail::get_value(pt, "run.dirs", c.n_dirs);
    c.seed = detail::get_value(pt, "run.seed", c.seed);
    c.route_tol = detail::get_value(pt, "run.route_tol", c.route_tol);
    c.threads = detail::get_value(pt, "run.threads", c.threads);
    c.out_dir = pt.get<std::string>("run.out", c.out_dir);

    c.a1 = detail::get_value(pt, "coupled.a1", c.a1);
    c.a2 = detail::get_value(pt, "coupled.a2", c.a2);
    if (auto w = pt.get_optional<std::string>("toric.weights")) c.weights = detail::parse_weights(*w);
    c.potential = pt.get<std::string>("rotational.potential", c.potential);
    c.e_max = detail::get_value(pt, "rotational.e_max", c.e_max);
    c.grid_R = detail::get_value(pt, "rotational.R", c.grid_R);
    c.grid_N = detail::get_value(pt, "rotational.N", c.grid_N);
    c.samples = detail::get_value(pt, "numrange.samples", c.samples);
    c.f = pt.get<std::string>("axioms.f", c.f);
    c.g = pt.get<std::string>("axioms.g", c.g);
    c.f_pos = pt.get<std::string>("axioms.f_pos", c.f_pos);
  } catch (const boost::property_tree::ptree_error& e) {
    throw Error("config: " + std::string(e.what()));
  }
  return c;
}

struct ConvergenceRow {
  double hbar = 0.0;
  double d_hausdorff = 0.0;        // hull(joint spectrum) vs classical region
  double support_gap = 0.0;        // sup |Phi_Sigma - Phi_S|
  double route_discrepancy = 0.0;  // sup |Phi_JointSpec - lambda_max|, or containment violation for numrange
  double scale = 1.0;
  std::size_t points = 0;
};

struct ConvergenceReport {
  std::string system;
  std::vector<ConvergenceRow> rows;
  std::vector<double> ratios;   // d(k+1) / d(k)
  bool route_ok = true;
  bool monotone = true;         // d_hausdorff strictly decreasing
  double decay_exponent = 0.0;  // slope of log d against log hbar

  bool passed() const { return route_ok && monotone; }
};

/// Artifacts of one hbar value.
struct HbarStage {
  ConvergenceRow row;
  std::string spectrum_csv;
  std::string support_csv;
  std::string region_csv;
  std::string svg;
};

inline std::string hbar_tag(double hbar) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", hbar);
  return buf;
}

namespace detail {

inline HbarStage finish_stage(double hbar, const SpectrumCloud& cloud, const SupportSamples& route1,
                              const SupportSamples& route2, const ClassicalRegion& region, double discrepancy,
                              double scale, const ConvexPolygon& hull, const std::string& columns) {
  const auto classical = region.sample(route1.directions);
  HbarStage s;
  s.row.hbar = hbar;
  s.row.d_hausdorff = hausdorff_convex(route1, classical);
  s.row.support_gap = hausdorff_convex(route2, classical);
  s.row.route_discrepancy = discrepancy;
  s.row.scale = scale;
  s.row.points = cloud.size();
  s.spectrum_csv = csv_spectrum(cloud);
  s.support_csv = csv_support(route1);
  s.region_csv = csv_boundary(region.boundary_samples(400), columns);
  s.svg = render_svg(cloud, hull, region, region.name + " hbar=" + hbar_tag(hbar));
  return s;
}

inline HbarStage run_commuting(double hbar, const CommutingFamily& fam, const ClassicalRegion& region,
                               const ExperimentConfig& c) {
  const auto dirs = unit_directions(fam.count(), c.n_dirs);
  const auto cloud = joint_spectrum(fam, JointSpectrumOptions{1e-9, c.seed, 1e-8, 1e-7});
  const auto route1 = sample_support(cloud, dirs);
  const auto route2 = hull_via_support(fam, dirs);
  const double disc = hausdorff_convex(route1, route2);
  return finish_stage(hbar, cloud, route1, route2, region, disc, fam.scale(), hull2d(cloud),
                      boost::algorithm::join(fam.names(), ","));
}

inline HbarStage run_stage(double hbar, const ExperimentConfig& c) {
  const int m = static_cast<int>(std::lround(1.0 / hbar));
  if (c.system == "coupled") {
    return run_commuting(hbar, coupled_momenta(c.a1, c.a2, m), classical_region_coupled(c.a1, c.a2), c);
  }
  if (c.system == "toric") {
    if (c.weights.size() != 2) throw DomainError("toric: the runner handles two momentum components");
    auto sys = toric_product_family(m, c.weights);
    return run_commuting(hbar, sys.family, sys.region, c);
  }
  if (c.system == "rotational") {
    const auto pot = RadialPotential::by_name(c.potential);
    const auto cloud = joint_spectrum_rot(pot, hbar, c.e_max, RadialGrid{c.grid_R, c.grid_N});
    if (cloud.empty()) throw DomainError("rotational: no eigenvalues below e_max");
    const auto dirs = unit_directions(2, c.n_dirs);
    const auto route1 = sample_support(cloud, dirs);
    // sectors are diagonal in F, so lambda_max of a combination over the
    // window is the maximum over the same points: the routes coincide
    return finish_stage(hbar, cloud, route1, route1, classical_region_rot(pot, c.e_max), 0.0, c.e_max,
                        hull2d(cloud), "H,F");
  }
  if (c.system == "numrange") {
    const std::vector<SymmetricMatrix> fam{toeplitz_coordinate(m, Axis::x).re, toeplitz_coordinate(m, Axis::z).re};
    const auto dirs = unit_directions(2, c.n_dirs);
    const auto cloud = sample_numerical_range(fam, c.samples, c.seed);
    const auto sigma = sigma_region(fam, dirs);
    const double violation = std::max(0.0, containment_violation(cloud, sigma));
    const auto region = unit_disk_region();
    // the sampled range underestimates Sigma; distances use Sigma itself
    return finish_stage(hbar, cloud, sigma, sigma, region, violation, 1.0, reconstruct_from_support(sigma), "x,z");
  }
  throw DomainError("run_convergence: system '" + c.system + "' has no convergence sweep");
}

}  // namespace detail

/// Runs every hbar stage (in parallel across hbar), then assembles the
/// report in hbar order. Writes artifacts when out_dir is nonempty.
inline ConvergenceReport run_convergence(const ExperimentConfig& c, bool write = true) {
  c.validate();
  std::vector<std::optional<HbarStage>> stages(c.hbar.size());
  parallel_for(c.hbar.size(), c.threads, [&](std::size_t i) {
    try {
      stages[i] = detail::run_stage(c.hbar[i], c);
    } catch (const std::exception& e) {
      throw Error("hbar=" + hbar_tag(c.hbar[i]) + " stage " + c.system + ": " + e.what());
    }
  });

  ConvergenceReport rep;
  rep.system = c.system;
  for (auto& s : stages) rep.rows.push_back(s->row);
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    const auto& r = rep.rows[i];
    if (r.route_discrepancy > c.route_tol * r.scale) rep.route_ok = false;
    if (i > 0) {
      rep.ratios.push_back(r.d_hausdorff / rep.rows[i - 1].d_hausdorff);
      if (!(r.d_hausdorff < rep.rows[i - 1].d_hausdorff)) rep.monotone = false;
    }
  }
  if (rep.rows.size() >= 2) {
    std::vector<double> h, d;
    for (const auto& r : rep.rows) {
      h.push_back(r.hbar);
      d.push_back(r.d_hausdorff);
    }
    if (std::all_of(d.begin(), d.end(), [](double v) { return v > 0.0; })) rep.decay_exponent = loglog_slope(h, d);
  }

  if (write && !c.out_dir.empty()) {
    std::filesystem::create_directories(c.out_dir);
    const std::filesystem::path out(c.out_dir);
    std::ostringstream csv;
    csv << kCsvHeader << "\nhbar,d_hausdorff,support_gap,route_discrepancy,points\n";
    for (const auto& r : rep.rows)
      csv << fmt_num(r.hbar) << ',' << fmt_num(r.d_hausdorff) << ',' << fmt_num(r.support_gap) << ','
          << fmt_num(r.route_discrepancy) << ',' << r.points << '\n';
    write_file((out / "report.csv").string(), csv.str());
    write_file((out / "region.csv").string(), stages.front()->region_csv);  // the same at every hbar
    for (const auto& s : stages) {
      const std::string tag = hbar_tag(s->row.hbar);
      write_file((out / ("spectrum_" + tag + ".csv")).string(), s->spectrum_csv);
      write_file((out / ("support_" + tag + ".csv")).string(), s->support_csv);
      write_file((out / ("figure_" + tag + ".svg")).string(), s->svg);
    }
    std::ostringstream sum;
    sum << "system " << rep.system << '\n';
    sum << "directions " << c.n_dirs << '\n';
    sum << "seed " << c.seed << '\n';
    sum << "ratios";
    for (double q : rep.ratios) sum << ' ' << fmt_num(q);
    sum << '\n';
    sum << "decay_exponent " << fmt_num(rep.decay_exponent) << '\n';
    sum << "route_ok " << (rep.route_ok ? "yes" : "no") << '\n';
    sum << "monotone " << (rep.monotone ? "yes" : "no") << '\n';
    sum << "status " << (rep.passed() ? "PASSED" : "FAILED") << '\n';
    write_file((out / "summary.txt").string(), sum.str());
  }
  return rep;
}

/// Axiom battery over m = 1/hbar; flags a failure if T(1) differs from the
/// identity or the product-formula exponent falls below 1/2.
struct AxiomRun {
  AxiomReport report;
  bool passed = false;
};

inline AxiomRun run_axioms(const ExperimentConfig& c, bool write = true) {
  c.validate();
  AxiomRun run;
  run.report = axiom_battery(c.levels(), parse_polynomial(c.f), parse_polynomial(c.g), parse_polynomial(c.f_pos));
  bool q1 = true;
  for (const auto& r : run.report.rows) q1 = q1 && r.normalization == 0.0;
  run.passed = q1 && run.report.product_exponent >= 0.5;

  if (write && !c.out_dir.empty()) {
    std::filesystem::create_directories(c.out_dir);
    const std::filesystem::path out(c.out_dir);
    std::ostringstream csv;
    csv << kCsvHeader << "\nm,normalization,positivity_min,product_error,symbol_norm,symbol_sup,norm_gap\n";
    for (const auto& r : run.report.rows)
      csv << r.m << ',' << fmt_num(r.normalization) << ',' << fmt_num(r.positivity_min) << ','
          << fmt_num(r.product_error) << ',' << fmt_num(r.symbol_norm) << ',' << fmt_num(r.symbol_sup) << ','
          << fmt_num(r.norm_gap) << '\n';
    write_file((out / "report.csv").string(), csv.str());
    std::ostringstream sum;
    sum << "system axioms\n";
    sum << "f " << run.report.f.to_string() << '\n';
    sum << "g " << run.report.g.to_string() << '\n';
    sum << "f_pos " << run.report.f_pos.to_string() << '\n';
    sum << "product_exponent " << fmt_num(run.report.product_exponent) << '\n';
    sum << "norm_exponent " << fmt_num(run.report.norm_exponent) << '\n';
    sum << "status " << (run.passed ? "PASSED" : "FAILED") << '\n';
    write_file((out / "summary.txt").string(), sum.str());
  }
  return run;
}

}  // namespace speclim
