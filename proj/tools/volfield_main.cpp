// volfield: volumes, minimality residuals, pole indices, and minimal-volume
// searches for unit vector fields on the twice-punctured round 2-sphere.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "volfield/serialize.hpp"

namespace {

using namespace volfield;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitDomain = 2;
constexpr int kExitConvergence = 3;
constexpr int kExitUsage = 64;

struct FieldOptions {
  std::string family = "meridian";
  int k = 0;
  double phi0 = 0.0;
  std::string fourier;    // "c1,s1,c2,s2,..."
  std::string t_dir;      // "a,b"
  std::string spec_file;  // volfield-spec/1 JSON
  std::string grid_file;  // VFGRID01 binary
};

std::vector<double> parse_csv_doubles(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t pos = 0;
    const double v = std::stod(item, &pos);
    if (pos != item.size()) throw CLI::ValidationError("bad number: " + item);
    out.push_back(v);
  }
  return out;
}

ZetaSpec zeta_from_options(const FieldOptions& opt) {
  ZetaSpec z;
  z.winding = opt.k;
  z.phi0 = opt.phi0;
  const std::vector<double> coeffs = parse_csv_doubles(opt.fourier);
  if (coeffs.size() % 2 != 0)
    throw CLI::ValidationError("--fourier expects c1,s1,c2,s2,... pairs");
  for (std::size_t n = 0; n + 2 <= coeffs.size(); n += 2)
    z.fourier.emplace_back(coeffs[n], coeffs[n + 1]);
  return z;
}

AngleField field_from_options(const FieldOptions& opt) {
  const bool inline_flags = opt.spec_file.empty() && opt.grid_file.empty();
  if (!opt.spec_file.empty() && !opt.grid_file.empty())
    throw CLI::ValidationError("--spec-file and --grid-file are mutually exclusive");
  if (!opt.spec_file.empty()) {
    std::ifstream in(opt.spec_file);
    if (!in) throw DomainError("cannot open " + opt.spec_file);
    json doc;
    in >> doc;
    return field_from_json(doc);
  }
  if (!opt.grid_file.empty()) return AngleField::grid(grid_from_binary_file(opt.grid_file));

  (void)inline_flags;
  if (opt.family == "meridian") return AngleField::meridian(zeta_from_options(opt));
  if (opt.family == "latitude") {
    LatitudeSpec spec;
    spec.phi0 = opt.phi0;
    return AngleField::latitude(spec);
  }
  if (opt.family == "ttype") {
    TTypeSpec spec;
    const std::vector<double> t = parse_csv_doubles(opt.t_dir.empty() ? "1,0" : opt.t_dir);
    if (t.size() != 2) throw CLI::ValidationError("--T expects a,b");
    spec.t_theta = t[0];
    spec.t_phi = t[1];
    spec.initial = zeta_from_options(opt);
    return AngleField::ttype(spec);
  }
  if (opt.family == "grid")
    throw CLI::ValidationError("grid fields load from --grid-file");
  throw CLI::ValidationError("unknown family: " + opt.family);
}

void add_field_options(CLI::App* cmd, FieldOptions& opt) {
  cmd->add_option("--family", opt.family, "Field family: meridian|latitude|ttype|grid")
      ->default_val("meridian");
  cmd->add_option("-k,--winding", opt.k, "Winding number");
  cmd->add_option("--phi0", opt.phi0, "Phase offset (radians)");
  cmd->add_option("--fourier", opt.fourier, "Zeta perturbation pairs c1,s1,c2,s2,...");
  cmd->add_option("--T", opt.t_dir, "T-type direction a,b on the unit circle");
  cmd->add_option("--spec-file", opt.spec_file, "Load field from volfield-spec/1 JSON");
  cmd->add_option("--grid-file", opt.grid_file, "Load field from VFGRID01 binary");
}

void write_output(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw ConvergenceError("cannot open " + out_path + " for writing");
  out << text;
}

std::string format_table_value(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

int run(int argc, char** argv) {
  CLI::App app{"unit vector fields on the twice-punctured sphere: volumes, "
               "residuals, indices, minimization"};
  app.require_subcommand(1);

  // ---- volume ----
  auto* cmd_volume = app.add_subcommand("volume", "Volume functional over a region");
  FieldOptions vol_field;
  add_field_options(cmd_volume, vol_field);
  std::string vol_region;
  bool vol_omega = false;
  double vol_radius = 1.0;
  int vol_panels = 0;
  std::string vol_format = "json", vol_out;
  cmd_volume->add_option("--region", vol_region, "theta1,theta2,phi1,phi2 (default full D)");
  cmd_volume->add_flag("--omega", vol_omega, "Integrate over the Omega comparison region");
  cmd_volume->add_option("--radius", vol_radius, "Sphere radius")->default_val(1.0);
  cmd_volume->add_option("--panels", vol_panels, "Quadrature panels per axis");
  cmd_volume->add_option("--format", vol_format, "json|table")->default_val("json");
  cmd_volume->add_option("--out", vol_out, "Output path (default stdout)");

  // ---- residuals ----
  auto* cmd_res = app.add_subcommand("residuals", "CR / Euler-Lagrange / real-part residual grid");
  FieldOptions res_field;
  add_field_options(cmd_res, res_field);
  double res_radius = 1.0, res_margin = kGridMargin, res_step = 1e-5;
  int res_n = 101;
  std::string res_format = "json", res_out;
  cmd_res->add_option("--radius", res_radius)->default_val(1.0);
  cmd_res->add_option("--grid-n", res_n, "Grid nodes per axis")->default_val(101);
  cmd_res->add_option("--margin", res_margin, "Interior theta margin")->default_val(kGridMargin);
  cmd_res->add_option("--fd-step", res_step, "Finite-difference step")->default_val(1e-5);
  cmd_res->add_option("--format", res_format, "json|csv")->default_val("json");
  cmd_res->add_option("--out", res_out, "Output path (default stdout)");

  // ---- index ----
  auto* cmd_index = app.add_subcommand("index", "Pole indices and Euler sum");
  FieldOptions idx_field;
  add_field_options(cmd_index, idx_field);
  int idx_samples = 720;
  std::string idx_convention = "standard", idx_format = "json", idx_out;
  cmd_index->add_option("--samples", idx_samples, "Angle samples per circle")->default_val(720);
  cmd_index->add_option("--convention", idx_convention, "standard|flipped")->default_val("standard");
  cmd_index->add_option("--format", idx_format, "json|table")->default_val("json");
  cmd_index->add_option("--out", idx_out, "Output path (default stdout)");

  // ---- compare-region ----
  auto* cmd_cmp = app.add_subcommand(
      "compare-region", "Latitude-field volume vs Euclidean area on Omega");
  bool cmp_omega = false;
  std::string cmp_out;
  cmd_cmp->add_flag("--omega", cmp_omega, "Use the Omega region (required)");
  cmd_cmp->add_option("--out", cmp_out, "Output path (default stdout)");

  // ---- minimize ----
  auto* cmd_min = app.add_subcommand("minimize", "Search for minimal volume at fixed winding");
  std::string min_mode = "family";
  int min_k = 0, min_modes = 6, min_iters = 0;
  std::uint64_t min_seed = 2024;
  bool min_random = false;
  std::string min_grid = "64x64", min_out, min_trace_out;
  cmd_min->add_option("--mode", min_mode, "family|grid")->default_val("family");
  cmd_min->add_option("-k,--winding", min_k, "Winding number");
  cmd_min->add_option("--fourier-n", min_modes, "Fourier truncation (family mode)")->default_val(6);
  cmd_min->add_option("--iters", min_iters, "Iteration / evaluation budget");
  cmd_min->add_option("--seed", min_seed, "Random seed")->default_val(2024);
  cmd_min->add_flag("--random-start", min_random, "Randomize the start point");
  cmd_min->add_option("--grid", min_grid, "Grid size NxM (grid mode)")->default_val("64x64");
  cmd_min->add_option("--out", min_out,
                      "Result field path (spec JSON in family mode, VFGRID01 in grid mode)");
  cmd_min->add_option("--trace-out", min_trace_out, "Objective trace CSV path");

  // ---- field-sample ----
  auto* cmd_sample = app.add_subcommand("field-sample", "Sample (a, b) on a grid for plotting");
  FieldOptions sample_field;
  add_field_options(cmd_sample, sample_field);
  std::string sample_grid = "24x48", sample_out;
  cmd_sample->add_option("--grid", sample_grid, "Sample grid NxM")->default_val("24x48");
  cmd_sample->add_option("--out", sample_out, "Output path (default stdout)");

  // ---- sweep ----
  auto* cmd_sweep = app.add_subcommand("sweep", "Meridian volume and bounds table over k");
  int sweep_kmin = 0, sweep_kmax = 10;
  std::string sweep_out;
  cmd_sweep->add_option("--kmin", sweep_kmin)->default_val(0);
  cmd_sweep->add_option("--kmax", sweep_kmax)->default_val(10);
  cmd_sweep->add_option("--out", sweep_out, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // prints help, exits 0
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the parse error
    return kExitUsage;
  }

  if (cmd_volume->parsed()) {
    const AngleField field = field_from_options(vol_field);
    DomainRegion region = DomainRegion::full();
    if (vol_omega) {
      region = omega_region();
    } else if (!vol_region.empty()) {
      const std::vector<double> r = parse_csv_doubles(vol_region);
      if (r.size() != 4)
        throw CLI::ValidationError("--region expects theta1,theta2,phi1,phi2");
      region = DomainRegion::rectangle(r[0], r[1], r[2], r[3]);
    }
    QuadratureSpec spec;
    if (field.family() == FieldFamily::ttype) {
      spec.panels_theta = spec.panels_phi = 32;  // covariant-derivative integrand
      spec.tolerance = 1e-6;
    } else if (field.family() == FieldFamily::grid) {
      // a bilinear-interpolated angle grid is only piecewise smooth, so the
      // refinement check has to allow its own discretization error
      spec.panels_theta = spec.panels_phi = 32;
      spec.tolerance = 1e-3;
    }
    if (vol_panels > 0) spec.panels_theta = spec.panels_phi = vol_panels;
    const VolumeResult result = volume(field, region, spec, vol_radius);

    json doc = volume_to_json(result);
    if (field.family() == FieldFamily::meridian && vol_radius == 1.0) {
      const int k = field.as_meridian()->winding;
      const double area = region.euclidean_area(spec);
      json bounds;
      if (k >= 1) {
        bounds["lower_thm"] = round_sig((k - 1) * area, 12);
        bounds["upper_thm"] = round_sig((k + 1) * area, 12);
      }
      bounds["bcj"] = round_sig(bcj_lower_bound(1 + k, std::abs(1 - k)), 12);
      doc["bounds"] = bounds;
    }
    if (vol_format == "table") {
      std::string text = "value " + format_table_value(result.value) + "\nerror " +
                         format_table_value(result.error_estimate) + "\n";
      write_output(vol_out, text);
    } else {
      write_output(vol_out, doc.dump(2) + "\n");
    }
    return kExitOk;
  }

  if (cmd_res->parsed()) {
    const AngleField field = field_from_options(res_field);
    ResidualGridSpec grid;
    grid.n_theta = grid.n_phi = res_n;
    grid.theta_margin = res_margin;
    FdConfig fd;
    fd.step = res_step;
    const ResidualReport report = residual_sweep(field, res_radius, grid, fd);
    if (res_format == "csv") {
      std::ostringstream out;
      residuals_to_csv(report, out);
      write_output(res_out, out.str());
    } else {
      write_output(res_out, residuals_to_json(report).dump(2) + "\n");
    }
    return kExitOk;
  }

  if (cmd_index->parsed()) {
    const AngleField field = field_from_options(idx_field);
    WindingOptions opt;
    opt.samples = idx_samples;
    const IndexConvention convention = idx_convention == "flipped"
                                           ? IndexConvention::flipped
                                           : IndexConvention::standard;
    const IndexReport report = index_at_poles(field, convention, opt);
    if (idx_format == "table") {
      std::string text = "k " + std::to_string(field.winding().value_or(0)) + " N " +
                         std::to_string(report.index_north) + " S " +
                         std::to_string(report.index_south) + " sum " +
                         std::to_string(report.euler_sum) + "\n";
      write_output(idx_out, text);
    } else {
      write_output(idx_out, index_to_json(report).dump(2) + "\n");
    }
    return kExitOk;
  }

  if (cmd_cmp->parsed()) {
    if (!cmp_omega) throw CLI::ValidationError("compare-region requires --omega");
    const OmegaComparison cmp = omega_compare();
    json doc = omega_to_json(cmp);
    doc["theta0"] = round_sig(theta0_solve(), 12);
    write_output(cmp_out, doc.dump(2) + "\n");
    return kExitOk;
  }

  if (cmd_min->parsed()) {
    json doc;
    OptimizationTrace trace;
    bool converged = false;
    if (min_mode == "grid") {
      int nt = 64, np = 64;
      if (std::sscanf(min_grid.c_str(), "%dx%d", &nt, &np) != 2)
        throw CLI::ValidationError("--grid expects NxM");
      GridMinimizeConfig cfg;
      cfg.n_theta = nt;
      cfg.n_phi = np;
      cfg.seed = min_seed;
      if (min_iters > 0) cfg.max_iterations = min_iters;
      const GridMinimizeResult result = minimize_grid(min_k, cfg);
      converged = result.converged;
      trace = result.trace;
      doc["mode"] = "grid";
      doc["k"] = min_k;
      doc["objective"] = round_sig(result.objective, 12);
      doc["full_estimate"] = round_sig(result.full_estimate, 12);
      doc["iterations"] = result.trace.iterations;
      doc["converged"] = result.converged;
      if (!min_out.empty()) grid_to_binary_file(result.field, min_out);
    } else if (min_mode == "family") {
      FamilyMinimizeConfig cfg;
      cfg.fourier_modes = min_modes;
      cfg.seed = min_seed;
      cfg.random_start = min_random;
      if (min_iters > 0) cfg.max_evaluations = min_iters;
      const FamilyMinimizeResult result = minimize_in_family(min_k, cfg);
      converged = result.converged;
      trace = result.trace;
      doc["mode"] = "family";
      doc["k"] = min_k;
      doc["volume"] = round_sig(result.volume, 12);
      doc["perturbation_norm"] = round_sig(result.best.perturbation_norm(), 6);
      doc["iterations"] = result.trace.iterations;
      doc["converged"] = result.converged;
      if (!min_out.empty()) {
        std::ofstream out(min_out);
        out << field_to_json(AngleField::meridian(result.best)).dump(2) << "\n";
      }
    } else {
      throw CLI::ValidationError("--mode expects family|grid");
    }
    if (!min_trace_out.empty()) {
      std::ofstream out(min_trace_out);
      trace_to_csv(trace, out);
    }
    std::cout << doc.dump(2) << "\n";
    return converged ? kExitOk : kExitConvergence;
  }

  if (cmd_sample->parsed()) {
    const AngleField field = field_from_options(sample_field);
    int nt = 24, np = 48;
    if (std::sscanf(sample_grid.c_str(), "%dx%d", &nt, &np) != 2 || nt < 1 || np < 1)
      throw CLI::ValidationError("--grid expects NxM");
    std::ostringstream out;
    out << "theta,phi,a,b\n";
    char line[160];
    for (int i = 0; i < nt; ++i) {
      const double theta = (i + 0.5) * kPi / nt;
      for (int j = 0; j < np; ++j) {
        const double phi = (j + 0.5) * kTwoPi / np;
        const FramePair fc = field.frame_coefficients(theta, phi);
        // full round-trip precision so the unit norm survives a parse
        std::snprintf(line, sizeof(line), "%.12g,%.12g,%.17g,%.17g\n", theta, phi, fc.a,
                      fc.b);
        out << line;
      }
    }
    write_output(sample_out, out.str());
    return kExitOk;
  }

  if (cmd_sweep->parsed()) {
    if (sweep_kmin > sweep_kmax) throw CLI::ValidationError("--kmin must be <= --kmax");
    std::ostringstream out;
    out << "k,volume,lower_bound_thm3,upper_bound_thm3,bcj_bound\n";
    char line[200];
    const double area = 2.0 * kPi * kPi;
    for (int k = sweep_kmin; k <= sweep_kmax; ++k) {
      const double vol = volume_meridian_closed(k);
      const double lo = (k - 1) * area;
      const double hi = (k + 1) * area;
      const double bcj = bcj_lower_bound(1 + k, std::abs(1 - k));
      std::snprintf(line, sizeof(line), "%d,%.12g,%.12g,%.12g,%.12g\n", k, vol, lo, hi, bcj);
      out << line;
    }
    write_output(sweep_out, out.str());
    return kExitOk;
  }

  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const volfield::DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const volfield::ConvergenceError& e) {
    std::cerr << "convergence error: " << e.what() << "\n";
    return kExitConvergence;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  }
}
