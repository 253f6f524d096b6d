#ifndef CSUSY_PIPELINE_HPP
#define CSUSY_PIPELINE_HPP

#include "csusy/analysis.hpp"
#include "csusy/config.hpp"
#include "csusy/darboux.hpp"
#include "csusy/seeds.hpp"
#include "csusy/spectral.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace csusy {

/// Gates applied by run_pipeline. The defaults are the acceptance values.
struct Tolerances {
  double wronskian = 1e-8;  // closed-form seeds; numerical seeds use 1e-6
  double seed_residual = 1e-4;
  double superpotential_forms = 1e-8;
  double riccati = 1e-4;
  double ermakov = 1e-4;
  double zero_area = 1e-5;
  double real_partner = 1e-8;  // max |Im V1| when lambda = 0
  double spectrum_imag = 1e-6;
  double level_pairing = 1e-3;
  double analytic_levels = 1e-3;
  double intertwining = 1e-3;
  double control_ratio = 100.0;
  double eigen_residual = 1e-3;
  double pt_symmetric = 1e-6;
  double pt_broken = 1e-2;
};

struct Check {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool at_least = false;  // value >= tolerance instead of value <= tolerance
  bool passed = false;
  std::string note;
};

struct StateRecord {
  MappedState state;
  double residual = 0.0;
  InterlacingReport interlacing;
};

struct PipelineResult {
  RunConfig config;
  Grid1D grid;
  double w0 = 0.0;
  double b = 0.0;
  bool b_derived = false;
  double threshold = 0.0;
  std::string model_label;

  std::optional<ComplexPotential> potential;
  std::vector<Complex> h0_bound;
  std::vector<Complex> h1_bound;
  std::vector<double> h1_residuals;
  std::vector<double> analytic_levels;
  std::vector<StateRecord> states;  // missing state first, then psi_1, psi_2, ...
  std::vector<int> unmapped_levels;
  std::optional<ZeroArea> area;
  std::optional<SymmetryVerdict> pt;
  std::optional<SymmetryVerdict> pt_at_origin;
  std::vector<double> probe_centres;
  double probe_width = 0.0;

  std::vector<Check> checks;

  bool passed() const;
  const Check* first_failure() const;
};

/// Builds seeds, alpha, beta, V1, both spectra and the mapped states, and
/// evaluates every check. Configuration problems (including an infeasible or
/// violated constraint) throw ConfigError. A construction step that fails
/// (nodes, non-normalisable missing state, solver trouble) is recorded as a
/// failed check and ends the run early.
PipelineResult run_pipeline(const RunConfig& config, const Tolerances& tol = {});

/// Grid the run will use: the configured one, or the model's default window
/// with n = 2001. Custom expression models must configure a grid.
Grid1D resolve_grid(const RunConfig& config);

/// Reads a two-column x, V sample file; the abscissae must be uniform.
RealFunction load_samples(const std::string& path);

std::string summary_text(const PipelineResult& result);

/// Writes the requested CSV files and summary.txt into `dir` (created if
/// needed). Numbers carry 17 significant digits, so output is bitwise
/// reproducible for a fixed configuration.
void write_outputs(const PipelineResult& result, const std::filesystem::path& dir);

}  // namespace csusy

#endif  // CSUSY_PIPELINE_HPP
