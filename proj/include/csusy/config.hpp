#ifndef CSUSY_CONFIG_HPP
#define CSUSY_CONFIG_HPP

#include "csusy/ermakov.hpp"
#include "csusy/numerics.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace csusy {

/// Any problem with a configuration: syntax, missing or non-finite values,
/// an infeasible or violated constraint. The CLI maps it to exit status 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FreeParticleModel {
  double kappa = 1.0;
  bool operator==(const FreeParticleModel&) const = default;
};

struct MorseModel {
  double gamma = 1.0;
  double gamma0 = 4.0;
  bool operator==(const MorseModel&) const = default;
};

/// Exactly one of `expression` and `samples` is set. A sample file holds two
/// columns x, V (comma or whitespace separated, '#' comments) on a uniform
/// grid, which then becomes the run grid.
struct CustomModel {
  std::string expression;
  std::string samples;
  std::optional<double> threshold;  // continuum edge; min(V at the ends) when absent
  bool operator==(const CustomModel&) const = default;
};

using Model = std::variant<FreeParticleModel, MorseModel, CustomModel>;

struct GridSpec {
  double x_min = 0.0;
  double x_max = 0.0;
  Index n = 2001;
  bool operator==(const GridSpec&) const = default;
};

enum class OutputKind { potential, spectrum, states, diagnostics };

struct RunConfig {
  Model model = FreeParticleModel{};
  double epsilon = -0.25;
  double lambda = 1.0;
  double a = 1.0;
  std::optional<double> b;  // derived from the constraint when absent
  double c = 1.0;
  RootBranch branch = RootBranch::positive;
  std::optional<GridSpec> grid;  // model default when absent
  std::vector<OutputKind> outputs{OutputKind::potential, OutputKind::spectrum, OutputKind::states,
                                  OutputKind::diagnostics};
  /// Optional expectation on the symmetry verdict, checked by the pipeline.
  std::optional<bool> expect_pt;

  bool operator==(const RunConfig&) const = default;
};

/// Flat key = value text with [model], [ermakov], [grid], [output] and
/// [checks] sections; '#' starts a comment. Throws ConfigError naming the
/// line on anything malformed, unknown or non-finite. Semantic validation
/// (constraint, model ranges) is separate, see validate().
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

/// Canonical text form; parse_config(emit_config(c)) == c. Doubles are
/// written with 17 significant digits.
std::string emit_config(const RunConfig& config);

/// The figure parameter sets: fig1, fig1-shifted, fig3, fig3-alt. Grids are
/// the model's default windows with n = 2001. Throws ConfigError for
/// unknown names.
RunConfig preset(std::string_view name);
std::vector<std::string> preset_names();

/// Model ranges, epsilon consistency and, when b is given, the constraint
/// b^2 - 4ac = -4 lambda^2 / w0^2 within 1e-8 (relative to max(1, 4ac)).
/// `w0` is the seed Wronskian. Throws ConfigError naming the failed relation.
void validate(const RunConfig& config, double w0);

/// b as the run will use it: the configured value or the constraint root.
/// Throws ConfigError when the constraint is infeasible (ac < lambda^2/w0^2).
double resolve_b(const RunConfig& config, double w0);

const char* to_string(OutputKind k);
bool wants(const RunConfig& config, OutputKind k);

}  // namespace csusy

#endif  // CSUSY_CONFIG_HPP
