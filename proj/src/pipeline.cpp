#include "csusy/pipeline.hpp"

#include "csusy/expression.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace csusy {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string brief(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void gate(PipelineResult& r, std::string name, double value, double tolerance, std::string note = {}) {
  const bool ok = std::isfinite(value) && value <= tolerance;
  r.checks.push_back({std::move(name), value, tolerance, false, ok, std::move(note)});
}

void floor_gate(PipelineResult& r, std::string name, double value, double minimum, std::string note = {}) {
  const bool ok = value >= minimum;
  r.checks.push_back({std::move(name), value, minimum, true, ok, std::move(note)});
}

void fail(PipelineResult& r, std::string name, const std::string& why) {
  r.checks.push_back({std::move(name), kInf, 0.0, false, false, why});
}

SeedPair make_seeds(const RunConfig& cfg, const Grid1D& grid, PipelineResult& r) {
  if (const auto* m = std::get_if<FreeParticleModel>(&cfg.model)) {
    r.model_label = "free particle, kappa = " + fmt(m->kappa);
    r.threshold = 0.0;
    return free_particle_seeds(m->kappa, grid);
  }
  if (const auto* m = std::get_if<MorseModel>(&cfg.model)) {
    const MorseParams p{m->gamma, m->gamma0};
    r.model_label = "Morse, gamma = " + fmt(m->gamma) + ", gamma0 = " + fmt(m->gamma0);
    r.threshold = m->gamma0;
    r.analytic_levels = morse_levels(p);
    return morse_seeds(p, cfg.epsilon, grid);
  }
  const auto& cm = std::get<CustomModel>(cfg.model);
  RealFunction v0;
  if (!cm.samples.empty()) {
    v0 = load_samples(cm.samples);
    r.model_label = "custom samples '" + cm.samples + "'";
  } else {
    const Expression e = Expression::parse(cm.expression);
    v0 = sample<double>(grid, [&](double x) { return e(x); });
    r.model_label = "custom V0(x) = " + cm.expression;
  }
  if (!v0.all_finite()) throw ConfigError("custom potential is not finite on the grid");
  r.threshold = cm.threshold ? *cm.threshold : std::min(v0[0], v0[v0.size() - 1]);
  return numerical_seeds(v0, cfg.epsilon);
}

// Four Gaussian probes spread over the region where V1 differs from V0,
// each narrow enough to vanish (below 1e-12) at the grid ends.
void place_probes(PipelineResult& r, const ComplexPotential& cp) {
  const Grid1D& g = cp.v1.grid;
  const IndexRange core = interior(g);
  Eigen::ArrayXd diff = (cp.v1.values - cp.v0.values.cast<Complex>()).cwiseAbs().array();
  const double peak = diff.segment(core.begin, core.size()).maxCoeff();
  Index lo = core.begin, hi = core.end - 1;
  if (peak > 0.0) {
    while (lo < hi && diff[lo] < 1e-3 * peak) ++lo;
    while (hi > lo && diff[hi] < 1e-3 * peak) --hi;
  }
  const double x_lo = g.x(lo), x_hi = g.x(hi);
  const double length = std::max(x_hi - x_lo, 40.0 * g.h());
  double width = std::max(length / 10.0, 10.0 * g.h());
  r.probe_centres.clear();
  for (int k = 0; k < 4; ++k) {
    const double c = x_lo + (k + 0.5) * (x_hi - x_lo) / 4.0;
    r.probe_centres.push_back(c);
    width = std::min(width, std::min(c - g.x_min, g.x_max - c) / 7.5);
  }
  r.probe_width = width;
}

void spectral_checks(PipelineResult& r, const SeedPair& seed, const ComplexPotential& cp,
                     const SuperPotential& sp, const UFunction& u, const Tolerances& tol) {
  const DenseOperator op0 = discretize(seed.v0);
  const DenseOperator op1 = discretize(cp.v1);
  EigenOptions opt;
  opt.continuum_threshold = r.threshold;
  const SpectralReport rep0 = eigenvalues_dense(op0, opt);
  const SpectralReport rep1 = eigenvalues_dense(op1, opt);
  r.h0_bound = bound_spectrum(rep0, r.threshold);
  r.h1_bound = bound_spectrum(rep1, r.threshold);
  for (const Complex& e : r.h1_bound) {
    const auto it = std::find(rep1.eigenvalues.begin(), rep1.eigenvalues.end(), e);
    r.h1_residuals.push_back(rep1.residuals[static_cast<std::size_t>(it - rep1.eigenvalues.begin())]);
  }

  double max_imag = 0.0;
  for (const Complex& e : r.h1_bound) max_imag = std::max(max_imag, std::abs(e.imag()));
  gate(r, "spectrum_imag", r.h1_bound.empty() ? kInf : max_imag, tol.spectrum_imag,
       std::to_string(r.h1_bound.size()) + " bound eigenvalues of H1");

  // H1 bound spectrum = {eps} + H0 bound spectrum.
  std::vector<double> expected{cp.epsilon};
  for (const Complex& e : r.h0_bound) expected.push_back(e.real());
  std::sort(expected.begin(), expected.end());
  double pairing = kInf;
  if (expected.size() == r.h1_bound.size()) {
    pairing = 0.0;
    for (std::size_t k = 0; k < expected.size(); ++k) {
      pairing = std::max(pairing, std::abs(r.h1_bound[k] - Complex(expected[k], 0.0)));
    }
  }
  gate(r, "level_pairing", pairing, tol.level_pairing,
       std::to_string(r.h1_bound.size()) + " H1 levels vs " + std::to_string(expected.size()) +
           " expected");

  if (!r.analytic_levels.empty()) {
    double dev = kInf;
    if (r.analytic_levels.size() == r.h0_bound.size()) {
      dev = 0.0;
      for (std::size_t k = 0; k < r.h0_bound.size(); ++k) {
        dev = std::max(dev, std::abs(r.h0_bound[k] - Complex(r.analytic_levels[k], 0.0)));
      }
    }
    gate(r, "analytic_levels", dev, tol.analytic_levels,
         std::to_string(r.h0_bound.size()) + " H0 levels vs " +
             std::to_string(r.analytic_levels.size()) + " closed-form levels");
  }

  place_probes(r, cp);
  const auto probes = gaussian_probes(r.grid, r.probe_centres, r.probe_width);
  const double baseline = verify_intertwining(op0, op1, sp, probes);
  gate(r, "intertwining", baseline, tol.intertwining);
  SuperPotential faulty = sp;
  faulty.beta.values.array() += Complex(0.1, 0.0);
  const double perturbed = verify_intertwining(op0, op1, faulty, probes);
  floor_gate(r, "intertwining_control", perturbed / std::max(baseline, 1e-300), tol.control_ratio,
             "residual ratio with beta + 0.1");

  double worst = 0.0;
  try {
    StateRecord rec;
    rec.state = missing_state(u);
    rec.residual = eigen_residual(op1, rec.state.psi, rec.state.energy);
    rec.interlacing = interlacing_report(rec.state);
    worst = std::max(worst, rec.residual);
    r.states.push_back(std::move(rec));
  } catch (const NotNormalizable& e) {
    fail(r, "missing_state", e.what());
  }
  for (std::size_t n = 0; n < r.h0_bound.size(); ++n) {
    const double energy = r.h0_bound[n].real();
    if (!(energy > cp.epsilon)) {
      r.unmapped_levels.push_back(static_cast<int>(n));
      continue;
    }
    const ComplexFunction phi = eigenvector(op0, r.h0_bound[n]);
    StateRecord rec;
    rec.state = map_eigenfunction(phi, energy, sp, static_cast<int>(n));
    rec.residual = eigen_residual(op1, rec.state.psi, rec.state.energy);
    rec.interlacing = interlacing_report(rec.state);
    worst = std::max(worst, rec.residual);
    r.states.push_back(std::move(rec));
  }
  gate(r, "eigenfunction_mapping", r.states.empty() ? kInf : worst, tol.eigen_residual,
       std::to_string(r.states.size()) + " states under discretised H1");
}

std::string relation(const Check& c) { return c.at_least ? ">=" : "<="; }

}  // namespace

bool PipelineResult::passed() const {
  return !checks.empty() &&
         std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

const Check* PipelineResult::first_failure() const {
  for (const Check& c : checks) {
    if (!c.passed) return &c;
  }
  return nullptr;
}

Grid1D resolve_grid(const RunConfig& cfg) {
  if (cfg.grid) {
    try {
      return make_grid(cfg.grid->x_min, cfg.grid->x_max, cfg.grid->n);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("[grid] ") + e.what());
    }
  }
  if (const auto* m = std::get_if<FreeParticleModel>(&cfg.model)) {
    if (!(m->kappa > 0.0)) throw ConfigError("[model] kappa must be positive");
    const auto [lo, hi] = free_particle_domain(m->kappa);
    return make_grid(lo, hi, 2001);
  }
  if (const auto* m = std::get_if<MorseModel>(&cfg.model)) {
    try {
      const auto [lo, hi] = morse_domain(MorseParams{m->gamma, m->gamma0}, cfg.epsilon);
      return make_grid(lo, hi, 2001);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  const auto& cm = std::get<CustomModel>(cfg.model);
  if (!cm.samples.empty()) return load_samples(cm.samples).grid;
  throw ConfigError("custom potential expressions need a [grid] section");
}

RealFunction load_samples(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open sample file '" + path + "'");
  std::vector<double> xs, vs;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    double x = 0.0, v = 0.0;
    if (!(fields >> x)) {
      if (xs.empty()) continue;  // header or blank line before the data
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw ConfigError(path + ":" + std::to_string(line_no) + ": expected two numbers");
    }
    if (!(fields >> v)) throw ConfigError(path + ":" + std::to_string(line_no) + ": expected two numbers");
    if (!std::isfinite(x) || !std::isfinite(v)) {
      throw ConfigError(path + ":" + std::to_string(line_no) + ": non-finite sample");
    }
    xs.push_back(x);
    vs.push_back(v);
  }
  if (xs.size() < 16) throw ConfigError(path + ": need at least 16 samples");
  const auto n = static_cast<Index>(xs.size());
  const double h = (xs.back() - xs.front()) / static_cast<double>(n - 1);
  if (!(h > 0.0)) throw ConfigError(path + ": abscissae must increase");
  for (Index i = 0; i < n; ++i) {
    const double expected = xs.front() + h * static_cast<double>(i);
    if (std::abs(xs[static_cast<std::size_t>(i)] - expected) > 1e-6 * h) {
      throw ConfigError(path + ": abscissae are not uniformly spaced (sample " + std::to_string(i) + ")");
    }
  }
  RealFunction f;
  f.grid = make_grid(xs.front(), xs.back(), n);
  f.values = Eigen::Map<const Eigen::VectorXd>(vs.data(), n);
  return f;
}

PipelineResult run_pipeline(const RunConfig& cfg, const Tolerances& tol) {
  PipelineResult r;
  r.config = cfg;
  r.grid = resolve_grid(cfg);

  SeedPair seed;
  try {
    seed = make_seeds(cfg, r.grid, r);
  } catch (const ConfigError&) {
    throw;
  } catch (const ExpressionError& e) {
    throw ConfigError(std::string("[model] potential: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  } catch (const std::exception& e) {
    fail(r, "seeds", e.what());
    return r;
  }
  r.grid = seed.grid();
  r.w0 = seed.w0;

  validate(cfg, r.w0);
  r.b = resolve_b(cfg, r.w0);
  r.b_derived = !cfg.b.has_value();

  const bool closed_form = !std::holds_alternative<CustomModel>(cfg.model);
  const IndexRange core = interior(r.grid);
  gate(r, "seed_wronskian", wronskian_deviation(seed, core), closed_form ? tol.wronskian : 1e-6,
       "max |W - w0| / |w0|");
  gate(r, "seed_residual",
       std::max(schrodinger_residual(seed.u1, seed.du1, seed.v0, seed.epsilon),
                schrodinger_residual(seed.u2, seed.du2, seed.v0, seed.epsilon)),
       tol.seed_residual);

  const ErmakovParams params{cfg.a, r.b, cfg.c, cfg.lambda};
  try {
    const ErmakovFamily fam = build_alpha(seed, params, 1e-8);
    const UFunction u = u_function(seed, params, 1e-8);
    const SuperPotential sp = superpotential_nonlinear(fam);
    r.potential = partner_potential(fam);
    const ComplexPotential& cp = *r.potential;

    gate(r, "superpotential_forms", superpotential_form_gap(fam, u), tol.superpotential_forms,
         "nonlinear vs -u'/u, pointwise");
    gate(r, "riccati", riccati_residual(sp, seed.v0), tol.riccati);
    gate(r, "ermakov", ermakov_residual(fam), tol.ermakov);

    r.area = zero_area(cp);
    gate(r, "zero_area", std::abs(r.area->integral), tol.zero_area, "|integral of Im V1|");
    gate(r, "zero_area_boundary", std::abs(r.area->integral - r.area->boundary_form), tol.zero_area,
         "quadrature vs [2 lambda/alpha^2]");
    if (cfg.lambda == 0.0) {
      gate(r, "real_partner", cp.v1.values.imag().cwiseAbs().maxCoeff(), tol.real_partner,
           "max |Im V1| at lambda = 0");
    }

    r.pt = pt_check(cp, std::nullopt, tol.pt_symmetric);
    r.pt_at_origin = pt_check(cp, 0.0, tol.pt_symmetric);
    if (cfg.expect_pt) {
      if (*cfg.expect_pt) {
        gate(r, "pt_expectation", r.pt->deviation, tol.pt_symmetric,
             "expected PT-symmetric, best centre x0 = " + brief(r.pt->best_shift));
      } else {
        floor_gate(r, "pt_expectation", r.pt->deviation, tol.pt_broken,
                   "expected not PT-symmetric, best centre x0 = " + brief(r.pt->best_shift));
      }
    }

    spectral_checks(r, seed, cp, sp, u, tol);
  } catch (const ConfigError&) {
    throw;
  } catch (const PositivityError& e) {
    fail(r, "alpha_positivity", e.what());
  } catch (const std::exception& e) {
    fail(r, "construction", e.what());
  }
  return r;
}

std::string summary_text(const PipelineResult& r) {
  std::ostringstream out;
  const RunConfig& c = r.config;
  out << "model: " << r.model_label << "\n"
      << "grid: [" << fmt(r.grid.x_min) << ", " << fmt(r.grid.x_max) << "], n = " << r.grid.n << "\n"
      << "epsilon: " << fmt(c.epsilon) << "\n"
      << "lambda: " << fmt(c.lambda) << "\n"
      << "w0: " << fmt(r.w0) << "\n"
      << "a: " << fmt(c.a) << "\n"
      << "b: " << fmt(r.b);
  if (r.b_derived) {
    out << " (derived from b^2 - 4ac = -4 lambda^2/w0^2, "
        << (c.branch == RootBranch::positive ? "positive" : "negative") << " root)";
  } else {
    out << " (given)";
  }
  out << "\n"
      << "c: " << fmt(c.c) << "\n"
      << "continuum threshold: " << fmt(r.threshold) << "\n";

  if (r.area) {
    out << "zero area: integral = " << fmt(r.area->integral)
        << ", boundary form = " << fmt(r.area->boundary_form) << "\n";
  }
  if (r.pt) {
    out << "symmetry: " << (r.pt->is_pt_symmetric ? "PT-symmetric" : "not PT-symmetric")
        << " (best centre x0 = " << fmt(r.pt->best_shift) << ", deviation " << fmt(r.pt->deviation)
        << "; deviation about x0 = 0: " << fmt(r.pt_at_origin->deviation) << ")\n";
  }
  if (!r.h0_bound.empty() || !r.h1_bound.empty()) {
    out << "H0 bound spectrum:";
    for (const Complex& e : r.h0_bound) out << " " << fmt(e.real());
    out << "\nH1 bound spectrum:";
    for (const Complex& e : r.h1_bound) out << " " << fmt(e.real()) << (e.imag() < 0 ? "" : "+") << fmt(e.imag()) << "i";
    out << "\n";
  }
  if (!r.analytic_levels.empty()) {
    out << "closed-form H0 levels:";
    for (double e : r.analytic_levels) out << " " << fmt(e);
    out << "\n";
  }
  if (!r.probe_centres.empty()) {
    out << "intertwining probes: width " << fmt(r.probe_width) << ", centres";
    for (double x : r.probe_centres) out << " " << fmt(x);
    out << "\n";
  }
  for (const StateRecord& s : r.states) {
    out << "state " << s.state.index << ": E = " << fmt(s.state.energy) << ", residual "
        << fmt(s.residual) << ", zeros Re " << s.interlacing.re_zeros.size() << " / Im "
        << s.interlacing.im_zeros.size() << ", " << to_string(s.interlacing.alternation) << "\n";
  }
  for (int n : r.unmapped_levels) {
    out << "level " << n << " not mapped: E_n <= epsilon\n";
  }
  out << "checks:\n";
  for (const Check& ch : r.checks) {
    out << "  " << (ch.passed ? "PASS " : "FAIL ") << ch.name << ": " << fmt(ch.value) << " "
        << relation(ch) << " " << brief(ch.tolerance);
    if (!ch.note.empty()) out << "  (" << ch.note << ")";
    out << "\n";
  }
  out << "result: " << (r.passed() ? "PASS" : "FAIL") << "\n";
  return out.str();
}

void write_outputs(const PipelineResult& r, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  auto open = [&](const std::string& name) {
    std::ofstream f(dir / name);
    if (!f) throw std::runtime_error("cannot write " + (dir / name).string());
    return f;
  };

  if (wants(r.config, OutputKind::potential) && r.potential) {
    auto f = open("potential.csv");
    f << "x,re_v0,re_v1,im_v1\n";
    const ComplexPotential& cp = *r.potential;
    for (Index i = 0; i < r.grid.n; ++i) {
      f << fmt(r.grid.x(i)) << "," << fmt(cp.v0[i]) << "," << fmt(cp.v1[i].real()) << ","
        << fmt(cp.v1[i].imag()) << "\n";
    }
  }
  if (wants(r.config, OutputKind::spectrum)) {
    auto f = open("spectrum.csv");
    f << "index,re_E,im_E,residual\n";
    for (std::size_t k = 0; k < r.h1_bound.size(); ++k) {
      f << k << "," << fmt(r.h1_bound[k].real()) << "," << fmt(r.h1_bound[k].imag()) << ","
        << fmt(r.h1_residuals[k]) << "\n";
    }
  }
  if (wants(r.config, OutputKind::states)) {
    for (const StateRecord& s : r.states) {
      auto f = open("state_" + std::to_string(s.state.index) + ".csv");
      f << "x,re_psi,im_psi,abs_psi\n";
      const ComplexFunction& psi = s.state.psi;
      for (Index i = 0; i < psi.size(); ++i) {
        f << fmt(r.grid.x(i)) << "," << fmt(psi[i].real()) << "," << fmt(psi[i].imag()) << ","
          << fmt(std::abs(psi[i])) << "\n";
      }
    }
  }
  if (wants(r.config, OutputKind::diagnostics)) {
    auto f = open("checks.csv");
    f << "name,value,relation,tolerance,passed\n";
    for (const Check& ch : r.checks) {
      f << ch.name << "," << fmt(ch.value) << "," << relation(ch) << "," << fmt(ch.tolerance) << ","
        << (ch.passed ? "true" : "false") << "\n";
    }
  }
  auto f = open("summary.txt");
  f << summary_text(r);
}

}  // namespace csusy
