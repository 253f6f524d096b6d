#include "csusy/config.hpp"

#include "csusy/expression.hpp"
#include "csusy/seeds.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

namespace csusy {
namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string unquote(std::string v) {
  if (v.size() >= 2 && v.front() == '"' && v.back() == '"') return v.substr(1, v.size() - 2);
  return v;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Collected key/value pairs of one section, with the source line for errors.
struct Entry {
  std::string value;
  int line = 0;
  bool used = false;
};
using Section = std::map<std::string, Entry>;

class Reader {
 public:
  explicit Reader(std::map<std::string, Section> sections) : sections_(std::move(sections)) {}

  bool has(const std::string& sec, const std::string& key) const {
    auto s = sections_.find(sec);
    return s != sections_.end() && s->second.count(key) > 0;
  }

  std::string text(const std::string& sec, const std::string& key) {
    Entry& e = sections_.at(sec).at(key);
    e.used = true;
    return e.value;
  }

  double number(const std::string& sec, const std::string& key) {
    const int line = sections_.at(sec).at(key).line;
    const std::string v = text(sec, key);
    char* end = nullptr;
    const double d = std::strtod(v.c_str(), &end);
    if (v.empty() || end != v.c_str() + v.size()) {
      throw ConfigError("line " + std::to_string(line) + ": [" + sec + "] " + key +
                        " is not a number: '" + v + "'");
    }
    if (!std::isfinite(d)) {
      throw ConfigError("line " + std::to_string(line) + ": [" + sec + "] " + key + " must be finite");
    }
    return d;
  }

  double number_or(const std::string& sec, const std::string& key, double fallback) {
    return has(sec, key) ? number(sec, key) : fallback;
  }

  double required(const std::string& sec, const std::string& key) {
    if (!has(sec, key)) throw ConfigError("missing [" + sec + "] " + key);
    return number(sec, key);
  }

  bool boolean(const std::string& sec, const std::string& key) {
    const int line = sections_.at(sec).at(key).line;
    const std::string v = text(sec, key);
    if (v == "true") return true;
    if (v == "false") return false;
    throw ConfigError("line " + std::to_string(line) + ": [" + sec + "] " + key +
                      " must be true or false");
  }

  void reject_unused() const {
    for (const auto& [name, sec] : sections_) {
      for (const auto& [key, e] : sec) {
        if (!e.used) {
          throw ConfigError("line " + std::to_string(e.line) + ": unknown key '" + key + "' in [" +
                            name + "]");
        }
      }
    }
  }

 private:
  std::map<std::string, Section> sections_;
};

const std::vector<std::string> kSections{"model", "ermakov", "grid", "output", "checks"};

GridSpec window(double lo, double hi) { return {lo, hi, 2001}; }

}  // namespace

const char* to_string(OutputKind k) {
  switch (k) {
    case OutputKind::potential:
      return "potential";
    case OutputKind::spectrum:
      return "spectrum";
    case OutputKind::states:
      return "states";
    case OutputKind::diagnostics:
      return "diagnostics";
  }
  return "unknown";
}

bool wants(const RunConfig& config, OutputKind k) {
  return std::find(config.outputs.begin(), config.outputs.end(), k) != config.outputs.end();
}

RunConfig parse_config(std::string_view text) {
  std::map<std::string, Section> sections;
  std::string current;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("line " + std::to_string(line_no) + ": malformed section header");
      current = trim(line.substr(1, line.size() - 2));
      if (std::find(kSections.begin(), kSections.end(), current) == kSections.end()) {
        throw ConfigError("line " + std::to_string(line_no) + ": unknown section [" + current + "]");
      }
      sections[current];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    if (current.empty()) throw ConfigError("line " + std::to_string(line_no) + ": key outside of a section");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = unquote(trim(line.substr(eq + 1)));
    if (key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty key");
    if (sections[current].count(key)) {
      throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
    sections[current][key] = Entry{value, line_no, false};
  }

  Reader r(std::move(sections));
  RunConfig cfg;

  if (!r.has("model", "kind")) throw ConfigError("missing [model] kind");
  const std::string kind = r.text("model", "kind");
  if (kind == "free-particle") {
    FreeParticleModel m;
    m.kappa = r.required("model", "kappa");
    cfg.model = m;
    cfg.epsilon = r.number_or("ermakov", "epsilon", -0.25 * m.kappa * m.kappa);
  } else if (kind == "morse") {
    MorseModel m;
    m.gamma = r.required("model", "gamma");
    m.gamma0 = r.required("model", "gamma0");
    cfg.model = m;
    cfg.epsilon = r.required("ermakov", "epsilon");
  } else if (kind == "custom") {
    CustomModel m;
    if (r.has("model", "potential")) {
      m.expression = r.text("model", "potential");
      try {
        Expression::parse(m.expression);
      } catch (const ExpressionError& e) {
        throw ConfigError(std::string("[model] potential: ") + e.what());
      }
    }
    if (r.has("model", "samples")) m.samples = r.text("model", "samples");
    if (m.expression.empty() == m.samples.empty()) {
      throw ConfigError("custom model needs exactly one of [model] potential and [model] samples");
    }
    if (r.has("model", "threshold")) m.threshold = r.number("model", "threshold");
    cfg.model = m;
    cfg.epsilon = r.required("ermakov", "epsilon");
  } else {
    throw ConfigError("unknown model kind '" + kind + "' (free-particle, morse, custom)");
  }

  cfg.lambda = r.required("ermakov", "lambda");
  cfg.a = r.required("ermakov", "a");
  cfg.c = r.required("ermakov", "c");
  if (r.has("ermakov", "b")) cfg.b = r.number("ermakov", "b");
  if (r.has("ermakov", "branch")) {
    const std::string b = r.text("ermakov", "branch");
    if (b == "positive") cfg.branch = RootBranch::positive;
    else if (b == "negative") cfg.branch = RootBranch::negative;
    else throw ConfigError("[ermakov] branch must be positive or negative");
  }

  const bool any_grid = r.has("grid", "x_min") || r.has("grid", "x_max") || r.has("grid", "n");
  if (any_grid) {
    GridSpec g;
    g.x_min = r.required("grid", "x_min");
    g.x_max = r.required("grid", "x_max");
    const double n = r.required("grid", "n");
    if (n != std::floor(n) || n < 16 || n > 4098) throw ConfigError("[grid] n must be an integer in [16, 4098]");
    g.n = static_cast<Index>(n);
    if (!(g.x_min < g.x_max)) throw ConfigError("[grid] needs x_min < x_max");
    cfg.grid = g;
  }

  if (r.has("output", "files")) {
    cfg.outputs.clear();
    std::stringstream list(r.text("output", "files"));
    std::string item;
    while (std::getline(list, item, ',')) {
      item = trim(item);
      if (item.empty()) continue;
      bool found = false;
      for (OutputKind k : {OutputKind::potential, OutputKind::spectrum, OutputKind::states,
                           OutputKind::diagnostics}) {
        if (item == to_string(k)) {
          if (!wants(cfg, k)) cfg.outputs.push_back(k);
          found = true;
        }
      }
      if (!found) throw ConfigError("unknown output '" + item + "'");
    }
  }

  if (r.has("checks", "expect_pt")) cfg.expect_pt = r.boolean("checks", "expect_pt");

  r.reject_unused();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string emit_config(const RunConfig& c) {
  std::ostringstream out;
  out << "[model]\n";
  if (const auto* m = std::get_if<FreeParticleModel>(&c.model)) {
    out << "kind = free-particle\n"
        << "kappa = " << fmt(m->kappa) << "\n";
  } else if (const auto* m = std::get_if<MorseModel>(&c.model)) {
    out << "kind = morse\n"
        << "gamma = " << fmt(m->gamma) << "\n"
        << "gamma0 = " << fmt(m->gamma0) << "\n";
  } else {
    const auto& cm = std::get<CustomModel>(c.model);
    out << "kind = custom\n";
    if (!cm.expression.empty()) out << "potential = \"" << cm.expression << "\"\n";
    if (!cm.samples.empty()) out << "samples = \"" << cm.samples << "\"\n";
    if (cm.threshold) out << "threshold = " << fmt(*cm.threshold) << "\n";
  }

  out << "\n[ermakov]\n"
      << "epsilon = " << fmt(c.epsilon) << "\n"
      << "lambda = " << fmt(c.lambda) << "\n"
      << "a = " << fmt(c.a) << "\n";
  if (c.b) {
    out << "b = " << fmt(*c.b) << "\n";
  } else {
    out << "# b omitted: derived from b^2 - 4ac = -4 lambda^2/w0^2\n";
  }
  out << "c = " << fmt(c.c) << "\n"
      << "branch = " << (c.branch == RootBranch::positive ? "positive" : "negative") << "\n";

  if (c.grid) {
    out << "\n[grid]\n"
        << "x_min = " << fmt(c.grid->x_min) << "\n"
        << "x_max = " << fmt(c.grid->x_max) << "\n"
        << "n = " << c.grid->n << "\n";
  }

  out << "\n[output]\nfiles = ";
  for (std::size_t k = 0; k < c.outputs.size(); ++k) out << (k ? ", " : "") << to_string(c.outputs[k]);
  out << "\n";

  if (c.expect_pt) out << "\n[checks]\nexpect_pt = " << (*c.expect_pt ? "true" : "false") << "\n";
  return out.str();
}

std::vector<std::string> preset_names() { return {"fig1", "fig1-shifted", "fig3", "fig3-alt"}; }

RunConfig preset(std::string_view name) {
  RunConfig c;
  if (name == "fig1" || name == "fig1-shifted") {
    const double kappa = 1.0;
    c.model = FreeParticleModel{kappa};
    c.epsilon = -0.25 * kappa * kappa;
    c.lambda = 1.0;
    c.c = 1.0;
    if (name == "fig1") {
      c.a = 1.0;
      c.b = 0.0;
    } else {
      c.a = 1.5;  // b from the constraint; with a != c the profile slides right
    }
    const auto [lo, hi] = free_particle_domain(kappa);
    c.grid = window(lo, hi);
    c.expect_pt = true;
    return c;
  }
  if (name == "fig3" || name == "fig3-alt") {
    const MorseModel m{1.0, 4.0};
    c.model = m;
    c.epsilon = 1.0;
    c.lambda = 2.0;
    c.a = 1.0;
    if (name == "fig3") {
      c.c = 1.0;
    } else {
      c.b = 0.0;
      c.c = 1.0 / 3.0;
    }
    const auto [lo, hi] = morse_domain(MorseParams{m.gamma, m.gamma0}, c.epsilon);
    c.grid = window(lo, hi);
    c.expect_pt = false;
    return c;
  }
  throw ConfigError("unknown preset '" + std::string(name) + "' (fig1, fig1-shifted, fig3, fig3-alt)");
}

void validate(const RunConfig& c, double w0) {
  if (!(c.a > 0.0) || !(c.c > 0.0)) throw ConfigError("[ermakov] needs a > 0 and c > 0");
  if (const auto* m = std::get_if<FreeParticleModel>(&c.model)) {
    if (!(m->kappa > 0.0)) throw ConfigError("[model] kappa must be positive");
    const double expected = -0.25 * m->kappa * m->kappa;
    if (std::abs(c.epsilon - expected) > 1e-12 * std::max(1.0, std::abs(expected))) {
      throw ConfigError("free particle requires epsilon = -kappa^2/4 = " + fmt(expected) + ", got " +
                        fmt(c.epsilon));
    }
  } else if (const auto* m = std::get_if<MorseModel>(&c.model)) {
    try {
      MorseParams{m->gamma, m->gamma0}.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    if (!(c.epsilon < m->gamma0)) throw ConfigError("Morse model requires epsilon < gamma0");
  }
  if (c.b) {
    try {
      check_constraint(ErmakovParams{c.a, *c.b, c.c, c.lambda}, w0, 1e-8);
    } catch (const ConstraintViolation& e) {
      throw ConfigError(e.what());
    }
  } else {
    resolve_b(c, w0);
  }
}

double resolve_b(const RunConfig& c, double w0) {
  if (c.b) return *c.b;
  try {
    return solve_constraint(c.a, c.c, c.lambda, w0, c.branch);
  } catch (const InfeasibleConstraint& e) {
    throw ConfigError(e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace csusy
