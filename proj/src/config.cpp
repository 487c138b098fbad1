#include "discord_dyn/config.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "discord_dyn/errors.hpp"

namespace discord_dyn {

namespace {

std::string format_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_double(const std::string& key, const std::string& value) {
  char* end = nullptr;
  const double v = std::strtod(value.c_str(), &end);  // accepts subnormals
  if (end != value.c_str() + value.size() || value.empty()) {
    throw ValidationError("config: bad numeric value for '" + key + "': " + value);
  }
  return v;
}

int parse_int(const std::string& key, const std::string& value) {
  try {
    size_t pos = 0;
    const int v = std::stoi(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ValidationError("config: bad integer value for '" + key + "': " + value);
  }
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

Matrix4 InitialStateSpec::resolve() const {
  if (explicit_matrix) {
    validate_density_matrix(*explicit_matrix);
    return *explicit_matrix;
  }
  return initial_state_from_name(preset);
}

std::string InitialStateSpec::serialize() const {
  if (!explicit_matrix) return preset;
  std::string out = "matrix:";
  const Matrix4& m = *explicit_matrix;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (i != 0 || j != 0) out += ",";
      out += format_full(m(i, j).real()) + "," + format_full(m(i, j).imag());
    }
  }
  return out;
}

InitialStateSpec InitialStateSpec::parse(const std::string& text) {
  InitialStateSpec spec;
  if (text.rfind("matrix:", 0) != 0) {
    spec.preset = text;
    initial_state_from_name(text);  // validates the name
    return spec;
  }
  std::stringstream ss(text.substr(7));
  std::string cell;
  std::vector<double> numbers;
  while (std::getline(ss, cell, ',')) numbers.push_back(parse_double("initial_state", trim(cell)));
  if (numbers.size() != 32) {
    throw ValidationError("config: initial_state matrix needs 32 numbers (re,im row-major), got " +
                          std::to_string(numbers.size()));
  }
  Matrix4 m;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const size_t k = 2 * static_cast<size_t>(4 * i + j);
      m(i, j) = std::complex<double>(numbers[k], numbers[k + 1]);
    }
  }
  spec.preset.clear();
  spec.explicit_matrix = m;
  return spec;
}

bool InitialStateSpec::operator==(const InitialStateSpec& o) const {
  if (preset != o.preset) return false;
  if (explicit_matrix.has_value() != o.explicit_matrix.has_value()) return false;
  if (explicit_matrix && *explicit_matrix != *o.explicit_matrix) return false;
  return true;
}

void RunConfig::validate() const {
  spectrum.validate();
  if (!(t_end > 0.0)) throw ValidationError("config: t_end must be > 0");
  if (n_steps < 10) throw ValidationError("config: n_steps must be >= 10");
  if (discord_grid < 16) throw ValidationError("config: discord_grid must be >= 16");
  if (!(quadrature.abs_tol > 0.0) || !(quadrature.rel_tol > 0.0)) {
    throw ValidationError("config: quadrature tolerances must be > 0");
  }
  if (output_dir.empty()) throw ValidationError("config: output_dir must not be empty");
  initial_state.resolve();  // validates preset name / explicit matrix
}

bool RunConfig::operator==(const RunConfig& o) const {
  return preset == o.preset && kind == o.kind && spectrum.coupling_sq == o.spectrum.coupling_sq &&
         spectrum.cutoff == o.spectrum.cutoff && spectrum.exponent == o.spectrum.exponent &&
         regime == o.regime && initial_state == o.initial_state && t_end == o.t_end &&
         n_steps == o.n_steps && discord_grid == o.discord_grid &&
         prefactor_switch == o.prefactor_switch && j0_formula == o.j0_formula &&
         quadrature == o.quadrature && output_dir == o.output_dir;
}

void apply_config_entry(RunConfig& c, const std::string& key, const std::string& value) {
  if (key == "preset") {
    c.preset = value;
  } else if (key == "kind") {
    if (value == "independent") c.kind = ReservoirKind::Independent;
    else if (value == "common") c.kind = ReservoirKind::Common;
    else throw ValidationError("config: kind must be 'independent' or 'common', got " + value);
  } else if (key == "s") {
    c.spectrum.exponent = parse_double(key, value);
  } else if (key == "omega_c") {
    c.spectrum.cutoff = parse_double(key, value);
  } else if (key == "alpha_sq") {
    c.spectrum.coupling_sq = parse_double(key, value);
  } else if (key == "regime") {
    if (value == "zero") {
      c.regime = TemperatureRegime::zero();
    } else if (value == "high") {
      c.regime = TemperatureRegime::high(c.regime.is_zero() ? 100.0 : c.regime.kT());
    } else {
      throw ValidationError("config: regime must be 'zero' or 'high', got " + value);
    }
  } else if (key == "kT") {
    const double kt = parse_double(key, value);
    if (!c.regime.is_zero()) {
      c.regime = TemperatureRegime::high(kt);
    } else if (kt != 0.0) {
      throw ValidationError("config: kT given but regime is 'zero'");
    }
  } else if (key == "initial_state") {
    c.initial_state = InitialStateSpec::parse(value);
  } else if (key == "t_end") {
    c.t_end = parse_double(key, value);
  } else if (key == "n_steps") {
    c.n_steps = parse_int(key, value);
  } else if (key == "discord_grid") {
    c.discord_grid = parse_int(key, value);
  } else if (key == "prefactor_switch") {
    if (value == "none") c.prefactor_switch = PrefactorSwitch::None;
    else if (value == "gamma_only") c.prefactor_switch = PrefactorSwitch::GammaOnly;
    else if (value == "gamma_and_j0") c.prefactor_switch = PrefactorSwitch::GammaAndJ0;
    else throw ValidationError("config: bad prefactor_switch: " + value);
  } else if (key == "j0_formula") {
    if (value == "naive") c.j0_formula = J0Formula::Naive;
    else if (value == "literal") c.j0_formula = J0Formula::Literal;
    else throw ValidationError("config: bad j0_formula: " + value);
  } else if (key == "quad_abs_tol") {
    c.quadrature.abs_tol = parse_double(key, value);
  } else if (key == "quad_rel_tol") {
    c.quadrature.rel_tol = parse_double(key, value);
  } else if (key == "output_dir") {
    c.output_dir = value;
  } else {
    throw ValidationError("config: unknown key '" + key + "'");
  }
}

RunConfig parse_config(std::istream& in) {
  RunConfig config;
  std::set<std::string> seen;
  std::string line;
  int line_no = 0;
  // kT must be applied after regime regardless of file order.
  std::optional<std::string> pending_kt;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ValidationError("config: line " + std::to_string(line_no) + " is not 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ValidationError("config: line " + std::to_string(line_no) + " has an empty key or value");
    }
    if (!seen.insert(key).second) {
      throw ValidationError("config: duplicate key '" + key + "'");
    }
    if (key == "kT") {
      pending_kt = value;
      continue;
    }
    apply_config_entry(config, key, value);
  }
  if (pending_kt) apply_config_entry(config, "kT", *pending_kt);
  return config;
}

RunConfig parse_config_string(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("config: cannot open " + path);
  return parse_config(in);
}

std::string to_string(ReservoirKind kind) {
  return kind == ReservoirKind::Independent ? "independent" : "common";
}

std::string to_string(PrefactorSwitch sw) {
  switch (sw) {
    case PrefactorSwitch::None: return "none";
    case PrefactorSwitch::GammaOnly: return "gamma_only";
    case PrefactorSwitch::GammaAndJ0: return "gamma_and_j0";
  }
  return "?";
}

std::string to_string(J0Formula formula) {
  return formula == J0Formula::Naive ? "naive" : "literal";
}

std::string emit_config(const RunConfig& c) {
  std::string out;
  auto put = [&out](const std::string& key, const std::string& value) {
    out += key + " = " + value + "\n";
  };
  if (!c.preset.empty()) put("preset", c.preset);
  put("kind", to_string(c.kind));
  put("s", format_full(c.spectrum.exponent));
  put("omega_c", format_full(c.spectrum.cutoff));
  put("alpha_sq", format_full(c.spectrum.coupling_sq));
  put("regime", c.regime.is_zero() ? "zero" : "high");
  if (!c.regime.is_zero()) put("kT", format_full(c.regime.kT()));
  put("initial_state", c.initial_state.serialize());
  put("t_end", format_full(c.t_end));
  put("n_steps", std::to_string(c.n_steps));
  put("discord_grid", std::to_string(c.discord_grid));
  put("prefactor_switch", to_string(c.prefactor_switch));
  put("j0_formula", to_string(c.j0_formula));
  put("quad_abs_tol", format_full(c.quadrature.abs_tol));
  put("quad_rel_tol", format_full(c.quadrature.rel_tol));
  put("output_dir", c.output_dir);
  return out;
}

}  // namespace discord_dyn
