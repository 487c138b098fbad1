#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "discord_dyn/liouville.hpp"
#include "discord_dyn/propagator.hpp"
#include "discord_dyn/spectral.hpp"
#include "discord_dyn/two_qubit.hpp"

namespace discord_dyn {

// Initial state, either one of the named presets or explicit entries.
struct InitialStateSpec {
  std::string preset = "bell_psi_plus";  // empty when explicit
  std::optional<Matrix4> explicit_matrix;

  Matrix4 resolve() const;
  std::string serialize() const;
  static InitialStateSpec parse(const std::string& text);
  bool operator==(const InitialStateSpec& o) const;
};

// One run of the simulator; the flat config-file keys map 1:1 onto fields.
struct RunConfig {
  std::string preset;  // optional panel preset (e.g. "fig1f"); empty = explicit run
  ReservoirKind kind = ReservoirKind::Independent;
  SpectralParams spectrum{0.01, 1.0, 1.0};
  TemperatureRegime regime = TemperatureRegime::zero();
  InitialStateSpec initial_state;
  double t_end = 50.0;
  int n_steps = 4000;
  int discord_grid = 64;
  PrefactorSwitch prefactor_switch = PrefactorSwitch::GammaAndJ0;
  J0Formula j0_formula = J0Formula::Naive;
  QuadratureOptions quadrature;
  std::string output_dir = "runs";

  void validate() const;  // throws ValidationError
  bool operator==(const RunConfig& o) const;
};

// key = value lines, '#' comments, unknown or duplicate keys rejected.
RunConfig parse_config(std::istream& in);
RunConfig parse_config_string(const std::string& text);
RunConfig load_config_file(const std::string& path);

// Emits every key; parse(emit(c)) == c for all valid configs.
std::string emit_config(const RunConfig& config);

// Applies a single "key" = "value" assignment (used by sweep axes).
void apply_config_entry(RunConfig& config, const std::string& key, const std::string& value);

std::string to_string(ReservoirKind kind);
std::string to_string(PrefactorSwitch sw);
std::string to_string(J0Formula formula);

}  // namespace discord_dyn
