// Scratch: grid-resolution sensitivity of the fig1 panel (a) half-times.
#include <cstdio>

#include "discord_dyn/discord.hpp"
#include "discord_dyn/harness.hpp"

using namespace discord_dyn;

int main() {
  for (const int n : {80, 320, 1280}) {
    const double t_end = 1.0;
    std::printf("t_end=%g n=%d (h=%g):\n", t_end, n, t_end / n);
    for (const double s : {0.5, 1.0, 3.0}) {
      RunConfig c;
      c.kind = ReservoirKind::Independent;
      c.spectrum = SpectralParams{0.01, 10.0, s};
      c.regime = TemperatureRegime::high(100.0);
      c.t_end = t_end;
      c.n_steps = n;
      const Trajectory traj = simulate_trajectory(c);
      std::printf("  s=%.1f t_half=%.8f\n", s, time_to_half_discord(traj));
    }
  }
  return 0;
}
