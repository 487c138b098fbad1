#include "discord_dyn/discord.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "discord_dyn/errors.hpp"

namespace discord_dyn {

namespace {

constexpr double kEigenvalueFloor = 1e-12;
constexpr double kEigenvalueFatal = -1e-6;
constexpr double kOutcomeFloor = 1e-12;
constexpr double kPi = std::numbers::pi;

double entropy_term(double lambda) {
  if (lambda < kEigenvalueFloor) {
    if (lambda < kEigenvalueFatal) {
      throw NumericalError("entropy: eigenvalue " + std::to_string(lambda) +
                           " is too negative to score");
    }
    return 0.0;
  }
  return -lambda * std::log2(lambda);
}

// Entropy of a Hermitian 2x2 matrix with trace p (unnormalized conditional
// state), i.e. p * S(M/p), via closed-form eigenvalues. The fatal-negativity
// check applies to the absolute eigenvalues, not the p-normalized ones, so a
// rare outcome cannot spuriously reject a mildly non-positive state.
double scaled_entropy_2x2(const Matrix2& m, double p) {
  const double a = m(0, 0).real();
  const double d = m(1, 1).real();
  const double off = std::norm(m(0, 1));
  const double disc = std::sqrt(std::max(0.0, (a - d) * (a - d) + 4.0 * off));
  double s = 0.0;
  for (const double l : {0.5 * ((a + d) + disc), 0.5 * ((a + d) - disc)}) {
    if (l < kEigenvalueFatal) {
      throw NumericalError("entropy: conditional eigenvalue " + std::to_string(l) +
                           " is too negative to score");
    }
    const double lam = l / p;
    if (lam >= kEigenvalueFloor) s -= p * lam * std::log2(lam);
  }
  return s;
}

struct MeasurementScan {
  const Matrix4& rho;
  int measured_qubit;
  Matrix2 marginal;     // state of the unmeasured qubit
  double marginal_entropy;

  MeasurementScan(const Matrix4& r, int qubit) : rho(r), measured_qubit(qubit) {
    marginal = (measured_qubit == 2) ? trace_out_second(rho) : trace_out_first(rho);
    marginal_entropy = von_neumann_entropy(marginal);
  }

  // Unnormalized conditional state of the unmeasured qubit given outcome |v>.
  Matrix2 conditional(const Eigen::Vector2cd& v) const {
    Matrix2 m = Matrix2::Zero();
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        std::complex<double> acc(0.0, 0.0);
        for (int a = 0; a < 2; ++a) {
          for (int b = 0; b < 2; ++b) {
            acc += std::conj(v(a)) * v(b) *
                   (measured_qubit == 2 ? rho(2 * i + a, 2 * j + b) : rho(2 * a + i, 2 * b + j));
          }
        }
        m(i, j) = acc;
      }
    }
    return m;
  }

  double objective(double theta, double phi) const {
    const double ct = std::cos(0.5 * theta);
    const double st = std::sin(0.5 * theta);
    Eigen::Vector2cd v;
    v << std::complex<double>(ct, 0.0), std::polar(st, phi);

    const Matrix2 m0 = conditional(v);
    const Matrix2 m1 = marginal - m0;
    const double p0 = m0.trace().real();
    const double p1 = m1.trace().real();
    double cond = 0.0;
    if (p0 > kOutcomeFloor) cond += scaled_entropy_2x2(m0, p0);
    if (p1 > kOutcomeFloor) cond += scaled_entropy_2x2(m1, p1);
    return marginal_entropy - cond;
  }
};

// Golden-section maximization of f on [lo, hi].
template <class F>
double golden_max(const F& f, double lo, double hi, int iterations, double* best_value) {
  constexpr double inv_phi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < iterations; ++i) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    }
  }
  const double x = (f1 > f2) ? x1 : x2;
  if (best_value) *best_value = std::max(f1, f2);
  return x;
}

}  // namespace

Eigen::Vector2cd MeasurementBasis::ket() const {
  Eigen::Vector2cd v;
  v << std::complex<double>(std::cos(0.5 * theta), 0.0), std::polar(std::sin(0.5 * theta), phi);
  return v;
}

Matrix2 MeasurementBasis::projector() const {
  const Eigen::Vector2cd v = ket();
  return v * v.adjoint();
}

double von_neumann_entropy(const Eigen::MatrixXcd& rho) {
  if (rho.rows() != rho.cols() || (rho.rows() != 2 && rho.rows() != 4)) {
    throw ValidationError("von_neumann_entropy: expected a 2x2 or 4x4 matrix");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es;
  es.compute(Eigen::MatrixXcd(0.5 * (rho + rho.adjoint())), Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    s += entropy_term(es.eigenvalues()[i]);
  }
  return s;
}

double mutual_information(const Matrix4& rho) {
  return von_neumann_entropy(trace_out_second(rho)) + von_neumann_entropy(trace_out_first(rho)) -
         von_neumann_entropy(rho);
}

ClassicalCorrelationResult classical_correlation(const Matrix4& rho, const DiscordOptions& opts) {
  if (opts.grid < 16) throw ValidationError("classical_correlation: grid must be >= 16");
  if (opts.measured_qubit != 1 && opts.measured_qubit != 2) {
    throw ValidationError("classical_correlation: measured_qubit must be 1 or 2");
  }
  const MeasurementScan scan(rho, opts.measured_qubit);

  const int g = opts.grid;
  double best = -std::numeric_limits<double>::infinity();
  double best_theta = 0.0, best_phi = 0.0;
  for (int i = 0; i <= g; ++i) {
    const double theta = kPi * static_cast<double>(i) / g;
    for (int j = 0; j < 2 * g; ++j) {
      const double phi = kPi * static_cast<double>(j) / g;
      const double val = scan.objective(theta, phi);
      if (val > best) {
        best = val;
        best_theta = theta;
        best_phi = phi;
      }
    }
  }

  ClassicalCorrelationResult result;
  result.grid_value = best;

  // Refine the winning cell, alternating coordinates.
  const double d_theta = kPi / g;
  const double d_phi = kPi / g;
  double theta = best_theta, phi = best_phi;
  double value = best;
  for (int sweep = 0; sweep < 3; ++sweep) {
    const int iters = opts.refine_iterations / 3;
    theta = golden_max(
        [&](double x) { return scan.objective(std::clamp(x, 0.0, kPi), phi); },
        theta - d_theta, theta + d_theta, iters, nullptr);
    theta = std::clamp(theta, 0.0, kPi);
    phi = golden_max([&](double x) { return scan.objective(theta, x); }, phi - d_phi, phi + d_phi,
                     iters, &value);
  }
  if (value < best) {  // refinement never loses to the grid
    value = best;
    theta = best_theta;
    phi = best_phi;
  }
  result.value = value;
  result.argmax = MeasurementBasis{theta, phi < 0.0 ? phi + 2.0 * kPi : std::fmod(phi, 2.0 * kPi)};
  return result;
}

DiscordResult quantum_discord(const Matrix4& rho, const DiscordOptions& opts) {
  DiscordResult out;
  out.mutual_information = mutual_information(rho);
  ClassicalCorrelationResult cc = classical_correlation(rho, opts);
  if (cc.value < 0.0 && cc.value > -1e-9) cc.value = 0.0;
  out.classical_correlation = cc.value;
  out.argmax_basis = cc.argmax;
  double q = out.mutual_information - cc.value;
  const double upper = std::max(out.mutual_information, 0.0);
  if (q > upper && q - upper < 1e-9) q = upper;
  if (q < 0.0 && q > -1e-9) q = 0.0;
  out.discord = q;
  return out;
}

void fill_discord(Trajectory& traj, const DiscordOptions& opts) {
  for (size_t i = 0; i < traj.size(); ++i) {
    traj.discord[i] = quantum_discord(traj.states[i], opts).discord;
  }
}

}  // namespace discord_dyn
