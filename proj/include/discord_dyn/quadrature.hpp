#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <set>
#include <vector>

#include <Eigen/Core>

#include "discord_dyn/errors.hpp"

namespace discord_dyn {

struct QuadratureOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  int max_panels = 400000;

  bool operator==(const QuadratureOptions&) const = default;
};

// One integration interval with its own integrand; callers supply several
// pieces when a change of variables is applied on part of the domain.
template <int N>
struct QuadPiece {
  double a;
  double b;
  std::function<Eigen::Array<double, N, 1>(double)> f;
};

namespace detail {

// Gauss-Kronrod 7-15 nodes on [0, 1] half-interval (symmetric rule).
inline constexpr double kKronrodNodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
inline constexpr double kKronrodWeights[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
// Gauss-7 weights for the even-indexed Kronrod nodes (1, 3, 5, 7).
inline constexpr double kGaussWeights[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

}  // namespace detail

// Evaluates the G7/K15 pair on [a, b]; returns the K15 estimate and stores the
// componentwise |K15 - G7| difference in err.
template <int N, class F>
Eigen::Array<double, N, 1> gauss_kronrod_15(const F& f, double a, double b,
                                            Eigen::Array<double, N, 1>& err) {
  using Sample = Eigen::Array<double, N, 1>;
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  Sample fc = f(mid);
  Sample k15 = detail::kKronrodWeights[7] * fc;
  Sample g7 = detail::kGaussWeights[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double dx = half * detail::kKronrodNodes[i];
    Sample pair = f(mid + dx) + f(mid - dx);
    k15 += detail::kKronrodWeights[i] * pair;
    if (i % 2 == 1) g7 += detail::kGaussWeights[i / 2] * pair;
  }
  k15 *= half;
  g7 *= half;
  err = (k15 - g7).abs();
  return k15;
}

// Globally adaptive vector-valued quadrature over a list of pieces. Bisects
// the panel with the worst error estimate until every component satisfies
// total_error <= max(abs_tol, rel_tol * |integral|). Throws QuadratureError
// when the panel budget runs out first.
template <int N>
Eigen::Array<double, N, 1> integrate_adaptive(const std::vector<QuadPiece<N>>& pieces,
                                              const QuadratureOptions& opts) {
  using Sample = Eigen::Array<double, N, 1>;

  struct Panel {
    double priority;  // max-component error, for ordering
    int piece;
    double a, b;
    Sample value;
    Sample error;
    bool operator<(const Panel& o) const {
      if (priority != o.priority) return priority > o.priority;
      if (piece != o.piece) return piece < o.piece;
      return a < o.a;
    }
  };

  std::set<Panel> panels;
  Sample total = Sample::Zero();
  Sample total_err = Sample::Zero();

  auto push = [&](int piece, double a, double b) {
    Sample err;
    Sample val = gauss_kronrod_15<N>(pieces[static_cast<size_t>(piece)].f, a, b, err);
    panels.insert(Panel{err.maxCoeff(), piece, a, b, val, err});
    total += val;
    total_err += err;
  };

  for (size_t i = 0; i < pieces.size(); ++i) {
    if (!(pieces[i].b > pieces[i].a)) continue;
    push(static_cast<int>(i), pieces[i].a, pieces[i].b);
  }

  auto converged = [&]() {
    for (int c = 0; c < N; ++c) {
      const double tol = std::max(opts.abs_tol, opts.rel_tol * std::abs(total[c]));
      if (total_err[c] > tol) return false;
    }
    return true;
  };

  while (!converged()) {
    if (static_cast<int>(panels.size()) >= opts.max_panels) {
      throw QuadratureError("integrate_adaptive: tolerance not reached within panel budget");
    }
    Panel worst = *panels.begin();
    panels.erase(panels.begin());
    total -= worst.value;
    total_err -= worst.error;
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      // Interval exhausted at machine precision; keep its estimate.
      panels.insert(worst);
      total += worst.value;
      total_err += worst.error;
      break;
    }
    push(worst.piece, worst.a, mid);
    push(worst.piece, mid, worst.b);
  }
  return total;
}

inline double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                 const QuadratureOptions& opts = {}) {
  std::vector<QuadPiece<1>> pieces{
      {a, b, [&f](double x) { return Eigen::Array<double, 1, 1>{f(x)}; }}};
  return integrate_adaptive<1>(pieces, opts)[0];
}

}  // namespace discord_dyn
