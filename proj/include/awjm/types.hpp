#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace awjm {

using Scalar = double;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

/// Thrown when a time integration produces a non-finite state.
class BlowupError : public std::runtime_error {
 public:
  BlowupError(Index step, Scalar time)
      : std::runtime_error("forward integration blew up at step " + std::to_string(step) +
                           " (t = " + std::to_string(time) + ")"),
        step(step),
        time(time) {}
  Index step;
  Scalar time;
};

/// Uniform 1D mesh on [x_min, x_max] with n nodes.
struct Grid1D {
  Scalar x_min{-1.0};
  Scalar x_max{1.0};
  Index n{0};
  Scalar dx{0.0};

  static Grid1D make(Scalar x_min, Scalar x_max, Index n) {
    Grid1D g;
    g.x_min = x_min;
    g.x_max = x_max;
    g.n = n;
    if (n >= 2) g.dx = (x_max - x_min) / static_cast<Scalar>(n - 1);
    g.validate();
    return g;
  }

  static Grid1D symmetric(Scalar half_width, Index n) { return make(-half_width, half_width, n); }

  Vector nodes() const { return Vector::LinSpaced(n, x_min, x_max); }

  void validate() const {
    if (n < 3) throw std::invalid_argument("Grid1D: need at least 3 nodes");
    if (!(x_max > x_min)) throw std::invalid_argument("Grid1D: x_max must exceed x_min");
    const Scalar expect = (x_max - x_min) / static_cast<Scalar>(n - 1);
    if (std::abs(dx - expect) > 1e-12 * expect)
      throw std::invalid_argument("Grid1D: dx inconsistent with (x_max - x_min)/(n - 1)");
  }

  bool operator==(const Grid1D&) const = default;
};

/// Fixed-step explicit time scheme over [0, t_end].
struct TimeScheme {
  Scalar t_end{1.0};
  Scalar dt{0.0};
  Index n_steps{0};

  static TimeScheme make(Scalar t_end, Index n_steps) {
    TimeScheme s;
    s.t_end = t_end;
    s.n_steps = n_steps;
    if (n_steps > 0) s.dt = t_end / static_cast<Scalar>(n_steps);
    s.validate();
    return s;
  }

  /// dt chosen as close as possible to dx^2/4 while keeping n_steps * dt == t_end.
  static TimeScheme quarter_dx2(const Grid1D& grid, Scalar t_end = 1.0) {
    const Scalar raw = grid.dx * grid.dx / 4.0;
    const auto steps = static_cast<Index>(std::llround(t_end / raw));
    return make(t_end, steps > 0 ? steps : 1);
  }

  void validate() const {
    if (!(dt > 0.0)) throw std::invalid_argument("TimeScheme: dt must be positive");
    if (n_steps < 1) throw std::invalid_argument("TimeScheme: need at least one step");
    if (std::abs(static_cast<Scalar>(n_steps) * dt - t_end) > 1e-10 * std::max(1.0, t_end))
      throw std::invalid_argument("TimeScheme: n_steps * dt != t_end");
  }

  bool operator==(const TimeScheme&) const = default;
};

/// Model controls u = {a, k, E}. `e` holds the etching rate per grid node.
struct ModelParams {
  Scalar a{0.0};
  Scalar k{0.0};
  Vector e;

  /// Shape/finiteness check; used everywhere the model is evaluated.
  void check_shape(const Grid1D& grid) const {
    if (e.size() != grid.n) throw std::invalid_argument("ModelParams: etch rate length != grid.n");
    if (!e.allFinite() || !std::isfinite(a) || !std::isfinite(k))
      throw std::invalid_argument("ModelParams: non-finite entries");
  }

  /// Full invariant check (admissible parameter set): a, k >= 0 and E >= 0.
  void validate(const Grid1D& grid) const {
    check_shape(grid);
    if (a < 0.0 || k < 0.0) throw std::invalid_argument("ModelParams: a and k must be nonnegative");
    if ((e.array() < 0.0).any()) throw std::invalid_argument("ModelParams: etch rate must be nonnegative");
  }
};

/// Full time history of the surface, one column per time level.
struct Trajectory {
  Grid1D grid;
  TimeScheme scheme;
  Matrix states;  // grid.n rows, scheme.n_steps + 1 columns

  Index n_states() const { return states.cols(); }
  Eigen::Ref<const Vector> state(Index m) const { return states.col(m); }
  Eigen::Ref<const Vector> final_state() const { return states.col(states.cols() - 1); }
};

}  // namespace awjm
