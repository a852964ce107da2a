#pragma once

#include <vector>

#include "awjm/types.hpp"

namespace awjm {

// The surface evolution model
//
//   dZ/dt = E(x) exp(a Z) / (1 + Z_x^2)^(k/2),   Z = 0 on the boundary, Z(0) = Z0,
//
// discretized with central differences for Z_x at interior nodes (one-sided at the
// two boundary nodes) and explicit Euler in time. The right-hand side is forced to
// zero at the boundary nodes so the Dirichlet condition is preserved exactly.

/// Discrete slope Z_x: central differences inside, first-order one-sided at the ends.
Vector slopes(const Vector& z, const Grid1D& grid);

/// Per-node pieces of the right-hand side, shared with the adjoint sweep.
/// gain = exp(a z - (k/2) log(1 + s^2)), f = E .* gain with boundary entries zeroed.
struct RhsParts {
  Vector slope;    // s
  Vector log1ps2;  // log(1 + s^2)
  Vector gain;     // dF/dE on interior nodes
  Vector f;
};

RhsParts rhs_parts(const Vector& z, const ModelParams& params, const Grid1D& grid);

/// F(z): etch speed per node, zero at the boundary.
Vector rhs(const Vector& z, const ModelParams& params, const Grid1D& grid);

/// Explicit Euler integration keeping the whole history (the adjoint needs it).
/// Throws BlowupError when a state stops being finite.
Trajectory forward(const ModelParams& params, const Grid1D& grid, const TimeScheme& scheme,
                   const Vector& z0);

/// Convenience overload starting from the flat surface Z0 = 0.
Trajectory forward(const ModelParams& params, const Grid1D& grid, const TimeScheme& scheme);

// --- 2D forward mode (demonstration only; no adjoint) ---

struct Grid2D {
  Grid1D x;
  Grid1D y;
};

struct Params2D {
  Scalar a{0.0};
  Scalar k{0.0};
  Matrix e;  // x.n rows, y.n columns
};

struct Trajectory2D {
  Grid2D grid;
  TimeScheme scheme;
  std::vector<Matrix> states;

  const Matrix& final_state() const { return states.back(); }
};

/// |grad Z|^2 = Z_x^2 + Z_y^2 with the same stencil rules per direction;
/// the boundary ring is forced to zero.
Matrix rhs2d(const Matrix& z, const Params2D& params, const Grid2D& grid);

Trajectory2D forward2d(const Params2D& params, const Grid2D& grid, const TimeScheme& scheme,
                       const Matrix& z0);

}  // namespace awjm
