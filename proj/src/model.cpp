#include "awjm/model.hpp"

#include <stdexcept>
#include <string>

namespace awjm {

namespace {

void check_profile(const Vector& z, const Grid1D& grid, const char* what) {
  if (z.size() != grid.n)
    throw std::invalid_argument(std::string(what) + ": length != grid.n");
  if (!z.allFinite()) throw std::invalid_argument(std::string(what) + ": non-finite entries");
}

// Scratch buffers so the time loop stays allocation-free.
struct RhsWorkspace {
  Vector slope, log1ps2, gain, f;

  void resize(Index n) {
    slope.resize(n);
    log1ps2.resize(n);
    gain.resize(n);
    f.resize(n);
  }

  void compute(const Vector& z, const ModelParams& p, const Grid1D& grid) {
    const Index n = grid.n;
    const Scalar inv2dx = 1.0 / (2.0 * grid.dx);
    slope.segment(1, n - 2) = (z.tail(n - 2) - z.head(n - 2)) * inv2dx;
    slope(0) = (z(1) - z(0)) / grid.dx;
    slope(n - 1) = (z(n - 1) - z(n - 2)) / grid.dx;
    log1ps2 = slope.array().square().log1p();
    gain = (p.a * z.array() - 0.5 * p.k * log1ps2.array()).exp();
    f = p.e.cwiseProduct(gain);
    f(0) = 0.0;
    f(n - 1) = 0.0;
  }
};

}  // namespace

Vector slopes(const Vector& z, const Grid1D& grid) {
  check_profile(z, grid, "slopes");
  const Index n = grid.n;
  Vector s(n);
  s.segment(1, n - 2) = (z.tail(n - 2) - z.head(n - 2)) / (2.0 * grid.dx);
  s(0) = (z(1) - z(0)) / grid.dx;
  s(n - 1) = (z(n - 1) - z(n - 2)) / grid.dx;
  return s;
}

RhsParts rhs_parts(const Vector& z, const ModelParams& params, const Grid1D& grid) {
  check_profile(z, grid, "rhs");
  params.check_shape(grid);
  RhsWorkspace w;
  w.resize(grid.n);
  w.compute(z, params, grid);
  return RhsParts{std::move(w.slope), std::move(w.log1ps2), std::move(w.gain), std::move(w.f)};
}

Vector rhs(const Vector& z, const ModelParams& params, const Grid1D& grid) {
  return rhs_parts(z, params, grid).f;
}

Trajectory forward(const ModelParams& params, const Grid1D& grid, const TimeScheme& scheme,
                   const Vector& z0) {
  grid.validate();
  scheme.validate();
  params.check_shape(grid);
  check_profile(z0, grid, "forward z0");
  if (z0(0) != 0.0 || z0(grid.n - 1) != 0.0)
    throw std::invalid_argument("forward: z0 must vanish at the boundary");

  const double bytes = static_cast<double>(grid.n) * static_cast<double>(scheme.n_steps + 1) * 8.0;
  if (bytes > 4e9) throw std::invalid_argument("forward: trajectory would exceed 4 GB");

  Trajectory traj;
  traj.grid = grid;
  traj.scheme = scheme;
  traj.states.resize(grid.n, scheme.n_steps + 1);
  traj.states.col(0) = z0;

  Vector z = z0;
  RhsWorkspace w;
  w.resize(grid.n);
  for (Index m = 0; m < scheme.n_steps; ++m) {
    w.compute(z, params, grid);
    z += scheme.dt * w.f;
    if (!z.allFinite())
      throw BlowupError(m + 1, static_cast<Scalar>(m + 1) * scheme.dt);
    traj.states.col(m + 1) = z;
  }
  return traj;
}

Trajectory forward(const ModelParams& params, const Grid1D& grid, const TimeScheme& scheme) {
  return forward(params, grid, scheme, Vector::Zero(grid.n));
}

Matrix rhs2d(const Matrix& z, const Params2D& params, const Grid2D& grid) {
  const Index nx = grid.x.n;
  const Index ny = grid.y.n;
  if (z.rows() != nx || z.cols() != ny) throw std::invalid_argument("rhs2d: shape mismatch");
  if (params.e.rows() != nx || params.e.cols() != ny)
    throw std::invalid_argument("rhs2d: etch rate shape mismatch");

  Matrix sx(nx, ny), sy(nx, ny);
  sx.middleRows(1, nx - 2) = (z.bottomRows(nx - 2) - z.topRows(nx - 2)) / (2.0 * grid.x.dx);
  sx.row(0) = (z.row(1) - z.row(0)) / grid.x.dx;
  sx.row(nx - 1) = (z.row(nx - 1) - z.row(nx - 2)) / grid.x.dx;
  sy.middleCols(1, ny - 2) = (z.rightCols(ny - 2) - z.leftCols(ny - 2)) / (2.0 * grid.y.dx);
  sy.col(0) = (z.col(1) - z.col(0)) / grid.y.dx;
  sy.col(ny - 1) = (z.col(ny - 1) - z.col(ny - 2)) / grid.y.dx;

  Matrix f = params.e.array() *
             (params.a * z.array() -
              0.5 * params.k * (sx.array().square() + sy.array().square()).log1p())
                 .exp();
  f.row(0).setZero();
  f.row(nx - 1).setZero();
  f.col(0).setZero();
  f.col(ny - 1).setZero();
  return f;
}

Trajectory2D forward2d(const Params2D& params, const Grid2D& grid, const TimeScheme& scheme,
                       const Matrix& z0) {
  grid.x.validate();
  grid.y.validate();
  scheme.validate();
  const double bytes = static_cast<double>(grid.x.n) * grid.y.n * (scheme.n_steps + 1) * 8.0;
  if (bytes > 4e9) throw std::invalid_argument("forward2d: trajectory would exceed 4 GB");

  Trajectory2D traj;
  traj.grid = grid;
  traj.scheme = scheme;
  traj.states.reserve(scheme.n_steps + 1);
  traj.states.push_back(z0);

  Matrix z = z0;
  for (Index m = 0; m < scheme.n_steps; ++m) {
    z += scheme.dt * rhs2d(z, params, grid);
    if (!z.allFinite())
      throw BlowupError(m + 1, static_cast<Scalar>(m + 1) * scheme.dt);
    traj.states.push_back(z);
  }
  return traj;
}

}  // namespace awjm
