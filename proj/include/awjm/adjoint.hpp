#pragma once

#include <string>
#include <vector>

#include "awjm/cost.hpp"
#include "awjm/datagen.hpp"
#include "awjm/model.hpp"
#include "awjm/types.hpp"

namespace awjm {

/// Flat layout of the active controls: [a][k][E_0 .. E_{n-1}], inactive parts absent.
struct ControlLayout {
  bool a{false};
  bool k{false};
  bool e{false};
  Index n_nodes{0};

  static ControlLayout make(const ActiveControls& active, const Grid1D& grid) {
    return ControlLayout{active.a, active.k, active.e, grid.n};
  }

  Index size() const { return (a ? 1 : 0) + (k ? 1 : 0) + (e ? n_nodes : 0); }
  Index e_offset() const { return (a ? 1 : 0) + (k ? 1 : 0); }

  Vector pack(const ModelParams& p) const;
  /// Rebuilds full params from a flat vector, copying inactive parts from `base`.
  ModelParams unpack(const Vector& x, const ModelParams& base) const;
  Vector pack_gradient(Scalar grad_a, Scalar grad_k, const Vector& grad_e) const;
  std::string component_name(Index i) const;
};

struct GradientResult {
  CostBreakdown cost;
  Scalar grad_a{0.0};
  Scalar grad_k{0.0};
  Vector grad_e;
};

/// Exact gradient of the discrete cost by a reverse sweep over the stored
/// trajectory: P^m = P^{m+1} + dt (dF/dZ|_{Z^m})^T P^{m+1}, seeded at the final
/// level with the misfit derivative; control gradients accumulate dt (dF/du)^T P.
/// Inactive controls report a zero gradient.
GradientResult gradient(const ModelParams& params, const MeasurementSet& meas,
                        const CostSpec& spec, const Grid1D& grid, const TimeScheme& scheme);

// Single Euler-step linearizations. Used by the transpose test and kept in
// exact correspondence with the sweep above.

/// Tangent of z' = z + dt F(z; a,k,E) in direction (dz, da, dk, de).
Vector step_jvp(const Vector& z, const ModelParams& params, const Grid1D& grid, Scalar dt,
                const Vector& dz, Scalar da, Scalar dk, const Vector& de);

struct StepVjp {
  Vector wz;   // (dS/dz)^T w
  Scalar wa{0.0};
  Scalar wk{0.0};
  Vector we;
};

/// Exact transpose of the step linearization applied to w (no boundary zeroing).
StepVjp step_vjp(const Vector& z, const ModelParams& params, const Grid1D& grid, Scalar dt,
                 const Vector& w);

struct FdSelection {
  bool a{true};
  bool k{true};
  std::vector<Index> e_indices;  // empty = every node
};

struct FdEntry {
  std::string component;
  Scalar adjoint{0.0};
  Scalar fd{0.0};
  Scalar rel_error{0.0};
};

struct FdReport {
  std::vector<FdEntry> entries;
  Scalar max_rel_error{0.0};
};

/// Central-difference check of the adjoint gradient, step h*(1+|u_c|) per
/// component. Inactive controls are skipped (both sides report zero). The
/// relative error uses max(|adjoint|, |fd|, floor) with a floor tied to the
/// gradient scale so roundoff in flat components does not drown the check.
FdReport fd_check(const ModelParams& params, const MeasurementSet& meas, const CostSpec& spec,
                  const Grid1D& grid, const TimeScheme& scheme, Scalar h  = 1e-6,
                  const FdSelection& select = {});

}  // namespace awjm
