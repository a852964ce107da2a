#pragma once

#include <optional>
#include <string>

#include "awjm/datagen.hpp"
#include "awjm/types.hpp"

namespace awjm {

// Cost variants:
//   BackgroundTikhonov  misfit + alpha ||u - u_b||^2
//   GradE               misfit + alpha ||grad E||^2
//   MultiIndependent    (1/N) sum_i misfit_i + alpha ||grad E||^2
//   MultiSuperposed     misfit against the averaged profile + alpha ||grad E||^2
enum class CostVariant { BackgroundTikhonov, GradE, MultiIndependent, MultiSuperposed };

std::string to_string(CostVariant v);
CostVariant cost_variant_from_string(const std::string& name);

struct ActiveControls {
  bool a{true};
  bool k{true};
  bool e{true};
};

struct CostSpec {
  CostVariant variant{CostVariant::GradE};
  Scalar alpha{0.0};
  std::optional<ModelParams> background;  // u_b, required iff BackgroundTikhonov
  ActiveControls active{};

  void validate(const Grid1D& grid) const;
  /// Checks the measurement combine mode is admissible for this variant.
  void check_consistent(const MeasurementSet& meas) const;
};

struct CostBreakdown {
  Scalar misfit{0.0};
  Scalar regularization{0.0};
  Scalar total{0.0};
};

/// Trapezoidal quadrature of f over the grid.
Scalar trapezoid(const Vector& f, const Grid1D& grid);

/// Integral of (z - z_exp)^2 over the grid (trapezoid).
Scalar misfit_l2(const Vector& z, const Vector& z_exp, const Grid1D& grid);

/// sqrt(int (z - ref)^2 / int ref^2); the reconstruction-error metric.
Scalar relative_l2_error(const Vector& z, const Vector& ref, const Grid1D& grid);

/// Integral of (E')^2 with forward differences: sum ((E_{i+1}-E_i)/dx)^2 dx.
Scalar grad_seminorm_sq(const Vector& e, const Grid1D& grid);

/// (a-a_b)^2 + (k-k_b)^2 + int (E-E_b)^2 dx, restricted to active controls.
Scalar background_norm_sq(const ModelParams& u, const ModelParams& u_b,
                          const ActiveControls& active, const Grid1D& grid);

/// Misfit part of the cost given the final surface.
Scalar misfit_term(const Vector& z_final, const MeasurementSet& meas, const CostSpec& spec,
                   const Grid1D& grid);

/// Cost at the final surface, without re-running the model.
CostBreakdown evaluate_at(const Vector& z_final, const ModelParams& params,
                          const MeasurementSet& meas, const CostSpec& spec, const Grid1D& grid);

/// Full evaluation: integrates the model from a flat start, then assembles the cost.
CostBreakdown evaluate(const ModelParams& params, const MeasurementSet& meas, const CostSpec& spec,
                       const Grid1D& grid, const TimeScheme& scheme);

}  // namespace awjm
