#include "awjm/cost.hpp"

#include <cmath>
#include <stdexcept>

#include "awjm/model.hpp"

namespace awjm {

std::string to_string(CostVariant v) {
  switch (v) {
    case CostVariant::BackgroundTikhonov: return "background-tikhonov";
    case CostVariant::GradE: return "grad-e";
    case CostVariant::MultiIndependent: return "multi-independent";
    case CostVariant::MultiSuperposed: return "multi-superposed";
  }
  return "?";
}

CostVariant cost_variant_from_string(const std::string& name) {
  if (name == "background-tikhonov") return CostVariant::BackgroundTikhonov;
  if (name == "grad-e") return CostVariant::GradE;
  if (name == "multi-independent") return CostVariant::MultiIndependent;
  if (name == "multi-superposed") return CostVariant::MultiSuperposed;
  throw std::invalid_argument("unknown cost variant: " + name);
}

void CostSpec::validate(const Grid1D& grid) const {
  if (alpha < 0.0) throw std::invalid_argument("CostSpec: alpha must be >= 0");
  if (variant == CostVariant::BackgroundTikhonov) {
    if (!background) throw std::invalid_argument("CostSpec: BackgroundTikhonov needs a background");
    background->check_shape(grid);
  }
  if (!active.a && !active.k && !active.e)
    throw std::invalid_argument("CostSpec: at least one control must be active");
}

void CostSpec::check_consistent(const MeasurementSet& meas) const {
  switch (meas.combine) {
    case CombineMode::Single:
      return;  // any variant may consume a single measurement
    case CombineMode::Independent:
      if (variant != CostVariant::MultiIndependent)
        throw std::invalid_argument("cost: Independent measurements need the multi-independent variant");
      return;
    case CombineMode::Superposed:
      if (variant != CostVariant::MultiSuperposed)
        throw std::invalid_argument("cost: Superposed measurements need the multi-superposed variant");
      return;
  }
}

Scalar trapezoid(const Vector& f, const Grid1D& grid) {
  if (f.size() != grid.n) throw std::invalid_argument("trapezoid: length != grid.n");
  return grid.dx * (f.sum() - 0.5 * (f(0) + f(f.size() - 1)));
}

Scalar misfit_l2(const Vector& z, const Vector& z_exp, const Grid1D& grid) {
  if (z.size() != z_exp.size()) throw std::invalid_argument("misfit_l2: length mismatch");
  Vector d2 = (z - z_exp).array().square();
  return trapezoid(d2, grid);
}

Scalar relative_l2_error(const Vector& z, const Vector& ref, const Grid1D& grid) {
  const Scalar num = misfit_l2(z, ref, grid);
  Vector r2 = ref.array().square();
  const Scalar den = trapezoid(r2, grid);
  if (den <= 0.0) return std::sqrt(num);
  return std::sqrt(num / den);
}

Scalar grad_seminorm_sq(const Vector& e, const Grid1D& grid) {
  if (e.size() != grid.n) throw std::invalid_argument("grad_seminorm_sq: length != grid.n");
  const Index n = grid.n;
  return (e.tail(n - 1) - e.head(n - 1)).squaredNorm() / grid.dx;
}

Scalar background_norm_sq(const ModelParams& u, const ModelParams& u_b,
                          const ActiveControls& active, const Grid1D& grid) {
  Scalar out = 0.0;
  if (active.a) out += (u.a - u_b.a) * (u.a - u_b.a);
  if (active.k) out += (u.k - u_b.k) * (u.k - u_b.k);
  if (active.e) {
    Vector d2 = (u.e - u_b.e).array().square();
    out += trapezoid(d2, grid);
  }
  return out;
}

Scalar misfit_term(const Vector& z_final, const MeasurementSet& meas, const CostSpec& spec,
                   const Grid1D& grid) {
  meas.validate();
  spec.check_consistent(meas);
  switch (meas.combine) {
    case CombineMode::Single:
      return misfit_l2(z_final, meas.profiles.front(), grid);
    case CombineMode::Independent: {
      Scalar sum = 0.0;
      for (const auto& p : meas.profiles) sum += misfit_l2(z_final, p, grid);
      return sum / static_cast<Scalar>(meas.profiles.size());
    }
    case CombineMode::Superposed:
      return misfit_l2(z_final, meas.mean_profile(), grid);
  }
  throw std::logic_error("unreachable");
}

CostBreakdown evaluate_at(const Vector& z_final, const ModelParams& params,
                          const MeasurementSet& meas, const CostSpec& spec, const Grid1D& grid) {
  spec.validate(grid);
  CostBreakdown out;
  out.misfit = misfit_term(z_final, meas, spec, grid);
  if (spec.variant == CostVariant::BackgroundTikhonov) {
    out.regularization = spec.alpha * background_norm_sq(params, *spec.background, spec.active, grid);
  } else {
    out.regularization = spec.alpha * grad_seminorm_sq(params.e, grid);
  }
  out.total = out.misfit + out.regularization;
  return out;
}

CostBreakdown evaluate(const ModelParams& params, const MeasurementSet& meas, const CostSpec& spec,
                       const Grid1D& grid, const TimeScheme& scheme) {
  const Trajectory traj = forward(params, grid, scheme);
  return evaluate_at(traj.final_state(), params, meas, spec, grid);
}

}  // namespace awjm
