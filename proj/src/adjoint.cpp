#include "awjm/adjoint.hpp"

#include <cmath>
#include <stdexcept>

namespace awjm {

Vector ControlLayout::pack(const ModelParams& p) const {
  Vector x(size());
  Index at = 0;
  if (a) x(at++) = p.a;
  if (k) x(at++) = p.k;
  if (e) x.segment(at, n_nodes) = p.e;
  return x;
}

ModelParams ControlLayout::unpack(const Vector& x, const ModelParams& base) const {
  if (x.size() != size()) throw std::invalid_argument("ControlLayout: flat vector size mismatch");
  ModelParams p = base;
  Index at = 0;
  if (a) p.a = x(at++);
  if (k) p.k = x(at++);
  if (e) p.e = x.segment(at, n_nodes);
  return p;
}

Vector ControlLayout::pack_gradient(Scalar grad_a, Scalar grad_k, const Vector& grad_e) const {
  Vector g(size());
  Index at = 0;
  if (a) g(at++) = grad_a;
  if (k) g(at++) = grad_k;
  if (e) g.segment(at, n_nodes) = grad_e;
  return g;
}

std::string ControlLayout::component_name(Index i) const {
  Index at = 0;
  if (a) {
    if (i == at) return "a";
    ++at;
  }
  if (k) {
    if (i == at) return "k";
    ++at;
  }
  return "E[" + std::to_string(i - at) + "]";
}

namespace {

// d(misfit)/dZ at the final level: 2 w .* (z - mean profile), where w holds the
// trapezoid weights. Independent and Superposed variants share this form, which
// is why the two multi-measurement costs have the same gradient.
Vector misfit_seed(const Vector& z_final, const MeasurementSet& meas, const Grid1D& grid) {
  Vector w = Vector::Constant(grid.n, grid.dx);
  w(0) *= 0.5;
  w(grid.n - 1) *= 0.5;
  return 2.0 * w.cwiseProduct(z_final - meas.mean_profile());
}

// Gradient of alpha * sum ((E_{i+1}-E_i)^2/dx) w.r.t. E.
Vector grad_reg_grad_e(const Vector& e, const Grid1D& grid, Scalar alpha) {
  const Index n = e.size();
  const Vector d = e.tail(n - 1) - e.head(n - 1);
  Vector g = Vector::Zero(n);
  const Scalar c = 2.0 * alpha / grid.dx;
  g.tail(n - 1) += c * d;
  g.head(n - 1) -= c * d;
  return g;
}

}  // namespace

GradientResult gradient(const ModelParams& params, const MeasurementSet& meas,
                        const CostSpec& spec, const Grid1D& grid, const TimeScheme& scheme) {
  spec.validate(grid);
  meas.validate();
  spec.check_consistent(meas);

  const Trajectory traj = forward(params, grid, scheme);
  const Index n = grid.n;
  const Index steps = scheme.n_steps;
  const Scalar dt = scheme.dt;
  const Scalar inv2dx = 1.0 / (2.0 * grid.dx);

  GradientResult out;
  out.cost = evaluate_at(traj.final_state(), params, meas, spec, grid);
  out.grad_e = Vector::Zero(n);

  Vector p = misfit_seed(traj.final_state(), meas, grid);
  p(0) = 0.0;
  p(n - 1) = 0.0;

  Vector s(n), v(n), gain(n), f(n), c(n), u(n), jtp(n);
  for (Index m = steps - 1; m >= 0; --m) {
    const auto z = traj.state(m);

    s.segment(1, n - 2) = (z.tail(n - 2) - z.head(n - 2)) * inv2dx;
    s(0) = (z(1) - z(0)) / grid.dx;
    s(n - 1) = (z(n - 1) - z(n - 2)) / grid.dx;
    v = s.array().square().log1p();
    gain = (params.a * z.array() - 0.5 * params.k * v.array()).exp();
    f = params.e.cwiseProduct(gain);
    f(0) = 0.0;
    f(n - 1) = 0.0;

    c = p.cwiseProduct(f);  // boundary entries vanish with f

    out.grad_a += dt * c.dot(z);
    out.grad_k += dt * -0.5 * c.dot(v);
    out.grad_e += dt * p.cwiseProduct(gain);

    // (dF/dZ)^T p: diagonal a*F term plus the transposed slope stencil.
    u = c.array() * (-params.k) * s.array() / (1.0 + s.array().square());
    u(0) = 0.0;
    u(n - 1) = 0.0;
    jtp = params.a * c;
    jtp.head(n - 1) -= u.tail(n - 1) * inv2dx;
    jtp.tail(n - 1) += u.head(n - 1) * inv2dx;

    p += dt * jtp;
    p(0) = 0.0;  // adjoint of the Dirichlet forcing
    p(n - 1) = 0.0;
  }
  // boundary rows of F are forced to zero, so E there never enters the misfit
  out.grad_e(0) = 0.0;
  out.grad_e(n - 1) = 0.0;

  if (spec.variant == CostVariant::BackgroundTikhonov) {
    const ModelParams& ub = *spec.background;
    if (spec.active.a) out.grad_a += 2.0 * spec.alpha * (params.a - ub.a);
    if (spec.active.k) out.grad_k += 2.0 * spec.alpha * (params.k - ub.k);
    if (spec.active.e) {
      Vector w = Vector::Constant(n, grid.dx);
      w(0) *= 0.5;
      w(n - 1) *= 0.5;
      out.grad_e += 2.0 * spec.alpha * w.cwiseProduct(params.e - ub.e);
    }
  } else if (spec.alpha > 0.0) {
    out.grad_e += grad_reg_grad_e(params.e, grid, spec.alpha);
  }

  if (!spec.active.a) out.grad_a = 0.0;
  if (!spec.active.k) out.grad_k = 0.0;
  if (!spec.active.e) out.grad_e.setZero();
  return out;
}

Vector step_jvp(const Vector& z, const ModelParams& params, const Grid1D& grid, Scalar dt,
                const Vector& dz, Scalar da, Scalar dk, const Vector& de) {
  const Index n = grid.n;
  const RhsParts parts = rhs_parts(z, params, grid);

  Vector ds(n);
  const Scalar inv2dx = 1.0 / (2.0 * grid.dx);
  ds.segment(1, n - 2) = (dz.tail(n - 2) - dz.head(n - 2)) * inv2dx;
  ds(0) = (dz(1) - dz(0)) / grid.dx;
  ds(n - 1) = (dz(n - 1) - dz(n - 2)) / grid.dx;

  Vector df = de.cwiseProduct(parts.gain) +
              parts.f.cwiseProduct(params.a * dz + da * z - 0.5 * dk * parts.log1ps2 -
                                   params.k *
                                       (parts.slope.array() /
                                        (1.0 + parts.slope.array().square()) * ds.array())
                                           .matrix());
  df(0) = 0.0;
  df(n - 1) = 0.0;
  return dz + dt * df;
}

StepVjp step_vjp(const Vector& z, const ModelParams& params, const Grid1D& grid, Scalar dt,
                 const Vector& w) {
  const Index n = grid.n;
  const Scalar inv2dx = 1.0 / (2.0 * grid.dx);
  const RhsParts parts = rhs_parts(z, params, grid);

  Vector c = w.cwiseProduct(parts.f);  // rows with forced-zero F contribute nothing

  StepVjp out;
  out.wa = dt * c.dot(z);
  out.wk = dt * -0.5 * c.dot(parts.log1ps2);
  out.we = dt * w.cwiseProduct(parts.gain);
  out.we(0) = 0.0;
  out.we(n - 1) = 0.0;

  Vector u = c.array() * (-params.k) * parts.slope.array() /
             (1.0 + parts.slope.array().square());
  u(0) = 0.0;
  u(n - 1) = 0.0;
  Vector jtw = params.a * c;
  jtw.head(n - 1) -= u.tail(n - 1) * inv2dx;
  jtw.tail(n - 1) += u.head(n - 1) * inv2dx;

  out.wz = w + dt * jtw;
  return out;
}

FdReport fd_check(const ModelParams& params, const MeasurementSet& meas, const CostSpec& spec,
                  const Grid1D& grid, const TimeScheme& scheme, Scalar h,
                  const FdSelection& select) {
  if (!(h > 0.0)) throw std::invalid_argument("fd_check: h must be positive");

  const GradientResult adj = gradient(params, meas, spec, grid, scheme);
  const ControlLayout layout = ControlLayout::make(spec.active, grid);
  const Vector g = layout.pack_gradient(adj.grad_a, adj.grad_k, adj.grad_e);
  const Vector x0 = layout.pack(params);

  // FD roundoff is ~eps*J/(2h); flat components would otherwise dominate the
  // relative error, so the denominator is floored at the gradient scale.
  const Scalar floor = 1e-4 * (1.0 + g.cwiseAbs().maxCoeff());

  std::vector<Index> indices;
  Index at = 0;
  if (layout.a) {
    if (select.a) indices.push_back(at);
    ++at;
  }
  if (layout.k) {
    if (select.k) indices.push_back(at);
    ++at;
  }
  if (layout.e) {
    if (select.e_indices.empty()) {
      for (Index i = 0; i < layout.n_nodes; ++i) indices.push_back(at + i);
    } else {
      for (Index i : select.e_indices) {
        if (i < 0 || i >= layout.n_nodes) throw std::invalid_argument("fd_check: bad E index");
        indices.push_back(at + i);
      }
    }
  }

  FdReport report;
  report.entries.reserve(indices.size());
  for (Index c : indices) {
    const Scalar hc = h * (1.0 + std::abs(x0(c)));
    Vector xp = x0, xm = x0;
    xp(c) += hc;
    xm(c) -= hc;
    const Scalar jp = evaluate(layout.unpack(xp, params), meas, spec, grid, scheme).total;
    const Scalar jm = evaluate(layout.unpack(xm, params), meas, spec, grid, scheme).total;
    const Scalar fd = (jp - jm) / (2.0 * hc);
    const Scalar denom = std::max({std::abs(g(c)), std::abs(fd), floor});
    FdEntry entry{layout.component_name(c), g(c), fd, std::abs(g(c) - fd) / denom};
    report.max_rel_error = std::max(report.max_rel_error, entry.rel_error);
    report.entries.push_back(std::move(entry));
  }
  return report;
}

}  // namespace awjm
