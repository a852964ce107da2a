#include "awjm/datagen.hpp"

#include <algorithm>
#include <stdexcept>

namespace awjm {

std::string to_string(CombineMode mode) {
  switch (mode) {
    case CombineMode::Single: return "single";
    case CombineMode::Independent: return "independent";
    case CombineMode::Superposed: return "superposed";
  }
  return "?";
}

CombineMode combine_from_string(const std::string& name) {
  if (name == "single") return CombineMode::Single;
  if (name == "independent") return CombineMode::Independent;
  if (name == "superposed") return CombineMode::Superposed;
  throw std::invalid_argument("unknown combine mode: " + name);
}

std::string to_string(NoiseMode mode) {
  return mode == NoiseMode::PostHoc ? "posthoc" : "dynamic";
}

NoiseMode noise_mode_from_string(const std::string& name) {
  if (name == "posthoc") return NoiseMode::PostHoc;
  if (name == "dynamic") return NoiseMode::Dynamic;
  throw std::invalid_argument("unknown noise mode: " + name);
}

void MeasurementSet::validate() const {
  grid.validate();
  if (profiles.empty()) throw std::invalid_argument("MeasurementSet: no profiles");
  for (const auto& p : profiles) {
    if (p.size() != grid.n) throw std::invalid_argument("MeasurementSet: profile length != grid.n");
    if (!p.allFinite()) throw std::invalid_argument("MeasurementSet: non-finite profile");
  }
  if (combine == CombineMode::Single && profiles.size() != 1)
    throw std::invalid_argument("MeasurementSet: Single requires exactly one profile");
  if (combine != CombineMode::Single && profiles.size() < 2)
    throw std::invalid_argument("MeasurementSet: Independent/Superposed require >= 2 profiles");
}

Vector MeasurementSet::mean_profile() const {
  Vector m = Vector::Zero(grid.n);
  for (const auto& p : profiles) m += p;
  return m / static_cast<Scalar>(profiles.size());
}

EtchPresetKind etch_preset_from_string(const std::string& name) {
  if (name == "zero") return EtchPresetKind::Zero;
  if (name == "gaussian") return EtchPresetKind::GaussianBump;
  if (name == "gapped") return EtchPresetKind::GappedBump;
  throw std::invalid_argument("unknown etch preset: " + name);
}

std::string to_string(EtchPresetKind kind) {
  switch (kind) {
    case EtchPresetKind::Zero: return "zero";
    case EtchPresetKind::GaussianBump: return "gaussian";
    case EtchPresetKind::GappedBump: return "gapped";
  }
  return "?";
}

Vector etch_preset(EtchPresetKind kind, const Grid1D& grid, Scalar amplitude, Scalar sigma) {
  grid.validate();
  const Vector x = grid.nodes();
  switch (kind) {
    case EtchPresetKind::Zero:
      return Vector::Zero(grid.n);
    case EtchPresetKind::GaussianBump:
      return amplitude * (-x.array().square() / (sigma * sigma)).exp();
    case EtchPresetKind::GappedBump: {
      // Two notches at +-0.55 h, h = max extent; they model the etch-rate dips
      // observed at the trench edges.
      const Scalar h = std::max(std::abs(grid.x_min), std::abs(grid.x_max));
      const Scalar gap_center = 0.55 * h;
      const Scalar gap_width = 0.12 * h;
      const Scalar gap_depth = 0.92;
      auto bump = amplitude * (-x.array().square() / (sigma * sigma)).exp();
      auto notches = 1.0 -
                     gap_depth * ((-(x.array() - gap_center).square() / (gap_width * gap_width)).exp() +
                                  (-(x.array() + gap_center).square() / (gap_width * gap_width)).exp());
      return bump * notches;
    }
  }
  throw std::invalid_argument("unknown etch preset");
}

Vector generate_clean(const ModelParams& params, const Grid1D& grid, const TimeScheme& scheme) {
  return forward(params, grid, scheme).final_state();
}

Vector add_noise(const Vector& z_clean, const NoiseSpec& spec, const ModelParams& params,
                 const Grid1D& grid, const TimeScheme& scheme) {
  spec.validate();
  if (z_clean.size() != grid.n) throw std::invalid_argument("add_noise: profile length != grid.n");
  if (spec.level_percent == 0.0) return z_clean;

  GaussianRng rng(spec.seed);
  const Index n = grid.n;

  if (spec.mode == NoiseMode::PostHoc) {
    const Scalar scale = spec.level_percent / 100.0 * z_clean.cwiseAbs().maxCoeff();
    Vector out = z_clean;
    for (Index i = 1; i < n - 1; ++i) out(i) += scale * rng.next();
    return out;
  }

  // Dynamic: the calibrated noise enters the recursion as an extra source term.
  const Scalar lambda = spec.level_percent / 100.0 * params.e.maxCoeff();
  Vector z = Vector::Zero(n);
  for (Index m = 0; m < scheme.n_steps; ++m) {
    Vector f = rhs(z, params, grid);
    for (Index i = 1; i < n - 1; ++i) f(i) += lambda * rng.next();
    z += scheme.dt * f;
    if (!z.allFinite()) throw BlowupError(m + 1, static_cast<Scalar>(m + 1) * scheme.dt);
  }
  return z;
}

MeasurementSet make_measurement_set(const ModelParams& params, const Grid1D& grid,
                                    const TimeScheme& scheme, const NoiseSpec& spec, int count,
                                    CombineMode combine) {
  if (count < 1) throw std::invalid_argument("make_measurement_set: count must be >= 1");
  const Vector clean = generate_clean(params, grid, scheme);

  MeasurementSet set;
  set.grid = grid;
  set.combine = combine;
  set.profiles.reserve(count);
  for (int r = 0; r < count; ++r) {
    NoiseSpec sub = spec;
    sub.seed = GaussianRng::substream(spec.seed, static_cast<std::uint64_t>(r));
    set.profiles.push_back(add_noise(clean, sub, params, grid, scheme));
  }
  set.validate();
  return set;
}

}  // namespace awjm
