#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "awjm/model.hpp"
#include "awjm/types.hpp"

namespace awjm {

/// Seeded standard-normal stream (Box-Muller over mt19937_64). The standard
/// distributions are not bit-stable across library implementations, this is.
class GaussianRng {
 public:
  explicit GaussianRng(std::uint64_t seed) : gen_(seed) {}

  Scalar next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const Scalar u1 = 1.0 - uniform01();  // (0, 1], keeps log() finite
    const Scalar u2 = uniform01();
    const Scalar r = std::sqrt(-2.0 * std::log(u1));
    const Scalar theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

  /// Stream for realization `index` derived from `seed` (splitmix64 mix).
  static std::uint64_t substream(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t x = seed + 0x9E3779B97F4A7C15ull * (index + 1);
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ull;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBull;
    x ^= x >> 31;
    return x;
  }

 private:
  Scalar uniform01() { return static_cast<Scalar>(gen_() >> 11) * 0x1.0p-53; }

  std::mt19937_64 gen_;
  bool have_spare_{false};
  Scalar spare_{0.0};
};

enum class NoiseMode { PostHoc, Dynamic };

struct NoiseSpec {
  Scalar level_percent{0.0};
  NoiseMode mode{NoiseMode::PostHoc};
  std::uint64_t seed{0};

  void validate() const {
    if (level_percent < 0.0) throw std::invalid_argument("NoiseSpec: level_percent must be >= 0");
  }
};

enum class CombineMode { Single, Independent, Superposed };

std::string to_string(CombineMode mode);
CombineMode combine_from_string(const std::string& name);
std::string to_string(NoiseMode mode);
NoiseMode noise_mode_from_string(const std::string& name);

/// One or more trench measurements of the same experiment on a shared grid.
struct MeasurementSet {
  std::vector<Vector> profiles;
  CombineMode combine{CombineMode::Single};
  Grid1D grid;

  void validate() const;
  Vector mean_profile() const;
};

enum class EtchPresetKind { Zero, GaussianBump, GappedBump };

EtchPresetKind etch_preset_from_string(const std::string& name);
std::string to_string(EtchPresetKind kind);

/// Built-in etching-rate shapes. GaussianBump is amplitude*exp(-x^2/sigma^2);
/// GappedBump multiplies it by a smooth mask with two symmetric notches near
/// the trench edges.
Vector etch_preset(EtchPresetKind kind, const Grid1D& grid, Scalar amplitude = 1.0,
                   Scalar sigma = 0.25);

/// Noise-free trench profile Z(., t_end) from a flat start.
Vector generate_clean(const ModelParams& params, const Grid1D& grid, const TimeScheme& scheme);

/// PostHoc: z + (level/100)*max|z| * eps per interior node. Dynamic: re-runs the
/// recursion with a fresh (level/100)*max(E) * eps source each step. Boundary
/// nodes stay exactly zero in both modes.
Vector add_noise(const Vector& z_clean, const NoiseSpec& spec, const ModelParams& params,
                 const Grid1D& grid, const TimeScheme& scheme);

/// `count` independent noisy realizations of one experiment, seeds derived per
/// realization from (spec.seed, index).
MeasurementSet make_measurement_set(const ModelParams& params, const Grid1D& grid,
                                    const TimeScheme& scheme, const NoiseSpec& spec, int count,
                                    CombineMode combine);

}  // namespace awjm
