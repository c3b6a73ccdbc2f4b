#pragma once

// Convergence sweeps: Q_{r,p}(f) on a geometric grid of radii, extrapolated
// to r -> 0 and compared with C * Ch_p(f).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bbm/energy.hpp"
#include "bbm/estimate.hpp"
#include "bbm/extrapolate.hpp"
#include "bbm/parallel.hpp"
#include "bbm/test_function.hpp"

namespace bbm {

struct SweepConfig {
  PresetSpec space;
  PresetSpec function;
  double p = 2.0;
  double r_max = 0.5;
  std::optional<double> r_min;  // required
  int levels = 5;
  std::size_t outer_samples = 1u << 20;
  std::size_t inner_samples = 1;
  std::uint64_t seed = 1;
  /// Relative pass tolerance; defaults to 0.02 for Euclidean tangents and
  /// 0.05 for H^1 tangents.
  std::optional<double> tolerance;
  double residual_bound = 10.0;
  std::size_t constant_samples = 1000000;  // H^1 constant
  std::size_t cheeger_samples = 1u << 20;  // Monte-Carlo Cheeger energy

  /// UsageError unless 0 < r_min < r_max, levels >= 3, p > 1 and the sample
  /// counts are positive.
  void validate() const;
  /// r_max (r_min / r_max)^{k / (levels - 1)}, k = 0 .. levels - 1.
  [[nodiscard]] std::vector<double> radii() const;

  friend bool operator==(const SweepConfig&, const SweepConfig&) = default;
};

struct SweepPoint {
  double r;
  EnergyEstimate estimate;
};

/// The reference C * Ch_p(f) and where its factors came from.
struct Reference {
  std::string tangent;
  double constant = 0.0;
  double constant_sigma = 0.0;
  std::string constant_source;  // "closed-form" or "monte-carlo"
  std::size_t constant_samples = 0;
  double cheeger = 0.0;
  double cheeger_sigma = 0.0;
  std::string cheeger_source;  // "quadrature", "monte-carlo" or "exact"
  std::size_t cheeger_samples = 0;
  double value = 0.0;
  double value_sigma = 0.0;
};

struct UniformBoundCheck {
  double constant = 1.0;
  double bound = 0.0;  // constant * Ch
  double max_quotient = 0.0;
  bool violated = false;
};

struct SweepReport {
  SweepConfig config;  // with the tolerance resolved
  std::vector<SweepPoint> points;
  Extrapolation fit{};
  Reference reference;
  UniformBoundCheck uniform_bound;
  double deviation = 0.0;  // (L - reference) / |reference|
  bool pass = false;
};

/// All radii share one random stream (common random numbers), so the
/// per-radius errors are strongly correlated and the extrapolation sees a
/// smooth curve; the per-point std_error is still the marginal one.
/// The Cheeger energy and the H^1 constant use separate substreams.
/// Errors: UsageError for invalid configs or presets, UnsupportedRegime for
/// unsupported space/function pairs.
SweepReport run_sweep(const SweepConfig& config, const Execution& exec = {});

/// Relative tolerance used when the config leaves it open.
double default_tolerance(const TangentLabel& tangent);

/// pass iff |limit - reference| <= tolerance * |reference|, where limit is
/// the fitted limit, or the smallest-r value when the fit residual exceeds
/// its bound.
bool sweep_verdict(double limit, double reference, double tolerance);

// ---------------------------------------------------------------------------
// Glued space: one constant per side

/// Sweeps of a bump on the R^4 side and of a bump on the H^1 side of the
/// glued space, each with support farther than 2 r_max from the seam.
struct GluedDemo {
  double p = 4.0;
  SweepReport euclidean_side;
  SweepReport heisenberg_side;
  /// limit / Ch for each side, with the fit uncertainty carried through.
  double ratio_euclidean = 0.0;
  double ratio_euclidean_sigma = 0.0;
  double ratio_heisenberg = 0.0;
  double ratio_heisenberg_sigma = 0.0;
  /// |ratio difference| / combined sigma.
  double separation = 0.0;
  bool pass = false;  // both sweeps pass and separation >= 3
};

/// The two sweep configurations used by run_glued_demo.
std::vector<SweepConfig> glued_demo_configs(double p, std::uint64_t seed);
GluedDemo run_glued_demo(double p, std::uint64_t seed, const Execution& exec = {});

// ---------------------------------------------------------------------------
// Reports

/// JSON rendering; parse_report(render_json(r)) renders to identical bytes.
std::string render_json(const SweepReport& report);
SweepReport parse_report(const std::string& json);

/// CSV: r,value,std_error,samples rows, then fit, reference and verdict rows.
std::string render_csv(const SweepReport& report);

std::string render_json(const GluedDemo& demo);
std::string render_csv(const GluedDemo& demo);

/// Config JSON (the "config" block of a report). Missing keys take the
/// defaults; r_min is required at validation time. UsageError on bad input.
SweepConfig parse_config(const std::string& json);
std::string render_config(const SweepConfig& config);

}  // namespace bbm
