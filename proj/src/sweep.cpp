#include "bbm/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bbm/constants.hpp"
#include "bbm/errors.hpp"

namespace bbm {
namespace {

// Substream layout under Stream(seed).
constexpr std::uint64_t kQuotientStream = 0;
constexpr std::uint64_t kCheegerStream = 1;
constexpr std::uint64_t kConstantStream = 2;

}  // namespace

void SweepConfig::validate() const {
  if (!r_min) throw UsageError("sweep: r_min is required");
  if (!(*r_min > 0.0) || !(*r_min < r_max) || !std::isfinite(r_max))
    throw UsageError("sweep: need 0 < r_min < r_max");
  if (levels < 3) throw UsageError("sweep: levels must be >= 3");
  if (!(p > 1.0) || !std::isfinite(p)) throw UsageError("sweep: p must be > 1");
  if (outer_samples == 0 || inner_samples == 0) throw UsageError("sweep: sample counts must be positive");
  if (constant_samples < 1000) throw UsageError("sweep: constant_samples must be >= 1000");
  if (cheeger_samples == 0) throw UsageError("sweep: cheeger_samples must be positive");
  if (tolerance && !(*tolerance > 0.0)) throw UsageError("sweep: tolerance must be positive");
  if (!(residual_bound > 0.0)) throw UsageError("sweep: residual_bound must be positive");
}

std::vector<double> SweepConfig::radii() const {
  validate();
  std::vector<double> r(static_cast<std::size_t>(levels));
  const double ratio = *r_min / r_max;
  for (int k = 0; k < levels; ++k) r[static_cast<std::size_t>(k)] = r_max * std::pow(ratio, static_cast<double>(k) / (levels - 1));
  r.back() = *r_min;
  return r;
}

double default_tolerance(const TangentLabel& tangent) {
  return tangent.kind == TangentLabel::Kind::heisenberg1 ? 0.05 : 0.02;
}

bool sweep_verdict(double limit, double reference, double tolerance) {
  return std::abs(limit - reference) <= tolerance * std::abs(reference);
}

SweepReport run_sweep(const SweepConfig& config, const Execution& exec) {
  config.validate();
  const ModelSpace space = make_space(config.space);
  const TestFunction f = make_test_function(config.function, space);
  const TangentLabel tangent = governing_tangent(space, f);
  const Stream root(config.seed);

  SweepReport report;
  report.config = config;
  if (!report.config.tolerance) report.config.tolerance = default_tolerance(tangent);

  const NestedSamples samples{config.outer_samples, config.inner_samples};
  std::vector<RadiusPoint> fit_points;
  for (const double r : config.radii()) {
    const EnergyEstimate e = global_quotient(space, f, config.p, r, samples, root.substream(kQuotientStream), exec);
    report.points.push_back({r, e});
    fit_points.push_back({r, e.value, e.std_error});
  }
  report.fit = extrapolate(fit_points, {2.0, 200, config.residual_bound});

  Reference& ref = report.reference;
  ref.tangent = tangent.to_string();
  switch (tangent.kind) {
    case TangentLabel::Kind::euclidean:
      ref.constant = c_euclidean_closed(config.p, tangent.dimension);
      ref.constant_source = "closed-form";
      break;
    case TangentLabel::Kind::heisenberg1: {
      const EnergyEstimate c = c_heisenberg_mc(config.p, config.constant_samples, root.substream(kConstantStream), exec);
      ref.constant = c.value;
      ref.constant_sigma = c.std_error;
      ref.constant_samples = c.samples;
      ref.constant_source = "monte-carlo";
      break;
    }
    case TangentLabel::Kind::mixed:
      ref.constant_source = "none";
      break;
  }
  const EnergyEstimate ch = cheeger_energy(space, f, config.p, config.cheeger_samples, root.substream(kCheegerStream), exec);
  ref.cheeger = ch.value;
  ref.cheeger_sigma = ch.std_error;
  ref.cheeger_samples = ch.samples;
  if (f.kind() == FunctionKind::constant || f.support().kind == Support::Kind::empty) {
    ref.cheeger_source = "exact";
  } else {
    ref.cheeger_source = ch.std_error > 0.0 || space.kind() == SpaceKind::weighted ? "monte-carlo" : "quadrature";
  }
  ref.value = ref.constant * ref.cheeger;
  ref.value_sigma = std::hypot(ref.constant_sigma * ref.cheeger, ref.constant * ref.cheeger_sigma);

  UniformBoundCheck& ub = report.uniform_bound;
  ub.constant = uniform_bound_constant(space);
  ub.bound = ub.constant * ref.cheeger;
  for (const auto& pt : report.points) ub.max_quotient = std::max(ub.max_quotient, pt.estimate.value);
  ub.violated = ub.max_quotient > ub.bound;

  const double diff = report.fit.limit - ref.value;
  report.deviation = ref.value != 0.0 ? diff / std::abs(ref.value) : diff;
  report.pass = sweep_verdict(report.fit.limit, ref.value, *report.config.tolerance);
  return report;
}

std::vector<SweepConfig> glued_demo_configs(double p, std::uint64_t seed) {
  SweepConfig base;
  base.space = PresetSpec::parse("glued");
  base.p = p;
  base.r_max = 0.5;
  base.r_min = 0.03125;
  base.seed = seed;
  // Seam clearance 2 > 2 r_max on both sides. The H^1 bump is wider because
  // its quotient approaches the limit more slowly at a given r / R.
  SweepConfig euclidean_side = base;
  euclidean_side.function = PresetSpec::parse("bump:center=0,6,0,0:radius=4");
  SweepConfig heisenberg_side = base;
  heisenberg_side.function = PresetSpec::parse("bump:center=0,10,0:radius=8");
  return {euclidean_side, heisenberg_side};
}

GluedDemo run_glued_demo(double p, std::uint64_t seed, const Execution& exec) {
  const std::vector<SweepConfig> configs = glued_demo_configs(p, seed);
  GluedDemo demo;
  demo.p = p;
  demo.euclidean_side = run_sweep(configs[0], exec);
  demo.heisenberg_side = run_sweep(configs[1], exec);
  auto ratio = [](const SweepReport& r, double& value, double& sigma) {
    const double ch = r.reference.cheeger;
    value = r.fit.limit / ch;
    sigma = std::hypot(r.fit.limit_sigma / ch, r.fit.limit * r.reference.cheeger_sigma / (ch * ch));
  };
  ratio(demo.euclidean_side, demo.ratio_euclidean, demo.ratio_euclidean_sigma);
  ratio(demo.heisenberg_side, demo.ratio_heisenberg, demo.ratio_heisenberg_sigma);
  const double combined = std::hypot(demo.ratio_euclidean_sigma, demo.ratio_heisenberg_sigma);
  const double gap = std::abs(demo.ratio_euclidean - demo.ratio_heisenberg);
  demo.separation = combined > 0.0 ? gap / combined : (gap > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
  demo.pass = demo.euclidean_side.pass && demo.heisenberg_side.pass && demo.separation >= 3.0;
  return demo;
}

}  // namespace bbm
