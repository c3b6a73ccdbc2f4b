#include "bbm/heisenberg.hpp"

#include <algorithm>
#include <string>

#include "bbm/quadrature.hpp"

namespace bbm::heisenberg {

double unit_ball_profile(double rho) {
  rho = std::abs(rho);
  if (rho >= 1.0) return 0.0;
  // max height is 2/pi < 1, so d0(rho, 0, 1) > 1 for every rho.
  double lo = 0.0;
  double hi = 1.0;
  for (int i = 0; i < 200 && hi - lo > 1e-16; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (d0(HPoint(rho, 0.0, mid)) <= 1.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

namespace {

double compute_max_height() {
  constexpr int kGrid = 200;
  int best = 0;
  double best_value = -1.0;
  for (int i = 0; i <= kGrid; ++i) {
    const double value = unit_ball_profile(static_cast<double>(i) / kGrid);
    if (value > best_value) {
      best_value = value;
      best = i;
    }
  }
  // Golden-section refinement on the neighbouring cells.
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = std::max(0, best - 1) / static_cast<double>(kGrid);
  double b = std::min(kGrid, best + 1) / static_cast<double>(kGrid);
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = unit_ball_profile(c);
  double fd = unit_ball_profile(d);
  while (b - a > 1e-10) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = unit_ball_profile(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = unit_ball_profile(d);
    }
  }
  return std::max({best_value, fc, fd});
}

double compute_volume() {
  // rho = 1 - w^2 removes the square-root edge of F at rho = 1.
  const GaussRule rule = gauss_legendre(20);
  const double integral = integrate(
      [](double w) {
        const double rho = 1.0 - w * w;
        return rho * unit_ball_profile(rho) * 2.0 * w;
      },
      0.0, 1.0, 32, rule);
  return 4.0 * std::numbers::pi * integral;
}

}  // namespace

double unit_ball_max_height() {
  static const double height = compute_max_height();
  return height;
}

double unit_ball_box_half_height() {
  return 1.1 * unit_ball_max_height();
}

double unit_ball_volume() {
  static const double volume = compute_volume();
  return volume;
}

HPoint sample_unit_ball(Stream& rng, std::size_t max_tries) {
  const double h = unit_ball_box_half_height();
  for (std::size_t attempt = 0; attempt < max_tries; ++attempt) {
    const double z1 = rng.uniform(-1.0, 1.0);
    const double z2 = rng.uniform(-1.0, 1.0);
    // d0 >= |(z1, z2)|, so the disc test is exact and saves a d0 evaluation.
    if (z1 * z1 + z2 * z2 >= 1.0) continue;
    const HPoint z(z1, z2, rng.uniform(-h, h));
    if (d0(z) < 1.0) return z;
  }
  throw SamplingError("sample_unit_ball: no acceptance after " + std::to_string(max_tries) +
                      " tries (box half-height " + std::to_string(h) + ")");
}

EnergyEstimate unit_ball_volume_mc(std::size_t samples, const Stream& rng, const Execution& exec) {
  const double h = unit_ball_box_half_height();
  const double box = 4.0 * 2.0 * h;
  const MeanAccumulator acc = monte_carlo_mean(samples, rng, exec, [h](Stream& s) {
    const HPoint z(s.uniform(-1.0, 1.0), s.uniform(-1.0, 1.0), s.uniform(-h, h));
    return d0(z) < 1.0 ? 1.0 : 0.0;
  });
  return EnergyEstimate::from(acc, rng.seed(), box);
}

void BusemannProbe::validate() const {
  if (std::abs(direction.squaredNorm() - 1.0) > 1e-12)
    throw DomainError("busemann: direction must be a unit horizontal vector");
  for (std::size_t i = 0; i < s_values.size(); ++i) {
    if (!(s_values[i] > 0.0)) throw DomainError("busemann: s values must be positive");
    if (i > 0 && !(s_values[i] > s_values[i - 1]))
      throw DomainError("busemann: s values must be strictly increasing");
  }
}

std::vector<BusemannSample> busemann(const BusemannProbe& probe, int sign) {
  probe.validate();
  const double orientation = sign < 0 ? -1.0 : 1.0;
  std::vector<BusemannSample> out;
  out.reserve(probe.s_values.size());
  for (double s : probe.s_values) {
    const HPoint on_line(orientation * s * probe.direction[0], orientation * s * probe.direction[1],
                         0.0);
    out.push_back({s, cc_distance(probe.z, on_line) - s});
  }
  return out;
}

BusemannSummary summarize_busemann(const BusemannProbe& probe, int sign,
                                   const std::vector<BusemannSample>& samples) {
  const double orientation = sign < 0 ? -1.0 : 1.0;
  const double projection = probe.z[0] * probe.direction[0] + probe.z[1] * probe.direction[1];
  BusemannSummary summary{0.0 - orientation * projection, 0.0, 0.0, true};
  if (samples.empty()) return summary;
  summary.last_value = samples.back().value;
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double inv = 1.0 / samples[i].s;
    num += std::abs(samples[i].value - summary.limit) * inv;
    den += inv * inv;
    // Rounding slack: d(z, gamma(s)) - s cancels about log10(s) digits.
    if (i > 0 && samples[i].value > samples[i - 1].value + 1e-12 * samples[i].s)
      summary.monotone = false;
  }
  summary.rate_constant = num / den;
  return summary;
}

}  // namespace bbm::heisenberg
