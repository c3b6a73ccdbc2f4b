#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>

#include "bbm/parallel.hpp"

namespace bbm {

/// A Monte-Carlo (or quadrature) scalar with its uncertainty and provenance.
/// Quadrature results carry std_error = 0 and report their node count.
struct EnergyEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;

  static EnergyEstimate from(const MeanAccumulator& acc, std::uint64_t seed, double scale = 1.0) {
    return {scale * acc.mean, std::abs(scale) * acc.std_error(), acc.count, seed};
  }
};

}  // namespace bbm
