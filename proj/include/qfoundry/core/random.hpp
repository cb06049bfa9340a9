#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "qfoundry/core/state.hpp"

namespace qfoundry {

/// Stateless counter-based generator: every draw is a pure function of (seed, stream, counter), so Monte Carlo
/// results do not depend on evaluation order or on how samples are partitioned.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0) noexcept;

  std::uint64_t bits(std::uint64_t counter) const noexcept;
  /// Uniform on the open interval (0, 1).
  double uniform(std::uint64_t counter) const noexcept;
  /// Standard normal (Box-Muller over counters 2c and 2c+1).
  double normal(std::uint64_t counter) const noexcept;
  /// Independent generator for a sub-stream, e.g. one per Monte Carlo sample.
  CounterRng substream(std::uint64_t index) const noexcept;

 private:
  std::uint64_t key_;
};

/// Haar-distributed pure state: normalized complex Gaussian vector keyed on (seed, sample).
StateVector haar_random_state(const HilbertPartition& partition, std::uint64_t seed, std::uint64_t sample = 0);

/// Haar-distributed unitary (QR of a complex Ginibre matrix with the phase of R's diagonal removed).
Operator haar_random_unitary(const HilbertPartition& partition, std::uint64_t seed, std::uint64_t sample = 0);

/// Uniformly distributed unit 3-vector.
Eigen::Vector3d uniform_unit_vector(const CounterRng& rng, std::uint64_t counter);

}  // namespace qfoundry
