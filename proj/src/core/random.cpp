#include "qfoundry/core/random.hpp"

#include <cmath>
#include <numbers>

namespace qfoundry {

namespace {

// splitmix64 finalizer
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept
    : key_(mix64(mix64(seed) ^ (stream * 0xd1b54a32d192ed03ULL))) {}

std::uint64_t CounterRng::bits(std::uint64_t counter) const noexcept {
  return mix64(key_ ^ mix64(counter * 0x8cb92ba72f3d8dd7ULL));
}

double CounterRng::uniform(std::uint64_t counter) const noexcept {
  // 53 random bits, shifted off zero.
  return (static_cast<double>(bits(counter) >> 11) + 0.5) * 0x1.0p-53;
}

double CounterRng::normal(std::uint64_t counter) const noexcept {
  const double u1 = uniform(2 * counter);
  const double u2 = uniform(2 * counter + 1);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

CounterRng CounterRng::substream(std::uint64_t index) const noexcept {
  CounterRng child(0);
  child.key_ = mix64(key_ ^ mix64(index + 0x632be59bd9b4e019ULL));
  return child;
}

StateVector haar_random_state(const HilbertPartition& partition, std::uint64_t seed, std::uint64_t sample) {
  const auto rng = CounterRng(seed, /*stream=*/1).substream(sample);
  const auto n = static_cast<Eigen::Index>(partition.total_dimension());
  CVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto c = static_cast<std::uint64_t>(i);
    v[i] = cplx(rng.normal(2 * c), rng.normal(2 * c + 1));
  }
  return StateVector::normalized(std::move(v), partition);
}

Operator haar_random_unitary(const HilbertPartition& partition, std::uint64_t seed, std::uint64_t sample) {
  const auto rng = CounterRng(seed, /*stream=*/2).substream(sample);
  const auto n = static_cast<Eigen::Index>(partition.total_dimension());
  CMatrix g(n, n);
  std::uint64_t c = 0;
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i, c += 2) g(i, j) = cplx(rng.normal(c), rng.normal(c + 1)) / std::sqrt(2.0);
  }
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j) {
    const cplx d = r(j, j);
    const double a = std::abs(d);
    if (a > 0.0) q.col(j) *= d / a;
  }
  return Operator(std::move(q), partition, OperatorKind::unitary);
}

Eigen::Vector3d uniform_unit_vector(const CounterRng& rng, std::uint64_t counter) {
  Eigen::Vector3d v(rng.normal(3 * counter), rng.normal(3 * counter + 1), rng.normal(3 * counter + 2));
  return v / v.norm();
}

}  // namespace qfoundry
