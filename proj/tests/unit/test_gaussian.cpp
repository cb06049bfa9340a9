#include <doctest.h>

#include <cmath>

#include "qfoundry/core/random.hpp"
#include "qfoundry/error.hpp"
#include "qfoundry/gaussian.hpp"

using namespace qfoundry;
using namespace qfoundry::gaussian;

namespace {

RMatrix pair(double k, double eps) {
  RMatrix v(2, 2);
  v << k, eps, eps, k;
  return v;
}

RMatrix random_spd(std::size_t n, std::uint64_t seed) {
  CounterRng rng(seed, 11);
  RMatrix a(n, n);
  for (std::size_t i = 0; i < n * n; ++i) a(i / n, i % n) = rng.normal(i);
  return a * a.transpose() + RMatrix::Identity(n, n);
}

// Entropy of the pair V = [[1, 0.5], [0.5, 1]] with one oscillator traced, from an independent dense
// Fock-space diagonalization (45 levels per oscillator).
constexpr double kPairEntropy = 0.0943924659444;

}  // namespace

TEST_CASE("ground-state W") {
  CHECK((ground_state_w(RMatrix::Identity(3, 3)).W - RMatrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-15);
  RMatrix d = RMatrix::Zero(2, 2);
  d(0, 0) = 4.0;
  d(1, 1) = 9.0;
  const auto w = ground_state_w(d).W;
  CHECK(std::abs(w(0, 0) - 2.0) < 1e-14);
  CHECK(std::abs(w(1, 1) - 3.0) < 1e-14);
  const RMatrix v = random_spd(6, 3);
  const auto m = ground_state_w(v);
  CHECK((m.W * m.W - v).cwiseAbs().maxCoeff() < 1e-9);
  CHECK((m.W * m.W_inv - RMatrix::Identity(6, 6)).cwiseAbs().maxCoeff() < 1e-10);

  CHECK_THROWS_AS(ground_state_w(pair(1.0, 2.0)), SpectrumError);
  RMatrix asym = pair(1.0, 0.1);
  asym(0, 1) = 0.3;
  CHECK_THROWS_AS(ground_state_w(asym), DomainError);
}

TEST_CASE("Bombelli entropy") {
  RMatrix block = RMatrix::Zero(4, 4);
  block.topLeftCorner(2, 2) = pair(1.0, 0.4);
  block.bottomRightCorner(2, 2) = pair(2.0, 0.7);
  CHECK(std::abs(bombelli_entropy(ground_state_w(block), {{2, 3}})) < 1e-12);

  const auto m = ground_state_w(pair(1.0, 0.5));
  CHECK(std::abs(bombelli_entropy(m, {{0}}) - kPairEntropy) < 1e-10);
  CHECK(std::abs(bombelli_literal_entropy(m, {{0}}) - kPairEntropy) < 1e-10);

  const auto r = ground_state_w(random_spd(7, 8));
  CHECK(std::abs(bombelli_entropy(r, {{0, 3, 5}}) - bombelli_entropy(r, {{1, 2, 4, 6}})) < 1e-10);
  const auto cmp = compare_bombelli_paths(r, {{0, 3, 5}});
  CHECK(cmp.difference < 1e-8);

  CHECK_THROWS_AS(bombelli_entropy(m, {{}}), DomainError);
  CHECK_THROWS_AS(bombelli_entropy(m, {{0, 1}}), DomainError);
  CHECK_THROWS_AS(bombelli_entropy(m, {{5}}), DomainError);
}

TEST_CASE("Fock oracle") {
  RMatrix decoupled = RMatrix::Zero(2, 2);
  decoupled(0, 0) = 1.0;
  decoupled(1, 1) = 2.0;
  CHECK(std::abs(fock_oracle_entropy(ground_state_w(decoupled), {{0}}, 20)) < 1e-10);

  const auto m = ground_state_w(pair(1.0, 0.5));
  const auto o = fock_oracle(m, {{0}}, 40);
  CHECK(std::abs(o.entropy - bombelli_entropy(m, {{0}})) < 1e-6);
  CHECK(std::abs(o.ground_energy - 0.5 * (std::sqrt(1.5) + std::sqrt(0.5))) < 1e-8);

  double prev = -1.0;
  for (double eps : {0.0, 0.2, 0.4, 0.6, 0.8, 0.9}) {
    const double s = fock_oracle_entropy(ground_state_w(pair(1.0, eps)), {{1}}, 20);
    CHECK(s > prev - 1e-12);
    prev = s;
  }
  CHECK_THROWS_AS(fock_oracle(ground_state_w(RMatrix::Identity(4, 4)), {{0}}, 20), DomainError);
}

TEST_CASE("oracle grid") {
  const auto grid = oracle_grid();
  CHECK(grid.size() == 20);
  for (const auto& c : grid) CHECK_NOTHROW(ground_state_w(c.V));
}

TEST_CASE("chain scans") {
  const auto v = chain_potential(0.5, 6);
  CHECK(v(0, 5) == -1.0);
  CHECK(v(0, 0) == 2.25);
  CHECK(chain_potential(0.5, 6, ChainBoundary::open)(0, 5) == 0.0);

  const auto s = chain_scan(1e-3, 40, {0, 3, 5});
  CHECK(s[0].entropy == 0.0);
  CHECK(s[2].entropy > s[1].entropy);
  CHECK_THROWS_AS(chain_scan(1e-3, 40, {40}), DomainError);

  // periodic ring: a block and its complement share the same entropy
  const auto ring = chain_scan(0.1, 30, {10, 20});
  CHECK(std::abs(ring[0].entropy - ring[1].entropy) < 1e-9);
}

TEST_CASE("log fit") {
  std::vector<ChainPoint> pts;
  for (std::size_t l = 2; l <= 20; ++l) pts.push_back({l, 0.25 * std::log(static_cast<double>(l)) + 0.1});
  const auto f = fit_log_slope(pts, 4, 20);
  CHECK(std::abs(f.slope - 0.25) < 1e-12);
  CHECK(std::abs(f.intercept - 0.1) < 1e-12);
  CHECK(f.points == 17);
}

TEST_CASE("near-critical chain slope and massive saturation") {
  std::vector<std::size_t> ells;
  for (std::size_t l = 4; l <= 50; ++l) ells.push_back(l);
  const auto f = fit_log_slope(chain_scan(1e-6, 200, ells), 4, 50);
  CHECK(std::abs(f.slope - 1.0 / 3.0) < 0.1 / 3.0);

  const auto m = chain_scan(2.0, 200, {20, 40});
  CHECK(std::abs(m[1].entropy - m[0].entropy) < 0.01 * m[0].entropy);
}
