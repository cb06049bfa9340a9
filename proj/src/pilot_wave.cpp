#include "qfoundry/pilot_wave.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <fmt/format.h>

#include "qfoundry/core/random.hpp"
#include "qfoundry/error.hpp"

namespace qfoundry::pilot_wave {

void Grid1D::validate() const {
  if (points < 64) throw DomainError(fmt::format("grid needs at least 64 points (got {})", points));
  if (!(x_max > x_min)) throw DomainError(fmt::format("grid bounds must satisfy x_max > x_min ({} <= {})", x_max, x_min));
}

RVector Grid1D::coordinates() const {
  RVector x(static_cast<Eigen::Index>(points));
  for (std::size_t i = 0; i < points; ++i) x[static_cast<Eigen::Index>(i)] = this->x(i);
  return x;
}

double WaveField::norm() const { return psi.squaredNorm() * grid.dx(); }

RVector WaveField::density() const { return psi.cwiseAbs2(); }

void WaveField::validate() const {
  grid.validate();
  const auto n = static_cast<Eigen::Index>(grid.points);
  if (psi.size() != n || potential.size() != n) throw DomainError("wave field and potential must match the grid");
  if (!(mass > 0.0)) throw DomainError(fmt::format("mass must be positive (got {})", mass));
  if (!(hbar > 0.0)) throw DomainError(fmt::format("hbar must be positive (got {})", hbar));
  if (std::abs(norm() - 1.0) > kNormDriftTolerance) throw DomainError(fmt::format("wave field norm {} differs from 1", norm()));
}

RVector free_potential(const Grid1D& grid) { return RVector::Zero(static_cast<Eigen::Index>(grid.points)); }

RVector harmonic_potential(const Grid1D& grid, double mass, double omega) {
  const RVector x = grid.coordinates();
  return 0.5 * mass * omega * omega * x.cwiseAbs2();
}

WaveField gaussian_packet(const Grid1D& grid, double x0, double sigma0, double k0, double mass, RVector potential,
                          double hbar) {
  grid.validate();
  if (!(sigma0 > 0.0)) throw DomainError(fmt::format("sigma0 must be positive (got {})", sigma0));
  CVector psi(static_cast<Eigen::Index>(grid.points));
  for (std::size_t i = 0; i < grid.points; ++i) {
    const double x = grid.x(i);
    psi[static_cast<Eigen::Index>(i)] = std::exp(-(x - x0) * (x - x0) / (4.0 * sigma0 * sigma0)) * std::exp(cplx(0.0, k0 * x));
  }
  psi /= std::sqrt(psi.squaredNorm() * grid.dx());
  WaveField f{grid, std::move(psi), 0.0, mass, std::move(potential), hbar};
  f.validate();
  return f;
}

namespace {

Eigen::SparseMatrix<double> fd_hamiltonian(const Grid1D& grid, const RVector& v, double mass, double hbar) {
  const auto n = static_cast<Eigen::Index>(grid.points);
  const double dx = grid.dx();
  const double off = -hbar * hbar / (2.0 * mass * dx * dx);
  std::vector<Eigen::Triplet<double>> t;
  for (Eigen::Index i = 0; i < n; ++i) {
    t.emplace_back(i, i, -2.0 * off + v[i]);
    if (i + 1 < n) {
      t.emplace_back(i, i + 1, off);
      t.emplace_back(i + 1, i, off);
    }
  }
  Eigen::SparseMatrix<double> h(n, n);
  h.setFromTriplets(t.begin(), t.end());
  return h;
}

}  // namespace

WaveField harmonic_ground_state(const Grid1D& grid, double mass, double omega, double hbar) {
  if (!(omega > 0.0)) throw DomainError(fmt::format("omega must be positive (got {})", omega));
  auto f = gaussian_packet(grid, 0.0, std::sqrt(hbar / (2.0 * mass * omega)), 0.0, mass, harmonic_potential(grid, mass, omega), hbar);
  const auto h = fd_hamiltonian(grid, f.potential, mass, hbar);
  Eigen::SparseMatrix<double> shifted = h;
  const auto n = static_cast<Eigen::Index>(grid.points);
  const double shift = 0.49 * hbar * omega;  // below the discrete ground energy, far from the first excitation
  for (Eigen::Index i = 0; i < n; ++i) shifted.coeffRef(i, i) -= shift;
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu(shifted);
  RVector x = f.psi.real();
  for (int it = 0; it < 200; ++it) {
    RVector y = lu.solve(x);
    y /= std::sqrt(y.squaredNorm() * grid.dx());
    if (y.dot(x) < 0) y = -y;
    const double change = (y - x).cwiseAbs().maxCoeff();
    x = y;
    if (change < 1e-15) break;
  }
  f.psi = x.cast<cplx>();
  f.validate();
  return f;
}

CrankNicolson::CrankNicolson(const Grid1D& grid, const RVector& potential, double mass, double dt, double hbar) : dt_(dt) {
  const auto n = static_cast<Eigen::Index>(grid.points);
  const double dx = grid.dx();
  const double off = -hbar * hbar / (2.0 * mass * dx * dx);
  const cplx a(0.0, dt / (2.0 * hbar));
  lhs_off_ = a * off;
  rhs_off_ = -lhs_off_;
  denom_.resize(n);
  cprime_.resize(n);
  rhs_diag_.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double d = -2.0 * off + potential[i];
    rhs_diag_[i] = 1.0 - a * d;
    denom_[i] = 1.0 + a * d - (i > 0 ? lhs_off_ * cprime_[i - 1] : cplx(0.0));
    cprime_[i] = lhs_off_ / denom_[i];
  }
}

void CrankNicolson::step(CVector& psi) const {
  const Eigen::Index n = psi.size();
  CVector r(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    cplx v = rhs_diag_[i] * psi[i];
    if (i > 0) v += rhs_off_ * psi[i - 1];
    if (i + 1 < n) v += rhs_off_ * psi[i + 1];
    r[i] = (v - (i > 0 ? lhs_off_ * r[i - 1] : cplx(0.0))) / denom_[i];
  }
  for (Eigen::Index i = n - 2; i >= 0; --i) r[i] -= cprime_[i] * r[i + 1];
  psi = std::move(r);
}

double energy(const WaveField& field) {
  const auto h = fd_hamiltonian(field.grid, field.potential, field.mass, field.hbar);
  const CVector hpsi = h.cast<cplx>() * field.psi;
  return field.psi.dot(hpsi).real() * field.grid.dx();
}

double edge_probability(const WaveField& field) {
  const auto n = static_cast<Eigen::Index>(field.grid.points);
  const Eigen::Index e = std::max<Eigen::Index>(1, n / 100);
  return (field.psi.head(e).squaredNorm() + field.psi.tail(e).squaredNorm()) * field.grid.dx();
}

WaveField schrodinger_step(const WaveField& field, double dt, std::size_t steps) {
  field.validate();
  if (dt < 0.0) throw DomainError(fmt::format("dt must be >= 0 (got {})", dt));
  WaveField out = field;
  if (dt == 0.0 || steps == 0) return out;
  const CrankNicolson cn(field.grid, field.potential, field.mass, dt, field.hbar);
  for (std::size_t s = 0; s < steps; ++s) cn.step(out.psi);
  out.time += dt * static_cast<double>(steps);
  const double edge = edge_probability(out);
  if (edge > kEdgeTolerance) {
    throw DomainError(fmt::format("probability {:.3e} reached the grid edges; widen the grid", edge));
  }
  return out;
}

double explicit_dt_budget(const WaveField& field) {
  const double dx = field.grid.dx();
  return dx * dx * field.mass / (2.0 * field.hbar);
}

namespace {

std::vector<bool> node_mask(const RVector& rho) {
  const double peak = rho.maxCoeff();
  std::vector<bool> m(static_cast<std::size_t>(rho.size()));
  for (Eigen::Index i = 0; i < rho.size(); ++i) m[static_cast<std::size_t>(i)] = rho[i] < kNodeThreshold * peak;
  return m;
}

// Fourth-order central first derivative with zero values beyond the walls.
template <typename Vec>
Vec derivative(const Vec& f, double dx) {
  const Eigen::Index n = f.size();
  Vec d(n);
  auto at = [&](Eigen::Index i) { return (i < 0 || i >= n) ? typename Vec::Scalar(0) : f[i]; };
  for (Eigen::Index i = 0; i < n; ++i) {
    if (i >= 2 && i + 2 < n) {
      d[i] = (-at(i + 2) + 8.0 * at(i + 1) - 8.0 * at(i - 1) + at(i - 2)) / (12.0 * dx);
    } else {
      d[i] = (at(i + 1) - at(i - 1)) / (2.0 * dx);
    }
  }
  return d;
}

void fill_masked(GridField& g) {
  const auto n = static_cast<std::size_t>(g.values.size());
  std::vector<long> nearest(n, -1);
  long last = -1;
  for (std::size_t i = 0; i < n; ++i) {
    if (!g.masked[i]) last = static_cast<long>(i);
    nearest[i] = last;
  }
  last = -1;
  for (std::size_t k = n; k-- > 0;) {
    if (!g.masked[k]) last = static_cast<long>(k);
    if (g.masked[k] && last >= 0 && (nearest[k] < 0 || last - static_cast<long>(k) < static_cast<long>(k) - nearest[k])) {
      nearest[k] = last;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (g.masked[i]) g.values[static_cast<Eigen::Index>(i)] = nearest[i] >= 0 ? g.values[nearest[i]] : 0.0;
  }
}

}  // namespace

GridField bohm_velocity(const WaveField& field) {
  const RVector rho = field.density();
  const CVector dpsi = derivative(field.psi, field.grid.dx());
  GridField g{RVector(rho.size()), node_mask(rho)};
  for (Eigen::Index i = 0; i < rho.size(); ++i) {
    g.values[i] = g.masked[static_cast<std::size_t>(i)] ? 0.0 : field.hbar / field.mass * (std::conj(field.psi[i]) * dpsi[i]).imag() / rho[i];
  }
  fill_masked(g);
  return g;
}

RVector unwrapped_phase(const WaveField& field) {
  const Eigen::Index n = field.psi.size();
  Eigen::Index peak = 0;
  field.psi.cwiseAbs2().maxCoeff(&peak);
  RVector s(n);
  s[peak] = std::arg(field.psi[peak]);
  for (Eigen::Index i = peak + 1; i < n; ++i) s[i] = s[i - 1] + std::arg(field.psi[i] * std::conj(field.psi[i - 1]));
  for (Eigen::Index i = peak - 1; i >= 0; --i) s[i] = s[i + 1] + std::arg(field.psi[i] * std::conj(field.psi[i + 1]));
  return s;
}

GridField phase_gradient_velocity(const WaveField& field) {
  const RVector s = unwrapped_phase(field);
  const Eigen::Index n = s.size();
  const double dx = field.grid.dx();
  GridField g{RVector(n), node_mask(field.density())};
  for (Eigen::Index i = 0; i < n; ++i) {
    double d;
    if (i >= 2 && i + 2 < n) {
      d = (-s[i + 2] + 8.0 * s[i + 1] - 8.0 * s[i - 1] + s[i - 2]) / (12.0 * dx);
    } else if (i == 0) {
      d = (s[1] - s[0]) / dx;
    } else if (i == n - 1) {
      d = (s[n - 1] - s[n - 2]) / dx;
    } else {
      d = (s[i + 1] - s[i - 1]) / (2.0 * dx);
    }
    g.values[i] = field.hbar * d / field.mass;
  }
  fill_masked(g);
  return g;
}

GridField quantum_potential(const WaveField& field) {
  const RVector r = field.psi.cwiseAbs();
  const Eigen::Index n = r.size();
  const double dx = field.grid.dx();
  GridField g{RVector::Zero(n), node_mask(field.density())};
  for (Eigen::Index i = 0; i < n; ++i) {
    if (g.masked[static_cast<std::size_t>(i)]) continue;
    const double left = i > 0 ? r[i - 1] : 0.0;
    const double right = i + 1 < n ? r[i + 1] : 0.0;
    g.values[i] = -field.hbar * field.hbar / (2.0 * field.mass) * (right - 2.0 * r[i] + left) / (dx * dx * r[i]);
  }
  return g;
}

HjResidual hamilton_jacobi_residual(const WaveField& before, const WaveField& after) {
  const double dt = after.time - before.time;
  if (!(dt > 0.0)) throw DomainError("snapshots must be in increasing time order");
  if (before.psi.size() != after.psi.size()) throw DomainError("snapshots live on different grids");
  const RVector rho1 = before.density(), rho2 = after.density();
  const double peak1 = rho1.maxCoeff(), peak2 = rho2.maxCoeff();
  const auto v1 = phase_gradient_velocity(before), v2 = phase_gradient_velocity(after);
  const auto u1 = quantum_potential(before), u2 = quantum_potential(after);
  const double m = before.mass;
  HjResidual out;
  // the two cells next to each wall have stencils reaching into the wall
  for (Eigen::Index i = 2; i + 2 < rho1.size(); ++i) {
    if (rho1[i] < 0.01 * peak1 || rho2[i] < 0.01 * peak2) continue;
    const double dsdt = before.hbar * std::arg(after.psi[i] * std::conj(before.psi[i])) / dt;
    const double rhs = 0.5 * (0.5 * m * v1.values[i] * v1.values[i] + before.potential[i] + u1.values[i]) +
                       0.5 * (0.5 * m * v2.values[i] * v2.values[i] + after.potential[i] + u2.values[i]);
    out.max_residual = std::max(out.max_residual, std::abs(dsdt + rhs));
    ++out.points;
  }
  return out;
}

double continuity_residual(const WaveField& before, const WaveField& after) {
  const double dt = after.time - before.time;
  if (!(dt > 0.0)) throw DomainError("snapshots must be in increasing time order");
  const CVector mid = 0.5 * (before.psi + after.psi);
  const RVector rho1 = before.density(), rho2 = after.density();
  const double peak = rho1.maxCoeff();
  const double dx = before.grid.dx();
  const Eigen::Index n = mid.size();
  auto current = [&](Eigen::Index i) {  // J_{i+½}
    if (i < 0 || i + 1 >= n) return 0.0;
    return before.hbar / before.mass * (std::conj(mid[i]) * mid[i + 1]).imag() / dx;
  };
  double worst = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (rho1[i] < 0.01 * peak) continue;
    worst = std::max(worst, std::abs((rho2[i] - rho1[i]) / dt + (current(i) - current(i - 1)) / dx));
  }
  return worst;
}

namespace {

RVector cdf_nodes(const WaveField& field) {
  const RVector rho = field.density();
  const double dx = field.grid.dx();
  RVector c(rho.size());
  c[0] = 0.0;
  for (Eigen::Index i = 1; i < rho.size(); ++i) c[i] = c[i - 1] + 0.5 * (rho[i - 1] + rho[i]) * dx;
  return c / c[rho.size() - 1];
}

double interpolate(const RVector& v, const Grid1D& grid, double q) {
  const double f = (q - grid.x_min) / grid.dx();
  if (f < 0.0 || f > static_cast<double>(grid.points - 1)) {
    throw DomainError(fmt::format("trajectory at x = {} left the grid [{}, {}]", q, grid.x_min, grid.x_max));
  }
  const auto i = std::min(static_cast<Eigen::Index>(f), static_cast<Eigen::Index>(grid.points) - 2);
  const double w = f - static_cast<double>(i);
  return (1.0 - w) * v[i] + w * v[i + 1];
}

}  // namespace

std::vector<double> sample_positions(const WaveField& field, const std::vector<double>& uniforms) {
  const RVector c = cdf_nodes(field);
  std::vector<double> out;
  out.reserve(uniforms.size());
  for (double u : uniforms) {
    const auto* it = std::upper_bound(c.data(), c.data() + c.size(), u);
    auto k = static_cast<Eigen::Index>(it - c.data());
    k = std::clamp<Eigen::Index>(k, 1, c.size() - 1);
    const double span = c[k] - c[k - 1];
    const double w = span > 0.0 ? (u - c[k - 1]) / span : 0.5;
    out.push_back(field.grid.x(static_cast<std::size_t>(k - 1)) + w * field.grid.dx());
  }
  return out;
}

double ks_distance(const WaveField& field, std::vector<double> positions) {
  if (positions.empty()) throw DomainError("no positions");
  const RVector c = cdf_nodes(field);
  std::sort(positions.begin(), positions.end());
  const double n = static_cast<double>(positions.size());
  double d = 0.0;
  for (std::size_t k = 0; k < positions.size(); ++k) {
    const double f = interpolate(c, field.grid, positions[k]);
    d = std::max({d, static_cast<double>(k + 1) / n - f, f - static_cast<double>(k) / n});
  }
  return d;
}

double mean_x(const WaveField& field) {
  return field.grid.coordinates().dot(field.density()) * field.grid.dx() / field.norm();
}

double width(const WaveField& field) {
  const double mu = mean_x(field);
  const RVector x = field.grid.coordinates().array() - mu;
  return std::sqrt(x.cwiseAbs2().dot(field.density()) * field.grid.dx() / field.norm());
}

double free_width(double sigma0, double mass, double t, double hbar) {
  const double r = hbar * t / (2.0 * mass * sigma0 * sigma0);
  return sigma0 * std::sqrt(1.0 + r * r);
}

TrajectoryRun run_trajectories(const WaveField& initial, double dt, double t_end, std::size_t n_traj,
                               std::uint64_t seed, std::size_t recorded, std::size_t record_every) {
  initial.validate();
  if (!(dt > 0.0)) throw DomainError(fmt::format("dt must be positive (got {})", dt));
  if (!(t_end >= 0.0)) throw DomainError(fmt::format("t_end must be >= 0 (got {})", t_end));
  if (n_traj == 0) throw DomainError("n_traj must be >= 1");
  if (record_every == 0) throw DomainError("record_every must be >= 1");
  recorded = std::min(recorded, n_traj);

  const CounterRng rng(seed, /*stream=*/5);
  std::vector<double> u(n_traj);
  for (std::size_t k = 0; k < n_traj; ++k) u[k] = rng.uniform(k);

  TrajectoryRun run{TrajectoryEnsemble{}, initial};
  auto& ens = run.ensemble;
  ens.seed = seed;
  ens.initial = sample_positions(initial, u);
  std::vector<double> q = ens.initial;

  const double h = 2.0 * dt;
  const double cap = initial.grid.dx() / h;
  const auto rk_steps = static_cast<std::size_t>(std::llround(t_end / h));
  const CrankNicolson cn(initial.grid, initial.potential, initial.mass, dt, initial.hbar);

  WaveField& field = run.final_field;
  auto velocity = [&](const WaveField& f) {
    auto v = bohm_velocity(f).values;
    return RVector(v.cwiseMax(-cap).cwiseMin(cap));
  };
  auto record = [&](double t) {
    if (recorded == 0) return;
    ens.record_times.push_back(t);
    ens.records.emplace_back(q.begin(), q.begin() + static_cast<long>(recorded));
  };

  record(field.time);
  RVector v0 = velocity(field);
  for (std::size_t s = 0; s < rk_steps; ++s) {
    cn.step(field.psi);
    field.time += dt;
    const RVector v1 = velocity(field);
    cn.step(field.psi);
    field.time += dt;
    const RVector v2 = velocity(field);
    run.max_norm_drift = std::max(run.max_norm_drift, std::abs(field.norm() - 1.0));
    for (auto& x : q) {
      const double k1 = interpolate(v0, field.grid, x);
      const double k2 = interpolate(v1, field.grid, x + 0.5 * h * k1);
      const double k3 = interpolate(v1, field.grid, x + 0.5 * h * k2);
      const double k4 = interpolate(v2, field.grid, x + h * k3);
      x += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      interpolate(v2, field.grid, x);  // bounds check
    }
    v0 = v2;
    if ((s + 1) % record_every == 0) record(field.time);
  }

  ens.final_positions = q;
  std::vector<std::size_t> order(n_traj);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return ens.initial[a] < ens.initial[b]; });
  for (std::size_t k = 1; k < n_traj; ++k) {
    if (ens.initial[order[k - 1]] < ens.initial[order[k]] && !(q[order[k - 1]] < q[order[k]])) ens.order_preserved = false;
  }
  run.ks_distance = ks_distance(field, q);
  run.mean_position = std::accumulate(q.begin(), q.end(), 0.0) / static_cast<double>(n_traj);
  run.expected_x = mean_x(field);
  return run;
}

}  // namespace qfoundry::pilot_wave
