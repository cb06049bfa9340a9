#include "qfoundry/gaussian.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include <Eigen/Sparse>
#include <fmt/format.h>

#include "qfoundry/core/ops.hpp"
#include "qfoundry/error.hpp"

namespace qfoundry::gaussian {

namespace {

std::vector<double> to_vector(const RVector& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

Eigen::VectorXi as_eigen_index(const std::vector<std::size_t>& idx) {
  Eigen::VectorXi out(static_cast<Eigen::Index>(idx.size()));
  for (std::size_t i = 0; i < idx.size(); ++i) out[static_cast<Eigen::Index>(i)] = static_cast<int>(idx[i]);
  return out;
}

double symplectic_term(double nu) {
  if (nu - 0.5 <= 1e-13) return 0.0;
  return (nu + 0.5) * std::log(nu + 0.5) - (nu - 0.5) * std::log(nu - 0.5);
}

}  // namespace

GaussianModel ground_state_w(const RMatrix& V) {
  if (V.rows() == 0 || V.rows() != V.cols()) throw DomainError(fmt::format("V must be square and nonempty ({}x{})", V.rows(), V.cols()));
  const double scale = std::max(1.0, V.cwiseAbs().maxCoeff());
  if ((V - V.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) throw DomainError("V is not symmetric");
  Eigen::SelfAdjointEigenSolver<RMatrix> es(0.5 * (V + V.transpose()));
  const RVector& e = es.eigenvalues();
  if (e.minCoeff() <= 0.0) {
    throw SpectrumError(fmt::format("V is not positive definite (smallest eigenvalue {:.3e})", e.minCoeff()), to_vector(e));
  }
  const RMatrix& u = es.eigenvectors();
  GaussianModel m;
  m.V = V;
  m.W = u * e.cwiseSqrt().asDiagonal() * u.transpose();
  m.W_inv = u * e.cwiseSqrt().cwiseInverse().asDiagonal() * u.transpose();
  return m;
}

std::vector<std::size_t> kept_indices(const TracedRegion& region, std::size_t n) {
  std::vector<bool> traced(n, false);
  for (auto i : region.indices) {
    if (i >= n) throw DomainError(fmt::format("traced index {} out of range for {} oscillators", i, n));
    if (traced[i]) throw DomainError(fmt::format("traced index {} repeated", i));
    traced[i] = true;
  }
  if (region.indices.empty() || region.indices.size() == n) {
    throw DomainError("traced region must be a nonempty proper subset of the oscillators");
  }
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < n; ++i) {
    if (!traced[i]) kept.push_back(i);
  }
  return kept;
}

double kept_entropy(const GaussianModel& model, const std::vector<std::size_t>& kept) {
  if (kept.empty() || kept.size() == model.size()) return 0.0;
  const auto k = as_eigen_index(kept);
  const RMatrix x = 0.5 * model.W_inv(k, k);
  const RMatrix p = 0.5 * model.W(k, k);
  // eig(X P) = eig(X^{1/2} P X^{1/2}), symmetric.
  Eigen::SelfAdjointEigenSolver<RMatrix> ex(x);
  const RMatrix xh = ex.eigenvectors() * ex.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal() * ex.eigenvectors().transpose();
  Eigen::SelfAdjointEigenSolver<RMatrix> es(xh * p * xh, Eigen::EigenvaluesOnly);
  const RVector& nu2 = es.eigenvalues();
  double s = 0.0;
  for (Eigen::Index i = 0; i < nu2.size(); ++i) {
    if (nu2[i] < 0.25 - 1e-10) {
      RVector nu = nu2.cwiseMax(0.0).cwiseSqrt();
      throw SpectrumError(fmt::format("symplectic eigenvalue {:.12f} below 1/2", std::sqrt(std::max(0.0, nu2[i]))), to_vector(nu));
    }
    s += symplectic_term(std::sqrt(std::max(0.25, nu2[i])));
  }
  return s;
}

double bombelli_entropy(const GaussianModel& model, const TracedRegion& region) {
  return kept_entropy(model, kept_indices(region, model.size()));
}

std::vector<double> bombelli_lambda(const GaussianModel& model, const TracedRegion& region) {
  const auto kept = as_eigen_index(kept_indices(region, model.size()));
  const auto traced = as_eigen_index(region.indices);
  const RMatrix lambda = -model.W_inv(kept, traced) * model.W(traced, kept);
  Eigen::EigenSolver<RMatrix> es(lambda, false);
  std::vector<double> out;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) out.push_back(es.eigenvalues()[i].real());
  std::sort(out.begin(), out.end());
  return out;
}

double bombelli_literal_entropy(const GaussianModel& model, const TracedRegion& region) {
  const auto lambda = bombelli_lambda(model, region);
  double s = 0.0;
  for (double l : lambda) {
    if (l < -1e-10) throw SpectrumError(fmt::format("Lambda eigenvalue {:.3e} is negative", l), lambda);
    if (l <= 1e-12) continue;
    s += std::log(0.5 * std::sqrt(l)) + std::sqrt(1.0 + l) * std::log(1.0 / std::sqrt(l) + std::sqrt(1.0 + 1.0 / l));
  }
  return s;
}

BombelliComparison compare_bombelli_paths(const GaussianModel& model, const TracedRegion& region) {
  BombelliComparison c;
  c.symplectic = bombelli_entropy(model, region);
  c.literal = bombelli_literal_entropy(model, region);
  c.difference = std::abs(c.symplectic - c.literal);
  c.lambda = bombelli_lambda(model, region);
  return c;
}

// ---------------------------------------------------------------------------
// Fock oracle

namespace {

struct FockBasis {
  std::size_t modes = 0;
  int n_max = 0;
  std::vector<std::array<int, 3>> states;
  std::vector<int> index;  // dense lookup over (n_max+1)^modes, −1 outside the truncation

  std::size_t code(const std::array<int, 3>& s) const {
    std::size_t c = 0;
    for (std::size_t a = 0; a < modes; ++a) c = c * static_cast<std::size_t>(n_max + 1) + static_cast<std::size_t>(s[a]);
    return c;
  }
};

FockBasis make_basis(std::size_t modes, int n_max) {
  FockBasis b;
  b.modes = modes;
  b.n_max = n_max;
  std::size_t cube = 1;
  for (std::size_t a = 0; a < modes; ++a) cube *= static_cast<std::size_t>(n_max + 1);
  b.index.assign(cube, -1);
  std::array<int, 3> s{0, 0, 0};
  for (s[0] = 0; s[0] <= n_max; ++s[0]) {
    for (s[1] = 0; s[1] <= (modes > 1 ? n_max - s[0] : 0); ++s[1]) {
      for (s[2] = 0; s[2] <= (modes > 2 ? n_max - s[0] - s[1] : 0); ++s[2]) {
        b.index[b.code(s)] = static_cast<int>(b.states.size());
        b.states.push_back(s);
      }
    }
  }
  return b;
}

Eigen::SparseMatrix<double> fock_hamiltonian(const RMatrix& V, const FockBasis& b) {
  const std::size_t n = b.modes;
  RVector omega(static_cast<Eigen::Index>(n));
  for (std::size_t a = 0; a < n; ++a) omega[static_cast<Eigen::Index>(a)] = std::sqrt(V(a, a));
  std::vector<Eigen::Triplet<double>> trip;
  for (std::size_t i = 0; i < b.states.size(); ++i) {
    const auto& s = b.states[i];
    double diag = 0.0;
    for (std::size_t a = 0; a < n; ++a) diag += omega[static_cast<Eigen::Index>(a)] * (s[a] + 0.5);
    trip.emplace_back(static_cast<int>(i), static_cast<int>(i), diag);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t c = a + 1; c < n; ++c) {
        if (V(a, c) == 0.0) continue;
        // V_ac φ_a φ_c with φ = (a + a†)/√(2ω).
        const double coupling = V(a, c) / (2.0 * std::sqrt(omega[static_cast<Eigen::Index>(a)] * omega[static_cast<Eigen::Index>(c)]));
        for (int da : {-1, 1}) {
          for (int dc : {-1, 1}) {
            auto t = s;
            t[a] += da;
            t[c] += dc;
            if (t[a] < 0 || t[c] < 0 || t[a] > b.n_max || t[c] > b.n_max) continue;
            const int j = b.index[b.code(t)];
            if (j < 0) continue;
            const double fa = da < 0 ? std::sqrt(static_cast<double>(s[a])) : std::sqrt(s[a] + 1.0);
            const double fc = dc < 0 ? std::sqrt(static_cast<double>(s[c])) : std::sqrt(s[c] + 1.0);
            trip.emplace_back(j, static_cast<int>(i), coupling * fa * fc);
          }
        }
      }
    }
  }
  const auto dim = static_cast<Eigen::Index>(b.states.size());
  Eigen::SparseMatrix<double> h(dim, dim);
  h.setFromTriplets(trip.begin(), trip.end());
  return h;
}

// Restarted Lanczos with full reorthogonalization; returns the lowest eigenpair.
std::pair<double, RVector> lanczos_ground(const Eigen::SparseMatrix<double>& h, RVector start) {
  const Eigen::Index n = h.rows();
  const Eigen::Index steps = std::min<Eigen::Index>(n, 150);
  constexpr int kMaxRestarts = 60;
  RVector y = start.normalized();
  double theta = 0.0;
  for (int restart = 0; restart < kMaxRestarts; ++restart) {
    RMatrix q(n, steps);
    RVector alpha(steps), beta(steps);
    q.col(0) = y;
    Eigen::Index m = steps;
    for (Eigen::Index j = 0; j < steps; ++j) {
      RVector w = h * q.col(j);
      alpha[j] = q.col(j).dot(w);
      for (int pass = 0; pass < 2; ++pass) w -= q.leftCols(j + 1) * (q.leftCols(j + 1).transpose() * w);
      beta[j] = w.norm();
      if (j + 1 == steps) break;
      if (beta[j] < 1e-13) {
        m = j + 1;
        break;
      }
      q.col(j + 1) = w / beta[j];
    }
    RMatrix t = RMatrix::Zero(m, m);
    for (Eigen::Index j = 0; j < m; ++j) {
      t(j, j) = alpha[j];
      if (j + 1 < m) t(j, j + 1) = t(j + 1, j) = beta[j];
    }
    Eigen::SelfAdjointEigenSolver<RMatrix> es(t);
    theta = es.eigenvalues()[0];
    y = (q.leftCols(m) * es.eigenvectors().col(0)).normalized();
    const double residual = (h * y - theta * y).norm();
    if (residual <= 1e-11 * std::max(1.0, std::abs(theta))) return {theta, y};
  }
  throw ConvergenceError("Lanczos ground state did not converge");
}

double fock_entropy_at(const GaussianModel& model, const TracedRegion& region, int n_max, FockOracleResult& info) {
  const std::size_t n = model.size();
  const FockBasis basis = make_basis(n, n_max);
  const auto h = fock_hamiltonian(model.V, basis);
  RVector start = RVector::Zero(static_cast<Eigen::Index>(basis.states.size()));
  start[0] = 1.0;  // |0…0⟩ lies in the ground state's symmetry sector
  const auto [energy, psi] = lanczos_ground(h, start);

  // Reduce onto the side with fewer modes (same nonzero spectrum for a pure state).
  auto kept = kept_indices(region, n);
  const auto& side = kept.size() <= region.indices.size() ? kept : region.indices;
  std::vector<std::size_t> other;
  for (std::size_t a = 0; a < n; ++a) {
    if (std::find(side.begin(), side.end(), a) == side.end()) other.push_back(a);
  }
  auto encode = [&](const std::array<int, 3>& s, const std::vector<std::size_t>& modes) {
    std::size_t c = 0;
    for (auto a : modes) c = c * static_cast<std::size_t>(n_max + 1) + static_cast<std::size_t>(s[a]);
    return static_cast<Eigen::Index>(c);
  };
  Eigen::Index rows = 1, cols = 1;
  for (std::size_t k = 0; k < side.size(); ++k) rows *= n_max + 1;
  for (std::size_t k = 0; k < other.size(); ++k) cols *= n_max + 1;
  RMatrix amp = RMatrix::Zero(rows, cols);
  for (std::size_t i = 0; i < basis.states.size(); ++i) {
    amp(encode(basis.states[i], side), encode(basis.states[i], other)) = psi[static_cast<Eigen::Index>(i)];
  }
  Eigen::SelfAdjointEigenSolver<RMatrix> es(amp * amp.transpose(), Eigen::EigenvaluesOnly);
  info.ground_energy = energy;
  info.basis_size = basis.states.size();
  return entropy_from_spectrum(to_vector(es.eigenvalues()));
}

}  // namespace

FockOracleResult fock_oracle(const GaussianModel& model, const TracedRegion& region, int n_max) {
  if (model.size() > 3) throw DomainError(fmt::format("Fock oracle supports at most 3 oscillators (got {})", model.size()));
  if (n_max < 20) throw DomainError(fmt::format("n_max must be >= 20 (got {})", n_max));
  if (n_max > kFockCap) throw DomainError(fmt::format("n_max must be <= {} (got {})", kFockCap, n_max));
  kept_indices(region, model.size());
  FockOracleResult out;
  double previous = fock_entropy_at(model, region, n_max, out);
  for (int next = n_max + 10; next <= kFockCap; next += 10) {
    const double s = fock_entropy_at(model, region, next, out);
    out.last_change = std::abs(s - previous);
    out.entropy = s;
    out.n_max = next;
    if (out.last_change < kFockTolerance) return out;
    previous = s;
  }
  throw ConvergenceError(fmt::format("Fock oracle not converged at n_max = {} (last change {:.3e})", kFockCap, out.last_change));
}

double fock_oracle_entropy(const GaussianModel& model, const TracedRegion& region, int n_max) {
  return fock_oracle(model, region, n_max).entropy;
}

std::vector<OracleCase> oracle_grid() {
  std::vector<OracleCase> out;
  for (int i = 0; i < 10; ++i) {
    const double e = 0.1 + 0.8 * i / 9.0;
    RMatrix v(2, 2);
    v << 1.0, e, e, 1.0;
    out.push_back({fmt::format("pair eps={:.4f}", e), v, TracedRegion{{0}}});
  }
  for (int i = 0; i < 10; ++i) {
    const double e = 0.1 + 0.55 * i / 9.0;
    RMatrix v(3, 3);
    v << 1.0, e, 0.0, e, 1.0, e, 0.0, e, 1.0;
    // Alternate between tracing an end site and the middle site.
    TracedRegion r{i % 2 == 0 ? std::vector<std::size_t>{2} : std::vector<std::size_t>{1}};
    out.push_back({fmt::format("chain3 eps={:.4f} traced={}", e, r.indices[0]), v, r});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Chain

RMatrix chain_potential(double mass, std::size_t sites, ChainBoundary boundary) {
  if (!(mass >= 0.0)) throw DomainError(fmt::format("mass must be >= 0 (got {})", mass));
  if (sites < 2) throw DomainError("chain needs at least 2 sites");
  const auto n = static_cast<Eigen::Index>(sites);
  RMatrix v = RMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    v(i, i) = mass * mass + 2.0;
    if (i + 1 < n) v(i, i + 1) = v(i + 1, i) = -1.0;
  }
  if (boundary == ChainBoundary::periodic && n > 2) v(0, n - 1) = v(n - 1, 0) = -1.0;
  return v;
}

std::vector<ChainPoint> chain_scan(double mass, std::size_t sites, const std::vector<std::size_t>& region_sizes,
                                   ChainBoundary boundary) {
  for (auto ell : region_sizes) {
    if (ell >= sites) throw DomainError(fmt::format("region size {} must be below the site count {}", ell, sites));
  }
  const auto model = ground_state_w(chain_potential(mass, sites, boundary));
  std::vector<ChainPoint> out;
  out.reserve(region_sizes.size());
  for (auto ell : region_sizes) {
    std::vector<std::size_t> kept(ell);
    std::iota(kept.begin(), kept.end(), std::size_t{0});
    out.push_back({ell, kept_entropy(model, kept)});
  }
  return out;
}

LogFit fit_log_slope(const std::vector<ChainPoint>& curve, std::size_t ell_min, std::size_t ell_max) {
  std::vector<double> x, y;
  for (const auto& p : curve) {
    if (p.ell >= ell_min && p.ell <= ell_max && p.ell > 0) {
      x.push_back(std::log(static_cast<double>(p.ell)));
      y.push_back(p.entropy);
    }
  }
  if (x.size() < 2) throw DomainError("log fit needs at least two points in range");
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  LogFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r2 = syy > 0 ? sxy * sxy / (sxx * syy) : 1.0;
  f.points = x.size();
  return f;
}

}  // namespace qfoundry::gaussian
