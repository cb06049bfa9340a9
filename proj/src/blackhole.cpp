#include "qfoundry/blackhole.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/minima.hpp>
#include <fmt/format.h>

#include "qfoundry/core/ops.hpp"
#include "qfoundry/core/random.hpp"
#include "qfoundry/error.hpp"

namespace qfoundry::blackhole {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

double SchwarzschildParams::newton() const {
  if (!(M > 0.0)) throw DomainError(fmt::format("mass must be positive (got {})", M));
  const double g = units == UnitSystem::si ? constants.G : G;
  if (!(g > 0.0)) throw DomainError(fmt::format("G must be positive (got {})", g));
  return g;
}

namespace {

// S(M) in units of k_B.
double entropy_of_mass(double mass, const SchwarzschildParams& p) {
  const double g = p.newton();
  if (p.units == UnitSystem::natural) return 4.0 * kPi * g * mass * mass;
  return 4.0 * kPi * g * mass * mass / (p.constants.hbar * p.constants.c);
}

double schwarzschild_radius(const SchwarzschildParams& p) {
  const double g = p.newton();
  return p.units == UnitSystem::natural ? 2.0 * g * p.M : 2.0 * g * p.M / (p.constants.c * p.constants.c);
}

}  // namespace

ThermoRecord schwarzschild_thermo(const SchwarzschildParams& p) {
  const double g = p.newton();
  const auto& k = p.constants;
  const bool si = p.units == UnitSystem::si;
  ThermoRecord t;
  t.r_s = schwarzschild_radius(p);
  t.area = 4.0 * kPi * t.r_s * t.r_s;
  t.T_H = si ? k.hbar * std::pow(k.c, 3) / (8.0 * kPi * g * p.M * k.k_B) : 1.0 / (8.0 * kPi * g * p.M);
  t.S_BH = si ? t.area * std::pow(k.c, 3) / (4.0 * g * k.hbar) : t.area / (4.0 * g);
  t.S_mass_form = entropy_of_mass(p.M, p);
  t.T_unruh_local = 1.0 / (2.0 * kPi);
  t.T_redshift = t.T_unruh_local / (4.0 * g * p.M) * (si ? k.hbar * std::pow(k.c, 3) / k.k_B : 1.0);

  const double delta = 1e-6 * p.M;
  const double ds_dm = (entropy_of_mass(p.M + delta, p) - entropy_of_mass(p.M - delta, p)) / (2.0 * delta);
  // dS·k_B = dE/T with dE = c² dM.
  t.first_law_ratio = ds_dm * t.T_H * (si ? k.k_B / (k.c * k.c) : 1.0);
  return t;
}

double effective_potential(double r, int l, const SchwarzschildParams& p) {
  if (l < 0) throw DomainError(fmt::format("angular momentum must be >= 0 (got {})", l));
  const double rs = schwarzschild_radius(p);
  if (!(r > rs)) throw DomainError(fmt::format("radius {} must exceed r_s = {}", r, rs));
  const double ll = static_cast<double>(l) * (l + 1);
  return (1.0 - rs / r) * (rs / (r * r * r) + ll / (r * r));
}

BarrierPeak barrier_max(int l, const SchwarzschildParams& p) {
  const double rs = schwarzschild_radius(p);
  const auto neg = [&](double r) { return -effective_potential(r, l, p); };
  const auto [r, v] = boost::math::tools::brent_find_minima(neg, rs * (1.0 + 1e-9), 20.0 * rs,
                                                            std::numeric_limits<double>::digits);
  return BarrierPeak{r, -v};
}

BarrierFit barrier_scaling(int l_max, const SchwarzschildParams& p) {
  if (l_max < 1) throw DomainError("l_max must be >= 1");
  BarrierFit f;
  std::vector<double> x, y;
  for (int l = 0; l <= l_max; ++l) {
    f.peaks.push_back(barrier_max(l, p));
    x.push_back(static_cast<double>(l) * l + 1.0);
    y.push_back(f.peaks.back().V_max);
  }
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) mx += x[i] / n, my += y[i] / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r2 = sxy * sxy / (sxx * syy);
  const double th = schwarzschild_thermo(p).T_H;
  f.slope_over_TH2 = p.units == UnitSystem::natural ? f.slope / (th * th) : 0.0;
  return f;
}

UnruhState unruh_state(const UnruhMode& m) {
  if (!(m.omega > 0.0)) throw DomainError(fmt::format("omega must be positive (got {})", m.omega));
  if (!(m.accel > 0.0)) throw DomainError(fmt::format("acceleration must be positive (got {})", m.accel));
  if (m.n_max < 10) throw DomainError(fmt::format("n_max must be >= 10 (got {})", m.n_max));
  const auto d = static_cast<std::size_t>(m.n_max + 1);
  const HilbertPartition part({d, d}, {"R", "L"});
  const double x = kPi * m.omega / m.accel;
  CVector amp = CVector::Zero(static_cast<Eigen::Index>(d * d));
  for (std::size_t n = 0; n < d; ++n) amp[static_cast<Eigen::Index>(n * d + n)] = std::exp(-x * static_cast<double>(n));
  auto state = StateVector::normalized(std::move(amp), part);
  auto rho_r = reduced_density(state, {"R"});
  const auto rho_l = reduced_density(state, {"L"});

  UnruhState u{state, rho_r, {}, std::exp(-2.0 * x), 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, std::nullopt};
  for (std::size_t n = 0; n < d; ++n) {
    const double p = rho_r.matrix()(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)).real();
    u.occupation.push_back(p);
    u.mean_occupation += static_cast<double>(n) * p;
  }
  u.bose_einstein = 1.0 / std::expm1(2.0 * x);
  u.entropy_R = von_neumann_entropy(rho_r);
  u.entropy_L = von_neumann_entropy(rho_l);
  const double q = u.ratio;
  u.thermal_entropy = -std::log1p(-q) - q * std::log(q) / (1.0 - q);
  u.truncation_error = std::exp(-2.0 * x * static_cast<double>(m.n_max + 1));
  if (u.truncation_error >= 1e-12) {
    u.warning = fmt::format("truncation weight {:.3e} at n_max = {} exceeds 1e-12", u.truncation_error, m.n_max);
  }
  return u;
}

std::vector<PagePoint> page_curve_mc(unsigned n_qubits, std::uint64_t samples, std::uint64_t seed) {
  if (n_qubits < 2 || n_qubits > 14) throw DomainError(fmt::format("n_qubits must be in [2, 14] (got {})", n_qubits));
  if (samples < 2) throw DomainError("samples must be >= 2");
  const auto part = HilbertPartition::qubits(n_qubits);
  const std::size_t n = n_qubits;
  std::vector<double> sum(n + 1, 0.0), sum_sq(n + 1, 0.0);
  for (std::uint64_t k = 0; k < samples; ++k) {
    const auto psi = haar_random_state(part, seed, k);
    LabelSet keep;
    for (std::size_t m = 1; m < n; ++m) {
      keep.push_back(part.labels()[m - 1]);
      const double s = entropy_from_spectrum(subsystem_spectrum(psi, keep));
      sum[m] += s;
      sum_sq[m] += s * s;
    }
  }
  const double ns = static_cast<double>(samples);
  std::vector<PagePoint> out;
  for (std::size_t m = 0; m <= n; ++m) {
    PagePoint p;
    p.m = m;
    p.mean_entropy = sum[m] / ns;
    const double var = std::max(0.0, (sum_sq[m] - ns * p.mean_entropy * p.mean_entropy) / (ns - 1.0));
    p.std_error = std::sqrt(var / ns);
    p.boltzmann = static_cast<double>(std::min(m, n - m)) * std::numbers::ln2;
    p.information = p.boltzmann - p.mean_entropy;
    out.push_back(p);
  }
  return out;
}

double page_mean_entropy(std::uint64_t d_a, std::uint64_t d_b) {
  if (d_a == 0 || d_b == 0) throw DomainError("dimensions must be positive");
  if (d_a > d_b) std::swap(d_a, d_b);
  double s = 0.0;
  for (std::uint64_t k = d_a * d_b; k > d_b; --k) s += 1.0 / static_cast<double>(k);
  return s - static_cast<double>(d_a - 1) / (2.0 * static_cast<double>(d_b));
}

ThermofieldDouble thermofield_double(const std::vector<double>& spectrum, double beta) {
  if (spectrum.empty()) throw DomainError("spectrum is empty");
  if (!(beta > 0.0)) throw DomainError(fmt::format("beta must be positive (got {})", beta));
  const std::size_t d = spectrum.size();
  const double e0 = *std::min_element(spectrum.begin(), spectrum.end());
  std::vector<double> w(d);
  double z = 0.0;
  for (std::size_t i = 0; i < d; ++i) z += (w[i] = std::exp(-beta * (spectrum[i] - e0)));
  const HilbertPartition part({d, d}, {"A", "B"});
  CVector amp = CVector::Zero(static_cast<Eigen::Index>(d * d));
  std::vector<double> gibbs(d);
  for (std::size_t i = 0; i < d; ++i) {
    gibbs[i] = w[i] / z;
    amp[static_cast<Eigen::Index>(i * d + i)] = std::sqrt(gibbs[i]);
  }
  auto state = StateVector::normalized(std::move(amp), part);
  auto rho = reduced_density(state, {"A"});
  const double s = entropy_from_spectrum(gibbs);
  return ThermofieldDouble{std::move(state), std::move(rho), std::move(gibbs), s};
}

RtRecord rt_entropy(const AdsParams& p) {
  if (!(p.R > 0 && p.G3 > 0 && p.a_cut > 0 && p.l > 0)) throw DomainError("AdS parameters must all be positive");
  if (p.a_cut > p.l / 10.0) throw DomainError(fmt::format("cutoff a = {} exceeds l/10 = {}", p.a_cut, p.l / 10.0));
  // Geodesic z = (l/2) sin s, x = (l/2) cos s; induced length element R √(dx² + dz²)/z = R ds / sin s.
  const double eps = 2.0 * p.a_cut / p.l;
  const auto f = [&](double s) { return p.R / std::sin(s); };
  const double half = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, eps, kPi / 2.0, 15, 1e-13);
  RtRecord r;
  r.L_numeric = 2.0 * half;
  r.L_analytic = 2.0 * p.R * std::log(p.l / p.a_cut);
  r.L_exact = 2.0 * p.R * std::log(1.0 / std::tan(p.a_cut / p.l));
  r.relative_error = std::abs(r.L_numeric - r.L_analytic) / r.L_analytic;
  r.S_A = r.L_analytic / (4.0 * p.G3);
  r.S_A_numeric = r.L_numeric / (4.0 * p.G3);
  r.c = 3.0 * p.R / (2.0 * p.G3);
  r.cft_entropy = r.c / 3.0 * std::log(p.l / p.a_cut);
  return r;
}

double scaling_dimension(int d, double m2L2) {
  if (d < 1) throw DomainError(fmt::format("boundary dimension must be >= 1 (got {})", d));
  const double bound = -0.25 * d * d;
  if (m2L2 < bound) {
    throw DomainError(fmt::format("m^2 L^2 = {} violates the Breitenlohner-Freedman bound -d^2/4 = {}", m2L2, bound));
  }
  return 0.5 * d + std::sqrt(std::max(0.0, 0.25 * d * d + m2L2));
}

}  // namespace qfoundry::blackhole
