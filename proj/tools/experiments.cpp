#include "experiments.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>

#include <fmt/format.h>

#include "qfoundry/bell.hpp"
#include "qfoundry/blackhole.hpp"
#include "qfoundry/clock.hpp"
#include "qfoundry/core/ops.hpp"
#include "qfoundry/error.hpp"
#include "qfoundry/gaussian.hpp"
#include "qfoundry/gedanken.hpp"
#include "qfoundry/measurement.hpp"
#include "qfoundry/pilot_wave.hpp"

namespace qfoundry::cli {

namespace {

using report::Curve;
using report::ExperimentReport;
using report::Json;
using report::Unit;

constexpr double kPi = std::numbers::pi;
constexpr double kDeg = kPi / 180.0;

Curve curve(std::string name, std::vector<std::string> columns, std::vector<Unit> units) {
  return Curve{std::move(name), std::move(columns), std::move(units), {}};
}

Json matrix_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(row);
  }
  return rows;
}

// ---------------------------------------------------------------------------

Runner setup_mz(CLI::App* sub) {
  struct P {
    bool no_bs2 = false;
    double phase = 0.0;
  };
  auto p = std::make_shared<P>();
  sub->add_flag("--no-bs2", p->no_bs2, "Remove the second beam splitter");
  sub->add_option("--phase", p->phase, "Input phase (radians)")->capture_default_str()->check(CLI::Range(-10.0, 10.0));
  return [p](const Globals&) {
    ExperimentReport r;
    r.parameters = {{"bs2_present", !p->no_bs2}, {"input_phase", p->phase}};
    gedanken::InterferometerConfig cfg;
    cfg.bs2_present = !p->no_bs2;
    cfg.input_phase = p->phase;
    const auto d = gedanken::mach_zehnder(cfg);
    r.scalar("p_d1", d.p_d1, Unit::dimensionless);
    r.scalar("p_d2", d.p_d2, Unit::dimensionless);
    r.records["detectors"] = {{"D1", d.p_d1}, {"D2", d.p_d2}};
    const double sum = d.p_d1 + d.p_d2;
    r.verdict("probabilities_sum_to_one", std::abs(sum - 1.0) <= 1e-12, sum, 1e-12);
    if (cfg.bs2_present) {
      r.verdict("single_port_output", std::abs(d.p_d1 - 1.0) <= 1e-12, d.p_d1, 1e-12, "all photons at D1");
    } else {
      r.verdict("even_split_without_bs2", std::abs(d.p_d1 - 0.5) <= 1e-12, d.p_d1, 1e-12);
    }
    return r;
  };
}

Runner setup_cat(CLI::App* sub) {
  struct P {
    double alpha = 1.0 / std::numbers::sqrt2;
    double beta_phase = 0.0;
    double kappa = 0.3;
  };
  auto p = std::make_shared<P>();
  sub->add_option("--alpha", p->alpha, "Amplitude of |alive> (real)")->capture_default_str()->check(CLI::Range(0.0, 1.0));
  sub->add_option("--beta-phase", p->beta_phase, "Phase of the |dead> amplitude (radians)")->capture_default_str();
  sub->add_option("--kappa", p->kappa, "Environment overlap <E-|E+>")->capture_default_str()->check(CLI::Range(0.0, 1.0));
  return [p](const Globals&) {
    ExperimentReport r;
    r.parameters = {{"alpha", p->alpha}, {"beta_phase", p->beta_phase}, {"kappa", p->kappa}};
    const cplx alpha = p->alpha;
    const cplx beta = std::sqrt(std::max(0.0, 1.0 - p->alpha * p->alpha)) * std::exp(cplx(0.0, p->beta_phase));
    const auto c = gedanken::cat_chain(alpha, beta, p->kappa);
    r.scalar("coherence", c.coherence, Unit::dimensionless);
    r.scalar("entropy_rho_r", von_neumann_entropy(c.rho_r), Unit::nats);
    r.records["rho_r"] = matrix_json(c.rho_r.matrix());
    const double expected = std::abs(alpha * beta) * p->kappa;
    r.verdict("coherence_equals_alpha_beta_kappa", std::abs(c.coherence - expected) <= 1e-12, c.coherence - expected, 1e-12);
    r.verdict("rho_e_pure", std::abs(c.rho_e.purity() - 1.0) <= 1e-12, c.rho_e.purity(), 1e-12);
    return r;
  };
}

Runner setup_zeno(CLI::App* sub) {
  struct P {
    double t = kPi / 2.0;
    int kmax = 12;
  };
  auto p = std::make_shared<P>();
  sub->add_option("--t", p->t, "Total evolution time")->capture_default_str()->check(CLI::Range(1e-6, 100.0));
  sub->add_option("--kmax", p->kmax, "Largest k in N = 2^k")->capture_default_str()->check(CLI::Range(0, 24));
  return [p](const Globals&) {
    ExperimentReport r;
    r.parameters = {{"t", p->t}, {"kmax", p->kmax}, {"hamiltonian", "pauli_x"}, {"initial", "|0>"}};
    const auto part = HilbertPartition::single(2, "q");
    CMatrix x(2, 2);
    x << 0, 1, 1, 0;
    const Operator h(x, part, OperatorKind::hermitian);
    const auto psi0 = StateVector::basis(part, std::size_t{0});
    auto c = curve("", {"N", "survival"}, {Unit::dimensionless, Unit::dimensionless});
    bool monotone = true;
    double prev = -1.0, last = 0.0;
    for (int k = 0; k <= p->kmax; ++k) {
      const auto n = 1ULL << k;
      last = measurement::zeno_survival(psi0, h, p->t, n);
      c.add_row({static_cast<double>(n), last});
      if (last < prev) monotone = false;
      prev = last;
    }
    r.curves.push_back(c);
    r.verdict("survival_monotone_in_N", monotone, static_cast<double>(monotone), 0.0);
    if (p->kmax >= 12) r.verdict("survival_above_0.999", last > 0.999, last, 0.999);
    const auto tz = measurement::zeno_timescale(psi0, h);
    if (tz) {
      const double fd = measurement::zeno_timescale_finite_difference(psi0, h);
      r.scalar("zeno_time", *tz, Unit::natural);
      r.scalar("zeno_time_finite_difference", fd, Unit::natural);
      const double rel = std::abs(fd - *tz) / *tz;
      r.verdict("quadratic_coefficient_matches_variance", rel <= 1e-6, rel, 1e-6);
    }
    return r;
  };
}

Runner setup_decohere(CLI::App* sub) {
  struct P {
    double alpha = 1.0 / std::numbers::sqrt2;
    std::vector<double> kappas{0.0, 0.25, 0.5, 0.75, 1.0};
  };
  auto p = std::make_shared<P>();
  sub->add_option("--alpha", p->alpha, "Amplitude of |+> (real)")->capture_default_str()->check(CLI::Range(0.0, 1.0));
  sub->add_option("--kappa", p->kappas, "Environment overlaps")->delimiter(',')->capture_default_str()->check(CLI::Range(0.0, 1.0));
  return [p](const Globals&) {
    ExperimentReport r;
    r.parameters = {{"alpha", p->alpha}, {"kappa", p->kappas}};
    const cplx alpha = p->alpha;
    const cplx beta = std::sqrt(std::max(0.0, 1.0 - p->alpha * p->alpha));
    auto c = curve("", {"kappa", "off_diagonal"}, {Unit::dimensionless, Unit::dimensionless});
    double worst = 0.0;
    for (double k : p->kappas) {
      const auto res = measurement::decohere(measurement::DecoherenceChain::with_overlap(alpha, beta, k));
      c.add_row({k, res.coherence});
      worst = std::max(worst, std::abs(res.coherence - std::abs(alpha * beta) * k));
      if (k == 0.0) r.verdict("kappa0_offdiagonal_vanishes", res.coherence < 1e-12, res.coherence, 1e-12);
    }
    r.curves.push_back(c);
    r.verdict("offdiagonal_linear_in_kappa", worst <= 1e-10, worst, 1e-10);
    return r;
  };
}

Runner setup_bell(CLI::App* sub) {
  struct P {
    double theta = 45.0;
    std::uint64_t samples = 100000;
    std::string model = "sign";
    std::uint64_t rule_seed = 1;
  };
  auto p = std::make_shared<P>();
  sub->add_option("--theta", p->theta, "Angle of c from a in degrees (a along z, b at 90 degrees)")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 180.0));
  sub->add_option("--samples", p->samples, "Monte Carlo samples")->capture_default_str()->check(CLI::Range(2, 100000000));
  sub->add_option("--model", p->model, "Hidden-variable model")->capture_default_str()->check(CLI::IsMember({"sign", "randomized"}));
  sub->add_option("--rule-seed", p->rule_seed, "Seed of the randomized response rule")->capture_default_str();
  return [p](const Globals& g) {
    ExperimentReport r;
    r.parameters = {{"theta_deg", p->theta}, {"samples", p->samples}, {"model", p->model}, {"rule_seed", p->rule_seed}};
    const auto a = bell::Direction::in_plane(0.0);
    const auto b = bell::Direction::in_plane(90.0 * kDeg);
    const auto c = bell::Direction::in_plane(p->theta * kDeg);
    const auto model = p->model == "sign" ? bell::LhvModel::sign_model() : bell::LhvModel::randomized(p->rule_seed);

    auto cv = curve("", {"theta_deg", "quantum_P", "lhv_P"}, {Unit::dimensionless, Unit::dimensionless, Unit::dimensionless});
    for (int deg = 0; deg <= 180; deg += 5) {
      const auto d = bell::Direction::in_plane(deg * kDeg);
      cv.add_row({static_cast<double>(deg), bell::singlet_correlation(a, d),
                  bell::lhv_correlation(model, a, d, p->samples, g.seed).mean});
    }
    r.curves.push_back(cv);

    const auto q = bell::bell_check(a, b, c, bell::singlet_correlation);
    r.scalar("quantum_lhs", q.lhs, Unit::dimensionless);
    r.scalar("quantum_rhs", q.rhs, Unit::dimensionless);
    r.verdict("violated", q.violated, q.lhs - q.rhs, bell::kBellTolerance, "quantum singlet violates the inequality");
    const auto l = bell::bell_check_lhv(model, a, b, c, p->samples, g.seed);
    r.scalar("lhv_lhs", l.check.lhs, Unit::dimensionless);
    r.scalar("lhv_rhs", l.check.rhs, Unit::dimensionless);
    r.scalar("lhv_sigma", l.sigma, Unit::dimensionless);
    r.records["lhv_model"] = model.name;
    r.verdict("lhv_satisfies_within_3sigma", !l.violated_beyond_3sigma, l.check.lhs - l.check.rhs, 3.0 * l.sigma);
    return r;
  };
}

Runner setup_frwigner(CLI::App*) {
  return [](const Globals&) {
    ExperimentReport r;
    const auto tr = gedanken::fr_protocol();
    auto cv = curve("", {"a_fail", "w_fail", "probability"}, {Unit::dimensionless, Unit::dimensionless, Unit::dimensionless});
    Json table = Json::array();
    double sum = 0.0;
    for (const auto& o : tr.outcomes) {
      cv.add_row({o.a == "fail" ? 1.0 : 0.0, o.w == "fail" ? 1.0 : 0.0, o.probability});
      table.push_back({{"a", o.a}, {"w", o.w}, {"probability", o.probability}});
      sum += o.probability;
    }
    r.curves.push_back(cv);
    r.records["outcomes"] = table;
    Json mem = Json::array();
    double mem_diff = 0.0;
    for (std::size_t i = 0; i < tr.memory_outcomes.size(); ++i) {
      const auto& o = tr.memory_outcomes[i];
      mem.push_back({{"a", o.a}, {"w", o.w}, {"probability", o.probability}});
      mem_diff = std::max(mem_diff, std::abs(o.probability - tr.outcomes[i].probability));
    }
    r.records["memory_outcomes"] = mem;
    Json imp = Json::array();
    for (const auto& i : tr.implications) {
      imp.push_back({{"statement", i.statement}, {"conditional_probability", i.conditional_probability}});
      r.verdict("implication " + i.statement, std::abs(i.conditional_probability - 1.0) <= 1e-12,
                i.conditional_probability, 1e-12);
    }
    r.records["implications"] = imp;
    r.notes = tr.notes;
    const double pok = tr.probability("ok", "ok");
    r.scalar("p_ok_ok", pok, Unit::dimensionless);
    r.scalar("displayed_expansion_mismatch", tr.displayed_expansion_mismatch, Unit::dimensionless);
    r.verdict("p_ok_ok_is_1/12", std::abs(pok - 1.0 / 12.0) <= 1e-12, pok, 1e-12);
    r.verdict("outcomes_sum_to_one", std::abs(sum - 1.0) <= 1e-12, sum, 1e-12);
    r.verdict("memory_registers_agree", mem_diff <= 1e-12, mem_diff, 1e-12);
    r.verdict("displayed_states_reproduced", tr.displayed_expansion_mismatch <= 1e-12, tr.displayed_expansion_mismatch, 1e-12);
    return r;
  };
}

Runner setup_immortal(CLI::App* sub) {
  auto rounds = std::make_shared<unsigned>(10);
  sub->add_option("--rounds", *rounds, "Number of 50/50 rounds")->capture_default_str()->check(CLI::Range(1, 63));
  return [rounds](const Globals&) {
    ExperimentReport r;
    r.parameters = {{"rounds", *rounds}};
    const auto rec = gedanken::quantum_immortality(*rounds);
    r.scalar("copenhagen_survival", rec.copenhagen_survival, Unit::dimensionless);
    r.scalar("branch_count", static_cast<double>(rec.branch_count), Unit::dimensionless);
    r.scalar("surviving_branch_weight", rec.surviving_branch_weight, Unit::dimensionless);
    r.scalar("conditional_survival", rec.conditional_survival, Unit::dimensionless);
    const double expected = std::ldexp(1.0, -static_cast<int>(*rounds));
    r.verdict("copenhagen_is_2^-n", rec.copenhagen_survival == expected, rec.copenhagen_survival, 0.0);
    r.verdict("conditional_survival_is_one", rec.conditional_survival == 1.0, rec.conditional_survival, 0.0);
    return r;
  };
}

Runner setup_gaussent(CLI::App* sub) {
  struct P {
    std::size_t sites = 200;
    double mass = 1e-6;
    std::vector<std::size_t> regions;
    bool oracle = false;
    std::string boundary = "periodic";
  };
  auto p = std::make_shared<P>();
  sub->add_option("--sites", p->sites, "Chain length")->capture_default_str()->check(CLI::Range(4, 2000));
  sub->add_option("--mass", p->mass, "Mass m >= 0")->capture_default_str()->check(CLI::Range(0.0, 1e3));
  sub->add_option("--regions", p->regions, "Region sizes (default 1..sites/4)")->delimiter(',');
  sub->add_flag("--oracle", p->oracle, "Also run the Fock-oracle equivalence grid");
  sub->add_option("--boundary", p->boundary, "Chain boundary")->capture_default_str()->check(CLI::IsMember({"periodic", "open"}));
  return [p](const Globals&) {
    ExperimentReport r;
    auto regions = p->regions;
    if (regions.empty()) {
      for (std::size_t l = 1; l <= p->sites / 4; ++l) regions.push_back(l);
    }
    r.parameters = {{"sites", p->sites}, {"mass", p->mass}, {"regions", regions}, {"oracle", p->oracle}, {"boundary", p->boundary}};
    const auto bc = p->boundary == "open" ? gaussian::ChainBoundary::open : gaussian::ChainBoundary::periodic;
    const auto scan = gaussian::chain_scan(p->mass, p->sites, regions, bc);
    auto cv = curve("", {"ell", "S"}, {Unit::dimensionless, Unit::nats});
    for (const auto& pt : scan) cv.add_row({static_cast<double>(pt.ell), pt.entropy});
    r.curves.push_back(cv);

    const std::size_t lo = 4, hi = p->sites / 4;
    const auto in_range = std::count_if(scan.begin(), scan.end(), [&](const auto& pt) { return pt.ell >= lo && pt.ell <= hi; });
    if (in_range >= 2) {
      const auto fit = gaussian::fit_log_slope(scan, lo, hi);
      r.records["fit"] = {{"ell_min", lo}, {"ell_max", hi}, {"slope", fit.slope}, {"intercept", fit.intercept},
                          {"r2", fit.r2}, {"points", fit.points}};
      r.scalar("log_slope", fit.slope, Unit::nats);
      if (p->mass * static_cast<double>(p->sites) < 1e-2) {
        const double rel = std::abs(fit.slope - 1.0 / 3.0) * 3.0;
        r.verdict("log_slope_one_third", rel <= 0.1, fit.slope, 0.1 / 3.0, "relative tolerance 10%");
      }
    }
    const auto find = [&](std::size_t l) -> const gaussian::ChainPoint* {
      for (const auto& pt : scan) if (pt.ell == l) return &pt;
      return nullptr;
    };
    if (p->mass >= 1.0 && find(20) && find(40)) {
      const double rel = std::abs(find(40)->entropy - find(20)->entropy) / find(20)->entropy;
      r.verdict("saturation_20_40", rel <= 0.01, rel, 0.01);
    }
    if (p->oracle) {
      Json cases = Json::array();
      double worst = 0.0;
      for (const auto& c : gaussian::oracle_grid()) {
        const auto model = gaussian::ground_state_w(c.V);
        const double s = gaussian::bombelli_entropy(model, c.region);
        const auto o = gaussian::fock_oracle(model, c.region, 20);
        const double lit = gaussian::bombelli_literal_entropy(model, c.region);
        worst = std::max(worst, std::abs(s - o.entropy));
        cases.push_back({{"model", c.label}, {"bombelli", s}, {"literal", lit}, {"fock", o.entropy}, {"n_max", o.n_max},
                         {"basis_size", o.basis_size}});
      }
      r.records["oracle"] = cases;
      r.scalar("oracle_max_difference", worst, Unit::nats);
      r.verdict("oracle_equivalence", worst <= 1e-6, worst, 1e-6);
    }
    return r;
  };
}

Runner setup_hawking(CLI::App* sub) {
  struct P {
    double mass = 1.0;
    double G = 1.0;
    double mass_solar = 1.0;
  };
  auto p = std::make_shared<P>();
  sub->add_option("--mass", p->mass, "Mass M in natural units")->capture_default_str()->check(CLI::PositiveNumber);
  sub->add_option("--G", p->G, "Newton constant in natural units")->capture_default_str()->check(CLI::PositiveNumber);
  sub->add_option("--mass-solar", p->mass_solar, "Mass in solar masses (SI units)")->capture_default_str()->check(CLI::PositiveNumber);
  return [p](const Globals& g) {
    ExperimentReport r;
    const bool si = g.units == UnitSystem::si;
    blackhole::SchwarzschildParams sp;
    sp.units = g.units;
    sp.constants = g.constants;
    if (si) {
      sp.M = p->mass_solar * g.constants.solar_mass;
      r.parameters = {{"units", "si"}, {"mass_solar", p->mass_solar}, {"mass_kg", sp.M}};
    } else {
      sp.M = p->mass;
      sp.G = p->G;
      r.parameters = {{"units", "natural"}, {"mass", p->mass}, {"G", p->G}};
    }
    const auto t = blackhole::schwarzschild_thermo(sp);
    const Unit len = si ? Unit::metre : Unit::natural;
    const Unit temp = si ? Unit::kelvin : Unit::natural;
    r.scalar("r_s", t.r_s, len);
    r.scalar("area", t.area, si ? Unit::dimensionless : Unit::natural);
    r.scalar("T_H", t.T_H, temp);
    r.scalar("S_BH", t.S_BH, Unit::nats);
    r.scalar("S_mass_form", t.S_mass_form, Unit::nats);
    r.scalar("T_unruh_local", t.T_unruh_local, Unit::natural);
    r.scalar("T_redshift_chain", t.T_redshift, temp);
    r.scalar("first_law_ratio", t.first_law_ratio, Unit::dimensionless);
    if (si) r.notes.push_back("area is in square metres");
    const double rel_s = std::abs(t.S_BH - t.S_mass_form) / t.S_mass_form;
    r.verdict("entropy_forms_agree", rel_s <= 1e-12, rel_s, 1e-12);
    const double rel_t = std::abs(t.T_redshift - t.T_H) / t.T_H;
    r.verdict("redshift_chain_reproduces_T_H", rel_t <= 1e-12, rel_t, 1e-12);
    const double fl = std::abs(t.first_law_ratio - 1.0);
    r.verdict("first_law_dS_dM_over_T", fl <= 1e-6, fl, 1e-6);
    return r;
  };
}

Runner setup_unruh(CLI::App* sub) {
  auto m = std::make_shared<blackhole::UnruhMode>(blackhole::UnruhMode{1.0, 2.0 * kPi, 60});
  sub->add_option("--omega", m->omega, "Mode frequency")->capture_default_str()->check(CLI::PositiveNumber);
  sub->add_option("--accel", m->accel, "Acceleration a")->capture_default_str()->check(CLI::PositiveNumber);
  sub->add_option("--nmax", m->n_max, "Fock truncation")->capture_default_str()->check(CLI::Range(10, 120));
  return [m](const Globals&) {
    ExperimentReport r;
    r.parameters = {{"omega", m->omega}, {"accel", m->accel}, {"n_max", m->n_max}};
    const auto u = blackhole::unruh_state(*m);
    auto cv = curve("", {"n", "p_n", "geometric"}, {Unit::dimensionless, Unit::dimensionless, Unit::dimensionless});
    double worst = 0.0;
    for (std::size_t n = 0; n < u.occupation.size(); ++n) {
      cv.add_row({static_cast<double>(n), u.occupation[n], (1.0 - u.ratio) * std::pow(u.ratio, static_cast<double>(n))});
      if (n + 1 < u.occupation.size()) worst = std::max(worst, std::abs(u.occupation[n + 1] / u.occupation[n] - u.ratio));
    }
    r.curves.push_back(cv);
    if (u.warning) r.notes.push_back(*u.warning);
    r.scalar("ratio", u.ratio, Unit::dimensionless);
    r.scalar("mean_occupation", u.mean_occupation, Unit::dimensionless);
    r.scalar("bose_einstein", u.bose_einstein, Unit::dimensionless);
    r.scalar("entropy_R", u.entropy_R, Unit::nats);
    r.scalar("thermal_entropy", u.thermal_entropy, Unit::nats);
    r.scalar("truncation_error", u.truncation_error, Unit::dimensionless);
    r.verdict("ratio_e^-2pi_omega/a", worst <= 1e-10, worst, 1e-10);
    const double tol = 1e-12 + 10.0 * (m->n_max + 2) * u.truncation_error;
    const double d_occ = std::abs(u.mean_occupation - u.bose_einstein);
    r.verdict("bose_einstein_occupation", d_occ <= tol, d_occ, tol);
    const double d_s = std::abs(u.entropy_R - u.thermal_entropy);
    r.verdict("thermal_entropy", d_s <= tol * (1.0 + m->n_max), d_s, tol * (1.0 + m->n_max));
    const double d_rl = std::abs(u.entropy_R - u.entropy_L);
    r.verdict("S_R_equals_S_L", d_rl <= 1e-10, d_rl, 1e-10);
    return r;
  };
}

Runner setup_barrier(CLI::App* sub) {
  struct P {
    int lmax = 10;
    double mass = 1.0;
  };
  auto p = std::make_shared<P>();
  sub->add_option("--lmax", p->lmax, "Largest angular momentum")->capture_default_str()->check(CLI::Range(1, 100));
  sub->add_option("--mass", p->mass, "Mass M (natural units, G = 1)")->capture_default_str()->check(CLI::PositiveNumber);
  return [p](const Globals&) {
    ExperimentReport r;
    r.parameters = {{"lmax", p->lmax}, {"mass", p->mass}};
    blackhole::SchwarzschildParams sp;
    sp.M = p->mass;
    const auto f = blackhole::barrier_scaling(p->lmax, sp);
    const double rs = 2.0 * p->mass;
    auto cv = curve("", {"l", "r_peak", "V_max"}, {Unit::dimensionless, Unit::natural, Unit::natural});
    for (std::size_t l = 0; l < f.peaks.size(); ++l) cv.add_row({static_cast<double>(l), f.peaks[l].r_peak, f.peaks[l].V_max});
    r.curves.push_back(cv);
    r.scalar("slope", f.slope, Unit::natural);
    r.scalar("intercept", f.intercept, Unit::natural);
    r.scalar("r2", f.r2, Unit::dimensionless);
    r.scalar("slope_over_T_H^2", f.slope_over_TH2, Unit::dimensionless);
    r.scalar("l0_peak_over_r_s", f.peaks[0].r_peak / rs, Unit::dimensionless);
    r.verdict("linear_in_l^2+1", f.r2 >= 0.999, f.r2, 0.999);
    const double dev = std::abs(f.peaks[0].r_peak / rs - 4.0 / 3.0);
    r.verdict("l0_peak_at_4/3_r_s", dev <= 1e-6, dev, 1e-6);
    return r;
  };
}

Runner setup_pagecurve(CLI::App* sub) {
  struct P {
    unsigned qubits = 10;
    std::uint64_t samples = 500;
  };
  auto p = std::make_shared<P>();
  sub->add_option("--qubits", p->qubits, "Total qubits n")->capture_default_str()->check(CLI::Range(2, 14));
  sub->add_option("--samples", p->samples, "Haar samples")->capture_default_str()->check(CLI::Range(2, 1000000));
  return [p](const Globals& g) {
    ExperimentReport r;
    r.parameters = {{"qubits", p->qubits}, {"samples", p->samples}};
    const auto pts = blackhole::page_curve_mc(p->qubits, p->samples, g.seed);
    const std::size_t n = p->qubits;
    auto cv = curve("", {"m", "S_mean", "I", "stderr"}, {Unit::dimensionless, Unit::nats, Unit::nats, Unit::nats});
    Json exact = Json::array();
    for (const auto& pt : pts) {
      cv.add_row({static_cast<double>(pt.m), pt.mean_entropy, pt.information, pt.std_error});
      exact.push_back(pt.m == 0 || pt.m == n ? 0.0 : blackhole::page_mean_entropy(1ULL << pt.m, 1ULL << (n - pt.m)));
    }
    r.curves.push_back(cv);
    r.records["page_exact_mean"] = exact;

    std::size_t argmax = 0;
    bool unimodal = true;
    for (std::size_t m = 1; m <= n; ++m) {
      if (pts[m].mean_entropy > pts[argmax].mean_entropy) argmax = m;
    }
    for (std::size_t m = 1; m <= n; ++m) {
      const bool rising = m <= argmax;
      if (rising && !(pts[m].mean_entropy > pts[m - 1].mean_entropy)) unimodal = false;
      if (!rising && !(pts[m].mean_entropy < pts[m - 1].mean_entropy)) unimodal = false;
    }
    r.verdict("unimodal", unimodal, static_cast<double>(unimodal), 0.0);
    r.verdict("maximum_at_n/2", argmax == n / 2, static_cast<double>(argmax), 0.0);
    double worst_sym = 0.0, worst_info = 0.0;
    bool sym_ok = true, info_ok = true;
    for (std::size_t m = 0; m <= n; ++m) {
      const auto& a = pts[m];
      const auto& b = pts[n - m];
      const double d = std::abs(a.mean_entropy - b.mean_entropy);
      const double sigma = std::hypot(a.std_error, b.std_error);
      worst_sym = std::max(worst_sym, d);
      if (d > 3.0 * sigma && d > 1e-12) sym_ok = false;
      worst_info = std::min(worst_info, a.information + 3.0 * a.std_error);
      if (a.information < -3.0 * a.std_error) info_ok = false;
    }
    r.verdict("symmetric_within_3sigma", sym_ok, worst_sym, 0.0);
    r.verdict("information_nonnegative_within_3sigma", info_ok, worst_info, 0.0);
    if (n >= 10) {
      const double target = 0.95 * 2.0 * std::numbers::ln2;
      r.verdict("S(2)_near_maximal", pts[2].mean_entropy >= target, pts[2].mean_entropy, target);
    }
    return r;
  };
}

Runner setup_tfd(CLI::App* sub) {
  struct P {
    std::vector<double> energies{0.0, 1.0};
    double beta = std::log(3.0);
  };
  auto p = std::make_shared<P>();
  sub->add_option("--energies", p->energies, "Energy spectrum")->delimiter(',')->capture_default_str();
  sub->add_option("--beta", p->beta, "Inverse temperature")->capture_default_str()->check(CLI::PositiveNumber);
  return [p](const Globals&) {
    ExperimentReport r;
    r.parameters = {{"energies", p->energies}, {"beta", p->beta}};
    const auto t = blackhole::thermofield_double(p->energies, p->beta);
    auto cv = curve("", {"E", "p"}, {Unit::natural, Unit::dimensionless});
    double worst = 0.0;
    const auto& rho = t.rho_A.matrix();
    for (std::size_t i = 0; i < p->energies.size(); ++i) {
      cv.add_row({p->energies[i], t.gibbs[i]});
      for (std::size_t j = 0; j < p->energies.size(); ++j) {
        const double expect = i == j ? t.gibbs[i] : 0.0;
        worst = std::max(worst, std::abs(rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) - expect));
      }
    }
    r.curves.push_back(cv);
    const double s = von_neumann_entropy(t.rho_A);
    r.scalar("S_A", s, Unit::nats);
    r.verdict("rho_A_is_gibbs", worst <= 1e-12, worst, 1e-12);
    r.verdict("entropy_matches_gibbs", std::abs(s - t.entropy_A) <= 1e-12, std::abs(s - t.entropy_A), 1e-12);
    return r;
  };
}

Runner setup_rt(CLI::App* sub) {
  struct P {
    std::vector<double> ratios{10.0, 100.0, 1000.0};
    double R = 1.0;
    double G = 1.0;
  };
  auto p = std::make_shared<P>();
  sub->add_option("--ratios", p->ratios, "Values of l/a")->delimiter(',')->capture_default_str()->check(CLI::Range(10.0, 1e12));
  sub->add_option("--R", p->R, "AdS radius")->capture_default_str()->check(CLI::PositiveNumber);
  sub->add_option("--G", p->G, "Three-dimensional Newton constant")->capture_default_str()->check(CLI::PositiveNumber);
  return [p](const Globals&) {
    ExperimentReport r;
    r.parameters = {{"ratios", p->ratios}, {"R", p->R}, {"G", p->G}};
    auto cv = curve("", {"l_over_a", "L_numeric", "L_analytic", "L_exact", "relative_error", "S_A"},
                    {Unit::dimensionless, Unit::natural, Unit::natural, Unit::natural, Unit::dimensionless, Unit::nats});
    for (double ratio : p->ratios) {
      const auto rec = blackhole::rt_entropy({p->R, p->G, 1.0, ratio});
      cv.add_row({ratio, rec.L_numeric, rec.L_analytic, rec.L_exact, rec.relative_error, rec.S_A});
      const auto tag = report::format_number(ratio);
      r.verdict("quadrature_within_0.1%_of_2R_ln(l/a) l/a=" + tag, rec.relative_error < 1e-3, rec.relative_error, 1e-3);
      const double ex = std::abs(rec.L_numeric - rec.L_exact) / rec.L_exact;
      r.verdict("quadrature_matches_closed_form l/a=" + tag, ex <= 1e-10, ex, 1e-10);
      const double id = std::abs(rec.S_A - rec.cft_entropy);
      r.verdict("S_A_equals_c/3_ln(l/a) l/a=" + tag, id <= 1e-12, id, 1e-12);
    }
    r.curves.push_back(cv);
    r.scalar("central_charge", 3.0 * p->R / (2.0 * p->G), Unit::dimensionless);
    return r;
  };
}

Runner setup_dim(CLI::App* sub) {
  struct P {
    int d = 4;
    double m2L2 = 0.0;
  };
  auto p = std::make_shared<P>();
  sub->add_option("--d", p->d, "Boundary dimension")->capture_default_str()->check(CLI::Range(1, 64));
  sub->add_option("--m2L2", p->m2L2, "Mass squared times AdS radius squared")->capture_default_str();
  return [p](const Globals&) {
    ExperimentReport r;
    r.parameters = {{"d", p->d}, {"m2L2", p->m2L2}};
    const double delta = blackhole::scaling_dimension(p->d, p->m2L2);
    r.scalar("Delta", delta, Unit::dimensionless);
    r.verdict("Delta_at_least_d/2", delta >= 0.5 * p->d, delta, 0.5 * p->d);
    return r;
  };
}

Runner setup_clock(CLI::App* sub) {
  struct P {
    double omega = 1.0;
    std::size_t points = 50;
  };
  auto p = std::make_shared<P>();
  sub->add_option("--omega", p->omega, "Model frequency")->capture_default_str()->check(CLI::PositiveNumber);
  sub->add_option("--points", p->points, "Points on the tau grid over one period")->capture_default_str()->check(CLI::Range(2, 100000));
  return [p](const Globals&) {
    ExperimentReport r;
    r.parameters = {{"omega", p->omega}, {"points", p->points}};
    const auto u = clock::photon_clock_model(p->omega);
    const auto cp = u.h_clock().partition();
    const auto rp = u.h_rest().partition();
    const auto ph = Operator::projector_onto(StateVector::basis(cp, std::size_t{0}));
    const auto pv = Operator::projector_onto(StateVector::basis(cp, std::size_t{1}));
    const auto rest_v = Operator::projector_onto(StateVector::basis(rp, std::size_t{1}));
    const std::vector<double> plates{0.0, 0.37 / p->omega, 1.9 / p->omega};
    auto cv = curve("", {"tau", "P3_given_H", "P3_given_V"}, {Unit::natural, Unit::dimensionless, Unit::dimensionless});
    double worst = 0.0;
    for (std::size_t k = 0; k < p->points; ++k) {
      const double tau = kPi / p->omega * static_cast<double>(k) / static_cast<double>(p->points - 1);
      const double a = clock::conditional_probability(u, clock::clock_reading(u, ph, tau), rest_v, plates);
      const double b = clock::conditional_probability(u, clock::clock_reading(u, pv, tau), rest_v, plates);
      cv.add_row({tau, a, b});
      worst = std::max({worst, std::abs(a - clock::photon_closed_form(p->omega, tau, 0)),
                        std::abs(b - clock::photon_closed_form(p->omega, tau, 1))});
    }
    r.curves.push_back(cv);
    r.scalar("constraint_norm", u.constraint_norm(), Unit::natural);
    r.verdict("constraint_norm", u.constraint_norm() < 1e-12, u.constraint_norm(), 1e-12);
    r.verdict("cos^2_law", worst <= 1e-9, worst, 1e-9);
    const double inv = clock::super_observer_invariance(u, {0.1 / p->omega, 1.0 / p->omega, 10.0 / p->omega});
    r.verdict("super_observer_invariance", inv < 1e-10, inv, 1e-10);
    return r;
  };
}

Runner setup_bohm(CLI::App* sub) {
  struct P {
    std::size_t points = 2048;
    double x_min = -40.0, x_max = 40.0;
    double sigma0 = 1.0, k0 = 0.0, x0 = 0.0, mass = 1.0, omega = 1.0;
    std::string potential = "free";
    std::size_t n_traj = 10000;
    double t_end = -1.0;
    std::size_t steps = 1000;
    std::size_t recorded = 20;
  };
  auto p = std::make_shared<P>();
  sub->add_option("--points", p->points, "Grid points")->capture_default_str()->check(CLI::Range(64, 1 << 20));
  sub->add_option("--xmin", p->x_min, "Left wall")->capture_default_str();
  sub->add_option("--xmax", p->x_max, "Right wall")->capture_default_str();
  sub->add_option("--sigma0", p->sigma0, "Initial width")->capture_default_str()->check(CLI::PositiveNumber);
  sub->add_option("--k0", p->k0, "Initial wave number")->capture_default_str()->check(CLI::Range(-20.0, 20.0));
  sub->add_option("--x0", p->x0, "Initial centre")->capture_default_str();
  sub->add_option("--mass", p->mass, "Particle mass")->capture_default_str()->check(CLI::PositiveNumber);
  sub->add_option("--omega", p->omega, "Harmonic frequency")->capture_default_str()->check(CLI::PositiveNumber);
  sub->add_option("--potential", p->potential, "Potential preset")->capture_default_str()->check(CLI::IsMember({"free", "harmonic"}));
  sub->add_option("--ntraj", p->n_traj, "Trajectories")->capture_default_str()->check(CLI::Range(1, 10000000));
  sub->add_option("--tend", p->t_end, "Final time (default: width triples for free, one period for harmonic)");
  sub->add_option("--steps", p->steps, "Crank-Nicolson steps (even)")->capture_default_str()->check(CLI::Range(2, 10000000));
  sub->add_option("--record", p->recorded, "Trajectories written to the CSV")->capture_default_str()->check(CLI::Range(0, 1000));
  return [p](const Globals& g) {
    ExperimentReport r;
    const bool harmonic = p->potential == "harmonic";
    double t_end = p->t_end;
    if (t_end < 0.0) t_end = harmonic ? 2.0 * kPi / p->omega : 2.0 * std::sqrt(8.0) * p->mass * p->sigma0 * p->sigma0;
    const std::size_t steps = p->steps + p->steps % 2;
    const double dt = t_end / static_cast<double>(steps);
    r.parameters = {{"points", p->points}, {"x_min", p->x_min}, {"x_max", p->x_max}, {"sigma0", p->sigma0}, {"k0", p->k0},
                    {"x0", p->x0}, {"mass", p->mass}, {"omega", p->omega}, {"potential", p->potential},
                    {"n_traj", p->n_traj}, {"t_end", t_end}, {"steps", steps}, {"recorded", p->recorded}};
    const pilot_wave::Grid1D grid{p->x_min, p->x_max, p->points};
    grid.validate();
    const auto field = harmonic
                           ? pilot_wave::harmonic_ground_state(grid, p->mass, p->omega)
                           : pilot_wave::gaussian_packet(grid, p->x0, p->sigma0, p->k0, p->mass, pilot_wave::free_potential(grid));
    if (dt > pilot_wave::explicit_dt_budget(field)) {
      r.notes.push_back("dt exceeds the explicit stability budget; the implicit scheme is unconditionally stable");
    }
    const std::size_t rk_steps = steps / 2;
    const std::size_t every = std::max<std::size_t>(1, rk_steps / 50);
    const auto run = pilot_wave::run_trajectories(field, dt, t_end, p->n_traj, g.seed, p->recorded, every);
    const auto& e = run.ensemble;
    std::vector<std::string> cols{"t"};
    std::vector<Unit> units{Unit::natural};
    for (std::size_t k = 0; k < std::min(p->recorded, p->n_traj); ++k) {
      cols.push_back(fmt::format("q{}", k));
      units.push_back(Unit::natural);
    }
    auto cv = curve("", cols, units);
    for (std::size_t i = 0; i < e.record_times.size(); ++i) {
      std::vector<double> row{e.record_times[i]};
      row.insert(row.end(), e.records[i].begin(), e.records[i].end());
      cv.add_row(std::move(row));
    }
    r.curves.push_back(cv);
    r.scalar("ks_distance", run.ks_distance, Unit::dimensionless);
    r.scalar("mean_Q", run.mean_position, Unit::natural);
    r.scalar("expected_x", run.expected_x, Unit::natural);
    r.scalar("width", pilot_wave::width(run.final_field), Unit::natural);
    r.scalar("norm_drift", run.max_norm_drift, Unit::dimensionless);
    r.verdict("ks_below_0.02", run.ks_distance < 0.02, run.ks_distance, 0.02);
    const double drift_tol = 1e-8 * std::max(1.0, static_cast<double>(steps) / 1000.0);
    r.verdict("norm_drift", run.max_norm_drift < drift_tol, run.max_norm_drift, drift_tol);
    r.verdict("trajectories_do_not_cross", e.order_preserved, static_cast<double>(e.order_preserved), 0.0);
    const double spread = pilot_wave::width(run.final_field);
    const double ehrenfest_tol = 4.0 * spread / std::sqrt(static_cast<double>(p->n_traj));
    r.verdict("mean_Q_matches_expected_x", std::abs(run.mean_position - run.expected_x) <= ehrenfest_tol,
              std::abs(run.mean_position - run.expected_x), ehrenfest_tol);
    if (!harmonic) {
      const double expect = pilot_wave::free_width(p->sigma0, p->mass, t_end);
      const double rel = std::abs(spread - expect) / expect;
      r.verdict("free_width_closed_form", rel <= 5e-3, rel, 5e-3);
    }
    return r;
  };
}

}  // namespace

const std::vector<Experiment>& experiments() {
  static const std::vector<Experiment> list{
      {"mz", "Mach-Zehnder interferometer detector probabilities", setup_mz},
      {"cat", "Schroedinger cat chain with environmental decoherence", setup_cat},
      {"zeno", "Quantum Zeno survival under repeated projective measurement", setup_zeno},
      {"decohere", "Reduced-state coherence against environment overlap", setup_decohere},
      {"bell", "Singlet correlations and the Bell inequality against local hidden variables", setup_bell},
      {"frwigner", "Extended Wigner's friend protocol: outcome table and implications", setup_frwigner},
      {"immortal", "Quantum suicide branch bookkeeping", setup_immortal},
      {"gaussent", "Entanglement entropy of coupled-oscillator ground states and chain scans", setup_gaussent},
      {"hawking", "Schwarzschild temperature, entropy and first law", setup_hawking},
      {"unruh", "Unruh two-mode state and its thermal reduction", setup_unruh},
      {"barrier", "Tortoise-coordinate scattering barrier heights", setup_barrier},
      {"pagecurve", "Haar-random Page curve and information bookkeeping", setup_pagecurve},
      {"tfd", "Thermofield double purification of a Gibbs state", setup_tfd},
      {"rt", "Geodesic length and entanglement entropy in AdS3", setup_rt},
      {"dim", "Scaling dimension of a bulk scalar in AdS", setup_dim},
      {"clock", "Page-Wootters photon clock conditional probabilities", setup_clock},
      {"bohm", "Pilot-wave trajectories and equivariance", setup_bohm},
  };
  return list;
}

}  // namespace qfoundry::cli
