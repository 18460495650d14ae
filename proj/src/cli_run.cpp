#include "decosim/cli/run.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "decosim/bec.hpp"
#include "decosim/constants.hpp"
#include "decosim/entropy.hpp"
#include "decosim/macrometer.hpp"
#include "decosim/matterwave.hpp"
#include "decosim/relstate.hpp"
#include "decosim/squid.hpp"
#include "decosim/tensor.hpp"

namespace decosim::cli {

namespace {

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = n == 1 ? a : a + (b - a) * double(i) / double(n - 1);
  return out;
}

squid::SquidParams squid_params_from(const RunConfig& config) {
  squid::SquidParams p;
  p.capacitance = config.real("capacitance");
  p.critical_current = config.real("critical_current");
  p.external_flux = config.real("phi_ext");
  p.grid.min = config.real("phi_min");
  p.grid.max = config.real("phi_max");
  p.grid.n = int(config.integer("n_points"));
  return p;
}

void resolve_squid_grid(RunConfig& config) {
  const double phi_ext = config.real("phi_ext");
  config.resolve_auto("phi_min", phi_ext - 1.5);
  config.resolve_auto("phi_max", phi_ext + 1.5);
}

ResultEnvelope run_squid_spectrum(RunConfig& config) {
  resolve_squid_grid(config);
  const int n_levels = int(config.integer("n_levels"));
  const squid::SquidParams params = squid_params_from(config);
  const squid::SquidSpectrum spec = squid::solve_spectrum(params, n_levels);

  ResultEnvelope env = make_envelope(config);
  std::vector<double> phi(params.grid.n), u(params.grid.n);
  for (int i = 0; i < params.grid.n; ++i) {
    phi[i] = params.grid.point(i);
    u[i] = squid::potential(params, phi[i]);
  }
  env.add_series("phi", std::move(phi));
  env.add_series("potential", std::move(u));
  for (int k = 0; k < n_levels; ++k) {
    std::vector<double> psi(params.grid.n);
    for (int i = 0; i < params.grid.n; ++i) psi[i] = spec.wavefunctions(i, k);
    env.add_series("psi_" + std::to_string(k), std::move(psi));
  }
  for (int k = 0; k < n_levels; ++k)
    env.add_summary("energy_" + std::to_string(k), spec.energies[k]);
  env.add_summary("delta_e", spec.delta_e);
  env.add_summary("mean_flux_l", spec.mean_flux_l);
  env.add_summary("mean_flux_r", spec.mean_flux_r);
  env.add_summary("barrier_height", spec.barrier_height);
  env.add_summary("edge_weight", spec.edge_weight);
  return env;
}

ResultEnvelope run_squid_tunnel(RunConfig& config) {
  const double delta_e = config.real("delta_e");
  const double gamma = config.real("gamma");
  double default_t = 1.0;
  if (delta_e > 0.0)
    default_t = 2.0 * 2.0 * std::numbers::pi / delta_e;  // two tunneling periods
  else if (gamma > 0.0)
    default_t = 2.5 / gamma;
  config.resolve_auto("t_max", default_t);
  const double t_max = config.real("t_max");
  const int n_times = int(config.integer("n_times"));
  const std::string initial = config.text("initial");

  CMatrix rho0(2, 2);
  if (initial == "L") {
    rho0 << 1, 0, 0, 0;
  } else if (initial == "R") {
    rho0 << 0, 0, 0, 1;
  } else {
    rho0 << 0.5, 0.5, 0.5, 0.5;  // (|L> + |R>)/sqrt(2)
  }

  const std::vector<double> times = linspace(0.0, t_max, n_times);
  const squid::TwoLevelTrajectory traj =
      squid::evolve_two_level(delta_e, {gamma}, rho0, times);

  ResultEnvelope env = make_envelope(config);
  std::vector<double> coh(n_times), closed(n_times);
  for (int i = 0; i < n_times; ++i) {
    coh[i] = std::abs(traj.rho[i](0, 1));
    closed[i] = delta_e > 0.0 ? squid::tunneling_probability(delta_e, times[i]) : 1.0;
  }
  env.add_series("t", times);
  env.add_series("p_l", traj.p_left);
  env.add_series("coherence_abs", std::move(coh));
  env.add_series("p_l_closed_form", std::move(closed));
  env.add_summary("delta_e", delta_e);
  env.add_summary("gamma", gamma);
  env.add_summary("p_l_final", traj.p_left.back());
  env.add_summary("coherence_final", std::abs(traj.rho.back()(0, 1)));
  return env;
}

ResultEnvelope run_squid_wigner(RunConfig& config) {
  resolve_squid_grid(config);
  const double gamma = config.real("gamma");
  config.resolve_auto("t_max", gamma > 0.0 ? 5.0 / gamma : 1.0);
  const double t_max = config.real("t_max");
  const int n_snapshots = int(config.integer("n_snapshots"));
  const squid::SquidParams params = squid_params_from(config);
  const squid::SquidSpectrum spec = squid::solve_spectrum(params, 4);

  CMatrix cat(2, 2);
  cat << 0.5, 0.5, 0.5, 0.5;
  const std::vector<double> times =
      n_snapshots == 1 ? std::vector<double>{t_max} : linspace(0.0, t_max, n_snapshots);
  const squid::TwoLevelTrajectory traj = squid::evolve_two_level(0.0, {gamma}, cat, times);

  WignerSpec wspec;
  wspec.nx = int(config.integer("nx"));
  wspec.np = int(config.integer("np"));
  const std::vector<WignerGrid> snaps = squid::wigner_snapshots(spec, traj, wspec);

  ResultEnvelope env = make_envelope(config);
  const WignerGrid& first = snaps.front();
  std::vector<double> xs, ps;
  xs.reserve(std::size_t(first.nx) * first.np);
  ps.reserve(xs.capacity());
  const double cw_x = (first.x_max - first.x_min) / first.nx;
  const double cw_p = (first.p_max - first.p_min) / first.np;
  for (int j = 0; j < first.nx; ++j)
    for (int k = 0; k < first.np; ++k) {
      xs.push_back(first.x_min + j * cw_x);
      ps.push_back(first.p_min + k * cw_p);
    }
  env.add_series("phi", std::move(xs));
  env.add_series("p", std::move(ps));
  for (std::size_t s = 0; s < snaps.size(); ++s) {
    std::vector<double> w;
    w.reserve(std::size_t(first.nx) * first.np);
    for (int j = 0; j < first.nx; ++j)
      for (int k = 0; k < first.np; ++k) w.push_back(snaps[s].values(j, k));
    env.add_series("w_" + std::to_string(s), std::move(w));
  }

  double drift_cells = 0.0;
  squid::WignerCatMetrics first_m =
      squid::analyze_cat_wigner(snaps.front(), spec.mean_flux_l, spec.mean_flux_r);
  for (std::size_t s = 0; s < snaps.size(); ++s) {
    const auto m = squid::analyze_cat_wigner(snaps[s], spec.mean_flux_l, spec.mean_flux_r);
    env.add_summary("time_" + std::to_string(s), times[s]);
    env.add_summary("norm_" + std::to_string(s), snaps[s].sum_times_area());
    env.add_summary("interference_ratio_" + std::to_string(s),
                    m.interference_amplitude / m.peak_value);
    drift_cells = std::max({drift_cells, std::abs(m.left_peak_x - first_m.left_peak_x) / cw_x,
                            std::abs(m.right_peak_x - first_m.right_peak_x) / cw_x});
  }
  env.add_summary("min_w_initial", snaps.front().min_value());
  env.add_summary("peak_drift_cells", drift_cells);
  env.add_summary("gamma_t_final", gamma * times.back());
  return env;
}

ResultEnvelope run_talbot_scan(RunConfig& config) {
  matterwave::BeamParams beam;
  beam.mass = config.real("mass_amu") * constants.amu;
  beam.velocity = config.real("velocity");
  const double lambda = beam.lambda_db();
  const double d = config.real("period");
  config.resolve_auto("separation", matterwave::talbot_length(d, lambda));

  matterwave::GratingStack stack;
  stack.period = d;
  stack.open_fraction = config.real("open_fraction");
  stack.n_slits = int(config.integer("n_slits"));
  stack.separation = config.real("separation");
  config.resolve_auto("angular_spread", stack.period / stack.separation);

  matterwave::IncoherenceModel inc;
  inc.n_angles = int(config.integer("n_angles"));
  inc.angular_spread = config.real("angular_spread");

  const int n_scan = int(config.integer("n_scan"));
  const std::string model = config.text("model");
  const matterwave::FringeScan scan =
      model == "ray" ? matterwave::simulate_fringe_scan_ray(stack, n_scan, inc)
                     : matterwave::simulate_fringe_scan(beam, stack, n_scan, inc);

  ResultEnvelope env = make_envelope(config);
  env.add_series("shift", scan.shifts);
  env.add_series("counts", scan.counts);
  env.add_summary("lambda_db", lambda);
  env.add_summary("talbot_length", matterwave::talbot_length(d, lambda));
  env.add_summary("separation", stack.separation);
  env.add_summary("visibility", scan.visibility);
  env.add_summary("dominant_period", matterwave::dominant_scan_period(scan, d));
  return env;
}

ResultEnvelope run_talbot_visibility(RunConfig& config) {
  matterwave::GasEnvironment air;
  air.temperature = config.real("temperature");
  air.sigma_eff = config.real("sigma_eff");
  const double separation = config.real("separation");
  const double p0 = matterwave::decoherence_pressure(air, separation);
  config.resolve_auto("p_max", 5.0 * p0);
  const double v0 = config.real("v0");
  const int n = int(config.integer("n_points"));

  ResultEnvelope env = make_envelope(config);
  std::vector<double> pressure = linspace(0.0, config.real("p_max"), n);
  std::vector<double> vis(n), ratio(n);
  for (int i = 0; i < n; ++i) {
    vis[i] = matterwave::visibility_with_gas(v0, pressure[i], p0);
    ratio[i] = v0 > 0.0 ? vis[i] / v0 : 0.0;
  }
  env.add_series("pressure", std::move(pressure));
  env.add_series("visibility", std::move(vis));
  env.add_series("visibility_ratio", std::move(ratio));
  env.add_summary("p0", p0);
  env.add_summary("v0", v0);
  return env;
}

ResultEnvelope run_bec_cat(RunConfig& config) {
  const int n_atoms = int(config.integer("n_atoms"));
  const int n_first = int(config.integer("n_first"));
  const double kappa = config.real("kappa");
  const int diff = n_atoms - 2 * n_first;  // number difference of the two branches
  const double scale = kappa > 0.0 && diff != 0 ? 5.0 / (kappa * double(diff) * double(diff)) : 1.0;
  config.resolve_auto("t_max", scale);
  const double t_max = config.real("t_max");
  const int n_times = int(config.integer("n_times"));
  const double omega = config.real("omega");
  const double phase = config.real("phase");

  // The cat only populates two basis states, so the damped coherence and
  // purity have closed forms at any N.
  const bec::TwoModeState cat = bec::make_cat(n_atoms, n_first, phase);
  (void)omega;  // enters only as a phase on the off-diagonal; magnitude is emitted
  const double c0 = diff == 0 ? 0.0 : 0.5;

  ResultEnvelope env = make_envelope(config);
  const std::vector<double> times = linspace(0.0, t_max, n_times);
  std::vector<double> coh(n_times), purity(n_times);
  for (int i = 0; i < n_times; ++i) {
    const double c = c0 * std::exp(-double(diff) * double(diff) * kappa * times[i]);
    coh[i] = c;
    purity[i] = diff == 0 ? 1.0 : 0.5 + 2.0 * c * c;
  }
  env.add_series("t", times);
  env.add_series("coherence_abs", std::move(coh));
  env.add_series("purity", std::move(purity));
  env.add_summary("number_difference", double(diff));
  env.add_summary("coherence_final",
                  c0 * std::exp(-double(diff) * double(diff) * kappa * t_max));
  if (kappa > 0.0 && diff != 0)  // undefined otherwise; JSON has no infinity
    env.add_summary("half_life", std::log(2.0) / (kappa * double(diff) * double(diff)));
  env.add_summary("initial_norm", cat.amplitudes.norm());
  return env;
}

ResultEnvelope run_bec_tau(RunConfig& config) {
  bec::LossReference ref;
  ref.scattering_length = config.real("scattering_length");
  ref.n_noncondensed = config.real("ref_n_noncondensed");
  ref.n_atoms = config.real("ref_n_atoms");
  ref.tau_d = config.real("ref_tau");
  const bec::LossCalibration cal = bec::calibrate_tau(ref);

  const double n_nc = config.real("n_noncondensed");
  const double n_target = config.real("n_atoms");
  const double tau = cal.predict_tau(ref.scattering_length, n_nc, n_target);

  ResultEnvelope env = make_envelope(config);
  const int n_sweep = int(config.integer("n_sweep"));
  std::vector<double> ns(n_sweep), taus(n_sweep);
  const double lg0 = std::log10(ref.n_atoms);
  const double lg1 = std::log10(n_target);
  for (int i = 0; i < n_sweep; ++i) {
    ns[i] = std::pow(10.0, lg0 + (lg1 - lg0) * double(i) / double(n_sweep - 1));
    taus[i] = cal.predict_tau(ref.scattering_length, n_nc, ns[i]);
  }
  env.add_series("n_atoms", std::move(ns));
  env.add_series("tau_d", std::move(taus));
  env.add_summary("c", cal.c);
  env.add_summary("tau_predicted", tau);
  env.add_summary("tau_reference", ref.tau_d);
  return env;
}

ResultEnvelope run_envariance(RunConfig& config) {
  const std::string weights = config.text("weights");
  ResultEnvelope env = make_envelope(config);

  if (weights.empty()) {
    const int n = int(config.integer("n_terms"));
    CMatrix amps = CMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i) amps(i, i) = 1.0 / std::sqrt(double(n));
    const relstate::BipartiteState state(n, n, std::move(amps));
    const std::vector<double> probs = relstate::envariant_probabilities(state);
    std::vector<double> branch(probs.size());
    for (std::size_t i = 0; i < probs.size(); ++i) branch[i] = double(i);
    env.add_series("branch", std::move(branch));
    env.add_series("probability", probs);
    env.add_summary("n_terms", double(n));
    env.add_summary("certified", 1.0);
    return env;
  }

  std::vector<long long> numerators;
  std::istringstream is(weights);
  std::string tok;
  while (std::getline(is, tok, ':')) {
    try {
      numerators.push_back(std::stoll(tok));
    } catch (const std::exception&) {
      throw std::invalid_argument("weights must be integers separated by ':', got '" + tok +
                                  "'");
    }
  }
  const relstate::FineGrainResult fg = relstate::fine_grain(numerators);
  // The expanded state really is equal-amplitude; certify it.
  const std::vector<double> uniform = relstate::envariant_probabilities(fg.expanded);
  (void)uniform;

  std::vector<double> branch(fg.probabilities.size()), nums(fg.probabilities.size());
  for (std::size_t i = 0; i < fg.probabilities.size(); ++i) {
    branch[i] = double(i);
    nums[i] = double(fg.numerators[i]);
  }
  env.add_series("branch", std::move(branch));
  env.add_series("numerator", std::move(nums));
  env.add_series("probability", fg.probabilities);
  env.add_summary("denominator", double(fg.denominator));
  env.add_summary("certified", 1.0);
  return env;
}

ResultEnvelope run_darwinism(RunConfig& config) {
  const int n_fragments = int(config.integer("n_fragments"));
  const double overlap = config.real("record_overlap");
  int max_size = int(config.integer("max_fragment_size"));
  if (max_size == 0) max_size = n_fragments;
  if (max_size > n_fragments)
    throw std::invalid_argument("max_fragment_size exceeds n_fragments");

  const relstate::BranchingState state = relstate::make_record_state(n_fragments, overlap);
  const relstate::RedundancyProfile profile =
      relstate::redundancy_profile(state, max_size, config.seed);

  ResultEnvelope env = make_envelope(config);
  std::vector<double> sizes(profile.fragment_sizes.begin(), profile.fragment_sizes.end());
  env.add_series("fragment_size", std::move(sizes));
  env.add_series("mutual_info_bits", profile.mutual_information_bits);
  env.add_series("deficit_bits", profile.deficit_bits);
  env.add_summary("system_entropy_bits", profile.system_entropy_bits);

  std::vector<std::size_t> all;
  for (int f = 0; f < n_fragments; ++f) all.push_back(std::size_t(f));
  env.add_summary("full_environment_bits", relstate::mutual_information(state, all));
  return env;
}

ResultEnvelope run_chain(RunConfig& config) {
  relstate::ChainOverlaps eps;
  eps.photon = config.real("eps_photon");
  eps.rhodopsin = config.real("eps_rhodopsin");
  eps.neuron = config.real("eps_neuron");
  const double t = config.real("time");
  const double tau = config.real("tau");

  const relstate::BranchingState chain = relstate::build_chain(eps);
  const Complex rho12 = relstate::object_coherence(chain);

  ResultEnvelope env = make_envelope(config);
  std::vector<std::string> names{"photon", "rhodopsin", "neuron_1", "neuron_2", "neuron_3"};
  std::vector<double> overlaps;
  for (const auto& ov : chain.record_overlaps) overlaps.push_back(std::abs(ov));
  env.add_labels("fragment", std::move(names));
  env.add_series("record_overlap", std::move(overlaps));
  env.add_summary("coherence_abs", std::abs(rho12));
  env.add_summary("product_law", 0.5 * eps.photon * eps.rhodopsin * eps.neuron);
  env.add_summary("neuron_coherence_factor", relstate::neuron_dephase_estimate(1.0 / tau, t));
  env.add_summary("tau", tau);
  return env;
}

ResultEnvelope run_macro_table(RunConfig& config) {
  const auto catalog = macrometer::builtin_catalog();
  ResultEnvelope env = make_envelope(config);
  std::vector<std::string> names, statuses, bases, notes;
  std::vector<double> ext, ent, product;
  for (const auto& r : catalog) {
    names.push_back(r.name);
    ext.push_back(r.s_ext);
    ent.push_back(r.s_ent);
    product.push_back(r.product);
    statuses.push_back(macrometer::to_string(r.status));
    bases.push_back(r.s_ext_basis);
    notes.push_back(r.notes);
  }
  env.add_labels("name", std::move(names));
  env.add_series("s_ext", std::move(ext));
  env.add_series("s_ent", std::move(ent));
  env.add_series("product", std::move(product));
  env.add_labels("status", std::move(statuses));
  env.add_labels("basis", std::move(bases));
  env.add_labels("notes", std::move(notes));
  env.add_summary("n_records", double(catalog.size()));
  return env;
}

}  // namespace

ResultEnvelope run_command(RunConfig config) {
  if (config.command == "squid-spectrum") return run_squid_spectrum(config);
  if (config.command == "squid-tunnel") return run_squid_tunnel(config);
  if (config.command == "squid-wigner") return run_squid_wigner(config);
  if (config.command == "talbot-scan") return run_talbot_scan(config);
  if (config.command == "talbot-visibility") return run_talbot_visibility(config);
  if (config.command == "bec-cat") return run_bec_cat(config);
  if (config.command == "bec-tau") return run_bec_tau(config);
  if (config.command == "envariance") return run_envariance(config);
  if (config.command == "darwinism") return run_darwinism(config);
  if (config.command == "chain") return run_chain(config);
  if (config.command == "macro-table") return run_macro_table(config);
  throw std::invalid_argument("unknown command " + config.command);
}

}  // namespace decosim::cli
