#include "pauli_tomograph/scenarios.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <random>

#include <json.hpp>

#include "pauli_tomograph/errors.hpp"
#include "pauli_tomograph/numerics.hpp"
#include "pauli_tomograph/parallel.hpp"
#include "pauli_tomograph/quasidist.hpp"

namespace pt {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNormTol = 1e-8;
constexpr double kDriftTol = 1e-9;

Vec4 mix(const Eigen::Matrix4d& pi, const Vec4& v) {
  Vec4 out{};
  for (int j = 0; j < 4; ++j)
    for (int l = 0; l < 4; ++l) out[j] += pi(j, l) * v[l];
  return out;
}

// Fills the four components from the two diagonal densities and the cross term
// a = conj(psi_down) psi_up weighted by the beat phase.
void fill_components(TomogramField4& w, std::size_t idx, double dd, double uu, cplx cross) {
  const double s = 0.25 * (dd + uu);
  w.comp[0][idx] = s + 0.5 * cross.real();
  w.comp[1][idx] = s + 0.5 * cross.imag();
  w.comp[2][idx] = 0.5 * uu;
  w.comp[3][idx] = 0.5 * dd;
}

double slice_spin_sum(const TomogramField4& w, std::size_t s) {
  const std::size_t n = w.slice_size();
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += w.comp[2][s * n + i] + w.comp[3][s * n + i];
  return acc * w.x.cell();
}

double normalization_deviation(const TomogramField4& w) {
  double worst = 0.0;
  for (std::size_t s = 0; s < w.samples(); ++s) worst = std::max(worst, std::abs(slice_spin_sum(w, s) - 1.0));
  return worst;
}

Vec4 component_errors(const TomogramField4& a, const TomogramField4& b) {
  require(a.comp[0].size() == b.comp[0].size(), ErrorKind::Contract, "tomogram shapes differ");
  Vec4 e{};
  for (int j = 0; j < 4; ++j)
    for (std::size_t i = 0; i < a.comp[j].size(); ++i) e[j] = std::max(e[j], std::abs(a.comp[j][i] - b.comp[j][i]));
  return e;
}

// Deterministic comparison points for the flow-versus-state Wigner check.
std::vector<std::vector<double>> landau_probe_points() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<std::vector<double>> pts;
  for (int k = 0; k < 16; ++k) pts.push_back({u(rng), u(rng), u(rng), u(rng)});
  return pts;
}

struct TimeResult {
  Vec4 err{};
  double path_tomogram = 0.0;
  double path_wigner = 0.0;
  double norm = 0.0;
  double drift = 0.0;
  TomogramField4 frame;
};

void run_oscillator(const ScenarioOptions& opt, ScenarioReport& rep, std::vector<TimeResult>& res) {
  const SpinDensity init = oscillator_entangled_initial(opt.axis);
  const auto thetas = uniform_angles(opt.angle_count);
  const TomogramField4 w0 = optical_tomogram_vector(init, thetas);
  const PhaseField4 W0 = wigner_vector(init);
  const double trace0 = W0.integral(2) + W0.integral(3);
  const FlowSpec spec{FlowKind::Oscillator, 1};
  parallel_for(rep.times.size(), [&](std::size_t k) {
    const double t = rep.times[k];
    const PropagatorBundle b = make_bundle(spec, kOscillatorOmega0, t);
    const TomogramField4 exact = oscillator_entangled_tomogram(t, thetas, opt.axis);
    TimeResult& r = res[k];
    r.frame = evolve_tomogram(w0, b);
    const PhaseField4 W = evolve_wigner(W0, b);
    const TomogramField4 radon = tomogram_from_wigner(W, thetas);
    const Vec4 e1 = component_errors(r.frame, exact);
    const Vec4 e2 = component_errors(radon, exact);
    for (int j = 0; j < 4; ++j) r.err[j] = std::max(e1[j], e2[j]);
    r.path_tomogram = *std::max_element(e1.begin(), e1.end());
    r.path_wigner = *std::max_element(e2.begin(), e2.end());
    r.norm = std::max(normalization_deviation(r.frame), normalization_deviation(radon));
    r.drift = std::abs(W.integral(2) + W.integral(3) - trace0);
  });
}

void run_landau(const ScenarioOptions& opt, ScenarioReport& rep, std::vector<TimeResult>& res) {
  const SpinDensity init = landau_entangled_initial(opt.grid);
  const FlowSpec spec{FlowKind::Landau, 2, kLandauOmega};
  const LazyPhaseField4 lazy0 = lazy_wigner(init, spec, kLandauOmega0);
  const double trace0 = init.trace();
  const auto pairs = landau_angle_pairs();
  const auto probes = landau_probe_points();
  parallel_for(rep.times.size(), [&](std::size_t k) {
    const double t = rep.times[k];
    const LazyPhaseField4 lazy = evolve_wigner(lazy0, t);
    TimeResult& r = res[k];
    r.frame = lazy.tomogram(pairs);
    r.err = component_errors(r.frame, landau_analytic_tomogram(t, pairs, opt.grid));
    r.path_tomogram = *std::max_element(r.err.begin(), r.err.end());
    // Classical pullback of the initial Wigner function against the Wigner function of the
    // quantum-evolved state.
    const auto flow = lazy.samples(probes);
    auto direct = wigner_samples(evolve_state(init, spec, t), probes);
    const Eigen::Matrix4d pi = spin_propagator(kLandauOmega0, t).Pi;
    for (std::size_t p = 0; p < probes.size(); ++p) {
      const Vec4 d = mix(pi, direct[p]);
      for (int j = 0; j < 4; ++j) r.path_wigner = std::max(r.path_wigner, std::abs(flow[p][j] - d[j]));
    }
    r.norm = normalization_deviation(r.frame);
    r.drift = std::abs(lazy.spin_traced_integral() - trace0);
  });
}

}  // namespace

Grid default_landau_grid() { return Grid::plane(default_axis_2d(), default_axis_2d()); }

ComplexField landau_state(int n, int m, const Grid& grid) {
  require(grid.dims() == 2, ErrorKind::Contract, "Landau states live on a 2D grid");
  require(grid.spectral(), ErrorKind::Capability, "Landau states need power-of-two axes");
  if (!((n == 0 || n == 1) && m == 0))
    fail(ErrorKind::Capability, "Landau level (" + std::to_string(n) + "," + std::to_string(m) + ") is not available");
  ComplexField f(grid);
  const Axis& a1 = grid.axes[0];
  const Axis& a2 = grid.axes[1];
  for (std::size_t i = 0; i < a1.count; ++i)
    for (std::size_t j = 0; j < a2.count; ++j) {
      const double q1 = a1.at(i), q2 = a2.at(j);
      const cplx g = std::exp(cplx(-0.25 * (q1 * q1 + q2 * q2), 0.5 * q1 * q2));
      f.values[i * a2.count + j] =
          n == 0 ? g / std::sqrt(2.0 * kPi) : cplx(-q2, q1) / (2.0 * std::sqrt(kPi)) * g;
    }
  return f;
}

SpinDensity landau_entangled_initial(const Grid& grid) {
  const double r = 1.0 / std::sqrt(2.0);
  SpinorField s;
  s.up = landau_state(1, 0, grid);
  s.down = landau_state(0, 0, grid);
  for (auto& v : s.up.values) v *= r;
  for (auto& v : s.down.values) v *= r;
  return SpinDensity::pure(std::move(s));
}

SpinDensity oscillator_entangled_initial(const Axis& axis) {
  const Grid g = Grid::line(axis);
  const double r = 1.0 / std::sqrt(2.0);
  SpinorField s;
  s.up = oscillator_eigenstate(1, g);
  s.down = oscillator_eigenstate(0, g);
  for (auto& v : s.up.values) v *= r;
  for (auto& v : s.down.values) v *= r;
  return SpinDensity::pure(std::move(s));
}

std::vector<std::vector<double>> landau_angle_pairs() {
  return {{0.0, 0.0},          {kPi / 4, kPi / 3},     {kPi / 2, kPi / 2}, {kPi / 6, 0.0},
          {0.0, kPi / 2},      {kPi / 3, 2 * kPi / 3}, {3 * kPi / 4, kPi / 5}, {1.0, 2.0}};
}

TomogramField4 landau_analytic_tomogram(double t, const std::vector<std::vector<double>>& pairs, const Grid& grid) {
  const ComplexField v00 = landau_state(0, 0, grid);
  const ComplexField v10 = landau_state(1, 0, grid);
  TomogramField4 w = zero_tomogram(grid, pairs);
  const std::size_t n = grid.size();
  const cplx beat = std::polar(1.0, 2.0 * t);
  for (std::size_t s = 0; s < pairs.size(); ++s) {
    const ComplexField f0 = fractional_fourier(v00, pairs[s]);
    const ComplexField f1 = fractional_fourier(v10, pairs[s]);
    for (std::size_t i = 0; i < n; ++i) {
      const cplx a = f0.values[i], b = f1.values[i];
      fill_components(w, s * n + i, std::norm(a), std::norm(b), a * std::conj(b) * beat);
    }
  }
  return w;
}

TomogramField4 oscillator_entangled_tomogram(double t, const std::vector<double>& thetas, const Axis& X) {
  TomogramField4 w = zero_tomogram(Grid::line(X), angle_list(thetas));
  const std::size_t n = X.count;
  const double g0 = 1.0 / std::sqrt(kPi);
  for (std::size_t s = 0; s < thetas.size(); ++s)
    for (std::size_t i = 0; i < n; ++i) {
      const double x = X.at(i);
      const double e = g0 * std::exp(-x * x);
      const cplx w01 = std::sqrt(2.0) * x * e * std::polar(1.0, thetas[s] + 3.0 * t);
      fill_components(w, s * n + i, e, 2.0 * x * x * e, w01);
    }
  return w;
}

double fit_beat_frequency(const std::vector<double>& times, const std::vector<TomogramField4>& frames,
                          double nu_max) {
  require(times.size() == frames.size(), ErrorKind::Contract, "one frame per time expected");
  require(times.size() >= 2, ErrorKind::Contract, "frequency fit needs at least two times");
  const std::size_t nt = times.size();
  const std::size_t n = frames[0].comp[0].size();
  // Gram matrix of the beat signal across times; the fit objective only depends on it.
  Eigen::MatrixXcd gram = Eigen::MatrixXcd::Zero(nt, nt);
  std::vector<std::vector<cplx>> z(nt, std::vector<cplx>(n));
  for (std::size_t k = 0; k < nt; ++k) {
    require(frames[k].comp[0].size() == n, ErrorKind::Contract, "frames differ in shape");
    for (std::size_t i = 0; i < n; ++i) {
      const auto& c = frames[k].comp;
      const double m = 0.5 * (c[2][i] + c[3][i]);
      z[k][i] = cplx(c[0][i] - m, c[1][i] - m);
    }
  }
  for (std::size_t a = 0; a < nt; ++a)
    for (std::size_t b = 0; b < nt; ++b) {
      cplx acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) acc += z[a][i] * std::conj(z[b][i]);
      gram(a, b) = acc;
    }
  // Power captured by a single exponential at nu; maximizing it minimizes the residual.
  auto power = [&](double nu) {
    double p = 0.0;
    for (std::size_t a = 0; a < nt; ++a)
      for (std::size_t b = 0; b < nt; ++b) p += (gram(a, b) * std::polar(1.0, -nu * (times[a] - times[b]))).real();
    return p;
  };
  const double step = 1e-3;
  double best = 0.0, best_p = -1.0;
  for (double nu = 0.0; nu <= nu_max + 0.5 * step; nu += step) {
    const double p = power(nu);
    if (p > best_p) {
      best_p = p;
      best = nu;
    }
  }
  double lo = std::max(0.0, best - step), hi = best + step;
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = power(x1), f2 = power(x2);
  while (hi - lo > 1e-12) {
    if (f1 > f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = power(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = power(x2);
    }
  }
  return 0.5 * (lo + hi);
}

double ScenarioReport::max_error() const {
  double m = 0.0;
  for (const auto& c : errors)
    for (double e : c) m = std::max(m, e);
  for (double e : path_wigner) m = std::max(m, e);
  return m;
}

std::string ScenarioReport::to_json() const {
  nlohmann::json j;
  j["id"] = id;
  j["times"] = times;
  j["errors"] = errors;
  j["paths"] = {{"tomogram", path_tomogram}, {"wigner", path_wigner}};
  j["fitted_frequency"] = frequency_fitted ? nlohmann::json(fitted_frequency) : nlohmann::json(nullptr);
  j["expected_frequency"] = expected_frequency;
  j["normalization_deviation"] = normalization_deviation;
  j["wigner_drift"] = wigner_drift;
  j["tolerance"] = tolerance;
  j["frequency_tolerance"] = frequency_tolerance;
  j["seconds"] = seconds;
  j["pass"] = pass;
  return j.dump(2);
}

ScenarioReport run_scenario(const std::string& id, const ScenarioOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  ScenarioReport rep;
  rep.id = id;
  rep.times = options.times;
  require(!rep.times.empty(), ErrorKind::Contract, "scenario needs at least one time");
  for (double t : rep.times) require(std::isfinite(t), ErrorKind::Contract, "non-finite time");
  std::vector<TimeResult> res(rep.times.size());
  if (id == "oscillator") {
    rep.expected_frequency = 3.0;
    rep.tolerance = options.tolerance > 0.0 ? options.tolerance : 1e-6;
    rep.frequency_tolerance = options.frequency_tolerance > 0.0 ? options.frequency_tolerance : 1e-3;
    run_oscillator(options, rep, res);
  } else if (id == "landau") {
    rep.expected_frequency = 2.0;
    rep.tolerance = options.tolerance > 0.0 ? options.tolerance : 1e-4;
    rep.frequency_tolerance = options.frequency_tolerance > 0.0 ? options.frequency_tolerance : 1e-2;
    run_landau(options, rep, res);
  } else {
    fail(ErrorKind::Config, "unknown scenario '" + id + "'");
  }
  rep.errors.assign(4, std::vector<double>(rep.times.size()));
  std::vector<TomogramField4> frames;
  for (std::size_t k = 0; k < res.size(); ++k) {
    for (int j = 0; j < 4; ++j) rep.errors[j][k] = res[k].err[j];
    rep.path_tomogram.push_back(res[k].path_tomogram);
    rep.path_wigner.push_back(res[k].path_wigner);
    rep.normalization_deviation = std::max(rep.normalization_deviation, res[k].norm);
    rep.wigner_drift = std::max(rep.wigner_drift, res[k].drift);
    frames.push_back(std::move(res[k].frame));
  }
  bool ok = rep.max_error() < rep.tolerance && rep.normalization_deviation <= kNormTol && rep.wigner_drift <= kDriftTol;
  for (const auto& c : rep.errors)
    for (double e : c) ok = ok && std::isfinite(e);
  if (rep.times.size() >= 2) {
    rep.fitted_frequency = fit_beat_frequency(rep.times, frames);
    rep.frequency_fitted = true;
    ok = ok && std::abs(rep.fitted_frequency - rep.expected_frequency) <= rep.frequency_tolerance;
  }
  rep.pass = ok;
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace pt
