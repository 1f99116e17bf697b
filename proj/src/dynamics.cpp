#include "pauli_tomograph/dynamics.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <unsupported/Eigen/MatrixFunctions>

#include "pauli_tomograph/errors.hpp"
#include "pauli_tomograph/fft.hpp"
#include "pauli_tomograph/numerics.hpp"
#include "pauli_tomograph/parallel.hpp"

namespace pt {
namespace {

constexpr double kPi = std::numbers::pi;

Vec4 mix(const Eigen::Matrix4d& pi, const Vec4& v) {
  Vec4 out{};
  for (int j = 0; j < 4; ++j) {
    double s = 0.0;
    for (int l = 0; l < 4; ++l) s += pi(j, l) * v[l];
    out[j] = s;
  }
  return out;
}

void mix_in_place(const Eigen::Matrix4d& pi, std::array<std::vector<double>, 4>& comp) {
  if (pi.isIdentity(0.0)) return;
  const std::size_t n = comp[0].size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec4 v = mix(pi, Vec4{comp[0][i], comp[1][i], comp[2][i], comp[3][i]});
    for (int j = 0; j < 4; ++j) comp[j][i] = v[j];
  }
}

double boundary_mass(const PhaseField4& w) {
  double s = 0.0;
  const std::size_t nq = w.q.count, np = w.p.count;
  for (const auto& c : w.comp)
    for (std::size_t i = 0; i < nq; ++i)
      for (std::size_t m = 0; m < np; ++m)
        if (i == 0 || m == 0 || i + 1 == nq || m + 1 == np) s += std::abs(c[i * np + m]);
  return s * w.q.spacing() * w.p.spacing();
}

std::vector<cplx> line_of(const std::vector<cplx>& data, std::size_t start, std::size_t n, std::size_t stride) {
  std::vector<cplx> l(n);
  for (std::size_t j = 0; j < n; ++j) l[j] = data[start + j * stride];
  return l;
}

void landau_step(std::vector<cplx>& psi, const Grid& g, double omega, double t) {
  const Axis& a1 = g.axes[0];
  const Axis& a2 = g.axes[1];
  const std::size_t n1 = a1.count, n2 = a2.count;
  fft_axis(psi, {n1, n2}, 0, -1);
  const auto k1 = wavenumbers(a1);
  const Grid line = Grid::line(a2);
  std::vector<cplx> row(n2);
  for (std::size_t i = 0; i < n1; ++i) {
    cplx* base = psi.data() + i * n2;
    std::copy(base, base + n2, row.begin());
    const double centre = -omega * k1[i];
    translate(row.data(), a2, -centre);
    oscillator_propagate_axis(row, line, 0, t);
    translate(row.data(), a2, centre);
    const cplx ph = std::polar(1.0 / static_cast<double>(n1), -0.5 * t * k1[i] * k1[i] * (1.0 - omega * omega));
    for (std::size_t j = 0; j < n2; ++j) base[j] = row[j] * ph;
  }
  fft_axis(psi, {n1, n2}, 0, +1);
}

void evolve_field(ComplexField& f, const FlowSpec& spec, double t) {
  const Grid& g = f.grid;
  switch (spec.kind) {
    case FlowKind::Free:
      for (std::size_t d = 0; d < g.dims(); ++d) {
        const auto k = wavenumbers(g.axes[d]);
        std::vector<cplx> mult(k.size());
        for (std::size_t j = 0; j < k.size(); ++j) mult[j] = std::polar(1.0, -0.5 * t * k[j] * k[j]);
        std::vector<std::size_t> shape;
        for (const auto& a : g.axes) shape.push_back(a.count);
        std::size_t outer = 1, inner = 1;
        for (std::size_t i = 0; i < d; ++i) outer *= shape[i];
        for (std::size_t i = d + 1; i < shape.size(); ++i) inner *= shape[i];
        const std::size_t n = shape[d];
        for (std::size_t o = 0; o < outer; ++o)
          for (std::size_t in = 0; in < inner; ++in) {
            auto l = line_of(f.values, o * n * inner + in, n, inner);
            apply_multiplier(l.data(), n, mult);
            for (std::size_t j = 0; j < n; ++j) f.values[o * n * inner + in + j * inner] = l[j];
          }
      }
      break;
    case FlowKind::Oscillator:
      for (std::size_t d = 0; d < g.dims(); ++d) oscillator_propagate_axis(f.values, g, d, t);
      break;
    case FlowKind::Landau:
      require(g.dims() == 2, ErrorKind::Contract, "Landau flow needs a 2D state");
      landau_step(f.values, g, spec.omega, t);
      break;
  }
}

Eigen::Matrix2d plane(const Eigen::MatrixXd& m) { return m.topLeftCorner<2, 2>(); }

// Antiderivative along one axis with the constant fixed so it vanishes at the lower boundary,
// matching an operand that decays at both ends.
std::vector<cplx> decaying_antiderivative(const std::vector<cplx>& data, const std::vector<std::size_t>& shape,
                                          std::size_t dim, const Axis& axis) {
  auto out = antiderivative_along(data, shape, dim, axis);
  std::size_t inner = 1;
  for (std::size_t i = dim + 1; i < shape.size(); ++i) inner *= shape[i];
  const std::size_t n = shape[dim];
  const std::size_t outer = out.size() / (n * inner);
  for (std::size_t o = 0; o < outer; ++o)
    for (std::size_t in = 0; in < inner; ++in) {
      const std::size_t base = o * n * inner + in;
      const cplx c = out[base];
      for (std::size_t j = 0; j < n; ++j) out[base + j * inner] -= c;
    }
  return out;
}

// Fourth-order central difference at the middle of five consecutive frames.
double central(const double* f, double dt) { return (f[0] - 8.0 * f[1] + 8.0 * f[3] - f[4]) / (12.0 * dt); }

void check_times(const std::vector<double>& t) {
  require(t.size() >= 5, ErrorKind::Contract, "residual check needs at least 5 time samples");
  const double dt = t[1] - t[0];
  require(dt > 0.0, ErrorKind::Contract, "time samples must increase");
  for (std::size_t k = 1; k < t.size(); ++k)
    require(std::abs(t[k] - t[k - 1] - dt) <= 1e-9 * std::max(1.0, std::abs(dt)), ErrorKind::Contract,
            "time samples must be uniform");
}

std::vector<double> angles_on_turn(const TomogramField4& w) {
  std::vector<double> a;
  for (const auto& s : w.angles) a.push_back(s[0]);
  return a;
}

}  // namespace

SpinGenerator spin_generator_homogeneous(double omega0) {
  SpinGenerator g;
  g.omega0 = omega0;
  g.S << 0.0, 1.0, -0.5, -0.5,
        -1.0, 0.0, 0.5, 0.5,
         0.0, 0.0, 0.0, 0.0,
         0.0, 0.0, 0.0, 0.0;
  g.S *= omega0;
  return g;
}

SpinGenerator spin_generator_from_field(const std::array<double, 3>& field, double kappa) {
  const double h1 = kappa * field[0], h2 = kappa * field[1], h3 = kappa * field[2];
  SpinGenerator g;
  g.omega0 = 2.0 * h3;
  g.S << 0.0, 2.0 * h3, -(h2 + h3), h2 - h3,
        -2.0 * h3, 0.0, h1 + h3, h3 - h1,
         2.0 * h2, -2.0 * h1, h1 - h2, h1 - h2,
        -2.0 * h2, 2.0 * h1, h2 - h1, h2 - h1;
  return g;
}

SpinPropagator spin_propagator(double omega0, double t) {
  SpinPropagator p;
  p.t = t;
  if (omega0 * t == 0.0) return p;
  const double c = std::cos(omega0 * t), s = std::sin(omega0 * t);
  p.Pi << c, s, 0.5 * (1.0 - c - s), 0.5 * (1.0 - c - s),
         -s, c, 0.5 * (1.0 - c + s), 0.5 * (1.0 - c + s),
          0.0, 0.0, 1.0, 0.0,
          0.0, 0.0, 0.0, 1.0;
  return p;
}

SpinPropagator spin_propagator(const SpinGenerator& g, double t) {
  SpinPropagator p;
  p.t = t;
  const Eigen::Matrix4d st = g.S * t;
  p.Pi = st.exp();
  return p;
}

Vec4 spin_marginal_evolution(const Vec4& p0, double omega0, double t) {
  return mix(spin_propagator(omega0, t).Pi, p0);
}

Mat2 spin_unitary(double omega0, double t) {
  Mat2 u{};
  u[0][0] = std::polar(1.0, 0.5 * omega0 * t);
  u[1][1] = std::polar(1.0, -0.5 * omega0 * t);
  return u;
}

Mat2 spin_unitary(const std::array<double, 3>& field, double kappa, double t) {
  const double a1 = kappa * t * field[0], a2 = kappa * t * field[1], a3 = kappa * t * field[2];
  const double a = std::sqrt(a1 * a1 + a2 * a2 + a3 * a3);
  Mat2 u{};
  u[0][0] = u[1][1] = std::cos(a);
  if (a == 0.0) return u;
  const double s = std::sin(a) / a;
  const cplx i(0.0, 1.0);
  u[0][0] += i * s * a3;
  u[1][1] -= i * s * a3;
  u[0][1] = i * s * cplx(a1, -a2);
  u[1][0] = i * s * cplx(a1, a2);
  return u;
}

SpinDensity rotate_spin(const SpinDensity& state, const Mat2& u) {
  SpinDensity out = state;
  for (auto& m : out.members) {
    const auto& up = m.up.values;
    const auto& dn = m.down.values;
    std::vector<cplx> nu(up.size()), nd(up.size());
    for (std::size_t i = 0; i < up.size(); ++i) {
      nu[i] = u[0][0] * up[i] + u[0][1] * dn[i];
      nd[i] = u[1][0] * up[i] + u[1][1] * dn[i];
    }
    m.up.values = std::move(nu);
    m.down.values = std::move(nd);
  }
  return out;
}

FlowKind parse_flow_kind(const std::string& name) {
  if (name == "free") return FlowKind::Free;
  if (name == "landau") return FlowKind::Landau;
  if (name == "oscillator") return FlowKind::Oscillator;
  fail(ErrorKind::Contract, "unknown flow kind '" + name + "'");
}

const char* to_string(FlowKind k) {
  switch (k) {
    case FlowKind::Free: return "free";
    case FlowKind::Landau: return "landau";
    case FlowKind::Oscillator: return "oscillator";
  }
  return "unknown";
}

Eigen::MatrixXd flow_generator(const FlowSpec& spec) {
  const std::size_t n = spec.kind == FlowKind::Landau ? 2 : spec.dims;
  require(n >= 1, ErrorKind::Contract, "flow needs at least one dimension");
  Eigen::MatrixXd f = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) f(i, n + i) = 1.0;
  switch (spec.kind) {
    case FlowKind::Free: break;
    case FlowKind::Oscillator:
      for (std::size_t i = 0; i < n; ++i) f(n + i, i) = -1.0;
      break;
    case FlowKind::Landau:
      f(0, 1) = spec.omega;  // dq1/dt = p1 + omega q2
      f(3, 1) = -1.0;        // dp2/dt = -q2 - omega p1
      f(3, 2) = -spec.omega;
      break;
  }
  return f;
}

Eigen::MatrixXd symplectic_form(std::size_t dims) {
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(2 * dims, 2 * dims);
  for (std::size_t i = 0; i < dims; ++i) {
    j(i, dims + i) = 1.0;
    j(dims + i, i) = -1.0;
  }
  return j;
}

LinearFlow classical_flow(const FlowSpec& spec, double t) {
  require(std::isfinite(t), ErrorKind::Contract, "non-finite time");
  LinearFlow f;
  f.spec = spec;
  if (spec.kind == FlowKind::Landau) f.spec.dims = 2;
  f.t = t;
  const Eigen::MatrixXd gen = flow_generator(f.spec) * t;
  f.A = gen.exp();
  return f;
}

PropagatorBundle make_bundle(const FlowSpec& spec, double omega0, double t) {
  return PropagatorBundle{spin_propagator(omega0, t), classical_flow(spec, t)};
}

PropagatorBundle compose(const PropagatorBundle& a, const PropagatorBundle& b) {
  require(a.flow.spec.kind == b.flow.spec.kind && a.flow.spec.dims == b.flow.spec.dims,
          ErrorKind::Contract, "bundles of different flows");
  PropagatorBundle c;
  c.flow.spec = a.flow.spec;
  c.flow.A = b.flow.A * a.flow.A;
  c.flow.t = a.flow.t + b.flow.t;
  c.spin.Pi = b.spin.Pi * a.spin.Pi;
  c.spin.t = a.spin.t + b.spin.t;
  return c;
}

PhaseField4 evolve_wigner(const PhaseField4& w0, const PropagatorBundle& bundle) {
  require(w0.kind == PhaseKind::Wigner, ErrorKind::Contract, "evolution expects a Wigner field");
  require(bundle.flow.A.rows() == 2, ErrorKind::Capability, "materialized Wigner evolution is 1D");
  require(std::abs(bundle.spin.t - bundle.flow.t) < 1e-12, ErrorKind::Contract, "bundle times disagree");
  const Eigen::Matrix2d A = plane(bundle.flow.A);
  require(std::abs(A.determinant() - 1.0) < 1e-10, ErrorKind::Contract, "flow is not volume preserving");
  PhaseField4 w = w0;
  const double t = bundle.flow.t;
  if (t != 0.0) {
    const Eigen::MatrixXd gen = flow_generator(bundle.flow.spec);
    const double size = gen.cwiseAbs().rowwise().sum().maxCoeff() * std::abs(t);
    const int steps = std::max(1, static_cast<int>(std::ceil(size / (kPi / 8.0))));
    const Eigen::MatrixXd back = (-gen * (t / steps)).exp();
    const std::array<double, 4> m{back(0, 0), back(0, 1), back(1, 0), back(1, 1)};
    parallel_for(4, [&](std::size_t j) {
      for (int s = 0; s < steps; ++s) pullback_plane(w.comp[j], w.q, w.p, m);
    });
  }
  mix_in_place(bundle.spin.Pi, w.comp);
  const double edge = boundary_mass(w);
  if (edge > 1e-6) {
    std::ostringstream msg;
    msg << "evolved support leaves the grid: boundary mass " << edge;
    fail(ErrorKind::Domain, msg.str());
  }
  return w;
}

SpinDensity evolve_state(const SpinDensity& state, const FlowSpec& spec, double t) {
  state.validate();
  SpinDensity out = state;
  if (t == 0.0) return out;
  if (spec.kind == FlowKind::Landau)
    require(state.grid().dims() == 2, ErrorKind::Contract, "Landau flow needs a 2D state");
  else
    require(state.grid().dims() == spec.dims, ErrorKind::Contract, "flow and state dimensions differ");
  for (const auto& a : state.grid().axes)
    require(a.spectral(), ErrorKind::Capability, "state evolution needs power-of-two axes");
  for (auto& m : out.members) {
    evolve_field(m.up, spec, t);
    evolve_field(m.down, spec, t);
  }
  const double edge = boundary_density(out);
  if (edge > 1e-6) {
    std::ostringstream msg;
    msg << "evolved support leaves the grid: boundary density " << edge;
    fail(ErrorKind::Domain, msg.str());
  }
  return out;
}

LazyPhaseField4 lazy_wigner(const SpinDensity& state, const FlowSpec& spec, double omega0) {
  state.validate();
  LazyPhaseField4 w;
  w.initial = state;
  w.spec = spec;
  if (spec.kind == FlowKind::Landau) w.spec.dims = 2;
  w.omega0 = omega0;
  return w;
}

LazyPhaseField4 evolve_wigner(const LazyPhaseField4& w0, double t) {
  LazyPhaseField4 w = w0;
  w.t += t;
  return w;
}

std::vector<Vec4> LazyPhaseField4::samples(const std::vector<std::vector<double>>& points) const {
  const LinearFlow f = classical_flow(spec, t);
  const Eigen::MatrixXd back = f.A.inverse();
  std::vector<std::vector<double>> pulled;
  for (const auto& p : points) {
    require(static_cast<Eigen::Index>(p.size()) == back.rows(), ErrorKind::Contract, "point dimension mismatch");
    Eigen::VectorXd z = Eigen::Map<const Eigen::VectorXd>(p.data(), static_cast<Eigen::Index>(p.size()));
    Eigen::VectorXd y = back * z;
    pulled.emplace_back(y.data(), y.data() + y.size());
  }
  auto vals = wigner_samples(initial, pulled);
  const Eigen::Matrix4d pi = spin_propagator(omega0, t).Pi;
  for (auto& v : vals) v = mix(pi, v);
  return vals;
}

TomogramField4 LazyPhaseField4::tomogram(const std::vector<std::vector<double>>& angles) const {
  const SpinDensity now = evolve_state(initial, spec, t);
  TomogramField4 w = optical_tomogram_vector(now, angles);
  mix_in_place(spin_propagator(omega0, t).Pi, w.comp);
  return w;
}

double LazyPhaseField4::spin_traced_integral() const { return evolve_state(initial, spec, t).trace(); }

TomogramField4 evolve_tomogram(const TomogramField4& w0, const PropagatorBundle& bundle) {
  require(std::abs(bundle.spin.t - bundle.flow.t) < 1e-12, ErrorKind::Contract, "bundle times disagree");
  require(w0.x.dims() == 1 && bundle.flow.A.rows() == 2, ErrorKind::Capability,
          "parameter-map evolution is implemented for 1D tomograms");
  require_uniform_coverage(w0, 2);
  const Eigen::Matrix2d A = plane(bundle.flow.A);
  if (A.isIdentity(0.0) && bundle.spin.Pi.isIdentity(0.0)) return w0;
  TomogramField4 out = zero_tomogram(w0.x, w0.angles);
  const Axis& ax = w0.x.axes[0];
  const std::size_t n = ax.count;
  parallel_for(4, [&](std::size_t j) {
    AngularInterpolant ai(w0, static_cast<int>(j));
    for (std::size_t s = 0; s < w0.samples(); ++s) {
      const double th = w0.angles[s][0];
      const Eigen::Vector2d dir = A.transpose() * Eigen::Vector2d(std::cos(th), std::sin(th));
      const double r = dir.norm();
      const auto slice = ai.slice(std::atan2(dir(1), dir(0)));
      if (std::abs(r - 1.0) < 1e-13) {
        for (std::size_t i = 0; i < n; ++i) out.comp[j][s * n + i] = slice[i];
        continue;
      }
      BandLimited f(slice.data(), ax);
      // Outside the X range the tomogram is treated as zero; the periodic interpolant would wrap.
      for (std::size_t i = 0; i < n; ++i) {
        const double x = ax.at(i) / r;
        out.comp[j][s * n + i] = (x >= ax.min && x < ax.max) ? f(x).real() / r : 0.0;
      }
    }
  });
  mix_in_place(bundle.spin.Pi, out.comp);
  return out;
}

std::vector<SymplecticSample> evolve_symplectic(const TomogramField4& w0, const PropagatorBundle& bundle,
                                                const std::vector<SymplecticSample>& at) {
  require(std::abs(bundle.spin.t - bundle.flow.t) < 1e-12, ErrorKind::Contract, "bundle times disagree");
  require(bundle.flow.A.rows() == 2, ErrorKind::Capability, "symplectic evolution is implemented for 1D");
  const Eigen::Matrix2d A = plane(bundle.flow.A);
  std::vector<SymplecticSample> out;
  for (const auto& s : at) {
    require(s.mu.size() == 1 && s.nu.size() == 1, ErrorKind::Contract, "1D symplectic sample expected");
    const Eigen::Vector2d d = A.transpose() * Eigen::Vector2d(s.mu[0], s.nu[0]);
    SymplecticSample m = symplectic_from_optical(w0, s.X, {d(0)}, {d(1)});
    m.mu = s.mu;
    m.nu = s.nu;
    m.value = mix(bundle.spin.Pi, m.value);
    out.push_back(m);
  }
  return out;
}

Axis full_turn_axis(std::size_t count) { return Axis{0.0, 2.0 * kPi, count}; }

std::vector<cplx> tomographic_operator(OperatorKind kind, const std::vector<double>& w, const Axis& theta,
                                       const Axis& X) {
  require(w.size() == theta.count * X.count, ErrorKind::Contract, "operand size mismatch");
  require(theta.count >= 64, ErrorKind::Contract, "angular axis needs at least 64 samples");
  require(std::abs(theta.min) < 1e-12 && std::abs(theta.max - 2.0 * kPi) < 1e-12, ErrorKind::Contract,
          "angular axis must be [0, 2 pi)");
  const std::vector<std::size_t> shape{theta.count, X.count};
  const auto dth = derivative_along(w, shape, 0, theta);
  const std::vector<cplx> dthc(dth.begin(), dth.end());
  const auto anti = decaying_antiderivative(dthc, shape, 1, X);
  const std::vector<cplx> wc(w.begin(), w.end());
  const auto dx = derivative_along(wc, shape, 1, X);
  std::vector<cplx> out(w.size());
  const cplx half_i(0.0, 0.5);
  for (std::size_t a = 0; a < theta.count; ++a) {
    const double c = std::cos(theta.at(a)), s = std::sin(theta.at(a));
    for (std::size_t i = 0; i < X.count; ++i) {
      const std::size_t idx = a * X.count + i;
      const double x = X.at(i);
      if (kind == OperatorKind::Position)
        out[idx] = s * anti[idx] + x * c * w[idx] + half_i * s * dx[idx];
      else
        out[idx] = -c * anti[idx] + x * s * w[idx] - half_i * c * dx[idx];
    }
  }
  return out;
}

std::vector<double> residual_times(double centre, std::size_t count, double dt) {
  std::vector<double> t(count);
  const double mid = 0.5 * static_cast<double>(count - 1);
  for (std::size_t k = 0; k < count; ++k) t[k] = centre + (static_cast<double>(k) - mid) * dt;
  return t;
}

ResidualReport evolution_residual(const ResidualInput& in) {
  check_times(in.times);
  const double dt = in.times[1] - in.times[0];
  const std::size_t nt = in.times.size();
  const Eigen::Matrix4d S = spin_generator_homogeneous(in.omega0).S;
  ResidualReport rep;

  auto interior = [&](std::size_t k) { return k >= 2 && k + 2 < nt; };

  if (in.equation == EquationKind::OscillatorOptical) {
    require(static_cast<bool>(in.optical), ErrorKind::Contract, "optical trajectory missing");
    std::vector<TomogramField4> frames;
    for (double t : in.times) frames.push_back(in.optical(t));
    const auto& f0 = frames.front();
    require(f0.x.dims() == 1, ErrorKind::Contract, "1D tomogram frames expected");
    const std::size_t m = f0.samples(), n = f0.slice_size();
    const Axis th = full_turn_axis(m);
    const auto ang = angles_on_turn(f0);
    for (std::size_t s = 0; s < m; ++s)
      require(std::abs(ang[s] - th.at(s)) < 1e-12, ErrorKind::Contract, "angles must cover [0, 2 pi) uniformly");
    for (std::size_t k = 2; k + 2 < nt; ++k) {
      std::array<std::vector<double>, 4> dth;
      for (int j = 0; j < 4; ++j) dth[j] = derivative_along(frames[k].comp[j], {m, n}, 0, th);
      double worst = 0.0;
      for (std::size_t idx = 0; idx < m * n; ++idx)
        for (int j = 0; j < 4; ++j) {
          double f[5];
          for (int d = 0; d < 5; ++d) f[d] = frames[k - 2 + d].comp[j][idx];
          double rhs = dth[j][idx];
          for (int l = 0; l < 4; ++l) rhs += S(j, l) * frames[k].comp[l][idx];
          worst = std::max(worst, std::abs(central(f, dt) - rhs));
        }
      rep.times.push_back(in.times[k]);
      rep.residuals.push_back(worst);
    }
  } else if (in.equation == EquationKind::LandauOptical) {
    require(static_cast<bool>(in.optical2d), ErrorKind::Contract, "2D optical trajectory missing");
    const std::size_t M = in.angle_samples;
    const Axis th = full_turn_axis(M);
    const double om = in.omega;
    for (std::size_t k = 2; k + 2 < nt; ++k) {
      double worst = 0.0;
      for (const auto& centre : in.angle_pairs) {
        require(centre.size() == 2, ErrorKind::Contract, "angle pairs expected");
        std::vector<std::vector<double>> lines;
        for (std::size_t a = 0; a < M; ++a) lines.push_back({centre[0] + th.at(a), centre[1]});
        for (std::size_t a = 0; a < M; ++a) lines.push_back({centre[0], centre[1] + th.at(a)});
        const TomogramField4 now = in.optical2d(in.times[k], lines);
        std::vector<TomogramField4> ring;
        for (int d = -2; d <= 2; ++d)
          ring.push_back(d == 0 ? now : in.optical2d(in.times[k + d], {centre}));
        const Grid& g = now.x;
        const Axis& a1 = g.axes[0];
        const Axis& a2 = g.axes[1];
        const std::size_t n1 = a1.count, n2 = a2.count, n = n1 * n2;
        const std::vector<std::size_t> shape{n1, n2};
        const double c1 = std::cos(centre[0]), s1 = std::sin(centre[0]);
        const double c2 = std::cos(centre[1]), s2 = std::sin(centre[1]);
        for (int j = 0; j < 4; ++j) {
          // Angular derivatives at the centre from the two angular lines.
          std::vector<double> d1(n), d2(n);
          std::vector<double> line(M);
          for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t a = 0; a < M; ++a) line[a] = now.comp[j][a * n + i];
            d1[i] = derivative_along(line, {M}, 0, th)[0];
            for (std::size_t a = 0; a < M; ++a) line[a] = now.comp[j][(M + a) * n + i];
            d2[i] = derivative_along(line, {M}, 0, th)[0];
          }
          const std::vector<double> w(now.comp[j].begin(), now.comp[j].begin() + static_cast<long>(n));
          const std::vector<cplx> wc(w.begin(), w.end());
          const auto dx1 = derivative_along(wc, shape, 0, a1);
          const auto dx2 = derivative_along(wc, shape, 1, a2);
          const std::vector<cplx> d1c(d1.begin(), d1.end()), d2c(d2.begin(), d2.end());
          const auto cross1 = derivative_along(decaying_antiderivative(d2c, shape, 1, a2), shape, 0, a1);
          const auto cross2 = derivative_along(decaying_antiderivative(d1c, shape, 0, a1), shape, 1, a2);
          for (std::size_t i1 = 0; i1 < n1; ++i1)
            for (std::size_t i2 = 0; i2 < n2; ++i2) {
              const std::size_t i = i1 * n2 + i2;
              const double x1 = a1.at(i1), x2 = a2.at(i2);
              double rhs = c1 * c1 * d1[i] - c1 * s1 * (w[i] + x1 * dx1[i].real()) + d2[i] -
                           om * c1 * c2 * x2 * dx1[i].real() + om * s1 * s2 * x1 * dx2[i].real() -
                           om * c1 * s2 * cross1[i].real() - om * s2 * c1 * cross2[i].real();
              for (int l = 0; l < 4; ++l) rhs += S(j, l) * ring[2].comp[l][i];
              double f[5];
              for (int d = 0; d < 5; ++d) f[d] = ring[d].comp[j][i];
              worst = std::max(worst, std::abs(central(f, dt) - rhs));
            }
        }
      }
      rep.times.push_back(in.times[k]);
      rep.residuals.push_back(worst);
    }
  } else {
    require(static_cast<bool>(in.wigner), ErrorKind::Contract, "Wigner trajectory missing");
    const Axis& ln = in.line;
    const std::size_t L = ln.count;
    std::size_t centre_idx = L;
    for (std::size_t j = 0; j < L; ++j)
      if (std::abs(ln.at(j)) < 1e-12) centre_idx = j;
    require(centre_idx < L, ErrorKind::Contract, "derivative line must contain offset 0");
    const double om = in.omega;
    const int axes[3] = {0, 1, 3};
    for (std::size_t k = 0; k < nt; ++k) {
      if (!interior(k)) continue;
      std::vector<std::vector<Vec4>> ring;
      for (int d = -2; d <= 2; ++d) ring.push_back(in.wigner(in.times[k + d], in.points));
      double worst = 0.0;
      for (std::size_t p = 0; p < in.points.size(); ++p) {
        const auto& z = in.points[p];
        require(z.size() == 4, ErrorKind::Contract, "Landau points are (q1, q2, p1, p2)");
        std::array<Vec4, 4> grad{};
        for (int ax : axes) {
          std::vector<std::vector<double>> pts;
          for (std::size_t j = 0; j < L; ++j) {
            auto q = z;
            q[ax] += ln.at(j);
            pts.push_back(q);
          }
          const auto vals = in.wigner(in.times[k], pts);
          for (int c = 0; c < 4; ++c) {
            std::vector<double> line(L);
            for (std::size_t j = 0; j < L; ++j) line[j] = vals[j][c];
            grad[ax][c] = derivative_along(line, {L}, 0, ln)[centre_idx];
          }
        }
        const double q2 = z[1], p1 = z[2], p2 = z[3];
        for (int c = 0; c < 4; ++c) {
          double rhs = -(p1 + om * q2) * grad[0][c] - p2 * grad[1][c] + (q2 + om * p1) * grad[3][c];
          for (int l = 0; l < 4; ++l) rhs += S(c, l) * ring[2][p][l];
          double f[5];
          for (int d = 0; d < 5; ++d) f[d] = ring[d][p][c];
          worst = std::max(worst, std::abs(central(f, dt) - rhs));
        }
      }
      rep.times.push_back(in.times[k]);
      rep.residuals.push_back(worst);
    }
  }
  for (double r : rep.residuals) rep.max_residual = std::max(rep.max_residual, r);
  return rep;
}

}  // namespace pt
