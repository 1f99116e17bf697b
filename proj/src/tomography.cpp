#include "pauli_tomograph/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "pauli_tomograph/errors.hpp"
#include "pauli_tomograph/fft.hpp"
#include "pauli_tomograph/numerics.hpp"
#include "pauli_tomograph/parallel.hpp"

namespace pt {
namespace {

constexpr double kPi = std::numbers::pi;

bool symmetric(const Axis& a) { return std::abs(a.min + a.max) < 1e-12 * std::max(1.0, a.length()); }

void write_slice(TomogramField4& t, std::size_t s, const std::vector<double>& r11, const std::vector<double>& r22,
                 const std::vector<cplx>& r12) {
  const std::size_t n = t.slice_size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec4 v = dequantize_entries(r11[i], r22[i], r12[i]);
    for (int j = 0; j < 4; ++j) t.comp[j][s * n + i] = v[j];
  }
}

// Lagrange stencil on a uniform grid starting at 0 with the given step; weights are shared by
// every profile sampled at the same abscissa.
struct LagrangeStencil {
  static constexpr int order = 12;
  long start = 0;
  double w[order];

  LagrangeStencil(std::size_t size, double step, double x) {
    const double u = x / step;
    start = static_cast<long>(std::floor(u)) - order / 2 + 1;
    start = std::max<long>(0, std::min<long>(start, static_cast<long>(size) - order));
    for (int i = 0; i < order; ++i) {
      double v = 1.0;
      const double xi = static_cast<double>(start + i);
      for (int j = 0; j < order; ++j)
        if (j != i) v *= (u - static_cast<double>(start + j)) / (xi - static_cast<double>(start + j));
      w[i] = v;
    }
  }

  cplx operator()(const std::vector<cplx>& f) const {
    cplx s = 0.0;
    for (int i = 0; i < order; ++i) s += w[i] * f[start + i];
    return s;
  }
};

}  // namespace

double TomogramField4::min_value() const {
  double m = comp[0].empty() ? 0.0 : comp[0][0];
  for (const auto& c : comp)
    for (double x : c) m = std::min(m, x);
  return m;
}

TomogramField4 zero_tomogram(const Grid& x, const std::vector<std::vector<double>>& angles) {
  TomogramField4 t;
  t.x = x;
  t.angles = angles;
  for (auto& c : t.comp) c.assign(x.size() * angles.size(), 0.0);
  return t;
}

std::vector<std::vector<double>> angle_list(const std::vector<double>& thetas) {
  std::vector<std::vector<double>> a;
  for (double t : thetas) a.push_back({t});
  return a;
}

std::vector<double> uniform_angles(std::size_t count) {
  std::vector<double> t(count);
  for (std::size_t k = 0; k < count; ++k) t[k] = kPi * static_cast<double>(k) / static_cast<double>(count);
  return t;
}

TomogramField4 optical_tomogram_vector(const SpinDensity& state, const std::vector<std::vector<double>>& angles) {
  state.validate();
  const Grid& g = state.grid();
  for (const auto& a : angles) require(a.size() == g.dims(), ErrorKind::Contract, "one angle per axis required");
  const double edge = boundary_density(state);
  if (edge > 1e-6) {
    std::ostringstream m;
    m << "aliasing: boundary density " << edge;
    fail(ErrorKind::Domain, m.str());
  }
  TomogramField4 t = zero_tomogram(g, angles);
  const std::size_t n = g.size();
  parallel_for(angles.size(), [&](std::size_t s) {
    std::vector<double> r11(n, 0.0), r22(n, 0.0);
    std::vector<cplx> r12(n, 0.0);
    for (std::size_t k = 0; k < state.members.size(); ++k) {
      const ComplexField u = fractional_fourier(state.members[k].up, angles[s]);
      const ComplexField d = fractional_fourier(state.members[k].down, angles[s]);
      const double w = state.weights[k];
      for (std::size_t i = 0; i < n; ++i) {
        r11[i] += w * std::norm(u.values[i]);
        r22[i] += w * std::norm(d.values[i]);
        r12[i] += w * u.values[i] * std::conj(d.values[i]);
      }
    }
    write_slice(t, s, r11, r22, r12);
  });
  return t;
}

TomogramField4 optical_tomogram_vector(const SpinDensity& state, const std::vector<double>& thetas) {
  return optical_tomogram_vector(state, angle_list(thetas));
}

TomogramField4 tomogram_from_wigner(const PhaseField4& w, const std::vector<double>& thetas) {
  require(w.kind == PhaseKind::Wigner, ErrorKind::Contract, "Radon transform expects a Wigner field");
  require(w.q == w.p, ErrorKind::Capability, "Radon transform needs identical q and p axes");
  require(w.q.spectral(), ErrorKind::Capability, "Radon transform needs a power-of-two axis");
  for (const auto& c : w.comp) ensure_finite(c, "Wigner component");
  TomogramField4 t = zero_tomogram(Grid::line(w.q), angle_list(thetas));
  std::vector<std::size_t> order(thetas.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return thetas[a] < thetas[b]; });
  const std::size_t n = w.q.count;
  const double dp = w.p.spacing();
  parallel_for(4, [&](std::size_t j) {
    std::vector<double> field = w.comp[j];
    double current = 0.0;
    for (std::size_t s : order) {
      const double target = thetas[s];
      const int steps = static_cast<int>(std::ceil(std::abs(target - current) / (kPi / 16.0) - 1e-12));
      for (int k = 0; k < steps; ++k) {
        const double d = (target - current) / (steps - k);
        const double c = std::cos(d), sn = std::sin(d);
        pullback_plane(field, w.q, w.p, {c, -sn, sn, c});
        current += d;
      }
      current = target;
      for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t m = 0; m < n; ++m) acc += field[i * n + m];
        t.comp[j][s * n + i] = acc * dp;
      }
    }
  });
  return t;
}

SymplecticSample symplectic_from_optical(const TomogramField4& w, double X, const std::vector<double>& mu,
                                         const std::vector<double>& nu) {
  const std::size_t dims = w.x.dims();
  require(mu.size() == dims && nu.size() == dims, ErrorKind::Contract, "one (mu, nu) pair per axis required");
  std::vector<double> theta(dims);
  double scale = 1.0;
  for (std::size_t d = 0; d < dims; ++d) {
    const double r = std::hypot(mu[d], nu[d]);
    require(r > 0.0, ErrorKind::Domain, "symplectic parameters (mu, nu) = (0, 0)");
    theta[d] = std::atan2(nu[d], mu[d]);
    scale *= r;
  }
  require(dims == 1, ErrorKind::Capability, "symplectic samples from optical tomograms are 1D");
  const double r = scale;
  SymplecticSample out{X, mu, nu, {}};
  // Beyond the X range the tomogram is zero; interpolants would wrap around.
  const Axis& ax = w.x.axes[0];
  if (!(X / r >= ax.min && X / r < ax.max)) return out;
  // Exact sample when the angle is present, otherwise angular interpolation.
  for (std::size_t s = 0; s < w.samples(); ++s) {
    const double diff = std::remainder(w.angles[s][0] - theta[0], 2.0 * kPi);
    if (std::abs(diff) < 1e-12) {
      for (int j = 0; j < 4; ++j) {
        BandLimited f(w.comp[j].data() + s * w.slice_size(), w.x.axes[0]);
        out.value[j] = f(X / r).real() / r;
      }
      return out;
    }
  }
  for (int j = 0; j < 4; ++j) {
    AngularInterpolant a(w, j);
    out.value[j] = a(X / r, theta[0]) / r;
  }
  return out;
}

SymplecticField4 symplectic_field(const TomogramField4& w, const std::vector<std::array<double, 2>>& params) {
  require_uniform_coverage(w, 2);
  const Axis ax = w.x.axes[0];
  const std::size_t n = ax.count;
  SymplecticField4 out{ax, params, {}};
  for (auto& c : out.comp) c.assign(params.size() * n, 0.0);
  for (const auto& pr : params) require(std::hypot(pr[0], pr[1]) > 0.0, ErrorKind::Domain, "symplectic parameters (mu, nu) = (0, 0)");
  parallel_for(4, [&](std::size_t j) {
    AngularInterpolant a(w, static_cast<int>(j));
    for (std::size_t s = 0; s < params.size(); ++s) {
      const double r = std::hypot(params[s][0], params[s][1]);
      const auto slice = a.slice(std::atan2(params[s][1], params[s][0]));
      BandLimited f(slice.data(), ax);
      for (std::size_t i = 0; i < n; ++i) {
        const double x = ax.at(i) / r;
        out.comp[j][s * n + i] = (x >= ax.min && x < ax.max) ? f(x).real() / r : 0.0;
      }
    }
  });
  return out;
}

void require_uniform_coverage(const TomogramField4& w, std::size_t min_count) {
  const std::size_t m = w.samples();
  if (w.x.dims() != 1) fail(ErrorKind::Reconstruction, "angular coverage check supports 1D tomograms");
  if (m < min_count) {
    std::ostringstream msg;
    msg << "insufficient angular coverage: " << m << " samples, need at least " << min_count
        << " uniform angles in [0, pi)";
    fail(ErrorKind::Reconstruction, msg.str());
  }
  for (std::size_t k = 0; k < m; ++k) {
    const double expect = kPi * static_cast<double>(k) / static_cast<double>(m);
    if (std::abs(w.angles[k][0] - expect) > 1e-12) {
      std::ostringstream msg;
      msg << "angles must be k pi / " << m << "; sample " << k << " is " << w.angles[k][0];
      fail(ErrorKind::Reconstruction, msg.str());
    }
  }
  if (!symmetric(w.x.axes[0])) fail(ErrorKind::Reconstruction, "reconstruction needs an X axis symmetric about 0");
}

AngularInterpolant::AngularInterpolant(const TomogramField4& w, int component) {
  require_uniform_coverage(w, 2);
  axis_ = w.x.axes[0];
  const std::size_t n = axis_.count;
  const std::size_t half = w.samples();
  m_ = 2 * half;
  std::vector<std::vector<cplx>> ext(n, std::vector<cplx>(m_));
  for (std::size_t s = 0; s < half; ++s)
    for (std::size_t i = 0; i < n; ++i) {
      ext[i][s] = w.comp[component][s * n + i];
      ext[i][s + half] = w.comp[component][s * n + (n - i) % n];
    }
  for (auto& line : ext) {
    fft(line.data(), m_, -1);
    for (auto& z : line) z /= static_cast<double>(m_);
  }
  for (std::size_t b = 0; b < m_; ++b) {
    const int d = (b < m_ / 2) ? static_cast<int>(b) : static_cast<int>(b) - static_cast<int>(m_);
    std::vector<cplx> h(n);
    for (std::size_t i = 0; i < n; ++i) h[i] = ext[i][b];
    order_.push_back(d);
    harm_.push_back(std::move(h));
  }
}

std::vector<double> AngularInterpolant::slice(double theta) const {
  const std::size_t n = axis_.count;
  std::vector<double> out(n, 0.0);
  for (std::size_t b = 0; b < order_.size(); ++b) {
    const int d = order_[b];
    if (2 * static_cast<std::size_t>(std::abs(d)) == m_) {
      const double c = std::cos(d * theta);
      for (std::size_t i = 0; i < n; ++i) out[i] += harm_[b][i].real() * c;
      continue;
    }
    const cplx e = std::polar(1.0, d * theta);
    for (std::size_t i = 0; i < n; ++i) out[i] += (harm_[b][i] * e).real();
  }
  return out;
}

double AngularInterpolant::operator()(double X, double theta) const {
  const auto s = slice(theta);
  return BandLimited(s.data(), axis_)(X).real();
}

PhaseField4 wigner_from_optical_tomogram(const TomogramField4& w) {
  require_uniform_coverage(w, 64);
  const auto norm = normalization_check(w, 1e-6);
  if (!norm.ok) {
    std::ostringstream m;
    m << "per-angle normalization violated by " << norm.max_deviation;
    fail(ErrorKind::Reconstruction, m.str());
  }
  const Axis ax = w.x.axes[0];
  const std::size_t n = ax.count;
  const double h = ax.spacing();
  const double L = ax.length();
  const auto k = wavenumbers(ax);
  double kmax = 0.0;
  for (double v : k) kmax = std::max(kmax, std::abs(v));
  const double kr_max = std::sqrt(2.0) * kmax;
  constexpr int pad = 8;
  const double fine = 2.0 * kPi / (pad * L);
  const std::size_t nfine = static_cast<std::size_t>(std::ceil(kr_max / fine)) + 16;
  PhaseField4 out = zero_phase_field(ax, ax, PhaseKind::Wigner);
  parallel_for(4, [&](std::size_t j) {
    AngularInterpolant ai(w, static_cast<int>(j));
    const auto& orders = ai.orders();
    const auto& harm = ai.harmonics();
    double top = 0.0;
    for (const auto& hv : harm)
      for (const auto& z : hv) top = std::max(top, std::abs(z));
    // Radial profiles c_d(k) = int a_d(X) exp(-i k X) dX on a fine radial grid.
    std::vector<int> used;
    std::vector<std::vector<cplx>> radial;
    for (std::size_t b = 0; b < orders.size(); ++b) {
      double mag = 0.0;
      for (const auto& z : harm[b]) mag = std::max(mag, std::abs(z));
      // Harmonics at rounding level contribute nothing measurable and dominate the cost.
      if (top == 0.0 || mag <= 1e-11 * top) continue;
      std::vector<cplx> prof(nfine);
      for (std::size_t l = 0; l < nfine; ++l) {
        const double kk = fine * static_cast<double>(l);
        cplx s = 0.0;
        const cplx step = std::polar(1.0, -kk * h);
        cplx e = std::polar(1.0, -kk * ax.min);
        for (std::size_t i = 0; i < n; ++i) {
          s += harm[b][i] * e;
          e *= step;
        }
        prof[l] = s * h;
      }
      used.push_back(orders[b]);
      radial.push_back(std::move(prof));
    }
    std::vector<cplx> chi(n * n, 0.0);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t c = 0; c < n; ++c) {
        if (2 * a == n || 2 * c == n) continue;
        const double kq = k[a], kp = k[c];
        const double r = std::hypot(kq, kp);
        const double phi = std::atan2(kp, kq);
        const LagrangeStencil st(nfine, fine, r);
        cplx s = 0.0;
        for (std::size_t u = 0; u < used.size(); ++u) s += st(radial[u]) * std::polar(1.0, used[u] * phi);
        chi[a * n + c] = s * std::polar(1.0, (kq + kp) * ax.min);
      }
    const std::vector<std::size_t> shape{n, n};
    fft_axis(chi, shape, 0, +1);
    fft_axis(chi, shape, 1, +1);
    for (std::size_t i = 0; i < n * n; ++i) out.comp[j][i] = chi[i].real() / (L * L);
  });
  return out;
}

DensityKernel rho_from_optical_tomogram(const TomogramField4& w) {
  return weyl_reconstruct(wigner_from_optical_tomogram(w));
}

NormalizationReport normalization_check(const TomogramField4& w, double tol) {
  NormalizationReport r;
  for (const auto& c : w.comp) ensure_finite(c, "tomogram");
  const std::size_t n = w.slice_size();
  const double cell = w.x.cell();
  for (std::size_t s = 0; s < w.samples(); ++s) {
    Vec4 v{};
    for (int j = 0; j < 4; ++j) {
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) acc += w.comp[j][s * n + i];
      v[j] = acc * cell;
    }
    r.max_deviation = std::max(r.max_deviation, std::abs(v[2] + v[3] - 1.0));
    r.integrals.push_back(v);
  }
  r.ok = r.max_deviation <= tol;
  return r;
}

}  // namespace pt
