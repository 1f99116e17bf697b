#include "pauli_tomograph/quasidist.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "pauli_tomograph/fft.hpp"
#include "pauli_tomograph/numerics.hpp"

namespace pt {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kAliasTol = 1e-6;

void check_1d(const SpinDensity& s) {
  s.validate();
  require(s.grid().dims() == 1, ErrorKind::Capability, "materialized phase fields are 1D");
  require(s.grid().spectral(), ErrorKind::Capability, "phase-field transforms need a power-of-two grid");
  const double edge = boundary_density(s);
  if (edge > kAliasTol) {
    std::ostringstream m;
    m << "aliasing: boundary density " << edge << " exceeds " << kAliasTol;
    fail(ErrorKind::Domain, m.str());
  }
}

PhaseField4 assemble(const Axis& q, const Axis& p, PhaseKind kind, const Eigen::MatrixXcd& r11,
                     const Eigen::MatrixXcd& r22, const Eigen::MatrixXcd& r12) {
  PhaseField4 f = zero_phase_field(q, p, kind);
  for (std::size_t i = 0; i < q.count; ++i)
    for (std::size_t m = 0; m < p.count; ++m) {
      const Vec4 v = dequantize_entries(r11(i, m).real(), r22(i, m).real(), r12(i, m));
      for (int j = 0; j < 4; ++j) f.comp[j][i * p.count + m] = v[j];
    }
  return f;
}

const cplx* component(const SpinorField& s, int a) { return a == 0 ? s.up.values.data() : s.down.values.data(); }

// 2D transform over a [q][p] array; the Gaussian multiplier is applied in between.
std::vector<double> gaussian_filter(const std::vector<double>& data, const Axis& q, const Axis& p, double sign,
                                    double scale, double cutoff, double* tail_ratio) {
  std::vector<cplx> c(data.begin(), data.end());
  const std::vector<std::size_t> shape{q.count, p.count};
  fft_axis(c, shape, 0, -1);
  fft_axis(c, shape, 1, -1);
  const auto kq = wavenumbers(q);
  const auto kp = wavenumbers(p);
  double top = 0.0;
  for (const auto& z : c) top = std::max(top, std::abs(z));
  double tail = 0.0;
  for (std::size_t i = 0; i < q.count; ++i)
    for (std::size_t m = 0; m < p.count; ++m) {
      cplx& z = c[i * p.count + m];
      const double k2 = kq[i] * kq[i] + kp[m] * kp[m];
      if (cutoff > 0.0 && k2 > cutoff * cutoff) {
        tail = std::max(tail, std::abs(z));
        z = 0.0;
        continue;
      }
      z *= std::exp(sign * 0.25 * k2);
    }
  if (tail_ratio) *tail_ratio = top > 0.0 ? tail / top : 0.0;
  fft_axis(c, shape, 0, +1);
  fft_axis(c, shape, 1, +1);
  const double norm = scale / static_cast<double>(q.count * p.count);
  std::vector<double> out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) out[i] = c[i].real() * norm;
  return out;
}

// Largest spectral magnitude in the outer quarter of either axis, relative to the peak.
double outer_band_ratio(const std::vector<double>& data, const Axis& q, const Axis& p) {
  std::vector<cplx> c(data.begin(), data.end());
  const std::vector<std::size_t> shape{q.count, p.count};
  fft_axis(c, shape, 0, -1);
  fft_axis(c, shape, 1, -1);
  const auto kq = wavenumbers(q);
  const auto kp = wavenumbers(p);
  const double kq_edge = 0.75 * std::abs(kq[q.count / 2]);
  const double kp_edge = 0.75 * std::abs(kp[p.count / 2]);
  double top = 0.0, band = 0.0;
  for (std::size_t i = 0; i < q.count; ++i)
    for (std::size_t m = 0; m < p.count; ++m) {
      const double a = std::abs(c[i * p.count + m]);
      top = std::max(top, a);
      if (std::abs(kq[i]) > kq_edge || std::abs(kp[m]) > kp_edge) band = std::max(band, a);
    }
  return top > 0.0 ? band / top : 0.0;
}

void translate_dim(std::vector<cplx>& data, const Grid& g, std::size_t dim, double shift) {
  if (shift == 0.0) return;
  std::vector<std::size_t> shape;
  for (const auto& a : g.axes) shape.push_back(a.count);
  std::size_t outer = 1, inner = 1;
  for (std::size_t i = 0; i < dim; ++i) outer *= shape[i];
  for (std::size_t i = dim + 1; i < shape.size(); ++i) inner *= shape[i];
  const std::size_t n = shape[dim];
  std::vector<cplx> line(n);
  for (std::size_t o = 0; o < outer; ++o)
    for (std::size_t in = 0; in < inner; ++in) {
      cplx* base = data.data() + o * n * inner + in;
      for (std::size_t j = 0; j < n; ++j) line[j] = base[j * inner];
      translate(line.data(), g.axes[dim], shift);
      for (std::size_t j = 0; j < n; ++j) base[j * inner] = line[j];
    }
}

// psi(2q - x) sampled on the grid.
std::vector<cplx> reflected(const ComplexField& f, const std::vector<double>& q) {
  const Grid& g = f.grid;
  const std::size_t dims = g.dims();
  std::vector<cplx> r(f.values.size());
  for (std::size_t idx = 0; idx < r.size(); ++idx) {
    std::size_t rem = idx, src = 0, stride = 1;
    for (std::size_t d = dims; d-- > 0;) {
      const std::size_t n = g.axes[d].count;
      const std::size_t i = rem % n;
      rem /= n;
      src += ((n - i) % n) * stride;
      stride *= n;
    }
    r[idx] = f.values[src];
  }
  for (std::size_t d = 0; d < dims; ++d) {
    const double centre = 0.5 * (g.axes[d].min + g.axes[d].max);
    translate_dim(r, g, d, 2.0 * q[d] - 2.0 * centre);
  }
  return r;
}

}  // namespace

double PhaseField4::measure() const {
  const double m = q.spacing() * p.spacing();
  return kind == PhaseKind::Husimi ? m / (2.0 * kPi) : m;
}

double PhaseField4::integral(int j) const {
  double s = 0.0;
  for (double x : comp[j]) s += x;
  return s * measure();
}

double PhaseField4::min_value() const {
  double m = comp[0].empty() ? 0.0 : comp[0][0];
  for (const auto& c : comp)
    for (double x : c) m = std::min(m, x);
  return m;
}

std::vector<double> PhaseField4::spin_traced() const {
  std::vector<double> s(size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = comp[2][i] + comp[3][i];
  return s;
}

PhaseField4 zero_phase_field(const Axis& q, const Axis& p, PhaseKind kind) {
  PhaseField4 f;
  f.q = q;
  f.p = p;
  f.kind = kind;
  for (auto& c : f.comp) c.assign(q.count * p.count, 0.0);
  return f;
}

double boundary_density(const SpinDensity& state) {
  double worst = 0.0;
  for (std::size_t k = 0; k < state.members.size(); ++k) {
    const double a = boundary_amplitude(state.members[k].up);
    const double b = boundary_amplitude(state.members[k].down);
    worst = std::max(worst, std::abs(state.weights[k]) * (a * a + b * b));
  }
  return worst;
}

PhaseField4 wigner_vector(const SpinDensity& state, const Axis& p) {
  check_1d(state);
  const Axis q = state.grid().axes[0];
  const std::size_t n = q.count;
  const long half = static_cast<long>(n / 2);
  const std::size_t span = 2 * static_cast<std::size_t>(half) + 1;
  const double h = q.spacing();
  Eigen::MatrixXcd g[2][2];
  for (auto& row : g)
    for (auto& m : row) m = Eigen::MatrixXcd::Zero(n, span);
  for (std::size_t k = 0; k < state.members.size(); ++k) {
    const double w = state.weights[k];
    for (int a = 0; a < 2; ++a)
      for (int b = a; b < 2; ++b) {
        const cplx* pa = component(state.members[k], a);
        const cplx* pb = component(state.members[k], b);
        for (long i = 0; i < static_cast<long>(n); ++i)
          for (long j = -half; j <= half; ++j) {
            const long ia = i - j, ib = i + j;
            if (ia < 0 || ib < 0 || ia >= static_cast<long>(n) || ib >= static_cast<long>(n)) continue;
            g[a][b](i, j + half) += w * pa[ia] * std::conj(pb[ib]);
          }
      }
  }
  Eigen::MatrixXcd e(span, p.count);
  for (long j = -half; j <= half; ++j)
    for (std::size_t m = 0; m < p.count; ++m) e(j + half, m) = std::polar(h / kPi, 2.0 * p.at(m) * j * h);
  return assemble(q, p, PhaseKind::Wigner, g[0][0] * e, g[1][1] * e, g[0][1] * e);
}

PhaseField4 wigner_vector(const SpinDensity& state) { return wigner_vector(state, state.grid().axes.at(0)); }

PhaseField4 husimi_vector(const SpinDensity& state, const Axis& p) {
  check_1d(state);
  const Axis q = state.grid().axes[0];
  const std::size_t n = q.count;
  const double h = q.spacing();
  const double c0 = std::pow(kPi, -0.25) * h;
  Eigen::MatrixXd window(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t x = 0; x < n; ++x) {
      const double d = q.at(x) - q.at(i);
      window(i, x) = c0 * std::exp(-0.5 * d * d);
    }
  Eigen::MatrixXcd e(n, p.count);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t m = 0; m < p.count; ++m) e(x, m) = std::polar(1.0, -p.at(m) * q.at(x));
  Eigen::MatrixXcd r11 = Eigen::MatrixXcd::Zero(n, p.count), r22 = r11, r12 = r11;
  for (std::size_t k = 0; k < state.members.size(); ++k) {
    Eigen::MatrixXcd amp[2];
    for (int a = 0; a < 2; ++a) {
      Eigen::Map<const Eigen::VectorXcd> psi(component(state.members[k], a), n);
      amp[a] = (window.cast<cplx>() * psi.asDiagonal()) * e;
    }
    const double w = state.weights[k];
    r11 += w * amp[0].cwiseAbs2().cast<cplx>();
    r22 += w * amp[1].cwiseAbs2().cast<cplx>();
    r12 += w * amp[0].cwiseProduct(amp[1].conjugate());
  }
  return assemble(q, p, PhaseKind::Husimi, r11, r22, r12);
}

PhaseField4 husimi_vector(const SpinDensity& state) { return husimi_vector(state, state.grid().axes.at(0)); }

PhaseField4 smooth_wigner_to_husimi(const PhaseField4& w) {
  require(w.kind == PhaseKind::Wigner, ErrorKind::Contract, "smoothing expects a Wigner field");
  require(w.q.spectral() && w.p.spectral(), ErrorKind::Capability, "smoothing needs power-of-two axes");
  PhaseField4 out = zero_phase_field(w.q, w.p, PhaseKind::Husimi);
  const std::size_t nq = w.q.count, np = w.p.count;
  const Axis wide_q{w.q.min, w.q.min + 2.0 * (w.q.max - w.q.min), 2 * nq};
  const Axis wide_p{w.p.min, w.p.min + 2.0 * (w.p.max - w.p.min), 2 * np};
  for (int j = 0; j < 4; ++j) {
    const double band = outer_band_ratio(w.comp[j], w.q, w.p);
    if (band >= 1e-8) {
      std::ostringstream m;
      m << "Wigner component " << j + 1 << " is not band-limited: outer spectrum ratio " << band;
      fail(ErrorKind::Domain, m.str());
    }
    // Zero-padded to twice the extent so the convolution is linear; the Husimi tails reach the
    // box edge well before the Wigner function does.
    std::vector<double> padded(4 * nq * np, 0.0);
    for (std::size_t i = 0; i < nq; ++i)
      std::copy_n(w.comp[j].begin() + static_cast<std::ptrdiff_t>(i * np), np, padded.begin() + static_cast<std::ptrdiff_t>(i * 2 * np));
    const auto smoothed = gaussian_filter(padded, wide_q, wide_p, -1.0, 2.0 * kPi, 0.0, nullptr);
    for (std::size_t i = 0; i < nq; ++i)
      std::copy_n(smoothed.begin() + static_cast<std::ptrdiff_t>(i * 2 * np), np, out.comp[j].begin() + static_cast<std::ptrdiff_t>(i * np));
  }
  return out;
}

double default_deconvolution_cutoff() { return 2.0 * std::sqrt(std::log(kMaxAmplification)); }

PhaseField4 deconvolve_husimi_to_wigner(const PhaseField4& q, double cutoff) {
  require(q.kind == PhaseKind::Husimi, ErrorKind::Contract, "deconvolution expects a Husimi field");
  require(q.q.spectral() && q.p.spectral(), ErrorKind::Capability, "deconvolution needs power-of-two axes");
  DeconvolutionSpectrum spec;
  spec.cutoff = cutoff;
  spec.amplification = std::exp(0.25 * cutoff * cutoff);
  if (!(cutoff > 0.0) || spec.amplification > kMaxAmplification * (1.0 + 1e-12)) {
    std::ostringstream m;
    m << "cutoff " << cutoff << " implies amplification " << spec.amplification << " above bound "
      << kMaxAmplification;
    throw IllPosedDeconvolution(m.str(), spec);
  }
  PhaseField4 out = zero_phase_field(q.q, q.p, PhaseKind::Wigner);
  for (int j = 0; j < 4; ++j) {
    double tail = 0.0;
    out.comp[j] = gaussian_filter(q.comp[j], q.q, q.p, +1.0, 1.0 / (2.0 * kPi), cutoff, &tail);
    spec.tail_ratio = std::max(spec.tail_ratio, tail);
  }
  if (spec.tail_ratio >= kTailThreshold) {
    std::ostringstream m;
    m << "Husimi spectrum beyond |k| = " << cutoff << " is " << spec.tail_ratio
      << " of its peak (needs < " << kTailThreshold << "); amplification there " << spec.amplification;
    throw IllPosedDeconvolution(m.str(), spec);
  }
  return out;
}

PhaseField4 deconvolve_husimi_to_wigner(const PhaseField4& q) {
  return deconvolve_husimi_to_wigner(q, default_deconvolution_cutoff());
}

DensityKernel weyl_reconstruct(const PhaseField4& w) {
  require(w.kind == PhaseKind::Wigner, ErrorKind::Contract, "Weyl reconstruction expects a Wigner field");
  for (const auto& c : w.comp) ensure_finite(c, "Wigner component");
  const double norm = w.integral(2) + w.integral(3);
  if (std::abs(norm - 1.0) > 1e-6) {
    std::ostringstream m;
    m << "Wigner field not normalized: integral of components 3+4 is " << norm;
    fail(ErrorKind::Contract, m.str());
  }
  require(w.q.spectral(), ErrorKind::Capability, "Weyl reconstruction needs a power-of-two q axis");
  const std::size_t n = w.q.count;
  const std::size_t np = w.p.count;
  const double h = w.q.spacing();
  const long span = static_cast<long>(2 * n - 1);
  const auto& dq = SpinFrame::quantizer();
  Eigen::MatrixXcd entries[3];  // 11, 22, 12 over [q][p]
  for (auto& e : entries) e.resize(n, np);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t m = 0; m < np; ++m) {
      const std::size_t idx = i * np + m;
      entries[0](i, m) = w.comp[2][idx];
      entries[1](i, m) = w.comp[3][idx];
      cplx s = 0.0;
      for (int l = 0; l < 4; ++l) s += dq[1][l] * w.comp[l][idx];
      entries[2](i, m) = s;
    }
  Eigen::MatrixXcd e(np, span);
  for (std::size_t m = 0; m < np; ++m)
    for (long d = 0; d < span; ++d) {
      const double sep = static_cast<double>(d - static_cast<long>(n - 1)) * h;
      e(m, d) = std::polar(w.p.spacing(), w.p.at(m) * sep);
    }
  DensityKernel k;
  k.axis = w.q;
  for (auto& b : k.block) b.assign(n * n, 0.0);
  const int slot[3] = {0, 3, 1};
  for (int s = 0; s < 3; ++s) {
    Eigen::MatrixXcd f = entries[s] * e;  // [q][separation]
    Eigen::MatrixXcd fh = f;
    std::vector<cplx> line(n);
    for (long d = 0; d < span; ++d) {
      for (std::size_t i = 0; i < n; ++i) line[i] = f(i, d);
      translate(line.data(), w.q, -0.5 * h);
      for (std::size_t i = 0; i < n; ++i) fh(i, d) = line[i];
    }
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        const long d = static_cast<long>(a) - static_cast<long>(b) + static_cast<long>(n - 1);
        const std::size_t sum = a + b;
        k.block[slot[s]][a * n + b] = (sum % 2 == 0) ? f(sum / 2, d) : fh(sum / 2, d);
      }
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) k.block[2][a * n + b] = std::conj(k.block[1][b * n + a]);
  return k;
}

std::vector<Vec4> wigner_samples(const SpinDensity& state, const std::vector<std::vector<double>>& points) {
  state.validate();
  const Grid& g = state.grid();
  const std::size_t dims = g.dims();
  const double pref = g.cell() / std::pow(kPi, static_cast<double>(dims));
  std::vector<Vec4> out;
  out.reserve(points.size());
  for (const auto& pt : points) {
    require(pt.size() == 2 * dims, ErrorKind::Contract, "phase-space point has wrong dimension");
    const std::vector<double> q(pt.begin(), pt.begin() + dims);
    const std::vector<double> p(pt.begin() + dims, pt.end());
    std::vector<cplx> phase(g.size());
    for (std::size_t idx = 0; idx < phase.size(); ++idx) {
      std::size_t rem = idx;
      double arg = 0.0;
      for (std::size_t d = dims; d-- > 0;) {
        const std::size_t i = rem % g.axes[d].count;
        rem /= g.axes[d].count;
        arg += 2.0 * p[d] * (q[d] - g.axes[d].at(i));
      }
      phase[idx] = std::polar(pref, arg);
    }
    cplx r[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
    for (std::size_t k = 0; k < state.members.size(); ++k) {
      const SpinorField& s = state.members[k];
      const std::vector<cplx> refl[2] = {reflected(s.up, q), reflected(s.down, q)};
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          const cplx* pa = component(s, a);
          cplx acc = 0.0;
          for (std::size_t idx = 0; idx < phase.size(); ++idx) acc += pa[idx] * std::conj(refl[b][idx]) * phase[idx];
          r[a][b] += state.weights[k] * acc;
        }
    }
    out.push_back(dequantize_entries(r[0][0].real(), r[1][1].real(), 0.5 * (r[0][1] + std::conj(r[1][0]))));
  }
  return out;
}

std::vector<Vec4> husimi_samples(const SpinDensity& state, const std::vector<std::vector<double>>& points) {
  state.validate();
  const Grid& g = state.grid();
  const std::size_t dims = g.dims();
  const double c0 = std::pow(kPi, -0.25 * static_cast<double>(dims)) * g.cell();
  std::vector<Vec4> out;
  out.reserve(points.size());
  for (const auto& pt : points) {
    require(pt.size() == 2 * dims, ErrorKind::Contract, "phase-space point has wrong dimension");
    std::vector<cplx> coh(g.size());
    for (std::size_t idx = 0; idx < coh.size(); ++idx) {
      std::size_t rem = idx;
      double re = 0.0, im = 0.0;
      for (std::size_t d = dims; d-- > 0;) {
        const std::size_t i = rem % g.axes[d].count;
        rem /= g.axes[d].count;
        const double x = g.axes[d].at(i) - pt[d];
        re -= 0.5 * x * x;
        im -= pt[dims + d] * g.axes[d].at(i);
      }
      coh[idx] = c0 * std::exp(cplx(re, im));
    }
    cplx r11 = 0.0, r22 = 0.0, r12 = 0.0;
    for (std::size_t k = 0; k < state.members.size(); ++k) {
      cplx a = 0.0, b = 0.0;
      for (std::size_t idx = 0; idx < coh.size(); ++idx) {
        a += coh[idx] * state.members[k].up.values[idx];
        b += coh[idx] * state.members[k].down.values[idx];
      }
      const double w = state.weights[k];
      r11 += w * std::norm(a);
      r22 += w * std::norm(b);
      r12 += w * a * std::conj(b);
    }
    out.push_back(dequantize_entries(r11.real(), r22.real(), r12));
  }
  return out;
}

}  // namespace pt
