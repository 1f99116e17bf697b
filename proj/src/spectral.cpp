#include <cmath>
#include <sstream>

#include "pauli_tomograph/errors.hpp"
#include "pauli_tomograph/fft.hpp"
#include "pauli_tomograph/numerics.hpp"

namespace pt {
namespace {

std::vector<cplx> multiplier(const Axis& a, bool inverse) {
  const auto k = wavenumbers(a);
  std::vector<cplx> m(a.count);
  for (std::size_t j = 0; j < a.count; ++j) {
    if (k[j] == 0.0) m[j] = 0.0;
    else m[j] = inverse ? 1.0 / cplx(0.0, k[j]) : cplx(0.0, k[j]);
  }
  if (a.count % 2 == 0) m[a.count / 2] = 0.0;
  return m;
}

std::vector<cplx> apply_along(std::vector<cplx> data, const std::vector<std::size_t>& shape, std::size_t dim,
                              const std::vector<cplx>& mult) {
  std::size_t outer = 1, inner = 1;
  for (std::size_t i = 0; i < dim; ++i) outer *= shape[i];
  for (std::size_t i = dim + 1; i < shape.size(); ++i) inner *= shape[i];
  const std::size_t n = shape[dim];
  std::vector<cplx> line(n);
  for (std::size_t o = 0; o < outer; ++o)
    for (std::size_t in = 0; in < inner; ++in) {
      cplx* base = data.data() + o * n * inner + in;
      for (std::size_t j = 0; j < n; ++j) line[j] = base[j * inner];
      apply_multiplier(line.data(), n, mult);
      for (std::size_t j = 0; j < n; ++j) base[j * inner] = line[j];
    }
  return data;
}

void check_zero_mode(const std::vector<cplx>& data, const std::vector<std::size_t>& shape, std::size_t dim) {
  std::size_t outer = 1, inner = 1;
  for (std::size_t i = 0; i < dim; ++i) outer *= shape[i];
  for (std::size_t i = dim + 1; i < shape.size(); ++i) inner *= shape[i];
  const std::size_t n = shape[dim];
  double rms = 0.0;
  for (const auto& z : data) rms += std::norm(z);
  rms = std::sqrt(rms / static_cast<double>(data.size()));
  double worst = 0.0;
  for (std::size_t o = 0; o < outer; ++o)
    for (std::size_t in = 0; in < inner; ++in) {
      cplx mean = 0.0;
      const cplx* base = data.data() + o * n * inner + in;
      for (std::size_t j = 0; j < n; ++j) mean += base[j * inner];
      worst = std::max(worst, std::abs(mean) / static_cast<double>(n));
    }
  if (worst >= 1e-8 * rms || (rms == 0.0 && worst > 0.0)) {
    std::ostringstream msg;
    msg << "antiderivative operand has zero-frequency coefficient " << worst << " (field rms " << rms << ")";
    throw IllPosedOperator(msg.str(), worst);
  }
}

std::vector<std::size_t> shape_of(const Grid& g) {
  std::vector<std::size_t> s;
  for (const auto& a : g.axes) s.push_back(a.count);
  return s;
}

}  // namespace

std::vector<cplx> derivative_along(const std::vector<cplx>& data, const std::vector<std::size_t>& shape,
                                   std::size_t dim, const Axis& axis) {
  return apply_along(data, shape, dim, multiplier(axis, false));
}

std::vector<double> derivative_along(const std::vector<double>& data, const std::vector<std::size_t>& shape,
                                     std::size_t dim, const Axis& axis) {
  std::vector<cplx> c(data.begin(), data.end());
  c = apply_along(std::move(c), shape, dim, multiplier(axis, false));
  std::vector<double> out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) out[i] = c[i].real();
  return out;
}

std::vector<cplx> antiderivative_along(const std::vector<cplx>& data, const std::vector<std::size_t>& shape,
                                       std::size_t dim, const Axis& axis) {
  check_zero_mode(data, shape, dim);
  return apply_along(data, shape, dim, multiplier(axis, true));
}

ComplexField spectral_derivative(const ComplexField& f, std::size_t axis) {
  require(axis < f.grid.dims(), ErrorKind::Contract, "axis out of range");
  return ComplexField(f.grid, derivative_along(f.values, shape_of(f.grid), axis, f.grid.axes[axis]));
}

ComplexField spectral_antiderivative(const ComplexField& f, std::size_t axis) {
  require(axis < f.grid.dims(), ErrorKind::Contract, "axis out of range");
  return ComplexField(f.grid, antiderivative_along(f.values, shape_of(f.grid), axis, f.grid.axes[axis]));
}

BandLimited::BandLimited(const cplx* samples, const Axis& axis) : axis_(axis) {
  init(std::vector<cplx>(samples, samples + axis.count));
}

BandLimited::BandLimited(const double* samples, const Axis& axis) : axis_(axis) {
  init(std::vector<cplx>(samples, samples + axis.count));
}

void BandLimited::init(std::vector<cplx> s) {
  const std::size_t n = axis_.count;
  fft(s.data(), n, -1);
  for (auto& z : s) z /= static_cast<double>(n);
  coef_ = std::move(s);
  k_ = wavenumbers(axis_);
}

cplx BandLimited::operator()(double x) const {
  const std::size_t n = axis_.count;
  const double u = x - axis_.min;
  cplx s = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    if (n % 2 == 0 && j == n / 2) s += coef_[j] * std::cos(k_[j] * u);
    else s += coef_[j] * std::polar(1.0, k_[j] * u);
  }
  return s;
}

double integrate(const std::vector<double>& v, double spacing) {
  double s = 0.0;
  for (double x : v) s += x;
  return s * spacing;
}

}  // namespace pt

namespace pt {
namespace {

// new(q, p) = old(q, p + y q)
void shear_p(std::vector<double>& data, const Axis& q, const Axis& p, double y) {
  if (y == 0.0) return;
  for (std::size_t i = 0; i < q.count; ++i) translate(data.data() + i * p.count, p, -y * q.at(i));
}

// new(q, p) = old(q + b p, p)
void shear_q(std::vector<double>& data, const Axis& q, const Axis& p, double b) {
  if (b == 0.0) return;
  std::vector<double> line(q.count);
  for (std::size_t m = 0; m < p.count; ++m) {
    for (std::size_t i = 0; i < q.count; ++i) line[i] = data[i * p.count + m];
    translate(line.data(), q, -b * p.at(m));
    for (std::size_t i = 0; i < q.count; ++i) data[i * p.count + m] = line[i];
  }
}

}  // namespace

void pullback_plane(std::vector<double>& data, const Axis& q, const Axis& p, const std::array<double, 4>& m) {
  const double a = m[0], b = m[1], c = m[2], d = m[3];
  require(std::abs(a * d - b * c - 1.0) < 1e-10, ErrorKind::Contract, "pullback matrix is not unimodular");
  constexpr double eps = 1e-14;
  if (std::abs(b) > eps) {
    shear_p(data, q, p, (d - 1.0) / b);
    shear_q(data, q, p, b);
    shear_p(data, q, p, (a - 1.0) / b);
  } else if (std::abs(c) > eps) {
    shear_q(data, q, p, (a - 1.0) / c);
    shear_p(data, q, p, c);
    shear_q(data, q, p, (d - 1.0) / c);
  } else {
    require(std::abs(a - 1.0) < eps && std::abs(d - 1.0) < eps, ErrorKind::Capability,
            "pure dilations cannot be applied by shears");
  }
}

}  // namespace pt
