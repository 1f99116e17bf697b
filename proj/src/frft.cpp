#include <cmath>
#include <numbers>

#include "pauli_tomograph/errors.hpp"
#include "pauli_tomograph/fft.hpp"
#include "pauli_tomograph/numerics.hpp"

namespace pt {
namespace {

// One chirp-multiplier-chirp factorization of exp(-i t H), valid for |t| <= pi/2.
void quarter_step(cplx* line, const Axis& a, const std::vector<double>& k, double t, std::vector<cplx>& chirp,
                  std::vector<cplx>& mult) {
  const std::size_t n = a.count;
  const double ca = std::tan(0.5 * t);
  const double cb = std::sin(t);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = a.at(i);
    chirp[i] = std::polar(1.0, -0.5 * ca * x * x);
    mult[i] = std::polar(1.0, -0.5 * cb * k[i] * k[i]);
  }
  for (std::size_t i = 0; i < n; ++i) line[i] *= chirp[i];
  apply_multiplier(line, n, mult);
  for (std::size_t i = 0; i < n; ++i) line[i] *= chirp[i];
}

}  // namespace

void oscillator_propagate_axis(std::vector<cplx>& data, const Grid& grid, std::size_t axis, double t) {
  if (t == 0.0) return;
  const Axis& a = grid.axes[axis];
  require(a.spectral(), ErrorKind::Capability, "fractional Fourier needs a power-of-two axis");
  const int steps = std::max(1, static_cast<int>(std::ceil(std::abs(t) / (0.5 * std::numbers::pi) - 1e-12)));
  const double dt = t / steps;
  const auto k = wavenumbers(a);
  std::vector<std::size_t> shape;
  for (const auto& ax : grid.axes) shape.push_back(ax.count);
  std::size_t outer = 1, inner = 1;
  for (std::size_t i = 0; i < axis; ++i) outer *= shape[i];
  for (std::size_t i = axis + 1; i < shape.size(); ++i) inner *= shape[i];
  const std::size_t n = a.count;
  std::vector<cplx> line(n), chirp(n), mult(n);
  for (std::size_t o = 0; o < outer; ++o)
    for (std::size_t in = 0; in < inner; ++in) {
      cplx* base = data.data() + o * n * inner + in;
      for (std::size_t j = 0; j < n; ++j) line[j] = base[j * inner];
      for (int s = 0; s < steps; ++s) quarter_step(line.data(), a, k, dt, chirp, mult);
      for (std::size_t j = 0; j < n; ++j) base[j * inner] = line[j];
    }
}

ComplexField fractional_fourier(const ComplexField& psi, const std::vector<double>& theta) {
  require(theta.size() == psi.grid.dims(), ErrorKind::Contract, "one angle per axis required");
  require(psi.grid.dims() == 1 || psi.grid.dims() == 2, ErrorKind::Capability,
          "fractional Fourier supports 1D and 2D fields");
  for (const auto& a : psi.grid.axes)
    require(a.spectral(), ErrorKind::Capability, "fractional Fourier needs power-of-two axes");
  ComplexField out = psi;
  cplx phase = 1.0;
  for (std::size_t d = 0; d < theta.size(); ++d) {
    if (theta[d] == 0.0) continue;
    oscillator_propagate_axis(out.values, out.grid, d, theta[d]);
    phase *= std::polar(1.0, 0.5 * theta[d]);
  }
  if (phase != cplx(1.0))
    for (auto& z : out.values) z *= phase;
  return out;
}

ComplexField fractional_fourier(const ComplexField& psi, double theta) {
  return fractional_fourier(psi, std::vector<double>{theta});
}

}  // namespace pt
