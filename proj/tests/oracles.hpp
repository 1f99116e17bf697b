#pragma once
// Closed forms and brute-force reference computations shared by the tests. Nothing here calls
// the library's transforms.

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
inline constexpr double pi = std::numbers::pi;

// Oscillator eigenfunctions written out term by term.
inline double fock(int n, double x) {
  const double g = std::pow(pi, -0.25) * std::exp(-0.5 * x * x);
  switch (n) {
    case 0: return g;
    case 1: return g * std::sqrt(2.0) * x;
    case 2: return g * (2.0 * x * x - 1.0) / std::sqrt(2.0);
    case 3: return g * (2.0 * x * x * x - 3.0 * x) / std::sqrt(3.0);
    case 4: return g * (4.0 * std::pow(x, 4) - 12.0 * x * x + 3.0) / (2.0 * std::sqrt(6.0));
    default: return std::nan("");
  }
}

// Wigner functions of Fock states via Laguerre polynomials.
inline double fock_wigner(int n, double q, double p) {
  const double r2 = 2.0 * (q * q + p * p);
  double l = 0.0;
  switch (n) {
    case 0: l = 1.0; break;
    case 1: l = 1.0 - r2; break;
    case 2: l = 1.0 - 2.0 * r2 + 0.5 * r2 * r2; break;
    case 3: l = 1.0 - 3.0 * r2 + 1.5 * r2 * r2 - r2 * r2 * r2 / 6.0; break;
    case 4: l = 1.0 - 4.0 * r2 + 3.0 * r2 * r2 - 2.0 * r2 * r2 * r2 / 3.0 + r2 * r2 * r2 * r2 / 24.0; break;
    default: return std::nan("");
  }
  return (n % 2 ? -1.0 : 1.0) / pi * std::exp(-(q * q + p * p)) * l;
}

// Coherent state with alpha = (q + i p)/sqrt 2.
inline cplx coherent(cplx a, double x) {
  return std::pow(pi, -0.25) *
         std::exp(-0.5 * x * x + std::sqrt(2.0) * a * x - 0.5 * a * a - 0.5 * std::norm(a));
}

// Direct quadrature of the unitary Fourier transform (1/sqrt(2 pi)) int f(x) e^{-i k x} dx.
inline std::vector<cplx> direct_fourier(const std::vector<cplx>& f, double x0, double h,
                                        const std::vector<double>& ks) {
  std::vector<cplx> out(ks.size());
  for (std::size_t a = 0; a < ks.size(); ++a) {
    cplx s = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j) s += f[j] * std::polar(1.0, -ks[a] * (x0 + h * static_cast<double>(j)));
    out[a] = s * h / std::sqrt(2.0 * pi);
  }
  return out;
}

// Fourth-order Runge-Kutta for a linear system z' = F z, fine fixed step.
template <class Mat>
Mat rk4_flow(const Mat& F, double t, int steps) {
  const int n = static_cast<int>(F.rows());
  Mat A = Mat::Identity(n, n);
  const double h = t / steps;
  for (int s = 0; s < steps; ++s) {
    const Mat k1 = F * A;
    const Mat k2 = F * (A + 0.5 * h * k1);
    const Mat k3 = F * (A + 0.5 * h * k2);
    const Mat k4 = F * (A + h * k3);
    A += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return A;
}

}  // namespace oracle
