#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "pauli_tomograph/grid.hpp"

namespace pt {

constexpr int kMaxFockLevel = 60;
constexpr double kBoundaryTol = 1e-8;

ComplexField oscillator_eigenstate(int n, const Grid& grid);
ComplexField coherent_state(cplx alpha, const Grid& grid);

// Spinor with the spatial factor placed in one spin component.
SpinorField spin_up(const ComplexField& f);
SpinorField spin_down(const ComplexField& f);

// Largest |f| over the outermost sample layer of every axis.
double boundary_amplitude(const ComplexField& f);

// Rotated-quadrature amplitude <X, theta|psi> with <X, theta|n> = exp(-i n theta) psi_n(X).
// One angle per axis.
ComplexField fractional_fourier(const ComplexField& psi, const std::vector<double>& theta);
ComplexField fractional_fourier(const ComplexField& psi, double theta);

// exp(-i t (p^2 + q^2)/2) on one axis of a row-major array, split into quarter turns at most.
void oscillator_propagate_axis(std::vector<cplx>& data, const Grid& grid, std::size_t axis, double t);

// Fourier multiplier helpers along one axis of a field.
ComplexField spectral_derivative(const ComplexField& f, std::size_t axis);
ComplexField spectral_antiderivative(const ComplexField& f, std::size_t axis);

// Real-data variants over a row-major array with the given shape; the axis length comes from `axis`.
std::vector<double> derivative_along(const std::vector<double>& data, const std::vector<std::size_t>& shape,
                                     std::size_t dim, const Axis& axis);
std::vector<cplx> derivative_along(const std::vector<cplx>& data, const std::vector<std::size_t>& shape,
                                   std::size_t dim, const Axis& axis);
std::vector<cplx> antiderivative_along(const std::vector<cplx>& data, const std::vector<std::size_t>& shape,
                                       std::size_t dim, const Axis& axis);

// Trigonometric interpolant of a periodic sampled line, evaluable anywhere.
class BandLimited {
 public:
  BandLimited(const cplx* samples, const Axis& axis);
  BandLimited(const double* samples, const Axis& axis);
  cplx operator()(double x) const;

 private:
  void init(std::vector<cplx> s);
  Axis axis_;
  std::vector<cplx> coef_;
  std::vector<double> k_;
};

// F_new(z) = F_old(M z) for M = {a, b, c, d} in SL(2) acting on (q, p), applied to a row-major
// [q][p] array by spectral shears.
void pullback_plane(std::vector<double>& data, const Axis& q, const Axis& p, const std::array<double, 4>& m);

// Trapezoid integral of samples times spacing (exact for periodic band-limited data).
double integrate(const std::vector<double>& v, double spacing);

}  // namespace pt
