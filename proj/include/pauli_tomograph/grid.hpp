#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace pt {

using cplx = std::complex<double>;

// Periodic axis, right endpoint excluded.
struct Axis {
  double min = -8.0;
  double max = 8.0;
  std::size_t count = 256;

  double length() const { return max - min; }
  double spacing() const { return (max - min) / static_cast<double>(count); }
  double at(std::size_t i) const { return min + spacing() * static_cast<double>(i); }
  bool spectral() const { return count >= 2 && (count & (count - 1)) == 0; }
};

bool operator==(const Axis& a, const Axis& b);

struct Grid {
  std::vector<Axis> axes;

  Grid() = default;
  explicit Grid(std::vector<Axis> a) : axes(std::move(a)) {}
  static Grid line(const Axis& a) { return Grid({a}); }
  static Grid plane(const Axis& a, const Axis& b) { return Grid({a, b}); }

  std::size_t dims() const { return axes.size(); }
  std::size_t size() const;
  double cell() const;  // product of spacings
  bool spectral() const;
};

bool operator==(const Grid& a, const Grid& b);

Axis default_axis_1d();
Axis default_axis_2d();

struct ComplexField {
  Grid grid;
  std::vector<cplx> values;

  ComplexField() = default;
  explicit ComplexField(Grid g) : grid(std::move(g)), values(grid.size()) {}
  ComplexField(Grid g, std::vector<cplx> v);

  double norm2() const;  // integral of |f|^2
};

cplx inner(const ComplexField& a, const ComplexField& b);  // integral of conj(a) b

// Two spin components on a shared grid; index 0 is s3 = +1/2.
struct SpinorField {
  ComplexField up;
  ComplexField down;

  const Grid& grid() const { return up.grid; }
  double norm2() const { return up.norm2() + down.norm2(); }
};

// Mixed spin state as a weighted ensemble sum_k w_k |psi_k><psi_k|.
struct SpinDensity {
  std::vector<double> weights;
  std::vector<SpinorField> members;

  static SpinDensity pure(SpinorField s);
  const Grid& grid() const;
  double trace() const;
  void validate() const;
};

// Full 1D kernel rho_jk(x, x'), blocks indexed 2*j + k, each row-major count x count.
struct DensityKernel {
  Axis axis;
  std::vector<cplx> block[4];

  std::size_t n() const { return axis.count; }
  cplx& at(int j, int k, std::size_t a, std::size_t b) { return block[2 * j + k][a * n() + b]; }
  cplx at(int j, int k, std::size_t a, std::size_t b) const { return block[2 * j + k][a * n() + b]; }
  double trace() const;
};

DensityKernel kernel_from_density(const SpinDensity& rho);
// Eigen-decomposes the kernel; components below rel_tol of the largest weight are dropped.
SpinDensity density_from_kernel(const DensityKernel& k, double rel_tol = 1e-13);

void ensure_finite(const std::vector<cplx>& v, const char* what);
void ensure_finite(const std::vector<double>& v, const char* what);

}  // namespace pt
