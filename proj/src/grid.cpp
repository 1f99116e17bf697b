#include "pauli_tomograph/grid.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "pauli_tomograph/errors.hpp"

namespace pt {

bool operator==(const Axis& a, const Axis& b) {
  return a.min == b.min && a.max == b.max && a.count == b.count;
}

bool operator==(const Grid& a, const Grid& b) { return a.axes == b.axes; }

std::size_t Grid::size() const {
  if (axes.empty()) return 0;
  std::size_t n = 1;
  for (const auto& a : axes) n *= a.count;
  return n;
}

double Grid::cell() const {
  double c = 1.0;
  for (const auto& a : axes) c *= a.spacing();
  return c;
}

bool Grid::spectral() const {
  for (const auto& a : axes)
    if (!a.spectral()) return false;
  return !axes.empty();
}

Axis default_axis_1d() { return Axis{-8.0, 8.0, 256}; }
Axis default_axis_2d() { return Axis{-8.0, 8.0, 128}; }

ComplexField::ComplexField(Grid g, std::vector<cplx> v) : grid(std::move(g)), values(std::move(v)) {
  require(values.size() == grid.size(), ErrorKind::Contract, "field value count does not match grid");
}

double ComplexField::norm2() const {
  double s = 0.0;
  for (const auto& z : values) s += std::norm(z);
  return s * grid.cell();
}

cplx inner(const ComplexField& a, const ComplexField& b) {
  require(a.grid == b.grid, ErrorKind::Contract, "inner product of fields on different grids");
  cplx s = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) s += std::conj(a.values[i]) * b.values[i];
  return s * a.grid.cell();
}

SpinDensity SpinDensity::pure(SpinorField s) {
  SpinDensity d;
  d.weights = {1.0};
  d.members.push_back(std::move(s));
  return d;
}

const Grid& SpinDensity::grid() const {
  require(!members.empty(), ErrorKind::Contract, "empty spin density");
  return members.front().grid();
}

double SpinDensity::trace() const {
  double t = 0.0;
  for (std::size_t k = 0; k < members.size(); ++k) t += weights[k] * members[k].norm2();
  return t;
}

void SpinDensity::validate() const {
  require(!members.empty(), ErrorKind::Contract, "empty spin density");
  require(weights.size() == members.size(), ErrorKind::Contract, "weight count mismatch");
  for (const auto& m : members) {
    require(m.up.grid == grid() && m.down.grid == grid(), ErrorKind::Contract,
            "ensemble members on different grids");
    ensure_finite(m.up.values, "spinor");
    ensure_finite(m.down.values, "spinor");
  }
}

double DensityKernel::trace() const {
  double t = 0.0;
  for (std::size_t a = 0; a < n(); ++a) t += at(0, 0, a, a).real() + at(1, 1, a, a).real();
  return t * axis.spacing();
}

DensityKernel kernel_from_density(const SpinDensity& rho) {
  rho.validate();
  require(rho.grid().dims() == 1, ErrorKind::Capability, "density kernels are 1D only");
  DensityKernel k;
  k.axis = rho.grid().axes[0];
  const std::size_t n = k.n();
  for (auto& b : k.block) b.assign(n * n, 0.0);
  for (std::size_t m = 0; m < rho.members.size(); ++m) {
    const cplx* c[2] = {rho.members[m].up.values.data(), rho.members[m].down.values.data()};
    for (int j = 0; j < 2; ++j)
      for (int l = 0; l < 2; ++l)
        for (std::size_t a = 0; a < n; ++a)
          for (std::size_t b = 0; b < n; ++b)
            k.at(j, l, a, b) += rho.weights[m] * c[j][a] * std::conj(c[l][b]);
  }
  return k;
}

SpinDensity density_from_kernel(const DensityKernel& k, double rel_tol) {
  const std::size_t n = k.n();
  const double h = k.axis.spacing();
  Eigen::MatrixXcd m(2 * n, 2 * n);
  for (int j = 0; j < 2; ++j)
    for (int l = 0; l < 2; ++l)
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) m(j * n + a, l * n + b) = k.at(j, l, a, b) * h;
  m = (0.5 * (m + m.adjoint())).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
  require(es.info() == Eigen::Success, ErrorKind::Domain, "kernel eigendecomposition failed");
  const auto& ev = es.eigenvalues();
  double top = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) top = std::max(top, std::abs(ev(i)));
  SpinDensity d;
  Grid g = Grid::line(k.axis);
  const double scale = 1.0 / std::sqrt(h);
  for (Eigen::Index i = ev.size() - 1; i >= 0; --i) {
    if (std::abs(ev(i)) <= rel_tol * top) continue;
    SpinorField s{ComplexField(g), ComplexField(g)};
    for (std::size_t a = 0; a < n; ++a) {
      s.up.values[a] = es.eigenvectors()(a, i) * scale;
      s.down.values[a] = es.eigenvectors()(n + a, i) * scale;
    }
    d.weights.push_back(ev(i));
    d.members.push_back(std::move(s));
  }
  require(!d.members.empty(), ErrorKind::Domain, "kernel has no significant spectrum");
  return d;
}

void ensure_finite(const std::vector<cplx>& v, const char* what) {
  for (const auto& z : v)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      fail(ErrorKind::Contract, std::string("non-finite entry in ") + what);
}

void ensure_finite(const std::vector<double>& v, const char* what) {
  for (double x : v)
    if (!std::isfinite(x)) fail(ErrorKind::Contract, std::string("non-finite entry in ") + what);
}

}  // namespace pt
