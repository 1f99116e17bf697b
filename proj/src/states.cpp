#include <cmath>
#include <numbers>
#include <string>

#include "pauli_tomograph/errors.hpp"
#include "pauli_tomograph/numerics.hpp"

namespace pt {

double boundary_amplitude(const ComplexField& f) {
  const auto& ax = f.grid.axes;
  double worst = 0.0;
  const std::size_t total = f.values.size();
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rem = idx;
    bool edge = false;
    for (std::size_t d = ax.size(); d-- > 0;) {
      std::size_t i = rem % ax[d].count;
      rem /= ax[d].count;
      if (i == 0 || i + 1 == ax[d].count) edge = true;
    }
    if (edge) worst = std::max(worst, std::abs(f.values[idx]));
  }
  return worst;
}

ComplexField oscillator_eigenstate(int n, const Grid& grid) {
  require(n >= 0, ErrorKind::Contract, "negative Fock level");
  if (n > kMaxFockLevel)
    fail(ErrorKind::Capability, "Fock level " + std::to_string(n) + " above recurrence bound 60");
  require(grid.dims() == 1, ErrorKind::Contract, "oscillator eigenstate needs a 1D grid");
  ComplexField f(grid);
  const Axis& a = grid.axes[0];
  const double c0 = std::pow(std::numbers::pi, -0.25);
  for (std::size_t i = 0; i < a.count; ++i) {
    const double x = a.at(i);
    double prev = 0.0;
    double cur = c0 * std::exp(-0.5 * x * x);
    for (int k = 0; k < n; ++k) {
      const double next = std::sqrt(2.0 / (k + 1)) * x * cur - std::sqrt(static_cast<double>(k) / (k + 1)) * prev;
      prev = cur;
      cur = next;
    }
    f.values[i] = cur;
  }
  const double edge = boundary_amplitude(f);
  if (edge > kBoundaryTol)
    fail(ErrorKind::Domain, "grid too narrow for Fock level " + std::to_string(n) + ": boundary amplitude " +
                                std::to_string(edge));
  return f;
}

ComplexField coherent_state(cplx alpha, const Grid& grid) {
  require(grid.dims() == 1, ErrorKind::Contract, "coherent state needs a 1D grid");
  ComplexField f(grid);
  const Axis& a = grid.axes[0];
  const double c0 = std::pow(std::numbers::pi, -0.25);
  const cplx lin = std::sqrt(2.0) * alpha;
  const cplx shift = -0.5 * alpha * alpha - 0.5 * std::norm(alpha);
  for (std::size_t i = 0; i < a.count; ++i) {
    const double x = a.at(i);
    f.values[i] = c0 * std::exp(-0.5 * x * x + lin * x + shift);
  }
  const double edge = boundary_amplitude(f);
  if (edge > kBoundaryTol)
    fail(ErrorKind::Domain, "coherent state support exceeds grid: boundary amplitude " + std::to_string(edge));
  return f;
}

SpinorField spin_up(const ComplexField& f) { return SpinorField{f, ComplexField(f.grid)}; }
SpinorField spin_down(const ComplexField& f) { return SpinorField{ComplexField(f.grid), f}; }

}  // namespace pt
